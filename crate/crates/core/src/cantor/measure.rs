use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{dyadic, serde_rational, serde_rational_vec, Rational};
use super::tree::{Node, EMPTY, FULL};
use super::Word;
use crate::error::Error;

/// A computable probability measure on Cantor space.
///
/// `Bernoulli { p }` gives bit 1 probability `p`. `Markov` uses `initial[b]`
/// for the first bit and `transition[a][b]` for the probability of `b`
/// following `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    #[default]
    Uniform,
    Bernoulli {
        #[serde(with = "serde_rational")]
        p: Rational,
    },
    Markov {
        #[serde(with = "serde_rational_vec")]
        initial: Vec<Rational>,
        transition: Vec<MarkovRow>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MarkovRow(#[serde(with = "serde_rational_vec")] pub Vec<Rational>);

impl MeasureSpec {
    pub fn bernoulli(p: Rational) -> Result<Self, Error> {
        let m = MeasureSpec::Bernoulli { p };
        m.validate()?;
        Ok(m)
    }

    pub fn markov(initial: [Rational; 2], transition: [[Rational; 2]; 2]) -> Result<Self, Error> {
        let m = MeasureSpec::Markov {
            initial: initial.to_vec(),
            transition: transition.into_iter().map(|r| MarkovRow(r.to_vec())).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let distribution = |v: &[Rational], what: &str| -> Result<(), Error> {
            if v.len() != 2 || v.iter().any(|x| *x < Rational::zero()) || &v[0] + &v[1] != Rational::one()
            {
                return Err(Error::Malformed(format!(
                    "{what} must be two non-negative rationals summing to 1"
                )));
            }
            Ok(())
        };
        match self {
            MeasureSpec::Uniform => Ok(()),
            MeasureSpec::Bernoulli { p } => {
                if *p <= Rational::zero() || *p >= Rational::one() {
                    Err(Error::Malformed(format!("bernoulli p = {p} must lie in (0, 1)")))
                } else {
                    Ok(())
                }
            }
            MeasureSpec::Markov { initial, transition } => {
                distribution(initial, "markov initial distribution")?;
                if transition.len() != 2 {
                    return Err(Error::Malformed("markov transition needs two rows".into()));
                }
                for row in transition {
                    distribution(&row.0, "markov transition row")?;
                }
                Ok(())
            }
        }
    }

    /// Probability of emitting `bit` after `prev` (`None` at the start).
    fn step(&self, prev: Option<bool>, bit: bool) -> Rational {
        match self {
            MeasureSpec::Uniform => Rational::new(1.into(), 2.into()),
            MeasureSpec::Bernoulli { p } => {
                if bit {
                    p.clone()
                } else {
                    Rational::one() - p
                }
            }
            MeasureSpec::Markov { initial, transition } => match prev {
                None => initial[bit as usize].clone(),
                Some(a) => transition[a as usize].0[bit as usize].clone(),
            },
        }
    }

    fn is_memoryless(&self) -> bool {
        !matches!(self, MeasureSpec::Markov { .. })
    }

    /// Measure of the cylinder `wΩ`.
    pub fn cylinder(&self, w: &Word) -> Rational {
        if let MeasureSpec::Uniform = self {
            return dyadic(w.len());
        }
        let mut prev = None;
        let mut acc = Rational::one();
        for &b in w.bits() {
            acc *= self.step(prev, b);
            prev = Some(b);
        }
        acc
    }

    /// Measure of the set below `node`, given the bit read just before it.
    pub(crate) fn of_node(&self, node: Node) -> Rational {
        if let MeasureSpec::Uniform = self {
            return uniform_of_node(node);
        }
        let mut memo = HashMap::new();
        self.node_rec(node, None, &mut memo)
    }

    fn node_rec(
        &self,
        node: Node,
        prev: Option<bool>,
        memo: &mut HashMap<(Node, Option<bool>), Rational>,
    ) -> Rational {
        match node {
            EMPTY => return Rational::zero(),
            FULL => return Rational::one(),
            _ => {}
        }
        let key = (node, if self.is_memoryless() { None } else { prev });
        if let Some(m) = memo.get(&key) {
            return m.clone();
        }
        let (z, o) = node.children().expect("inner node");
        let mz = self.node_rec(z, Some(false), memo);
        let mo = self.node_rec(o, Some(true), memo);
        let m = self.step(prev, false) * mz + self.step(prev, true) * mo;
        memo.insert(key, m.clone());
        m
    }
}

/// Uniform measure as `count / 2^depth`, summed in integers so that no
/// fraction is reduced until the end.
fn uniform_of_node(node: Node) -> Rational {
    fn rec(node: Node, memo: &mut HashMap<Node, (BigUint, usize)>) -> (BigUint, usize) {
        match node {
            EMPTY => return (BigUint::zero(), 0),
            FULL => return (BigUint::one(), 0),
            _ => {}
        }
        if let Some(v) = memo.get(&node) {
            return v.clone();
        }
        let (z, o) = node.children().expect("inner node");
        let (nz, dz) = rec(z, memo);
        let (no, d_o) = rec(o, memo);
        let d = dz.max(d_o);
        let v = ((nz << (d - dz)) + (no << (d - d_o)), d + 1);
        memo.insert(node, v.clone());
        v
    }
    let (num, d) = rec(node, &mut HashMap::new());
    Rational::new(BigInt::from(num), BigInt::one() << d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::rational::rat;

    #[test]
    fn bernoulli_convention_is_probability_of_one() {
        let m = MeasureSpec::bernoulli(rat(1, 3)).unwrap();
        assert_eq!(m.cylinder(&"0".into()), rat(2, 3));
        assert_eq!(m.cylinder(&"1".into()), rat(1, 3));
        assert_eq!(m.cylinder(&"".into()), rat(1, 1));
    }

    #[test]
    fn markov_is_additive_on_children() {
        let m = MeasureSpec::markov(
            [rat(1, 4), rat(3, 4)],
            [[rat(1, 3), rat(2, 3)], [rat(1, 2), rat(1, 2)]],
        )
        .unwrap();
        for w in Word::all_up_to(5) {
            assert_eq!(
                m.cylinder(&w.child(false)) + m.cylinder(&w.child(true)),
                m.cylinder(&w)
            );
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(MeasureSpec::bernoulli(rat(0, 1)).is_err());
        assert!(MeasureSpec::bernoulli(rat(1, 1)).is_err());
        assert!(MeasureSpec::markov([rat(1, 2), rat(1, 3)], [[rat(1, 2), rat(1, 2)], [rat(1, 2), rat(1, 2)]]).is_err());
    }

    #[test]
    fn wire_format() {
        let m: MeasureSpec = serde_json::from_str(r#"{"kind":"bernoulli","p":"1/3"}"#).unwrap();
        assert_eq!(m, MeasureSpec::Bernoulli { p: rat(1, 3) });
        let u: MeasureSpec = serde_json::from_str(r#"{"kind":"uniform"}"#).unwrap();
        assert_eq!(u, MeasureSpec::Uniform);
    }
}
