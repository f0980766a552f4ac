//! The fourteen acceptance criteria. Each prints one PASS or FAIL line with
//! its runtime against the allowed budget; any failure exits non-zero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use kucera_core::birkhoff::{birkhoff_experiment, frequency_trace, gn_exceed_set};
use kucera_core::cantor::rational::rat;
use kucera_core::covers::{
    average_star_direct, average_star_shifted, bidirectional_cover, ergodic_cover, finite_change_cover,
    kucera_iterate, l2_average_distance, lemma1_holds, lemma1_k, prefix_family_rounds, Budgets,
};
use kucera_core::lambalgen::{lambalgen_construct, product_measure, verify_outside};
use kucera_core::transforms::{check_measure_preserving, embed_bidirectional, preimage_clopen, BiAssignment, Orbit};
use kucera_core::{
    ClopenSet, CoverCertificate, Error, MeasureSpec, Point, ProductClopen, ProductCylinder, Rational, TransformSpec,
    Word,
};
use num_traits::{One, Zero};

/// Seeds for the statistical Birkhoff check.
const SEEDS: [u64; 16] = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597];

fn pow(r: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

fn word(s: &str) -> Word {
    Word::from(s)
}

fn all_sets(depth: usize) -> impl Iterator<Item = ClopenSet> {
    let cells: Vec<Word> = Word::all_of_length(depth).collect();
    (0u64..(1 << cells.len())).map(move |mask| {
        ClopenSet::from_words(cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()))
    })
}

fn c1_kucera(certs: &mut Vec<CoverCertificate>) {
    let a = ClopenSet::of(&["0"]);
    let r = rat(1, 2);
    let cert = kucera_iterate(&a, &r, 8).unwrap();
    assert_eq!(cert.stages.len(), 9);
    for (j, stage) in cert.stages.iter().enumerate() {
        assert_eq!(stage.measure, pow(&r, j + 1));
        assert_eq!(stage.set.uniform_measure(), stage.measure);
        assert!(stage.measure <= pow(&r, j + 1));
        assert!(stage.set.contains_point(&Point::zeros()));
    }
    assert!(cert.verified);
    certs.push(cert);
}

fn c2_finite_change() {
    let xs: Vec<Word> = Word::all_up_to(3).collect();
    for a in all_sets(4).filter(|a| !a.is_full()) {
        let ma = a.uniform_measure();
        for x in &xs {
            let u = finite_change_cover(&a, x).unwrap();
            assert!(u.uniform_measure() <= &ma * pow(&rat(1, 2), x.len()), "a={a:?} x={x}");
        }
    }
}

fn c3_section_average() {
    for a in all_sets(4) {
        for len in 0..=3 {
            let sum = Word::all_of_length(len).fold(Rational::zero(), |acc, y| acc + a.shift_section(&y).uniform_measure());
            assert_eq!(sum * pow(&rat(1, 2), len), a.uniform_measure());
        }
    }
}

fn c4_prefix_family() {
    let b = Budgets::default();
    for len in 1..=3 {
        for x in Word::all_of_length(len) {
            for m in 0..=6 {
                let fam = prefix_family_rounds(&x, m, &b).unwrap();
                let keep = Rational::one() - pow(&rat(1, 2), len);
                assert_eq!(fam.remainder.uniform_measure(), pow(&keep, m));
                let covered: Vec<ClopenSet> = fam.words.iter().map(|z| ClopenSet::cylinder(&z.concat(&x))).collect();
                for (i, p) in covered.iter().enumerate() {
                    for q in &covered[i + 1..] {
                        assert!(p.is_disjoint(q));
                    }
                }
                let union = ClopenSet::union_all(&covered);
                assert_eq!(union.uniform_measure() + fam.remainder.uniform_measure(), Rational::one());
            }
        }
    }
}

fn c5_lemma1() {
    let (d, r, s, e) = (rat(1, 2), rat(1, 2), rat(3, 4), rat(1, 8));
    assert_eq!(lemma1_k(&d, &r, &s, &e).unwrap(), 256);
    assert!(lemma1_holds(&d, &r, &s, &e, 256));
    assert!(!lemma1_holds(&d, &r, &s, &e, 255));
}

fn c6_l2() {
    let b = Budgets::default();
    for n in 0..=16u64 {
        let got = l2_average_distance(&TransformSpec::shift(), &word("0"), n, &MeasureSpec::Uniform, &b).unwrap();
        // The n+1 preimages of 0Ω are independent events of probability 1/2,
        // so the squared distance is the variance 1/4 divided by n + 1.
        let oracle = rat(1, 4) / Rational::from_integer((n + 1).into());
        assert_eq!(got, oracle, "n={n}");
    }
}

fn c7_ergodic(certs: &mut Vec<CoverCertificate>) {
    let b = Budgets::default();
    let a = ClopenSet::of(&["0"]);
    let x = word("0");
    let r = rat(3, 4);
    let target = &r * ClopenSet::cylinder(&x).uniform_measure();
    for t in [TransformSpec::shift(), TransformSpec::odometer()] {
        let cert = ergodic_cover(&t, &a, &r, &x, &MeasureSpec::Uniform, &b).unwrap();
        let n = cert.params.n.unwrap();
        let direct = average_star_direct(&t, &a, &x, n, &MeasureSpec::Uniform, &b).unwrap();
        let shifted = average_star_shifted(&t, &a, &x, n, &MeasureSpec::Uniform, &b).unwrap();
        assert_eq!(direct, shifted);
        assert!(direct <= target, "{}: average {direct} at n={n}", t.name());
        let stage = cert.final_stage();
        assert!(stage.set.uniform_measure() <= target);
        assert!(cert.verified);
        certs.push(cert);
    }
}

fn c8_measure_preserving() {
    let mut ts = vec![TransformSpec::shift(), TransformSpec::odometer()];
    ts.extend((-3..=3).map(TransformSpec::bidirectional_shift));
    for t in ts {
        assert!(check_measure_preserving(&t, 6, &MeasureSpec::Uniform).unwrap().passed, "{}", t.name());
    }
}

fn c9_bidirectional(certs: &mut Vec<CoverCertificate>) {
    let x: BiAssignment = [(0, false)].into_iter().collect();
    let a = embed_bidirectional(&x);
    let i = embed_bidirectional(&x);
    let cert = bidirectional_cover(&a, &rat(1, 2), &rat(3, 4), &x, &Budgets::default()).unwrap();
    assert!(cert.final_stage().measure <= rat(3, 8));
    assert!(cert.verified);
    for &n in cert.params.shifts.as_ref().unwrap() {
        let back = preimage_clopen(&TransformSpec::bidirectional_shift(n), &a).unwrap();
        let forward = preimage_clopen(&TransformSpec::bidirectional_shift(-n), &i).unwrap();
        assert_eq!(i.intersect(&back).uniform_measure(), a.intersect(&forward).uniform_measure(), "n={n}");
    }
    certs.push(cert);
}

fn c10_odometer_birkhoff() {
    let t = TransformSpec::odometer();
    for u in Word::all_up_to(4) {
        let period = 1usize << u.len();
        let tr = frequency_trace(&t, &ClopenSet::cylinder(&u), &Point::zeros(), period * 16).unwrap();
        for j in 1..=16 {
            assert_eq!(tr.g(period * j), rat(1, period as i64), "u={u} j={j}");
        }
    }
}

fn c11_gn() {
    let b = Budgets::default();
    let t = TransformSpec::shift();
    let u = ClopenSet::of(&["1"]);
    let (s, m) = gn_exceed_set(&t, &u, &rat(1, 2), 1, 1, &MeasureSpec::Uniform, &b).unwrap();
    assert_eq!((s, m), (ClopenSet::of(&["1"]), rat(1, 2)));
    let (s, m) = gn_exceed_set(&t, &u, &rat(3, 4), 2, 2, &MeasureSpec::Uniform, &b).unwrap();
    assert_eq!((s, m), (ClopenSet::of(&["11"]), rat(1, 4)));
}

fn c12_statistical() {
    let points: Vec<Point> = SEEDS.iter().map(|&s| Point::seeded(s)).collect();
    let rep = birkhoff_experiment(&TransformSpec::shift(), &ClopenSet::of(&["1"]), &points, 1 << 14, &MeasureSpec::Uniform)
        .unwrap();
    assert!(rep.mean_deviation <= 0.02, "mean {}", rep.mean_deviation);
    assert!(rep.max_deviation <= 0.04, "max {}", rep.max_deviation);
}

fn ladder(i: usize) -> Rational {
    rat(i as i64 + 1, i as i64 + 2) / rat(i as i64 + 2, i as i64 + 3)
}

fn c13_lambalgen() {
    let t = TransformSpec::odometer();
    let u = ProductClopen::new([ProductCylinder::new([(0, word("0"))])]);
    let pts = [Point::zeros()];
    let rep = lambalgen_construct(&u, &pts, &t, 8).unwrap();
    assert_eq!(rep.indices, vec![1]);
    assert!(rep.verified && verify_outside(&u, &pts, &t, &rep.indices).unwrap());

    let cells: Vec<ProductCylinder> = Word::all_of_length(2)
        .flat_map(|w0| Word::all_of_length(2).map(move |w1| ProductCylinder::new([(0, w0.clone()), (1, w1)])))
        .collect();
    let point_pairs = [
        [Point::zeros(), Point::zeros()],
        [Point::periodic("", "01"), Point::periodic("", "1")],
    ];
    let mut instances = 0;
    for mask in 0u32..(1 << cells.len()) {
        if mask.count_ones() > 8 {
            continue;
        }
        let u = ProductClopen::new(cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c.clone()));
        assert!(product_measure(&u) <= rat(1, 2));
        instances += 1;
        for pts in &point_pairs {
            match lambalgen_construct(&u, pts, &t, 8) {
                Ok(rep) => {
                    for (i, m) in rep.threshold_measures.iter().enumerate() {
                        assert!(*m <= ladder(i), "mask={mask:#x} i={i}");
                    }
                    assert!(rep.verified && verify_outside(&u, pts, &t, &rep.indices).unwrap());
                }
                Err(Error::PointTrapped { coordinate, v_measure, orbit, .. }) => {
                    assert!(*v_measure <= ladder(coordinate));
                    // The trapped orbit must really stay inside V_i.
                    let depth = u.depth_at(coordinate);
                    let mut o = Orbit::new(&t, pts[coordinate].clone(), depth);
                    for w in &orbit {
                        assert_eq!(&o.next_prefix().unwrap(), w);
                    }
                }
                Err(e) => panic!("mask={mask:#x}: {e}"),
            }
        }
    }
    assert_eq!(instances, 39203);
}

fn c14_round_trip(certs: &[CoverCertificate]) {
    assert_eq!(certs.len(), 4);
    for cert in certs {
        let json = cert.to_json();
        let back = CoverCertificate::from_json(&json).unwrap();
        assert!(back.reverify());
        assert!(back.check_stages().iter().all(|c| c.matches_recorded && c.within_bound));
        assert_eq!(back.to_json(), json);
    }
}

fn run(number: usize, name: &str, budget_secs: u64, f: impl FnOnce()) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_secs);
    let ok = outcome.is_ok() && in_time;
    let note = match (&outcome, in_time) {
        (Err(_), _) => " (assertion failed)",
        (Ok(()), false) => " (over time budget)",
        _ => "",
    };
    println!(
        "{} {number:>2} {name:<34} {:>8.3}s / {budget_secs}s{note}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn main() {
    let mut certs = Vec::new();
    let results = [
        run(1, "kucera iteration bound", 1, || c1_kucera(&mut certs)),
        run(2, "finite-change cover bound", 10, c2_finite_change),
        run(3, "section-average identity", 10, c3_section_average),
        run(4, "prefix-family remainder", 1, c4_prefix_family),
        run(5, "lemma1_k minimality", 1, c5_lemma1),
        run(6, "L2 closed form", 5, c6_l2),
        run(7, "ergodic cover", 30, || c7_ergodic(&mut certs)),
        run(8, "measure preservation", 5, c8_measure_preserving),
        run(9, "bidirectional cover", 10, || c9_bidirectional(&mut certs)),
        run(10, "odometer exact Birkhoff", 5, c10_odometer_birkhoff),
        run(11, "G_N truncation", 1, c11_gn),
        run(12, "statistical Birkhoff", 30, c12_statistical),
        run(13, "van Lambalgen ladder", 60, c13_lambalgen),
        run(14, "certificate round-trip", 5, || c14_round_trip(&certs)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
