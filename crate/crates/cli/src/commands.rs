use kucera_core::birkhoff::{
    approximable_frequency, birkhoff_experiment, frequency_trace, gn_exceed_set, integral, lsc_average,
    ApproximableSet, BasicFunction, LscFunction,
};
use kucera_core::cantor::rational::format_rational;
use kucera_core::covers::{
    bidirectional_cover, block_factorization_witness, enumerable_shift_cover, ergodic_cover, ergodic_cover_iterate,
    finite_change_certificate, kucera_iterate, kucera_iterate_assumed, prefix_addition_cover, Mode,
};
use kucera_core::lambalgen::lambalgen_construct;
use kucera_core::transforms::check_measure_preserving;
use kucera_core::{
    Budgets, ClopenSet, CoverCertificate, EffOpenDescriptor, Error, MeasureSpec, Point, ProductClopen, Result, Word,
};
use serde::Serialize;
use serde_json::json;

use crate::input::{assignment, bi_set, eff_open, json, rational, read_source, transform, word};
use crate::{BirkhoffCmd, BudgetArgs, Command, CoverCmd, Format, LambalgenCmd, Outcome, TransformCmd};

/// Compact JSON with sorted keys and a trailing newline.
fn emit<T: Serialize>(v: &T) -> Result<String> {
    let v = serde_json::to_value(v).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(format!("{v}\n"))
}

fn budgets(args: &BudgetArgs) -> Result<Budgets> {
    let mut b = Budgets::default();
    let positive = |flag: &str, v: u64| {
        if v == 0 {
            Err(Error::Malformed(format!("--{flag} must be positive")))
        } else {
            Ok(())
        }
    };
    if let Some(v) = args.depth {
        positive("depth", v as u64)?;
        b.depth = v;
    }
    if let Some(v) = args.budget {
        positive("budget", v)?;
        b.n = v;
    }
    if let Some(v) = args.l2_n {
        positive("l2-n", v)?;
        b.l2_n = v;
    }
    if let Some(v) = args.pulls {
        positive("pulls", v as u64)?;
        b.pulls = v;
    }
    if let Some(v) = args.family {
        positive("family", v as u64)?;
        b.family = v;
    }
    Ok(b)
}

fn measure(raw: &Option<String>) -> Result<MeasureSpec> {
    let m = match raw {
        Some(raw) => json::<MeasureSpec>("--measure", raw)?,
        None => MeasureSpec::Uniform,
    };
    m.validate()?;
    Ok(m)
}

fn point(flag: &str, raw: &str) -> Result<Point> {
    let p: Point = json(flag, raw)?;
    p.validate()?;
    Ok(p)
}

fn certificate(cert: CoverCertificate) -> Result<(String, Outcome)> {
    let outcome = if cert.mode == Mode::Exact && !cert.verified {
        Outcome::VerificationFailed
    } else {
        Outcome::Ok
    };
    Ok((format!("{}\n", cert.to_json()), outcome))
}

fn ok(text: String) -> Result<(String, Outcome)> {
    Ok((text, Outcome::Ok))
}

pub fn run(cmd: Command) -> Result<(String, Outcome)> {
    match cmd {
        Command::Cover(c) => cover(c),
        Command::Transform(c) => transform_cmd(c),
        Command::Birkhoff(c) => birkhoff(c),
        Command::Lambalgen(c) => lambalgen(c),
        Command::Factorize { blocks, point: p, max_len } => {
            let blocks: Vec<Word> = json("--blocks", &blocks)?;
            ok(emit(&block_factorization_witness(&blocks, &point("--point", &p)?, max_len)?)?)
        }
        Command::Verify { certificate } => verify(&certificate),
    }
}

fn cover(cmd: CoverCmd) -> Result<(String, Outcome)> {
    match cmd {
        CoverCmd::Kucera { set, r, k, fuel } => {
            let r = r.map(|r| rational("--r", &r)).transpose()?;
            match eff_open("--set", &set)? {
                EffOpenDescriptor::Inline(a) => {
                    let r = r.unwrap_or_else(|| a.uniform_measure());
                    certificate(kucera_iterate(&a, &r, k)?)
                }
                desc => {
                    let mut open = desc.build();
                    let r = r
                        .or_else(|| open.assumed_measure_upper.clone())
                        .ok_or_else(|| Error::Malformed("an enumerated --set needs --r or assumed_upper".into()))?;
                    certificate(kucera_iterate_assumed(&mut open, &r, k, fuel)?)
                }
            }
        }
        CoverCmd::FiniteChange { set, x } => {
            let a: ClopenSet = json("--set", &set)?;
            certificate(finite_change_certificate(&a, &word("--x", &x)?)?)
        }
        CoverCmd::PrefixAdd { set, r, s, x, budgets: b } => {
            let a: ClopenSet = json("--set", &set)?;
            certificate(prefix_addition_cover(
                &a,
                &rational("--r", &r)?,
                &rational("--s", &s)?,
                &word("--x", &x)?,
                &budgets(&b)?,
            )?)
        }
        CoverCmd::Bidirectional { set, r, s, x, budgets: b } => certificate(bidirectional_cover(
            &bi_set("--set", &set)?,
            &rational("--r", &r)?,
            &rational("--s", &s)?,
            &assignment("--x", &x)?,
            &budgets(&b)?,
        )?),
        CoverCmd::EnumShift { set, r, s, x, shifts, stride, budgets: b } => {
            let a = bi_set("--set", &set)?;
            let (r, s, x, b) = (rational("--r", &r)?, rational("--s", &s)?, assignment("--x", &x)?, budgets(&b)?);
            let cert = match (shifts, stride) {
                (Some(list), _) => enumerable_shift_cover(&a, &r, &s, json::<Vec<i64>>("--shifts", &list)?, &x, &b)?,
                (None, Some(d)) if d != 0 => enumerable_shift_cover(&a, &r, &s, (1..).map(|i| i * d), &x, &b)?,
                _ => return Err(Error::Malformed("give --shifts or a non-zero --stride".into())),
            };
            certificate(cert)
        }
        CoverCmd::Ergodic { transform: t, set, r, x, k, measure: m, budgets: b } => {
            let (t, a, r, m, b) = (
                transform("--transform", &t)?,
                json::<ClopenSet>("--set", &set)?,
                rational("--r", &r)?,
                measure(&m)?,
                budgets(&b)?,
            );
            let cert = match k {
                Some(k) => ergodic_cover_iterate(&t, &a, &r, k, &m, &b)?,
                None => ergodic_cover(&t, &a, &r, &word("--x", &x)?, &m, &b)?,
            };
            certificate(cert)
        }
    }
}

fn transform_cmd(cmd: TransformCmd) -> Result<(String, Outcome)> {
    let TransformCmd::Check { name, transform: desc, depth, measure: m } = cmd;
    let t = match (name, desc) {
        (Some(n), None) | (None, Some(n)) => transform("--transform", &n)?,
        _ => return Err(Error::Malformed("give --name or --transform".into())),
    };
    let report = check_measure_preserving(&t, depth, &measure(&m)?)?;
    let outcome = if report.passed { Outcome::Ok } else { Outcome::VerificationFailed };
    Ok((emit(&report)?, outcome))
}

fn birkhoff(cmd: BirkhoffCmd) -> Result<(String, Outcome)> {
    match cmd {
        BirkhoffCmd::Trace { transform: t, set, point: p, n, format } => {
            let trace = frequency_trace(&transform("--transform", &t)?, &json("--set", &set)?, &point("--point", &p)?, n)?;
            match format {
                Format::Csv => ok(trace.to_csv()),
                Format::Json => {
                    let g: Vec<String> = trace.values().iter().map(format_rational).collect();
                    ok(emit(&json!({ "trace": trace, "g": g }))?)
                }
            }
        }
        BirkhoffCmd::Experiment { transform: t, set, seeds, points, n, measure: m, tolerance } => {
            let mut pts: Vec<Point> = seeds.into_iter().map(Point::seeded).collect();
            if let Some(raw) = points {
                pts.extend(json::<Vec<Point>>("--points", &raw)?);
            }
            if pts.is_empty() {
                return Err(Error::Malformed("give --seeds or --points".into()));
            }
            for p in &pts {
                p.validate()?;
            }
            let mut report = birkhoff_experiment(&transform("--transform", &t)?, &json("--set", &set)?, &pts, n, &measure(&m)?)?;
            if let Some(tol) = tolerance {
                if tol.is_nan() || tol < 0.0 {
                    return Err(Error::Malformed("--tolerance must be non-negative".into()));
                }
                let seeded: Vec<f64> = report
                    .points
                    .iter()
                    .filter(|p| matches!(p.point, Point::Seeded { .. }))
                    .map(|p| p.deviation)
                    .collect();
                report.tolerance = tol;
                report.seeded_within_tolerance =
                    (!seeded.is_empty()).then(|| seeded.iter().sum::<f64>() / seeded.len() as f64 <= tol);
            }
            let outcome = match report.seeded_within_tolerance {
                Some(false) => Outcome::VerificationFailed,
                _ => Outcome::Ok,
            };
            Ok((emit(&report)?, outcome))
        }
        BirkhoffCmd::Gn { transform: t, set, r, big_n, n_max, measure: m, budgets: b } => {
            let u: ClopenSet = json("--set", &set)?;
            let r = rational("--r", &r)?;
            let (exceed, mu) = gn_exceed_set(&transform("--transform", &t)?, &u, &r, big_n, n_max, &measure(&m)?, &budgets(&b)?)?;
            ok(emit(&json!({
                "set": u,
                "r": format_rational(&r),
                "big_n": big_n,
                "n_max": n_max,
                "exceed_set": exceed,
                "measure": format_rational(&mu),
            }))?)
        }
        BirkhoffCmd::Lsc { stages, transform: t, point: p, n } => {
            let raw: Vec<BasicFunction> = json("--stages", &stages)?;
            let count = raw.len();
            let checked = raw
                .into_iter()
                .map(|f| BasicFunction::new(f.terms.into_iter().map(|t| (t.coef, t.word))))
                .collect::<Result<Vec<_>>>()?;
            let depth = checked.iter().map(BasicFunction::depth).max().unwrap_or(0);
            let f = LscFunction::from_stages(checked)?;
            f.check_monotone(count.saturating_sub(1), depth)?;
            let (t, p) = (transform("--transform", &t)?, point("--point", &p)?);
            let rows = (0..count)
                .map(|i| {
                    Ok(json!({
                        "stage": i,
                        "average": format_rational(&lsc_average(&f, i, &t, &p, n)?),
                        "integral": format_rational(&integral(&f.stage(i), &MeasureSpec::Uniform)),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            ok(emit(&json!({ "n": n, "stages": rows }))?)
        }
        BirkhoffCmd::Approx { set, precision, transform: t, point: p, n } => {
            let x: ApproximableSet = json("--set", &set)?;
            if let ApproximableSet::Interval { lo, hi } = &x {
                ApproximableSet::interval(lo.clone(), hi.clone())?;
            }
            let (low, high) = approximable_frequency(&x, precision, &transform("--transform", &t)?, &point("--point", &p)?, n)?;
            ok(emit(&json!({
                "precision": precision,
                "n": n,
                "inner_measure": format_rational(&x.inner(precision).uniform_measure()),
                "outer_measure": format_rational(&x.outer(precision).uniform_measure()),
                "low": format_rational(&low),
                "high": format_rational(&high),
            }))?)
        }
    }
}

fn lambalgen(cmd: LambalgenCmd) -> Result<(String, Outcome)> {
    let LambalgenCmd::Construct { u, points, transform: t, budget } = cmd;
    let u: ProductClopen = json("--u", &u)?;
    let pts: Vec<Point> = json("--points", &points)?;
    let report = lambalgen_construct(&u, &pts, &transform("--transform", &t)?, budget)?;
    let outcome = if report.verified { Outcome::Ok } else { Outcome::VerificationFailed };
    Ok((emit(&report)?, outcome))
}

fn verify(raw: &str) -> Result<(String, Outcome)> {
    let text = read_source("--certificate", raw)?;
    let cert = CoverCertificate::from_json(&text)?;
    let checks = cert.check_stages();
    let consistent = cert.reverify();
    let stages: Vec<_> = checks
        .iter()
        .zip(&cert.stages)
        .map(|(c, s)| {
            json!({
                "recorded": format_rational(&s.measure),
                "recomputed": format_rational(&c.recomputed),
                "bound": format_rational(&s.bound),
                "matches_recorded": c.matches_recorded,
                "within_bound": c.within_bound,
            })
        })
        .collect();
    let passed = consistent && (cert.verified || cert.mode == Mode::Assumed);
    let text = emit(&json!({
        "construction": cert.construction,
        "mode": cert.mode,
        "verified": cert.verified,
        "consistent": consistent,
        "stages": stages,
    }))?;
    Ok((text, if passed { Outcome::Ok } else { Outcome::VerificationFailed }))
}
