use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use ginlab::divisor::numerical_exceptional_classes;
use ginlab::gin::{gin_staircase_with, shgh_gin_closed_form};
use ginlab::hilbert::{expected_dimension, HilbertEngine};
use ginlab::limit::check_convergence;
use ginlab::{
    colength, collinear_shape_check, exceptional_classes, product_contained, DivisorClass,
    PointConfig, Result,
};

fn general(r: usize) -> PointConfig {
    PointConfig::general(r).unwrap()
}

fn all_configs() -> Vec<PointConfig> {
    let mut v: Vec<_> = (2..=8).map(general).collect();
    v.extend((9..=16).map(|r| PointConfig::shgh(r).unwrap()));
    v.extend((3..=5).map(|l| PointConfig::collinear(l).unwrap()));
    v
}

fn class_counts() -> Result<String> {
    let expected = [3, 6, 10, 16, 27, 56, 240];
    let mut problems = Vec::new();
    for (r, want) in (2..=8).zip(expected) {
        let listed: BTreeSet<DivisorClass> = exceptional_classes(general(r))?.into_iter().collect();
        let brute: BTreeSet<DivisorClass> = numerical_exceptional_classes(r)?.into_iter().collect();
        if listed != brute || listed.len() != want {
            problems.push(format!(
                "r={r}: listed {} brute {} want {want}",
                listed.len(),
                brute.len()
            ));
        }
    }
    problems
        .is_empty()
        .then(|| "3, 6, 10, 16, 27, 56, 240".to_string())
        .ok_or_else(|| fail(problems))
}

fn fail(problems: Vec<String>) -> ginlab::Error {
    ginlab::Error::Precondition(problems.join("; "))
}

fn step_values(
    r: usize,
    m: u64,
    alpha: u64,
    h_alpha: u64,
    h_next: u64,
    top: u64,
) -> Result<String> {
    let engine = HilbertEngine::new(general(r))?;
    let s = gin_staircase_with(&engine, m)?;
    let got = (
        s.alpha(),
        engine.value(m, alpha)?,
        engine.value(m, alpha + 1)?,
        s.max_generator_degree(),
    );
    let want = (alpha, h_alpha, h_next, top);
    if got == want {
        Ok(format!(
            "alpha={} H(alpha)={} H(alpha+1)={} top degree={}",
            got.0, got.1, got.2, got.3
        ))
    } else {
        Err(fail(vec![format!("got {got:?}, want {want:?}")]))
    }
}

fn colength_identity() -> Result<String> {
    let mut count = 0;
    for config in all_configs() {
        let engine = HilbertEngine::new(config)?;
        for m in 1..=50 {
            colength(&gin_staircase_with(&engine, m)?)?;
            count += 1;
        }
    }
    Ok(format!("{count} staircases"))
}

fn convergence() -> Result<String> {
    let mut cases: Vec<(PointConfig, Vec<u64>)> = vec![
        (general(6), (1..=10).map(|k| 10 * k).collect()),
        (general(7), (1..=10).map(|k| 24 * k).collect()),
        (general(8), (1..=5).map(|k| 102 * k).collect()),
    ];
    for r in 2..=5 {
        cases.push((general(r), (1..=20).map(|k| 2 * k).collect()));
    }
    for r in [9, 16] {
        cases.push((PointConfig::shgh(r).unwrap(), (1..=50).collect()));
    }
    let mut problems = Vec::new();
    let mut checks = 0;
    for (config, ms) in cases {
        let rep = check_convergence(config, &ms)?;
        checks += rep.checks.len();
        problems.extend(rep.failures());
    }
    problems
        .is_empty()
        .then(|| format!("{checks} intercept/area checks"))
        .ok_or_else(|| fail(problems))
}

fn engine_agreement() -> Result<String> {
    let mut problems = Vec::new();
    let mut count = 0;
    for r in 2..=8 {
        let engine = HilbertEngine::new(general(r))?;
        for m in 1..=30 {
            let n = engine.nef_threshold(m)?;
            for t in n..=n + 20 {
                count += 1;
                let h = engine.value(m, t)? as i128;
                let e = expected_dimension(r, m, t)?;
                if h != e {
                    problems.push(format!("r={r} m={m} t={t}: {h} vs {e}"));
                }
            }
        }
    }
    problems
        .is_empty()
        .then(|| format!("{count} values"))
        .ok_or_else(|| fail(problems))
}

fn shgh_closed_form() -> Result<String> {
    let mut problems = Vec::new();
    for r in 9..=12 {
        let engine = HilbertEngine::new(PointConfig::shgh(r)?)?;
        for m in 1..=50 {
            let built = gin_staircase_with(&engine, m)?;
            let closed = shgh_gin_closed_form(r, m)?;
            if built.generators() != closed.generators() {
                problems.push(format!("r={r} m={m}"));
            }
        }
    }
    problems
        .is_empty()
        .then(|| "r = 9..12, m = 1..50".to_string())
        .ok_or_else(|| fail(problems))
}

fn collinear() -> Result<String> {
    let mut problems = Vec::new();
    for l in 3..=5u64 {
        let p = l * (l - 1);
        let rep = collinear_shape_check(l as usize, &[p, 2 * p, 3 * p])?;
        if !rep.passed() {
            problems.push(format!("l={l}: {:?}", rep.records));
        }
        if rep.single_segment_area.0 <= rep.limit_area.0 {
            problems.push(format!(
                "l={l}: area {} <= {}",
                rep.single_segment_area, rep.limit_area
            ));
        }
    }
    problems
        .is_empty()
        .then(|| "l = 3, 4, 5 at m = l(l-1), 2l(l-1), 3l(l-1)".to_string())
        .ok_or_else(|| fail(problems))
}

fn graded_system() -> Result<String> {
    let mut problems = Vec::new();
    let mut count = 0;
    for config in all_configs() {
        let engine = HilbertEngine::new(config)?;
        for m in 1..=25 {
            let s = gin_staircase_with(&engine, m)?;
            let d = gin_staircase_with(&engine, 2 * m)?;
            count += 1;
            if let Err((g, h)) = product_contained(&s, &s, &d) {
                problems.push(format!("{config} m={m}: {g:?}*{h:?}"));
            }
        }
    }
    problems
        .is_empty()
        .then(|| format!("{count} products"))
        .ok_or_else(|| fail(problems))
}

type Criterion = (&'static str, fn() -> Result<String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "exceptional class counts match the numeric enumeration",
            class_counts,
        ),
        ("six points, m=10", || step_values(6, 10, 24, 1, 21, 26)),
        ("seven points, m=24", || step_values(7, 24, 63, 1, 45, 65)),
        ("eight points, m=102", || {
            step_values(8, 102, 288, 1, 171, 290)
        }),
        ("colength identity for m <= 50", colength_identity),
        ("intercept convergence", convergence),
        ("engine agreement past the nef threshold", engine_agreement),
        ("SHGH closed form equals reconstruction", shgh_closed_form),
        ("collinear generator degrees and area", collinear),
        ("graded system containment for m <= 25", graded_system),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS {name} ({detail}) [{ms} ms]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name}: {e} [{ms} ms]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
