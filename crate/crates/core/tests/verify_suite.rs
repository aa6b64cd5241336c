use ginlab::verify::Status;
use ginlab::{run_suite, PointConfig};

fn status(rep: &ginlab::VerifyReport, name: &str) -> Status {
    rep.checks.iter().find(|c| c.name == name).unwrap().status
}

#[test]
fn six_points_up_to_fifty() {
    let rep = run_suite("general:6".parse().unwrap(), 50).unwrap();
    assert!(rep.passed, "{}", rep.to_text());
    assert!(!rep.conjectural);
    assert_eq!(status(&rep, "exceptional_classes"), Status::Pass);
    assert_eq!(status(&rep, "convergence"), Status::Pass);
    assert_eq!(status(&rep, "shgh_closed_form"), Status::Skipped);
}

#[test]
fn nine_points_is_flagged_conjectural() {
    let rep = run_suite("shgh:9".parse().unwrap(), 50).unwrap();
    assert!(rep.passed, "{}", rep.to_text());
    assert!(rep.conjectural);
    assert_eq!(status(&rep, "shgh_closed_form"), Status::Pass);
    assert_eq!(status(&rep, "engine_agreement"), Status::Skipped);
}

#[test]
fn collinear_three_runs_the_degree_checks() {
    let rep = run_suite("collinear:3".parse().unwrap(), 36).unwrap();
    assert!(rep.passed, "{}", rep.to_text());
    assert_eq!(status(&rep, "collinear_degrees"), Status::Pass);
    assert_eq!(status(&rep, "convergence"), Status::Skipped);
}

#[test]
fn every_supported_small_config_passes() {
    let mut configs: Vec<PointConfig> = (2..=8).map(|r| PointConfig::general(r).unwrap()).collect();
    configs.extend([9, 16, 25].map(|r| PointConfig::shgh(r).unwrap()));
    configs.extend((3..=6).map(|l| PointConfig::collinear(l).unwrap()));
    for config in configs {
        let rep = run_suite(config, 30).unwrap();
        assert!(rep.passed, "{}", rep.to_text());
    }
}

#[test]
fn eight_points_reaches_its_period() {
    let rep = run_suite("general:8".parse().unwrap(), 102).unwrap();
    assert!(rep.passed, "{}", rep.to_text());
    assert_eq!(status(&rep, "convergence"), Status::Pass);
}

#[test]
fn large_r_exceeds_the_fixed_tolerance() {
    // the intercept error is about (sqrt(r) - 1)/(2m), above 3/m once sqrt(r) > 7
    let rep = run_suite("shgh:100".parse().unwrap(), 20).unwrap();
    assert_eq!(status(&rep, "convergence"), Status::Fail);
    assert!(rep.failures.iter().all(|f| f.starts_with("convergence:")));
}
