use koszulab::report::{run_scenario, RunStatus};
use koszulab::scenario::Scenario;
use koszulab::verify::{compute_invariants, CheckKind, Status};
use koszulab::Error;

fn scenario(json: &str) -> Scenario {
    Scenario::from_json(json).unwrap()
}

#[test]
fn grade_hypothesis_failure_is_a_refusal() {
    let sc = scenario(r#"{"variables":["X","Y"],"psi":[["X","X"]],"chi":["X","-X"]}"#);
    assert!(matches!(compute_invariants(&sc.to_input().unwrap()), Err(Error::Refused(_))));
    let report = run_scenario("refuse", &sc).unwrap();
    assert_eq!(report.status, RunStatus::Refused);
    assert!(report.checks.is_empty());
}

#[test]
fn chi_outside_the_kernel_is_rejected() {
    let sc = scenario(r#"{"variables":["X","Y"],"psi":[["X","Y"]],"chi":["Y","X"]}"#);
    assert!(run_scenario("bad-chi", &sc).is_err());
}

#[test]
fn explicit_chi_needs_even_n() {
    let sc = scenario(r#"{"variables":["X","Y","Z"],"psi":[["X","Y","Z"]],"chi":"explicit"}"#);
    assert!(run_scenario("odd", &sc).is_err());
}

#[test]
fn unknown_fields_and_checks_are_rejected() {
    assert!(Scenario::from_json(r#"{"variables":["X"],"psi":[["X"]],"chi":["1"],"extra":1}"#).is_err());
    let mut sc = scenario(r#"{"variables":["X","Y"],"psi":[["X","Y"]],"chi":["-Y","X"]}"#);
    sc.checks = Some(vec!["thm6".into()]);
    assert!(sc.effective_checks().is_err());
}

#[test]
fn default_degree_bound_and_checks() {
    let sc = scenario(r#"{"variables":["X","Y","Z"],"psi":[["X","Y","Z"]],"chi":["Y","-X","0"]}"#);
    assert_eq!(sc.effective_degree_bound(), 5);
    assert_eq!(sc.effective_checks().unwrap(), CheckKind::ALL.to_vec());
}

/// Smallest case with grade Im χ below g: ψ = (x, y, z), χ = (y, -x, 0),
/// so h = 2 = r and g = 3. The truncated Koszul homology behaves as
/// predicted, while H^0(C_3) picks up the nonzero H̄^2 and equals R/(x, y)
/// rather than S^1(C) = k.
#[test]
fn low_grade_chi_in_three_variables() {
    let sc = scenario(r#"{"variables":["x","y","z"],"psi":[["x","y","z"]],"chi":["y","-x","0"]}"#);
    let report = run_scenario("low-grade", &sc).unwrap();
    let inv = report.invariants.as_ref().unwrap();
    assert_eq!((inv.r, inv.g, inv.h), (2, 3, 2));
    assert!(report.oracle_agreement);

    let status = |name: &str| report.checks.iter().find(|c| c.name == name).unwrap().status;
    for name in ["invariants", "prop1", "thm5", "cor3", "lemma4", "projdim", "remark6a", "oracle"] {
        assert_eq!(status(name), Status::Pass, "{name}");
    }
    assert_eq!(status("remark2"), Status::Fail);
    assert_eq!(report.status, RunStatus::Fail);

    let row = report
        .fingerprints
        .iter()
        .find(|f| f.check == "remark2" && f.complex == "C_3" && f.position == "H^0")
        .unwrap();
    assert!(!row.matches);
    assert_eq!(row.oracle_hilbert, vec![1; 6]);
    let remark2 = report.checks.iter().find(|c| c.name == "remark2").unwrap();
    assert!(remark2.notes.iter().any(|n| n.ends_with("on the window: true")));
}
