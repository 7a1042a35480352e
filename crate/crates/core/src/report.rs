//! Run reports: canonical JSON (schema `koszulab-report/1`) and a text table.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::verify::{self, describe, CheckVerdict, FingerprintRow, Outcome, ScenarioInvariants, SignRecord, Status};

pub const SCHEMA: &str = "koszulab-report/1";

/// Conventions every report states, since they fix signs and readings.
pub const CONVENTIONS: [&str; 4] = [
    "exterior bases are increasing index tuples in lexicographic order; symmetric bases are exponent vectors in descending lexicographic order",
    "orientations: delta(z_1 ^ ... ^ z_n) = 1 and gamma(e_1 ^ ... ^ e_m) = 1",
    "N^p is the kernel of the column map d_psi: wedge^p G -> wedge^(p-1) G (x) F",
    "I_M is the ideal of maximal minors of psi; fingerprints are compared up to a degree shift",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Pass,
    Fail,
    Refused,
}

impl RunStatus {
    /// Process exit code: 0 pass, 1 check failure, 2 refusal.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Pass => 0,
            RunStatus::Fail => 1,
            RunStatus::Refused => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub name: String,
    pub scenario: Scenario,
    pub status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<ScenarioInvariants>,
    pub checks: Vec<CheckVerdict>,
    pub fingerprints: Vec<FingerprintRow>,
    pub signs: Vec<SignRecord>,
    pub oracle_agreement: bool,
    pub conventions: Vec<&'static str>,
    /// Wall-clock seconds; shown in text output only so that JSON stays
    /// byte-stable.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Runs a scenario. Refusals become reports; other errors are returned.
pub fn run_scenario(name: &str, scenario: &Scenario) -> Result<Report> {
    let mut echo = scenario.clone();
    echo.degree_bound = Some(scenario.effective_degree_bound());
    echo.checks = Some(
        scenario
            .effective_checks()?
            .iter()
            .map(|k| k.name().to_string())
            .collect(),
    );
    let input = scenario.to_input()?;
    let mut report = Report {
        schema: SCHEMA,
        name: name.to_string(),
        scenario: echo,
        status: RunStatus::Pass,
        refusal: None,
        invariants: None,
        checks: Vec::new(),
        fingerprints: Vec::new(),
        signs: Vec::new(),
        oracle_agreement: true,
        conventions: CONVENTIONS.to_vec(),
        timings: Vec::new(),
    };
    match verify::run(&input) {
        Err(Error::Refused(why)) => {
            report.status = RunStatus::Refused;
            report.refusal = Some(why);
            Ok(report)
        }
        Err(e) => Err(e),
        Ok(out) => {
            fill(&mut report, out);
            Ok(report)
        }
    }
}

fn fill(report: &mut Report, out: Outcome) {
    report.status = if out.passed() && out.oracle_agreement {
        RunStatus::Pass
    } else {
        RunStatus::Fail
    };
    report.invariants = Some(out.invariants);
    report.checks = out.verdicts;
    report.fingerprints = out.fingerprints;
    report.signs = out.signs;
    report.oracle_agreement = out.oracle_agreement;
    report.timings = out.timings;
}

/// Pretty JSON with keys in sorted order and a trailing newline.
pub fn to_json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    }
}

pub fn to_text(report: &Report) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "scenario {} ({})", report.name, SCHEMA);
    let status = match report.status {
        RunStatus::Pass => "pass",
        RunStatus::Fail => "fail",
        RunStatus::Refused => "refused",
    };
    let _ = writeln!(o, "status: {status}");
    if let Some(why) = &report.refusal {
        let _ = writeln!(o, "refusal: {why}");
        return o;
    }
    if let Some(inv) = &report.invariants {
        let _ = writeln!(o, "m = {}, n = {}, r = {}, g = {}, h = {}", inv.m, inv.n, inv.r, inv.g, inv.h);
        let _ = writeln!(o, "I_M = ({})", inv.minor_ideal.join(", "));
        let _ = writeln!(o, "chi = ({})", inv.chi.join(", "));
        for s in &inv.symmetric_powers {
            let _ = writeln!(o, "S^{}(C): {}", s.j, describe(&s.fingerprint));
        }
    }
    let _ = writeln!(o);
    let trunc: Vec<&FingerprintRow> = report
        .fingerprints
        .iter()
        .filter(|r| r.complex == "truncated-koszul" && r.check == "thm5")
        .collect();
    if !trunc.is_empty() {
        let _ = writeln!(o, "{:<8} {:<12} {:<6} computed", "module", "expected", "match");
        for r in trunc {
            let _ = writeln!(
                o,
                "{:<8} {:<12} {:<6} {}",
                r.position,
                r.expected,
                if r.matches { "yes" } else { "no" },
                describe(&r.fingerprint)
            );
        }
        let _ = writeln!(o);
    }
    for v in &report.checks {
        let _ = writeln!(o, "[{}] {} ({})", status_word(v.status), v.name, v.strength);
        for d in &v.details {
            let mark = if d.ok { " " } else { "!" };
            let _ = writeln!(o, "  {mark} {}: expected {}; computed {}", d.item, d.expected, d.computed);
        }
        if let Some(r) = &v.reproducer {
            let _ = writeln!(o, "  reproducer: {r}");
        }
        for n in &v.notes {
            let _ = writeln!(o, "  note: {n}");
        }
    }
    if !report.signs.is_empty() {
        let signs: Vec<String> = report
            .signs
            .iter()
            .map(|s| format!("p={}: {}", s.p, s.sign.map_or("none".into(), |x| if x > 0 { "+".to_string() } else { "-".to_string() })))
            .collect();
        let _ = writeln!(o, "square signs: {}", signs.join(", "));
    }
    let _ = writeln!(o, "engine/oracle agreement: {}", report.oracle_agreement);
    if !report.timings.is_empty() {
        let t: Vec<String> = report.timings.iter().map(|(k, s)| format!("{k} {s:.2}s")).collect();
        let _ = writeln!(o, "timings: {}", t.join(", "));
    }
    o
}
