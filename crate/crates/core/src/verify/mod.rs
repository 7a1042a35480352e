//! Scenario-level checks of the homology statements, each rendering a
//! pass/fail/skip verdict with expected and computed values.
//!
//! Every fingerprint comparison is paired with the degreewise oracle: the
//! Gröbner Hilbert function of each module involved must agree with the
//! oracle on the whole comparison window, and the oracle vectors themselves
//! must agree up to shift.

mod checks;
mod context;

use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::PolyMatrix;
use crate::koszul::{explicit_chi, sym_power_of_cokernel, KoszulSetup};
use crate::modcore::{fingerprint, ideal_grade, Fingerprint};
use crate::polyring::Polynomial;

pub use context::describe;
use context::Ctx;

/// The checks a scenario can request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Invariants,
    Prop1,
    Thm5,
    Cor3,
    Lemma4,
    Remark2,
    Selfdual,
    Projdim,
    Oracle,
    Remark6a,
}

impl CheckKind {
    /// All checks in execution order.
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Invariants,
        CheckKind::Prop1,
        CheckKind::Thm5,
        CheckKind::Cor3,
        CheckKind::Lemma4,
        CheckKind::Remark2,
        CheckKind::Selfdual,
        CheckKind::Projdim,
        CheckKind::Remark6a,
        CheckKind::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Invariants => "invariants",
            CheckKind::Prop1 => "prop1",
            CheckKind::Thm5 => "thm5",
            CheckKind::Cor3 => "cor3",
            CheckKind::Lemma4 => "lemma4",
            CheckKind::Remark2 => "remark2",
            CheckKind::Selfdual => "selfdual",
            CheckKind::Projdim => "projdim",
            CheckKind::Oracle => "oracle",
            CheckKind::Remark6a => "remark6a",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

/// How `χ` is specified.
#[derive(Clone, Debug)]
pub enum ChiSpec {
    /// `χ(z_i) = (-1)^i x_{n+1-i}`; requires `m = 1`.
    Explicit,
    Given(Vec<Polynomial>),
}

/// A parsed scenario.
#[derive(Clone, Debug)]
pub struct ScenarioInput {
    pub psi: PolyMatrix,
    pub chi: ChiSpec,
    pub degree_bound: i64,
    pub seed: u64,
    pub checks: Vec<CheckKind>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymPowerRow {
    pub j: usize,
    pub fingerprint: Fingerprint,
}

/// `m, n, r, g, h`, the minor ideal and the fingerprints of `S^j(C)`.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioInvariants {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub g: usize,
    pub h: usize,
    pub minor_ideal: Vec<String>,
    pub chi: Vec<String>,
    pub chi_in_minor_ideal: bool,
    pub symmetric_powers: Vec<SymPowerRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One compared quantity inside a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Detail {
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
    /// First degree where a Hilbert comparison failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

impl Detail {
    pub fn new(item: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, ok: bool) -> Self {
        Detail {
            item: item.into(),
            expected: expected.into(),
            computed: computed.into(),
            ok,
            degree: None,
        }
    }

    pub fn flag(item: impl Into<String>, ok: bool) -> Self {
        Detail::new(item, "true", ok.to_string(), ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckVerdict {
    pub name: String,
    pub status: Status,
    /// `certificate` for exact verifications, `evidence` for randomized
    /// support of a universally quantified statement.
    pub strength: String,
    pub details: Vec<Detail>,
    /// The first failing item, with its degree when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckVerdict {
    pub(crate) fn from_details(name: &str, details: Vec<Detail>) -> Self {
        let first_bad = details.iter().find(|d| !d.ok);
        let reproducer = first_bad.map(|d| match d.degree {
            Some(deg) => format!("{} (degree {deg})", d.item),
            None => d.item.clone(),
        });
        CheckVerdict {
            name: name.into(),
            status: if first_bad.is_some() { Status::Fail } else { Status::Pass },
            strength: "certificate".into(),
            details,
            reproducer,
            notes: Vec::new(),
        }
    }

    pub(crate) fn skip(name: &str, why: &str) -> Self {
        CheckVerdict {
            name: name.into(),
            status: Status::Skip,
            strength: "certificate".into(),
            details: Vec::new(),
            reproducer: None,
            notes: vec![why.into()],
        }
    }

    pub(crate) fn error(name: &str, e: &Error) -> Self {
        CheckVerdict::from_details(name, vec![Detail::new("construction", "success", e.to_string(), false)])
    }
}

/// A fingerprint comparison, recorded for the report table.
#[derive(Clone, Debug, Serialize)]
pub struct FingerprintRow {
    pub check: String,
    pub complex: String,
    pub position: String,
    pub expected: String,
    pub fingerprint: Fingerprint,
    pub window_start: i64,
    pub gb_hilbert: Vec<usize>,
    pub oracle_hilbert: Vec<usize>,
    pub matches: bool,
}

/// The sign under which a comparison square commutes.
#[derive(Clone, Debug, Serialize)]
pub struct SignRecord {
    pub p: usize,
    pub sign: Option<i64>,
}

/// Everything a run produces. Timings are wall-clock seconds per check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub invariants: ScenarioInvariants,
    pub verdicts: Vec<CheckVerdict>,
    pub fingerprints: Vec<FingerprintRow>,
    pub signs: Vec<SignRecord>,
    pub oracle_agreement: bool,
    pub timings: Vec<(String, f64)>,
}

impl Outcome {
    /// All non-skipped checks passed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }
}

/// Resolves the scenario's `χ` entries.
pub fn resolve_chi(input: &ScenarioInput) -> Result<Vec<Polynomial>> {
    match &input.chi {
        ChiSpec::Explicit => explicit_chi(&input.psi),
        ChiSpec::Given(v) => Ok(v.clone()),
    }
}

/// Computes the invariants and the shared setup. Refuses the scenario when
/// `grade I_M != r + 1`.
pub fn compute_invariants(input: &ScenarioInput) -> Result<(ScenarioInvariants, KoszulSetup)> {
    let psi = &input.psi;
    let (m, n) = (psi.nrows(), psi.ncols());
    if n <= m {
        return Err(Error::InvalidArgument(format!("need n > m, got m = {m}, n = {n}")));
    }
    let r = n - m;
    let ring = psi.ring();
    let minors = crate::modcore::fitting_ideal(psi, m)?;
    let g = ideal_grade(ring, &minors)?;
    if g != Some(r + 1) {
        let shown = g.map_or("infinite (unit ideal)".to_string(), |g| g.to_string());
        return Err(Error::Refused(format!(
            "grade of the maximal-minor ideal is {shown}, but r + 1 = {}",
            r + 1
        )));
    }
    let chi = resolve_chi(input)?;
    let setup = KoszulSetup::new(psi, &chi)?;
    let h = ideal_grade(ring, &chi)?
        .ok_or_else(|| Error::Invariant("Im chi is the unit ideal".into()))?;
    let ideal = crate::modcore::Subquotient::cyclic(ring, &minors)?;
    let rels = ideal.rels_gb();
    let mut inside = true;
    for p in &chi {
        inside &= rels.contains(std::slice::from_ref(p))?;
    }
    let mut symmetric_powers = Vec::new();
    for j in 0..=r.div_ceil(2) {
        let s = sym_power_of_cokernel(psi, j)?;
        symmetric_powers.push(SymPowerRow {
            j,
            fingerprint: fingerprint(&s, input.degree_bound),
        });
    }
    Ok((
        ScenarioInvariants {
            m,
            n,
            r,
            g: r + 1,
            h,
            minor_ideal: minors.iter().map(|p| p.to_string()).collect(),
            chi: chi.iter().map(|p| p.to_string()).collect(),
            chi_in_minor_ideal: inside,
            symmetric_powers,
        },
        setup,
    ))
}

/// Runs the requested checks in dependency order.
pub fn run(input: &ScenarioInput) -> Result<Outcome> {
    let t0 = Instant::now();
    let (inv, setup) = compute_invariants(input)?;
    let mut timings = vec![("setup".to_string(), t0.elapsed().as_secs_f64())];
    let mut ctx = Ctx::new(input, inv.clone(), setup);
    let mut verdicts = Vec::new();
    for kind in CheckKind::ALL {
        if !input.checks.contains(&kind) {
            continue;
        }
        let t = Instant::now();
        let v = checks::run_check(&mut ctx, kind);
        timings.push((kind.name().to_string(), t.elapsed().as_secs_f64()));
        verdicts.push(v);
    }
    let (fingerprints, signs, oracle_agreement) = ctx.finish();
    Ok(Outcome {
        invariants: inv,
        verdicts,
        fingerprints,
        signs,
        oracle_agreement,
        timings,
    })
}
