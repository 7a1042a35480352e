//! Scenario files (JSON) and the built-in scenarios.
//!
//! ```json
//! {
//!   "char": 32003,
//!   "variables": ["X", "Y"],
//!   "psi": [["X", "Y"]],
//!   "chi": "explicit",
//!   "degree_bound": 3,
//!   "seed": 0,
//!   "checks": ["invariants", "thm5"]
//! }
//! ```
//!
//! `psi` is the `m × n` matrix of `ψ: G -> F`. `chi` is either `"explicit"`
//! (needs `m = 1`) or a list of `n` polynomials. `degree_bound` defaults to
//! the number of variables plus two, `seed` to 0 and `checks` to all.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::PolyMatrix;
use crate::polyring::{parse_polynomial, GroundField, MonomialOrder, PolyRing, DEFAULT_CHARACTERISTIC};
use crate::verify::{CheckKind, ChiSpec, ScenarioInput};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChiField {
    Keyword(String),
    Entries(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(rename = "char", default = "default_char")]
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub psi: Vec<Vec<String>>,
    pub chi: ChiField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

fn default_char() -> u32 {
    DEFAULT_CHARACTERISTIC
}

/// Command-line overrides applied on top of a scenario.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub degree_bound: Option<i64>,
    pub characteristic: Option<u32>,
    pub seed: Option<u64>,
    pub checks: Option<Vec<String>>,
}

impl Scenario {
    /// Parses scenario JSON; syntax errors carry the line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(d) = o.degree_bound {
            self.degree_bound = Some(d);
        }
        if let Some(c) = o.characteristic {
            self.characteristic = c;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(c) = &o.checks {
            self.checks = Some(c.clone());
        }
    }

    pub fn effective_degree_bound(&self) -> i64 {
        self.degree_bound.unwrap_or(self.variables.len() as i64 + 2)
    }

    pub fn effective_checks(&self) -> Result<Vec<CheckKind>> {
        match &self.checks {
            None => Ok(CheckKind::ALL.to_vec()),
            Some(list) => list.iter().map(|s| CheckKind::from_str(s)).collect(),
        }
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        PolyRing::new(
            GroundField::new(self.characteristic)?,
            self.variables.clone(),
            MonomialOrder::Grevlex,
        )
    }

    /// Parses the polynomials and assembles the check input.
    pub fn to_input(&self) -> Result<ScenarioInput> {
        let ring = self.ring()?;
        let located = |what: String, s: &str| {
            parse_polynomial(&ring, s).map_err(|e| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column,
                    message: format!("{what} = \"{s}\": {message}"),
                },
                other => other,
            })
        };
        if self.psi.is_empty() || self.psi[0].is_empty() {
            return Err(Error::InvalidArgument("psi must be a nonempty matrix".into()));
        }
        let n = self.psi[0].len();
        let mut rows = Vec::with_capacity(self.psi.len());
        for (i, row) in self.psi.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!("psi row {i} has {} entries, expected {n}", row.len())));
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, s)| located(format!("psi[{i}][{j}]"), s))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let psi = PolyMatrix::with_inferred_twists(&ring, rows)?;
        let chi = match &self.chi {
            ChiField::Keyword(k) if k == "explicit" => {
                if psi.nrows() != 1 {
                    return Err(Error::InvalidArgument("chi = \"explicit\" needs m = 1".into()));
                }
                ChiSpec::Explicit
            }
            ChiField::Keyword(k) => {
                return Err(Error::InvalidArgument(format!(
                    "chi must be \"explicit\" or a list of polynomials, got \"{k}\""
                )))
            }
            ChiField::Entries(v) => ChiSpec::Given(
                v.iter()
                    .enumerate()
                    .map(|(j, s)| located(format!("chi[{j}]"), s))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let degree_bound = self.effective_degree_bound();
        if degree_bound < 0 {
            return Err(Error::InvalidArgument("degree_bound must be nonnegative".into()));
        }
        Ok(ScenarioInput {
            psi,
            chi,
            degree_bound,
            seed: self.seed,
            checks: self.effective_checks()?,
        })
    }
}

/// Names and one-line descriptions of the built-in scenarios.
pub const BUILTINS: [(&str, &str); 5] = [
    ("koszul-n2", "psi = (X, Y), chi = (-Y, X)"),
    ("koszul-n4", "psi = (X1, ..., X4), explicit chi"),
    ("koszul-n6", "psi = (X1, ..., X6), explicit chi"),
    ("generic-2x4", "generic 2 x 4 linear matrix, chi = (p23, -p13, p12, 0) of grade 2"),
    ("hilbert-burch-r1", "generic 2 x 3 linear matrix, chi = signed maximal minors"),
];

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn linear_row(n: usize) -> (Vec<String>, Vec<Vec<String>>) {
    let vars: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    (vars.clone(), vec![vars])
}

/// The built-in scenario with the given name.
pub fn builtin(name: &str) -> Option<Scenario> {
    let base = |variables, psi, chi, degree_bound| Scenario {
        characteristic: DEFAULT_CHARACTERISTIC,
        variables,
        psi,
        chi,
        degree_bound,
        seed: 0,
        checks: None,
    };
    let explicit = || ChiField::Keyword("explicit".into());
    Some(match name {
        "koszul-n2" => base(
            strs(&["X", "Y"]),
            vec![strs(&["X", "Y"])],
            ChiField::Entries(strs(&["-Y", "X"])),
            Some(3),
        ),
        "koszul-n4" => {
            let (v, psi) = linear_row(4);
            base(v, psi, explicit(), None)
        }
        "koszul-n6" => {
            let (v, psi) = linear_row(6);
            base(v, psi, explicit(), None)
        }
        "generic-2x4" => base(
            strs(&["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]),
            vec![strs(&["x1", "x2", "x3", "x4"]), strs(&["y1", "y2", "y3", "y4"])],
            ChiField::Entries(strs(&["x2*y3-x3*y2", "-x1*y3+x3*y1", "x1*y2-x2*y1", "0"])),
            None,
        ),
        "hilbert-burch-r1" => base(
            strs(&["x1", "x2", "x3", "y1", "y2", "y3"]),
            vec![strs(&["x1", "x2", "x3"]), strs(&["y1", "y2", "y3"])],
            ChiField::Entries(strs(&["x2*y3-x3*y2", "-x1*y3+x3*y1", "x1*y2-x2*y1"])),
            None,
        ),
        _ => return None,
    })
}
