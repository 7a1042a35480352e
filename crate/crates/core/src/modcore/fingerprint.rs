use serde::Serialize;

use super::Subquotient;

/// Presentation-independent summary of a graded module up to a degree shift.
///
/// `shift` is the smallest degree of a minimal generator. The Hilbert vector
/// holds `HF(shift + d)` for `d = 0..=degree_bound`, generator degrees are
/// relative to `shift`, and the annihilator is a reduced Gröbner basis
/// printed as polynomials. Comparison with [`Fingerprint::matches`] ignores
/// the shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub degree_bound: i64,
    pub shift: i64,
    pub hilbert: Vec<usize>,
    pub generator_degrees: Vec<i64>,
    pub annihilator: Vec<String>,
    pub is_zero: bool,
}

impl Fingerprint {
    /// Equality up to the degree shift.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.degree_bound == other.degree_bound
            && self.hilbert == other.hilbert
            && self.generator_degrees == other.generator_degrees
            && self.annihilator == other.annihilator
            && self.is_zero == other.is_zero
    }
}

pub fn fingerprint(m: &Subquotient, degree_bound: i64) -> Fingerprint {
    let gens = m.minimal_generators();
    let mut degs: Vec<i64> = gens.source().twists().to_vec();
    degs.sort_unstable();
    if degs.is_empty() {
        return Fingerprint {
            degree_bound,
            shift: 0,
            hilbert: vec![0; degree_bound as usize + 1],
            generator_degrees: Vec::new(),
            annihilator: vec!["1".into()],
            is_zero: true,
        };
    }
    let shift = degs[0];
    let hilbert = m.hilbert_vector(shift, shift + degree_bound);
    let ann = m.annihilator();
    let mut annihilator: Vec<String> = ann.elements().iter().map(|c| c[0].to_string()).collect();
    annihilator.sort();
    Fingerprint {
        degree_bound,
        shift,
        hilbert,
        generator_degrees: degs.iter().map(|d| d - shift).collect(),
        annihilator,
        is_zero: false,
    }
}
