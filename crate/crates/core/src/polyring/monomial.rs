use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `X^a` stored as a dense exponent vector with cached total degree.
///
/// Unused trailing slots are always zero, so derived equality and hashing
/// are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    /// Lexicographic with `X_1 > X_2 > ...`.
    Lex,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        assert!(i < nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Structural(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                exps.len()
            )));
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            if e > u16::MAX as u32 {
                return Err(Error::Structural(format!("exponent {e} too large")));
            }
            m.exps[i] = e as u16;
            m.deg += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` set iff variable `i` occurs; a cheap divisibility pre-filter.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..self.nvars as usize {
            if self.exps[i] != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for i in 0..self.nvars as usize {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = *other;
        for i in 0..self.nvars as usize {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            deg += m.exps[i] as u32;
        }
        m.deg = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    #[inline]
    pub fn cmp_with(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Grevlex => {
                match self.deg.cmp(&other.deg) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..self.nvars as usize).rev() {
                    match self.exps[i].cmp(&other.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..self.nvars as usize {
                    match self.exps[i].cmp(&other.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Compares two monomials under `order`; errors if they come from rings of
/// different sizes.
pub fn monomial_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::Structural(format!(
            "monomials over {} and {} variables",
            a.nvars, b.nvars
        )));
    }
    Ok(a.cmp_with(b, order))
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// All monomials of total degree `deg` in `nvars` variables, in descending
/// lexicographic order of exponent vectors.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::one(0));
            }
            return;
        }
        if pos == n - 1 {
            cur[pos] = left;
            out.push(Monomial::from_exponents(cur).expect("bounded"));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        // X^2 vs XY
        assert_eq!(
            monomial_compare(&m(&[2, 0]), &m(&[1, 1]), MonomialOrder::Grevlex).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            monomial_compare(&m(&[1, 1]), &m(&[1, 1]), MonomialOrder::Grevlex).unwrap(),
            Ordering::Equal
        );
        // XZ < Y^2 in grevlex, XZ > Y^2 in lex
        assert_eq!(
            m(&[1, 0, 1]).cmp_with(&m(&[0, 2, 0]), MonomialOrder::Grevlex),
            Ordering::Less
        );
        assert_eq!(
            m(&[1, 0, 1]).cmp_with(&m(&[0, 2, 0]), MonomialOrder::Lex),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_x_over_y() {
        assert_eq!(
            monomial_compare(&m(&[1, 0]), &m(&[0, 1]), MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn mismatched_variable_counts() {
        assert!(matches!(
            monomial_compare(&m(&[1, 0]), &m(&[1, 0, 0]), MonomialOrder::Grevlex),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn degree_slice_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(8, 2).len(), 36);
        let ms = monomials_of_degree(2, 2);
        assert_eq!(ms[0], m(&[2, 0]));
    }
}
