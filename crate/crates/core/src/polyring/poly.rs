use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::GroundField;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// The graded ring `k[X_1, ..., X_v]` over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: GroundField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: GroundField, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        if names.len() > MAX_VARS {
            return Err(Error::Structural(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidArgument(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable {n:?}")));
            }
        }
        Ok(Arc::new(PolyRing { field, names, order }))
    }

    /// Ring with variables named `X1..Xv`.
    pub fn with_vars(field: GroundField, nvars: usize) -> Arc<Self> {
        let names = (1..=nvars).map(|i| format!("X{i}")).collect();
        PolyRing::new(field, names, MonomialOrder::Grevlex).expect("valid default names")
    }

    #[inline]
    pub fn field(&self) -> GroundField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

/// A polynomial with terms strictly sorted in descending monomial order and
/// no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(u32, Monomial)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Polynomial::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial::term(ring, 1, Monomial::var(ring.nvars(), i))
    }

    pub fn term(ring: &Arc<PolyRing>, coef: u32, mon: Monomial) -> Self {
        let terms = if coef == 0 { Vec::new() } else { vec![(coef, mon)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(u32, Monomial)>) -> Self {
        let ord = ring.order;
        let field = ring.field;
        terms.sort_by(|a, b| b.1.cmp_with(&a.1, ord));
        let mut out: Vec<(u32, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == m {
                    last.0 = field.add(last.0, c);
                    continue;
                }
            }
            out.push((c, m));
        }
        out.retain(|t| t.0 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }

    pub fn leading_term(&self) -> Option<(u32, Monomial)> {
        self.terms.first().copied()
    }

    /// Total degree (maximum over terms); `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.1.degree() == t.1.degree()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Structural(
                "polynomials belong to different rings".into(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.ring.field.neg(1)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    /// `self + c * other`
    fn combine(&self, other: &Polynomial, c: u32) -> Polynomial {
        let field = self.ring.field;
        let ord = self.ring.order;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].1.cmp_with(&b[j].1, ord) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = field.mul(c, b[j].0);
                    if v != 0 {
                        out.push((v, b[j].1));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.add(a[i].0, field.mul(c, b[j].0));
                    if v != 0 {
                        out.push((v, a[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let v = field.mul(c, t.0);
            if v != 0 {
                out.push((v, t.1));
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field;
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(c, m) in &self.terms {
            for &(d, n) in &other.terms {
                acc.push((field.mul(c, d), m.mul(&n)));
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(a, m)| (field.mul(a, c), m)).collect(),
        }
    }

    pub fn mul_term(&self, c: u32, mon: &Monomial) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(a, m)| (field.mul(a, c), m.mul(mon)))
                .collect(),
        }
    }

    /// Evaluates at a point of `k^v` by summing term values.
    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Structural(format!(
                "evaluation point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let field = self.ring.field;
        let mut acc = 0u32;
        for &(c, m) in &self.terms {
            let mut v = c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e != 0 {
                    v = field.mul(v, field.pow(point[i], e as u64));
                }
            }
            acc = field.add(acc, v);
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (k, &(c, m)) in self.terms.iter().enumerate() {
            let s = field.to_signed(c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
