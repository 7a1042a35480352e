use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{same_ring, PolyRing, Polynomial};

use super::modvec::{column_to_modvec, ModVec, ModuleOrder};

/// A graded free module `⊕ R(-t_i)`: basis element `i` sits in degree `t_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn free(rank: usize) -> Self {
        GradedFreeModule {
            twists: vec![0; rank],
        }
    }

    pub fn zero() -> Self {
        GradedFreeModule { twists: Vec::new() }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    #[inline]
    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }

    pub fn shifted(&self, s: i64) -> Self {
        GradedFreeModule {
            twists: self.twists.iter().map(|t| t + s).collect(),
        }
    }

    /// `Hom(F, R)` with the dual basis.
    pub fn dual(&self) -> Self {
        GradedFreeModule {
            twists: self.twists.iter().map(|t| -t).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        GradedFreeModule { twists }
    }
}

/// A homogeneous matrix between graded free modules.
///
/// Entries are stored row-major, `target.rank() x source.rank()`. Entry
/// `(i, j)` is zero or homogeneous of degree `source.twist(j) - target.twist(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Builds a matrix from rows, checking homogeneity.
    pub fn new(
        ring: &Arc<PolyRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::Structural(format!(
                "{} rows for a target of rank {}",
                rows.len(),
                target.rank()
            )));
        }
        let mut entries = Vec::with_capacity(source.rank() * target.rank());
        for row in rows {
            if row.len() != source.rank() {
                return Err(Error::Structural(format!(
                    "row of length {} for a source of rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            entries.extend(row);
        }
        let m = PolyMatrix {
            ring: ring.clone(),
            source,
            target,
            entries,
        };
        m.check()?;
        Ok(m)
    }

    pub fn from_columns(
        ring: &Arc<PolyRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::Structural(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.rank()
            )));
        }
        let rows = (0..target.rank())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        PolyMatrix::new(ring, source, target, rows)
    }

    /// Columns into `target` whose source twists are read off the entries.
    /// Zero columns get twist `default_twist`.
    pub fn from_columns_inferred(
        ring: &Arc<PolyRing>,
        target: GradedFreeModule,
        cols: Vec<Vec<Polynomial>>,
        default_twist: i64,
    ) -> Result<Self> {
        let twists = cols
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .find(|(_, p)| !p.is_zero())
                    .map(|(i, p)| p.degree().unwrap() as i64 + target.twist(i))
                    .unwrap_or(default_twist)
            })
            .collect();
        PolyMatrix::from_columns(ring, GradedFreeModule::new(twists), target, cols)
    }

    /// Infers twists making `rows` homogeneous: the first source basis element
    /// gets degree 0, then degrees propagate along nonzero entries; the result
    /// is shifted so that the smallest source twist is 0.
    pub fn with_inferred_twists(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Structural("ragged matrix".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, p) in r.iter().enumerate() {
                if !p.is_homogeneous() {
                    return Err(Error::NotHomogeneous {
                        row: i,
                        col: j,
                        detail: format!("{p} is not homogeneous"),
                    });
                }
            }
        }
        let mut src: Vec<Option<i64>> = vec![None; ncols];
        let mut tgt: Vec<Option<i64>> = vec![None; nrows];
        for start in 0..ncols {
            if src[start].is_some() {
                continue;
            }
            src[start] = Some(0);
            let mut changed = true;
            while changed {
                changed = false;
                for i in 0..nrows {
                    for j in 0..ncols {
                        let d = match rows[i][j].degree() {
                            Some(d) => d as i64,
                            None => continue,
                        };
                        match (src[j], tgt[i]) {
                            (Some(s), None) => {
                                tgt[i] = Some(s - d);
                                changed = true;
                            }
                            (None, Some(t)) => {
                                src[j] = Some(t + d);
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let min_src = src.iter().filter_map(|x| *x).min().unwrap_or(0);
        let source = GradedFreeModule::new(src.iter().map(|x| x.unwrap() - min_src).collect());
        let target =
            GradedFreeModule::new(tgt.iter().map(|x| x.unwrap_or(min_src) - min_src).collect());
        PolyMatrix::new(ring, source, target, rows)
    }

    pub fn zero(ring: &Arc<PolyRing>, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let n = source.rank() * target.rank();
        PolyMatrix {
            ring: ring.clone(),
            source,
            target,
            entries: vec![Polynomial::zero(ring); n],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, module: &GradedFreeModule) -> Self {
        let mut m = PolyMatrix::zero(ring, module.clone(), module.clone());
        for i in 0..module.rank() {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Checks shape and homogeneity invariants.
    pub fn check(&self) -> Result<()> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let p = self.entry(i, j);
                if p.is_zero() {
                    continue;
                }
                if !same_ring(p.ring(), &self.ring) {
                    return Err(Error::Structural("entry from a different ring".into()));
                }
                let want = self.source.twist(j) - self.target.twist(i);
                if !p.is_homogeneous() || p.degree().unwrap() as i64 != want {
                    return Err(Error::NotHomogeneous {
                        row: i,
                        col: j,
                        detail: format!("{p} should be homogeneous of degree {want}"),
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    #[inline]
    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols() + j]
    }

    /// Overwrites an entry; homogeneity is the caller's responsibility and is
    /// re-checked by [`PolyMatrix::check`].
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        let n = self.ncols();
        self.entries[i * n + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows()).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.ncols()).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows()).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(|p| !p.is_zero() && p.is_constant())
    }

    /// Composite `self ∘ other`.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.source.rank() != other.target.rank() {
            return Err(Error::Structural(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        if self.source != other.target {
            return Err(Error::Structural(
                "inner modules have different twists".into(),
            ));
        }
        let mut out = PolyMatrix::zero(&self.ring, other.source.clone(), self.target.clone());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.entry(i, j).clone();
                    out.set(i, j, &cur + &(a * b));
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &PolyMatrix) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Structural("matrices between different modules".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: i64) -> PolyMatrix {
        let c = self.ring.field().from_i64(c);
        PolyMatrix {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scale(-1)
    }

    /// Matrix of the dual map `target* -> source*`.
    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.target.dual(), self.source.dual());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    /// `[A | B | ...]` for matrices with a common target.
    pub fn hstack(ring: &Arc<PolyRing>, target: &GradedFreeModule, blocks: &[&PolyMatrix]) -> Result<PolyMatrix> {
        let mut twists = Vec::new();
        let mut cols = Vec::new();
        for b in blocks {
            if b.target != *target {
                return Err(Error::Structural("hstack with differing targets".into()));
            }
            twists.extend_from_slice(b.source.twists());
            cols.extend(b.columns());
        }
        let source = GradedFreeModule::new(twists);
        let mut out = PolyMatrix::zero(ring, source, target.clone());
        for (j, c) in cols.into_iter().enumerate() {
            for (i, p) in c.into_iter().enumerate() {
                out.set(i, j, p);
            }
        }
        Ok(out)
    }

    /// Stacks matrices with a common source into the direct sum of targets.
    pub fn vstack(ring: &Arc<PolyRing>, source: &GradedFreeModule, blocks: &[&PolyMatrix]) -> Result<PolyMatrix> {
        let mut target = GradedFreeModule::zero();
        let mut rows = Vec::new();
        for b in blocks {
            if b.source != *source {
                return Err(Error::Structural("vstack with differing sources".into()));
            }
            target = target.direct_sum(&b.target);
            rows.extend(b.rows());
        }
        PolyMatrix::new(ring, source.clone(), target, rows)
    }

    pub fn select_columns(&self, idx: &[usize]) -> PolyMatrix {
        let source = GradedFreeModule::new(idx.iter().map(|&j| self.source.twist(j)).collect());
        let mut out = PolyMatrix::zero(&self.ring, source, self.target.clone());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.nrows() {
                out.set(i, k, self.entry(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolyMatrix {
        let target = GradedFreeModule::new(idx.iter().map(|&i| self.target.twist(i)).collect());
        let mut out = PolyMatrix::zero(&self.ring, self.source.clone(), target);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.ncols() {
                out.set(k, j, self.entry(i, j).clone());
            }
        }
        out
    }

    /// Same entries, different grading. Fails if the regrading breaks homogeneity.
    pub fn regraded(&self, source: GradedFreeModule, target: GradedFreeModule) -> Result<PolyMatrix> {
        let m = PolyMatrix {
            ring: self.ring.clone(),
            source,
            target,
            entries: self.entries.clone(),
        };
        m.check()?;
        Ok(m)
    }

    /// Scalar matrix obtained by substituting a point.
    pub fn eval_at(&self, point: &[u32]) -> Result<Vec<Vec<u32>>> {
        (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| self.entry(i, j).eval(point))
                    .collect()
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }

    pub(crate) fn module_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.ring.order(), self.target.twists().to_vec())
    }

    pub(crate) fn column_modvec(&self, j: usize, ord: &ModuleOrder) -> ModVec {
        column_to_modvec(&self.column(j), ord)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PolyMatrix {}x{} source {:?} target {:?}",
            self.nrows(),
            self.ncols(),
            self.source.twists(),
            self.target.twists()
        )?;
        for r in self.to_strings() {
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}
