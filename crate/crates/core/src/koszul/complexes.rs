use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{GradedFreeModule, GroebnerBasis, PolyMatrix};
use crate::modcore::{ChainComplex, ModuleMap, Subquotient};
use crate::polyring::Polynomial;

use super::basis::{concat_sign, wedge_insert, ExtBasis, SymBasis};
use super::{accumulate, signed, wedge_power_map, zero_rows, Bicomplex, KoszulSetup};

/// `S^j(Cok ψ)` presented by `G ⊗ S^{j-1}F -> S^jF`, `x ⊗ s ↦ ψ(x) s`.
/// For `j = 0` this is `R / I_M` (maximal minors of `ψ`).
pub fn sym_power_of_cokernel(psi: &PolyMatrix, j: usize) -> Result<Subquotient> {
    let ring = psi.ring();
    let (m, n) = (psi.nrows(), psi.ncols());
    if j == 0 {
        let minors = crate::modcore::fitting_ideal(psi, m)?;
        return Subquotient::cyclic(ring, &minors);
    }
    let a = psi.target().twists();
    let b = psi.source().twists();
    let tgt_b = SymBasis::new(m, j);
    let src_b = SymBasis::new(m, j - 1);
    let target = GradedFreeModule::new(tgt_b.weights(a));
    let src_w = src_b.weights(a);
    let mut twists = Vec::with_capacity(n * src_b.len());
    for &bk in b {
        for w in &src_w {
            twists.push(bk + w);
        }
    }
    let mut rows = zero_rows(ring, target.rank(), twists.len());
    for k in 0..n {
        for (bi, beta) in src_b.exps.iter().enumerate() {
            for i in 0..m {
                let mut al = beta.clone();
                al[i] += 1;
                accumulate(&mut rows, tgt_b.index_of(&al), k * src_b.len() + bi, psi.entry(i, k), 1);
            }
        }
    }
    let rels = PolyMatrix::new(ring, GradedFreeModule::new(twists), target, rows)?;
    Ok(Subquotient::cokernel(&rels))
}

/// `∧^p M` for `M = Cok ψ*`, presented by
/// `∧^{p-1}G* ⊗ F* -> ∧^pG*`, `y ⊗ e ↦ ψ*(e) ∧ y`.
pub fn exterior_power_presentation_of_m(setup: &KoszulSetup, p: usize) -> Result<Subquotient> {
    let ring = &setup.ring;
    let (m, n) = (setup.m, setup.n);
    let amb = setup.ext_dual_module(p);
    if p == 0 {
        return Ok(Subquotient::free(ring, &amb));
    }
    let tgt_b = ExtBasis::new(n, p);
    let src_b = ExtBasis::new(n, p - 1);
    let src_w = src_b.weights(&setup.b);
    let mut twists = Vec::with_capacity(src_b.len() * m);
    for w in &src_w {
        for ai in &setup.a {
            twists.push(-w - ai + p as i64 * setup.c);
        }
    }
    let mut rows = zero_rows(ring, amb.rank(), twists.len());
    for (jj, tuple) in src_b.tuples.iter().enumerate() {
        for i in 0..m {
            for k in 0..n {
                if let Some((sign, t)) = wedge_insert(k, tuple) {
                    accumulate(&mut rows, tgt_b.index_of(&t), jj * m + i, setup.psi.entry(i, k), sign);
                }
            }
        }
    }
    let rels = PolyMatrix::new(ring, GradedFreeModule::new(twists), amb, rows)?;
    Ok(Subquotient::cokernel(&rels))
}

/// `∂_χ: ∧^pG* -> ∧^{p-1}G*`, `z_I ↦ Σ_t (-1)^t χ(z_{I_t}) z_{I \ I_t}`.
fn contraction_chi(setup: &KoszulSetup, p: usize) -> Result<PolyMatrix> {
    let src = setup.ext_dual_module(p);
    let tgt = setup.ext_dual_module(p - 1);
    let src_b = ExtBasis::new(setup.n, p);
    let tgt_b = ExtBasis::new(setup.n, p - 1);
    let chi = setup.chi_entries();
    let mut rows = zero_rows(&setup.ring, tgt.rank(), src.rank());
    for (ii, tuple) in src_b.tuples.iter().enumerate() {
        for (t, &j) in tuple.iter().enumerate() {
            let mut rest = tuple.clone();
            rest.remove(t);
            accumulate(&mut rows, tgt_b.index_of(&rest), ii, &chi[j], if t % 2 == 0 { 1 } else { -1 });
        }
    }
    PolyMatrix::new(&setup.ring, src, tgt, rows)
}

/// The truncated Koszul complex `0 -> ∧^rM -> ... -> M -> R -> 0` with the maps induced
/// by `∂_χ`. Module index `k` carries label `p = r - k`.
pub fn truncated_koszul_chi(setup: &KoszulSetup) -> Result<ChainComplex> {
    let r = setup.r;
    let mods: Vec<Arc<Subquotient>> = (0..=r)
        .rev()
        .map(|p| exterior_power_presentation_of_m(setup, p).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut maps = Vec::with_capacity(r);
    for k in 0..r {
        let p = r - k;
        maps.push(ModuleMap::new(mods[k].clone(), mods[k + 1].clone(), contraction_chi(setup, p)?)?);
    }
    ChainComplex::new(maps, (0..=r).rev().map(|p| p as i64).collect())
}

/// `N^p = ker(∂_ψ: ∧^pG -> ∧^{p-1}G ⊗ F)` inside the cell `M^{p,0}`.
pub fn n_module(bc: &Bicomplex, p: usize) -> Result<Subquotient> {
    let cell = bc
        .cell(p, 0)
        .ok_or_else(|| Error::InvalidArgument(format!("bicomplex has no cell ({p}, 0)")))?;
    Ok(Subquotient::kernel_module(&cell.south))
}

/// The N-complex `0 -> R -> N^1 -> ... -> N^r` with maps induced by `d_φ`,
/// labelled by `p`. Also certifies `N^r` free of rank one and `N^p = 0`
/// for `r < p <= n`.
pub fn n_complex(setup: &KoszulSetup, bc: &Bicomplex) -> Result<ChainComplex> {
    let r = setup.r;
    if bc.p_max < setup.n {
        return Err(Error::InvalidArgument("bicomplex must reach p = n".into()));
    }
    let mods: Vec<Arc<Subquotient>> = (0..=r)
        .map(|p| n_module(bc, p).map(Arc::new))
        .collect::<Result<_>>()?;
    let top = &mods[r];
    if top.minimal_generators().ncols() != 1 {
        return Err(Error::Invariant(format!(
            "N^{r} needs {} generators, expected a free module of rank one",
            top.minimal_generators().ncols()
        )));
    }
    for p in r + 1..=setup.n {
        if !n_module(bc, p)?.is_zero() {
            return Err(Error::Invariant(format!("N^{p} is nonzero above r = {r}")));
        }
    }
    let mut maps = Vec::with_capacity(r);
    for p in 0..r {
        let east = bc.cell(p, 0).expect("checked").east.clone();
        maps.push(ModuleMap::new(mods[p].clone(), mods[p + 1].clone(), east)?);
    }
    ChainComplex::new(maps, (0..=r).map(|p| p as i64).collect())
}

/// The head `0 -> F* -> G* -> ∧^{m+1}G*` of the Buchsbaum–Rim complex.
#[derive(Clone, Debug)]
pub struct BuchsbaumRimHead {
    /// `Ψ(x) = ψ*(e_1) ∧ ... ∧ ψ*(e_m) ∧ x`.
    pub big_psi: PolyMatrix,
    /// `Im Ψ* ⊆ G`.
    pub image_of_dual: Subquotient,
    /// Every entry of `Ψ*` lies in `I_M`.
    pub dual_image_in_minor_ideal: bool,
}

/// Builds `Ψ`, certifies `Ψ ψ* = 0` and `Im Ψ* ⊆ I_M G`.
pub fn buchsbaum_rim_head(setup: &KoszulSetup) -> Result<BuchsbaumRimHead> {
    let ring = &setup.ring;
    let (m, n) = (setup.m, setup.n);
    let tgt_b = ExtBasis::new(n, m + 1);
    let sum_a: i64 = setup.a.iter().sum();
    let target = GradedFreeModule::new(tgt_b.weights(&setup.b).into_iter().map(|w| -w + sum_a).collect());
    let source = setup.psi.source().dual();
    let mut rows = zero_rows(ring, target.rank(), n);
    for (k, w) in setup.top_wedge() {
        for j in 0..n {
            let sign = concat_sign(&[&k, &[j]]);
            if sign == 0 {
                continue;
            }
            let mut t = k.clone();
            t.push(j);
            t.sort_unstable();
            accumulate(&mut rows, tgt_b.index_of(&t), j, &w, sign);
        }
    }
    let big_psi = PolyMatrix::new(ring, source, target, rows)?;
    if !big_psi.mul(&setup.psi_star())?.is_zero() {
        return Err(Error::Invariant("Psi composed with psi* is nonzero".into()));
    }
    let dual = big_psi.transpose();
    let minors = setup.minor_ideal();
    let cols: Vec<Vec<Polynomial>> = minors.iter().map(|p| vec![p.clone()]).collect();
    let ideal = PolyMatrix::from_columns_inferred(ring, GradedFreeModule::free(1), cols, 0)?;
    let gb = GroebnerBasis::compute(&ideal);
    let mut inside = true;
    for row in dual.rows() {
        for e in row {
            inside &= gb.contains(&[e])?;
        }
    }
    let zero = PolyMatrix::zero(ring, GradedFreeModule::zero(), dual.target().clone());
    let image_of_dual = Subquotient::new(dual, zero)?;
    Ok(BuchsbaumRimHead {
        big_psi,
        image_of_dual,
        dual_image_in_minor_ideal: inside,
    })
}

/// `ν_p: ∧^pG* -> ∧^{r-p}G`, `ν_p(z_I) = Σ_J δ(z_I ∧ z_J ∧ w) e_J` with
/// `w = ψ*(e_1) ∧ ... ∧ ψ*(e_m)` and `δ(z_1 ∧ ... ∧ z_n) = 1`. The target is
/// the cell `M^{r-p,0}`.
pub fn nu_map(setup: &KoszulSetup, p: usize) -> Result<PolyMatrix> {
    let n = setup.n;
    let r = setup.r;
    let src_b = ExtBasis::new(n, p);
    let tgt_b = ExtBasis::new(n, r - p);
    let w = setup.top_wedge();
    let mut rows = zero_rows(&setup.ring, tgt_b.len(), src_b.len());
    for (ii, i) in src_b.tuples.iter().enumerate() {
        for (jj, j) in tgt_b.tuples.iter().enumerate() {
            let mut used = vec![false; n];
            let mut clash = false;
            for &x in i.iter().chain(j) {
                clash |= used[x];
                used[x] = true;
            }
            if clash {
                continue;
            }
            let k: Vec<usize> = (0..n).filter(|&x| !used[x]).collect();
            let sign = concat_sign(&[i, j, &k]);
            accumulate(&mut rows, jj, ii, &w[&k], sign);
        }
    }
    PolyMatrix::new(&setup.ring, setup.ext_dual_module(p), setup.cell_module(r - p, 0), rows)
}

/// Outcome of comparing `d_φ ν_p` with `± ν_{p-1} ∂_χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingSquare {
    pub p: usize,
    pub commutes_plus: bool,
    pub commutes_minus: bool,
}

impl CommutingSquare {
    /// The unique sign making the square commute, if exactly one does.
    pub fn sign(&self) -> Option<i64> {
        match (self.commutes_plus, self.commutes_minus) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }
}

/// The maps `μ_p: ∧^pM -> N^{r-p}` for `p = 0..=r` induced by `ν_p`, and
/// the squares for `p = 1..=r`. `c1` is the truncated Koszul complex, `c2` the N-complex;
/// both hold `∧^pM` resp. `N^{r-p}` at index `r - p`.
pub fn nu_mu_maps(
    setup: &KoszulSetup,
    c1: &ChainComplex,
    c2: &ChainComplex,
) -> Result<(Vec<ModuleMap>, Vec<CommutingSquare>)> {
    let r = setup.r;
    let nus: Vec<PolyMatrix> = (0..=r).map(|p| nu_map(setup, p)).collect::<Result<_>>()?;
    let mut mus = Vec::with_capacity(r + 1);
    for (p, nu) in nus.iter().enumerate() {
        let idx = r - p;
        mus.push(ModuleMap::new(
            c1.modules()[idx].clone(),
            c2.modules()[idx].clone(),
            nu.clone(),
        )?);
    }
    let mut squares = Vec::with_capacity(r);
    for p in 1..=r {
        let idx = r - p;
        let lhs = c2.maps()[idx].matrix().mul(&nus[p])?;
        let rhs = nus[p - 1].mul(c1.maps()[idx].matrix())?;
        squares.push(CommutingSquare {
            p,
            commutes_plus: lhs == rhs,
            commutes_minus: lhs.add(&rhs)?.is_zero(),
        });
    }
    Ok((mus, squares))
}

/// `χ(z_i) = (-1)^i x_{n+1-i}` (1-based) for `ψ*(1) = Σ x_i z_i`.
pub fn explicit_chi(psi: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if psi.nrows() != 1 {
        return Err(Error::InvalidArgument(format!(
            "the explicit linear form needs m = 1, got m = {}",
            psi.nrows()
        )));
    }
    let n = psi.ncols();
    Ok((0..n)
        .map(|j| signed(psi.entry(0, n - 1 - j), if j % 2 == 0 { -1 } else { 1 }))
        .collect())
}

/// The complex `C_{h+1}`: cells `Cok(M^{h-1,i} -> M^{h,i})` for
/// `i = 0..=h` with differential induced by `∂_ψ`, labelled by `i`.
pub fn remark2_complex(bc: &Bicomplex, h: usize) -> Result<ChainComplex> {
    if h == 0 || bc.p_max < h {
        return Err(Error::InvalidArgument(format!("need 1 <= h <= {}", bc.p_max)));
    }
    let is: Vec<usize> = (0..=h).filter(|&i| bc.cell(h, i).is_some()).collect();
    let cells: Vec<Arc<Subquotient>> = is
        .iter()
        .map(|&i| {
            let here = bc.cell(h, i).expect("filtered");
            Arc::new(match bc.cell(h - 1, i) {
                Some(prev) => Subquotient::cokernel(&prev.east),
                None => Subquotient::free(bc.ring(), &here.module),
            })
        })
        .collect();
    let mut maps = Vec::new();
    for k in 0..cells.len() - 1 {
        let south = bc.cell(h, is[k]).expect("filtered").south.clone();
        maps.push(ModuleMap::new(cells[k].clone(), cells[k + 1].clone(), south)?);
    }
    if maps.is_empty() {
        return Err(Error::InvalidArgument("C_{h+1} has a single cell".into()));
    }
    ChainComplex::new(maps, is.iter().map(|&i| i as i64).collect())
}

/// `∧^k(Cok φ) ⊗ S^iF` with `k = h - i`, built from minors of `[φ | 1_G]`
/// and a Kronecker product with the identity of `S^iF`.
pub fn remark2_cell_via_tensor(setup: &KoszulSetup, h: usize, i: usize) -> Result<Subquotient> {
    let ring = &setup.ring;
    let k = h - i;
    let g = setup.psi.source();
    let id = PolyMatrix::identity(ring, g);
    let aug = PolyMatrix::hstack(ring, g, &[&setup.phi, &id])?;
    let sym = SymBasis::new(setup.m, i);
    let sw = sym.weights(&setup.a);
    let pres = if k == 0 {
        PolyMatrix::zero(ring, GradedFreeModule::zero(), GradedFreeModule::free(1))
    } else {
        let full = wedge_power_map(&aug, k);
        let src_b = ExtBasis::new(setup.n + 1, k);
        let with_phi: Vec<usize> = (0..src_b.len()).filter(|&c| src_b.tuples[c][0] == 0).collect();
        full.select_columns(&with_phi)
    };
    let kron_twists = |t: &GradedFreeModule| -> GradedFreeModule {
        GradedFreeModule::new(t.twists().iter().flat_map(|x| sw.iter().map(move |y| x + y)).collect())
    };
    let source = kron_twists(pres.source());
    let target = kron_twists(pres.target());
    let s = sym.len();
    let mut rows = zero_rows(ring, target.rank(), source.rank());
    for a in 0..pres.nrows() {
        for b in 0..pres.ncols() {
            for t in 0..s {
                accumulate(&mut rows, a * s + t, b * s + t, pres.entry(a, b), 1);
            }
        }
    }
    Ok(Subquotient::cokernel(&PolyMatrix::new(ring, source, target, rows)?))
}

/// Certificates for the skew self-duality of `U = Ker χ̄` when `m = 1` and
/// `χ` is the explicit form.
#[derive(Clone, Debug)]
pub struct SelfDuality {
    /// `ρ(z_i) = (-1)^i e_{n+1-i}` (1-based), a map `G* -> G`.
    pub rho: PolyMatrix,
    /// `ρ₁: Ker χ -> Ker ψ`.
    pub rho1: ModuleMap,
    /// `ρ̄₁: U -> U*`.
    pub rho_bar1: ModuleMap,
    /// `ψ ρ = χ` entrywise.
    pub factors_chi: bool,
    /// `ρ ψ*(1) = -φ(1)`.
    pub sends_relation_to_minus_phi: bool,
    pub kernel_zero: bool,
    pub cokernel_zero: bool,
    /// Gram matrix `B(z_i, z_j) = <ρ(z_i), z_j>` satisfies `B + Bᵀ = 0`.
    pub gram_skew: bool,
}

pub fn self_duality_maps(setup: &KoszulSetup) -> Result<SelfDuality> {
    let ring = &setup.ring;
    let n = setup.n;
    let expected = explicit_chi(&setup.psi)?;
    if setup.chi_entries() != expected {
        return Err(Error::InvalidArgument("self-duality needs the explicit linear form".into()));
    }
    let b = &setup.b;
    let sigma = b[0] + b[n - 1];
    if (0..n).any(|j| b[j] + b[n - 1 - j] != sigma) {
        return Err(Error::InvalidArgument("twists of G are not symmetric".into()));
    }
    let source = setup.psi.source().dual().shifted(sigma);
    let mut rows = zero_rows(ring, n, n);
    for j in 0..n {
        rows[n - 1 - j][j] = Polynomial::constant(ring, if j % 2 == 0 { -1 } else { 1 });
    }
    let rho = PolyMatrix::new(ring, source, setup.psi.source().clone(), rows)?;

    let psi_rho = setup.psi.mul(&rho)?;
    let factors_chi = psi_rho.row(0) == setup.chi_entries();
    let rho_rel = rho.mul(&setup.psi_star().regraded(
        setup.psi_star().source().shifted(sigma),
        rho.source().clone(),
    )?)?;
    let sends_relation_to_minus_phi = rho_rel.column(0) == setup.phi.neg().column(0);

    let ker_chi = Arc::new(Subquotient::kernel_module(&setup.chi).shifted(sigma));
    let ker_psi = Arc::new(Subquotient::kernel_module(&setup.psi));
    let rho1 = ModuleMap::new(ker_chi, ker_psi, rho.clone())?;
    let u = Arc::new(Subquotient::kernel_modulo(&setup.chi, setup.psi_star())?.shifted(sigma));
    let u_dual = Arc::new(Subquotient::kernel_modulo(&setup.psi, setup.phi.clone())?);
    let rho_bar1 = ModuleMap::new(u, u_dual, rho.clone())?;
    let kernel_zero = rho_bar1.kernel()?.is_zero();
    let cokernel_zero = rho_bar1.cokernel()?.is_zero();
    let gram_skew = (0..n).all(|i| (0..n).all(|j| (rho.entry(j, i) + rho.entry(i, j)).is_zero()));
    Ok(SelfDuality {
        rho,
        rho1,
        rho_bar1,
        factors_chi,
        sends_relation_to_minus_phi,
        kernel_zero,
        cokernel_zero,
        gram_skew,
    })
}
