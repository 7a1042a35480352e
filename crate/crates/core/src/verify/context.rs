use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::koszul::{build_bicomplex, n_complex, sym_power_of_cokernel, truncated_koszul_chi, Bicomplex, KoszulSetup};
use crate::modcore::oracle::{degreewise_oracle, module_hilbert, Oracle};
use crate::modcore::{fingerprint, ChainComplex, Fingerprint, ModuleMap, Subquotient};

use super::{Detail, FingerprintRow, ScenarioInput, ScenarioInvariants, SignRecord};

/// A module with its fingerprint and both Hilbert vectors on the window
/// `[lo, start + D]`, where `start` is the fingerprint shift (or `lo` for
/// the zero module).
pub(crate) struct Measured {
    pub module: Arc<Subquotient>,
    pub fp: Fingerprint,
    pub lo: i64,
    pub gb: Vec<usize>,
    pub oracle: Vec<usize>,
}

impl Measured {
    pub fn agrees(&self) -> bool {
        self.gb == self.oracle
    }

    pub fn first_disagreement(&self) -> Option<i64> {
        self.gb
            .iter()
            .zip(&self.oracle)
            .position(|(a, b)| a != b)
            .map(|i| self.lo + i as i64)
    }
}

/// What a module is compared against.
pub(crate) enum Expect {
    Zero,
    /// `S^j(C)`, with `S^0(C) = R / I_M`.
    Sym(usize),
    /// A module whose presentation is independent of the Gröbner engine
    /// (a cokernel or a kernel with its descriptor).
    Module(String, Arc<Subquotient>),
    /// Homology of another complex.
    Homology(String, Arc<ChainComplex>, usize),
}

pub(crate) struct Ctx<'a> {
    pub input: &'a ScenarioInput,
    pub inv: ScenarioInvariants,
    pub setup: KoszulSetup,
    pub d: i64,
    bc: Option<Arc<Bicomplex>>,
    c1: Option<Arc<ChainComplex>>,
    c2: Option<Arc<ChainComplex>>,
    pub r2: Option<Arc<ChainComplex>>,
    sym: HashMap<usize, Arc<Measured>>,
    measured: HashMap<String, Arc<Measured>>,
    rows: Vec<FingerprintRow>,
    pub signs: Vec<SignRecord>,
    oracle_ok: bool,
}

/// Short human-readable rendering of a fingerprint.
pub fn describe(fp: &Fingerprint) -> String {
    if fp.is_zero {
        return "0".into();
    }
    format!(
        "HF {:?}; generator degrees {:?}; ann ({})",
        fp.hilbert,
        fp.generator_degrees,
        fp.annihilator.join(", ")
    )
}

/// The oracle vector from its first nonzero entry, `D + 1` entries long.
pub(crate) fn relative(v: &[usize], d: i64) -> Vec<usize> {
    let start = v.iter().position(|&x| x != 0).unwrap_or(v.len());
    let mut out: Vec<usize> = v[start..].iter().copied().take(d as usize + 1).collect();
    out.resize(d as usize + 1, 0);
    out
}

impl<'a> Ctx<'a> {
    pub fn new(input: &'a ScenarioInput, inv: ScenarioInvariants, setup: KoszulSetup) -> Self {
        Ctx {
            input,
            inv,
            setup,
            d: input.degree_bound,
            bc: None,
            c1: None,
            c2: None,
            r2: None,
            sym: HashMap::new(),
            measured: HashMap::new(),
            rows: Vec::new(),
            signs: Vec::new(),
            oracle_ok: true,
        }
    }

    pub fn finish(self) -> (Vec<FingerprintRow>, Vec<SignRecord>, bool) {
        (self.rows, self.signs, self.oracle_ok)
    }

    pub fn oracle_ok(&self) -> bool {
        self.oracle_ok
    }

    pub fn note_oracle(&mut self, ok: bool) {
        self.oracle_ok &= ok;
    }

    pub fn bicomplex(&mut self) -> Result<Arc<Bicomplex>> {
        if self.bc.is_none() {
            let p_max = self.setup.n.max(self.inv.h);
            self.bc = Some(Arc::new(build_bicomplex(&self.setup, p_max)?));
        }
        Ok(self.bc.clone().expect("built"))
    }

    /// The truncated Koszul complex; index `i` holds `∧^{r-i}M`, so its homology is `H̄_{r-i}`.
    pub fn complex1(&mut self) -> Result<Arc<ChainComplex>> {
        if self.c1.is_none() {
            self.c1 = Some(Arc::new(truncated_koszul_chi(&self.setup)?));
        }
        Ok(self.c1.clone().expect("built"))
    }

    /// The N-complex; index `p` holds `N^p`.
    pub fn complex2(&mut self) -> Result<Arc<ChainComplex>> {
        if self.c2.is_none() {
            let bc = self.bicomplex()?;
            self.c2 = Some(Arc::new(n_complex(&self.setup, &bc)?));
        }
        Ok(self.c2.clone().expect("built"))
    }

    fn window_end(&self, fp: &Fingerprint, lo: i64) -> i64 {
        (if fp.is_zero { lo } else { fp.shift }) + self.d
    }

    /// Homology of `cx` at `idx`, measured by both engines (cached by key).
    pub fn homology(&mut self, key: &str, cx: &ChainComplex, idx: usize) -> Result<Arc<Measured>> {
        let key = format!("{key}#{idx}");
        if let Some(m) = self.measured.get(&key) {
            return Ok(m.clone());
        }
        let h = Arc::new(cx.homology(idx)?);
        let fp = fingerprint(&h, self.d);
        let lo = h.min_ambient_degree();
        let hi = self.window_end(&fp, lo);
        let gb = h.hilbert_vector(lo, hi);
        let oracle = degreewise_oracle(cx, idx, lo, hi);
        let m = Arc::new(Measured {
            module: h,
            fp,
            lo,
            gb,
            oracle,
        });
        self.oracle_ok &= m.agrees();
        self.measured.insert(key, m.clone());
        Ok(m)
    }

    /// A module with an engine-independent presentation, measured.
    pub fn module(&mut self, key: &str, module: Arc<Subquotient>) -> Arc<Measured> {
        if let Some(m) = self.measured.get(key) {
            return m.clone();
        }
        let fp = fingerprint(&module, self.d);
        let lo = module.min_ambient_degree();
        let hi = self.window_end(&fp, lo);
        let gb = module.hilbert_vector(lo, hi);
        let oracle = module_hilbert(&module, lo, hi);
        let m = Arc::new(Measured {
            module,
            fp,
            lo,
            gb,
            oracle,
        });
        self.oracle_ok &= m.agrees();
        self.measured.insert(key.to_string(), m.clone());
        m
    }

    pub fn sym(&mut self, j: usize) -> Result<Arc<Measured>> {
        if let Some(m) = self.sym.get(&j) {
            return Ok(m.clone());
        }
        let s = Arc::new(sym_power_of_cokernel(&self.setup.psi, j)?);
        let m = self.module(&format!("S^{j}(C)"), s);
        self.sym.insert(j, m.clone());
        Ok(m)
    }

    pub fn sym_name(j: usize) -> String {
        if j == 0 {
            "R/I_M".into()
        } else {
            format!("S^{j}(C)")
        }
    }

    /// Compares a measured module with an expectation and records a
    /// fingerprint row.
    pub fn compare(&mut self, check: &str, complex: &str, position: &str, got: &Measured, expect: Expect) -> Result<Detail> {
        let (name, other) = match expect {
            Expect::Zero => ("0".to_string(), None),
            Expect::Sym(j) => (Self::sym_name(j), Some(self.sym(j)?)),
            Expect::Module(name, m) => {
                let key = format!("module:{name}");
                (name, Some(self.module(&key, m)))
            }
            Expect::Homology(name, cx, idx) => {
                let key = name.to_string();
                (name, Some(self.homology(&key, &cx, idx)?))
            }
        };
        let mut degree = got.first_disagreement();
        let ok = match &other {
            None => {
                if degree.is_none() {
                    degree = got.oracle.iter().position(|&x| x != 0).map(|i| got.lo + i as i64);
                }
                got.fp.is_zero && got.agrees() && got.oracle.iter().all(|&x| x == 0)
            }
            Some(e) => {
                if degree.is_none() {
                    degree = e.first_disagreement();
                }
                let rel_ok = relative(&got.oracle, self.d) == relative(&e.oracle, self.d);
                got.fp.matches(&e.fp) && got.agrees() && e.agrees() && rel_ok
            }
        };
        self.rows.push(FingerprintRow {
            check: check.into(),
            complex: complex.into(),
            position: position.into(),
            expected: name.clone(),
            fingerprint: got.fp.clone(),
            window_start: got.lo,
            gb_hilbert: got.gb.clone(),
            oracle_hilbert: got.oracle.clone(),
            matches: ok,
        });
        let mut det = Detail::new(
            format!("{complex} {position}"),
            match &other {
                None => "0".to_string(),
                Some(e) => format!("{name}: {}", describe(&e.fp)),
            },
            describe(&got.fp),
            ok,
        );
        if !ok {
            det.degree = degree;
        }
        Ok(det)
    }

    /// Oracle certificate that `f` is injective on degrees `[lo, lo + D]`
    /// of the source, plus the engine's verdict.
    pub fn injective(&mut self, item: &str, f: &ModuleMap) -> Result<Detail> {
        let gb_zero = f.kernel()?.is_zero();
        let o = Oracle::for_module(f.source());
        let lo = f.source().min_ambient_degree();
        let dims: Vec<usize> = (lo..=lo + self.d + 1).map(|d| o.kernel_dim(f, d)).collect();
        let oracle_zero = dims.iter().all(|&x| x == 0);
        self.oracle_ok &= gb_zero == oracle_zero;
        let mut det = Detail::new(
            format!("{item} kernel"),
            "0",
            if gb_zero && oracle_zero {
                "0".to_string()
            } else {
                format!("engine zero: {gb_zero}; oracle dims {dims:?} from degree {lo}")
            },
            gb_zero && oracle_zero,
        );
        det.degree = dims.iter().position(|&x| x != 0).map(|i| lo + i as i64);
        Ok(det)
    }

    /// Oracle certificate that `f` is surjective on degrees `[lo, lo + D]`
    /// of the target, plus the engine's verdict.
    pub fn surjective(&mut self, item: &str, f: &ModuleMap) -> Result<Detail> {
        let gb_zero = f.cokernel()?.is_zero();
        let o = Oracle::for_module(f.target());
        let lo = f.target().min_ambient_degree();
        let dims: Vec<usize> = (lo..=lo + self.d + 1)
            .map(|d| o.module_dim(f.target(), d) - o.image_dim(f, d))
            .collect();
        let oracle_zero = dims.iter().all(|&x| x == 0);
        self.oracle_ok &= gb_zero == oracle_zero;
        let mut det = Detail::new(
            format!("{item} cokernel"),
            "0",
            if gb_zero && oracle_zero {
                "0".to_string()
            } else {
                format!("engine zero: {gb_zero}; oracle dims {dims:?} from degree {lo}")
            },
            gb_zero && oracle_zero,
        );
        det.degree = dims.iter().position(|&x| x != 0).map(|i| lo + i as i64);
        Ok(det)
    }
}
