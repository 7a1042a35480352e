//! Homogeneous Buchberger algorithm for submodules of graded free modules.
//!
//! Pairs are processed degree by degree (normal strategy) and pruned with the
//! Gebauer–Möller criteria. Inputs of degree `d` are reduced after all pairs
//! of degree `d`, so an input that reduces to zero lies in the span of the
//! lower-degree part plus the earlier inputs: this gives minimal generating
//! sets by graded Nakayama in the same pass. With cofactor tracking every
//! element remembers its expression in the inputs, and every reduction to
//! zero yields a syzygy of the inputs.

use crate::polyring::{GroundField, Monomial};

use super::modvec::{axpy, mul_monomial, poly_times, scale, ModTerm, ModVec, ModuleOrder};

#[derive(Clone, Debug)]
pub(crate) struct Element {
    pub vec: ModVec,
    pub cof: ModVec,
    pub lead: Monomial,
    pub comp: u32,
    pub mask: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Role {
    /// Always joins the basis when it does not reduce to zero.
    Base,
    /// Membership-tested; reported in [`Outcome::kept`] when it survives.
    Candidate,
}

#[derive(Clone, Debug)]
pub(crate) struct Input {
    pub vec: ModVec,
    pub deg: i64,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Options {
    pub track: bool,
    pub syzygies: bool,
    /// Stop once every pair and input of degree `<= d` is processed.
    pub stop_after: Option<i64>,
    pub interreduce: bool,
}

#[derive(Debug)]
pub(crate) struct Outcome {
    pub basis: Vec<Element>,
    pub kept: Vec<usize>,
    pub syzygies: Vec<ModVec>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i64,
}

pub(crate) struct Engine<'a> {
    field: GroundField,
    ord: &'a ModuleOrder,
    cof_ord: ModuleOrder,
    rank_one: bool,
    opts: Options,
    basis: Vec<Element>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    syzygies: Vec<ModVec>,
    pending_koszul: Vec<(usize, usize)>,
    nvars: usize,
}

impl<'a> Engine<'a> {
    pub fn new(
        field: GroundField,
        nvars: usize,
        ord: &'a ModuleOrder,
        cof_twists: Vec<i64>,
        opts: Options,
    ) -> Self {
        let rank = ord.twists.len();
        Engine {
            field,
            ord,
            cof_ord: ModuleOrder::new(ord.order, cof_twists),
            rank_one: rank == 1,
            opts,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            pairs: Vec::new(),
            syzygies: Vec::new(),
            pending_koszul: Vec::new(),
            nvars,
        }
    }

    /// Builds an engine around an existing Gröbner basis given as
    /// `(vector, cofactor)` pairs, so that further vectors can be reduced.
    pub fn from_basis(
        field: GroundField,
        nvars: usize,
        ord: &'a ModuleOrder,
        cof_twists: Vec<i64>,
        basis: &[(ModVec, ModVec)],
    ) -> Self {
        let opts = Options {
            track: !cof_twists.is_empty(),
            ..Options::default()
        };
        let mut e = Engine::new(field, nvars, ord, cof_twists, opts);
        for (v, c) in basis {
            let lead = v[0];
            let idx = e.basis.len();
            e.by_comp[lead.comp as usize].push(idx);
            e.basis.push(Element {
                vec: v.clone(),
                cof: c.clone(),
                lead: lead.mon,
                comp: lead.comp,
                mask: lead.mon.support_mask(),
            });
        }
        e
    }

    #[inline]
    pub fn find_divisor(&self, t: &ModTerm) -> Option<usize> {
        let mask = t.mon.support_mask();
        self.by_comp[t.comp as usize].iter().copied().find(|&k| {
            let e = &self.basis[k];
            e.mask & !mask == 0 && e.lead.divides(&t.mon)
        })
    }

    /// Reduces `v` (with cofactor `cof`) by the current basis. Top reduction
    /// only unless `full`.
    pub fn reduce(&self, mut v: ModVec, mut cof: ModVec, full: bool) -> (ModVec, ModVec) {
        let field = self.field;
        let mut done = 0;
        while done < v.len() {
            let t = v[done];
            match self.find_divisor(&t) {
                Some(k) => {
                    let e = &self.basis[k];
                    let q = e.lead.quotient_of(&t.mon);
                    let c = field.neg(t.coef);
                    let tail = axpy(field, self.ord, &v[done..], c, &q, &e.vec);
                    v.truncate(done);
                    v.extend(tail);
                    if self.opts.track {
                        cof = axpy(field, &self.cof_ord, &cof, c, &q, &e.cof);
                    }
                }
                None if full => done += 1,
                None => break,
            }
        }
        (v, cof)
    }

    fn add(&mut self, mut vec: ModVec, mut cof: ModVec) -> usize {
        let inv = self.field.inv(vec[0].coef);
        scale(self.field, &mut vec, inv);
        scale(self.field, &mut cof, inv);
        let lead = vec[0];
        let t = self.basis.len();
        self.update_pairs(t, &lead);
        self.by_comp[lead.comp as usize].push(t);
        self.basis.push(Element {
            vec,
            cof,
            lead: lead.mon,
            comp: lead.comp,
            mask: lead.mon.support_mask(),
        });
        t
    }

    fn update_pairs(&mut self, t: usize, lead: &ModTerm) {
        struct Cand {
            i: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut c_list: Vec<Cand> = self.by_comp[lead.comp as usize]
            .iter()
            .map(|&i| {
                let li = &self.basis[i].lead;
                Cand {
                    i,
                    lcm: li.lcm(&lead.mon),
                    coprime: self.rank_one && li.is_coprime(&lead.mon),
                }
            })
            .collect();
        c_list.reverse();
        let mut d_list: Vec<Cand> = Vec::new();
        while let Some(p) = c_list.pop() {
            let dominated = c_list.iter().any(|q| q.lcm.divides(&p.lcm))
                || d_list.iter().any(|q| q.lcm.divides(&p.lcm));
            if p.coprime || !dominated {
                d_list.push(p);
            }
        }
        // B-criterion on the old pairs.
        let basis = &self.basis;
        self.pairs.retain(|pr| {
            !(pr.comp == lead.comp
                && lead.mon.divides(&pr.lcm)
                && basis[pr.i].lead.lcm(&lead.mon) != pr.lcm
                && basis[pr.j].lead.lcm(&lead.mon) != pr.lcm)
        });
        for p in d_list {
            if p.coprime {
                continue;
            }
            let deg = self.ord.degree(&p.lcm, lead.comp);
            self.pairs.push(Pair {
                i: p.i,
                j: t,
                lcm: p.lcm,
                comp: lead.comp,
                deg,
            });
        }
        if self.opts.syzygies && self.rank_one {
            // Coprime pairs skipped by the product criterion still contribute
            // their Koszul syzygies.
            for &i in &self.by_comp[lead.comp as usize] {
                if self.basis[i].lead.is_coprime(&lead.mon) {
                    self.pending_koszul.push((i, t));
                }
            }
        }
    }

    fn s_vector(&self, pr: &Pair) -> (ModVec, ModVec) {
        let (a, b) = (&self.basis[pr.i], &self.basis[pr.j]);
        let qa = a.lead.quotient_of(&pr.lcm);
        let qb = b.lead.quotient_of(&pr.lcm);
        let minus = self.field.neg(1);
        let v = axpy(self.field, self.ord, &mul_monomial(&a.vec, &qa), minus, &qb, &b.vec);
        let cof = if self.opts.track {
            axpy(self.field, &self.cof_ord, &mul_monomial(&a.cof, &qa), minus, &qb, &b.cof)
        } else {
            Vec::new()
        };
        (v, cof)
    }

    fn flush_koszul(&mut self) {
        let pending = std::mem::take(&mut self.pending_koszul);
        for (i, t) in pending {
            let (a, b) = (&self.basis[i], &self.basis[t]);
            let left = poly_times(self.field, &self.cof_ord, &b.vec, &a.cof);
            let right = poly_times(self.field, &self.cof_ord, &a.vec, &b.cof);
            let minus = self.field.neg(1);
            let one = Monomial::one(self.nvars);
            let syz = axpy(self.field, &self.cof_ord, &left, minus, &one, &right);
            if !syz.is_empty() {
                self.syzygies.push(syz);
            }
        }
    }

    /// Runs Buchberger on `inputs`. The cofactor of input `k` is the unit
    /// vector `e_k` (when tracking).
    pub fn run(mut self, inputs: Vec<Input>) -> Outcome {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        order.sort_by_key(|&k| (inputs[k].deg, inputs[k].role == Role::Candidate, k));
        let mut next = 0;
        let mut kept = Vec::new();
        let nvars = self.nvars;
        loop {
            let pd = self.pairs.iter().map(|p| p.deg).min();
            let id = order.get(next).map(|&k| inputs[k].deg);
            let d = match (pd, id) {
                (None, None) => break,
                (Some(a), None) | (None, Some(a)) => a,
                (Some(a), Some(b)) => a.min(b),
            };
            if self.opts.stop_after.is_some_and(|s| d > s) {
                break;
            }
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) =
                std::mem::take(&mut self.pairs).into_iter().partition(|p| p.deg == d);
            self.pairs = rest;
            batch.sort_by(|a, b| {
                self.ord
                    .cmp(&a.lcm, a.comp, &b.lcm, b.comp)
                    .then((a.i, a.j).cmp(&(b.i, b.j)))
            });
            for pr in batch {
                let (v, cof) = self.s_vector(&pr);
                let (r, rc) = self.reduce(v, cof, false);
                if r.is_empty() {
                    if self.opts.syzygies && !rc.is_empty() {
                        self.syzygies.push(rc);
                    }
                } else {
                    self.add(r, rc);
                }
                self.flush_koszul();
            }
            while next < order.len() && inputs[order[next]].deg == d {
                let k = order[next];
                next += 1;
                let cof = if self.opts.track {
                    let one = Monomial::one(nvars);
                    vec![ModTerm {
                        coef: 1,
                        mon: one,
                        comp: k as u32,
                    }]
                } else {
                    Vec::new()
                };
                let (r, rc) = self.reduce(inputs[k].vec.clone(), cof, false);
                if r.is_empty() {
                    if self.opts.syzygies && !rc.is_empty() {
                        self.syzygies.push(rc);
                    }
                } else {
                    self.add(r, rc);
                    if inputs[k].role == Role::Candidate {
                        kept.push(k);
                    }
                }
                self.flush_koszul();
            }
        }
        if self.opts.interreduce {
            self.interreduce();
        }
        kept.sort_unstable();
        Outcome {
            basis: self.basis,
            kept,
            syzygies: self.syzygies,
        }
    }

    fn interreduce(&mut self) {
        for k in 0..self.basis.len() {
            let e = &self.basis[k];
            let head = e.vec[0];
            let tail = e.vec[1..].to_vec();
            let (r, rc) = self.reduce(tail, e.cof.clone(), true);
            let mut v = Vec::with_capacity(r.len() + 1);
            v.push(head);
            v.extend(r);
            self.basis[k].vec = v;
            self.basis[k].cof = rc;
        }
        // Sort by lead, descending, for a canonical presentation.
        let ord = self.ord;
        let mut basis = std::mem::take(&mut self.basis);
        basis.sort_by(|a, b| ord.cmp(&b.lead, b.comp, &a.lead, a.comp));
        self.by_comp = vec![Vec::new(); ord.twists.len()];
        for (i, e) in basis.iter().enumerate() {
            self.by_comp[e.comp as usize].push(i);
        }
        self.basis = basis;
    }
}
