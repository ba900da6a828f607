//! Recovering `L_c(τ) = Σ_σ n_σ M_c(σ)` from constraints.
//!
//! The unknowns are the `n_σ` allowed by parity. Every graded piece
//! `L[k] = S^k h* ⊗ τ + Σ_σ n_σ S^{k-g_σ} h* ⊗ σ` (`g_σ` the weight gap) is
//! linear in them, so most constraints are integer linear equations. The
//! rest (nonnegativity, generation, induction, composition) prune a finite
//! search. Whatever still survives is separated by asking the form on
//! `M_c(τ)` for a kernel character or for vanishing, lowest degree first.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::{
    context, decompose_over_irreducibles, degree_gap, degree_one_singulars, finite_dim_and_dimension, h_weight,
    kgroup_induct, parabolic_trivial_module, parity_allowed, support_dim, SliceTable, VirtualCharacter,
};
use crate::characters::formula::phi;
use crate::group::ParabolicKind;
use crate::reps::Label;
use crate::scalar::{Qs5, Rat};
use crate::verma::{certified_kernel, mono_dim, KernelRoute, Verma, VermaError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Parity,
    SingularLemma,
    Transport,
    SignTwist,
    Semisimple,
    Support,
    Finiteness,
    Symmetry,
    Galois,
    Nonnegativity,
    ZeroForm,
    Kernel,
    Induction,
    Composition,
}

impl ConstraintKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::Parity => "parity",
            ConstraintKind::SingularLemma => "degree-one-singular",
            ConstraintKind::Transport => "transport",
            ConstraintKind::SignTwist => "sign-twist",
            ConstraintKind::Semisimple => "semisimple",
            ConstraintKind::Support => "support",
            ConstraintKind::Finiteness => "finiteness",
            ConstraintKind::Symmetry => "weight-symmetry",
            ConstraintKind::Galois => "galois",
            ConstraintKind::Nonnegativity => "nonnegativity",
            ConstraintKind::ZeroForm => "zero-form",
            ConstraintKind::Kernel => "kernel",
            ConstraintKind::Induction => "induction",
            ConstraintKind::Composition => "composition",
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One step of a certificate: a constraint and the coefficients it fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRecord {
    pub kind: ConstraintKind,
    pub detail: String,
    pub pinned: Vec<Label>,
}

impl ConstraintRecord {
    fn new(kind: ConstraintKind, detail: impl Into<String>, pinned: Vec<Label>) -> Self {
        ConstraintRecord {
            kind,
            detail: detail.into(),
            pinned,
        }
    }
}

/// Matrix-size limits for oracle queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest slice on which a kernel (rank) computation is attempted.
    pub rank_dim: usize,
    /// Largest slice on which the form is built just to test for zero.
    pub form_dim: usize,
}

impl Budget {
    pub fn new(rank_dim: usize) -> Budget {
        Budget {
            rank_dim,
            form_dim: 2 * rank_dim,
        }
    }

    /// `H3_BUDGET` if set, else 160.
    pub fn from_env() -> Budget {
        let n = std::env::var("H3_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(160);
        Budget::new(n)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(160)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelQuery {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub mult: [i64; 10],
    pub route: KernelRoute,
}

/// Source of facts about the contravariant form on `M_c(τ)`.
pub trait Oracle {
    /// Kernel character of the form in degree `k`; `None` if unavailable.
    fn kernel(&mut self, c: &Rat, tau: Label, k: usize) -> Result<Option<KernelQuery>, VermaError>;
    /// Whether the form vanishes identically in degree `k`.
    fn zero_form(&mut self, c: &Rat, tau: Label, k: usize) -> Result<Option<bool>, VermaError>;
}

/// An oracle that knows nothing.
pub struct NoOracle;

impl Oracle for NoOracle {
    fn kernel(&mut self, _: &Rat, _: Label, _: usize) -> Result<Option<KernelQuery>, VermaError> {
        Ok(None)
    }

    fn zero_form(&mut self, _: &Rat, _: Label, _: usize) -> Result<Option<bool>, VermaError> {
        Ok(None)
    }
}

/// Answers queries by building the Verma module, keeping it for reuse.
#[derive(Default)]
pub struct VermaOracle {
    modules: HashMap<(Rat, Label), Verma<Qs5>>,
    kernels: HashMap<(Rat, Label, usize), KernelQuery>,
    zeros: HashMap<(Rat, Label, usize), bool>,
    /// One line per computation actually performed.
    pub log: Vec<String>,
}

impl VermaOracle {
    pub fn new() -> Self {
        Self::default()
    }

    fn module(&mut self, c: &Rat, tau: Label, k: usize) -> &mut Verma<Qs5> {
        let key = (c.clone(), tau);
        let reuse = self.modules.get(&key).is_some_and(|v| v.has_form(k));
        if !reuse {
            let ctx = context();
            self.modules.insert(key.clone(), Verma::new(&ctx.group, &ctx.reps, tau, c));
        }
        self.modules.get_mut(&key).expect("just inserted")
    }
}

impl Oracle for VermaOracle {
    fn kernel(&mut self, c: &Rat, tau: Label, k: usize) -> Result<Option<KernelQuery>, VermaError> {
        let key = (c.clone(), tau, k);
        if let Some(q) = self.kernels.get(&key) {
            return Ok(Some(q.clone()));
        }
        let ctx = context();
        let (info, route) = certified_kernel(self.module(c, tau, k), &ctx.group, &ctx.reps, k)?;
        let q = KernelQuery {
            degree: k,
            dim: info.dim,
            rank: info.rank,
            mult: info.mult,
            route,
        };
        self.log.push(format!("kernel c={c} tau={tau} k={k} dim={} rank={}", q.dim, q.rank));
        self.kernels.insert(key, q.clone());
        Ok(Some(q))
    }

    fn zero_form(&mut self, c: &Rat, tau: Label, k: usize) -> Result<Option<bool>, VermaError> {
        let key = (c.clone(), tau, k);
        if let Some(z) = self.zeros.get(&key) {
            return Ok(Some(*z));
        }
        let z = self.module(c, tau, k).form(k)?.is_zero();
        self.log.push(format!("zero-test c={c} tau={tau} k={k} zero={z}"));
        self.zeros.insert(key, z);
        Ok(Some(z))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Highest degree at which graded pieces are checked.
    pub cap: usize,
    /// Already known irreducibles at the same `c`, as coefficient rows.
    pub known: [Option<[i64; 10]>; 10],
    /// A row obtained by transport from another parameter, with its source.
    pub transport: Option<([i64; 10], String)>,
    /// Give up (without querying) while an induction or composition check
    /// still waits on unknown irreducibles.
    pub defer: bool,
    /// Whether the oracle may be consulted at all.
    pub use_oracle: bool,
    pub budget: Budget,
    /// Bound on the number of search nodes.
    pub node_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cap: 60,
            known: [None; 10],
            transport: None,
            defer: false,
            use_oracle: true,
            budget: Budget::from_env(),
            node_limit: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnresolvedReason {
    /// Several candidates survive and checks are waiting on other rows.
    Deferred,
    /// Several candidates survive and no affordable query separates them.
    Underdetermined,
    /// The search exceeded its node limit.
    SearchLimit,
}

/// What is left when no unique answer was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    pub reason: UnresolvedReason,
    /// Coefficients on which the surviving candidates disagree.
    pub free: Vec<Label>,
    pub candidates: Vec<VirtualCharacter>,
    /// Constraint kinds that would be needed (queries over budget, or
    /// checks waiting on other rows).
    pub missing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub c: Rat,
    pub tau: Label,
    pub coeffs: Option<VirtualCharacter>,
    pub finite: Option<bool>,
    pub dim: Option<i64>,
    pub certificate: Vec<ConstraintRecord>,
    pub unresolved: Option<Unresolved>,
}

impl Solution {
    fn solved(c: &Rat, tau: Label, v: VirtualCharacter, certificate: Vec<ConstraintRecord>) -> Solution {
        let f = finite_dim_and_dimension(&v);
        Solution {
            c: c.clone(),
            tau,
            coeffs: Some(v),
            finite: Some(f.finite),
            dim: f.dim,
            certificate,
            unresolved: None,
        }
    }

    pub fn is_solved(&self) -> bool {
        self.coeffs.is_some()
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("constraints are inconsistent at c={c}, tau={tau}: {constraint}")]
    Inconsistent { c: Rat, tau: Label, constraint: String },
    #[error(transparent)]
    Oracle(#[from] VermaError),
}

/// Integer linear equation `Σ a_v n_v = b`.
type Eq = (Vec<i64>, i64);

/// Reduced row echelon system over Q in the unknowns.
#[derive(Clone, Debug)]
struct System {
    m: usize,
    rows: Vec<Vec<Rat>>,
    kinds: BTreeSet<ConstraintKind>,
}

impl System {
    fn new(m: usize) -> System {
        System {
            m,
            rows: Vec::new(),
            kinds: BTreeSet::new(),
        }
    }

    /// Add equations and re-reduce; `false` if inconsistent.
    fn add(&mut self, eqs: &[Eq], kind: ConstraintKind) -> bool {
        let mut useful = false;
        let mut a: Vec<Vec<Rat>> = std::mem::take(&mut self.rows);
        for (co, b) in eqs {
            let mut row: Vec<Rat> = co.iter().map(|&x| Rat::from_int(x)).collect();
            row.push(Rat::from_int(*b));
            a.push(row);
            useful = true;
        }
        if useful {
            self.kinds.insert(kind);
        }
        let m = self.m;
        let mut r = 0;
        for col in 0..=m {
            let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
            if col == m {
                self.rows = a;
                return false;
            }
            a.swap(r, p);
            let inv = a[r][col].inv().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &(&f * y);
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        self.rows = a;
        true
    }

    /// Unknowns determined by the system; `Err` if one is not an integer.
    fn pinned(&self) -> Result<Vec<Option<i64>>, ()> {
        let mut out = vec![None; self.m];
        for row in &self.rows {
            let nz: Vec<usize> = (0..self.m).filter(|&j| !row[j].is_zero()).collect();
            if nz.len() == 1 {
                let v = &row[self.m];
                if !v.is_integer() {
                    return Err(());
                }
                out[nz[0]] = Some(v.to_i64().ok_or(())?);
            }
        }
        Ok(out)
    }

    fn with_values(&self, vals: &[(usize, i64)]) -> Option<System> {
        let eqs: Vec<Eq> = vals
            .iter()
            .map(|&(v, x)| {
                let mut co = vec![0; self.m];
                co[v] = 1;
                (co, x)
            })
            .collect();
        let mut s = self.clone();
        let kinds = s.kinds.clone();
        if !s.add(&eqs, ConstraintKind::Nonnegativity) || s.pinned().is_err() {
            return None;
        }
        s.kinds = kinds;
        Some(s)
    }
}

struct Problem<'a> {
    c: Rat,
    tau: Label,
    vars: Vec<Label>,
    gaps: Vec<usize>,
    /// `(gap, indices into vars)` in increasing gap.
    levels: Vec<(usize, Vec<usize>)>,
    t: SliceTable,
    cap: usize,
    /// Top degree `-2h_c(τ)` if a finite-dimensional `L_c(τ)` is possible.
    top: Option<usize>,
    max_gap: usize,
    opts: &'a SolveOptions,
}

#[derive(Clone, Debug)]
struct Candidate {
    n: Vec<i64>,
    pending: Vec<String>,
}

#[derive(Clone)]
struct Node {
    assign: Vec<Option<i64>>,
    sys: System,
    finite: bool,
}

struct Search {
    nodes: usize,
    limit_hit: bool,
    out: Vec<Candidate>,
    /// Constraint kinds that rejected a partial assignment with `n_v = x`.
    rejected: HashMap<(usize, i64), BTreeSet<ConstraintKind>>,
}

impl<'a> Problem<'a> {
    fn new(c: &Rat, tau: Label, opts: &'a SolveOptions) -> Problem<'a> {
        let mut vars: Vec<(usize, Label)> = Label::ALL
            .iter()
            .filter(|&&s| parity_allowed(c, tau, s))
            .map(|&s| (degree_gap(c, tau, s).expect("allowed gap"), s))
            .collect();
        vars.sort();
        let gaps: Vec<usize> = vars.iter().map(|v| v.0).collect();
        let vars: Vec<Label> = vars.iter().map(|v| v.1).collect();
        let mut levels: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, &g) in gaps.iter().enumerate() {
            match levels.last_mut() {
                Some((lg, v)) if *lg == g => v.push(i),
                _ => levels.push((g, vec![i])),
            }
        }
        let h = h_weight(c, tau);
        let two_h = &h * &Rat::from_int(2);
        let top = (two_h.is_integer() && !two_h.is_positive()).then(|| (-two_h).to_i64().expect("small") as usize);
        let max_gap = gaps.last().copied().unwrap_or(0);
        let cap = opts.cap.max(max_gap + 3).max(top.map_or(0, |k| k + 1));
        let t = context().slices(cap.max(top.unwrap_or(0).max(max_gap) + 3) + 1);
        Problem {
            c: c.clone(),
            tau,
            vars,
            gaps,
            levels,
            t,
            cap,
            top,
            max_gap,
            opts,
        }
    }

    fn m(&self) -> usize {
        self.vars.len()
    }

    /// `L[k]` with unassigned unknowns treated as zero.
    fn level(&self, n: &[Option<i64>], k: usize) -> [i64; 10] {
        let mut out = self.t[k][self.tau.0];
        for (i, v) in self.vars.iter().enumerate() {
            let Some(x) = n[i] else { continue };
            if x == 0 || k < self.gaps[i] {
                continue;
            }
            let row = &self.t[k - self.gaps[i]][v.0];
            for r in 0..10 {
                out[r] += x * row[r];
            }
        }
        out
    }

    /// `L[k][ρ]` as `(coefficients, constant)`.
    fn lin(&self, k: usize, rho: usize) -> (Vec<i64>, i64) {
        let co = (0..self.m())
            .map(|i| if k >= self.gaps[i] { self.t[k - self.gaps[i]][self.vars[i].0][rho] } else { 0 })
            .collect();
        (co, self.t[k][self.tau.0][rho])
    }

    fn eq_value(&self, k: usize, rho: usize, value: i64) -> Eq {
        let (co, b) = self.lin(k, rho);
        (co, value - b)
    }

    fn eq_diff(&self, (k1, r1): (usize, usize), (k2, r2): (usize, usize)) -> Eq {
        let (a, b) = self.lin(k1, r1);
        let (c, d) = self.lin(k2, r2);
        (a.iter().zip(&c).map(|(x, y)| x - y).collect(), d - b)
    }

    fn vanishing_eqs(&self, top: usize) -> Vec<Eq> {
        let hi = top.max(self.max_gap) + 3;
        let mut out = Vec::new();
        for k in top + 1..=hi {
            for r in 0..10 {
                out.push(self.eq_value(k, r, 0));
            }
        }
        out
    }

    /// `L[k] ≅ L[top-k]` as representations, compared through `weight(ρ)`
    /// summed over irreps (`None` compares each isotypic part).
    fn symmetry_eqs(&self, top: usize, weight: Option<&dyn Fn(Label) -> i64>) -> Vec<Eq> {
        let mut out = Vec::new();
        for k in 0..=top / 2 {
            if k >= top - k {
                continue;
            }
            match weight {
                None => {
                    for r in 0..10 {
                        out.push(self.eq_diff((k, r), (top - k, r)));
                    }
                }
                Some(w) => {
                    let mut co = vec![0i64; self.m()];
                    let mut rhs = 0i64;
                    for l in Label::ALL {
                        let (a, b) = self.eq_diff((k, l.0), (top - k, l.0));
                        for (x, y) in co.iter_mut().zip(&a) {
                            *x += w(l) * y;
                        }
                        rhs += w(l) * b;
                    }
                    if co.iter().any(|&x| x != 0) || rhs != 0 {
                        out.push((co, rhs));
                    }
                }
            }
        }
        out
    }

    fn dimension_eqs(&self, top: usize) -> Vec<Eq> {
        self.symmetry_eqs(top, Some(&|l: Label| l.dim() as i64))
    }

    /// The character of `L[k]` is Galois invariant exactly when that of
    /// `L[top-k]` is: compares the excess of `3` over `3~` constituents.
    fn galois_eqs(&self, top: usize) -> Vec<Eq> {
        self.symmetry_eqs(top, Some(&galois_excess))
    }

    /// Adds the equations valid for a finite-dimensional `L_c(τ)`.
    fn add_finite(&self, sys: &mut System) -> Result<(), ConstraintKind> {
        let top = self.top.ok_or(ConstraintKind::Finiteness)?;
        if !sys.add(&self.vanishing_eqs(top), ConstraintKind::Finiteness) {
            return Err(ConstraintKind::Finiteness);
        }
        if !sys.add(&self.dimension_eqs(top), ConstraintKind::Symmetry) {
            return Err(ConstraintKind::Symmetry);
        }
        if !sys.add(&self.galois_eqs(top), ConstraintKind::Galois) {
            return Err(ConstraintKind::Galois);
        }
        if !sys.add(&self.symmetry_eqs(top, None), ConstraintKind::Symmetry) {
            return Err(ConstraintKind::Symmetry);
        }
        if sys.pinned().is_err() {
            return Err(ConstraintKind::Symmetry);
        }
        Ok(())
    }

    fn full(&self, n: &[i64]) -> VirtualCharacter {
        let mut co = [0i64; 10];
        co[self.tau.0] = 1;
        for (i, v) in self.vars.iter().enumerate() {
            co[v.0] = n[i];
        }
        VirtualCharacter::new(&self.c, co)
    }

    fn support_label(&self) -> bool {
        self.tau == Label::ONE_PLUS && self.c.is_positive()
    }

    fn search(&self, idx: usize, node: Node, s: &mut Search) {
        if s.limit_hit {
            return;
        }
        s.nodes += 1;
        if s.nodes > self.opts.node_limit {
            s.limit_hit = true;
            return;
        }
        if idx == self.levels.len() {
            let n: Vec<i64> = node.assign.iter().map(|x| x.expect("assigned")).collect();
            match self.complete(&n, &node) {
                Ok(pending) => s.out.push(Candidate { n, pending }),
                Err(kind) => self.reject(s, &node.assign, kind),
            }
            return;
        }
        let (g, vs) = &self.levels[idx];
        let pinned = node.sys.pinned().unwrap_or_else(|_| vec![None; self.m()]);
        let base = self.level(&node.assign, *g);
        let ranges: Vec<(i64, i64)> = vs
            .iter()
            .map(|&v| match pinned[v] {
                Some(p) => (p, p),
                None => {
                    let b = base[self.vars[v].0];
                    (-b, self.t[*g][self.tau.0][self.vars[v].0] - b)
                }
            })
            .collect();
        let end = self.levels.get(idx + 1).map_or(self.cap + 1, |l| l.0);
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            let mut a = node.assign.clone();
            for &v in vs {
                a[v] = Some(pinned[v].unwrap_or(0));
            }
            self.reject(s, &a, ConstraintKind::Nonnegativity);
            return;
        }
        loop {
            let mut assign = node.assign.clone();
            for (j, &v) in vs.iter().enumerate() {
                assign[v] = Some(cur[j]);
            }
            let vals: Vec<(usize, i64)> = vs.iter().zip(&cur).map(|(&v, &x)| (v, x)).collect();
            match node.sys.with_values(&vals) {
                None => {
                    let kind = node.sys.kinds.iter().next_back().copied().unwrap_or(ConstraintKind::Nonnegativity);
                    self.reject(s, &assign, kind);
                }
                Some(sys) => {
                    let mut child = Node {
                        assign: assign.clone(),
                        sys,
                        finite: node.finite,
                    };
                    match self.window(&mut child, *g, end) {
                        Ok(()) => self.search(idx + 1, child, s),
                        Err(kind) => self.reject(s, &assign, kind),
                    }
                }
            }
            // odometer
            let mut j = 0;
            loop {
                if j == cur.len() {
                    return;
                }
                if cur[j] < ranges[j].1 {
                    cur[j] += 1;
                    break;
                }
                cur[j] = ranges[j].0;
                j += 1;
            }
        }
    }

    fn reject(&self, s: &mut Search, assign: &[Option<i64>], kind: ConstraintKind) {
        for (v, x) in assign.iter().enumerate() {
            if let Some(x) = x {
                s.rejected.entry((v, *x)).or_default().insert(kind);
            }
        }
    }

    /// Checks on degrees `[lo, hi)`, which are final once the unknowns of
    /// gap below `hi` are assigned.
    fn window(&self, node: &mut Node, lo: usize, hi: usize) -> Result<(), ConstraintKind> {
        let mut zero_seen = false;
        for k in lo..hi.min(self.cap + 1) {
            let l = self.level(&node.assign, k);
            let m = self.t[k][self.tau.0];
            if l.iter().zip(&m).any(|(a, b)| *a < 0 || a > b) {
                return Err(ConstraintKind::Nonnegativity);
            }
            let z = l.iter().all(|&x| x == 0);
            if zero_seen && !z {
                return Err(ConstraintKind::Finiteness);
            }
            if z && !zero_seen {
                zero_seen = true;
                if !node.finite {
                    self.add_finite(&mut node.sys)?;
                    node.finite = true;
                }
            }
        }
        Ok(())
    }

    /// Checks on a complete assignment; returns checks still waiting on
    /// unknown rows.
    fn complete(&self, n: &[i64], node: &Node) -> Result<Vec<String>, ConstraintKind> {
        let v = self.full(n);
        let f = finite_dim_and_dimension(&v);
        if f.negative_at.is_some() {
            return Err(ConstraintKind::Nonnegativity);
        }
        let assign: Vec<Option<i64>> = n.iter().map(|&x| Some(x)).collect();
        let jv = VirtualCharacter::standard(&self.c, self.tau).sub(&v);
        let j_series = finite_dim_and_dimension(&jv);
        if j_series.negative_at.is_some() {
            return Err(ConstraintKind::Nonnegativity);
        }
        if f.finite {
            let top = self.top.ok_or(ConstraintKind::Finiteness)?;
            let mut sys = node.sys.clone();
            if !node.finite {
                self.add_finite(&mut sys)?;
            }
            for k in 0..=top {
                let a = self.level(&assign, k);
                let b = self.level(&assign, top - k);
                if a != b {
                    return Err(ConstraintKind::Symmetry);
                }
            }
        } else {
            for k in 0..=self.cap {
                if self.level(&assign, k).iter().all(|&x| x == 0) {
                    return Err(ConstraintKind::Finiteness);
                }
            }
        }
        if self.support_label() {
            if let Some(s) = support_dim(&self.c) {
                if f.pole_order != s {
                    return Err(ConstraintKind::Support);
                }
            }
        }
        let mut pending = Vec::new();
        let mut rows = self.opts.known;
        rows[self.tau.0] = Some(v.coeffs);
        match decompose_over_irreducibles(&jv, &rows) {
            Ok(d) => {
                if d.iter().any(|&x| x < 0) {
                    return Err(ConstraintKind::Composition);
                }
            }
            Err(l) => pending.push(format!("composition needs L({l})")),
        }
        for kind in [ParabolicKind::Z2xZ2, ParabolicKind::S3] {
            let Some(triv) = parabolic_trivial_module(kind, &self.c) else { continue };
            let ind = kgroup_induct(kind, &triv, &self.c);
            if ind.get(self.tau) == 0 && !ind.support().iter().any(|l| v.get(*l) != 0) {
                continue;
            }
            match decompose_over_irreducibles(&ind, &rows) {
                Ok(d) => {
                    if d.iter().any(|&x| x < 0) {
                        return Err(ConstraintKind::Induction);
                    }
                }
                Err(l) => pending.push(format!("induction from {} needs L({l})", kind.name())),
            }
        }
        Ok(pending)
    }
}

fn galois_excess(l: Label) -> i64 {
    match l.name() {
        "3+" | "3-" => 1,
        "3~+" | "3~-" => -1,
        _ => 0,
    }
}

/// The pinned labels whose values are newly determined by `now`.
fn newly(prob: &Problem, before: &[Option<i64>], now: &[Option<i64>]) -> Vec<Label> {
    (0..prob.m()).filter(|&i| before[i].is_none() && now[i].is_some()).map(|i| prob.vars[i]).collect()
}

/// Values on which all candidates agree.
fn agreed(m: usize, cands: &[Candidate]) -> Vec<Option<i64>> {
    (0..m)
        .map(|i| {
            let x = cands.first()?.n[i];
            cands.iter().all(|c| c.n[i] == x).then_some(x)
        })
        .collect()
}

fn describe(eq_count: usize, what: &str) -> String {
    format!("{eq_count} equations: {what}")
}

/// Decompose `L_c(τ)` into standard modules.
pub fn solve_decomposition(
    c: &Rat,
    tau: Label,
    oracle: &mut dyn Oracle,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    if c.is_negative() {
        let mut o = opts.clone();
        for l in Label::ALL {
            o.known[l.sign_twist().0] = opts.known[l.0].map(|r| VirtualCharacter::new(c, r).sign_twist().coeffs);
        }
        o.transport = opts
            .transport
            .as_ref()
            .map(|(r, s)| (VirtualCharacter::new(c, *r).sign_twist().coeffs, s.clone()));
        let mut sol = solve_decomposition(&-c, tau.sign_twist(), oracle, &o)?;
        sol.certificate.insert(
            0,
            ConstraintRecord::new(
                ConstraintKind::SignTwist,
                format!("solved L({}) at c={} and twisted by the sign", tau.sign_twist(), -c),
                vec![],
            ),
        );
        sol.c = c.clone();
        sol.tau = tau;
        sol.coeffs = sol.coeffs.map(|v| v.sign_twist());
        if let Some(u) = sol.unresolved.as_mut() {
            u.free = u.free.iter().map(|l| l.sign_twist()).collect();
            u.candidates = u.candidates.iter().map(|v| v.sign_twist()).collect();
        }
        return Ok(sol);
    }

    let prob = Problem::new(c, tau, opts);
    let m = prob.m();
    let mut cert = Vec::new();
    let inconsistent = |what: &str| SolveError::Inconsistent {
        c: c.clone(),
        tau,
        constraint: what.to_string(),
    };

    let gated: Vec<Label> = Label::ALL.iter().copied().filter(|&l| l != tau && !prob.vars.contains(&l)).collect();
    cert.push(ConstraintRecord::new(
        ConstraintKind::Parity,
        format!(
            "unknowns {}",
            if prob.vars.is_empty() {
                "none".to_string()
            } else {
                prob.vars.iter().zip(&prob.gaps).map(|(l, g)| format!("{l}@{g}")).collect::<Vec<_>>().join(" ")
            }
        ),
        gated,
    ));
    if m == 0 {
        return Ok(Solution::solved(c, tau, VirtualCharacter::standard(c, tau), cert));
    }

    let mut sys = System::new(m);
    let mut pinned = vec![None; m];
    let mut step = |sys: &mut System, eqs: Vec<Eq>, kind: ConstraintKind, detail: String, cert: &mut Vec<ConstraintRecord>| -> Result<(), SolveError> {
        if eqs.is_empty() {
            return Ok(());
        }
        if !sys.add(&eqs, kind) {
            return Err(inconsistent(kind.name()));
        }
        let now = sys.pinned().map_err(|_| inconsistent(kind.name()))?;
        cert.push(ConstraintRecord::new(kind, describe(eqs.len(), &detail), newly(&prob, &pinned, &now)));
        pinned = now;
        Ok(())
    };

    if let Some((row, src)) = &opts.transport {
        if row[tau.0] != 1 || Label::ALL.iter().any(|&l| l != tau && !prob.vars.contains(&l) && row[l.0] != 0) {
            return Err(inconsistent("transported row violates parity"));
        }
        let eqs = (0..m)
            .map(|i| {
                let mut co = vec![0; m];
                co[i] = 1;
                (co, row[prob.vars[i].0])
            })
            .collect();
        step(&mut sys, eqs, ConstraintKind::Transport, src.clone(), &mut cert)?;
    }

    let ones = degree_one_singulars(c, tau);
    if prob.gaps.contains(&1) || !ones.is_empty() {
        let m1 = prob.t[1][tau.0];
        let eqs = (0..10)
            .map(|r| {
                let singular = degree_gap(c, tau, Label(r)) == Some(1);
                prob.eq_value(1, r, if singular { 0 } else { m1[r] })
            })
            .collect();
        let names: Vec<String> = ones.iter().map(|l| l.to_string()).collect();
        let detail = format!("singular part of h*⊗{tau} in degree 1: [{}]", names.join(", "));
        step(&mut sys, eqs, ConstraintKind::SingularLemma, detail, &mut cert)?;
    }

    let mut finite = false;
    if prob.support_label() {
        if let Some(s) = support_dim(c) {
            if s == 0 {
                finite = true;
                let top = prob.top.ok_or_else(|| inconsistent("support is a point but h > 0"))?;
                cert.push(ConstraintRecord::new(
                    ConstraintKind::Support,
                    format!("support of L({tau}) is the origin, so L is finite with top degree {top}"),
                    vec![],
                ));
                step(&mut sys, prob.vanishing_eqs(top), ConstraintKind::Finiteness, format!("L[k] = 0 for k > {top}"), &mut cert)?;
                let d = prob.dimension_eqs(top);
                step(&mut sys, d, ConstraintKind::Symmetry, format!("dim L[k] = dim L[{top}-k]"), &mut cert)?;
                let g = prob.galois_eqs(top);
                let detail = format!("L[k] and L[{top}-k] are both or neither Galois invariant");
                step(&mut sys, g, ConstraintKind::Galois, detail, &mut cert)?;
                let i = prob.symmetry_eqs(top, None);
                let detail = format!("each isotypic part of L[k] matches L[{top}-k]");
                step(&mut sys, i, ConstraintKind::Symmetry, detail, &mut cert)?;
            } else {
                let d = 3 - s;
                let eqs = (0..d)
                    .map(|i| {
                        let co = (0..m)
                            .map(|v| prob.vars[v].dim() as i64 * (0..i).map(|j| prob.gaps[v] as i64 - j as i64).product::<i64>())
                            .collect();
                        (co, if i == 0 { -(tau.dim() as i64) } else { 0 })
                    })
                    .collect();
                step(&mut sys, eqs, ConstraintKind::Support, format!("Hilbert series has a pole of order {s} at t = 1"), &mut cert)?;
            }
        }
    }

    let root = Node {
        assign: vec![None; m],
        sys: sys.clone(),
        finite,
    };
    let mut search = Search {
        nodes: 0,
        limit_hit: false,
        out: Vec::new(),
        rejected: HashMap::new(),
    };
    prob.search(0, root, &mut search);
    if search.limit_hit {
        return Ok(unresolved(c, tau, &prob, &search.out, cert, UnresolvedReason::SearchLimit, vec!["search".into()]));
    }
    let mut cands = search.out;
    if cands.is_empty() {
        let kinds: BTreeSet<ConstraintKind> = search.rejected.values().flatten().copied().collect();
        let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        return Err(inconsistent(&format!("no candidate survives ({})", names.join(", "))));
    }

    // attribute values fixed by the search to the checks that excluded the alternatives
    let now = agreed(m, &cands);
    let mut by_kind: BTreeMap<ConstraintKind, Vec<Label>> = BTreeMap::new();
    for i in 0..m {
        if pinned[i].is_some() {
            continue;
        }
        let Some(x) = now[i] else { continue };
        let mut kinds: BTreeSet<ConstraintKind> = search
            .rejected
            .iter()
            .filter(|((v, y), _)| *v == i && *y != x)
            .flat_map(|(_, k)| k.iter().copied())
            .collect();
        if kinds.is_empty() {
            kinds.insert(ConstraintKind::Nonnegativity);
        }
        for k in kinds {
            by_kind.entry(k).or_default().push(prob.vars[i]);
        }
    }
    for (k, labels) in by_kind {
        cert.push(ConstraintRecord::new(k, "excludes the alternatives in the search", labels));
    }
    let mut pinned = now;

    while cands.len() > 1 {
        let pending: Vec<String> = cands.iter().flat_map(|c| c.pending.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        if !opts.use_oracle || (opts.defer && !pending.is_empty()) {
            let reason = if opts.defer && !pending.is_empty() {
                UnresolvedReason::Deferred
            } else {
                UnresolvedReason::Underdetermined
            };
            let mut missing = pending;
            missing.push("kernel".into());
            return Ok(unresolved(c, tau, &prob, &cands, cert, reason, missing));
        }
        let levels: Vec<Vec<[i64; 10]>> = cands
            .iter()
            .map(|cd| {
                let a: Vec<Option<i64>> = cd.n.iter().map(|&x| Some(x)).collect();
                (0..=prob.cap).map(|k| prob.level(&a, k)).collect()
            })
            .collect();
        let differ = (0..=prob.cap).find(|&k| levels.iter().any(|l| l[k] != levels[0][k]));
        let zero_differ = (0..=prob.cap).find(|&k| {
            let z = levels[0][k].iter().all(|&x| x == 0);
            levels.iter().any(|l| l[k].iter().all(|&x| x == 0) != z)
        });
        let sdim = |k: usize| mono_dim(k) * tau.dim();
        let kernel_cost = differ.filter(|&k| sdim(k) <= opts.budget.rank_dim).map(|k| (sdim(k), k));
        let zero_cost = zero_differ.filter(|&k| sdim(k) <= opts.budget.form_dim).map(|k| (sdim(k) / 2, k));
        let use_zero = match (kernel_cost, zero_cost) {
            (Some(a), Some(b)) => b.0 < a.0,
            (None, Some(_)) => true,
            _ => false,
        };
        let keep: Vec<bool>;
        let rec;
        if use_zero {
            let k = zero_cost.expect("chosen").1;
            let Some(z) = oracle.zero_form(c, tau, k)? else {
                return Ok(unresolved(c, tau, &prob, &cands, cert, UnresolvedReason::Underdetermined, vec!["zero-form".into()]));
            };
            keep = levels.iter().map(|l| l[k].iter().all(|&x| x == 0) == z).collect();
            rec = (ConstraintKind::ZeroForm, format!("form in degree {k} (dim {}) is {}", sdim(k), if z { "zero" } else { "nonzero" }));
        } else if let Some((_, k)) = kernel_cost {
            let Some(q) = oracle.kernel(c, tau, k)? else {
                return Ok(unresolved(c, tau, &prob, &cands, cert, UnresolvedReason::Underdetermined, vec!["kernel".into()]));
            };
            let m_k = prob.t[k][tau.0];
            let want: [i64; 10] = std::array::from_fn(|r| m_k[r] - q.mult[r]);
            keep = levels.iter().map(|l| l[k] == want).collect();
            let ker: Vec<String> = Label::ALL
                .iter()
                .filter(|l| q.mult[l.0] != 0)
                .map(|l| if q.mult[l.0] == 1 { l.to_string() } else { format!("{}{}", q.mult[l.0], l) })
                .collect();
            rec = (
                ConstraintKind::Kernel,
                format!("degree {k}: rank {} of {}, kernel [{}] ({:?})", q.rank, q.dim, ker.join(" + "), q.route),
            );
        } else {
            let mut missing = vec![format!("kernel in degree {} (dim {})", differ.unwrap_or(0), differ.map_or(0, sdim))];
            if let Some(k) = zero_differ {
                missing.push(format!("zero-form in degree {k} (dim {})", sdim(k)));
            }
            return Ok(unresolved(c, tau, &prob, &cands, cert, UnresolvedReason::Underdetermined, missing));
        }
        cands = cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
        if cands.is_empty() {
            return Err(inconsistent(rec.0.name()));
        }
        let now = agreed(m, &cands);
        cert.push(ConstraintRecord::new(rec.0, rec.1, newly(&prob, &pinned, &now)));
        pinned = now;
    }
    let v = prob.full(&cands[0].n);
    Ok(Solution::solved(c, tau, v, cert))
}

fn unresolved(
    c: &Rat,
    tau: Label,
    prob: &Problem,
    cands: &[Candidate],
    cert: Vec<ConstraintRecord>,
    reason: UnresolvedReason,
    missing: Vec<String>,
) -> Solution {
    let now = agreed(prob.m(), cands);
    let free = (0..prob.m()).filter(|&i| now[i].is_none()).map(|i| prob.vars[i]).collect();
    Solution {
        c: c.clone(),
        tau,
        coeffs: None,
        finite: None,
        dim: None,
        certificate: cert,
        unresolved: Some(Unresolved {
            reason,
            free,
            candidates: cands.iter().take(32).map(|cd| prob.full(&cd.n)).collect(),
            missing,
        }),
    }
}

/// Whether `c` lies where category O is semisimple: the reduced
/// denominator is not one of 2, 3, 5, 6, 10 (or `c = 0`).
pub fn is_semisimple(c: &Rat) -> bool {
    if c.is_zero() {
        return true;
    }
    let d = c.denom().to_string();
    !matches!(d.as_str(), "2" | "3" | "5" | "6" | "10")
}

/// Solve for every τ at `c`, sharing rows between labels: labels are
/// retried in rounds, consulting the oracle only when a round makes no
/// progress without it.
pub fn solve_all(c: &Rat, oracle: &mut dyn Oracle, budget: Budget) -> Result<Vec<Solution>, SolveError> {
    if c.is_negative() {
        let pos = solve_all(&-c, oracle, budget)?;
        let mut out: Vec<Option<Solution>> = vec![None; 10];
        for mut s in pos {
            let t = s.tau.sign_twist();
            s.certificate.insert(
                0,
                ConstraintRecord::new(ConstraintKind::SignTwist, format!("from L({}) at c={}", s.tau, -c), vec![]),
            );
            s.c = c.clone();
            s.tau = t;
            s.coeffs = s.coeffs.map(|v| v.sign_twist());
            if let Some(u) = s.unresolved.as_mut() {
                u.free = u.free.iter().map(|l| l.sign_twist()).collect();
                u.candidates = u.candidates.iter().map(|v| v.sign_twist()).collect();
            }
            out[t.0] = Some(s);
        }
        return Ok(out.into_iter().map(|s| s.expect("all labels")).collect());
    }
    if is_semisimple(c) {
        return Ok(Label::ALL
            .iter()
            .map(|&t| {
                let rec = ConstraintRecord::new(
                    ConstraintKind::Semisimple,
                    format!("denominator of {c} divides no degree pattern, category O is semisimple"),
                    Label::ALL.iter().copied().filter(|&l| l != t).collect(),
                );
                Solution::solved(c, t, VirtualCharacter::standard(c, t), vec![rec])
            })
            .collect());
    }
    let (r, d) = (
        c.numer().to_string().parse::<i64>().expect("small"),
        c.denom().to_string().parse::<i64>().expect("small"),
    );
    // transported rows
    let mut transport: [Option<([i64; 10], String)>; 10] = Default::default();
    if d != 2 && r != 1 {
        let base_c = Rat::new(1, d);
        let base = solve_all(&base_c, oracle, budget)?;
        let f = phi(r, d);
        for s in base {
            let Some(v) = s.coeffs else { continue };
            let row = v.permute(&f).coeffs;
            transport[f(s.tau).0] = Some((row, format!("L({}) at c={base_c} relabelled by the permutation for {r}/{d}", s.tau)));
        }
    }
    if d == 2 && r >= 3 {
        let prev = Rat::new(r - 2, 2);
        let base = solve_all(&prev, oracle, budget)?;
        const SHIFTABLE: [Label; 7] = [
            Label::FOUR_PLUS,
            Label::FOUR_MINUS,
            Label::FIVE_PLUS,
            Label::FIVE_MINUS,
            Label::THREE_PLUS,
            Label::THREE_T_PLUS,
            Label::ONE_MINUS,
        ];
        for s in base {
            if r == 3 && !SHIFTABLE.contains(&s.tau) {
                continue;
            }
            let Some(v) = s.coeffs else { continue };
            transport[s.tau.0] = Some((v.coeffs, format!("L({}) at c={prev} shifted to c={c}", s.tau)));
        }
    }

    let mut order: Vec<Label> = Label::ALL.to_vec();
    order.sort_by(|a, b| h_weight(c, *b).cmp(&h_weight(c, *a)).then(a.cmp(b)));
    let mut done: Vec<Option<Solution>> = vec![None; 10];
    let mut last: Vec<Option<Solution>> = vec![None; 10];
    loop {
        let mut progress = false;
        // no queries first, then queries under growing size limits
        let mut tiers = vec![None];
        let mut b = 32;
        while b < budget.rank_dim {
            tiers.push(Some(Budget {
                rank_dim: b,
                form_dim: (2 * b).min(budget.form_dim),
            }));
            b *= 2;
        }
        tiers.push(Some(budget));
        for tier in tiers {
            let use_oracle = tier.is_some();
            // with the oracle, prefer labels not waiting on other rows
            let mut round = order.clone();
            if use_oracle {
                round.sort_by_key(|t| {
                    let u = last[t.0].as_ref().and_then(|s| s.unresolved.as_ref());
                    u.is_some_and(|u| u.reason == UnresolvedReason::Deferred)
                });
            }
            for &t in &round {
                if done[t.0].is_some() {
                    continue;
                }
                let mut opts = SolveOptions {
                    budget: tier.unwrap_or(budget),
                    defer: !use_oracle,
                    use_oracle,
                    transport: transport[t.0].clone(),
                    ..SolveOptions::default()
                };
                for l in Label::ALL {
                    opts.known[l.0] = done[l.0].as_ref().and_then(|s| s.coeffs.as_ref()).map(|v| v.coeffs);
                }
                let s = solve_decomposition(c, t, oracle, &opts)?;
                if s.is_solved() {
                    done[t.0] = Some(s);
                    progress = true;
                    if use_oracle {
                        break;
                    }
                } else if !use_oracle || last[t.0].is_none() {
                    last[t.0] = Some(s);
                }
            }
            if progress {
                break;
            }
        }
        if !progress || done.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(Label::ALL
        .iter()
        .map(|t| done[t.0].take().or_else(|| last[t.0].take()).expect("attempted"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::theorem_formula;

    fn opts() -> SolveOptions {
        SolveOptions {
            use_oracle: false,
            ..SolveOptions::default()
        }
    }

    #[test]
    fn parity_alone() {
        let c = Rat::new(1, 10);
        let s = solve_decomposition(&c, Label::FOUR_PLUS, &mut NoOracle, &opts()).unwrap();
        assert_eq!(s.coeffs.unwrap(), VirtualCharacter::standard(&c, Label::FOUR_PLUS));
        assert_eq!(s.certificate.len(), 1);
    }

    #[test]
    fn one_sixth_trivial_is_forced_by_support() {
        let c = Rat::new(1, 6);
        let s = solve_decomposition(&c, Label::ONE_PLUS, &mut NoOracle, &opts()).unwrap();
        assert_eq!(s.coeffs.unwrap(), theorem_formula(&c, Label::ONE_PLUS));
        assert_eq!(s.dim, Some(5));
    }

    #[test]
    fn semisimple_and_negative() {
        let c = Rat::new(2, 7);
        for s in solve_all(&c, &mut NoOracle, Budget::default()).unwrap() {
            assert_eq!(s.coeffs.unwrap(), VirtualCharacter::standard(&c, s.tau));
        }
        let c = Rat::new(-1, 6);
        let s = solve_decomposition(&c, Label::ONE_MINUS, &mut NoOracle, &opts()).unwrap();
        assert_eq!(s.coeffs.unwrap(), theorem_formula(&c, Label::ONE_MINUS));
    }
}
