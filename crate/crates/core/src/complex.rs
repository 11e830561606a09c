//! Cube-of-resolutions complexes, the involution `τ`, the automorphism
//! `σ`, the involutive mapping cone, reduced/coreduced variants and the
//! homotopy `κ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{alg_comultiply, alg_multiply, AlgElem, Letter, Poly, RingSpec};
use crate::diagram::{InvolutiveDiagram, Mode, ResolvedDiagram, State, StrandMatch};
use crate::sparse::{normalize, SparseBits};

pub const DEFAULT_CROSSING_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("resource limit exceeded: {crossings} crossings exceeds the cap of {cap}")]
    ResourceLimit { crossings: usize, cap: usize },
    #[error("reduced and coreduced complexes require a basepoint")]
    MissingBasepoint,
    #[error("the sigma-tau cone is only defined for unreduced complexes")]
    SigmaTauReduced,
    #[error("the sigma-tau cone requires a 2-periodic diagram")]
    SigmaTauNeedsPeriodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeMode {
    Tau,
    SigmaTau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Unreduced,
    Reduced,
    Coreduced,
}

impl Variant {
    /// Quantum shift applied when reporting gradings: reduced homology of
    /// the unknot sits in degree `(0, 0)`.
    pub fn q_shift(self) -> i32 {
        match self {
            Variant::Unreduced => 0,
            Variant::Reduced => 1,
            Variant::Coreduced => -1,
        }
    }
}

/// A labelled resolution. Bit `c` of `labels` set means circle `c` carries
/// `X`, clear means `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub state: State,
    pub labels: u64,
    pub circles: u8,
    pub q: bool,
    pub i: i32,
    pub j: i32,
}

impl Generator {
    pub fn letter(&self, circle: usize) -> Letter {
        if self.labels >> circle & 1 == 1 {
            Letter::X
        } else {
            Letter::One
        }
    }

    pub fn word(&self) -> Vec<Letter> {
        (0..self.circles as usize).map(|c| self.letter(c)).collect()
    }
}

/// Bigraded free complex with differential, optional `τ`/`σ` and, for
/// cones, the size of the unmarked summand.
#[derive(Debug, Clone)]
pub struct ChainComplexGraded {
    pub ring: RingSpec,
    pub gens: Vec<Generator>,
    pub d: SparseBits,
    pub tau: Option<SparseBits>,
    pub sigma: Option<SparseBits>,
    /// `Some(n)` for a cone: generators `0..n` are unmarked, `n..2n` carry `Q`.
    pub cone: Option<usize>,
    /// The off-diagonal block of a cone, kept for verification.
    pub cone_map: Option<SparseBits>,
    pub q_shift: i32,
}

impl ChainComplexGraded {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Coefficient of entry `(row, col)` of a degree-zero map.
    pub fn entry_poly(&self, row: usize, col: usize) -> Poly {
        match self.ring {
            RingSpec::F2HH => Poly::monomial(((self.gens[row].j - self.gens[col].j) / 2) as usize),
            _ => Poly::one(),
        }
    }

    /// Number of generators per `(i, j)`, with the reporting shift.
    pub fn graded_dims(&self) -> std::collections::BTreeMap<(i32, i32), usize> {
        let mut out = std::collections::BTreeMap::new();
        for g in &self.gens {
            *out.entry((g.i, g.j + self.q_shift)).or_insert(0) += 1;
        }
        out
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.gens.iter().position(|h| h == g)
    }

    pub fn restrict(&self, keep: &[bool]) -> ChainComplexGraded {
        let gens = self.gens.iter().zip(keep).filter(|(_, &k)| k).map(|(g, _)| *g).collect();
        ChainComplexGraded {
            ring: self.ring,
            gens,
            d: self.d.restrict(keep, keep),
            tau: self.tau.as_ref().map(|t| t.restrict(keep, keep)),
            sigma: self.sigma.as_ref().map(|t| t.restrict(keep, keep)),
            cone: None,
            cone_map: None,
            q_shift: self.q_shift,
        }
    }
}

/// Per-state resolution data shared by the builders.
pub(crate) struct Cube {
    pub n: usize,
    pub res: Vec<ResolvedDiagram>,
    pub offset: Vec<usize>,
    pub n_minus: i32,
    pub n_plus: i32,
}

impl Cube {
    pub fn new(d: &InvolutiveDiagram) -> Cube {
        let n = d.n_crossings();
        let res: Vec<ResolvedDiagram> = (0..1u64 << n).map(|b| d.resolve_state(&State::new(b, n))).collect();
        let mut offset = Vec::with_capacity(res.len() + 1);
        let mut acc = 0;
        for r in &res {
            offset.push(acc);
            acc += 1usize << r.circle_count;
        }
        offset.push(acc);
        Cube { n, res, offset, n_minus: d.n_minus() as i32, n_plus: d.n_plus() as i32 }
    }

    pub fn len(&self) -> usize {
        *self.offset.last().unwrap()
    }

    pub fn index(&self, s: u64, labels: u64) -> usize {
        self.offset[s as usize] + labels as usize
    }

    pub fn generator(&self, s: u64, labels: u64) -> Generator {
        let k = self.res[s as usize].circle_count;
        let w = s.count_ones() as i32;
        let xs = labels.count_ones() as i32;
        let deg = (k as i32 - xs) - xs;
        Generator {
            state: State::new(s, self.n),
            labels,
            circles: k as u8,
            q: false,
            i: w - self.n_minus,
            j: deg + w + self.n_plus - 2 * self.n_minus,
        }
    }
}

fn check_cap(d: &InvolutiveDiagram, cap: usize) -> Result<(), ComplexError> {
    if d.n_crossings() > cap {
        Err(ComplexError::ResourceLimit { crossings: d.n_crossings(), cap })
    } else {
        Ok(())
    }
}

fn term_bits(e: &AlgElem) -> impl Iterator<Item = (Vec<Letter>, bool)> + '_ {
    e.terms().map(|(w, c)| {
        debug_assert!(c.as_monomial().is_some(), "structure constants are monomials");
        (w.clone(), !c.is_zero())
    })
}

fn labels_from_word(w: &[Letter]) -> u64 {
    w.iter().enumerate().filter(|(_, &l)| l == Letter::X).fold(0, |acc, (c, _)| acc | 1 << c)
}

/// `CKh(D; R, h)` with `τ`; `σ` is attached when `with_sigma` is set.
pub fn build_ckh(d: &InvolutiveDiagram, ring: RingSpec, cap: usize) -> Result<ChainComplexGraded, ComplexError> {
    build_ckh_inner(d, ring, cap, false)
}

pub fn build_ckh_with_sigma(d: &InvolutiveDiagram, ring: RingSpec, cap: usize) -> Result<ChainComplexGraded, ComplexError> {
    build_ckh_inner(d, ring, cap, true)
}

fn build_ckh_inner(
    d: &InvolutiveDiagram,
    ring: RingSpec,
    cap: usize,
    with_sigma: bool,
) -> Result<ChainComplexGraded, ComplexError> {
    check_cap(d, cap)?;
    let cube = Cube::new(d);
    let total = cube.len();
    let mut gens = Vec::with_capacity(total);
    for s in 0..1u64 << cube.n {
        for l in 0..1u64 << cube.res[s as usize].circle_count {
            gens.push(cube.generator(s, l));
        }
    }
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); total];
    for s in 0..1u64 << cube.n {
        let r0 = &cube.res[s as usize];
        for (ci, c) in d.crossings().iter().enumerate() {
            if s >> ci & 1 == 1 {
                continue;
            }
            let t = s | 1 << ci;
            let r1 = &cube.res[t as usize];
            // the under strand's two ends always lie on different arcs, so
            // the circles through them are the ones the saddle touches
            let (a0, b0) = (r0.circle_of_edge[c.under_in], r0.circle_of_edge[c.under_out]);
            let (a1, b1) = (r1.circle_of_edge[c.under_in], r1.circle_of_edge[c.under_out]);
            let mut carry = vec![usize::MAX; r0.circle_count];
            for (e, &k) in r0.circle_of_edge.iter().enumerate() {
                if k != a0 && k != b0 {
                    carry[k] = r1.circle_of_edge[e];
                }
            }
            let merge = a0 != b0;
            debug_assert_eq!(merge, a1 == b1);
            for l in 0..1u64 << r0.circle_count {
                let src = cube.index(s, l) as u32;
                let letter = |k: usize| if l >> k & 1 == 1 { Letter::X } else { Letter::One };
                let mut base = 0u64;
                for (k, &k1) in carry.iter().enumerate() {
                    if k1 != usize::MAX && l >> k & 1 == 1 {
                        base |= 1 << k1;
                    }
                }
                if merge {
                    for (w, nz) in term_bits(&alg_multiply(letter(a0), letter(b0), ring)) {
                        if nz {
                            let lab = base | (labels_from_word(&w) << a1);
                            cols[src as usize].push(cube.index(t, lab) as u32);
                        }
                    }
                } else {
                    for (w, nz) in term_bits(&alg_comultiply(letter(a0), ring)) {
                        if nz {
                            let mut lab = base;
                            if w[0] == Letter::X {
                                lab |= 1 << a1;
                            }
                            if w[1] == Letter::X {
                                lab |= 1 << b1;
                            }
                            cols[src as usize].push(cube.index(t, lab) as u32);
                        }
                    }
                }
            }
        }
    }
    let dmat = SparseBits::from_cols(total, cols);
    let tau = if d.mode() == Mode::StrongInversion || d.mode() == Mode::Periodic2 {
        Some(tau_matrix(d, &cube))
    } else {
        None
    };
    let sigma = with_sigma.then(|| sigma_matrix(&gens, &cube, ring));
    Ok(ChainComplexGraded { ring, gens, d: dmat, tau, sigma, cone: None, cone_map: None, q_shift: 0 })
}

fn tau_matrix(d: &InvolutiveDiagram, cube: &Cube) -> SparseBits {
    let iota: Vec<(usize, StrandMatch)> = d.crossing_involution();
    let mut cols = vec![Vec::new(); cube.len()];
    for s in 0..1u64 << cube.n {
        let st = State::new(s, cube.n);
        let (s2, bij) = d.tau_action_with(&iota, &st, &cube.res[s as usize]);
        for l in 0..1u64 << cube.res[s as usize].circle_count {
            let mut l2 = 0u64;
            for (k, &k2) in bij.iter().enumerate() {
                if l >> k & 1 == 1 {
                    l2 |= 1 << k2;
                }
            }
            cols[cube.index(s, l)].push(cube.index(s2.bits, l2) as u32);
        }
    }
    SparseBits { rows: cube.len(), cols }
}

/// `X ↦ X + h·1` on every circle.
fn sigma_matrix(gens: &[Generator], cube: &Cube, ring: RingSpec) -> SparseBits {
    let mut cols = vec![Vec::new(); gens.len()];
    for (idx, g) in gens.iter().enumerate() {
        if ring == RingSpec::F2H0 {
            cols[idx].push(idx as u32);
            continue;
        }
        // every subset of the X-circles may be lowered to 1
        let xs = g.labels;
        let mut sub = xs;
        loop {
            cols[idx].push(cube.index(g.state.bits, xs & !sub) as u32);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & xs;
        }
        cols[idx].sort_unstable();
    }
    SparseBits { rows: gens.len(), cols }
}

/// Mask of generators whose basepoint circle carries `X` (`want_x`) or `1`.
fn basepoint_mask(d: &InvolutiveDiagram, c: &ChainComplexGraded, want_x: bool) -> Result<Vec<bool>, ComplexError> {
    let b = d.basepoint().ok_or(ComplexError::MissingBasepoint)?;
    let mut cache = std::collections::HashMap::new();
    Ok(c.gens
        .iter()
        .map(|g| {
            let k = *cache.entry(g.state.bits).or_insert_with(|| d.resolve_state(&g.state).circle_of_edge[b]);
            (g.labels >> k & 1 == 1) == want_x
        })
        .collect())
}

/// `CKh`, or its reduced/coreduced variant, without the cone.
pub fn build_variant(
    d: &InvolutiveDiagram,
    ring: RingSpec,
    variant: Variant,
    cap: usize,
) -> Result<ChainComplexGraded, ComplexError> {
    build_variant_inner(d, ring, variant, cap, false)
}

fn build_variant_inner(
    d: &InvolutiveDiagram,
    ring: RingSpec,
    variant: Variant,
    cap: usize,
    with_sigma: bool,
) -> Result<ChainComplexGraded, ComplexError> {
    if variant != Variant::Unreduced && d.basepoint().is_none() {
        return Err(ComplexError::MissingBasepoint);
    }
    let full = build_ckh_inner(d, ring, cap, with_sigma)?;
    let mut c = match variant {
        Variant::Unreduced => full,
        Variant::Reduced => full.restrict(&basepoint_mask(d, &full, true)?),
        Variant::Coreduced => full.restrict(&basepoint_mask(d, &full, false)?),
    };
    c.q_shift = variant.q_shift();
    Ok(c)
}

/// Mapping cone of `1 + τ` (or `1 + στ`) from `C` to `Q·C`.
pub fn build_involutive(
    d: &InvolutiveDiagram,
    ring: RingSpec,
    mode: ConeMode,
    variant: Variant,
    cap: usize,
) -> Result<ChainComplexGraded, ComplexError> {
    if mode == ConeMode::SigmaTau {
        if variant != Variant::Unreduced {
            return Err(ComplexError::SigmaTauReduced);
        }
        if d.mode() != Mode::Periodic2 {
            return Err(ComplexError::SigmaTauNeedsPeriodic);
        }
    }
    let base = build_variant_inner(d, ring, variant, cap, mode == ConeMode::SigmaTau)?;
    Ok(cone(&base, mode))
}

pub fn cone(base: &ChainComplexGraded, mode: ConeMode) -> ChainComplexGraded {
    let n = base.len();
    let tau = base.tau.as_ref().expect("complex carries tau");
    let twist = match mode {
        ConeMode::Tau => tau.clone(),
        ConeMode::SigmaTau => base.sigma.as_ref().expect("complex carries sigma").compose(tau),
    };
    let f = SparseBits::identity(n).add(&twist);
    let mut gens = base.gens.clone();
    gens.extend(base.gens.iter().map(|g| Generator { q: true, i: g.i + 1, ..*g }));
    let mut cols = Vec::with_capacity(2 * n);
    for c in 0..n {
        let mut col = base.d.cols[c].clone();
        col.extend(f.cols[c].iter().map(|&r| r + n as u32));
        cols.push(col);
    }
    for c in 0..n {
        cols.push(base.d.cols[c].iter().map(|&r| r + n as u32).collect());
    }
    let block_diag = |m: &SparseBits| {
        let mut cols: Vec<Vec<u32>> = m.cols.clone();
        cols.extend(m.cols.iter().map(|c| c.iter().map(|&r| r + n as u32).collect()));
        SparseBits { rows: 2 * n, cols }
    };
    ChainComplexGraded {
        ring: base.ring,
        gens,
        d: SparseBits { rows: 2 * n, cols },
        tau: Some(block_diag(tau)),
        sigma: base.sigma.as_ref().map(block_diag),
        cone: Some(n),
        cone_map: Some(f),
        q_shift: base.q_shift,
    }
}

#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: SparseBits,
    /// `(Δi, Δj)` in the unshifted gradings.
    pub degree: (i32, i32),
}

#[derive(Debug, Clone)]
pub struct KappaReport {
    pub kappa: ChainMap,
    /// `x ↦ x + κ(x)`, from the coreduced complex into `CKh`.
    pub section: ChainMap,
    pub reduced: ChainComplexGraded,
    pub coreduced: ChainComplexGraded,
    /// Connecting block of `d` from coreduced to reduced representatives.
    pub f: SparseBits,
    pub homotopy_holds: bool,
    pub section_is_chain_map: bool,
}

/// `κ = Σ_{i≥0} hⁱ κᵢ`, where `κᵢ` relabels the pointed circle `1 → X` and
/// `i+1` further `X`-circles `X → 1`.
pub fn kappa_map(d: &InvolutiveDiagram, ring: RingSpec, cap: usize) -> Result<KappaReport, ComplexError> {
    let full = build_ckh(d, ring, cap)?;
    let xmask = basepoint_mask(d, &full, true)?;
    let omask: Vec<bool> = xmask.iter().map(|b| !b).collect();
    let index_in = |mask: &[bool]| {
        let mut idx = vec![u32::MAX; mask.len()];
        let mut k = 0;
        for (g, &m) in mask.iter().enumerate() {
            if m {
                idx[g] = k;
                k += 1;
            }
        }
        (idx, k as usize)
    };
    let (xi, nx) = index_in(&xmask);
    let (_, no) = index_in(&omask);
    let x_full: Vec<u32> = (0..full.len() as u32).filter(|&g| xmask[g as usize]).collect();
    let b = d.basepoint().ok_or(ComplexError::MissingBasepoint)?;
    let cube = Cube::new(d);
    let mut kcols = Vec::with_capacity(no);
    let mut scols = Vec::with_capacity(no);
    for (g, gen) in full.gens.iter().enumerate() {
        if !omask[g] {
            continue;
        }
        let pc = cube.res[gen.state.bits as usize].circle_of_edge[b];
        let others = gen.labels & !(1u64 << pc);
        let mut col = Vec::new();
        // nonempty subsets of the other X-circles; only singletons when h = 0
        let mut sub = others;
        while sub != 0 {
            if ring != RingSpec::F2H0 || sub.count_ones() == 1 {
                let lab = (gen.labels | 1 << pc) & !sub;
                col.push(xi[cube.index(gen.state.bits, lab)]);
            }
            sub = (sub - 1) & others;
        }
        let col = normalize(col);
        let mut sc = vec![g as u32];
        sc.extend(col.iter().map(|&r| x_full[r as usize]));
        kcols.push(col);
        scols.push(normalize(sc));
    }
    let kappa = SparseBits { rows: nx, cols: kcols };
    let reduced = full.restrict(&xmask);
    let coreduced = full.restrict(&omask);
    let f = full.d.restrict(&xmask, &omask);
    let lhs = reduced.d.compose(&kappa).add(&kappa.compose(&coreduced.d));
    let homotopy_holds = lhs == f;
    let section = SparseBits { rows: full.len(), cols: scols };
    let section_is_chain_map = full.d.compose(&section) == section.compose(&coreduced.d);
    Ok(KappaReport {
        kappa: ChainMap { source_dim: no, target_dim: nx, matrix: kappa, degree: (0, 0) },
        section: ChainMap { source_dim: no, target_dim: full.len(), matrix: section, degree: (0, 0) },
        reduced,
        coreduced,
        f,
        homotopy_holds,
        section_is_chain_map,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_complex(c: &ChainComplexGraded) -> VerifyReport {
    let mut failures = Vec::new();
    if !c.d.compose(&c.d).is_zero() {
        failures.push("d² ≠ 0".to_string());
    }
    for (r, col) in c.d.entries() {
        let (gr, gc) = (&c.gens[r], &c.gens[col]);
        let dj = gr.j - gc.j;
        let ok_j = match c.ring {
            RingSpec::F2H0 => dj == 0,
            RingSpec::F2HH => dj >= 0 && dj % 2 == 0,
            RingSpec::F2H1 => dj >= 0 && dj % 2 == 0,
        };
        if gr.i != gc.i + 1 || !ok_j {
            failures.push(format!("grading law violated by entry ({r}, {col})"));
            break;
        }
    }
    if let Some(t) = &c.tau {
        if t.compose(t) != SparseBits::identity(c.len()) {
            failures.push("τ² ≠ id".to_string());
        }
        if t.compose(&c.d) != c.d.compose(t) {
            failures.push("dτ ≠ τd".to_string());
        }
        if t.entries().any(|(r, col)| (c.gens[r].i, c.gens[r].j) != (c.gens[col].i, c.gens[col].j)) {
            failures.push("τ does not preserve gradings".to_string());
        }
    }
    if let Some(s) = &c.sigma {
        if s.compose(&c.d) != c.d.compose(s) {
            failures.push("dσ ≠ σd".to_string());
        }
        if s.compose(s) != SparseBits::identity(c.len()) {
            failures.push("σ² ≠ id".to_string());
        }
    }
    if let (Some(n), Some(f)) = (c.cone, &c.cone_map) {
        let keep_q: Vec<bool> = (0..2 * n).map(|g| g >= n).collect();
        let keep_p: Vec<bool> = keep_q.iter().map(|b| !b).collect();
        if c.d.restrict(&keep_q, &keep_p) != *f {
            failures.push("cone block differs from its declared map".to_string());
        }
        if let Some(t) = &c.tau {
            let tau0 = t.restrict(&keep_p, &keep_p);
            let one_plus_tau = SparseBits::identity(n).add(&tau0);
            let one_plus_sigma_tau =
                c.sigma.as_ref().map(|s| SparseBits::identity(n).add(&s.restrict(&keep_p, &keep_p).compose(&tau0)));
            if *f != one_plus_tau && one_plus_sigma_tau.as_ref() != Some(f) {
                failures.push("cone block is neither 1+τ nor 1+στ".to_string());
            }
        }
        if !c.d.restrict(&keep_p, &keep_q).is_zero() {
            failures.push("cone differential maps Q back".to_string());
        }
    }
    VerifyReport { failures }
}


#[cfg(test)]
mod tests;
