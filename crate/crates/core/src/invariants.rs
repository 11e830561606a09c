//! Lee cycles, the equivariant Rasmussen invariants `(s̲, s̄)` by both the
//! divisibility and the tower method, the Lee pairing, and cross-checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{alg_pair, Letter, Poly, RingSpec};
use crate::complex::{
    build_ckh, build_ckh_with_sigma, build_involutive, build_variant, ChainComplexGraded, ComplexError, ConeMode,
    Variant,
};
use crate::diagram::{InvolutiveDiagram, Mode};
use crate::homology::{divisibility, homology_graded, Cycle, HomologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("Seifert graph is disconnected ({0} components); use per-component colouring flips")]
    Disconnected(usize),
    #[error("expected {expected} colouring flips, got {got}")]
    FlipCount { expected: usize, got: usize },
    #[error("Seifert graph is not bipartite")]
    NotBipartite,
    #[error("Lee cycle is not {0}-invariant")]
    NotInvariant(&'static str),
    #[error("Lee chain is not a cycle")]
    NotACycle,
    #[error("tower structure violated: {0}")]
    TowerViolated(String),
    #[error("diagram is not a knot ({0} components)")]
    NotAKnot(usize),
    #[error("the sigma-tau mode needs a 2-periodic diagram")]
    NotPeriodic,
}

impl InvariantError {
    /// Whether the error signals a broken invariant rather than bad input.
    pub fn is_breach(&self) -> bool {
        matches!(
            self,
            InvariantError::TowerViolated(_)
                | InvariantError::NotInvariant(_)
                | InvariantError::NotACycle
                | InvariantError::Homology(HomologyError::TorsionClass)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeeLabel {
    X,
    Y,
}

/// Labels per Seifert circle, indexed like the circles of the oriented
/// resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeeLabeling {
    pub labels: Vec<LeeLabel>,
    /// Per Seifert-graph component: whether the colouring was swapped from
    /// the default (lowest circle gets `X`).
    pub orientation_tag: Vec<bool>,
}

impl LeeLabeling {
    pub fn swapped(&self) -> LeeLabeling {
        LeeLabeling {
            labels: self.labels.iter().map(|l| if *l == LeeLabel::X { LeeLabel::Y } else { LeeLabel::X }).collect(),
            orientation_tag: self.orientation_tag.iter().map(|t| !t).collect(),
        }
    }
}

/// Proper 2-colouring of the Seifert graph. Connected diagrams only.
pub fn lee_labels(d: &InvolutiveDiagram) -> Result<LeeLabeling, InvariantError> {
    let sd = d.seifert_resolution();
    let (_, comp) = sd.two_coloring().ok_or(InvariantError::NotBipartite)?;
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    if ncomp > 1 {
        return Err(InvariantError::Disconnected(ncomp));
    }
    lee_labels_with_flips(d, &[false])
}

/// Colouring with an explicit swap choice per Seifert-graph component.
pub fn lee_labels_with_flips(d: &InvolutiveDiagram, flips: &[bool]) -> Result<LeeLabeling, InvariantError> {
    let sd = d.seifert_resolution();
    let (color, comp) = sd.two_coloring().ok_or(InvariantError::NotBipartite)?;
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    if flips.len() != ncomp {
        return Err(InvariantError::FlipCount { expected: ncomp, got: flips.len() });
    }
    let labels = color
        .iter()
        .zip(&comp)
        .map(|(&c, &k)| if c != flips[k] { LeeLabel::Y } else { LeeLabel::X })
        .collect();
    Ok(LeeLabeling { labels, orientation_tag: flips.to_vec() })
}

fn index_map(c: &ChainComplexGraded) -> HashMap<(u64, u64, bool), u32> {
    c.gens.iter().enumerate().map(|(k, g)| ((g.state.bits, g.labels, g.q), k as u32)).collect()
}

/// Expands `⊗ (X or X + h·1)` into generators of `c` (unmarked copy),
/// dropping terms absent from `c` (the reduced subcomplex keeps only those
/// with `X` on the pointed circle). The cycle is homogeneous of the all-`X`
/// degree.
pub fn lee_chain(d: &InvolutiveDiagram, c: &ChainComplexGraded, lab: &LeeLabeling) -> Cycle {
    let sd = d.seifert_resolution();
    let all_x = (1u64 << sd.r) - 1;
    let ys: u64 = lab.labels.iter().enumerate().filter(|(_, l)| **l == LeeLabel::Y).fold(0, |a, (k, _)| a | 1 << k);
    let idx = index_map(c);
    let mut support = Vec::new();
    let mut sub = ys;
    loop {
        // with h = 0 only the all-X term survives
        if c.ring != RingSpec::F2H0 || sub == 0 {
            if let Some(&g) = idx.get(&(sd.state.bits, all_x & !sub, false)) {
                support.push(g);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & ys;
    }
    // all circles X in the oriented resolution: j = −r + n₋ + n₊ − 2n₋
    let j = (sd.w - sd.r as i64) as i32;
    Cycle::new(support, j)
}

fn shift_to_q(z: &Cycle, c: &ChainComplexGraded) -> Cycle {
    let n = c.cone.expect("cone complex") as u32;
    Cycle::new(z.support.iter().map(|g| g + n).collect(), z.j)
}

fn is_fixed(m: &crate::sparse::SparseBits, z: &Cycle) -> bool {
    m.apply(&z.support) == z.support
}

/// `(α̲, ᾱ)` in the unreduced involutive complex, checked to be cycles and
/// `τ`- (or `στ`-) invariant.
pub fn equivariant_lee_cycles(
    d: &InvolutiveDiagram,
    ring: RingSpec,
    mode: ConeMode,
    cap: usize,
) -> Result<(ChainComplexGraded, Cycle, Cycle), InvariantError> {
    equivariant_lee_cycles_with(d, &lee_labels(d)?, ring, mode, cap)
}

fn equivariant_lee_cycles_with(
    d: &InvolutiveDiagram,
    lab: &LeeLabeling,
    ring: RingSpec,
    mode: ConeMode,
    cap: usize,
) -> Result<(ChainComplexGraded, Cycle, Cycle), InvariantError> {
    if mode == ConeMode::SigmaTau && d.mode() != Mode::Periodic2 {
        return Err(InvariantError::NotPeriodic);
    }
    let c = build_involutive(d, ring, mode, Variant::Unreduced, cap)?;
    let lower = lee_chain(d, &c, lab);
    let upper = shift_to_q(&lower, &c);
    let tau = c.tau.as_ref().expect("cone carries tau");
    let invariant = match mode {
        ConeMode::Tau => is_fixed(tau, &lower),
        ConeMode::SigmaTau => is_fixed(&c.sigma.as_ref().expect("sigma attached").compose(tau), &lower),
    };
    if !invariant {
        return Err(InvariantError::NotInvariant(if mode == ConeMode::Tau { "τ" } else { "στ" }));
    }
    for z in [&lower, &upper] {
        if !c.d.apply(&z.support).is_empty() {
            return Err(InvariantError::NotACycle);
        }
    }
    Ok((c, lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Divisibility,
    Towers,
    BothAgree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub s_lower: i64,
    pub s_upper: i64,
    pub s_classic: i64,
    pub d_lower: u32,
    pub d_upper: u32,
    pub d_classic: u32,
    pub w: i64,
    pub r: i64,
    pub method: Method,
}

fn require_knot(d: &InvolutiveDiagram) -> Result<(), InvariantError> {
    match d.components().len() {
        1 => Ok(()),
        n => Err(InvariantError::NotAKnot(n)),
    }
}

fn s_from(d: u32, w: i64, r: i64) -> i64 {
    2 * d as i64 + w - r + 1
}

/// `s = 2d + w − r + 1` from the `h`-divisibility of the Lee classes over
/// `(𝔽₂[H], H)`.
pub fn equivariant_s(d: &InvolutiveDiagram, cap: usize) -> Result<InvariantReport, InvariantError> {
    equivariant_s_labeled(d, &lee_labels(d)?, cap)
}

/// As [`equivariant_s`], for diagrams whose Seifert graph is disconnected
/// (split diagrams): one colouring flip per Seifert-graph component.
pub fn equivariant_s_with_flips(d: &InvolutiveDiagram, flips: &[bool], cap: usize) -> Result<InvariantReport, InvariantError> {
    equivariant_s_labeled(d, &lee_labels_with_flips(d, flips)?, cap)
}

fn equivariant_s_labeled(d: &InvolutiveDiagram, lab: &LeeLabeling, cap: usize) -> Result<InvariantReport, InvariantError> {
    let ring = RingSpec::F2HH;
    let (c, lower, upper) = equivariant_lee_cycles_with(d, lab, ring, ConeMode::Tau, cap)?;
    let d_lower = divisibility(&c, &lower)?;
    let d_upper = divisibility(&c, &upper)?;
    let plain = build_ckh(d, ring, cap)?;
    let d_classic = divisibility(&plain, &lee_chain(d, &plain, lab))?;
    let sd = d.seifert_resolution();
    let (w, r) = (sd.w, sd.r as i64);
    Ok(InvariantReport {
        s_lower: s_from(d_lower, w, r),
        s_upper: s_from(d_upper, w, r),
        s_classic: s_from(d_classic, w, r),
        d_lower,
        d_upper,
        d_classic,
        w,
        r,
        method: Method::Divisibility,
    })
}

/// `(s̲, s̄, s)` read off the towers of reduced (involutive) Bar-Natan
/// homology.
pub fn tower_s(d: &InvolutiveDiagram, cap: usize) -> Result<(i64, i64, i64), InvariantError> {
    require_knot(d)?;
    let m = homology_graded(&build_involutive(d, RingSpec::F2HH, ConeMode::Tau, Variant::Reduced, cap)?);
    let (lo, hi): (Vec<(i32, i32)>, Vec<(i32, i32)>) = m.free.iter().partition(|&&(i, _)| i == 0);
    if m.free.len() != 2 || lo.len() != 1 || hi.len() != 1 || hi[0].0 != 1 {
        return Err(InvariantError::TowerViolated(format!("free part {:?}", m.free)));
    }
    let plain = homology_graded(&build_variant(d, RingSpec::F2HH, Variant::Reduced, cap)?);
    if plain.free.len() != 1 || plain.free[0].0 != 0 {
        return Err(InvariantError::TowerViolated(format!("non-involutive free part {:?}", plain.free)));
    }
    Ok((lo[0].1 as i64, hi[0].1 as i64, plain.free[0].1 as i64))
}

/// Both methods; fails if they disagree.
pub fn invariants(d: &InvolutiveDiagram, cap: usize) -> Result<InvariantReport, InvariantError> {
    let mut rep = equivariant_s(d, cap)?;
    let (lo, hi, cl) = tower_s(d, cap)?;
    if (lo, hi, cl) != (rep.s_lower, rep.s_upper, rep.s_classic) {
        return Err(InvariantError::TowerViolated(format!(
            "towers give ({lo}, {hi}, {cl}), divisibility gives ({}, {}, {})",
            rep.s_lower, rep.s_upper, rep.s_classic
        )));
    }
    rep.method = Method::BothAgree;
    Ok(rep)
}

/// Chain-level pairing of the Lee cycle of `D` with the Lee cycle of `D*`
/// coloured the same way. The reduced pairing skips the pointed circle.
pub fn pairing_check(d: &InvolutiveDiagram, reduced: bool, cap: usize) -> Result<Poly, InvariantError> {
    let ring = RingSpec::F2HH;
    let lab = lee_labels(d)?;
    let dm = d.mirror();
    let c = build_ckh(d, ring, cap)?;
    let cm = build_ckh(&dm, ring, cap)?;
    let a = lee_chain(d, &c, &lab);
    let b = lee_chain(&dm, &cm, &lab);
    let skip = if reduced {
        let base = d.basepoint().ok_or(ComplexError::MissingBasepoint)?;
        Some(d.seifert_resolution().resolved.circle_of_edge[base])
    } else {
        None
    };
    let mut total = Poly::zero();
    for &g in &a.support {
        let ga = &c.gens[g as usize];
        let ca = Poly::monomial(((ga.j - a.j) / 2) as usize);
        for &h in &b.support {
            let gb = &cm.gens[h as usize];
            let cb = Poly::monomial(((gb.j - b.j) / 2) as usize);
            let mut term = &ca * &cb;
            for k in 0..ga.circles as usize {
                if Some(k) == skip {
                    // the pointed circle pairs through the reduced counit
                    if ga.letter(k) != Letter::X || gb.letter(k) != Letter::X {
                        term = Poly::zero();
                    }
                    continue;
                }
                term = &term * &alg_pair(ga.letter(k), gb.letter(k), ring);
            }
            total += term;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub report: InvariantReport,
    pub mirror: InvariantReport,
    pub failures: Vec<String>,
}

impl CrossReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cross_validate(d: &InvolutiveDiagram, cap: usize) -> Result<CrossReport, InvariantError> {
    let mut failures = Vec::new();
    let report = equivariant_s(d, cap)?;
    let mirror = equivariant_s(&d.mirror(), cap)?;
    let towers = tower_s(d, cap)?;
    if towers != (report.s_lower, report.s_upper, report.s_classic) {
        failures.push(format!(
            "tower method {:?} vs divisibility ({}, {}, {})",
            towers, report.s_lower, report.s_upper, report.s_classic
        ));
    }
    if mirror.s_lower != -report.s_upper || mirror.s_upper != -report.s_lower {
        failures.push(format!(
            "mirror gives ({}, {}), expected ({}, {})",
            mirror.s_lower, mirror.s_upper, -report.s_upper, -report.s_lower
        ));
    }
    if report.d_lower as i64 + mirror.d_upper as i64 != report.r - 1 {
        failures.push(format!("d̲(D) + d̄(D*) = {} ≠ r − 1 = {}", report.d_lower + mirror.d_upper, report.r - 1));
    }
    if !(report.s_lower <= report.s_classic && report.s_classic <= report.s_upper) {
        failures.push(format!("s_classic {} outside [{}, {}]", report.s_classic, report.s_lower, report.s_upper));
    }
    Ok(CrossReport { report, mirror, failures })
}

/// Lee cycles coloured both ways give the same divisibilities.
pub fn coloring_independent(d: &InvolutiveDiagram, cap: usize) -> Result<bool, InvariantError> {
    let lab = lee_labels(d)?;
    let c = build_involutive(d, RingSpec::F2HH, ConeMode::Tau, Variant::Unreduced, cap)?;
    let mut ds = Vec::new();
    for l in [lab.clone(), lab.swapped()] {
        let lo = lee_chain(d, &c, &l);
        let hi = shift_to_q(&lo, &c);
        ds.push((divisibility(&c, &lo)?, divisibility(&c, &hi)?));
    }
    Ok(ds[0] == ds[1])
}

/// `σ` sends the Lee cycle of one colouring to that of the other.
pub fn sigma_swaps_colorings(d: &InvolutiveDiagram, cap: usize) -> Result<bool, InvariantError> {
    let lab = lee_labels(d)?;
    let c = build_ckh_with_sigma(d, RingSpec::F2HH, cap)?;
    let a = lee_chain(d, &c, &lab);
    let b = lee_chain(d, &c, &lab.swapped());
    let sigma = c.sigma.as_ref().expect("sigma attached");
    Ok(sigma.apply(&a.support) == b.support)
}

#[cfg(test)]
mod tests;
