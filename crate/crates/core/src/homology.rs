//! Homology of bigraded complexes over `𝔽₂`, `𝔽₂[H]` (and `𝔽₂` at `h = 1`).
//!
//! The main path is a graded Gaussian elimination on the homogeneous bit
//! matrix of the differential: entries of exponent 0 are cancelled first,
//! then each remaining entry of minimal exponent `k` splits off an
//! `𝔽₂[H]/(Hᵏ)` summand. Surviving generators are free towers. A dense
//! Smith normal form over `𝔽₂[H]` is kept as an independent check.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{Poly, RingSpec};
use crate::complex::ChainComplexGraded;
use crate::sparse::xor_sorted;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("input is not a cycle")]
    NotACycle,
    #[error("cycle is not homogeneous in homological degree")]
    MixedDegree,
    #[error("torsion class has no finite divisibility")]
    TorsionClass,
}

/// Homology as a direct sum of free towers `(i, j)` and torsion summands
/// `𝔽₂[H]/(Hᵏ)` generated in `(i, j)`.
///
/// Over `(𝔽₂, 0)` every summand is a copy of `𝔽₂`, recorded as torsion of
/// order one; over `(𝔽₂, 1)` every summand is free with `j = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModule {
    pub free: Vec<(i32, i32)>,
    pub torsion: Vec<(i32, i32, u32)>,
}

impl GradedModule {
    pub fn normalized(mut self) -> Self {
        self.free.sort_unstable();
        self.torsion.sort_unstable();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    /// Number of summands per bigrading.
    pub fn summand_counts(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for &(i, j) in &self.free {
            *out.entry((i, j)).or_insert(0) += 1;
        }
        for &(i, j, _) in &self.torsion {
            *out.entry((i, j)).or_insert(0) += 1;
        }
        out
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut out = self.clone();
        out.free.extend_from_slice(&other.free);
        out.torsion.extend_from_slice(&other.torsion);
        out.normalized()
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }
}

/// A chain `Σ H^{(j_g − j)/2} g` over the listed generators, homogeneous of
/// quantum degree `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub support: Vec<u32>,
    pub j: i32,
}

impl Cycle {
    pub fn new(mut support: Vec<u32>, j: i32) -> Self {
        support.sort_unstable();
        support.dedup();
        Cycle { support, j }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoords {
    /// One entry per free tower of the module, in module order.
    pub free: Vec<Poly>,
    /// One entry per torsion summand, reduced modulo its order.
    pub torsion: Vec<Poly>,
}

impl ClassCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Poly::is_zero)
    }
}

fn exponent(c: &ChainComplexGraded, row: u32, col: u32) -> u32 {
    ((c.gens[row as usize].j - c.gens[col as usize].j) / 2) as u32
}

fn coords_for(c: &ChainComplexGraded, z: &Cycle, g: u32) -> i32 {
    (c.gens[g as usize].j - z.j) / 2
}

/// Checks that `cycle` lies in one homological degree and is killed by `d`.
pub fn check_cycle(c: &ChainComplexGraded, z: &Cycle) -> Result<(), HomologyError> {
    if let Some(&g0) = z.support.first() {
        let i = c.gens[g0 as usize].i;
        if z.support.iter().any(|&g| c.gens[g as usize].i != i) {
            return Err(HomologyError::MixedDegree);
        }
    }
    if c.ring != RingSpec::F2H1 && z.support.iter().any(|&g| coords_for(c, z, g) < 0) {
        return Err(HomologyError::NotACycle);
    }
    if c.d.apply(&z.support).is_empty() {
        Ok(())
    } else {
        Err(HomologyError::NotACycle)
    }
}

struct Eliminator<'a> {
    c: &'a ChainComplexGraded,
    cols: Vec<Vec<u32>>,
    rows: Vec<HashSet<u32>>,
    alive: Vec<bool>,
    torsion: Vec<(u32, u32)>,
    cycles: Vec<(Cycle, i32, Vec<Poly>)>,
}

impl<'a> Eliminator<'a> {
    fn new(c: &'a ChainComplexGraded, cycles: &[Cycle]) -> Self {
        let n = c.len();
        let mut rows = vec![HashSet::new(); n];
        for (r, col) in c.d.entries() {
            rows[r].insert(col as u32);
        }
        let cycles = cycles
            .iter()
            .map(|z| {
                let i = z.support.first().map_or(i32::MIN, |&g| c.gens[g as usize].i);
                (z.clone(), i, Vec::new())
            })
            .collect();
        Eliminator { c, cols: c.d.cols.clone(), rows, alive: vec![true; n], torsion: Vec::new(), cycles }
    }

    fn set_col(&mut self, a: u32, new: Vec<u32>) {
        let old = std::mem::replace(&mut self.cols[a as usize], new);
        for r in xor_sorted(&old, &self.cols[a as usize]) {
            let set = &mut self.rows[r as usize];
            if !set.remove(&a) {
                set.insert(a);
            }
        }
    }

    fn pivot(&mut self, x: u32, y: u32, k: u32, queue: &mut VecDeque<u32>) {
        let col_x = self.cols[x as usize].clone();
        let (ix, iy) = (self.c.gens[x as usize].i, self.c.gens[y as usize].i);
        let tidx = self.torsion.len();
        for (z, zi, tors) in &mut self.cycles {
            if *zi == iy && z.support.binary_search(&y).is_ok() {
                let e = coords_for(self.c, z, y);
                if k >= 1 && e >= 0 && (e as u32) < k {
                    tors.resize(tidx + 1, Poly::zero());
                    tors[tidx] = Poly::monomial(e as usize);
                }
                z.support = xor_sorted(&z.support, &col_x);
            } else if *zi == ix {
                if let Ok(p) = z.support.binary_search(&x) {
                    z.support.remove(p);
                }
            }
        }
        let users: Vec<u32> = self.rows[y as usize].iter().copied().filter(|&a| a != x).collect();
        for a in users {
            let new = xor_sorted(&self.cols[a as usize], &col_x);
            self.set_col(a, new);
            queue.push_back(a);
        }
        // drop x and y from the complex
        for b in self.rows[x as usize].clone() {
            let mut col = self.cols[b as usize].clone();
            if let Ok(p) = col.binary_search(&x) {
                col.remove(p);
            }
            self.set_col(b, col);
        }
        self.set_col(x, Vec::new());
        self.set_col(y, Vec::new());
        debug_assert!(self.rows[y as usize].is_empty());
        self.alive[x as usize] = false;
        self.alive[y as usize] = false;
        if k >= 1 {
            self.torsion.push((y, k));
        }
    }

    fn run(&mut self) {
        let n = self.c.len() as u32;
        let mut level = 0u32;
        loop {
            let mut queue: VecDeque<u32> = (0..n).filter(|&x| self.alive[x as usize]).collect();
            while let Some(x) = queue.pop_front() {
                if !self.alive[x as usize] {
                    continue;
                }
                let best = self.cols[x as usize]
                    .iter()
                    .copied()
                    .filter(|&y| exponent(self.c, y, x) == level)
                    .min_by_key(|&y| self.rows[y as usize].len());
                if let Some(y) = best {
                    self.pivot(x, y, level, &mut queue);
                }
            }
            let min_left = (0..n)
                .filter(|&x| self.alive[x as usize])
                .flat_map(|x| self.cols[x as usize].iter().map(move |&y| (y, x)))
                .map(|(y, x)| exponent(self.c, y, x))
                .min();
            match min_left {
                Some(m) => {
                    debug_assert!(m > level);
                    level = m
                }
                None => break,
            }
        }
    }
}

/// Decomposes the homology, tracking the given cycles into the final basis.
pub fn homology_with_cycles(c: &ChainComplexGraded, cycles: &[Cycle]) -> (GradedModule, Vec<ClassCoords>) {
    let mut el = Eliminator::new(c, cycles);
    el.run();
    let survivors: Vec<u32> = (0..c.len() as u32).filter(|&g| el.alive[g as usize]).collect();
    let shift = c.q_shift;
    let gen = |g: u32| &c.gens[g as usize];
    let mut module = GradedModule::default();
    match c.ring {
        RingSpec::F2H0 => {
            module.torsion = survivors.iter().map(|&g| (gen(g).i, gen(g).j + shift, 1)).collect();
        }
        RingSpec::F2H1 => {
            module.free = survivors.iter().map(|&g| (gen(g).i, 0)).collect();
        }
        RingSpec::F2HH => {
            module.free = survivors.iter().map(|&g| (gen(g).i, gen(g).j + shift)).collect();
            module.torsion = el.torsion.iter().map(|&(y, k)| (gen(y).i, gen(y).j + shift, k)).collect();
        }
    }
    let ntors = el.torsion.len();
    let coords = el
        .cycles
        .iter()
        .map(|(z, _, tors)| {
            let mut torsion = tors.clone();
            torsion.resize(ntors, Poly::zero());
            let free: Vec<Poly> = survivors
                .iter()
                .map(|&g| {
                    if z.support.binary_search(&g).is_ok() {
                        match c.ring {
                            RingSpec::F2HH => Poly::monomial(coords_for(c, z, g).max(0) as usize),
                            _ => Poly::one(),
                        }
                    } else {
                        Poly::zero()
                    }
                })
                .collect();
            match c.ring {
                // survivors are the F2 summands; torsion list is the module's
                RingSpec::F2H0 => ClassCoords { free: Vec::new(), torsion: free },
                RingSpec::F2H1 => ClassCoords { free, torsion: Vec::new() },
                RingSpec::F2HH => ClassCoords { free, torsion },
            }
        })
        .collect();
    (module, coords)
}

pub fn homology_graded(c: &ChainComplexGraded) -> GradedModule {
    homology_with_cycles(c, &[]).0.normalized()
}

pub fn class_coordinates(c: &ChainComplexGraded, cycle: &Cycle) -> Result<ClassCoords, HomologyError> {
    check_cycle(c, cycle)?;
    Ok(homology_with_cycles(c, std::slice::from_ref(cycle)).1.remove(0))
}

/// `max{k : [z] ∈ Hᵏ · (H/Tor)}`.
pub fn divisibility_of(coords: &ClassCoords) -> Result<u32, HomologyError> {
    coords
        .free
        .iter()
        .filter_map(|p| p.valuation().ok())
        .min()
        .map(|v| v as u32)
        .ok_or(HomologyError::TorsionClass)
}

pub fn divisibility(c: &ChainComplexGraded, cycle: &Cycle) -> Result<u32, HomologyError> {
    divisibility_of(&class_coordinates(c, cycle)?)
}

/// Dense matrix over `𝔽₂[H]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.data[r * self.cols + c] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// `row_i += c · row_j`.
    fn add_row(&mut self, i: usize, j: usize, c: &Poly) {
        for k in 0..self.cols {
            let v = self.get(i, k) + &(c * self.get(j, k));
            self.set(i, k, v);
        }
    }

    /// `col_i += c · col_j`.
    fn add_col(&mut self, i: usize, j: usize, c: &Poly) {
        for k in 0..self.rows {
            let v = self.get(k, i) + &(c * self.get(k, j));
            self.set(k, i, v);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// Determinant by cofactor expansion; for small brute-force checks only.
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        fn det(m: &[Vec<Poly>]) -> Poly {
            match m.len() {
                0 => Poly::one(),
                1 => m[0][0].clone(),
                n => {
                    let mut acc = Poly::zero();
                    for c in 0..n {
                        if m[0][c].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<Poly>> = m[1..]
                            .iter()
                            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect())
                            .collect();
                        acc += &m[0][c] * &det(&minor);
                    }
                    acc
                }
            }
        }
        let rows: Vec<Vec<Poly>> = (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        det(&rows)
    }
}

#[derive(Debug, Clone)]
pub struct Snf {
    pub invariants: Vec<Poly>,
    pub left: PolyMatrix,
    pub diag: PolyMatrix,
    pub right: PolyMatrix,
}

impl Snf {
    /// Recomputes `left · diag · right`.
    pub fn product(&self) -> PolyMatrix {
        self.left.mul(&self.diag).mul(&self.right)
    }
}

/// Smith normal form `M = L · D · R` by Euclidean pivoting on minimal
/// degree. Returned invariants are the nonzero diagonal entries, each
/// dividing the next.
pub fn snf(m: &PolyMatrix) -> Snf {
    let (nr, nc) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut left = PolyMatrix::identity(nr);
    let mut right = PolyMatrix::identity(nc);
    let mut invariants = Vec::new();
    for t in 0..nr.min(nc) {
        let Some((pr, pc)) = min_degree_entry(&d, t, t) else { break };
        d.swap_rows(t, pr);
        left.swap_cols(t, pr);
        d.swap_cols(t, pc);
        right.swap_rows(t, pc);
        loop {
            let mut dirty = false;
            let p = d.get(t, t).clone();
            for r in t + 1..nr {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let (q, _) = d.get(r, t).div_rem(&p).expect("pivot nonzero");
                d.add_row(r, t, &q);
                // inverse of the elementary row operation is itself
                left.add_col(t, r, &q);
                dirty |= !d.get(r, t).is_zero();
            }
            for c in t + 1..nc {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let (q, _) = d.get(t, c).div_rem(&p).expect("pivot nonzero");
                d.add_col(c, t, &q);
                right.add_row(t, c, &q);
                dirty |= !d.get(t, c).is_zero();
            }
            if dirty {
                let (pr, pc) = min_degree_in_cross(&d, t);
                d.swap_rows(t, pr);
                left.swap_cols(t, pr);
                d.swap_cols(t, pc);
                right.swap_rows(t, pc);
                continue;
            }
            // enforce divisibility of the remaining block
            let bad = (t + 1..nr).find(|&r| (t + 1..nc).any(|c| !d.get(r, c).div_rem(&p).unwrap().1.is_zero()));
            match bad {
                Some(r) => {
                    d.add_row(t, r, &Poly::one());
                    left.add_col(r, t, &Poly::one());
                }
                None => break,
            }
        }
        invariants.push(d.get(t, t).clone());
    }
    Snf { invariants, left, diag: d, right }
}

fn min_degree_entry(d: &PolyMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for r in r0..d.rows {
        for c in c0..d.cols {
            if let Some(deg) = d.get(r, c).degree() {
                if best.is_none_or(|b| deg < b.2) {
                    best = Some((r, c, deg));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn min_degree_in_cross(d: &PolyMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.get(t, t).degree().unwrap_or(usize::MAX));
    for r in t..d.rows {
        if let Some(deg) = d.get(r, t).degree() {
            if deg < best.2 {
                best = (r, t, deg);
            }
        }
    }
    for c in t..d.cols {
        if let Some(deg) = d.get(t, c).degree() {
            if deg < best.2 {
                best = (t, c, deg);
            }
        }
    }
    (best.0, best.1)
}

/// Per homological degree: free rank and sorted torsion orders, from the
/// Smith normal forms of the differentials. Ignores quantum gradings.
pub fn snf_homology(c: &ChainComplexGraded) -> BTreeMap<i32, (usize, Vec<u32>)> {
    let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (g, gen) in c.gens.iter().enumerate() {
        by_deg.entry(gen.i).or_default().push(g);
    }
    let degs: Vec<i32> = by_deg.keys().copied().collect();
    let mut rank_out: BTreeMap<i32, usize> = BTreeMap::new();
    let mut tors_in: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    for &i in &degs {
        let src = &by_deg[&i];
        let Some(tgt) = by_deg.get(&(i + 1)) else { continue };
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let mut m = PolyMatrix::zeros(tgt.len(), src.len());
        for (k, &g) in src.iter().enumerate() {
            for &r in &c.d.cols[g] {
                m.set(pos[&(r as usize)], k, c.entry_poly(r as usize, g));
            }
        }
        let s = snf(&m);
        rank_out.insert(i, s.invariants.len());
        let mut t: Vec<u32> = s.invariants.iter().filter_map(|p| p.degree()).filter(|&k| k > 0).map(|k| k as u32).collect();
        t.sort_unstable();
        tors_in.insert(i + 1, t);
    }
    degs.iter()
        .map(|&i| {
            let n = by_deg[&i].len();
            let r_in = if degs.contains(&(i - 1)) { rank_out.get(&(i - 1)).copied().unwrap_or(0) } else { 0 };
            let r_out = rank_out.get(&i).copied().unwrap_or(0);
            let tors = match c.ring {
                RingSpec::F2HH => tors_in.get(&i).cloned().unwrap_or_default(),
                _ => Vec::new(),
            };
            (i, (n - r_in - r_out, tors))
        })
        .collect()
}

/// The same summary computed from a [`GradedModule`]. Over `(𝔽₂, 0)` the
/// order-one summands count as rank.
pub fn module_summary(m: &GradedModule, ring: RingSpec) -> BTreeMap<i32, (usize, Vec<u32>)> {
    let mut out: BTreeMap<i32, (usize, Vec<u32>)> = BTreeMap::new();
    for &(i, _) in &m.free {
        out.entry(i).or_default().0 += 1;
    }
    for &(i, _, k) in &m.torsion {
        if ring == RingSpec::F2H0 {
            out.entry(i).or_default().0 += 1;
        } else {
            out.entry(i).or_default().1.push(k);
        }
    }
    for v in out.values_mut() {
        v.1.sort_unstable();
    }
    out
}

#[cfg(test)]
mod tests;
