//! Involutive link diagrams: combinatorial data, validation, resolutions
//! and constructions.

mod plat;
mod sik;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use plat::{build_named, corpus_names, Axis, Plat};
pub use sik::{parse_diagram, to_sik};

pub type EdgeId = usize;

/// Hard ceiling imposed by the bit-packed [`State`].
pub const MAX_CROSSINGS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    StrongInversion,
    Periodic2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub name: String,
    pub sign: Sign,
    pub under_in: EdgeId,
    pub under_out: EdgeId,
    pub over_in: EdgeId,
    pub over_out: EdgeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::UnderIn, Slot::UnderOut, Slot::OverIn, Slot::OverOut];

    fn is_in(self) -> bool {
        matches!(self, Slot::UnderIn | Slot::OverIn)
    }

    fn is_under(self) -> bool {
        matches!(self, Slot::UnderIn | Slot::UnderOut)
    }
}

impl Crossing {
    pub fn edge(&self, s: Slot) -> EdgeId {
        match s {
            Slot::UnderIn => self.under_in,
            Slot::UnderOut => self.under_out,
            Slot::OverIn => self.over_in,
            Slot::OverOut => self.over_out,
        }
    }

    /// Edge pairs joined by the 0- or 1-smoothing.
    pub fn smoothing_pairs(&self, bit: bool) -> [(EdgeId, EdgeId); 2] {
        if (self.sign == Sign::Pos) != bit {
            [(self.under_in, self.over_out), (self.over_in, self.under_out)]
        } else {
            [(self.under_in, self.over_in), (self.under_out, self.over_out)]
        }
    }

    /// The smoothing value giving the oriented resolution.
    pub fn oriented_bit(&self) -> bool {
        self.sign == Sign::Neg
    }
}

/// One resolution choice per crossing; bit `c` set means 1-smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub bits: u64,
    pub len: usize,
}

impl State {
    pub fn new(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_CROSSINGS && bits >> len == 0);
        State { bits, len }
    }

    pub fn get(&self, c: usize) -> bool {
        self.bits >> c & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn with(&self, c: usize, b: bool) -> State {
        let bits = if b { self.bits | 1 << c } else { self.bits & !(1 << c) };
        State { bits, len: self.len }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedDiagram {
    /// Circle index of each edge.
    pub circle_of_edge: Vec<usize>,
    pub circle_count: usize,
}

impl ResolvedDiagram {
    pub fn circles(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.circle_count];
        for (e, &c) in self.circle_of_edge.iter().enumerate() {
            out[c].push(e);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub state: State,
    pub resolved: ResolvedDiagram,
    /// One `(circle, circle)` pair per crossing.
    pub seifert_graph: Vec<(usize, usize)>,
    pub r: usize,
    pub w: i64,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl SeifertData {
    /// Proper 2-colouring per connected component of the Seifert graph,
    /// with the lowest circle of each component coloured `false`.
    pub fn two_coloring(&self) -> Option<(Vec<bool>, Vec<usize>)> {
        let n = self.r;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.seifert_graph {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut comp = vec![0; n];
        let mut ncomp = 0;
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            comp[s] = ncomp;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let cv = color[v]?;
                for &u in &adj[v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            comp[u] = ncomp;
                            stack.push(u);
                        }
                        Some(cu) if cu == cv => return None,
                        _ => {}
                    }
                }
            }
            ncomp += 1;
        }
        Some((color.into_iter().map(|c| c.unwrap_or(false)).collect(), comp))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {0} must occur exactly once as an incoming and once as an outgoing slot")]
    MalformedEdge(String),
    #[error("declared successor of edge {0} contradicts the crossings")]
    SuccessorMismatch(String),
    #[error("involution undefined on edge {0}")]
    InvolutionUndefined(String),
    #[error("involution is not a self-inverse bijection (edge {0})")]
    InvolutionNotInvolutive(String),
    #[error("involution does not map crossing {0} onto a crossing")]
    CrossingNotMapped(String),
    #[error("involution must preserve crossing sign (crossing {0})")]
    SignNotPreserved(String),
    #[error("involution mixes strand roles at crossing {0}")]
    StrandRoles(String),
    #[error("involution must reverse orientation in strong mode (edge {0})")]
    OrientationNotReversed(String),
    #[error("involution must preserve orientation in periodic mode (edge {0})")]
    OrientationNotPreserved(String),
    #[error("fixed edges forbidden in periodic mode (edge {0})")]
    FixedEdgeInPeriodic(String),
    #[error("basepoint {0} must be a fixed edge")]
    BasepointNotFixed(String),
    #[error("too many crossings: {0} (hard limit {MAX_CROSSINGS})")]
    TooManyCrossings(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown diagram name {0:?}")]
    UnknownName(String),
    #[error("missing on-axis attachment edge")]
    MissingAttachment,
    #[error("connected sum requires strong inversion mode")]
    NotStrong,
    #[error("diagram is not symmetric: {0}")]
    NotSymmetric(String),
}

/// Whether the involution sends a crossing's under strand to the image's
/// under strand (`Same`) or to its over strand (`Swap`). Rotations about an
/// axis in the projection plane swap, rotations about a perpendicular axis
/// do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandMatch {
    Same,
    Swap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveDiagram {
    edge_names: Vec<String>,
    crossings: Vec<Crossing>,
    successor: Vec<EdgeId>,
    involution: Vec<EdgeId>,
    basepoint: Option<EdgeId>,
    mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    DisjointUnion,
    ConnectedSumOnAxis,
}

impl InvolutiveDiagram {
    /// Assembles a diagram, infers the successor map from the crossings and
    /// validates. `declared_succ` entries are checked against the inference.
    pub fn new(
        edge_names: Vec<String>,
        crossings: Vec<Crossing>,
        involution: Vec<Option<EdgeId>>,
        basepoint: Option<EdgeId>,
        mode: Mode,
        declared_succ: &[(EdgeId, EdgeId)],
    ) -> Result<Self, DiagramError> {
        let n = edge_names.len();
        let mut violations = Vec::new();
        let mut successor: Vec<EdgeId> = (0..n).collect();
        for c in &crossings {
            successor[c.under_in] = c.under_out;
            successor[c.over_in] = c.over_out;
        }
        for &(a, b) in declared_succ {
            if successor[a] != b {
                violations.push(Violation::SuccessorMismatch(edge_names[a].clone()));
            }
        }
        let mut inv = Vec::with_capacity(n);
        for (e, t) in involution.iter().enumerate() {
            match t {
                Some(t) => inv.push(*t),
                None => {
                    violations.push(Violation::InvolutionUndefined(edge_names[e].clone()));
                    inv.push(e);
                }
            }
        }
        let d = InvolutiveDiagram { edge_names, crossings, successor, involution: inv, basepoint, mode };
        violations.extend(d.validate());
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(violations))
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basepoint(&self) -> Option<EdgeId> {
        self.basepoint
    }

    pub fn with_basepoint(&self, e: Option<EdgeId>) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.basepoint = e;
        let v = d.validate();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_names.len()
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn tau(&self, e: EdgeId) -> EdgeId {
        self.involution[e]
    }

    pub fn successor(&self, e: EdgeId) -> EdgeId {
        self.successor[e]
    }

    pub fn fixed_edges(&self) -> Vec<EdgeId> {
        (0..self.n_edges()).filter(|&e| self.involution[e] == e).collect()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign == Sign::Pos).count()
    }

    pub fn n_minus(&self) -> usize {
        self.n_crossings() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// Edge cycles of the link components, in order of first edge.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let mut seen = vec![false; self.n_edges()];
        let mut out = Vec::new();
        for s in 0..self.n_edges() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                comp.push(e);
                e = self.successor[e];
            }
            out.push(comp);
        }
        out
    }

    /// Crossing and slot where an edge ends (`in`) or starts (`out`).
    fn slot_index(&self) -> (Vec<Vec<(usize, Slot)>>, Vec<Vec<(usize, Slot)>>) {
        let mut heads = vec![Vec::new(); self.n_edges()];
        let mut tails = vec![Vec::new(); self.n_edges()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in Slot::ALL {
                if s.is_in() {
                    heads[c.edge(s)].push((ci, s));
                } else {
                    tails[c.edge(s)].push((ci, s));
                }
            }
        }
        (heads, tails)
    }

    /// All invariant violations; empty iff the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let n = self.n_edges();
        let name = |e: EdgeId| self.edge_names[e].clone();
        if self.n_crossings() > MAX_CROSSINGS {
            v.push(Violation::TooManyCrossings(self.n_crossings()));
        }
        let (heads, tails) = self.slot_index();
        let mut well_formed = true;
        for e in 0..n {
            let (h, t) = (heads[e].len(), tails[e].len());
            if !((h == 1 && t == 1) || (h == 0 && t == 0)) {
                v.push(Violation::MalformedEdge(name(e)));
                well_formed = false;
            }
        }
        for e in 0..n {
            let t = self.involution[e];
            if t >= n || self.involution[t] != e {
                v.push(Violation::InvolutionNotInvolutive(name(e)));
                return v;
            }
        }
        if !well_formed {
            return v;
        }
        for e in 0..n {
            let t = self.involution[e];
            let ok = match self.mode {
                Mode::StrongInversion => self.successor[self.involution[self.successor[e]]] == t,
                Mode::Periodic2 => self.involution[self.successor[e]] == self.successor[t],
            };
            if !ok {
                v.push(match self.mode {
                    Mode::StrongInversion => Violation::OrientationNotReversed(name(e)),
                    Mode::Periodic2 => Violation::OrientationNotPreserved(name(e)),
                });
            }
            if self.mode == Mode::Periodic2 && t == e {
                v.push(Violation::FixedEdgeInPeriodic(name(e)));
            }
        }
        if let Some(b) = self.basepoint {
            if self.involution[b] != b {
                v.push(Violation::BasepointNotFixed(name(b)));
            }
        }
        if v.is_empty() {
            if let Err(cv) = self.crossing_map_checked(&heads, &tails) {
                v.extend(cv);
            }
        }
        v
    }

    fn crossing_map_checked(
        &self,
        heads: &[Vec<(usize, Slot)>],
        tails: &[Vec<(usize, Slot)>],
    ) -> Result<Vec<(usize, StrandMatch)>, Vec<Violation>> {
        let strong = self.mode == Mode::StrongInversion;
        let mut out = Vec::with_capacity(self.n_crossings());
        let mut v = Vec::new();
        for c in &self.crossings {
            let image = |s: Slot| {
                let e = self.involution[c.edge(s)];
                let flip = strong;
                let want_in = s.is_in() != flip;
                if want_in {
                    heads[e][0]
                } else {
                    tails[e][0]
                }
            };
            let imgs: Vec<(usize, Slot)> = Slot::ALL.iter().map(|&s| image(s)).collect();
            let target = imgs[0].0;
            if imgs.iter().any(|&(t, _)| t != target) {
                v.push(Violation::CrossingNotMapped(c.name.clone()));
                continue;
            }
            let matches: Vec<bool> =
                Slot::ALL.iter().zip(&imgs).map(|(s, (_, t))| s.is_under() == t.is_under()).collect();
            let m = if matches.iter().all(|&b| b) {
                StrandMatch::Same
            } else if matches.iter().all(|&b| !b) {
                StrandMatch::Swap
            } else {
                v.push(Violation::StrandRoles(c.name.clone()));
                continue;
            };
            if self.crossings[target].sign != c.sign {
                v.push(Violation::SignNotPreserved(c.name.clone()));
                continue;
            }
            out.push((target, m));
        }
        if v.is_empty() {
            Ok(out)
        } else {
            Err(v)
        }
    }

    /// The crossing involution `ι` together with the strand matching.
    pub fn crossing_involution(&self) -> Vec<(usize, StrandMatch)> {
        let (h, t) = self.slot_index();
        self.crossing_map_checked(&h, &t).expect("validated diagram")
    }

    pub fn on_axis_crossings(&self) -> Vec<usize> {
        self.crossing_involution().iter().enumerate().filter(|(c, (t, _))| c == t).map(|(c, _)| c).collect()
    }

    pub fn resolve_state(&self, s: &State) -> ResolvedDiagram {
        let mut uf = UnionFind::new(self.n_edges());
        for (ci, c) in self.crossings.iter().enumerate() {
            for (a, b) in c.smoothing_pairs(s.get(ci)) {
                uf.union(a, b);
            }
        }
        let mut index = HashMap::new();
        let mut circle_of_edge = Vec::with_capacity(self.n_edges());
        for e in 0..self.n_edges() {
            let root = uf.find(e);
            let next = index.len();
            circle_of_edge.push(*index.entry(root).or_insert(next));
        }
        ResolvedDiagram { circle_count: index.len(), circle_of_edge }
    }

    pub fn seifert_state(&self) -> State {
        let bits = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.oriented_bit())
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        State::new(bits, self.n_crossings())
    }

    pub fn seifert_resolution(&self) -> SeifertData {
        let state = self.seifert_state();
        let resolved = self.resolve_state(&state);
        let seifert_graph = self
            .crossings
            .iter()
            .map(|c| (resolved.circle_of_edge[c.under_in], resolved.circle_of_edge[c.over_in]))
            .collect();
        SeifertData {
            state,
            r: resolved.circle_count,
            resolved,
            seifert_graph,
            w: self.writhe(),
            n_plus: self.n_plus(),
            n_minus: self.n_minus(),
        }
    }

    /// `s′ = s ∘ ι` and the induced bijection from circles of `D(s)` to
    /// circles of `D(s′)`.
    pub fn tau_action(&self, s: &State) -> (State, Vec<usize>) {
        let iota = self.crossing_involution();
        self.tau_action_with(&iota, s, &self.resolve_state(s))
    }

    pub(crate) fn tau_action_with(
        &self,
        iota: &[(usize, StrandMatch)],
        s: &State,
        res: &ResolvedDiagram,
    ) -> (State, Vec<usize>) {
        let mut bits = 0u64;
        for (c, &(t, _)) in iota.iter().enumerate() {
            if s.get(c) {
                bits |= 1 << t;
            }
        }
        let s2 = State::new(bits, s.len);
        let res2 = self.resolve_state(&s2);
        let mut bij = vec![usize::MAX; res.circle_count];
        for e in 0..self.n_edges() {
            bij[res.circle_of_edge[e]] = res2.circle_of_edge[self.involution[e]];
        }
        (s2, bij)
    }

    pub fn mirror(&self) -> InvolutiveDiagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            *c = Crossing {
                name: c.name.clone(),
                sign: c.sign.flip(),
                under_in: c.over_in,
                under_out: c.over_out,
                over_in: c.under_in,
                over_out: c.under_out,
            };
        }
        d
    }

    pub fn combine(&self, other: &InvolutiveDiagram, kind: CombineKind) -> Result<InvolutiveDiagram, DiagramError> {
        match kind {
            CombineKind::DisjointUnion => {
                if self.mode != other.mode {
                    return Err(DiagramError::NotStrong);
                }
                Ok(self.disjoint_union(other))
            }
            CombineKind::ConnectedSumOnAxis => self.connected_sum(other),
        }
    }

    fn disjoint_union(&self, other: &InvolutiveDiagram) -> InvolutiveDiagram {
        let off = self.n_edges();
        let mut edge_names: Vec<String> = self.edge_names.iter().map(|n| format!("a.{n}")).collect();
        edge_names.extend(other.edge_names.iter().map(|n| format!("b.{n}")));
        let mut crossings = self.crossings.clone();
        for c in &mut crossings {
            c.name = format!("a.{}", c.name);
        }
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            name: format!("b.{}", c.name),
            sign: c.sign,
            under_in: c.under_in + off,
            under_out: c.under_out + off,
            over_in: c.over_in + off,
            over_out: c.over_out + off,
        }));
        let mut successor = self.successor.clone();
        successor.extend(other.successor.iter().map(|e| e + off));
        let mut involution = self.involution.clone();
        involution.extend(other.involution.iter().map(|e| e + off));
        InvolutiveDiagram {
            edge_names,
            crossings,
            successor,
            involution,
            basepoint: self.basepoint.or(other.basepoint.map(|b| b + off)),
            mode: self.mode,
        }
    }

    /// Band sum along the axis at the two basepoints. The new diagram's
    /// basepoint is another fixed edge of `self`, or else of `other`.
    fn connected_sum(&self, other: &InvolutiveDiagram) -> Result<InvolutiveDiagram, DiagramError> {
        if self.mode != Mode::StrongInversion || other.mode != Mode::StrongInversion {
            return Err(DiagramError::NotStrong);
        }
        let (b1, b2) = match (self.basepoint, other.basepoint) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(DiagramError::MissingAttachment),
        };
        // A crossingless circle is a unit for the sum.
        if self.successor[b1] == b1 && self.crossings.iter().all(|c| c.edge(Slot::UnderIn) != b1) && self.n_crossings() == 0 {
            return Ok(other.clone());
        }
        if other.n_crossings() == 0 {
            return Ok(self.clone());
        }
        let mut u = self.disjoint_union(other);
        let off = self.n_edges();
        let b2 = b2 + off;
        // b1 keeps its tail and takes b2's head; b2 keeps its tail and takes
        // b1's head.
        for c in u.crossings.iter_mut() {
            if c.under_in == b1 || c.over_in == b1 {
                if c.under_in == b1 {
                    c.under_in = b2;
                } else {
                    c.over_in = b2;
                }
            } else if c.under_in == b2 || c.over_in == b2 {
                if c.under_in == b2 {
                    c.under_in = b1;
                } else {
                    c.over_in = b1;
                }
            }
        }
        u.involution[b1] = b2;
        u.involution[b2] = b1;
        for c in &u.crossings {
            u.successor[c.under_in] = c.under_out;
            u.successor[c.over_in] = c.over_out;
        }
        u.basepoint = u.fixed_edges().first().copied();
        let v = u.validate();
        if v.is_empty() {
            Ok(u)
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    /// Renames edges to `1..n` in traversal order, components in order of
    /// their first edge.
    pub fn canonical_names(&self) -> InvolutiveDiagram {
        let mut d = self.clone();
        let mut k = 1;
        for comp in self.components() {
            for e in comp {
                d.edge_names[e] = k.to_string();
                k += 1;
            }
        }
        for (i, c) in d.crossings.iter_mut().enumerate() {
            c.name = format!("c{}", i + 1);
        }
        d
    }

    pub(crate) fn raw_parts(&self) -> (&[String], &[Crossing], &[EdgeId], &[EdgeId], Option<EdgeId>, Mode) {
        (&self.edge_names, &self.crossings, &self.successor, &self.involution, self.basepoint, self.mode)
    }

    /// Builds from a planar-diagram code `X[a,b,c,d]` (a: incoming under,
    /// counter-clockwise; under strand a→c). Edges are labelled by the
    /// integers in the code. `tau` lists swapped pairs; unlisted edges are
    /// fixed.
    pub fn from_pd(
        pd: &[[i64; 4]],
        tau: &[(i64, i64)],
        basepoint: Option<i64>,
        mode: Mode,
    ) -> Result<InvolutiveDiagram, DiagramError> {
        let mut labels: Vec<i64> = pd.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let id: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let n = labels.len();
        // Orient over strands: every edge has exactly one head and one tail.
        let mut heads = vec![0usize; n];
        let mut tails = vec![0usize; n];
        for x in pd {
            heads[id[&x[0]]] += 1;
            tails[id[&x[2]]] += 1;
        }
        let mut dir: Vec<Option<bool>> = vec![None; pd.len()]; // true: over runs d→b
        let mut changed = true;
        while changed {
            changed = false;
            for (ci, x) in pd.iter().enumerate() {
                if dir[ci].is_some() {
                    continue;
                }
                let (b, d) = (id[&x[1]], id[&x[3]]);
                let g = if heads[b] > 0 || tails[d] > 0 {
                    true
                } else if heads[d] > 0 || tails[b] > 0 {
                    false
                } else {
                    continue;
                };
                dir[ci] = Some(g);
                let (h, t) = if g { (d, b) } else { (b, d) };
                heads[h] += 1;
                tails[t] += 1;
                changed = true;
            }
        }
        let mut crossings = Vec::new();
        for (ci, x) in pd.iter().enumerate() {
            let (a, b, c, d) = (id[&x[0]], id[&x[1]], id[&x[2]], id[&x[3]]);
            let d_to_b = dir[ci].unwrap_or_else(|| {
                let (lb, ld) = (x[1], x[3]);
                lb == ld + 1 || (ld == labels[n - 1] && lb == labels[0])
            });
            let (oi, oo) = if d_to_b { (d, b) } else { (b, d) };
            crossings.push(Crossing {
                name: format!("c{}", ci + 1),
                sign: if d_to_b { Sign::Pos } else { Sign::Neg },
                under_in: a,
                under_out: c,
                over_in: oi,
                over_out: oo,
            });
        }
        let mut inv: Vec<Option<EdgeId>> = (0..n).map(Some).collect();
        for &(p, q) in tau {
            let (p, q) = (id[&p], id[&q]);
            inv[p] = Some(q);
            inv[q] = Some(p);
        }
        InvolutiveDiagram::new(
            labels.iter().map(|l| l.to_string()).collect(),
            crossings,
            inv,
            basepoint.map(|b| id[&b]),
            mode,
            &[],
        )
    }

    /// Every edge involution of a knot diagram whose edges are numbered
    /// consecutively along the orientation that is a reflection of the
    /// edge cycle and is compatible with the crossings.
    pub fn strong_inversions_of_pd(pd: &[[i64; 4]]) -> Vec<InvolutiveDiagram> {
        let n = 2 * pd.len() as i64;
        let lo = pd.iter().flatten().copied().min().unwrap_or(0);
        let mut out = Vec::new();
        for k in 0..n {
            let tau: Vec<(i64, i64)> = (0..n)
                .filter_map(|i| {
                    let j = (k - i).rem_euclid(n);
                    (i < j).then_some((i + lo, j + lo))
                })
                .collect();
            let fixed: Vec<i64> = (0..n).filter(|&i| (k - i).rem_euclid(n) == i).map(|i| i + lo).collect();
            if let Ok(d) = InvolutiveDiagram::from_pd(pd, &tau, fixed.first().copied(), Mode::StrongInversion) {
                out.push(d);
            }
        }
        out
    }
}

impl fmt::Display for InvolutiveDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_sik(self))
    }
}

pub fn validate(d: &InvolutiveDiagram) -> Vec<Violation> {
    d.validate()
}

pub fn resolve_state(d: &InvolutiveDiagram, s: &State) -> ResolvedDiagram {
    d.resolve_state(s)
}

pub fn seifert_resolution(d: &InvolutiveDiagram) -> SeifertData {
    d.seifert_resolution()
}

pub fn tau_action(d: &InvolutiveDiagram, s: &State) -> (State, Vec<usize>) {
    d.tau_action(s)
}

pub fn mirror(d: &InvolutiveDiagram) -> InvolutiveDiagram {
    d.mirror()
}

pub fn combine(a: &InvolutiveDiagram, b: &InvolutiveDiagram, kind: CombineKind) -> Result<InvolutiveDiagram, DiagramError> {
    a.combine(b, kind)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests;
