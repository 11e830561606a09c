//! Symmetric plat diagrams and the bundled corpus.
//!
//! A plat has `n` horizontal strand positions (0 at the top), a sequence of
//! crossing columns, and cap arcs closing the strands off on both ends. A
//! crossing `(i, f)` exchanges positions `i` and `i+1`; `f` says whether
//! the strand descending from `i` to `i+1` passes over. The involution is
//! the π-rotation about an axis lying in the projection plane: horizontal
//! (between the middle positions) or vertical (through the middle column).

use std::collections::HashMap;

use super::{Crossing, DiagramError, EdgeId, InvolutiveDiagram, Mode, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Horizontal,
    Vertical,
    /// Rotation about the point at the centre of the plat, perpendicular
    /// to the plane: a 2-periodic symmetry.
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plat {
    pub strands: usize,
    pub left_caps: Vec<(usize, usize)>,
    pub right_caps: Vec<(usize, usize)>,
    pub columns: Vec<Vec<(usize, bool)>>,
    pub axis: Axis,
    pub mode: Mode,
    /// Index into the sorted fixed edges used as basepoint (strong mode).
    pub basepoint: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Port(usize, usize),
    Cross(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Piece {
    Straight(usize, usize),
    Half(usize, usize, usize, usize),
    Cap(bool, usize, usize),
}

fn parse_caps(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim();
            let (a, b) = t.split_once('-').ok_or_else(|| format!("bad cap `{t}`"))?;
            let a: usize = a.parse().map_err(|_| format!("bad cap `{t}`"))?;
            let b: usize = b.parse().map_err(|_| format!("bad cap `{t}`"))?;
            Ok((a.min(b), a.max(b)))
        })
        .collect()
}

impl Plat {
    /// Parses `"<caps> | <columns> | <caps>"` where caps are `a-b,c-d` and
    /// each column is a run of `<pos><+|->` tokens, e.g. `0+2+`.
    pub fn parse(strands: usize, spec: &str, axis: Axis, mode: Mode) -> Result<Plat, String> {
        let parts: Vec<&str> = spec.split('|').collect();
        if parts.len() != 3 {
            return Err(format!("expected `left | word | right`, got `{spec}`"));
        }
        let mut columns = Vec::new();
        for tok in parts[1].split_whitespace() {
            let mut col = Vec::new();
            let mut digits = String::new();
            for ch in tok.chars() {
                match ch {
                    '0'..='9' => digits.push(ch),
                    '+' | '-' => {
                        let i: usize = digits.parse().map_err(|_| format!("bad column `{tok}`"))?;
                        col.push((i, ch == '+'));
                        digits.clear();
                    }
                    _ => return Err(format!("bad column `{tok}`")),
                }
            }
            if !digits.is_empty() || col.is_empty() {
                return Err(format!("bad column `{tok}`"));
            }
            columns.push(col);
        }
        Ok(Plat {
            strands,
            left_caps: parse_caps(parts[0].trim())?,
            right_caps: parse_caps(parts[2].trim())?,
            columns,
            axis,
            mode,
            basepoint: 0,
        })
    }

    pub fn with_basepoint(mut self, k: usize) -> Plat {
        self.basepoint = k;
        self
    }

    /// Flips every over/under choice.
    pub fn mirrored(&self) -> Plat {
        let mut p = self.clone();
        for col in &mut p.columns {
            for c in col.iter_mut() {
                c.1 = !c.1;
            }
        }
        p
    }

    fn width(&self) -> usize {
        self.columns.len()
    }

    fn pieces(&self) -> Result<Vec<(Piece, Node, Node)>, String> {
        let n = self.strands;
        let t_max = self.width();
        let mut out = Vec::new();
        for (side, caps) in [(false, &self.left_caps), (true, &self.right_caps)] {
            let t = if side { t_max } else { 0 };
            let mut used = vec![false; n];
            for &(a, b) in caps {
                if b >= n || a == b || used[a] || used[b] {
                    return Err(format!("invalid cap ({a},{b})"));
                }
                used[a] = true;
                used[b] = true;
                out.push((Piece::Cap(side, a, b), Node::Port(t, a), Node::Port(t, b)));
            }
            if used.iter().any(|u| !u) {
                return Err("every position must be capped on both ends".into());
            }
            for &(a, b) in caps {
                for &(c, d) in caps {
                    if a < c && c < b && b < d {
                        return Err("caps must not cross".into());
                    }
                }
            }
        }
        for (t, col) in self.columns.iter().enumerate() {
            let mut used = vec![false; n];
            for &(i, _) in col {
                if i + 1 >= n || used[i] || used[i + 1] {
                    return Err(format!("invalid crossing at column {t}"));
                }
                used[i] = true;
                used[i + 1] = true;
                for dx in 0..2 {
                    for dp in 0..2 {
                        out.push((Piece::Half(t, i, dx, dp), Node::Port(t + dx, i + dp), Node::Cross(t, i)));
                    }
                }
            }
            for (p, u) in used.iter().enumerate() {
                if !u {
                    out.push((Piece::Straight(t, p), Node::Port(t, p), Node::Port(t + 1, p)));
                }
            }
        }
        Ok(out)
    }

    fn tau_node(&self, v: Node) -> Node {
        let (n, t_max) = (self.strands, self.width());
        match (self.axis, v) {
            (Axis::Horizontal, Node::Port(t, p)) => Node::Port(t, n - 1 - p),
            (Axis::Horizontal, Node::Cross(t, i)) => Node::Cross(t, n - 2 - i),
            (Axis::Vertical, Node::Port(t, p)) => Node::Port(t_max - t, p),
            (Axis::Vertical, Node::Cross(t, i)) => Node::Cross(t_max - 1 - t, i),
            (Axis::Point, Node::Port(t, p)) => Node::Port(t_max - t, n - 1 - p),
            (Axis::Point, Node::Cross(t, i)) => Node::Cross(t_max - 1 - t, n - 2 - i),
        }
    }

    fn flag(&self, t: usize, i: usize) -> Option<bool> {
        self.columns.get(t)?.iter().find(|c| c.0 == i).map(|c| c.1)
    }

    pub fn build(&self) -> Result<InvolutiveDiagram, DiagramError> {
        let bad = DiagramError::NotSymmetric;
        let pieces = self.pieces().map_err(bad)?;
        let mut at: HashMap<Node, Vec<usize>> = HashMap::new();
        let mut key_of: HashMap<(Node, Node), usize> = HashMap::new();
        for (k, &(_, a, b)) in pieces.iter().enumerate() {
            at.entry(a).or_default().push(k);
            at.entry(b).or_default().push(k);
            key_of.insert((a, b), k);
            key_of.insert((b, a), k);
        }
        // geometric involution on pieces
        let mut tau_piece = vec![0; pieces.len()];
        for (k, &(_, a, b)) in pieces.iter().enumerate() {
            let img = (self.tau_node(a), self.tau_node(b));
            tau_piece[k] = *key_of.get(&img).ok_or_else(|| bad(format!("piece {:?} has no mirror image", pieces[k].0)))?;
        }
        for (t, col) in self.columns.iter().enumerate() {
            for &(i, f) in col {
                let Node::Cross(t2, i2) = self.tau_node(Node::Cross(t, i)) else { unreachable!() };
                if self.flag(t2, i2) != Some(f) {
                    return Err(bad(format!("crossing ({t},{i}) has no matching image")));
                }
            }
        }
        let other_end = |k: usize, v: Node| if pieces[k].1 == v { pieces[k].2 } else { pieces[k].1 };
        // continue a walk that arrived at node v through piece k
        let next = |k: usize, v: Node| -> usize {
            match (v, pieces[k].0) {
                (Node::Cross(..), Piece::Half(t, i, dx, dp)) => key_of[&(Node::Port(t + 1 - dx, i + 1 - dp), v)],
                _ => *at[&v].iter().find(|&&q| q != k).expect("ports have degree two"),
            }
        };
        // Trace components. `from[k]` is the node a walk leaves piece k from.
        let mut from: Vec<Option<Node>> = vec![None; pieces.len()];
        let mut comp_of = vec![usize::MAX; pieces.len()];
        let mut walks: Vec<Vec<usize>> = Vec::new();
        for start in 0..pieces.len() {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let img = tau_piece[start];
            let start_from = match from[img] {
                Some(v) => {
                    let tv = self.tau_node(v);
                    match self.mode {
                        Mode::Periodic2 => tv,
                        Mode::StrongInversion => other_end(start, tv),
                    }
                }
                None => pieces[start].1,
            };
            let ci = walks.len();
            let mut walk = Vec::new();
            let (mut k, mut v) = (start, start_from);
            loop {
                comp_of[k] = ci;
                from[k] = Some(v);
                walk.push(k);
                let w = other_end(k, v);
                let k2 = next(k, w);
                if k2 == start {
                    break;
                }
                k = k2;
                v = w;
            }
            walks.push(walk);
        }
        // Split walks into diagram edges at crossing passages.
        let mut edge_of_piece = vec![usize::MAX; pieces.len()];
        let mut n_edges = 0;
        // passage records: (crossing node, incoming half, in-edge, out-edge)
        let mut passages: Vec<(Node, Piece, EdgeId, EdgeId)> = Vec::new();
        for walk in &walks {
            let is_in_half = |k: usize| {
                matches!(pieces[k].0, Piece::Half(..)) && other_end(k, from[k].unwrap()) == pieces[k].2
            };
            let cut = walk.iter().position(|&k| is_in_half(k));
            let Some(cut) = cut else {
                for &k in walk {
                    edge_of_piece[k] = n_edges;
                }
                n_edges += 1;
                continue;
            };
            // rotate so the walk starts right after a passage
            let rot: Vec<usize> = walk[cut + 1..].iter().chain(&walk[..=cut]).copied().collect();
            let first = n_edges;
            for &k in &rot {
                edge_of_piece[k] = n_edges;
                if is_in_half(k) {
                    n_edges += 1;
                }
            }
            let last = n_edges;
            for (idx, &k) in rot.iter().enumerate() {
                if is_in_half(k) {
                    let e_in = edge_of_piece[k];
                    let e_out = if e_in + 1 == last { first } else { e_in + 1 };
                    let _ = idx;
                    passages.push((pieces[k].2, pieces[k].0, e_in, e_out));
                }
            }
        }
        // Crossings in column order.
        let mut crossings = Vec::new();
        for (t, col) in self.columns.iter().enumerate() {
            let mut col = col.clone();
            col.sort();
            for (i, f) in col {
                let node = Node::Cross(t, i);
                let here: Vec<&(Node, Piece, EdgeId, EdgeId)> = passages.iter().filter(|p| p.0 == node).collect();
                debug_assert_eq!(here.len(), 2);
                let dir = |h: Piece| {
                    let Piece::Half(_, _, dx, dp) = h else { unreachable!() };
                    let vx = 1 - 2 * dx as i64;
                    let vy = -(1 - 2 * dp as i64);
                    let descending = dx == dp;
                    (vx, vy, descending)
                };
                let (a, b) = (here[0], here[1]);
                let (over, under) = if dir(a.1).2 == f { (a, b) } else { (b, a) };
                let (ox, oy, _) = dir(over.1);
                let (ux, uy, _) = dir(under.1);
                let sign = if ox * uy - oy * ux > 0 { Sign::Pos } else { Sign::Neg };
                crossings.push(Crossing {
                    name: format!("c{}", crossings.len() + 1),
                    sign,
                    under_in: under.2,
                    under_out: under.3,
                    over_in: over.2,
                    over_out: over.3,
                });
            }
        }
        let mut first_piece = vec![usize::MAX; n_edges];
        for (k, &e) in edge_of_piece.iter().enumerate() {
            if first_piece[e] == usize::MAX {
                first_piece[e] = k;
            }
        }
        let involution: Vec<Option<EdgeId>> =
            (0..n_edges).map(|e| Some(edge_of_piece[tau_piece[first_piece[e]]])).collect();
        let fixed: Vec<EdgeId> = (0..n_edges).filter(|&e| involution[e] == Some(e)).collect();
        let base = match self.mode {
            Mode::StrongInversion => fixed.get(self.basepoint).copied(),
            Mode::Periodic2 => None,
        };
        InvolutiveDiagram::new(
            (1..=n_edges).map(|e| e.to_string()).collect(),
            crossings,
            involution,
            base,
            self.mode,
            &[],
        )
    }
}

fn four(spec: &str, axis: Axis) -> Plat {
    Plat::parse(4, spec, axis, Mode::StrongInversion).expect("corpus plat specs are well formed")
}

/// `T(2,k)` as the plat closure of `σ₁ᵏ` with the vertical axis through
/// the middle crossing.
fn torus2(k: usize, positive: bool) -> Plat {
    let s = if positive { "1+" } else { "1-" };
    four(&format!("0-1,2-3 | {} | 0-1,2-3", vec![s; k].join(" ")), Axis::Vertical)
}

/// Names accepted by [`build_named`], in corpus order.
pub fn corpus_names() -> Vec<&'static str> {
    CORPUS.iter().map(|(n, ..)| *n).collect()
}

/// `(name, strands, plat spec, axis, basepoint index)`.
const CORPUS: &[(&str, usize, &str, Axis, usize)] = &[
    ("3_1", 4, "0-1,2-3 | 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("4_1", 4, "0-1,2-3 | 1+ 1+ 0-2- | 0-3,1-2", Axis::Horizontal, 0),
    ("5_1", 4, "0-1,2-3 | 1- 0+2+ 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("5_2a", 4, "0-1,2-3 | 1- 1- 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("5_2b", 4, "0-3,1-2 | 0+2+ 1- 1- 1- | 0-1,2-3", Axis::Horizontal, 0),
    ("6_1a", 4, "0-1,2-3 | 1+ 1+ 0-2- 0-2- | 0-3,1-2", Axis::Horizontal, 0),
    ("6_1b", 4, "0-1,2-3 | 1- 1- 1- 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("6_2a", 4, "0-1,2-3 | 1- 0+2+ 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("6_2b", 4, "0-3,1-2 | 0+2+ 1- 0+2+ 1- | 0-1,2-3", Axis::Horizontal, 0),
    ("6_3", 4, "0-1,2-3 | 1+ 1+ 0+2+ 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_1", 4, "0-1,2-3 | 1- 0+2+ 0+2+ 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_2a", 4, "0-1,2-3 | 1- 1- 1- 1- 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_2b", 4, "0-3,1-2 | 0+2+ 1- 1- 1- 1- 1- | 0-1,2-3", Axis::Horizontal, 0),
    ("7_3a", 4, "0-1,2-3 | 1- 1- 1- 0+2+ 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_3b", 4, "0-3,1-2 | 0+2+ 0+2+ 1- 1- 1- | 0-1,2-3", Axis::Horizontal, 0),
    ("7_4a", 4, "0-1,2-3 | 1- 1- 1- 1- 0-2- 0-2- | 0-3,1-2", Axis::Horizontal, 0),
    ("7_4b", 4, "0-3,1-2 | 0+ 1- 1- 0+ 1- 1- 0+ | 0-3,1-2", Axis::Vertical, 0),
    ("7_5a", 4, "0-1,2-3 | 1- 0+2+ 1- 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_5b", 4, "0-3,1-2 | 0+2+ 1- 1- 0+2+ 1- | 0-1,2-3", Axis::Horizontal, 0),
    ("7_6a", 4, "0-1,2-3 | 1+ 1+ 0-2- 1+ 0-2- | 0-3,1-2", Axis::Horizontal, 0),
    ("7_6b", 4, "0-3,1-2 | 0-2- 1+ 0-2- 1+ 1+ | 0-1,2-3", Axis::Horizontal, 0),
    ("7_7a", 4, "0-1,2-3 | 1+ 1+ 1+ 0+2+ 1- 0+2+ | 0-3,1-2", Axis::Horizontal, 0),
    ("7_7b", 4, "0-3,1-2 | 0+ 0+ 1- 0+ 1- 0+ 0+ | 0-3,1-2", Axis::Vertical, 0),
    // P(-3, 3, -3); the outer twist regions are swapped by the axis
    ("m9_46", 6, "1-2,3-4,0-5 | 0-4- 0-4- 0-4- 2+ 2+ 2+ | 1-2,3-4,0-5", Axis::Horizontal, 0),
];

pub fn build_named(name: &str) -> Result<InvolutiveDiagram, DiagramError> {
    let unknown = || DiagramError::UnknownName(name.to_string());
    if name == "unknot" {
        return InvolutiveDiagram::new(
            vec!["1".into()],
            Vec::new(),
            vec![Some(0)],
            Some(0),
            Mode::StrongInversion,
            &[],
        );
    }
    if let Some(rest) = name.strip_prefix("torus2(") {
        let (k, chir) = rest.split_once(')').ok_or_else(unknown)?;
        let k: usize = k.parse().map_err(|_| unknown())?;
        let positive = match chir {
            "+" | "" => true,
            "-" => false,
            _ => return Err(unknown()),
        };
        if k.is_multiple_of(2) || k == 0 {
            return Err(unknown());
        }
        return torus2(k, positive).build();
    }
    let (&(_, strands, spec, axis, base), mirror) = match CORPUS.iter().find(|c| c.0 == name) {
        Some(c) => (c, false),
        None => match name.strip_prefix("mirror:") {
            Some(n) => (CORPUS.iter().find(|c| c.0 == n).ok_or_else(unknown)?, true),
            None => return Err(unknown()),
        },
    };
    let p = Plat::parse(strands, spec, axis, Mode::StrongInversion).map_err(DiagramError::NotSymmetric)?;
    let p = if mirror { p.mirrored() } else { p };
    p.with_basepoint(base).build()
}
