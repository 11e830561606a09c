//! The line-oriented `.sik` diagram format.
//!
//! ```text
//! mode strong
//! x c1 + u:1,2 o:5,6
//! succ 1 2
//! tau 1 4
//! tau 3
//! base 3
//! ```

use std::collections::HashMap;

use super::{Crossing, DiagramError, EdgeId, InvolutiveDiagram, Mode, Sign};

struct Builder {
    names: Vec<String>,
    ids: HashMap<String, EdgeId>,
}

impl Builder {
    fn edge(&mut self, name: &str) -> EdgeId {
        if let Some(&e) = self.ids.get(name) {
            return e;
        }
        let e = self.names.len();
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), e);
        e
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line, msg: msg.into() }
}

fn strand<'a>(tok: &'a str, prefix: &str, line: usize) -> Result<(&'a str, &'a str), DiagramError> {
    let body = tok
        .strip_prefix(prefix)
        .ok_or_else(|| syntax(line, format!("expected `{prefix}<in>,<out>`, found `{tok}`")))?;
    body.split_once(',')
        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains(','))
        .ok_or_else(|| syntax(line, format!("malformed strand `{tok}`")))
}

pub fn parse_diagram(text: &str) -> Result<InvolutiveDiagram, DiagramError> {
    let mut b = Builder { names: Vec::new(), ids: HashMap::new() };
    let mut mode = None;
    let mut crossings = Vec::new();
    let mut succ = Vec::new();
    let mut tau: Vec<(EdgeId, EdgeId)> = Vec::new();
    let mut base = None;
    let mut crossing_ids = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "mode" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "expected `mode strong|periodic`"));
                }
                if mode.is_some() {
                    return Err(syntax(line, "duplicate mode declaration"));
                }
                mode = Some(match toks[1] {
                    "strong" => Mode::StrongInversion,
                    "periodic" => Mode::Periodic2,
                    m => return Err(syntax(line, format!("unknown mode `{m}`"))),
                });
            }
            "x" => {
                if toks.len() != 5 {
                    return Err(syntax(line, "expected `x <id> <+|-> u:<in>,<out> o:<in>,<out>`"));
                }
                let sign = match toks[2] {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    s => return Err(syntax(line, format!("crossing sign must be + or -, found `{s}`"))),
                };
                if crossing_ids.insert(toks[1].to_string(), line).is_some() {
                    return Err(syntax(line, format!("duplicate crossing id `{}`", toks[1])));
                }
                let (ui, uo) = strand(toks[3], "u:", line)?;
                let (oi, oo) = strand(toks[4], "o:", line)?;
                crossings.push(Crossing {
                    name: toks[1].to_string(),
                    sign,
                    under_in: b.edge(ui),
                    under_out: b.edge(uo),
                    over_in: b.edge(oi),
                    over_out: b.edge(oo),
                });
            }
            "succ" => {
                if toks.len() != 3 {
                    return Err(syntax(line, "expected `succ <e> <e'>`"));
                }
                succ.push((b.edge(toks[1]), b.edge(toks[2])));
            }
            "tau" => match toks.len() {
                2 => {
                    let e = b.edge(toks[1]);
                    tau.push((e, e));
                }
                3 => tau.push((b.edge(toks[1]), b.edge(toks[2]))),
                _ => return Err(syntax(line, "expected `tau <e> [<e'>]`")),
            },
            "base" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "expected `base <e>`"));
                }
                if base.is_some() {
                    return Err(syntax(line, "duplicate basepoint"));
                }
                base = Some(b.edge(toks[1]));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = b.names.len();
    let mut inv: Vec<Option<EdgeId>> = vec![None; n];
    let mut conflict = Vec::new();
    for &(p, q) in &tau {
        for (a, c) in [(p, q), (q, p)] {
            match inv[a] {
                Some(prev) if prev != c => conflict.push(b.names[a].clone()),
                _ => inv[a] = Some(c),
            }
        }
    }
    if let Some(e) = conflict.first() {
        return Err(DiagramError::Invalid(vec![super::Violation::InvolutionNotInvolutive(e.clone())]));
    }
    InvolutiveDiagram::new(b.names, crossings, inv, base, mode.unwrap_or(Mode::StrongInversion), &succ)
}

pub fn to_sik(d: &InvolutiveDiagram) -> String {
    let (names, crossings, successor, involution, base, mode) = d.raw_parts();
    let mut out = String::new();
    out.push_str(match mode {
        Mode::StrongInversion => "mode strong\n",
        Mode::Periodic2 => "mode periodic\n",
    });
    for c in crossings {
        let s = if c.sign == Sign::Pos { '+' } else { '-' };
        out.push_str(&format!(
            "x {} {} u:{},{} o:{},{}\n",
            c.name, s, names[c.under_in], names[c.under_out], names[c.over_in], names[c.over_out]
        ));
    }
    let key = |e: &EdgeId| match names[*e].parse::<i64>() {
        Ok(v) => (0, v, String::new()),
        Err(_) => (1, 0, names[*e].clone()),
    };
    let mut order: Vec<EdgeId> = (0..names.len()).collect();
    order.sort_by_key(key);
    for &e in &order {
        out.push_str(&format!("succ {} {}\n", names[e], names[successor[e]]));
    }
    for &e in &order {
        let t = involution[e];
        if t == e {
            out.push_str(&format!("tau {}\n", names[e]));
        } else if key(&e) < key(&t) {
            out.push_str(&format!("tau {} {}\n", names[e], names[t]));
        }
    }
    if let Some(b) = base {
        out.push_str(&format!("base {}\n", names[b]));
    }
    out
}
