//! Command-line surface: argument types, table rendering, the JSON schema
//! and the `run` driver used by the `khi` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::coeffs::RingSpec;
use crate::complex::{build_involutive, build_variant, ComplexError, ConeMode, Variant, DEFAULT_CROSSING_CAP};
use crate::diagram::{build_named, parse_diagram, DiagramError, InvolutiveDiagram};
use crate::homology::{homology_graded, GradedModule};
use crate::invariants::{invariants, pairing_check, InvariantError, InvariantReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    /// `(𝔽₂, 0)`
    Kh,
    /// `(𝔽₂[H], H)`
    Bn,
    /// `(𝔽₂, 1)`
    Bn1,
}

impl Theory {
    pub fn ring(self) -> RingSpec {
        match self {
            Theory::Kh => RingSpec::F2H0,
            Theory::Bn => RingSpec::F2HH,
            Theory::Bn1 => RingSpec::F2H1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Tau,
    SigmaTau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Unreduced,
    Reduced,
    Coreduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and validate a diagram.
    Validate,
    /// Print the homology table.
    Homology,
    /// Equivariant Rasmussen invariants.
    S,
    /// Lee pairing, unreduced and reduced.
    Pair,
    /// Run the acceptance suite on the bundled corpus.
    Corpus,
}

/// Involutive Khovanov and Bar-Natan homology.
#[derive(Debug, Clone, Parser)]
#[command(name = "khi", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// `.sik` file, or `@name` for a bundled diagram.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Theory::Bn, global = true)]
    pub theory: Theory,
    #[arg(long, global = true)]
    pub involutive: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Tau, global = true)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Unreduced, global = true)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long = "cap", default_value_t = DEFAULT_CROSSING_CAP, global = true)]
    pub crossing_cap: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Diagram { path: String, source: DiagramError },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Complex(ComplexError::ResourceLimit { .. })
            | CliError::Invariant(InvariantError::Complex(ComplexError::ResourceLimit { .. })) => 3,
            CliError::Invariant(e) if e.is_breach() => 2,
            _ => 1,
        }
    }
}

pub fn load_input(path: &std::path::Path) -> Result<InvolutiveDiagram, CliError> {
    let shown = path.display().to_string();
    if let Some(name) = shown.strip_prefix('@') {
        return build_named(name).map_err(|source| CliError::Diagram { path: shown.clone(), source });
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(shown.clone(), e))?;
    parse_diagram(&text).map_err(|source| CliError::Diagram { path: shown, source })
}

fn superscript(n: usize) -> String {
    if n == 1 {
        return String::new();
    }
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Summands of one cell: free count and torsion orders with multiplicity.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
struct Cell {
    free: usize,
    torsion: BTreeMap<u32, usize>,
}

fn cells(m: &GradedModule) -> BTreeMap<(i32, i32), Cell> {
    let mut out: BTreeMap<(i32, i32), Cell> = BTreeMap::new();
    for &(i, j) in &m.free {
        out.entry((i, j)).or_default().free += 1;
    }
    for &(i, j, k) in &m.torsion {
        *out.entry((i, j)).or_default().torsion.entry(k).or_insert(0) += 1;
    }
    out
}

fn cell_text(c: &Cell, latex: bool) -> String {
    let mut parts = Vec::new();
    let sup = |n: usize| if latex { if n == 1 { String::new() } else { format!("^{{{n}}}") } } else { superscript(n) };
    let f = if latex { "\\mathbb{F}" } else { "𝔽" };
    if c.free > 0 {
        parts.push(format!("{f}[H]{}", sup(c.free)));
    }
    for (&k, &n) in &c.torsion {
        let base = match (k, latex) {
            (1, _) => f.to_string(),
            (_, true) => format!("{f}[H]/(H^{k})"),
            (_, false) => format!("{f}[H]/(H{})", superscript(k as usize)),
        };
        let body = if n == 1 {
            base
        } else if k == 1 {
            format!("{base}{}", sup(n))
        } else {
            format!("({base}){}", sup(n))
        };
        parts.push(body);
    }
    let s = parts.join(if latex { " \\oplus " } else { " ⊕ " });
    if latex {
        format!("${s}$")
    } else {
        s
    }
}

/// Grid with quantum gradings descending as rows and homological gradings
/// as columns; empty cells are `.`.
pub fn render_table(m: &GradedModule, format: Format) -> String {
    match format {
        Format::Json => module_to_json(m, None).to_string(),
        Format::Text | Format::Latex => render_grid(m, format == Format::Latex),
    }
}

fn render_grid(m: &GradedModule, latex: bool) -> String {
    let cs = cells(m);
    if cs.is_empty() {
        return if latex { "$.$\n".to_string() } else { ".\n".to_string() };
    }
    let (imin, imax) = (cs.keys().map(|k| k.0).min().unwrap(), cs.keys().map(|k| k.0).max().unwrap());
    let (jmin, jmax) = (cs.keys().map(|k| k.1).min().unwrap(), cs.keys().map(|k| k.1).max().unwrap());
    let dot = if latex { "$.$" } else { "." };
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut j = jmax;
    while j >= jmin {
        let mut row = vec![if latex { format!("${j}$") } else { j.to_string() }];
        for i in imin..=imax {
            row.push(cs.get(&(i, j)).map_or(dot.to_string(), |c| cell_text(c, latex)));
        }
        rows.push(row);
        j -= 2;
    }
    let footer: Vec<String> = std::iter::once(if latex { "$ $".to_string() } else { String::new() })
        .chain((imin..=imax).map(|i| if latex { format!("${i}$") } else { i.to_string() }))
        .collect();
    let mut out = String::new();
    if latex {
        let _ = writeln!(out, "\\begin{{tabular}}{{r|{}}}", "l".repeat((imax - imin + 1) as usize));
        for r in &rows {
            let _ = writeln!(out, "{} \\\\", r.join(" & "));
        }
        out.push_str("\\hline\n");
        let _ = writeln!(out, "{} \\\\", footer.join(" & "));
        out.push_str("\\end{tabular}\n");
        return out;
    }
    let ncols = footer.len();
    let width: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([footer[c].chars().count()]).max().unwrap())
        .collect();
    let line = |r: &[String]| {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(width[c] - s.chars().count()))).collect();
        format!("{} | {}", cells[0], cells[1..].join("  ")).trim_end().to_string()
    };
    for r in &rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out.push_str(&format!("{}-+-{}\n", "-".repeat(width[0]), "-".repeat(width[1..].iter().sum::<usize>() + 2 * (ncols - 2))));
    out.push_str(&line(&footer));
    out.push('\n');
    out
}

fn parse_superscript(s: &str) -> Option<usize> {
    if s.is_empty() {
        return Some(1);
    }
    let digits: Option<String> = s
        .chars()
        .map(|c| match c {
            '⁰' => Some('0'),
            '¹' => Some('1'),
            '²' => Some('2'),
            '³' => Some('3'),
            '⁴' => Some('4'),
            '⁵' => Some('5'),
            '⁶' => Some('6'),
            '⁷' => Some('7'),
            '⁸' => Some('8'),
            '⁹' => Some('9'),
            _ => None,
        })
        .collect();
    digits?.parse().ok()
}

fn parse_cell(text: &str) -> Result<Cell, String> {
    let mut cell = Cell::default();
    if text == "." {
        return Ok(cell);
    }
    for part in text.split(" ⊕ ") {
        let bad = || format!("unrecognised cell `{part}`");
        if let Some(rest) = part.strip_prefix("(𝔽[H]/(H") {
            let (k, n) = rest.split_once("))").ok_or_else(bad)?;
            *cell.torsion.entry(parse_superscript(k).ok_or_else(bad)? as u32).or_insert(0) += parse_superscript(n).ok_or_else(bad)?;
        } else if let Some(rest) = part.strip_prefix("𝔽[H]/(H") {
            let k = rest.strip_suffix(')').ok_or_else(bad)?;
            *cell.torsion.entry(parse_superscript(k).ok_or_else(bad)? as u32).or_insert(0) += 1;
        } else if let Some(rest) = part.strip_prefix("𝔽[H]") {
            cell.free += parse_superscript(rest).ok_or_else(bad)?;
        } else if let Some(rest) = part.strip_prefix("𝔽") {
            *cell.torsion.entry(1).or_insert(0) += parse_superscript(rest).ok_or_else(bad)?;
        } else {
            return Err(bad());
        }
    }
    Ok(cell)
}

/// Inverse of the text rendering.
pub fn parse_table(text: &str) -> Result<GradedModule, String> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines == ["."] {
        return Ok(GradedModule::default());
    }
    let footer = lines.last().ok_or("empty table")?;
    let is: Vec<i32> = footer
        .split_once('|')
        .ok_or("missing footer")?
        .1
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("bad column `{t}`")))
        .collect::<Result<_, _>>()?;
    let mut m = GradedModule::default();
    for row in &lines[..lines.len().saturating_sub(2)] {
        let (j, rest) = row.split_once(" | ").ok_or_else(|| format!("bad row `{row}`"))?;
        let j: i32 = j.trim().parse().map_err(|_| format!("bad row `{row}`"))?;
        let entries: Vec<&str> = rest.split("  ").map(str::trim).filter(|s| !s.is_empty()).collect();
        if entries.len() != is.len() {
            return Err(format!("row {j} has {} cells, expected {}", entries.len(), is.len()));
        }
        for (&i, e) in is.iter().zip(entries) {
            let c = parse_cell(e)?;
            m.free.extend(std::iter::repeat_n((i, j), c.free));
            for (k, n) in c.torsion {
                m.torsion.extend(std::iter::repeat_n((i, j, k), n));
            }
        }
    }
    Ok(m.normalized())
}

pub fn module_to_json(m: &GradedModule, invariants: Option<&InvariantReport>) -> serde_json::Value {
    let m = m.clone().normalized();
    let mut v = json!({
        "schema": SCHEMA_VERSION,
        "free": m.free.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "torsion": m.torsion.iter().map(|&(i, j, k)| [i as i64, j as i64, k as i64]).collect::<Vec<_>>(),
    });
    if let Some(r) = invariants {
        v["invariants"] = serde_json::to_value(r).expect("report serialises");
    }
    v
}

pub fn module_from_json(v: &serde_json::Value) -> Result<GradedModule, String> {
    if v["schema"].as_u64() != Some(SCHEMA_VERSION as u64) {
        return Err(format!("unsupported schema {}", v["schema"]));
    }
    let num = |x: &serde_json::Value| x.as_i64().ok_or_else(|| format!("not an integer: {x}"));
    let mut m = GradedModule::default();
    for e in v["free"].as_array().ok_or("missing `free`")? {
        m.free.push((num(&e[0])? as i32, num(&e[1])? as i32));
    }
    for e in v["torsion"].as_array().ok_or("missing `torsion`")? {
        m.torsion.push((num(&e[0])? as i32, num(&e[1])? as i32, num(&e[2])? as u32));
    }
    Ok(m.normalized())
}

fn one_input(cfg: &RunConfig) -> Result<InvolutiveDiagram, CliError> {
    match cfg.input.as_slice() {
        [p] => load_input(p),
        [] => Err(CliError::Usage("--input is required".into())),
        _ => Err(CliError::Usage("exactly one --input expected".into())),
    }
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Unreduced => Variant::Unreduced,
        VariantArg::Reduced => Variant::Reduced,
        VariantArg::Coreduced => Variant::Coreduced,
    }
}

pub fn compute_module(d: &InvolutiveDiagram, cfg: &RunConfig) -> Result<GradedModule, CliError> {
    let ring = cfg.theory.ring();
    let v = variant(cfg.variant);
    if cfg.mode == ModeArg::SigmaTau && v != Variant::Unreduced {
        return Err(CliError::Usage("--mode sigma-tau requires --variant unreduced".into()));
    }
    let c = if cfg.involutive {
        let mode = if cfg.mode == ModeArg::Tau { ConeMode::Tau } else { ConeMode::SigmaTau };
        build_involutive(d, ring, mode, v, cfg.crossing_cap)?
    } else {
        build_variant(d, ring, v, cfg.crossing_cap)?
    };
    Ok(homology_graded(&c))
}

/// Runs one command; returns the exit status and everything to print.
pub fn run(cfg: &RunConfig) -> (i32, String) {
    match run_inner(cfg) {
        Ok(out) => out,
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}

fn run_inner(cfg: &RunConfig) -> Result<(i32, String), CliError> {
    match cfg.command {
        Command::Validate => {
            let mut out = String::new();
            for p in &cfg.input {
                let d = load_input(p)?;
                let sd = d.seifert_resolution();
                let _ = writeln!(
                    out,
                    "{}: ok ({} crossings, {} components, w={}, r={}, fixed edges {})",
                    p.display(),
                    d.n_crossings(),
                    d.components().len(),
                    sd.w,
                    sd.r,
                    d.fixed_edges().len()
                );
            }
            if cfg.input.is_empty() {
                return Err(CliError::Usage("--input is required".into()));
            }
            Ok((0, out))
        }
        Command::Homology => {
            let d = one_input(cfg)?;
            let m = compute_module(&d, cfg)?;
            Ok((0, render_table(&m, cfg.format) + if cfg.format == Format::Json { "\n" } else { "" }))
        }
        Command::S => {
            let d = one_input(cfg)?;
            let r = invariants(&d, cfg.crossing_cap)?;
            let out = match cfg.format {
                Format::Json => {
                    serde_json::to_string(&json!({"schema": SCHEMA_VERSION, "invariants": r})).unwrap() + "\n"
                }
                _ => format!(
                    "s_lower={} s_upper={} s_classic={} w={} r={} d_lower={} d_upper={}\n",
                    r.s_lower, r.s_upper, r.s_classic, r.w, r.r, r.d_lower, r.d_upper
                ),
            };
            Ok((0, out))
        }
        Command::Pair => {
            let d = one_input(cfg)?;
            let un = pairing_check(&d, false, cfg.crossing_cap)?;
            let red = pairing_check(&d, true, cfg.crossing_cap)?;
            Ok((0, format!("unreduced={un} reduced={red}\n")))
        }
        Command::Corpus => {
            let results = crate::acceptance::run_all();
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(out, "{r}");
            }
            let ok = results.iter().all(|r| r.pass);
            Ok((if ok { 0 } else { 1 }, out))
        }
    }
}
