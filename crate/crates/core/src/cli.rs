//! The `.frob` problem format, builtin problem specs, and the `frobex`
//! commands.
//!
//! Grammar (line oriented, `#` starts a comment, case-sensitive):
//!
//! ```text
//! lambda_rank <k>
//! sparse = true
//! algebra <name>
//!   basis <b1> <b2> ...
//!   deg <b> = (w1,...,wk | even|odd)
//!   unit = <lincomb>
//!   mul <b1> * <b2> = <lincomb>
//! embed <sub> -> <big>
//!   map <b> = <lincomb>
//! aut <name> on <alg>
//!   map <b> = <lincomb>
//! trace <name> : <big> -> <sub> deg (w1,...,wk | parity)
//!   tr(<b>) = <lincomb>
//!   ltwist <aut>
//!   rtwist <aut>
//! tower R=<alg> B=<alg> A=<alg> trA=<trace> trB=<trace> [rbasis=<b1>,<b2>,...]
//! ```
//!
//! A lincomb is `0` or terms `[+|-] [<rational>*]<label>`. Without
//! `sparse = true` every product, map and trace value must be listed.

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num::Zero;
use serde_json::{json, Map, Value};

use crate::algebra::{check_algebra, check_embedding, AlgebraSpec, Embedding, Tower};
use crate::constructions::{exterior_base, group_ring_tower_named, nilcoxeter_tower, GroupTable};
use crate::error::{Error, Result};
use crate::frobenius::{check_automorphism_matrix, freeness_probe, Freeness, NakayamaMap, TraceData};
use crate::grading::Degree;
use crate::linalg::{format_scalar, parse_scalar, Matrix, Scalar, SparseVec};
use crate::nested::{verify_main_theorem, Certificate, NestedProblem};

/// Everything defined by a problem file, in definition order.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub lambda_rank: usize,
    pub sparse: bool,
    pub algebras: Vec<Arc<AlgebraSpec>>,
    pub embeddings: Vec<Embedding>,
    pub auts: Vec<(String, Arc<AlgebraSpec>, Matrix)>,
    pub traces: Vec<TraceData>,
    pub tower: Option<NestedProblem>,
}

impl ProblemFile {
    pub fn problem(&self) -> Result<&NestedProblem> {
        self.tower
            .as_ref()
            .ok_or_else(|| Error::rejected("file defines no `tower`"))
    }

    pub fn into_problem(self) -> Result<NestedProblem> {
        self.tower.ok_or_else(|| Error::rejected("file defines no `tower`"))
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '\'')
}

fn check_label(line: usize, text: &str, full: &str) -> Result<()> {
    if text.is_empty() || !text.chars().all(is_label_char) {
        return Err(syntax(line, column_of(full, text), format!("invalid name `{text}`")));
    }
    Ok(())
}

/// 1-based column of `part` within `full`, when `part` is a subslice of it.
fn column_of(full: &str, part: &str) -> usize {
    let start = full.as_ptr() as usize;
    let p = part.as_ptr() as usize;
    if p >= start && p <= start + full.len() {
        full[..p - start].chars().count() + 1
    } else {
        1
    }
}

/// A lincomb over `labels`, as a sparse vector.
fn parse_lincomb(line: usize, full: &str, text: &str, alg: &AlgebraSpec) -> Result<SparseVec> {
    let t = text.trim();
    if t.is_empty() {
        return Err(syntax(line, column_of(full, text), "expected a linear combination"));
    }
    if t == "0" {
        return Ok(SparseVec::new());
    }
    let mut entries = Vec::new();
    let mut rest = t;
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        let trimmed = rest.trim_start();
        let mut body = trimmed;
        if let Some(r) = body.strip_prefix('+') {
            body = r;
        } else if let Some(r) = body.strip_prefix('-') {
            negative = true;
            body = r;
        } else if !first {
            return Err(syntax(line, column_of(full, trimmed), "expected `+` or `-`"));
        }
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = body[..end].trim();
        rest = &body[end..];
        if term.is_empty() {
            return Err(syntax(line, column_of(full, body), "empty term"));
        }
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => (
                parse_scalar(c.trim()).map_err(|_| syntax(line, column_of(full, c), format!("bad coefficient `{}`", c.trim())))?,
                l.trim(),
            ),
            None => (Scalar::from_integer(1.into()), term),
        };
        let idx = alg.index_of(label).ok_or_else(|| Error::Undefined {
            line,
            name: format!("{label} (basis of {})", alg.name()),
        })?;
        entries.push((idx, if negative { -coef } else { coef }));
    }
    Ok(SparseVec::from_entries(entries))
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

#[derive(Default)]
struct FileParser {
    lambda_rank: Option<usize>,
    sparse: bool,
    algebras: Vec<Arc<AlgebraSpec>>,
    embeddings: Vec<(Embedding, usize)>,
    auts: Vec<(String, Arc<AlgebraSpec>, Matrix)>,
    traces: Vec<TraceData>,
    tower: Option<NestedProblem>,
}

/// Parses and validates a problem file. Structural failures report the line
/// of the offending block header.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(syntax(1, 1, "empty problem file"));
    }
    let mut p = FileParser::default();
    let mut i = 0;
    while i < lines.len() {
        let head = &lines[i];
        let t = head.text.trim();
        let keyword = t.split_whitespace().next().unwrap_or("");
        let mut j = i + 1;
        while j < lines.len() && !is_header(lines[j].text) {
            j += 1;
        }
        let body = &lines[i + 1..j];
        match keyword {
            "lambda_rank" => {
                expect_no_body(body)?;
                if !p.algebras.is_empty() || p.lambda_rank.is_some() {
                    return Err(syntax(head.no, 1, "`lambda_rank` must come once, before any block"));
                }
                let k = t["lambda_rank".len()..].trim();
                p.lambda_rank = Some(
                    k.parse()
                        .map_err(|_| syntax(head.no, column_of(head.text, k), format!("bad rank `{k}`")))?,
                );
            }
            "sparse" => {
                expect_no_body(body)?;
                let v = t["sparse".len()..].trim().strip_prefix('=').map(str::trim);
                match v {
                    Some("true") => p.sparse = true,
                    Some("false") => p.sparse = false,
                    _ => return Err(syntax(head.no, 1, "expected `sparse = true|false`")),
                }
                if !p.algebras.is_empty() {
                    return Err(syntax(head.no, 1, "`sparse` must come before any block"));
                }
            }
            "algebra" => p.algebra_block(head, body)?,
            "embed" => p.embed_block(head, body)?,
            "aut" => p.aut_block(head, body)?,
            "trace" => p.trace_block(head, body)?,
            "tower" => {
                expect_no_body(body)?;
                p.tower_line(head)?;
            }
            _ => {
                return Err(syntax(
                    head.no,
                    column_of(head.text, t),
                    format!("unexpected `{keyword}`"),
                ))
            }
        }
        i = j;
    }
    Ok(ProblemFile {
        lambda_rank: p.lambda_rank.unwrap_or(1),
        sparse: p.sparse,
        algebras: p.algebras,
        embeddings: p.embeddings.into_iter().map(|(e, _)| e).collect(),
        auts: p.auts,
        traces: p.traces,
        tower: p.tower,
    })
}

fn is_header(text: &str) -> bool {
    matches!(
        text.split_whitespace().next(),
        Some("lambda_rank" | "sparse" | "algebra" | "embed" | "aut" | "trace" | "tower")
    )
}

fn expect_no_body(body: &[Line]) -> Result<()> {
    match body.first() {
        Some(l) => Err(syntax(l.no, column_of(l.text, l.text.trim_start()), "unexpected line")),
        None => Ok(()),
    }
}

/// `lhs = rhs`, both trimmed.
fn split_eq<'a>(l: &Line<'a>, text: &'a str) -> Result<(&'a str, &'a str)> {
    text.split_once('=')
        .map(|(a, b)| (a.trim(), b))
        .ok_or_else(|| syntax(l.no, column_of(l.text, text), "expected `=`"))
}

impl FileParser {
    fn arity(&self) -> usize {
        self.lambda_rank.unwrap_or(1)
    }

    fn algebra(&self, line: usize, name: &str) -> Result<Arc<AlgebraSpec>> {
        self.algebras
            .iter()
            .find(|a| a.name() == name)
            .cloned()
            .ok_or_else(|| Error::Undefined {
                line,
                name: name.to_string(),
            })
    }

    fn algebra_block(&mut self, head: &Line, body: &[Line]) -> Result<()> {
        let t = head.text.trim();
        let name = t["algebra".len()..].trim();
        check_label(head.no, name, head.text)?;
        if self.algebras.iter().any(|a| a.name() == name) {
            return Err(syntax(head.no, column_of(head.text, name), format!("algebra `{name}` defined twice")));
        }
        let arity = self.arity();
        let mut basis: Option<Vec<String>> = None;
        let mut degrees: BTreeMap<usize, Degree> = BTreeMap::new();
        let mut unit_text: Option<(&Line, &str)> = None;
        let mut mul_lines: Vec<(&Line, &str, &str, &str)> = Vec::new();
        for l in body {
            let s = l.text.trim();
            let (kw, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
            match kw {
                "basis" => {
                    if basis.is_some() {
                        return Err(syntax(l.no, 1, "duplicate `basis`"));
                    }
                    let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    for lab in rest.split_whitespace() {
                        check_label(l.no, lab, l.text)?;
                        if lab == "0" {
                            return Err(syntax(l.no, column_of(l.text, lab), "`0` is reserved"));
                        }
                    }
                    basis = Some(labels);
                }
                "deg" => {
                    let b = basis.as_ref().ok_or_else(|| syntax(l.no, 1, "`deg` before `basis`"))?;
                    let (lab, d) = split_eq(l, rest)?;
                    let idx = b.iter().position(|x| x == lab).ok_or_else(|| Error::Undefined {
                        line: l.no,
                        name: lab.to_string(),
                    })?;
                    let deg: Degree = d
                        .trim()
                        .parse()
                        .map_err(|e: Error| syntax(l.no, column_of(l.text, d.trim()), e.to_string()))?;
                    if deg.arity() != arity {
                        return Err(syntax(
                            l.no,
                            column_of(l.text, d.trim()),
                            format!("degree has {} weights, lambda_rank is {arity}", deg.arity()),
                        ));
                    }
                    if degrees.insert(idx, deg).is_some() {
                        return Err(syntax(l.no, 1, format!("duplicate `deg` for `{lab}`")));
                    }
                }
                "unit" => {
                    let rhs = rest
                        .trim_start()
                        .strip_prefix('=')
                        .ok_or_else(|| syntax(l.no, column_of(l.text, rest), "expected `unit = ...`"))?;
                    unit_text = Some((l, rhs));
                }
                "mul" => {
                    let (lhs, rhs) = split_eq(l, rest)?;
                    let (x, y) = lhs
                        .split_once('*')
                        .ok_or_else(|| syntax(l.no, column_of(l.text, lhs), "expected `<b1> * <b2>`"))?;
                    mul_lines.push((l, x.trim(), y.trim(), rhs));
                }
                _ => return Err(syntax(l.no, column_of(l.text, s), format!("unexpected `{kw}` in algebra block"))),
            }
        }
        let basis = basis.ok_or_else(|| syntax(head.no, 1, format!("algebra `{name}` has no `basis`")))?;
        let n = basis.len();
        if let Some(missing) = (0..n).find(|i| !degrees.contains_key(i)) {
            return Err(syntax(head.no, 1, format!("no `deg` for `{}`", basis[missing])));
        }
        // parse lincombs against a provisional algebra carrying the labels
        let provisional = AlgebraSpec::new(
            name,
            arity,
            basis.clone(),
            degrees.values().cloned().collect(),
            vec![Scalar::zero(); n],
            vec![SparseVec::new(); n * n],
        )
        .map_err(|e| syntax(head.no, 1, e.to_string()))?;
        let (ul, utext) = unit_text.ok_or_else(|| syntax(head.no, 1, format!("algebra `{name}` has no `unit`")))?;
        let unit = parse_lincomb(ul.no, ul.text, utext, &provisional)?.to_dense(n);
        let mut products: Vec<Option<SparseVec>> = vec![None; n * n];
        for (l, x, y, rhs) in mul_lines {
            let xi = provisional.index_of(x).ok_or_else(|| Error::Undefined {
                line: l.no,
                name: x.to_string(),
            })?;
            let yi = provisional.index_of(y).ok_or_else(|| Error::Undefined {
                line: l.no,
                name: y.to_string(),
            })?;
            let v = parse_lincomb(l.no, l.text, rhs, &provisional)?;
            if products[xi * n + yi].replace(v).is_some() {
                return Err(syntax(l.no, 1, format!("duplicate product `{x} * {y}`")));
            }
        }
        if !self.sparse {
            if let Some(k) = products.iter().position(Option::is_none) {
                return Err(syntax(
                    head.no,
                    1,
                    format!(
                        "no `mul {} * {}` line (set `sparse = true` to default to 0)",
                        basis[k / n],
                        basis[k % n]
                    ),
                ));
            }
        }
        let alg = AlgebraSpec::new(
            name,
            arity,
            basis,
            degrees.into_values().collect(),
            unit,
            products.into_iter().map(Option::unwrap_or_default).collect(),
        )
        .map_err(|e| syntax(head.no, 1, e.to_string()))?;
        let rep = check_algebra(&alg);
        if !rep.passed() {
            return Err(Error::Structural {
                line: head.no,
                object: name.to_string(),
                report: rep.to_string(),
            });
        }
        self.algebras.push(Arc::new(alg));
        Ok(())
    }

    /// `map <b> = <lincomb>` lines defining a matrix `target × source`.
    fn map_lines(&self, head: &Line, body: &[Line], src: &AlgebraSpec, tgt: &AlgebraSpec) -> Result<Matrix> {
        let mut cols: Vec<Option<Vec<Scalar>>> = vec![None; src.dim()];
        for l in body {
            let s = l.text.trim();
            let rest = s
                .strip_prefix("map")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| syntax(l.no, column_of(l.text, s), "expected `map <b> = ...`"))?;
            let (lab, rhs) = split_eq(l, rest)?;
            let i = src.index_of(lab).ok_or_else(|| Error::Undefined {
                line: l.no,
                name: format!("{lab} (basis of {})", src.name()),
            })?;
            let v = parse_lincomb(l.no, l.text, rhs, tgt)?;
            if cols[i].replace(v.to_dense(tgt.dim())).is_some() {
                return Err(syntax(l.no, 1, format!("duplicate `map {lab}`")));
            }
        }
        if !self.sparse {
            if let Some(k) = cols.iter().position(Option::is_none) {
                return Err(syntax(head.no, 1, format!("no `map {}` line", src.label(k))));
            }
        }
        let cols: Vec<Vec<Scalar>> = cols
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![Scalar::zero(); tgt.dim()]))
            .collect();
        Matrix::from_columns(tgt.dim(), &cols)
    }

    fn embed_block(&mut self, head: &Line, body: &[Line]) -> Result<()> {
        let t = head.text.trim();
        let rest = t["embed".len()..].trim();
        let (sub, big) = rest
            .split_once("->")
            .ok_or_else(|| syntax(head.no, column_of(head.text, rest), "expected `embed <sub> -> <big>`"))?;
        let sub = self.algebra(head.no, sub.trim())?;
        let big = self.algebra(head.no, big.trim())?;
        if self.embeddings.iter().any(|(e, _)| e.source() == &sub && e.target() == &big) {
            return Err(syntax(head.no, 1, "embedding defined twice"));
        }
        let m = self.map_lines(head, body, &sub, &big)?;
        let e = Embedding::new(sub, big, m)?;
        let rep = check_embedding(&e);
        if !rep.passed() {
            return Err(Error::Structural {
                line: head.no,
                object: format!("{} -> {}", e.source().name(), e.target().name()),
                report: rep.to_string(),
            });
        }
        self.embeddings.push((e, head.no));
        Ok(())
    }

    fn aut_block(&mut self, head: &Line, body: &[Line]) -> Result<()> {
        let t = head.text.trim();
        let rest = t["aut".len()..].trim();
        let (name, alg) = rest
            .split_once(" on ")
            .ok_or_else(|| syntax(head.no, column_of(head.text, rest), "expected `aut <name> on <alg>`"))?;
        let name = name.trim();
        check_label(head.no, name, head.text)?;
        if self.auts.iter().any(|(n, _, _)| n == name) {
            return Err(syntax(head.no, 1, format!("aut `{name}` defined twice")));
        }
        let alg = self.algebra(head.no, alg.trim())?;
        let m = self.map_lines(head, body, &alg, &alg)?;
        let rep = check_automorphism_matrix(&alg, &m);
        if !rep.passed() {
            return Err(Error::Structural {
                line: head.no,
                object: name.to_string(),
                report: rep.to_string(),
            });
        }
        self.auts.push((name.to_string(), alg, m));
        Ok(())
    }

    /// The embedding `sub → big`, directly or through one intermediate algebra.
    fn resolve_embedding(&self, line: usize, sub: &Arc<AlgebraSpec>, big: &Arc<AlgebraSpec>) -> Result<Embedding> {
        if let Some((e, _)) = self.embeddings.iter().find(|(e, _)| e.source() == sub && e.target() == big) {
            return Ok(e.clone());
        }
        for (first, _) in self.embeddings.iter().filter(|(e, _)| e.source() == sub) {
            if let Some((second, _)) = self
                .embeddings
                .iter()
                .find(|(e, _)| e.source() == first.target() && e.target() == big)
            {
                return second.after(first);
            }
        }
        Err(Error::Undefined {
            line,
            name: format!("embedding {} -> {}", sub.name(), big.name()),
        })
    }

    fn trace_block(&mut self, head: &Line, body: &[Line]) -> Result<()> {
        let t = head.text.trim();
        let rest = t["trace".len()..].trim();
        let bad = || syntax(head.no, column_of(head.text, rest), "expected `trace <name> : <big> -> <sub> deg (...)`");
        let (name, rest2) = rest.split_once(':').ok_or_else(bad)?;
        let name = name.trim();
        check_label(head.no, name, head.text)?;
        if self.traces.iter().any(|td| td.name == name) {
            return Err(syntax(head.no, 1, format!("trace `{name}` defined twice")));
        }
        let (big, rest3) = rest2.split_once("->").ok_or_else(bad)?;
        let (sub, deg) = rest3.split_once(" deg ").ok_or_else(bad)?;
        let big = self.algebra(head.no, big.trim())?;
        let sub = self.algebra(head.no, sub.trim())?;
        let degree: Degree = deg
            .trim()
            .parse()
            .map_err(|e: Error| syntax(head.no, column_of(head.text, deg.trim()), e.to_string()))?;
        let embedding = self.resolve_embedding(head.no, &sub, &big)?;
        let mut cols: Vec<Option<Vec<Scalar>>> = vec![None; big.dim()];
        let mut ltwist = Matrix::identity(sub.dim());
        let mut rtwist = Matrix::identity(big.dim());
        for l in body {
            let s = l.text.trim();
            if let Some(r) = s.strip_prefix("tr(") {
                let (lab, rhs) = r
                    .split_once(')')
                    .ok_or_else(|| syntax(l.no, column_of(l.text, r), "expected `)`"))?;
                let rhs = rhs
                    .trim_start()
                    .strip_prefix('=')
                    .ok_or_else(|| syntax(l.no, column_of(l.text, rhs), "expected `=`"))?;
                let i = big.index_of(lab.trim()).ok_or_else(|| Error::Undefined {
                    line: l.no,
                    name: format!("{} (basis of {})", lab.trim(), big.name()),
                })?;
                let v = parse_lincomb(l.no, l.text, rhs, &sub)?;
                if cols[i].replace(v.to_dense(sub.dim())).is_some() {
                    return Err(syntax(l.no, 1, format!("duplicate `tr({})`", lab.trim())));
                }
            } else if let Some((kw, aut)) = s.split_once(char::is_whitespace).filter(|(k, _)| *k == "ltwist" || *k == "rtwist") {
                let aut = aut.trim();
                let (_, on, m) = self.auts.iter().find(|(n, _, _)| n == aut).ok_or_else(|| Error::Undefined {
                    line: l.no,
                    name: aut.to_string(),
                })?;
                let (want, slot) = if kw == "ltwist" { (&sub, &mut ltwist) } else { (&big, &mut rtwist) };
                if on != want {
                    return Err(Error::rejected(format!(
                        "line {}: `{aut}` acts on `{}`, {kw} needs `{}`",
                        l.no,
                        on.name(),
                        want.name()
                    )));
                }
                *slot = m.clone();
            } else {
                return Err(syntax(l.no, column_of(l.text, s), "expected `tr(<b>) = ...`, `ltwist` or `rtwist`"));
            }
        }
        if !self.sparse {
            if let Some(k) = cols.iter().position(Option::is_none) {
                return Err(syntax(head.no, 1, format!("no `tr({})` line", big.label(k))));
            }
        }
        let cols: Vec<Vec<Scalar>> = cols
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![Scalar::zero(); sub.dim()]))
            .collect();
        let m = Matrix::from_columns(sub.dim(), &cols)?;
        let td = TraceData::new(name, embedding, m, degree, ltwist, rtwist).map_err(|e| Error::Structural {
            line: head.no,
            object: name.to_string(),
            report: e.to_string(),
        })?;
        self.traces.push(td);
        Ok(())
    }

    fn tower_line(&mut self, head: &Line) -> Result<()> {
        if self.tower.is_some() {
            return Err(syntax(head.no, 1, "only one `tower` line is allowed"));
        }
        let t = head.text.trim();
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for part in t["tower".len()..].split_whitespace() {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| syntax(head.no, column_of(head.text, part), format!("expected `key=value`, found `{part}`")))?;
            if !matches!(k, "R" | "B" | "A" | "trA" | "trB" | "rbasis") {
                return Err(syntax(head.no, column_of(head.text, part), format!("unknown tower field `{k}`")));
            }
            if fields.insert(k, v).is_some() {
                return Err(syntax(head.no, column_of(head.text, part), format!("duplicate tower field `{k}`")));
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| syntax(head.no, 1, format!("tower is missing `{k}=`")))
        };
        let r = self.algebra(head.no, get("R")?)?;
        let b = self.algebra(head.no, get("B")?)?;
        let a = self.algebra(head.no, get("A")?)?;
        let trace = |name: &str| {
            self.traces
                .iter()
                .find(|td| td.name == name)
                .cloned()
                .ok_or_else(|| Error::Undefined {
                    line: head.no,
                    name: name.to_string(),
                })
        };
        let tr_a = trace(get("trA")?)?;
        let tr_b = trace(get("trB")?)?;
        let iota_rb = self.resolve_embedding(head.no, &r, &b)?;
        let iota_ba = self.resolve_embedding(head.no, &b, &a)?;
        let tower = Tower::new(iota_rb, iota_ba)?;
        let r_basis = match fields.get("rbasis") {
            Some(list) => list
                .split(',')
                .map(|lab| {
                    b.index_of(lab).ok_or_else(|| Error::Undefined {
                        line: head.no,
                        name: format!("{lab} (basis of {})", b.name()),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => match freeness_probe(&tower.iota_rb) {
                Freeness::Free { basis, .. } => basis,
                Freeness::Inconclusive => {
                    return Err(Error::rejected(format!(
                        "line {}: no R-basis of `{}` found; give `rbasis=`",
                        head.no,
                        b.name()
                    )))
                }
            },
        };
        let problem = NestedProblem::new(tower, tr_a, tr_b, r_basis).map_err(|e| Error::Structural {
            line: head.no,
            object: "tower".into(),
            report: e.to_string(),
        })?;
        self.tower = Some(problem);
        Ok(())
    }
}

fn write_algebra(out: &mut String, a: &AlgebraSpec) {
    out.push_str(&format!("algebra {}\n", a.name()));
    out.push_str(&format!("  basis {}\n", a.basis().join(" ")));
    for i in 0..a.dim() {
        out.push_str(&format!("  deg {} = {}\n", a.label(i), a.degree(i)));
    }
    out.push_str(&format!("  unit = {}\n", a.format(&a.unit_sparse())));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.product(i, j);
            if !p.is_zero() {
                out.push_str(&format!("  mul {} * {} = {}\n", a.label(i), a.label(j), a.format(p)));
            }
        }
    }
    out.push('\n');
}

fn write_map(out: &mut String, src: &AlgebraSpec, tgt: &AlgebraSpec, m: &Matrix, prefix: &str, close: &str) {
    for j in 0..src.dim() {
        let col = m.sparse_column(j);
        if !col.is_zero() {
            out.push_str(&format!("  {prefix}{}{close} = {}\n", src.label(j), tgt.format(&col)));
        }
    }
}

/// Canonical text for a problem; [`parse_problem`] inverts it.
pub fn serialize_problem(p: &NestedProblem) -> String {
    let t = &p.tower;
    let mut out = String::new();
    out.push_str(&format!("lambda_rank {}\n", t.a.arity()));
    out.push_str("sparse = true\n\n");
    let mut seen: Vec<&str> = Vec::new();
    for alg in [&t.r, &t.b, &t.a] {
        if !seen.contains(&alg.name()) {
            seen.push(alg.name());
            write_algebra(&mut out, alg);
        }
    }
    for e in [&t.iota_rb, &t.iota_ba] {
        out.push_str(&format!("embed {} -> {}\n", e.source().name(), e.target().name()));
        write_map(&mut out, e.source(), e.target(), e.matrix(), "map ", "");
        out.push('\n');
    }
    for td in [&p.tr_b, &p.tr_a] {
        write_trace(&mut out, td);
    }
    let rbasis: Vec<&str> = p.r_basis.iter().map(|&i| t.b.label(i)).collect();
    out.push_str(&format!(
        "tower R={} B={} A={} trA={} trB={} rbasis={}\n",
        t.r.name(),
        t.b.name(),
        t.a.name(),
        p.tr_a.name,
        p.tr_b.name,
        rbasis.join(",")
    ));
    out
}

fn write_trace(out: &mut String, td: &TraceData) {
    let (sub, big) = (td.sub(), td.big());
    let lname = format!("{}_ltwist", td.name);
    let rname = format!("{}_rtwist", td.name);
    if !td.left_twist.is_identity() {
        out.push_str(&format!("aut {lname} on {}\n", sub.name()));
        write_map(out, sub, sub, &td.left_twist, "map ", "");
        out.push('\n');
    }
    if !td.right_twist.is_identity() {
        out.push_str(&format!("aut {rname} on {}\n", big.name()));
        write_map(out, big, big, &td.right_twist, "map ", "");
        out.push('\n');
    }
    out.push_str(&format!("trace {} : {} -> {} deg {}\n", td.name, big.name(), sub.name(), td.degree));
    write_map(out, big, sub, &td.matrix, "tr(", ")");
    if !td.left_twist.is_identity() {
        out.push_str(&format!("  ltwist {lname}\n"));
    }
    if !td.right_twist.is_identity() {
        out.push_str(&format!("  rtwist {rname}\n"));
    }
    out.push('\n');
}

/// Base ring selector `q` or `ext:<m>`.
pub fn parse_base(spec: &str) -> Result<Arc<AlgebraSpec>> {
    if spec == "q" || spec == "Q" {
        return Ok(Arc::new(AlgebraSpec::rationals(1)));
    }
    if let Some(m) = spec.strip_prefix("ext:") {
        let m: usize = m
            .parse()
            .map_err(|_| Error::rejected(format!("bad base `{spec}`: expected ext:<m> with m >= 0")))?;
        return Ok(Arc::new(exterior_base(m, 1)?));
    }
    Err(Error::rejected(format!("unknown base `{spec}` (expected q or ext:<m>)")))
}

fn builtin_group(name: &str) -> Result<GroupTable> {
    match name {
        "Z2" => Ok(GroupTable::cyclic(2)),
        "Z3" => Ok(GroupTable::cyclic(3)),
        "Z4" => Ok(GroupTable::cyclic(4)),
        "S3" => GroupTable::symmetric(3),
        "A3" => {
            let s3 = GroupTable::symmetric(3)?;
            let members = named_members(&s3, &["e", "c123", "c132"])?;
            s3.subgroup("A3", &members)
        }
        _ => Err(Error::rejected(format!(
            "unknown group `{name}` (expected Z2, Z3, Z4, S3 or A3)"
        ))),
    }
}

fn named_members(g: &GroupTable, labels: &[&str]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            g.index_of(l)
                .ok_or_else(|| Error::rejected(format!("`{l}` is not an element of {}", g.name())))
        })
        .collect()
}

/// Subgroup by name (`trivial`, the group's own name, `Z2`, `Z3`, `A3`) or
/// as an element list `{e,c12}`.
fn builtin_subgroup(g: &GroupTable, spec: &str) -> Result<(Vec<usize>, String)> {
    if let Some(list) = spec.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let labels: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let members = named_members(g, &labels)?;
        return Ok((members, format!("H{}", labels.len())));
    }
    let labels: Vec<&str> = match (g.name(), spec) {
        (_, "trivial") => vec![g.elements()[g.identity()].as_str()],
        (gn, s) if gn == s => g.elements().iter().map(String::as_str).collect(),
        ("Z4", "Z2") => vec!["e", "g2"],
        ("S3", "Z2") => vec!["e", "c12"],
        ("S3", "A3" | "Z3") => vec!["e", "c123", "c132"],
        _ => {
            return Err(Error::rejected(format!(
                "unknown subgroup `{spec}` of {}",
                g.name()
            )))
        }
    };
    let members = named_members(g, &labels)?;
    Ok((members, spec.to_string()))
}

/// `nilcoxeter:<n>` or `groupring:<group>:<subgroup>` over `base`.
pub fn builtin_problem(spec: &str, base: &str) -> Result<NestedProblem> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["nilcoxeter", n] => {
            if base != "q" && base != "Q" {
                return Err(Error::rejected("nilcoxeter towers are defined over q only"));
            }
            let n: usize = n
                .parse()
                .map_err(|_| Error::rejected(format!("bad nilcoxeter size `{n}`")))?;
            nilcoxeter_tower(n)
        }
        ["groupring", g, h] => {
            let g = builtin_group(g)?;
            let (members, name) = builtin_subgroup(&g, h)?;
            group_ring_tower_named(&g, &members, &parse_base(base)?, Some(&name))
        }
        _ => Err(Error::rejected(format!(
            "unknown builtin `{spec}` (expected nilcoxeter:<n> or groupring:<group>:<subgroup>)"
        ))),
    }
}

fn psi_json(psi: &NakayamaMap) -> Value {
    let a = &psi.algebra;
    let mut map = Map::new();
    for i in 0..a.dim() {
        map.insert(a.label(i).to_string(), Value::String(a.format(&psi.matrix.sparse_column(i))));
    }
    json!({ "algebra": a.name(), "psi": map })
}

fn degree_json(d: &Degree) -> Value {
    json!({ "weight": d.weight(), "parity": d.parity().to_string() })
}

/// The structured report; rationals are strings, never floats.
pub fn certificate_json(p: &NestedProblem, cert: &Certificate) -> Value {
    let t = &p.tower;
    let mut doc = Map::new();
    doc.insert(
        "problem".into(),
        json!({
            "R": t.r.name(), "B": t.b.name(), "A": t.a.name(),
            "trA": p.tr_a.name, "trB": p.tr_b.name,
            "rbasis": p.r_basis.iter().map(|&i| t.b.label(i)).collect::<Vec<_>>(),
        }),
    );
    doc.insert("valid".into(), json!(cert.valid));
    doc.insert("failed_stage".into(), json!(cert.failed_stage));
    doc.insert("summary".into(), json!(cert.summary()));
    doc.insert(
        "extension_degree".into(),
        cert.extension_degree.as_ref().map(degree_json).unwrap_or(Value::Null),
    );
    doc.insert("twists".into(), json!(cert.twists_label()));
    let mut nak = Map::new();
    if let Some(psi) = &cert.psi_a {
        nak.insert("A".into(), psi_json(psi));
    }
    if let Some(psi) = &cert.psi_b {
        nak.insert("B".into(), psi_json(psi));
    }
    doc.insert("nakayama".into(), Value::Object(nak));
    doc.insert(
        "dual_generators".into(),
        match &cert.dual_gens {
            Some(dg) => json!({
                "x": dg.x.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "y": dg.y.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            None => Value::Null,
        },
    );
    doc.insert(
        "nested_trace".into(),
        match &cert.nested_trace {
            Some(td) => {
                let mut values = Map::new();
                for i in 0..td.big().dim() {
                    values.insert(td.big().label(i).into(), json!(td.sub().format(&td.matrix.sparse_column(i))));
                }
                let rows: Vec<Vec<String>> = (0..td.matrix.rows())
                    .map(|r| td.matrix.row(r).iter().map(format_scalar).collect())
                    .collect();
                json!({
                    "name": td.name,
                    "big": td.big().name(),
                    "sub": td.sub().name(),
                    "degree": degree_json(&td.degree),
                    "values": values,
                    "matrix": rows,
                })
            }
            None => Value::Null,
        },
    );
    doc.insert(
        "freeness".into(),
        match &cert.freeness {
            Some(Freeness::Free { rank, basis }) => json!({
                "free": true,
                "rank": rank,
                "basis": basis.iter().map(|&i| t.a.label(i)).collect::<Vec<_>>(),
            }),
            Some(Freeness::Inconclusive) => json!({ "free": null }),
            None => Value::Null,
        },
    );
    doc.insert(
        "twist_scan".into(),
        match &cert.twist_scan {
            Some(r) => serde_json::to_value(&r.checks).expect("serializable checks"),
            None => Value::Null,
        },
    );
    doc.insert(
        "checks".into(),
        serde_json::to_value(&cert.report().checks).expect("serializable checks"),
    );
    doc.insert("warnings".into(), json!(cert.warnings));
    Value::Object(doc)
}

/// Human-readable form of the same data as [`certificate_json`].
pub fn certificate_text(p: &NestedProblem, cert: &Certificate) -> String {
    let mut out = cert.to_string();
    let t = &p.tower;
    for (label, psi) in [("psi_A", &cert.psi_a), ("psi_B", &cert.psi_b)] {
        if let Some(psi) = psi {
            out.push_str(&format!("{label} on {}:\n", psi.algebra.name()));
            for i in 0..psi.algebra.dim() {
                let img = psi.matrix.sparse_column(i);
                out.push_str(&format!("  {} -> {}\n", psi.algebra.label(i), psi.algebra.format(&img)));
            }
        }
    }
    if let Some(dg) = &cert.dual_gens {
        out.push_str(&format!("dual generators of {} over {}:\n", t.b.name(), t.r.name()));
        for (x, y) in dg.x.iter().zip(&dg.y) {
            out.push_str(&format!("  x = {x}, y = {y}\n"));
        }
    }
    if let Some(td) = &cert.nested_trace {
        out.push_str(&format!("nested trace {} -> {} of degree {}:\n", td.big().name(), td.sub().name(), td.degree));
        for i in 0..td.big().dim() {
            let v = td.matrix.sparse_column(i);
            if !v.is_zero() {
                out.push_str(&format!("  tr({}) = {}\n", td.big().label(i), td.sub().format(&v)));
            }
        }
    }
    if let Some(scan) = &cert.twist_scan {
        out.push_str("twist scan:\n");
        for c in &scan.checks {
            out.push_str(&format!("  ({}) {}\n", c.name, if c.passed { "PASS" } else { "FAIL" }));
        }
    }
    out
}

#[derive(Parser, Debug)]
#[command(name = "frobex", version, about = "Certify nested twisted Frobenius extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the pipeline and print CHECK lines and the certificate summary.
    Verify(Source),
    /// Print the certificate with Nakayama maps, dual generators and the nested trace.
    Report(Source),
    /// Print the problem in canonical `.frob` form.
    Dump(Source),
}

#[derive(Args, Debug)]
pub struct Source {
    /// `nilcoxeter:<n>` or `groupring:<group>:<subgroup>`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// A `.frob` problem file.
    pub path: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    /// Base ring for group-ring builtins: `q` or `ext:<m>`.
    #[arg(long, default_value = "q")]
    pub base: String,
}

pub const EXIT_VALID: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn load(src: &Source) -> Result<NestedProblem> {
    match (&src.builtin, &src.path) {
        (Some(b), None) => builtin_problem(b, &src.base),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::rejected(format!("cannot read {}: {e}", path.display())))?;
            parse_problem(&text)?.into_problem()
        }
        (Some(_), Some(_)) => Err(Error::rejected("give either --builtin or a path, not both")),
        (None, None) => Err(Error::rejected("give --builtin <spec> or a path")),
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the exit code.
pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let src = match cmd {
        Command::Verify(s) | Command::Report(s) | Command::Dump(s) => s,
    };
    let problem = match load(src) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Command::Dump(_) = cmd {
        let _ = write!(out, "{}", serialize_problem(&problem));
        return EXIT_VALID;
    }
    let cert = match verify_main_theorem(&problem) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let text = match (cmd, src.json) {
        (_, true) => serde_json::to_string_pretty(&certificate_json(&problem, &cert)).expect("serializable") + "\n",
        (Command::Report(_), false) => certificate_text(&problem, &cert),
        _ => cert.to_string(),
    };
    let _ = write!(out, "{text}");
    if cert.valid {
        EXIT_VALID
    } else {
        EXIT_INVALID
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_VALID };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&cli.command, &mut stdout.lock(), &mut stderr.lock())
}
