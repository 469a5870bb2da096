use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use liaison_core::fmodule::PresentedModule;
use liaison_core::poly::{parse_poly, Poly, Ring};
use liaison_core::{Error, Matrix};

/// Objects named in a definition file.
#[derive(Clone, Debug)]
pub struct Definitions {
    pub ring: Ring,
    pub matrices: BTreeMap<String, Matrix>,
    pub modules: BTreeMap<String, PresentedModule>,
    pub ideals: BTreeMap<String, Vec<Poly>>,
}

pub const BUILTIN: &str = include_str!("fixtures.defs");

impl Definitions {
    pub fn matrix(&self, name: &str) -> Result<&Matrix> {
        self.matrices.get(name).ok_or_else(|| anyhow!("no matrix named `{name}`"))
    }

    pub fn ideal(&self, name: &str) -> Result<&[Poly]> {
        self.ideals
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| anyhow!("no ideal named `{name}`"))
    }

    /// A module by name; ideals stand for `R/I` and matrices for their cokernels.
    pub fn module(&self, name: &str) -> Result<PresentedModule> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        if let Some(i) = self.ideals.get(name) {
            return Ok(PresentedModule::cyclic(&self.ring, i)?);
        }
        if let Some(a) = self.matrices.get(name) {
            return Ok(PresentedModule::new(a.clone())?);
        }
        bail!("no module, ideal or matrix named `{name}`")
    }
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

/// `<keyword> <rest>` split at the first whitespace.
fn split_word(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(k) => (&s[..k], s[k..].trim()),
        None => (s, ""),
    }
}

/// Text strictly between `open` and the matching `close`, and what follows.
fn bracketed(s: &str, open: char, close: char) -> Result<(&str, &str)> {
    let s = s.trim_start();
    let body = s.strip_prefix(open).ok_or_else(|| anyhow!("expected `{open}`"))?;
    let end = body.find(close).ok_or_else(|| anyhow!("missing `{close}`"))?;
    Ok((&body[..end], body[end + close.len_utf8()..].trim()))
}

fn parse_list(s: &str, ring: &Ring) -> Result<Vec<Poly>> {
    s.split(',')
        .map(|t| parse_poly(t.trim(), ring).with_context(|| format!("bad polynomial `{}`", t.trim())))
        .collect()
}

fn parse_ring(rest: &str) -> Result<Ring> {
    let rest = rest.trim();
    let inner = rest.strip_prefix("GF").ok_or_else(|| anyhow!("expected `GF(<p>)`"))?;
    let (p, vars) = bracketed(inner, '(', ')')?;
    let p: u32 = p.trim().parse().with_context(|| format!("bad characteristic `{}`", p.trim()))?;
    let (vars, tail) = bracketed(vars, '[', ']')?;
    if !tail.is_empty() {
        bail!("unexpected `{tail}` after the variables");
    }
    let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
    if let Some(v) = vars.iter().find(|v| !is_name(v)) {
        bail!("bad variable name `{v}`");
    }
    Ok(Ring::new(p, vars)?)
}

fn parse_matrix(rest: &str, ring: &Ring) -> Result<(String, Matrix)> {
    let (name, rest) = split_word(rest);
    let (kw, rest) = split_word(rest);
    if kw != "rowtwists" {
        bail!("expected `rowtwists` after the matrix name");
    }
    let (twists, rest) = bracketed(rest, '[', ']')?;
    let twists: Vec<i64> = twists
        .split(',')
        .map(|t| t.trim().parse().with_context(|| format!("bad twist `{}`", t.trim())))
        .collect::<Result<_>>()?;
    let (body, tail) = bracketed(rest, '{', '}')?;
    if !tail.is_empty() {
        bail!("unexpected `{tail}` after the matrix body");
    }
    let rows: Vec<Vec<Poly>> = body.split(';').map(|r| parse_list(r, ring)).collect::<Result<_>>()?;
    if rows.len() != twists.len() {
        bail!("{} rows but {} row twists", rows.len(), twists.len());
    }
    if let Some(k) = rows.iter().position(|r| r.len() != rows[0].len()) {
        bail!("row {k} has {} entries, expected {}", rows[k].len(), rows[0].len());
    }
    // R(t) is generated in degree -t
    let degs = twists.iter().map(|t| -t).collect();
    let m = Matrix::from_rows_infer(ring, rows, degs).map_err(|e| match e {
        Error::Inhomogeneous { row, col } => anyhow!("inhomogeneous entry at ({row}, {col})"),
        e => e.into(),
    })?;
    Ok((name.to_string(), m))
}

/// `name = <rhs>`.
fn parse_assignment(rest: &str) -> Result<(&str, &str)> {
    let (name, rhs) = rest.split_once('=').ok_or_else(|| anyhow!("expected `=`"))?;
    Ok((name.trim(), rhs.trim()))
}

/// Statements with the line they start on; a matrix body may span lines.
fn statements(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut open: Option<(usize, String)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (start, mut buf) = open.take().unwrap_or((k + 1, String::new()));
        if !buf.is_empty() {
            buf.push(' ');
        }
        buf.push_str(line);
        if buf.starts_with("matrix") && buf.contains('{') && !buf.contains('}') {
            open = Some((start, buf));
        } else {
            out.push((start, buf));
        }
    }
    if let Some((start, _)) = open {
        bail!("line {start}: unterminated matrix body");
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Definitions> {
    let mut ring: Option<Ring> = None;
    let mut matrices = BTreeMap::new();
    let mut modules = BTreeMap::new();
    let mut ideals = BTreeMap::new();
    let mut names: Vec<String> = Vec::new();
    for (line, stmt) in statements(text)? {
        let at = |e: anyhow::Error| anyhow!("line {line}: {e:#}");
        let (kw, rest) = split_word(&stmt);
        if kw == "ring" {
            if ring.is_some() {
                return Err(at(anyhow!("ring declared twice")));
            }
            ring = Some(parse_ring(rest).map_err(at)?);
            continue;
        }
        let r = ring.as_ref().ok_or_else(|| at(anyhow!("`{kw}` before the ring declaration")))?;
        let name = match kw {
            "matrix" => {
                let (name, m) = parse_matrix(rest, r).map_err(at)?;
                matrices.insert(name.clone(), m);
                name
            }
            "module" => {
                let (name, rhs) = parse_assignment(rest).map_err(at)?;
                let (op, src) = split_word(rhs);
                if op != "coker" {
                    return Err(at(anyhow!("expected `coker <matrix>`")));
                }
                let a: &Matrix = matrices.get(src).ok_or_else(|| at(anyhow!("no matrix named `{src}`")))?;
                modules.insert(name.to_string(), PresentedModule::new(a.clone()).map_err(|e| at(e.into()))?);
                name.to_string()
            }
            "ideal" => {
                let (name, rhs) = parse_assignment(rest).map_err(at)?;
                let (body, tail) = bracketed(rhs, '(', ')').map_err(at)?;
                if !tail.is_empty() {
                    return Err(at(anyhow!("unexpected `{tail}` after the generators")));
                }
                ideals.insert(name.to_string(), parse_list(body, r).map_err(at)?);
                name.to_string()
            }
            _ => return Err(at(anyhow!("unknown statement `{kw}`"))),
        };
        if !is_name(&name) {
            return Err(at(anyhow!("bad name `{name}`")));
        }
        if names.contains(&name) {
            return Err(at(anyhow!("duplicate name `{name}`")));
        }
        names.push(name);
    }
    let ring = ring.ok_or_else(|| anyhow!("no ring declared"))?;
    Ok(Definitions {
        ring,
        matrices,
        modules,
        ideals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_parse() {
        let d = parse(BUILTIN).unwrap();
        assert_eq!(d.ring.nvars(), 4);
        assert_eq!(d.module("TC").unwrap().hilbert().degree(), 3);
        assert_eq!(d.matrix("A2x2").unwrap().nrows(), 2);
    }

    #[test]
    fn twists_give_generator_degrees() {
        let d = parse("ring GF(101)[x,y]\nmatrix A rowtwists [0, -1] {\n x^2 ;\n x }").unwrap();
        let a = d.matrix("A").unwrap();
        assert_eq!(a.row_deg(), &[0, 1]);
        assert_eq!(a.col_deg(), &[2]);
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse("ring GF(101)[x,y]\n\nmatrix A rowtwists [0] { x, y^2 ; }").unwrap_err();
        assert!(err.to_string().starts_with("line 3"), "{err}");
        let err = parse("ring GF(101)[x,y]\nideal I = (x)\nideal I = (y)").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let err = parse("matrix A rowtwists [0] { x }").unwrap_err();
        assert!(err.to_string().contains("before the ring"), "{err}");
    }
}
