use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Canonical text form: symmetric coefficients, unit coefficients omitted.
pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let field = ring.field();
    let mut out = String::new();
    for (k, &(m, c)) in f.terms().iter().enumerate() {
        let c = field.to_symmetric(c);
        let (neg, abs) = (c < 0, c.unsigned_abs());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(&m, ring);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

/// `x0^2*x1`; empty for the unit monomial.
pub fn format_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.var_names().iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i].parse::<u64>().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "integer literal too large".into(),
                })?;
                out.push((start, Tok::Num(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    true
                }
                None if !first => break,
                _ if first => false,
                _ => return self.err("expected `+` or `-`"),
            };
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let field = *self.ring.field();
        let mut coeff = 1u32;
        let mut mono = Monomial::ONE;
        let mut factors = 0;
        loop {
            if factors > 0 && self.peek() == Some(&Tok::Star) {
                self.at += 1;
                if !matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_))) {
                    return self.err("expected factor after `*`");
                }
            }
            match self.peek().cloned() {
                Some(Tok::Num(v)) => {
                    self.at += 1;
                    coeff = field.mul(coeff, (v % field.characteristic() as u64) as u32);
                }
                Some(Tok::Ident(name)) => {
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    self.at += 1;
                    let mut e = 1u64;
                    if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        match self.peek() {
                            Some(&Tok::Num(v)) => {
                                if v > u16::MAX as u64 / 2 {
                                    return self.err("exponent too large");
                                }
                                e = v;
                                self.at += 1;
                            }
                            _ => return self.err("expected exponent after `^`"),
                        }
                    }
                    let mut ex = vec![0u32; self.ring.nvars()];
                    ex[idx] = e as u32;
                    mono = mono.mul(&Monomial::from_exponents(&ex));
                }
                _ => break,
            }
            factors += 1;
        }
        if factors == 0 {
            return self.err("expected a term");
        }
        Ok(Poly::monomial(self.ring, coeff, mono))
    }
}

/// Parse a polynomial in the given ring.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        ring,
    };
    let f = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}
