//! Plain-text formats for diagrams, combinations, formulas and bases.
//!
//! ```text
//! gauss K=5 n=2
//! tail=0 head=2 sign=+ mark=1
//! tail=3 head=1 sign=- mark=4
//! ```
//!
//! Arrow diagrams use the header keyword `arrow` and omit the `sign=` field.
//! A combination is a sequence of `coef=p/q` lines, each followed by a
//! diagram block, separated by `---`. A formula file starts with
//! `formula K=<int>`; a basis file is a list of formula files separated by `===`.
//! Degenerate diagrams are written (not read) with the header `degenerate`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::based::DegenerateDiagram;
use crate::diagram::{Arrow, Decoration, Diagram, DiagramError, Sign};
use crate::lincomb::{LinComb, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

pub fn write_diagram<D: Decoration>(d: &Diagram<D>) -> String {
    let mut s = format!("{} K={} n={}\n", D::SPECIES, d.k(), d.degree());
    for a in d.arrows() {
        if D::SIGNED {
            writeln!(s, "tail={} head={} sign={} mark={}", a.tail, a.head, a.deco.sign(), a.mark).unwrap();
        } else {
            writeln!(s, "tail={} head={} mark={}", a.tail, a.head, a.mark).unwrap();
        }
    }
    s
}

pub fn write_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn write_lincomb<D: Decoration>(x: &LinComb<Diagram<D>>) -> String {
    let mut s = String::new();
    for (i, (d, c)) in x.iter().enumerate() {
        if i > 0 {
            s.push_str("---\n");
        }
        writeln!(s, "coef={}", write_rational(c)).unwrap();
        s.push_str(&write_diagram(d));
    }
    s
}

/// A degenerate diagram through its stored resolution: positions run from
/// the endpoint just after the fused point, so the fused endpoints are the
/// last and the first position.
pub fn write_degenerate(dd: &DegenerateDiagram) -> String {
    let b = dd.resolution();
    let mut pos = vec![(0, 0); b.degree()];
    for (p, e) in b.ends().iter().enumerate() {
        if e.head {
            pos[e.arrow].1 = p;
        } else {
            pos[e.arrow].0 = p;
        }
    }
    let mut s = format!("degenerate K={} n={}\n", b.k(), b.degree());
    for (i, (t, h)) in pos.iter().enumerate() {
        writeln!(s, "tail={t} head={h} mark={}", b.chords()[i].mark).unwrap();
    }
    s
}

pub fn write_degenerate_lincomb(x: &LinComb<DegenerateDiagram>) -> String {
    let mut s = String::new();
    for (i, (d, c)) in x.iter().enumerate() {
        if i > 0 {
            s.push_str("---\n");
        }
        writeln!(s, "coef={}", write_rational(c)).unwrap();
        s.push_str(&write_degenerate(d));
    }
    s
}

/// Lines with their 1-based numbers, blank lines and `#` comments removed.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, first_line: usize) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + first_line, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { items, at: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.at).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let x = self.peek();
        self.at += 1;
        x
    }

    fn last_line(&self) -> usize {
        self.items.last().map(|x| x.0).unwrap_or(1)
    }
}

/// Parses `key=value` fields, requiring exactly the given keys in order.
fn fields<'a>(line: usize, text: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, ParseError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != keys.len() {
        return err(line, format!("expected fields {}", keys.join(" ")));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(p, k)| match p.split_once('=') {
            Some((a, v)) if a == *k => Ok(v),
            _ => err(line, format!("expected `{k}=`, found `{p}`")),
        })
        .collect()
}

fn int<T: std::str::FromStr>(line: usize, v: &str, what: &str) -> Result<T, ParseError> {
    v.parse().or_else(|_| err(line, format!("invalid {what} `{v}`")))
}

fn parse_diagram_lines<D: Decoration>(lines: &mut Lines<'_>) -> Result<Diagram<D>, ParseError> {
    let Some((ln, header)) = lines.next() else {
        return err(lines.last_line(), "missing diagram header");
    };
    let mut parts = header.splitn(2, ' ');
    let species = parts.next().unwrap_or("");
    if species != D::SPECIES {
        return err(ln, format!("expected `{}` header, found `{species}`", D::SPECIES));
    }
    let f = fields(ln, parts.next().unwrap_or(""), &["K", "n"])?;
    let k: i64 = int(ln, f[0], "K")?;
    let n: usize = int(ln, f[1], "n")?;
    let keys: &[&str] = if D::SIGNED { &["tail", "head", "sign", "mark"] } else { &["tail", "head", "mark"] };
    let mut arrows = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((al, text)) = lines.next() else {
            return err(lines.last_line(), format!("expected {n} arrow lines"));
        };
        let f = fields(al, text, keys)?;
        let tail = int(al, f[0], "tail")?;
        let head = int(al, f[1], "head")?;
        let (sign, mark) = if D::SIGNED {
            let s = match f[2] {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                other => return err(al, format!("invalid sign `{other}`")),
            };
            (s, int(al, f[3], "mark")?)
        } else {
            (Sign::Pos, int(al, f[2], "mark")?)
        };
        arrows.push(Arrow { tail, head, mark, deco: D::from_sign(sign) });
    }
    Diagram::new(k, arrows).map_err(|e: DiagramError| ParseError { line: ln, message: e.to_string() })
}

pub fn parse_diagram<D: Decoration>(text: &str) -> Result<Diagram<D>, ParseError> {
    let mut lines = Lines::new(text, 1);
    let d = parse_diagram_lines(&mut lines)?;
    if let Some((ln, _)) = lines.peek() {
        return err(ln, "trailing content after diagram");
    }
    Ok(d)
}

fn parse_rational(line: usize, v: &str) -> Result<Rational, ParseError> {
    let (p, q) = v.split_once('/').unwrap_or((v, "1"));
    let p: BigInt = int(line, p, "numerator")?;
    let q: BigInt = int(line, q, "denominator")?;
    if q.is_zero() {
        return err(line, "zero denominator");
    }
    Ok(Rational::new(p, q))
}

fn parse_lincomb_lines<D: Decoration>(lines: &mut Lines<'_>) -> Result<LinComb<Diagram<D>>, ParseError> {
    let mut x = LinComb::zero();
    let mut first = true;
    while let Some((ln, text)) = lines.peek() {
        if !first {
            if text != "---" {
                return err(ln, "expected `---` separator");
            }
            lines.next();
        }
        first = false;
        let Some((cl, text)) = lines.next() else {
            return err(lines.last_line(), "expected `coef=` after separator");
        };
        let f = fields(cl, text, &["coef"])?;
        let c = parse_rational(cl, f[0])?;
        let d = parse_diagram_lines::<D>(lines)?;
        x.add_term(d, c);
    }
    Ok(x)
}

pub fn parse_lincomb<D: Decoration>(text: &str) -> Result<LinComb<Diagram<D>>, ParseError> {
    parse_lincomb_lines(&mut Lines::new(text, 1))
}

/// `(K, vector)` of a formula file.
pub fn write_formula_text(k: i64, x: &LinComb<Diagram<()>>) -> String {
    format!("formula K={k}\n{}", write_lincomb(x))
}

pub fn parse_formula_text(text: &str) -> Result<(i64, LinComb<Diagram<()>>), ParseError> {
    parse_formula_from(&mut Lines::new(text, 1))
}

fn parse_formula_from(lines: &mut Lines<'_>) -> Result<(i64, LinComb<Diagram<()>>), ParseError> {
    let Some((ln, header)) = lines.next() else {
        return err(1, "missing `formula` header");
    };
    let Some(rest) = header.strip_prefix("formula ") else {
        return err(ln, "expected `formula K=<int>` header");
    };
    let f = fields(ln, rest, &["K"])?;
    let k: i64 = int(ln, f[0], "K")?;
    let x = parse_lincomb_lines::<()>(lines)?;
    if let Some((d, _)) = x.iter().find(|(d, _)| d.k() != k) {
        return err(ln, format!("term with K={} in a formula with K={k}", d.k()));
    }
    Ok((k, x))
}

pub fn write_basis_text(k: i64, basis: &[LinComb<Diagram<()>>]) -> String {
    basis.iter().map(|x| write_formula_text(k, x)).collect::<Vec<_>>().join("===\n")
}

pub fn parse_basis_text(text: &str) -> Result<Vec<(i64, LinComb<Diagram<()>>)>, ParseError> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start = 1;
    for (i, l) in text.lines().enumerate() {
        if l.trim() == "===" {
            out.push(parse_formula_from(&mut Lines::new(&chunk, chunk_start))?);
            chunk.clear();
            chunk_start = i + 2;
        } else {
            chunk.push_str(l);
            chunk.push('\n');
        }
    }
    if !chunk.trim().is_empty() {
        out.push(parse_formula_from(&mut Lines::new(&chunk, chunk_start))?);
    }
    Ok(out)
}
