//! Textual forms of objects.
//!
//! Decomposable objects render as box expressions with 1-based element
//! names, `3[]2((2[]3 6)[]1 4)[]2(1[]1 5)`, where `[]i` is the product with
//! cross label `i`. The parser also accepts `□` and subscript digits.
//! Every object has a raw form `n=2;k=3;edges=1-2:1:>,1-3:2:<,2-3:1:>` where
//! `>` orients an edge from the smaller name to the larger.

use super::family::{in_family, FamilyTag, Decomposer};
use super::object::{pair_count, Edge, GraphObject};
use crate::error::{Error, Result};

/// Box expression for members of M, raw form otherwise.
pub fn format_object(mu: &GraphObject) -> String {
    if in_family(mu, FamilyTag::M) {
        format_expr(mu).expect("member of M")
    } else {
        format_raw(mu)
    }
}

pub fn format_expr(mu: &GraphObject) -> Option<String> {
    match mu.k() {
        0 => return Some("0".into()),
        1 => return Some("1".into()),
        _ => {}
    }
    if !in_family(mu, FamilyTag::M) {
        return None;
    }
    let (dp, order) = Decomposer::new(mu);
    let mut out = String::new();
    render(&dp, &order, 0, mu.k(), &mut out);
    Some(out)
}

fn render(dp: &Decomposer, order: &[usize], lo: usize, hi: usize, out: &mut String) {
    if hi - lo == 1 {
        out.push_str(&(order[lo] + 1).to_string());
        return;
    }
    let mut cuts = Vec::new();
    let mut label = 0;
    for cut in lo + 1..hi {
        if let Some(l) = dp.cut_label(lo, cut, hi) {
            cuts.push(cut);
            label = l;
        }
    }
    cuts.push(hi);
    let mut start = lo;
    for (i, &end) in cuts.iter().enumerate() {
        if i > 0 {
            out.push_str("[]");
            out.push_str(&label.to_string());
            if end - start == 1 {
                out.push(' ');
            }
        }
        if end - start > 1 {
            out.push('(');
            render(dp, order, start, end, out);
            out.push(')');
        } else {
            render(dp, order, start, end, out);
        }
        start = end;
    }
}

pub fn format_raw(mu: &GraphObject) -> String {
    let mut parts = Vec::with_capacity(pair_count(mu.k()));
    for x in 0..mu.k() {
        for y in x + 1..mu.k() {
            let e = mu.edge(x, y);
            parts.push(format!("{}-{}:{}:{}", x + 1, y + 1, e.label, if e.forward { '>' } else { '<' }));
        }
    }
    format!("n={};k={};edges={}", mu.n(), mu.k(), parts.join(","))
}

/// Parses either textual form. A box expression needs the label bound `n`.
pub fn parse_object(text: &str, n: Option<u8>) -> Result<GraphObject> {
    let t = text.trim();
    if t.starts_with("n=") {
        parse_raw(t)
    } else {
        let n = n.ok_or_else(|| Error::Parse("box expression needs an explicit n".into()))?;
        parse_expr(t, n)
    }
}

pub fn parse_raw(text: &str) -> Result<GraphObject> {
    let bad = |m: &str| Error::Parse(format!("{m} in {text:?}"));
    let mut n = None;
    let mut k = None;
    let mut edges_txt = None;
    for field in text.trim().split(';') {
        let (key, val) = field.split_once('=').ok_or_else(|| bad("missing '='"))?;
        match key.trim() {
            "n" => n = Some(val.trim().parse::<u8>().map_err(|_| bad("bad n"))?),
            "k" => k = Some(val.trim().parse::<usize>().map_err(|_| bad("bad k"))?),
            "edges" => edges_txt = Some(val.trim()),
            _ => return Err(bad("unknown field")),
        }
    }
    let (n, k) = (n.ok_or_else(|| bad("missing n"))?, k.ok_or_else(|| bad("missing k"))?);
    let mut slots: Vec<Option<Edge>> = vec![None; pair_count(k)];
    for item in edges_txt.unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
        let mut it = item.trim().split(':');
        let (pair, label, dir) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(p), Some(l), Some(d), None) => (p, l, d),
            _ => return Err(bad("malformed edge")),
        };
        let (a, b) = pair.split_once('-').ok_or_else(|| bad("malformed pair"))?;
        let a: usize = a.trim().parse().map_err(|_| bad("bad element"))?;
        let b: usize = b.trim().parse().map_err(|_| bad("bad element"))?;
        if a == 0 || b == 0 || a > k || b > k || a == b {
            return Err(bad("element out of range"));
        }
        let label: u8 = label.trim().parse().map_err(|_| bad("bad label"))?;
        let a_to_b = match dir.trim() {
            ">" => true,
            "<" => false,
            _ => return Err(bad("bad direction")),
        };
        let (x, y, fwd) = if a < b { (a - 1, b - 1, a_to_b) } else { (b - 1, a - 1, !a_to_b) };
        let slot = &mut slots[super::object::pair_index(x, y, k)];
        if slot.is_some() {
            return Err(bad("duplicate edge"));
        }
        *slot = Some(Edge::new(label, fwd));
    }
    let edges = slots.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("missing edge"))?;
    GraphObject::new(n, k, edges)
}

enum Tree {
    Leaf(usize),
    Node(u8, Box<Tree>, Box<Tree>),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(usize),
    Box(u8),
    Open,
    Close,
}

fn subscript_digit(c: char) -> Option<u32> {
    ('₀'..='₉').contains(&c).then(|| c as u32 - '₀' as u32)
}

impl Lexer<'_> {
    /// Reads a run of ASCII digits, or of subscript digits when `allow_sub`
    /// and the run starts with one.
    fn number(&mut self, allow_sub: bool) -> Option<usize> {
        let sub = allow_sub && self.chars.peek().and_then(|&c| subscript_digit(c)).is_some();
        let mut v: Option<usize> = None;
        while let Some(&c) = self.chars.peek() {
            let d = if sub { subscript_digit(c) } else { c.to_digit(10) };
            match d {
                Some(d) => {
                    v = Some(v.unwrap_or(0) * 10 + d as usize);
                    self.chars.next();
                }
                None => break,
            }
        }
        v
    }

    fn tokens(mut self) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            match c {
                ' ' | '\t' => {
                    self.chars.next();
                }
                '(' => {
                    self.chars.next();
                    out.push(Tok::Open);
                }
                ')' => {
                    self.chars.next();
                    out.push(Tok::Close);
                }
                '[' | '□' => {
                    self.chars.next();
                    if c == '[' && self.chars.next() != Some(']') {
                        return Err(Error::Parse("expected ']'".into()));
                    }
                    let l = self.number(true).ok_or_else(|| Error::Parse("missing product label".into()))?;
                    out.push(Tok::Box(u8::try_from(l).map_err(|_| Error::Parse("label too large".into()))?));
                }
                c if c.is_ascii_digit() => {
                    let v = self.number(false).unwrap();
                    out.push(Tok::Num(v));
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn expr(&mut self) -> Result<Tree> {
        let mut lhs = self.term()?;
        while let Some(Tok::Box(l)) = self.toks.get(self.pos) {
            let l = *l;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Tree::Node(l, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Tree> {
        match self.toks.get(self.pos) {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                if v == 0 {
                    return Err(Error::Parse("element names start at 1".into()));
                }
                Ok(Tree::Leaf(v - 1))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::Close) {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(t)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn leaves(t: &Tree, out: &mut Vec<usize>) {
    match t {
        Tree::Leaf(x) => out.push(*x),
        Tree::Node(_, a, b) => {
            leaves(a, out);
            leaves(b, out);
        }
    }
}

fn fill(t: &Tree, mu: &mut GraphObject) -> Vec<usize> {
    match t {
        Tree::Leaf(x) => vec![*x],
        Tree::Node(l, a, b) => {
            let left = fill(a, mu);
            let right = fill(b, mu);
            for &x in &left {
                for &y in &right {
                    mu.set(x, y, *l, true);
                }
            }
            left.into_iter().chain(right).collect()
        }
    }
}

/// Parses a box expression over the element names `1..=k`.
pub fn parse_expr(text: &str, n: u8) -> Result<GraphObject> {
    let t = text.trim();
    if t == "0" {
        return Ok(GraphObject::trivial(n, 0));
    }
    let toks = Lexer { chars: t.chars().peekable() }.tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let tree = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    let mut names = Vec::new();
    leaves(&tree, &mut names);
    let k = names.len();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(Error::Parse(format!("element names must be exactly 1..={k}")));
    }
    let mut mu = GraphObject::chain(n.max(1), k, 1);
    fill(&tree, &mut mu);
    // re-validate labels against n
    GraphObject::new(n, k, mu.edges().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_round_trip() {
        for s in [
            "3[]2((2[]3 6)[]1 4)[]2(1[]1 5)",
            "(3[]2 4)[]1((5[]3 6)[]2(1[]1 2))",
            "1[]2 2[]2 3",
            "2[]3(1[]1 3)",
            "1",
        ] {
            let mu = parse_expr(s, 3).unwrap();
            assert_eq!(format_object(&mu), s);
        }
    }

    #[test]
    fn unicode_form() {
        let a = parse_expr("3□₂((2□₃6)□₁4)□₂(1□₁5)", 3).unwrap();
        let b = parse_expr("3[]2((2[]3 6)[]1 4)[]2(1[]1 5)", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn raw_form_round_trip() {
        let mut mu = GraphObject::chain(2, 3, 1);
        mu.set(2, 0, 2, true);
        let s = format_object(&mu);
        assert_eq!(s, "n=2;k=3;edges=1-2:1:>,1-3:2:<,2-3:1:>");
        assert_eq!(parse_object(&s, None).unwrap(), mu);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_expr("1[]2 3", 2).is_err());
        assert!(parse_expr("1[]3 2", 2).is_err());
        assert!(parse_expr("(1[]1 2", 2).is_err());
        assert!(parse_raw("n=2;k=2;edges=").is_err());
        assert!(parse_raw("n=2;k=2;edges=1-2:1:>,2-1:1:<").is_err());
        assert!(parse_object("1[]1 2", None).is_err());
    }
}
