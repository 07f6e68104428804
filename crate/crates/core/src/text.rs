//! Text formats: the quiver, representation and dimension-vector grammars read by
//! the command line, and the DOT / JSON renderings of degeneration posets.
//!
//! ```text
//! quiver := "A" n (":" ("F" | "B")*)?        n - 1 flags; may be omitted for n = 1
//! rep    := "" | term ("," term)*
//! term   := "[" a "," b "]" ("x" k)?
//! dim    := d ("," d)*
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use crate::degen::{bongartz_data_of_cover, DegenPoset};
use crate::error::{Error, Result};
use crate::homalg::PathAlgebra;
use crate::quiver::{Arrow, DimVector, Interval, RepClass, TypeAQuiver};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn done(&self) -> bool {
        self.pos == self.src.len()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }
}

pub fn parse_quiver(text: &str) -> Result<TypeAQuiver> {
    let mut c = Cursor::new(text);
    c.expect(b'A')?;
    let n_pos = c.pos;
    let n = c.number()?;
    if n == 0 {
        c.pos = n_pos;
        return c.err("a quiver needs at least one vertex");
    }
    let mut orient = Vec::new();
    if c.peek() == Some(b':') {
        c.pos += 1;
        while let Some(ch) = c.peek() {
            orient.push(match ch {
                b'F' => Arrow::Forward,
                b'B' => Arrow::Backward,
                _ => return c.err("orientation flags are F or B"),
            });
            c.pos += 1;
        }
    } else if !c.done() {
        return c.err("expected ':' after the vertex count");
    }
    if orient.len() != n - 1 {
        return c.err(format!("A{n} needs {} orientation flags, got {}", n - 1, orient.len()));
    }
    TypeAQuiver::new(n, orient)
}

pub fn parse_rep(text: &str, q: &TypeAQuiver) -> Result<RepClass> {
    let mut c = Cursor::new(text);
    let mut m = RepClass::empty();
    c.skip_ws();
    if c.done() {
        return Ok(m);
    }
    loop {
        c.expect(b'[')?;
        let start = c.pos;
        let a = c.number()?;
        c.expect(b',')?;
        let b = c.number()?;
        c.expect(b']')?;
        if a < 1 || a > b || b > q.n() {
            c.pos = start;
            return c.err(format!("[{a},{b}] is not an interval of 1..={}", q.n()));
        }
        let u = Interval::new(a, b)?;
        c.skip_ws();
        let k = if c.peek() == Some(b'x') {
            c.pos += 1;
            let k_pos = c.pos;
            let k = c.number()?;
            if k == 0 {
                c.pos = k_pos;
                return c.err("multiplicity must be positive");
            }
            k
        } else {
            1
        };
        m.add(u, k);
        c.skip_ws();
        if c.done() {
            return Ok(m);
        }
        c.expect(b',')?;
    }
}

pub fn parse_dim(text: &str, q: &TypeAQuiver) -> Result<DimVector> {
    let mut c = Cursor::new(text);
    let mut v = vec![c.number()?];
    loop {
        c.skip_ws();
        if c.done() {
            break;
        }
        c.expect(b',')?;
        v.push(c.number()?);
    }
    let d = DimVector(v);
    q.check_dim(&d)?;
    Ok(d)
}

/// Comma-separated positive integers, e.g. the index tuple of a PBW representation.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    let mut c = Cursor::new(text);
    let mut v = vec![c.number()?];
    loop {
        c.skip_ws();
        if c.done() {
            return Ok(v);
        }
        c.expect(b',')?;
        v.push(c.number()?);
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with nodes labelled by canonical representation text and cover
/// edges `N -> M` labelled by `(X1, S1)`.
pub fn poset_dot(alg: &PathAlgebra, poset: &DegenPoset) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "digraph degenerations {{").unwrap();
    writeln!(out, "  label=\"{} d={}\";", poset.quiver, poset.dim).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, m) in poset.nodes.iter().enumerate() {
        let label = if m.is_empty() { "0".to_string() } else { m.to_string() };
        writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&label)).unwrap();
    }
    for &(i, j) in &poset.covers {
        let bd = bongartz_data_of_cover(alg, &poset.nodes[i], &poset.nodes[j])?;
        writeln!(out, "  n{i} -> n{j} [label=\"({}, {})\"];", bd.x1, bd.s1).unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[derive(Serialize)]
pub struct PosetCover {
    pub lower: usize,
    pub upper: usize,
    pub m: RepClass,
    pub n: RepClass,
    pub x1: Interval,
    pub s1: Interval,
}

#[derive(Serialize)]
pub struct PosetReport {
    pub quiver: TypeAQuiver,
    pub dim: DimVector,
    pub nodes: Vec<RepClass>,
    pub covers: Vec<PosetCover>,
}

pub fn poset_report(alg: &PathAlgebra, poset: &DegenPoset) -> Result<PosetReport> {
    let covers = poset
        .covers
        .iter()
        .map(|&(i, j)| {
            let bd = bongartz_data_of_cover(alg, &poset.nodes[i], &poset.nodes[j])?;
            Ok(PosetCover { lower: i, upper: j, m: bd.m, n: bd.n, x1: bd.x1, s1: bd.s1 })
        })
        .collect::<Result<_>>()?;
    Ok(PosetReport { quiver: poset.quiver.clone(), dim: poset.dim.clone(), nodes: poset.nodes.clone(), covers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degen::degeneration_poset;

    #[test]
    fn quivers() {
        let q = parse_quiver("A3:FB").unwrap();
        assert_eq!(q.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
        assert_eq!(parse_quiver("A2:F").unwrap(), TypeAQuiver::equioriented(2));
        assert_eq!(parse_quiver("A1").unwrap(), TypeAQuiver::equioriented(1));
        assert_eq!(parse_quiver("A1:").unwrap(), TypeAQuiver::equioriented(1));
        assert!(matches!(parse_quiver("A3:FFF"), Err(Error::Parse { .. })));
        assert!(matches!(parse_quiver("A3:FX"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_quiver("A0").is_err());
        assert!(parse_quiver("B3:FF").is_err());
        assert!(parse_quiver("A3").is_err());
    }

    #[test]
    fn reps() {
        let q = TypeAQuiver::equioriented(2);
        let m = parse_rep("[1,2]x2,[1,1]", &q).unwrap();
        assert_eq!(m.to_string(), "[1,1],[1,2]x2");
        assert_eq!(parse_rep("", &q).unwrap(), RepClass::empty());
        assert_eq!(parse_rep("[1,1], [1,1]", &q).unwrap().multiplicity(&Interval::new(1, 1).unwrap()), 2);
        let q3 = TypeAQuiver::equioriented(3);
        assert!(matches!(parse_rep("[1,4]", &q3), Err(Error::Parse { pos: 1, .. })));
        assert!(parse_rep("[2,1]", &q3).is_err());
        assert!(parse_rep("[1,1]x0", &q3).is_err());
        assert!(parse_rep("[1,1],", &q3).is_err());
    }

    #[test]
    fn dims() {
        let q = TypeAQuiver::equioriented(3);
        assert_eq!(parse_dim("1,2,1", &q).unwrap(), DimVector(vec![1, 2, 1]));
        assert!(parse_dim("1,2", &q).is_err());
        assert!(parse_dim("1,,2", &q).is_err());
        assert_eq!(parse_list("1,3").unwrap(), vec![1, 3]);
    }

    #[test]
    fn dot_output() {
        let q = TypeAQuiver::equioriented(2);
        let alg = PathAlgebra::new(&q).unwrap();
        let poset = degeneration_poset(&alg, &DimVector(vec![1, 1])).unwrap();
        let dot = poset_dot(&alg, &poset).unwrap();
        assert!(dot.contains("[label=\"[1,2]\"]"));
        assert!(dot.contains("[label=\"[1,1],[2,2]\"]"));
        assert!(dot.contains("label=\"([2,2], [1,1])\""));
        let report = poset_report(&alg, &poset).unwrap();
        assert_eq!(report.covers.len(), 1);
    }
}
