//! `3/2 * a.b ; c - v + d` denotes `(3/2)·ab·c* − v + d`.
//!
//! Edge names may themselves contain `.`, so a dotted path is split into
//! edge names in every composable way; exactly one reading must exist.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Lpa, LpaElement};
use crate::error::{Error, Result};
use crate::graph::PathSeq;

fn syntax(message: String) -> Error {
    Error::Parse { line: 0, message }
}

impl Lpa<'_> {
    /// Resolves a path written as a vertex name or dotted edge names.
    pub fn parse_path(&self, s: &str) -> Result<PathSeq> {
        let g = self.graph();
        let mut readings: Vec<PathSeq> = Vec::new();
        if let Some(v) = g.vertex(s) {
            readings.push(PathSeq::vertex(v));
        }
        let parts: Vec<&str> = s.split('.').collect();
        // ways[i]: edge sequences spelling parts[..i].
        let mut ways: Vec<Vec<Vec<_>>> = vec![Vec::new(); parts.len() + 1];
        ways[0].push(Vec::new());
        for end in 1..=parts.len() {
            for start in 0..end {
                if ways[start].is_empty() {
                    continue;
                }
                let Some(e) = g.edge(&parts[start..end].join(".")) else { continue };
                let extended: Vec<Vec<_>> = ways[start]
                    .iter()
                    .map(|w: &Vec<_>| {
                        let mut w = w.clone();
                        w.push(e);
                        w
                    })
                    .collect();
                ways[end].extend(extended);
            }
        }
        readings.extend(ways[parts.len()].drain(..).filter_map(|w| PathSeq::from_edges(g, w)));
        match readings.len() {
            1 => Ok(readings.pop().expect("one reading")),
            0 => Err(syntax(format!("`{s}` is neither a vertex nor a path"))),
            _ => Err(syntax(format!("`{s}` can be read as a path in more than one way"))),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<LpaElement> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(syntax("empty element".into()));
        }
        if compact == "0" && self.graph().vertex("0").is_none() {
            return Ok(LpaElement::zero());
        }
        let mut out = LpaElement::zero();
        let mut sign = BigRational::one();
        let mut term = String::new();
        let mut chars = compact.chars().peekable();
        let mut first = true;
        while let Some(c) = chars.next() {
            if c == '+' || c == '-' {
                if !term.is_empty() {
                    out = &out + &self.parse_term(&term)?.scale(&sign);
                    term.clear();
                } else if !first {
                    return Err(syntax(format!("missing term before `{c}` in `{s}`")));
                }
                sign = if c == '-' { -BigRational::one() } else { BigRational::one() };
            } else {
                term.push(c);
            }
            first = false;
            if chars.peek().is_none() {
                if term.is_empty() {
                    return Err(syntax(format!("trailing operator in `{s}`")));
                }
                out = &out + &self.parse_term(&term)?.scale(&sign);
            }
        }
        Ok(out)
    }

    fn parse_term(&self, term: &str) -> Result<LpaElement> {
        let (coef, body) = match term.split_once('*') {
            Some((c, rest)) => (parse_rational(c)?, rest),
            None => (BigRational::one(), term),
        };
        let (a, b) = match body.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (body, None),
        };
        let alpha = self.parse_path(a)?;
        let beta = match b {
            Some(b) => self.parse_path(b)?,
            None => PathSeq::vertex(alpha.range()),
        };
        if alpha.range() != beta.range() {
            return Err(syntax(format!("`{a}` and `{}` end at different vertices", b.unwrap_or(""))));
        }
        Ok(LpaElement::monomial(coef, alpha, beta))
    }

    /// Inverse of [`Lpa::parse_element`] on graphs whose dotted names are
    /// unambiguous.
    pub fn display(&self, x: &LpaElement) -> String {
        let g = self.graph();
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, m) in x.monomials().enumerate() {
            let negative = m.coef.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let c = m.coef.abs();
            if !c.is_one() {
                out.push_str(&format!("{c} * "));
            }
            out.push_str(&m.alpha.display(g));
            if !m.beta.is_vertex() {
                out.push_str(" ; ");
                out.push_str(&m.beta.display(g));
            }
        }
        out
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || syntax(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    #[test]
    fn parses_terms() {
        let g = tailed_cycle();
        let l = Lpa::new(&g);
        let x = l.parse_element("3/2 * g1.f1 ; c - 4 + a").unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(l.display(&x), l.display(&l.parse_element(&l.display(&x)).unwrap()));
        assert_eq!(l.parse_element(&l.display(&x)).unwrap(), x);
        assert!(l.parse_element("0").unwrap().is_zero());
        assert_eq!(l.parse_element("-a;a").unwrap(), (&l.edge("a").unwrap() * &l.ghost("a").unwrap()).scale(&-BigRational::one()));
        assert_eq!(l.parse_element("  1 ;  1 ").unwrap(), l.vertex("1").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let g = tailed_cycle();
        let l = Lpa::new(&g);
        for bad in ["", "a + ", "x", "a.a", "a ; b", "1/0 * a", "q * a", "a +- b"] {
            assert!(l.parse_element(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn dotted_names_resolve() {
        let g = Graph::parse("vertex v\nvertex v.h1\nedge v.e1 v.h1 v\nedge l v v\n").unwrap();
        let l = Lpa::new(&g);
        let p = l.parse_path("v.e1.l").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(l.parse_path("v.h1").unwrap(), PathSeq::vertex(g.vertex("v.h1").unwrap()));

        let amb = Graph::parse("vertex v\nedge a v v\nedge b v v\nedge a.b v v\n").unwrap();
        assert!(Lpa::new(&amb).parse_path("a.b").is_err());
    }
}
