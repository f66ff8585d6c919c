//! Salamon's notation: a Lie algebra given by the differentials of a dual
//! basis, e.g. `(0,0,21)` for the Heisenberg algebra.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

pub type Bindings = BTreeMap<String, Scalar>;

/// Parsed differentials: `entries[i]` lists `(c, (j, k))` meaning
/// `de^{i+1} ∋ c·e^j∧e^k` (1-indexed pairs, written order kept).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalamonTable {
    pub entries: Vec<Vec<(Scalar, (usize, usize))>>,
}

impl SalamonTable {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Structure constants from `de^i(e_j, e_k) = -e^i([e_j, e_k])`.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let dim = self.dim();
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, entry) in self.entries.iter().enumerate() {
            for (c, (j, k)) in entry {
                for idx in [*j, *k] {
                    if idx == 0 || idx > dim {
                        return Err(Error::IndexOutOfRange { index: idx, dim });
                    }
                }
                if j == k {
                    return Err(Error::DiagonalEntry(*j));
                }
                // e^{jk} with j > k is -e^{kj}
                let (lo, hi, sign) = if j < k { (*j, *k, -c.clone()) } else { (*k, *j, c.clone()) };
                *acc.entry((lo, hi, i + 1)).or_insert_with(Scalar::zero) += sign;
            }
        }
        let constants: Vec<_> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b, k), c)| (a, b, k, c)).collect();
        let l = LieAlgebra::new(dim, &constants)?;
        if !l.is_validated() {
            return Err(Error::JacobiFailed);
        }
        Ok(l)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    bindings: &'a Bindings,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    /// `+1`, `-1` or `None` for the next sign character.
    fn sign(&mut self) -> Option<Scalar> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(Scalar::one())
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(-Scalar::one())
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn table(&mut self) -> Result<SalamonTable> {
        self.expect('(')?;
        let mut entries = vec![self.entry()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    entries.push(self.entry()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected ',' or ')'"),
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(SalamonTable { entries })
    }

    fn entry(&mut self) -> Result<Vec<(Scalar, (usize, usize))>> {
        let mut terms = Vec::new();
        let mut sign = self.sign().unwrap_or_else(Scalar::one);
        loop {
            self.term(&sign, &mut terms)?;
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        Ok(terms)
    }

    /// A term, or the lone `0`.
    fn term(&mut self, sign: &Scalar, out: &mut Vec<(Scalar, (usize, usize))>) -> Result<()> {
        let start = self.pos;
        let Some(c) = self.peek() else { return self.err("unexpected end of input") };
        if c.is_ascii_digit() {
            let d = self.digits();
            match self.peek() {
                Some('/') => {
                    self.pos += 1;
                    let den = self.digits();
                    if den.is_empty() {
                        return self.err("expected denominator");
                    }
                    let den: Scalar = parse_int(&den);
                    if den.is_zero() {
                        self.pos = start;
                        return self.err("zero denominator");
                    }
                    let coeff = parse_int(&d) / den;
                    return self.scaled(sign * coeff, out);
                }
                Some('.') => return self.scaled(sign * parse_int(&d), out),
                _ => {}
            }
            if d == "0" {
                return Ok(());
            }
            if d.len() != 2 {
                self.pos = start;
                return self.err(format!("'{d}' is not an index pair"));
            }
            out.push((sign.clone(), pair(&d)));
            Ok(())
        } else if c.is_alphabetic() || c == '_' {
            let name_start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '\'') {
                self.pos += 1;
            }
            let name: String = self.chars[name_start..self.pos].iter().collect();
            let value = self.bindings.get(&name).cloned().ok_or(Error::UnboundParameter(name))?;
            if self.peek() != Some('.') {
                return self.err("expected '.' after a coefficient");
            }
            self.scaled(sign * value, out)
        } else {
            self.err(format!("unexpected '{c}'"))
        }
    }

    /// After a coefficient: `.pair` or `.(pair ± pair …)`.
    fn scaled(&mut self, coeff: Scalar, out: &mut Vec<(Scalar, (usize, usize))>) -> Result<()> {
        self.expect('.')?;
        if self.peek() == Some('(') {
            self.pos += 1;
            let mut sign = self.sign().unwrap_or_else(Scalar::one);
            loop {
                let p = self.pair()?;
                out.push((&coeff * &sign, p));
                match self.sign() {
                    Some(s) => sign = s,
                    None => break,
                }
            }
            self.expect(')')
        } else {
            let p = self.pair()?;
            out.push((coeff, p));
            Ok(())
        }
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        let d = self.digits();
        if d.len() != 2 {
            self.pos = start;
            return self.err("expected a two-digit index pair");
        }
        Ok(pair(&d))
    }
}

fn parse_int(digits: &str) -> Scalar {
    Scalar::from_integer(digits.parse().expect("ascii digits"))
}

fn pair(d: &str) -> (usize, usize) {
    let b = d.as_bytes();
    ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
}

pub fn parse_salamon_table(text: &str, bindings: &Bindings) -> Result<SalamonTable> {
    Parser { chars: text.chars().collect(), pos: 0, bindings }.table()
}

/// Parses the notation and builds the algebra, rejecting tables that fail
/// the Jacobi identity.
pub fn parse_salamon(text: &str, bindings: &Bindings) -> Result<LieAlgebra> {
    let table = parse_salamon_table(text, bindings)?;
    if table.dim() > 9 {
        return Err(Error::InvalidInput("at most 9 basis vectors are supported".into()));
    }
    table.to_algebra()
}

/// Convenience for strings without parameters.
pub fn salamon(text: &str) -> Result<LieAlgebra> {
    parse_salamon(text, &Bindings::new())
}

/// Terms in ascending pair order; a negative coefficient is written with
/// the pair reversed, so `[e1, e2] = e2` renders as `(0,21)`.
pub fn render_salamon(l: &LieAlgebra) -> String {
    let n = l.dim();
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut terms = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                // coefficient of e^{jk} in de^i
                let d = -l.basis_bracket(j, k)[i].clone();
                if d.is_zero() {
                    continue;
                }
                let (a, b) = if d.is_negative() { (k + 1, j + 1) } else { (j + 1, k + 1) };
                let mag = d.abs();
                if mag.is_one() {
                    terms.push(format!("{a}{b}"));
                } else {
                    terms.push(format!("{}.{a}{b}", format_scalar(&mag)));
                }
            }
        }
        entries.push(if terms.is_empty() { "0".to_string() } else { terms.join("+") });
    }
    format!("({})", entries.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{aff_r, heisenberg};
    use crate::scalar::{int, q};

    #[test]
    fn basic_strings() {
        assert_eq!(salamon("(0,21)").unwrap(), aff_r());
        assert_eq!(salamon("(0,0,21)").unwrap(), heisenberg());
        assert_eq!(render_salamon(&aff_r()), "(0,21)");
        assert_eq!(render_salamon(&heisenberg()), "(0,0,21)");
        assert_eq!(render_salamon(&LieAlgebra::abelian(3)), "(0,0,0)");
    }

    #[test]
    fn grouped_coefficients_and_parameters() {
        let a = salamon("(-15+16,-25+26,2.(35+46),2.(36+45),0,0)").unwrap();
        assert_eq!(salamon(&render_salamon(&a)).unwrap(), a);
        let mut b = Bindings::new();
        b.insert("l".into(), int(0));
        let r = parse_salamon("(0,l.21+31,-21+l.31)", &b).unwrap();
        assert_eq!(r, salamon("(0,31,-21)").unwrap());
        b.insert("l".into(), q(1, 2));
        let r = parse_salamon("(0,l.21+31,-21+l.31)", &b).unwrap();
        assert_eq!(salamon(&render_salamon(&r)).unwrap(), r);
    }

    #[test]
    fn errors() {
        assert!(matches!(salamon("(0,21"), Err(Error::Syntax { .. })));
        assert!(matches!(salamon("(0,2x)"), Err(Error::Syntax { .. })));
        assert!(matches!(salamon("(0,211)"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_salamon("(0,t.21)", &Bindings::new()), Err(Error::UnboundParameter(_))));
        assert!(matches!(salamon("(0,22)"), Err(Error::DiagonalEntry(2))));
        assert!(matches!(salamon("(0,31)"), Err(Error::IndexOutOfRange { .. })));
        // d(de^3) = -e^{123} ≠ 0
        assert!(matches!(salamon("(13,0,12)"), Err(Error::JacobiFailed)));
    }
}
