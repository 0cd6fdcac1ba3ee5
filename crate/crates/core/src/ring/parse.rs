//! Text grammar for polynomials and matrices.
//!
//! ```text
//! poly    := ["+" | "-"] term { ("+" | "-") term }
//! term    := coeff [ ["*"] mono ] | mono
//! mono    := var { ["*"] var }
//! var     := "x" digits [ "^" ["-"] digits ]
//! coeff   := digits [ "/" digits ]
//! matrix  := "[" [ row { "," row } ] "]"
//! row     := "[" [ poly { "," poly } ] "]"
//! ```
//! Whitespace is ignored between tokens. Variables are numbered from 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::poly::{IntPoly, Monomial, RatPoly};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: msg.into() }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small(&mut self, what: &str) -> Result<i64> {
        let start = self.pos;
        let v = self.digits()?;
        i64::try_from(v).map_err(|_| Error::Parse { line: 1, column: start + 1, message: format!("{what} out of range") })
    }
}

fn parse_var(cur: &mut Cursor<'_>, mono: &mut [i64]) -> Result<()> {
    let at = cur.pos;
    cur.expect(b'x')?;
    // the index must follow the 'x' directly
    if !cur.src.get(cur.pos).is_some_and(u8::is_ascii_digit) {
        return Err(cur.err("expected variable index"));
    }
    let idx = cur.small("variable index")?;
    if idx < 1 || idx as usize > mono.len() {
        return Err(Error::Parse {
            line: 1,
            column: at + 1,
            message: format!("variable x{idx} outside dimension {}", mono.len()),
        });
    }
    let mut exp = 1i64;
    if cur.eat(b'^') {
        let neg = cur.eat(b'-');
        let e = cur.small("exponent")?;
        exp = if neg { -e } else { e };
    }
    mono[idx as usize - 1] += exp;
    Ok(())
}

fn parse_term(cur: &mut Cursor<'_>, dim: usize) -> Result<(Monomial, BigRational)> {
    let mut coeff = BigRational::one();
    let mut mono = vec![0i64; dim];
    let mut have_coeff = false;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let num = cur.digits()?;
        let den = if cur.eat(b'/') { cur.digits()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(cur.err("zero denominator"));
        }
        coeff = BigRational::new(num, den);
        have_coeff = true;
        if cur.eat(b'*') {
            if cur.peek() != Some(b'x') {
                return Err(cur.err("expected variable after '*'"));
            }
        } else if cur.peek() != Some(b'x') {
            return Ok((Monomial(mono), coeff));
        }
    }
    if cur.peek() != Some(b'x') {
        return Err(cur.err(if have_coeff { "expected variable" } else { "expected term" }));
    }
    parse_var(cur, &mut mono)?;
    loop {
        let save = cur.pos;
        if cur.eat(b'*') {
            if cur.peek() != Some(b'x') {
                return Err(cur.err("expected variable after '*'"));
            }
            parse_var(cur, &mut mono)?;
        } else if cur.peek() == Some(b'x') {
            parse_var(cur, &mut mono)?;
        } else {
            cur.pos = save;
            break;
        }
    }
    Ok((Monomial(mono), coeff))
}

fn parse_poly_at(cur: &mut Cursor<'_>, dim: usize) -> Result<RatPoly> {
    let mut terms = Vec::new();
    let mut sign = if cur.eat(b'-') {
        -BigRational::one()
    } else {
        cur.eat(b'+');
        BigRational::one()
    };
    loop {
        let (m, c) = parse_term(cur, dim)?;
        terms.push((m, c * &sign));
        if cur.eat(b'+') {
            sign = BigRational::one();
        } else if cur.eat(b'-') {
            sign = -BigRational::one();
        } else {
            break;
        }
    }
    Ok(RatPoly::from_terms(dim, terms))
}

/// Parses a polynomial with rational coefficients.
pub fn parse_rat_poly(text: &str, dim: usize) -> Result<RatPoly> {
    let mut cur = Cursor::new(text);
    let p = parse_poly_at(&mut cur, dim)?;
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(p)
}

pub fn parse_int_poly(text: &str, dim: usize) -> Result<IntPoly> {
    let p = parse_rat_poly(text, dim)?;
    p.to_integer().ok_or_else(|| Error::Parse { line: 1, column: 1, message: "expected integer coefficients".into() })
}

fn parse_matrix_at(cur: &mut Cursor<'_>, dim: usize) -> Result<Vec<Vec<RatPoly>>> {
    cur.expect(b'[')?;
    let mut rows = Vec::new();
    if cur.eat(b']') {
        return Ok(rows);
    }
    loop {
        cur.expect(b'[')?;
        let mut row = Vec::new();
        if !cur.eat(b']') {
            loop {
                row.push(parse_poly_at(cur, dim)?);
                if cur.eat(b']') {
                    break;
                }
                cur.expect(b',')?;
            }
        }
        if let Some(first) = rows.first() {
            let first: &Vec<RatPoly> = first;
            if first.len() != row.len() {
                return Err(cur.err("rows have different lengths"));
            }
        }
        rows.push(row);
        if cur.eat(b']') {
            break;
        }
        cur.expect(b',')?;
    }
    Ok(rows)
}

/// Parses `[[p, ...], ...]`. An empty list `[]` is the 0x0 matrix.
pub fn parse_rat_matrix(text: &str, dim: usize) -> Result<RatMatrix> {
    let mut cur = Cursor::new(text);
    let rows = parse_matrix_at(&mut cur, dim)?;
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input"));
    }
    RatMatrix::from_rows(dim, rows)
}

pub fn parse_int_matrix(text: &str, dim: usize) -> Result<IntMatrix> {
    parse_rat_matrix(text, dim)?
        .to_integer()
        .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "expected integer coefficients".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_display() {
        for (text, dim) in [
            ("2*x1^-1*x2 + 3", 2),
            ("x1^-2 + 2 + x1^2", 1),
            ("-x1 + 1/2", 1),
            ("0", 0),
            ("-7", 0),
        ] {
            let p = parse_rat_poly(text, dim).unwrap();
            let again = parse_rat_poly(&p.to_string(), dim).unwrap();
            assert_eq!(p, again, "{text}");
        }
        let p = parse_int_poly("2*x1^-1*x2 + 3", 2).unwrap();
        assert_eq!(p.to_string(), "2*x1^-1*x2 + 3");
    }

    #[test]
    fn implicit_multiplication_and_collection() {
        let a = parse_int_poly("3 x1 x2 - x2*x1 + 2x1x2", 2).unwrap();
        assert_eq!(a.to_string(), "4*x1*x2");
        let b = parse_int_poly("x1 - x1", 1).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn positioned_errors() {
        let e = parse_int_poly("1 + x3", 2).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 5, .. }), "{e:?}");
        let e = parse_rat_poly("1 +", 1).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 4, .. }), "{e:?}");
        assert!(parse_rat_poly("", 1).is_err());
        assert!(parse_rat_poly("1/0", 1).is_err());
        assert!(parse_int_poly("1/2", 1).is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_int_matrix("[[2, 1 + x1], [0, 2]]", 1).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.to_string(), "[[2, 1 + x1], [0, 2]]");
        assert_eq!(parse_int_matrix("[]", 1).unwrap().rows(), 0);
        assert!(parse_int_matrix("[[1, 2], [3]]", 0).is_err());
        let g = parse_rat_matrix("[[0, 1/2], [-1/2, 0]]", 0).unwrap();
        assert!(!g.is_integral());
    }
}
