//! Polynomial text format.
//!
//! ```text
//! expression := sign* term (sign+ term)*
//! sign       := '+' | '-'
//! term       := coeff | coeff '*' monomial | monomial
//! coeff      := rational ['*' sqrt] | sqrt
//! rational   := int ['/' uint]
//! sqrt       := 'sqrt(' ['-'] int ')'
//! monomial   := var ['^' uint] ('*' var ['^' uint])*
//! var        := [A-Za-z][A-Za-z0-9]*
//! ```
//! Whitespace is ignored. Positions in errors are byte offsets.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::Polynomial;
use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent at {pos} is not a nonnegative integer")]
    BadExponent { pos: usize },
    #[error("coefficients mix sqrt({0}) and sqrt({1})")]
    MixedFields(i64, i64),
    #[error("zero denominator at {pos}")]
    ZeroDenominator { pos: usize },
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Some(t.parse().unwrap())
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            Some((start, String::from_utf8(self.s[start..self.pos].to_vec()).unwrap()))
        } else {
            None
        }
    }

    fn looking_at_sqrt(&mut self) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(b"sqrt") && {
            let mut k = self.pos + 4;
            while k < self.s.len() && (self.s[k] as char).is_whitespace() {
                k += 1;
            }
            self.s.get(k) == Some(&b'(')
        }
    }
}

fn parse_sqrt(lx: &mut Lexer) -> Result<Coeff, ParseError> {
    lx.ident();
    if !lx.eat(b'(') {
        return lx.err("expected `(` after sqrt");
    }
    let neg = lx.eat(b'-');
    let n = match lx.uint() {
        Some(n) => n,
        None => return lx.err("expected integer inside sqrt(...)"),
    };
    if !lx.eat(b')') {
        return lx.err("expected `)`");
    }
    let n: i64 = match i64::try_from(if neg { -n } else { n }) {
        Ok(v) => v,
        Err(_) => return lx.err("radicand too large"),
    };
    Ok(Coeff::sqrt_int(n))
}

fn parse_term(lx: &mut Lexer, vars: &[String]) -> Result<(Vec<u32>, Coeff), ParseError> {
    let mut coeff = Coeff::one();
    let mut exp = vec![0u32; vars.len()];
    let mut seen_number = false;
    let mut seen_sqrt = false;
    let mut seen_var = false;
    loop {
        let c = match lx.peek() {
            Some(c) => c,
            None => return lx.err("unexpected end of input"),
        };
        if c.is_ascii_digit() {
            if seen_number || seen_sqrt || seen_var {
                return lx.err("coefficient must come first in a term");
            }
            let num = lx.uint().unwrap();
            let mut r = BigRational::from_integer(num);
            if lx.eat(b'/') {
                let pos = lx.pos;
                let den = match lx.uint() {
                    Some(d) => d,
                    None => return lx.err("expected denominator"),
                };
                if den.is_zero() {
                    return Err(ParseError::ZeroDenominator { pos });
                }
                r /= BigRational::from_integer(den);
            }
            coeff = &coeff * &Coeff::from_rational(r);
            seen_number = true;
        } else if lx.looking_at_sqrt() {
            if seen_sqrt || seen_var {
                return lx.err("sqrt(...) must precede the monomial and appear once");
            }
            let s = parse_sqrt(lx)?;
            if !coeff.is_rational() && s.radicand() != coeff.radicand() {
                return Err(ParseError::MixedFields(coeff.radicand(), s.radicand()));
            }
            coeff = &coeff * &s;
            seen_sqrt = true;
        } else if c.is_ascii_alphabetic() {
            let (pos, name) = lx.ident().unwrap();
            let i = match vars.iter().position(|v| *v == name) {
                Some(i) => i,
                None => return Err(ParseError::UnknownVariable { pos, name }),
            };
            let mut k = 1u32;
            if lx.eat(b'^') {
                let epos = lx.pos;
                let neg = lx.peek() == Some(b'-');
                match lx.uint() {
                    Some(n) if !neg => {
                        k = u32::try_from(n).map_err(|_| ParseError::BadExponent { pos: epos })?;
                        // reject `x^2.5` and `x^2/3`
                        if matches!(lx.peek(), Some(b'.') | Some(b'/')) {
                            return Err(ParseError::BadExponent { pos: epos });
                        }
                    }
                    _ => return Err(ParseError::BadExponent { pos: epos }),
                }
            }
            exp[i] += k;
            seen_var = true;
        } else {
            return lx.err("expected a number, sqrt(...) or a variable");
        }
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
            continue;
        }
        if lx.peek() == Some(b'.') {
            return lx.err("decimal numbers are not supported; use a fraction");
        }
        break;
    }
    Ok((exp, coeff))
}

/// Parse `text` over the given variable list.
pub fn parse(text: &str, vars: &[&str]) -> Result<Polynomial, ParseError> {
    let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    parse_with(text, v)
}

pub(crate) fn parse_with(text: &str, vars: Vec<String>) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut out = Polynomial::zero_in(vars.clone());
    let mut field = 1i64;
    let mut first = true;
    loop {
        let mut neg = if lx.eat(b'-') {
            true
        } else if lx.eat(b'+') {
            false
        } else if first {
            false
        } else if lx.peek().is_none() {
            break;
        } else {
            return lx.err("expected `+` or `-`");
        };
        // `a + -b`, `a - -b`
        loop {
            if lx.eat(b'-') {
                neg = !neg;
            } else if !lx.eat(b'+') {
                break;
            }
        }
        let (e, c) = parse_term(&mut lx, &vars)?;
        field = Coeff::common_field(field, c.radicand())
            .ok_or(ParseError::MixedFields(field, c.radicand()))?;
        out.add_term(e, if neg { -c } else { c });
        first = false;
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// Natural ordering of identifiers: `X2 < X10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let split = |s: &str| {
        let i = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (p, n) = s.split_at(i);
        (p.to_string(), n.parse::<u64>().ok(), n.to_string())
    };
    let (pa, na, sa) = split(a);
    let (pb, nb, sb) = split(b);
    pa.cmp(&pb).then(na.cmp(&nb)).then(sa.cmp(&sb))
}

/// Parse with the variable list inferred from the identifiers present,
/// sorted naturally.
pub fn parse_auto(text: &str) -> Result<Polynomial, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    while lx.pos < lx.s.len() {
        if lx.s[lx.pos].is_ascii_alphabetic() {
            let (_, id) = lx.ident().unwrap();
            if id != "sqrt" && !names.contains(&id) {
                names.push(id);
            }
        } else if lx.s[lx.pos].is_ascii_digit() {
            while lx.pos < lx.s.len() && lx.s[lx.pos].is_ascii_alphanumeric() {
                lx.pos += 1;
            }
        } else {
            lx.pos += 1;
        }
    }
    names.sort_by(|a, b| natural_cmp(a, b));
    parse_with(text, names)
}

/// Contents of a `.poly` file: `#` comments, an optional `vars:` line and an
/// expression that may span several lines.
#[derive(Debug, Clone)]
pub struct PolyFile {
    pub poly: Polynomial,
    pub declared_vars: bool,
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("vars:") {
            vars = Some(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.to_string())
                    .collect(),
            );
            body.push('\n');
            continue;
        }
        body.push_str(line);
        body.push('\n');
    }
    if body.trim().is_empty() {
        return Err(ParseError::Syntax { pos: 0, msg: "empty polynomial file".into() });
    }
    let declared = vars.is_some();
    let poly = match vars {
        Some(v) => parse_with(&body, v)?,
        None => parse_auto(&body)?,
    };
    Ok(PolyFile { poly, declared_vars: declared })
}
