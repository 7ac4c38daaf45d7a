use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExponentVector, Polynomial};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Parses a polynomial over the named variables, e.g. `3/2*x^2*y - y + 1`.
pub fn parse_polynomial(text: &str, vars: &[&str]) -> Result<Polynomial> {
    parse_polynomial_at(text, vars, 1, 1)
}

/// Like [`parse_polynomial`], reporting errors relative to a line and start column.
pub fn parse_polynomial_at(
    text: &str,
    vars: &[&str],
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let mut p = Parser {
        text,
        chars: text.char_indices().peekable(),
        vars,
        line,
        column,
    };
    p.polynomial()
}

struct Parser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    vars: &'a [&'a str],
    line: usize,
    column: usize,
}

impl Parser<'_> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column + self.text[..at].chars().count(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn pos(&mut self) -> usize {
        self.chars
            .peek()
            .map(|(i, _)| *i)
            .unwrap_or(self.text.len())
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut out = Polynomial::zero(n);
        self.skip_ws();
        if self.chars.peek().is_none() {
            return Err(self.error(0, "empty polynomial"));
        }
        let mut sign = Rational::one();
        let mut first = true;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some((_, '+')) => {
                    self.chars.next();
                }
                Some((_, '-')) => {
                    self.chars.next();
                    sign = -sign;
                }
                _ if first => {}
                Some((i, c)) => {
                    let (i, c) = (*i, *c);
                    return Err(self.error(i, format!("expected '+' or '-', found '{c}'")));
                }
                None => break,
            }
            self.skip_ws();
            let (e, c) = self.term()?;
            out = &out + &Polynomial::monomial(e, c * &sign);
            sign = Rational::one();
            first = false;
            self.skip_ws();
            if self.chars.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(ExponentVector, Rational)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coef = Rational::one();
        loop {
            self.skip_ws();
            let start = self.pos();
            match self.chars.peek().map(|(_, c)| *c) {
                Some(c) if c.is_ascii_digit() => coef *= self.number()?,
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let name = self.identifier();
                    let Some(i) = self.vars.iter().position(|v| *v == name) else {
                        return Err(self.error(start, format!("unknown symbol '{name}'")));
                    };
                    self.skip_ws();
                    let k = if matches!(self.chars.peek(), Some((_, '^'))) {
                        self.chars.next();
                        self.skip_ws();
                        let at = self.pos();
                        let k = self.integer()?;
                        u32::try_from(&k).map_err(|_| self.error(at, "exponent out of range"))?
                    } else {
                        1
                    };
                    exps[i] = exps[i]
                        .checked_add(k)
                        .ok_or_else(|| self.error(start, "exponent out of range"))?;
                }
                Some(c) => return Err(self.error(start, format!("unexpected '{c}'"))),
                None => return Err(self.error(start, "unexpected end of input")),
            }
            self.skip_ws();
            if matches!(self.chars.peek(), Some((_, '*'))) {
                self.chars.next();
            } else {
                return Ok((ExponentVector::new(exps), coef));
            }
        }
    }

    fn identifier(&mut self) -> String {
        let mut s = String::new();
        while let Some((_, c)) = self.chars.peek() {
            if c.is_alphanumeric() || *c == '_' {
                s.push(*c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos();
        let mut s = String::new();
        while let Some((_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(*c);
                self.chars.next();
            } else {
                break;
            }
        }
        s.parse::<BigInt>()
            .map_err(|_| self.error(start, "expected an integer"))
    }

    fn number(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        self.skip_ws();
        if matches!(self.chars.peek(), Some((_, '/'))) {
            self.chars.next();
            self.skip_ws();
            let at = self.pos();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}

/// Renders polynomials with named variables, largest terms first.
#[derive(Clone, Debug)]
pub struct Printer {
    names: Vec<String>,
}

impl Printer {
    pub fn new(names: &[impl AsRef<str>]) -> Printer {
        Printer {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn default_names(n: usize) -> Printer {
        Printer {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn print(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in f.terms().rev().enumerate() {
            let negative = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = self.monomial(e);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    pub fn monomial(&self, e: &ExponentVector) -> String {
        let mut parts = Vec::new();
        for (i, &k) in e.entries().iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{k}", self.names[i])),
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: [&str; 4] = ["x", "y", "z", "w"];

    #[test]
    fn parses_and_prints() {
        let f = parse_polynomial("x*y + x*w - y*w", &V).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(Printer::new(&V).print(&f), "x*y + x*w - y*w");
        let g = parse_polynomial(" 3/6 * x^2*y -2*z + 7 ", &V).unwrap();
        assert_eq!(Printer::new(&V).print(&g), "1/2*x^2*y - 2*z + 7");
    }

    #[test]
    fn round_trip() {
        for text in [
            "x^2 - y^3",
            "-x + 1",
            "y*z - y*w - w^2",
            "5/3*x*y*z*w - 1/2",
        ] {
            let f = parse_polynomial(text, &V).unwrap();
            let again = parse_polynomial(&Printer::new(&V).print(&f), &V).unwrap();
            assert_eq!(f, again);
        }
    }

    #[test]
    fn errors_carry_position() {
        let Err(Error::Parse { line, column, .. }) = parse_polynomial_at("x + q", &V, 3, 1) else {
            panic!("unknown symbol accepted");
        };
        assert_eq!((line, column), (3, 5));
        assert!(parse_polynomial("", &V).is_err());
        assert!(parse_polynomial("x y", &V).is_err());
        assert!(parse_polynomial("x + ", &V).is_err());
        assert!(parse_polynomial("1/0", &V).is_err());
    }

    #[test]
    fn repeated_factors_multiply() {
        let f = parse_polynomial("x*x^2*2*3", &V).unwrap();
        assert_eq!(f, parse_polynomial("6*x^3", &V).unwrap());
    }
}
