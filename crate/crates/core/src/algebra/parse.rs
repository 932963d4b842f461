//! Parser for the textual polynomial format produced by `Display for Poly`,
//! e.g. `-1/2*t1^2*t2 + 3*z - 1`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{AlgebraError, Monomial, Poly, Rational, Var, VarKind};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>, AlgebraError> {
    let bad = |msg: String| AlgebraError::BadPolynomial(format!("{s:?}: {msg}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let (n, d) = text.split_once('/').unwrap_or((&text, "1"));
                let n: BigInt = n.parse().map_err(|_| bad(format!("bad number {text:?}")))?;
                let d: BigInt = d.parse().map_err(|_| bad(format!("bad number {text:?}")))?;
                if d == BigInt::from(0) {
                    return Err(bad(format!("zero denominator in {text:?}")));
                }
                out.push(Token::Number(Rational::new(n, d)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(bad(format!("unexpected character {other:?} at offset {i}"))),
        }
    }
    Ok(out)
}

/// Resolves a name to an interned variable, creating a parameter if unknown.
fn variable(name: &str) -> Result<Var, AlgebraError> {
    match Var::lookup(name) {
        Some(v) => Ok(v),
        None => Var::new(name, VarKind::Parameter),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    source: String,
}

impl Parser {
    fn bad(&self, msg: &str) -> AlgebraError {
        AlgebraError::BadPolynomial(format!("{:?}: {msg} at token {}", self.source, self.pos))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn factor(&mut self) -> Result<Poly, AlgebraError> {
        match self.next() {
            Some(Token::Number(r)) => Ok(Poly::constant(r)),
            Some(Token::Ident(name)) => {
                let v = variable(&name)?;
                let mut exp = 1u32;
                if self.peek() == Some(&Token::Caret) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(r)) if r.is_integer() => {
                            exp = r
                                .to_integer()
                                .try_into()
                                .map_err(|_| self.bad("exponent out of range"))?;
                        }
                        _ => return Err(self.bad("expected an integer exponent")),
                    }
                }
                Ok(Poly::monomial(
                    Rational::from_integer(1.into()),
                    Monomial::var(v, exp),
                ))
            }
            _ => Err(self.bad("expected a number or a variable")),
        }
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.next() {
                None => return Ok(acc),
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.bad("expected + or -"));
                }
            }
        }
    }
}

impl FromStr for Poly {
    type Err = AlgebraError;

    /// Unknown variable names are interned as parameters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(AlgebraError::BadPolynomial(format!(
                "{s:?}: empty polynomial"
            )));
        }
        Parser {
            tokens,
            pos: 0,
            source: s.to_string(),
        }
        .poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn display_round_trips() {
        let t = Var::fiber("pt1");
        let z = Var::parameter("pz");
        let p = &(&Poly::var(t).pow(3).scale(&rat(-1, 2)) + &(&Poly::var(t) * &Poly::var(z)))
            - &Poly::int(4);
        assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        assert_eq!("0".parse::<Poly>().unwrap(), Poly::zero());
        assert_eq!("-3/6".parse::<Poly>().unwrap(), Poly::constant(rat(-1, 2)));
    }

    #[test]
    fn malformed_input_is_rejected() {
        for s in ["", "1 +", "x^y", "2 3", "1/0", "a $ b"] {
            assert!(s.parse::<Poly>().is_err(), "{s}");
        }
    }
}
