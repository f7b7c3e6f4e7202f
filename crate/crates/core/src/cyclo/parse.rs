//! Textual rendering and parsing of cyclotomic numbers in `E(n)^k` form.
//!
//! Rendered values are sums of terms `c*E(n)^k` with rational `c`, joined by
//! ` + ` / ` - `, exponents ascending, `^1` and unit coefficients omitted:
//! `"E(8) - E(8)^3"`, `"1/2*E(5) + 1/2*E(5)^4"`, `"-2/3"`. The parser accepts
//! everything the renderer emits plus redundant spellings (`E(8)^1`,
//! explicit `1*`, arbitrary whitespace, non-canonical orders such as `E(6)`).

use num::{BigInt, One, Zero};

use super::{CycloError, Cyclotomic, Rational};

/// Canonical textual form.
pub(super) fn render(z: &Cyclotomic) -> String {
    if z.is_zero() {
        return "0".to_string();
    }
    let n = z.conductor();
    let mut out = String::new();
    for (i, (e, c)) in z.terms().enumerate() {
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let base = if n == 1 || e == 0 {
            None
        } else if e == 1 {
            Some(format!("E({n})"))
        } else {
            Some(format!("E({n})^{e}"))
        };
        match base {
            None => out.push_str(&mag.to_string()),
            Some(b) => {
                if mag.is_one() {
                    out.push_str(&b);
                } else {
                    out.push_str(&format!("{mag}*{b}"));
                }
            }
        }
    }
    out
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    E,
    LParen,
    RParen,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn next_tok(&mut self) -> Result<Tok, CycloError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let b = self.src[self.pos];
        self.pos += 1;
        Ok(match b {
            b'E' => Tok::E,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'^' => Tok::Caret,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Int(s.parse().unwrap())
            }
            other => {
                return Err(CycloError::Parse(format!(
                    "unexpected character '{}'",
                    other as char
                )))
            }
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: Tok,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, CycloError> {
        let mut lexer = Lexer::new(src);
        let cur = lexer.next_tok()?;
        Ok(Parser { lexer, cur })
    }

    fn bump(&mut self) -> Result<(), CycloError> {
        self.cur = self.lexer.next_tok()?;
        Ok(())
    }

    fn expect(&mut self, tok: Tok) -> Result<(), CycloError> {
        if self.cur != tok {
            return Err(CycloError::Parse(format!(
                "expected {tok:?}, found {:?}",
                self.cur
            )));
        }
        self.bump()
    }

    fn parse_expr(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut negate = false;
        if self.cur == Tok::Minus {
            negate = true;
            self.bump()?;
        } else if self.cur == Tok::Plus {
            self.bump()?;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump()?;
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                Tok::End => return Ok(acc),
                ref other => {
                    return Err(CycloError::Parse(format!("unexpected token {other:?}")))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut acc = self.parse_factor()?;
        while self.cur == Tok::Star {
            self.bump()?;
            let f = self.parse_factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.cur.clone() {
            Tok::Int(num) => {
                self.bump()?;
                let mut value = Rational::from_integer(num);
                if self.cur == Tok::Slash {
                    self.bump()?;
                    match self.cur.clone() {
                        Tok::Int(den) => {
                            self.bump()?;
                            if den.is_zero() {
                                return Err(CycloError::Parse(
                                    "zero denominator".to_string(),
                                ));
                            }
                            value /= Rational::from_integer(den);
                        }
                        other => {
                            return Err(CycloError::Parse(format!(
                                "expected denominator, found {other:?}"
                            )))
                        }
                    }
                }
                Ok(Cyclotomic::from_rational(value))
            }
            Tok::E => {
                self.bump()?;
                self.expect(Tok::LParen)?;
                let n = match self.cur.clone() {
                    Tok::Int(n) => {
                        self.bump()?;
                        n
                    }
                    other => {
                        return Err(CycloError::Parse(format!(
                            "expected order, found {other:?}"
                        )))
                    }
                };
                self.expect(Tok::RParen)?;
                let mut exp: i64 = 1;
                if self.cur == Tok::Caret {
                    self.bump()?;
                    let mut neg = false;
                    if self.cur == Tok::Minus {
                        neg = true;
                        self.bump()?;
                    }
                    match self.cur.clone() {
                        Tok::Int(k) => {
                            self.bump()?;
                            use num::ToPrimitive;
                            let k = k.to_i64().ok_or_else(|| {
                                CycloError::Parse("exponent out of range".to_string())
                            })?;
                            exp = if neg { -k } else { k };
                        }
                        other => {
                            return Err(CycloError::Parse(format!(
                                "expected exponent, found {other:?}"
                            )))
                        }
                    }
                }
                use num::ToPrimitive;
                let n = n
                    .to_u64()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| CycloError::Parse("invalid order".to_string()))?;
                Cyclotomic::root_of_unity(n, exp)
            }
            other => Err(CycloError::Parse(format!(
                "expected rational or E(n), found {other:?}"
            ))),
        }
    }
}

/// Parse the `E(n)^k` sum format.
pub(super) fn parse(src: &str) -> Result<Cyclotomic, CycloError> {
    if src.trim().is_empty() {
        return Err(CycloError::Parse("empty input".to_string()));
    }
    Parser::new(src)?.parse_expr()
}
