//! Recursive-descent parser for identities.
//!
//! ```text
//! identity := expr ("=" expr)+
//! expr     := ["-"] term (("+" | "-") term)*
//! term     := rational ("*" factor)* | factor ("*" factor)*
//! factor   := power | mapapp | symbol
//! power    := "X" ["^" integer]
//! mapapp   := ident "(" power ")"
//! symbol   := ident | "1"
//! rational := integer ["/" integer]
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::{Expr, Factor, Identity, Term};
use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Eq,
    LParen,
    RParen,
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Caret => "`^`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Eq => "`=`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let simple = match c {
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '=' => Some(Tok::Eq),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            toks.push((start, tok));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            toks.push((start, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(Error::Syntax {
                pos: start,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn identity(&mut self) -> Result<Identity> {
        let mut sides = vec![self.expr()?];
        while *self.peek() == Tok::Eq {
            self.bump();
            sides.push(self.expr()?);
        }
        match self.peek() {
            Tok::End if sides.len() >= 2 => Ok(Identity { sides }),
            Tok::End => self.error("an identity needs at least one `=`"),
            other => self.error(format!("unexpected {}", describe(other))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        let mut terms = Vec::new();
        loop {
            let mut term = self.term()?;
            if negate {
                term = term.negated();
            }
            terms.push(term);
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(Expr { terms })
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => self.error(format!("expected an integer, found {}", describe(&other))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        if let Tok::Int(_) = self.peek() {
            let num = self.integer()?;
            let den = if *self.peek() == Tok::Slash {
                self.bump();
                let pos = self.pos();
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(Error::Syntax {
                        pos,
                        message: "zero denominator".into(),
                    });
                }
                den
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
        } else if let Some(f) = self.factor()? {
            factors.push(f);
        }
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    if let Some(f) = self.factor()? {
                        factors.push(f);
                    }
                }
                Tok::Plus | Tok::Minus | Tok::Eq | Tok::RParen | Tok::End => break,
                other => {
                    return self.error(format!(
                        "expected `*` before {} (implicit multiplication is not allowed)",
                        describe(other)
                    ))
                }
            }
        }
        Ok(Term { coeff, factors })
    }

    /// A factor; the unit symbol `1` is absorbed and yields `None`.
    fn factor(&mut self) -> Result<Option<Factor>> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "X" => Ok(Some(Factor::Power(self.power()?))),
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Some(Factor::Central(name)));
                }
                self.bump();
                if let (Tok::Ident(inner), Tok::LParen) = (self.peek(), self.peek2()) {
                    if inner != "X" {
                        return Err(Error::NestedMap { pos: self.pos() });
                    }
                }
                if !matches!(self.peek(), Tok::Ident(x) if x == "X") {
                    return self.error(format!(
                        "map argument must be a power of X, found {}",
                        describe(self.peek())
                    ));
                }
                let power = self.power()?;
                if *self.peek() != Tok::RParen {
                    return self.error("map argument must be a single power of X");
                }
                self.bump();
                Ok(Some(Factor::MapApp { map: name, power }))
            }
            Tok::Int(n) if n.is_one() => {
                self.bump();
                Ok(None)
            }
            Tok::Int(_) => self.error("a numeric coefficient may only lead a term"),
            other => self.error(format!("expected a factor, found {}", describe(&other))),
        }
    }

    fn power(&mut self) -> Result<u32> {
        self.bump(); // X
        if *self.peek() != Tok::Caret {
            return Ok(1);
        }
        self.bump();
        let pos = self.pos();
        let k = self.integer()?;
        match u32::try_from(&k) {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(Error::Syntax {
                pos,
                message: format!("exponent must be a positive integer, found {k}"),
            }),
        }
    }
}

/// Parses without checking linearity or homogeneity.
pub(super) fn parse_raw(text: &str) -> Result<Identity> {
    let mut parser = Parser {
        toks: lex(text)?,
        at: 0,
    };
    parser.identity()
}
