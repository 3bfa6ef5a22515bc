//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term     := factor { '*' factor }      (left-associative)
//! factor   := variable | '(' term ')'
//! variable := 'x' digits                 (index >= 1)
//! ```
//!
//! Whitespace between tokens is ignored.

use super::{Term, Var};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = Term::prod(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(b'x') => self.variable(),
            Some(c) => Err(self.error(format!("expected variable or '(', found {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Term> {
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected digits after 'x'"));
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
        let index: u32 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("variable index {digits} out of range"),
        })?;
        let v = Var::new(index).ok_or(Error::ZeroVariable { pos: start })?;
        Ok(Term::from_var(v))
    }
}
