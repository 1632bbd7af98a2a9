//! Text syntax for elements of `W`.
//!
//! ```text
//! expr := ['+' | '-'] term (('+' | '-') term)*
//! term := [uint '*'] 'phi' '(' uint ')' | uint
//! ```
//!
//! A bare integer is that multiple of `phi(1)`. Whitespace between tokens is
//! ignored. Indices must be positive.

use std::fmt;

use cyclowitt::WittElement;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => self.error(self.pos, format!("expected `{c}`, found `{d}`")),
            None => self.error(self.pos, format!("expected `{c}`, found end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return match self.peek() {
                Some(c) => self.error(start, format!("expected a number, found `{c}`")),
                None => self.error(start, "expected a number, found end of input"),
            };
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn phi(&mut self, term_start: usize) -> Result<u64, ParseError> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with("phi") {
            return self.error(self.pos, "expected `phi(`");
        }
        self.pos += 3;
        self.expect('(')?;
        let n = self.uint()?;
        self.expect(')')?;
        if n.is_zero() {
            return self.error(term_start, "phi index must be positive");
        }
        u64::try_from(&n).or_else(|_| self.error(term_start, "phi index too large"))
    }

    /// One term, unsigned.
    fn term(&mut self) -> Result<(u64, BigInt), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.uint()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    let n = self.phi(start)?;
                    Ok((n, c))
                } else {
                    Ok((1, c))
                }
            }
            Some('p') => Ok((self.phi(start)?, BigInt::from(1))),
            Some(c) => self.error(start, format!("expected a term, found `{c}`")),
            None => self.error(start, "expected a term, found end of input"),
        }
    }
}

pub fn parse_witt(text: &str) -> Result<WittElement, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let mut out = WittElement::zero();
    let mut negative = match p.peek() {
        Some('-') => {
            p.pos += 1;
            true
        }
        Some('+') => {
            p.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (n, c) = p.term()?;
        out.add_term(n, if negative { -c } else { c });
        match p.peek() {
            None => return Ok(out),
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(c) => return p.error(p.pos, format!("expected `+` or `-`, found `{c}`")),
        }
        p.pos += 1;
    }
}
