//! Surface syntax of network terms.
//!
//! ```text
//! par   := seq ('++' seq)*
//! seq   := post (';' post)*
//! post  := atom ('^' nat)*
//! atom  := 'I(' nat ')' | 'X(' nat ',' nat ')' | 'cp(' nat ')' | 'sink(' nat ')'
//!        | 'eq(' nat ')' | 'src(' nat ')' | ident | '(' par ')'
//! ```
//!
//! Printing is the `Display` of [`Term`], which inserts exactly the
//! parentheses needed to parse back to the same tree.

use netalg_core::Term;

use crate::ParseError;

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let t = p.par()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

/// Canonical text of a term; `parse_term(&print_term(t)) == t`.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

/// True if `name` is a valid cell identifier.
pub fn is_identifier(name: &str) -> bool {
    let b = name.as_bytes();
    !b.is_empty() && is_ident_start(b[0]) && b.iter().all(|&c| is_ident_char(c))
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn par(&mut self) -> Result<Term, ParseError> {
        let mut t = self.seq()?;
        while self.eat("++") {
            t = Term::par(t, self.seq()?);
        }
        Ok(t)
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        let mut t = self.post()?;
        while self.eat(";") {
            t = Term::seq(t, self.post()?);
        }
        Ok(t)
    }

    fn post(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.eat("^") {
            t = Term::feed(t, self.nat()?);
        }
        Ok(t)
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error("expected a natural number"));
        }
        self.pos += digits;
        self.text[start..self.pos]
            .parse()
            .map_err(|_| ParseError::NatOverflow { offset: start })
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.par()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let len = self.text[start..]
                    .bytes()
                    .take_while(|&c| is_ident_char(c))
                    .count();
                let name = &self.text[start..start + len];
                self.pos += len;
                let unary: Option<fn(usize) -> Term> = match name {
                    "I" => Some(Term::Id),
                    "cp" => Some(Term::Copy),
                    "sink" => Some(Term::Sink),
                    "eq" => Some(Term::EqTest),
                    "src" => Some(Term::DummySource),
                    _ => None,
                };
                if let Some(make) = unary {
                    if self.eat("(") {
                        let n = self.nat()?;
                        self.expect(")")?;
                        return Ok(make(n));
                    }
                } else if name == "X" && self.eat("(") {
                    let m = self.nat()?;
                    self.expect(",")?;
                    let n = self.nat()?;
                    self.expect(")")?;
                    return Ok(Term::Transp(m, n));
                }
                Ok(Term::cell(name))
            }
            Some(_) => Err(self.error("expected a constant, a cell name or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
