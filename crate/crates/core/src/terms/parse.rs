use super::{Equation, Term, TermError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: impl Into<String>) -> TermError {
        TermError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), TermError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", byte as char)))
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_lowercase() || self.src[self.pos].is_ascii_digit())
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn term(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let name = self.ident();
                self.skip_ws();
                if self.src.get(self.pos) == Some(&b'(') {
                    self.pos += 1;
                    self.call(name, start)
                } else if self.vars.contains(&name) {
                    Ok(Term::var(name))
                } else {
                    Err(TermError::UndeclaredVariable {
                        name: name.to_string(),
                        offset: start,
                    })
                }
            }
            Some(_) => Err(self.syntax("expected a term")),
        }
    }

    fn call(&mut self, name: &str, start: usize) -> Result<Term, TermError> {
        let unary = matches!(name, "negl" | "negr");
        let binary = matches!(
            name,
            "meet" | "join" | "mul" | "under" | "over" | "oplus"
        );
        if !unary && !binary {
            return Err(TermError::Syntax {
                offset: start,
                message: format!("unknown operation `{name}`"),
            });
        }
        let first = self.term()?;
        if unary {
            self.expect(b')')?;
            return Ok(match name {
                "negl" => Term::negl(first),
                _ => Term::negr(first),
            });
        }
        self.expect(b',')?;
        let second = self.term()?;
        self.expect(b')')?;
        Ok(match name {
            "meet" => Term::meet(first, second),
            "join" => Term::join(first, second),
            "mul" => Term::mul(first, second),
            "under" => Term::ldiv(first, second),
            "over" => Term::rdiv(first, second),
            _ => Term::oplus(first, second),
        })
    }

    fn finish(&mut self) -> Result<(), TermError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.syntax("trailing input"))
        }
    }
}

/// Parses a function-style term. Every variable must appear in `vars`.
///
/// `negl`, `negr` and `oplus` are expanded on the spot into the basic
/// signature, so the printer never emits them.
pub fn parse_term(text: &str, vars: &[&str]) -> Result<Term, TermError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `term = term`.
pub fn parse_equation(text: &str, vars: &[&str]) -> Result<Equation, TermError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let lhs = p.term()?;
    p.expect(b'=')?;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Equation::new(lhs, rhs))
}
