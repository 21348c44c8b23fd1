//! Parser for the Bernstein term language, e.g.
//! `T[s1]*th[1,-2] + (q0(s1))*th[0,0]`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' uint]
//! atom   := int | 'v' | 'q(sK)' | 'qJ(sK)' | 'T[' [sK (',' sK)*] ']'
//!         | 'th[' int (',' int)* ']' | '(' expr ')'
//! ```

use whittaker_core::hecke::Symbol;
use whittaker_core::{BernsteinElement, HeckeAlgebra, LatticePoint, ParamPoly};

use crate::CliError;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alg: &'a HeckeAlgebra,
}

pub fn parse(alg: &HeckeAlgebra, src: &str) -> Result<BernsteinElement, CliError> {
    let mut p = Parser { src, pos: 0, alg };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> CliError {
        CliError::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{s}`")))
        }
    }

    fn uint(&mut self) -> Result<u64, CliError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat("-");
        let v = i64::try_from(self.uint()?).map_err(|_| self.error("number out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `sK`, returned 0-based.
    fn generator(&mut self) -> Result<usize, CliError> {
        self.expect("s")?;
        let k = self.uint()? as usize;
        if k == 0 || k > self.alg.weyl().num_generators() {
            return Err(self.error(&format!("no simple reflection s{k}")));
        }
        Ok(k - 1)
    }

    fn scalar(&self, c: ParamPoly) -> BernsteinElement {
        self.alg.one().scale(&c)
    }

    fn expr(&mut self) -> Result<BernsteinElement, CliError> {
        let mut acc = if self.eat("-") {
            self.term()?.scale(&ParamPoly::int(-1))
        } else {
            self.term()?
        };
        loop {
            if self.eat("+") {
                acc = acc.add(&self.term()?);
            } else if self.eat("-") {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BernsteinElement, CliError> {
        let mut acc = self.power()?;
        while self.eat("*") {
            let rhs = self.power()?;
            acc = self.alg.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BernsteinElement, CliError> {
        let base = self.atom()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let n = self.uint()?;
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = self.alg.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<BernsteinElement, CliError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = i64::try_from(self.uint()?).map_err(|_| self.error("number out of range"))?;
                Ok(self.scalar(ParamPoly::int(n)))
            }
            Some('T') => {
                self.expect("T[")?;
                let mut word = Vec::new();
                if !self.eat("]") {
                    loop {
                        word.push(self.generator()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Ok(self.alg.t_word(&word)?)
            }
            Some('t') => {
                self.expect("th[")?;
                let mut coords = vec![self.int()?];
                while self.eat(",") {
                    coords.push(self.int()?);
                }
                self.expect("]")?;
                if coords.len() != self.alg.rank() {
                    return Err(self.error(&format!("th[..] needs {} coordinates", self.alg.rank())));
                }
                Ok(self.alg.theta(LatticePoint::from(coords)))
            }
            Some('v') => {
                self.pos += 1;
                Ok(self.scalar(ParamPoly::symbol(Symbol::V)))
            }
            Some('q') => {
                self.pos += 1;
                let j = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                    Some(u32::try_from(self.uint()?).map_err(|_| self.error("index out of range"))?)
                } else {
                    None
                };
                self.expect("(")?;
                let g = self.generator()?;
                self.expect(")")?;
                let c = match j {
                    None => self.alg.q(g),
                    Some(j) => self.alg.qj(g, j),
                };
                Ok(self.scalar(c))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
