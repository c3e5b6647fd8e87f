//! A small expression language for cohomology classes.
//!
//! Grammar: sums and products of integers, rationals `a/b`, `h`, `h<k>`,
//! `z`, power sums `p[i,r]`, elementary symmetric polynomials `e[i,k]` and
//! chern roots `x[i,a]`, with `^` for non-negative integer powers and
//! parentheses. Vertex numbers `i` are 1-based positions.

use coha_core::cohomology::{elementary, power_sum};
use coha_core::polyalg::qf;
use coha_core::{DimVector, Poly, Var};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| CliError::Usage(format!("number too large: {text}")))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(CliError::Usage(format!("unexpected character '{c}' in class expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    dim: &'a DimVector,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> CliError {
        CliError::Usage(format!("class expression: {what} at token {}", self.pos + 1))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<i64, CliError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn sum(&mut self) -> Result<Poly, CliError> {
        let mut acc = if self.eat('-') { -&self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc += &self.product()?;
            } else if self.eat('-') {
                acc -= &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, CliError> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.number()?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn bracket_args(&mut self) -> Result<Vec<i64>, CliError> {
        self.expect('[')?;
        let mut args = vec![self.number()?];
        while self.eat(',') {
            args.push(self.number()?);
        }
        self.expect(']')?;
        Ok(args)
    }

    fn vertex(&self, i: i64) -> Result<usize, CliError> {
        if i >= 1 && (i as usize) <= self.dim.len() {
            Ok(i as usize - 1)
        } else {
            Err(self.err(&format!("vertex {i} out of range")))
        }
    }

    fn atom(&mut self) -> Result<Poly, CliError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let d = self.number()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Poly::constant(qf(n, d)));
                }
                Ok(Poly::int(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.sum()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "z" => Ok(Poly::var(Var::Z)),
                    "h" => Ok(Poly::var(Var::H)),
                    "p" | "e" | "x" => {
                        let args = self.bracket_args()?;
                        if args.len() != 2 || args[1] < 0 {
                            return Err(self.err(&format!("{name}[vertex,k] takes two non-negative arguments")));
                        }
                        let v = self.vertex(args[0])?;
                        let k = args[1] as u32;
                        Ok(match name.as_str() {
                            "p" => power_sum(1, v, k, self.dim),
                            "e" => elementary(1, v, k, self.dim),
                            _ => {
                                if k == 0 || k > self.dim.get(v) {
                                    return Err(self.err(&format!("root index {k} out of range")));
                                }
                                Poly::var(Var::root(1, v, k as usize))
                            }
                        })
                    }
                    other => match other.strip_prefix('h').and_then(|k| k.parse::<u8>().ok()) {
                        Some(k) if k >= 1 => Ok(Poly::var(Var::Hbar(k - 1))),
                        _ => Err(self.err(&format!("unknown symbol '{other}'"))),
                    },
                }
            }
            _ => Err(self.err("unexpected end or symbol")),
        }
    }
}

/// Parses a class expression at dimension `dim`.
pub fn parse_class(text: &str, dim: &DimVector) -> Result<Poly, CliError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, dim };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a dimension vector such as `1,0,2`.
pub fn parse_dim(text: &str, n: usize) -> Result<DimVector, CliError> {
    let parts: Result<Vec<u32>, _> = text.split(',').map(|s| s.trim().parse::<u32>()).collect();
    let parts = parts.map_err(|_| CliError::Usage(format!("malformed dimension vector '{text}'")))?;
    if parts.len() != n {
        return Err(CliError::Usage(format!("dimension vector '{text}' needs {n} entries")));
    }
    Ok(DimVector::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_power_sums() {
        let d = DimVector::new(vec![2]);
        let p = parse_class("p[1,2] - e[1,1]^2 + 2*e[1,2]", &d).unwrap();
        assert!(p.is_zero());
        let q = parse_class("1/2*h*(x[1,1]+x[1,2])", &d).unwrap();
        assert_eq!(q, (&Poly::var(Var::H) * &power_sum(1, 0, 1, &d)).scale(&qf(1, 2)));
    }

    #[test]
    fn rejects_garbage() {
        let d = DimVector::new(vec![1]);
        assert!(parse_class("p[2,1]", &d).is_err());
        assert!(parse_class("x[1,2]", &d).is_err());
        assert!(parse_class("1 +", &d).is_err());
        assert!(parse_class("y", &d).is_err());
        assert!(parse_dim("1,2", 1).is_err());
    }
}
