use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, PolyError};
use crate::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { position: self.pos, message: message.into() })
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit run"))
    }

    fn small_integer(&mut self) -> Result<u32, PolyError> {
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v)
            .map_err(|_| PolyError::Syntax { position: start, message: "integer too large".into() })
    }

    fn coefficient(&mut self) -> Result<Rational, PolyError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(PolyError::Syntax { position: at, message: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// Parses one `xK[^e]` or `t[^e]` factor and multiplies it into `m`.
    fn factor(&mut self, x: &mut [u32], t: &mut u32) -> Result<(), PolyError> {
        let start = self.pos;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let index = self.small_integer()? as usize;
                if index == 0 || index > self.n {
                    return Err(PolyError::VariableOutOfRange { index, n: self.n, position: start });
                }
                let e = self.exponent()?;
                x[index - 1] += e;
            }
            Some(b't') => {
                self.pos += 1;
                *t += self.exponent()?;
            }
            _ => return self.error("expected a variable `xK` or `t`"),
        }
        Ok(())
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small_integer()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut x = vec![0; self.n];
        let mut t = 0;
        let mut coef = Rational::one();
        let has_coef = matches!(self.peek(), Some(c) if c.is_ascii_digit());
        if has_coef {
            coef = self.coefficient()?;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut x, &mut t)?;
                }
                Some(b'x') | Some(b't') => self.factor(&mut x, &mut t)?,
                _ => return Ok((Monomial::new(x, t), coef)),
            }
        } else {
            self.factor(&mut x, &mut t)?;
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut x, &mut t)?;
        }
        Ok((Monomial::new(x, t), coef))
    }
}

pub(super) fn parse(text: &str, n: usize) -> Result<Poly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let mut terms = Vec::new();
    let mut negative = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            true
        }
        Some(b'+') => {
            p.pos += 1;
            false
        }
        None => return p.error("empty polynomial"),
        _ => false,
    };
    loop {
        let (m, c) = p.term()?;
        terms.push((m, if negative { -c } else { c }));
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return p.error("expected `+`, `-` or end of input"),
        }
        p.pos += 1;
    }
    Ok(Poly::from_terms(n, terms))
}
