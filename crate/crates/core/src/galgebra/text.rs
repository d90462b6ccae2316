//! Text syntax for polynomials: `3/2 * x1^2 * d1x2 - th1*th2 + 1`.
//!
//! A variable token is an optional `d<J>` prefix (bare `d` means `J = 1`),
//! a lowercase family name and a site number (missing site means 0).
//! Parentheses and integer powers of parenthesized sums are accepted.

use num_bigint::BigInt;

use super::poly::Poly;
use super::presentation::Presentation;
use super::var::{Family, VarKey};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Parses a polynomial and returns its normal form in `pres`.
pub fn parse_poly(src: &str, pres: &Presentation) -> Result<Poly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, pres };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a variable token such as `d2x1`, `th3` or `x` into its key.
pub fn parse_var_key(token: &str) -> Result<VarKey> {
    let b = token.trim().as_bytes();
    let mut p = Parser { src: b, pos: 0, pres: &EMPTY };
    let key = p.var_key()?;
    if p.pos != b.len() {
        return Err(Error::parse(p.pos, format!("`{token}` is not a variable")));
    }
    Ok(key)
}

static EMPTY: std::sync::LazyLock<Presentation> = std::sync::LazyLock::new(|| Presentation::builder().build().unwrap());

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    pres: &'a Presentation,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.pres.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut c = Q::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(Error::parse(self.pos, "zero denominator"));
                    }
                    c /= Q::from_integer(d);
                }
                Poly::constant(c)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                let key = self.var_key()?;
                let v = self.pres.lookup(key).ok_or_else(|| {
                    Error::PresentationMismatch(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                })?;
                self.pres.normalize(&Poly::var(v))?
            }
            Some(_) => return Err(Error::parse(self.pos, "expected a number, variable or `(`")),
            None => return Err(Error::parse(self.pos, "unexpected end of input")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e: u32 = self.integer()?.try_into().map_err(|_| Error::parse(self.pos, "exponent too large"))?;
            return Ok(self.pres.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn digits(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start != self.pos)
            .then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap_or(u32::MAX))
    }

    fn var_key(&mut self) -> Result<VarKey> {
        let start = self.pos;
        let mut depth = 0;
        if self.src.get(self.pos) == Some(&b'd') {
            self.pos += 1;
            depth = self.digits().unwrap_or(1);
        }
        let fam_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        if fam_start == self.pos {
            return Err(Error::parse(start, "expected a variable family"));
        }
        let name = std::str::from_utf8(&self.src[fam_start..self.pos]).unwrap();
        let family = Family::new(name).map_err(|e| Error::parse(fam_start, e.to_string()))?;
        let site = self.digits().unwrap_or(0);
        Ok((family, site, depth))
    }
}

/// Renders a polynomial in the same syntax `parse_poly` accepts.
pub fn render(p: &Poly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::GVar;

    fn pres() -> Presentation {
        let mut b = Presentation::builder();
        for i in 1..=2 {
            for j in 0..3 {
                b = b.generator(GVar::x(i, j));
            }
            for j in 1..3 {
                for k in j..3 {
                    b = b.annihilate(GVar::x(i, j), GVar::x(i, k));
                }
            }
        }
        b.generators([GVar::theta(1), GVar::theta(2)]).build().unwrap()
    }

    #[test]
    fn parses_and_round_trips() {
        let p = pres();
        let a = parse_poly("3/2 * x1^2 * d1x2 * d2x2", &p).unwrap();
        assert!(a.is_zero());
        let a = parse_poly("3/2 * x1^2 * d1x2 * d2x1 - 1", &p).unwrap();
        assert_eq!(render(&a), "-1 + 3/2*x1^2*d2x1*d1x2");
        assert_eq!(parse_poly(&render(&a), &p).unwrap(), a);
        let b = parse_poly("th2*th1", &p).unwrap();
        assert_eq!(render(&b), "-th1*th2");
        let c = parse_poly("(x1 + dx1)^2", &p).unwrap();
        assert_eq!(render(&c), "x1^2 + 2*x1*d1x1");
    }

    #[test]
    fn reports_errors() {
        let p = pres();
        assert!(matches!(parse_poly("x3", &p), Err(Error::PresentationMismatch(_))));
        assert!(matches!(parse_poly("x1 +", &p), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0", &p), Err(Error::Parse { .. })));
        assert_eq!(parse_var_key("d2x1").unwrap(), (Family::x(), 1, 2));
        assert_eq!(parse_var_key("th3").unwrap(), (Family::theta(), 3, 0));
        assert_eq!(parse_var_key("t").unwrap(), (Family::t(), 0, 0));
    }
}
