//! Text grammar shared by multivectors and slice polynomials.
//!
//! ```text
//! sum    := [+|-] term { (+|-) term }
//! term   := factor { [*] factor }
//! factor := atom [ ^ integer ]
//! atom   := rational | blade | x | ( sum )
//! blade  := e<digits> | e{i,j,...}
//! ```
//!
//! The indeterminate `x` is central, so a coefficient may sit on either side
//! of a power of `x`. Digits after `e` name single-digit generators in
//! strictly increasing order; the braced form allows any index.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::clifford::{BladeMask, Multivector, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::Rational;

/// Dense coefficient list of a polynomial in a central indeterminate.
type Coeffs = Vec<Multivector>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    allow_x: bool,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn poly_mul(a: &Coeffs, b: &Coeffs) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Multivector::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += &(ai * bj);
        }
    }
    out
}

fn poly_add_assign(acc: &mut Coeffs, rhs: &Coeffs, negate: bool) {
    if acc.len() < rhs.len() {
        acc.resize(rhs.len(), Multivector::zero());
    }
    for (i, c) in rhs.iter().enumerate() {
        if negate {
            acc[i] -= c;
        } else {
            acc[i] += c;
        }
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, allow_x: bool) -> Self {
        Self {
            src,
            pos: 0,
            allow_x,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn parse_all(mut self) -> Result<Coeffs> {
        let out = self.sum()?;
        if let Some(c) = self.peek() {
            return err(self.pos, format!("unexpected character {c:?}"));
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Coeffs> {
        let mut acc: Coeffs = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.bump();
            }
            Some('+') => self.bump(),
            _ => {}
        }
        loop {
            let term = self.term()?;
            poly_add_assign(&mut acc, &term, negate);
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Coeffs> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                Some(c) if c.is_ascii_digit() || c == 'e' || c == 'x' || c == '(' => {
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Coeffs> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        let at = self.pos;
        let exp: u32 = self
            .digits()
            .parse()
            .or_else(|_| err(at, "expected a non-negative integer exponent"))?;
        let mut out = vec![Multivector::one()];
        for _ in 0..exp {
            out = poly_mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Coeffs> {
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(vec![Multivector::scalar(r)])
            }
            Some('e') => {
                self.bump();
                let blade = self.blade(at)?;
                Ok(vec![Multivector::blade(blade, Rational::one())])
            }
            Some('x') => {
                if !self.allow_x {
                    return err(self.pos, "the indeterminate x is not allowed here");
                }
                self.bump();
                Ok(vec![Multivector::zero(), Multivector::one()])
            }
            Some('(') => {
                self.bump();
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return err(self.pos, "expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(c) => err(self.pos, format!("unexpected character {c:?}")),
            None => err(self.pos, "unexpected end of input"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let at = self.pos;
        let num: BigInt = self
            .digits()
            .parse()
            .or_else(|_| err(at, "expected digits"))?;
        // Only treat '/' as a fraction bar when digits follow directly.
        if self.peek_raw() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den: BigInt = self
                .digits()
                .parse()
                .or_else(|_| err(at, "expected denominator digits"))?;
            if den.is_zero() {
                return err(at, "zero denominator");
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn blade(&mut self, at: usize) -> Result<BladeMask> {
        if self.peek_raw() == Some('{') {
            self.pos += 1;
            let mut indices = Vec::new();
            loop {
                self.skip_ws();
                let p = self.pos;
                let i: u32 = self
                    .digits()
                    .parse()
                    .or_else(|_| err(p, "expected a generator index"))?;
                indices.push((i, p));
                match self.peek() {
                    Some(',') => self.bump(),
                    Some('}') => {
                        self.bump();
                        break;
                    }
                    _ => return err(self.pos, "expected ',' or '}'"),
                }
            }
            return blade_from_indices(&indices);
        }
        let digits = self.digits();
        if digits.is_empty() {
            return err(at, "expected generator digits after 'e'");
        }
        let base = self.pos - digits.len();
        let indices: Vec<(u32, usize)> = digits
            .bytes()
            .enumerate()
            .map(|(k, d)| (u32::from(d - b'0'), base + k))
            .collect();
        if indices.len() == 1 && indices[0].0 == 0 {
            return Ok(BladeMask::SCALAR);
        }
        blade_from_indices(&indices)
    }
}

fn blade_from_indices(indices: &[(u32, usize)]) -> Result<BladeMask> {
    let mut prev = 0;
    for &(i, p) in indices {
        if i == 0 || i > MAX_GENERATORS {
            return err(
                p,
                format!("generator index {i} out of range 1..={MAX_GENERATORS}"),
            );
        }
        if i <= prev {
            return err(p, "generator indices must be strictly increasing");
        }
        prev = i;
    }
    Ok(BladeMask::from_indices(indices.iter().map(|&(i, _)| i)))
}

pub fn parse_multivector(src: &str) -> Result<Multivector> {
    let coeffs = Parser::new(src, false).parse_all()?;
    Ok(coeffs.into_iter().next().unwrap_or_default())
}

/// Coefficients `a₀, a₁, …` of `Σ xⁿ aₙ`, possibly with trailing zeros.
pub fn parse_poly_coefficients(src: &str) -> Result<Vec<Multivector>> {
    Parser::new(src, true).parse_all()
}

pub fn parse_rational(src: &str) -> Result<Rational> {
    let s = src.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let mut p = Parser::new(body, false);
    let r = p.rational()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing characters after rational");
    }
    Ok(if neg { -r } else { r })
}

/// Blade from its JSON label: `""`, `"13"` or `"1,13"`.
pub fn parse_blade_label(label: &str) -> Result<BladeMask> {
    if label.is_empty() {
        return Ok(BladeMask::SCALAR);
    }
    let indices: Vec<(u32, usize)> = if label.contains(',') {
        label
            .split(',')
            .map(|t| t.trim().parse::<u32>().map(|i| (i, 0)))
            .collect::<std::result::Result<_, _>>()
            .or_else(|_| err(0, format!("bad blade label {label:?}")))?
    } else {
        label
            .chars()
            .enumerate()
            .map(|(k, c)| c.to_digit(10).map(|d| (d, k)))
            .collect::<Option<_>>()
            .map_or_else(|| err(0, format!("bad blade label {label:?}")), Ok)?
    };
    blade_from_indices(&indices)
}
