//! Polynomials in the paravector coordinates `x₀, …, x_m` with multivector
//! coefficients.
//!
//! This is the brute-force route: a slice polynomial is expanded by
//! substituting `x = x₀ + Σ x_j e_j` and multiplying out, and the Dirac
//! operator and Laplacian act coordinate by coordinate. Nothing here knows
//! about stem functions.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Pow, Zero};

use crate::clifford::{AlgebraSignature, Multivector};
use crate::error::{Error, Result};
use crate::render::{self, CoefficientSide};
use crate::slice::{accumulate, SlicePoly};
use crate::Rational;

/// Normalization of the Dirac operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiracConvention {
    /// `½(∂₀ + Σ e_j ∂_j)`
    #[default]
    Half,
    /// `∂₀ + Σ e_j ∂_j`
    Unital,
}

impl DiracConvention {
    /// The factor in front of the spherical derivative: `(1 - m)/2` or `1 - m`.
    pub fn spherical_factor(self, signature: AlgebraSignature) -> Rational {
        let base = Rational::from_integer((1 - i64::from(signature.m())).into());
        match self {
            DiracConvention::Half => base / Rational::from_integer(2.into()),
            DiracConvention::Unital => base,
        }
    }

    fn prefactor(self) -> Rational {
        match self {
            DiracConvention::Half => Rational::new(1.into(), 2.into()),
            DiracConvention::Unital => Rational::one(),
        }
    }
}

/// Exponent vector of length `m + 1`.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    signature: AlgebraSignature,
    terms: BTreeMap<Exponents, Multivector>,
}

impl MultiPoly {
    pub fn zero(signature: AlgebraSignature) -> Self {
        Self {
            signature,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(signature: AlgebraSignature, c: Multivector) -> Self {
        let mut out = Self::zero(signature);
        let key = vec![0; signature.coordinates()];
        accumulate(&mut out.terms, key, &c);
        out
    }

    /// `c · x_0^{e_0} ⋯ x_m^{e_m}`.
    pub fn monomial(
        signature: AlgebraSignature,
        exponents: Exponents,
        c: Multivector,
    ) -> Result<Self> {
        if exponents.len() != signature.coordinates() {
            return Err(Error::PointLength {
                expected: signature.coordinates(),
                got: exponents.len(),
            });
        }
        let mut out = Self::zero(signature);
        accumulate(&mut out.terms, exponents, &c);
        Ok(out)
    }

    /// The coordinate `x_i` with coefficient 1.
    pub fn variable(signature: AlgebraSignature, i: usize) -> Result<Self> {
        let mut exps = vec![0; signature.coordinates()];
        *exps.get_mut(i).ok_or(Error::VariableOutOfRange {
            index: i,
            m: signature.m(),
        })? = 1;
        Self::monomial(signature, exps, Multivector::one())
    }

    /// `x₀ + Σ x_j e_j`.
    pub fn paravector_variable(signature: AlgebraSignature) -> Self {
        let mut out = Self::zero(signature);
        for i in 0..signature.coordinates() {
            let mut exps = vec![0; signature.coordinates()];
            exps[i] = 1;
            let c = if i == 0 {
                Multivector::one()
            } else {
                Multivector::generator(i as u32)
            };
            accumulate(&mut out.terms, exps, &c);
        }
        out
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Multivector)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check_signature(&self, other: &MultiPoly) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature.m(),
                right: other.signature.m(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> MultiPoly {
        let mut out = Self::zero(self.signature);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), &c.scale(r));
        }
        out
    }

    /// Every coefficient multiplied on the right by `c`.
    pub fn mul_right(&self, c: &Multivector) -> MultiPoly {
        let mut out = Self::zero(self.signature);
        for (e, v) in &self.terms {
            accumulate(&mut out.terms, e.clone(), &(v * c));
        }
        out
    }

    /// Every coefficient multiplied on the left by `c`.
    pub fn mul_left(&self, c: &Multivector) -> MultiPoly {
        let mut out = Self::zero(self.signature);
        for (e, v) in &self.terms {
            accumulate(&mut out.terms, e.clone(), &(c * v));
        }
        out
    }

    /// Product with commuting variables; coefficients multiply as
    /// `self`'s coefficient times `other`'s.
    pub fn product(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_signature(other)?;
        let mut out = Self::zero(self.signature);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut out.terms, e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.signature.coordinates() {
            return Err(Error::VariableOutOfRange {
                index: i,
                m: self.signature.m(),
            });
        }
        let mut out = Self::zero(self.signature);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            accumulate(
                &mut out.terms,
                d,
                &c.scale(&Rational::from_integer(e[i].into())),
            );
        }
        Ok(out)
    }

    /// `c·(∂₀f + Σ_j e_j ∂_j f)` with `e_j` acting from the left.
    pub fn dirac(&self, conv: DiracConvention) -> MultiPoly {
        let mut out = Self::zero(self.signature);
        for i in 0..self.signature.coordinates() {
            let d = self.partial(i).expect("index in range");
            let d = if i == 0 {
                d
            } else {
                d.mul_left(&Multivector::generator(i as u32))
            };
            for (e, c) in d.terms {
                accumulate(&mut out.terms, e, &c);
            }
        }
        out.scale(&conv.prefactor())
    }

    /// `Δ^k f` with `Δ = Σ_{i=0}^m ∂²_{x_i}`.
    pub fn laplacian(&self, k: u32) -> MultiPoly {
        let mut cur = self.clone();
        for _ in 0..k {
            let mut next = Self::zero(self.signature);
            for (e, c) in &cur.terms {
                for (i, &ei) in e.iter().enumerate() {
                    if ei < 2 {
                        continue;
                    }
                    let mut d = e.clone();
                    d[i] -= 2;
                    let w = Rational::from_integer((ei * (ei - 1)).into());
                    accumulate(&mut next.terms, d, &c.scale(&w));
                }
            }
            cur = next;
        }
        cur
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Multivector> {
        if point.len() != self.signature.coordinates() {
            return Err(Error::PointLength {
                expected: self.signature.coordinates(),
                got: point.len(),
            });
        }
        let mut out = Multivector::zero();
        for (e, c) in &self.terms {
            let w = e
                .iter()
                .zip(point)
                .filter(|(&k, _)| k > 0)
                .fold(Rational::one(), |acc, (&k, p)| acc * Pow::pow(p, k));
            if !w.is_zero() {
                out += &c.scale(&w);
            }
        }
        Ok(out)
    }
}

/// `P(x₀ + Σ x_j e_j)` as a polynomial in the coordinates; powers of `x` are
/// built by repeated products and `aₙ` multiplies on the right.
pub fn expand_slice_poly(p: &SlicePoly) -> MultiPoly {
    let sig = p.signature();
    let x = MultiPoly::paravector_variable(sig);
    let mut power = MultiPoly::constant(sig, Multivector::one());
    let mut out = MultiPoly::zero(sig);
    for (n, a) in p.coefficients().iter().enumerate() {
        if n > 0 {
            power = power.product(&x).expect("same signature");
        }
        if a.is_zero() {
            continue;
        }
        for (e, c) in power.mul_right(a).terms {
            accumulate(&mut out.terms, e, &c);
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        // graded lex, x0 > x1 > ... > xm
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            (Reverse(da), Reverse(*a)).cmp(&(Reverse(db), Reverse(*b)))
        });
        let rendered = terms.into_iter().map(|(e, c)| {
            let names: Vec<String> = (0..e.len()).map(|i| format!("x{i}")).collect();
            (
                c,
                render::monomial(
                    e.iter()
                        .zip(&names)
                        .map(|(&k, n)| render::power(n, k.into())),
                ),
            )
        });
        f.write_str(&render::render_terms(rendered, CoefficientSide::Left))
    }
}
