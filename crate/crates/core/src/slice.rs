//! Slice regular polynomials and their stem functions.
//!
//! A polynomial `P(x) = Σ xⁿ aₙ` (right coefficients) is induced by the stem
//! `F = F₀ + iF₁` where `(α + iβ)ⁿ = Pₙ + iQₙ`, `F₀ = Σ Pₙ aₙ` and
//! `F₁ = Σ Qₙ aₙ`. On the quadratic cone, `P(α + Jβ) = F₀(α, β) + J F₁(α, β)`.
//! The spherical derivative is the circular function with stem `F₁ / β`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde_json::{json, Value};

use crate::clifford::{AlgebraSignature, Multivector};
use crate::error::{Error, Result};
use crate::render::{self, CoefficientSide};
use crate::Rational;

/// `Σ_{n=0}^d xⁿ aₙ` with multivector coefficients on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicePoly {
    signature: AlgebraSignature,
    coefficients: Vec<Multivector>,
}

impl SlicePoly {
    /// Trailing zero coefficients are dropped.
    pub fn new(signature: AlgebraSignature, mut coefficients: Vec<Multivector>) -> Result<Self> {
        for c in &coefficients {
            signature.check_multivector(c)?;
        }
        while coefficients.last().is_some_and(Multivector::is_zero) {
            coefficients.pop();
        }
        Ok(Self {
            signature,
            coefficients,
        })
    }

    pub fn zero(signature: AlgebraSignature) -> Self {
        Self {
            signature,
            coefficients: Vec::new(),
        }
    }

    /// `x^n`.
    pub fn monomial(signature: AlgebraSignature, n: usize) -> Self {
        let mut coefficients = vec![Multivector::zero(); n + 1];
        coefficients[n] = Multivector::one();
        Self {
            signature,
            coefficients,
        }
    }

    pub fn parse(signature: AlgebraSignature, text: &str) -> Result<Self> {
        Self::new(signature, crate::parse::parse_poly_coefficients(text)?)
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.signature
    }

    pub fn coefficients(&self) -> &[Multivector] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for SlicePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .map(|(n, c)| (c, render::monomial([render::power("x", n as i64)])));
        f.write_str(&render::render_terms(terms, CoefficientSide::Right))
    }
}

/// Parity of a bivariate polynomial in its second variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Unspecified,
}

impl Parity {
    fn admits(self, beta_exp: u32) -> bool {
        match self {
            Parity::Even => beta_exp.is_multiple_of(2),
            Parity::Odd => beta_exp % 2 == 1,
            Parity::Unspecified => true,
        }
    }

    fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Unspecified => Parity::Unspecified,
        }
    }
}

/// Polynomial in `(α, β)` with multivector coefficients and a declared parity
/// in `β`. Keys are `(α-exponent, β-exponent)`.
///
/// Equality compares terms only; the declared parity is bookkeeping.
#[derive(Debug, Clone)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Multivector>,
    parity: Parity,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Multivector>, key: K, value: &Multivector) {
    use std::collections::btree_map::Entry;
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(value.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += value;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl BiPoly {
    pub fn zero(parity: Parity) -> Self {
        Self {
            terms: BTreeMap::new(),
            parity,
        }
    }

    pub fn constant(c: Multivector) -> Self {
        let mut out = Self::zero(Parity::Even);
        accumulate(&mut out.terms, (0, 0), &c);
        out
    }

    pub fn from_terms<I>(parity: Parity, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), Multivector)>,
    {
        let mut out = Self::zero(parity);
        for ((a, b), c) in terms {
            out.add_term(a, b, &c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, alpha_exp: u32, beta_exp: u32, c: &Multivector) -> Result<()> {
        if !c.is_zero() && !self.parity.admits(beta_exp) {
            return Err(Error::Parity(format!(
                "term a^{alpha_exp} b^{beta_exp} in a polynomial declared {:?} in b",
                self.parity
            )));
        }
        accumulate(&mut self.terms, (alpha_exp, beta_exp), c);
        Ok(())
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Multivector)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, alpha_exp: u32, beta_exp: u32) -> Multivector {
        self.terms
            .get(&(alpha_exp, beta_exp))
            .cloned()
            .unwrap_or_default()
    }

    pub fn beta_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Recomputes the tightest parity the stored terms satisfy.
    pub fn detected_parity(&self) -> Parity {
        if self.terms.keys().all(|&(_, b)| b % 2 == 0) {
            Parity::Even
        } else if self.terms.keys().all(|&(_, b)| b % 2 == 1) {
            Parity::Odd
        } else {
            Parity::Unspecified
        }
    }

    /// Same terms with a new declared parity, checked.
    pub fn with_parity(&self, parity: Parity) -> Result<Self> {
        Self::from_terms(parity, self.terms.iter().map(|(k, v)| (*k, v.clone())))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.parity);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, *k, &v.scale(r));
        }
        out
    }

    /// `c · self`, multiplying every coefficient on the left.
    pub fn mul_left(&self, c: &Multivector) -> Self {
        let mut out = Self::zero(self.parity);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, *k, &(c * v));
        }
        out
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let parity = if self.parity == other.parity {
            self.parity
        } else {
            Parity::Unspecified
        };
        let mut out = Self {
            terms: self.terms.clone(),
            parity,
        };
        for (k, v) in &other.terms {
            accumulate(&mut out.terms, *k, v);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn partial_alpha(&self) -> Self {
        let mut out = Self::zero(self.parity);
        for (&(a, b), v) in &self.terms {
            if a > 0 {
                accumulate(
                    &mut out.terms,
                    (a - 1, b),
                    &v.scale(&Rational::from_integer(a.into())),
                );
            }
        }
        out
    }

    pub fn partial_beta(&self) -> Self {
        let mut out = Self::zero(self.parity.flip());
        for (&(a, b), v) in &self.terms {
            if b > 0 {
                accumulate(
                    &mut out.terms,
                    (a, b - 1),
                    &v.scale(&Rational::from_integer(b.into())),
                );
            }
        }
        out
    }

    /// Exact division by `β`; fails if some term has no factor `β`.
    pub fn div_beta(&self) -> Result<Self> {
        let mut out = Self::zero(self.parity.flip());
        for (&(a, b), v) in &self.terms {
            if b == 0 {
                return Err(Error::Parity(format!("term a^{a} is not divisible by b")));
            }
            accumulate(&mut out.terms, (a, b - 1), v);
        }
        Ok(out)
    }

    pub fn mul_beta(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a, b + 1), v.clone()))
                .collect(),
            parity: self.parity.flip(),
        }
    }

    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Multivector {
        let mut out = Multivector::zero();
        for (&(a, b), v) in &self.terms {
            let w = Pow::pow(alpha, a) * Pow::pow(beta, b);
            out += &v.scale(&w);
        }
        out
    }

    fn canonical_order(&self) -> Vec<((u32, u32), &Multivector)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((a, b), _)| (Reverse(a + b), Reverse(a)));
        terms
    }

    /// `{"terms": [{"a": n, "b": n, "coef": {blade: "p/q"}}]}` in canonical
    /// order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .canonical_order()
            .into_iter()
            .map(|((a, b), c)| json!({"a": a, "b": b, "coef": c.to_json()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(value: &Value, parity: Parity) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: msg.to_string(),
        };
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("expected an object with a \"terms\" array"))?;
        let mut out = Self::zero(parity);
        for t in terms {
            let exp = |key: &str| {
                t.get(key)
                    .and_then(Value::as_u64)
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| bad("term exponents must be non-negative integers"))
            };
            let coef =
                Multivector::from_json(t.get("coef").ok_or_else(|| bad("term without coef"))?)?;
            out.add_term(exp("a")?, exp("b")?, &coef)?;
        }
        Ok(out)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_order().into_iter().map(|((a, b), c)| {
            (
                c,
                render::monomial([render::power("a", a.into()), render::power("b", b.into())]),
            )
        });
        f.write_str(&render::render_terms(terms, CoefficientSide::Left))
    }
}

/// Stem `F = F₀ + iF₁` with `F₀` even and `F₁` odd in `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemPair {
    f0: BiPoly,
    f1: BiPoly,
}

impl StemPair {
    pub fn new(f0: BiPoly, f1: BiPoly) -> Result<Self> {
        Ok(Self {
            f0: f0.with_parity(Parity::Even)?,
            f1: f1.with_parity(Parity::Odd)?,
        })
    }

    /// The stem of a circular slice function (`F₁ = 0`).
    pub fn circular(f0: BiPoly) -> Result<Self> {
        Self::new(f0, BiPoly::zero(Parity::Odd))
    }

    pub fn f0(&self) -> &BiPoly {
        &self.f0
    }

    pub fn f1(&self) -> &BiPoly {
        &self.f1
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Binomial expansion of `(α + iβ)ⁿ` applied to every coefficient.
pub fn stem_components(p: &SlicePoly) -> StemPair {
    let mut f0 = BiPoly::zero(Parity::Even);
    let mut f1 = BiPoly::zero(Parity::Odd);
    for (n, a) in p.coefficients().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let n = n as u32;
        for j in 0..=n {
            // i^j: real for even j with sign (-1)^{j/2}, imaginary for odd j
            // with sign (-1)^{(j-1)/2}.
            let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(binomial(n, j) * sign);
            let target = if j % 2 == 0 { &mut f0 } else { &mut f1 };
            accumulate(&mut target.terms, (n - j, j), &a.scale(&c));
        }
    }
    StemPair { f0, f1 }
}

/// Stem of the spherical derivative, `F'ₛ = F₁ / β`, even in `β`.
pub fn spherical_derivative(stem: &StemPair) -> Result<BiPoly> {
    if stem.f1.parity != Parity::Odd {
        return Err(Error::Parity("F1 is not declared odd".into()));
    }
    stem.f1.div_beta()
}

/// Polynomial `G(α, γ)` with `G(α, β²) = F'ₛ(α, β)`. Keys are
/// `(α-exponent, γ-exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GPoly {
    terms: BTreeMap<(u32, u32), Multivector>,
}

impl GPoly {
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Multivector)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha_exp: u32, gamma_exp: u32) -> Multivector {
        self.terms
            .get(&(alpha_exp, gamma_exp))
            .cloned()
            .unwrap_or_default()
    }

    /// `∂G/∂γ`.
    pub fn partial_gamma(&self) -> Self {
        let mut out = Self::default();
        for (&(a, g), v) in &self.terms {
            if g > 0 {
                accumulate(
                    &mut out.terms,
                    (a, g - 1),
                    &v.scale(&Rational::from_integer(g.into())),
                );
            }
        }
        out
    }

    /// Substitutes `γ = β²`.
    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, g), v)| ((a, 2 * g), v.clone()))
                .collect(),
            parity: Parity::Even,
        }
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((a, g), _)| (Reverse(a + g), Reverse(a)));
        let terms = terms.into_iter().map(|((a, g), c)| {
            (
                c,
                render::monomial([render::power("a", a.into()), render::power("g", g.into())]),
            )
        });
        f.write_str(&render::render_terms(terms, CoefficientSide::Left))
    }
}

/// Replaces every `β^{2j}` by `γ^j`; odd powers of `β` are rejected.
pub fn g_representation(fs: &BiPoly) -> Result<GPoly> {
    let mut out = GPoly::default();
    for (&(a, b), v) in &fs.terms {
        if b % 2 == 1 {
            return Err(Error::Parity(format!(
                "odd term a^{a} b^{b} has no G representation"
            )));
        }
        accumulate(&mut out.terms, (a, b / 2), v);
    }
    Ok(out)
}

/// `f(α + Jβ) = F₀(α, β) + J F₁(α, β)`.
pub fn slice_eval(
    stem: &StemPair,
    alpha: &Rational,
    beta: &Rational,
    j: &Multivector,
) -> Result<Multivector> {
    if !j.is_imaginary_unit() {
        return Err(Error::NotImaginaryUnit);
    }
    let f0 = stem.f0.eval(alpha, beta);
    let f1 = stem.f1.eval(alpha, beta);
    Ok(f0 + j * &f1)
}
