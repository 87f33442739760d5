//! Exact arithmetic in the Clifford algebra ℝ_m = Cl(0, m).
//!
//! Basis blades `e_A` are encoded as bitsets (generator `i` at bit `i - 1`),
//! and a [`Multivector`] is a sparse map from blades to exact rationals. The
//! zero multivector is the empty map, so structural equality is algebraic
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::Rational;

/// Largest supported number of generators (blades are stored in a `u32`).
pub const MAX_GENERATORS: u32 = 31;

/// The algebra ℝ_m with `m` odd, together with its Sce exponent `(m - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    m: u32,
}

impl AlgebraSignature {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) || m > MAX_GENERATORS {
            return Err(Error::InvalidSignature(m));
        }
        Ok(Self { m })
    }

    pub fn m(self) -> u32 {
        self.m
    }

    /// γ_m = (m - 1) / 2.
    pub fn sce_exponent(self) -> u32 {
        (self.m - 1) / 2
    }

    /// Number of paravector coordinates x₀, …, x_m.
    pub fn coordinates(self) -> usize {
        self.m as usize + 1
    }

    pub fn contains(self, blade: BladeMask) -> bool {
        blade.0 >> self.m == 0
    }

    pub(crate) fn check_multivector(self, x: &Multivector) -> Result<()> {
        for blade in x.terms.keys() {
            if !self.contains(*blade) {
                return Err(Error::BladeOutOfRange {
                    blade: blade.label(),
                    m: self.m,
                });
            }
        }
        Ok(())
    }
}

/// A basis blade `e_A`, `A ⊆ {1, …, m}`; the empty set is the unit `e₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BladeMask(pub u32);

impl BladeMask {
    pub const SCALAR: BladeMask = BladeMask(0);

    /// The generator `e_i`, `i ≥ 1`.
    pub fn generator(i: u32) -> Self {
        assert!(
            (1..=MAX_GENERATORS).contains(&i),
            "generator index {i} out of range"
        );
        BladeMask(1 << (i - 1))
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        indices.into_iter().fold(BladeMask::SCALAR, |acc, i| {
            BladeMask(acc.0 | Self::generator(i).0)
        })
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..32).filter(move |b| bits >> b & 1 == 1).map(|b| b + 1)
    }

    pub fn max_generator(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    /// Blade label without the leading `e`: `""`, `"1"`, `"13"`, or `"1,13"`
    /// once any index needs two digits.
    pub fn label(self) -> String {
        let idx: Vec<u32> = self.indices().collect();
        if idx.iter().any(|&i| i >= 10) {
            idx.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        } else {
            idx.iter().map(u32::to_string).collect()
        }
    }

    /// Sign of reversing the blade, `(-1)^{|A|(|A|-1)/2}`.
    pub fn reversion_sign(self) -> i8 {
        let g = self.grade();
        if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Sign picked up by Clifford conjugation, `(-1)^{|A|(|A|+1)/2}`.
    pub fn conjugation_sign(self) -> i8 {
        let g = self.grade();
        if (g * (g + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

// Grade first, then lexicographic on the increasing index sequence.
impl Ord for BladeMask {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for BladeMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BladeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = self.label();
        if label.is_empty() {
            write!(f, "1")
        } else if label.contains(',') {
            write!(f, "e{{{label}}}")
        } else {
            write!(f, "e{label}")
        }
    }
}

/// `e_A · e_B = sign · e_{A △ B}`.
///
/// The sign counts the transpositions needed to sort the concatenated index
/// list, times `-1` for every generator squared away.
pub fn blade_product(a: BladeMask, b: BladeMask) -> (i8, BladeMask) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, BladeMask(a.0 ^ b.0))
}

/// An element `Σ x_A e_A` of ℝ_m with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multivector {
    terms: BTreeMap<BladeMask, Rational>,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(r: Rational) -> Self {
        Self::blade(BladeMask::SCALAR, r)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::scalar(Rational::from_integer(n.into()))
    }

    pub fn blade(blade: BladeMask, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(blade, r);
        }
        Self { terms }
    }

    /// The generator `e_i` with coefficient 1.
    pub fn generator(i: u32) -> Self {
        Self::blade(BladeMask::generator(i), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (BladeMask, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (blade, r) in terms {
            out.add_term(blade, r);
        }
        out
    }

    /// The paravector `x₀ + Σ x_j e_j`.
    pub fn paravector(coords: &[Rational]) -> Self {
        Self::from_terms(coords.iter().enumerate().map(|(j, c)| {
            let blade = if j == 0 {
                BladeMask::SCALAR
            } else {
                BladeMask::generator(j as u32)
            };
            (blade, c.clone())
        }))
    }

    pub fn add_term(&mut self, blade: BladeMask, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, &Rational)> {
        self.terms.iter().map(|(b, r)| (*b, r))
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

    pub fn coefficient(&self, blade: BladeMask) -> Rational {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scalar_part(&self) -> Rational {
        self.coefficient(BladeMask::SCALAR)
    }

    /// True for zero or a pure multiple of `1`.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == BladeMask::SCALAR)
    }

    /// Real if scalar, otherwise `None`.
    pub fn as_scalar(&self) -> Option<Rational> {
        self.is_scalar().then(|| self.scalar_part())
    }

    /// True if every blade has grade at most one.
    pub fn is_paravector(&self) -> bool {
        self.terms.keys().all(|b| b.grade() <= 1)
    }

    pub fn max_generator(&self) -> u32 {
        self.terms
            .keys()
            .map(|b| b.max_generator())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(b, c)| (*b, c * r)).collect(),
        }
    }

    /// Clifford conjugation: the antiautomorphism with `e_i ↦ -e_i`.
    pub fn conjugate(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| {
                    let c = if b.conjugation_sign() < 0 {
                        -c
                    } else {
                        c.clone()
                    };
                    (*b, c)
                })
                .collect(),
        }
    }

    /// `(t(x), n(x)) = (x + x^c, x·x^c)`.
    pub fn quadratic_invariants(&self) -> (Multivector, Multivector) {
        let conj = self.conjugate();
        let t = self + &conj;
        let n = self * &conj;
        (t, n)
    }

    pub fn is_imaginary_unit(&self) -> bool {
        let (t, n) = self.quadratic_invariants();
        t.is_zero() && n == Multivector::one()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (b, r) in &self.terms {
            map.insert(b.label(), Value::String(r.to_string()));
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "multivector JSON must be an object".into(),
        })?;
        let mut out = Self::zero();
        for (label, r) in obj {
            let blade = crate::parse::parse_blade_label(label)?;
            let text = r.as_str().ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("coefficient of blade {label:?} must be a rational string"),
            })?;
            out.add_term(blade, crate::parse::parse_rational(text)?);
        }
        Ok(out)
    }
}

impl From<Rational> for Multivector {
    fn from(r: Rational) -> Self {
        Self::scalar(r)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (blade, r)) in self.terms.iter().enumerate() {
            let negative = r.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = r.abs();
            if *blade == BladeMask::SCALAR {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{abs} {blade}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Multivector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_multivector(s)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(mut self, rhs: Multivector) -> Multivector {
        self += &rhs;
        self
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        for (b, r) in &rhs.terms {
            self.add_term(*b, r.clone());
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        for (b, r) in &rhs.terms {
            self.add_term(*b, -r);
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= &rhs;
        self
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        Multivector {
            terms: self.terms.iter().map(|(b, r)| (*b, -r)).collect(),
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        -&self
    }
}

/// Geometric product, the bilinear extension of [`blade_product`].
impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (a, ra) in &self.terms {
            for (b, rb) in &rhs.terms {
                let (sign, blade) = blade_product(*a, *b);
                let prod = ra * rb;
                out.add_term(blade, if sign < 0 { -prod } else { prod });
            }
        }
        out
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

/// Kind of an element with respect to the quadratic cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    NotInCone,
    Real,
    NonReal,
}

/// `x = α + Jβ` with β kept squared so everything stays rational.
///
/// `imaginary` is `x - α = Jβ`. For `NotInCone`, `alpha` and `beta_squared`
/// are zero and `imaginary` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub kind: ConeKind,
    pub alpha: Rational,
    pub beta_squared: Rational,
    pub imaginary: Multivector,
}

impl ConeDecomposition {
    fn not_in_cone() -> Self {
        Self {
            kind: ConeKind::NotInCone,
            alpha: Rational::zero(),
            beta_squared: Rational::zero(),
            imaginary: Multivector::zero(),
        }
    }
}

/// Decide membership in the quadratic cone `{x : t(x), n(x) ∈ ℝ}` and split
/// off the real part.
///
/// A nonzero imaginary part with `n(x) - α² ≤ 0` (nilpotent directions) has
/// no `J` on the sphere of imaginary units and is reported as `NotInCone`.
pub fn cone_decompose(x: &Multivector) -> ConeDecomposition {
    let (t, n) = x.quadratic_invariants();
    let (Some(t), Some(n)) = (t.as_scalar(), n.as_scalar()) else {
        return ConeDecomposition::not_in_cone();
    };
    let alpha = t / Rational::from_integer(2.into());
    let imaginary = x - &Multivector::scalar(alpha.clone());
    if imaginary.is_zero() {
        return ConeDecomposition {
            kind: ConeKind::Real,
            alpha,
            beta_squared: Rational::zero(),
            imaginary,
        };
    }
    let beta_squared = n - &alpha * &alpha;
    if !beta_squared.is_positive() {
        return ConeDecomposition::not_in_cone();
    }
    ConeDecomposition {
        kind: ConeKind::NonReal,
        alpha,
        beta_squared,
        imaginary,
    }
}
