//! The operators `∂̄`, `Δ^k` and `∂̄Δ^k` on slice regular polynomials.
//!
//! For a slice regular `f` with spherical derivative stem `F'ₛ(α, β)`,
//!
//! ```text
//! ∂̄f      = ((1 - m)/2) f'ₛ
//! Δ^k f'ₛ = (m-3)(m-5)⋯(m-2k-1) Σ_{ℓ=1}^k a_ℓ^(k) β^{ℓ-2k} ∂_β^ℓ F'ₛ(α, β)
//! a_ℓ^(k) = (-2)^{ℓ-k} (2k-ℓ-1)! / ((ℓ-1)! (k-ℓ)!)
//! ```
//!
//! so `∂̄Δ^k f` is a circular function whose stem is computed here without
//! touching the `m + 1` coordinates. Two independent routes to `Δ^k F'ₛ`
//! are provided for cross-checking: the radial Laplacian iterated on circular
//! stems ([`circular_laplacian`]) and derivatives of `G(α, β²) = F'ₛ(α, β)`
//! ([`laplacian_power_via_g`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::clifford::{AlgebraSignature, Multivector};
use crate::error::{Error, Result};
use crate::mpoly::{expand_slice_poly, DiracConvention};
use crate::slice::{
    accumulate, g_representation, spherical_derivative, stem_components, BiPoly, Parity, SlicePoly,
};
use crate::Rational;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `a (a-1) ⋯ (a-n+1)`; the empty product for `n = 0`.
pub fn falling_factorial(a: i64, n: u32) -> BigInt {
    (0..i64::from(n)).fold(BigInt::one(), |acc, i| acc * (a - i))
}

/// Closed form of `a_ℓ^(k)`.
pub fn coeff_closed(k: u32, ell: u32) -> Result<Rational> {
    if ell == 0 || ell > k {
        return Err(Error::CoefficientIndex { k, ell });
    }
    let num = factorial(2 * k - ell - 1);
    let den = factorial(ell - 1) * factorial(k - ell) * Pow::pow(BigInt::from(-2), k - ell);
    Ok(Rational::new(num, den))
}

/// `a_1^(k), …, a_k^(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    k: u32,
    entries: Vec<Rational>,
}

impl CoeffTable {
    pub fn closed(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition(
                "coefficient tables start at k = 1".into(),
            ));
        }
        let entries = (1..=k)
            .map(|ell| coeff_closed(k, ell))
            .collect::<Result<_>>()?;
        Ok(Self { k, entries })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `a_ℓ^(k)`, with `a_0^(k) = 0` and zero past `ℓ = k`.
    pub fn get(&self, ell: u32) -> Rational {
        if ell == 0 {
            return Rational::zero();
        }
        self.entries
            .get(ell as usize - 1)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The next table by `a_ℓ^(k+1) = a_{ℓ-1}^(k) - (2k - ℓ) a_ℓ^(k)` for
    /// `ℓ ≤ k`, and `a_{k+1}^(k+1) = 1`.
    pub fn next(&self) -> Self {
        let k = self.k;
        let mut entries: Vec<Rational> = (1..=k)
            .map(|ell| {
                let w = Rational::from_integer((2 * i64::from(k) - i64::from(ell)).into());
                self.get(ell - 1) - w * self.get(ell)
            })
            .collect();
        entries.push(Rational::one());
        Self { k: k + 1, entries }
    }
}

/// Tables for `k = 1, …, k_max` built only from the recursion and the
/// boundary values.
pub fn coeff_table_recursive(k_max: u32) -> Vec<CoeffTable> {
    let mut out = Vec::with_capacity(k_max as usize);
    if k_max == 0 {
        return out;
    }
    let mut cur = CoeffTable {
        k: 1,
        entries: vec![Rational::one()],
    };
    out.push(cur.clone());
    for _ in 1..k_max {
        cur = cur.next();
        out.push(cur.clone());
    }
    out
}

/// `Σ_{ℓ=1}^k (-2)^ℓ (2k-ℓ-1)! / ((ℓ-1)!(k-ℓ)!) · (2h)_ℓ` with falling
/// factorials. Equals `(-4)^k h(h-1)⋯(h-k+1)`.
pub fn lemma_sum(k: u32, h: u32) -> BigInt {
    (1..=k)
        .map(|ell| {
            let num = factorial(2 * k - ell - 1);
            let den = factorial(ell - 1) * factorial(k - ell);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            Pow::pow(BigInt::from(-2), ell) * q * falling_factorial(2 * i64::from(h), ell)
        })
        .sum()
}

/// `(m-3)(m-5)⋯(m-2k-1)`, `k` factors; 1 for `k = 0`.
pub fn laplacian_prefactor(signature: AlgebraSignature, k: u32) -> BigInt {
    let m = i64::from(signature.m());
    (1..=i64::from(k)).fold(BigInt::one(), |acc, j| acc * (m - 2 * j - 1))
}

/// True when the prefactor contains the factor `m - 2γ_m - 1 = 0`.
pub fn prefactor_vanishes(signature: AlgebraSignature, k: u32) -> bool {
    k >= signature.sce_exponent()
}

/// Polynomial in `α` and `β, β⁻¹` with multivector coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentBiPoly {
    terms: BTreeMap<(u32, i64), Multivector>,
}

impl LaurentBiPoly {
    pub fn add_term(&mut self, alpha_exp: u32, beta_exp: i64, c: &Multivector) {
        accumulate(&mut self.terms, (alpha_exp, beta_exp), c);
    }

    /// Adds `β^shift · p`.
    pub fn add_shifted(&mut self, p: &BiPoly, shift: i64, scale: &Rational) {
        for ((a, b), c) in p.terms() {
            self.add_term(a, i64::from(b) + shift, &c.scale(scale));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, i64), &Multivector)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Fails if a negative power of `β` kept a nonzero coefficient.
    pub fn into_polynomial(self, parity: Parity) -> Result<BiPoly> {
        let mut out = BiPoly::zero(parity);
        for ((a, b), c) in self.terms {
            let Ok(b) = u32::try_from(b) else {
                return Err(Error::ResidualNegativePower(format!("({c}) a^{a} b^{b}")));
            };
            out.add_term(a, b, &c)?;
        }
        Ok(out)
    }
}

/// `Δ^k f'ₛ` as a stem in `(α, β)`, assembled from `β`-derivatives of `F'ₛ`.
pub fn laplacian_power_spherical(p: &SlicePoly, k: u32) -> Result<BiPoly> {
    let fs = spherical_derivative(&stem_components(p))?;
    laplacian_power_of_spherical(&fs, p.signature(), k)
}

/// As [`laplacian_power_spherical`], starting from a spherical derivative
/// stem that is already known.
pub fn laplacian_power_of_spherical(
    fs: &BiPoly,
    signature: AlgebraSignature,
    k: u32,
) -> Result<BiPoly> {
    if k == 0 {
        return Ok(fs.clone());
    }
    let table = CoeffTable::closed(k)?;
    let mut laurent = LaurentBiPoly::default();
    let mut derivative = fs.clone();
    for ell in 1..=k {
        derivative = derivative.partial_beta();
        laurent.add_shifted(
            &derivative,
            i64::from(ell) - 2 * i64::from(k),
            &table.get(ell),
        );
    }
    let sum = laurent.into_polynomial(Parity::Even)?;
    Ok(sum.scale(&Rational::from_integer(laplacian_prefactor(signature, k))))
}

/// `∂̄f` as the stem `c · F'ₛ`, `c = (1-m)/2` or `1-m`.
pub fn dirac_slice(p: &SlicePoly, conv: DiracConvention) -> Result<BiPoly> {
    let fs = spherical_derivative(&stem_components(p))?;
    Ok(fs.scale(&conv.spherical_factor(p.signature())))
}

/// `∂̄Δ^k f` for a slice regular polynomial, returned as the stem of a
/// circular function.
///
/// For `k ≥ γ_m` the prefactor has a zero factor and the result is zero.
pub fn dirac_laplacian_power(p: &SlicePoly, k: u32, conv: DiracConvention) -> Result<BiPoly> {
    let lap = laplacian_power_spherical(p, k)?;
    Ok(lap.scale(&conv.spherical_factor(p.signature())))
}

/// The Laplacian of ℝ^{m+1} on a circular function `φ(x₀, |Im x|)`:
/// `φ_αα + φ_ββ + (m-1) φ_β / β`.
pub fn circular_laplacian(phi: &BiPoly, signature: AlgebraSignature) -> Result<BiPoly> {
    let phi = phi.with_parity(Parity::Even)?;
    let d_beta = phi.partial_beta();
    let radial = d_beta
        .div_beta()?
        .scale(&Rational::from_integer((signature.m() - 1).into()));
    let out = phi
        .partial_alpha()
        .partial_alpha()
        .add(&d_beta.partial_beta())
        .add(&radial);
    out.with_parity(Parity::Even)
}

/// `2^k (m-3)⋯(m-2k-1) ∂_γ^k G(α, β²)` where `G(α, β²) = F'ₛ(α, β)`.
pub fn laplacian_power_via_g(p: &SlicePoly, k: u32) -> Result<BiPoly> {
    let fs = spherical_derivative(&stem_components(p))?;
    let mut g = g_representation(&fs)?;
    for _ in 0..k {
        g = g.partial_gamma();
    }
    let factor = Pow::pow(BigInt::from(2), k) * laplacian_prefactor(p.signature(), k);
    Ok(g.to_bipoly().scale(&Rational::from_integer(factor)))
}

/// Oracle check that `∂̄Δ^{γ_m} f = 0` on the coordinate expansion.
pub fn fueter_sce_check(p: &SlicePoly) -> bool {
    let gamma = p.signature().sce_exponent();
    expand_slice_poly(p)
        .laplacian(gamma)
        .dirac(DiracConvention::Half)
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(m: u32) -> AlgebraSignature {
        AlgebraSignature::new(m).unwrap()
    }

    fn x5(m: u32) -> SlicePoly {
        SlicePoly::monomial(sig(m), 5)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn closed_form_examples() {
        for k in 1..8 {
            assert_eq!(coeff_closed(k, k).unwrap(), q(1));
        }
        assert_eq!(coeff_closed(2, 1).unwrap(), q(-1));
        assert_eq!(coeff_closed(3, 1).unwrap(), q(3));
        assert_eq!(
            coeff_closed(3, 0),
            Err(Error::CoefficientIndex { k: 3, ell: 0 })
        );
        assert_eq!(
            coeff_closed(3, 4),
            Err(Error::CoefficientIndex { k: 3, ell: 4 })
        );
    }

    #[test]
    fn recursive_examples() {
        let t = coeff_table_recursive(3);
        assert_eq!(t[0].entries(), &[q(1)]);
        assert_eq!(t[1].entries(), &[q(-1), q(1)]);
        assert_eq!(t[2].entries(), &[q(3), q(-3), q(1)]);
        assert!(t.iter().all(|tab| tab.get(0).is_zero()));
        assert!(coeff_table_recursive(0).is_empty());
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(4, 2), BigInt::from(12));
        assert_eq!(falling_factorial(4, 5), BigInt::zero());
        assert_eq!(falling_factorial(0, 1), BigInt::zero());
        assert_eq!(falling_factorial(-3, 0), BigInt::one());
        assert_eq!(falling_factorial(-1, 2), BigInt::from(2));
    }

    #[test]
    fn lemma_sum_examples() {
        for h in 0..6 {
            assert_eq!(lemma_sum(1, h), BigInt::from(-4 * i64::from(h)));
        }
        assert_eq!(lemma_sum(2, 1), BigInt::zero());
        assert_eq!(lemma_sum(2, 2), BigInt::from(32));
    }

    #[test]
    fn laplacian_power_examples() {
        let r = laplacian_power_spherical(&x5(5), 1).unwrap();
        assert_eq!(r.to_string(), "-40 a^2 + 8 b^2");
        assert_eq!(
            laplacian_power_spherical(&x5(9), 2).unwrap().to_string(),
            "192"
        );
        assert!(laplacian_power_spherical(&x5(5), 2).unwrap().is_zero());
        let fs = spherical_derivative(&stem_components(&x5(5))).unwrap();
        assert_eq!(laplacian_power_spherical(&x5(5), 0).unwrap(), fs);
    }

    #[test]
    fn dirac_slice_examples() {
        for m in [3u32, 5, 9] {
            let x = SlicePoly::monomial(sig(m), 1);
            let expected = Rational::new((1 - i64::from(m)).into(), 2.into());
            assert_eq!(
                dirac_slice(&x, DiracConvention::Half).unwrap(),
                BiPoly::constant(expected.into())
            );
        }
        assert_eq!(
            dirac_slice(&x5(5), DiracConvention::Unital)
                .unwrap()
                .to_string(),
            "-20 a^4 + 40 a^2 b^2 - 4 b^4"
        );
        let c = SlicePoly::parse(sig(5), "3 + e12").unwrap();
        assert!(dirac_slice(&c, DiracConvention::Half).unwrap().is_zero());
    }

    #[test]
    fn dirac_laplacian_examples() {
        let u = DiracConvention::Unital;
        assert_eq!(
            dirac_laplacian_power(&x5(5), 1, u).unwrap().to_string(),
            "160 a^2 - 32 b^2"
        );
        assert_eq!(
            dirac_laplacian_power(&x5(9), 2, u).unwrap().to_string(),
            "-1536"
        );
        assert!(dirac_laplacian_power(&x5(9), 3, u).unwrap().is_zero());
        // past the Sce exponent the prefactor vanishes
        assert!(dirac_laplacian_power(&x5(5), 3, u).unwrap().is_zero());
        assert!(prefactor_vanishes(sig(5), 2));
        assert!(!prefactor_vanishes(sig(5), 1));
    }

    #[test]
    fn fueter_sce_examples() {
        assert!(fueter_sce_check(&x5(5)));
        assert!(fueter_sce_check(&x5(3)));
        let p = SlicePoly::parse(sig(5), "x^4 (1 + e12) - x^3 e135 + 2 x e4 + 7").unwrap();
        assert!(fueter_sce_check(&p));
    }

    #[test]
    fn negative_powers_are_reported() {
        let mut l = LaurentBiPoly::default();
        l.add_term(0, -2, &Multivector::one());
        assert!(matches!(
            l.into_polynomial(Parity::Even),
            Err(Error::ResidualNegativePower(_))
        ));
        let mut l = LaurentBiPoly::default();
        l.add_term(0, -2, &Multivector::one());
        l.add_term(0, -2, &-Multivector::one());
        assert!(l.into_polynomial(Parity::Even).unwrap().is_zero());
    }

    #[test]
    fn circular_laplacian_matches_fast_path_on_example() {
        let fs = spherical_derivative(&stem_components(&x5(5))).unwrap();
        let once = circular_laplacian(&fs, sig(5)).unwrap();
        assert_eq!(once, laplacian_power_spherical(&x5(5), 1).unwrap());
    }

    #[test]
    fn via_g_matches_on_example() {
        assert_eq!(laplacian_power_via_g(&x5(9), 2).unwrap().to_string(), "192");
    }
}
