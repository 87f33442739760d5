//! Exact checks of the kernel characterization `ker ∂̄Δ^k = A_{2k}[x]` for
//! `k < γ_m`, of the ODE whose polynomial solutions are `1, x², …,
//! x^{2(k-1)}`, and of the reconstruction of an entire function from the
//! odd part of its stem.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::clifford::{AlgebraSignature, BladeMask, Multivector};
use crate::error::{Error, Result};
use crate::mpoly::DiracConvention;
use crate::operators::{coeff_closed, dirac_laplacian_power, falling_factorial};
use crate::slice::{BiPoly, SlicePoly};
use crate::Rational;

/// True iff `∂̄Δ^k P` vanishes identically.
pub fn kernel_test(p: &SlicePoly, k: u32) -> Result<bool> {
    Ok(dirac_laplacian_power(p, k, DiracConvention::Half)?.is_zero())
}

/// Blades used for random coefficients: all `2^m` for `m ≤ 5`, grade ≤ 2
/// above that.
pub fn random_support(signature: AlgebraSignature) -> Vec<BladeMask> {
    let m = signature.m();
    let all = (0u32..1 << m).map(BladeMask);
    if m <= 5 {
        all.collect()
    } else {
        all.filter(|b| b.grade() <= 2).collect()
    }
}

/// Random multivector with integer entries in `-5..=5` on `support`.
pub fn random_multivector<R: Rng + ?Sized>(support: &[BladeMask], rng: &mut R) -> Multivector {
    Multivector::from_terms(
        support
            .iter()
            .map(|&b| (b, Rational::from_integer(rng.gen_range(-5i64..=5).into()))),
    )
}

/// Random polynomial of exact degree `degree` (nonzero leading coefficient).
pub fn random_slice_poly<R: Rng + ?Sized>(
    signature: AlgebraSignature,
    degree: usize,
    rng: &mut R,
) -> SlicePoly {
    let support = random_support(signature);
    let mut coefficients: Vec<Multivector> = (0..degree)
        .map(|_| random_multivector(&support, rng))
        .collect();
    let lead = loop {
        let c = random_multivector(&support, rng);
        if !c.is_zero() {
            break c;
        }
    };
    coefficients.push(lead);
    SlicePoly::new(signature, coefficients).expect("support lies inside the signature")
}

/// Generator for one trial; depends only on the seed and the trial counter.
pub fn trial_rng(seed: u64, counter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(counter);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub poly: SlicePoly,
    pub degree: usize,
    pub in_kernel: bool,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub m: u32,
    pub k: u32,
    pub deg_max: usize,
    /// Trials per degree.
    pub trials: usize,
    pub in_kernel_low_degree: usize,
    pub out_of_kernel_high_degree: usize,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

impl KernelReport {
    pub fn low_degree_allocation(&self) -> usize {
        self.trials * (2 * self.k as usize + 1)
    }

    pub fn high_degree_allocation(&self) -> usize {
        self.trials * (self.deg_max - 2 * self.k as usize)
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "degree": c.degree,
                    "in_kernel": c.in_kernel,
                    "poly": c.poly.to_string(),
                })
            })
            .collect();
        json!({
            "m": self.m,
            "k": self.k,
            "deg_max": self.deg_max,
            "trials": self.trials,
            "in_kernel_low_degree": self.in_kernel_low_degree,
            "out_of_kernel_high_degree": self.out_of_kernel_high_degree,
            "failures": failures,
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }

    /// One-line summary without timing, stable across runs.
    pub fn summary(&self) -> String {
        format!(
            "m={} k={} deg_max={} trials/degree={}: in kernel (deg <= {}) {}/{}, outside kernel (deg > {}) {}/{}, counterexamples {}",
            self.m,
            self.k,
            self.deg_max,
            self.trials,
            2 * self.k,
            self.in_kernel_low_degree,
            self.low_degree_allocation(),
            2 * self.k,
            self.out_of_kernel_high_degree,
            self.high_degree_allocation(),
            self.counterexamples.len()
        )
    }
}

/// Randomized check that exactly the polynomials of degree `≤ 2k` lie in the
/// kernel. `trials` polynomials per degree `0..=deg_max`; deterministic for a
/// fixed seed regardless of thread scheduling.
pub fn verify_main_theorem(
    m: u32,
    k: u32,
    deg_max: usize,
    trials: usize,
    seed: u64,
) -> Result<KernelReport> {
    let signature = AlgebraSignature::new(m)?;
    if k >= signature.sce_exponent() {
        return Err(Error::Precondition(format!(
            "k = {k} must be below the Sce exponent {} for m = {m}",
            signature.sce_exponent()
        )));
    }
    if deg_max <= 2 * k as usize {
        return Err(Error::Precondition(format!(
            "deg_max = {deg_max} must exceed 2k = {}",
            2 * k
        )));
    }
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = (0..=deg_max)
        .flat_map(|d| (0..trials).map(move |t| (d, t)))
        .collect();
    let outcomes: Vec<Result<(usize, bool, SlicePoly)>> = jobs
        .par_iter()
        .map(|&(d, t)| {
            let mut rng = trial_rng(seed, (d * trials + t) as u64);
            let p = random_slice_poly(signature, d, &mut rng);
            let in_kernel = kernel_test(&p, k)?;
            Ok((d, in_kernel, p))
        })
        .collect();

    let mut report = KernelReport {
        m,
        k,
        deg_max,
        trials,
        in_kernel_low_degree: 0,
        out_of_kernel_high_degree: 0,
        counterexamples: Vec::new(),
        elapsed_ms: 0,
    };
    for outcome in outcomes {
        let (d, in_kernel, poly) = outcome?;
        let low = d <= 2 * k as usize;
        match (low, in_kernel) {
            (true, true) => report.in_kernel_low_degree += 1,
            (false, false) => report.out_of_kernel_high_degree += 1,
            _ => report.counterexamples.push(Counterexample {
                poly,
                degree: d,
                in_kernel,
            }),
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Residual of `Σ_{ℓ=1}^k a_ℓ^(k) x^{ℓ-1} y^{(ℓ)}(x)` at `y = x^{2h}`, as the
/// monomial `coefficient · x^{exponent}`.
pub fn ode_residual(k: u32, h: u32) -> Result<(BigInt, i64)> {
    if k == 0 {
        return Err(Error::Precondition("the ODE has order k >= 1".into()));
    }
    let mut sum = Rational::zero();
    for ell in 1..=k {
        sum += coeff_closed(k, ell)?
            * Rational::from_integer(falling_factorial(2 * i64::from(h), ell));
    }
    if !sum.is_integer() {
        return Err(Error::Precondition(format!("non-integral residual {sum}")));
    }
    Ok((sum.to_integer(), 2 * i64::from(h) - 1))
}

/// Rank over ℚ of the matrix `[p_i^{2j}]`, `i < points.len()`, `j < k`.
pub fn even_basis_rank(k: usize, points: &[Rational]) -> usize {
    let mut rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let sq = p * p;
            (0..k).map(|j| Pow::pow(&sq, j as u32)).collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..k {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Univariate polynomial in `α` with multivector coefficients, dense and
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlphaPoly(Vec<Multivector>);

impl AlphaPoly {
    pub fn new(mut coefficients: Vec<Multivector>) -> Self {
        while coefficients.last().is_some_and(Multivector::is_zero) {
            coefficients.pop();
        }
        Self(coefficients)
    }

    pub fn coefficients(&self) -> &[Multivector] {
        &self.0
    }

    pub fn coefficient(&self, i: usize) -> Multivector {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c.scale(r)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| self.coefficient(i) + other.coefficient(i))
                .collect(),
        )
    }
}

/// Data of `v(α, β) = Σ_{ℓ<k} c_ℓ(α) β^{2ℓ+1}` plus the free constant
/// `s_{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionInput {
    signature: AlgebraSignature,
    k: u32,
    c: Vec<AlphaPoly>,
    s_minus1: Multivector,
}

impl ReconstructionInput {
    pub fn new(
        signature: AlgebraSignature,
        k: u32,
        c: Vec<AlphaPoly>,
        s_minus1: Multivector,
    ) -> Result<Self> {
        if c.len() != k as usize {
            return Err(Error::Precondition(format!(
                "expected {k} functions c_0..c_{{k-1}}, got {}",
                c.len()
            )));
        }
        for ci in &c {
            for coef in ci.coefficients() {
                signature.check_multivector(coef)?;
            }
        }
        signature.check_multivector(&s_minus1)?;
        Ok(Self {
            signature,
            k,
            c,
            s_minus1,
        })
    }

    /// Reads `c_ℓ` off a spherical derivative `F'ₛ = Σ c_ℓ(α) β^{2ℓ}`.
    pub fn from_spherical(
        signature: AlgebraSignature,
        k: u32,
        fs: &BiPoly,
        s_minus1: Multivector,
    ) -> Result<Self> {
        let mut c = vec![Vec::<Multivector>::new(); k as usize];
        for ((a, b), coef) in fs.terms() {
            if b % 2 == 1 || b / 2 >= k {
                return Err(Error::Precondition(format!(
                    "spherical derivative term a^{a} b^{b} is outside span{{1, b^2, ..., b^{}}}",
                    2 * k.saturating_sub(1)
                )));
            }
            let ci = &mut c[(b / 2) as usize];
            if ci.len() <= a as usize {
                ci.resize(a as usize + 1, Multivector::zero());
            }
            ci[a as usize] = coef.clone();
        }
        Self::new(
            signature,
            k,
            c.into_iter().map(AlphaPoly::new).collect(),
            s_minus1,
        )
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> &[AlphaPoly] {
        &self.c
    }
}

/// `c_ℓ'' = -(2ℓ+2)(2ℓ+3) c_{ℓ+1}` for `ℓ ≤ k-2` and `c_{k-1}'' = 0`.
pub fn harmonicity_check(input: &ReconstructionInput) -> bool {
    let c = &input.c;
    c.iter().enumerate().all(|(ell, ci)| {
        let second = ci.derivative().derivative();
        match c.get(ell + 1) {
            Some(next) => {
                let w = Rational::from_integer(((2 * ell + 2) * (2 * ell + 3)).into());
                second.add(&next.scale(&w)).is_zero()
            }
            None => second.is_zero(),
        }
    })
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// The polynomial `F(z) = Σ_{ℓ=0}^{2k} ((2k+1)!/ℓ!) s_{ℓ-1} z^ℓ`, with
/// `s_0, …, s_{2k-1}` read from `c_0 = (2k+1)! Σ α^η/η! s_η` and every other
/// `c_ℓ` checked against
/// `(-1)^ℓ (2k+1)!/(2ℓ+1)! Σ_{η ≤ 2k-2ℓ-1} α^η/η! s_{η+2ℓ}`.
pub fn reconstruct_entire(input: &ReconstructionInput) -> Result<SlicePoly> {
    let k = input.k as usize;
    for (ell, ci) in input.c.iter().enumerate() {
        let bound = 2 * k - 2 * ell - 1;
        if let Some(degree) = ci.degree() {
            if degree > bound {
                return Err(Error::DegreeBound { ell, degree, bound });
            }
        }
    }
    if !harmonicity_check(input) {
        return Err(Error::NotHarmonic);
    }
    let big = factorial(2 * k + 1);
    let s: Vec<Multivector> = (0..2 * k)
        .map(|eta| input.c[0].coefficient(eta).scale(&(factorial(eta) / &big)))
        .collect();
    for (ell, ci) in input.c.iter().enumerate().skip(1) {
        let sign = if ell % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let lead = sign * &big / factorial(2 * ell + 1);
        let expected = AlphaPoly::new(
            (0..=2 * k - 2 * ell - 1)
                .map(|eta| s[eta + 2 * ell].scale(&(&lead / factorial(eta))))
                .collect(),
        );
        if &expected != ci {
            return Err(Error::InconsistentReconstruction { ell });
        }
    }
    let mut coefficients = Vec::with_capacity(2 * k + 1);
    coefficients.push(input.s_minus1.scale(&big));
    for ell in 1..=2 * k {
        coefficients.push(s[ell - 1].scale(&(&big / factorial(ell))));
    }
    SlicePoly::new(input.signature, coefficients)
}
