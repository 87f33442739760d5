//! Acceptance suite. Run with
//! `cargo test -p sce-core --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::Rng;

use sce_core::mpoly::{expand_slice_poly, DiracConvention};
use sce_core::operators::{
    coeff_table_recursive, dirac_laplacian_power, fueter_sce_check, lemma_sum, CoeffTable,
};
use sce_core::slice::{spherical_derivative, stem_components, BiPoly, SlicePoly};
use sce_core::theorem::{
    even_basis_rank, ode_residual, random_multivector, random_slice_poly, reconstruct_entire,
    trial_rng, verify_main_theorem, ReconstructionInput,
};
use sce_core::{AlgebraSignature, BladeMask, Multivector, Rational};

const SEED: u64 = 42;

fn sig(m: u32) -> AlgebraSignature {
    AlgebraSignature::new(m).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn x5(m: u32) -> SlicePoly {
    SlicePoly::monomial(sig(m), 5)
}

fn unital(p: &SlicePoly, k: u32) -> String {
    dirac_laplacian_power(p, k, DiracConvention::Unital)
        .unwrap()
        .to_string()
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// Runs a criterion, prints its line and returns whether it passed.
fn criterion(
    id: u32,
    name: &str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<String, String>,
) -> bool {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    let elapsed = start.elapsed();
    let outcome = match (outcome, budget) {
        (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
        (o, _) => o,
    };
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!(
        "[{tag}] {id:>2} {name}: {detail} ({} ms)",
        elapsed.as_millis()
    );
    ok
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn example_1() -> Result<String, String> {
    let f = x5(5);
    expect_eq("F_0", unital(&f, 0), "-20 a^4 + 40 a^2 b^2 - 4 b^4".into())?;
    expect_eq("F_1", unital(&f, 1), "160 a^2 - 32 b^2".into())?;
    expect_eq("F_2", unital(&f, 2), "0".into())?;
    Ok("m=5 f=x^5 unital reproduced".into())
}

fn example_2() -> Result<String, String> {
    let f = x5(9);
    expect_eq("F_0", unital(&f, 0), "-40 a^4 + 80 a^2 b^2 - 8 b^4".into())?;
    expect_eq("F_1", unital(&f, 1), "960 a^2 - 192 b^2".into())?;
    expect_eq("F_2", unital(&f, 2), "-1536".into())?;
    expect_eq("F_3", unital(&f, 3), "0".into())?;
    Ok("m=9 f=x^5 unital reproduced".into())
}

fn kernel_grid() -> Result<String, String> {
    let grid = [
        (3, 0),
        (5, 0),
        (5, 1),
        (7, 0),
        (7, 1),
        (7, 2),
        (9, 1),
        (9, 3),
    ];
    let mut total = 0;
    for (m, k) in grid {
        let r =
            verify_main_theorem(m, k, 2 * k as usize + 4, 50, SEED).map_err(|e| e.to_string())?;
        if !r.passed()
            || r.in_kernel_low_degree != r.low_degree_allocation()
            || r.out_of_kernel_high_degree != r.high_degree_allocation()
        {
            return Err(r.summary());
        }
        total += r.in_kernel_low_degree + r.out_of_kernel_high_degree;
    }
    Ok(format!(
        "{} grid points, {total} polynomials, 0 counterexamples",
        grid.len()
    ))
}

fn liouville() -> Result<String, String> {
    for m in [3, 5, 9] {
        let r = verify_main_theorem(m, 0, 4, 50, SEED).map_err(|e| e.to_string())?;
        if !r.passed() || r.in_kernel_low_degree != 50 || r.out_of_kernel_high_degree != 200 {
            return Err(r.summary());
        }
    }
    Ok("monogenic iff constant for m in {3,5,9}, degrees 0..4".into())
}

fn coefficient_tables() -> Result<String, String> {
    let tables = coeff_table_recursive(12);
    expect_eq("table count", tables.len(), 12)?;
    let mut entries = 0;
    for rec in &tables {
        let closed = CoeffTable::closed(rec.k()).map_err(|e| e.to_string())?;
        for ell in 0..=rec.k() + 1 {
            expect_eq(
                &format!("a({},{ell})", rec.k()),
                rec.get(ell),
                closed.get(ell),
            )?;
            entries += 1;
        }
    }
    Ok(format!("{entries} entries for k <= 12 agree"))
}

fn lemma_sum_identity() -> Result<String, String> {
    let mut n = 0;
    for k in 1..=10u32 {
        for h in 0..=12u32 {
            let want: BigInt = Pow::pow(BigInt::from(-4), k)
                * (0..k).fold(BigInt::one(), |acc, l| acc * (i64::from(h) - i64::from(l)));
            expect_eq(&format!("lemma_sum({k},{h})"), lemma_sum(k, h), want)?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs (1 <= k <= 10, h <= 12) exact"))
}

fn oracle_equivalence() -> Result<String, String> {
    for i in 0..200u64 {
        let mut rng = trial_rng(SEED, 7_000 + i);
        let m = if i % 2 == 0 { 3 } else { 5 };
        let s = sig(m);
        let degree = rng.gen_range(0..=6);
        let k = rng.gen_range(0..=s.sce_exponent());
        let p = random_slice_poly(s, degree, &mut rng);
        let x0 = Rational::new(
            rng.gen_range(-9i64..=9).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let x1 = Rational::new(
            rng.gen_range(-9i64..=9).into(),
            rng.gen_range(1i64..=4).into(),
        );

        let fast = dirac_laplacian_power(&p, k, DiracConvention::Half)
            .map_err(|e| e.to_string())?
            .eval(&x0, &x1);
        let mut point = vec![Rational::zero(); s.coordinates()];
        point[0] = x0.clone();
        point[1] = x1.clone();
        let oracle = expand_slice_poly(&p)
            .laplacian(k)
            .dirac(DiracConvention::Half)
            .eval(&point)
            .map_err(|e| e.to_string())?;
        if fast != oracle {
            return Err(format!(
                "m={m} k={k} P={p} at ({x0}, {x1}): fast {fast}, oracle {oracle}"
            ));
        }
    }
    Ok("200 instances agree".into())
}

fn dirac_vs_spherical() -> Result<String, String> {
    for i in 0..100u64 {
        let mut rng = trial_rng(SEED, 8_000 + i);
        let m = [3, 5, 9][i as usize % 3];
        let s = sig(m);
        let p = random_slice_poly(s, rng.gen_range(0..=5), &mut rng);
        let x0 = Rational::new(
            rng.gen_range(-9i64..=9).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let x1 = Rational::new(
            rng.gen_range(1i64..=9).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let mut point = vec![Rational::zero(); s.coordinates()];
        point[0] = x0.clone();
        point[1] = x1.clone();
        let oracle = expand_slice_poly(&p)
            .dirac(DiracConvention::Half)
            .eval(&point)
            .map_err(|e| e.to_string())?;
        let fs = spherical_derivative(&stem_components(&p)).map_err(|e| e.to_string())?;
        let want = fs
            .eval(&x0, &x1)
            .scale(&Rational::new((1 - i64::from(m)).into(), 2.into()));
        if oracle != want {
            return Err(format!(
                "m={m} P={p} at ({x0}, {x1}): dirac {oracle}, want {want}"
            ));
        }
    }
    Ok("100 polynomials over m in {3,5,9}".into())
}

fn fueter_sce() -> Result<String, String> {
    for i in 0..25u64 {
        let mut rng = trial_rng(SEED, 9_000 + i);
        let m = if i % 2 == 0 { 3 } else { 5 };
        let p = random_slice_poly(sig(m), rng.gen_range(0..=5), &mut rng);
        if !fueter_sce_check(&p) {
            return Err(format!("m={m} P={p}: dirac of Laplacian power nonzero"));
        }
    }
    Ok("25 polynomials axially monogenic at the Sce exponent".into())
}

fn ode_basis() -> Result<String, String> {
    for k in 1..=10u32 {
        for h in 0..=12u32 {
            let (coef, exp) = ode_residual(k, h).map_err(|e| e.to_string())?;
            expect_eq("exponent", exp, 2 * i64::from(h) - 1)?;
            let want: BigInt = Pow::pow(BigInt::from(2), k)
                * (0..k).fold(BigInt::one(), |acc, l| acc * (i64::from(h) - i64::from(l)));
            expect_eq(&format!("residual({k},{h})"), coef.clone(), want)?;
            if (h < k) != coef.is_zero() {
                return Err(format!("residual({k},{h}) = {coef}"));
            }
        }
        let points: Vec<Rational> = (1..=k as i64).map(q).collect();
        expect_eq(
            &format!("rank k={k}"),
            even_basis_rank(k as usize, &points),
            k as usize,
        )?;
    }
    Ok("solutions exactly x^{2h}, h < k, for k <= 10".into())
}

fn reconstruction_round_trip() -> Result<String, String> {
    let s = sig(5);
    let scalars = [BladeMask::SCALAR];
    for i in 0..50u64 {
        let mut rng = trial_rng(SEED, 10_000 + i);
        let k = rng.gen_range(0..=4u32);
        let degree = rng.gen_range(0..=2 * k as usize);
        let coefficients: Vec<Multivector> = (0..=degree)
            .map(|_| random_multivector(&scalars, &mut rng))
            .collect();
        let p = SlicePoly::new(s, coefficients).map_err(|e| e.to_string())?;
        let fs: BiPoly = spherical_derivative(&stem_components(&p)).map_err(|e| e.to_string())?;
        let big = factorial(2 * k as usize + 1);
        let a0 = p.coefficients().first().cloned().unwrap_or_default();

        let exact =
            ReconstructionInput::from_spherical(s, k, &fs, a0.scale(&(Rational::one() / &big)))
                .map_err(|e| e.to_string())?;
        let got = reconstruct_entire(&exact).map_err(|e| e.to_string())?;
        expect_eq(&format!("k={k} P={p}"), got, p.clone())?;

        let shifted = ReconstructionInput::from_spherical(s, k, &fs, Multivector::from_integer(3))
            .map_err(|e| e.to_string())?;
        let got = reconstruct_entire(&shifted).map_err(|e| e.to_string())?;
        let mut want: Vec<Multivector> = p.coefficients().to_vec();
        if want.is_empty() {
            want.push(Multivector::zero());
        }
        want[0] = Multivector::from_integer(3).scale(&big);
        let want = SlicePoly::new(s, want).map_err(|e| e.to_string())?;
        expect_eq(&format!("k={k} P={p} shifted constant"), got, want)?;
    }
    Ok("50 polynomials recovered up to the free constant".into())
}

#[test]
fn acceptance() {
    let ms = Duration::from_millis;
    let results = [
        criterion(1, "example m=5", Some(ms(1_000)), example_1),
        criterion(2, "example m=9", Some(ms(1_000)), example_2),
        criterion(3, "kernel grid", Some(ms(60_000)), kernel_grid),
        criterion(4, "monogenic polynomials are constant", None, liouville),
        criterion(
            5,
            "coefficient recursion",
            Some(ms(1_000)),
            coefficient_tables,
        ),
        criterion(6, "lemma sum identity", Some(ms(1_000)), lemma_sum_identity),
        criterion(
            7,
            "oracle equivalence",
            Some(ms(30_000)),
            oracle_equivalence,
        ),
        criterion(8, "dirac of slice regular", None, dirac_vs_spherical),
        criterion(9, "fueter-sce", Some(ms(60_000)), fueter_sce),
        criterion(10, "ode basis", None, ode_basis),
        criterion(11, "entire reconstruction", None, reconstruction_round_trip),
    ];
    let failed: Vec<usize> = (1..=results.len()).filter(|&i| !results[i - 1]).collect();
    println!(
        "acceptance: {}/{} passed",
        results.len() - failed.len(),
        results.len()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
