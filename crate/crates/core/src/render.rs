//! Canonical text for polynomials with multivector coefficients.

use num_traits::{One, Signed};

use crate::clifford::Multivector;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum CoefficientSide {
    /// `2 e1 a^2`, `(1 + e1) a^2`
    Left,
    /// scalars on the left, everything else parenthesized on the right:
    /// `3 x^2`, `x^2 (1 + e1)`
    Right,
}

/// Renders an already ordered list of `(coefficient, monomial)` pairs.
/// Monomials are strings like `"a^2 b"`; the empty string is the constant.
pub(crate) fn render_terms<'a, I>(terms: I, side: CoefficientSide) -> String
where
    I: IntoIterator<Item = (&'a Multivector, String)>,
{
    let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    let lone = terms.len() == 1;
    let mut out = String::new();
    for (i, (coef, mono)) in terms.iter().enumerate() {
        let (negative, body) = render_term(coef, mono, side, lone);
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn join(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a} {b}"),
    }
}

fn render_term(
    coef: &Multivector,
    mono: &str,
    side: CoefficientSide,
    lone: bool,
) -> (bool, String) {
    if let Some(r) = coef.as_scalar() {
        let abs = r.abs();
        let c = if abs.is_one() && !mono.is_empty() {
            String::new()
        } else {
            abs.to_string()
        };
        return (r.is_negative(), join(&c, mono));
    }
    if side == CoefficientSide::Left && coef.len() == 1 {
        let (blade, r) = coef.terms().next().expect("one term");
        let abs = r.abs();
        let c = if abs.is_one() {
            blade.to_string()
        } else {
            format!("{abs} {blade}")
        };
        return (r.is_negative(), join(&c, mono));
    }
    let inner = coef.to_string();
    if mono.is_empty() {
        let body = if lone && side == CoefficientSide::Left {
            inner
        } else {
            format!("({inner})")
        };
        return (false, body);
    }
    let body = match side {
        CoefficientSide::Left => format!("({inner}) {mono}"),
        CoefficientSide::Right => format!("{mono} ({inner})"),
    };
    (false, body)
}

/// `name^e`, `name` for `e = 1`, nothing for `e = 0`.
pub(crate) fn power(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

pub(crate) fn monomial<I: IntoIterator<Item = Option<String>>>(factors: I) -> String {
    factors.into_iter().flatten().collect::<Vec<_>>().join(" ")
}
