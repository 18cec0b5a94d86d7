//! Product formulas for the bounded generating function at `X = 1`, `t = u = v = 1`
//! and `w ∈ {0, −1}`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::agtp::{lhs_bounded, LhsMode};
use crate::identities::{params, IdentityReport};
use crate::polyring::{Bindings, LaurentPoly, PolyError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("need n >= 1 and m >= n - 1, got n={n} m={m}")]
    BadParameters { n: usize, m: i64 },
    #[error("value {0} is not an integer")]
    NonIntegerResult(String),
    #[error("w must be 0 or -1, got {0}")]
    UnsupportedW(i64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Rising factorial `(a)_i = a(a+1)⋯(a+i−1)` with a rational base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pochhammer {
    pub base: BigRational,
    pub length: u32,
}

impl Pochhammer {
    pub fn new(base: BigRational, length: u32) -> Self {
        Pochhammer { base, length }
    }

    pub fn int(base: i64, length: u32) -> Self {
        Pochhammer { base: BigRational::from_integer(base.into()), length }
    }

    /// Base `num/2`.
    pub fn half(num: i64, length: u32) -> Self {
        Pochhammer { base: BigRational::new(num.into(), 2.into()), length }
    }

    pub fn value(&self) -> BigRational {
        let mut acc = BigRational::one();
        let mut a = self.base.clone();
        for _ in 0..self.length {
            acc *= &a;
            a += BigRational::one();
        }
        acc
    }
}

fn check(n: usize, m: i64) -> Result<(), ClosedFormError> {
    if n == 0 || m < n as i64 - 1 {
        return Err(ClosedFormError::BadParameters { n, m });
    }
    Ok(())
}

fn integral(v: BigRational) -> Result<BigInt, ClosedFormError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(ClosedFormError::NonIntegerResult(v.to_string()))
    }
}

/// `3^{C(n+1,2)} ∏_{i=1}^n (2n+m+2−3i)_i / (i)_i`
pub fn product_formula_w0(n: usize, m: i64) -> Result<BigInt, ClosedFormError> {
    check(n, m)?;
    let ni = n as i64;
    let mut v = BigRational::from_integer(BigInt::from(3).pow((n * (n + 1) / 2) as u32));
    for i in 1..=ni {
        v *= Pochhammer::int(2 * ni + m + 2 - 3 * i, i as u32).value();
        v /= Pochhammer::int(i, i as u32).value();
    }
    integral(v)
}

/// `2^n ∏_{i=1}^n (m−n+3i+1)_{i−1} (m−n+i+1)_i / (((m−n+i+2)/2)_{i−1} (i)_i)`
pub fn product_formula_wm1(n: usize, m: i64) -> Result<BigInt, ClosedFormError> {
    check(n, m)?;
    let ni = n as i64;
    let mut v = BigRational::from_integer(BigInt::from(2).pow(n as u32));
    for i in 1..=ni {
        v *= Pochhammer::int(m - ni + 3 * i + 1, (i - 1) as u32).value();
        v *= Pochhammer::int(m - ni + i + 1, i as u32).value();
        let den = Pochhammer::half(m - ni + i + 2, (i - 1) as u32).value() * Pochhammer::int(i, i as u32).value();
        if den.is_zero() {
            return Err(ClosedFormError::NonIntegerResult("division by zero".into()));
        }
        v /= den;
    }
    integral(v)
}

fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// `2^{n(n−1)/2} ∏_{j=0}^{n−1} (4j+2)! / (n+2j+1)!`
pub fn diagonal_sequence(n: usize) -> Result<BigInt, ClosedFormError> {
    let ni = n as u64;
    let mut v = BigRational::from_integer(BigInt::from(2).pow((n * n.saturating_sub(1) / 2) as u32));
    for j in 0..ni {
        v *= BigRational::new(factorial(4 * j + 2), factorial(ni + 2 * j + 1));
    }
    integral(v)
}

/// The bounded generating function at `X = 1`, `t = u = v = 1` and the given `w`.
pub fn lhs_at_one(n: usize, m: i64, w: i64, mode: LhsMode) -> Result<BigInt, ClosedFormError> {
    check(n, m)?;
    let p = lhs_bounded(n, m, mode)?.substitute(&Bindings::new().int(Var::W, w))?.at_x_one();
    p.as_constant().ok_or_else(|| ClosedFormError::NonIntegerResult(p.to_string()))
}

/// Dispatches on `w`.
pub fn product_formula(w: i64, n: usize, m: i64) -> Result<BigInt, ClosedFormError> {
    match w {
        0 => product_formula_w0(n, m),
        -1 => product_formula_wm1(n, m),
        other => Err(ClosedFormError::UnsupportedW(other)),
    }
}

fn report(id: &str, p: BTreeMap<String, Value>, pairs: Vec<Result<(BigInt, BigInt), ClosedFormError>>, start: Instant) -> IdentityReport {
    let mut parts = Vec::new();
    for pair in pairs {
        match pair {
            Ok((a, b)) => parts.push(IdentityReport::compare(id, p.clone(), None, &LaurentPoly::constant(a), &LaurentPoly::constant(b), start)),
            Err(e) => return IdentityReport::error(id, p, &e.to_string(), start),
        }
    }
    IdentityReport::all_of(id, p, parts, start)
}

/// Product formula at `w ∈ {0, −1}` against the normalized generating function at one.
pub fn verify_closed_form(w: i64, n: usize, m: i64) -> IdentityReport {
    let start = Instant::now();
    let id = if w == 0 { "closed-form-w0" } else { "closed-form-wm1" };
    let p = params(&[("n", n as i64), ("m", m)]);
    let pair = product_formula(w, n, m).and_then(|f| Ok((f, lhs_at_one(n, m, w, LhsMode::Normalized)?)));
    report(id, p, vec![pair], start)
}

/// The factorial sequence against the plain left side at `w = −1, m = n − 1`
/// and against the `w = −1` product formula.
pub fn verify_diagonal(n: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64)]);
    let m = n as i64 - 1;
    let d = diagonal_sequence(n);
    let plain = d.clone().and_then(|d| Ok((d, lhs_at_one(n, m, -1, LhsMode::Plain)?)));
    let formula = d.and_then(|d| Ok((d * BigInt::from(2).pow(n as u32), product_formula_wm1(n, m)?)));
    report("closed-form-diagonal", p, vec![plain, formula], start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(Pochhammer::int(5, 0).value(), BigRational::one());
        assert_eq!(Pochhammer::int(2, 3).value(), BigRational::from_integer(24.into()));
        assert_eq!(Pochhammer::half(1, 2).value(), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn smallest_cases() {
        assert_eq!(product_formula_w0(1, 0).unwrap(), 3.into());
        assert_eq!(lhs_at_one(1, 0, 0, LhsMode::Normalized).unwrap(), 3.into());
        assert_eq!(diagonal_sequence(1).unwrap(), 1.into());
        assert!(product_formula_w0(3, 1).is_err());
        assert!(product_formula(1, 2, 2).is_err());
    }

    #[test]
    fn diagonal_values() {
        let v: Vec<BigInt> = (1..=5).map(|n| diagonal_sequence(n).unwrap()).collect();
        let want: Vec<BigInt> = [1, 4, 60, 3328, 678912].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(v, want);
    }

    #[test]
    fn reports() {
        assert!(verify_closed_form(0, 2, 3).verified());
        assert!(verify_closed_form(-1, 2, 3).verified());
        assert!(verify_diagonal(3).verified());
        assert!(!verify_closed_form(0, 3, 1).verified());
    }
}
