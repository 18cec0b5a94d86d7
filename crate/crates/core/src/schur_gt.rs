//! Gelfand–Tsetlin patterns with signed intervals, Schur polynomials and their
//! principal specialization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{asym, exact_div, x_vars, LaurentPoly, Monomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("expected a strictly increasing sequence")]
    NotStrictlyIncreasing,
    #[error("value {0} is not an integer")]
    NonIntegerResult(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The signed interval `si(lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedInterval {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    Normal,
    Empty,
    Negative,
}

impl SignedInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        SignedInterval { lo, hi }
    }

    pub fn kind(&self) -> IntervalKind {
        if self.lo <= self.hi {
            IntervalKind::Normal
        } else if self.hi == self.lo - 1 {
            IntervalKind::Empty
        } else {
            IntervalKind::Negative
        }
    }

    /// Members in increasing order: `[lo, hi]` or, for a negative interval, `[hi+1, lo-1]`.
    pub fn members(&self) -> std::ops::RangeInclusive<i64> {
        match self.kind() {
            IntervalKind::Normal => self.lo..=self.hi,
            IntervalKind::Empty => 1..=0,
            IntervalKind::Negative => self.hi + 1..=self.lo - 1,
        }
    }

    pub fn contains(&self, a: i64) -> bool {
        self.members().contains(&a)
    }

    /// `-1` for a negative interval, `+1` otherwise.
    pub fn sign(&self) -> i32 {
        if self.kind() == IntervalKind::Negative {
            -1
        } else {
            1
        }
    }
}

/// A triangular array, stored top row first; row `i` (1-based) has `i` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GTPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn bottom(&self) -> &[i64] {
        self.rows.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Entry `a_{i,j}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i - 1][j - 1]
    }

    /// `Some(sign)` if every entry lies in the signed interval spanned by its two
    /// lower neighbours.
    pub fn generalized_sign(&self) -> Option<i32> {
        let mut sign = 1;
        for i in 0..self.rows.len().saturating_sub(1) {
            for (j, &a) in self.rows[i].iter().enumerate() {
                let si = SignedInterval::new(self.rows[i + 1][j], self.rows[i + 1][j + 1]);
                if !si.contains(a) {
                    return None;
                }
                sign *= si.sign();
            }
        }
        Some(sign)
    }

    /// Classical interlacing `a_{i+1,j} <= a_{i,j} <= a_{i+1,j+1}`.
    pub fn is_classical(&self) -> bool {
        (0..self.rows.len().saturating_sub(1)).all(|i| {
            self.rows[i]
                .iter()
                .enumerate()
                .all(|(j, &a)| self.rows[i + 1][j] <= a && a <= self.rows[i + 1][j + 1])
        })
    }

    /// `∏ X_i^{(row i sum) − (row i−1 sum)}`.
    pub fn weight(&self) -> Monomial {
        let mut exps = vec![0i32; self.n()];
        let mut prev = 0i64;
        for (i, row) in self.rows.iter().enumerate() {
            let s: i64 = row.iter().sum();
            exps[i] = (s - prev) as i32;
            prev = s;
        }
        Monomial::x_pow(&exps)
    }
}

/// All generalized patterns with the given bottom row, with their signs.
/// Rows are built from the bottom up, entries left to right in increasing value.
pub fn enumerate_gt(bottom: &[i64]) -> Vec<(GTPattern, i32)> {
    assert!(!bottom.is_empty(), "bottom row must be nonempty");
    let mut out = Vec::new();
    let mut rows_rev = vec![bottom.to_vec()];
    extend_up(&mut rows_rev, 1, &mut out);
    out
}

fn extend_up(rows_rev: &mut Vec<Vec<i64>>, sign: i32, out: &mut Vec<(GTPattern, i32)>) {
    let below = rows_rev.last().unwrap().clone();
    if below.len() == 1 {
        let rows: Vec<Vec<i64>> = rows_rev.iter().rev().cloned().collect();
        out.push((GTPattern { rows }, sign));
        return;
    }
    let intervals: Vec<SignedInterval> = below.windows(2).map(|w| SignedInterval::new(w[0], w[1])).collect();
    let mut row = vec![0i64; intervals.len()];
    fill_row(&intervals, 0, &mut row, sign, rows_rev, out);
}

fn fill_row(
    intervals: &[SignedInterval],
    j: usize,
    row: &mut Vec<i64>,
    sign: i32,
    rows_rev: &mut Vec<Vec<i64>>,
    out: &mut Vec<(GTPattern, i32)>,
) {
    if j == intervals.len() {
        rows_rev.push(row.clone());
        extend_up(rows_rev, sign, out);
        rows_rev.pop();
        return;
    }
    let si = intervals[j];
    for a in si.members() {
        row[j] = a;
        fill_row(intervals, j + 1, row, sign * si.sign(), rows_rev, out);
    }
}

/// `s_λ = det(X_i^{λ_j+n−j}) / ∏_{i<j}(X_i − X_j)` for any integer sequence `λ`.
pub fn schur_bialternant(seq: &[i64]) -> Result<LaurentPoly, SchurError> {
    let n = seq.len();
    assert!(n >= 1, "sequence must be nonempty");
    let exps: Vec<i32> = seq.iter().enumerate().map(|(i, &l)| (l + (n - 1 - i) as i64) as i32).collect();
    let vars = x_vars(n);
    let num = asym(&LaurentPoly::term(Monomial::x_pow(&exps), 1), &vars);
    let mut den = LaurentPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            den = &den * &(LaurentPoly::x(i) - LaurentPoly::x(j));
        }
    }
    Ok(exact_div(&num, &den)?)
}

/// Signed weighted sum over [`enumerate_gt`]; equals `schur_bialternant(reverse(bottom))`.
pub fn schur_via_patterns(bottom: &[i64]) -> LaurentPoly {
    LaurentPoly::from_terms(enumerate_gt(bottom).into_iter().map(|(p, s)| (p.weight(), s)))
}

/// `s_{(k_n,…,k_1)}(1,…,1) = ∏_{i<j} (k_j − k_i + j − i)/(j − i)` for a strictly
/// increasing bottom row `k`.
pub fn principal_specialization(k: &[i64]) -> Result<BigInt, SchurError> {
    if k.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SchurError::NotStrictlyIncreasing);
    }
    let v = principal_product(k);
    if !v.is_integer() {
        return Err(SchurError::NonIntegerResult(v.to_string()));
    }
    Ok(v.to_integer())
}

/// The same product for an arbitrary integer sequence, as an exact rational.
pub fn principal_product(k: &[i64]) -> BigRational {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..k.len() {
        for i in 0..j {
            num *= k[j] - k[i] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    if num.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::x(i)
    }

    #[test]
    fn signed_interval_kinds() {
        assert_eq!(SignedInterval::new(1, 3).kind(), IntervalKind::Normal);
        assert_eq!(SignedInterval::new(3, 2).kind(), IntervalKind::Empty);
        let neg = SignedInterval::new(5, 1);
        assert_eq!(neg.kind(), IntervalKind::Negative);
        assert_eq!(neg.members().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(neg.sign(), -1);
    }

    #[test]
    fn eight_patterns_over_one_two_three() {
        let pats = enumerate_gt(&[1, 2, 3]);
        assert_eq!(pats.len(), 8);
        assert!(pats.iter().all(|(p, s)| *s == 1 && p.is_classical()));
        assert_eq!(enumerate_gt(&[4]).len(), 1);
    }

    #[test]
    fn decreasing_bottom_cancels() {
        assert!(schur_via_patterns(&[2, 1]).is_zero());
        assert!(schur_bialternant(&[1, 2]).unwrap().is_zero());
    }

    #[test]
    fn bialternant_examples() {
        assert_eq!(schur_bialternant(&[1, 0]).unwrap(), x(1) + x(2));
        assert_eq!(schur_bialternant(&[5]).unwrap(), x(1).pow(5));
        let s = schur_bialternant(&[2, 1, 0]).unwrap();
        assert_eq!(s.at_x_one().as_constant().unwrap(), 8.into());
    }

    #[test]
    fn patterns_match_bialternant_on_reversed_bottom() {
        assert_eq!(schur_via_patterns(&[0, 1]), schur_bialternant(&[1, 0]).unwrap());
        assert_eq!(schur_via_patterns(&[0, 0]), LaurentPoly::one());
        assert_eq!(schur_via_patterns(&[1, 2, 3]), schur_bialternant(&[3, 2, 1]).unwrap());
    }

    #[test]
    fn principal_specialization_values() {
        // oracles: pattern counts and the bialternant at X = 1
        for k in [vec![1, 2, 3], vec![0, 1, 2], vec![0, 2], vec![0, 3, 4, 7]] {
            let count: i32 = enumerate_gt(&k).iter().map(|(_, s)| s).sum();
            let rev: Vec<i64> = k.iter().rev().cloned().collect();
            let at_one = schur_bialternant(&rev).unwrap().at_x_one().as_constant().unwrap();
            let ps = principal_specialization(&k).unwrap();
            assert_eq!(ps, BigInt::from(count));
            assert_eq!(ps, at_one);
        }
        assert_eq!(principal_specialization(&[1, 2, 3]).unwrap(), 8.into());
        assert!(principal_specialization(&[2, 2]).is_err());
    }
}
