//! Alternating sign triangles, their 1-column statistics, and the related
//! generating functions.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agtp::operator_shifts;
use crate::identities::{params, IdentityReport};
use crate::polyring::{asym, det, vandermonde, x_vars, LaurentPoly, Monomial, PolyError, Var};
use crate::schur_gt::principal_product;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AstError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("value {0} is not an integer")]
    NonIntegerResult(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Row `i` (0-based) holds global columns `i ..= 2n−2−i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AST {
    pub rows: Vec<Vec<i8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASTStats {
    /// Non-central 1-columns, counted from the left from 0 with the centre skipped.
    pub one_columns: Vec<usize>,
    pub rho: usize,
}

impl AST {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Entry in global column `c`, if row `i` covers it.
    pub fn get(&self, i: usize, c: usize) -> Option<i8> {
        if c < i {
            return None;
        }
        self.rows[i].get(c - i).copied()
    }

    fn column(&self, c: usize) -> Vec<i8> {
        (0..self.n()).map_while(|i| self.get(i, c)).collect()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        if n == 0 || self.rows.iter().enumerate().any(|(i, r)| r.len() != 2 * (n - i) - 1) {
            return false;
        }
        let alternates = |v: &[i8]| {
            let nz: Vec<i8> = v.iter().copied().filter(|&x| x != 0).collect();
            nz.iter().all(|x| x.abs() == 1) && nz.windows(2).all(|w| w[0] != w[1])
        };
        let rows_ok = self.rows.iter().all(|r| alternates(r) && r.iter().map(|&x| x as i32).sum::<i32>() == 1);
        let cols_ok = (0..2 * n - 1).all(|c| {
            let col = self.column(c);
            alternates(&col) && col.iter().find(|&&x| x != 0).is_none_or(|&x| x == 1)
        });
        rows_ok && cols_ok
    }

    pub fn stats(&self) -> ASTStats {
        let n = self.n();
        let centre = n - 1;
        let mut one_columns = Vec::new();
        let mut rho = 1;
        for c in 0..2 * n - 1 {
            let col = self.column(c);
            if col.iter().map(|&x| x as i32).sum::<i32>() != 1 || c == centre {
                continue;
            }
            one_columns.push(if c < centre { c } else { c - 1 });
            let bottom_one = *col.last().unwrap() == 1;
            if (c < centre && bottom_one) || (c > centre && !bottom_one) {
                rho += 1;
            }
        }
        ASTStats { one_columns, rho }
    }
}

/// All triangles with `n` rows, rows filled top down.
pub fn enumerate_ast(n: usize) -> Vec<(AST, ASTStats)> {
    assert!(n >= 1, "need at least one row");
    let width = 2 * n - 1;
    let firsts = row_choices(0, width, &vec![0u8; width]);
    let mut out: Vec<(AST, ASTStats)> = firsts
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut sums = vec![0u8; width];
            for (c, &x) in first.iter().enumerate() {
                sums[c] = (sums[c] as i8 + x) as u8;
            }
            let mut found = Vec::new();
            let mut rows = vec![first];
            extend_rows(n, 1, &mut sums, &mut rows, &mut found);
            found
        })
        .map(|t| {
            let s = t.stats();
            (t, s)
        })
        .collect();
    out.sort_by(|a, b| a.0.rows.cmp(&b.0.rows));
    out
}

/// Rows over global columns `i ..= width−1−i` compatible with the column sums:
/// `+1` needs column sum 0, `−1` needs sum 1, and the non-zero entries alternate
/// starting and ending with `+1`.
fn row_choices(i: usize, width: usize, sums: &[u8]) -> Vec<Vec<i8>> {
    let cols: Vec<usize> = (i..width - i).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(cols.len());
    fn rec(k: usize, cols: &[usize], sums: &[u8], running: i8, cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if k == cols.len() {
            if running == 1 {
                out.push(cur.clone());
            }
            return;
        }
        cur.push(0);
        rec(k + 1, cols, sums, running, cur, out);
        cur.pop();
        let s = sums[cols[k]];
        if running == 0 && s == 0 {
            cur.push(1);
            rec(k + 1, cols, sums, 1, cur, out);
            cur.pop();
        } else if running == 1 && s == 1 {
            cur.push(-1);
            rec(k + 1, cols, sums, 0, cur, out);
            cur.pop();
        }
    }
    rec(0, &cols, sums, 0, &mut cur, &mut out);
    out
}

fn extend_rows(n: usize, i: usize, sums: &mut [u8], rows: &mut Vec<Vec<i8>>, out: &mut Vec<AST>) {
    if i == n {
        out.push(AST { rows: rows.clone() });
        return;
    }
    let width = 2 * n - 1;
    for row in row_choices(i, width, sums) {
        for (k, &x) in row.iter().enumerate() {
            sums[i + k] = (sums[i + k] as i8 + x) as u8;
        }
        rows.push(row);
        extend_rows(n, i + 1, sums, rows, out);
        let row = rows.pop().unwrap();
        for (k, &x) in row.iter().enumerate() {
            sums[i + k] = (sums[i + k] as i8 - x) as u8;
        }
    }
}

fn t() -> LaurentPoly {
    LaurentPoly::var(Var::T)
}

fn x(i: usize) -> LaurentPoly {
    LaurentPoly::x(i)
}

/// `∏_{i<n}(t + X_i) ∏_{i<j<n}(1 + X_i + X_i X_j)(X_j − X_i)`
pub fn ast_genfun(n: usize) -> LaurentPoly {
    let k = n.saturating_sub(1);
    let mut p = LaurentPoly::one();
    for i in 1..=k {
        p = &p * &(t() + x(i));
        for j in i + 1..=k {
            p = &p * &(LaurentPoly::one() + x(i) + &x(i) * &x(j));
            p = &p * &(x(j) - x(i));
        }
    }
    p
}

/// `Σ_T t^{ρ(T)−1} ∏ X_l^{j_l}` over all triangles, `j` the 1-column positions.
pub fn ast_position_series(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms(enumerate_ast(n).into_iter().map(|(_, s)| {
        let exps: Vec<i32> = s.one_columns.iter().map(|&j| j as i32).collect();
        (Monomial::x_pow(&exps).mul(&Monomial::var_pow(Var::T, s.rho as i32 - 1)), 1)
    }))
}

/// Coefficients of the product at strictly increasing exponents in `[0, 2n−3]`
/// against the enumeration.
pub fn verify_ast_theorem(n: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64)]);
    let top = 2 * n as i32 - 3;
    let k = n.saturating_sub(1);
    let lhs = ast_genfun(n).filter(|m| {
        let e: Vec<i32> = (1..=k).map(|i| m.exp(Var::X(i))).collect();
        e.iter().all(|&v| (0..=top).contains(&v)) && e.windows(2).all(|w| w[0] < w[1])
    });
    let rhs = ast_position_series(n);
    IdentityReport::compare("ast-theorem", p, None, &lhs, &rhs, start)
}

/// X→1 value of the AGTP generating function from the shift-operator formula:
/// `(t+u+v+w)^n Σ_shifts c · ∏_{i<j}(k_j−k_i+j−i)/(j−i)` at the shifted bottom row.
pub fn agtp_count_at_one(bottom: &[i64]) -> Result<LaurentPoly, AstError> {
    let n = bottom.len();
    let mut total = LaurentPoly::zero();
    for (shift, coeff) in operator_shifts(n) {
        let k: Vec<i64> = bottom.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let v: BigRational = principal_product(&k);
        if !v.is_integer() {
            return Err(AstError::NonIntegerResult(v.to_string()));
        }
        total += &coeff.scale(v.to_integer());
    }
    let s = t() + LaurentPoly::var(Var::U) + LaurentPoly::var(Var::V) + LaurentPoly::var(Var::W);
    Ok(&s.pow(n as u32) * &total)
}

fn check_bounds(n: usize, p: usize, q: usize) -> Result<(), AstError> {
    if n == 0 || p > q || (n >= 2 && q > 2 * n - 3) {
        return Err(AstError::OutOfRange(format!("n={n} p={p} q={q}")));
    }
    Ok(())
}

/// `ASym[∏_{i<j}(1 + X_j + X_i X_j) Σ_{0≤j_1<…<j_{n−1}≤q−p} X^j]` in `n−1` variables.
fn ast_asym_part(n: usize, p: usize, q: usize) -> LaurentPoly {
    let k = n - 1;
    let mut kernel = LaurentPoly::one();
    for i in 1..=k {
        for j in i + 1..=k {
            kernel = &kernel * &(LaurentPoly::one() + x(j) + &x(i) * &x(j));
        }
    }
    let sum = crate::agtp::bounded_k_sum(k, (q - p) as i64, 0);
    asym(&(&kernel * &sum), &x_vars(k))
}

/// The full bounded expression
/// `∏(1 + tX_i) X_i^{−2n+3+p} ∏_{i<j}(X_i − X_j) · ASym[…]`.
pub fn ast_bounded_expression(n: usize, p: usize, q: usize) -> Result<LaurentPoly, AstError> {
    check_bounds(n, p, q)?;
    if n == 1 {
        return Ok(LaurentPoly::one());
    }
    let k = n - 1;
    let mut pre = LaurentPoly::one();
    for i in 1..=k {
        let f = (LaurentPoly::one() + &t() * &x(i)).mul_monomial(&Monomial::var_pow(Var::X(i), p as i32 + 3 - 2 * n as i32));
        pre = &pre * &f;
    }
    // ∏_{i<j}(X_i − X_j) = (−1)^{C(k,2)} ∏_{i<j}(X_j − X_i)
    let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let pre = &pre * &vandermonde(&x_vars(k)).scale(sign);
    Ok(&pre * &ast_asym_part(n, p, q))
}

/// Constant term in the X's of [`ast_bounded_expression`], divided by `(n−1)!`.
pub fn ast_bounded_constant_term(n: usize, p: usize, q: usize) -> Result<LaurentPoly, AstError> {
    let e = ast_bounded_expression(n, p, q)?;
    let ct = e.filter(|m| (1..n.max(1)).all(|i| m.exp(Var::X(i)) == 0));
    let fact: BigInt = (1..n).map(BigInt::from).product::<BigInt>().max(BigInt::one());
    let terms: Vec<(Monomial, BigInt)> = ct.terms().to_vec();
    let mut out = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        if &c % &fact != BigInt::from(0) {
            return Err(AstError::NonIntegerResult(format!("{c}/{fact}")));
        }
        out.push((m, c / &fact));
    }
    Ok(LaurentPoly::from_terms(out))
}

/// `Σ t^{ρ−1}` over triangles whose non-central 1-columns lie in `[p, q]`.
pub fn ast_bounded_count(n: usize, p: usize, q: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        enumerate_ast(n)
            .into_iter()
            .filter(|(_, s)| s.one_columns.iter().all(|&j| p <= j && j <= q))
            .map(|(_, s)| (Monomial::var_pow(Var::T, s.rho as i32 - 1), 1)),
    )
}

pub fn verify_ast_bounded(n: usize, p: usize, q: usize) -> IdentityReport {
    let start = Instant::now();
    let pr = params(&[("n", n as i64), ("p", p as i64), ("q", q as i64)]);
    match ast_bounded_constant_term(n, p, q) {
        Ok(lhs) => IdentityReport::compare("ast-bounded", pr, None, &lhs, &ast_bounded_count(n, p, q), start),
        Err(e) => IdentityReport::error("ast-bounded", pr, &e.to_string(), start),
    }
}

/// Cross-multiplied determinant form of the antisymmetrized part:
/// `ASym[…] ∏(1−X_i) ∏_{i<j}(1−X_iX_j) = det(X_i^{j−1}(1+X_i)^{j−1} − X_i^{q−p+2n−2j−1}(1+X_i)^{j−1})`.
pub fn verify_ast_determinant_form(n: usize, p: usize, q: usize) -> IdentityReport {
    let start = Instant::now();
    let pr = params(&[("n", n as i64), ("p", p as i64), ("q", q as i64)]);
    if let Err(e) = check_bounds(n, p, q) {
        return IdentityReport::error("ast-determinant", pr, &e.to_string(), start);
    }
    if n == 1 {
        return IdentityReport::compare("ast-determinant", pr, None, &LaurentPoly::one(), &LaurentPoly::one(), start);
    }
    let k = n - 1;
    let mut lhs = ast_asym_part(n, p, q);
    for i in 1..=k {
        lhs = &lhs * &(LaurentPoly::one() - x(i));
        for j in i + 1..=k {
            lhs = &lhs * &(LaurentPoly::one() - &x(i) * &x(j));
        }
    }
    let d = (q - p + 2 * n) as i32;
    let m: Vec<Vec<LaurentPoly>> = (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    let base = (LaurentPoly::one() + x(i)).pow(j as u32 - 1);
                    let a = LaurentPoly::var_pow(Var::X(i), j as i32 - 1);
                    let b = LaurentPoly::var_pow(Var::X(i), d - 2 * j as i32 - 1);
                    &base * &(a - b)
                })
                .collect()
        })
        .collect();
    match det(&m) {
        Ok(rhs) => IdentityReport::compare("ast-determinant", pr, None, &lhs, &rhs, start),
        Err(e) => IdentityReport::error("ast-determinant", pr, &e.to_string(), start),
    }
}

/// Number of triangles by row count, from enumeration.
pub fn ast_counts(max_n: usize) -> BTreeMap<usize, usize> {
    (1..=max_n).map(|n| (n, enumerate_ast(n).len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triangles() {
        let one = enumerate_ast(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].0.rows, vec![vec![1]]);
        let two = enumerate_ast(2);
        let tops: Vec<Vec<i8>> = two.iter().map(|(t, _)| t.rows[0].clone()).collect();
        assert_eq!(tops, vec![vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(two.iter().all(|(t, _)| t.is_valid()));
    }

    #[test]
    fn counts_up_to_four() {
        let c = ast_counts(4);
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![1, 2, 7, 42]);
    }

    #[test]
    fn two_row_statistics() {
        // (1,0,0) on top: the left column is a 1-column with bottom entry 1
        for (t, s) in enumerate_ast(2) {
            if t.rows[0] == vec![1, 0, 0] {
                assert_eq!(s, ASTStats { one_columns: vec![0], rho: 2 });
            } else {
                assert_eq!(s, ASTStats { one_columns: vec![1], rho: 1 });
            }
        }
        assert_eq!(ast_genfun(2), t() + x(1));
        assert_eq!(ast_genfun(1), LaurentPoly::one());
    }

    #[test]
    fn displayed_example_is_valid() {
        // the displayed example has four rows
        let tri = AST { rows: vec![vec![0, 0, 0, 1, 0, 0, 0], vec![0, 1, -1, 0, 1], vec![0, 0, 1], vec![1]] };
        assert!(tri.is_valid());
        assert_eq!(tri.stats(), ASTStats { one_columns: vec![2, 3, 4], rho: 1 });
        assert!(enumerate_ast(4).iter().any(|(t, _)| *t == tri));
    }

    #[test]
    fn bounded_small() {
        assert_eq!(ast_bounded_constant_term(2, 0, 1).unwrap(), t() + LaurentPoly::one());
        assert_eq!(ast_bounded_constant_term(2, 0, 0).unwrap(), t());
        assert_eq!(ast_bounded_constant_term(1, 0, 0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn operator_count_single_row() {
        let s = t() + LaurentPoly::var(Var::U) + LaurentPoly::var(Var::V) + LaurentPoly::var(Var::W);
        assert_eq!(agtp_count_at_one(&[3]).unwrap(), s);
    }
}
