//! Verification engines for the bounded and unbounded Littlewood-type identities
//! and the auxiliary lemmas.
//!
//! Alternating polynomials are compared through [`asym_dominant`]: an alternating
//! polynomial is determined by its terms whose X-exponents strictly increase, so two
//! sides agree iff these parts agree. Multiplying an alternating polynomial by a
//! symmetric one is done with [`asym_dominant_product`], and `det(f_j(X_i))` is
//! `ASym[∏_j f_j(X_j)]`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::agtp::{bounded_k_sum, w_kernel};
use crate::polyring::{
    asym, asym_dominant, asym_dominant_product, complete_homog, det, exact_div, mul_truncated, series_expand,
    series_inverse, vandermonde, x_vars, Bindings, LaurentPoly, Monomial, PolyError, Var,
};
use crate::schur_gt::schur_bialternant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub cap: Option<i32>,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Compares two canonical forms.
    pub fn compare(
        identity: &str,
        params: BTreeMap<String, Value>,
        cap: Option<i32>,
        lhs: &LaurentPoly,
        rhs: &LaurentPoly,
        start: Instant,
    ) -> Self {
        let first_mismatch = lhs.first_difference(rhs).map(|(m, l, r)| Mismatch {
            monomial: m.to_string(),
            lhs: l.to_string(),
            rhs: r.to_string(),
        });
        IdentityReport {
            identity: identity.to_string(),
            params,
            status: if first_mismatch.is_none() { Status::Verified } else { Status::Failed },
            cap,
            lhs_terms: lhs.len(),
            rhs_terms: rhs.len(),
            first_mismatch,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// Combines several sub-checks into one report; the first failure wins.
    pub fn all_of(identity: &str, params: BTreeMap<String, Value>, parts: Vec<IdentityReport>, start: Instant) -> Self {
        let failed = parts.iter().find(|p| !p.verified()).cloned();
        IdentityReport {
            identity: identity.to_string(),
            params,
            status: if failed.is_some() { Status::Failed } else { Status::Verified },
            cap: parts.iter().filter_map(|p| p.cap).max(),
            lhs_terms: parts.iter().map(|p| p.lhs_terms).sum(),
            rhs_terms: parts.iter().map(|p| p.rhs_terms).sum(),
            first_mismatch: failed.and_then(|p| p.first_mismatch),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// A failure without a polynomial mismatch, e.g. an inexact division.
    pub fn error(identity: &str, params: BTreeMap<String, Value>, what: &str, start: Instant) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params,
            status: Status::Failed,
            cap: None,
            lhs_terms: 0,
            rhs_terms: 0,
            first_mismatch: Some(Mismatch { monomial: "-".into(), lhs: what.into(), rhs: "-".into() }),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Builds a parameter map from `(name, integer)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect()
}

fn x(i: usize) -> LaurentPoly {
    LaurentPoly::x(i)
}

fn xp(i: usize, e: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::X(i), e)
}

fn q() -> LaurentPoly {
    LaurentPoly::var(Var::Q)
}

fn r() -> LaurentPoly {
    LaurentPoly::var(Var::R)
}

fn w() -> LaurentPoly {
    LaurentPoly::var(Var::W)
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

fn powi(p: &LaurentPoly, e: i64) -> LaurentPoly {
    assert!(e >= 0, "negative power of a non-monomial");
    p.pow(e as u32)
}

/// `∏_i X_i^{i-1}`; `ASym` of it is the Vandermonde product.
fn delta(n: usize) -> Monomial {
    Monomial::x_pow(&(0..n as i32).collect::<Vec<_>>())
}

/// The strictly increasing part of an alternating polynomial.
pub fn alternating_part(g: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    g.filter(|m| vars.windows(2).all(|p| m.0[p[0] - 1] < m.0[p[1] - 1]))
}

/// `Σ_{0≤k_1<…<k_n≤m} ∏_i f(k_i, i)`, optionally truncated at an X-degree cap.
pub fn bounded_sum<F>(n: usize, m: i64, cap: Option<i32>, f: F) -> LaurentPoly
where
    F: Fn(i64, usize) -> LaurentPoly,
{
    let mul = |a: &LaurentPoly, b: &LaurentPoly| match cap {
        Some(c) => mul_truncated(a, b, c),
        None => a * b,
    };
    // partial[k]: sum over k_1<…<k_i = k
    let mut partial: Vec<LaurentPoly> = (0..=m).map(|k| f(k, 1)).collect();
    if let Some(c) = cap {
        partial = partial.into_iter().map(|p| p.truncate(c)).collect();
    }
    for i in 2..=n {
        let mut next = vec![LaurentPoly::zero(); (m + 1) as usize];
        let mut prefix = LaurentPoly::zero();
        for k in 0..=m as usize {
            if k > 0 {
                prefix += &partial[k - 1];
            }
            if !prefix.is_zero() {
                next[k] = mul(&prefix, &f(k as i64, i));
            }
        }
        partial = next;
    }
    crate::polyring::sum(partial.iter())
}

// ---------------------------------------------------------------------------
// Bounded identity in Q and r

/// Number of sign positions in the display of `a_{j,m,n}` that [`a_entry_perturbed`] can flip.
pub const A_ENTRY_SIGN_SLOTS: usize = 11;

/// `a_{j,m,n}(Q,r;X) = term1 − term2_num / term2_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct AEntry {
    pub term1: LaurentPoly,
    pub term2_num: LaurentPoly,
    pub term2_den: LaurentPoly,
}

impl AEntry {
    /// Numerator over the common denominator `term2_den`.
    pub fn numerator(&self) -> LaurentPoly {
        &(&self.term1 * &self.term2_den) - &self.term2_num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.term2_den
    }
}

/// The entry in variable `X_var`.
pub fn a_entry(j: usize, m: usize, n: usize, var: usize) -> AEntry {
    a_entry_perturbed(j, m, n, var, None)
}

/// [`a_entry`] with the sign at position `flip` reversed (for sanity checks).
/// Slots: 0..=3 are the `+` signs of the first term, 4 is the minus between the
/// terms, 5..=10 are the signs inside the second term.
pub fn a_entry_perturbed(j: usize, m: usize, n: usize, var: usize, flip: Option<usize>) -> AEntry {
    assert!(1 <= j && j <= n, "need 1 <= j <= n");
    let s = |slot: usize| if flip == Some(slot) { -1 } else { 1 };
    let xv = x(var);
    let xinv = xp(var, -1);
    let (j, n, m) = (j as i64, n as i64, m as i64);
    let term1 = (one() + (&q() * &xinv).scale(s(0))).mul_monomial(&Monomial::var_pow(Var::X(var), j as i32))
        * powi(&(one() + xv.scale(s(1))), j - 1)
        * powi(&(&q() + &((&r() * &xv).scale(s(2))) + (&q() * &xv).scale(s(3))), n - j);
    let mut term2 = (one() + xv.scale(s(7)))
        * powi(&(&q() * &xinv), j)
        * powi(&(one() + (&q() * &xinv).scale(s(8))), j - 1)
        * powi(&(&q() + &(&r() * &q() * &xinv).scale(s(9)) + (&q() * &q() * &xinv).scale(s(10))), n - j);
    let mut pref = Monomial::var_pow(Var::X(var), 2 * n as i32);
    pref = pref.mul(&Monomial::var_pow(Var::Q, -(n as i32)));
    term2 = term2.mul_monomial(&pref) * powi(&(&(one() + xv.scale(s(5))) * &xv), m);
    term2 = term2.scale(s(4));
    let term2_den = powi(&(&q() + &xv.scale(s(6))), m);
    AEntry { term1, term2_num: term2, term2_den }
}

/// `Q + (Q + r) X_i + X_j + X_i X_j`
fn qr_kernel_factor(i: usize, j: usize) -> LaurentPoly {
    &q() + &(&(&q() + &r()) * &x(i)) + x(j) + x(i) * x(j)
}

fn qr_kernel(n: usize) -> LaurentPoly {
    let mut k = one();
    for j in 1..=n {
        for i in 1..j {
            k = &k * &qr_kernel_factor(i, j);
        }
    }
    k
}

/// `∏_{i≤j} (Q − X_i X_j)`
fn q_diag_product(n: usize) -> LaurentPoly {
    let mut p = one();
    for j in 1..=n {
        for i in 1..=j {
            p = &p * &(&q() - &(x(i) * x(j)));
        }
    }
    p
}

/// Strictly increasing part of `det(f_j(X_i))`, computed as `ASym[∏_j f_j(X_j)]`.
fn det_alternating(cols: &[LaurentPoly], vars: &[usize]) -> LaurentPoly {
    let n = cols.len();
    if n == 1 {
        return cols[0].clone();
    }
    let head = LaurentPoly::product(&cols[..n - 1]);
    asym_dominant_product(&head, &cols[n - 1], vars)
}

/// Both sides of the cleared bounded identity in Q, r as alternating parts:
/// `ASym[K·S']·∏_{i≤j}(Q−X_iX_j)·∏_i D(X_i)` and `det(numerators)·∏_i (Q+X_i)^m`.
pub fn bounded_qr_sides(n: usize, m: usize, flip: Option<usize>) -> (LaurentPoly, LaurentPoly) {
    let vars = x_vars(n);
    let mi = m as i64;
    let sum = bounded_sum(n, mi, None, |k, i| {
        powi(&(x(i) * (one() + x(i))), k) * powi(&(&q() + &x(i)), mi - k)
    });
    let lhs_core = asym_dominant(&(&qr_kernel(n) * &sum), &vars);
    let entries: Vec<Vec<AEntry>> = (1..=n).map(|i| (1..=n).map(|j| a_entry_perturbed(j, m, n, i, flip)).collect()).collect();
    // column j evaluated in X_j
    let cols: Vec<LaurentPoly> = (1..=n).map(|j| entries[j - 1][j - 1].numerator()).collect();
    let rhs_core = det_alternating(&cols, &vars);
    let c = LaurentPoly::product(&(1..=n).map(|i| powi(&(&q() + &x(i)), mi)).collect::<Vec<_>>());
    let d = LaurentPoly::product(&(1..=n).map(|i| entries[i - 1][0].denominator().clone()).collect::<Vec<_>>());
    if c == d {
        // equal symmetric factors on both sides cancel
        (asym_dominant_product(&lhs_core, &q_diag_product(n), &vars), rhs_core)
    } else {
        (
            asym_dominant_product(&lhs_core, &(&q_diag_product(n) * &d), &vars),
            asym_dominant_product(&rhs_core, &c, &vars),
        )
    }
}

/// The bounded identity, symbolic in Q and r.
pub fn verify_bounded_qr(n: usize, m: usize) -> IdentityReport {
    verify_bounded_qr_perturbed(n, m, None)
}

pub fn verify_bounded_qr_perturbed(n: usize, m: usize, flip: Option<usize>) -> IdentityReport {
    let start = Instant::now();
    let (lhs, rhs) = bounded_qr_sides(n, m, flip);
    let mut p = params(&[("n", n as i64), ("m", m as i64)]);
    if let Some(f) = flip {
        p.insert("flip".into(), Value::from(f));
    }
    IdentityReport::compare("bounded-qr", p, None, &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Bounded identity in w

/// Which side normalization [`verify_bounded_w`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundedWForm {
    /// kernel over `i<j`, `X^k`
    Plain,
    /// kernel over `i≤j`, `X^{k−1}`, extra factor `∏(X_i^{-1}+1+w+X_i)` on the right
    Normalized,
}

/// Column `j` of the determinant, in `X_var`.
pub fn w_entry(j: usize, m: usize, n: usize, var: usize) -> LaurentPoly {
    let (j, n, m) = (j as i64, n as i64, m as i64);
    let xv = x(var);
    let xinv = xp(var, -1);
    let t1 = powi(&xv, j - 1) * powi(&(one() + xv.clone()), j - 1) * powi(&(one() + &w() * &xv), n - j);
    let t2 = xp(var, (m + 2 * n - j) as i32) * powi(&(one() + xinv.clone()), j - 1) * powi(&(one() + &w() * &xinv), n - j);
    t1 - t2
}

/// `∏_i (1 − X_i) ∏_{i<j} (1 − X_i X_j)`
fn w_denominator(n: usize) -> LaurentPoly {
    let mut p = one();
    for j in 1..=n {
        p = &p * &(one() - x(j));
        for i in 1..j {
            p = &p * &(one() - x(i) * x(j));
        }
    }
    p
}

/// `X^{-1} + 1 + w + X` in `X_i`
pub fn lr(i: usize) -> LaurentPoly {
    xp(i, -1) + one() + w() + x(i)
}

/// Alternating parts of both sides of the cleared bounded identity in w.
pub fn bounded_w_sides(n: usize, m: usize, form: BoundedWForm) -> (LaurentPoly, LaurentPoly) {
    let vars = x_vars(n);
    let (kernel, offset) = match form {
        BoundedWForm::Plain => (w_kernel(n, false), 0),
        BoundedWForm::Normalized => (w_kernel(n, true), -1),
    };
    let lhs_core = asym_dominant(&(&kernel * &bounded_k_sum(n, m as i64, offset)), &vars);
    let lhs = asym_dominant_product(&lhs_core, &w_denominator(n), &vars);
    let cols: Vec<LaurentPoly> = (1..=n).map(|j| w_entry(j, m, n, j)).collect();
    let mut rhs = det_alternating(&cols, &vars);
    if form == BoundedWForm::Normalized {
        let f = LaurentPoly::product(&(1..=n).map(lr).collect::<Vec<_>>());
        rhs = asym_dominant_product(&rhs, &f, &vars);
    }
    (lhs, rhs)
}

/// The bounded identity in w, plus the specialization chain `Q = 1, r = w − 1`
/// from the Q, r identity (plain form only).
pub fn verify_bounded_w(n: usize, m: usize, form: BoundedWForm) -> IdentityReport {
    let start = Instant::now();
    let id = match form {
        BoundedWForm::Plain => "bounded-w",
        BoundedWForm::Normalized => "bounded-w-normalized",
    };
    let p = params(&[("n", n as i64), ("m", m as i64)]);
    let (lhs, rhs) = bounded_w_sides(n, m, form);
    let main = IdentityReport::compare(id, p.clone(), None, &lhs, &rhs, start);
    if form == BoundedWForm::Normalized {
        return main;
    }
    let chain = specialization_chain(n, m, &lhs, &rhs, start);
    IdentityReport::all_of(id, p, vec![main, chain], start)
}

/// After `Q = 1, r = w − 1`, each side of the Q, r identity equals the
/// corresponding side of the w identity times `∏_i (1 + X_i)^{m+1}`.
fn specialization_chain(n: usize, m: usize, lhs_w: &LaurentPoly, rhs_w: &LaurentPoly, start: Instant) -> IdentityReport {
    let vars = x_vars(n);
    let b = Bindings::new().int(Var::Q, 1).poly(Var::R, w() - one());
    let (lq, rq) = bounded_qr_sides(n, m, None);
    let factor = LaurentPoly::product(&(1..=n).map(|i| powi(&(one() + x(i)), m as i64 + 1)).collect::<Vec<_>>());
    let p = params(&[("n", n as i64), ("m", m as i64)]);
    let (lq, rq) = match (lq.substitute(&b), rq.substitute(&b)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return IdentityReport::error("bounded-w-chain", p, "substitution failed", start),
    };
    let l = IdentityReport::compare("bounded-w-chain", p.clone(), None, &lq, &asym_dominant_product(lhs_w, &factor, &vars), start);
    let r = IdentityReport::compare("bounded-w-chain", p.clone(), None, &rq, &asym_dominant_product(rhs_w, &factor, &vars), start);
    IdentityReport::all_of("bounded-w-chain", p, vec![l, r], start)
}

// ---------------------------------------------------------------------------
// Unbounded identities as truncated series

/// The unbounded identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unbounded {
    /// The classical Littlewood identity.
    Littlewood,
    /// Kernel `1 + X_j + X_i X_j`.
    Kernel,
    /// Kernel `Q + (Q−1) X_i + X_j + X_i X_j` with the `Q`-deformed summand.
    Q,
    /// Kernel `1 + w X_i + X_j + X_i X_j`.
    W,
    /// Kernel `Q + (Q+r) X_i + X_j + X_i X_j`.
    QR,
}

impl Unbounded {
    pub const ALL: [Unbounded; 5] = [Unbounded::Littlewood, Unbounded::Kernel, Unbounded::Q, Unbounded::W, Unbounded::QR];

    pub fn id(self) -> &'static str {
        match self {
            Unbounded::Littlewood => "littlewood",
            Unbounded::Kernel => "unbounded-kernel",
            Unbounded::Q => "unbounded-q",
            Unbounded::W => "unbounded-w",
            Unbounded::QR => "unbounded-qr",
        }
    }

    pub fn from_id(s: &str) -> Option<Unbounded> {
        Unbounded::ALL.into_iter().find(|u| u.id() == s)
    }

    fn kernel_factor(self, i: usize, j: usize) -> LaurentPoly {
        let xij = x(i) * x(j);
        match self {
            Unbounded::Littlewood => one(),
            Unbounded::Kernel => one() + x(j) + xij,
            Unbounded::Q => &q() + &(&(&q() - &one()) * &x(i)) + x(j) + xij,
            Unbounded::W => one() + &w() * &x(i) + x(j) + xij,
            Unbounded::QR => qr_kernel_factor(i, j),
        }
    }

    fn q_deformed(self) -> bool {
        matches!(self, Unbounded::Q | Unbounded::QR)
    }

    /// Numerators and denominators of the product side.
    fn rhs_factors(self, n: usize) -> (Vec<LaurentPoly>, Vec<LaurentPoly>) {
        let mut nums = Vec::new();
        let mut dens = Vec::new();
        for i in 1..=n {
            if self.q_deformed() {
                nums.push(&q() + &x(i));
                dens.push(&q() - &(x(i) * x(i)));
            } else {
                dens.push(one() - x(i));
            }
        }
        for j in 1..=n {
            for i in 1..j {
                let (xi, xj) = (x(i), x(j));
                let xij = &xi * &xj;
                match self {
                    Unbounded::Littlewood => {}
                    Unbounded::Kernel => nums.push(one() + xi.clone() + xj.clone()),
                    Unbounded::W => nums.push(one() + xi.clone() + xj.clone() + &w() * &xij),
                    Unbounded::Q => nums.push(&q() * &(one() + xi.clone()) * (one() + xj.clone()) - xij.clone()),
                    Unbounded::QR => nums.push(&q() * &(one() + xi.clone()) * (one() + xj.clone()) + &r() * &xij),
                }
                dens.push(if self.q_deformed() { &q() - &xij } else { one() - xij });
            }
        }
        (nums, dens)
    }
}

/// `X(1+X)/(Q+X)` as a series in `X_i`, exact modulo the cap.
fn mu_series(i: usize, cap: i32) -> Result<LaurentPoly, PolyError> {
    let inv = series_inverse(&(&q() + &x(i)), cap)?;
    Ok(mul_truncated(&(x(i) * (one() + x(i))), &inv, cap))
}

fn series_pow(p: &LaurentPoly, e: i64, cap: i32) -> LaurentPoly {
    let mut acc = one();
    for _ in 0..e {
        acc = mul_truncated(&acc, p, cap);
    }
    acc
}

/// Both sides of an unbounded identity, multiplied by the Vandermonde product,
/// as alternating parts modulo X-degree above `cap`.
pub fn unbounded_sides(variant: Unbounded, n: usize, cap: i32) -> Result<(LaurentPoly, LaurentPoly), PolyError> {
    let vars = x_vars(n);
    let mut kernel = one();
    for j in 1..=n {
        for i in 1..j {
            kernel = &kernel * &variant.kernel_factor(i, j);
        }
    }
    let mus: Vec<LaurentPoly> = if variant.q_deformed() {
        (1..=n).map(|i| mu_series(i, cap)).collect::<Result<_, _>>()?
    } else {
        (1..=n).map(x).collect()
    };
    // every summand has X-degree at least k_n, so k_n ≤ cap suffices
    let sum = bounded_sum(n, cap as i64, Some(cap), |k, i| series_pow(&mus[i - 1], k, cap));
    let lhs = asym_dominant(&mul_truncated(&kernel, &sum, cap), &vars);
    let (nums, dens) = variant.rhs_factors(n);
    let rhs_series = series_expand(&nums, &dens, cap)?;
    let rhs = asym_dominant(&rhs_series.mul_monomial(&delta(n)).truncate(cap), &vars);
    Ok((lhs, rhs))
}

pub fn verify_unbounded(variant: Unbounded, n: usize, cap: i32) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("degree", cap as i64)]);
    match unbounded_sides(variant, n, cap) {
        Ok((l, r)) => IdentityReport::compare(variant.id(), p, Some(cap), &l, &r, start),
        Err(e) => IdentityReport::error(variant.id(), p, &e.to_string(), start),
    }
}

// ---------------------------------------------------------------------------
// Bounded classical identity

/// Partitions inside the `n × m` box.
pub fn partitions_in_box(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (0..=max).rev() {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}

/// `Σ_{λ⊆(mⁿ)} s_λ · ∏(1−X_i) ∏_{i<j}(X_j−X_i)(1−X_iX_j) = det(X_i^{j−1} − X_i^{m+2n−j})`.
pub fn verify_littlewood_bounded(n: usize, m: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("m", m as i64)]);
    let vars = x_vars(n);
    let mut schur_sum = LaurentPoly::zero();
    for lambda in partitions_in_box(n, m as i64) {
        match schur_bialternant(&lambda) {
            Ok(s) => schur_sum += &s,
            Err(e) => return IdentityReport::error("littlewood-bounded", p, &e.to_string(), start),
        }
    }
    // symmetric S: S · V = ASym[S · X^δ]
    let lhs = asym_dominant_product(&schur_sum.mul_monomial(&delta(n)), &w_denominator(n), &vars);
    let (n_i, m_i) = (n as i32, m as i32);
    let cols: Vec<LaurentPoly> = (1..=n).map(|j| xp(j, j as i32 - 1) - xp(j, m_i + 2 * n_i - j as i32)).collect();
    let rhs = det_alternating(&cols, &vars);
    IdentityReport::compare("littlewood-bounded", p, None, &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// The m → ∞ form and the polynomial identity behind the induction

/// `Σ_{k≥0} p^k` modulo the cap, for a series `p` without constant term.
fn geometric(p: &LaurentPoly, cap: i32) -> LaurentPoly {
    let mut acc = one();
    let mut pw = one();
    for _ in 0..cap.max(0) {
        pw = mul_truncated(&pw, p, cap);
        if pw.is_zero() {
            break;
        }
        acc += &pw;
    }
    acc
}

pub fn verify_infinite(n: usize, cap: i32) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("degree", cap as i64)]);
    let vars = x_vars(n);
    let mus: Vec<LaurentPoly> = match (1..=n).map(|i| mu_series(i, cap)).collect::<Result<Vec<_>, _>>() {
        Ok(v) => v,
        Err(e) => return IdentityReport::error("infinite", p, &e.to_string(), start),
    };
    let mut lhs = qr_kernel(n).truncate(cap);
    for i in 1..=n {
        lhs = mul_truncated(&lhs, &series_pow(&mus[i - 1], i as i64 - 1, cap), cap);
        let mut tail = one();
        for m in &mus[i - 1..] {
            tail = mul_truncated(&tail, m, cap);
        }
        lhs = mul_truncated(&lhs, &geometric(&tail, cap), cap);
    }
    let lhs = asym(&lhs, &vars);
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 1..=n {
        nums.push(&q() + &x(i));
        dens.push(&q() - &(x(i) * x(i)));
    }
    for j in 1..=n {
        for i in 1..j {
            nums.push(x(j) - x(i));
            nums.push(&q() * &(one() + x(i)) * (one() + x(j)) + &r() * &(x(i) * x(j)));
            dens.push(&q() - &(x(i) * x(j)));
        }
    }
    match series_expand(&nums, &dens, cap) {
        Ok(rhs) => IdentityReport::compare("infinite", p, Some(cap), &lhs, &rhs, start),
        Err(e) => IdentityReport::error("infinite", p, &e.to_string(), start),
    }
}

/// `Q(1+X_i)(1+X_j) + r X_i X_j`
fn qr_pair(i: usize, j: usize) -> LaurentPoly {
    &q() * &(one() + x(i)) * (one() + x(j)) + &r() * &(x(i) * x(j))
}

pub fn verify_leftright(n: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64)]);
    let mut pi = one();
    for j in 1..=n {
        for i in 1..j {
            pi = &pi * &(&(x(j) - x(i)) * &qr_pair(i, j));
        }
    }
    let a = LaurentPoly::product(&(1..=n).map(|i| &q() + &x(i)).collect::<Vec<_>>());
    let b = LaurentPoly::product(&(1..=n).map(|i| x(i) * (one() + x(i))).collect::<Vec<_>>());
    let lhs = &(&a - &b) * &pi;
    let mut rhs = LaurentPoly::zero();
    for k in 1..=n {
        let mut num = &q() - &(x(k) * x(k));
        let mut den = one();
        for j in (1..=n).filter(|&j| j != k) {
            num = num
                * (x(j) * (x(j) + one()))
                * (&q() + &(&(&q() + &r()) * &x(k)) + x(j) + x(k) * x(j))
                * (&q() - &(x(j) * x(k)));
            den = den * (x(j) - x(k)) * qr_pair(j, k);
        }
        match exact_div(&pi, &den) {
            Ok(quot) => rhs += &(&quot * &num),
            Err(e) => return IdentityReport::error("leftright", p, &e.to_string(), start),
        }
    }
    IdentityReport::compare("leftright", p, None, &lhs, &rhs, start)
}

// ---------------------------------------------------------------------------
// Lemmas

/// `f[Y_1..Y_i] = Σ_k ⟨Y^k⟩f · h_{k−i+1}(Y_1..Y_i)`, with `f` a Laurent polynomial in `X1`.
pub fn lemma_bracket(f: &LaurentPoly, i: usize) -> Result<LaurentPoly, PolyError> {
    let args: Vec<LaurentPoly> = (1..=i).map(x).collect();
    let mut acc = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let k = m.exp(Var::X(1)) as i64;
        let h = complete_homog(k - i as i64 + 1, &args)?;
        acc += &h.scale(c.clone());
    }
    Ok(acc)
}

/// `det(f_j(Y_i)) = ∏_{i<j}(Y_j − Y_i) · det(f_j[Y_1..Y_i])` for univariate
/// Laurent polynomials `f_j` given in `X1`.
pub fn verify_lemma_limit(fs: &[LaurentPoly]) -> IdentityReport {
    let start = Instant::now();
    let n = fs.len();
    let p = params(&[("n", n as i64)]);
    let vars = x_vars(n);
    let rename = |f: &LaurentPoly, i: usize| f.permute_x(&[1, i], &[1, 0]);
    let m1: Vec<Vec<LaurentPoly>> = (1..=n).map(|i| fs.iter().map(|f| if i == 1 { f.clone() } else { rename(f, i) }).collect()).collect();
    let mut m2 = Vec::new();
    for i in 1..=n {
        let mut row = Vec::new();
        for f in fs {
            match lemma_bracket(f, i) {
                Ok(b) => row.push(b),
                Err(e) => return IdentityReport::error("lemma-limit", p, &e.to_string(), start),
            }
        }
        m2.push(row);
    }
    match (det(&m1), det(&m2)) {
        (Ok(d1), Ok(d2)) => IdentityReport::compare("lemma-limit", p, None, &d1, &(&vandermonde(&vars) * &d2), start),
        _ => IdentityReport::error("lemma-limit", p, "determinant failed", start),
    }
}

fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b || a < 0 {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(a), BigInt::from(b))
    }
}

/// `Σ_r (−1)^r C(a−r−1, r) h_{a−i−2r}(X_1+X_1^{-1}, …) = h_{a−i}(X_1, X_1^{-1}, …, X_i, X_i^{-1})`.
pub fn verify_lemma_h(a: usize, i: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("a", a as i64), ("i", i as i64)]);
    let (a, i) = (a as i64, i as i64);
    let sums: Vec<LaurentPoly> = (1..=i as usize).map(|k| x(k) + xp(k, -1)).collect();
    let mut lhs = LaurentPoly::zero();
    let mut rr = 0;
    while a - i - 2 * rr >= 0 {
        let h = complete_homog(a - i - 2 * rr, &sums).expect("nonnegative degree");
        let c = binom(a - rr - 1, rr);
        lhs += &h.scale(if rr % 2 == 0 { c } else { -c });
        rr += 1;
    }
    let pairs: Vec<LaurentPoly> = (1..=i as usize).flat_map(|k| [x(k), xp(k, -1)]).collect();
    let rhs = complete_homog(a - i, &pairs).expect("nonnegative degree");
    IdentityReport::compare("lemma-h", p, None, &lhs, &rhs, start)
}

/// `q_m(X) = (X^m − X^{−m})/(X − X^{−1})`
pub fn q_basis(m: i64) -> LaurentPoly {
    if m == 0 {
        return LaurentPoly::zero();
    }
    let sign = m.signum();
    let m = m.abs();
    let p = LaurentPoly::from_terms((0..m).map(|k| (Monomial::x_pow(&[(m - 1 - 2 * k) as i32]), 1)));
    p.scale(sign)
}

/// `q_m = Σ_r (−1)^r C(m−r−1, r) (X + X^{-1})^{m−1−2r}`
pub fn verify_transform(m: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("m", m as i64)]);
    let m = m as i64;
    let b = x(1) + xp(1, -1);
    let mut rhs = LaurentPoly::zero();
    let mut rr = 0;
    while m - 1 - 2 * rr >= 0 {
        let c = binom(m - rr - 1, rr);
        rhs += &powi(&b, m - 1 - 2 * rr).scale(if rr % 2 == 0 { c } else { -c });
        rr += 1;
    }
    IdentityReport::compare("transform", p, None, &q_basis(m), &rhs, start)
}

/// Checks `h_k(a) = (−1)^{n+1} (a_1⋯a_n)^{-1} h_{−k−n}(a^{-1})` for all `|k| ≤ 2n`.
pub fn verify_reciprocity(n: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64)]);
    let args: Vec<LaurentPoly> = (1..=n).map(x).collect();
    let inv: Vec<LaurentPoly> = (1..=n).map(|i| xp(i, -1)).collect();
    let prod_inv = LaurentPoly::product(&inv);
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut parts = Vec::new();
    let nn = n as i64;
    for k in -2 * nn..=2 * nn {
        let lhs = complete_homog(k, &args).expect("monomial arguments");
        let rhs = (&prod_inv * &complete_homog(-k - nn, &inv).expect("monomial arguments")).scale(sign);
        parts.push(IdentityReport::compare("reciprocity", params(&[("n", nn), ("k", k)]), None, &lhs, &rhs, start));
    }
    IdentityReport::all_of("reciprocity", p, parts, start)
}
