//! Row insertion, the classical RSK correspondence, the symmetric-matrix variant
//! with its inverse, insertion on Gelfand–Tsetlin patterns, and split orthogonal
//! patterns.
//!
//! Half-integers are stored doubled. Generating functions of split orthogonal
//! patterns are returned in the variables `Y_i = X_i^{1/2}`, which occupy the X slots.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identities::{params, partitions_in_box, IdentityReport, Mismatch, Status};
use crate::polyring::{det, exact_div, LaurentPoly, Monomial, PolyError, Var};
use crate::schur_gt::{schur_bialternant, GTPattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RskError {
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
    #[error("tableau is not semistandard")]
    NotSemistandard,
    #[error("entry {0} exceeds the alphabet size {1}")]
    EntryTooLarge(u32, usize),
    #[error("column ({top} over {bottom}) is out of order or has bottom > top")]
    BadColumn { top: u32, bottom: u32 },
    #[error("invalid bottom row: {0}")]
    BadBottom(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Semistandard Young tableau with positive entries, rows top first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SSYT {
    pub rows: Vec<Vec<u32>>,
}

impl SSYT {
    pub fn new() -> Self {
        SSYT { rows: Vec::new() }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn is_valid(&self) -> bool {
        let shape_ok = self.rows.iter().all(|r| !r.is_empty()) && self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let rows_ok = self.rows.iter().all(|r| r.iter().all(|&x| x >= 1) && r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| a < b));
        shape_ok && rows_ok && cols_ok
    }

    /// `∏ X_i^{#i's}`.
    pub fn weight(&self) -> Monomial {
        let n = self.max_entry() as usize;
        let mut exps = vec![0i32; n];
        for &x in self.rows.iter().flatten() {
            exps[x as usize - 1] += 1;
        }
        Monomial::x_pow(&exps)
    }

    /// Row-inserts `x`; returns the (row, column) of the new cell, 0-based.
    pub fn insert(&mut self, x: u32) -> (usize, usize) {
        let mut x = x;
        for (r, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&y| y > x) {
                Some(c) => x = std::mem::replace(&mut row[c], x),
                None => {
                    row.push(x);
                    return (r, row.len() - 1);
                }
            }
        }
        self.rows.push(vec![x]);
        (self.rows.len() - 1, 0)
    }

    /// Removes the last cell of `row` (a corner) and reverse-bumps it out of the
    /// first row; returns the ejected value.
    pub fn reverse_bump(&mut self, row: usize) -> u32 {
        let mut x = self.rows[row].pop().expect("row is nonempty");
        if self.rows[row].is_empty() {
            self.rows.truncate(row);
        }
        for r in (0..row).rev() {
            let c = self.rows[r].iter().rposition(|&y| y < x).expect("reverse bump has a target");
            x = std::mem::replace(&mut self.rows[r][c], x);
        }
        x
    }

    /// Pattern whose `i`-th row, read backwards, is the shape of the entries `≤ i`.
    pub fn to_gt(&self, n: usize) -> Result<GTPattern, RskError> {
        if let Some(&x) = self.rows.iter().flatten().find(|&&x| x as usize > n) {
            return Err(RskError::EntryTooLarge(x, n));
        }
        let rows = (1..=n)
            .map(|i| {
                let mut shape: Vec<i64> =
                    (0..i).map(|r| self.rows.get(r).map_or(0, |row| row.iter().filter(|&&x| x as usize <= i).count() as i64)).collect();
                shape.reverse();
                shape
            })
            .collect();
        Ok(GTPattern { rows })
    }

    pub fn from_gt(p: &GTPattern) -> SSYT {
        let n = p.n();
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for i in 1..=n {
            for r in 0..i {
                let len = p.rows[i - 1][i - 1 - r] as usize;
                while rows[r].len() < len {
                    rows[r].push(i as u32);
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        SSYT { rows }
    }
}

/// RSK on a two-line array given as `(top, bottom)` columns in lexicographic order.
/// The recording tableau collects the top entries.
pub fn rsk_two_line(columns: &[(u32, u32)]) -> (SSYT, SSYT) {
    let mut p = SSYT::new();
    let mut q = SSYT::new();
    for &(top, bottom) in columns {
        let (r, _) = p.insert(bottom);
        if r == q.rows.len() {
            q.rows.push(Vec::new());
        }
        q.rows[r].push(top);
    }
    (p, q)
}

/// Classical insertion of a word; the recording tableau is standard.
pub fn rsk_classical(word: &[u32]) -> (SSYT, SSYT) {
    let cols: Vec<(u32, u32)> = word.iter().enumerate().map(|(k, &x)| (k as u32 + 1, x)).collect();
    rsk_two_line(&cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymMatrix {
    pub entries: Vec<Vec<u32>>,
}

impl SymMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self, RskError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) || (0..n).any(|i| (0..i).any(|j| entries[i][j] != entries[j][i])) {
            return Err(RskError::NotSymmetric);
        }
        Ok(SymMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        SymMatrix { entries: vec![vec![0; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entry with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i - 1][j - 1]
    }

    fn set_pair(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i - 1][j - 1] = v;
        self.entries[j - 1][i - 1] = v;
    }

    /// All columns `(i over j)` with multiplicity `a_{ij}`, lexicographic.
    pub fn classical_array(&self) -> Vec<(u32, u32)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                out.extend(std::iter::repeat((i as u32, j as u32)).take(self.get(i, j) as usize));
            }
        }
        out
    }

    /// Columns `(j over i)` with `i ≤ j`, multiplicity `a_{ij}`, lexicographic.
    pub fn upper_array(&self) -> Vec<(u32, u32)> {
        let n = self.n();
        let mut out = Vec::new();
        for j in 1..=n {
            for i in 1..=j {
                out.extend(std::iter::repeat((j as u32, i as u32)).take(self.get(i, j) as usize));
            }
        }
        out
    }

    /// `∏ X_i^{a_ii + Σ_{j≠i} a_ij}`.
    pub fn weight(&self) -> Monomial {
        let exps: Vec<i32> = self.entries.iter().map(|r| r.iter().sum::<u32>() as i32).collect();
        Monomial::x_pow(&exps)
    }
}

/// The variant for symmetric matrices: insert `i`; if `i < j`, put `j` at the end of
/// the row below the one where the insertion ended.
pub fn rsk_symmetric_forward(a: &SymMatrix) -> SSYT {
    let mut t = SSYT::new();
    for (j, i) in a.upper_array() {
        let (r, _) = t.insert(i);
        if i < j {
            if r + 1 == t.rows.len() {
                t.rows.push(Vec::new());
            }
            t.rows[r + 1].push(j);
        }
    }
    t
}

/// Inverse of [`rsk_symmetric_forward`] for tableaux with entries `≤ n`.
pub fn rsk_symmetric_inverse(t: &SSYT, n: usize) -> Result<SymMatrix, RskError> {
    if !t.is_valid() {
        return Err(RskError::NotSemistandard);
    }
    if t.max_entry() as usize > n {
        return Err(RskError::EntryTooLarge(t.max_entry(), n));
    }
    let mut t = t.clone();
    let mut a = SymMatrix::zero(n);
    for top in (1..=n as u32).rev() {
        let counts: Vec<usize> = t.rows.iter().map(|r| r.iter().filter(|&&x| x == top).count()).collect();
        for row in t.rows.iter_mut() {
            row.retain(|&x| x != top);
        }
        t.rows.retain(|r| !r.is_empty());
        let mut bottoms = vec![0u32; n + 1];
        bottoms[top as usize] = counts.first().copied().unwrap_or(0) as u32;
        for (r, &u) in counts.iter().enumerate().skip(1) {
            for _ in 0..u {
                let x = t.reverse_bump(r - 1);
                bottoms[x as usize] += 1;
            }
        }
        for (i, &c) in bottoms.iter().enumerate().skip(1) {
            if c > 0 {
                a.set_pair(i, top as usize, c);
            }
        }
    }
    Ok(a)
}

/// Classical insertion tableau of the full two-line array of `a`.
pub fn rsk_symmetric_classical(a: &SymMatrix) -> SSYT {
    let bottom: Vec<u32> = a.classical_array().into_iter().map(|(_, b)| b).collect();
    rsk_classical(&bottom).0
}

/// Appends rows `0,…,0,k` until the pattern has `rows` rows.
fn pad_rows(p: &mut GTPattern, rows: usize) {
    while p.rows.len() < rows {
        let mut next = vec![0i64];
        next.extend_from_slice(p.bottom());
        p.rows.push(next);
    }
}

/// Applies the path rule from the last entry of row `m` to the bottom row and
/// increments the path; returns the 1-based position of the path end in the bottom row.
fn gt_path(p: &mut GTPattern, m: usize) -> usize {
    pad_rows(p, m);
    let mut j = m;
    for i in m..p.n() {
        let cur = p.rows[i - 1][j - 1];
        p.rows[i - 1][j - 1] += 1;
        if p.rows[i][j] != cur {
            continue;
        }
        j += 1;
    }
    let last = p.n();
    p.rows[last - 1][j - 1] += 1;
    j
}

/// Row insertion of `m` performed on the pattern.
pub fn gt_insert(pattern: &GTPattern, m: usize) -> GTPattern {
    assert!(m >= 1, "inserted value must be positive");
    let mut p = pattern.clone();
    gt_path(&mut p, m);
    p
}

/// Pattern form of one column `(j over i)` of the variant; the pattern is first
/// extended to `j` rows.
pub fn column_pair_insert(pattern: &GTPattern, top: usize, bottom: usize) -> Result<GTPattern, RskError> {
    if bottom == 0 || bottom > top || pattern.n() > top {
        return Err(RskError::BadColumn { top: top as u32, bottom: bottom as u32 });
    }
    let mut p = pattern.clone();
    pad_rows(&mut p, top);
    let end = gt_path(&mut p, bottom);
    if bottom < top {
        if end < 2 {
            return Err(RskError::BadColumn { top: top as u32, bottom: bottom as u32 });
        }
        p.rows[top - 1][end - 2] += 1;
    }
    Ok(p)
}

/// Replays the variant's columns on patterns, padded to `n` rows at the end.
pub fn gt_forward(a: &SymMatrix) -> Result<GTPattern, RskError> {
    let mut p = GTPattern { rows: Vec::new() };
    for (j, i) in a.upper_array() {
        p = column_pair_insert(&p, j as usize, i as usize)?;
    }
    pad_rows(&mut p, a.n());
    Ok(p)
}

/// Largest entry sum along a →/↓ walk from the top-left to the bottom-right corner
/// that stays weakly above the diagonal.
pub fn max_path_statistic(a: &SymMatrix) -> u64 {
    let n = a.n();
    if n == 0 {
        return 0;
    }
    let mut best = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i..n {
            let from_left = if j > i { Some(best[i][j - 1]) } else { None };
            let from_above = if i > 0 { Some(best[i - 1][j]) } else { None };
            let prev = from_left.into_iter().chain(from_above).max().unwrap_or(0);
            best[i][j] = prev + a.entries[i][j] as u64;
        }
    }
    best[n - 1][n - 1]
}

// ---------------------------------------------------------------------------
// Split orthogonal patterns

/// Which lower neighbour bounds an entry from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Increase along ↗ and ↘; the bottom row is λ in increasing order.
    Increasing,
    /// Decrease along ↗ and ↘; the bottom row is λ in decreasing order.
    Decreasing,
}

/// Rows of lengths `1,1,2,2,…,n,n`, entries doubled. Odd rows start at the left
/// edge; even rows are shifted half a step right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitOrthoPattern {
    pub rows: Vec<Vec<i64>>,
}

impl SplitOrthoPattern {
    pub fn n(&self) -> usize {
        self.rows.len() / 2
    }

    /// Whether the first entry of odd row `2i−1` is a half-integer.
    pub fn starter_is_half(&self, i: usize) -> bool {
        self.rows[2 * i - 2][0].rem_euclid(2) == 1
    }

    /// Exponents of `Y_i = X_i^{1/2}`: `r_{2i} − 2r_{2i−1} + r_{2i−2}` on doubled sums.
    pub fn weight(&self) -> Monomial {
        let sums: Vec<i64> = self.rows.iter().map(|r| r.iter().sum()).collect();
        let exps: Vec<i32> = (1..=self.n())
            .map(|i| {
                let before = if i == 1 { 0 } else { sums[2 * i - 3] };
                (sums[2 * i - 1] - 2 * sums[2 * i - 2] + before) as i32
            })
            .collect();
        Monomial::x_pow(&exps)
    }
}

/// Bounds for entry `k` (0-based) of a row given the row below, in the fixed layout.
fn split_bounds(odd_row: bool, k: usize, below: &[i64], orientation: Orientation, cap: i64) -> (i64, i64) {
    // below-left and below-right indices in the row underneath
    let (left, right) = if odd_row { (k.checked_sub(1), Some(k)) } else { (Some(k), Some(k + 1)) };
    let left = left.and_then(|i| below.get(i)).copied();
    let right = right.and_then(|i| below.get(i)).copied();
    match orientation {
        Orientation::Increasing => (left.unwrap_or(0), right.unwrap_or(cap)),
        Orientation::Decreasing => (right.unwrap_or(0), left.unwrap_or(cap)),
    }
}

/// All patterns with bottom row `λ` (doubled, weakly decreasing, one parity) whose
/// entries are at most `cap` (doubled).
pub fn enumerate_split_ortho_patterns(
    lambda2: &[i64],
    orientation: Orientation,
    cap: i64,
) -> Result<Vec<SplitOrthoPattern>, RskError> {
    let n = lambda2.len();
    if n == 0 {
        return Err(RskError::BadBottom("empty".into()));
    }
    let parity = lambda2[0].rem_euclid(2);
    if lambda2.iter().any(|&l| l < 0 || l.rem_euclid(2) != parity) || lambda2.windows(2).any(|w| w[0] < w[1]) {
        return Err(RskError::BadBottom(format!("{lambda2:?}")));
    }
    let bottom: Vec<i64> = match orientation {
        Orientation::Increasing => lambda2.iter().rev().copied().collect(),
        Orientation::Decreasing => lambda2.to_vec(),
    };
    let mut out = Vec::new();
    let mut rows_rev = vec![bottom];
    split_rows(2 * n - 1, parity, orientation, cap, &mut rows_rev, &mut out);
    Ok(out)
}

fn split_rows(
    row: usize,
    parity: i64,
    orientation: Orientation,
    cap: i64,
    rows_rev: &mut Vec<Vec<i64>>,
    out: &mut Vec<SplitOrthoPattern>,
) {
    if row == 0 {
        out.push(SplitOrthoPattern { rows: rows_rev.iter().rev().cloned().collect() });
        return;
    }
    let len = row.div_ceil(2);
    let below = rows_rev.last().unwrap().clone();
    let mut cur = vec![0i64; len];
    fill_split(row, 0, &below, parity, orientation, cap, &mut cur, rows_rev, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_split(
    row: usize,
    k: usize,
    below: &[i64],
    parity: i64,
    orientation: Orientation,
    cap: i64,
    cur: &mut Vec<i64>,
    rows_rev: &mut Vec<Vec<i64>>,
    out: &mut Vec<SplitOrthoPattern>,
) {
    if k == cur.len() {
        rows_rev.push(cur.clone());
        split_rows(row - 1, parity, orientation, cap, rows_rev, out);
        rows_rev.pop();
        return;
    }
    let odd = row % 2 == 1;
    let (lo, hi) = split_bounds(odd, k, below, orientation, cap);
    let starter = odd && k == 0;
    for v in lo.max(0)..=hi {
        if starter || v.rem_euclid(2) == parity {
            cur[k] = v;
            fill_split(row, k + 1, below, parity, orientation, cap, cur, rows_rev, out);
        }
    }
}

/// Generating function of split orthogonal patterns (increasing orientation) with
/// bottom row `λ`, in the variables `Y_i`.
pub fn enumerate_split_ortho(lambda2: &[i64]) -> Result<LaurentPoly, RskError> {
    let cap = lambda2.first().copied().unwrap_or(0);
    let pats = enumerate_split_ortho_patterns(lambda2, Orientation::Increasing, cap)?;
    Ok(LaurentPoly::from_terms(pats.iter().map(|p| (p.weight(), 1))))
}

fn y(i: usize, e: i32) -> LaurentPoly {
    LaurentPoly::var_pow(Var::X(i), e)
}

/// The odd orthogonal character from its determinant, in `Y_i = X_i^{1/2}`:
/// `∏Y_i^{2n−1} det(Y_i^{−2λ_j−2n+2j−1} − Y_i^{2λ_j+2n−2j+1}) / (∏(1−Y_i²) ∏_{i<j}(Y_j²−Y_i²)(1−Y_i²Y_j²))`.
/// The factor `1 + [λ_n = 0]` of the usual display is not applied.
pub fn so_odd_determinant(lambda2: &[i64]) -> Result<LaurentPoly, RskError> {
    let n = lambda2.len();
    let ni = n as i64;
    let m: Vec<Vec<LaurentPoly>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let e = lambda2[j - 1] + 2 * ni - 2 * j as i64 + 1;
                    y(i, -e as i32) - y(i, e as i32)
                })
                .collect()
        })
        .collect();
    let mut num = det(&m)?;
    for i in 1..=n {
        num = num.mul_monomial(&Monomial::var_pow(Var::X(i), 2 * n as i32 - 1));
    }
    let mut den = LaurentPoly::one();
    for i in 1..=n {
        den = &den * &(LaurentPoly::one() - y(i, 2));
        for j in i + 1..=n {
            den = &den * &(y(j, 2) - y(i, 2));
            den = &den * &(LaurentPoly::one() - &y(i, 2) * &y(j, 2));
        }
    }
    Ok(exact_div(&num, &den)?)
}

/// Doubles every X-exponent, i.e. rewrites a polynomial in `X_i` in terms of `Y_i`.
pub fn to_half_variables(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(|m| {
        let mut out = *m;
        for i in 1..=crate::polyring::MAX_X {
            let k = Var::X(i).index();
            out.0[k] *= 2;
        }
        out
    })
}

/// Pattern enumeration against the determinant for one `λ` (doubled).
pub fn verify_split(lambda2: &[i64]) -> IdentityReport {
    let start = Instant::now();
    let mut p = params(&[("n", lambda2.len() as i64)]);
    p.insert("lambda_doubled".into(), serde_json::json!(lambda2));
    let sides = enumerate_split_ortho(lambda2).and_then(|lhs| Ok((lhs, so_odd_determinant(lambda2)?)));
    match sides {
        Ok((lhs, rhs)) => IdentityReport::compare("split-orthogonal", p, None, &lhs, &rhs, start),
        Err(e) => IdentityReport::error("split-orthogonal", p, &e.to_string(), start),
    }
}

/// `Σ_{λ⊆(mⁿ)} s_λ = ∏X_i^{m/2} so^odd_{(m/2,…,m/2)}`, with the right side computed
/// both from the determinant and from pattern enumeration.
pub fn verify_orthogonal(n: usize, m: usize) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("m", m as i64)]);
    let mut lhs = LaurentPoly::zero();
    for lambda in partitions_in_box(n, m as i64) {
        match schur_bialternant(&lambda) {
            Ok(s) => lhs += &s,
            Err(e) => return IdentityReport::error("orthogonal", p, &e.to_string(), start),
        }
    }
    let lhs = to_half_variables(&lhs);
    let shift = Monomial::x_pow(&vec![m as i32; n]);
    let lambda2 = vec![m as i64; n];
    let by_det = match so_odd_determinant(&lambda2) {
        Ok(s) => s.mul_monomial(&shift),
        Err(e) => return IdentityReport::error("orthogonal", p, &e.to_string(), start),
    };
    let by_patterns = match enumerate_split_ortho(&lambda2) {
        Ok(s) => s.mul_monomial(&shift),
        Err(e) => return IdentityReport::error("orthogonal", p, &e.to_string(), start),
    };
    let parts = vec![
        IdentityReport::compare("orthogonal", p.clone(), None, &lhs, &by_det, start),
        IdentityReport::compare("orthogonal", p.clone(), None, &lhs, &by_patterns, start),
    ];
    IdentityReport::all_of("orthogonal", p, parts, start)
}

/// Every symmetric `n × n` matrix with entries in `0..=max`.
pub fn all_symmetric_matrices(n: usize, max: u32) -> Vec<SymMatrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let base = max as usize + 1;
    let total = base.pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut e = vec![vec![0u32; n]; n];
            for &(i, j) in &slots {
                let v = (code % base) as u32;
                code /= base;
                e[i][j] = v;
                e[j][i] = v;
            }
            SymMatrix { entries: e }
        })
        .collect()
}

/// Round trip, classical agreement, weight and pattern insertion over all
/// symmetric matrices with entries `≤ max`.
pub fn verify_rsk_roundtrip(n: usize, max: u32) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("max", max as i64)]);
    let all = all_symmetric_matrices(n, max);
    let fail = |what: &str, a: &SymMatrix, got: String, want: String| IdentityReport {
        first_mismatch: Some(Mismatch {
            monomial: format!("{what} {:?}", a.entries),
            lhs: got,
            rhs: want,
        }),
        ..IdentityReport::error("rsk-roundtrip", p.clone(), what, start)
    };
    for a in &all {
        let t = rsk_symmetric_forward(a);
        match rsk_symmetric_inverse(&t, n) {
            Ok(b) if &b == a => {}
            Ok(b) => return fail("inverse", a, format!("{:?}", b.entries), format!("{:?}", a.entries)),
            Err(e) => return fail("inverse", a, e.to_string(), format!("{:?}", a.entries)),
        }
        let c = rsk_symmetric_classical(a);
        if c != t {
            return fail("classical", a, format!("{:?}", t.rows), format!("{:?}", c.rows));
        }
        if t.weight() != a.weight() {
            return fail("weight", a, t.weight().to_string(), a.weight().to_string());
        }
        match (gt_forward(a), t.to_gt(n)) {
            (Ok(g), Ok(h)) if g == h => {}
            (g, h) => return fail("patterns", a, format!("{g:?}"), format!("{h:?}")),
        }
    }
    IdentityReport {
        identity: "rsk-roundtrip".into(),
        params: p,
        status: Status::Verified,
        cap: None,
        lhs_terms: all.len(),
        rhs_terms: all.len(),
        first_mismatch: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_matrix() -> SymMatrix {
        SymMatrix::new(vec![vec![1, 0, 2, 1], vec![0, 0, 1, 4], vec![2, 1, 2, 0], vec![1, 4, 0, 1]]).unwrap()
    }

    fn example_tableau() -> SSYT {
        SSYT { rows: vec![vec![1, 1, 1, 1, 2, 2, 2, 2, 4], vec![2, 3, 3, 3, 3, 4, 4], vec![3, 4, 4], vec![4]] }
    }

    #[test]
    fn worked_example_forward_and_back() {
        let a = example_matrix();
        let bottoms: Vec<u32> = a.upper_array().iter().map(|c| c.1).collect();
        assert_eq!(bottoms, vec![1, 1, 1, 2, 3, 3, 1, 2, 2, 2, 2, 4]);
        let tops: Vec<u32> = a.upper_array().iter().map(|c| c.0).collect();
        assert_eq!(tops, vec![1, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4]);
        assert_eq!(rsk_symmetric_forward(&a), example_tableau());
        assert_eq!(rsk_symmetric_inverse(&example_tableau(), 4).unwrap(), a);
        assert_eq!(rsk_symmetric_classical(&a), example_tableau());
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(rsk_classical(&[]), (SSYT::new(), SSYT::new()));
        assert_eq!(rsk_classical(&[1, 2, 2, 5]).0.rows, vec![vec![1, 2, 2, 5]]);
        assert_eq!(rsk_symmetric_forward(&SymMatrix::zero(3)), SSYT::new());
        assert_eq!(rsk_symmetric_inverse(&SSYT::new(), 2).unwrap(), SymMatrix::zero(2));
        let one = SSYT { rows: vec![vec![1]] };
        assert_eq!(rsk_symmetric_inverse(&one, 1).unwrap().entries, vec![vec![1]]);
        assert_eq!(rsk_symmetric_forward(&SymMatrix::new(vec![vec![3]]).unwrap()).rows, vec![vec![1, 1, 1]]);
        assert_eq!(max_path_statistic(&SymMatrix::zero(3)), 0);
        assert_eq!(max_path_statistic(&SymMatrix::new(vec![vec![5]]).unwrap()), 5);
    }

    #[test]
    fn classical_recording_is_standard() {
        let (p, q) = rsk_classical(&[3, 1, 2, 1]);
        assert_eq!(p.rows, vec![vec![1, 1], vec![2], vec![3]]);
        assert_eq!(q.rows, vec![vec![1, 3], vec![2], vec![4]]);
    }

    #[test]
    fn gt_round_trip() {
        let t = example_tableau();
        assert_eq!(SSYT::from_gt(&t.to_gt(4).unwrap()), t);
        assert!(t.to_gt(3).is_err());
    }

    #[test]
    fn gt_insert_into_empty() {
        let p = gt_insert(&GTPattern { rows: vec![] }, 1);
        assert_eq!(p.rows, vec![vec![1]]);
        let p = column_pair_insert(&GTPattern { rows: vec![] }, 1, 1).unwrap();
        assert_eq!(p.rows, vec![vec![1]]);
    }

    #[test]
    fn diagonal_column_only_bumps() {
        let start = SSYT { rows: vec![vec![1, 2], vec![2]] }.to_gt(2).unwrap();
        let p = column_pair_insert(&start, 2, 2).unwrap();
        let mut t = SSYT::from_gt(&start);
        t.insert(2);
        assert_eq!(SSYT::from_gt(&p), t);
    }

    #[test]
    fn gt_forward_on_example() {
        let a = example_matrix();
        assert_eq!(gt_forward(&a).unwrap(), example_tableau().to_gt(4).unwrap());
    }

    #[test]
    fn split_patterns_small() {
        // λ = (1): starters 0, 1/2, 1
        let pats = enumerate_split_ortho_patterns(&[2], Orientation::Increasing, 2).unwrap();
        assert_eq!(pats.len(), 3);
        assert_eq!(pats.iter().filter(|p| p.starter_is_half(1)).count(), 1);
        let gf = enumerate_split_ortho(&[2]).unwrap();
        assert_eq!(gf, y(1, -2) + LaurentPoly::one() + y(1, 2));
        assert!(enumerate_split_ortho_patterns(&[1, 2], Orientation::Increasing, 2).is_err());
    }
}
