//! Combinatorial models for the bounded right-hand side: decorated two-line
//! arrays, signed families of lattice paths and pairs of plane partitions.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identities::{lr, params, w_entry, IdentityReport};
use crate::polyring::{
    complete_homog, det, exact_div, mul_truncated, series_expand, signed_permutations, LaurentPoly, Monomial,
    PolyError, Var,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("non-intersecting mode needs w bound to 0 or 1")]
    InvalidMode,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn x(i: usize) -> LaurentPoly {
    LaurentPoly::x(i)
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

// ---------------------------------------------------------------------------
// Decorated two-line arrays

/// A column `(top j over bottom i)`, `i ≤ j`. Extra columns carry the decorations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrayColumn {
    pub top: usize,
    pub bottom: usize,
    pub extra: bool,
    pub overlined: bool,
    pub underlined: bool,
}

impl ArrayColumn {
    pub fn weight(&self) -> LaurentPoly {
        let (i, j) = (self.bottom, self.top);
        if !self.extra {
            return if i == j { x(i) } else { x(i) * x(j) };
        }
        let mut m = Monomial::one();
        if self.overlined {
            m = m.mul(&Monomial::var(Var::X(j)));
        }
        if self.underlined {
            m = m.mul(&Monomial::var_pow(Var::X(i), if i == j { -1 } else { 1 }));
        }
        if self.overlined && self.underlined {
            m = m.mul(&Monomial::var(Var::W));
        }
        LaurentPoly::term(m, 1)
    }
}

/// Plain columns with multiplicities plus one extra column for every pair `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedTwoLineArray {
    pub columns: Vec<ArrayColumn>,
}

impl DecoratedTwoLineArray {
    pub fn weight(&self) -> LaurentPoly {
        LaurentPoly::product(&self.columns.iter().map(|c| c.weight()).collect::<Vec<_>>())
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for j in 1..=n {
        for i in 1..=j {
            v.push((i, j));
        }
    }
    v
}

/// All decoration choices for the extra columns.
fn decorations(n: usize) -> Vec<Vec<ArrayColumn>> {
    let mut out: Vec<Vec<ArrayColumn>> = vec![Vec::new()];
    for (i, j) in pairs(n) {
        let mut next = Vec::new();
        for cols in &out {
            for (o, u) in [(false, false), (true, false), (false, true), (true, true)] {
                let mut c = cols.clone();
                c.push(ArrayColumn { top: j, bottom: i, extra: true, overlined: o, underlined: u });
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Multisets of plain columns with total X-degree at most `cap`.
fn plain_arrays(n: usize, cap: i32) -> Vec<Vec<ArrayColumn>> {
    let kinds: Vec<ArrayColumn> = pairs(n)
        .into_iter()
        .map(|(i, j)| ArrayColumn { top: j, bottom: i, extra: false, overlined: false, underlined: false })
        .collect();
    let mut out = Vec::new();
    fn rec(kinds: &[ArrayColumn], k: usize, budget: i32, cur: &mut Vec<ArrayColumn>, out: &mut Vec<Vec<ArrayColumn>>) {
        if k == kinds.len() {
            out.push(cur.clone());
            return;
        }
        let d = if kinds[k].top == kinds[k].bottom { 1 } else { 2 };
        let mut used = 0;
        loop {
            rec(kinds, k + 1, budget - used * d, cur, out);
            if budget - (used + 1) * d < 0 {
                break;
            }
            cur.push(kinds[k]);
            used += 1;
        }
        for _ in 0..used {
            cur.pop();
        }
    }
    rec(&kinds, 0, cap, &mut Vec::new(), &mut out);
    out
}

/// Every decorated array whose weight has X-degree at most `cap`.
pub fn enumerate_two_line_arrays(n: usize, cap: i32) -> Vec<DecoratedTwoLineArray> {
    let mut out = Vec::new();
    for dec in decorations(n) {
        let dec_deg = LaurentPoly::product(&dec.iter().map(|c| c.weight()).collect::<Vec<_>>())
            .max_x_degree()
            .unwrap_or(0);
        for plain in plain_arrays(n, cap - dec_deg) {
            let mut columns = plain;
            columns.extend(dec.iter().copied());
            columns.sort();
            out.push(DecoratedTwoLineArray { columns });
        }
    }
    out
}

/// Generating function of decorated two-line arrays, truncated at X-degree `cap`.
/// Plain parts and decorations are summed separately and multiplied.
pub fn rhs_unbounded_arrays(n: usize, cap: i32) -> LaurentPoly {
    let dec_sum = crate::polyring::sum(
        decorations(n)
            .iter()
            .map(|d| LaurentPoly::product(&d.iter().map(|c| c.weight()).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .iter(),
    );
    let slack = n as i32;
    let plain_sum = LaurentPoly::from_terms(plain_arrays(n, cap + slack).into_iter().map(|cols| {
        let w = LaurentPoly::product(&cols.iter().map(|c| c.weight()).collect::<Vec<_>>());
        w.into_terms().pop().expect("plain arrays have monomial weight")
    }));
    mul_truncated(&dec_sum, &plain_sum, cap)
}

/// Series expansion of the product form the arrays enumerate.
pub fn rhs_unbounded_series(n: usize, cap: i32) -> Result<LaurentPoly, PolyError> {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for j in 1..=n {
        nums.push(lr(j));
        dens.push(one() - x(j));
        for i in 1..j {
            nums.push(one() + x(i) + x(j) + LaurentPoly::var(Var::W) * x(i) * x(j));
            dens.push(one() - x(i) * x(j));
        }
    }
    series_expand(&nums, &dens, cap)
}

// ---------------------------------------------------------------------------
// Lattice paths

pub type Point = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StartKind {
    /// `(−3i+1, −i+1)`, diagonal steps `(−1,1)`
    First,
    /// `(−i+1, −3i+1)`, diagonal steps `(1,−1)`
    Second,
}

impl StartKind {
    pub fn point(self, i: usize) -> Point {
        let i = i as i64;
        match self {
            StartKind::First => (-3 * i + 1, -i + 1),
            StartKind::Second => (-i + 1, -3 * i + 1),
        }
    }

    fn diagonal(self) -> Step {
        match self {
            StartKind::First => Step::Left,
            StartKind::Second => Step::Down,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// `(1,1)`
    #[serde(rename = "NE")]
    Up,
    /// `(−1,1)`
    #[serde(rename = "NW")]
    Left,
    /// `(1,−1)`
    #[serde(rename = "SE")]
    Down,
    /// `(1,0)`
    #[serde(rename = "E")]
    East,
    /// `(0,1)`
    #[serde(rename = "N")]
    North,
}

impl Step {
    pub fn delta(self) -> Point {
        match self {
            Step::Up => (1, 1),
            Step::Left => (-1, 1),
            Step::Down => (1, -1),
            Step::East => (1, 0),
            Step::North => (0, 1),
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        Some(match c {
            'U' => Step::Up,
            'L' => Step::Left,
            'D' => Step::Down,
            'H' | 'E' => Step::East,
            'V' | 'N' => Step::North,
            _ => return None,
        })
    }
}

/// How `w` is treated on horizontal steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WMode {
    Symbolic,
    Zero,
    One,
}

/// Weight of a diagonal step on the line `x + y = s` (`s ≤ 0`).
pub fn diagonal_weight(s: i64) -> Monomial {
    let d = -s;
    assert!(d >= 0 && d % 2 == 0, "diagonal steps live on even lines below the axis");
    let d = (d / 2) as usize;
    if d % 2 == 0 {
        Monomial::var(Var::X(d / 2 + 1))
    } else {
        Monomial::var_pow(Var::X((d + 1) / 2), -1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePath {
    /// Index `i` of the start set `A_i`.
    pub start_index: usize,
    pub kind: StartKind,
    /// Index `j` of the endpoint set `E_j`.
    pub end_index: usize,
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn start(&self) -> Point {
        self.kind.point(self.start_index)
    }

    pub fn points(&self) -> Vec<Point> {
        let mut p = self.start();
        let mut out = vec![p];
        for s in &self.steps {
            let d = s.delta();
            p = (p.0 + d.0, p.1 + d.1);
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> Point {
        *self.points().last().unwrap()
    }

    /// Diagonal steps by distance; horizontal steps starting on or above `x+y = j−1` get `w`.
    pub fn weight(&self, wmode: WMode) -> LaurentPoly {
        let mut m = Monomial::one();
        let mut p = self.start();
        let threshold = self.end_index as i64 - 1;
        let mut zero = false;
        for s in &self.steps {
            match s {
                Step::Left | Step::Down => m = m.mul(&diagonal_weight(p.0 + p.1)),
                Step::East if p.0 + p.1 >= threshold => match wmode {
                    WMode::Symbolic => m = m.mul(&Monomial::var(Var::W)),
                    WMode::Zero => zero = true,
                    WMode::One => {}
                },
                _ => {}
            }
            let d = s.delta();
            p = (p.0 + d.0, p.1 + d.1);
        }
        if zero {
            LaurentPoly::zero()
        } else {
            LaurentPoly::term(m, 1)
        }
    }

    /// Checks the step rules and that the path starts in `A_i`.
    pub fn is_valid(&self) -> bool {
        let mut p = self.start();
        for s in &self.steps {
            let line = p.0 + p.1;
            let ok = match s {
                Step::Up => line < 0,
                Step::Left | Step::Down => line <= 0 && *s == self.kind.diagonal(),
                Step::East | Step::North => line >= 0,
            };
            if !ok {
                return false;
            }
            let d = s.delta();
            p = (p.0 + d.0, p.1 + d.1);
        }
        true
    }
}

/// Endpoints of `E_j` (or `E'_j` when `shifted`).
pub fn endpoints(n: usize, m: usize, j: usize, shifted: bool) -> Vec<Point> {
    let (n, j) = (n as i64, j as i64);
    let l = (m / 2) as i64;
    let first = if shifted { (n - j + l + 1, 2 * j - n - l - 2) } else { (n - j + l + 1, j - l - 2) };
    if m % 2 == 1 {
        vec![first]
    } else {
        vec![first, (first.0 - 1, first.1 + 1)]
    }
}

/// All paths from `A_i` of the given kind to `end`.
pub fn paths_between(i: usize, kind: StartKind, end: Point, end_index: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut steps = Vec::new();
    fn rec(p: Point, kind: StartKind, end: Point, steps: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if p == end {
            out.push(steps.clone());
            return;
        }
        let line = p.0 + p.1;
        if line > end.0 + end.1 {
            return;
        }
        match kind {
            StartKind::Second if p.0 > end.0 => return,
            StartKind::First if p.1 > end.1 => return,
            _ => {}
        }
        if line > 0 && (p.0 > end.0 || p.1 > end.1) {
            return;
        }
        let mut moves: Vec<Step> = Vec::with_capacity(3);
        if line < 0 {
            moves.push(Step::Up);
            moves.push(kind.diagonal());
        } else {
            if line == 0 {
                moves.push(kind.diagonal());
            }
            moves.push(Step::East);
            moves.push(Step::North);
        }
        for s in moves {
            let d = s.delta();
            steps.push(s);
            rec((p.0 + d.0, p.1 + d.1), kind, end, steps, out);
            steps.pop();
        }
    }
    let mut raw = Vec::new();
    rec(kind.point(i), kind, end, &mut steps, &mut raw);
    for s in raw {
        out.push(LatticePath { start_index: i, kind, end_index, steps: s });
    }
    out
}

/// Which families [`enumerate_path_families`] lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyMode {
    /// Every family; paths may share points.
    AllSigned,
    /// Paths disjoint on and below `x + y = 0`.
    BelowDisjoint,
    /// Paths pairwise vertex-disjoint; requires `w ∈ {0, 1}`.
    NonIntersecting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub paths: Vec<LatticePath>,
}

impl PathFamily {
    /// `σ(i)` for each path, 1-based.
    pub fn sigma(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p.end_index).collect()
    }

    /// `sgn σ · (−1)^{#second-kind starts}`
    pub fn signed_bijection_sign(&self) -> i32 {
        let perm: Vec<usize> = self.sigma().iter().map(|j| j - 1).collect();
        let s = crate::polyring::perm_sign(&perm);
        let seconds = self.paths.iter().filter(|p| p.kind == StartKind::Second).count();
        if seconds % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// `(−1)^{Σ i over first-kind starts}`
    pub fn nonintersecting_sign(&self) -> i32 {
        let s: usize = self.paths.iter().filter(|p| p.kind == StartKind::First).map(|p| p.start_index).sum();
        if s % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn path_weight(&self, wmode: WMode) -> LaurentPoly {
        LaurentPoly::product(&self.paths.iter().map(|p| p.weight(wmode)).collect::<Vec<_>>())
    }
}

fn w_value(wmode: WMode) -> LaurentPoly {
    match wmode {
        WMode::Symbolic => LaurentPoly::var(Var::W),
        WMode::Zero => LaurentPoly::zero(),
        WMode::One => one(),
    }
}

/// `∏ X_i^l (X_i^{-1} + 1 + w + X_i)`, times `∏(1 + X_i)` for odd `m`.
pub fn overall_factor(n: usize, m: usize, wmode: WMode) -> LaurentPoly {
    let l = (m / 2) as i32;
    let mut f = one();
    for i in 1..=n {
        let lr_i = LaurentPoly::var_pow(Var::X(i), -1) + one() + w_value(wmode) + x(i);
        f = f * LaurentPoly::var_pow(Var::X(i), l) * lr_i;
        if m % 2 == 1 {
            f = f * (one() + x(i));
        }
    }
    f
}

fn binom_sign(n: usize) -> i32 {
    if (n * (n + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn disjoint(a: &HashSet<Point>, pts: &[Point], below_only: bool) -> bool {
    pts.iter().all(|p| (below_only && p.0 + p.1 > 0) || !a.contains(p))
}

/// Families of `n` paths with their signed weights, overall factor included.
pub fn enumerate_path_families(
    n: usize,
    m: usize,
    mode: FamilyMode,
    wmode: WMode,
) -> Result<Vec<(PathFamily, LaurentPoly)>, PathError> {
    if mode == FamilyMode::NonIntersecting && wmode == WMode::Symbolic {
        return Err(PathError::InvalidMode);
    }
    let shifted = mode == FamilyMode::NonIntersecting && wmode == WMode::Zero;
    // candidates[i][j]: paths from A_{i+1} to E_{j+1}
    let mut candidates: Vec<Vec<Vec<(LatticePath, Vec<Point>, LaurentPoly)>>> = Vec::new();
    for i in 1..=n {
        let mut row = Vec::new();
        for j in 1..=n {
            let mut c = Vec::new();
            for kind in [StartKind::First, StartKind::Second] {
                for e in endpoints(n, m, j, shifted) {
                    for p in paths_between(i, kind, e, j) {
                        let w = p.weight(wmode);
                        if w.is_zero() {
                            continue;
                        }
                        let pts = p.points();
                        c.push((p, pts, w));
                    }
                }
            }
            row.push(c);
        }
        candidates.push(row);
    }
    let factor = match mode {
        FamilyMode::NonIntersecting => overall_factor(n, m, wmode),
        _ => overall_factor(n, m, wmode).scale(binom_sign(n)),
    };
    let mut out = Vec::new();
    for (perm, _) in signed_permutations(n) {
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        family_rec(&candidates, &perm, 0, &mut chosen, mode, &factor, &mut out);
    }
    Ok(out)
}

fn family_rec(
    cand: &[Vec<Vec<(LatticePath, Vec<Point>, LaurentPoly)>>],
    perm: &[usize],
    i: usize,
    chosen: &mut Vec<usize>,
    mode: FamilyMode,
    factor: &LaurentPoly,
    out: &mut Vec<(PathFamily, LaurentPoly)>,
) {
    let n = perm.len();
    if i == n {
        let paths: Vec<LatticePath> = (0..n).map(|k| cand[k][perm[k]][chosen[k]].0.clone()).collect();
        let fam = PathFamily { paths };
        let sign = match mode {
            FamilyMode::NonIntersecting => fam.nonintersecting_sign(),
            _ => fam.signed_bijection_sign(),
        };
        let w = LaurentPoly::product(&(0..n).map(|k| cand[k][perm[k]][chosen[k]].2.clone()).collect::<Vec<_>>());
        out.push((fam, (&w * factor).scale(sign)));
        return;
    }
    let mut used: HashSet<Point> = HashSet::new();
    if mode != FamilyMode::AllSigned {
        for k in 0..i {
            used.extend(cand[k][perm[k]][chosen[k]].1.iter().copied());
        }
    }
    for (idx, (_, pts, _)) in cand[i][perm[i]].iter().enumerate() {
        let ok = match mode {
            FamilyMode::AllSigned => true,
            FamilyMode::BelowDisjoint => disjoint(&used, pts, true),
            FamilyMode::NonIntersecting => disjoint(&used, pts, false),
        };
        if ok {
            chosen.push(idx);
            family_rec(cand, perm, i + 1, chosen, mode, factor, out);
            chosen.pop();
        }
    }
}

/// Sum of [`enumerate_path_families`].
pub fn path_family_sum(n: usize, m: usize, mode: FamilyMode, wmode: WMode) -> Result<LaurentPoly, PathError> {
    let fams = enumerate_path_families(n, m, mode, wmode)?;
    Ok(crate::polyring::sum(fams.iter().map(|(_, w)| w)))
}

/// Signed single-path generating functions `Σ_kind ± GF(A_i → E_j)`.
pub fn path_matrix(n: usize, m: usize, wmode: WMode) -> Vec<Vec<LaurentPoly>> {
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let mut acc = LaurentPoly::zero();
                    for kind in [StartKind::First, StartKind::Second] {
                        for e in endpoints(n, m, j, false) {
                            for p in paths_between(i, kind, e, j) {
                                let w = p.weight(wmode);
                                acc = if kind == StartKind::Second { acc - w } else { acc + w };
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Right-hand side of the normalized bounded identity in w, by exact division.
pub fn rhs_determinant(n: usize, m: usize) -> Result<LaurentPoly, PolyError> {
    let mat: Vec<Vec<LaurentPoly>> = (1..=n).map(|i| (1..=n).map(|j| w_entry(j, m, n, i)).collect()).collect();
    let num = det(&mat)? * LaurentPoly::product(&(1..=n).map(lr).collect::<Vec<_>>());
    let mut den = one();
    for j in 1..=n {
        den = den * (one() - x(j));
        for i in 1..j {
            den = den * (one() - x(i) * x(j)) * (x(j) - x(i));
        }
    }
    exact_div(&num, &den)
}

fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(a), BigInt::from(b))
    }
}

/// `Σ_{p,q} sgn(p−q−c) w^{n−j−q} C(j−1,p) C(n−j,q) h_{|p−q−c|−i}(X_1, X_1^{-1}, …, X_i, X_i^{-1})`
fn b_sum(n: usize, i: usize, j: usize, c: i64) -> LaurentPoly {
    let args: Vec<LaurentPoly> = (1..=i).flat_map(|k| [x(k), LaurentPoly::var_pow(Var::X(k), -1)]).collect();
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let mut acc = LaurentPoly::zero();
    for p in 0..j {
        for q in 0..=n - j {
            let d = p - q - c;
            let k = d.abs() - i;
            if k < 0 {
                continue;
            }
            let h = complete_homog(k, &args).expect("nonnegative degree");
            let coeff = binom(j - 1, p) * binom(n - j, q) * d.signum();
            acc += &h.mul_monomial(&Monomial::var_pow(Var::W, (n - j - q) as i32)).scale(coeff);
        }
    }
    acc
}

/// The matrix `b_{i,j}` (odd `m = 2l+1` uses shift `l+1`, even `m = 2l` the two shifts `l`, `l+1`).
pub fn lgv_entry_matrix(n: usize, m: usize) -> Vec<Vec<LaurentPoly>> {
    let l = (m / 2) as i64;
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if m % 2 == 1 {
                        b_sum(n, i, j, l + 1)
                    } else {
                        b_sum(n, i, j, l) + b_sum(n, i, j, l + 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// `(−1)^{C(n+1,2)}` times [`overall_factor`] with symbolic `w`.
pub fn lgv_prefactor(n: usize, m: usize) -> LaurentPoly {
    overall_factor(n, m, WMode::Symbolic).scale(binom_sign(n))
}

// ---------------------------------------------------------------------------
// Plane partitions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn m(self, l: usize) -> usize {
        match self {
            Parity::Odd => 2 * l + 1,
            Parity::Even => 2 * l,
        }
    }
}

/// `P` column-strict (rows weakly, columns strictly decreasing), `Q` row-strict.
/// In the even case row `i` of `Q` may carry an inner cell (`q_inner[i]`); filling
/// it with `n+1−i` gives the straight-shape tableau [`PlanePartitionPair::completed_q`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePartitionPair {
    pub p: Vec<Vec<u32>>,
    pub q: Vec<Vec<u32>>,
    pub q_inner: Vec<bool>,
}

impl PlanePartitionPair {
    /// `∏ X_i^{#(2i−1) in P − #(2i) in P}` times the overall factor at `w = 0`.
    pub fn weight(&self, parity: Parity, l: usize) -> LaurentPoly {
        let n = self.p.len();
        let mut exps = vec![0i32; n];
        for row in &self.p {
            for &e in row {
                let i = (e as usize).div_ceil(2);
                exps[i - 1] += if e % 2 == 1 { 1 } else { -1 };
            }
        }
        overall_factor(n, parity.m(l), WMode::Zero).mul_monomial(&Monomial::x_pow(&exps))
    }

    /// `Q` with each inner cell of row `i` filled by `n+1−i`.
    pub fn completed_q(&self) -> Vec<Vec<u32>> {
        let n = self.q.len();
        self.q
            .iter()
            .zip(&self.q_inner)
            .enumerate()
            .map(|(i, (row, &inner))| {
                let mut r = Vec::with_capacity(row.len() + 1);
                if inner {
                    r.push((n - i) as u32);
                }
                r.extend(row.iter().copied());
                r
            })
            .collect()
    }

    pub fn is_valid(&self, n: usize, l: usize, parity: Parity) -> bool {
        if self.p.len() != n || self.q.len() != n || self.q_inner.len() != n {
            return false;
        }
        if parity == Parity::Odd && self.q_inner.iter().any(|&b| b) {
            return false;
        }
        for (r, row) in self.p.iter().enumerate() {
            let bound = (2 * n + 2 - 2 * (r + 1)) as u32;
            if row.len() > l || row.iter().any(|&e| e == 0 || e > bound) || row.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            if r > 0 && (row.len() > self.p[r - 1].len() || row.iter().zip(&self.p[r - 1]).any(|(a, b)| a >= b)) {
                return false;
            }
        }
        if self.q.iter().enumerate().any(|(i, row)| row.iter().any(|&e| e as usize > n - (i + 1))) {
            return false;
        }
        let lens: Vec<usize> = (0..n).map(|i| l - self.p[n - 1 - i].len()).collect();
        let q = self.completed_q();
        q.iter().zip(&lens).all(|(row, &len)| row.len() == len) && is_row_strict(&q, &q_bounds(n, parity))
    }
}

fn q_bounds(n: usize, parity: Parity) -> Vec<u32> {
    let extra = (parity == Parity::Even) as usize;
    (1..=n).map(|i| (n - i + extra) as u32).collect()
}

/// Rows strictly, columns weakly decreasing, positive entries, row `i` bounded by `bounds[i]`.
fn is_row_strict(q: &[Vec<u32>], bounds: &[u32]) -> bool {
    for (i, row) in q.iter().enumerate() {
        if row.iter().any(|&e| e == 0 || e > bounds[i]) || row.windows(2).any(|w| w[0] <= w[1]) {
            return false;
        }
        if i > 0 && (row.len() > q[i - 1].len() || row.iter().zip(&q[i - 1]).any(|(a, b)| a > b)) {
            return false;
        }
    }
    true
}

/// Maps a non-intersecting family at `w = 0` (all starts of the second kind,
/// path `i` ending in `E'_{n+1−i}`) to its pair of plane partitions.
pub fn paths_to_plane_partitions(family: &PathFamily, l: usize, parity: Parity) -> Result<PlanePartitionPair, PathError> {
    let n = family.paths.len();
    let m = parity.m(l);
    let bad = |s: &str| PathError::PreconditionViolated(s.to_string());
    let mut p = vec![Vec::new(); n];
    let mut q = vec![Vec::new(); n];
    let mut q_inner = vec![false; n];
    for path in &family.paths {
        let i = path.start_index;
        if path.kind != StartKind::Second {
            return Err(bad("first-kind start"));
        }
        if path.end_index != n + 1 - i {
            return Err(bad("path i must end in E'_{n+1-i}"));
        }
        let ends = endpoints(n, m, path.end_index, true);
        let end = path.end();
        let which = ends.iter().position(|e| *e == end).ok_or_else(|| bad("endpoint not in E'"))?;
        let pts = path.points();
        let last_on_axis = pts.iter().rposition(|p| p.0 + p.1 == 0).ok_or_else(|| bad("path misses the axis"))?;
        let mut row = Vec::new();
        for (k, s) in path.steps[..last_on_axis].iter().enumerate() {
            if *s == Step::Down {
                let d = -(pts[k].0 + pts[k].1) / 2;
                row.push((d + 1) as u32);
            }
        }
        p[n - i] = row;
        let mut qrow: Vec<u32> = Vec::new();
        for (k, s) in path.steps[last_on_axis..].iter().enumerate() {
            if *s == Step::East {
                qrow.push((k + 1) as u32);
            }
        }
        qrow.reverse();
        q[i - 1] = qrow;
        q_inner[i - 1] = parity == Parity::Even && which == 1;
    }
    Ok(PlanePartitionPair { p, q, q_inner })
}

fn column_strict(n: usize, l: usize) -> Vec<Vec<Vec<u32>>> {
    // rows from the bottom up so the strict column condition can be checked against the row below
    let mut out = Vec::new();
    fn rows(len: usize, max: u32, below: Option<&Vec<u32>>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let c = cur.len();
        let hi = cur.last().copied().unwrap_or(max).min(max);
        let lo = match below {
            Some(b) if c < b.len() => b[c] + 1,
            _ => 1,
        };
        for v in (lo..=hi).rev() {
            cur.push(v);
            rows(len, max, below, cur, out);
            cur.pop();
        }
    }
    fn rec(n: usize, l: usize, r: usize, acc: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        // r: 1-based row being filled, from n down to 1
        if r == 0 {
            let mut rows_top = acc.clone();
            rows_top.reverse();
            out.push(rows_top);
            return;
        }
        let max = (2 * n + 2 - 2 * r) as u32;
        let below = acc.last().cloned();
        let min_len = below.as_ref().map_or(0, |b| b.len());
        for len in min_len..=l {
            let mut cand = Vec::new();
            rows(len, max, below.as_ref(), &mut Vec::new(), &mut cand);
            for row in cand {
                acc.push(row);
                rec(n, l, r - 1, acc, out);
                acc.pop();
            }
        }
    }
    rec(n, l, n, &mut Vec::new(), &mut out);
    out
}

fn row_strict_fillings(lens: &[usize], bounds: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    fn row_choices(len: usize, max: u32, above: Option<&Vec<u32>>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let c = cur.len();
        let mut hi = cur.last().map_or(max, |&v| v.saturating_sub(1));
        if let Some(a) = above {
            hi = hi.min(a[c]);
        }
        for v in (1..=hi).rev() {
            cur.push(v);
            row_choices(len, max, above, cur, out);
            cur.pop();
        }
    }
    fn rec(lens: &[usize], bounds: &[u32], acc: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let i = acc.len();
        if i == lens.len() {
            out.push(acc.clone());
            return;
        }
        let mut cand = Vec::new();
        row_choices(lens[i], bounds[i], acc.last(), &mut Vec::new(), &mut cand);
        for row in cand {
            acc.push(row);
            rec(lens, bounds, acc, out);
            acc.pop();
        }
    }
    rec(lens, bounds, &mut Vec::new(), &mut out);
    out
}

/// All valid pairs with their weights.
pub fn pp_pairs(n: usize, l: usize, parity: Parity) -> Vec<(PlanePartitionPair, LaurentPoly)> {
    let bounds = q_bounds(n, parity);
    let mut out = Vec::new();
    for p in column_strict(n, l) {
        let lens: Vec<usize> = (0..n).map(|i| l - p[n - 1 - i].len()).collect();
        for full in row_strict_fillings(&lens, &bounds) {
            let mut q = Vec::with_capacity(n);
            let mut q_inner = Vec::with_capacity(n);
            for (i, row) in full.into_iter().enumerate() {
                let inner = parity == Parity::Even && row.first() == Some(&((n - i) as u32));
                q_inner.push(inner);
                q.push(if inner { row[1..].to_vec() } else { row });
            }
            let pair = PlanePartitionPair { p: p.clone(), q, q_inner };
            let w = pair.weight(parity, l);
            out.push((pair, w));
        }
    }
    out
}

/// Generating function of [`pp_pairs`].
pub fn enumerate_pp_pairs(n: usize, l: usize, parity: Parity) -> Result<LaurentPoly, PathError> {
    let ok = match parity {
        Parity::Odd => l + 2 >= n,
        Parity::Even => l + 1 >= n,
    };
    if !ok {
        return Err(PathError::PreconditionViolated(format!("l = {l} too small for n = {n}")));
    }
    Ok(crate::polyring::sum(pp_pairs(n, l, parity).iter().map(|(_, w)| w)))
}

/// Builds a path from a step string such as `"DDUHV"`.
pub fn path_from_steps(i: usize, kind: StartKind, end_index: usize, steps: &str) -> LatticePath {
    LatticePath {
        start_index: i,
        kind,
        end_index,
        steps: steps.chars().filter(|c| !c.is_whitespace()).map(|c| Step::from_char(c).expect("step letter")).collect(),
    }
}

// ---------------------------------------------------------------------------
// Reports

fn w_numeric(wmode: WMode) -> Option<i64> {
    match wmode {
        WMode::Symbolic => None,
        WMode::Zero => Some(0),
        WMode::One => Some(1),
    }
}

fn at_w(p: &LaurentPoly, wmode: WMode) -> Result<LaurentPoly, PolyError> {
    match w_numeric(wmode) {
        None => Ok(p.clone()),
        Some(v) => p.substitute(&crate::polyring::Bindings::new().int(Var::W, v)),
    }
}

/// Signed path-family sums (and, for numeric w, the non-intersecting families)
/// against the determinant.
pub fn verify_path_families(n: usize, m: usize, wmode: WMode) -> IdentityReport {
    let start = Instant::now();
    let mut p = params(&[("n", n as i64), ("m", m as i64)]);
    if let Some(v) = w_numeric(wmode) {
        p.insert("w".into(), v.into());
    }
    let rhs = match rhs_determinant(n, m).and_then(|r| at_w(&r, wmode)) {
        Ok(r) => r,
        Err(e) => return IdentityReport::error("path-families", p, &e.to_string(), start),
    };
    let mut modes = vec![FamilyMode::AllSigned, FamilyMode::BelowDisjoint];
    if wmode != WMode::Symbolic {
        modes.push(FamilyMode::NonIntersecting);
    }
    let mut parts = Vec::new();
    for mode in modes {
        match path_family_sum(n, m, mode, wmode) {
            Ok(lhs) => parts.push(IdentityReport::compare("path-families", p.clone(), None, &lhs, &rhs, start)),
            Err(e) => return IdentityReport::error("path-families", p, &e.to_string(), start),
        }
    }
    IdentityReport::all_of("path-families", p, parts, start)
}

/// Plane-partition pairs against the determinant at `w = 0`.
pub fn verify_plane_partitions(n: usize, l: usize, parity: Parity) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("l", l as i64), ("even", (parity == Parity::Even) as i64)]);
    let sides = enumerate_pp_pairs(n, l, parity)
        .and_then(|lhs| Ok((lhs, at_w(&rhs_determinant(n, parity.m(l))?, WMode::Zero)?)));
    match sides {
        Ok((lhs, rhs)) => IdentityReport::compare("plane-partitions", p, None, &lhs, &rhs, start),
        Err(e) => IdentityReport::error("plane-partitions", p, &e.to_string(), start),
    }
}

/// Decorated two-line arrays against the series expansion of their product form.
pub fn verify_two_line_arrays(n: usize, cap: i32) -> IdentityReport {
    let start = Instant::now();
    let p = params(&[("n", n as i64), ("degree", cap as i64)]);
    match rhs_unbounded_series(n, cap) {
        Ok(rhs) => IdentityReport::compare("two-line-arrays", p, Some(cap), &rhs_unbounded_arrays(n, cap), &rhs, start),
        Err(e) => IdentityReport::error("two-line-arrays", p, &e.to_string(), start),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_weights() {
        assert_eq!(diagonal_weight(0), Monomial::var(Var::X(1)));
        assert_eq!(diagonal_weight(-2), Monomial::var_pow(Var::X(1), -1));
        assert_eq!(diagonal_weight(-4), Monomial::var(Var::X(2)));
        assert_eq!(diagonal_weight(-6), Monomial::var_pow(Var::X(2), -1));
    }

    #[test]
    fn arrays_single_variable() {
        let got = rhs_unbounded_arrays(1, 2);
        // the X^{-1} term of the first factor reaches X^3 of the geometric series
        let geometric = one() + x(1) + x(1).pow(2) + x(1).pow(3);
        let expect = mul_truncated(&lr(1), &geometric, 2);
        assert_eq!(got, expect);
        let both = ArrayColumn { top: 1, bottom: 1, extra: true, overlined: true, underlined: true };
        assert_eq!(both.weight(), LaurentPoly::var(Var::W));
    }

    #[test]
    fn arrays_match_series() {
        for (n, cap) in [(1, 4), (2, 3), (2, 5)] {
            assert_eq!(rhs_unbounded_arrays(n, cap), rhs_unbounded_series(n, cap).unwrap());
        }
        let listed = enumerate_two_line_arrays(2, 3);
        let total = crate::polyring::sum(listed.iter().map(|a| a.weight()).collect::<Vec<_>>().iter()).truncate(3);
        assert_eq!(total, rhs_unbounded_arrays(2, 3));
    }

    #[test]
    fn rhs_determinant_base_case() {
        assert_eq!(rhs_determinant(1, 0).unwrap(), lr(1));
    }

    #[test]
    fn single_path_matrix_is_b() {
        for (n, m) in [(1, 1), (1, 2), (2, 3), (2, 2), (2, 4), (3, 3)] {
            assert_eq!(path_matrix(n, m, WMode::Symbolic), lgv_entry_matrix(n, m), "n={n} m={m}");
        }
    }

    #[test]
    fn b_determinant_gives_rhs() {
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4)] {
            let d = det(&lgv_entry_matrix(n, m)).unwrap() * lgv_prefactor(n, m);
            assert_eq!(d, rhs_determinant(n, m).unwrap(), "n={n} m={m}");
        }
    }

    #[test]
    fn paths_are_valid() {
        for kind in [StartKind::First, StartKind::Second] {
            for e in endpoints(2, 4, 1, false) {
                for p in paths_between(2, kind, e, 1) {
                    assert!(p.is_valid());
                    assert_eq!(p.end(), e);
                }
            }
        }
    }

    #[test]
    fn nonintersecting_requires_numeric_w() {
        assert_eq!(
            enumerate_path_families(2, 3, FamilyMode::NonIntersecting, WMode::Symbolic).unwrap_err(),
            PathError::InvalidMode
        );
    }

    #[test]
    fn one_path_families() {
        let s = path_family_sum(1, 1, FamilyMode::AllSigned, WMode::Symbolic).unwrap();
        assert_eq!(s, rhs_determinant(1, 1).unwrap());
    }

    #[test]
    fn pp_weight_of_empty_pair() {
        let pair = PlanePartitionPair { p: vec![vec![]], q: vec![vec![]], q_inner: vec![false] };
        assert!(pair.is_valid(1, 0, Parity::Odd));
        assert_eq!(pair.weight(Parity::Odd, 0), overall_factor(1, 1, WMode::Zero));
    }
}
