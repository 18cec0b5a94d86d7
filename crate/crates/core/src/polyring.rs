//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Variables come from a fixed registry `X1..X8, t, u, v, w, Q, r`. Terms are kept
//! sorted by the lexicographic order on exponent vectors in registry order, so the
//! derived equality is equality of canonical forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of X variables in the registry.
pub const MAX_X: usize = 8;
/// Total number of registry slots.
pub const NVARS: usize = MAX_X + 6;
/// Largest matrix accepted by [`det`].
pub const DET_MAX: usize = 8;

/// Product size above which multiplication is split across threads.
const PAR_MUL_THRESHOLD: usize = 1 << 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("substitution requires inverting a non-unit value for {0}")]
    NonInvertibleSubstitution(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("argument {0} has no Laurent reciprocal")]
    NonInvertibleArgument(usize),
    #[error("denominator {0} cannot be expanded as a series")]
    NonExpandableDenominator(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix size {0} exceeds the determinant cap")]
    MatrixTooLarge(usize),
    #[error("result has non-integral coefficient {0}")]
    NonIntegralCoefficient(String),
    #[error("variable {0} may not carry a negative exponent")]
    NegativeExponent(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
}

/// A registry variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `X(i)` with `1 <= i <= MAX_X`.
    X(usize),
    T,
    U,
    V,
    W,
    Q,
    R,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X(i) => {
                assert!((1..=MAX_X).contains(&i), "X index {i} out of range");
                i - 1
            }
            Var::T => MAX_X,
            Var::U => MAX_X + 1,
            Var::V => MAX_X + 2,
            Var::W => MAX_X + 3,
            Var::Q => MAX_X + 4,
            Var::R => MAX_X + 5,
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            i if i < MAX_X => Var::X(i + 1),
            8 => Var::T,
            9 => Var::U,
            10 => Var::V,
            11 => Var::W,
            12 => Var::Q,
            13 => Var::R,
            _ => panic!("registry index {i} out of range"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X(i) => format!("X{i}"),
            Var::T => "t".into(),
            Var::U => "u".into(),
            Var::V => "v".into(),
            Var::W => "w".into(),
            Var::Q => "Q".into(),
            Var::R => "r".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Var, PolyError> {
        match s {
            "t" => Ok(Var::T),
            "u" => Ok(Var::U),
            "v" => Ok(Var::V),
            "w" => Ok(Var::W),
            "Q" => Ok(Var::Q),
            "r" => Ok(Var::R),
            _ => {
                let i = s
                    .strip_prefix('X')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|i| (1..=MAX_X).contains(i))
                    .ok_or_else(|| PolyError::UnknownVariable(s.to_string()))?;
                Ok(Var::X(i))
            }
        }
    }

    /// Only the X variables and Q may carry negative exponents.
    pub fn allows_negative(self) -> bool {
        matches!(self, Var::X(_) | Var::Q)
    }
}

/// Exponent vector over the registry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [i16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e as i16;
        m
    }

    /// `X1^e[0] * X2^e[1] * ...`
    pub fn x_pow(exps: &[i32]) -> Self {
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.0[i] = e as i16;
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()] as i32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree in the X variables.
    pub fn x_degree(&self) -> i32 {
        self.0[..MAX_X].iter().map(|&e| e as i32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] += o.0[i];
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..NVARS {
            r.0[i] -= o.0[i];
        }
        r
    }

    pub fn inv(&self) -> Monomial {
        let mut r = *self;
        for e in r.0.iter_mut() {
            *e = -*e;
        }
        r
    }

    /// Nonzero exponents in registry order.
    pub fn support(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Var::from_index(i), e as i32))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse Laurent polynomial: sorted `(monomial, coefficient)` pairs, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

fn from_map(map: FxHashMap<Monomial, BigInt>) -> LaurentPoly {
    let mut terms: Vec<(Monomial, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    LaurentPoly { terms }
}

fn merge_sorted(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)], negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let bc = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, bc(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + bc(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (*m, bc(c))));
    LaurentPoly { terms: out }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term<C: Into<BigInt>>(m: Monomial, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::term(Monomial::var_pow(v, e), 1)
    }

    pub fn x(i: usize) -> Self {
        Self::var(Var::X(i))
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in it {
            *map.entry(m).or_default() += c.into();
        }
        from_map(map)
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Returns the value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    pub fn min_x_degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.x_degree()).min()
    }

    pub fn max_x_degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.x_degree()).max()
    }

    /// Largest exponent of `v` over all terms.
    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, k)| (*m, k * &c)).collect() }
    }

    /// Multiplication by a monomial only shifts exponents, so order is preserved.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Product of an iterator of polynomials.
    pub fn product<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> Self {
        it.into_iter().fold(Self::one(), |acc, p| &acc * p)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        LaurentPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect() }
    }

    /// Drops every term of X-total-degree above `cap`.
    pub fn truncate(&self, cap: i32) -> Self {
        self.filter(|m| m.x_degree() <= cap)
    }

    /// Applies `f` to every exponent vector; `f` must be injective on the support
    /// for the result to stay meaningful, but collisions are merged correctly.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Renames X variables: the exponent of `X(vars[i])` moves to `X(vars[perm[i]])`.
    pub fn permute_x(&self, vars: &[usize], perm: &[usize]) -> Self {
        self.map_monomials(|m| permute_monomial(m, vars, perm))
    }

    /// Evaluates under a substitution homomorphism.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self, PolyError> {
        let bound: Vec<(usize, &Binding)> = bindings.map.iter().map(|(v, b)| (v.index(), b)).collect();
        if bound.is_empty() {
            return Ok(self.clone());
        }
        let mut cache: FxHashMap<(usize, i32), RatPoly> = FxHashMap::default();
        let mut acc: FxHashMap<Monomial, BigRational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = RatPoly::constant(BigRational::from_integer(c.clone()));
            for &(idx, b) in &bound {
                let e = m.0[idx] as i32;
                rest.0[idx] = 0;
                if e == 0 {
                    continue;
                }
                let key = (idx, e);
                if !cache.contains_key(&key) {
                    let p = b.power(e, Var::from_index(idx))?;
                    cache.insert(key, p);
                }
                factor = factor.mul(&cache[&key]);
            }
            for (fm, fc) in factor.terms {
                *acc.entry(fm.mul(&rest)).or_insert_with(BigRational::zero) += fc;
            }
        }
        let mut out = FxHashMap::default();
        for (m, c) in acc {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(PolyError::NonIntegralCoefficient(c.to_string()));
            }
            out.insert(m, c.to_integer());
        }
        Ok(from_map(out))
    }

    /// Convenience: substitutes X1..Xn by 1.
    pub fn at_x_one(&self) -> Self {
        self.map_monomials(|m| {
            let mut r = *m;
            for e in r.0[..MAX_X].iter_mut() {
                *e = 0;
            }
            r
        })
    }

    /// Checks the registry restriction on negative exponents.
    pub fn check_domain(&self) -> Result<(), PolyError> {
        for (m, _) in &self.terms {
            for (v, e) in m.support() {
                if e < 0 && !v.allows_negative() {
                    return Err(PolyError::NegativeExponent(v.name()));
                }
            }
        }
        Ok(())
    }

    /// The smallest monomial where `self` and `other` differ, with both coefficients.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<(Monomial, BigInt, BigInt)> {
        let diff = self - other;
        diff.terms.first().map(|(m, _)| (*m, self.coeff(m), other.coeff(m)))
    }

    /// JSON-friendly form.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                exps: m.support().map(|(v, e)| (v.name(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self, PolyError> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(|_| PolyError::BadCoefficient(t.coeff.clone()))?;
            let mut m = Monomial::one();
            for (name, e) in &t.exps {
                let v = Var::parse(name)?;
                if *e < 0 && !v.allows_negative() {
                    return Err(PolyError::NegativeExponent(v.name()));
                }
                m.0[v.index()] = *e as i16;
            }
            out.push((m, c));
        }
        Ok(Self::from_terms(out))
    }
}

fn permute_monomial(m: &Monomial, vars: &[usize], perm: &[usize]) -> Monomial {
    let mut r = *m;
    for &v in vars {
        r.0[v - 1] = 0;
    }
    for (i, &p) in perm.iter().enumerate() {
        r.0[vars[p] - 1] = m.0[vars[i] - 1];
    }
    r
}

/// One term of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub exps: BTreeMap<String, i32>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        LaurentPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.is_one() { c.abs().to_string() } else { format!("{}*{}", c.abs(), m) };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn mul_serial(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> FxHashMap<Monomial, BigInt> {
    let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    map.reserve(a.len().max(b.len()));
    for (ma, ca) in a {
        for (mb, cb) in b {
            *map.entry(ma.mul(mb)).or_default() += ca * cb;
        }
    }
    map
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.len() == 1 && self.terms[0].1.is_one() {
            return rhs.mul_monomial(&self.terms[0].0);
        }
        if rhs.len() == 1 && rhs.terms[0].1.is_one() {
            return self.mul_monomial(&rhs.terms[0].0);
        }
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        if big.len() * small.len() < PAR_MUL_THRESHOLD || big.len() < 64 {
            return from_map(mul_serial(&big.terms, &small.terms));
        }
        let chunk = (big.len() / rayon::current_num_threads().max(1)).max(32);
        big.terms
            .par_chunks(chunk)
            .map(|c| from_map(mul_serial(c, &small.terms)))
            .reduce(LaurentPoly::zero, |x, y| &x + &y)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        merge_sorted(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        merge_sorted(&self.terms, &rhs.terms, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

/// Sum of the given polynomials.
pub fn sum<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> LaurentPoly {
    let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for p in it {
        for (m, c) in &p.terms {
            *map.entry(*m).or_default() += c;
        }
    }
    from_map(map)
}

/// Polynomial with rational coefficients, used internally by substitution.
#[derive(Clone, Debug)]
struct RatPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl RatPoly {
    fn constant(c: BigRational) -> Self {
        RatPoly { terms: vec![(Monomial::one(), c)] }
    }

    fn from_poly(p: &LaurentPoly) -> Self {
        RatPoly { terms: p.terms.iter().map(|(m, c)| (*m, BigRational::from_integer(c.clone()))).collect() }
    }

    fn mul(&self, o: &RatPoly) -> RatPoly {
        let mut map: FxHashMap<Monomial, BigRational> = FxHashMap::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                *map.entry(a.mul(b)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        RatPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn pow(&self, e: u32) -> RatPoly {
        let mut r = RatPoly::constant(BigRational::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

/// A value bound to a variable during substitution.
#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Poly(LaurentPoly),
    Rational(BigRational),
}

impl Binding {
    fn power(&self, e: i32, v: Var) -> Result<RatPoly, PolyError> {
        let base = match self {
            Binding::Poly(p) => RatPoly::from_poly(p),
            Binding::Rational(q) => RatPoly::constant(q.clone()),
        };
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        // Negative powers need a unit: a single term with invertible coefficient.
        match base.terms.as_slice() {
            [(m, c)] if !c.is_zero() => {
                let inv_c = c.recip();
                if matches!(self, Binding::Poly(_)) && !inv_c.is_integer() {
                    return Err(PolyError::NonInvertibleSubstitution(v.name()));
                }
                Ok(RatPoly { terms: vec![(m.inv(), inv_c)] }.pow((-e) as u32))
            }
            _ => Err(PolyError::NonInvertibleSubstitution(v.name())),
        }
    }
}

/// Variable bindings for [`LaurentPoly::substitute`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    map: BTreeMap<Var, Binding>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn poly(mut self, v: Var, p: LaurentPoly) -> Self {
        self.map.insert(v, Binding::Poly(p));
        self
    }

    pub fn int(mut self, v: Var, c: i64) -> Self {
        self.map.insert(v, Binding::Rational(BigRational::from_integer(c.into())));
        self
    }

    pub fn rational(mut self, v: Var, q: BigRational) -> Self {
        self.map.insert(v, Binding::Rational(q));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Binding)> {
        self.map.iter()
    }
}

/// Sign of a permutation given in one-line notation.
pub fn perm_sign(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..k` with their signs.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    (0..k)
        .permutations(k)
        .map(|p| {
            let s = perm_sign(&p);
            (p, s)
        })
        .collect()
}

fn perm_sum(f: &LaurentPoly, vars: &[usize], signed: bool) -> LaurentPoly {
    let perms = signed_permutations(vars.len());
    let work = perms.len() * f.len();
    let part = |chunk: &[(Vec<usize>, i32)]| {
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (p, s) in chunk {
            let neg = signed && *s < 0;
            for (m, c) in &f.terms {
                let e = map.entry(permute_monomial(m, vars, p)).or_default();
                if neg {
                    *e -= c;
                } else {
                    *e += c;
                }
            }
        }
        from_map(map)
    };
    if work < PAR_MUL_THRESHOLD || perms.len() < 4 {
        return part(&perms);
    }
    let chunk = (perms.len() / rayon::current_num_threads().max(1)).max(1);
    perms.par_chunks(chunk).map(part).reduce(LaurentPoly::zero, |a, b| &a + &b)
}

/// Signed sum over all permutations of the given X variables (1-based indices).
pub fn asym(f: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    assert!(!vars.is_empty(), "asym needs at least one variable");
    perm_sum(f, vars, true)
}

/// Unsigned sum over all permutations of the given X variables.
pub fn sym(f: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    assert!(!vars.is_empty(), "sym needs at least one variable");
    perm_sum(f, vars, false)
}

/// `[1, 2, ..., n]`
pub fn x_vars(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Sorts the exponents of `vars` increasingly; returns `None` on a repeat, else the
/// sorted monomial and the sign of the sorting permutation.
fn dominant_monomial(m: &Monomial, vars: &[usize]) -> Option<(Monomial, bool)> {
    let k = vars.len();
    let mut e: [i16; MAX_X] = [0; MAX_X];
    for i in 0..k {
        e[i] = m.0[vars[i] - 1];
    }
    // insertion sort, counting swaps
    let mut neg = false;
    for i in 1..k {
        let mut j = i;
        while j > 0 && e[j - 1] > e[j] {
            e.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
        if j > 0 && e[j - 1] == e[j] {
            return None;
        }
    }
    let mut r = *m;
    for i in 0..k {
        r.0[vars[i] - 1] = e[i];
    }
    Some((r, neg))
}

/// Compressed form of an alternating polynomial: the coefficient of every monomial
/// whose exponents in `vars` are strictly increasing. For `G = asym(f)` this is
/// `asym_dominant(f)`; an alternating polynomial is determined by this part, and
/// `asym(asym_dominant(f)) == asym(f)`.
pub fn asym_dominant(f: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for (m, c) in &f.terms {
        if let Some((d, neg)) = dominant_monomial(m, vars) {
            let e = map.entry(d).or_default();
            if neg {
                *e -= c;
            } else {
                *e += c;
            }
        }
    }
    from_map(map)
}

/// `asym_dominant(a * b)` without materializing the product.
pub fn asym_dominant_product(a: &LaurentPoly, b: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let part = |chunk: &[(Monomial, BigInt)]| {
        let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (ma, ca) in chunk {
            for (mb, cb) in &small.terms {
                if let Some((d, neg)) = dominant_monomial(&ma.mul(mb), vars) {
                    let e = map.entry(d).or_default();
                    if neg {
                        *e -= ca * cb;
                    } else {
                        *e += ca * cb;
                    }
                }
            }
        }
        from_map(map)
    };
    if big.len() * small.len() < PAR_MUL_THRESHOLD || big.len() < 64 {
        return part(&big.terms);
    }
    let chunk = (big.len() / rayon::current_num_threads().max(1)).max(32);
    big.terms.par_chunks(chunk).map(part).reduce(LaurentPoly::zero, |x, y| &x + &y)
}

/// `∏_{i<j} (X_j − X_i)` over the given variables.
pub fn vandermonde(vars: &[usize]) -> LaurentPoly {
    let mut v = LaurentPoly::one();
    for j in 0..vars.len() {
        for i in 0..j {
            v = &v * &(LaurentPoly::x(vars[j]) - LaurentPoly::x(vars[i]));
        }
    }
    v
}

fn check_square(m: &[Vec<LaurentPoly>]) -> Result<usize, PolyError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n > DET_MAX {
        return Err(PolyError::MatrixTooLarge(n));
    }
    Ok(n)
}

/// Determinant by cofactor expansion with memoization over column subsets.
pub fn det(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, PolyError> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    // minors[mask]: determinant of rows 0..popcount(mask) restricted to columns in mask
    let mut minors: Vec<LaurentPoly> = vec![LaurentPoly::zero(); 1 << n];
    minors[0] = LaurentPoly::one();
    let mut masks: Vec<usize> = (1..(1usize << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = LaurentPoly::zero();
        for c in 0..n {
            if mask & (1 << c) == 0 || m[row][c].is_zero() {
                continue;
            }
            let sub = mask & !(1 << c);
            if minors[sub].is_zero() {
                continue;
            }
            // columns of mask to the right of c
            let above = (mask >> (c + 1)).count_ones();
            let prod = &m[row][c] * &minors[sub];
            if above % 2 == 0 {
                acc += &prod;
            } else {
                acc -= &prod;
            }
        }
        minors[mask] = acc;
    }
    Ok(minors.pop().unwrap())
}

/// Determinant as a signed sum over permutations (independent path for testing).
pub fn det_permutation_sum(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, PolyError> {
    let n = check_square(m)?;
    let mut acc = LaurentPoly::zero();
    for (p, s) in signed_permutations(n) {
        let mut prod = LaurentPoly::one();
        for (i, &pi) in p.iter().enumerate() {
            prod = &prod * &m[i][pi];
            if prod.is_zero() {
                break;
            }
        }
        if s > 0 {
            acc += &prod;
        } else {
            acc -= &prod;
        }
    }
    Ok(acc)
}

/// Reciprocal of a unit term (`±1` times a monomial).
pub fn unit_inverse(p: &LaurentPoly) -> Option<LaurentPoly> {
    match p.terms() {
        [(m, c)] if c.abs().is_one() => Some(LaurentPoly::term(m.inv(), c.clone())),
        _ => None,
    }
}

/// Complete homogeneous symmetric function `h_k(args)`, extended to negative `k`
/// by `h_k = 0` for `-n < k < 0` and
/// `h_k(a) = (-1)^{n+1} (a_1⋯a_n)^{-1} h_{-k-n}(a^{-1})` for `k <= -n`.
pub fn complete_homog(k: i64, args: &[LaurentPoly]) -> Result<LaurentPoly, PolyError> {
    assert!(!args.is_empty(), "complete_homog needs arguments");
    let n = args.len() as i64;
    if k >= 0 {
        return Ok(complete_homog_nonneg(k as usize, args));
    }
    if k > -n {
        return Ok(LaurentPoly::zero());
    }
    let mut inv = Vec::with_capacity(args.len());
    for (i, a) in args.iter().enumerate() {
        inv.push(unit_inverse(a).ok_or(PolyError::NonInvertibleArgument(i))?);
    }
    let h = complete_homog_nonneg((-k - n) as usize, &inv);
    let prod = LaurentPoly::product(&inv);
    let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
    Ok((&prod * &h).scale(sign))
}

fn complete_homog_nonneg(k: usize, args: &[LaurentPoly]) -> LaurentPoly {
    // row[d] = h_d(args[..i]); h_d(a_1..a_i) = h_d(a_1..a_{i-1}) + a_i h_{d-1}(a_1..a_i)
    let mut row: Vec<LaurentPoly> = (0..=k).map(|d| if d == 0 { LaurentPoly::one() } else { LaurentPoly::zero() }).collect();
    let mut first = true;
    for a in args {
        if first {
            let mut p = LaurentPoly::one();
            for slot in row.iter_mut() {
                *slot = p.clone();
                p = &p * a;
            }
            first = false;
            continue;
        }
        for d in 1..=k {
            let next = &row[d] + &(a * &row[d - 1]);
            row[d] = next;
        }
    }
    row.pop().unwrap()
}

/// Exact quotient `num / den`; fails with `InexactDivision` when no Laurent
/// polynomial quotient exists.
pub fn exact_div(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    assert!(!den.is_zero(), "division by zero polynomial");
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    if den.len() == 1 {
        let (dm, dc) = &den.terms[0];
        let mut out = Vec::with_capacity(num.len());
        for (m, c) in &num.terms {
            let (q, r) = c.div_rem(dc);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            out.push((m.div(dm), q));
        }
        return Ok(LaurentPoly { terms: out });
    }
    // Per-variable exponent box that every quotient term must lie in.
    let mut lo = [0i32; NVARS];
    let mut hi = [0i32; NVARS];
    for v in 0..NVARS {
        let var = Var::from_index(v);
        lo[v] = num.min_exp(var).unwrap() - den.min_exp(var).unwrap();
        hi[v] = num.max_exp(var).unwrap() - den.max_exp(var).unwrap();
        if lo[v] > hi[v] {
            return Err(PolyError::InexactDivision);
        }
    }
    let (dlm, dlc) = den.leading().unwrap().clone();
    let mut rem: BTreeMap<Monomial, BigInt> = num.terms.iter().cloned().collect();
    let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        let qm = m.div(&dlm);
        for v in 0..NVARS {
            let e = qm.0[v] as i32;
            if e < lo[v] || e > hi[v] {
                return Err(PolyError::InexactDivision);
            }
        }
        let (qc, r) = c.div_rem(&dlc);
        if !r.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        for (dm, dc) in den.terms.iter().rev().skip(1) {
            let key = qm.mul(dm);
            let delta = &qc * dc;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() -= delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(-delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    quot.reverse();
    Ok(LaurentPoly { terms: quot })
}

/// Product of `a` and `b` keeping only terms of X-total-degree at most `cap`.
/// Exact modulo the cap when both factors have only nonnegative X-degrees.
pub fn mul_truncated(a: &LaurentPoly, b: &LaurentPoly, cap: i32) -> LaurentPoly {
    let mut map: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    let mut bs: Vec<&(Monomial, BigInt)> = b.terms.iter().collect();
    bs.sort_by_key(|(m, _)| m.x_degree());
    for (ma, ca) in &a.terms {
        let da = ma.x_degree();
        for (mb, cb) in &bs {
            if da + mb.x_degree() > cap {
                break;
            }
            *map.entry(ma.mul(mb)).or_default() += ca * cb;
        }
    }
    from_map(map)
}

/// Series inverse of a denominator `c0 + rest` where `c0 = ±Q^a` has X-degree 0
/// and every term of `rest` has positive X-degree. Covers `1 − μ`, `Q + X_i`,
/// `Q − X_iX_j` and similar shapes.
pub fn series_inverse(den: &LaurentPoly, cap: i32) -> Result<LaurentPoly, PolyError> {
    let bad = || PolyError::NonExpandableDenominator(den.to_string());
    let (head, rest): (Vec<_>, Vec<_>) = den.terms.iter().cloned().partition(|(m, _)| m.x_degree() == 0);
    if head.len() != 1 || rest.iter().any(|(m, _)| m.x_degree() <= 0) {
        return Err(bad());
    }
    let (hm, hc) = &head[0];
    if !hc.abs().is_one() || hm.support().any(|(v, _)| v != Var::Q) {
        return Err(bad());
    }
    let c0_inv = LaurentPoly::term(hm.inv(), hc.clone());
    // 1/(c0 + rest) = c0^{-1} Σ_k (−rest/c0)^k
    let ratio = -(&c0_inv * &LaurentPoly { terms: rest });
    let mut acc = LaurentPoly::one();
    let mut power = LaurentPoly::one();
    for _ in 0..cap.max(0) {
        power = mul_truncated(&power, &ratio, cap);
        if power.is_zero() {
            break;
        }
        acc += &power;
    }
    Ok(&c0_inv * &acc)
}

/// Expands `∏ nums / ∏ dens` as a series in the X variables, exact modulo
/// X-total-degree above `cap`. Numerators may contain negative X-degrees.
pub fn series_expand(nums: &[LaurentPoly], dens: &[LaurentPoly], cap: i32) -> Result<LaurentPoly, PolyError> {
    let num_min: i32 = nums.iter().map(|p| p.min_x_degree().unwrap_or(0)).sum();
    if nums.iter().any(|p| p.is_zero()) {
        return Ok(LaurentPoly::zero());
    }
    // Denominator expansions start at degree 0, so numerators can lower the degree
    // by at most -num_min; expand the series factors that much further.
    let slack = (-num_min).max(0);
    let mut acc = LaurentPoly::one();
    for d in dens {
        let inv = series_inverse(d, cap + slack)?;
        acc = mul_truncated(&acc, &inv, cap + slack);
    }
    let mut nums_sorted: Vec<&LaurentPoly> = nums.iter().collect();
    nums_sorted.sort_by_key(|p| p.min_x_degree().unwrap_or(0));
    let mut remaining_min = num_min;
    for p in nums_sorted {
        remaining_min -= p.min_x_degree().unwrap_or(0);
        let local_cap = cap - remaining_min.min(0);
        acc = (&acc * p).truncate(local_cap.max(cap));
    }
    Ok(acc.truncate(cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::x(i)
    }
    fn c(k: i64) -> LaurentPoly {
        LaurentPoly::constant(k)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!((x(1) + c(1)) * (x(1) - c(1)), x(1) * x(1) - c(1));
    }

    #[test]
    fn laurent_cancellation() {
        assert_eq!(x(1) * LaurentPoly::var_pow(Var::X(1), -1), c(1));
    }

    #[test]
    fn zero_absorbs() {
        assert!(((c(1) + x(1) + x(2)) * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn substitute_examples() {
        let b = Bindings::new().int(Var::X(1), 1).int(Var::X(2), 1);
        assert_eq!((x(1) + x(2)).substitute(&b).unwrap(), c(2));

        let q = LaurentPoly::var(Var::Q);
        let r = LaurentPoly::var(Var::R);
        let w = LaurentPoly::var(Var::W);
        let p = &q + &((&q + &r) * x(1));
        let b = Bindings::new().int(Var::Q, 1).poly(Var::R, &w - &c(1));
        assert_eq!(p.substitute(&b).unwrap(), c(1) + &w * &x(1));

        let p = LaurentPoly::var_pow(Var::X(1), -1) + c(1) + w.clone() + x(1);
        let b = Bindings::new().int(Var::X(1), 1).int(Var::W, 0);
        assert_eq!(p.substitute(&b).unwrap(), c(3));
    }

    #[test]
    fn substitute_rejects_division() {
        let p = LaurentPoly::var_pow(Var::X(1), -1);
        let b = Bindings::new().int(Var::X(1), 0);
        assert!(matches!(p.substitute(&b), Err(PolyError::NonInvertibleSubstitution(_))));
        let b = Bindings::new().poly(Var::X(1), c(1) + x(2));
        assert!(matches!(p.substitute(&b), Err(PolyError::NonInvertibleSubstitution(_))));
    }

    #[test]
    fn substitute_rational_constants() {
        let p = x(1).scale(2);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.substitute(&Bindings::new().rational(Var::X(1), half.clone())).unwrap(), c(1));
        assert!(x(1).substitute(&Bindings::new().rational(Var::X(1), half)).is_err());
    }

    #[test]
    fn exact_div_examples() {
        let v = x(2) - x(1);
        let p = c(1) + x(1) * x(2);
        assert_eq!(exact_div(&(&v * &p), &v).unwrap(), p);
        assert_eq!(exact_div(&asym(&x(2), &[1, 2]), &v).unwrap(), c(1));
        assert_eq!(exact_div(&(c(1) - x(1) * x(1)), &(c(1) - x(1))).unwrap(), c(1) + x(1));
    }

    #[test]
    fn exact_div_detects_remainder() {
        assert_eq!(exact_div(&(c(1) + x(1)), &(c(1) - x(1))), Err(PolyError::InexactDivision));
        assert_eq!(exact_div(&x(1), &(x(1) - x(2))), Err(PolyError::InexactDivision));
        assert_eq!(exact_div(&x(1).scale(3), &x(1).scale(2)), Err(PolyError::InexactDivision));
    }

    #[test]
    fn asym_examples() {
        let f = x(2);
        assert_eq!(asym(&f, &[1, 2]), x(2) - x(1));
        let f = x(2) * x(3) * x(3);
        assert_eq!(asym(&f, &[1, 2, 3]), vandermonde(&[1, 2, 3]));
        let s = x(1) + x(2) + x(1) * x(2);
        assert!(asym(&s, &[1, 2]).is_zero());
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym(&x(1), &[1, 2]), x(1) + x(2));
        assert_eq!(sym(&c(1), &[1, 2]), c(2));
        let f = x(1) * LaurentPoly::var_pow(Var::X(2), -1);
        let g = x(2) * LaurentPoly::var_pow(Var::X(1), -1);
        assert_eq!(sym(&f, &[1, 2]), &f + &g);
    }

    #[test]
    fn dominant_form_round_trips() {
        let f = x(1) * x(1) * x(3) + x(2).scale(5) - x(3) * x(3) * x(2) + c(7);
        let vars = [1, 2, 3];
        assert_eq!(asym(&asym_dominant(&f, &vars), &vars), asym(&f, &vars));
        let s = c(1) + x(1) * x(2) * x(3) + x(1) + x(2) + x(3);
        assert_eq!(
            asym_dominant_product(&f, &s, &vars),
            asym_dominant(&(&asym(&f, &vars) * &s), &vars)
        );
    }

    #[test]
    fn det_examples() {
        let p = c(3) + x(2);
        assert_eq!(det(&[vec![p.clone()]]).unwrap(), p);
        let m = vec![vec![c(1), x(1)], vec![x(1), c(1)]];
        assert_eq!(det(&m).unwrap(), c(1) - x(1) * x(1));
        assert_eq!(det(&[vec![c(1), c(2)]]), Err(PolyError::NotSquare));
    }

    #[test]
    fn det_paths_agree() {
        let m: Vec<Vec<LaurentPoly>> = (0..4)
            .map(|i| (0..4).map(|j| (x(i + 1) + c(j as i64)).pow(j as u32 + (i as u32 % 2))).collect())
            .collect();
        assert_eq!(det(&m).unwrap(), det_permutation_sum(&m).unwrap());
    }

    #[test]
    fn complete_homog_examples() {
        let args = [x(1), x(2)];
        assert_eq!(complete_homog(2, &args).unwrap(), x(1) * x(1) + x(1) * x(2) + x(2) * x(2));
        assert!(complete_homog(-1, &args).unwrap().is_zero());
        // n=1, k=-3: (-1)^2 X^{-1} h_2(X^{-1}) = X^{-3}
        assert_eq!(complete_homog(-3, &[x(1)]).unwrap(), LaurentPoly::var_pow(Var::X(1), -3));
        assert!(matches!(complete_homog(-3, &[c(1) + x(1)]), Err(PolyError::NonInvertibleArgument(0))));
    }

    #[test]
    fn series_examples() {
        let s = series_expand(&[], &[c(1) - x(1)], 3).unwrap();
        assert_eq!(s, c(1) + x(1) + x(1).pow(2) + x(1).pow(3));
        let s = series_expand(&[], &[c(1) - x(1) * x(2)], 3).unwrap();
        assert_eq!(s, c(1) + x(1) * x(2));
        let q = LaurentPoly::var(Var::Q);
        let s = series_expand(&[], &[&q + &x(1)], 1).unwrap();
        let expect = LaurentPoly::var_pow(Var::Q, -1) - x(1) * LaurentPoly::var_pow(Var::Q, -2);
        assert_eq!(s, expect);
        assert_eq!(mul_truncated(&s, &(&q + &x(1)), 1), c(1));
        assert!(series_expand(&[], &[c(2) - x(1)], 3).is_err());
        assert!(series_expand(&[], &[x(1) - x(2)], 3).is_err());
    }

    #[test]
    fn series_with_negative_numerator_degree() {
        // (X^{-1} + 1)/(1 - X) to degree 2 = X^{-1} + 2 + 2X + 2X^2
        let num = LaurentPoly::var_pow(Var::X(1), -1) + c(1);
        let s = series_expand(&[num], &[c(1) - x(1)], 2).unwrap();
        let expect = LaurentPoly::var_pow(Var::X(1), -1) + c(2) + x(1).scale(2) + x(1).pow(2).scale(2);
        assert_eq!(s, expect);
    }

    #[test]
    fn canonical_text() {
        let q = LaurentPoly::var(Var::Q);
        let p = (LaurentPoly::var_pow(Var::X(1), -1) * q.pow(2)).scale(-1) + (LaurentPoly::var(Var::T) * x(2)).scale(3);
        assert_eq!(p.to_string(), "-1*X1^-1*Q^2 + 3*X2*t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((c(1) - x(1)).to_string(), "1 - 1*X1");
    }

    #[test]
    fn json_round_trip_and_domain() {
        let p = (LaurentPoly::var_pow(Var::Q, -2) * x(3)).scale(-4) + c(9);
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"[{"coeff":"1","exps":{"t":-1}}]"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
    }
}
