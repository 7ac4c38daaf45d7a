//! Multivariate polynomials with exact rational coefficients.

mod monomial_map;
mod newton;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{primitive, IntVector, Rational};

pub use monomial_map::{
    factor_vertex, is_good_cone, monomial_substitute, monomial_substitute_laurent,
    restrict_after_substitution, LaurentPolynomial,
};
pub use newton::{dual_fan, newton_polyhedron, NewtonPolyhedron};
pub use parse::{parse_polynomial, parse_polynomial_at, Printer};

/// Exponent vector of a monomial. Ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other` divides `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVector)
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn min(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn to_int_vector(&self) -> IntVector {
        IntVector::new(self.0.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn from_int_vector(v: &IntVector) -> Option<ExponentVector> {
        v.entries()
            .iter()
            .map(|e| u32::try_from(e).ok())
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVector)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Nonnegative integer weight, stored as its primitive representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(IntVector);

impl WeightVector {
    pub fn new(w: IntVector) -> Result<WeightVector> {
        if !w.is_nonnegative() {
            return Err(Error::domain(format!("weight {w} has a negative entry")));
        }
        if w.is_zero() {
            return Ok(WeightVector(w));
        }
        Ok(WeightVector(primitive(&w)?))
    }

    pub fn from_i64(w: &[i64]) -> Result<WeightVector> {
        WeightVector::new(IntVector::from_i64(w))
    }

    pub fn zero(n: usize) -> WeightVector {
        WeightVector(IntVector::zero(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn vector(&self) -> &IntVector {
        &self.0
    }

    pub fn weight(&self, e: &ExponentVector) -> BigInt {
        self.0.dot_u32(e.entries())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.entries().iter().all(|e| e.is_positive())
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Polynomial in `n` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Polynomial {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Polynomial {
        Polynomial::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Polynomial {
        Polynomial::monomial(ExponentVector::zero(n), c)
    }

    pub fn monomial(e: ExponentVector, c: Rational) -> Polynomial {
        let n = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { n, terms }
    }

    pub fn variable(n: usize, i: usize) -> Polynomial {
        Polynomial::monomial(ExponentVector::unit(n, i), Rational::one())
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), n);
            p.add_term(e, c);
        }
        p
    }

    /// Builds from `(exponents, integer coefficient)` pairs.
    pub fn from_i64_terms(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            n,
            terms.iter().map(|(e, c)| {
                (
                    ExponentVector::new(e.to_vec()),
                    Rational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing (degree, lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zero(self.n))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &ExponentVector) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.add(e), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the coefficient of the largest term is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let k = e.entries()[i];
            if k == 0 {
                continue;
            }
            let mut d = e.entries().to_vec();
            d[i] -= 1;
            out.add_term(
                ExponentVector(d),
                c * Rational::from_integer(BigInt::from(k)),
            );
        }
        out
    }

    /// Sets the variables in `vars` to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Polynomial {
        self.filter_terms(|e| vars.iter().all(|&i| e.entries()[i] == 0))
    }

    pub fn filter_terms(&self, keep: impl Fn(&ExponentVector) -> bool) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into `m` variables, sending variable `i` to `map[i]`.
    pub fn remap_variables(&self, m: usize, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            m,
            self.terms.iter().map(|(e, c)| {
                let mut out = vec![0; m];
                for (i, &k) in e.entries().iter().enumerate() {
                    out[map[i]] += k;
                }
                (ExponentVector(out), c.clone())
            }),
        )
    }

    /// Coordinatewise minimum of the support.
    pub fn min_exponent(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| ExponentVector::min(&acc, e)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Printer::default_names(self.n).print(self))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// The support `ε(f)`.
pub fn support(f: &Polynomial) -> Vec<ExponentVector> {
    f.terms.keys().cloned().collect()
}

/// `ν_ω(f) = min { ω·μ : μ ∈ ε(f) }`.
pub fn omega_order(f: &Polynomial, w: &WeightVector) -> Result<Rational> {
    check_weight(f, w)?;
    f.terms
        .keys()
        .map(|e| w.weight(e))
        .min()
        .map(Rational::from_integer)
        .ok_or_else(|| Error::domain("order of the zero polynomial"))
}

/// Sum of the terms of `f` of minimal ω-weight.
pub fn initial_form(f: &Polynomial, w: &WeightVector) -> Result<Polynomial> {
    let nu = omega_order(f, w)?.to_integer();
    Ok(f.filter_terms(|e| w.weight(e) == nu))
}

/// Keeps the terms whose exponent satisfies `in_face`.
pub fn restrict(f: &Polynomial, in_face: impl Fn(&ExponentVector) -> bool) -> Polynomial {
    f.filter_terms(in_face)
}

fn check_weight(f: &Polynomial, w: &WeightVector) -> Result<()> {
    if w.len() != f.nvars() {
        return Err(Error::shape(format!(
            "weight of length {} for a polynomial in {} variables",
            w.len(),
            f.nvars()
        )));
    }
    Ok(())
}
