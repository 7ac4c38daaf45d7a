//! Term orders, reduced Gröbner bases, initial ideals and the Gröbner fan.
//!
//! Weighted orders select the ω-minimal term, lex-minimal among ties. They are
//! not well-orders on `𝕂[x]`, so bases for them are computed for the
//! homogenized ideal `I^h ⊂ 𝕂[t, x]` under the order that compares total degree
//! first, then the weight of the `x` part (smaller is larger), then lex on `x`
//! (smaller is larger). Dehomogenizing its initial ideal gives `𝕴n_ω(I)`.

mod dimension;
pub(crate) mod engine;
mod fan;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::poly::{initial_form, ExponentVector, Polynomial, Printer, WeightVector};
use crate::polyhedra::Cone;
use engine::{groebner_basis, is_unit_basis, reduce, EPoly, MonoOrder};

pub(crate) use dimension::torus_empty;
pub use dimension::{
    contains_monomial, jacobian_minors, jacobian_minors_in, krull_dimension,
    singular_locus_in_torus, Purity, SmoothnessReport,
};
pub use fan::{
    adapted_generators, groebner_fan, CellData, ConeData, GroebnerCone, GroebnerFan,
    GroebnerFanData,
};

/// Term order on `𝕂[x1,…,xn]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    /// Lexicographic with `x1 > … > xn`; the marked term is the largest.
    Lex,
    /// `x^α ≺ x^β` iff `ω·α < ω·β`, or equal weights and `α <_lex β`; the marked term is the smallest.
    Weighted(WeightVector),
}

impl TermOrder {
    /// Compares two exponents under the order.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            TermOrder::Lex => a.entries().cmp(b.entries()),
            TermOrder::Weighted(w) => w
                .weight(a)
                .cmp(&w.weight(b))
                .then_with(|| a.entries().cmp(b.entries())),
        }
    }

    /// The term of `f` a Gröbner basis element is marked at.
    pub fn marked_exponent(&self, f: &Polynomial) -> Option<ExponentVector> {
        let keys = f.terms().map(|(e, _)| e);
        match self {
            TermOrder::Lex => keys.max_by(|a, b| self.compare(a, b)).cloned(),
            TermOrder::Weighted(_) => keys.min_by(|a, b| self.compare(a, b)).cloned(),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Weighted(w) => write!(f, "weight {w}"),
        }
    }
}

/// The order `≺_ω`.
pub fn weighted_order(w: &WeightVector) -> TermOrder {
    TermOrder::Weighted(w.clone())
}

pub(crate) fn weights_i128(w: &IntVector) -> Result<Vec<i128>> {
    w.entries()
        .iter()
        .map(|e| {
            e.to_i128()
                .ok_or_else(|| Error::Resource("weight exceeds 128 bits".into()))
        })
        .collect()
}

/// Polynomial together with its marked exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPolynomial {
    pub polynomial: Polynomial,
    pub marked: ExponentVector,
}

/// Reduced marked Gröbner basis.
#[derive(Clone, Debug)]
pub struct MarkedGroebnerBasis {
    n: usize,
    order: TermOrder,
    elements: Vec<MarkedPolynomial>,
    engine: Vec<EPoly>,
    engine_order: MonoOrder,
}

impl PartialEq for MarkedGroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.order == other.order && self.elements == other.elements
    }
}

impl MarkedGroebnerBasis {
    fn from_engine(
        n: usize,
        order: TermOrder,
        engine: Vec<EPoly>,
        engine_order: MonoOrder,
    ) -> Self {
        let homogeneous = matches!(engine_order, MonoOrder::HomLocal(_));
        let elements = engine
            .iter()
            .map(|g| {
                let lm = g.lm();
                let marked = if homogeneous {
                    lm[1..].to_vec()
                } else {
                    lm.clone()
                };
                let polynomial = if homogeneous {
                    g.dehomogenize(&MonoOrder::DegRevLex).to_polynomial(n)
                } else {
                    g.to_polynomial(n)
                };
                MarkedPolynomial {
                    polynomial,
                    marked: ExponentVector::new(marked),
                }
            })
            .collect();
        MarkedGroebnerBasis {
            n,
            order,
            elements,
            engine,
            engine_order,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MarkedPolynomial] {
        &self.elements
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|m| m.polynomial.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        is_unit_basis(&self.engine)
    }

    /// `In_ω g` for every element.
    pub fn initial_forms(&self, w: &WeightVector) -> Result<Vec<Polynomial>> {
        self.elements
            .iter()
            .map(|m| initial_form(&m.polynomial, w))
            .collect()
    }

    pub fn to_data(&self, printer: &Printer) -> MarkedBasisData {
        MarkedBasisData {
            order: match &self.order {
                TermOrder::Lex => OrderData::Lex,
                TermOrder::Weighted(w) => OrderData::Weight(w.clone()),
            },
            elements: self
                .elements
                .iter()
                .map(|m| MarkedElementData {
                    polynomial: printer.print(&m.polynomial),
                    marked: m.marked.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderData {
    Lex,
    Weight(WeightVector),
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkedElementData {
    pub polynomial: String,
    pub marked: ExponentVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkedBasisData {
    pub order: OrderData,
    pub elements: Vec<MarkedElementData>,
}

/// Limits on the size of Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximal cones visited by the fan traversal.
    pub max_cones: usize,
    /// S-polynomial reductions per Buchberger run.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cones: 10_000,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Default)]
struct IdealCache {
    degrevlex: Option<Arc<Vec<EPoly>>>,
    homogenized: Option<Arc<Vec<EPoly>>>,
    bases: HashMap<TermOrder, Arc<MarkedGroebnerBasis>>,
    dimension: Option<usize>,
    fan: Option<Arc<GroebnerFan>>,
}

/// Ideal of `𝕂[x1,…,xn]` given by generators, with memoized Gröbner data.
#[derive(Clone)]
pub struct Ideal {
    n: usize,
    generators: Vec<Polynomial>,
    budget: Budget,
    cache: Arc<RwLock<IdealCache>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    /// Zero generators are dropped; at least one nonzero generator is required.
    pub fn new(n: usize, generators: Vec<Polynomial>) -> Result<Ideal> {
        if generators.iter().any(|g| g.nvars() != n) {
            return Err(Error::shape("generator in a different number of variables"));
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::domain("ideal needs a nonzero generator"));
        }
        Ok(Ideal {
            n,
            generators,
            budget: Budget::default(),
            cache: Arc::default(),
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Ideal {
        self.budget = budget;
        self.cache = Arc::default();
        self
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn read_cache<T>(&self, f: impl FnOnce(&IdealCache) -> Option<T>) -> Option<T> {
        f(&self.cache.read().expect("ideal cache poisoned"))
    }

    fn write_cache(&self, f: impl FnOnce(&mut IdealCache)) {
        f(&mut self.cache.write().expect("ideal cache poisoned"))
    }

    pub(crate) fn degrevlex_basis(&self) -> Result<Arc<Vec<EPoly>>> {
        if let Some(b) = self.read_cache(|c| c.degrevlex.clone()) {
            return Ok(b);
        }
        let order = MonoOrder::DegRevLex;
        let gens: Vec<EPoly> = self
            .generators
            .iter()
            .map(|g| EPoly::from_polynomial(g, &order))
            .collect();
        let b = Arc::new(groebner_basis(&gens, &order, self.budget.max_steps)?);
        self.write_cache(|c| c.degrevlex = Some(b.clone()));
        Ok(b)
    }

    /// Generators of `I^h`, the homogenizing variable first.
    pub(crate) fn homogenized(&self) -> Result<Arc<Vec<EPoly>>> {
        if let Some(b) = self.read_cache(|c| c.homogenized.clone()) {
            return Ok(b);
        }
        let order = MonoOrder::DegRevLex;
        let h = Arc::new(
            self.degrevlex_basis()?
                .iter()
                .map(|g| g.homogenize(&order))
                .collect::<Vec<_>>(),
        );
        self.write_cache(|c| c.homogenized = Some(h.clone()));
        Ok(h)
    }

    /// Reduced basis of `I^h` for the homogeneous order attached to an arbitrary integer weight.
    pub(crate) fn homogeneous_basis(&self, w: &[i128]) -> Result<(Vec<EPoly>, MonoOrder)> {
        let order = MonoOrder::HomLocal(w.to_vec());
        let gens: Vec<EPoly> = self
            .homogenized()?
            .iter()
            .map(|g| g.reorder(&order))
            .collect();
        Ok((groebner_basis(&gens, &order, self.budget.max_steps)?, order))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(is_unit_basis(&self.degrevlex_basis()?))
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let order = MonoOrder::DegRevLex;
        let basis = self.degrevlex_basis()?;
        Ok(reduce(&EPoly::from_polynomial(f, &order), &basis, &order, true).is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.degrevlex_basis()? == other.degrevlex_basis()?)
    }

    /// Reduced degree-reverse-lexicographic basis, a canonical form of the ideal.
    pub fn canonical_generators(&self) -> Result<Vec<Polynomial>> {
        Ok(self
            .degrevlex_basis()?
            .iter()
            .map(|g| g.to_polynomial(self.n))
            .collect())
    }

    pub fn is_monomial_ideal(&self) -> Result<bool> {
        Ok(self.degrevlex_basis()?.iter().all(|g| g.terms().len() == 1))
    }
}

/// Division of `f` by the basis. For weighted orders the division is carried
/// out on `f^h` against the homogeneous basis and the remainder dehomogenized;
/// in both cases the remainder vanishes exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, g: &MarkedGroebnerBasis) -> Result<Polynomial> {
    if f.nvars() != g.n {
        return Err(Error::shape("polynomial and basis in different rings"));
    }
    let order = &g.engine_order;
    match order {
        MonoOrder::HomLocal(_) => {
            let fh = EPoly::from_polynomial(f, &MonoOrder::DegRevLex).homogenize(order);
            let r = reduce(&fh, &g.engine, order, true);
            Ok(r.dehomogenize(&MonoOrder::DegRevLex).to_polynomial(g.n))
        }
        _ => Ok(
            reduce(&EPoly::from_polynomial(f, order), &g.engine, order, true).to_polynomial(g.n),
        ),
    }
}

/// Reduced marked Gröbner basis of `I` for `order`.
pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<Arc<MarkedGroebnerBasis>> {
    if let Some(b) = ideal.read_cache(|c| c.bases.get(order).cloned()) {
        return Ok(b);
    }
    let n = ideal.n;
    let basis = match order {
        TermOrder::Lex => {
            let o = MonoOrder::Lex;
            let gens: Vec<EPoly> = ideal
                .generators
                .iter()
                .map(|g| EPoly::from_polynomial(g, &o))
                .collect();
            let b = groebner_basis(&gens, &o, ideal.budget.max_steps)?;
            MarkedGroebnerBasis::from_engine(n, order.clone(), b, o)
        }
        TermOrder::Weighted(w) => {
            if w.len() != n {
                return Err(Error::shape(
                    "weight length differs from the number of variables",
                ));
            }
            let (b, o) = ideal.homogeneous_basis(&weights_i128(w.vector())?)?;
            MarkedGroebnerBasis::from_engine(n, order.clone(), b, o)
        }
    };
    let basis = Arc::new(basis);
    ideal.write_cache(|c| {
        c.bases.insert(order.clone(), basis.clone());
    });
    Ok(basis)
}

/// `𝕴n_ω(I)`, generated by the initial forms of the basis for `≺_ω`.
pub fn initial_ideal(ideal: &Ideal, w: &WeightVector) -> Result<Ideal> {
    let g = buchberger(ideal, &weighted_order(w))?;
    Ok(Ideal::new(ideal.n, g.initial_forms(w)?)?.with_budget(ideal.budget))
}

/// `{ω ≥ 0 : ω·(β − α) ≥ 0}` over marked exponents `α` and trailing exponents `β`.
pub fn groebner_cone(g: &MarkedGroebnerBasis) -> Result<Cone> {
    let n = g.n;
    let mut ineqs: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    for m in &g.elements {
        let a = m.marked.to_int_vector();
        for (b, _) in m.polynomial.terms() {
            if *b != m.marked {
                ineqs.push(b.to_int_vector().sub(&a));
            }
        }
    }
    ineqs.sort();
    ineqs.dedup();
    Cone::from_inequalities(n, &ineqs, &[])
}
