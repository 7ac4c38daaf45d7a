//! Monomial coordinate changes `φ_M` and the monomial splitting of transformed polynomials.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::{initial_form, ExponentVector, Polynomial, WeightVector};
use crate::error::{Error, Result};
use crate::exact::{is_unimodular, IntMatrix, IntVector, Rational};
use crate::polyhedra::Cone;

/// Polynomial with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    n: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPolynomial {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps = e
                    .iter()
                    .map(|&k| u32::try_from(k))
                    .collect::<std::result::Result<Vec<u32>, _>>()
                    .map_err(|_| {
                        Error::Chart(format!("negative exponent {e:?} after substitution"))
                    })?;
                Ok((ExponentVector::new(exps), c.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(self.n, terms))
    }

    /// Multiplies by the monomial `x^(-m)`, `m` the coordinatewise minimum exponent,
    /// returning `(m, polynomial)`.
    pub fn clear_monomial(&self) -> (Vec<i64>, Polynomial) {
        let mut m = vec![0i64; self.n];
        if let Some(first) = self.terms.keys().next() {
            m = first.clone();
            for e in self.terms.keys() {
                for (a, b) in m.iter_mut().zip(e) {
                    *a = (*a).min(*b);
                }
            }
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let shifted = e.iter().zip(&m).map(|(a, b)| (a - b) as u32).collect();
            (ExponentVector::new(shifted), c.clone())
        });
        (m.clone(), Polynomial::from_terms(self.n, terms))
    }
}

fn matrix_to_i64(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.get(i, j)
                        .to_i64()
                        .ok_or_else(|| Error::Resource("matrix entry exceeds 64 bits".into()))
                })
                .collect()
        })
        .collect()
}

/// `f ∘ φ_M`: every exponent `μ` becomes `M·μ`.
pub fn monomial_substitute_laurent(f: &Polynomial, m: &IntMatrix) -> Result<LaurentPolynomial> {
    if m.cols() != f.nvars() {
        return Err(Error::shape(format!(
            "{}x{} matrix applied to a polynomial in {} variables",
            m.rows(),
            m.cols(),
            f.nvars()
        )));
    }
    let rows = matrix_to_i64(m)?;
    let mut terms: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (e, c) in f.terms() {
        let image: Vec<i64> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(e.entries())
                    .try_fold(0i64, |acc, (a, &k)| {
                        acc.checked_add(a.checked_mul(k as i64)?)
                    })
                    .ok_or_else(|| Error::Resource("exponent overflow in substitution".into()))
            })
            .collect::<Result<_>>()?;
        let slot = terms.entry(image).or_insert_with(Rational::zero);
        *slot += c;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(LaurentPolynomial { n: m.rows(), terms })
}

/// `f ∘ φ_M` for unimodular `M`; a negative exponent is a chart error.
pub fn monomial_substitute(f: &Polynomial, m: &IntMatrix) -> Result<Polynomial> {
    if !m.is_square() || !is_unimodular(m)? {
        return Err(Error::domain("substitution matrix must be unimodular"));
    }
    monomial_substitute_laurent(f, m)?.to_polynomial()
}

/// Splits `g = x^P · h` with `h(0) ≠ 0`; needs `NP(g)` to have a single vertex.
pub fn factor_vertex(g: &Polynomial) -> Result<(ExponentVector, Polynomial)> {
    let p = g
        .min_exponent()
        .ok_or_else(|| Error::domain("factor_vertex of the zero polynomial"))?;
    if g.coefficient(&p).is_zero() {
        return Err(Error::domain(format!(
            "Newton polyhedron of {g} has more than one vertex"
        )));
    }
    let h = Polynomial::from_terms(
        g.nvars(),
        g.terms()
            .map(|(e, c)| (e.checked_sub(&p).expect("p is the minimum"), c.clone())),
    );
    Ok((p, h))
}

/// Whether `cone` lies inside a single cone of the dual fan `Σ(f)`.
pub fn is_good_cone(f: &Polynomial, cone: &Cone) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::domain("good cone test for the zero polynomial"));
    }
    if !cone.is_pointed() {
        return Err(Error::domain("good cone test needs a strongly convex cone"));
    }
    if !Cone::orthant(f.nvars()).contains_cone(cone) {
        return Ok(false);
    }
    let inner = WeightVector::new(cone.interior_point_or_origin())?;
    let face = initial_form(f, &inner)?;
    for r in cone.rays() {
        let w = WeightVector::new(r.clone())?;
        let at_ray = initial_form(f, &w)?;
        if face.terms().any(|(e, _)| at_ray.coefficient(e).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f|_{face_τ(f)} ∘ φ_{Mᵗ}`, where `τ` is generated by the listed columns of `M`.
pub fn restrict_after_substitution(
    f: &Polynomial,
    m: &IntMatrix,
    tau_columns: &[usize],
) -> Result<Polynomial> {
    let sigma = Cone::from_matrix_columns(m)?;
    if !is_good_cone(f, &sigma)? {
        return Err(Error::domain(format!("cone {sigma} is not good for {f}")));
    }
    let n = f.nvars();
    let mut w = IntVector::zero(n);
    for &j in tau_columns {
        if j >= m.cols() {
            return Err(Error::shape(format!("column {j} out of range")));
        }
        w = w.add(&m.column(j));
    }
    let face = initial_form(f, &WeightVector::new(w)?)?;
    monomial_substitute(&face, &m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{newton_polyhedron, parse_polynomial};
    use num_bigint::BigInt;

    const V: [&str; 2] = ["x", "y"];

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, &V).unwrap()
    }

    fn cols(c: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_columns(&c.iter().map(|v| IntVector::from_i64(v)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn identity_substitution() {
        let f = p("x^2 - 3*x*y + 1");
        assert_eq!(monomial_substitute(&f, &IntMatrix::identity(2)).unwrap(), f);
    }

    #[test]
    fn substitution_rekeys_exponents() {
        let m = cols(&[&[1, 0], &[1, 1]]);
        assert_eq!(monomial_substitute(&p("x + y"), &m).unwrap(), p("x + x*y"));
        let g = monomial_substitute(&p("2*x - 5*y"), &m).unwrap();
        let coefs: Vec<Rational> = g.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coefs.len(), 2);
        assert!(coefs.contains(&Rational::from_integer(big(2))));
        assert!(coefs.contains(&Rational::from_integer(big(-5))));
    }

    #[test]
    fn negative_exponent_is_a_chart_error() {
        let m = cols(&[&[1, -1], &[0, 1]]);
        assert!(matches!(
            monomial_substitute(&p("x"), &m),
            Err(Error::Chart(_))
        ));
        let l = monomial_substitute_laurent(&p("x + y"), &m).unwrap();
        assert!(!l.is_polynomial());
        let (shift, cleared) = l.clear_monomial();
        assert_eq!(shift, vec![0, -1]);
        assert_eq!(cleared, p("x + y^2"));
    }

    #[test]
    fn factor_vertex_examples() {
        let (e, h) = factor_vertex(&p("x^3*y^2 + x^4*y^2 + x^3*y^3")).unwrap();
        assert_eq!(e, ExponentVector::new(vec![3, 2]));
        assert_eq!(h, p("1 + x + y"));
        let (e, h) = factor_vertex(&p("x + x*y")).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 0]));
        assert_eq!(h, p("1 + y"));
        let (e, h) = factor_vertex(&p("-4*x*y^5")).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 5]));
        assert_eq!(h, p("-4"));
        assert!(factor_vertex(&p("x + y")).is_err());
    }

    #[test]
    fn good_cones_of_x_plus_y() {
        let f = p("x + y");
        assert!(is_good_cone(
            &f,
            &Cone::from_matrix_columns(&cols(&[&[1, 0], &[1, 1]])).unwrap()
        )
        .unwrap());
        assert!(!is_good_cone(&f, &Cone::orthant(2)).unwrap());
        assert!(is_good_cone(&f, &Cone::from_matrix_columns(&cols(&[&[1, 1]])).unwrap()).unwrap());
    }

    #[test]
    fn transformed_polynomial_on_good_cone_has_one_vertex() {
        let f = p("x^2 + x*y + y^3");
        let m = cols(&[&[1, 1], &[1, 2]]);
        assert!(is_good_cone(&f, &Cone::from_matrix_columns(&m).unwrap()).unwrap());
        let g = monomial_substitute(&f, &m.transpose()).unwrap();
        assert!(newton_polyhedron(&g).unwrap().has_single_vertex());
    }

    #[test]
    fn restriction_commutes_with_substitution() {
        let f = p("x + y");
        // chart with the diagonal ray first
        let m = cols(&[&[1, 1], &[1, 0]]);
        let whole = monomial_substitute(&f, &m.transpose()).unwrap();
        assert_eq!(restrict_after_substitution(&f, &m, &[]).unwrap(), whole);
        let on_ray = restrict_after_substitution(&f, &m, &[0]).unwrap();
        let (pv, _) = factor_vertex(&whole).unwrap();
        // keep the terms of the transform lying in P + cone(e_i : i ∉ τ)
        let expected = whole.filter_terms(|e| e.entries()[0] == pv.entries()[0]);
        assert_eq!(on_ray, expected);
        let vertex_term = restrict_after_substitution(&f, &m, &[0, 1]).unwrap();
        assert!(vertex_term.is_monomial());
        assert!(restrict_after_substitution(&f, &IntMatrix::identity(2), &[]).is_err());
    }
}
