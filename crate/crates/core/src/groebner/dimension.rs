//! Dimension, torus saturation and the Jacobian criterion.

use serde::Serialize;

use num_traits::One;

use super::engine::{groebner_basis, is_unit_basis, EPoly, MonoOrder};
use super::Ideal;
use crate::error::{Error, Result};
use crate::exact::{combinations, Rational};
use crate::poly::Polynomial;

/// Leading exponents of the reduced degree-reverse-lexicographic basis.
fn leading_exponents(ideal: &Ideal) -> Result<Vec<Vec<u32>>> {
    Ok(ideal
        .degrevlex_basis()?
        .iter()
        .map(|g| g.lm().clone())
        .collect())
}

/// Variable subsets (as bit masks) on which no leading monomial is supported.
fn independent_sets(n: usize, leading: &[Vec<u32>]) -> Vec<u64> {
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    (0u64..(1u64 << n))
        .filter(|&s| supports.iter().all(|&m| m & !s != 0))
        .collect()
}

/// `dim V(I)`, the largest set of variables independent modulo a monomial initial ideal.
pub fn krull_dimension(ideal: &Ideal) -> Result<usize> {
    if let Some(d) = ideal.read_cache(|c| c.dimension) {
        return Ok(d);
    }
    if ideal.is_unit()? {
        return Err(Error::domain("the unit ideal has an empty variety"));
    }
    let n = ideal.nvars();
    let lead = leading_exponents(ideal)?;
    let d = independent_sets(n, &lead)
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    ideal.write_cache(|c| c.dimension = Some(d));
    Ok(d)
}

/// Whether `polys` have no common zero in the torus: adds `t·x1⋯xn − 1` and tests for the unit ideal.
pub(crate) fn torus_empty(n: usize, polys: &[Polynomial], max_steps: u64) -> Result<bool> {
    let order = MonoOrder::DegRevLex;
    let mut gens: Vec<EPoly> = polys
        .iter()
        .map(|p| {
            EPoly::from_polynomial(
                &p.remap_variables(n + 1, &(0..n).collect::<Vec<_>>()),
                &order,
            )
        })
        .collect();
    gens.push(EPoly::from_terms(
        vec![
            (vec![1u32; n + 1], Rational::one()),
            (vec![0u32; n + 1], -Rational::one()),
        ],
        &order,
    ));
    Ok(is_unit_basis(&groebner_basis(&gens, &order, max_steps)?))
}

/// Whether the ideal contains a monomial, i.e. `V(I)` misses the torus.
pub fn contains_monomial(ideal: &Ideal) -> Result<bool> {
    if ideal.generators().iter().any(Polynomial::is_monomial) {
        return Ok(true);
    }
    if ideal.is_monomial_ideal()? {
        return Ok(true);
    }
    torus_empty(
        ideal.nvars(),
        &ideal.canonical_generators()?,
        ideal.budget().max_steps,
    )
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    let n = m[0][0].nvars();
    match k {
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(n);
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// All nonzero `c×c` minors of the Jacobian matrix of `polys`, without repetition.
pub fn jacobian_minors(polys: &[Polynomial], c: usize) -> Vec<Polynomial> {
    match polys.first() {
        Some(p) => jacobian_minors_in(polys, c, &(0..p.nvars()).collect::<Vec<_>>()),
        None => Vec::new(),
    }
}

/// Minors of the Jacobian restricted to the listed variable columns.
pub fn jacobian_minors_in(polys: &[Polynomial], c: usize, columns: &[usize]) -> Vec<Polynomial> {
    if polys.is_empty() || c == 0 {
        return Vec::new();
    }
    let jac: Vec<Vec<Polynomial>> = polys
        .iter()
        .map(|p| columns.iter().map(|&i| p.derivative(i)).collect())
        .collect();
    let mut out: Vec<Polynomial> = Vec::new();
    for rows in combinations(polys.len(), c) {
        for cols in combinations(columns.len(), c) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&j| jac[r][j].clone()).collect())
                .collect();
            let d = determinant(&sub);
            if !d.is_zero() {
                let d = d.monic();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Whether the equidimensionality assumption behind the Jacobian test looks safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    /// Every maximal independent set of the initial monomial ideal has full size.
    Consistent,
    /// A smaller maximal independent set exists; the verdict may be unreliable.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    /// `None` for the unit ideal.
    pub dimension: Option<usize>,
    pub smooth_in_torus: bool,
    pub purity: Purity,
}

/// Jacobian criterion on the torus with generators taken from the reduced basis.
pub fn singular_locus_in_torus(ideal: &Ideal) -> Result<SmoothnessReport> {
    if ideal.is_unit()? {
        return Ok(SmoothnessReport {
            dimension: None,
            smooth_in_torus: true,
            purity: Purity::Consistent,
        });
    }
    let n = ideal.nvars();
    let dim = krull_dimension(ideal)?;
    let lead = leading_exponents(ideal)?;
    let sets = independent_sets(n, &lead);
    let maximal_small = sets.iter().any(|&s| {
        (s.count_ones() as usize) < dim
            && (0..n).all(|i| s & (1 << i) != 0 || !sets.contains(&(s | (1 << i))))
    });
    let gens = ideal.canonical_generators()?;
    let mut system = gens.clone();
    system.extend(jacobian_minors(&gens, n - dim));
    let smooth = torus_empty(n, &system, ideal.budget().max_steps)?;
    Ok(SmoothnessReport {
        dimension: Some(dim),
        smooth_in_torus: smooth,
        purity: if maximal_small {
            Purity::Indeterminate
        } else {
            Purity::Consistent
        },
    })
}
