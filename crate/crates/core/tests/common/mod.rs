#![allow(dead_code)]

use std::collections::BTreeMap;

use nndtoric::exact::{combinations, lattice_index, IntMatrix, IntVector, Rational};
use nndtoric::groebner::Ideal;
use nndtoric::poly::{parse_polynomial, ExponentVector, Polynomial};
use nndtoric::polyhedra::{Cone, Fan};
use num_bigint::BigInt;
use rand::Rng;

pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

pub fn ideal(gens: &[&str], n: usize) -> Ideal {
    Ideal::new(
        n,
        gens.iter()
            .map(|g| parse_polynomial(g, &VARS[..n]).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn surface() -> Ideal {
    ideal(&["x*y + x*w - y*w", "x*z - w^2", "y*z - y*w - w^2"], 4)
}

/// Small ideals with their names; none contains a constant term.
pub fn suite() -> Vec<(&'static str, Ideal)> {
    vec![
        ("line", ideal(&["x + y"], 2)),
        ("cusp", ideal(&["x^2 - y^3"], 2)),
        ("double line", ideal(&["x^2 + 2*x*y + y^2"], 2)),
        ("node", ideal(&["x^2 - y^2 + x^3"], 2)),
        ("plane", ideal(&["x + y + z"], 3)),
        ("two planes", ideal(&["x - y", "y - z"], 3)),
        ("quadric cone", ideal(&["x*y - z^2"], 3)),
        ("A2 surface", ideal(&["x*y - z^3"], 3)),
        ("Fermat cubic", ideal(&["x^3 + y^3 + z^3"], 3)),
        ("curve in space", ideal(&["x^2 - y*z", "y^2 - x*z"], 3)),
        ("monomial", ideal(&["x*y", "x*z"], 3)),
        (
            "twisted cubic",
            ideal(&["x*z - y^2", "x*w - y*z", "y*w - z^2"], 4),
        ),
        ("surface", surface()),
    ]
}

/// Ideals prime by construction: linear, irreducible hypersurfaces, the surface example.
pub fn prime_suite() -> Vec<(&'static str, Ideal)> {
    vec![
        ("line", ideal(&["x + y"], 2)),
        ("plane", ideal(&["x + y + z"], 3)),
        ("two planes", ideal(&["x - y", "y - z"], 3)),
        ("hyperplane", ideal(&["x + 2*y - z + 3*w"], 4)),
        ("cusp", ideal(&["x^2 - y^3"], 2)),
        ("quadric cone", ideal(&["x*y - z^2"], 3)),
        ("A2 surface", ideal(&["x*y - z^3"], 3)),
        ("Fermat cubic", ideal(&["x^3 + y^3 + z^3"], 3)),
        (
            "twisted cubic",
            ideal(&["x*z - y^2", "x*w - y*z", "y*w - z^2"], 4),
        ),
        ("surface", surface()),
    ]
}

/// Polynomial in `n` variables with at most `terms` terms, degree at most `deg`,
/// coefficients in `[-9, 9]`, and at least one non-constant term.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: usize, terms: usize, deg: u32) -> Polynomial {
    loop {
        let k = rng.random_range(1..=terms);
        let mut map = BTreeMap::new();
        for _ in 0..k {
            let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..=deg)).collect();
            let c = loop {
                let c = rng.random_range(-9..=9i64);
                if c != 0 {
                    break c;
                }
            };
            map.insert(e, c);
        }
        let f = Polynomial::from_terms(
            n,
            map.into_iter().map(|(e, c)| {
                (
                    ExponentVector::new(e),
                    Rational::from_integer(BigInt::from(c)),
                )
            }),
        );
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

/// Product of random elementary integer matrices.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..rng.random_range(1..=3 * n) {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        match rng.random_range(0..3) {
            0 if i != j => {
                let k = rng.random_range(-2..=2i64);
                let row = m[j].clone();
                for (a, b) in m[i].iter_mut().zip(row) {
                    *a += k * b;
                }
            }
            1 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|v| *v = -*v),
        }
    }
    IntMatrix::from_rows_i64(&m).unwrap()
}

pub fn random_weight<R: Rng>(rng: &mut R, n: usize, max: i64) -> IntVector {
    IntVector::from_i64(
        &(0..n)
            .map(|_| rng.random_range(0..=max))
            .collect::<Vec<_>>(),
    )
}

/// A point of the relative interior of `cone`, randomised by nonnegative ray multiples.
pub fn interior_sample<R: Rng>(rng: &mut R, cone: &Cone) -> IntVector {
    let mut v = cone
        .interior_point_or_origin()
        .scaled(&BigInt::from(rng.random_range(1..=3)));
    for r in cone.rays() {
        v = v.add(&r.scaled(&BigInt::from(rng.random_range(0..=4))));
    }
    v
}

/// Largest lattice index among the maximal cones; a non-simplicial cone counts
/// with its largest independent subset of rays.
pub fn max_index(fan: &Fan) -> BigInt {
    let mut best = BigInt::from(1);
    for c in fan.maximal_cones() {
        let rays = c.rays();
        for subset in combinations(rays.len(), c.dim()) {
            let gens: Vec<IntVector> = subset.iter().map(|&i| rays[i].clone()).collect();
            if let Ok(k) = lattice_index(&gens) {
                best = best.max(k);
            }
        }
    }
    best
}
