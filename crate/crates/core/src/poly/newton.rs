use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{support, ExponentVector, Polynomial, WeightVector};
use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::polyhedra::{Cone, Fan};

/// `Conv(ε(f)) + ℝⁿ≥0`, described by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    support: Vec<ExponentVector>,
    vertices: Vec<ExponentVector>,
}

impl NewtonPolyhedron {
    pub fn support(&self) -> &[ExponentVector] {
        &self.support
    }

    /// Vertices in increasing (degree, lex) order.
    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn has_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Support points on the face where `ω` attains its minimum.
    pub fn face(&self, w: &WeightVector) -> Vec<ExponentVector> {
        let min = self.support.iter().map(|e| w.weight(e)).min();
        self.support
            .iter()
            .filter(|e| Some(w.weight(e)) == min)
            .cloned()
            .collect()
    }

    /// Weights in the first orthant minimized at `v` over the polyhedron.
    pub fn normal_cone(&self, v: &ExponentVector) -> Result<Cone> {
        let n = v.len();
        let mut ineqs: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        let vi = v.to_int_vector();
        for u in &self.vertices {
            if u != v {
                ineqs.push(u.to_int_vector().sub(&vi));
            }
        }
        Cone::from_inequalities(n, &ineqs, &[])
    }
}

/// Newton polyhedron of a nonzero polynomial.
pub fn newton_polyhedron(f: &Polynomial) -> Result<NewtonPolyhedron> {
    if f.is_zero() {
        return Err(Error::domain("Newton polyhedron of the zero polynomial"));
    }
    let n = f.nvars();
    let pts = support(f);
    // vertices of P are the rays (μ, 1) of the cone over P × {1}
    let mut gens: Vec<IntVector> = pts
        .iter()
        .map(|e| {
            let mut v = e.to_int_vector().into_entries();
            v.push(BigInt::one());
            IntVector::new(v)
        })
        .collect();
    for i in 0..n {
        gens.push(IntVector::unit(n + 1, i));
    }
    let cone = Cone::from_generators(n + 1, &gens)?;
    let mut vertices: Vec<ExponentVector> = cone
        .rays()
        .iter()
        .filter(|r| !r.entries()[n].is_zero())
        .map(|r| {
            debug_assert!(r.entries()[n].is_one());
            ExponentVector::from_int_vector(&IntVector::new(r.entries()[..n].to_vec()))
                .expect("vertex is a support point")
        })
        .collect();
    vertices.sort();
    Ok(NewtonPolyhedron {
        support: pts,
        vertices,
    })
}

/// The fan `Σ(f)` on the first orthant: normal cones of the vertices of `NP(f)` and their faces.
pub fn dual_fan(f: &Polynomial) -> Result<Fan> {
    let np = newton_polyhedron(f)?;
    let cones = np
        .vertices()
        .iter()
        .map(|v| np.normal_cone(v))
        .collect::<Result<Vec<_>>>()?;
    Fan::from_cones(f.nvars(), &cones)
}
