use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::dd::rays_of;
use crate::error::{Error, Result};
use crate::exact::{lattice_index, primitive, IntMatrix, IntVector};

/// Rational polyhedral cone.
///
/// Both descriptions are kept: extreme rays plus lineality space, and facet
/// inequalities `a·x ≥ 0` plus the equations of the linear span. All four
/// lists are canonical, so structural equality is geometric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    n: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    facets: Vec<IntVector>,
    equations: Vec<IntVector>,
}

impl Cone {
    /// The cone `{0}` in `ℝⁿ`.
    pub fn zero(n: usize) -> Cone {
        Cone {
            n,
            rays: Vec::new(),
            lineality: Vec::new(),
            facets: Vec::new(),
            equations: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        }
    }

    /// The first orthant of `ℝⁿ`.
    pub fn orthant(n: usize) -> Cone {
        let basis: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        let mut rays = basis.clone();
        rays.sort();
        Cone {
            n,
            rays: rays.clone(),
            lineality: Vec::new(),
            facets: rays,
            equations: Vec::new(),
        }
    }

    /// Cone generated by the given vectors (zero vectors are ignored).
    pub fn from_generators(n: usize, generators: &[IntVector]) -> Result<Cone> {
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::shape(format!(
                "generator length differs from ambient dimension {n}"
            )));
        }
        let gens: Vec<IntVector> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .cloned()
            .collect();
        if gens.is_empty() {
            return Ok(Cone::zero(n));
        }
        // facets are the extreme rays of the dual cone
        let dual = rays_of(n, &gens, &[]);
        let equations = dual.lineality;
        let facets = dual.rays;
        let primal = rays_of(n, &facets, &equations);
        Ok(Cone {
            n,
            rays: primal.rays,
            lineality: primal.lineality,
            facets,
            equations,
        })
    }

    /// Cone `{x : a·x ≥ 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(n: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> Result<Cone> {
        if ineqs.iter().chain(eqs).any(|a| a.len() != n) {
            return Err(Error::shape(format!(
                "constraint length differs from ambient dimension {n}"
            )));
        }
        let v = rays_of(n, ineqs, eqs);
        let mut gens = v.rays;
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        Cone::from_generators(n, &gens)
    }

    /// Cone generated by the columns of `m`.
    pub fn from_matrix_columns(m: &IntMatrix) -> Result<Cone> {
        Cone::from_generators(m.rows(), &m.column_vectors())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.equations.len()
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// Minimal primitive generating set; defined only for strongly convex cones.
    pub fn vertices(&self) -> Result<&[IntVector]> {
        if !self.is_pointed() {
            return Err(Error::domain("vertices of a cone containing a line"));
        }
        Ok(&self.rays)
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        v.len() == self.n
            && self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|a| !a.dot(v).is_negative())
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, v: &IntVector) -> bool {
        v.len() == self.n
            && self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|a| a.dot(v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&l.neg()))
    }

    /// Sum of the rays: a canonical relative-interior point.
    pub fn relative_interior_point(&self) -> Result<IntVector> {
        if self.is_zero() {
            return Err(Error::domain("the zero cone has no nonzero interior point"));
        }
        if self.rays.is_empty() {
            return Ok(self.lineality[0].clone());
        }
        let mut s = IntVector::zero(self.n);
        for r in &self.rays {
            s = s.add(r);
        }
        Ok(s)
    }

    /// Relative-interior point, with the origin for the zero cone.
    pub fn interior_point_or_origin(&self) -> IntVector {
        self.relative_interior_point()
            .unwrap_or_else(|_| IntVector::zero(self.n))
    }

    /// `{v : v·u ≥ 0 for all u in the cone}`.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(e.neg());
        }
        Cone::from_generators(self.n, &gens).expect("dimensions agree")
    }

    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        if self.n != other.n {
            return Err(Error::shape(
                "intersection of cones in different ambient spaces",
            ));
        }
        let ineqs: Vec<IntVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVector> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Cone::from_inequalities(self.n, &ineqs, &eqs)
    }

    /// True iff the strongly convex cone is generated by a lattice basis of
    /// the lattice points in its span.
    pub fn is_regular(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        lattice_index(&self.rays)
            .map(|i| i.is_one())
            .unwrap_or(false)
    }

    /// Index of the sublattice generated by the vertices of a simplicial cone.
    pub fn lattice_index(&self) -> Result<BigInt> {
        if !self.is_simplicial() {
            return Err(Error::domain("lattice index of a non-simplicial cone"));
        }
        lattice_index(&self.rays)
    }

    /// Faces of a regular cone: one per subset of the vertex set.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.is_regular() && !self.is_zero() {
            return Err(Error::domain("faces() expects a regular cone"));
        }
        let k = self.rays.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u64..(1u64 << k) {
            let gens: Vec<IntVector> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.rays[i].clone())
                .collect();
            out.push(Cone::from_generators(self.n, &gens)?);
        }
        out.sort_by(canonical_cmp);
        Ok(out)
    }

    /// All faces of a strongly convex cone (including `{0}` and the cone itself).
    pub fn all_faces(&self) -> Result<Vec<Cone>> {
        if !self.is_pointed() {
            return Err(Error::domain(
                "face enumeration of a cone containing a line",
            ));
        }
        let k = self.rays.len();
        let full: BTreeSet<usize> = (0..k).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|a| (0..k).filter(|&i| a.dot(&self.rays[i]).is_zero()).collect())
            .collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut stack = vec![full.clone()];
        seen.insert(full);
        while let Some(face) = stack.pop() {
            for fs in &facet_sets {
                let sub: BTreeSet<usize> = face.intersection(fs).copied().collect();
                if sub.len() < face.len() && seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        let mut out: Vec<Cone> = seen
            .into_iter()
            .map(|s| {
                let gens: Vec<IntVector> = s.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.n, &gens)
            })
            .collect::<Result<_>>()?;
        out.sort_by(canonical_cmp);
        out.dedup();
        Ok(out)
    }

    /// Smallest face of this (strongly convex) cone containing `v`.
    pub fn minimal_face_containing(&self, v: &IntVector) -> Result<Cone> {
        if !self.contains(v) {
            return Err(Error::domain(format!("{v} is not in the cone")));
        }
        let tight: Vec<&IntVector> = self.facets.iter().filter(|a| a.dot(v).is_zero()).collect();
        let gens: Vec<IntVector> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|a| a.dot(r).is_zero()))
            .cloned()
            .collect();
        let mut all = gens;
        for l in &self.lineality {
            all.push(l.clone());
            all.push(l.neg());
        }
        Cone::from_generators(self.n, &all)
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let p = self.interior_point_or_origin();
        match other.minimal_face_containing(&p) {
            Ok(f) => &f == self,
            Err(_) => false,
        }
    }

    /// True when the cone lies inside a coordinate hyperplane.
    pub fn in_coordinate_hyperplane(&self) -> bool {
        let p = self.interior_point_or_origin();
        p.entries().iter().any(Zero::is_zero)
    }

    pub fn rays_as_i64(&self) -> Vec<Vec<i64>> {
        self.rays
            .iter()
            .map(|r| r.to_i64_vec().expect("ray entries fit in 64 bits"))
            .collect()
    }
}

/// Canonical order: dimension first, then the sorted vertex list.
pub fn canonical_cmp(a: &Cone, b: &Cone) -> std::cmp::Ordering {
    a.dim()
        .cmp(&b.dim())
        .then_with(|| a.rays.cmp(&b.rays))
        .then_with(|| a.lineality.cmp(&b.lineality))
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        for l in &self.lineality {
            write!(f, ", ±{l}")?;
        }
        write!(f, ">")
    }
}

#[derive(Serialize)]
struct ConeRepr<'a> {
    dim: usize,
    rays: &'a [IntVector],
    #[serde(skip_serializing_if = "<[IntVector]>::is_empty")]
    lineality: &'a [IntVector],
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeRepr {
            dim: self.dim(),
            rays: &self.rays,
            lineality: &self.lineality,
        }
        .serialize(s)
    }
}

/// Cone generated by the given rays, made primitive first.
pub fn cone_from_i64(n: usize, gens: &[&[i64]]) -> Result<Cone> {
    let v: Vec<IntVector> = gens
        .iter()
        .map(|g| {
            let iv = IntVector::from_i64(g);
            primitive(&iv).unwrap_or(iv)
        })
        .collect();
    Cone::from_generators(n, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn c(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        cone_from_i64(n, gens).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Cone::orthant(2).dual(), Cone::orthant(2));
        assert_eq!(c(&[&[1, 0], &[1, 2]]).dual(), c(&[&[0, 1], &[2, -1]]));
        assert_eq!(c(&[&[1, 0], &[1, 1]]).dual(), c(&[&[0, 1], &[1, -1]]));
    }

    #[test]
    fn dual_of_ray_is_half_plane() {
        let d = c(&[&[1, 0]]).dual();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.lineality(), &[iv(&[0, 1])]);
        assert!(d.vertices().is_err());
    }

    #[test]
    fn vertices_examples() {
        assert_eq!(
            c(&[&[1, 0], &[2, 0], &[0, 1]]).vertices().unwrap(),
            &[iv(&[0, 1]), iv(&[1, 0])]
        );
        assert_eq!(Cone::orthant(3).vertices().unwrap().len(), 3);
        assert_eq!(c(&[&[1, 1]]).vertices().unwrap(), &[iv(&[1, 1])]);
    }

    #[test]
    fn regularity_examples() {
        assert!(Cone::orthant(3).is_regular());
        assert!(!c(&[&[1, 0], &[1, 2]]).is_regular());
        assert!(c(&[&[1, 0], &[1, 1]]).is_regular());
    }

    #[test]
    fn face_counts() {
        assert_eq!(c(&[&[1, 0], &[0, 1]]).faces().unwrap().len(), 4);
        assert_eq!(c(&[&[1, 1]]).faces().unwrap().len(), 2);
        assert_eq!(Cone::orthant(3).faces().unwrap().len(), 8);
        assert!(c(&[&[1, 0], &[1, 2]]).faces().is_err());
    }

    #[test]
    fn relative_interior_examples() {
        assert_eq!(
            c(&[&[1, 0]]).relative_interior_point().unwrap(),
            iv(&[1, 0])
        );
        assert_eq!(
            Cone::orthant(2).relative_interior_point().unwrap(),
            iv(&[1, 1])
        );
        assert_eq!(
            c(&[&[1, 0, 1], &[0, 1, 1]])
                .relative_interior_point()
                .unwrap(),
            iv(&[1, 1, 2])
        );
        assert!(Cone::zero(2).relative_interior_point().is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(Cone::orthant(2).contains(&iv(&[0, 0])));
        assert!(c(&[&[1, 2]]).contains(&iv(&[2, 4])));
        assert!(!c(&[&[1, 0], &[1, 1]]).contains(&iv(&[0, 1])));
    }

    #[test]
    fn square_pyramid_faces() {
        let cone = c(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(cone.rays().len(), 4);
        assert!(!cone.is_simplicial());
        // 1 apex, 4 rays, 4 two-dimensional faces, the cone itself
        assert_eq!(cone.all_faces().unwrap().len(), 10);
    }

    #[test]
    fn face_relation() {
        let sigma = Cone::orthant(2);
        assert!(c(&[&[1, 0]]).is_face_of(&sigma));
        assert!(Cone::zero(2).is_face_of(&sigma));
        assert!(!c(&[&[1, 1]]).is_face_of(&sigma));
    }
}
