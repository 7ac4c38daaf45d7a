use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::cone::{canonical_cmp, Cone};
use crate::error::{Error, Result};
use crate::exact::IntVector;

/// Face-closed collection of strongly convex cones in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    cones: Vec<Cone>,
    maximal: Vec<usize>,
}

/// Two cones whose intersection is not a face of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanViolation {
    pub first: Cone,
    pub second: Cone,
    pub intersection: Cone,
    /// A point of the intersection that witnesses the failure.
    pub witness: IntVector,
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cones {} and {} meet in {} (witness {}), which is not a face of both",
            self.first, self.second, self.intersection, self.witness
        )
    }
}

impl Fan {
    /// Builds the fan generated by `cones`: every face is added and the cones
    /// are put in canonical order. The intersection axiom is not checked.
    pub fn from_cones(n: usize, cones: &[Cone]) -> Result<Fan> {
        let mut all: Vec<Cone> = Vec::new();
        for c in cones {
            if c.ambient_dim() != n {
                return Err(Error::shape("cone in a different ambient space"));
            }
            all.extend(c.all_faces()?);
        }
        if all.is_empty() {
            all.push(Cone::zero(n));
        }
        all.sort_by(canonical_cmp);
        all.dedup();
        let maximal = maximal_indices(&all);
        Ok(Fan {
            n,
            cones: all,
            maximal,
        })
    }

    /// The fan of all faces of the first orthant.
    pub fn orthant_face_fan(n: usize) -> Fan {
        Fan::from_cones(n, &[Cone::orthant(n)]).expect("orthant is pointed")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.maximal.iter().map(|&i| &self.cones[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.cones.binary_search_by(|c| canonical_cmp(c, cone)).ok()
    }

    /// All distinct rays, sorted.
    pub fn rays(&self) -> Vec<IntVector> {
        let mut rays: Vec<IntVector> = self
            .cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect();
        rays.sort();
        rays.dedup();
        rays
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(|c| c.is_zero() || c.is_regular())
    }

    pub fn support_contains(&self, v: &IntVector) -> bool {
        self.maximal.iter().any(|&i| self.cones[i].contains(v))
    }

    /// Index of the cone whose relative interior contains `v`.
    pub fn locate(&self, v: &IntVector) -> Option<usize> {
        self.cones
            .iter()
            .position(|c| c.relative_interior_contains(v) || (c.is_zero() && v.is_zero()))
    }

    /// Index of some maximal cone containing `cone`.
    pub fn maximal_containing(&self, cone: &Cone) -> Option<usize> {
        self.maximal
            .iter()
            .copied()
            .find(|&i| self.cones[i].contains_cone(cone))
    }

    pub fn to_data(&self) -> FanData {
        let rays = self.rays();
        let index: BTreeMap<&IntVector, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let maximal_cones = self
            .maximal
            .iter()
            .map(|&i| self.cones[i].rays().iter().map(|r| index[r]).collect())
            .collect();
        FanData {
            ambient_dim: self.n,
            rays: rays.clone(),
            maximal_cones,
        }
    }
}

fn maximal_indices(sorted: &[Cone]) -> Vec<usize> {
    (0..sorted.len())
        .filter(|&i| {
            !sorted
                .iter()
                .enumerate()
                .any(|(j, c)| j != i && c.dim() > sorted[i].dim() && c.contains_cone(&sorted[i]))
        })
        .collect()
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan(n={}, maximal=[", self.n)?;
        for (k, &i) in self.maximal.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.cones[i])?;
        }
        write!(f, "])")
    }
}

/// Serialized fan: rays plus maximal cones as ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanData {
    pub ambient_dim: usize,
    pub rays: Vec<IntVector>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_data().serialize(s)
    }
}

/// Closes `cones` under faces and checks the intersection axiom pairwise.
///
/// Checking maximal pairs suffices: faces of faces meet in faces.
pub fn validate_fan(n: usize, cones: &[Cone]) -> Result<Fan> {
    let fan = Fan::from_cones(n, cones)?;
    let maxi = fan.maximal_cones();
    for (a, s) in maxi.iter().enumerate() {
        for t in maxi.iter().skip(a + 1) {
            let inter = s.intersection(t)?;
            if !inter.is_face_of(s) || !inter.is_face_of(t) {
                return Err(Error::FanAxiom(Box::new(FanViolation {
                    first: (*s).clone(),
                    second: (*t).clone(),
                    witness: inter.interior_point_or_origin(),
                    intersection: inter,
                })));
            }
        }
    }
    Ok(fan)
}

/// Fan of all pairwise intersections of maximal cones.
pub fn common_refinement(f1: &Fan, f2: &Fan) -> Result<Fan> {
    if f1.ambient_dim() != f2.ambient_dim() {
        return Err(Error::shape("fans in different ambient spaces"));
    }
    for (a, b) in [(f1, f2), (f2, f1)] {
        for c in a.cones() {
            let mut probes: Vec<IntVector> = c.rays().to_vec();
            probes.push(c.interior_point_or_origin());
            if let Some(p) = probes.iter().find(|p| !b.support_contains(p)) {
                return Err(Error::domain(format!(
                    "fan supports differ: {p} lies in one fan but not the other"
                )));
            }
        }
    }
    let mut pieces = Vec::new();
    for s in f1.maximal_cones() {
        for t in f2.maximal_cones() {
            pieces.push(s.intersection(t)?);
        }
    }
    Fan::from_cones(f1.ambient_dim(), &pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::cone::cone_from_i64;

    fn c(gens: &[&[i64]]) -> Cone {
        cone_from_i64(gens[0].len(), gens).unwrap()
    }

    fn diagonal_split() -> Fan {
        Fan::from_cones(2, &[c(&[&[1, 0], &[1, 1]]), c(&[&[1, 1], &[0, 1]])]).unwrap()
    }

    #[test]
    fn orthant_fan_is_valid() {
        let fan = validate_fan(2, &[Cone::orthant(2)]).unwrap();
        assert_eq!(fan.len(), 4);
        assert_eq!(fan.maximal_indices().len(), 1);
    }

    #[test]
    fn diagonal_split_is_valid() {
        let fan = validate_fan(2, &[c(&[&[1, 0], &[1, 1]]), c(&[&[1, 1], &[0, 1]])]).unwrap();
        assert_eq!(fan.len(), 6);
        assert_eq!(fan.maximal_cones().len(), 2);
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let Err(Error::FanAxiom(v)) = validate_fan(2, &[Cone::orthant(2), c(&[&[1, 1], &[1, -1]])])
        else {
            panic!("overlap not detected");
        };
        assert!(Cone::orthant(2).contains(&v.witness));
        assert!(c(&[&[1, 1], &[1, -1]]).contains(&v.witness));
        assert!(!v.witness.is_zero());
    }

    #[test]
    fn refinement_examples() {
        let split = diagonal_split();
        assert_eq!(common_refinement(&split, &split).unwrap(), split);
        let orth = Fan::orthant_face_fan(2);
        assert_eq!(common_refinement(&orth, &split).unwrap(), split);
        let other = Fan::from_cones(2, &[c(&[&[1, 0], &[1, 2]]), c(&[&[1, 2], &[0, 1]])]).unwrap();
        let both = common_refinement(&split, &other).unwrap();
        assert_eq!(both.maximal_cones().len(), 3);
        assert!(validate_fan(
            2,
            &both
                .maximal_cones()
                .into_iter()
                .cloned()
                .collect::<Vec<_>>()
        )
        .is_ok());
    }

    #[test]
    fn mismatched_supports_are_rejected() {
        let half = Fan::from_cones(2, &[c(&[&[1, 0], &[1, 1]])]).unwrap();
        assert!(common_refinement(&half, &Fan::orthant_face_fan(2)).is_err());
    }

    #[test]
    fn serialization_uses_ray_indices() {
        let data = diagonal_split().to_data();
        assert_eq!(data.rays.len(), 3);
        assert_eq!(data.maximal_cones, vec![vec![0, 2], vec![1, 2]]);
    }
}
