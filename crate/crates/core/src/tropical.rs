//! Tropical variety as a subfan of the Gröbner fan.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::groebner::{
    contains_monomial, groebner_fan, initial_ideal, krull_dimension, GroebnerFan, Ideal,
};
use crate::poly::{Printer, WeightVector};

/// `ω ∈ TV(I)`: the initial ideal contains no monomial.
pub fn in_tropical(ideal: &Ideal, w: &WeightVector) -> Result<bool> {
    Ok(!contains_monomial(&initial_ideal(ideal, w)?)?)
}

/// The cones of the Gröbner fan whose initial ideals are monomial-free.
#[derive(Clone, Debug)]
pub struct TropicalSubfan {
    parent: Arc<GroebnerFan>,
    members: Vec<usize>,
}

impl TropicalSubfan {
    pub fn parent(&self) -> &Arc<GroebnerFan> {
        &self.parent
    }

    /// Indices into the parent fan's cones, increasing.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_member(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the zero cone belongs, i.e. `V(I)` meets the torus.
    pub fn contains_origin(&self) -> bool {
        self.members
            .iter()
            .any(|&i| self.parent.cones()[i].cone.is_zero())
    }

    /// Largest member dimension; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.members
            .iter()
            .map(|&i| self.parent.cones()[i].cone.dim())
            .max()
    }

    /// Whether `w` lies in a member cone.
    pub fn contains(&self, w: &IntVector) -> bool {
        self.members
            .iter()
            .any(|&i| self.parent.cones()[i].cone.contains(w))
    }

    pub fn to_data(&self, printer: &Printer) -> TropicalData {
        TropicalData {
            dim: self.dim(),
            contains_origin: self.contains_origin(),
            members: self
                .members
                .iter()
                .map(|&i| {
                    let c = &self.parent.cones()[i];
                    TropicalConeData {
                        index: i,
                        rays: c.cone.rays().to_vec(),
                        weight: c.weight.clone(),
                        initial_ideal: c
                            .initial_ideal
                            .generators()
                            .iter()
                            .map(|g| printer.print(g))
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TropicalConeData {
    pub index: usize,
    pub rays: Vec<IntVector>,
    pub weight: WeightVector,
    pub initial_ideal: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TropicalData {
    pub dim: Option<usize>,
    pub contains_origin: bool,
    pub members: Vec<TropicalConeData>,
}

/// Tests one relative-interior representative per cone.
pub fn tropical_subfan(ideal: &Ideal) -> Result<TropicalSubfan> {
    let parent = groebner_fan(ideal)?;
    let verdicts = parent
        .cones()
        .par_iter()
        .map(|c| contains_monomial(&c.initial_ideal).map(|m| !m))
        .collect::<Result<Vec<bool>>>()?;
    let members = verdicts
        .iter()
        .enumerate()
        .filter(|(_, &v)| v)
        .map(|(i, _)| i)
        .collect();
    Ok(TropicalSubfan { parent, members })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BieriGrovesReport {
    pub dim_tv: usize,
    pub dim_v: usize,
    pub equal: bool,
    /// Primality is only certified for ideals generated by linear forms.
    pub prime_verified: bool,
}

/// Compares `dim TV(I)` with `dim V(I)`.
pub fn check_bieri_groves(ideal: &Ideal) -> Result<BieriGrovesReport> {
    if contains_monomial(ideal)? {
        return Err(Error::domain("the ideal contains a monomial"));
    }
    let trop = tropical_subfan(ideal)?;
    let dim_tv = trop
        .dim()
        .ok_or_else(|| Error::Internal("monomial-free ideal with empty tropical variety".into()))?;
    let dim_v = krull_dimension(ideal)?;
    let prime_verified = ideal
        .canonical_generators()?
        .iter()
        .all(|g| g.total_degree().unwrap_or(0) <= 1);
    Ok(BieriGrovesReport {
        dim_tv,
        dim_v,
        equal: dim_tv == dim_v,
        prime_verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialDimensionReport {
    pub dim_tv: usize,
    pub dim_tv_initial: usize,
    pub equal: bool,
    /// `kω + v ∈ TV(I)` for large `k`, for one representative `v` per cone of `TV(𝕴n_ω I)`.
    pub inclusion: bool,
}

/// Compares `dim TV(I)` with `dim TV(𝕴n_ω I)` for `ω ∈ TV(I)`.
pub fn check_initial_dimension(ideal: &Ideal, w: &WeightVector) -> Result<InitialDimensionReport> {
    if !in_tropical(ideal, w)? {
        return Err(Error::domain(format!("{w} is not in the tropical variety")));
    }
    let trop = tropical_subfan(ideal)?;
    let init = initial_ideal(ideal, w)?;
    let trop_init = tropical_subfan(&init)?;
    let gf = trop.parent();
    let mut inclusion = true;
    for &i in trop_init.members() {
        let v = trop_init.parent().cones()[i].weight.vector();
        let mut k = BigInt::one();
        let cone = loop {
            let p = WeightVector::new(w.vector().scaled(&k).add(v))?;
            let c = gf
                .locate(&p)
                .ok_or_else(|| Error::Internal(format!("{p} lies outside the Gröbner fan")))?;
            if gf.cones()[c].cone.contains(w.vector()) {
                break c;
            }
            k *= 2;
        };
        inclusion &= trop.is_member(cone);
    }
    let dim_tv = trop.dim().unwrap_or(0);
    let dim_tv_initial = trop_init.dim().unwrap_or(0);
    Ok(InitialDimensionReport {
        dim_tv,
        dim_tv_initial,
        equal: dim_tv == dim_tv_initial,
        inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::polyhedra::cone_from_i64;

    fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
        Ideal::new(
            vars.len(),
            gens.iter()
                .map(|g| parse_polynomial(g, vars).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_i64(v).unwrap()
    }

    const XY: [&str; 2] = ["x", "y"];
    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn membership_examples() {
        let i = ideal(&["x + y"], &XY);
        assert!(in_tropical(&i, &w(&[1, 1])).unwrap());
        assert!(!in_tropical(&i, &w(&[1, 2])).unwrap());
        let j = ideal(&["x", "y^2 - 1"], &XY);
        for v in [[0, 0], [1, 1], [2, 1], [0, 3]] {
            assert!(!in_tropical(&j, &w(&v)).unwrap());
        }
    }

    #[test]
    fn diagonal_ray() {
        let t = tropical_subfan(&ideal(&["x + y"], &XY)).unwrap();
        assert_eq!(t.members().len(), 2);
        assert!(t.contains_origin());
        assert_eq!(t.dim(), Some(1));
        let diag = t
            .parent()
            .fan()
            .index_of(&cone_from_i64(2, &[&[1, 1]]).unwrap())
            .unwrap();
        assert!(t.is_member(diag));
    }

    #[test]
    fn hyperplane_minimum_attained_twice() {
        let t = tropical_subfan(&ideal(&["x + y + z"], &XYZ)).unwrap();
        assert_eq!(t.dim(), Some(2));
        for (i, c) in t.parent().cones().iter().enumerate() {
            let v = c.weight.vector().to_i64_vec().unwrap();
            let m = *v.iter().min().unwrap();
            let twice = v.iter().filter(|&&e| e == m).count() >= 2;
            assert_eq!(t.is_member(i), twice, "{}", c.cone);
        }
    }

    #[test]
    fn monomial_ideal_is_empty() {
        let t = tropical_subfan(&ideal(&["x*y", "y^3"], &XY)).unwrap();
        assert!(t.is_empty());
        assert!(!t.contains_origin());
        assert_eq!(t.dim(), None);
    }

    #[test]
    fn bieri_groves_examples() {
        let r = check_bieri_groves(&ideal(&["x + y + z"], &XYZ)).unwrap();
        assert_eq!(
            (r.dim_tv, r.dim_v, r.equal, r.prime_verified),
            (2, 2, true, true)
        );
        let r = check_bieri_groves(&ideal(&["x + y"], &XY)).unwrap();
        assert_eq!((r.dim_tv, r.dim_v), (1, 1));
        assert!(check_bieri_groves(&ideal(&["x*y"], &XY)).is_err());
    }

    #[test]
    fn initial_dimension_examples() {
        let i = ideal(&["x + y"], &XY);
        let r = check_initial_dimension(&i, &w(&[1, 1])).unwrap();
        assert!(r.equal && r.inclusion);
        let r = check_initial_dimension(&i, &WeightVector::zero(2)).unwrap();
        assert!(r.equal && r.inclusion);
        assert!(check_initial_dimension(&i, &w(&[1, 2])).is_err());
        // (1,1,0) lies in TV(x + y) but not in TV(x + y + z)
        let plane = ideal(&["x + y + z"], &XYZ);
        let r = check_initial_dimension(&plane, &w(&[0, 0, 1])).unwrap();
        assert!(r.equal && r.inclusion);
    }
}
