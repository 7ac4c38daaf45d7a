//! Newton non-degeneracy, for ideals and for complete intersections.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::groebner::{
    jacobian_minors, krull_dimension, singular_locus_in_torus, torus_empty, Ideal, Purity,
};
use crate::poly::{dual_fan, initial_form, Polynomial, Printer, WeightVector};
use crate::polyhedra::{common_refinement, Cone};
use crate::tropical::tropical_subfan;

#[derive(Clone, Debug)]
pub struct NndConeVerdict {
    /// Index into the Gröbner fan's cones.
    pub index: usize,
    pub cone: Cone,
    pub weight: WeightVector,
    pub initial_ideal: Ideal,
    pub smooth: bool,
    pub purity: Purity,
}

#[derive(Clone, Debug)]
pub struct NndReport {
    pub nondegenerate: bool,
    /// One verdict per cone of the tropical variety.
    pub cones: Vec<NndConeVerdict>,
    /// Position in `cones` of a singular initial ideal on a cone of largest dimension.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NndConeData {
    pub index: usize,
    pub rays: Vec<IntVector>,
    pub weight: WeightVector,
    pub initial_ideal: Vec<String>,
    pub smooth: bool,
    pub purity: Purity,
}

#[derive(Clone, Debug, Serialize)]
pub struct NndData {
    pub nondegenerate: bool,
    pub witness: Option<WeightVector>,
    pub cones: Vec<NndConeData>,
}

impl NndReport {
    pub fn witness_weight(&self) -> Option<&WeightVector> {
        self.witness.map(|i| &self.cones[i].weight)
    }

    pub fn to_data(&self, printer: &Printer) -> NndData {
        NndData {
            nondegenerate: self.nondegenerate,
            witness: self.witness_weight().cloned(),
            cones: self
                .cones
                .iter()
                .map(|c| NndConeData {
                    index: c.index,
                    rays: c.cone.rays().to_vec(),
                    weight: c.weight.clone(),
                    initial_ideal: c
                        .initial_ideal
                        .generators()
                        .iter()
                        .map(|g| printer.print(g))
                        .collect(),
                    smooth: c.smooth,
                    purity: c.purity,
                })
                .collect(),
        }
    }
}

/// Checks that `𝕴n_ω I` is smooth in the torus for one `ω` per cone of `TV(I)`,
/// the zero cone included.
pub fn is_newton_nondegenerate(ideal: &Ideal) -> Result<NndReport> {
    let trop = tropical_subfan(ideal)?;
    let fan = trop.parent();
    let cones = trop
        .members()
        .par_iter()
        .map(|&i| {
            let c = &fan.cones()[i];
            let report = singular_locus_in_torus(&c.initial_ideal)?;
            Ok(NndConeVerdict {
                index: i,
                cone: c.cone.clone(),
                weight: c.weight.clone(),
                initial_ideal: c.initial_ideal.clone(),
                smooth: report.smooth_in_torus,
                purity: report.purity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = cones
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.smooth)
        .min_by_key(|(i, c)| (std::cmp::Reverse(c.cone.dim()), *i))
        .map(|(i, _)| i);
    Ok(NndReport {
        nondegenerate: witness.is_none(),
        cones,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct CiConeVerdict {
    pub cone: Cone,
    pub weight: WeightVector,
    pub initial_forms: Vec<Polynomial>,
    /// `None` when the initial forms have no common zero.
    pub dimension: Option<usize>,
    pub dimension_ok: bool,
    pub smooth: bool,
}

#[derive(Clone, Debug)]
pub struct CiReport {
    pub nondegenerate: bool,
    /// One verdict per cone of the common refinement of the dual fans.
    pub cones: Vec<CiConeVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CiConeData {
    pub rays: Vec<IntVector>,
    pub weight: WeightVector,
    pub initial_forms: Vec<String>,
    pub dimension: Option<usize>,
    pub dimension_ok: bool,
    pub smooth: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CiData {
    pub nondegenerate: bool,
    pub cones: Vec<CiConeData>,
}

impl CiReport {
    pub fn to_data(&self, printer: &Printer) -> CiData {
        CiData {
            nondegenerate: self.nondegenerate,
            cones: self
                .cones
                .iter()
                .map(|c| CiConeData {
                    rays: c.cone.rays().to_vec(),
                    weight: c.weight.clone(),
                    initial_forms: c.initial_forms.iter().map(|g| printer.print(g)).collect(),
                    dimension: c.dimension,
                    dimension_ok: c.dimension_ok,
                    smooth: c.smooth,
                })
                .collect(),
        }
    }
}

/// Generator-dependent non-degeneracy of `V(f1, …, fk)`: for every `ω`, the initial
/// forms cut out a variety of dimension `n − k` that is smooth in the torus.
pub fn is_nnd_complete_intersection(fs: &[Polynomial]) -> Result<CiReport> {
    let n = fs
        .first()
        .ok_or_else(|| Error::domain("empty generator list"))?
        .nvars();
    let k = fs.len();
    if k > n {
        return Err(Error::shape(format!("{k} generators in {n} variables")));
    }
    if fs.iter().any(|f| f.nvars() != n || f.is_zero()) {
        return Err(Error::domain("generators must be nonzero and share a ring"));
    }
    let mut fan = dual_fan(&fs[0])?;
    for f in &fs[1..] {
        fan = common_refinement(&fan, &dual_fan(f)?)?;
    }
    let cones = fan
        .cones()
        .par_iter()
        .map(|cone| {
            let weight = WeightVector::new(cone.interior_point_or_origin())?;
            let forms = fs
                .iter()
                .map(|f| initial_form(f, &weight))
                .collect::<Result<Vec<_>>>()?;
            let ideal = Ideal::new(n, forms.clone())?;
            let dimension = if ideal.is_unit()? {
                None
            } else {
                Some(krull_dimension(&ideal)?)
            };
            let mut system = forms.clone();
            system.extend(jacobian_minors(&forms, k));
            let smooth = torus_empty(n, &system, ideal.budget().max_steps)?;
            Ok(CiConeVerdict {
                cone: cone.clone(),
                weight,
                initial_forms: forms,
                dimension,
                dimension_ok: dimension == Some(n - k),
                smooth,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CiReport {
        nondegenerate: cones.iter().all(|c| c.dimension_ok && c.smooth),
        cones,
    })
}
