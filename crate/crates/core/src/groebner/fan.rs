//! Gröbner fan restricted to the first orthant, by facet-flip traversal.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{
    buchberger, groebner_cone, weighted_order, Ideal, MarkedBasisData, MarkedGroebnerBasis,
};
use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::poly::{Polynomial, Printer, WeightVector};
use crate::polyhedra::{Cone, Fan, FanData};

const MAX_FLIP_DOUBLINGS: u32 = 64;

/// A cone of the Gröbner fan with its initial ideal.
#[derive(Clone, Debug)]
pub struct GroebnerCone {
    pub cone: Cone,
    /// Relative-interior representative.
    pub weight: WeightVector,
    /// Index (into the maximal cells) of a cell containing the cone.
    pub cell: usize,
    pub initial_ideal: Ideal,
}

/// The fan together with the basis of each maximal cell.
#[derive(Debug)]
pub struct GroebnerFan {
    fan: Fan,
    cones: Vec<GroebnerCone>,
    cells: Vec<Cone>,
    bases: Vec<Arc<MarkedGroebnerBasis>>,
    adjacency: Vec<(usize, usize)>,
}

impl GroebnerFan {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// One entry per cone of [`GroebnerFan::fan`], in the same order.
    pub fn cones(&self) -> &[GroebnerCone] {
        &self.cones
    }

    /// Full-dimensional cells in canonical order.
    pub fn cells(&self) -> &[Cone] {
        &self.cells
    }

    pub fn cell_basis(&self, cell: usize) -> &Arc<MarkedGroebnerBasis> {
        &self.bases[cell]
    }

    /// Pairs of cells sharing a facet.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Index of the cone whose relative interior contains `w`.
    pub fn locate(&self, w: &WeightVector) -> Option<usize> {
        self.fan.locate(w.vector())
    }

    /// Some cell containing `cone`.
    pub fn cell_containing(&self, cone: &Cone) -> Option<usize> {
        self.cells.iter().position(|c| c.contains_cone(cone))
    }

    pub fn to_data(&self, printer: &Printer) -> GroebnerFanData {
        GroebnerFanData {
            fan: self.fan.to_data(),
            cells: self
                .cells
                .iter()
                .zip(&self.bases)
                .map(|(c, b)| CellData {
                    rays: c.rays().to_vec(),
                    basis: b.to_data(printer),
                })
                .collect(),
            cones: self
                .cones
                .iter()
                .map(|c| ConeData {
                    rays: c.cone.rays().to_vec(),
                    weight: c.weight.clone(),
                    initial_ideal: c
                        .initial_ideal
                        .generators()
                        .iter()
                        .map(|g| printer.print(g))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellData {
    pub rays: Vec<IntVector>,
    pub basis: MarkedBasisData,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeData {
    pub rays: Vec<IntVector>,
    pub weight: WeightVector,
    pub initial_ideal: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerFanData {
    pub fan: FanData,
    pub cells: Vec<CellData>,
    pub cones: Vec<ConeData>,
}

struct Cell {
    cone: Cone,
    basis: Arc<MarkedGroebnerBasis>,
}

fn cell_at(ideal: &Ideal, w: &IntVector) -> Result<Cell> {
    let basis = buchberger(ideal, &weighted_order(&WeightVector::new(w.clone())?))?;
    let cone = groebner_cone(&basis)?;
    Ok(Cell { cone, basis })
}

fn is_coordinate(a: &IntVector) -> bool {
    a.entries().iter().filter(|e| !e.is_zero()).count() == 1 && a.is_nonnegative()
}

/// The cell on the other side of the facet with inner normal `a`.
fn flip(ideal: &Ideal, from: &Cone, a: &IntVector) -> Result<Cell> {
    let n = from.ambient_dim();
    let facet: Vec<&IntVector> = from.rays().iter().filter(|r| r.dot(a).is_zero()).collect();
    let mut p = IntVector::zero(n);
    for r in facet {
        p = p.add(r);
    }
    let mut k = BigInt::from(1);
    for _ in 0..MAX_FLIP_DOUBLINGS {
        let q = p.scaled(&k).sub(a);
        if q.entries().iter().all(|e| e.is_positive()) {
            let cell = cell_at(ideal, &q)?;
            if cell.cone.dim() == n && cell.cone != *from && cell.cone.contains(&p) {
                return Ok(cell);
            }
        }
        k *= 2;
    }
    Err(Error::Internal(format!(
        "facet flip across {a} did not settle"
    )))
}

type Traversal = (Vec<Cell>, Vec<(usize, usize)>);

fn traverse(ideal: &Ideal) -> Result<Traversal> {
    let n = ideal.nvars();
    let start = cell_at(ideal, &IntVector::from_i64(&vec![1; n]))?;
    if start.cone.dim() != n {
        return Err(Error::Internal(
            "starting Gröbner cone is not full-dimensional".into(),
        ));
    }
    let max_cones = ideal.budget().max_cones;
    let mut index: BTreeMap<Cone, usize> = BTreeMap::new();
    index.insert(start.cone.clone(), 0);
    let mut cells = vec![start];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let tasks: Vec<(usize, IntVector)> = frontier
            .iter()
            .flat_map(|&i| {
                cells[i]
                    .cone
                    .facets()
                    .iter()
                    .filter(|a| !is_coordinate(a))
                    .map(move |a| (i, a.clone()))
            })
            .collect();
        let flipped: Vec<Result<Cell>> = tasks
            .par_iter()
            .map(|(i, a)| flip(ideal, &cells[*i].cone, a))
            .collect();
        let mut next = Vec::new();
        for ((i, _), cell) in tasks.iter().zip(flipped) {
            let cell = cell?;
            let j = match index.get(&cell.cone) {
                Some(&j) => j,
                None => {
                    let j = cells.len();
                    if j >= max_cones {
                        return Err(Error::Resource(format!(
                            "Gröbner fan traversal exceeded {max_cones} maximal cones; partial fan discarded"
                        )));
                    }
                    index.insert(cell.cone.clone(), j);
                    cells.push(cell);
                    next.push(j);
                    j
                }
            };
            edges.push((*i.min(&j), *i.max(&j)));
        }
        frontier = next;
    }
    edges.sort();
    edges.dedup();
    Ok((cells, edges))
}

/// Gröbner fan of `I` inside the first orthant, with the initial ideal of every cone. Cached on the ideal.
pub fn groebner_fan(ideal: &Ideal) -> Result<Arc<GroebnerFan>> {
    if let Some(f) = ideal.read_cache(|c| c.fan.clone()) {
        return Ok(f);
    }
    let n = ideal.nvars();
    let (cells, edges) = traverse(ideal)?;
    // canonical cell order
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| cells[a].cone.cmp(&cells[b].cone));
    let mut rank = vec![0; cells.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut adjacency: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (rank[a].min(rank[b]), rank[a].max(rank[b])))
        .collect();
    adjacency.sort();
    let mut slots: Vec<Option<Cell>> = cells.into_iter().map(Some).collect();
    let sorted: Vec<Cell> = order
        .iter()
        .map(|&i| slots[i].take().expect("permutation"))
        .collect();
    let cell_cones: Vec<Cone> = sorted.iter().map(|c| c.cone.clone()).collect();
    let bases: Vec<Arc<MarkedGroebnerBasis>> = sorted.into_iter().map(|c| c.basis).collect();

    let fan = Fan::from_cones(n, &cell_cones)?;
    let cones = fan
        .cones()
        .par_iter()
        .map(|cone| {
            let point = cone.interior_point_or_origin();
            let weight = WeightVector::new(point)?;
            let cell = cell_cones
                .iter()
                .position(|c| c.contains_cone(cone))
                .ok_or_else(|| Error::Internal(format!("cone {cone} lies in no cell")))?;
            let forms = bases[cell].initial_forms(&weight)?;
            Ok(GroebnerCone {
                cone: cone.clone(),
                weight,
                cell,
                initial_ideal: Ideal::new(n, forms)?.with_budget(ideal.budget()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gf = Arc::new(GroebnerFan {
        fan,
        cones,
        cells: cell_cones,
        bases,
        adjacency,
    });
    ideal.write_cache(|c| c.fan = Some(gf.clone()));
    Ok(gf)
}

/// Generators whose initial forms generate `𝕴n_υ(I)` for every `υ ∈ σ`: the
/// reduced basis of a Gröbner cell containing `σ`.
pub fn adapted_generators(ideal: &Ideal, sigma: &Cone) -> Result<Vec<Polynomial>> {
    if sigma.ambient_dim() != ideal.nvars() {
        return Err(Error::shape("cone and ideal in different dimensions"));
    }
    let gf = groebner_fan(ideal)?;
    let cell = gf
        .cell_containing(sigma)
        .ok_or_else(|| Error::domain(format!("cone {sigma} is not contained in a Gröbner cone")))?;
    Ok(gf.bases[cell].polynomials())
}
