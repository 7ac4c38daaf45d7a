//! Regular refinement of fans in two stages: a pulling triangulation that
//! makes every cone simplicial, then repeated stellar subdivision of the
//! lowest-dimensional non-regular cone at a point of its fundamental
//! parallelepiped.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cone::Cone;
use super::fan::Fan;
use crate::error::{Error, Result};
use crate::exact::{
    hermite_normal_form, lattice_index, primitive, saturated_basis, solve_row_combination,
    IntMatrix, IntVector, Rational,
};

/// Triangulates a strongly convex cone by pulling its rays in the given order.
/// Triangulations of shared faces agree because the order is global.
fn pulling_triangulation(
    cone: &Cone,
    order: &BTreeMap<IntVector, usize>,
) -> Result<Vec<Vec<IntVector>>> {
    if cone.is_zero() {
        return Ok(Vec::new());
    }
    if cone.is_simplicial() {
        return Ok(vec![cone.rays().to_vec()]);
    }
    let apex = cone
        .rays()
        .iter()
        .min_by_key(|r| order[*r])
        .expect("nonzero cone has rays")
        .clone();
    let mut out = Vec::new();
    for a in cone.facets() {
        if a.dot(&apex).is_zero() {
            continue;
        }
        let facet_rays: Vec<IntVector> = cone
            .rays()
            .iter()
            .filter(|r| a.dot(r).is_zero())
            .cloned()
            .collect();
        let facet = Cone::from_generators(cone.ambient_dim(), &facet_rays)?;
        for mut simplex in pulling_triangulation(&facet, order)? {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Nonzero lattice points `Σ λᵢ uᵢ` with `λᵢ ∈ [0,1)` of a simplicial cone,
/// returned as (coefficients, point), with the point primitive.
pub(crate) fn parallelepiped_points(rays: &[IntVector]) -> Result<Vec<(Vec<Rational>, IntVector)>> {
    let k = rays.len();
    let n = rays[0].len();
    let basis = saturated_basis(rays, n)?;
    if basis.len() != k {
        return Err(Error::domain("rays are linearly dependent"));
    }
    let coords: Vec<IntVector> = rays
        .iter()
        .map(|u| {
            let c = solve_row_combination(&basis, u)
                .ok_or_else(|| Error::Internal("ray outside its own saturated span".into()))?;
            Ok(IntVector::new(
                c.into_iter().map(|x| x.to_integer()).collect(),
            ))
        })
        .collect::<Result<_>>()?;
    let a = IntMatrix::from_rows(&coords)?;
    let (h, _) = hermite_normal_form(&a)?;
    let diag: Vec<BigInt> = (0..k).map(|i| h.get(i, i).clone()).collect();

    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); k];
    loop {
        if y.iter().any(|v| !v.is_zero()) {
            let lambda = solve_row_combination(&coords, &IntVector::new(y.clone()))
                .ok_or_else(|| Error::Internal("coset representative not in row span".into()))?;
            let frac: Vec<Rational> = lambda.iter().map(|l| l - l.floor()).collect();
            if frac.iter().any(|f| !f.is_zero()) {
                let mut p = vec![Rational::zero(); n];
                for (f, u) in frac.iter().zip(rays) {
                    for (pj, uj) in p.iter_mut().zip(u.entries()) {
                        *pj += f * BigRational::from_integer(uj.clone());
                    }
                }
                let p = IntVector::new(p.into_iter().map(|x| x.to_integer()).collect());
                let g = p.content();
                let frac: Vec<Rational> = frac
                    .into_iter()
                    .map(|f| f / BigRational::from_integer(g.clone()))
                    .collect();
                out.push((frac, primitive(&p)?));
            }
        }
        // odometer over the box ∏ [0, diag_i)
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by(|a, b| a.1.cmp(&b.1));
                out.dedup_by(|a, b| a.1 == b.1);
                return Ok(out);
            }
            y[i] += 1;
            if y[i] < diag[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
    }
}

struct Working {
    n: usize,
    rays: Vec<IntVector>,
    cells: BTreeSet<Vec<usize>>,
    index_cache: HashMap<Vec<usize>, BigInt>,
}

impl Working {
    fn ray_vectors(&self, ids: &[usize]) -> Vec<IntVector> {
        let mut v: Vec<IntVector> = ids.iter().map(|&i| self.rays[i].clone()).collect();
        v.sort();
        v
    }

    fn index(&mut self, face: &[usize]) -> Result<BigInt> {
        if let Some(i) = self.index_cache.get(face) {
            return Ok(i.clone());
        }
        let i = lattice_index(&self.ray_vectors(face))?;
        self.index_cache.insert(face.to_vec(), i.clone());
        Ok(i)
    }

    /// Lowest-dimensional non-regular face, ties broken by the sorted ray list.
    fn worst_face(&mut self) -> Result<Option<Vec<usize>>> {
        let mut faces: BTreeSet<(usize, Vec<IntVector>, Vec<usize>)> = BTreeSet::new();
        for cell in &self.cells {
            let k = cell.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| cell[i])
                    .collect();
                faces.insert((face.len(), self.ray_vectors(&face), face));
            }
        }
        for (_, _, face) in faces {
            if !self.index(&face)?.is_one() {
                return Ok(Some(face));
            }
        }
        Ok(None)
    }

    fn star_subdivide(&mut self, face: &[usize], v: IntVector) {
        let id = self.rays.len();
        self.rays.push(v);
        let affected: Vec<Vec<usize>> = self
            .cells
            .iter()
            .filter(|c| face.iter().all(|f| c.contains(f)))
            .cloned()
            .collect();
        for cell in affected {
            self.cells.remove(&cell);
            for t in face {
                let mut new: Vec<usize> = cell.iter().copied().filter(|c| c != t).collect();
                new.push(id);
                new.sort_unstable();
                self.cells.insert(new);
            }
        }
    }

    fn into_fan(self) -> Result<Fan> {
        let cones: Vec<Cone> = self
            .cells
            .iter()
            .map(|c| Cone::from_generators(self.n, &self.ray_vectors(c)))
            .collect::<Result<_>>()?;
        Fan::from_cones(self.n, &cones)
    }
}

/// A regular fan refining `fan` with the same support.
pub fn regular_refinement(fan: &Fan) -> Result<Fan> {
    let n = fan.ambient_dim();
    if fan.cones().iter().any(|c| !c.is_pointed()) {
        return Err(Error::domain(
            "regular refinement needs strongly convex cones",
        ));
    }
    let rays = fan.rays();
    let order: BTreeMap<IntVector, usize> = rays
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    let mut cells = BTreeSet::new();
    for cone in fan.maximal_cones() {
        for simplex in pulling_triangulation(cone, &order)? {
            let mut ids: Vec<usize> = simplex.iter().map(|r| order[r]).collect();
            ids.sort_unstable();
            cells.insert(ids);
        }
    }
    let mut w = Working {
        n,
        rays,
        cells,
        index_cache: HashMap::new(),
    };
    while let Some(face) = w.worst_face()? {
        let face_rays: Vec<IntVector> = face.iter().map(|&i| w.rays[i].clone()).collect();
        let index = w.index(&face)?;
        let best = parallelepiped_points(&face_rays)?
            .into_iter()
            .filter(|(l, _)| l.iter().all(|x| !x.is_zero()))
            .min_by(|a, b| {
                let ma = a.0.iter().max().cloned();
                let mb = b.0.iter().max().cloned();
                ma.cmp(&mb).then_with(|| a.1.cmp(&b.1))
            })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "non-regular cone with index {index} has no interior parallelepiped point"
                ))
            })?;
        w.star_subdivide(&face, best.1);
    }
    w.into_fan()
}
