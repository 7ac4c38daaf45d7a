//! Double description: extreme rays and lineality space of `{x : A x ≥ 0, E x = 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{canonical_row_space, primitive, project_out, IntVector};

#[derive(Clone, Debug)]
pub(crate) struct VRep {
    /// Extreme rays, primitive, projected orthogonally to the lineality space, sorted.
    pub rays: Vec<IntVector>,
    /// Canonical basis of the lineality space.
    pub lineality: Vec<IntVector>,
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(bits: usize) -> Self {
        let mut b = Self::new(bits);
        for i in 0..bits {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        let len = self.0.len().max(other.0.len());
        BitSet(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0) & other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

struct Ray {
    v: IntVector,
    tight: BitSet,
}

fn combine(a: &BigInt, x: &IntVector, b: &BigInt, y: &IntVector) -> IntVector {
    // a·x - b·y, made primitive
    let v = IntVector::new(
        x.entries()
            .iter()
            .zip(y.entries())
            .map(|(xi, yi)| a * xi - b * yi)
            .collect(),
    );
    primitive(&v).unwrap_or(v)
}

/// Converts an H-description into rays plus lineality.
pub(crate) fn rays_of(n: usize, ineqs: &[IntVector], eqs: &[IntVector]) -> VRep {
    let mut lin: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();

    for e in eqs {
        if let Some(p) = lin.iter().position(|l| !e.dot(l).is_zero()) {
            let pivot = lin.swap_remove(p);
            let ep = e.dot(&pivot);
            for l in lin.iter_mut() {
                let el = e.dot(l);
                if !el.is_zero() {
                    *l = combine(&ep, l, &el, &pivot);
                }
            }
        }
    }

    let mut rays: Vec<Ray> = Vec::new();
    for (idx, a) in ineqs.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut pivot = lin.swap_remove(p);
            let mut ap = a.dot(&pivot);
            if ap.is_negative() {
                pivot = pivot.neg();
                ap = -ap;
            }
            for l in lin.iter_mut() {
                let al = a.dot(l);
                if !al.is_zero() {
                    *l = combine(&ap, l, &al, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let ar = a.dot(&r.v);
                if !ar.is_zero() {
                    r.v = combine(&ap, &r.v, &ar, &pivot);
                }
                r.tight.insert(idx);
            }
            let tight = if idx == 0 {
                BitSet::new(1)
            } else {
                BitSet::full(idx)
            };
            rays.push(Ray { v: pivot, tight });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(idx);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.intersect(&rays[q].tight);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                // (a·p)·q - (a·q)·p lies on the hyperplane a·x = 0
                let v = combine(&values[p], &rays[q].v, &values[q], &rays[p].v);
                let mut tight = common;
                tight.insert(idx);
                fresh.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.tight.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let lineality = canonical_row_space(&lin);
    let mut out: Vec<IntVector> = rays
        .into_iter()
        .filter_map(|r| project_out(&r.v, &lineality))
        .collect();
    out.sort();
    out.dedup();
    VRep {
        rays: out,
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn orthant_from_inequalities() {
        let r = rays_of(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])], &[]);
        assert_eq!(r.rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
        assert!(r.lineality.is_empty());
    }

    #[test]
    fn half_plane_has_lineality() {
        let r = rays_of(2, &[iv(&[1, 0])], &[]);
        assert_eq!(r.rays, vec![iv(&[1, 0])]);
        assert_eq!(r.lineality, vec![iv(&[0, 1])]);
    }

    #[test]
    fn square_cone_in_three_space() {
        // cone over a square: x ± y ≥ 0 type constraints with z
        let ineqs = [
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        let r = rays_of(3, &ineqs, &[]);
        assert_eq!(r.rays.len(), 4);
        for ray in &r.rays {
            let tight = ineqs.iter().filter(|a| a.dot(ray).is_zero()).count();
            assert_eq!(tight, 2);
        }
    }

    #[test]
    fn equations_cut_dimension() {
        let r = rays_of(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0])], &[iv(&[0, 0, 1])]);
        assert_eq!(r.rays, vec![iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
        assert!(r.lineality.is_empty());
    }

    #[test]
    fn infeasible_beyond_origin() {
        let r = rays_of(
            2,
            &[iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1]), iv(&[0, -1])],
            &[],
        );
        assert!(r.rays.is_empty());
        assert!(r.lineality.is_empty());
    }
}
