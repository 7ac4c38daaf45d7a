//! Toric modifications: charts, strict transforms, non-degeneracy and resolution.

mod nnd;
mod resolve;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{inverse_unimodular, is_unimodular, IntMatrix, IntVector};
use crate::groebner::{adapted_generators, engine, torus_empty, Ideal};
use crate::poly::{
    factor_vertex, monomial_substitute, ExponentVector, Polynomial, Printer, WeightVector,
};
use crate::polyhedra::{Cone, Fan};
use crate::tropical::in_tropical;

pub use nnd::{
    is_newton_nondegenerate, is_nnd_complete_intersection, CiConeVerdict, CiReport, NndConeVerdict,
    NndReport,
};
pub use resolve::{
    resolve, ChartReport, FaceCheck, OrbitVerdict, ResolutionData, ResolutionReport,
};

/// Affine chart `U_σ` of a regular cone, with the rays of `σ` as the columns of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricChart {
    sigma: Cone,
    m: IntMatrix,
}

impl ToricChart {
    /// The columns of `m` must form a lattice basis.
    pub fn new(m: IntMatrix) -> Result<ToricChart> {
        if !m.is_square() || !is_unimodular(&m)? {
            return Err(Error::domain("chart matrix must be unimodular"));
        }
        Ok(ToricChart {
            sigma: Cone::from_matrix_columns(&m)?,
            m,
        })
    }

    /// Chart of a regular full-dimensional cone, columns in decreasing ray order
    /// (so the orthant gives the identity).
    pub fn from_cone(cone: &Cone) -> Result<ToricChart> {
        if !cone.is_full_dimensional() || !cone.is_regular() {
            return Err(Error::domain(format!(
                "{cone} is not a regular full-dimensional cone"
            )));
        }
        let mut rays = cone.rays().to_vec();
        rays.reverse();
        ToricChart::new(IntMatrix::from_columns(&rays)?)
    }

    pub fn cone(&self) -> &Cone {
        &self.sigma
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn nvars(&self) -> usize {
        self.m.rows()
    }

    /// `f ∘ φ_{Mᵗ}`, the expression of `f ∘ π` in the chart coordinates.
    pub fn pullback(&self, f: &Polynomial) -> Result<Polynomial> {
        monomial_substitute(f, &self.m.transpose())
    }

    /// The same chart with the rays of the face `tau` moved to the front.
    pub fn with_face_first(&self, tau: &Cone) -> Result<(ToricChart, OrbitDescriptor)> {
        let cols = self.m.column_vectors();
        let mut order: Vec<usize> = Vec::new();
        for r in tau.rays() {
            let j = cols
                .iter()
                .position(|c| c == r)
                .ok_or_else(|| Error::domain(format!("{tau} is not a face of {}", self.sigma)))?;
            order.push(j);
        }
        if !tau.lineality().is_empty() || !tau.is_face_of(&self.sigma) {
            return Err(Error::domain(format!(
                "{tau} is not a face of {}",
                self.sigma
            )));
        }
        let s = order.len();
        let rest: Vec<usize> = (0..cols.len()).filter(|j| !order.contains(j)).collect();
        order.extend(rest);
        let chart = ToricChart {
            sigma: self.sigma.clone(),
            m: self.m.permute_columns(&order),
        };
        Ok((
            chart,
            OrbitDescriptor {
                tau: tau.clone(),
                lambda: (0..s).collect(),
            },
        ))
    }

    /// Positions of the rays of the face `tau` among the columns.
    pub fn face_columns(&self, tau: &Cone) -> Option<Vec<usize>> {
        let cols = self.m.column_vectors();
        let mut out: Vec<usize> = tau
            .rays()
            .iter()
            .map(|r| cols.iter().position(|c| c == r))
            .collect::<Option<_>>()?;
        out.sort();
        Some(out)
    }
}

/// Change of coordinates `φ_{Mᵗ·(M′⁻¹)ᵗ}` from chart `from` to chart `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMap {
    pub from: usize,
    pub to: usize,
    pub matrix: IntMatrix,
}

fn transition(charts: &[ToricChart], from: usize, to: usize) -> Result<TransitionMap> {
    let m = &charts[from].m;
    let inv = inverse_unimodular(&charts[to].m)?;
    Ok(TransitionMap {
        from,
        to,
        matrix: m.transpose().mul(&inv.transpose())?,
    })
}

/// One chart per maximal cone and transitions in both directions between charts sharing a facet.
pub fn atlas(fan: &Fan) -> Result<(Vec<ToricChart>, Vec<TransitionMap>)> {
    let n = fan.ambient_dim();
    let maximal = fan.maximal_cones();
    let charts = maximal
        .iter()
        .map(|c| ToricChart::from_cone(c))
        .collect::<Result<Vec<_>>>()?;
    let mut transitions = Vec::new();
    for i in 0..charts.len() {
        for j in (i + 1)..charts.len() {
            if maximal[i].intersection(maximal[j])?.dim() + 1 == n {
                transitions.push(transition(&charts, i, j)?);
                transitions.push(transition(&charts, j, i)?);
            }
        }
    }
    Ok((charts, transitions))
}

/// `g ∘ φ_{Mᵗ} = x^P · h` with `h(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictTransformGenerator {
    pub g: Polynomial,
    pub p: ExponentVector,
    pub h: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictTransformChart {
    pub chart: ToricChart,
    pub generators: Vec<StrictTransformGenerator>,
}

impl StrictTransformChart {
    /// The generators `h` of `H_{G_σ}`.
    pub fn h_list(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|t| t.h.clone()).collect()
    }

    pub fn to_data(&self, source: &Printer, chart: &Printer) -> StrictTransformData {
        StrictTransformData {
            columns: self.chart.m.column_vectors(),
            generators: self
                .generators
                .iter()
                .map(|t| GeneratorData {
                    g: source.print(&t.g),
                    p: t.p.clone(),
                    h: chart.print(&t.h),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorData {
    pub g: String,
    pub p: ExponentVector,
    pub h: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictTransformData {
    /// Columns of `M`, i.e. the rays of the chart cone.
    pub columns: Vec<IntVector>,
    pub generators: Vec<GeneratorData>,
}

/// Names `z1, …, zn` for chart coordinates.
pub fn chart_printer(n: usize) -> Printer {
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    Printer::new(&names)
}

/// Pulls back adapted generators of `I` and splits off their monomial factors.
pub fn strict_transform_chart(ideal: &Ideal, chart: &ToricChart) -> Result<StrictTransformChart> {
    let gens = adapted_generators(ideal, chart.cone())?;
    let generators = gens
        .into_iter()
        .map(|g| {
            let pulled = chart.pullback(&g)?;
            let (p, h) = factor_vertex(&pulled).map_err(|_| {
                Error::Internal(format!(
                    "transform of {g} in chart {} has several vertices",
                    chart.cone()
                ))
            })?;
            Ok(StrictTransformGenerator { g, p, h })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrictTransformChart {
        chart: chart.clone(),
        generators,
    })
}

/// The orbit `O(τ)`, seen in a chart as `{x_i = 0 for i ∈ λ, x_i ≠ 0 otherwise}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDescriptor {
    pub tau: Cone,
    pub lambda: Vec<usize>,
}

/// Whether `V(H) ∩ O(τ) ≠ ∅`, for `τ` the face spanned by the columns `lambda`.
pub(crate) fn meets_orbit(
    st: &StrictTransformChart,
    lambda: &[usize],
    max_steps: u64,
) -> Result<bool> {
    let restricted: Vec<Polynomial> = st
        .generators
        .iter()
        .map(|t| t.h.substitute_zero(lambda))
        .collect();
    Ok(!torus_empty(st.chart.nvars(), &restricted, max_steps)?)
}

/// Whether `V(H)` meets `O(τ)` transversally: the Jacobian columns outside `lambda`
/// have rank `c` at every point of the intersection.
pub(crate) fn transversal_to_orbit(
    st: &StrictTransformChart,
    lambda: &[usize],
    c: usize,
    max_steps: u64,
) -> Result<bool> {
    let n = st.chart.nvars();
    let hs = st.h_list();
    let outside: Vec<usize> = (0..n).filter(|i| !lambda.contains(i)).collect();
    let mut system: Vec<Polynomial> = hs.iter().map(|h| h.substitute_zero(lambda)).collect();
    system.extend(
        crate::groebner::jacobian_minors_in(&hs, c, &outside)
            .iter()
            .map(|m| m.substitute_zero(lambda)),
    );
    system.retain(|p| !p.is_zero());
    if system.is_empty() {
        return Ok(false);
    }
    torus_empty(n, &system, max_steps)
}

/// Whether `H` together with its `c×c` Jacobian minors generates the unit ideal.
pub(crate) fn chart_is_smooth(st: &StrictTransformChart, c: usize, max_steps: u64) -> Result<bool> {
    let hs = st.h_list();
    let mut system = hs.clone();
    system.extend(crate::groebner::jacobian_minors(&hs, c));
    let order = engine::MonoOrder::DegRevLex;
    let gens: Vec<engine::EPoly> = system
        .iter()
        .map(|p| engine::EPoly::from_polynomial(p, &order))
        .collect();
    Ok(engine::is_unit_basis(&engine::groebner_basis(
        &gens, &order, max_steps,
    )?))
}

/// Agreement of the two sides of the orbit theorem for one cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    /// `τ ⊆ TV(I)`.
    pub tropical: bool,
    /// `V(H_{G_σ}) ∩ O(τ) ≠ ∅` in a chart containing `τ`.
    pub meets: bool,
    pub agree: bool,
}

/// Decides whether the strict transform meets `O(τ)` and compares with `τ ⊆ TV(I)`.
/// Disagreement is reported, not raised.
pub fn orbit_meets_strict_transform(ideal: &Ideal, fan: &Fan, tau: &Cone) -> Result<OrbitCheck> {
    if fan.index_of(tau).is_none() {
        return Err(Error::domain(format!("{tau} is not a cone of the fan")));
    }
    let sigma = fan
        .maximal_containing(tau)
        .map(|i| fan.cones()[i].clone())
        .ok_or_else(|| Error::Internal("cone without a maximal cone".into()))?;
    let (chart, orbit) = ToricChart::from_cone(&sigma)?.with_face_first(tau)?;
    let st = strict_transform_chart(ideal, &chart)?;
    let meets = meets_orbit(&st, &orbit.lambda, ideal.budget().max_steps)?;
    let tropical = in_tropical(ideal, &WeightVector::new(tau.interior_point_or_origin())?)?;
    Ok(OrbitCheck {
        tropical,
        meets,
        agree: tropical == meets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{monomial_substitute_laurent, newton_polyhedron, parse_polynomial};
    use crate::polyhedra::cone_from_i64;
    use num_traits::Zero;

    const XY: [&str; 2] = ["x", "y"];

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, &XY).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(2, gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    fn split() -> Fan {
        Fan::from_cones(
            2,
            &[
                cone_from_i64(2, &[&[1, 0], &[1, 1]]).unwrap(),
                cone_from_i64(2, &[&[1, 1], &[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn cols(c: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_columns(&c.iter().map(|v| IntVector::from_i64(v)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn orthant_atlas_is_the_identity() {
        let (charts, transitions) = atlas(&Fan::orthant_face_fan(3)).unwrap();
        assert_eq!(charts.len(), 1);
        assert!(charts[0].matrix().is_identity());
        assert!(transitions.is_empty());
        let f = parse_polynomial("x*y + z^2", &["x", "y", "z"]).unwrap();
        assert_eq!(charts[0].pullback(&f).unwrap(), f);
    }

    #[test]
    fn split_atlas_transitions() {
        let (charts, transitions) = atlas(&split()).unwrap();
        assert_eq!(charts.len(), 2);
        assert_eq!(transitions.len(), 2);
        let back = transitions[0].matrix.mul(&transitions[1].matrix).unwrap();
        assert!(back.is_identity());
        let f = p("x^2 + 3*x*y - y^5");
        for t in &transitions {
            let there = charts[t.to].pullback(&f).unwrap();
            let moved = monomial_substitute_laurent(&there, &t.matrix).unwrap();
            assert_eq!(
                moved.to_polynomial().unwrap(),
                charts[t.from].pullback(&f).unwrap()
            );
        }
    }

    #[test]
    fn non_regular_cone_is_rejected() {
        let fan = Fan::from_cones(2, &[cone_from_i64(2, &[&[1, 0], &[1, 2]]).unwrap()]).unwrap();
        assert!(atlas(&fan).is_err());
    }

    #[test]
    fn strict_transform_of_a_line() {
        let i = ideal(&["x + y"]);
        let chart = ToricChart::new(cols(&[&[1, 0], &[1, 1]])).unwrap();
        let st = strict_transform_chart(&i, &chart).unwrap();
        assert_eq!(st.generators.len(), 1);
        let t = &st.generators[0];
        // x ↦ z1·z2, y ↦ z2
        assert_eq!(t.p, ExponentVector::new(vec![0, 1]));
        assert_eq!(t.h, p("1 + x"));
        let bad = ToricChart::new(IntMatrix::identity(2)).unwrap();
        assert!(matches!(
            strict_transform_chart(&i, &bad),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reconstruction_identity_for_the_cusp() {
        let f = p("x^2 - y^3");
        let i = ideal(&["x^2 - y^3"]);
        let fan =
            crate::polyhedra::regular_refinement(&crate::poly::dual_fan(&f).unwrap()).unwrap();
        let (charts, _) = atlas(&fan).unwrap();
        for chart in &charts {
            let st = strict_transform_chart(&i, chart).unwrap();
            for t in &st.generators {
                let lhs = chart.pullback(&t.g).unwrap();
                assert_eq!(lhs, t.h.mul_monomial(&t.p));
                assert!(!t.h.constant_term().is_zero());
                assert!(newton_polyhedron(&lhs).unwrap().has_single_vertex());
            }
        }
    }

    #[test]
    fn monomial_ideal_charts_have_constant_h() {
        let i = ideal(&["x^2", "x*y"]);
        let (charts, _) = atlas(&Fan::orthant_face_fan(2)).unwrap();
        let st = strict_transform_chart(&i, &charts[0]).unwrap();
        assert!(st.generators.iter().all(|t| t.h.is_constant()));
    }

    #[test]
    fn orbit_examples() {
        let i = ideal(&["x + y"]);
        let fan = split();
        let diag =
            orbit_meets_strict_transform(&i, &fan, &cone_from_i64(2, &[&[1, 1]]).unwrap()).unwrap();
        assert!(diag.tropical && diag.meets);
        let e1 =
            orbit_meets_strict_transform(&i, &fan, &cone_from_i64(2, &[&[1, 0]]).unwrap()).unwrap();
        assert!(!e1.tropical && !e1.meets);
        let origin = orbit_meets_strict_transform(&i, &fan, &Cone::zero(2)).unwrap();
        assert!(origin.tropical && origin.meets);
        let off = cone_from_i64(2, &[&[1, 2]]).unwrap();
        assert!(orbit_meets_strict_transform(&i, &fan, &off).is_err());
    }

    #[test]
    fn face_first_permutes_columns() {
        let chart = ToricChart::new(cols(&[&[1, 0], &[1, 1]])).unwrap();
        let tau = cone_from_i64(2, &[&[1, 1]]).unwrap();
        let (c, o) = chart.with_face_first(&tau).unwrap();
        assert_eq!(c.matrix().column(0), IntVector::from_i64(&[1, 1]));
        assert_eq!(o.lambda, vec![0]);
        assert_eq!(chart.face_columns(&tau), Some(vec![1]));
    }
}
