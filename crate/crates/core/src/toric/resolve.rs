//! The resolution pipeline and its per-chart certificates.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::nnd::{is_newton_nondegenerate, NndData, NndReport};
use super::{
    atlas, chart_is_smooth, chart_printer, meets_orbit, strict_transform_chart,
    transversal_to_orbit, StrictTransformChart, StrictTransformData,
};
use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::groebner::{groebner_fan, krull_dimension, GroebnerFan, Ideal};
use crate::poly::{Printer, WeightVector};
use crate::polyhedra::{regular_refinement, Cone, Fan, FanData};
use crate::tropical::{tropical_subfan, TropicalData, TropicalSubfan};

/// Orbit checks for one face of a chart cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    /// Index into the refinement's cones.
    pub cone: usize,
    /// Chart columns spanning the face.
    pub lambda: Vec<usize>,
    pub meets: bool,
    pub transversal: bool,
}

#[derive(Clone, Debug)]
pub struct ChartReport {
    pub strict_transform: StrictTransformChart,
    /// `H` plus the Jacobian minors generate the unit ideal.
    pub smooth: bool,
    pub faces: Vec<FaceCheck>,
}

impl ChartReport {
    pub fn transversal(&self) -> bool {
        self.faces.iter().all(|f| f.transversal)
    }
}

/// Both sides of the orbit theorem for one cone of the refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub index: usize,
    pub tau: Cone,
    pub tropical: bool,
    pub meets: bool,
    /// Charts in which the orbit was examined.
    pub charts: Vec<usize>,
    /// Every chart agrees with the tropical verdict.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub ideal: Ideal,
    pub dimension: usize,
    pub groebner_fan: Arc<GroebnerFan>,
    pub tropical: TropicalSubfan,
    pub nnd: NndReport,
    /// Absent when the ideal is degenerate.
    pub refinement: Option<Fan>,
    pub charts: Vec<ChartReport>,
    pub orbits: Vec<OrbitVerdict>,
}

impl ResolutionReport {
    pub fn all_charts_smooth(&self) -> bool {
        self.charts.iter().all(|c| c.smooth)
    }

    pub fn transversal(&self) -> bool {
        self.charts.iter().all(ChartReport::transversal)
    }

    pub fn orbits_consistent(&self) -> bool {
        self.orbits.iter().all(|o| o.consistent)
    }

    /// Non-degenerate, every chart smooth and transversal, and the orbit theorem confirmed.
    /// In that case the strict transform equals `V(H_{G_σ})` in every chart.
    pub fn resolved(&self) -> bool {
        self.nnd.nondegenerate
            && self.refinement.is_some()
            && self.all_charts_smooth()
            && self.transversal()
            && self.orbits_consistent()
    }

    pub fn to_data(&self, printer: &Printer) -> ResolutionData {
        let n = self.ideal.nvars();
        let zp = chart_printer(n);
        let refined = self.refinement.as_ref();
        ResolutionData {
            variables: printer.names().to_vec(),
            generators: self
                .ideal
                .generators()
                .iter()
                .map(|g| printer.print(g))
                .collect(),
            dimension: self.dimension,
            groebner_fan: self.groebner_fan.fan().to_data(),
            tropical: self.tropical.to_data(printer),
            nnd: self.nnd.to_data(printer),
            refinement: refined.map(Fan::to_data),
            charts: self
                .charts
                .iter()
                .map(|c| ChartData {
                    strict_transform: c.strict_transform.to_data(printer, &zp),
                    smooth: c.smooth,
                    transversal: c.transversal(),
                })
                .collect(),
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitData {
                    rays: o.tau.rays().to_vec(),
                    tropical: o.tropical,
                    meets: o.meets,
                    consistent: o.consistent,
                })
                .collect(),
            nondegenerate: self.nnd.nondegenerate,
            all_charts_smooth: self.all_charts_smooth(),
            transversal: self.transversal(),
            orbits_consistent: self.orbits_consistent(),
            resolved: self.resolved(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartData {
    pub strict_transform: StrictTransformData,
    pub smooth: bool,
    pub transversal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitData {
    pub rays: Vec<IntVector>,
    pub tropical: bool,
    pub meets: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionData {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub dimension: usize,
    pub groebner_fan: FanData,
    pub tropical: TropicalData,
    pub nnd: NndData,
    pub refinement: Option<FanData>,
    pub charts: Vec<ChartData>,
    pub orbits: Vec<OrbitData>,
    pub nondegenerate: bool,
    pub all_charts_smooth: bool,
    pub transversal: bool,
    pub orbits_consistent: bool,
    pub resolved: bool,
}

fn chart_report(ideal: &Ideal, fan: &Fan, sigma: &Cone, codim: usize) -> Result<ChartReport> {
    let chart = super::ToricChart::from_cone(sigma)?;
    let st = strict_transform_chart(ideal, &chart)?;
    let steps = ideal.budget().max_steps;
    let smooth = chart_is_smooth(&st, codim, steps)?;
    let faces = sigma
        .all_faces()?
        .iter()
        .map(|tau| {
            let cone = fan
                .index_of(tau)
                .ok_or_else(|| Error::Internal(format!("face {tau} missing from the fan")))?;
            let lambda = chart.face_columns(tau).ok_or_else(|| {
                Error::Internal(format!("face {tau} is not spanned by chart columns"))
            })?;
            Ok(FaceCheck {
                cone,
                meets: meets_orbit(&st, &lambda, steps)?,
                transversal: transversal_to_orbit(&st, &lambda, codim, steps)?,
                lambda,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartReport {
        strict_transform: st,
        smooth,
        faces,
    })
}

/// Gröbner fan, tropical variety and non-degeneracy; for a non-degenerate ideal
/// also the toric modification of a regular refinement with per-chart certificates.
pub fn resolve(ideal: &Ideal) -> Result<ResolutionReport> {
    if ideal.is_unit()? {
        return Err(Error::domain("the unit ideal defines no singularity"));
    }
    if ideal
        .generators()
        .iter()
        .any(|g| !g.constant_term().is_zero())
    {
        return Err(Error::domain("the origin is not on the variety"));
    }
    let n = ideal.nvars();
    let dimension = krull_dimension(ideal)?;
    let gf = groebner_fan(ideal)?;
    let tropical = tropical_subfan(ideal)?;
    let nnd = is_newton_nondegenerate(ideal)?;
    let mut report = ResolutionReport {
        ideal: ideal.clone(),
        dimension,
        groebner_fan: gf.clone(),
        tropical,
        nnd,
        refinement: None,
        charts: Vec::new(),
        orbits: Vec::new(),
    };
    if !report.nnd.nondegenerate {
        return Ok(report);
    }
    let refined = regular_refinement(gf.fan())?;
    let maximal = refined.maximal_cones();
    // validates regularity and full dimension of every chart cone
    atlas(&refined)?;
    let codim = n - dimension;
    let charts = maximal
        .par_iter()
        .map(|sigma| chart_report(ideal, &refined, sigma, codim))
        .collect::<Result<Vec<_>>>()?;

    let mut orbits = Vec::with_capacity(refined.len());
    for (index, tau) in refined.cones().iter().enumerate() {
        let w = tau.interior_point_or_origin();
        let located = gf
            .locate(&WeightVector::new(w)?)
            .ok_or_else(|| Error::Internal(format!("{tau} lies outside the Gröbner fan")))?;
        let tropical = report.tropical.is_member(located);
        let seen: Vec<(usize, bool)> = charts
            .iter()
            .enumerate()
            .filter_map(|(c, r)| {
                r.faces
                    .iter()
                    .find(|f| f.cone == index)
                    .map(|f| (c, f.meets))
            })
            .collect();
        let meets = seen.first().map(|s| s.1).unwrap_or(false);
        orbits.push(OrbitVerdict {
            index,
            tau: tau.clone(),
            tropical,
            meets,
            consistent: !seen.is_empty() && seen.iter().all(|s| s.1 == tropical),
            charts: seen.into_iter().map(|s| s.0).collect(),
        });
    }
    report.refinement = Some(refined);
    report.charts = charts;
    report.orbits = orbits;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
        Ideal::new(
            vars.len(),
            gens.iter()
                .map(|g| parse_polynomial(g, vars).unwrap())
                .collect(),
        )
        .unwrap()
    }

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn line_is_trivially_resolved() {
        let r = resolve(&ideal(&["x + y"], &XY)).unwrap();
        assert!(r.resolved());
        assert_eq!(r.charts.len(), 2);
    }

    #[test]
    fn cusp_is_resolved() {
        let r = resolve(&ideal(&["x^2 - y^3"], &XY)).unwrap();
        assert!(r.nnd.nondegenerate);
        assert!(r.refinement.as_ref().unwrap().is_regular());
        assert!(r.all_charts_smooth());
        assert!(r.orbits_consistent());
        assert!(r.resolved());
    }

    #[test]
    fn degenerate_input_stops_early() {
        let r = resolve(&ideal(&["x^2 + 2*x*y + y^2"], &XY)).unwrap();
        assert!(!r.resolved());
        assert!(r.refinement.is_none());
        assert!(r.nnd.witness.is_some());
    }

    #[test]
    fn preconditions() {
        assert!(resolve(&ideal(&["x + 1"], &XY)).is_err());
        assert!(resolve(&ideal(&["x", "x*y - 1"], &XY)).is_err());
    }

    #[test]
    fn report_serializes() {
        let r = resolve(&ideal(&["x^2 - y^3"], &XY)).unwrap();
        let data = r.to_data(&Printer::new(&XY));
        let json = serde_json::to_value(&data).unwrap();
        assert_eq!(json["resolved"], true);
        assert_eq!(json["variables"][1], "y");
    }
}
