mod common;

use nndtoric::groebner::{groebner_fan, krull_dimension, singular_locus_in_torus, Budget, Purity};
use nndtoric::poly::{Printer, WeightVector};
use nndtoric::polyhedra::{validate_fan, Cone};
use nndtoric::toric::{orbit_meets_strict_transform, resolve};
use nndtoric::tropical::{check_initial_dimension, tropical_subfan};
use nndtoric::Error;

use common::*;

#[test]
fn twisted_cubic_is_resolved() {
    let i = ideal(&["x*z - y^2", "x*w - y*z", "y*w - z^2"], 4);
    assert_eq!(krull_dimension(&i).unwrap(), 2);
    let r = resolve(&i).unwrap();
    assert!(r.nnd.nondegenerate);
    assert!(r.resolved());
    let refined = r.refinement.as_ref().unwrap();
    assert!(refined.is_regular());
    let maximal: Vec<Cone> = refined.maximal_cones().into_iter().cloned().collect();
    validate_fan(4, &maximal).unwrap();
}

#[test]
fn every_suite_fan_is_a_valid_fan() {
    for (name, i) in suite() {
        let gf = groebner_fan(&i).unwrap();
        validate_fan(i.nvars(), gf.cells()).unwrap_or_else(|e| panic!("{name}: {e}"));
        for &(a, b) in gf.adjacency() {
            let meet = gf.cells()[a].intersection(&gf.cells()[b]).unwrap();
            assert_eq!(
                meet.dim() + 1,
                i.nvars(),
                "{name}: cells {a} and {b} do not share a facet"
            );
        }
    }
}

#[test]
fn tropical_varieties_are_closed_under_faces() {
    for (name, i) in suite() {
        let tv = tropical_subfan(&i).unwrap();
        let cones = tv.parent().cones();
        for &k in tv.members() {
            for (j, other) in cones.iter().enumerate() {
                if other.cone.is_face_of(&cones[k].cone) {
                    assert!(
                        tv.is_member(j),
                        "{name}: face {} of member {} is missing",
                        other.cone,
                        cones[k].cone
                    );
                }
            }
        }
    }
}

#[test]
fn initial_tropical_dimension() {
    for (name, i) in prime_suite() {
        let tv = tropical_subfan(&i).unwrap();
        for &k in tv.members() {
            let w = &tv.parent().cones()[k].weight;
            let r = check_initial_dimension(&i, w).unwrap();
            assert!(r.equal && r.inclusion, "{name} at {w}: {r:?}");
        }
    }
    let line = ideal(&["x + y"], 2);
    assert!(matches!(
        check_initial_dimension(&line, &WeightVector::from_i64(&[1, 0]).unwrap()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn orbit_theorem_on_the_surface() {
    let i = surface();
    let r = resolve(&i).unwrap();
    let refined = r.refinement.as_ref().unwrap();
    for tau in refined.cones().iter().step_by(7) {
        let check = orbit_meets_strict_transform(&i, refined, tau).unwrap();
        assert!(check.agree, "{tau}: {check:?}");
    }
}

#[test]
fn initial_ideals_of_the_surface_are_smooth_and_pure() {
    let i = surface();
    let tv = tropical_subfan(&i).unwrap();
    for &k in tv.members() {
        let report = singular_locus_in_torus(&tv.parent().cones()[k].initial_ideal).unwrap();
        assert!(report.smooth_in_torus);
        assert_eq!(report.dimension, Some(2));
        assert_eq!(report.purity, Purity::Consistent);
    }
}

#[test]
fn reports_are_deterministic() {
    let printer = Printer::new(&VARS);
    let a = serde_json::to_string(&resolve(&surface()).unwrap().to_data(&printer)).unwrap();
    let b = serde_json::to_string(&resolve(&surface()).unwrap().to_data(&printer)).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["resolved"], true);
}

#[test]
fn cone_budget_is_a_resource_error() {
    let i = surface().with_budget(Budget {
        max_cones: 3,
        ..Budget::default()
    });
    assert!(matches!(groebner_fan(&i), Err(Error::Resource(_))));
    assert!(matches!(resolve(&i), Err(Error::Resource(_))));
}
