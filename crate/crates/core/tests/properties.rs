mod common;

use nndtoric::exact::{
    hermite_normal_form, inverse_unimodular, is_unimodular, IntMatrix, IntVector, Rational,
};
use nndtoric::groebner::{
    buchberger, groebner_fan, initial_ideal, normal_form, weighted_order, Ideal, TermOrder,
};
use nndtoric::poly::{
    dual_fan, initial_form, monomial_substitute, monomial_substitute_laurent, parse_polynomial,
    ExponentVector, Polynomial, Printer, WeightVector,
};
use nndtoric::polyhedra::{regular_refinement, Cone};
use nndtoric::toric::{atlas, ToricChart};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn polynomial(n: usize, max_terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=deg, n), -9i64..=9),
        1..=max_terms,
    )
    .prop_filter_map("zero or constant", move |terms| {
        let f = Polynomial::from_terms(
            n,
            terms.into_iter().map(|(e, c)| {
                (
                    ExponentVector::new(e),
                    Rational::from_integer(BigInt::from(c)),
                )
            }),
        );
        (!f.is_zero() && !f.is_constant()).then_some(f)
    })
}

fn weight(n: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0i64..=6, n).prop_map(|w| WeightVector::from_i64(&w).unwrap())
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    any::<u64>().prop_map(move |s| random_unimodular(&mut ChaCha8Rng::seed_from_u64(s), n))
}

fn ideal_in(n: usize) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(polynomial(n, 3, 2), 1..=2).prop_map(move |g| Ideal::new(n, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hermite_form_is_a_unimodular_transform(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=4)) {
        let a = IntMatrix::from_rows_i64(&rows).unwrap();
        let (h, u) = hermite_normal_form(&a).unwrap();
        prop_assert!(is_unimodular(&u).unwrap());
        prop_assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn inverse_of_a_unimodular_matrix(m in unimodular(4)) {
        let inv = inverse_unimodular(&m).unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn double_dual(gens in prop::collection::vec(prop::collection::vec(0i64..=4, 3), 1..=5)) {
        let gens: Vec<IntVector> = gens.iter().map(|g| IntVector::from_i64(g)).collect();
        let c = Cone::from_generators(3, &gens).unwrap();
        prop_assert_eq!(c.dual().dual(), c.clone());
        for r in c.rays() {
            prop_assert!(c.contains(r));
        }
    }

    #[test]
    fn substitutions_compose(f in polynomial(3, 5, 3), a in unimodular(3), b in unimodular(3)) {
        let once = monomial_substitute_laurent(&f, &b.mul(&a).unwrap()).unwrap();
        let inner = monomial_substitute_laurent(&f, &a).unwrap();
        let twice: Vec<_> = inner.terms().map(|(e, c)| {
            let v = b.apply(&IntVector::from_i64(e)).unwrap().to_i64_vec().unwrap();
            (v, c.clone())
        }).collect();
        let mut once: Vec<_> = once.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut twice = twice;
        once.sort();
        twice.sort();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn initial_forms_are_multiplicative(f in polynomial(3, 4, 3), g in polynomial(3, 4, 3), w in weight(3)) {
        let lhs = initial_form(&(&f * &g), &w).unwrap();
        let rhs = &initial_form(&f, &w).unwrap() * &initial_form(&g, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printing_round_trips(f in polynomial(3, 6, 4)) {
        let names = ["a", "b", "c"];
        let text = Printer::new(&names).print(&f);
        prop_assert_eq!(parse_polynomial(&text, &names).unwrap(), f);
    }

    #[test]
    fn principal_fan_is_the_dual_fan(f in polynomial(2, 5, 4)) {
        let gf = groebner_fan(&Ideal::new(2, vec![f.clone()]).unwrap()).unwrap();
        prop_assert_eq!(gf.fan(), &dual_fan(&f).unwrap());
    }

    #[test]
    fn bases_under_different_orders_agree(i in ideal_in(3), w in weight(3)) {
        let lex = buchberger(&i, &TermOrder::Lex).unwrap();
        let local = buchberger(&i, &weighted_order(&w)).unwrap();
        for g in i.generators() {
            prop_assert!(normal_form(g, &lex).unwrap().is_zero());
            prop_assert!(normal_form(g, &local).unwrap().is_zero());
        }
        let a = Ideal::new(3, lex.polynomials()).unwrap();
        let b = Ideal::new(3, local.polynomials()).unwrap();
        prop_assert!(a.same_ideal(&b).unwrap());
        prop_assert!(a.same_ideal(&i).unwrap());
    }

    #[test]
    fn fan_cells_cover_the_orthant(i in ideal_in(2), w in weight(2)) {
        let gf = groebner_fan(&i).unwrap();
        let k = gf.locate(&w).unwrap();
        let cone = &gf.cones()[k];
        prop_assert!(cone.cone.relative_interior_contains(w.vector()));
        prop_assert!(initial_ideal(&i, &w).unwrap().same_ideal(&cone.initial_ideal).unwrap());
    }

    #[test]
    fn refined_charts_glue(f in polynomial(3, 4, 3)) {
        let refined = regular_refinement(&dual_fan(&f).unwrap()).unwrap();
        let (charts, transitions) = atlas(&refined).unwrap();
        for t in &transitions {
            let to = charts[t.to].pullback(&f).unwrap();
            let from = charts[t.from].pullback(&f).unwrap();
            let moved = monomial_substitute_laurent(&to, &t.matrix).unwrap();
            prop_assert_eq!(moved.to_polynomial().unwrap(), from);
        }
        for chart in &charts {
            prop_assert_eq!(chart.pullback(&f).unwrap(), monomial_substitute(&f, &chart.matrix().transpose()).unwrap());
        }
    }

    #[test]
    fn unimodular_columns_give_a_chart(m in unimodular(3)) {
        let chart = ToricChart::new(m.clone());
        let in_orthant = m.column_vectors().iter().all(IntVector::is_nonnegative);
        prop_assert!(chart.is_ok());
        if in_orthant {
            let c = chart.unwrap();
            prop_assert!(c.cone().is_regular());
            prop_assert!(c.cone().is_full_dimensional());
        }
    }
}
