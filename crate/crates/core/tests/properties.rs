//! Cross-module property tests: algebraic laws of the polynomial ring,
//! notation round-trips, symmetry invariance, and the skein relation on
//! randomly perturbed diagrams.

use knotforge_core::alexander::{canonical_alexander, knot_determinant};
use knotforge_core::compose::{connected_sum, default_splice};
use knotforge_core::conway::{
    conway_polynomial, conway_to_alexander, smooth_crossing, switch_crossing,
};
use knotforge_core::diagram::{Diagram, Sign};
use knotforge_core::laurent::LaurentPoly;
use knotforge_core::matrix::PolyMatrix;
use knotforge_core::notation::{emit_gauss, emit_pd, parse_gauss, parse_pd};
use knotforge_core::reidemeister::random_walk;
use knotforge_core::table;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(terms: Vec<(i64, i64)>) -> LaurentPoly {
    terms
        .into_iter()
        .map(|(e, c)| LaurentPoly::monomial(e, c))
        .fold(LaurentPoly::zero(), |acc, m| acc + m)
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-4i64..5), (-9i64..10)), 0..5).prop_map(poly)
}

fn random_poly(rng: &mut ChaCha8Rng, max_terms: usize) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    poly(
        (0..n)
            .map(|_| (rng.gen_range(-3..4), rng.gen_range(-5..6)))
            .collect(),
    )
}

/// Every catalogue knot after a short seeded move walk; exercises
/// non-alternating, non-canonical-looking diagrams of up to ~10 crossings.
fn walked_knots() -> Vec<Diagram> {
    table::names()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let d = table::get(name).unwrap();
            random_walk(&d, 4, 0xC0FFEE + i as u64)
        })
        .collect()
}

proptest! {
    #[test]
    fn ring_axioms_hold(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
    }

    #[test]
    fn display_and_parse_are_inverse(a in poly_strategy()) {
        let text = a.to_string();
        let back: LaurentPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), x in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)]) {
        let lhs = (&a * &b).eval_at_int(x).unwrap();
        let rhs = a.eval_at_int(x).unwrap() * b.eval_at_int(x).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&a + &b).eval_at_int(x).unwrap();
        let rhs = a.eval_at_int(x).unwrap() + b.eval_at_int(x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_normalization_is_idempotent_and_canonical(a in poly_strategy(), shift in -3i64..4, negate in any::<bool>()) {
        prop_assume!(!a.is_zero());
        let normalized = a.normalize_units().unwrap();
        prop_assert!(normalized.units_equal(&a));
        prop_assert_eq!(normalized.normalize_units().unwrap(), normalized.clone());
        prop_assert_eq!(normalized.min_exp(), Some(0));

        // Multiplying by a unit ±t^k never changes the normal form.
        let mut unit_multiple = a.mul_t_power(shift);
        if negate {
            unit_multiple = -unit_multiple;
        }
        prop_assert!(unit_multiple.units_equal(&a));
        prop_assert_eq!(unit_multiple.normalize_units().unwrap(), normalized);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.div_exact(&b).unwrap(), a);
    }
}

#[test]
fn bareiss_and_cofactor_determinants_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 1..=5usize {
        for _ in 0..(if n <= 4 { 12 } else { 4 }) {
            let rows: Vec<Vec<LaurentPoly>> = (0..n)
                .map(|_| (0..n).map(|_| random_poly(&mut rng, 3)).collect())
                .collect();
            let m = PolyMatrix::from_rows(rows).unwrap();
            assert_eq!(m.determinant(), m.cofactor_determinant());
        }
    }
}

/// Crossing ids in order of first appearance along the single strand,
/// which is the labelling Gauss emission uses.
fn first_appearance_relabel(d: &Diagram) -> Diagram {
    let n = d.crossing_count();
    let mut perm = vec![usize::MAX; n];
    let mut next = 0;
    for passage in &d.strands()[0] {
        if perm[passage.crossing] == usize::MAX {
            perm[passage.crossing] = next;
            next += 1;
        }
    }
    d.permute_crossings(&perm)
}

#[test]
fn notation_round_trips_on_walked_diagrams() {
    for d in walked_knots() {
        // PD codes keep crossing ids, so the round trip is exact.
        let pd = emit_pd(&d);
        let from_pd = parse_pd(&pd).unwrap();
        assert_eq!(from_pd, d, "pd round trip through {pd}");
        assert_eq!(emit_pd(&from_pd), pd, "pd emission is stable");

        // Gauss codes relabel by first appearance, so the round trip
        // reproduces exactly that relabelling of the diagram.
        let gauss = emit_gauss(&d).unwrap();
        let from_gauss = parse_gauss(&gauss).unwrap();
        assert_eq!(
            from_gauss,
            first_appearance_relabel(&d),
            "gauss round trip through {gauss}"
        );
        assert_eq!(emit_gauss(&from_gauss).unwrap(), gauss);
    }
}

#[test]
fn symmetries_preserve_the_polynomial() {
    for d in walked_knots() {
        let delta = canonical_alexander(&d).unwrap();
        let n = d.crossing_count();

        let reversed = canonical_alexander(&d.reverse()).unwrap();
        assert!(reversed.units_equal(&delta));

        let mirrored = d.mirror();
        assert_eq!(mirrored.writhe(), -d.writhe());
        assert!(canonical_alexander(&mirrored).unwrap().units_equal(&delta));

        if n > 0 {
            let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let permuted = d.permute_crossings(&rotation);
            assert!(canonical_alexander(&permuted).unwrap().units_equal(&delta));
            assert_eq!(
                knot_determinant(&permuted).unwrap(),
                knot_determinant(&d).unwrap()
            );
        }
    }
}

#[test]
fn skein_relation_holds_at_every_crossing() {
    for d in walked_knots()
        .into_iter()
        .filter(|d| d.crossing_count() <= 9)
    {
        let nabla = conway_polynomial(&d);
        for x in 0..d.crossing_count() {
            let switched = conway_polynomial(&switch_crossing(&d, x).unwrap());
            let smoothed = conway_polynomial(&smooth_crossing(&d, x).unwrap());
            let (positive, negative) = match d.crossings()[x].sign {
                Sign::Positive => (nabla.as_laurent().clone(), switched.as_laurent().clone()),
                Sign::Negative => (switched.as_laurent().clone(), nabla.as_laurent().clone()),
            };
            assert_eq!(
                positive - negative,
                LaurentPoly::t() * smoothed.as_laurent().clone(),
                "skein relation at crossing {x}"
            );
        }
    }
}

#[test]
fn knot_conway_polynomials_are_even_with_unit_constant_term() {
    for d in walked_knots() {
        let nabla = conway_polynomial(&d);
        assert!(nabla.as_laurent().terms().all(|(exp, _)| exp % 2 == 0));
        assert!(nabla.as_laurent().coeff(0).eq(&1.into()));
        // The even-power oracle conversion therefore always succeeds.
        let via_conway = conway_to_alexander(&nabla).unwrap();
        assert!(via_conway.units_equal(&canonical_alexander(&d).unwrap()));
    }
}

#[test]
fn composition_stays_valid_and_multiplicative_after_walks() {
    let knots = walked_knots();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..12 {
        let a = &knots[rng.gen_range(0..knots.len())];
        let b = &knots[rng.gen_range(0..knots.len())];
        let sum = connected_sum(a, b, &default_splice(a, b)).unwrap();
        assert_eq!(sum.component_count(), 1);
        assert_eq!(
            sum.crossing_count(),
            a.crossing_count() + b.crossing_count()
        );
        let product = canonical_alexander(a).unwrap() * canonical_alexander(b).unwrap();
        assert!(canonical_alexander(&sum).unwrap().units_equal(&product));
    }
}
