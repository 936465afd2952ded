//! Minimal pizzas of the basic scene family, checked against hand
//! computations that were cross-validated by the numeric sampling oracle.

use pizza_core::arcspace::validate_arc;
use pizza_core::exacts::Exp;
use pizza_core::germmodel::validate_triangle;
use pizza_core::pizza::{
    build_minimal_pizza, build_minimal_pizza_with, check_width_axioms, is_elementary,
    pizza_equivalent, q_range, order_profile, transversal, ProfileParams, SupportSide,
};
use pizza_core::{exp, rat, Arc, GPoly, Rat, TriangleModel};

fn gp(pairs: &[(&str, &str)]) -> GPoly {
    pizza_core::exacts::GPoly::from_terms(pairs.iter().map(|(e, c)| (rat(e), rat(c))).collect())
}

fn arc(coords: Vec<GPoly>) -> Arc {
    validate_arc(coords).unwrap()
}

fn tri(anchors: Vec<Arc>) -> TriangleModel {
    validate_triangle(anchors).unwrap()
}

fn hover_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let tt = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "1")]), zero.clone()]),
    ]);
    let tp = tri(vec![
        arc(vec![t.clone(), zero.clone(), gp(&[("2", "1")])]),
        arc(vec![t.clone(), gp(&[("1", "1")]), gp(&[("2", "1")])]),
    ]);
    (tt, tp)
}

fn shared_edge_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let tt = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "1")]), zero.clone()]),
    ]);
    let tp = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), zero.clone(), gp(&[("1", "1")])]),
    ]);
    (tt, tp)
}

#[test]
fn hover_pizza_is_a_single_constant_slice() {
    let (tt, tp) = hover_pair();
    let p = build_minimal_pizza(&tt, &tp).unwrap();
    assert_eq!(p.slices.len(), 1);
    let s = &p.slices[0];
    assert_eq!(s.q_prev, exp("2"));
    assert_eq!(s.q_next, exp("2"));
    assert_eq!(s.mu_at(&exp("2")), exp("1"));
    assert_eq!(s.beta, exp("1"));
    assert_eq!(s.support, SupportSide::None);
    assert!(!transversal(s));
    assert!(is_elementary(&p));
    assert!(check_width_axioms(&p).is_ok());
    let prof = order_profile(&tt, &tp).unwrap();
    assert_eq!(q_range(&prof), pizza_core::exacts::ExpInterval::new(exp("2"), exp("2")));
}

#[test]
fn shared_edge_pizza_is_one_transversal_slice_to_infinity() {
    let (tt, tp) = shared_edge_pair();
    let p = build_minimal_pizza(&tt, &tp).unwrap();
    assert_eq!(p.slices.len(), 1, "slices: {:?}", p.slices);
    let s = &p.slices[0];
    assert_eq!(s.q_prev, Exp::Infinite);
    assert_eq!(s.q_next, exp("1"));
    assert!(s.mu.is_identity());
    assert_eq!(s.support, SupportSide::Prev);
    assert!(transversal(s));
    assert!(is_elementary(&p));
    assert!(check_width_axioms(&p).is_ok());
    let prof = order_profile(&tt, &tp).unwrap();
    assert_eq!(
        q_range(&prof),
        pizza_core::exacts::ExpInterval::new(exp("1"), Exp::<Rat>::Infinite)
    );
}

#[test]
fn hover_pizza_independent_of_probe_choices() {
    let (tt, tp) = hover_pair();
    let a = build_minimal_pizza(&tt, &tp).unwrap();
    let b = build_minimal_pizza_with(&tt, &tp, ProfileParams { alternate: true }).unwrap();
    assert!(pizza_equivalent(&a, &b));
}

/// Ladder anchors: y-profile with a 3/2-step, three t^2 rungs, and a final
/// 3/2-step; the partner is lifted by the z-profile (2, 2, 3, 3, 2, 2).
fn ladder_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let ys = [
        zero.clone(),
        gp(&[("3/2", "1")]),
        gp(&[("3/2", "1"), ("2", "1")]),
        gp(&[("3/2", "1"), ("2", "2")]),
        gp(&[("3/2", "1"), ("2", "3")]),
        gp(&[("3/2", "2"), ("2", "3")]),
    ];
    let zs = ["2", "2", "3", "3", "2", "2"];
    let tt = tri(ys
        .iter()
        .map(|y| arc(vec![t.clone(), y.clone(), zero.clone()]))
        .collect());
    let tp = tri(ys
        .iter()
        .zip(zs.iter())
        .map(|(y, z)| arc(vec![t.clone(), y.clone(), gp(&[(z, "1")])]))
        .collect());
    (tt, tp)
}

#[test]
fn ladder_pizza_matches_the_hand_computation() {
    let (tt, tp) = ladder_pair();
    let p = build_minimal_pizza(&tt, &tp).unwrap();
    let qs: Vec<_> = p.zones.iter().map(|z| z.q.to_string()).collect();
    assert_eq!(qs, vec!["2", "2", "3", "3", "2", "2"], "zones: {:?}", p.zones);
    assert_eq!(p.slices.len(), 5);

    // (Q, mu) per slice: ({2}, 3/2), ([2,3], q), ({3}, 2), ([3,2], q), ({2}, 3/2)
    let s = &p.slices[0];
    assert!(s.is_point());
    assert_eq!(s.mu_at(&exp("2")), exp("3/2"));
    assert_eq!(s.beta, exp("3/2"));

    let s = &p.slices[1];
    assert_eq!((s.q_prev.clone(), s.q_next.clone()), (exp("2"), exp("3")));
    assert!(s.mu.is_identity());
    assert_eq!(s.support, SupportSide::Next);
    assert_eq!(s.beta, exp("2"));

    let s = &p.slices[2];
    assert!(s.is_point());
    assert_eq!(s.q_prev, exp("3"));
    assert_eq!(s.mu_at(&exp("3")), exp("2"));
    assert_eq!(s.beta, exp("2"));

    let s = &p.slices[3];
    assert_eq!((s.q_prev.clone(), s.q_next.clone()), (exp("3"), exp("2")));
    assert!(s.mu.is_identity());
    assert_eq!(s.support, SupportSide::Prev);

    let s = &p.slices[4];
    assert!(s.is_point());
    assert_eq!(s.mu_at(&exp("2")), exp("3/2"));

    // Depths: boundary zones are singular; the inner stations carry the
    // depth-lemma values.
    let nus: Vec<_> = p.zones.iter().map(|z| z.nu.to_string()).collect();
    assert_eq!(nus, vec!["inf", "2", "3", "3", "2", "inf"]);

    assert!(!is_elementary(&p));
    assert!(check_width_axioms(&p).is_ok());

    // The pizza of the partner triangle is equivalent.
    let pp = build_minimal_pizza(&tp, &tt).unwrap();
    assert!(pizza_equivalent(&p, &pp), "partner pizza: {:?}", pp.slices);

    // Probe-choice independence: alternate probes pick different (equally
    // valid) representatives but identical pizza data.
    let alt = build_minimal_pizza_with(&tt, &tp, ProfileParams { alternate: true }).unwrap();
    assert!(pizza_equivalent(&p, &alt));
    assert_eq!(p.slices, alt.slices);
    for (za, zb) in p.zones.iter().zip(alt.zones.iter()) {
        assert_eq!(za.q, zb.q);
        assert_eq!(za.nu, zb.nu);
    }
}

/// A narrow partner strip at height t^3 over the series arc w = 1/2 + t of a
/// unit strip: the station sits at a non-constant ruling, so breakpoint
/// discovery must follow the center through two depth levels.
#[test]
fn deep_station_at_a_series_center() {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let tt = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "1")]), zero.clone()]),
    ]);
    let tp = tri(vec![
        arc(vec![t.clone(), gp(&[("1", "1/2"), ("2", "1")]), gp(&[("3", "1")])]),
        arc(vec![
            t.clone(),
            gp(&[("1", "1/2"), ("2", "1"), ("3", "1")]),
            gp(&[("3", "1")]),
        ]),
    ]);
    let p = build_minimal_pizza(&tt, &tp).unwrap();
    let qs: Vec<_> = p.zones.iter().map(|z| z.q.to_string()).collect();
    assert_eq!(qs, vec!["1", "3", "1"]);
    let nus: Vec<_> = p.zones.iter().map(|z| z.nu.to_string()).collect();
    assert_eq!(nus, vec!["inf", "3", "inf"]);
    for s in &p.slices {
        assert!(s.mu.is_identity());
        assert!(transversal(s));
    }
    // The station zone representative follows the center below the constant
    // term: its ruling starts with 1/2 + t.
    let rep = p.zones[1].rep.as_ref().unwrap();
    assert_eq!(rep.ruling.constant_term(), rat("1/2"));
    assert_eq!(rep.ruling.coeff_at(&rat("1")), rat("1"));
    assert!(check_width_axioms(&p).is_ok());

    // The partner hovers over the interior only, so the boundary chains fail
    // (its boundary arc is closer to the interior of the base than to the
    // base's boundary arc).
    assert!(!pizza_core::sigmatau::check_tord_tord(&tt, &tp).unwrap());
}

/// The partner is a subtriangle of the base: the distance vanishes
/// identically on the shared middle patch. The shared region's edge arcs
/// become singular zones and the region itself is a constant slice of
/// infinite order whose width is its exponent.
#[test]
fn shared_subtriangle_gives_an_infinite_order_slice() {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let mk = |k: &str| arc(vec![t.clone(), gp(&[("1", k)]), zero.clone()]);
    let tt = tri(vec![mk("0"), mk("1"), mk("2"), mk("3")]);
    let tp = tri(vec![mk("1"), mk("2")]);
    let p = build_minimal_pizza(&tt, &tp).unwrap();
    let qs: Vec<_> = p.zones.iter().map(|z| z.q.to_string()).collect();
    assert_eq!(qs, vec!["1", "inf", "inf", "1"]);
    let nus: Vec<_> = p.zones.iter().map(|z| z.nu.to_string()).collect();
    assert_eq!(nus, vec!["inf", "inf", "inf", "inf"]);
    assert_eq!(p.slices.len(), 3);
    assert!(p.slices[0].mu.is_identity());
    // the shared region: point slice at infinite order, width = exponent 1
    assert!(p.slices[1].is_point());
    assert_eq!(p.slices[1].q_prev, Exp::Infinite);
    assert_eq!(p.slices[1].mu_at(&Exp::Infinite), exp("1"));
    assert!(p.slices[2].mu.is_identity());
    assert!(!is_elementary(&p));
    assert!(check_width_axioms(&p).is_ok());
}
