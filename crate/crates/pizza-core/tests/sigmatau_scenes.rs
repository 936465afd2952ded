//! σ, τ, and the στ-pizza on the scene family: hover, shared edge, parallel
//! strips, and the two ladder weaves.

use pizza_core::arcspace::validate_arc;
use pizza_core::germmodel::{validate_triangle, ArcLoc};
use pizza_core::pizza::ZoneKind;
use pizza_core::sigmatau::{
    check_tord_tord, graph_representable, regular_pair, sigma_tau_pizza, st_equivalent,
    Representability, TauSign,
};
use pizza_core::{rat, Arc, GPoly, Rat as rat_t, TriangleModel};

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

fn parallel_strips_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let tt = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "1")]), zero.clone()]),
    ]);
    let tp = tri(vec![
        arc(vec![t.clone(), gp(&[("1", "2")]), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "3")]), zero.clone()]),
    ]);
    (tt, tp)
}

#[test]
fn hover_sigma_tau() {
    let (tt, tp) = hover_pair();
    assert!(check_tord_tord(&tt, &tp).unwrap());
    let st = sigma_tau_pizza(&tt, &tp).unwrap();
    // Both zones are maximum zones on both sides.
    let kinds: Vec<_> = st.pizza_t.zones.iter().map(|z| z.kind).collect();
    assert_eq!(kinds, vec![ZoneKind::Maximum, ZoneKind::Maximum]);
    let kinds: Vec<_> = st.pizza_tp.zones.iter().map(|z| z.kind).collect();
    assert_eq!(kinds, vec![ZoneKind::Maximum, ZoneKind::Maximum]);
    assert_eq!(st.sigma, vec![(1, 1), (2, 2)]);
    assert_eq!(st.tau.len(), 1);
    assert_eq!((st.tau[0].l, st.tau[0].lp, st.tau[0].sign), (1, 1, TauSign::Plus));
    assert!(st_equivalent(&st, &st));
}

#[test]
fn hover_regular_pairs() {
    let (tt, tp) = hover_pair();
    // Vertically aligned pair: regular.
    let g = ArcLoc::at_constant(0, rat("1/2"));
    let gp_loc = ArcLoc::at_constant(0, rat("1/2"));
    assert!(regular_pair(&g, &gp_loc, &tt, &tp).unwrap());
    // Different link positions: tord between them drops to 1 < 2.
    let gp_loc = ArcLoc::at_constant(0, rat("1/4"));
    assert!(!regular_pair(&g, &gp_loc, &tt, &tp).unwrap());
}

#[test]
fn shared_edge_sigma_tau_and_representability() {
    let (tt, tp) = shared_edge_pair();
    assert!(check_tord_tord(&tt, &tp).unwrap());
    let st = sigma_tau_pizza(&tt, &tp).unwrap();
    // One transversal slice: tau is empty; the shared arc is the only
    // maximum zone on each side.
    assert!(st.tau.is_empty());
    assert_eq!(st.sigma, vec![(1, 1)]);
    let kinds: Vec<_> = st.pizza_t.zones.iter().map(|z| z.kind).collect();
    assert_eq!(kinds, vec![ZoneKind::Maximum, ZoneKind::Minimum]);
    assert!(matches!(
        graph_representable(&tt, &tp).unwrap(),
        Representability::Yes(_)
    ));
    // Shared boundary arcs form a regular pair (all three orders infinite).
    let g = ArcLoc::at_constant(0, rat("0"));
    assert!(regular_pair(&g, &g, &tt, &tp).unwrap());
}

#[test]
fn parallel_strips_zones_are_minimum() {
    let (tt, tp) = parallel_strips_pair();
    let st = sigma_tau_pizza(&tt, &tp).unwrap();
    let kinds: Vec<_> = st.pizza_t.zones.iter().map(|z| z.kind).collect();
    assert_eq!(kinds, vec![ZoneKind::Minimum, ZoneKind::Minimum]);
    // Transversal single slice: tau empty, no maximum zones at all.
    assert!(st.tau.is_empty());
    assert!(st.sigma.is_empty());
    assert!(matches!(
        graph_representable(&tt, &tp).unwrap(),
        Representability::Yes(_)
    ));
}

#[test]
fn classify_zones_on_ladder_orders() {
    // Kind assignment for the ladder order sequence from the data alone.
    use pizza_core::exacts::{AffineFn, ExpInterval};
    use pizza_core::pizza::{PizzaSlice, SupportSide, ZoneRecord};
    use pizza_core::{exp, PizzaData};
    let qs = ["2", "2", "3", "3", "2", "2"];
    let zones: Vec<ZoneRecord<rat_t>> = qs
        .iter()
        .map(|q| ZoneRecord {
            q: pizza_core::exp(q),
            nu: pizza_core::exacts::Exp::Infinite,
            kind: ZoneKind::Neither,
            rep: None,
        })
        .collect();
    let slices = qs
        .windows(2)
        .map(|w| {
            let q_prev = pizza_core::exp(w[0]);
            let q_next = pizza_core::exp(w[1]);
            let domain = ExpInterval::spanning(&q_prev, &q_next);
            PizzaSlice {
                beta: exp("1"),
                q_prev,
                q_next,
                mu: AffineFn::constant(pizza_core::rat("1"), domain),
                support: SupportSide::None,
            }
        })
        .collect();
    let p = PizzaData { slices, zones };
    let classified = pizza_core::sigmatau::classify_zones(p, &exp("1"));
    let kinds: Vec<_> = classified.zones.iter().map(|z| z.kind.to_string()).collect();
    assert_eq!(kinds, vec!["max", "min", "max", "max", "min", "max"]);
}
