//! Scene builders shared by the integration tests.

#![allow(dead_code)]

use pizza_core::arcspace::validate_arc;
use pizza_core::germmodel::validate_triangle;
use pizza_core::{rat, Arc, GPoly, TriangleModel};

pub fn gp(pairs: &[(&str, &str)]) -> GPoly {
    pizza_core::exacts::GPoly::from_terms(pairs.iter().map(|(e, c)| (rat(e), rat(c))).collect())
}

pub fn arc(coords: Vec<GPoly>) -> Arc {
    validate_arc(coords).unwrap()
}

pub fn tri(anchors: Vec<Arc>) -> TriangleModel {
    validate_triangle(anchors).unwrap()
}

/// Flat strip and a parallel copy lifted by z = t².
pub fn hover_pair() -> (TriangleModel, TriangleModel) {
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

/// Two unit strips sharing the boundary arc (t, 0, 0).
pub fn shared_edge_pair() -> (TriangleModel, TriangleModel) {
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

/// Coplanar strips at constant unit-order offset.
pub fn parallel_strips_pair() -> (TriangleModel, TriangleModel) {
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

fn ladder_ys() -> Vec<GPoly> {
    vec![
        GPoly::zero(),
        gp(&[("3/2", "1")]),
        gp(&[("3/2", "1"), ("2", "1")]),
        gp(&[("3/2", "1"), ("2", "2")]),
        gp(&[("3/2", "1"), ("2", "3")]),
        gp(&[("3/2", "2"), ("2", "3")]),
    ]
}

/// The straight ladder: rungs of the partner hang over the matching rungs of
/// the base (z-profile 2, 2, 3, 3, 2, 2).
pub fn ladder1_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let ys = ladder_ys();
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

/// The crossed weave in ambient dimension 4: the partner's two middle
/// stations hang over the opposite rungs of the base, separated in the
/// fourth coordinate to stay normally embedded.
pub fn ladder2_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let ys = ladder_ys();
    let tt = tri(ys
        .iter()
        .map(|y| arc(vec![t.clone(), y.clone(), zero.clone(), zero.clone()]))
        .collect());
    let b = |y: GPoly, z: GPoly, w: GPoly| arc(vec![t.clone(), y, z, w]);
    let tp = tri(vec![
        b(ys[0].clone(), gp(&[("2", "1")]), zero.clone()),
        b(ys[1].clone(), gp(&[("2", "1")]), gp(&[("2", "1")])),
        b(ys[3].clone(), gp(&[("3", "1")]), zero.clone()),
        b(ys[2].clone(), gp(&[("3", "1")]), zero.clone()),
        b(ys[4].clone(), gp(&[("2", "1")]), gp(&[("2", "-1")])),
        b(ys[5].clone(), gp(&[("2", "1")]), zero.clone()),
    ]);
    (tt, tp)
}

/// A wide flat strip whose partner hovers at t^3 near both edges and dips to
/// t^2 over the middle: the order profile on each side has an interior
/// valley between two boundary maxima.
pub fn valley_pair() -> (TriangleModel, TriangleModel) {
    let t = GPoly::t();
    let zero = GPoly::zero();
    let tt = tri(vec![
        arc(vec![t.clone(), zero.clone(), zero.clone()]),
        arc(vec![t.clone(), gp(&[("1", "3")]), zero.clone()]),
    ]);
    let tp = tri(vec![
        arc(vec![t.clone(), zero.clone(), gp(&[("3", "1")])]),
        arc(vec![t.clone(), gp(&[("1", "1")]), gp(&[("2", "1")])]),
        arc(vec![t.clone(), gp(&[("1", "2")]), gp(&[("2", "1")])]),
        arc(vec![t.clone(), gp(&[("1", "3")]), gp(&[("3", "1")])]),
    ]);
    (tt, tp)
}
