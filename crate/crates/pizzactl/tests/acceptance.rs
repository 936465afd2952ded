//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance is pinned here; all combinatorial checks are exact
//! (arbitrary-precision rationals), and the only numeric comparison is the
//! sampling oracle's slope fit at 0.05.

use pizza_core::arcspace::{tord, validate_arc};
use pizza_core::exacts::{Exp, GPoly as GP};
use pizza_core::germmodel::{validate_triangle, ArcLoc};
use pizza_core::pizza::{
    build_minimal_pizza_with, check_width_axioms, is_elementary, pizza_equivalent,
    slice_representative, width_in_pizza, zone_contains, ProfileParams, SupportSide,
};
use pizza_core::sigmatau::{
    compute_sigma, compute_tau, graph_representable, recompute_signs, sigma_tau_pizza,
    st_equivalent, Representability, TauSign,
};
use pizza_core::{rat, Arc, GPoly, Rat, SigmaTau, TriangleModel};
use pizzactl::scene::{parse_scene, sigma_tau_json, Scene, SceneBody};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scene_path(name: &str) -> String {
    format!("{}/scenes/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> Scene {
    let text = std::fs::read_to_string(scene_path(name)).expect("scene file");
    parse_scene(&text).unwrap_or_else(|e| panic!("scene {name}: {e}"))
}

const CORPUS: [&str; 7] = [
    "hover",
    "shared_edge",
    "parallel_strips",
    "valley",
    "ladder1",
    "ladder2",
    "oneloop",
];

fn geometric_corpus() -> Vec<(String, TriangleModel, TriangleModel)> {
    CORPUS
        .iter()
        .filter_map(|name| {
            let s = load(name);
            match s.body {
                SceneBody::Geometric { t, tp } => Some((s.name, t, tp)),
                SceneBody::Abstract { .. } => None,
            }
        })
        .collect()
}

fn pass(line: &str) {
    println!("acceptance {line}: PASS");
}

// --- criterion 1 -----------------------------------------------------------

fn random_coeff(rng: &mut ChaCha8Rng) -> Rat {
    // [-3, 3] ∩ Q with denominator up to 4
    Rat::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=4).into())
}

fn random_exponent(rng: &mut ChaCha8Rng) -> Rat {
    // {1, 5/4, 3/2, ..., 4}
    Rat::new(rng.gen_range(4i64..=16).into(), 4.into())
}

fn random_arc(rng: &mut ChaCha8Rng, dim: usize) -> Arc {
    let mut coords = vec![GP::t()];
    for _ in 1..dim {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(0usize..=3) {
            terms.push((random_exponent(rng), random_coeff(rng)));
        }
        coords.push(GP::from_terms(terms));
    }
    validate_arc(coords).unwrap()
}

#[test]
fn criterion_01_ultrametric_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for _ in 0..1000 {
        let dim = rng.gen_range(2usize..=4);
        let a = random_arc(&mut rng, dim);
        let b = random_arc(&mut rng, dim);
        let c = random_arc(&mut rng, dim);
        let ab = tord(&a, &b).unwrap();
        let bc = tord(&b, &c).unwrap();
        let ac = tord(&a, &c).unwrap();
        assert_eq!(ab, tord(&b, &a).unwrap(), "symmetry");
        assert_eq!(ab.is_infinite(), a == b, "separation");
        let min = ab.clone().min(bc.clone());
        assert!(ac >= min, "strong triangle inequality");
        if ab > ac {
            assert_eq!(bc, ac, "sharpened non-Archimedean law");
        }
    }
    pass("01 ultrametric (1000 seeded triples, exact)");
}

// --- criterion 2 -----------------------------------------------------------

#[test]
fn criterion_02_width_axioms_on_the_corpus() {
    for name in CORPUS {
        let s = load(name);
        match s.body {
            SceneBody::Geometric { t, tp } => {
                for (host, other) in [(&t, &tp), (&tp, &t)] {
                    let p = pizza_core::pizza::build_minimal_pizza(host, other).unwrap();
                    let d = check_width_axioms(&p);
                    assert!(d.is_ok(), "{name}: {d}");
                    // Geometric spot check: interior representatives of point
                    // slices realize the generic width β.
                    for (i, sl) in p.slices.iter().enumerate() {
                        if sl.is_point() {
                            let rep = slice_representative(&p, host, other, i).unwrap();
                            let w = width_in_pizza(&p, host, other, &rep).unwrap();
                            assert_eq!(w, sl.beta, "{name} slice {i}: generic width");
                        }
                    }
                }
            }
            SceneBody::Abstract { st } => {
                for p in [&st.pizza_t, &st.pizza_tp] {
                    let d = check_width_axioms(p);
                    assert!(d.is_ok(), "{name}: {d}");
                }
            }
        }
    }
    pass("02 width axioms (corpus, exact)");
}

// --- criterion 3 -----------------------------------------------------------

#[test]
fn criterion_03_shared_edge_scene() {
    let s = load("shared_edge");
    let SceneBody::Geometric { t, tp } = s.body else {
        panic!("geometric expected")
    };
    let st = sigma_tau_pizza(&t, &tp).unwrap();
    assert_eq!(st.pizza_t.slices.len(), 1);
    let sl = &st.pizza_t.slices[0];
    assert_eq!(sl.q_prev, Exp::Infinite);
    assert_eq!(sl.q_next, Exp::Finite(rat("1")));
    assert!(sl.mu.is_identity());
    assert_eq!(sl.support, SupportSide::Prev);
    assert!(is_elementary(&st.pizza_t));
    assert!(matches!(
        graph_representable(&t, &tp).unwrap(),
        Representability::Yes(_)
    ));
    pass("03 shared-edge (Q=[1,inf], mu=q, elementary, representable)");
}

// --- criterion 4 -----------------------------------------------------------

#[test]
fn criterion_04_hover_scene() {
    let s = load("hover");
    let SceneBody::Geometric { t, tp } = s.body else {
        panic!("geometric expected")
    };
    let st = sigma_tau_pizza(&t, &tp).unwrap();
    for p in [&st.pizza_t, &st.pizza_tp] {
        assert_eq!(p.slices.len(), 1);
        let sl = &p.slices[0];
        assert!(sl.is_point());
        assert_eq!(sl.q_prev, Exp::Finite(rat("2")));
        assert_eq!(sl.mu_at(&sl.q_prev), Exp::Finite(rat("1")));
        assert!(p
            .zones
            .iter()
            .all(|z| z.kind == pizza_core::pizza::ZoneKind::Maximum));
    }
    assert_eq!(st.sigma, vec![(1, 1), (2, 2)]);
    let tau: Vec<_> = st.tau.iter().map(|p| (p.l, p.lp, p.sign)).collect();
    assert_eq!(tau, vec![(1, 1, TauSign::Plus)]);
    pass("04 hover (point Q=2, mu=1, boundary maxima fixed, tau=(1,1,+))");
}

// --- criterion 5 -----------------------------------------------------------

#[test]
fn criterion_05_ladder_regression() {
    let l1 = load("ladder1");
    let l2 = load("ladder2");
    let SceneBody::Geometric { t: t1, tp: t1p } = l1.body else {
        panic!()
    };
    let SceneBody::Geometric { t: t2, tp: t2p } = l2.body else {
        panic!()
    };
    let st1 = sigma_tau_pizza(&t1, &t1p).unwrap();
    let st2 = sigma_tau_pizza(&t2, &t2p).unwrap();
    // (a) both pizzas of the two weaves are equivalent
    assert!(pizza_equivalent(&st1.pizza_t, &st2.pizza_t));
    assert!(pizza_equivalent(&st1.pizza_tp, &st2.pizza_tp));
    // (b) the στ-pizzas differ: σ crosses and the middle sign flips
    assert_eq!(st1.sigma, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    assert_eq!(st2.sigma, vec![(1, 1), (2, 3), (3, 2), (4, 4)]);
    let tau1: Vec<_> = st1.tau.iter().map(|p| (p.l, p.lp, p.sign)).collect();
    let tau2: Vec<_> = st2.tau.iter().map(|p| (p.l, p.lp, p.sign)).collect();
    assert_eq!(
        tau1,
        vec![
            (1, 1, TauSign::Plus),
            (3, 3, TauSign::Plus),
            (5, 5, TauSign::Plus)
        ]
    );
    assert_eq!(
        tau2,
        vec![
            (1, 1, TauSign::Plus),
            (3, 3, TauSign::Minus),
            (5, 5, TauSign::Plus)
        ]
    );
    assert!(!st_equivalent(&st1, &st2));
    // (c) the crossed weave is not representable as a graph over the base
    assert!(matches!(
        graph_representable(&t2, &t2p).unwrap(),
        Representability::No(_)
    ));
    pass("05 ladder regression (pizzas equivalent, sigma/tau differ, weave not representable)");
}

// --- criterion 6 -----------------------------------------------------------

#[test]
fn criterion_06_one_loop_chart() {
    let s = load("oneloop");
    let SceneBody::Abstract { st } = s.body else {
        panic!("abstract expected")
    };
    let pairs: Vec<_> = st.tau.iter().map(|p| (p.l, p.lp)).collect();
    assert_eq!(pairs, vec![(1, 1), (2, 3), (3, 2), (4, 4)]);
    // σ restricted to maximum zones is one-to-one.
    let mut targets: Vec<usize> = st.sigma.iter().map(|&(_, ip)| ip).collect();
    targets.sort();
    targets.dedup();
    assert_eq!(targets.len(), st.sigma.len());
    assert_eq!(st.sigma.len(), st.pizza_t.maximum_zones().len());
    pass("06 one-loop chart (validator accepts, tau pairs cross, sigma bijective)");
}

// --- criterion 7 -----------------------------------------------------------

fn perturbed_reps(
    st: &SigmaTau,
    t: &TriangleModel,
    tp: &TriangleModel,
) -> (pizza_core::PizzaData, pizza_core::PizzaData) {
    let perturb = |p: &pizza_core::PizzaData, host: &TriangleModel, other: &TriangleModel| {
        let mut out = p.clone();
        for i in 0..out.zones.len() {
            let Some(nu) = out.zones[i].nu.finite_ref().cloned() else {
                continue;
            };
            let rep = out.zones[i].rep.clone().unwrap();
            let beta = host
                .patch_exponent(rep.patch)
                .expect_finite("patch exponent")
                .clone();
            let depth = nu - beta + Rat::from_integer(1.into());
            for mag in [rat("1"), rat("-1"), rat("1/2")] {
                let ruling = rep
                    .ruling
                    .add(&pizza_core::exacts::GPoly::monomial(depth.clone(), mag));
                let cand = ArcLoc::new(rep.patch, ruling);
                if pizza_core::germmodel::validate_arc_loc(host, &cand).is_ok()
                    && zone_contains(p, host, other, i, &cand).unwrap_or(false)
                {
                    out.zones[i].rep = Some(cand);
                    break;
                }
            }
        }
        out
    };
    (
        perturb(&st.pizza_t, t, tp),
        perturb(&st.pizza_tp, tp, t),
    )
}

#[test]
fn criterion_07_representative_independence() {
    for (name, t, tp) in geometric_corpus() {
        let st = sigma_tau_pizza(&t, &tp).unwrap();
        // Alternate probe choices rebuild the identical pizza data.
        for (host, other, reference) in [(&t, &tp, &st.pizza_t), (&tp, &t, &st.pizza_tp)] {
            let alt =
                build_minimal_pizza_with(host, other, ProfileParams { alternate: true }).unwrap();
            assert_eq!(alt.slices, reference.slices, "{name}: slices");
            for (a, b) in alt.zones.iter().zip(reference.zones.iter()) {
                assert_eq!(a.q, b.q, "{name}: zone orders");
                assert_eq!(a.nu, b.nu, "{name}: zone depths");
            }
        }
        // Replacing zone representatives by other arcs of the same zones
        // leaves σ and τ unchanged.
        let (pt2, ptp2) = perturbed_reps(&st, &t, &tp);
        let sigma2 = compute_sigma(&t, &tp, &pt2, &ptp2).unwrap();
        let tau2 = compute_tau(&t, &tp, &pt2, &ptp2).unwrap();
        assert_eq!(sigma2, st.sigma, "{name}: sigma under new representatives");
        assert_eq!(tau2, st.tau, "{name}: tau under new representatives");
    }
    pass("07 representative independence (alternate probes and perturbed reps, exact)");
}

// --- criterion 8 -----------------------------------------------------------

#[test]
fn criterion_08_sign_determinism() {
    for (name, t, tp) in geometric_corpus() {
        let st = sigma_tau_pizza(&t, &tp).unwrap();
        let unsigned: Vec<(usize, usize)> = st.tau.iter().map(|p| (p.l, p.lp)).collect();
        let derived = recompute_signs(&st.pizza_t, &st.pizza_tp, &st.sigma, &unsigned).unwrap();
        assert_eq!(derived, st.tau, "{name}");
    }
    pass("08 sign determinism (combinatorial signs match geometric signs, exact)");
}

// --- criterion 9 -----------------------------------------------------------

fn rebuild(t: &TriangleModel, f: impl Fn(&Arc) -> Arc) -> TriangleModel {
    validate_triangle(t.anchors().iter().map(f).collect()).unwrap()
}

fn permute(t: &TriangleModel, perm: &[usize]) -> TriangleModel {
    rebuild(t, |a| {
        let c = a.coords();
        let mut coords = vec![c[0].clone()];
        for &j in perm {
            coords.push(c[j].clone());
        }
        validate_arc(coords).unwrap()
    })
}

/// Rational rotation by the 3-4-5 triangle on coordinates i, j (1-based past t).
fn rotate(t: &TriangleModel, i: usize, j: usize) -> TriangleModel {
    let (cos, sin) = (rat("3/5"), rat("4/5"));
    rebuild(t, |a| {
        let c = a.coords();
        let mut coords: Vec<GPoly> = c.to_vec();
        coords[i] = c[i].scale(&cos).sub(&c[j].scale(&sin));
        coords[j] = c[i].scale(&sin).add(&c[j].scale(&cos));
        validate_arc(coords).unwrap()
    })
}

/// Uniform rescaling x ↦ 4x with the matching reparametrization: the term
/// c·t^e becomes c·4^(1-e)·t^e, rational whenever 2e is an integer.
fn rescale4(t: &TriangleModel) -> TriangleModel {
    rebuild(t, |a| {
        let coords = a
            .coords()
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if k == 0 {
                    return p.clone();
                }
                let terms = p
                    .terms()
                    .iter()
                    .map(|(e, c)| {
                        let two_k = rat("2") - rat("2") * e.clone();
                        assert!(two_k.is_integer(), "exponent denominator beyond 2");
                        let k: i64 = two_k.to_integer().try_into().unwrap();
                        let factor = if k >= 0 {
                            Rat::from_integer((1i64 << k).into())
                        } else {
                            Rat::new(1.into(), (1i64 << (-k)).into())
                        };
                        (e.clone(), c.clone() * factor)
                    })
                    .collect();
                pizza_core::exacts::GPoly::from_terms(terms)
            })
            .collect();
        validate_arc(coords).unwrap()
    })
}

#[test]
fn criterion_09_invariance_of_the_st_pizza() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for (name, t, tp) in geometric_corpus() {
        let reference = sigma_tau_json(&sigma_tau_pizza(&t, &tp).unwrap());
        // random permutation of the non-t coordinates
        let mut perm: Vec<usize> = (1..t.dim()).collect();
        for k in (1..perm.len()).rev() {
            let j = rng.gen_range(0..=k);
            perm.swap(k, j);
        }
        let (t1, tp1) = (permute(&t, &perm), permute(&tp, &perm));
        assert_eq!(
            sigma_tau_json(&sigma_tau_pizza(&t1, &tp1).unwrap()),
            reference,
            "{name}: coordinate permutation"
        );
        // rational orthogonal transform on two non-t coordinates
        let (t2, tp2) = (rotate(&t, 1, 2), rotate(&tp, 1, 2));
        assert_eq!(
            sigma_tau_json(&sigma_tau_pizza(&t2, &tp2).unwrap()),
            reference,
            "{name}: rational rotation"
        );
        // uniform rational rescaling
        let (t3, tp3) = (rescale4(&t), rescale4(&tp));
        assert_eq!(
            sigma_tau_json(&sigma_tau_pizza(&t3, &tp3).unwrap()),
            reference,
            "{name}: rescaling"
        );
    }
    pass("09 invariance (permutation, rotation, rescaling; byte-identical charts)");
}

// --- criterion 10 ----------------------------------------------------------

#[test]
fn criterion_10_oracle_agreement() {
    for (name, t, tp) in geometric_corpus() {
        let outcome = pizzactl::oracle::oracle_check(
            &t,
            &tp,
            &pizzactl::oracle::OracleParams {
                samples: 24,
                seed: 99,
                tolerance: 0.05,
                k_min: 10,
                k_max: 40,
            },
        );
        assert_eq!(
            outcome.mismatches(),
            0,
            "{name}: {}",
            pizzactl::oracle::oracle_text(&outcome)
        );
    }
    pass("10 oracle agreement (log-log slopes within 0.05 on the corpus)");
}
