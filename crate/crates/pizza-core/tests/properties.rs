//! Property suites: the non-Archimedean law for tangency orders, sampling
//! bounds for the distance kernel, and invariance of the profile under
//! ambient symmetries.

mod common;

use common::{hover_pair, ladder1_pair, valley_pair};
use pizza_core::arcspace::{tord, validate_arc};
use pizza_core::Arc;
use pizza_core::exacts::{Exp, GPoly};
use pizza_core::germmodel::{distance_order, eval_arc, nearest_arc, ArcLoc};
use pizza_core::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    // coefficients in [-3, 3] ∩ Q with denominators up to 4
    let num = rng.gen_range(-12i64..=12);
    let den = rng.gen_range(1i64..=4);
    Rat::new(num.into(), (den * 4).into()) * Rat::from_integer(4.into())
        / Rat::from_integer(1.into())
}

fn random_exponent(rng: &mut ChaCha8Rng) -> Rat {
    // exponents in {1, 5/4, 3/2, ..., 4}
    let k = rng.gen_range(0i64..=12);
    Rat::new((4 + k).into(), 4.into())
}

fn random_arc(rng: &mut ChaCha8Rng, dim: usize) -> Arc {
    let mut coords = vec![GPoly::t()];
    for _ in 1..dim {
        let mut terms = Vec::new();
        let n_terms = rng.gen_range(0usize..=3);
        for _ in 0..n_terms {
            terms.push((random_exponent(rng), random_rat(rng)));
        }
        coords.push(GPoly::from_terms(terms));
    }
    validate_arc(coords).unwrap()
}

#[test]
fn tangency_order_is_an_ultrametric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let dim = rng.gen_range(2usize..=4);
        let a = random_arc(&mut rng, dim);
        let b = random_arc(&mut rng, dim);
        let c = random_arc(&mut rng, dim);
        let ab = tord(&a, &b).unwrap();
        let bc = tord(&b, &c).unwrap();
        let ac = tord(&a, &c).unwrap();
        // symmetry
        assert_eq!(ab, tord(&b, &a).unwrap());
        // separation
        assert_eq!(ab.is_infinite(), a == b);
        // strong triangle inequality
        let min = if ab < bc { ab.clone() } else { bc.clone() };
        assert!(ac >= min, "ultrametric violated: {ab} {bc} {ac}");
        // sharpened form: distinct orders force equality
        if ab > ac {
            assert_eq!(bc, ac);
        }
    }
}

#[test]
fn tangency_order_invariant_under_coordinate_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let a = random_arc(&mut rng, 4);
        let b = random_arc(&mut rng, 4);
        let perm = |arc: &Arc| {
            let c = arc.coords();
            validate_arc(vec![c[0].clone(), c[3].clone(), c[1].clone(), c[2].clone()]).unwrap()
        };
        assert_eq!(tord(&a, &b).unwrap(), tord(&perm(&a), &perm(&b)).unwrap());
    }
}

#[test]
fn sampled_arcs_never_beat_the_distance_order() {
    // For every sampled location λ in T: tord(g, λ) ≤ distance_order(g, T),
    // with equality at the nearest arc.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (tt, tp) = ladder1_pair();
    for _ in 0..60 {
        let patch = rng.gen_range(0..tp.num_patches());
        let c = Rat::new(rng.gen_range(0i64..=8).into(), 8.into());
        let g = eval_arc(&tt, &ArcLoc::at_constant(rng.gen_range(0..tt.num_patches()), c.clone()))
            .unwrap();
        let bound = distance_order(&g, &tp).unwrap();
        let sample = eval_arc(&tp, &ArcLoc::at_constant(patch, c)).unwrap();
        assert!(tord(&g, &sample).unwrap() <= bound);
        let nearest = nearest_arc(&g, &tp).unwrap();
        let realized = eval_arc(&tp, &nearest).unwrap();
        assert_eq!(tord(&g, &realized).unwrap(), bound);
    }
}

#[test]
fn min_contact_witness_on_grid_triples() {
    // Whenever three partner arcs θ1, θ, θ2 (θ between the others) satisfy
    // tord(θ, T) < min(tord(λ1, θ1), tord(λ2, θ2)) for flanking arcs λ1, λ2
    // of T, some arc between λ1 and λ2 has tangency ≤ tord(θ, T) to T′.
    let (tt, tp) = valley_pair();
    // n+1 stations per patch, endpoints included.
    let grid = |m: &pizza_core::TriangleModel, k: i64, n: i64| {
        let patch = ((k / (n + 1)) as usize).min(m.num_patches() - 1);
        let c = Rat::new((k % (n + 1)).into(), n.into());
        eval_arc(m, &ArcLoc::at_constant(patch, c)).unwrap()
    };
    let n = 4i64;
    let t_points = tt.num_patches() as i64 * (n + 1);
    let tp_points = tp.num_patches() as i64 * (n + 1);
    let mut instances = 0;
    for k1 in 0..t_points {
        for k2 in (k1 + 1)..t_points {
            let l1 = grid(&tt, k1, n);
            let l2 = grid(&tt, k2, n);
            for j1 in 0..tp_points {
                for j in (j1 + 1)..tp_points {
                    for j2 in (j + 1)..tp_points {
                        let th1 = grid(&tp, j1, n);
                        let th = grid(&tp, j, n);
                        let th2 = grid(&tp, j2, n);
                        let q = distance_order(&th, &tt).unwrap();
                        let c1 = tord(&l1, &th1).unwrap();
                        let c2 = tord(&l2, &th2).unwrap();
                        let bound = if c1 < c2 { c1 } else { c2 };
                        if q >= bound {
                            continue;
                        }
                        instances += 1;
                        // grid search for the witness between λ1 and λ2
                        let mut found = false;
                        for w in k1..=k2 {
                            let lam = grid(&tt, w, n);
                            if distance_order(&lam, &tp).unwrap() <= q {
                                found = true;
                                break;
                            }
                        }
                        assert!(found, "no witness for q = {q}");
                    }
                }
            }
        }
    }
    assert!(instances > 0, "the valley scene must exercise the premise");
}

#[test]
fn long_zone_interior_arcs_attain_the_strip_order() {
    // Hover: every interior arc of the partner strip has tangency exactly 2
    // to the base.
    let (tt, tp) = hover_pair();
    for k in 1..8 {
        let c = Rat::new(k.into(), 8.into());
        let theta = eval_arc(&tp, &ArcLoc::at_constant(0, c)).unwrap();
        assert_eq!(distance_order(&theta, &tt).unwrap(), Exp::Finite(rat("2")));
    }
}
