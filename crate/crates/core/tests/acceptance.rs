//! Acceptance suite: every release criterion as one test, each printing a
//! pass line (run with `--nocapture` to see them). All equalities are exact;
//! the arithmetic is rational throughout, so there are no tolerances.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hexdet_core::det::{bareiss_det, sachs_det};
use hexdet_core::format::{parse_graph, serialize_graph};
use hexdet_core::hexgrid::{
    build_grid, closed_form, peel_first_row_observed, reduce_det, reduce_det_observed, GridSpec,
    GridLabeling,
};
use hexdet_core::reduce::{
    cycle_det, path_det, pendant_isolate, pendant_reduce, vertex_combine, ReductionTrace, StepKind,
};
use hexdet_core::{ratio, rational, Graph, Int, Rational};

use common::{random_graph, random_weight};

fn det(g: &Graph) -> Rational {
    bareiss_det(&g.adjacency_matrix()).expect("adjacency matrices are square")
}

/// Binomial coefficients by Pascal's rule only, an oracle independent of
/// the multiplicative implementation under test.
fn pascal_binomial(a: u64, b: u64) -> Int {
    let mut row = vec![Int::one()];
    for _ in 0..a {
        let mut next = vec![Int::one()];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(Int::one());
        row = next;
    }
    row.get(b as usize).cloned().unwrap_or_else(Int::zero)
}

/// `(-1)^(nm+n+m) * C(x+n+m, n)^2` assembled from the Pascal oracle.
fn expected_closed_form(spec: &GridSpec) -> Rational {
    let c = pascal_binomial(spec.x + spec.n + spec.m, spec.n);
    let magnitude = &c * &c;
    let exponent = spec.n * spec.m + spec.n + spec.m;
    Rational::from_integer(if exponent % 2 == 1 { -magnitude } else { magnitude })
}

fn pass(name: &str, started: Instant) {
    println!(
        "[acceptance] {name}: PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

/// Unweighted sweep, 1 ≤ n, m ≤ 6: reduction, elimination and the closed
/// form must coincide, and hit the pinned spot values.
#[test]
fn criterion_1_unweighted_grid_sweep_three_routes() {
    let started = Instant::now();
    let mut spot = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            let spec = GridSpec { n, m, x: 0 };
            let (g, _) = build_grid(&spec).unwrap();
            let by_elimination = det(&g);
            let (by_reduction, _) = reduce_det(&spec).unwrap();
            let formula = closed_form(&spec).unwrap();
            let expected = expected_closed_form(&spec);
            assert_eq!(by_reduction, by_elimination, "{spec}");
            assert_eq!(by_elimination, formula, "{spec}");
            assert_eq!(formula, expected, "{spec}");
            spot.push(((n, m), formula));
        }
    }
    for ((n, m), value) in [
        ((1, 1), -4),
        ((2, 1), -9),
        ((2, 2), 36),
        ((3, 2), -100),
        ((4, 4), 4900),
    ] {
        let found = spot
            .iter()
            .find(|(k, _)| *k == (n, m))
            .map(|(_, v)| v.clone())
            .unwrap();
        assert_eq!(found, rational(value), "spot value for ({n},{m})");
    }
    assert!(
        started.elapsed() < Duration::from_secs(10),
        "sweep took {:?}",
        started.elapsed()
    );
    pass("unweighted grid sweep, three routes agree (n,m ≤ 6)", started);
}

/// Weighted sweep, 1 ≤ n, m ≤ 4 and 0 ≤ x ≤ 3: elimination matches the
/// closed form exactly.
#[test]
fn criterion_2_weighted_grid_sweep() {
    let started = Instant::now();
    for n in 1..=4 {
        for m in 1..=4 {
            for x in 0..=3 {
                let spec = GridSpec { n, m, x };
                let (g, _) = build_grid(&spec).unwrap();
                assert_eq!(det(&g), expected_closed_form(&spec), "{spec}");
            }
        }
    }
    assert!(
        started.elapsed() < Duration::from_secs(30),
        "sweep took {:?}",
        started.elapsed()
    );
    pass("weighted grid sweep matches closed form (n,m ≤ 4, x ≤ 3)", started);
}

/// The basic-figure expansion and fraction-free elimination agree on every
/// small grid and on 200 random weighted graphs.
#[test]
fn criterion_3_oracle_equivalence() {
    let started = Instant::now();
    for n in 1..=4u64 {
        for m in 1..=4u64 {
            let spec = GridSpec { n, m, x: 0 };
            if spec.vertex_count() > 16 {
                continue;
            }
            for x in 0..=3 {
                let spec = GridSpec { n, m, x };
                let (g, _) = build_grid(&spec).unwrap();
                assert_eq!(sachs_det(&g).unwrap(), det(&g), "{spec}");
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5ac5);
    for case in 0..200 {
        let g = random_graph(&mut rng, 10);
        assert_eq!(sachs_det(&g).unwrap(), det(&g), "random case {case}");
    }
    assert!(
        started.elapsed() < Duration::from_secs(60),
        "checks took {:?}",
        started.elapsed()
    );
    pass("figure-expansion and elimination oracles agree", started);
}

/// 500 random valid row combines: the determinant never moves and the
/// opposite coefficient restores the weight map exactly.
#[test]
fn criterion_4_vertex_combine_invariance() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xc0b1);
    let mut checked = 0;
    while checked < 500 {
        let g = random_graph(&mut rng, 9);
        let mut candidates = Vec::new();
        for v in 0..g.vertex_count() {
            for u in 0..g.vertex_count() {
                if v != u && !g.has_edge(v, u) {
                    candidates.push((v, u));
                }
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let (v, u) = candidates[rng.gen_range(0..candidates.len())];
        let c = random_weight(&mut rng);
        let combined = vertex_combine(&g, v, u, &c).unwrap();
        assert_eq!(det(&combined), det(&g), "combine({v},{u},{c})");
        let restored = vertex_combine(&combined, v, u, &(-c.clone())).unwrap();
        assert_eq!(restored, g, "inverse combine({v},{u},{c})");
        checked += 1;
    }
    pass("row combine preserves the determinant (500 cases)", started);
}

/// Pendant rules on random graphs with a pendant vertex attached:
/// `-w(vu)² · det(G − {v,u}) = det(G)` and isolation preserves the
/// determinant.
#[test]
fn criterion_5_pendant_rules() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x9e4d);
    for case in 0..200 {
        let base = random_graph(&mut rng, 8);
        if base.vertex_count() == 0 {
            continue;
        }
        let n = base.vertex_count();
        let anchor = rng.gen_range(0..n);
        let w = random_weight(&mut rng);
        let mut edges: Vec<(usize, usize, Rational)> =
            base.edges().map(|(a, b, w)| (a, b, w.clone())).collect();
        edges.push((n, anchor, w.clone()));
        let g = Graph::new(n + 1, edges).unwrap();

        let whole = det(&g);
        let (factor, rest) = pendant_reduce(&g, n).unwrap();
        assert_eq!(factor, -(w.clone() * w.clone()), "case {case}");
        assert_eq!(factor * det(&rest), whole, "case {case}");

        let isolated = pendant_isolate(&g, n).unwrap();
        assert_eq!(det(&isolated), whole, "case {case}");
    }
    pass("pendant detach and isolate rules hold (200 cases)", started);
}

/// Path and cycle closed forms match elimination for every length up to 12,
/// covering odd cycles and both even residues mod 4.
#[test]
fn criterion_6_path_and_cycle_closed_forms() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xcafe);
    for vertices in 1..=12usize {
        for _ in 0..8 {
            let weights: Vec<Rational> = (1..vertices).map(|_| random_weight(&mut rng)).collect();
            let g = Graph::new(
                vertices,
                weights
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i, i + 1, w.clone())),
            )
            .unwrap();
            assert_eq!(path_det(&weights), det(&g), "path on {vertices}");
        }
    }
    let mut residues_seen = BTreeSet::new();
    for vertices in 3..=12usize {
        residues_seen.insert(if vertices % 2 == 1 {
            "odd"
        } else if vertices % 4 == 2 {
            "2 mod 4"
        } else {
            "0 mod 4"
        });
        for _ in 0..8 {
            let weights: Vec<Rational> = (0..vertices).map(|_| random_weight(&mut rng)).collect();
            let g = Graph::new(
                vertices,
                weights
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i, (i + 1) % vertices, w.clone())),
            )
            .unwrap();
            assert_eq!(cycle_det(&weights).unwrap(), det(&g), "cycle on {vertices}");
        }
    }
    assert_eq!(residues_seen.len(), 3, "all three cycle cases covered");
    pass("path and cycle closed forms match elimination (≤ 12)", started);
}

/// Each peel detaches exactly n+1 unit pairs and leaves precisely the next
/// grid (or final path); across a full reduction the accumulated factor
/// times the live determinant never moves.
#[test]
fn criterion_7_peel_postconditions_and_step_invariance() {
    let started = Instant::now();
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            for x in 0..=1u64 {
                let spec = GridSpec { n, m, x };
                let (g, labeling) = build_grid(&spec).unwrap();
                let mut trace = ReductionTrace::new();
                let mut previous = g.clone();
                let mut detach_weights: Vec<Rational> = Vec::new();
                let mut observe = |after: &Graph, step: &hexdet_core::reduce::ReductionStep<Rational>| {
                    if step.kind == StepKind::DetachP2 {
                        detach_weights.push(previous.weight(step.actors[0], step.actors[1]));
                    }
                    previous = after.clone();
                };
                let (residual, reduced) =
                    peel_first_row_observed(&g, &spec, &labeling, &mut trace, 0, &mut observe)
                        .unwrap();
                assert_eq!(trace.count_kind(StepKind::DetachP2), (n + 1) as usize, "{spec}");
                assert_eq!(detach_weights.len(), (n + 1) as usize, "{spec}");
                assert!(
                    detach_weights.iter().all(|w| *w == rational(1)),
                    "{spec}: detached pairs must have unit weight"
                );
                if m >= 2 {
                    let next = GridSpec { n, m: m - 1, x: x + 1 };
                    assert_eq!(reduced, Some(next), "{spec}");
                    let (expected, _) = build_grid(&next).unwrap();
                    assert_eq!(residual, expected, "{spec}: residual weight map");
                } else {
                    assert_eq!(reduced, None, "{spec}");
                    let expected = Graph::new(
                        2 * n as usize,
                        (0..2 * n as usize - 1).map(|t| {
                            let w = if t % 2 == 0 {
                                let i = (t as i64 + 2) / 2;
                                ratio(x as i64 + 1 + i, i)
                            } else {
                                rational(1)
                            };
                            (t, t + 1, w)
                        }),
                    )
                    .unwrap();
                    assert_eq!(residual, expected, "{spec}: residual path");
                }
            }
        }
    }

    // Step-by-step invariance on every grid small enough to recompute after
    // each of the O(nm) steps.
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            for x in 0..=1u64 {
                let spec = GridSpec { n, m, x };
                if spec.vertex_count() > 30 {
                    continue;
                }
                let (g, _) = build_grid(&spec).unwrap();
                let expected = det(&g);
                let mut accumulated = Rational::one();
                let mut steps = 0usize;
                let (value, _) = reduce_det_observed(&spec, &mut |after, step| {
                    accumulated *= &step.factor;
                    assert_eq!(
                        accumulated.clone() * det(after),
                        expected,
                        "{spec}: invariant broken at step {steps}"
                    );
                    steps += 1;
                })
                .unwrap();
                assert_eq!(value, expected, "{spec}");
                assert!(steps > 0);
            }
        }
    }
    pass("peel postconditions and per-step invariance", started);
}

/// Non-singularity: the closed form is a signed nonzero perfect square for
/// all n, m ≤ 64, and elimination confirms nonzero determinants up to
/// n, m ≤ 5.
#[test]
fn criterion_8_non_singularity() {
    let started = Instant::now();
    for n in 1..=64u64 {
        for m in 1..=64u64 {
            let spec = GridSpec { n, m, x: 0 };
            let value = closed_form(&spec).unwrap();
            assert!(!value.is_zero(), "{spec}");
            let exponent = n * m + n + m;
            assert_eq!(value.is_negative(), exponent % 2 == 1, "{spec}: sign law");
            let magnitude = value.numer().abs();
            let root = magnitude.sqrt();
            assert_eq!(&root * &root, magnitude, "{spec}: perfect square");
        }
    }
    for n in 1..=5 {
        for m in 1..=5 {
            let spec = GridSpec { n, m, x: 0 };
            let (g, _) = build_grid(&spec).unwrap();
            assert!(!det(&g).is_zero(), "{spec}");
        }
    }
    pass("grids are non-singular (closed form ≤ 64, elimination ≤ 5)", started);
}

/// Text format round-trips over the criterion-3 corpus and all small grids.
/// (CLI process-level round trips and exit codes live in the CLI crate's
/// acceptance tests.)
#[test]
fn criterion_9_format_round_trips() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5ac5);
    for case in 0..200 {
        let g = random_graph(&mut rng, 10);
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g, "case {case}");
        assert_eq!(serialize_graph(&back), text, "case {case}: canonical bytes");
    }
    for n in 1..=4 {
        for m in 1..=4 {
            let spec = GridSpec { n, m, x: 0 };
            let (g, _) = build_grid(&spec).unwrap();
            let text = serialize_graph(&g);
            assert_eq!(parse_graph(&text).unwrap(), g, "{spec}");
        }
    }
    // The labeling attached to a generated file is consistent with parsing.
    let spec = GridSpec { n: 2, m: 2, x: 1 };
    let (g, labeling) = build_grid(&spec).unwrap();
    assert_eq!(labeling, GridLabeling::new(&spec));
    let text = serialize_graph(&g);
    assert_eq!(parse_graph(&text).unwrap(), g);
    pass("graph format round-trips on corpus and grids", started);
}
