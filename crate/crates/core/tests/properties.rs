mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot::arrow::{self, circle_variable, reduce_word, Cusp, CuspKind, CuspWord, Side, SmoothingChoice};
use vknot::colorability::{self, diagram_colorable, verify_witness, DiagramColorability};
use vknot::moves::{self, enumerate_sites, MoveKind};
use vknot::{parity, ArrowPoly, ColorabilityVerdict, GaussCode, KMonomial, Role};

fn codes(max_crossings: usize) -> impl Strategy<Value = GaussCode> {
    (any::<u64>(), 0..=max_crossings, 1usize..=2).prop_map(|(seed, n, k)| {
        moves::random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, k)
    })
}

fn knots(max_crossings: usize) -> impl Strategy<Value = GaussCode> {
    (any::<u64>(), 0..=max_crossings)
        .prop_map(|(seed, n)| moves::random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, 1))
}

fn polys() -> impl Strategy<Value = ArrowPoly> {
    let mono = prop::collection::vec((1u32..=3, 1u32..=2), 0..=2).prop_map(KMonomial::from_pairs);
    prop::collection::vec((-3i64..=3, -6i32..=6, mono), 0..=4).prop_map(|terms| {
        terms.into_iter().fold(ArrowPoly::zero(), |acc, (c, a, m)| acc + ArrowPoly::term(c, a, m))
    })
}

fn sides() -> impl Strategy<Value = Vec<Side>> {
    (0usize..=20).prop_flat_map(|n| prop::collection::vec(prop_oneof![Just(Side::L), Just(Side::R)], 2 * n))
}

fn word(sides: &[Side]) -> CuspWord {
    CuspWord(sides.iter().map(|&side| Cusp { side, crossing: 1, kind: CuspKind::Sink }).collect())
}

/// Rebuilds the bracket from traced states, optionally with every side letter flipped.
fn bracket_from_states(code: &GaussCode, flip: bool) -> ArrowPoly {
    let mut total = ArrowPoly::zero();
    for state in arrow::all_states(code).unwrap() {
        let mut term = ArrowPoly::a_pow(state.alpha as i32 - state.beta as i32);
        for w in &state.circles {
            let w = if flip {
                CuspWord(w.0.iter().map(|c| Cusp { side: c.side.flip(), ..*c }).collect())
            } else {
                w.clone()
            };
            let var = circle_variable(&reduce_word(&w)).unwrap();
            term = term * ArrowPoly::term(1, 0, var);
        }
        total = total + term * ArrowPoly::loop_value().pow(state.circles.len() as u32 - 1);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn code_text_round_trips(c in codes(8)) {
        let back: GaussCode = c.to_string().parse().unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn mirror_is_an_involution_that_negates_writhe(c in codes(8)) {
        let m = c.mirror();
        prop_assert_eq!(m.mirror(), c.clone());
        prop_assert_eq!(m.writhe(), -c.writhe());
        for (x, y) in c.components().iter().zip(m.components()) {
            prop_assert_eq!(x.len(), y.len());
            for (p, q) in x.iter().zip(y) {
                prop_assert_eq!(p.crossing, q.crossing);
                prop_assert_eq!(p.role, q.role.flip());
            }
        }
    }

    #[test]
    fn one_arc_per_passage(c in codes(8)) {
        let d = c.diagram();
        prop_assert_eq!(d.arc_count(), c.passage_count() + d.empty_components);
    }

    #[test]
    fn ring_axioms(p in polys(), q in polys(), r in polys()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &p * &q + &p * &r);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in polys(), q in polys()) {
        let s = |x: &ArrowPoly| x.substitute_k_one();
        prop_assert_eq!(s(&(&p * &q)), s(&p) * s(&q));
        prop_assert_eq!(s(&(&p + &q)), s(&p) + s(&q));
    }

    #[test]
    fn k_degrees_of_products_add(p in polys(), q in polys()) {
        let sums: BTreeSet<u32> = p
            .k_degree_set()
            .iter()
            .flat_map(|x| q.k_degree_set().into_iter().map(move |y| x + y))
            .collect();
        prop_assert!((&p * &q).k_degree_set().is_subset(&sums));
    }

    #[test]
    fn polynomial_text_round_trips(p in polys()) {
        let back: ArrowPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn reduction_is_confluent(w in sides(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let library: Vec<Side> = reduce_word(&word(&w)).sides();
        prop_assert_eq!(cyclic_canon(&library), cyclic_canon(&reduce_leftmost(&w)));
        prop_assert_eq!(cyclic_canon(&library), cyclic_canon(&reduce_random(&w, &mut rng)));
        let n = library.len();
        prop_assert!((0..n).all(|i| n < 2 || library[i] != library[(i + 1) % n]));
    }

    #[test]
    fn states_partition_crossings_and_alternate(c in codes(6)) {
        let n = c.crossing_count() as u32;
        for (mask, s) in arrow::all_states(&c).unwrap().into_iter().enumerate() {
            prop_assert_eq!(s.alpha + s.beta, n);
            // each disoriented smoothing leaves two cusps
            let cusps: usize = s.circles.iter().map(|w| w.len()).sum();
            prop_assert_eq!(cusps, 2 * mask.count_ones() as usize);
            for w in &s.circles {
                let k = w.len();
                prop_assert_eq!(k % 2, 0);
                prop_assert!((0..k).all(|i| k < 2 || w.0[i].kind != w.0[(i + 1) % k].kind));
            }
        }
    }

    #[test]
    fn global_side_flip_preserves_the_bracket(c in codes(6)) {
        let bracket = arrow::arrow_bracket(&c).unwrap();
        prop_assert_eq!(bracket_from_states(&c, false), bracket.clone());
        prop_assert_eq!(bracket_from_states(&c, true), bracket);
    }

    #[test]
    fn mirror_inverts_a(c in codes(7)) {
        let direct = arrow::arrow_normalized(&c.mirror()).unwrap();
        prop_assert_eq!(direct, arrow::arrow_normalized(&c).unwrap().invert_a());
    }

    #[test]
    fn k_one_image_is_the_kauffman_bracket(c in codes(7)) {
        let ours = to_laurent(&arrow::arrow_bracket(&c).unwrap().substitute_k_one());
        prop_assert_eq!(ours, kauffman_bracket(&c));
    }

    #[test]
    fn single_moves_preserve_invariants(c in codes(6), pick in any::<prop::sample::Index>()) {
        let bracket = arrow::arrow_bracket(&c).unwrap();
        let normalized = arrow::arrow_normalized(&c).unwrap();
        let j = parity::odd_writhe(&c).ok();
        for kind in MoveKind::ALL {
            let sites = enumerate_sites(&c, kind);
            if sites.is_empty() {
                continue;
            }
            let step = &sites[pick.index(sites.len())];
            let after = moves::apply(&c, step).unwrap();
            if matches!(kind, MoveKind::R1Add | MoveKind::R1Remove) {
                prop_assert_eq!(arrow::arrow_normalized(&after).unwrap(), normalized.clone());
            } else {
                prop_assert_eq!(arrow::arrow_bracket(&after).unwrap(), bracket.clone(), "{:?}", step);
            }
            prop_assert_eq!(parity::odd_writhe(&after).ok(), j);
            let back = moves::apply(&after, &moves::inverse(&c, step).unwrap()).unwrap();
            prop_assert!(moves::equivalent_up_to_relabeling(&back, &c), "{} -> {} -> {}", c, after, back);
        }
    }

    #[test]
    fn colorable_diagrams_pass_every_criterion(c in codes(8)) {
        if let DiagramColorability::Colorable(w) = diagram_colorable(&c) {
            prop_assert!(verify_witness(&c, &w));
            if c.is_knot() {
                prop_assert_eq!(parity::odd_writhe(&c).unwrap(), 0);
            }
            let p = arrow::arrow_normalized(&c).unwrap();
            prop_assert!(colorability::arrow_obstructions(&p).is_empty());
            let verdict = colorability::criteria_verdict(&c).unwrap();
            let colorable = matches!(verdict, ColorabilityVerdict::Colorable { .. });
            prop_assert!(colorable, "{}", verdict.to_json());
        }
    }

    #[test]
    fn odd_crossings_make_knots_uncolorable(c in knots(8)) {
        if !parity::odd_crossings(&c).unwrap().is_empty() {
            let blocked = matches!(diagram_colorable(&c), DiagramColorability::NotColorableDiagram);
            prop_assert!(blocked);
        }
    }
}

#[test]
fn trefoil_seifert_state() {
    let s = arrow::trace_state(&fixture("trefoil"), SmoothingChoice::all_oriented());
    assert_eq!((s.alpha, s.beta), (3, 0));
    assert_eq!(s.circles.len(), 2);
    assert!(s.circles.iter().all(|w| w.is_empty()));
}

#[test]
fn unknot_state() {
    let s = arrow::trace_state(&code(""), SmoothingChoice::all_oriented());
    assert_eq!((s.alpha, s.beta, s.circles.len()), (0, 0, 1));
    assert!(s.circles[0].is_empty());
}

#[test]
fn either_cancellation_of_lrll_leaves_lr() {
    use Side::*;
    let w = [L, R, L, L];
    assert_eq!(cyclic_canon(&reduce_leftmost(&w)), vec![L, R]);
    // two sites are available (positions 2-3 and the wrap-around 3-0); random order hits both
    for seed in 0..16 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        assert_eq!(cyclic_canon(&reduce_random(&w, &mut rng)), vec![L, R]);
    }
    assert_eq!(reduce_word(&word(&w)).len(), 2);
}

#[test]
fn classical_fixtures_are_planar_with_trivial_as() {
    for name in ["unknot", "trefoil", "figure-eight"] {
        let k = fixture(name);
        assert_eq!(knot_genus(&k), 0, "{name}");
        assert_eq!(arrow::as_set(&k).unwrap(), BTreeSet::from([0]), "{name}");
    }
    // the virtual fixtures are not
    assert!(knot_genus(&fixture("3.7*")) > 0);
}

#[test]
fn figure_eight_jones() {
    let expected: ArrowPoly = "A^8 - A^4 + 1 - A^-4 + A^-8".parse().unwrap();
    assert_eq!(arrow::arrow_normalized(&fixture("figure-eight")).unwrap(), expected);
}

#[test]
fn passage_roles_are_paired() {
    for c in random_codes(11, 30, 8) {
        for &label in c.signs().keys() {
            assert!(c.position(label, Role::Over).is_some());
            assert!(c.position(label, Role::Under).is_some());
        }
    }
}
