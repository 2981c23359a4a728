use std::collections::BTreeSet;

use geneo_core::geneo::{decompose_to_measure, diagonal_scaling, LinearOperator, Operator};
use geneo_core::graph::Graph;
use geneo_core::perception::{
    aut_pseudodistance, binary_sample, point_pseudodistance, sup_distance, Constraint, FunctionSpace, Measurement,
    PerceptionPair,
};
use geneo_core::perm::{FiniteGroup, Labels, Permutation};
use geneo_core::permutant::{
    all_orbits, alpha_action, hexagon_triangle_context, is_generalized_permutant, is_permutant_measure, orbit,
    transposition_permutant, ActionContext, GeneralizedPermutant, Mapping, Model, PermutantMeasure,
};
use geneo_core::rational::{self, int, ratio};
use geneo_core::Rational;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn measurement(n: usize) -> impl Strategy<Value = Measurement> {
    prop::collection::vec(small_rational(), n).prop_map(Measurement::new)
}

proptest! {
    #[test]
    fn cycle_text_round_trips(p in (1usize..=9).prop_flat_map(permutation)) {
        let labels = Labels::letters('a', p.degree());
        let text = p.format_cycles(&labels);
        prop_assert_eq!(Permutation::parse_cycles(&text, &labels).unwrap(), p.clone());
        let numeric = Labels::numeric(p.degree());
        prop_assert_eq!(Permutation::parse_cycles(&p.format_cycles(&numeric), &numeric).unwrap(), p);
    }

    #[test]
    fn inverse_and_associativity(
        (p, q, r) in (1usize..=8).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))
    ) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn generated_groups_are_closed(gens in (2usize..=6).prop_flat_map(|n| prop::collection::vec(permutation(n), 0..3))) {
        let n = gens.first().map_or(2, Permutation::degree);
        let group = FiniteGroup::generate(n, &gens).unwrap();
        let factorial: usize = (1..=n).product();
        prop_assert_eq!(factorial % group.order(), 0);
        prop_assert!(group.contains(&group.identity()));
        for a in group.elements() {
            prop_assert!(group.contains(&a.inverse()));
            for b in group.elements() {
                prop_assert!(group.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn sup_distance_is_a_metric((a, b, c) in (1usize..=6).prop_flat_map(|n| (measurement(n), measurement(n), measurement(n)))) {
        let ab = sup_distance(&a, &b).unwrap();
        prop_assert_eq!(&ab, &sup_distance(&b, &a).unwrap());
        prop_assert_eq!(sup_distance(&a, &a).unwrap(), rational::zero());
        prop_assert_eq!(ab == rational::zero(), a == b);
        prop_assert!(sup_distance(&a, &c).unwrap() <= ab + sup_distance(&b, &c).unwrap());
    }

    #[test]
    fn aut_pseudodistance_is_a_pseudometric(
        (f, g, h, sample) in (2usize..=5).prop_flat_map(|n| (
            permutation(n), permutation(n), permutation(n), prop::collection::vec(measurement(n), 1..5)
        ))
    ) {
        let fg = aut_pseudodistance(&f, &g, &sample).unwrap();
        prop_assert_eq!(&fg, &aut_pseudodistance(&g, &f, &sample).unwrap());
        prop_assert_eq!(aut_pseudodistance(&f, &f, &sample).unwrap(), rational::zero());
        prop_assert!(aut_pseudodistance(&f, &h, &sample).unwrap() <= fg + aut_pseudodistance(&g, &h, &sample).unwrap());
    }

    #[test]
    fn invariant_samples_make_group_elements_isometries(seed in prop::collection::vec(measurement(4), 1..4)) {
        // Close the seed family under the automorphisms of the 4-cycle.
        let l = Labels::chars("ABCD");
        let g = FiniteGroup::generate(4, &[
            Permutation::parse_cycles("(A,B,C,D)", &l).unwrap(),
            Permutation::parse_cycles("(A,C)", &l).unwrap(),
        ]).unwrap();
        let mut sample = Vec::new();
        for phi in &seed {
            for e in g.elements() {
                sample.push(phi.pull_back(e).unwrap());
            }
        }
        for e in g.elements() {
            for x1 in 0..4 {
                for x2 in 0..4 {
                    prop_assert_eq!(
                        point_pseudodistance(e.image(x1), e.image(x2), &sample).unwrap(),
                        point_pseudodistance(x1, x2, &sample).unwrap()
                    );
                }
            }
        }
    }
}

fn mapping(n: usize, k: usize) -> impl Strategy<Value = Mapping> {
    prop::collection::vec(0..n, k).prop_map(move |v| Mapping::new(v, n).unwrap())
}

#[test]
fn action_axioms_hold_exhaustively() {
    for ctx in [hexagon_triangle_context(), ActionContext::restriction(Labels::chars("ABCD"), 2).unwrap()] {
        let census = all_orbits(&ctx).unwrap();
        let id = ctx.group().identity();
        for o in &census.orbits {
            for f in o.members() {
                assert_eq!(&alpha_action(&id, f, &ctx).unwrap(), f);
                for g1 in ctx.group().elements() {
                    let once = alpha_action(g1, f, &ctx).unwrap();
                    for g2 in ctx.group().elements() {
                        let twice = alpha_action(g2, &once, &ctx).unwrap();
                        assert_eq!(twice, alpha_action(&g2.compose(g1).unwrap(), f, &ctx).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_sizes_divide_the_group_order() {
    let contexts = [
        hexagon_triangle_context(),
        ActionContext::restriction(Labels::chars("ABCD"), 2).unwrap(),
        transposition_permutant(4, Model::Edge).unwrap().context().clone(),
    ];
    for ctx in contexts {
        let census = all_orbits(&ctx).unwrap();
        let order = ctx.group().order();
        assert!(census.counts.keys().all(|size| order % size == 0));
        let covered: usize = census.counts.iter().map(|(size, count)| size * count).sum();
        assert_eq!(covered, census.total);
        assert_eq!(census.total, ctx.x_size().pow(ctx.y_size() as u32));
    }
}

#[test]
fn alpha_permutes_every_permutant() {
    let ctx = hexagon_triangle_context();
    for o in all_orbits(&ctx).unwrap().orbits {
        for g in ctx.group().elements() {
            let image: BTreeSet<Mapping> = o.members().iter().map(|h| alpha_action(g, h, &ctx).unwrap()).collect();
            assert_eq!(&image, o.members());
        }
    }
}

/// α-closure under every group element, computed without the library's
/// generator shortcut.
fn closed_under_whole_group(members: &BTreeSet<Mapping>, ctx: &ActionContext) -> bool {
    members.iter().all(|h| ctx.group().elements().iter().all(|g| members.contains(&alpha_action(g, h, ctx).unwrap())))
}

fn union_of_orbits(members: &BTreeSet<Mapping>, ctx: &ActionContext) -> bool {
    let mut union = BTreeSet::new();
    for h in members {
        union.extend(orbit(h, ctx).unwrap().members().iter().cloned());
    }
    union == *members
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn permutant_iff_union_of_orbits(
        picks in subsequence((0..22usize).collect::<Vec<_>>(), 0..6),
        extra in prop::collection::vec(mapping(6, 3), 0..3),
        drop_one in any::<bool>(),
    ) {
        let ctx = hexagon_triangle_context();
        let census = all_orbits(&ctx).unwrap();
        let mut members: BTreeSet<Mapping> = picks.iter().flat_map(|&i| census.orbits[i].members().iter().cloned()).collect();
        members.extend(extra);
        if drop_one {
            if let Some(first) = members.iter().next().cloned() {
                members.remove(&first);
            }
        }
        let verdict = is_generalized_permutant(&members, &ctx).unwrap();
        prop_assert_eq!(verdict.holds(), closed_under_whole_group(&members, &ctx));
        prop_assert_eq!(verdict.holds(), union_of_orbits(&members, &ctx));
        if let Some(w) = verdict.witness() {
            let h = ctx.parse_mapping(&w.mapping).unwrap();
            let g = Permutation::parse_cycles(&w.element, ctx.x_labels()).unwrap();
            prop_assert!(members.contains(&h));
            prop_assert!(!members.contains(&alpha_action(&g, &h, &ctx).unwrap()));
        }
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn diagonal_scaling_matches_vertex_example_pattern() {
    let l = Labels::chars("ABCD");
    let group = FiniteGroup::generate(4, &[Permutation::parse_cycles("(B,D)", &l).unwrap()]).unwrap();
    let space = FunctionSpace::constrained(4, vec![Constraint::linear(&[1, 0, 1, 0], 0)]).unwrap();
    let pair = PerceptionPair::new(space, group).unwrap();
    for code in 0..81 {
        let d: Vec<i64> = (0..4).map(|i| 1 + (code / 3i64.pow(i)) % 3).collect();
        let accepted = diagonal_scaling(&ints(&d), &pair).unwrap().is_accepted();
        assert_eq!(accepted, d[0] == d[2] && d[1] == d[3], "d = {d:?}");
    }
}

#[test]
fn diagonal_scaling_matches_edge_example_pattern() {
    let k4 = Graph::complete(4);
    let delta = Permutation::parse_cycles("(r,s)(q,t)", k4.edge_labels()).unwrap();
    let group = FiniteGroup::generate(6, &[delta]).unwrap();
    let space = FunctionSpace::constrained(6, vec![Constraint::linear(&[1, 0, 0, 0, 0, 1], 0)]).unwrap();
    let pair = PerceptionPair::new(space, group).unwrap();
    for code in 0..729 {
        let d: Vec<i64> = (0..6).map(|i| 1 + (code / 3i64.pow(i)) % 3).collect();
        let accepted = diagonal_scaling(&ints(&d), &pair).unwrap().is_accepted();
        assert_eq!(accepted, d[0] == d[5] && d[1] == d[4] && d[2] == d[3], "d = {d:?}");
    }
}

/// Maps `Y → X` with fewer than `m` distinct images, `Y` the first two of four points.
fn image_bounded(ctx: &ActionContext, m: usize) -> Vec<Mapping> {
    all_orbits(ctx)
        .unwrap()
        .orbits
        .iter()
        .flat_map(|o| o.members().iter().cloned())
        .filter(|h| h.image_size() < m)
        .collect()
}

#[test]
fn image_size_sets_are_permutants() {
    let ctx = ActionContext::restriction(Labels::chars("ABCD"), 2).unwrap();
    assert_eq!(ctx.group().order(), 4);
    for m in 1..=4 {
        let h = image_bounded(&ctx, m);
        let expected = [0, 0, 4, 16, 16][m];
        assert_eq!(h.len(), expected);
        assert!(GeneralizedPermutant::new(ctx.clone(), h).is_ok());
    }
}

#[test]
fn image_size_measures_are_permutant_measures() {
    let ctx = ActionContext::restriction(Labels::chars("ABCD"), 2).unwrap();
    let mut all_weights = Vec::new();
    for m in 1..=2usize {
        let hm: Vec<Mapping> = image_bounded(&ctx, m + 1).into_iter().filter(|h| h.image_size() == m).collect();
        assert_eq!(hm.len(), [4, 12][m - 1]);
        let w = ratio(1, (m * hm.len()) as i64);
        let weights: Vec<(Mapping, Rational)> = hm.iter().map(|h| (h.clone(), w.clone())).collect();
        all_weights.extend(weights.clone());
        let mu = PermutantMeasure::new(ctx.clone(), weights).unwrap();
        assert!(is_permutant_measure(&mu).holds());
        assert_eq!(mu.total_variation(), ratio(1, m as i64));
        let op = LinearOperator::from_measure(&mu).unwrap();
        assert!(op.is_geo() && op.is_geneo());
        assert!(op.verify_nonexpansive());
    }
    let mu = PermutantMeasure::new(ctx, all_weights).unwrap();
    assert!(is_permutant_measure(&mu).holds());
    assert_eq!(mu.total_variation(), ratio(3, 2));
    let op = LinearOperator::from_measure(&mu).unwrap();
    assert!(op.is_geo() && !op.is_geneo());
}

fn orbit_weights() -> impl Strategy<Value = Vec<(usize, Rational)>> {
    prop::collection::vec((0..22usize, small_rational()), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_measures_give_equivariant_operators(weights in orbit_weights()) {
        let ctx = hexagon_triangle_context();
        let census = all_orbits(&ctx).unwrap();
        let mut entries: Vec<(Mapping, Rational)> = Vec::new();
        for (i, w) in weights {
            entries.extend(census.orbits[i].members().iter().map(|m| (m.clone(), w.clone())));
        }
        let mu = PermutantMeasure::new(ctx, entries).unwrap();
        prop_assert!(is_permutant_measure(&mu).holds());
        let op = LinearOperator::from_measure(&mu).unwrap();
        prop_assert!(op.is_geo());
        let light = mu.total_variation() <= rational::one();
        prop_assert_eq!(op.is_geneo(), light);
        if light {
            prop_assert!(op.verify_nonexpansive());
        }
    }

    #[test]
    fn decomposition_round_trips(picks in prop::collection::vec((0..11usize, 0i64..=4), 1..4)) {
        // Nonnegative weights on conjugation classes of the K4 transposition context.
        let h = transposition_permutant(4, Model::Edge).unwrap();
        let ctx = h.context().clone();
        let classes = all_orbits(&ctx).unwrap();
        let bijective: Vec<&GeneralizedPermutant> = classes
            .orbits
            .iter()
            .filter(|o| o.representative().unwrap().to_permutation().is_some())
            .collect();
        let mut entries = Vec::new();
        let mut total = 0i64;
        for (i, w) in &picks {
            let o = bijective[i % bijective.len()];
            total += w * o.len() as i64;
            entries.extend(o.members().iter().map(|m| (m.clone(), int(*w))));
        }
        prop_assume!(total > 0);
        let scale = ratio(1, total);
        let entries = entries.into_iter().map(|(m, w)| (m, w * &scale)).collect::<Vec<_>>();
        let op = LinearOperator::from_measure(&PermutantMeasure::new(ctx, entries).unwrap()).unwrap();
        let mu = decompose_to_measure(&op).unwrap();
        prop_assert!(mu.total_variation() <= rational::one());
        prop_assert!(is_permutant_measure(&mu).holds());
        let rebuilt = LinearOperator::from_measure(&mu).unwrap();
        prop_assert_eq!(rebuilt.coeffs(), op.coeffs());
    }

    #[test]
    fn combinations_of_geneos_stay_geneos(seed in any::<u64>(), a in 0..22usize, b in 0..22usize, lambda in 0i64..=4) {
        let ctx = hexagon_triangle_context();
        let census = all_orbits(&ctx).unwrap();
        let fa = LinearOperator::from_permutant(&census.orbits[a]).unwrap();
        let fb = LinearOperator::from_permutant(&census.orbits[b]).unwrap();
        let l = ratio(lambda, 4);
        let convex = geneo_core::geneo::convex_combination(&[fa.clone(), fb.clone()], &[l.clone(), rational::one() - l]).unwrap();
        prop_assert!(convex.is_geneo());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for op in [
            Operator::pointwise_min(fa.clone().into(), fb.clone().into()).unwrap(),
            Operator::pointwise_max(fa.clone().into(), fb.clone().into()).unwrap(),
        ] {
            let report = op.sampled_check(&mut rng, 8);
            prop_assert!(report.equivariance.holds());
            prop_assert!(report.nonexpansivity.holds());
        }
        // Hexagon → triangle, then the triangle's own averaging operator.
        let tri = ActionContext::classical(ctx.target_group().clone(), ctx.y_labels().clone()).unwrap();
        let rot = GeneralizedPermutant::new(
            tri.clone(),
            tri.group().elements().iter().filter(|g| g.order() == 3).map(Mapping::from_permutation),
        ).unwrap();
        let avg = LinearOperator::from_permutant(&rot).unwrap();
        let chained = geneo_core::geneo::compose(&avg, &fa).unwrap();
        prop_assert!(chained.is_geneo());
        let lazy = Operator::chain(avg.into(), fa.into()).unwrap();
        let report = lazy.sampled_check(&mut rng, 8);
        prop_assert!(report.equivariance.holds() && report.nonexpansivity.holds());
    }
}

#[test]
fn induced_edge_map_is_a_homomorphism() {
    for graph in [
        Graph::complete(4),
        Graph::complete(5),
        Graph::cycle(Labels::chars("ABCDEF"), Labels::chars("abcdef")).unwrap(),
    ] {
        let hom = graph.induced_edge_homomorphism().unwrap();
        hom.verify_exhaustive().unwrap();
        for g in hom.source().elements() {
            let degrees = graph.degrees();
            assert!((0..graph.vertex_count()).all(|v| degrees[g.image(v)] == degrees[v]));
        }
    }
}

#[test]
fn transposition_operators_are_geneos() {
    for n in 2..=6 {
        for model in [Model::Vertex, Model::Edge] {
            let op = LinearOperator::from_permutant(&transposition_permutant(n, model).unwrap()).unwrap();
            assert!(op.verify_equivariance().holds());
            assert!(op.verify_nonexpansive());
        }
    }
}

#[test]
fn f4_is_at_distance_one_from_zero() {
    let f: Operator = LinearOperator::from_permutant(&transposition_permutant(4, Model::Edge).unwrap()).unwrap().into();
    let zero: Operator = LinearOperator::zero(f.context()).unwrap().into();
    let sample = binary_sample(6);
    assert_eq!(geneo_core::geneo::geneo_distance(&f, &zero, &sample).unwrap(), rational::one());
    assert_eq!(
        geneo_core::geneo::geneo_distance(&zero, &f, &sample).unwrap(),
        geneo_core::geneo::geneo_distance(&f, &zero, &sample).unwrap()
    );
}
