use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use graphlim::convergence::dependency_graph;
use graphlim::counting::{ball_distribution, hom_count, i_profile, ind_count, inj_count, log_t_density};
use graphlim::cumulant::{
    bell_number, cgf_value, enumerate_partitions, kappa_gj, moments_to_cumulants, target_from_lambda, ColorPattern,
    LambdaVector, Route,
};
use graphlim::graph::{parse_graph, serialize_graph, EdgeLabeledMultigraph, SimpleGraph};
use graphlim::scalar::{format_ratio, parse_ratio, rational};
use graphlim::Budget;

fn graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            SimpleGraph::new(n, edges).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (SimpleGraph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn permuted(g: &SimpleGraph, perm: &[usize]) -> SimpleGraph {
    SimpleGraph::new(g.vertex_count(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

fn multigraph() -> impl Strategy<Value = (EdgeLabeledMultigraph, Vec<usize>)> {
    (2usize..=5).prop_flat_map(|n| {
        let edge = (0..n, 0..n).prop_filter("no loops", |(u, v)| u != v);
        (
            proptest::collection::vec(edge, 1..=4).prop_map(move |e| EdgeLabeledMultigraph::new(n, e).unwrap()),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

fn lambda(k: usize, cap: f64) -> impl Strategy<Value = LambdaVector> {
    (proptest::collection::vec(-cap..cap, k), proptest::collection::vec(-cap..cap, k * k)).prop_map(move |(v, e)| {
        let mut edge = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in i..k {
                edge[i][j] = e[i * k + j];
                edge[j][i] = e[i * k + j];
            }
        }
        LambdaVector::new(k, v, edge).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in graph(8)) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_code_ignores_vertex_names((g, perm) in with_permutation(7)) {
        prop_assert_eq!(g.canonical_code(), permuted(&g, &perm).canonical_code());
    }

    #[test]
    fn multigraph_canon_ignores_vertex_names((f, perm) in multigraph()) {
        let moved = f.relabel(&perm);
        prop_assert_eq!(f.canonical_code(), moved.canonical_code());
        prop_assert_eq!(f.canonical(), moved.canonical());
    }

    #[test]
    fn map_counts_are_ordered_and_invariant((f, perm) in with_permutation(4), g in graph(5)) {
        let (hom, inj, ind) = (hom_count(&f, &g), inj_count(&f, &g), ind_count(&f, &g));
        prop_assert!(ind <= inj && inj <= hom);
        let moved = permuted(&f, &perm);
        prop_assert_eq!(hom_count(&moved, &g), hom);
        prop_assert_eq!(inj_count(&moved, &g), inj);
    }

    #[test]
    fn profile_total_is_m_to_the_l(g in graph(6), l in 1usize..=3) {
        let p = i_profile(&g, l, &Budget::default()).unwrap();
        prop_assert_eq!(p.total(), (g.edge_count() as u64).pow(l as u32));
    }

    #[test]
    fn balls_cover_every_vertex(g in graph(7), r in 0usize..=3) {
        let d = ball_distribution(&g, r);
        prop_assert_eq!(d.counts.values().sum::<usize>(), g.vertex_count());
        let total: BigRational = d.frequencies().into_values().sum();
        prop_assert_eq!(total, BigRational::one());
    }

    #[test]
    fn dependency_degree_is_at_most_twice_d(g in graph(7)) {
        let dep = dependency_graph(&g);
        prop_assert_eq!(dep.node_count(), g.vertex_count() + g.edge_count());
        prop_assert!(dep.max_degree() <= 2 * g.max_degree().max(1));
    }

    #[test]
    fn bridge_identity(g in graph(6), l in lambda(2, 0.5)) {
        let budget = Budget::default();
        let f = cgf_value(&g, &l, &budget).unwrap();
        let lt = log_t_density(&g, &target_from_lambda(&l), &budget).unwrap() / g.vertex_count() as f64;
        prop_assert!((f - lt).abs() <= 1e-12, "{} vs {}", f, lt);
        prop_assert_eq!(cgf_value(&g, &LambdaVector::zeros(2), &budget).unwrap(), 0.0);
    }

    #[test]
    fn cumulants_of_a_shift(values in proptest::collection::vec(-20i64..20, 1..6), c in -5i64..5) {
        let moments = |shift: i64| -> Vec<BigRational> {
            (1..=5u32)
                .map(|r| {
                    let s: BigRational = values.iter().map(|&x| rational(x + shift, 1).pow(r as i32)).sum();
                    s / rational(values.len() as i64, 1)
                })
                .collect()
        };
        let base = moments_to_cumulants(&moments(0));
        let moved = moments_to_cumulants(&moments(c));
        prop_assert_eq!(&moved[0], &(&base[0] + rational(c, 1)));
        prop_assert_eq!(&moved[1..], &base[1..]);
        prop_assert!(base[1] >= BigRational::zero());
    }

    #[test]
    fn kappa_is_color_symmetric(
        g in graph(5),
        pairs in proptest::collection::vec((0usize..3, 0usize..3), 1..=2),
        sigma in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let budget = Budget::default();
        let j = ColorPattern::from_pairs(&pairs);
        let direct = kappa_gj(&g, &j, 3, Route::Direct, &budget).unwrap();
        prop_assert_eq!(&kappa_gj(&g, &j.permute_colors(&sigma), 3, Route::Direct, &budget).unwrap(), &direct);
        prop_assert_eq!(kappa_gj(&g, &j, 3, Route::Decomposition, &budget).unwrap(), direct);
    }

    #[test]
    fn ratio_strings_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rational(n, d);
        prop_assert_eq!(parse_ratio(&format_ratio(&r)).unwrap(), r);
    }
}

#[test]
fn partition_counts_are_bell_numbers() {
    for l in 0..=7 {
        assert_eq!(enumerate_partitions(l).unwrap().len() as u64, bell_number(l));
    }
    assert_eq!(bell_number(7), 877);
}
