use proptest::prelude::*;
use qwsearch::graph::{BipartiteSpec, Graph};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..24).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(n * n / 2 + 1)).prop_map(move |pairs| {
            let edges: Vec<_> = pairs
                .into_iter()
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (i.min(j), i.max(j)))
                .collect();
            let mut edges = edges;
            edges.sort_unstable();
            edges.dedup();
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn matrices_exactly_symmetric(g in arb_graph()) {
        for m in [g.adjacency_matrix(), g.laplacian(), g.signless_laplacian()] {
            prop_assert_eq!(m.transpose(), m);
        }
    }

    #[test]
    fn row_sums(g in arb_graph()) {
        let l = g.laplacian();
        let q = g.signless_laplacian();
        let deg = g.degrees();
        for (i, &d) in deg.iter().enumerate() {
            prop_assert_eq!(l.row(i).sum(), 0.0);
            prop_assert_eq!(q.row(i).sum(), 2.0 * d as f64);
        }
    }

    #[test]
    fn laplacian_identities(g in arb_graph()) {
        let (a, d, l, q) = (g.adjacency_matrix(), g.degree_matrix(), g.laplacian(), g.signless_laplacian());
        prop_assert_eq!(&q - &l, &d * 2.0);
        prop_assert_eq!(&q + &l, &a * 2.0);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let back = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn complete_bipartite_shape(n1 in 1usize..30, n2 in 1usize..30, f1 in 0.0f64..=1.0, f2 in 0.0f64..=1.0) {
        let k1 = (f1 * n1 as f64).round() as usize;
        let k2 = (f2 * n2 as f64).round() as usize;
        prop_assume!(k1 + k2 >= 1);
        let spec = BipartiteSpec::new(n1, n2, k1, k2).unwrap();
        let (g, marked) = spec.complete_bipartite().unwrap();
        prop_assert_eq!(g.vertex_count(), n1 + n2);
        prop_assert_eq!(g.edge_count(), n1 * n2);
        prop_assert_eq!(marked.len(), k1 + k2);
        for i in 0..n1 {
            for j in n1..n1 + n2 {
                prop_assert!(g.has_edge(i, j));
            }
        }
    }
}

#[test]
fn invalid_edge_lists() {
    for text in [
        "2 1\n0 0\n",
        "3 1\n0 3\n",
        "3 2\n0 1\n1 0\n",
        "3 2\n0 1\n",
        "x y\n",
        "",
    ] {
        assert!(Graph::from_edge_list(text).is_err(), "{text:?}");
    }
}
