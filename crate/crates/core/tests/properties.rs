use proptest::prelude::*;

use distance_estrada::bounds::{thm3_lower, thm5_upper};
use distance_estrada::eigen::{eig_sym, SymMatrix};
use distance_estrada::estrada::{estrada_index, ExpSeries};
use distance_estrada::graph::Graph;
use distance_estrada::io::{parse_graph6, to_graph6};
use distance_estrada::metric::DistanceMatrix;
use distance_estrada::spectra::distance_spectrum;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Connected graphs: a random spanning path plus random extra edges.
fn arb_connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(move |(order, bits)| {
                let extra = graph_from_bits(n, &bits);
                let mut edges: Vec<(usize, usize)> = extra.edges().collect();
                for w in order.windows(2) {
                    let (u, v) = (w[0].min(w[1]), w[0].max(w[1]));
                    if !extra.has_edge(u, v) {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

fn arb_symmetric(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5i32..=5, n * n)
            .prop_map(move |v| SymMatrix::from_fn(n, |i, j| v[i * n + j] as f64))
    })
}

/// Cyclic Jacobi rotations, used only as an independent oracle.
fn jacobi_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let n = m.order();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (row_p, row_q) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * row_p[k] - s * row_q[k];
                    a[q][k] = s * row_p[k] + c * row_q[k];
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    d.sort_by(|x, y| y.total_cmp(x));
    d
}

/// All-pairs shortest paths by Floyd-Warshall, independent of the BFS.
fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        let text = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(20)) {
        let c = g.complement();
        let n = g.order();
        prop_assert_eq!(c.size() + g.size(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn eigenvalues_match_jacobi_oracle(m in arb_symmetric(12)) {
        let ours = eig_sym(&m).unwrap();
        let oracle = jacobi_eigenvalues(&m);
        let scale = m.frobenius_sq().sqrt().max(1.0);
        for (a, b) in ours.values().iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-9 * scale, "{} vs {}", a, b);
        }
    }

    #[test]
    fn distance_matrix_matches_floyd_warshall(g in arb_connected(1, 16)) {
        let dm = DistanceMatrix::new(&g).unwrap();
        let fw = floyd_warshall(&g);
        for (i, row) in fw.iter().enumerate() {
            prop_assert_eq!(dm.row(i), row.as_slice());
        }
    }

    #[test]
    fn distance_spectrum_trace_identities(g in arb_connected(2, 24)) {
        let dm = DistanceMatrix::new(&g).unwrap();
        let s = distance_spectrum(&dm).unwrap();
        let two_sum_sq = 2.0 * dm.sum_sq_distances() as f64;
        prop_assert!(s.sum().abs() <= 1e-9 * two_sum_sq.sqrt());
        prop_assert!((s.sum_sq() - two_sum_sq).abs() <= 1e-9 * two_sum_sq);
    }

    #[test]
    fn dee_lies_between_degree_and_diameter_bounds(g in arb_connected(2, 20)) {
        let dee = estrada_index(&distance_spectrum(&DistanceMatrix::new(&g).unwrap()).unwrap());
        let lower = thm3_lower(&g).unwrap().ln();
        let upper = thm5_upper(&g).unwrap().ln();
        prop_assert!(lower <= dee.log_value + 1e-9);
        prop_assert!(dee.log_value < upper);
    }

    #[test]
    fn series_log_matches_direct_sum(terms in prop::collection::vec((0.1f64..10.0, -50.0f64..50.0), 1..20)) {
        let s = terms.iter().fold(ExpSeries::new(), |acc, &(c, x)| acc.term(c, x));
        let direct: f64 = terms.iter().map(|&(c, x)| c * x.exp()).sum();
        prop_assert!((s.ln() - direct.ln()).abs() <= 1e-12 * direct.ln().abs().max(1.0));
    }
}
