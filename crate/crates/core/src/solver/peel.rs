use crate::graph::{Graph, RationalDensity};

/// Greedy peeling lower bound on ω_γ(G).
///
/// Repeatedly deletes a minimum-degree vertex (lowest index on ties) and
/// returns the first, hence largest, remaining set that is a γ-quasi-clique.
/// Returns `(0, [])` only for the empty graph.
pub fn greedy_peel(g: &Graph, gamma: RationalDensity) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg = g.degrees();
    let mut edges = g.m() as u64;
    for size in (1..=n).rev() {
        if edges >= gamma.quasi_threshold(size as u64) {
            let witness = (0..n).filter(|&v| alive[v]).collect();
            return (size, witness);
        }
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("size >= 1 leaves a live vertex");
        alive[v] = false;
        edges -= deg[v] as u64;
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    (0, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peels_pendant_vertices() {
        // K4 on {0..3} with a pendant path 3-4-5.
        let g = Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
            ],
        )
        .unwrap();
        let (k, w) = greedy_peel(&g, RationalDensity::ONE);
        assert_eq!((k, w), (4, vec![0, 1, 2, 3]));
        let (k, _) = greedy_peel(&g, "1/2".parse().unwrap());
        // all six vertices: 8 edges >= ⌈15/2⌉
        assert_eq!(k, 6);
        assert_eq!(greedy_peel(&Graph::empty(4), "1/2".parse().unwrap()).0, 1);
    }
}
