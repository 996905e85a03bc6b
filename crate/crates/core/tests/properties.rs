use proptest::prelude::*;
use qclique::graph::{gen_gnm, gen_gnp};
use qclique::moments::{exact, OverlapPattern};
use qclique::solver::{
    brute_force_omega, feasible_k, omega_gamma, Feasibility, SearchBudget, SolveStatus,
};
use qclique::theory::{alpha, binom_log_probs, expected_log_xk};
use qclique::{Graph, RationalDensity, Seed};

fn q(s: &str) -> RationalDensity {
    s.parse().unwrap()
}

fn density() -> impl Strategy<Value = RationalDensity> {
    (1u64..20, 2u64..21).prop_filter_map("proper fraction", |(a, b)| {
        (a < b).then(|| RationalDensity::new(a, b).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_well_formed(n in 0usize..60, p in 0.01f64..0.99, seed: u64, frac in 0.0f64..=1.0) {
        let g = gen_gnp(n, p, Seed(seed)).unwrap();
        prop_assert!(g.check_invariants());
        prop_assert_eq!(&g, &gen_gnp(n, p, Seed(seed)).unwrap());
        let max = (n * n.saturating_sub(1) / 2) as u64;
        let m = (frac * max as f64) as u64;
        let h = gen_gnm(n, m, Seed(seed)).unwrap();
        prop_assert!(h.check_invariants());
        prop_assert_eq!(h.m() as u64, m);
        prop_assert_eq!(&h, &gen_gnm(n, m, Seed(seed)).unwrap());
    }

    #[test]
    fn adding_an_inside_edge_keeps_quasi_cliques(seed: u64, gamma in density(), pick in any::<u32>()) {
        let g = gen_gnp(10, 0.5, Seed(seed)).unwrap();
        let set: Vec<usize> = (0..10).filter(|v| pick >> v & 1 == 1).collect();
        prop_assume!(set.len() >= 2);
        let before = g.is_quasi_clique(&set, gamma).unwrap();
        let missing = set.iter().flat_map(|&u| set.iter().map(move |&v| (u, v)))
            .find(|&(u, v)| u < v && !g.has_edge(u, v));
        if let Some(e) = missing {
            let mut edges = g.edges();
            edges.push(e);
            let h = Graph::new(10, &edges).unwrap();
            prop_assert!(!before || h.is_quasi_clique(&set, gamma).unwrap());
        }
    }

    #[test]
    fn alpha_positive_and_increasing(p in 0.02f64..0.9, steps in 2u64..40) {
        let mut last = 0.0;
        for i in 1..steps {
            let g = RationalDensity::new(i, steps).unwrap();
            if g.as_f64() <= p {
                continue;
            }
            let a = alpha(g, p).unwrap();
            prop_assert!(a > last);
            last = a;
        }
    }

    #[test]
    fn tail_sandwiches_point(trials in 1u64..5000, p in 0.01f64..0.9, gamma in density()) {
        prop_assume!(gamma.as_f64() > p);
        let b = binom_log_probs(trials, p, gamma).unwrap();
        let (point, tail) = (b.point.ln(), b.tail.ln());
        prop_assert!(point <= tail + 1e-12);
        prop_assert!(tail <= ((trials + 1) as f64).ln() + point + 1e-12);
    }

    #[test]
    fn overlap_law_sums_to_one(k in 3u64..120, ell_frac in 0.0f64..1.0, gamma in density(), p in 0.01f64..0.99) {
        let ell = 2 + ((k - 3) as f64 * ell_frac) as u64;
        let pat = OverlapPattern::new(k, ell, gamma, p).unwrap();
        let total = qclique::logvalue::log_sum((0..=pat.t).map(|l| pat.overlap_c(l)));
        prop_assert!((total.exp() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn ratio_r_times_point_squared_is_g(k in 3u64..80, ell_frac in 0.0f64..1.0, gamma in density(), p in 0.01f64..0.99, l_frac in 0.0f64..=1.0) {
        let ell = 2 + ((k - 3) as f64 * ell_frac) as u64;
        let pat = OverlapPattern::new(k, ell, gamma, p).unwrap();
        let (lo, hi) = (pat.support_min(), pat.support_max());
        let l = lo + ((hi - lo) as f64 * l_frac) as u64;
        let lhs = pat.ln_ratio_r(l).ln() + 2.0 * pat.ln_point().ln();
        let rhs = pat.g_ell(l).ln();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_witnesses_are_valid_and_optimal(n in 4usize..=13, p in 0.1f64..0.8, seed: u64, gamma in density()) {
        let g = gen_gnp(n, p, Seed(seed)).unwrap();
        let out = omega_gamma(&g, gamma, SearchBudget::UNLIMITED);
        prop_assert_eq!(out.status, SolveStatus::Solved);
        prop_assert_eq!(out.witness.len(), out.omega);
        prop_assert!(g.is_quasi_clique(&out.witness, gamma).unwrap());
        prop_assert_eq!(out.omega, brute_force_omega(&g, gamma).unwrap().omega);
        let again = omega_gamma(&g, gamma, SearchBudget::UNLIMITED);
        prop_assert_eq!((out.omega, out.witness), (again.omega, again.witness));
    }

    #[test]
    fn feasibility_is_hereditary(n in 3usize..=12, p in 0.1f64..0.9, seed: u64, gamma in density()) {
        let g = gen_gnp(n, p, Seed(seed)).unwrap();
        let feasible = |k| matches!(feasible_k(&g, k, gamma, SearchBudget::UNLIMITED).unwrap(), Feasibility::Feasible(_));
        for k in 2..=n {
            prop_assert!(!feasible(k) || feasible(k - 1), "k = {}", k);
        }
    }
}

/// `E X_k` summed over every labelled graph on six vertices.
#[test]
fn expected_quasi_clique_count_matches_enumeration() {
    let n = 6usize;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for (gamma, p) in [(q("1/2"), 0.3f64), (q("3/5"), 0.5), (q("9/10"), 0.7)] {
        let mut expect = vec![0.0f64; n + 1];
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let w = p.powi(edges.len() as i32) * (1.0 - p).powi((pairs.len() - edges.len()) as i32);
            let g = Graph::new(n, &edges).unwrap();
            for sub in 0u32..1 << n {
                let set: Vec<usize> = (0..n).filter(|v| sub >> v & 1 == 1).collect();
                if set.len() >= 2 && g.is_quasi_clique(&set, gamma).unwrap() {
                    expect[set.len()] += w;
                }
            }
        }
        for (k, &want) in expect.iter().enumerate().skip(2) {
            let got = expected_log_xk(n as u64, k as u64, gamma, p).unwrap().exp();
            assert!(
                (got - want).abs() <= 1e-10 * want.max(1.0),
                "k = {k}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn exact_and_log_space_agree_on_small_patterns() {
    for (k, g, p) in [(6u64, "1/2", 0.25), (9, "3/5", 0.4), (12, "9/10", 0.5)] {
        for ell in 2..k {
            let pat = OverlapPattern::new(k, ell, q(g), p).unwrap();
            for l in pat.support_min()..=pat.support_max() {
                let fast = pat.ratio_r(l).unwrap();
                let slow = exact::to_f64(&exact::ratio_r(&pat, l).unwrap());
                assert!(((fast - slow) / slow).abs() <= 1e-9, "k {k} ℓ {ell} L {l}");
            }
        }
    }
}
