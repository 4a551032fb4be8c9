use std::collections::BTreeMap;

use hgcut_core::distribution::{balanced_distribution, cutsize_distribution, full_table};
use hgcut_core::ensemble::{self, enumerate_all, factorial, DEFAULT_SOCKET_CAP};
use hgcut_core::oracle::{count_bipartitions, exact_ensemble_average, DEFAULT_VERTEX_CAP};
use hgcut_core::{EnsembleParams, Ratio};
use num_rational::BigRational;
use num_traits::Zero;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Every valid ensemble with at most 8 sockets.
fn small_ensembles() -> Vec<EnsembleParams> {
    let mut out = Vec::new();
    for n in 1..=8 {
        for gamma in 1..=8 {
            for delta in 1..=8 {
                if n * gamma <= 8 {
                    if let Ok(p) = EnsembleParams::new(n, gamma, delta) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn exhaustive_average_matches_formula_for_all_small_ensembles() {
    let all = small_ensembles();
    assert!(all.len() > 20);
    for p in all {
        let oracle = exact_ensemble_average(&p, DEFAULT_SOCKET_CAP, DEFAULT_VERTEX_CAP).unwrap();
        let formula = full_table(&p, 100).unwrap();
        assert_eq!(oracle, formula, "{p:?}");
        for s in 0..=p.n() {
            for m1 in 0..=p.m() {
                assert_eq!(formula.get(s, m1), &cutsize_distribution(&p, s, m1), "{p:?} s={s} m1={m1}");
            }
        }
    }
}

#[test]
fn small_example_values() {
    let p = EnsembleParams::new(4, 2, 4).unwrap();
    let row: Vec<BigRational> = (0..=4).map(|s| cutsize_distribution(&p, s, 1)).collect();
    let expect = ["6/35", "0", "48/35", "0", "16/35"];
    for (got, want) in row.iter().zip(expect) {
        assert_eq!(got.to_string(), want);
    }
    let b: Vec<String> = (0..=4)
        .map(|s| balanced_distribution(&p, s, Ratio::ZERO).to_string())
        .collect();
    assert_eq!(b, ["6/35", "0", "48/35", "0", "16/35"]);
}

#[test]
fn bipartition_counts_cover_all_assignments() {
    let p = EnsembleParams::new(6, 3, 6).unwrap();
    for seed in 0..20 {
        let h = ensemble::sample(&p, seed);
        let counts = count_bipartitions(&h, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(counts.total(), 1 << p.m());
        // empty and full part cut nothing
        assert_eq!(counts.get(0, 0), 1);
        assert_eq!(counts.get(0, p.m()), 1);
    }
}

#[test]
fn sampler_is_uniform_over_configurations() {
    let p = EnsembleParams::new(4, 2, 4).unwrap();
    let total = factorial(p.xi()).unwrap() as f64;
    let mut expected: BTreeMap<_, f64> = BTreeMap::new();
    for h in enumerate_all(&p, DEFAULT_SOCKET_CAP).unwrap() {
        *expected.entry(h).or_default() += 1.0 / total;
    }
    const DRAWS: u64 = 10_000;
    let mut observed: BTreeMap<_, f64> = expected.keys().map(|h| (h.clone(), 0.0)).collect();
    for seed in 0..DRAWS {
        *observed.get_mut(&ensemble::sample(&p, seed)).expect("sample outside support") += 1.0;
    }
    let stat: f64 = expected
        .iter()
        .map(|(h, prob)| {
            let e = prob * DRAWS as f64;
            (observed[h] - e).powi(2) / e
        })
        .sum();
    let dof = (expected.len() - 1) as f64;
    let critical = ChiSquared::new(dof).unwrap().inverse_cdf(0.999);
    assert!(stat < critical, "chi2 {stat:.2} >= {critical:.2} with {dof} dof");
}

#[test]
fn same_seed_same_instance() {
    let p = EnsembleParams::new(12, 3, 6).unwrap();
    assert_eq!(ensemble::sample(&p, 9), ensemble::sample(&p, 9));
    let h = ensemble::sample(&p, 9);
    assert!(h.vertex_multiplicities().iter().all(|&d| d == p.delta()));
    assert!(h.nets().iter().all(|net| net.len() == p.gamma()));
}

#[test]
fn balanced_table_sums_to_window_size() {
    let p = EnsembleParams::new(12, 2, 4).unwrap();
    let t = full_table(&p, 100).unwrap();
    let eps = Ratio::new(1, 3).unwrap();
    let b = t.balanced(eps);
    let sum = b.iter().fold(BigRational::zero(), |acc, x| acc + x);
    // m = 6, window [2, 4]: C(6,2) + C(6,3) + C(6,4)
    assert_eq!(sum, BigRational::from_integer(50.into()));
    for (s, v) in b.iter().enumerate() {
        assert_eq!(v, &balanced_distribution(&p, s, eps));
    }
}
