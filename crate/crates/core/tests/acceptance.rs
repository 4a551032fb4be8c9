//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hgcut_core::asymptotics::{
    alpha_star, beta_star, curve, first_positive_crossing, golden_section_max, growth_at_sigma_plus,
    growth_g, growth_g_half_closed, growth_h, sigma_grid, sigma_plus, verdict, argmax_sigma,
    binary_entropy, Degrees, RootSearch,
};
use hgcut_core::distribution::{full_table, log2_cutsize_distribution, DEFAULT_TABLE_MAX_N};
use hgcut_core::encodability::check_block_diagonalizable;
use hgcut_core::ensemble::{self, DEFAULT_SOCKET_CAP};
use hgcut_core::oracle::{exact_ensemble_average, monte_carlo_average, DEFAULT_VERTEX_CAP};
use hgcut_core::partition::cutsize;
use hgcut_core::poly::binomial;
use hgcut_core::{EnsembleParams, Partition, Ratio};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn deg(g: usize, d: usize) -> Degrees {
    Degrees::new(g, d).unwrap()
}

fn table_check(gamma: usize, deltas: &[usize], expected: &[f64]) -> Outcome {
    const TOL: f64 = 5e-5;
    let search = RootSearch::default();
    let mut worst: f64 = 0.0;
    let mut found = Vec::new();
    for (&d, &want) in deltas.iter().zip(expected) {
        let b = beta_star(0.0, deg(gamma, d), search).map_err(|e| e.to_string())?;
        let err = (b - want).abs();
        worst = worst.max(err);
        found.push(format!("{b:.4}"));
        if err > TOL {
            return Err(format!("gamma={gamma}, delta={d}: beta*={b:.6}, table {want}, |diff|={err:.2e}"));
        }
    }
    Ok(format!("beta* = [{}], max |diff| = {worst:.2e}", found.join(", ")))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let detail = table_check(2, &[3, 4, 5, 6, 7, 8], &[0.0615, 0.1100, 0.1461, 0.1740, 0.1962, 0.2145])?;
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        return Err(format!("runtime {elapsed:.2}s >= 5s"));
    }
    Ok(format!("{detail}, {elapsed:.3}s"))
}

fn criterion_2() -> Outcome {
    table_check(3, &[4, 5, 6, 7, 8, 9], &[0.2636, 0.3157, 0.3545, 0.3849, 0.4094, 0.4297])
}

fn criterion_3() -> Outcome {
    let deltas = [6, 10, 15, 20, 21, 25];
    let detail = table_check(5, &deltas, &[0.5570, 0.6589, 0.7193, 0.7537, 0.7589, 0.7764])?;
    for &d in &deltas {
        let v = verdict(deg(5, d), 0.0, RootSearch::default()).map_err(|e| e.to_string())?;
        if v.satisfied != (d >= 21) {
            return Err(format!("delta={d}: satisfied={} (margin {:.5})", v.satisfied, v.margin));
        }
    }
    Ok(format!("{detail}; satisfied exactly for delta >= 21"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (n, g, d) in [(4, 2, 4), (2, 3, 3)] {
        let p = EnsembleParams::new(n, g, d).unwrap();
        let oracle = exact_ensemble_average(&p, DEFAULT_SOCKET_CAP, DEFAULT_VERTEX_CAP)
            .map_err(|e| e.to_string())?;
        let exact = full_table(&p, DEFAULT_TABLE_MAX_N).map_err(|e| e.to_string())?;
        for s in 0..=p.n() {
            for m1 in 0..=p.m() {
                if oracle.get(s, m1) != exact.get(s, m1) {
                    return Err(format!(
                        "E({n},{g},{d}) A({s},{m1}): oracle {} vs formula {}",
                        oracle.get(s, m1),
                        exact.get(s, m1)
                    ));
                }
            }
        }
        notes.push(format!("E({n},{g},{d}) {} cells equal", (p.n() + 1) * (p.m() + 1)));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 30.0 {
        return Err(format!("runtime {elapsed:.2}s >= 30s"));
    }
    Ok(format!("{}, {elapsed:.2}s", notes.join("; ")))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = Vec::new();
    while tried.len() < 20 {
        let n = rng.random_range(1..=60);
        let gamma = rng.random_range(1..=5);
        let delta = rng.random_range(2..=8);
        let Ok(p) = EnsembleParams::new(n, gamma, delta) else {
            continue;
        };
        let t = full_table(&p, DEFAULT_TABLE_MAX_N).map_err(|e| e.to_string())?;
        let total = BigRational::from_integer(BigInt::one() << p.m());
        if t.total() != total {
            return Err(format!("E({n},{gamma},{delta}): total {} != 2^{}", t.total(), p.m()));
        }
        for m1 in 0..=p.m() {
            if t.size_marginal(m1) != BigRational::from_integer(binomial(p.m(), m1)) {
                return Err(format!("E({n},{gamma},{delta}): marginal at m1={m1}"));
            }
        }
        tried.push(format!("({n},{gamma},{delta})"));
    }
    Ok(format!("20 ensembles exact: {}", tried.join(" ")))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for gamma in 2..=5 {
        for delta in 3..=25 {
            let d = deg(gamma, delta);
            let upper = sigma_plus(0.5, gamma);
            for i in 1..=1000 {
                let sigma = upper * i as f64 / 1001.0;
                let numeric = growth_g(sigma, 0.5, d).map_err(|e| e.to_string())?.value;
                let closed = growth_g_half_closed(sigma, d).map_err(|e| e.to_string())?;
                worst = worst.max((numeric - closed).abs());
            }
        }
    }
    if worst < 1e-8 {
        Ok(format!("max |numeric - closed form| = {worst:.2e} over 92 ensembles x 1000 points"))
    } else {
        Err(format!("max deviation {worst:.2e}"))
    }
}

fn criterion_7() -> Outcome {
    let (mut worst_loc, mut worst_val): (f64, f64) = (0.0, 0.0);
    for (g, dl) in [(2, 4), (3, 6), (5, 10)] {
        let d = deg(g, dl);
        for mu in [0.3, 0.5, 0.7] {
            let edge = (g as f64 * f64::min(mu, 1.0 - mu)).min(1.0);
            let eval = |s: f64| growth_g(s, mu, d).map(|p| p.value).unwrap_or(f64::NEG_INFINITY);
            let golden = golden_section_max(eval, 0.0, edge, 1e-12);
            let slope_root = argmax_sigma(mu, d).map_err(|e| e.to_string())?;
            let target = sigma_plus(mu, g);
            let peak = growth_at_sigma_plus(mu, d);
            for (route, s) in [("golden", golden), ("slope", slope_root)] {
                let loc = (s - target).abs();
                let val = (eval(s) - peak).abs();
                worst_loc = worst_loc.max(loc);
                worst_val = worst_val.max(val);
                if loc > 1e-6 || val > 1e-9 {
                    return Err(format!(
                        "({g},{dl}) mu1={mu} {route}: argmax {s} vs sigma+ {target}, value {} vs {peak}",
                        eval(s)
                    ));
                }
            }
        }
    }
    Ok(format!("max |argmax - sigma+| = {worst_loc:.2e}, max |peak - (gamma/delta)H2| = {worst_val:.2e}"))
}

fn criterion_8() -> Outcome {
    let search = RootSearch::default();
    let mut count = 0;
    for gamma in 2..=5 {
        for delta in 3..=25 {
            let d = deg(gamma, delta);
            let weight = gamma as f64 * (delta as f64 - 1.0) / delta as f64;
            for mu in [0.1, 0.3, 0.5, 0.8] {
                let expected = (1.0 - weight) * binary_entropy(mu).unwrap();
                let g0 = growth_g(0.0, mu, d).map_err(|e| e.to_string())?.value;
                if g0 != expected {
                    return Err(format!("({gamma},{delta}) g(0,{mu}) = {g0} vs {expected}"));
                }
                // the interior route approaches the same value
                let near = growth_g(1e-9, mu, d).map_err(|e| e.to_string())?.value;
                if (near - expected).abs() > 1e-6 {
                    return Err(format!("({gamma},{delta}) g(1e-9,{mu}) = {near} vs {expected}"));
                }
            }
            let upper = sigma_plus(0.5, gamma);
            let h = |s: f64| growth_h(s, 0.0, d).map(|p| p.value);
            let h0 = h(0.0).map_err(|e| e.to_string())?;
            let hmax = h(upper).map_err(|e| e.to_string())?;
            if !(h0 <= 0.0 && hmax > 0.0) {
                return Err(format!("({gamma},{delta}) no sign change: h(0)={h0}, h(sigma+)={hmax}"));
            }
            let c = first_positive_crossing(h, upper, search).map_err(|e| e.to_string())?;
            let (lo, _) = c.bracket;
            // every grid point below the bracket is non-positive
            let mut s = search.grid_step;
            while s < lo - 1e-12 {
                if h(s).map_err(|e| e.to_string())? > 0.0 {
                    return Err(format!("({gamma},{delta}) h({s}) > 0 before root {}", c.sigma));
                }
                s += search.grid_step;
            }
            if !(c.sigma > 0.0 && c.sigma <= upper) {
                return Err(format!("({gamma},{delta}) root {} outside (0, sigma+]", c.sigma));
            }
            count += 1;
        }
    }
    // alpha* exists as well
    let a = alpha_star(0.3, deg(3, 6), search).map_err(|e| e.to_string())?;
    Ok(format!("closed form at sigma=0 exact; first crossing found for {count} ensembles; alpha*(0.3) for (3,6) = {a:.4}"))
}

fn criterion_9() -> Outcome {
    let grid = sigma_grid(1e-3).map_err(|e| e.to_string())?;
    let mut report = Vec::new();
    for (gamma, deltas, peak_at) in [(2, 3..=7, 0.5), (3, 4..=8, 0.75)] {
        let mut prev_cross = 0.0;
        for delta in deltas {
            let pts = curve(deg(gamma, delta), 0.0, &grid).map_err(|e| e.to_string())?;
            let peak = pts.iter().max_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
            if (peak.sigma - peak_at).abs() > 1e-3 {
                return Err(format!("E({gamma},{delta}) peaks at {} not {peak_at}", peak.sigma));
            }
            let cross = pts
                .windows(2)
                .find(|w| w[0].value <= 0.0 && w[1].value > 0.0)
                .map(|w| w[1].sigma)
                .ok_or_else(|| format!("E({gamma},{delta}) has no zero crossing"))?;
            if cross <= prev_cross {
                return Err(format!("E({gamma},{delta}) crossing {cross} not above {prev_cross}"));
            }
            prev_cross = cross;
            report.push(format!("({gamma},{delta}):{cross:.3}"));
        }
    }
    Ok(format!("peaks at 1/2 and 3/4; crossings {}", report.join(" ")))
}

fn criterion_10() -> Outcome {
    let p = EnsembleParams::new(4, 2, 4).unwrap();
    let exact = full_table(&p, DEFAULT_TABLE_MAX_N).map_err(|e| e.to_string())?;
    let mc = monte_carlo_average(&p, 100_000, 2024, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    let excursions = mc.excursions(&exact, 4.0);
    if excursions.len() <= 1 {
        Ok(format!("{} cell(s) beyond 4 standard errors (<= 1 allowed)", excursions.len()))
    } else {
        Err(format!("excursions: {excursions:?}"))
    }
}

fn criterion_11() -> Outcome {
    let d = deg(2, 4);
    let mut lines = Vec::new();
    for sigma in [0.2, 0.4] {
        let g = growth_g(sigma, 0.5, d).map_err(|e| e.to_string())?.value;
        let gaps: Vec<f64> = [40usize, 80, 160]
            .iter()
            .map(|&n| {
                let p = EnsembleParams::new(n, 2, 4).unwrap();
                let s = (sigma * n as f64).round() as usize;
                (log2_cutsize_distribution(&p, s, p.m() / 2) / n as f64 - g).abs()
            })
            .collect();
        if !(gaps[0] > gaps[1] && gaps[1] > gaps[2]) {
            return Err(format!("sigma={sigma}: gaps {gaps:?} not decreasing"));
        }
        lines.push(format!("sigma={sigma}: {:.4} > {:.4} > {:.4}", gaps[0], gaps[1], gaps[2]));
    }
    Ok(lines.join("; "))
}

fn criterion_12() -> Outcome {
    let p = EnsembleParams::new(8, 2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut feasible = 0;
    for i in 0..100u64 {
        let h = ensemble::sample(&p, 1000 + i);
        let mat = h.to_matrix();
        let first = sample_indices(&mut rng, p.m(), p.m() / 2).into_vec();
        let part = Partition::bipartition(p.m(), &first).map_err(|e| e.to_string())?;
        let v = check_block_diagonalizable(&mat, &part, Ratio::ZERO).map_err(|e| e.to_string())?;
        let cut = cutsize(&h, &part).map_err(|e| e.to_string())?;
        if cut != v.cutsize {
            return Err(format!("instance {i}: cutsize {cut} vs verdict {}", v.cutsize));
        }
        if v.feasible {
            feasible += 1;
            if p.n() < p.m() + cut {
                return Err(format!("instance {i}: feasible but n - m < cutsize {cut}"));
            }
        }
    }
    Ok(format!("100 instances, {feasible} feasible, no counterexample"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1  reference beta*(0), gamma=2", criterion_1),
        ("2  reference beta*(0), gamma=3", criterion_2),
        ("3  reference beta*(0) and verdicts, gamma=5", criterion_3),
        ("4  exhaustive oracle equals closed form", criterion_4),
        ("5  sum identities, 20 random ensembles", criterion_5),
        ("6  closed form of g(sigma, 1/2)", criterion_6),
        ("7  argmax and peak of g(., mu1)", criterion_7),
        ("8  sigma=0 values and first sign change", criterion_8),
        ("9  growth curve peaks and crossings", criterion_9),
        ("10 Monte-Carlo within 4 standard errors", criterion_10),
        ("11 finite-n gap shrinks with n", criterion_11),
        ("12 feasible partitions satisfy n - m >= cutsize", criterion_12),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}  ({secs:.2}s)  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({secs:.2}s)  {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
