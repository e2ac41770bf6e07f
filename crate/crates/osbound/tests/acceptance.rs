//! Acceptance checklist for the envelope library. Each test covers one
//! numbered exit criterion and prints a scorecard line; run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::time::{Duration, Instant};

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use osbound::{
    bound_pair, c_constant, delta_table, is_majorized, l1_distance, l2_distance, lower_bound,
    moment_bounds, normalizer, order_stat_cdf, order_stat_cdf_all, order_stat_cdf_oracle,
    upper_bound, verify_sample_bounds, Distribution, MixtureSpec, QuadratureConfig, RandomSeed,
    WeightVector,
};

fn builtin_dists() -> Vec<Distribution> {
    vec![
        Distribution::uniform(0.0, 1.0).unwrap(),
        Distribution::std_normal(),
        Distribution::exponential(1.0).unwrap(),
    ]
}

/// Uniform draw from the nonincreasing probability simplex: exponential
/// spacings land on the simplex, sorting makes them nonincreasing.
fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightVector {
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            -u.ln()
        })
        .collect();
    let total: f64 = v.iter().sum();
    for w in &mut v {
        *w /= total;
    }
    v.sort_by(|a, b| b.total_cmp(a));
    WeightVector::new(&v).expect("normalized nonincreasing vector")
}

#[test]
fn a01_example_weights_recover_the_known_l2_width() {
    let start = Instant::now();
    let spec = MixtureSpec::new(
        Distribution::uniform(0.0, 1.0).unwrap(),
        WeightVector::new(&[5.0 / 9.0, 3.0 / 9.0, 1.0 / 9.0]).unwrap(),
    );
    let est = l2_distance(&spec, &QuadratureConfig::default()).unwrap();
    let reference = 8.0 / 135.0;
    assert!(
        (est.value - reference).abs() <= 1e-8,
        "L2 width {} vs {reference}",
        est.value
    );
    assert!(
        start.elapsed() < Duration::from_secs(1),
        "took {:?}",
        start.elapsed()
    );
    println!("acceptance 01 (example weights, L2 width 8/135): PASS");
}

#[test]
fn a02_corrected_example_polynomials_and_width() {
    let spec = MixtureSpec::new(
        Distribution::uniform(0.0, 1.0).unwrap(),
        WeightVector::new(&[6.0 / 15.0, 5.0 / 15.0, 4.0 / 15.0]).unwrap(),
    );
    let est = l2_distance(&spec, &QuadratureConfig::default()).unwrap();
    let reference = 2.0 / 375.0;
    assert!(
        (est.value - reference).abs() <= 1e-8,
        "L2 width {} vs {reference}",
        est.value
    );

    for k in 0..=100 {
        let x = k as f64 / 100.0;
        let lo = lower_bound(&spec, x);
        let hi = upper_bound(&spec, x);
        let lo_ref = (x * x + 4.0 * x) / 5.0;
        let hi_ref = (6.0 * x - x * x) / 5.0;
        assert!(
            (lo - lo_ref).abs() <= 1e-10,
            "x = {x}: lower {lo} vs {lo_ref}"
        );
        assert!(
            (hi - hi_ref).abs() <= 1e-10,
            "x = {x}: upper {hi} vs {hi_ref}"
        );
    }
    println!("acceptance 02 (corrected example polynomials, L2 width 2/375): PASS");
}

#[test]
fn a03_normal_sequence_l1_widths_match_the_closed_form() {
    let start = Instant::now();
    let dist = Distribution::std_normal();
    let cfg = QuadratureConfig::default();
    let sqrt_pi = std::f64::consts::PI.sqrt();

    for m in [1u64, 2, 3, 4, 5, 10, 30] {
        let spec = MixtureSpec::new(dist.clone(), WeightVector::sequence(3, m));
        let est = l1_distance(&spec, &cfg).unwrap();
        let reference = 2.0 / (sqrt_pi * (m as f64 + 2.0));
        assert!(
            (est.value - reference).abs() <= 1e-5,
            "m = {m}: L1 width {} vs {reference}",
            est.value
        );
    }

    // The closed form rests on E[max of 3 normals] = 3/(2 sqrt(pi));
    // check that moment by direct Monte Carlo. One million triples give
    // a standard error near 7.5e-4, so 2.5e-3 is a 3-sigma gate.
    let draws = dist.sample(RandomSeed(7), 3_000_000);
    let mc = draws
        .chunks_exact(3)
        .map(|t| t[0].max(t[1]).max(t[2]))
        .sum::<f64>()
        / 1e6;
    let moment = 1.5 / sqrt_pi;
    assert!(
        (mc - moment).abs() <= 2.5e-3,
        "Monte Carlo {mc} vs {moment}"
    );

    assert!(
        start.elapsed() < Duration::from_secs(10),
        "took {:?}",
        start.elapsed()
    );
    println!("acceptance 03 (normal sequence-weight L1 widths): PASS");
}

#[test]
fn a04_envelope_holds_for_random_weights_on_dense_grids() {
    let start = Instant::now();
    const GRID: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut violations = 0u64;

    for dist in builtin_dists() {
        for n in [2usize, 3, 5, 10] {
            let vectors: Vec<WeightVector> =
                (0..100).map(|_| random_weights(&mut rng, n)).collect();

            violations += (0..GRID)
                .into_par_iter()
                .map(|k| {
                    let u = (k + 1) as f64 / (GRID + 1) as f64;
                    let x = dist.quantile(u).unwrap();
                    let f = dist.cdf(x);
                    let osc = order_stat_cdf_all(&dist, n, x).unwrap();
                    let mut bad = 0u64;
                    for w in &vectors {
                        let ws = w.weights();
                        let upper: f64 = ws.iter().zip(&osc).map(|(a, b)| a * b).sum();
                        let lower: f64 = ws.iter().zip(osc.iter().rev()).map(|(a, b)| a * b).sum();
                        bad += u64::from(lower > f + 1e-10 || f > upper + 1e-10);
                    }
                    bad
                })
                .sum::<u64>();

            // The mixture API must match the rank-CDF expansion used above.
            for w in vectors.iter().step_by(10) {
                let spec = MixtureSpec::new(dist.clone(), w.clone());
                for k in (0..GRID).step_by(250) {
                    let u = (k + 1) as f64 / (GRID + 1) as f64;
                    let x = dist.quantile(u).unwrap();
                    let osc = order_stat_cdf_all(&dist, n, x).unwrap();
                    let ws = w.weights();
                    let upper: f64 = ws.iter().zip(&osc).map(|(a, b)| a * b).sum();
                    let lower: f64 = ws.iter().zip(osc.iter().rev()).map(|(a, b)| a * b).sum();
                    let pair = bound_pair(&spec, x);
                    assert!((pair.upper - upper).abs() <= 1e-12);
                    assert!((pair.lower - lower).abs() <= 1e-12);
                }
            }
        }
    }

    assert_eq!(violations, 0, "{violations} envelope violations");
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "took {:?}",
        start.elapsed()
    );
    println!("acceptance 04 (envelope over 3 kinds x 4 sizes x 100 weights x 1e4 points): PASS");
}

#[test]
fn a05_majorized_pairs_nest_their_envelopes() {
    const GRID: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(505);

    // (inner, outer) pairs with inner majorized by outer. The example
    // pair comes first; the rest mix a random outer vector toward
    // uniform, which always flattens it.
    let mut pairs = vec![(
        WeightVector::new(&[6.0 / 15.0, 5.0 / 15.0, 4.0 / 15.0]).unwrap(),
        WeightVector::new(&[5.0 / 9.0, 3.0 / 9.0, 1.0 / 9.0]).unwrap(),
    )];
    for j in 0..50 {
        let n = [2usize, 3, 5, 10][j % 4];
        let outer = random_weights(&mut rng, n);
        let t: f64 = rng.sample(Open01);
        let inner: Vec<f64> = outer
            .weights()
            .iter()
            .map(|q| t / n as f64 + (1.0 - t) * q)
            .collect();
        pairs.push((WeightVector::new(&inner).unwrap(), outer));
    }

    let mut violations = 0u64;
    for dist in builtin_dists() {
        for (inner, outer) in &pairs {
            assert!(is_majorized(inner.weights(), outer.weights()).unwrap());
            let ispec = MixtureSpec::new(dist.clone(), inner.clone());
            let ospec = MixtureSpec::new(dist.clone(), outer.clone());
            violations += (0..GRID)
                .into_par_iter()
                .map(|k| {
                    let u = (k + 1) as f64 / (GRID + 1) as f64;
                    let x = dist.quantile(u).unwrap();
                    let f = dist.cdf(x);
                    let ib = bound_pair(&ispec, x);
                    let ob = bound_pair(&ospec, x);
                    let ordered = ob.lower <= ib.lower + 1e-10
                        && ib.lower <= f + 1e-10
                        && f <= ib.upper + 1e-10
                        && ib.upper <= ob.upper + 1e-10;
                    u64::from(!ordered)
                })
                .sum::<u64>();
        }
    }

    assert_eq!(violations, 0, "{violations} nesting violations");
    println!("acceptance 05 (example pair and 50 random pairs nest): PASS");
}

#[test]
fn a06_sample_mean_bounds_hold_across_the_monte_carlo_matrix() {
    let mut total = 0u64;
    for dist in builtin_dists() {
        for n in [1usize, 2, 3, 5, 10] {
            for m in [0u64, 1, 5] {
                for seed in [11u64, 42, 1337] {
                    total += verify_sample_bounds(&dist, n, m, 100_000, RandomSeed(seed));
                }
            }
        }
    }
    assert_eq!(total, 0, "{total} sample-bound violations");
    println!("acceptance 06 (sample-mean bounds, 13.5M Monte Carlo trials): PASS");
}

#[test]
fn a07_moment_bounds_bracket_the_mean_within_the_width_cap() {
    let cfg = QuadratureConfig::default();
    for dist in builtin_dists() {
        for n in [1usize, 2, 3, 5, 10] {
            for m in [0u64, 1, 5] {
                let r = moment_bounds(&dist, n, m, &cfg).unwrap();
                assert!(
                    r.lower <= r.mean + 1e-6 && r.mean <= r.upper + 1e-6,
                    "{dist} n = {n} m = {m}: {} !<= {} !<= {}",
                    r.lower,
                    r.mean,
                    r.upper
                );
                assert!(
                    r.upper - r.lower <= r.gap_bound + 1e-8,
                    "{dist} n = {n} m = {m}: width {} vs cap {}",
                    r.upper - r.lower,
                    r.gap_bound
                );
                // Reassemble the cap from its public factors.
                let head = (n as f64 - 1.0) / (2.0 * normalizer(n, m));
                let cap = head * c_constant(&dist, n, &cfg).unwrap();
                assert!((r.gap_bound - cap).abs() <= 1e-9 * (1.0 + cap));
            }
        }
    }
    println!("acceptance 07 (moment bounds bracket the mean, width capped): PASS");
}

#[test]
fn a08_width_decays_faster_than_the_square_root() {
    let cfg = QuadratureConfig::default();
    let report = delta_table(&Distribution::std_normal(), 3, &[10, 100, 1000], 0.5, &cfg).unwrap();
    let sqrt_pi = std::f64::consts::PI.sqrt();

    let ratios: Vec<f64> = report.rows.iter().map(|r| r.ratio).collect();
    assert!(
        ratios[0] > ratios[1] && ratios[1] > ratios[2],
        "ratios not decreasing: {ratios:?}"
    );
    assert!(ratios[2] < 0.05, "ratio at m = 1000 is {}", ratios[2]);
    for row in &report.rows {
        let reference = 2.0 / (sqrt_pi * (row.m as f64 + 2.0));
        assert!((row.delta - reference).abs() <= 1e-5);
    }
    println!("acceptance 08 (width x sqrt(m) decreasing, 0.036 at m = 1e3): PASS");
}

/// All nonnegative integer vectors of the given length summing to
/// `total`.
fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=rest {
            cur.push(k);
            rec(rest - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, len, &mut Vec::new(), &mut out);
    out
}

/// Integer-exact majorization verdict: sorted partial sums of `a` never
/// exceed those of `b`.
fn majorized_exact(a: &[u32], b: &[u32]) -> bool {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable_by(|x, y| y.cmp(x));
    sb.sort_unstable_by(|x, y| y.cmp(x));
    let (mut pa, mut pb) = (0u32, 0u32);
    sa.iter().zip(&sb).all(|(x, y)| {
        pa += x;
        pb += y;
        pa <= pb
    })
}

#[test]
fn a09_dual_route_oracles_agree() {
    // Incomplete-beta route vs direct binomial tail sums on random
    // rank/size/point triples.
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let dists = builtin_dists();
    for trial in 0..1000usize {
        let dist = &dists[trial % 3];
        let n = rng.gen_range(1..=30);
        let i = rng.gen_range(1..=n);
        let u: f64 = rng.sample(Open01);
        let x = dist.quantile(u).unwrap();
        let beta = order_stat_cdf(dist, i, n, x).unwrap();
        let binom = order_stat_cdf_oracle(dist, i, n, x).unwrap();
        assert!(
            (beta - binom).abs() <= 1e-10,
            "i = {i}, n = {n}, x = {x}: {beta} vs {binom}"
        );
    }

    // Floating-point majorization vs exact integer partial sums,
    // exhaustive over every pair of same-denominator grid vectors.
    for len in 1usize..=4 {
        for denom in 1u32..=12 {
            let comps = compositions(denom, len);
            for a in &comps {
                for b in &comps {
                    let fa: Vec<f64> = a.iter().map(|&k| k as f64 / denom as f64).collect();
                    let fb: Vec<f64> = b.iter().map(|&k| k as f64 / denom as f64).collect();
                    assert_eq!(
                        is_majorized(&fa, &fb).unwrap(),
                        majorized_exact(a, b),
                        "{a:?} vs {b:?} over denominator {denom}"
                    );
                }
            }
        }
    }
    println!("acceptance 09 (beta vs binomial routes, float vs integer majorization): PASS");
}
