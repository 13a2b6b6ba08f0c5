use proptest::prelude::*;
use serieslab_core::analytic::{
    lemma0_mixture_on_grid, lemma0_sharp_bound, markov_return_law, markov_return_oracle,
    MarkovOracleSpec,
};
use serieslab_core::cdf::SurvivalIntegral;
use serieslab_core::processes::{gen_bernoulli, gen_markov};
use serieslab_core::stats::{
    hitting_from_occurrences, mean_normalized_gap, return_cdf, return_gaps, scan_occurrences,
    StartPlan,
};
use serieslab_core::{Block, StepCdf};

fn coin(q: f64, block: Vec<u8>, horizon: usize) -> MarkovOracleSpec {
    MarkovOracleSpec {
        transition: vec![vec![q, 1.0 - q], vec![q, 1.0 - q]],
        initial: None,
        block,
        horizon,
    }
}

/// Return law of `0^n` under i.i.d. symbols with `P(0) = q`, from the
/// probability `u_m` that `m` fresh symbols contain no run of `n` zeros
/// which, joined to a preceding 1, would complete the block.
fn zero_run_law(q: f64, n: usize, horizon: usize) -> Vec<f64> {
    // u[m]: m symbols after a 1 contain no run of n zeros.
    let mut u = vec![1.0f64; horizon + 1];
    for m in n..=horizon {
        u[m] = (0..n)
            .map(|j| q.powi(j as i32) * (1.0 - q) * u[m - j - 1])
            .sum();
    }
    let mut law = vec![0.0; horizon];
    law[0] = q;
    // After the block the next symbol is 1 with probability 1 - q; the next
    // occurrence then ends m symbols later.
    for m in 1..horizon {
        law[m] = (1.0 - q) * (u[m - 1] - u[m]);
    }
    law
}

#[test]
fn zero_runs_match_run_recursion() {
    for (q, n) in [(0.5, 1), (0.5, 3), (0.3, 2), (0.7, 4)] {
        let law = markov_return_law(&coin(q, vec![0; n], 60)).unwrap();
        let expect = zero_run_law(q, n, 60);
        for (i, (a, b)) in law.probabilities.iter().zip(&expect).enumerate() {
            assert!((a - b).abs() < 1e-14, "q={q} n={n} i={}: {a} vs {b}", i + 1);
        }
    }
}

/// `P(R = i)` by summing over every continuation of length `i`.
fn enumerate_law(spec: &MarkovOracleSpec, horizon: usize) -> Vec<f64> {
    let a = spec.transition.len();
    let block = &spec.block;
    let n = block.len();
    let mut law = vec![0.0; horizon];
    // Stack of (path, probability).
    let mut stack = vec![(block.clone(), 1.0f64)];
    while let Some((path, prob)) = stack.pop() {
        let steps = path.len() - n;
        if steps == horizon {
            continue;
        }
        for c in 0..a {
            let w = spec.transition[*path.last().unwrap() as usize][c];
            if w == 0.0 {
                continue;
            }
            let mut next = path.clone();
            next.push(c as u8);
            if next[next.len() - n..] == block[..] {
                law[steps] += prob * w;
            } else {
                stack.push((next, prob * w));
            }
        }
    }
    law
}

#[test]
fn markov_law_matches_enumeration() {
    let transition = vec![
        vec![0.5, 0.3, 0.2],
        vec![0.2, 0.5, 0.3],
        vec![0.3, 0.2, 0.5],
    ];
    for block in [
        vec![0],
        vec![0, 1],
        vec![1, 1],
        vec![2, 0, 2],
        vec![0, 0, 1],
    ] {
        let spec = MarkovOracleSpec {
            transition: transition.clone(),
            initial: None,
            block: block.clone(),
            horizon: 9,
        };
        let law = markov_return_law(&spec).unwrap();
        let brute = enumerate_law(&spec, 9);
        for (i, (a, b)) in law.probabilities.iter().zip(&brute).enumerate() {
            assert!(
                (a - b).abs() < 1e-13,
                "block {block:?} i={}: {a} vs {b}",
                i + 1
            );
        }
    }
}

#[test]
fn alternating_block_enumeration() {
    let law = markov_return_law(&coin(0.5, vec![0, 1], 14)).unwrap();
    let brute = enumerate_law(&coin(0.5, vec![0, 1], 14), 14);
    assert_eq!(law.probabilities.len(), 14);
    for (a, b) in law.probabilities.iter().zip(&brute) {
        assert!((a - b).abs() < 1e-15);
    }
    // The gap of 1 is impossible, every later gap i has mass (i - 1) 2^-i.
    for (i, p) in law.probabilities.iter().enumerate() {
        let i = i as i32 + 1;
        assert!((p - (i - 1) as f64 * 0.5f64.powi(i)).abs() < 1e-15);
    }
}

#[test]
fn oracle_kac_mean() {
    for block in [vec![0], vec![1, 0, 1], vec![1, 1, 1, 1]] {
        let law = markov_return_oracle(&coin(0.4, block, 10_000)).unwrap();
        assert!((law.truncated_mean() * law.mu - 1.0).abs() < 1e-6);
        let f = law.normalized_cdf();
        assert!(f.final_value() > 1.0 - 1e-6);
    }
}

#[test]
fn empirical_returns_follow_kac() {
    let seq = gen_bernoulli(&[0.5, 0.5], 200_000, 7).unwrap();
    for text in ["0", "01", "111", "0110"] {
        let block = Block::parse(seq.alphabet().clone(), text).unwrap();
        let occ = scan_occurrences(&seq, &block).unwrap();
        let gaps = return_gaps(&occ).unwrap();
        let mean = mean_normalized_gap(&gaps, occ.mu_hat());
        assert!((mean - 1.0).abs() < 0.01, "{text}: {mean}");
    }
}

#[test]
fn direct_hitting_is_sandwiched() {
    let transition = vec![vec![0.8, 0.2], vec![0.4, 0.6]];
    let seq = gen_markov(&transition, None, 100_000, 3).unwrap();
    for text in ["1", "00", "101", "0110"] {
        let block = Block::parse(seq.alphabet().clone(), text).unwrap();
        let occ = scan_occurrences(&seq, &block).unwrap();
        let direct = hitting_from_occurrences(&occ, seq.len(), StartPlan::Exhaustive).unwrap();
        let ret = return_cdf(&return_gaps(&occ).unwrap(), occ.mu_hat()).unwrap();
        let g = SurvivalIntegral::new(&ret);
        let mu = occ.mu_hat();
        // Edge effects: starts before the first or after the last occurrence.
        let slack = (occ.positions()[0] + seq.len() - occ.positions().last().unwrap()) as f64
            / seq.len() as f64
            + 1e-3;
        for i in 0..400 {
            let t = i as f64 * 0.02;
            let f = direct.cdf.at(t);
            let gt = g.at(t).min(1.0);
            assert!(f <= gt + slack, "{text} t={t}: F={f} G={gt}");
            assert!(f >= gt - mu - slack, "{text} t={t}: F={f} G={gt}");
        }
    }
}

/// Laws with mean `k` built from a mass split `w` between `a * k` and the
/// point that restores the mean.
fn two_point(k: f64, a: f64, w: f64) -> StepCdf {
    let lo = a * k;
    let hi = (k - w * lo) / (1.0 - w);
    StepCdf::new(vec![lo, hi], vec![w, 1.0]).unwrap()
}

proptest! {
    #[test]
    fn mixtures_never_exceed_the_sharp_bound(
        p in 0.05f64..0.9,
        a in 0.0f64..0.99,
        w in 0.01f64..0.99,
    ) {
        let count = ((1e-10f64).ln() / (1.0 - p).ln()).ceil() as usize + 1;
        let family: Vec<StepCdf> = (1..=count).map(|k| two_point(k as f64, a, w)).collect();
        let ts: Vec<f64> = (0..=60).map(|i| i as f64 * 0.1).collect();
        let gs = lemma0_mixture_on_grid(p, &family, &ts).unwrap();
        for (t, g) in ts.iter().zip(gs) {
            prop_assert!(g <= lemma0_sharp_bound(p, *t).unwrap() + 1e-9);
            prop_assert!(g <= t + 1e-12);
        }
    }
}
