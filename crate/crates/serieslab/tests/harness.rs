//! Harness runs on the fair coin, checked against exact return laws.

use std::collections::HashMap;

use serieslab::harness::{
    run_oracle_equivalence, run_theorem1_sweep, run_unbiased_check, GridSpec,
};
use serieslab_core::analytic::{markov_return_oracle, MarkovOracleSpec};
use serieslab_core::processes::ProcessKind;
use serieslab_core::stats::{hitting_cdf_via_g, Intensities};

const COIN: [[f64; 2]; 2] = [[0.5, 0.5], [0.5, 0.5]];

fn coin() -> Vec<Vec<f64>> {
    COIN.iter().map(|r| r.to_vec()).collect()
}

fn words(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .map(|code| (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect())
        .collect()
}

/// Exact intensities and measure of a fair-coin block.
fn exact(block: &[u8]) -> (f64, Intensities) {
    let law = markov_return_oracle(&MarkovOracleSpec {
        transition: coin(),
        initial: None,
        block: block.to_vec(),
        horizon: 40 << block.len(),
    })
    .unwrap();
    let grid = GridSpec::default().build().unwrap();
    let g = hitting_cdf_via_g(&law.normalized_cdf(), law.mu, &grid).unwrap();
    (law.mu, g.g_curve.intensities())
}

fn text(word: &[u8]) -> String {
    word.iter().map(|s| char::from(b'0' + s)).collect()
}

#[test]
fn fair_coin_sweep_tracks_exact_intensities() {
    let kind = ProcessKind::Bernoulli {
        probs: vec![0.5, 0.5],
    };
    let lengths: Vec<usize> = (1..=10).collect();
    let report = run_theorem1_sweep(
        &kind,
        &lengths,
        &[0.1],
        10_000_000,
        7,
        50,
        GridSpec::default(),
    )
    .unwrap();
    for (row, (n, records)) in report.rows.iter().zip(&report.blocks) {
        assert_eq!(row.n, *n);
        let exact_laws: HashMap<String, (f64, Intensities)> =
            words(*n).iter().map(|w| (text(w), exact(w))).collect();
        let exact_mass: f64 = exact_laws
            .values()
            .filter(|(_, e)| e.eps_repel >= 0.1)
            .map(|(mu, _)| mu)
            .sum();
        assert!(
            (row.repel_measure[0] - exact_mass).abs() < 0.02,
            "n={n}: {} vs {exact_mass}",
            row.repel_measure[0]
        );
        // Short blocks repel: n = 1 at 0.118, n = 2 and 3 on half the mass.
        if *n >= 4 {
            assert!(row.repel_measure[0] < 0.05, "n={n}");
        }
        if *n <= 6 {
            assert_eq!(records.len(), 1 << n);
            for r in records {
                let e = exact_laws[&r.block].1;
                assert!((r.eps_repel - e.eps_repel).abs() < 0.01, "{}", r.block);
            }
        }
    }
    let single = &report.blocks[0].1;
    for r in single {
        assert!((r.eps_repel - 0.1179).abs() < 0.005, "{}", r.eps_repel);
    }
}

#[test]
fn unbiasedness_is_asymptotic_in_length() {
    let report =
        run_unbiased_check(&[0.5, 0.5], &[1, 8], 10_000_000, 8, 50, GridSpec::default()).unwrap();
    let one = report.rows[0].median_ks.unwrap();
    let exact_one = exact(&[0]).1.ks();
    assert!((one - exact_one).abs() < 0.005, "{one} vs {exact_one}");
    assert!((0.10..0.13).contains(&one));
    let eight = report.rows[1].median_ks.unwrap();
    assert!(eight < 0.05, "{eight}");
}

#[test]
fn identity_chain_is_degenerate() {
    let identity = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
    let report = run_oracle_equivalence(
        &identity,
        Some(&[1.0, 0.0][..]),
        &["0".to_string()],
        10_000,
        1,
        10,
    )
    .unwrap();
    let row = &report.rows[0];
    assert_eq!(row.mu, 1.0);
    assert_eq!(row.mu_hat, 1.0);
    assert_eq!(row.sup_deviation, 0.0);
    assert!(report.passed);
}
