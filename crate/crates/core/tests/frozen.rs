//! Frozen values checked against routes that share no code with the library.

use std::f64::consts::PI;

use charvar_lab::equidist::{convergents, rational_screen, star_discrepancy};
use charvar_lab::measures::{ball_volume, fs_indicator, smeared_expectation, volume_series};
use charvar_lab::{trace_of_word, Poly, Word};

const ZETA3: f64 = 1.202_056_903_159_594;

fn trace(text: &str) -> Poly {
    (*trace_of_word(&Word::parse(text).unwrap()).unwrap()).clone()
}

fn poly(text: &str) -> Poly {
    Poly::parse(text).unwrap()
}

#[test]
fn classical_trace_identities() {
    // Cayley-Hamilton and the commutator identity, written out by hand
    let cases = [
        ("A", "a"),
        ("AA", "a^2 - 2"),
        ("AAA", "a^3 - 3*a"),
        ("Ab", "a*b - x"),
        ("ABAB", "x^2 - 2"),
        ("ABab", "a^2 + b^2 + x^2 - a*b*x - 2"),
        ("ACB", "a*y + b*z + c*x - a*b*c - d"),
        ("AABB", "a*b*x - a^2 - b^2 + 2"),
        ("CAB", "d"),
    ];
    for (word, want) in cases {
        assert_eq!(trace(word), poly(want), "trace of {word}");
    }
}

#[test]
fn frobenius_schur_indicators() {
    // odd dimensions are real, even dimensions quaternionic
    for n in 1..=12 {
        let want = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(fs_indicator(n).unwrap(), want, "n = {n}");
    }
}

#[test]
fn series_values() {
    let frozen = [
        (4, PI.powi(2) / 6.0),
        (5, 0.75 * ZETA3),
        (6, PI.powi(4) / 90.0),
        (7, 15.0 / 16.0 * 1.036_927_755_143_37),
        (8, PI.powi(6) / 945.0),
    ];
    for (k, want) in frozen {
        let r = volume_series(k, 1e-12).unwrap();
        assert!((r.value - want).abs() < 1e-11, "k = {k}: {} vs {want}", r.value);
    }
}

#[test]
fn ball_volume_limits() {
    assert!((ball_volume(PI) - 1.0).abs() < 1e-15);
    assert!((ball_volume(PI / 2.0) - 0.5).abs() < 1e-15);
    let e: f64 = 1e-3;
    assert!((ball_volume(e) / (2.0 * e.powi(3) / (3.0 * PI)) - 1.0).abs() < 1e-6);
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Ball average of the density, with the sine sum in Bernoulli polynomial form.
fn smeared_oracle(sine_sum: impl Fn(f64) -> f64, eps: f64) -> f64 {
    let vol = (2.0 * eps - (2.0 * eps).sin()) / (2.0 * PI);
    2.0 / PI * simpson(|p| p.sin() * sine_sum(p), 0.0, eps, 20_000) / vol
}

#[test]
fn smeared_expectation_matches_closed_forms() {
    let s3 = |p: f64| PI * PI * p / 6.0 - PI * p * p / 4.0 + p.powi(3) / 12.0;
    let s5 = |p: f64| PI.powi(4) * p / 90.0 - PI * PI * p.powi(3) / 36.0 + PI * p.powi(4) / 48.0 - p.powi(5) / 240.0;
    for eps in [0.05, 0.15, 0.4, 1.0] {
        let d4 = (smeared_expectation(4, eps) - smeared_oracle(s3, eps)).abs();
        let d6 = (smeared_expectation(6, eps) - smeared_oracle(s5, eps)).abs();
        assert!(d4 < 1e-9, "k = 4, eps = {eps}: {d4:e}");
        assert!(d6 < 1e-9, "k = 6, eps = {eps}: {d6:e}");
    }
}

#[test]
fn smoothing_bias_at_reference_radius() {
    let bias = smeared_expectation(4, 0.15) - PI * PI / 6.0;
    assert!((bias - -0.08372).abs() < 5e-5, "{bias}");
    // first order for k = 4, second order for k = 5
    let b4 = |e| smeared_expectation(4, e) - PI * PI / 6.0;
    let b5 = |e| smeared_expectation(5, e) - 0.75 * ZETA3;
    assert!((b4(0.02) / b4(0.01) - 2.0).abs() < 0.05);
    assert!((b5(0.02) / b5(0.01) - 4.0).abs() < 0.05);
}

#[test]
fn discrepancy_of_midpoint_grid() {
    let n = 1000;
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    assert!((star_discrepancy(&xs) - 0.5 / n as f64).abs() < 1e-15);
}

#[test]
fn golden_convergents_are_fibonacci() {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let qs: Vec<u64> = convergents(phi, 50).into_iter().map(|(_, q)| q).collect();
    assert_eq!(qs.last(), Some(&34));
    for w in qs.windows(3) {
        assert_eq!(w[2], w[1] + w[0]);
    }
    assert_eq!(rational_screen(phi, 50, 1e-6), None);
    assert_eq!(rational_screen(0.25, 50, 1e-6), Some((1, 4)));
    assert_eq!(rational_screen(3.0 / 7.0 + 1e-9, 50, 1e-6), Some((3, 7)));
}
