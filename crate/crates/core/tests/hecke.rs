use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

use tripole_core::hecke::*;
use tripole_core::Execution;

fn seven() -> Arc<GaussianModulus> {
    Arc::new(GaussianModulus::from_parts(7, 0).unwrap())
}

/// Pairs `(j, k)` with `7^j·a + 7^k·b + c ≡ 0 (mod 12)`.
fn mod12_pairs(a: i64, b: i64, c: i64) -> Vec<(u32, u32)> {
    let pow = [1i64, 7];
    let mut out = Vec::new();
    for j in 0..2 {
        for k in 0..2 {
            if (pow[j] * a + pow[k] * b + c).rem_euclid(12) == 0 {
                out.push((j as u32, k as u32));
            }
        }
    }
    out
}

fn estimate(a: i64, b: i64, c: i64) -> NumericEstimate {
    let m = seven();
    let chr = |e| GaussianHeckeChar::power_of_generator(&m, e).unwrap();
    numeric_triple_estimate(&chr(a), &chr(b), &chr(c), DEFAULT_X, DEFAULT_TAU, Execution::Parallel).unwrap()
}

#[test]
fn brute_force_mod_twelve() {
    assert_eq!(mod12_pairs(1, 1, 10), vec![(0, 0), (1, 1)]);
    assert_eq!(mod12_pairs(1, 1, 4), vec![(0, 1), (1, 0)]);
    assert_eq!(mod12_pairs(1, 5, 3), vec![]);
}

#[test]
fn seven_demo_configurations() {
    for (a, b, c) in [(1, 1, 10), (1, 1, 4), (1, 5, 3)] {
        let est = estimate(a, b, c);
        let expected = mod12_pairs(a, b, c);
        assert_eq!(est.symbolic_ell, expected.len() as u32);
        assert_eq!(est.ell_hat, Some(expected.len() as u32));
        assert!(est.agrees);
        for f in &est.factors {
            assert_eq!(f.exactly_trivial, expected.contains(&(f.j, f.k)));
            if f.exactly_trivial {
                assert!((f.ratio - est.trivial_density).abs() < 0.05, "{f:?}");
            } else {
                assert!(f.ratio < CANCELLATION_CEILING, "{f:?}");
            }
        }
    }
}

#[test]
fn seven_density_constant() {
    assert!((seven().trivial_density() - FRAC_PI_4 * 48.0 / 49.0).abs() < 1e-12);
}

#[test]
fn double_poles_need_invariant_chi() {
    let m = seven();
    for a in (1..12).step_by(2) {
        for b in (1..12).step_by(2) {
            for c in 0..12 {
                if mod12_pairs(a, b, c).len() < 2 {
                    continue;
                }
                let chi = GaussianHeckeChar::power_of_generator(&m, c).unwrap();
                assert!(chi.is_conjugation_invariant().unwrap());
                let est = estimate(a, b, c);
                assert_eq!(est.ell_hat, Some(2));
            }
        }
    }
}

#[test]
fn classification_matches_triviality_for_small_moduli() {
    let mut moduli = 0;
    for re in 1..=10i64 {
        for im in 0..=10i64 {
            let norm = re * re + im * im;
            if norm > 100 || norm % 2 == 0 {
                continue;
            }
            let m = Arc::new(GaussianModulus::from_parts(re, im).unwrap());
            let hist = residue_histogram(&m, DEFAULT_X, Execution::Parallel);
            for psi in unit_trivial_characters(&m) {
                let probe = classify_pole_from_histogram(&psi, &hist, DEFAULT_X, DEFAULT_TAU).unwrap();
                let expected = if psi.is_trivial() { PoleClass::Pole } else { PoleClass::NoPole };
                assert_eq!(probe.class, expected, "({re}+{im}i) {psi:?} ratio {}", probe.ratio);
            }
            moduli += 1;
        }
    }
    assert!(moduli > 20);
}

#[test]
fn gauss_circle_anchor() {
    let one = Arc::new(GaussianModulus::from_parts(1, 0).unwrap());
    let sum = character_sum(&GaussianHeckeChar::trivial(&one), DEFAULT_X, Execution::Parallel);
    assert!((sum.re / DEFAULT_X as f64 - FRAC_PI_4).abs() < 0.01);
    assert_eq!(sum.im, 0.0);
}

#[test]
fn histogram_is_partition_independent() {
    let m = seven();
    assert_eq!(
        residue_histogram(&m, 200_000, Execution::Sequential),
        residue_histogram(&m, 200_000, Execution::Parallel)
    );
}

#[test]
fn invariant_theta_is_rejected() {
    let m = seven();
    let chr = |e| GaussianHeckeChar::power_of_generator(&m, e).unwrap();
    assert!(numeric_triple_estimate(&chr(0), &chr(1), &chr(0), DEFAULT_X, DEFAULT_TAU, Execution::Parallel).is_err());
}
