//! Spectral necessary conditions for universal state transfer.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circulant_pst::rational_reconstruct;
use crate::error::{Error, Result};
use crate::graph::validate_hermitian_circulant;
use crate::linalg::SpectralDecomposition;

pub const DEFAULT_GAP_TOL: f64 = 1e-8;
pub const DEFAULT_FLAT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_DEN: i64 = 10_000;
pub const DEFAULT_RATIO_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-9;
const IMAG_TOL: f64 = 1e-10;

/// `λ_k = Σ_j a_j ω^{jk}` with `ω = e^{2πi/n}`, in index order.
pub fn circulant_eigenvalues(weights: &[Complex64]) -> Result<Vec<f64>> {
    validate_hermitian_circulant(weights)?;
    let n = weights.len();
    let scale = weights.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    (0..n)
        .map(|k| {
            let lam: Complex64 = weights
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    a * Complex64::from_polar(1.0, 2.0 * PI * ((j * k) % n) as f64 / n as f64)
                })
                .sum();
            if lam.im.abs() > IMAG_TOL * scale {
                Err(Error::NonRealEigenvalue(lam.im))
            } else {
                Ok(lam.re)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplicity {
    pub simple: bool,
    /// Smallest gap between adjacent sorted eigenvalues; `+∞` for `n = 1`.
    pub min_gap: f64,
}

pub fn eigenvalue_simplicity(sd: &SpectralDecomposition, gap_tol: f64) -> Simplicity {
    let min_gap = sd
        .eigenvalues
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    Simplicity {
        simple: min_gap > gap_tol,
        min_gap,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flatness {
    pub flat: bool,
    /// `max_{j,k} | |U_jk| − 1/√n |`.
    pub max_deviation: f64,
}

/// Reports on the basis held in `sd`; only conclusive when the spectrum is simple.
pub fn flat_eigenbasis_check(sd: &SpectralDecomposition, tol: f64) -> Flatness {
    let n = sd.dim();
    let target = 1.0 / (n as f64).sqrt();
    let v = &sd.eigenvectors;
    let mut max_deviation: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            max_deviation = max_deviation.max((v[(r, c)].norm() - target).abs());
        }
    }
    Flatness {
        flat: max_deviation <= tol,
        max_deviation,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioVerdict {
    pub j: usize,
    pub k: usize,
    pub ratio: f64,
    /// `(p, q)` with `q > 0` when the ratio was reconstructed.
    pub rational: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub pairs: Vec<RatioVerdict>,
    pub all_rational: bool,
}

/// Rational reconstruction of every `λ_j / λ_k` with `|λ_k| > tol`.
///
/// Requires a traceless spectrum; [`ratio_rationality_of_values`] skips that check.
pub fn eigenvalue_ratio_rationality(
    sd: &SpectralDecomposition,
    max_den: i64,
    tol: f64,
) -> Result<RatioReport> {
    let trace: f64 = sd.eigenvalues.iter().sum();
    let scale = sd.spectral_radius().max(1.0);
    if trace.abs() > TRACE_TOL * scale {
        return Err(Error::TraceNotZero(trace));
    }
    ratio_rationality_of_values(&sd.eigenvalues, max_den, tol)
}

pub fn ratio_rationality_of_values(values: &[f64], max_den: i64, tol: f64) -> Result<RatioReport> {
    if !values.iter().any(|x| x.abs() > tol) {
        return Err(Error::ZeroSpectrum);
    }
    let mut pairs = Vec::new();
    for (k, &den) in values.iter().enumerate() {
        if den.abs() <= tol {
            continue;
        }
        for (j, &num) in values.iter().enumerate() {
            if j == k {
                continue;
            }
            let ratio = num / den;
            pairs.push(RatioVerdict {
                j,
                k,
                ratio,
                rational: rational_reconstruct(ratio, max_den, tol),
            });
        }
    }
    let all_rational = pairs.iter().all(|p| p.rational.is_some());
    Ok(RatioReport {
        pairs,
        all_rational,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAlignment {
    pub aligned: bool,
    /// `|Σ β_k e^{iα_k}|`.
    pub magnitude: f64,
    /// Largest circular distance between two phases.
    pub spread: f64,
}

/// Circular distance on `ℝ / 2πℤ`, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Upper bound on the spread of an aligned family.
///
/// From `1 − s² = Σ_{j,k} β_j β_k (1 − cos(α_j − α_k))` and `1 − s² ≤ 2 tol`,
/// each pair obeys `1 − cos δ ≤ tol / (β_j β_k)`, i.e.
/// `δ ≤ 2 asin(√(tol / (2 β_j β_k)))`.
pub fn alignment_spread_bound(betas: &[f64], tol: f64) -> f64 {
    let mut sorted: Vec<f64> = betas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let min_pair = match sorted.as_slice() {
        [a, b, ..] => a * b,
        _ => return 0.0,
    };
    2.0 * (tol / (2.0 * min_pair)).sqrt().min(1.0).asin()
}

pub fn phase_alignment(coefficients: &[(f64, f64)], tol: f64) -> Result<PhaseAlignment> {
    if coefficients.is_empty() {
        return Err(Error::WeightsInvalid("no coefficients".into()));
    }
    if let Some(&(b, a)) = coefficients
        .iter()
        .find(|(b, a)| !(b.is_finite() && *b > 0.0 && a.is_finite()))
    {
        return Err(Error::WeightsInvalid(format!(
            "invalid pair (beta {b}, alpha {a})"
        )));
    }
    let total: f64 = coefficients.iter().map(|c| c.0).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightsInvalid(format!("weights sum to {total}")));
    }
    let magnitude = coefficients
        .iter()
        .map(|&(b, a)| Complex64::from_polar(b, a))
        .sum::<Complex64>()
        .norm();
    let mut spread: f64 = 0.0;
    for (i, &(_, ai)) in coefficients.iter().enumerate() {
        for &(_, aj) in &coefficients[i + 1..] {
            spread = spread.max(circular_distance(ai, aj));
        }
    }
    let aligned = magnitude >= 1.0 - tol;
    if aligned {
        let betas: Vec<f64> = coefficients.iter().map(|c| c.0).collect();
        debug_assert!(spread <= alignment_spread_bound(&betas, tol) * (1.0 + 1e-9) + 1e-15);
    }
    Ok(PhaseAlignment {
        aligned,
        magnitude,
        spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, construct_cp, construct_k4, hadamard_graph};
    use crate::linalg::{hermitian_eigendecomposition, ComplexMatrix};

    fn sd_of(a: &ComplexMatrix) -> SpectralDecomposition {
        hermitian_eigendecomposition(a).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn c3_closed_form() {
        let l = circulant_eigenvalues(&[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)]).unwrap();
        let s3 = 3f64.sqrt();
        for (x, y) in l.iter().zip([0.0, s3, -s3]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn cp_closed_form_and_zero_weights() {
        let mut w = vec![c(0.0, 0.0); 7];
        w[1] = c(0.0, -1.0);
        w[6] = c(0.0, 1.0);
        for (k, lam) in circulant_eigenvalues(&w).unwrap().into_iter().enumerate() {
            assert!((lam - 2.0 * (2.0 * PI * k as f64 / 7.0).sin()).abs() < 1e-12);
        }
        assert_eq!(
            circulant_eigenvalues(&[c(0.0, 0.0); 4]).unwrap(),
            vec![0.0; 4]
        );
        assert!(matches!(
            circulant_eigenvalues(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NotHermitianCirculant)
        ));
    }

    #[test]
    fn simplicity_examples() {
        let s = eigenvalue_simplicity(
            &sd_of(construct_cp(3).unwrap().adjacency()),
            DEFAULT_GAP_TOL,
        );
        assert!(s.simple);
        assert!((s.min_gap - 3f64.sqrt()).abs() < 1e-10);

        let c4 = circulant(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(!eigenvalue_simplicity(&sd_of(c4.adjacency()), DEFAULT_GAP_TOL).simple);

        let s = eigenvalue_simplicity(&sd_of(construct_k4().adjacency()), DEFAULT_GAP_TOL);
        assert!(s.simple);
        assert!((s.min_gap - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-10);
    }

    #[test]
    fn flatness_examples() {
        assert!(
            flat_eigenbasis_check(
                &sd_of(construct_cp(5).unwrap().adjacency()),
                DEFAULT_FLAT_TOL
            )
            .flat
        );
        assert!(
            flat_eigenbasis_check(
                &sd_of(hadamard_graph(2, None).unwrap().adjacency()),
                DEFAULT_FLAT_TOL
            )
            .flat
        );
        let p3 =
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]])
                .unwrap();
        let f = flat_eigenbasis_check(&sd_of(&p3), DEFAULT_FLAT_TOL);
        assert!(!f.flat);
        assert!((f.max_deviation - 1.0 / 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn ratio_examples() {
        let r = eigenvalue_ratio_rationality(
            &sd_of(construct_cp(3).unwrap().adjacency()),
            DEFAULT_MAX_DEN,
            DEFAULT_RATIO_TOL,
        )
        .unwrap();
        assert!(r.all_rational);
        assert!(r.pairs.iter().any(|p| p.rational == Some((-1, 1))));

        let r =
            ratio_rationality_of_values(&[1.0, 2f64.sqrt()], DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL)
                .unwrap();
        assert!(!r.all_rational);

        let r = eigenvalue_ratio_rationality(
            &sd_of(construct_k4().adjacency()),
            DEFAULT_MAX_DEN,
            DEFAULT_RATIO_TOL,
        )
        .unwrap();
        assert!(!r.all_rational);
    }

    #[test]
    fn ratio_errors() {
        let sd = SpectralDecomposition {
            eigenvalues: vec![1.0, 2f64.sqrt()],
            eigenvectors: ComplexMatrix::identity(2),
        };
        assert!(matches!(
            eigenvalue_ratio_rationality(&sd, DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL),
            Err(Error::TraceNotZero(_))
        ));
        assert!(matches!(
            ratio_rationality_of_values(&[0.0, 0.0], DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL),
            Err(Error::ZeroSpectrum)
        ));
    }

    #[test]
    fn alignment_examples() {
        let a = phase_alignment(&[(0.5, 0.7), (0.5, 0.7)], 1e-9).unwrap();
        assert!(a.aligned);
        assert!(a.spread.abs() < 1e-15);

        let a = phase_alignment(&[(0.5, 0.0), (0.5, PI)], 1e-9).unwrap();
        assert!(!a.aligned);
        assert!(a.magnitude < 1e-15);

        let third = 1.0 / 3.0;
        let coeffs = [(third, 0.0), (third, 1e-6), (third, -1e-6)];
        let a = phase_alignment(&coeffs, 1e-9).unwrap();
        assert!(a.aligned);
        assert!((a.spread - 2e-6).abs() < 1e-15);
        assert!(a.spread <= (2.0 * 1e-9 / (third * third)).sqrt());
    }

    #[test]
    fn alignment_rejects_bad_weights() {
        for bad in [
            vec![],
            vec![(0.5, 0.0)],
            vec![(1.5, 0.0), (-0.5, 0.0)],
            vec![(1.0, f64::NAN)],
        ] {
            assert!(matches!(
                phase_alignment(&bad, 1e-9),
                Err(Error::WeightsInvalid(_))
            ));
        }
    }

    #[test]
    fn circular_distance_wraps() {
        assert!((circular_distance(0.1, 2.0 * PI - 0.1) - 0.2).abs() < 1e-12);
        assert!((circular_distance(0.0, PI) - PI).abs() < 1e-12);
    }
}
