//! Fidelity evaluation and time searches.
//!
//! `|⟨b|U(t)|a⟩|` is Lipschitz in `t` with constant `ρ = max|λ|`, so a grid of
//! step `δ` misses a peak by at most `ρδ/2`. Searches scan such a grid and
//! polish candidate peaks with golden-section refinement.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{evolution_operator, nearest_monomial, SpectralDecomposition};
use crate::swaut::MonomialMatrix;

pub const DEFAULT_HORIZON: f64 = 1e4;
pub const DEFAULT_PST_TOL: f64 = 1e-9;
pub const DEFAULT_PERIOD_TOL: f64 = 1e-6;
const MAX_REFINE_STEPS: usize = 200;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferKind {
    PerfectAtTime,
    PrettyGood,
    NotFound,
}

impl std::fmt::Display for TransferKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransferKind::PerfectAtTime => "PerfectAtTime",
            TransferKind::PrettyGood => "PrettyGood",
            TransferKind::NotFound => "NotFound",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    pub source: usize,
    pub target: usize,
    pub time: f64,
    pub fidelity: f64,
    pub kind: TransferKind,
    /// `1 − fidelity`.
    pub epsilon: f64,
    /// Projection of `U(time)` onto monomials, filled in when a perfect transfer fires.
    pub monomial: Option<MonomialMatrix>,
    pub monomial_residual: Option<f64>,
}

impl TransferReport {
    fn new(source: usize, target: usize, time: f64, fidelity: f64, kind: TransferKind) -> Self {
        TransferReport {
            source,
            target,
            time,
            fidelity,
            kind,
            epsilon: 1.0 - fidelity,
            monomial: None,
            monomial_residual: None,
        }
    }
}

fn check_index(sd: &SpectralDecomposition, v: usize) -> Result<()> {
    if v < sd.dim() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: v,
            n: sd.dim(),
        })
    }
}

/// Precomputed `⟨b|z_k⟩⟨z_k|a⟩` for fast repeated evaluation.
struct Amplitude<'a> {
    eigenvalues: &'a [f64],
    weights: Vec<Complex64>,
}

impl<'a> Amplitude<'a> {
    fn new(sd: &'a SpectralDecomposition, a: usize, b: usize) -> Self {
        let v = &sd.eigenvectors;
        Amplitude {
            eigenvalues: &sd.eigenvalues,
            weights: (0..sd.dim())
                .map(|k| v[(b, k)] * v[(a, k)].conj())
                .collect(),
        }
    }

    fn fidelity(&self, t: f64) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(&lam, &w)| w * Complex64::from_polar(1.0, -t * lam))
            .sum::<Complex64>()
            .norm()
    }
}

pub fn fidelity(sd: &SpectralDecomposition, a: usize, b: usize, t: f64) -> Result<f64> {
    check_index(sd, a)?;
    check_index(sd, b)?;
    Ok(Amplitude::new(sd, a, b).fidelity(t))
}

/// Uniform samples on `[0, t_max]`, endpoints included.
pub fn fidelity_scan(
    sd: &SpectralDecomposition,
    a: usize,
    b: usize,
    t_max: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    check_index(sd, a)?;
    check_index(sd, b)?;
    if samples < 2 {
        return Err(Error::InvalidArgument("samples must be at least 2".into()));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument("t_max must be positive".into()));
    }
    let amp = Amplitude::new(sd, a, b);
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            let t = if i == samples - 1 {
                t_max
            } else {
                t_max * i as f64 / last
            };
            (t, amp.fidelity(t))
        })
        .collect())
}

/// Writes `t,fidelity` rows with 17 significant digits.
pub fn write_scan_csv<W: Write>(rows: &[(f64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "t,fidelity")?;
    for (t, f) in rows {
        writeln!(out, "{t:.16e},{f:.16e}")?;
    }
    Ok(())
}

/// Fidelity at `t`; on success also projects `U(t)` onto the nearest monomial.
pub fn pst_check_at_time(
    sd: &SpectralDecomposition,
    a: usize,
    b: usize,
    t: f64,
    tol: f64,
) -> Result<TransferReport> {
    let f = fidelity(sd, a, b, t)?;
    if f < 1.0 - tol {
        return Ok(TransferReport::new(a, b, t, f, TransferKind::NotFound));
    }
    let mut report = TransferReport::new(a, b, t, f, TransferKind::PerfectAtTime);
    let projection = nearest_monomial(&evolution_operator(sd, t))?;
    report.monomial = projection.monomial;
    report.monomial_residual = Some(projection.residual);
    Ok(report)
}

fn grid_step(sd: &SpectralDecomposition) -> f64 {
    let rho = sd.spectral_radius();
    if rho > 0.0 {
        (0.1 / rho).min(0.01)
    } else {
        0.01
    }
}

/// Golden-section maximisation on `[lo, hi]`; returns the best point seen.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, seed: (f64, f64)) -> (f64, f64) {
    let mut best = seed;
    let consider = |t: f64, v: f64, best: &mut (f64, f64)| {
        if v > best.1 || (v == best.1 && t < best.0) {
            *best = (t, v);
        }
    };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    for _ in 0..MAX_REFINE_STEPS {
        if hi - lo <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
    }
    best
}

/// Scans `f` on a grid of step `delta` over `(start, t_max]` and refines every
/// sampled local maximum that could still reach `target` given the Lipschitz
/// slack. Returns the earliest refined point reaching `target`, or else the
/// best point seen.
fn scan_for_peak(
    f: impl Fn(f64) -> f64,
    delta: f64,
    slack: f64,
    t_max: f64,
    target: f64,
    accept: impl Fn(f64) -> bool,
) -> (f64, f64, bool) {
    let steps = (t_max / delta).ceil() as usize;
    let t_at = |i: usize| (i as f64 * delta).min(t_max);
    let (mut prev2, mut prev1) = (f(t_at(0)), f(t_at(1.min(steps))));
    let mut best = (
        0.0,
        if accept(0.0) {
            prev2
        } else {
            f64::NEG_INFINITY
        },
    );
    for i in 2..=steps {
        let cur = f(t_at(i));
        let centre = i - 1;
        if prev1 >= prev2 && prev1 >= cur && prev1 >= target - slack {
            let (t, v) = golden_max(&f, t_at(centre - 1), t_at(i), (t_at(centre), prev1));
            if accept(t) {
                if v >= target {
                    return (t, v, true);
                }
                if v > best.1 {
                    best = (t, v);
                }
            }
        } else if prev1 > best.1 && accept(t_at(centre)) {
            best = (t_at(centre), prev1);
        }
        prev2 = prev1;
        prev1 = cur;
    }
    if accept(t_at(steps)) && prev1 > best.1 {
        best = (t_at(steps), prev1);
        if prev1 >= target {
            return (best.0, best.1, true);
        }
    }
    (best.0, best.1, false)
}

/// Earliest time in `[0, t_max]` with fidelity at least `target_fidelity`.
pub fn pgst_search(
    sd: &SpectralDecomposition,
    a: usize,
    b: usize,
    target_fidelity: f64,
    t_max: f64,
) -> Result<TransferReport> {
    check_index(sd, a)?;
    check_index(sd, b)?;
    if !(target_fidelity > 0.0 && target_fidelity < 1.0) {
        return Err(Error::InvalidArgument(
            "target fidelity must lie in (0, 1)".into(),
        ));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument("t_max must be positive".into()));
    }
    let amp = Amplitude::new(sd, a, b);
    if a == b {
        return Ok(TransferReport::new(
            a,
            b,
            0.0,
            amp.fidelity(0.0),
            TransferKind::PrettyGood,
        ));
    }
    let delta = grid_step(sd);
    let slack = sd.spectral_radius() * delta / 2.0;
    let (t, f, hit) = scan_for_peak(
        |t| amp.fidelity(t),
        delta,
        slack,
        t_max,
        target_fidelity,
        |_| true,
    );
    let kind = if hit {
        TransferKind::PrettyGood
    } else {
        TransferKind::NotFound
    };
    Ok(TransferReport::new(a, b, t, f, kind))
}

/// Smallest `t > tol` with `min_a |U(t)_{aa}| ≥ 1 − tol`, if one exists in `(tol, t_max]`.
pub fn periodicity_search(sd: &SpectralDecomposition, t_max: f64, tol: f64) -> Result<Option<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument("t_max must be positive".into()));
    }
    let n = sd.dim();
    let v = &sd.eigenvectors;
    let weights: Vec<Vec<f64>> = (0..n)
        .map(|a| (0..n).map(|k| v[(a, k)].norm_sqr()).collect())
        .collect();
    let g = |t: f64| -> f64 {
        let phases: Vec<Complex64> = sd
            .eigenvalues
            .iter()
            .map(|&lam| Complex64::from_polar(1.0, -t * lam))
            .collect();
        weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&phases)
                    .map(|(&x, &p)| p * x)
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let delta = grid_step(sd);
    let slack = sd.spectral_radius() * delta / 2.0;
    let (t, _, hit) = scan_for_peak(g, delta, slack, t_max, 1.0 - tol, |t| t > tol);
    Ok(hit.then_some(t))
}

/// Simultaneous approximation target: find `t` with `tλ_k ≈ α_k (mod 2π)` for all `k`.
#[derive(Debug, Clone)]
pub struct KroneckerTarget {
    frequencies: Vec<f64>,
    phases: Vec<f64>,
    epsilon: f64,
    t_min: f64,
    t_max: f64,
}

impl KroneckerTarget {
    pub fn new(
        frequencies: Vec<f64>,
        phases: Vec<f64>,
        epsilon: f64,
        t_min: f64,
        t_max: f64,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidTarget(m.to_string()));
        if frequencies.is_empty() {
            return bad("no frequencies");
        }
        if frequencies.len() != phases.len() {
            return bad("frequencies and phases differ in length");
        }
        if frequencies.iter().chain(&phases).any(|x| !x.is_finite()) {
            return bad("non-finite frequency or phase");
        }
        if !(epsilon > 0.0 && epsilon < PI) {
            return bad("epsilon must lie in (0, pi)");
        }
        if !(t_min >= 0.0 && t_min < t_max && t_max.is_finite()) {
            return bad("need 0 <= t_min < t_max");
        }
        if frequencies.iter().all(|&x| x == 0.0) {
            return bad("all frequencies are zero");
        }
        Ok(KroneckerTarget {
            frequencies,
            phases,
            epsilon,
            t_min,
            t_max,
        })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KroneckerSolution {
    pub time: f64,
    /// `p_k` with `tλ_k − α_k ≈ 2π p_k`.
    pub witnesses: Vec<i64>,
    /// `max_k dist(tλ_k − α_k, 2πℤ)`.
    pub max_distance: f64,
}

fn distance_to_lattice(x: f64) -> (f64, i64) {
    let p = (x / (2.0 * PI)).round();
    ((x - 2.0 * PI * p).abs(), p as i64)
}

/// First grid time in `[t_min, t_max]` with every phase within `ε` of its target.
pub fn kronecker_time_search(target: &KroneckerTarget) -> Option<KroneckerSolution> {
    let rho = target
        .frequencies
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    let step = target.epsilon / (4.0 * rho);
    let steps = ((target.t_max - target.t_min) / step).ceil() as u64;
    for i in 0..=steps {
        let t = (target.t_min + i as f64 * step).min(target.t_max);
        let mut witnesses = Vec::with_capacity(target.frequencies.len());
        let mut max_distance: f64 = 0.0;
        let ok = target
            .frequencies
            .iter()
            .zip(&target.phases)
            .all(|(&lam, &alpha)| {
                let (d, p) = distance_to_lattice(t * lam - alpha);
                witnesses.push(p);
                max_distance = max_distance.max(d);
                d < target.epsilon
            });
        if ok {
            return Some(KroneckerSolution {
                time: t,
                witnesses,
                max_distance,
            });
        }
    }
    None
}
