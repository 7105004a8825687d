//! Universal perfect state transfer on circulant-like graphs.
//!
//! A graph whose switching automorphism group contains a full `n`-cycle is
//! switching equivalent to a circulant. It has universal PST exactly when its
//! Fourier-ordered eigenvalues take the form `λ_k = α + β(jk + c_k n)` with
//! `gcd(j, n) = 1`. The certificate records `α, β, j, c`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, NoCertificateReason, Result};
use crate::graph::HermitianGraph;
use crate::linalg::hermitian_eigendecomposition;
use crate::numbertheory::{gcd, gcd_i128, modular_inverse};
use crate::swaut::{enumerate_switching_automorphisms, MonomialMatrix, GROUP_TOL};
use crate::transfer::{fidelity, TransferKind, TransferReport};

pub const CERT_MAX_DEN: i64 = 10_000;
pub const CERT_RATIO_TOL: f64 = 1e-9;
pub const CERT_RESIDUAL_BUDGET: f64 = 1e-8;
pub const SCHEDULE_FIDELITY_TOL: f64 = 1e-6;

/// First continued-fraction convergent `p/q` of `x` with `q ≤ max_den` and `|x − p/q| ≤ tol`.
pub fn rational_reconstruct(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || max_den < 1 || tol.is_nan() || tol <= 0.0 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            return None;
        }
        let a = a as i128;
        (h0, h1) = (h1, a.checked_mul(h1)?.checked_add(h0)?);
        (k0, k1) = (k1, a.checked_mul(k1)?.checked_add(k0)?);
        if k1 > max_den as i128 {
            return None;
        }
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some((i64::try_from(h1).ok()?, k1 as i64));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Witness for `λ_k = alpha_offset + beta·(j·k + c_k·n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PstCertificate {
    pub n: usize,
    pub beta: f64,
    pub j: i64,
    pub c: Vec<i64>,
    pub alpha_offset: f64,
    pub max_residual: f64,
}

impl PstCertificate {
    /// The integers `m_k = j·k + c_k·n`.
    pub fn levels(&self) -> Vec<i64> {
        let n = self.n as i64;
        self.c
            .iter()
            .enumerate()
            .map(|(k, &c)| self.j * k as i64 + c * n)
            .collect()
    }
}

fn no_cert(reason: NoCertificateReason) -> Error {
    Error::NoCertificate(reason)
}

/// Certificate for eigenvalues given in Fourier order `λ_0, …, λ_{n−1}`.
pub fn pst_spectral_certificate(eigs: &[f64]) -> Result<PstCertificate> {
    let n = eigs.len();
    if eigs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
    }
    let scale = eigs.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mu: Vec<f64> = eigs.iter().map(|&x| x - eigs[0]).collect();
    let zero_tol = CERT_RATIO_TOL * scale.max(f64::MIN_POSITIVE);
    let r = mu
        .iter()
        .position(|m| m.abs() > zero_tol)
        .ok_or(no_cert(NoCertificateReason::DegenerateSpectrum))?;

    let mut fracs = Vec::with_capacity(n);
    for m in &mu {
        let (p, q) = rational_reconstruct(m / mu[r], CERT_MAX_DEN, CERT_RATIO_TOL)
            .ok_or(no_cert(NoCertificateReason::IrrationalRatio))?;
        fracs.push((p as i128, q as i128));
    }
    let overflow = || no_cert(NoCertificateReason::IrrationalRatio);
    let mut lcm: i128 = 1;
    for &(_, q) in &fracs {
        lcm = (lcm / gcd_i128(lcm, q))
            .checked_mul(q)
            .ok_or_else(overflow)?;
    }
    let mut numer = Vec::with_capacity(n);
    for &(p, q) in &fracs {
        numer.push(p.checked_mul(lcm / q).ok_or_else(overflow)?);
    }
    let g = numer.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    let sign: i128 = if mu[r] > 0.0 { 1 } else { -1 };
    let beta = mu[r].abs() * g as f64 / lcm as f64;
    let levels: Vec<i64> = numer
        .iter()
        .map(|&x| i64::try_from(sign * x / g).map_err(|_| overflow()))
        .collect::<Result<_>>()?;

    let ni = n as i64;
    let j = levels[1].rem_euclid(ni);
    if gcd(j, ni) != 1 {
        return Err(no_cert(NoCertificateReason::NotCoprime));
    }
    if levels
        .iter()
        .enumerate()
        .any(|(k, &m)| (m - j * k as i64).rem_euclid(ni) != 0)
    {
        return Err(no_cert(NoCertificateReason::CongruenceFail));
    }
    let c: Vec<i64> = levels
        .iter()
        .enumerate()
        .map(|(k, &m)| (m - j * k as i64) / ni)
        .collect();
    let max_residual = mu
        .iter()
        .zip(&levels)
        .map(|(m, &l)| (m - beta * l as f64).abs())
        .fold(0.0, f64::max);
    if max_residual > CERT_RESIDUAL_BUDGET * scale {
        return Err(no_cert(NoCertificateReason::ResidualTooLarge));
    }
    Ok(PstCertificate {
        n,
        beta,
        j,
        c,
        alpha_offset: eigs[0],
        max_residual,
    })
}

/// `t = 2πm/(βn)` with `jm ≡ 1 (mod n)`: the walk moves Fourier vertex 0 to vertex 1.
pub fn pst_time(cert: &PstCertificate) -> (f64, i64) {
    let n = cert.n as i64;
    let m = modular_inverse(cert.j, n).expect("certificate step is coprime to n");
    (2.0 * PI * m as f64 / (cert.beta * n as f64), m)
}

#[derive(Debug, Clone)]
pub struct UpstReport {
    pub certificate: PstCertificate,
    /// Base time `t` and the multiplier `m` it was built from.
    pub time: f64,
    pub m: i64,
    /// The full-cycle switching automorphism that fixes the Fourier order.
    pub cycle: MonomialMatrix,
    /// Vertex carrying Fourier position `k`.
    pub vertex_order: Vec<usize>,
    pub fourier_eigenvalues: Vec<f64>,
    /// Transfers from `vertex_order[0]` to every vertex at times `k·t`, `k = 1..=n`.
    pub schedule: Vec<TransferReport>,
}

/// Certifies universal perfect state transfer for graphs switching equivalent to a circulant.
pub fn upst_certify(g: &HermitianGraph) -> Result<UpstReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Unsupported("need at least two vertices".into()));
    }
    let group = match enumerate_switching_automorphisms(g, GROUP_TOL) {
        Ok(group) => group,
        Err(Error::DisconnectedSupport) => {
            return Err(Error::Unsupported("support graph is disconnected".into()))
        }
        Err(e) => return Err(e),
    };
    let shift: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let cycle = group
        .elements
        .iter()
        .find(|e| e.perm() == shift.as_slice())
        .or_else(|| group.elements.iter().find(|e| e.is_full_cycle()))
        .cloned()
        .ok_or_else(|| Error::Unsupported("no full-cycle switching automorphism".into()))?;

    // Rescale so that the cycle's n-th power is exactly the identity.
    let product: Complex64 = cycle.phases().iter().product();
    let gamma = Complex64::from_polar(1.0, -product.arg() / n as f64);
    let psi = cycle.perm();
    let d = cycle.phases();
    let mut vertex_order = Vec::with_capacity(n);
    let mut v = 0;
    for _ in 0..n {
        vertex_order.push(v);
        v = psi[v];
    }

    let a = g.adjacency();
    let mut fourier_eigenvalues = Vec::with_capacity(n);
    for k in 0..n {
        let mu = Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64);
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        x[vertex_order[0]] = Complex64::new(1.0, 0.0);
        for i in 0..n - 1 {
            let (u, w) = (vertex_order[i], vertex_order[i + 1]);
            x[w] = gamma * d[u] * x[u] / mu;
        }
        let ax = a.mul_vec(&x);
        let num: Complex64 = x.iter().zip(&ax).map(|(xi, yi)| xi.conj() * yi).sum();
        fourier_eigenvalues.push(num.re / n as f64);
    }

    let certificate = pst_spectral_certificate(&fourier_eigenvalues)?;
    let (time, m) = pst_time(&certificate);
    let sd = hermitian_eigendecomposition(a)?;
    let source = vertex_order[0];
    let mut schedule = Vec::with_capacity(n);
    for k in 1..=n {
        let target = vertex_order[k % n];
        let t = k as f64 * time;
        let f = fidelity(&sd, source, target, t)?;
        if f < 1.0 - SCHEDULE_FIDELITY_TOL {
            return Err(no_cert(NoCertificateReason::ValidationFailed));
        }
        schedule.push(TransferReport {
            source,
            target,
            time: t,
            fidelity: f,
            kind: TransferKind::PerfectAtTime,
            epsilon: 1.0 - f,
            monomial: None,
            monomial_residual: None,
        });
    }
    Ok(UpstReport {
        certificate,
        time,
        m,
        cycle,
        vertex_order,
        fourier_eigenvalues,
        schedule,
    })
}
