//! Dense complex matrix kernel.
//!
//! Everything downstream works on small dense matrices (a few dozen vertices
//! at most), so the kernel favours a simple row-major layout and a cyclic
//! Jacobi eigensolver over anything blocked or sparse. Tolerances are stated
//! in the entrywise max norm `‖·‖_max`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::swaut::MonomialMatrix;

/// Off-diagonal Frobenius norm, relative to the matrix norm, at which Jacobi stops.
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;
/// Entrywise Hermitian tolerance, relative to `max(1, ‖A‖_max)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { n, data }
    }

    /// Builds a matrix from rows, rejecting ragged input and non-finite entries.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, z) in row.into_iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                data.push(z);
            }
        }
        Ok(ComplexMatrix { n, data })
    }

    /// Real matrix convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.n).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Entrywise max modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_max`; panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖A − A†‖_max`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            for c in r..self.n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.n))
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |r, c| {
            self[(r / m, c / m)] * other[(r % m, c % m)]
        })
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn commutator_norm(&self, other: &ComplexMatrix) -> f64 {
        (self * other).max_abs_diff(&(other * self))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.n + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.n, self.n)?;
        for r in 0..self.n {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Eigenvalues (ascending) and the unitary whose `k`-th column is the matching eigenvector.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|x| Complex64::new(x, 0.0))
    }

    /// `V f(Λ) V†` for a scalar function of the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<Complex64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| v[(r, k)] * fl[k] * v[(c, k)].conj()).sum()
        })
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// `⟨b| e^{−itA} |a⟩`.
    pub fn amplitude(&self, a: usize, b: usize, t: f64) -> Complex64 {
        let v = &self.eigenvectors;
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lam)| Complex64::from_polar(1.0, -t * lam) * v[(b, k)] * v[(a, k)].conj())
            .sum()
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the classical real rotation that annihilates it.
/// Sweep order is fixed (row-major over `p < q`), so the output is
/// deterministic. Columns are normalised so their largest-modulus entry
/// (first one, on ties) is real and positive.
pub fn hermitian_eigendecomposition(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let scale = a.max_norm().max(1.0);
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }

    let mut w = a.clone();
    // Work on the exactly Hermitian part.
    for r in 0..n {
        w[(r, r)] = Complex64::new(w[(r, r)].re, 0.0);
        for c in r + 1..n {
            let z = 0.5 * (w[(r, c)] + w[(c, r)].conj());
            w[(r, c)] = z;
            w[(c, r)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let norm = w.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&w) <= JACOBI_OFF_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&w) > JACOBI_OFF_TOL * norm {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    for c in 0..n {
        fix_column_phase(&mut eigenvectors, c);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(w: &ComplexMatrix) -> f64 {
    let n = w.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += w[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = w.dim();
    let apq = w[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    // Negligible against both diagonal entries: drop it.
    if app.abs() + r * 1e3 == app.abs() && aqq.abs() + r * 1e3 == aqq.abs() {
        w[(p, q)] = Complex64::new(0.0, 0.0);
        w[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let e = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ec = e.conj();

    // A <- A G, V <- V G with G = [[c, s], [-s e*, c e*]] on (p, q).
    for k in 0..n {
        let akp = w[(k, p)];
        let akq = w[(k, q)];
        w[(k, p)] = akp * c - akq * ec * s;
        w[(k, q)] = akp * s + akq * ec * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ec * s;
        v[(k, q)] = vkp * s + vkq * ec * c;
    }
    // A <- G† A.
    for k in 0..n {
        let apk = w[(p, k)];
        let aqk = w[(q, k)];
        w[(p, k)] = apk * c - aqk * e * s;
        w[(q, k)] = apk * s + aqk * e * c;
    }
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);
}

fn fix_column_phase(m: &mut ComplexMatrix, c: usize) {
    let n = m.dim();
    let max = (0..n).map(|r| m[(r, c)].norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = (0..n)
        .find(|&r| m[(r, c)].norm() >= max - 1e-12)
        .expect("max entry exists");
    let z = m[(pivot, c)];
    let rot = z.conj() / z.norm();
    for r in 0..n {
        m[(r, c)] *= rot;
    }
    m[(pivot, c)] = Complex64::new(m[(pivot, c)].norm(), 0.0);
}

/// `U(t) = Σ_k e^{−itλ_k} |z_k⟩⟨z_k|`.
pub fn evolution_operator(sd: &SpectralDecomposition, t: f64) -> ComplexMatrix {
    sd.apply_function(|lam| Complex64::from_polar(1.0, -t * lam))
}

/// Closed-form `e^{it(A+B)}` for anticommuting `A`, `B`:
/// `cos(t√S) + i (A+B) S^{−1/2} sin(t√S)` with `S = A² + B²`.
pub fn anticommuting_exponential(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    t: f64,
) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let anti = &(a * b) + &(b * a);
    let residual = anti.max_norm();
    if residual > 1e-10 {
        return Err(Error::NotAnticommuting { residual });
    }
    let s = &(a * a) + &(b * b);
    let sd = hermitian_eigendecomposition(&s)?;
    let min_eigenvalue = sd.eigenvalues.first().copied().unwrap_or(0.0);
    if min_eigenvalue <= 1e-12 {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let cos_part = sd.apply_function(|mu| Complex64::new((t * mu.sqrt()).cos(), 0.0));
    let sinc_part = sd.apply_function(|mu| {
        let r = mu.sqrt();
        Complex64::new((t * r).sin() / r, 0.0)
    });
    let sum = a + b;
    let odd = (&sum * &sinc_part).scale(Complex64::new(0.0, 1.0));
    Ok(&cos_part + &odd)
}

/// Closest monomial matrix to a unitary, read off column-wise.
#[derive(Debug, Clone)]
pub struct MonomialProjection {
    /// Canonical (global-phase-free) representative; `None` when the
    /// column-wise maxima do not form a permutation.
    pub monomial: Option<MonomialMatrix>,
    /// `‖u − P_φ diag(d)‖_max`, or `+∞` when no permutation was found.
    pub residual: f64,
}

/// Projects a unitary onto the monomial matrices.
///
/// `φ(k)` is the row of the largest entry in column `k` and `d_k` its phase.
pub fn nearest_monomial(u: &ComplexMatrix) -> Result<MonomialProjection> {
    let residual = u.unitarity_defect();
    if residual > 1e-8 {
        return Err(Error::NotUnitary { residual });
    }
    let n = u.dim();
    let mut perm = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = 0;
        let mut best_abs = -1.0;
        for r in 0..n {
            let a = u[(r, k)].norm();
            if a > best_abs {
                best_abs = a;
                best = r;
            }
        }
        perm.push(best);
        let z = u[(best, k)];
        phases.push(if best_abs > 0.0 {
            z / best_abs
        } else {
            Complex64::new(1.0, 0.0)
        });
    }
    let mut seen = vec![false; n];
    for &p in &perm {
        if seen[p] {
            return Ok(MonomialProjection {
                monomial: None,
                residual: f64::INFINITY,
            });
        }
        seen[p] = true;
    }
    let mut fitted = ComplexMatrix::zeros(n);
    for k in 0..n {
        fitted[(perm[k], k)] = phases[k];
    }
    let residual = u.max_abs_diff(&fitted);
    let monomial = MonomialMatrix::new(perm, phases)?;
    Ok(MonomialProjection {
        monomial: Some(monomial),
        residual,
    })
}
