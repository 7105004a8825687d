use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const UNIT_TOL: f64 = 1e-12;

/// A monomial matrix `P_φ D`, stored modulo a global phase.
///
/// Column `k` holds `phases[k]` in row `perm[k]`, i.e. `(P_φ)_{j,k} = [j = φ(k)]`.
/// The representative is canonical: the phase at the smallest moved index
/// (index 0 when `φ` is the identity) equals 1.
#[derive(Clone, PartialEq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phases: Vec<Complex64>,
}

impl MonomialMatrix {
    /// Validates and canonicalises.
    pub fn new(perm: Vec<usize>, phases: Vec<Complex64>) -> Result<Self> {
        let n = perm.len();
        if phases.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: phases.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidMonomial(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        for z in &phases {
            if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::InvalidMonomial(format!(
                    "phase {z} is not unit modulus"
                )));
            }
        }
        let mut m = MonomialMatrix { perm, phases };
        m.canonicalize();
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            phases: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// Pure permutation with trivial phases.
    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![Complex64::new(1.0, 0.0); n])
    }

    /// Diagonal switching matrix.
    pub fn diagonal(phases: Vec<Complex64>) -> Result<Self> {
        Self::new((0..phases.len()).collect(), phases)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// Index whose phase is pinned to 1 in canonical form.
    fn anchor(perm: &[usize]) -> usize {
        perm.iter()
            .enumerate()
            .find(|&(k, &p)| k != p)
            .map_or(0, |(k, _)| k)
    }

    fn canonicalize(&mut self) {
        if self.perm.is_empty() {
            return;
        }
        let a = self.phases[Self::anchor(&self.perm)];
        let inv = a.conj() / a.norm();
        for z in &mut self.phases {
            *z *= inv;
            *z /= z.norm();
        }
        let a = Self::anchor(&self.perm);
        self.phases[a] = Complex64::new(1.0, 0.0);
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (k, (&p, &d)) in self.perm.iter().zip(&self.phases).enumerate() {
            m[(p, k)] = d;
        }
        m
    }

    /// `self · other`, canonicalised.
    ///
    /// `P₁D₁P₂D₂ = P₁P₂ D̂₁D₂` where `D̂₁[k] = D₁[φ₂(k)]`.
    pub fn compose(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phases = other
            .perm
            .iter()
            .zip(&other.phases)
            .map(|(&j, &d2)| self.phases[j] * d2)
            .collect();
        let mut m = MonomialMatrix { perm, phases };
        m.canonicalize();
        Ok(m)
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phases = vec![Complex64::new(1.0, 0.0); n];
        for (j, (&p, &d)) in self.perm.iter().zip(&self.phases).enumerate() {
            perm[p] = j;
            phases[p] = d.conj();
        }
        let mut m = MonomialMatrix { perm, phases };
        m.canonicalize();
        m
    }

    /// Equality of canonical representatives up to `tol` on the phases.
    pub fn approx_eq(&self, other: &MonomialMatrix, tol: f64) -> bool {
        self.perm == other.perm
            && self
                .phases
                .iter()
                .zip(&other.phases)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MonomialMatrix::identity(self.dim()), tol)
    }

    pub fn fixed_points(&self) -> usize {
        self.perm
            .iter()
            .enumerate()
            .filter(|&(k, &p)| k == p)
            .count()
    }

    /// Smallest `m ≥ 1` with `self^m` projectively the identity, searching up to `cap`.
    pub fn projective_order(&self, cap: usize, tol: f64) -> Option<usize> {
        let mut acc = self.clone();
        for m in 1..=cap {
            if acc.is_identity(tol) {
                return Some(m);
            }
            acc = acc.compose(self).expect("same dimension");
        }
        None
    }

    /// Disjoint cycles of the permutation, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.perm[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.perm[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn is_full_cycle(&self) -> bool {
        self.dim() > 0 && self.cycles().len() == 1
    }

    /// Cycle notation with fixed points omitted, e.g. `(0 1)(2 3)`; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialMatrix {} [", self.cycle_notation())?;
        for (k, z) in self.phases.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
