//! Hermitian graphs and the named constructions.

mod io;

pub use io::{parse_graph, read_graph_file, write_graph, write_graph_file};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HERMITIAN_TOL};
use crate::swaut::MonomialMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A graph given by a Hermitian adjacency matrix. Stored exactly Hermitian.
#[derive(Debug, Clone)]
pub struct HermitianGraph {
    adjacency: ComplexMatrix,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    X,
    Y,
}

impl HermitianGraph {
    /// Validates Hermiticity (relative tolerance 1e-12) and stores the
    /// exactly Hermitian part: upper triangle kept, lower set to its conjugate.
    pub fn new(adjacency: ComplexMatrix) -> Result<Self> {
        let n = adjacency.dim();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph must have at least one vertex".into(),
            ));
        }
        for r in 0..n {
            for c in 0..n {
                let z = adjacency[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        let defect = adjacency.hermitian_defect();
        if defect > HERMITIAN_TOL * adjacency.max_norm().max(1.0) {
            return Err(Error::NotHermitian {
                max_asymmetry: defect,
            });
        }
        let mut a = adjacency;
        for r in 0..n {
            a[(r, r)] = Complex64::new(a[(r, r)].re, 0.0);
            for c in r + 1..n {
                a[(c, r)] = a[(r, c)].conj();
            }
        }
        Ok(HermitianGraph {
            adjacency: a,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn adjacency(&self) -> &ComplexMatrix {
        &self.adjacency
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Whether the support graph (nonzero off-diagonal entries) is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, s) in seen.iter_mut().enumerate() {
                if v != u && !*s && self.adjacency[(u, v)] != ZERO {
                    *s = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether `A_{r,s}` depends only on `(s − r) mod n`.
    pub fn is_circulant(&self, tol: f64) -> bool {
        let n = self.n();
        (0..n).all(|r| {
            (0..n).all(|s| {
                (self.adjacency[(r, s)] - self.adjacency[(0, (s + n - r) % n)]).norm() <= tol
            })
        })
    }
}

/// Builds a graph from `(u, v, re, im)` triples; the conjugate entry is implied.
pub fn from_entries(n: usize, triples: &[(usize, usize, f64, f64)]) -> Result<HermitianGraph> {
    let mut a = ComplexMatrix::zeros(n);
    let mut given = vec![false; n * n];
    for &(u, v, re, im) in triples {
        for idx in [u, v] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if given[u * n + v] {
            return Err(Error::DuplicateEdge { u, v });
        }
        let z = Complex64::new(re, im);
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite { row: u, col: v });
        }
        if u == v && im != 0.0 {
            return Err(Error::ConjugateMismatch { u, v });
        }
        if given[v * n + u] && (a[(v, u)].conj() - z).norm() > HERMITIAN_TOL * z.norm().max(1.0) {
            return Err(Error::ConjugateMismatch { u, v });
        }
        given[u * n + v] = true;
        if !given[v * n + u] {
            a[(u, v)] = z;
            a[(v, u)] = z.conj();
        }
    }
    HermitianGraph::new(a)
}

/// Circulant with first row `weights`: `A_{r,s} = a_{(s−r) mod n}`.
pub fn circulant(weights: &[Complex64]) -> Result<HermitianGraph> {
    validate_hermitian_circulant(weights)?;
    let n = weights.len();
    let a = ComplexMatrix::from_fn(n, |r, s| weights[(s + n - r) % n]);
    HermitianGraph::new(a)
}

pub(crate) fn validate_hermitian_circulant(weights: &[Complex64]) -> Result<()> {
    let n = weights.len();
    if n == 0 {
        return Err(Error::NotHermitianCirculant);
    }
    let scale = weights.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if weights[0].im.abs() > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitianCirculant);
    }
    for k in 1..n {
        if (weights[n - k] - weights[k].conj()).norm() > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitianCirculant);
        }
    }
    Ok(())
}

/// The oriented `p`-cycle with `−i` forward and `+i` backward: `iΘ − iΘᵀ`.
pub fn construct_cp(p: usize) -> Result<HermitianGraph> {
    if p <= 2 {
        return Err(Error::DegenerateOrder(p));
    }
    let mut w = vec![ZERO; p];
    w[1] = -I;
    w[p - 1] = I;
    circulant(&w)
}

fn pauli(kind: PauliKind) -> ComplexMatrix {
    let one = Complex64::new(1.0, 0.0);
    let rows = match kind {
        PauliKind::X => vec![vec![ZERO, one], vec![one, ZERO]],
        PauliKind::Y => vec![vec![ZERO, -I], vec![I, ZERO]],
    };
    ComplexMatrix::from_rows(rows).expect("2x2")
}

pub fn construct_k2(kind: PauliKind) -> HermitianGraph {
    HermitianGraph::new(pauli(kind)).expect("Pauli matrices are Hermitian")
}

/// Four vertices `00, 01, 10, 11` with `A = I⊗Y − (Y⊗I + X⊗Y)`.
pub fn construct_k4() -> HermitianGraph {
    let x = pauli(PauliKind::X);
    let y = pauli(PauliKind::Y);
    let id = ComplexMatrix::identity(2);
    let a = &id.kron(&y) - &(&y.kron(&id) + &x.kron(&y));
    let explicit = ComplexMatrix::from_rows(vec![
        vec![ZERO, -I, I, I],
        vec![I, ZERO, -I, I],
        vec![-I, I, ZERO, -I],
        vec![-I, -I, I, ZERO],
    ])
    .expect("4x4");
    assert!(a.max_abs_diff(&explicit) == 0.0, "K4 tensor identity");
    HermitianGraph::new(a)
        .expect("Hermitian")
        .with_labels(
            ["00", "01", "10", "11"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
        .expect("4 labels")
}

/// `A₁ ⊗ I + I ⊗ A₂`; vertex `(a, b)` is index `a·n₂ + b`.
pub fn cartesian_product(g1: &HermitianGraph, g2: &HermitianGraph) -> HermitianGraph {
    let i1 = ComplexMatrix::identity(g1.n());
    let i2 = ComplexMatrix::identity(g2.n());
    let a = &g1.adjacency.kron(&i2) + &i1.kron(&g2.adjacency);
    let g = HermitianGraph::new(a).expect("sum of Hermitian matrices");
    match (g1.labels(), g2.labels()) {
        (Some(l1), Some(l2)) => {
            let labels = l1
                .iter()
                .flat_map(|x| l2.iter().map(move |y| format!("{x}{y}")))
                .collect();
            g.with_labels(labels).expect("n1*n2 labels")
        }
        _ => g,
    }
}

pub const MAX_HADAMARD_ORDER: usize = 6;

/// `U diag(e^{α_z}) Uᵀ` with `U = H_n/√(2ⁿ)` the normalised Sylvester Hadamard
/// matrix, so the eigenvalues are exactly `e^{α_z}`. Default `α_z = z`.
pub fn hadamard_graph(n: usize, alphas: Option<&[f64]>) -> Result<HermitianGraph> {
    if n == 0 || n > MAX_HADAMARD_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let size = 1usize << n;
    let alphas: Vec<f64> = match alphas {
        Some(a) => {
            if a.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: a.len(),
                });
            }
            a.to_vec()
        }
        None => (0..size).map(|z| z as f64).collect(),
    };
    for (i, x) in alphas.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("alpha {i} is not finite")));
        }
        if alphas[..i].contains(x) {
            return Err(Error::DuplicateAlpha);
        }
    }
    let lambdas: Vec<f64> = alphas.iter().map(|a| a.exp()).collect();
    let norm = 1.0 / size as f64;
    let sign = |r: usize, z: usize| {
        if (r & z).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    };
    let mut a = ComplexMatrix::zeros(size);
    for r in 0..size {
        for c in r..size {
            let v: f64 = (0..size)
                .map(|z| sign(r, z) * lambdas[z] * sign(c, z))
                .sum::<f64>()
                * norm;
            a[(r, c)] = Complex64::new(v, 0.0);
            a[(c, r)] = Complex64::new(v, 0.0);
        }
    }
    HermitianGraph::new(a)
}

/// Switching by a monomial: adjacency becomes `M† A M`.
pub fn apply_switching(g: &HermitianGraph, m: &MonomialMatrix) -> Result<HermitianGraph> {
    if m.dim() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: m.dim(),
        });
    }
    let p = m.to_matrix();
    let a = &(&p.adjoint() * &g.adjacency) * &p;
    HermitianGraph::new(a)
}
