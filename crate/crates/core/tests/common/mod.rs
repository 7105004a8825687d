//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use hermwalk::{ComplexMatrix, HermitianGraph, MonomialMatrix};
use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

pub type C = Complex<f64>;

pub fn to_na(m: &ComplexMatrix) -> DMatrix<C> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |r, c| m[(r, c)])
}

pub fn from_na(m: &DMatrix<C>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), |r, c| m[(r, c)])
}

/// Sorted eigenvalues from nalgebra's Hermitian solver.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = to_na(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `exp(s·M)` by nalgebra's Padé exponential.
pub fn expm(m: &ComplexMatrix, s: C) -> ComplexMatrix {
    from_na(&(to_na(m) * s).exp())
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n);
    for r in 0..n {
        a[(r, r)] = C::new(rng.sample(StandardNormal), 0.0);
        for c in r + 1..n {
            let z = C::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            a[(r, c)] = z;
            a[(c, r)] = z.conj();
        }
    }
    a
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of `R` removed.
pub fn haar_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| {
        C::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q.clone();
    for c in 0..n {
        let d = r[(c, c)];
        let ph = d / d.norm();
        for row in 0..n {
            u[(row, c)] = q[(row, c)] * ph;
        }
    }
    from_na(&u)
}

pub fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Switching automorphisms by brute force: for every permutation, solve the
/// linear system `A_{φu,φk} d_k = A_{u,k} d_u` for `d` by SVD and keep
/// solutions whose entries all have equal modulus.
pub fn exhaustive_swaut(g: &HermitianGraph) -> Vec<MonomialMatrix> {
    let a = g.adjacency();
    let n = g.n();
    let scale = a.max_norm().max(1.0);
    let mut out = Vec::new();
    for perm in permutations(n) {
        let mut sys = DMatrix::<C>::zeros(n * n, n);
        for u in 0..n {
            for k in 0..n {
                let row = u * n + k;
                sys[(row, k)] += a[(perm[u], perm[k])];
                sys[(row, u)] -= a[(u, k)];
            }
        }
        let svd = sys.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let (idx, smin) = svd
            .singular_values
            .iter()
            .copied()
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if smin > 1e-9 * scale {
            continue;
        }
        let d: Vec<C> = (0..n).map(|k| v_t[(idx, k)].conj()).collect();
        let m0 = d[0].norm();
        if m0 < 1e-12 || d.iter().any(|z| (z.norm() - m0).abs() > 1e-8) {
            continue;
        }
        let phases: Vec<C> = d.iter().map(|z| z / z.norm()).collect();
        let m = MonomialMatrix::new(perm, phases).unwrap();
        let mm = m.to_matrix();
        if (&(a * &mm) - &(&mm * a)).max_norm() <= 1e-8 * scale {
            out.push(m);
        }
    }
    out
}

/// Exhaustive search for `(j, c)` with `λ_k = λ_0 + β(jk + c_k n)`, `|c_k| ≤ bound`,
/// fitting `β` by least squares for each candidate.
pub fn brute_force_certificate(eigs: &[f64], bound: i64) -> Option<(f64, i64, Vec<i64>)> {
    let n = eigs.len();
    let ni = n as i64;
    let mu: Vec<f64> = eigs.iter().map(|x| x - eigs[0]).collect();
    let scale = eigs.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
    for j in 1..ni {
        if (1..=j).filter(|d| j % d == 0 && ni % d == 0).max() != Some(1) {
            continue;
        }
        let mut c = vec![-bound; n];
        c[0] = 0;
        loop {
            let m: Vec<f64> = (0..n).map(|k| (j * k as i64 + c[k] * ni) as f64).collect();
            let mm: f64 = m.iter().map(|x| x * x).sum();
            if mm > 0.0 {
                let beta = m.iter().zip(&mu).map(|(a, b)| a * b).sum::<f64>() / mm;
                if beta > 0.0
                    && m.iter()
                        .zip(&mu)
                        .all(|(a, b)| (beta * a - b).abs() <= 1e-8 * scale)
                {
                    return Some((beta, j, c));
                }
            }
            let mut i = 1;
            loop {
                if i == n {
                    break;
                }
                c[i] += 1;
                if c[i] <= bound {
                    break;
                }
                c[i] = -bound;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    None
}
