//! Integer helpers and a bounded integer-relation detector.
//!
//! A relation is a nonzero integer vector `a` with `|Σ a_k x_k| ≤ tol`. The
//! detector LLL-reduces the lattice spanned by `(e_k, x_k / tol)` and keeps
//! any reduced vector whose integer part meets the bounds. Failure to find a
//! relation is evidence of rational independence, never proof.

/// Non-negative greatest common divisor.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `j` modulo `n` in `[0, n)`, if `gcd(j, n) = 1`.
pub fn modular_inverse(j: i64, n: i64) -> Option<i64> {
    assert!(n >= 1, "modulus must be positive");
    let (mut r0, mut r1) = (n as i128, (j as i128).rem_euclid(n as i128));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1)
        .then(|| s0.rem_euclid(n as i128) as i64)
        .or_else(|| (n == 1).then_some(0))
}

const LOVASZ: f64 = 0.75;
const EXHAUSTIVE_BOUND: i64 = 50;
const EXHAUSTIVE_MAX_DIM: usize = 3;

/// Searches for a nonzero integer vector `a` with `|a_k| ≤ coeff_bound` and
/// `|Σ a_k x_k| ≤ tol`. The first nonzero coefficient of a returned relation is positive.
pub fn integer_relation(xs: &[f64], coeff_bound: i64, tol: f64) -> Option<Vec<i64>> {
    let m = xs.len();
    if m == 0 || coeff_bound < 1 || tol.is_nan() || tol <= 0.0 || xs.iter().any(|x| !x.is_finite())
    {
        return None;
    }
    let accept = |a: &[i64]| -> bool {
        a.iter().any(|&c| c != 0)
            && a.iter().all(|&c| c.abs() <= coeff_bound)
            && relation_residual(xs, a) <= tol
    };

    let mut best: Option<Vec<i64>> = lll_candidates(xs, tol)
        .into_iter()
        .filter(|a| accept(a))
        .min_by_key(|a| a.iter().map(|c| c.abs()).sum::<i64>());

    if best.is_none() && m <= EXHAUSTIVE_MAX_DIM {
        best = exhaustive(xs, EXHAUSTIVE_BOUND.min(coeff_bound), tol);
    }
    best.map(normalize_sign)
}

pub fn relation_residual(xs: &[f64], a: &[i64]) -> f64 {
    xs.iter()
        .zip(a)
        .map(|(x, &c)| c as f64 * x)
        .sum::<f64>()
        .abs()
}

fn normalize_sign(mut a: Vec<i64>) -> Vec<i64> {
    if a.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        a.iter_mut().for_each(|c| *c = -*c);
    }
    a
}

/// Integer parts of the LLL-reduced basis of `(e_k, x_k / tol)`.
fn lll_candidates(xs: &[f64], tol: f64) -> Vec<Vec<i64>> {
    let m = xs.len();
    let scale = 1.0 / tol;
    // Exact integer coefficients; the float embedding is recomputed from them.
    let mut coeffs: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();
    let embed = |c: &[i128]| -> Vec<f64> {
        let mut v: Vec<f64> = c.iter().map(|&x| x as f64).collect();
        v.push(scale * c.iter().zip(xs).map(|(&a, x)| a as f64 * x).sum::<f64>());
        v
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let gram_schmidt = |basis: &[Vec<f64>]| -> (Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<f64>) {
        let k = basis.len();
        let mut star: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut mu = vec![vec![0.0; k]; k];
        let mut norms = vec![0.0; k];
        for i in 0..k {
            let mut v = basis[i].clone();
            for j in 0..i {
                mu[i][j] = if norms[j] > 0.0 {
                    dot(&basis[i], &star[j]) / norms[j]
                } else {
                    0.0
                };
                for (vi, sj) in v.iter_mut().zip(&star[j]) {
                    *vi -= mu[i][j] * sj;
                }
            }
            norms[i] = dot(&v, &v);
            star.push(v);
        }
        (star, mu, norms)
    };

    let mut k = 1;
    let mut iterations = 0;
    while k < m && iterations < 10_000 {
        iterations += 1;
        // Size-reduce b_k against b_{k-1}, ..., b_0.
        for j in (0..k).rev() {
            let basis: Vec<Vec<f64>> = coeffs.iter().map(|c| embed(c)).collect();
            let (_, mu, _) = gram_schmidt(&basis);
            let q = mu[k][j].round();
            if q != 0.0 && q.abs() < 1e30 {
                let q = q as i128;
                let bj = coeffs[j].clone();
                for (ck, cj) in coeffs[k].iter_mut().zip(&bj) {
                    *ck -= q * cj;
                }
            }
        }
        let basis: Vec<Vec<f64>> = coeffs.iter().map(|c| embed(c)).collect();
        let (_, mu, norms) = gram_schmidt(&basis);
        if norms[k] >= (LOVASZ - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            coeffs.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    coeffs
        .into_iter()
        .filter(|c| c.iter().all(|&x| x.abs() <= i64::MAX as i128))
        .map(|c| c.into_iter().map(|x| x as i64).collect())
        .collect()
}

fn exhaustive(xs: &[f64], bound: i64, tol: f64) -> Option<Vec<i64>> {
    let m = xs.len();
    let mut a = vec![-bound; m];
    let mut best: Option<(i64, Vec<i64>)> = None;
    loop {
        if a.iter().any(|&c| c != 0) && relation_residual(xs, &a) <= tol {
            let weight: i64 = a.iter().map(|c| c.abs()).sum();
            if best.as_ref().is_none_or(|(w, _)| weight < *w) {
                best = Some((weight, a.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return best.map(|(_, v)| v);
            }
            a[i] += 1;
            if a[i] <= bound {
                break;
            }
            a[i] = -bound;
            i += 1;
        }
    }
}

/// Outcome of screening a set of reals for rational relations.
#[derive(Debug, Clone, PartialEq)]
pub enum IndependenceVerdict {
    /// No relation within the bounds (evidence only).
    LikelyIndependent,
    FoundRelation(Vec<i64>),
}

#[derive(Debug, Clone)]
pub struct IndependenceReport {
    /// Distinct nonzero values that were screened.
    pub values: Vec<f64>,
    pub verdict: IndependenceVerdict,
}

pub const SCREEN_COEFF_BOUND: i64 = 10_000;

/// Screens eigenvalues (deduplicated within `tol`, zeros removed) for an integer relation.
pub fn independence_screen(eigs: &[f64], tol: f64) -> IndependenceReport {
    let mut values: Vec<f64> = Vec::new();
    for &x in eigs {
        if x.abs() > tol && !values.iter().any(|v| (v - x).abs() <= tol) {
            values.push(x);
        }
    }
    let verdict = match integer_relation(&values, SCREEN_COEFF_BOUND, tol) {
        Some(a) => IndependenceVerdict::FoundRelation(a),
        None => IndependenceVerdict::LikelyIndependent,
    };
    IndependenceReport { values, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(0, 0), 0);
    }

    #[test]
    fn inverses() {
        assert_eq!(modular_inverse(1, 3), Some(1));
        assert_eq!(modular_inverse(2, 4), None);
        assert_eq!(modular_inverse(3, 7), Some(5));
        assert_eq!(modular_inverse(-1, 5), Some(4));
        assert_eq!(modular_inverse(0, 1), Some(0));
        for n in 2..30i64 {
            for j in 0..n {
                match modular_inverse(j, n) {
                    Some(m) => assert_eq!((j * m).rem_euclid(n), 1),
                    None => assert_ne!(gcd(j, n), 1),
                }
            }
        }
    }

    #[test]
    fn equal_values_relation() {
        let s = (PI / 3.0).sin();
        let t = (2.0 * PI / 3.0).sin();
        assert_eq!(integer_relation(&[s, t], 10_000, 1e-10), Some(vec![1, -1]));
    }

    #[test]
    fn constructed_relation() {
        let r = 2f64.sqrt();
        assert_eq!(
            integer_relation(&[1.0, r, 1.0 + r], 10_000, 1e-10),
            Some(vec![1, 1, -1])
        );
    }

    #[test]
    fn heptagon_sines_have_no_small_relation() {
        let xs: Vec<f64> = (1..=3).map(|k| (2.0 * PI * k as f64 / 7.0).sin()).collect();
        assert_eq!(integer_relation(&xs, 10_000, 1e-10), None);
    }

    #[test]
    fn larger_relation_found_by_reduction() {
        let xs = [
            1.0,
            2f64.sqrt(),
            3f64.sqrt(),
            17.0 * 2f64.sqrt() - 23.0 * 3f64.sqrt() + 5.0,
        ];
        let a = integer_relation(&xs, 10_000, 1e-9).expect("relation");
        assert!(relation_residual(&xs, &a) <= 1e-9);
        assert!(a.iter().any(|&c| c != 0));
    }

    #[test]
    fn screen_examples() {
        let c5: Vec<f64> = (1..=2)
            .map(|k| 2.0 * (2.0 * PI * k as f64 / 5.0).sin())
            .collect();
        assert_eq!(
            independence_screen(&c5, 1e-10).verdict,
            IndependenceVerdict::LikelyIndependent
        );

        let c6: Vec<f64> = (0..6)
            .map(|k| 2.0 * (2.0 * PI * k as f64 / 6.0).sin())
            .collect();
        assert!(matches!(
            independence_screen(&c6, 1e-10).verdict,
            IndependenceVerdict::FoundRelation(_)
        ));

        let e = std::f64::consts::E;
        let h2 = [1.0, e, e * e, e * e * e];
        assert_eq!(
            independence_screen(&h2, 1e-10).verdict,
            IndependenceVerdict::LikelyIndependent
        );
    }
}
