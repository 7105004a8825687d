use std::fmt::Write as _;
use std::path::Path;

use hermwalk::numbertheory::IndependenceVerdict;
use hermwalk::spectra::{DEFAULT_FLAT_TOL, DEFAULT_GAP_TOL, DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL};
use hermwalk::swaut::GROUP_TOL;
use hermwalk::{
    eigenvalue_ratio_rationality, eigenvalue_simplicity, enumerate_switching_automorphisms,
    flat_eigenbasis_check, hermitian_eigendecomposition, independence_screen, structure_report,
    upst_certify, Error, HermitianGraph,
};

use crate::Failure;

/// Largest graph for which the switching group is enumerated.
pub const SWAUT_MAX_N: usize = 10;
pub const SCREEN_TOL: f64 = 1e-10;

fn join(xs: impl IntoIterator<Item = String>) -> String {
    xs.into_iter().collect::<Vec<_>>().join(" ")
}

pub fn report(g: &HermitianGraph, source: &str) -> Result<String, Failure> {
    let n = g.n();
    let sd = hermitian_eigendecomposition(g.adjacency())?;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "hermwalk analyze").unwrap();
    writeln!(w, "file: {source}").unwrap();
    writeln!(
        w,
        "parameters: gap_tol={DEFAULT_GAP_TOL:e} flat_tol={DEFAULT_FLAT_TOL:e} max_den={DEFAULT_MAX_DEN} \
         ratio_tol={DEFAULT_RATIO_TOL:e} screen_tol={SCREEN_TOL:e} phase_tol={GROUP_TOL:e} swaut_max_n={SWAUT_MAX_N}"
    )
    .unwrap();
    writeln!(w, "n: {n}").unwrap();
    writeln!(
        w,
        "spectrum: {}",
        join(sd.eigenvalues.iter().map(|x| format!("{x:.16e}")))
    )
    .unwrap();

    let s = eigenvalue_simplicity(&sd, DEFAULT_GAP_TOL);
    writeln!(w, "simple: {} (min_gap {:.6e})", s.simple, s.min_gap).unwrap();
    let f = flat_eigenbasis_check(&sd, DEFAULT_FLAT_TOL);
    writeln!(
        w,
        "flat: {} (max_deviation {:.6e})",
        f.flat, f.max_deviation
    )
    .unwrap();

    match eigenvalue_ratio_rationality(&sd, DEFAULT_MAX_DEN, DEFAULT_RATIO_TOL) {
        Ok(r) => {
            let irrational = r.pairs.iter().filter(|p| p.rational.is_none()).count();
            writeln!(
                w,
                "ratio_rationality: all_rational={} ({} pairs, {irrational} irrational)",
                r.all_rational,
                r.pairs.len()
            )
            .unwrap();
        }
        Err(Error::TraceNotZero(t)) => {
            writeln!(w, "ratio_rationality: skipped (trace {t:.6e} is not zero)").unwrap()
        }
        Err(Error::ZeroSpectrum) => {
            writeln!(w, "ratio_rationality: skipped (zero spectrum)").unwrap()
        }
        Err(e) => return Err(e.into()),
    }

    let screen = independence_screen(&sd.eigenvalues, SCREEN_TOL);
    match &screen.verdict {
        IndependenceVerdict::LikelyIndependent => writeln!(
            w,
            "independence: likely-independent ({} distinct nonzero values)",
            screen.values.len()
        )
        .unwrap(),
        IndependenceVerdict::FoundRelation(a) => writeln!(
            w,
            "independence: found-relation {}",
            join(a.iter().map(|c| c.to_string()))
        )
        .unwrap(),
    }

    if n > SWAUT_MAX_N {
        writeln!(w, "swaut: skipped (n > {SWAUT_MAX_N})").unwrap();
    } else {
        match enumerate_switching_automorphisms(g, GROUP_TOL) {
            Ok(group) => {
                let r = structure_report(&group, n, false);
                writeln!(
                    w,
                    "swaut: order={} abelian={} cyclic={} order_divides_n={} fixed_points={}",
                    r.order, r.abelian, r.cyclic, r.order_divides_n, r.has_fixed_points
                )
                .unwrap();
                for e in &group.elements {
                    writeln!(w, "  element: {e}").unwrap();
                }
            }
            Err(Error::DisconnectedSupport) => {
                writeln!(w, "swaut: skipped (support graph is disconnected)").unwrap()
            }
            Err(e) => return Err(e.into()),
        }
    }

    if n > SWAUT_MAX_N {
        writeln!(w, "upst: skipped (n > {SWAUT_MAX_N})").unwrap();
    } else {
        match upst_certify(g) {
            Ok(r) => {
                let c = &r.certificate;
                writeln!(w, "upst: UniversalPST").unwrap();
                writeln!(w, "  beta: {:.16e}", c.beta).unwrap();
                writeln!(w, "  j: {}", c.j).unwrap();
                writeln!(w, "  c: {}", join(c.c.iter().map(|x| x.to_string()))).unwrap();
                writeln!(w, "  alpha_offset: {:.16e}", c.alpha_offset).unwrap();
                writeln!(w, "  max_residual: {:.16e}", c.max_residual).unwrap();
                writeln!(w, "  time: {:.16e} (m = {})", r.time, r.m).unwrap();
                for s in &r.schedule {
                    writeln!(
                        w,
                        "  transfer: {} -> {} t={:.16e} fidelity={:.16e}",
                        s.source, s.target, s.time, s.fidelity
                    )
                    .unwrap();
                }
            }
            Err(Error::NoCertificate(reason)) => {
                writeln!(w, "upst: NoCertificate ({reason})").unwrap()
            }
            Err(Error::Unsupported(msg)) => writeln!(w, "upst: Unsupported ({msg})").unwrap(),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn run(path: &Path) -> Result<(), Failure> {
    let g = crate::load_graph(path)?;
    print!("{}", report(&g, &path.display().to_string())?);
    Ok(())
}
