use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;

use hermwalk::transfer::write_scan_csv;
use hermwalk::{fidelity_scan, hermitian_eigendecomposition, pgst_search, pst_check_at_time};

use crate::{Failure, Mode};

pub struct Args {
    pub path: PathBuf,
    pub a: usize,
    pub b: usize,
    pub mode: Mode,
    pub t: Option<f64>,
    pub target: f64,
    pub tmax: f64,
    pub samples: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<(), Failure> {
    let g = crate::load_graph(&args.path)?;
    let n = g.n();
    for v in [args.a, args.b] {
        if v >= n {
            return Err(Failure::usage(format!(
                "vertex {v} out of range for n = {n}"
            )));
        }
    }
    let sd = hermitian_eigendecomposition(g.adjacency())?;
    let header = format!(
        "hermwalk transfer\nfile: {}\nsource: {}\ntarget: {}",
        args.path.display(),
        args.a,
        args.b
    );
    match args.mode {
        Mode::Scan => {
            let rows = fidelity_scan(&sd, args.a, args.b, args.tmax, args.samples)?;
            match &args.out {
                Some(p) => {
                    write_scan_csv(&rows, BufWriter::new(File::create(p)?))?;
                    println!(
                        "{header}\nmode: scan\nparameters: tmax={:e} samples={}",
                        args.tmax, args.samples
                    );
                    println!("rows: {}\ncsv: {}", rows.len(), p.display());
                }
                None => write_scan_csv(&rows, io::stdout().lock())?,
            }
        }
        Mode::Pgst => {
            let r = pgst_search(&sd, args.a, args.b, args.target, args.tmax)?;
            println!(
                "{header}\nmode: pgst\nparameters: target={} tmax={:e}",
                args.target, args.tmax
            );
            println!(
                "time: {:.16e}\nfidelity: {:.16e}\nkind: {}",
                r.time, r.fidelity, r.kind
            );
        }
        Mode::PstAt => {
            let t = args
                .t
                .ok_or_else(|| Failure::usage("pst-at requires --t"))?;
            if !t.is_finite() {
                return Err(Failure::usage("--t must be finite"));
            }
            let r = pst_check_at_time(&sd, args.a, args.b, t, args.tol)?;
            println!(
                "{header}\nmode: pst-at\nparameters: t={t:.16e} tol={:e}",
                args.tol
            );
            println!("fidelity: {:.16e}\nkind: {}", r.fidelity, r.kind);
            if let Some(res) = r.monomial_residual {
                println!("monomial_residual: {res:.6e}");
            }
            if let Some(m) = &r.monomial {
                println!("monomial: {m}");
            }
        }
    }
    Ok(())
}
