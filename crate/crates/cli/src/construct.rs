use std::path::Path;

use hermwalk::{
    cartesian_product, circulant, construct_cp, construct_k2, construct_k4, hadamard_graph,
    hermitian_eigendecomposition, write_graph_file, Complex64, HermitianGraph, PauliKind,
};

use crate::{Failure, Family};

fn parse_usize(s: &str, what: &str) -> Result<usize, Failure> {
    s.parse().map_err(|_| {
        Failure::usage(format!(
            "{what}: expected a non-negative integer, got {s:?}"
        ))
    })
}

fn parse_f64(s: &str) -> Result<f64, Failure> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Failure::usage(format!("expected a finite number, got {s:?}")))
}

/// `re` or `re:im`.
fn parse_weight(s: &str) -> Result<Complex64, Failure> {
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

fn expect_params(params: &[String], count: usize, family: &str) -> Result<(), Failure> {
    if params.len() == count {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "{family} takes {count} parameter(s), got {}",
            params.len()
        )))
    }
}

/// A cartesian operand: an existing file, or a family keyword.
fn operand(s: &str) -> Result<HermitianGraph, Failure> {
    if Path::new(s).is_file() {
        return crate::load_graph(Path::new(s));
    }
    match s {
        "k2x" => Ok(construct_k2(PauliKind::X)),
        "k2y" => Ok(construct_k2(PauliKind::Y)),
        "k4" => Ok(construct_k4()),
        _ => match s.strip_prefix("cp") {
            Some(p) => Ok(construct_cp(parse_usize(p, "cp order")?)?),
            None => Err(Failure::usage(format!(
                "{s:?} is neither a file nor a known family"
            ))),
        },
    }
}

pub fn build(
    family: Family,
    params: &[String],
    alphas: Option<&str>,
) -> Result<HermitianGraph, Failure> {
    if alphas.is_some() && !matches!(family, Family::Hadamard) {
        return Err(Failure::usage(
            "--alphas applies only to the hadamard family",
        ));
    }
    let g = match family {
        Family::Cp => {
            expect_params(params, 1, "cp")?;
            construct_cp(parse_usize(&params[0], "cp order")?)?
        }
        Family::K4 => {
            expect_params(params, 0, "k4")?;
            construct_k4()
        }
        Family::K2x => {
            expect_params(params, 0, "k2x")?;
            construct_k2(PauliKind::X)
        }
        Family::K2y => {
            expect_params(params, 0, "k2y")?;
            construct_k2(PauliKind::Y)
        }
        Family::Circulant => {
            if params.is_empty() {
                return Err(Failure::usage("circulant needs at least one weight"));
            }
            let w: Vec<Complex64> = params
                .iter()
                .map(|s| parse_weight(s))
                .collect::<Result<_, _>>()?;
            circulant(&w)?
        }
        Family::Hadamard => {
            expect_params(params, 1, "hadamard")?;
            let n = parse_usize(&params[0], "hadamard order")?;
            let a: Option<Vec<f64>> = alphas
                .map(|s| s.split(',').map(parse_f64).collect::<Result<_, _>>())
                .transpose()?;
            hadamard_graph(n, a.as_deref())?
        }
        Family::Cartesian => {
            expect_params(params, 2, "cartesian")?;
            cartesian_product(&operand(&params[0])?, &operand(&params[1])?)
        }
    };
    Ok(g)
}

pub fn run(
    family: Family,
    params: &[String],
    alphas: Option<&str>,
    out: &Path,
) -> Result<(), Failure> {
    let g = build(family, params, alphas)?;
    write_graph_file(out, &g)?;
    let sd = hermitian_eigendecomposition(g.adjacency())?;
    let (lo, hi) = (sd.eigenvalues[0], sd.eigenvalues[g.n() - 1]);
    println!("wrote {}", out.display());
    println!("n: {}", g.n());
    println!(
        "spectrum: min {lo:.16e} max {hi:.16e} radius {:.16e}",
        sd.spectral_radius()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("0:-1").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_weight("2.5").unwrap(), Complex64::new(2.5, 0.0));
        assert!(parse_weight("x").is_err());
        assert!(parse_weight("1:nan").is_err());
    }

    #[test]
    fn keyword_operands() {
        assert_eq!(operand("cp5").unwrap().n(), 5);
        assert_eq!(operand("k4").unwrap().n(), 4);
        assert!(operand("nonsense").is_err());
        assert!(operand("cp2").is_err());
    }

    #[test]
    fn parameter_counts() {
        assert!(build(Family::Cp, &[], None).is_err());
        assert!(build(Family::K4, &["1".into()], None).is_err());
        assert!(build(Family::Cp, &["5".into()], Some("0,1")).is_err());
        let g = build(Family::Hadamard, &["1".into()], Some("0,-1")).unwrap();
        assert_eq!(g.n(), 2);
    }
}
