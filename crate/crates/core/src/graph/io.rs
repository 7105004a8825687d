//! Line-oriented text format:
//!
//! ```text
//! hgraph 1 <n>
//! # comment
//! <u> <v> <re> <im>      (u <= v; the (v, u) entry is the conjugate)
//! ```

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use super::HermitianGraph;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const MAGIC: &str = "hgraph";
const VERSION: &str = "1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<HermitianGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != MAGIC {
        return Err(parse_err(hline, "expected `hgraph 1 <n>`"));
    }
    if fields[1] != VERSION {
        return Err(parse_err(
            hline,
            format!("unsupported version {}", fields[1]),
        ));
    }
    let n: usize = fields[2]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count {:?}", fields[2])))?;
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be positive"));
    }

    let mut a = ComplexMatrix::zeros(n);
    let mut seen = vec![false; n * n];
    for (lineno, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(parse_err(lineno, "expected `<u> <v> <re> <im>`"));
        }
        let idx = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| parse_err(lineno, format!("bad vertex index {s:?}")))
        };
        let num = |s: &str| -> Result<f64> {
            let x: f64 = s
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad number {s:?}")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(parse_err(lineno, format!("non-finite number {s:?}")))
            }
        };
        let (u, v, re, im) = (idx(f[0])?, idx(f[1])?, num(f[2])?, num(f[3])?);
        if u >= n || v >= n {
            return Err(parse_err(
                lineno,
                format!("vertex out of range for n = {n}"),
            ));
        }
        if u > v {
            return Err(parse_err(lineno, "entries must satisfy u <= v"));
        }
        if u == v && im != 0.0 {
            return Err(parse_err(lineno, "diagonal entry must be real"));
        }
        if seen[u * n + v] {
            return Err(parse_err(lineno, format!("duplicate entry ({u}, {v})")));
        }
        seen[u * n + v] = true;
        let z = Complex64::new(re, im);
        a[(u, v)] = z;
        a[(v, u)] = z.conj();
    }
    HermitianGraph::new(a)
}

/// Serialises the upper triangle; floats carry 17 significant digits.
pub fn write_graph(g: &HermitianGraph) -> String {
    let n = g.n();
    let a = g.adjacency();
    let mut out = format!("{MAGIC} {VERSION} {n}\n");
    for u in 0..n {
        for v in u..n {
            let z = a[(u, v)];
            if z.re != 0.0 || z.im != 0.0 {
                out.push_str(&format!("{u} {v} {:.16e} {:.16e}\n", z.re, z.im));
            }
        }
    }
    out
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<HermitianGraph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph_file(path: impl AsRef<Path>, g: &HermitianGraph) -> Result<()> {
    fs::write(path, write_graph(g))?;
    Ok(())
}
