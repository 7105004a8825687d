//! Continuous-time quantum walks `U(t) = exp(−itA)` on Hermitian graphs.
//!
//! The crate covers dense spectral tools ([`linalg`]), graph construction and
//! file I/O ([`graph`]), spectral necessary conditions ([`spectra`]), transfer
//! searches ([`transfer`]), certification of universal perfect state transfer
//! on circulant-like graphs ([`circulant_pst`]), switching automorphism groups
//! ([`swaut`]) and integer-relation screening ([`numbertheory`]).
//!
//! ```
//! use hermwalk::{construct_cp, hermitian_eigendecomposition, fidelity};
//! use std::f64::consts::PI;
//!
//! let g = construct_cp(3).unwrap();
//! let sd = hermitian_eigendecomposition(g.adjacency()).unwrap();
//! let t = 4.0 * PI / (3.0 * 3f64.sqrt());
//! assert!(fidelity(&sd, 0, 2, t).unwrap() > 1.0 - 1e-12);
//! ```

pub mod circulant_pst;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod numbertheory;
pub mod spectra;
pub mod swaut;
pub mod transfer;

pub use circulant_pst::{
    pst_spectral_certificate, pst_time, rational_reconstruct, upst_certify, PstCertificate,
    UpstReport,
};
pub use error::{Error, NoCertificateReason, Result};
pub use graph::{
    apply_switching, cartesian_product, circulant, construct_cp, construct_k2, construct_k4,
    from_entries, hadamard_graph, parse_graph, read_graph_file, write_graph, write_graph_file,
    HermitianGraph, PauliKind,
};
pub use linalg::{
    anticommuting_exponential, evolution_operator, hermitian_eigendecomposition, nearest_monomial,
    ComplexMatrix, MonomialProjection, SpectralDecomposition,
};
pub use num_complex::Complex64;
pub use numbertheory::{
    gcd, independence_screen, integer_relation, modular_inverse, IndependenceReport,
    IndependenceVerdict,
};
pub use spectra::{
    circulant_eigenvalues, eigenvalue_ratio_rationality, eigenvalue_simplicity,
    flat_eigenbasis_check, phase_alignment, Flatness, PhaseAlignment, RatioReport, Simplicity,
};
pub use swaut::{
    enumerate_switching_automorphisms, is_switching_isomorphic, structure_report, MonomialMatrix,
    StructureReport, SwitchingGroup,
};
pub use transfer::{
    fidelity, fidelity_scan, kronecker_time_search, periodicity_search, pgst_search,
    pst_check_at_time, KroneckerSolution, KroneckerTarget, TransferKind, TransferReport,
};
