//! Exact computation of the dimension of the Hilbert space of geometric
//! quantization of N-vortex moduli spaces on genus-g Riemann surfaces.
//!
//! The moduli space of N vortices on a closed surface Σ_g is the
//! symmetric product Sym^N(Σ_g), a compact Kähler manifold of complex
//! dimension N. When the surface area is A = 4πk with integral k, the
//! quantization carries a holomorphic line bundle L with
//! c₁(L) = (k−N)η + σ₁ + … + σ_g, and for k > max(N, g−1) the dimension
//! of the quantum Hilbert space is the holomorphic Euler characteristic
//! χ(L) = C(k, N).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals
//! and no floating point appears anywhere on the computation path. Two
//! independent routes are always available — the characteristic-class
//! evaluation in the reduced cohomology ring ([`hrr::euler_characteristic`])
//! and the closed-form binomial ([`hrr::closed_form_dimension`]) — and the
//! top-level query cross-checks them. A brute-force tensor-ring oracle
//! ([`oracle`]) pins down the ring's integration rule at small parameters.
//!
//! Grid sweeps and the oracle's pair verification run on rayon when the
//! `parallel` feature (default) is enabled; `*_seq` variants provide the
//! sequential fallback and the benchmark baseline.

pub mod classes;
pub mod error;
pub mod hrr;
pub mod oracle;
pub mod ring;
pub mod series;
pub mod sweep;

pub use classes::{
    canonical_class, kahler_class, quantum_line_class, sum_identity_check, tangent_chern,
    ClassRole, CohomologyClass, ModuliParams,
};
pub use error::{Error, Result};
pub use hrr::{
    closed_form_dimension, euler_characteristic, euler_characteristic_bundle,
    residue_coefficient, vortex_dimension, vortex_dimension_via, DimensionReport, Method,
};
pub use oracle::{
    lift, oracle_integrate, verify_reduced_ring, verify_reduced_ring_seq, TensorElement,
    VerificationReport,
};
pub use ring::{Monomial, RingElement, RingParams};
pub use series::TruncatedSeries;
pub use sweep::{grid_points, table_rows, table_rows_seq, TableRow, DEFAULT_GRID_CAP};
