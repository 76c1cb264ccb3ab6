//! Matrices built from codewords of linear codes over finite fields, and the
//! spectral laws they approach.
//!
//! Pick `p` codewords of a linear code, map each symbol through the additive
//! character of `F_q` and stack the images as rows of a `p × n` matrix `Φ`.
//! The Gram matrix `G = ΦΦ*/n` follows the Marchenko–Pastur law when the dual
//! distance of the code is at least 5, and the centred matrix
//! `G_I = √(n/p)(G − I)` built from distinct codewords follows Wigner's
//! semicircle law under the additional coherence bound `|⟨v,v′⟩| ≤ c√n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: prime fields and the binary extension fields used to build Gold codes.
//! - [`codes`]: Gold, first-order Reed–Muller, even-weight and file-supplied codes,
//!   with dual-distance certificates and coherence reports.
//! - [`rng`] and [`signal`]: reproducible codeword sampling and the character map.
//! - [`spectra`]: Gram matrices, Jacobi eigenvalues, ESD, Kolmogorov–Smirnov distance, trace moments.
//! - [`laws`]: semicircle and Marchenko–Pastur densities, CDFs and moments.
//! - [`paths`]: closed-path combinatorics, double trees and the solution counts `W_γ`.
//! - [`experiment`]: end-to-end runs that write CSV, SVG and JSON artifacts.

pub mod codes;
pub mod error;
pub mod experiment;
pub mod field;
pub mod laws;
pub mod paths;
mod quadrature;
pub mod rng;
pub mod signal;
pub mod spectra;

pub use codes::{code_report, CodeReport, DualDistance, LinearCode};
pub use error::{Error, Result};
pub use laws::LawSpec;
pub use paths::ClosedPath;
pub use rng::SeedContract;
pub use signal::{SampleMode, SignalMatrix};
pub use spectra::{HermitianMatrix, SpectralSummary};
