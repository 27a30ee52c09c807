//! Exact word-problem oracles for abelian HNN extensions `⟨Z^d, t : t⁻¹λ(a)t = μ(a)⟩`,
//! their metabelian limit along the kernel filtration of `a ↦ λ(a), t ↦ t`,
//! Cayley-ball comparison in the space of marked groups, and certified upper
//! bounds on the displacement constant `α(G, S)`.

pub mod algebra;
pub mod cayley;
pub mod error;
pub mod growth;
pub mod hnn;
pub mod limit;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use oracle::{CanonicalKey, MarkedGroup};
