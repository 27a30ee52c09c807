//! The HNN extension `⟨Z^d, t : t⁻¹λ(a)t = μ(a)⟩` as an exact word-problem
//! oracle, together with the endomorphism `t ↦ t, a ↦ λ(a)` and its kernel
//! filtration.

mod britton;
mod endo;
mod freeness;
mod group;

pub use britton::BrittonForm;
pub use freeness::{outside_union_search, shell_descending, FreenessCertificate};
pub use group::{validate_conditions, ConditionReport, HnnGroup};
