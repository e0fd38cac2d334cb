//! Energy-basis decoherence of composite quantum systems.
//!
//! The crate evolves density matrices under
//!
//! ```text
//! dρ/dt = −i[H, ρ] − σ Σ_b [H_b, [H_b, ρ]] + Σ_k γ_k D[L_k](ρ)
//! ```
//!
//! where every Hamiltonian is written as an angular frequency (`H/ħ`), each
//! block `H_b` is the free Hamiltonian of one group of subsystems that
//! decoheres jointly, and `D` is the amplitude-damping dissipator. A single
//! block containing every subsystem is *global* decoherence; one block per
//! subsystem is *local* decoherence.
//!
//! On top of the solver sit simulations of Ramsey, Michelson and GHZ
//! interference ([`interferometry`]) and closed-form experiment design
//! calculators ([`sensitivity`]).
//!
//! The accompanying guide in `book/` walks through each piece; its code
//! listings are compiled as doc-tests of this crate.

pub mod constants;
pub mod engine;
mod error;
pub mod interferometry;
pub mod quantum;
pub mod sensitivity;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quantum-core.md")]
    mod quantum_core {}
    #[doc = include_str!("../../../book/src/master-equation.md")]
    mod master_equation {}
    #[doc = include_str!("../../../book/src/global-vs-local.md")]
    mod global_vs_local {}
    #[doc = include_str!("../../../book/src/ramsey.md")]
    mod ramsey {}
    #[doc = include_str!("../../../book/src/michelson.md")]
    mod michelson {}
    #[doc = include_str!("../../../book/src/ghz.md")]
    mod ghz {}
    #[doc = include_str!("../../../book/src/sensitivity.md")]
    mod sensitivity {}
}
