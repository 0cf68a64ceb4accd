//! Exact reconstruction of a commutative Hopf algebra from the restriction
//! functor `Rep(K) → Rep(H)` of a finite group with a retraction `K → H`,
//! and recovery of `ker(K → H)` as its group of points. All arithmetic is
//! over a prime field 𝔽_p with p ∤ |K|.

pub mod catalog;
pub mod coend;
pub mod error;
pub mod exactla;
pub mod groups;
pub mod hopf;
pub mod pipeline;
pub mod reptheory;
pub mod seed;
pub mod spectrum;

pub use error::{Error, Result};
