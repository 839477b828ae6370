//! Computational companion to the zero-one law for spectral gaps of pairs in
//! SU(2).
//!
//! * [`su2`]: group arithmetic, Haar sampling, free-group words.
//! * [`geometry`]: Fricke coordinates `(tr a, tr [a,b])`, trace triples, the
//!   plane map induced by `(a, b) -> (a^2, b)`, and explicit sections.
//! * [`dynamics`]: escape of `t -> t^2 - 2`, fiber images, word-map orbits.
//! * [`spectral`]: truncated per-level spectral gaps and displacement bounds.
//! * [`measure`]: Monte Carlo pushforward histograms and fiber sampling.
//! * [`cli`]: the `su2gap` command line.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod output;
pub mod pairspec;
pub mod spectral;
pub mod su2;

pub use error::{Error, Result};
pub use geometry::{FrickeCoord, TraceTriple};
pub use su2::{Pair, SU2Element, Word};
