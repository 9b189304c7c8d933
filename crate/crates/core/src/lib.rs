//! Exact enumeration of sum-free sets, Fourier analysis over `Z/pZ`, and the
//! granularization machinery used to cover sum-free sets by few structured
//! ones.
//!
//! * [`sets`]: bit-vector integer sets, additive triples, popular differences;
//! * [`spectral`]: transforms, convolution and the smoothing kernel on `Z/pZ`;
//! * [`granular`]: progression partitions, good lengths and granularizations;
//! * [`census`]: naive and branch-and-bound counting, census and ratio series;
//! * [`suites`]: seeded invariant suites shared by the CLI and the tests.

pub mod census;
pub mod error;
pub mod granular;
pub mod report;
pub mod sampling;
pub mod setfile;
pub mod sets;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use sets::{Ambient, IntSet};
pub use spectral::PrimeContext;
