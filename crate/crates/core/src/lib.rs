//! Complex pattern propagation factor of a radar field over terrain.
//!
//! Two field models share one set of inputs:
//!
//! * [`pe`]: a split-step sine-transform parabolic equation marched in range
//!   over piecewise-linear terrain through range-dependent refractivity;
//! * [`fe`]: the flat-earth two-ray model, valid close to the source or at
//!   high elevation angles.
//!
//! Both return amplitude in dB and absolute phase in radians for the same
//! output points. [`pseudo3d`] repeats the PE along a fan of azimuths and
//! [`turbine`] cuts height columns of the complex field around wind
//! turbines. [`io`] reads and writes the text formats.
//!
//! ```
//! use ppf::domain::{OutputWindow, Polarization, SourceSpec};
//! use ppf::scenario::Scenario;
//!
//! let scenario = Scenario::new(
//!     SourceSpec::omni(2800.0, 15.0, Polarization::Horizontal),
//!     OutputWindow {
//!         min_height: 0.0,
//!         max_height: 100.0,
//!         max_range: 2000.0,
//!         n_height_points: 50,
//!         n_range_points: 20,
//!     },
//! );
//! let (_grid, result) = ppf::pe::run_pe(&scenario)?;
//! assert_eq!(result.amplitude_db.len(), 20);
//! assert_eq!(result.phase_rad[0].len(), 50);
//! # Ok::<(), ppf::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domain;
pub mod environment;
pub mod error;
pub mod fe;
pub mod io;
pub mod pe;
pub mod pseudo3d;
pub mod scenario;
pub mod turbine;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/field-models.md")]
    mod field_models {}
    #[doc = include_str!("../../../book/src/volumes.md")]
    mod volumes {}
    #[doc = include_str!("../../../book/src/turbines.md")]
    mod turbines {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
