//! Connected components of spaces of planar curves whose curvature is confined to an
//! interval, together with the constructive deformations used to decide them.
//!
//! Curves are arc-length parametrized with piecewise-constant curvature
//! ([`curve::PiecewiseCurve`]); frames ([`geom::Frame`]) carry position and heading.

pub mod components;
pub mod curve;
pub mod deform;
pub mod error;
pub mod exec;
pub mod geom;
pub mod io;
pub mod normalize;
pub mod regions;
pub mod verify;

pub use error::{Error, Result};
