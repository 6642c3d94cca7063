//! Directed spaces, directed homotopies and weak fibrations.
//!
//! Every object is an evaluable closure; every contract is checked on a
//! sampling grid and reported as a [`Certificate`]. The crate is `no_std`
//! and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certificate;
pub mod error;
pub mod fibration;
pub mod grid;
pub mod homotopy;
pub mod map;
pub mod path;
pub mod point;
pub mod probe;
pub mod space;
pub mod transport;

mod math;

pub use certificate::{Certificate, Verdict, Witness};
pub use error::Error;
pub use grid::{CheckConfig, SampleGrid, NONLINEAR_TOLERANCE, PL_TOLERANCE};
pub use map::{certify_dmap, face_map, DMap};
pub use path::{certify_directed_path, DPath, IntervalMap};
pub use point::Point;
pub use probe::ProbeSet;
pub use space::{Carrier, DSpace, StandardKind, StructureTag};

/// Endpoint selector: `Zero` is the source end of the interval, `One` the target end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alpha {
    Zero,
    One,
}

impl Alpha {
    pub fn value(self) -> f64 {
        match self {
            Alpha::Zero => 0.0,
            Alpha::One => 1.0,
        }
    }

    pub fn flip(self) -> Alpha {
        match self {
            Alpha::Zero => Alpha::One,
            Alpha::One => Alpha::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Alpha::Zero => 0,
            Alpha::One => 1,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
