//! Fibre transport, equivalences of pointed-path spaces, and fibre homotopy
//! equivalences obtained from directed homotopy equivalences.

mod bs;
mod cylinder;
mod fhe;
mod fiber;
mod inverse;
mod pack;

pub use bs::{bs_spaces_equivalence, epsilon_spaces_equivalence, PathSpaceEquivalence};
pub use cylinder::{cylinder_retraction, CylinderRetraction};
pub use fhe::{dhe_to_fhe, shrinkable_check};
pub use fiber::{fiber_space, fiber_transport, FiberSpace, FiberTransport};
pub use inverse::{improve_inverse, straighten, vertical_inverse, ImprovedInverse, Straightening, DEFAULT_MAX_DEPTH};
pub use pack::{certify_pack, EquivalencePack};
