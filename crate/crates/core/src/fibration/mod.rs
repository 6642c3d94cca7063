//! Weak fibrations: pointed paths, lifting pairs, lifts and constructions.

mod constructors;
mod derived;
mod lift;
mod pair;
mod pointed;
mod witness;

pub use constructors::{
    identity_fibration, make_product_fibration, make_wedge_fibration, max_structure_fibration, opposite_fibration,
    product_strict_lifter, pullback_fibration, wedge_spaces, wedge_strict_infeasibility, wedge_strict_lifter,
};
pub use derived::{dominated_lift, reversed_lift, self_domination, transport_lift, Domination};
pub use lift::{epsilon_pair, lift_semistationary, semistationary_pair_from_lifter, strict_from_weak, weak_lift};
pub use pair::{check_lifting_pair, Flavor, LiftFn, LiftingPair};
pub use pointed::{pointed_path_space, split_pointed, window_defect, PointedPath, Window};
pub use witness::{
    certify_lift, certify_projection, certify_strict_face, FibrationWitness, LiftProblem, LiftSolution,
    StrictLifter,
};

#[cfg(test)]
mod tests;
