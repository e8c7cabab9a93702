//! Decision procedures on top of the ring engine: simplicity of rank-one
//! generalized Weyl algebras, bounded subalgebra membership in A₀, and the
//! Class 1/2/3 report on a window.

mod classify;
mod membership;
mod simplicity;

pub use classify::{classify, ClassReport, ClassVerdict};
pub use membership::{coeff_degree, subalgebra_member, BoundedSpan, Certificate, Membership, MembershipVerdict};
pub use simplicity::{
    gwa_simplicity, simple_mult, simple_shift, simple_shift_by, Simplicity, SimplicityVerdict, SimplicityWitness,
};
