//! Exact computation in crystalline graded rings A = ⊕ A₀·u_g: twisted
//! multiplication, identity verification, the generalized Weyl algebra
//! catalog, localization, and simplicity / membership decision procedures.

pub mod analysis;
pub mod coeff;
pub mod crystal;
pub mod doc;
pub mod error;
pub mod expr;
pub mod group;
pub mod gwa;
pub mod poly;
pub mod scalar;

pub use coeff::{Carrier, Coeff, CoeffDomain};
pub use crystal::{Cocycle, CrystalRing, RingElement, SigmaMap};
pub use error::{Error, Result};
pub use group::{GradingGroup, GroupElt};
pub use gwa::{example, ExampleSpec, GWAData};
pub use scalar::{FieldKind, Scalar};
