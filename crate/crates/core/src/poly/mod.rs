//! Polynomial carriers for the degree-zero coefficient ring, their affine
//! automorphisms, and the elimination tools (gcd, resultants, rational
//! roots) used by the analysis layer.

mod auto;
mod laurent;
mod multi;
mod resultant;
mod roots;
mod uni;

use std::fmt;

pub use auto::{auto_power, AffineAuto};
pub use laurent::LaurentPoly;
pub use multi::MultiPoly;
pub use resultant::{resultant, resultant_aux, subresultant_prs, sylvester_determinant, BiPoly, Domain};
pub use roots::{rational_roots, square_free_part};
pub use uni::{poly_gcd, UniPoly};

use crate::scalar::Scalar;

/// Writes `c₁*m₁ ± c₂*m₂ …` with signs pulled out and unit coefficients
/// omitted. Monomials are pre-rendered; an empty monomial means a constant.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (Scalar, String)>) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = if neg { -&c } else { c };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", abs.factor_text())?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{mono}", abs.factor_text())?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
