//! Exact valuation arithmetic and polynomial factorisation over `Q_p`.

pub mod factor;
pub mod hensel;
pub mod modp;
pub mod newton;
pub mod poly;
pub mod valuation;

pub use factor::{
    agree_mod, certify_irreducible, compare_at_precision, factor_over_qp, rational_factorization,
    Certification, CertifiedFactorization, IrreducibilityWitness, PAdicContext, PadicFactor,
    PolyMatch, DEFAULT_PRECISION,
};
pub use hensel::{hensel_lift, IntPoly};
pub use modp::FpPoly;
pub use newton::{
    is_contractive_by_coefficients, is_contractive_poly, newton_polygon, NewtonPolygon,
    NewtonSegment,
};
pub use poly::{PAdicPoly, RatPoly};
pub use valuation::{is_prime, valuation, RationalScalar, Valuation};
