//! Elliptic curve models, the group law, twists, isomorphism tests, and the
//! two reductions of special genus-one models to Weierstrass form.

pub mod cubic;
pub mod descent;
pub mod longw;
pub mod quartic;
pub mod shortw;

pub use cubic::{cubic_y3_to_weierstrass, CubicMap, CubicReduction, CubicYModel};
pub use longw::{LongW, Transform};
pub use quartic::{quartic_to_weierstrass, QuarticMap, QuarticModel};
pub use shortw::{isomorphic_over_q, ECPoint, ShortW};
