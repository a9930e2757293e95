//! Contact Dehn surgery and contact round surgery diagrams on Legendrian
//! links in the standard contact 3-sphere: exact slopes, front-projection
//! invariants, tight structures on thickened tori, dividing sets, the
//! joint-pair correspondence with contact (±1)-surgery, and first homology.

pub mod bridge;
pub mod calculus;
pub mod cli;
pub mod diagram;
pub mod dsl;
pub mod dividing;
pub mod exec;
pub mod front;
pub mod homology;
pub mod slope;
pub mod slopes;

pub use diagram::{
    ContactSurgeryDiagram, LayerVariant, LegendrianComponent, LinkingData, Round1Spec, Round2Spec,
    RoundSurgeryDiagram, TightLayerSpec, Violation,
};
pub use exec::Exec;
pub use homology::H1Class;
pub use slope::{Basis, SlopeError, SlopeQ, TaggedSlope};
