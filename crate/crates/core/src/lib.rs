//! Exact computations with subvarieties of Grassmannians: Plücker coordinates,
//! tangent and conormal spaces as homomorphism spaces, higher associated
//! varieties, contact-line varieties and osculating curves.

pub mod associated;
pub mod catalog;
pub mod contact;
pub mod error;
pub mod exact;
pub mod grassmann;
pub mod isoclass;
pub mod osc;
pub mod projvar;
pub mod rng;

pub use associated::{
    associated_conormal, chow_hurwitz_ideal, polar_degree, sample_associated, AssociatedRange,
    AssociatedSample, ChowHurwitz, EliminationRoute, PolarDegree,
};
pub use contact::{verify_contact_theorem, ContactConfig};
pub use error::{Error, Result};
pub use exact::{
    eliminate, groebner, hilbert_dim_degree, local_multiplicity, DenseMatrix, Field,
    GroebnerConfig, Ideal, Monomial, MonomialOrder, MultiPoly, Ring, Scalar, UniPoly,
    DEFAULT_PRIME,
};
pub use grassmann::{
    adapted_basis, perp_dual, perp_dual_hom, pluecker_embed, pluecker_relations,
    stiefel_differential, trace_annihilator, AdaptedBasis, Direction, HomElement, HomSpace,
    SubspaceRep,
};
pub use isoclass::{classify, ClassificationReport, Mode, Verdict};
pub use osc::{dual_curve, osc_tangent_hom, sigma_shift, FamilyClass, GrCurve, ParamCurve, Shift};
pub use projvar::{Parametrization, ProjVariety};
pub use rng::SeedStream;
