//! Néron-Tate heights over Q: minimal models, local heights, the height
//! pairing, Gram determinants and independence certificates.

pub mod archimedean;
pub mod engine;
pub mod local;
pub mod minimal;
pub mod real;

pub use engine::{
    canonical_height, determinant, find_relation, gram_determinant, independence_certificate,
    naive_half_height, neron_tate_pairing, torsion_order, GramMatrix, HeightContext,
    Normalization, RankCertificate, Verdict, DEFAULT_PREC_BITS,
};
pub use minimal::{minimal_model, MinimalModelData};
pub use real::ApproxReal;
