use thiserror::Error;

use crate::face::Face;
use crate::partition::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("face {0} is not a face of the complex")]
    FaceNotPresent(Face),

    #[error("face {0} is already a member of the family")]
    AlreadyPresent(Face),

    #[error("the smaller complex is not a subcomplex: {0} is missing from the larger one")]
    NotASubcomplex(Face),

    #[error("identified guest face {guest} maps to {image}, which is not a face of the host")]
    InconsistentIdentification { guest: Face, image: Face },

    #[error("vertex map is not injective: guest vertices {0} and {1} share an image")]
    NonInjectiveIdentification(u32, u32),

    #[error("invalid partitioning: {0}")]
    InvalidPartitioning(Box<Violation>),

    #[error("{what} has size {size}, above the search bound {limit} (raise it with {flag})")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
        flag: &'static str,
    },

    #[error("facet order is not a permutation of the maximal faces of the relative complex")]
    NotAPermutation,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("complex is not pure")]
    NotPure,

    #[error("complex is void")]
    VoidComplex,

    #[error("constructed {certificate} certificate was rejected: {violation}")]
    CertificateRejected {
        certificate: &'static str,
        violation: String,
    },

    #[error("invalid extender result: {0}")]
    InvalidResult(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("depth from link homology ({homological}) disagrees with the skeleton criterion ({skeleton})")]
    DepthMismatch { homological: i32, skeleton: i32 },

    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidField(u32),
}
