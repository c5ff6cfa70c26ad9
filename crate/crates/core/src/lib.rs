//! Partition extenders, Cohen–Macaulay extenders and shelling certificates
//! for finite simplicial complexes.

pub mod complex;
pub mod counts;
pub mod error;
pub mod exec;
pub mod extender;
pub mod face;
pub mod homology;
pub mod linalg;
pub mod partition;
pub mod search;

pub use complex::{
    glue, glue_mapped, relative_family, FaceFamily, FacePoset, Gluing, SimplicialComplex,
};
pub use counts::{
    f_to_h, f_triangle, f_vector, h_to_f, h_triangle, h_vector, CountTriangle, CountVector,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use extender::{
    extender_for_complex, h_decomposition, nonpure_extender_for_complex, partition_extender,
    prepartition_extender, prepartition_h_profile, size_estimate, ExtenderResult, MarkedComplex,
};
pub use face::{Face, Vertex};
pub use homology::{
    cm_extender, depth, is_cohen_macaulay, is_relative_cm, reduced_betti, relative_betti,
    CmExtenderOutcome, FieldSpec, HomologyProfile,
};
pub use partition::{
    h_from_partitioning, is_h_compatible, is_layer_compatible, verify_partitioning, Interval,
    IntervalPartition, PartitionReport, Violation,
};
pub use search::{
    check_shelling_order, find_partitioning, find_shelling, Partitionability, SearchLimits,
    Shellability,
};
