//! Exact covering numbers and isomorph-free search over uniform intersecting
//! hypergraphs.

pub mod canonical;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod search;
pub mod verify;

pub use canonical::{are_isomorphic, canonical_form, canonical_labeling, dedup, CanonicalForm};
pub use cover::{covering_number, covering_number_oracle, is_cover, CoverCertificate, TauResult};
pub use error::{Error, Result};
pub use hypergraph::{DegreeProfile, Hypergraph, IntersectionProfile, VertexSet};
