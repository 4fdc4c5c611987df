//! Finite fields, projective planes, designs and the named catalog.

pub mod catalog;
pub mod designs;
pub mod field;
pub mod plane;

pub use catalog::{builtin_corpus, catalog, catalog_names, CatalogEntry, Expected, Provenance};
pub use designs::{
    ag23_dual, ag23_pbd, ag23_pbd_cover, complete_subsets, cross_grid, fano, fano_complement,
    hares_h1, kummer, paley_biplane, tetrahedron, three_hares,
};
pub use field::FiniteField;
pub use plane::{complete_to_plane, oval_lines, projective_plane, ProjectivePlane};
