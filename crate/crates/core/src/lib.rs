//! Non-triviality certificates for alternating links.
//!
//! A diagram is turned into the augmented Dehn presentation (one generator per
//! face, one length-4 relator per crossing). For alternating diagrams that
//! presentation satisfies C(4)-T(4), so geodesic reduction of words decides
//! the word problem; a nonempty geodesic longitude proves the link nontrivial.

pub mod certificate;
pub mod diagram;
pub mod error;
pub mod faces;
pub mod longitude;
pub mod oracle;
pub mod presentation;
pub mod solver;
pub mod word;

pub use certificate::{
    certify, certify_with, Certificate, CertifyOptions, Checks, ComponentRecord, Evidence, FactorRecord, Verdict,
};
pub use diagram::{parse_diagram, parse_pd, Component, Crossing, Diagram, DiagramFile, EdgeId, Passage, Sign, Slot};
pub use error::{Error, Result};
pub use faces::{checkerboard, trace_faces, Colour, Colouring, Face, FaceId, FaceSet, Parity, Side};
pub use longitude::{
    double_word, longitude_on_side, longitude_word, meridian_word, normal_form, LongitudeRep, PushOff,
};
pub use oracle::{
    bounded_identity_search, finite_quotient_witness, satisfying_assignments, Permutation, QuotientWitness,
    SearchOutcome,
};
pub use presentation::{
    corner_relation_matrix, Abelianization, Piece, Presentation, PresentationStats, Relator, SmallCancellation,
};
pub use solver::{
    find_chain, free_reduce, geodesic_reduce, geodesic_reduce_traced, is_geodesic, is_identity, parity_changes,
    words_equal, ChainMatch,
};
pub use word::{Letter, Word};
