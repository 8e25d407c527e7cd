//! Finite quandles and graph quandles.
//!
//! A quandle on `{0, …, n-1}` is stored as its Cayley table `t[x][y] = s_x(y)`.
//! The crate builds the standard families, computes the transformation groups
//! `Dis ⊆ G⁰ ⊆ Inn ⊆ Aut`, decides the usual properties with witnesses, and
//! moves between simple graphs and their graph quandles.
//!
//! ```
//! use quandle_core::{aknn, to_graph, SimpleGraph, graphs_isomorphic};
//!
//! let q = aknn(2, 4).unwrap();
//! let rec = to_graph(&q).unwrap();
//! assert!(graphs_isomorphic(&rec.graph, &SimpleGraph::johnson(4, 2).unwrap()).unwrap());
//! ```

pub mod analysis;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod graph;
pub mod perm;
pub mod quandle;
mod search;

pub use analysis::{
    automorphism_group, automorphism_group_with_cap, characterize, connected_components, displacement_group,
    flat_connected_census, flat_connected_census_with, g0_group, group_chain, homogeneity, homogeneity_with_cap,
    has_abelian_inner_group, inner_group, is_connected, is_crossed, is_flat, is_homogeneous, is_involutive, is_medial, lifted_automorphisms,
    property_report, property_report_with_cap, to_graph, CensusOrder, CensusSurvivor, Characterization,
    GraphReconstruction, GroupChain, Homogeneity, PropertyReport, DEFAULT_AUT_CAP,
};
pub use constructions::{
    aknn, aknn_elements, aknn_index, axis_quandle, cocycle_extension, dihedral, discrete_torus, from_graph,
    is_cocycle, reflection_oracle, trivial, CocycleTable, CocycleViolation, Orientation, SignedSubset,
};
pub use enumerate::{canonical_table, count_labeled_quandles, enumerate_quandles, enumerate_quandles_with};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{
    find_graph_isomorphism, graph_automorphisms, graph_automorphisms_with_cap, graphs_isomorphic,
    is_vertex_transitive, is_vertex_transitive_with_cap, SimpleGraph, DEFAULT_GRAPH_CAP,
};
pub use perm::{PermGroup, Permutation, DEFAULT_ELEMENT_CAP};
pub use quandle::{
    are_isomorphic, direct_product, find_isomorphism, find_isomorphism_with_budget, is_homomorphism,
    is_subquandle, restrict, verify_axioms, AxiomReport, FiniteQuandle, PointMap, QuandleJson, Violation,
};
pub use search::DEFAULT_NODE_BUDGET;
