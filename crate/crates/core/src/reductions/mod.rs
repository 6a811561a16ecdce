//! Hardness constructions: CNF instances, the gadget catalog with its
//! contracts, and the two graph constructions built from them.

pub mod cnf;
pub mod construct;
pub mod gadgets;

pub use cnf::{parse_dimacs, to_dimacs, validate_instance, CnfError, CnfInstance, Flavor, Literal, Validation};
pub use construct::{
    assignment_to_orientation, build, build_g, build_h, extract_assignment, Construction, ReductionError, Which,
};
pub use gadgets::{
    gadget, mutation_report, verify_gadget, verify_gadget_with, GadgetCatalogEntry, GadgetName, GadgetReport, Method,
    Provenance,
};
