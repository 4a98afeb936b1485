pub mod error;
pub mod graph;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub mod property;

pub use property::{evaluate, BooleanFunction, PropertySpec};
pub mod solver;
pub use solver::{exact_cost, CostCertificate, PartialAssignment, Strategy};
pub mod bounds;
pub use bounds::{verify_bound, Bound, Verdict};
pub mod constructions;
pub use constructions::{build_upper_bound_graph, run_algorithm1, validate_construction, UpperBoundInstance};
pub mod sweep;
pub use sweep::{build_report, min_cost, GraphSource, MinCost, Report, SweepConfig};
