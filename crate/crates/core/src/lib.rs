//! Dyadic-effect analysis on simple undirected graphs: dyad counts,
//! dyadicity and heterophilicity, degree-sequence bounds on the feasible
//! (m10, m11) region, and exact phase diagrams by exhaustive enumeration.
//!
//! The enumeration core is data-parallel (rayon) behind the default
//! `parallel` feature; disabling it yields a sequential build with
//! bit-identical outputs.

pub mod bounds;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod phase;
pub mod render;

pub use bounds::{bounds_report, bounds_sweep, BoundsReport, DegreeSequenceView};
pub use generate::{generate, Family, GenError, GeneratorSpec, Target};
pub use graph::{erdos_gallai_graphic, Graph, GraphError};
pub use metrics::{
    count_dyads, dyad_stats, dyadicity_heterophilicity, expected_dyads,
    CharacteristicAssignment, DyadCounts, DyadStats, MetricsError, Rational,
};
pub use phase::{
    enumerate_phase_diagram, enumerate_phase_diagram_seq, ensemble_gain, extremal_dyads,
    feasible_area, gain_curves, old_feasible_area, GainRow, MeanGainRow, PhaseDiagram,
    PhaseError, DEFAULT_BUDGET,
};
