//! Boolean automata networks under block-sequential update schedules, and
//! their general iteration graphs.
//!
//! The crate covers four layers:
//!
//! - [`network`]: networks with monotone local functions, the subset
//!   transition `F^P` and the unstable set `U(x)`;
//! - [`schedule`] and [`attractor`]: block-sequential schedules, macro-steps,
//!   attractor enumeration and schedule counting ([`counting`]);
//! - [`gig`]: the general iteration graph, robustness and likeliness of
//!   configuration sets, reachability, strongly connected components and
//!   graph export;
//! - [`circuit`] and [`lemmas`]: Boolean automata circuits, their layered
//!   structure and exhaustive checks of it.
//!
//! ```
//! use giglab_core::{Circuit, GeneralIterationGraph, UpdateSchedule, Observation};
//! use giglab_core::attractor::enumerate_attractors;
//!
//! let net = Circuit::canonical_positive(3).network();
//! let atts = enumerate_attractors(&net, &UpdateSchedule::parallel(3), Observation::Macro).unwrap();
//! assert_eq!(atts.len(), 4);
//!
//! let gig = GeneralIterationGraph::build(&net).unwrap();
//! assert_eq!(gig.labeled_arc_count(), 8 * 7);
//! ```

pub mod attractor;
pub mod circuit;
pub mod config;
pub mod counting;
pub mod format;
pub mod gig;
pub mod lemmas;
pub mod limits;
pub mod network;
pub mod random;
pub mod schedule;

pub use attractor::{Attractor, AttractorKind, Observation, Trajectory};
pub use circuit::{Circuit, CircuitError, Isomorphism, LayerProfile};
pub use config::Configuration;
pub use format::{FormatError, NetworkFile};
pub use gig::{ConfigSetReport, GeneralIterationGraph, GigError, Robustness};
pub use limits::{Limits, StateSpaceGuard};
pub use network::{
    LocalFunction, Network, NetworkError, NodeSet, RawNetwork, RawNode, Sign, UnstableSet,
};
pub use schedule::{ScheduleError, UpdateSchedule};
