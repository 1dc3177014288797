//! Joint relay selection and link adaptation for two-hop decode-and-forward
//! networks with distributed beamforming.

pub mod analytics;
pub mod beamform;
pub mod channel;
mod error;
pub mod modulation;
pub mod quadrature;
pub mod report;
pub mod selection;
pub mod signaling;
pub mod simulator;
pub mod special;

pub use analytics::{ProbabilityModel, SelectionDistribution, ThroughputBounds};
pub use channel::{ChannelRealization, NetworkConfig, StreamKind};
pub use error::{Error, Result};
pub use modulation::{Constellation, ModulationScheme, ThresholdTable};
pub use selection::SelectionOutcome;
pub use signaling::{Duplex, FeedbackScheme, SignalingBudget};
pub use simulator::{PointResult, PointStats, Scheme, SweepResult, TrialRecord};
