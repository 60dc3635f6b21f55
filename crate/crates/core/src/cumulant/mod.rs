//! Color statistics, the cumulant generating function `f_{G,k}`, the bridge to
//! weighted targets, joint cumulants, and their decomposition over labeled
//! edge patterns.

mod cgf;
mod coloring;
mod decomposition;
mod joint;
mod lambda;
mod partition;
mod pattern;

pub use cgf::{cgf_value, target_from_lambda};
pub use coloring::{color_statistics, ColorStatistics, ColoringHistogram};
pub use decomposition::{coordinate_cumulant, kappa_gj, Route};
pub use joint::{joint_cumulant, moments_to_cumulants};
pub use lambda::{Coordinate, LambdaVector, Statistic};
pub use partition::{bell_number, enumerate_partitions, SetPartition, MAX_PARTITION_SIZE};
pub use pattern::{embed_pattern, f_pi, kappa_fj, x_value, ColorPattern};
