//! Quaternion-valued convolutional neural networks, trained with quaternion
//! backpropagation, plus the statistical machinery to compare their atomic
//! components: a crossed factorial experiment runner, k-way fixed-effects
//! ANOVA with model reduction, Tukey HSD multiple comparisons, and SVG
//! group-mean reports.

pub mod data;
pub mod error;
pub mod experiment;
pub mod layers;
pub mod network;
pub mod quaternion;
pub mod report;
pub mod stats;
pub mod tensor;
pub mod train;

pub use error::{Error, Result};
pub use quaternion::Quaternion;
pub use tensor::{QTensor, RealTensor};
