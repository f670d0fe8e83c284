//! Edge-preserving denoising with a neuron-gated adaptive G-neighbor mean
//! filter.
//!
//! The crate has three layers:
//!
//! * [`image`], [`pgm`] and [`filters`]: the software (ideal) filter, a 3×3
//!   window whose pixels are admitted into the mean only when they are within
//!   a threshold of the center pixel, plus the conventional mean and median
//!   baselines.
//! * [`neuromorphic`]: a time-stepped behavioral model of the analog
//!   pipeline that computes the same mask in hardware (difference amplifier,
//!   VCO, integrate-and-fire neuron, SIPO register, switched averaging).
//! * [`noise`], [`metrics`] and [`bench`]: seeded Gaussian noise, MSE/PSNR and
//!   the corpus threshold sweep.

pub mod bench;
mod error;
pub mod filters;
pub mod format;
pub mod image;
pub mod metrics;
pub mod neuromorphic;
pub mod noise;
pub mod pgm;

pub use error::{Error, Result};
pub use filters::{
    adaptive_mean, filter_image, similarity_mask, FilterKind, SimilarityMask, Threshold,
};
pub use image::{window_at, BorderPolicy, Image, Window3x3};
pub use metrics::{mse, psnr, QualityScore};
pub use neuromorphic::{
    calibrate, run_window_pipeline, AnalogParams, NeuronTrace, PipelineOutcome, TraceSample,
};
pub use noise::{add_gaussian_noise, NoiseSpec};
pub use pgm::{load_pgm, save_pgm};
