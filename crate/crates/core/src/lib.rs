//! Iterative target localization in a wireless sensor network using
//! error-correcting codes.
//!
//! Sensors on a grid compare a noisy received amplitude against a threshold
//! and send one bit to a fusion center. The region of interest is split into
//! `M` regions, and each region owns a codeword whose ones mark the sensors
//! inside it. The fusion center decodes the received word to a region,
//! discards the sensors outside it and repeats. Some sensors may be
//! Byzantine and flip their bits, and the links may suffer Rayleigh fading.
//!
//! The modules follow that pipeline:
//!
//! * [`geometry`] lays out sensors and splits regions.
//! * [`signal`] covers propagation, thresholds and local quantization.
//! * [`coding`] builds code matrices.
//! * [`channel`] applies the Byzantine attack and the fading link.
//! * [`decoding`] holds the hard, exclusion and soft decoders.
//! * [`localization`] runs a whole trial and the MLE baseline.
//! * [`analysis`] computes error probabilities, detection bounds and exact detection rates.
//! * [`harness`] runs Monte-Carlo sweeps and writes CSV.
//!
//! ```
//! use codeloc::geometry::{deploy_grid, Position, Rect};
//! use codeloc::localization::{run_trial, SchemeConfig};
//! use codeloc::rng::seeded;
//!
//! let field = deploy_grid(16, 32, Rect::square(8.0).unwrap()).unwrap();
//! let est = run_trial(&field, &SchemeConfig::default(), Position::new(1.2, 6.5), &mut seeded(5)).unwrap();
//! assert_eq!(est.trace.len(), 2);
//! ```

pub mod analysis;
pub mod bits;
pub mod channel;
pub mod coding;
pub mod decoding;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod localization;
pub mod rng;
pub mod signal;
