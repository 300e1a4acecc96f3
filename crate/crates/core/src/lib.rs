//! Shift-add rotation engines over fixed-point words: the conventional
//! iterative datapath in both modes and all three trajectories, six
//! alternative architectures (scale-free, lookahead, radix-4, angle
//! recoding, hybrid, fixed-latency), a catalog of the functions those
//! engines compute, and an 8x8 DCT benchmark pipeline with PGM image
//! support and quality metrics. Every result carries its add/shift cost.

pub mod dct;
pub mod engine;
pub mod fixnum;
pub mod functions;
pub mod image;
pub mod metrics;
pub mod opcount;
pub mod variants;

pub use engine::{
    elementary_angle, micro_rotate, run, scale_factor_for, scale_factor_uniform, sigma_select,
    CordicState, EngineConfig, Mode, RunOutput, RunStatus, Trajectory,
};
pub use fixnum::{FixedWord, FxError, QFormat};
pub use opcount::OpCount;
pub use variants::{rotate_unit, MicroRotationSchedule, RotationOutcome, Variant};
