//! Alternative rotation architectures sharing the conventional engine's
//! result shape: scale-free, lookahead, radix-4, angle recoding, hybrid,
//! and the fixed-latency repetitive-iteration engine.

pub mod hybrid;
pub mod lookahead;
pub mod radix4;
pub mod recoding;
pub mod rico;
pub mod scale_free;

use std::fmt;
use std::str::FromStr;

use crate::engine::{self, EngineConfig, Mode, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;

/// Where a micro-rotation schedule came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleSource {
    Conventional,
    Lobd,
    Recoding,
    Radix4,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleEntry {
    /// Shift amount of the entry; indices may repeat and need not be
    /// contiguous for the recoding and leading-one-detector sources.
    pub index: u32,
    pub sigma: i8,
    pub angle: FixedWord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicroRotationSchedule {
    pub entries: Vec<ScheduleEntry>,
    pub source: ScheduleSource,
}

impl MicroRotationSchedule {
    pub fn new(entries: Vec<ScheduleEntry>, source: ScheduleSource) -> Self {
        let max_sigma = if source == ScheduleSource::Radix4 {
            2
        } else {
            1
        };
        debug_assert!(entries.iter().all(|e| e.sigma.abs() <= max_sigma));
        MicroRotationSchedule { entries, source }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// (index, sigma) pairs for scale-factor evaluation.
    pub fn sigma_pairs(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.entries.iter().map(|e| (e.index, e.sigma))
    }
}

/// Rotation architecture selector. `Exact` is the reference pseudo-variant
/// computing with double-precision trigonometry; it anchors every error
/// column at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Exact,
    Conventional,
    ScaleFree,
    Lookahead,
    Radix4,
    Recoding,
    HybridMixed,
    HybridPartitioned,
    Rico,
}

impl Variant {
    pub fn all() -> &'static [Variant] {
        &[
            Variant::Exact,
            Variant::Conventional,
            Variant::ScaleFree,
            Variant::Lookahead,
            Variant::Radix4,
            Variant::Recoding,
            Variant::HybridMixed,
            Variant::HybridPartitioned,
            Variant::Rico,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Exact => "exact",
            Variant::Conventional => "conventional",
            Variant::ScaleFree => "scale-free",
            Variant::Lookahead => "lookahead",
            Variant::Radix4 => "radix4",
            Variant::Recoding => "recoding",
            Variant::HybridMixed => "hybrid-mixed",
            Variant::HybridPartitioned => "hybrid-partitioned",
            Variant::Rico => "rico",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for v in Variant::all() {
            if v.name() == s {
                return Ok(*v);
            }
        }
        let names: Vec<_> = Variant::all().iter().map(|v| v.name()).collect();
        Err(format!(
            "unknown variant '{s}' (expected one of: {})",
            names.join(", ")
        ))
    }
}

/// Unit-vector rotation result: corrected fixed-point outputs plus the
/// same values before the final output quantization, which separates
/// algorithmic error from format rounding.
#[derive(Debug, Clone, Copy)]
pub struct RotationOutcome {
    pub cos: FixedWord,
    pub sin: FixedWord,
    pub cos_pre: f64,
    pub sin_pre: f64,
    pub ops: OpCount,
    pub status: RunStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VariantError {
    OutOfRange(String),
    Unsupported(String),
}

impl fmt::Display for VariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantError::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            VariantError::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for VariantError {}

/// Rotate the unit vector by `theta` (radians, |theta| <= pi/2) through the
/// chosen architecture. Quadrant folding for wider angles is the function
/// layer's job.
pub fn rotate_unit(
    variant: Variant,
    theta: f64,
    cfg: &EngineConfig,
) -> Result<RotationOutcome, VariantError> {
    match variant {
        Variant::Exact => {
            let (s, c) = theta.sin_cos();
            Ok(RotationOutcome {
                cos: FixedWord::from_real(c, cfg.fmt)
                    .map_err(|e| VariantError::OutOfRange(e.to_string()))?,
                sin: FixedWord::from_real(s, cfg.fmt)
                    .map_err(|e| VariantError::OutOfRange(e.to_string()))?,
                cos_pre: c,
                sin_pre: s,
                ops: OpCount::zero(),
                status: RunStatus::Converged,
            })
        }
        Variant::Conventional => conventional_rotate(theta, cfg),
        Variant::ScaleFree => scale_free::rotate_unit(theta, cfg),
        Variant::Lookahead => lookahead::rotate_unit(theta, cfg),
        Variant::Radix4 => radix4::rotate_unit(theta, cfg),
        Variant::Recoding => recoding::rotate_unit(theta, cfg),
        Variant::HybridMixed => hybrid::rotate_unit(theta, cfg, hybrid::Flavor::Mixed),
        Variant::HybridPartitioned => hybrid::rotate_unit(theta, cfg, hybrid::Flavor::Partitioned),
        Variant::Rico => rico::rotate_unit(theta, cfg),
    }
}

fn conventional_rotate(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let fmt = cfg.fmt;
    let cfg = EngineConfig {
        mode: Mode::Rotation,
        trajectory: Trajectory::Circular,
        scale_correction: false,
        ..*cfg
    };
    let init = engine::CordicState::new(
        FixedWord::one(fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?,
        FixedWord::zero(fmt),
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?,
    );

    // Run uncorrected, then correct here so both the quantized and the
    // pre-quantization outputs share one schedule-matched factor.
    let mut executed: Vec<(u32, i8)> = Vec::new();
    let mut state = init;
    let mut ops = OpCount::zero();
    for index in engine::index_sequence(cfg.trajectory, cfg.max_iterations) {
        if state.z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
            break;
        }
        let sigma = engine::sigma_select(Mode::Rotation, &state);
        state = engine::micro_rotate_at(&state, sigma, cfg.trajectory, index);
        executed.push((index, sigma));
        ops.adds += 3;
        ops.shifts += 2;
        ops.iterations += 1;
    }
    let status = if state.z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
        RunStatus::Converged
    } else {
        RunStatus::BudgetExhausted
    };
    finish_with_correction(state.x, state.y, &executed, false, fmt, ops, status)
}

/// Shared tail: apply the schedule-matched scale factor to both the fixed
/// and the pre-quantization views of the output vector.
pub(crate) fn finish_with_correction(
    x: FixedWord,
    y: FixedWord,
    executed: &[(u32, i8)],
    radix4: bool,
    fmt: QFormat,
    mut ops: OpCount,
    status: RunStatus,
) -> Result<RotationOutcome, VariantError> {
    let k = engine::scale_factor_for(Trajectory::Circular, executed.iter().copied(), radix4);
    let (cos, sin) = if executed.is_empty() {
        (x, y)
    } else {
        let kq =
            FixedWord::from_real(k, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
        ops.multiplies += 2;
        (x * kq, y * kq)
    };
    Ok(RotationOutcome {
        cos,
        sin,
        cos_pre: x.to_real() * k,
        sin_pre: y.to_real() * k,
        ops,
        status,
    })
}
