//! Radix-4 CORDIC: direction digits in {-2,-1,0,+1,+2}, shift amounts of
//! 2i bits per iteration, data-dependent scale factor.
//!
//! The update convention here puts +sigma on the x path and -sigma on the
//! y path, which mirrors the rotation direction relative to the radix-2
//! engine; the driver compensates by negating y at entry and exit so the
//! observable result is still a rotation by +theta.

use std::sync::LazyLock;

use crate::engine::{EngineConfig, RunStatus, Trajectory};
use crate::fixnum::FixedWord;
use crate::opcount::OpCount;
use crate::variants::{
    MicroRotationSchedule, RotationOutcome, ScheduleEntry, ScheduleSource, VariantError,
};

const DEPTH: usize = 16;

/// atan(sigma * 4^-i) for sigma in -2..=2, i in 0..DEPTH.
static ANGLES: LazyLock<[[f64; 5]; DEPTH]> = LazyLock::new(|| {
    let mut t = [[0.0; 5]; DEPTH];
    for (i, row) in t.iter_mut().enumerate() {
        for (si, slot) in row.iter_mut().enumerate() {
            let sigma = si as f64 - 2.0;
            *slot = (sigma * (4.0f64).powi(-(i as i32))).atan();
        }
    }
    t
});

/// Nearest-angle digit selection: the sigma whose elementary angle
/// atan(sigma * 4^-i) is closest to the residual. Zero is part of the
/// digit set so near-zero residuals stop rotating; ties go to the digit
/// of smaller magnitude.
pub fn radix4_select(z: FixedWord, i: u32) -> i8 {
    let zr = z.to_real();
    let row = &ANGLES[(i as usize).min(DEPTH - 1)];
    let mut best: i8 = 0;
    let mut best_d = f64::INFINITY;
    // visit digits in order of magnitude so ties keep the smaller one
    for &sigma in &[0i8, 1, -1, 2, -2] {
        let d = (zr - row[(sigma + 2) as usize]).abs();
        if d < best_d {
            best_d = d;
            best = sigma;
        }
    }
    best
}

/// Working format of the loop: the sigma = 2 digits grow the vector by up
/// to sqrt(5) per step (about 2.54 cumulative), which does not fit the
/// usual one integer bit, so the datapath carries two guard integer bits
/// and narrows after correction.
fn wide_format(fmt: crate::fixnum::QFormat) -> crate::fixnum::QFormat {
    crate::fixnum::QFormat::new(fmt.total_bits() + 2, fmt.frac_bits())
        .expect("guarded radix-4 format fits")
}

/// Uncorrected radix-4 loop. Mirror-compensated: y is negated at entry
/// and the caller negates it back after correction.
fn radix4_core(
    theta: f64,
    v: (FixedWord, FixedWord),
    iterations: u32,
    cfg: &EngineConfig,
) -> Result<
    (
        FixedWord,
        FixedWord,
        OpCount,
        MicroRotationSchedule,
        RunStatus,
    ),
    VariantError,
> {
    let fmt = wide_format(cfg.fmt);
    let mut x = FixedWord::from_raw(v.0.raw(), fmt).expect("widening is lossless");
    let mut y = -FixedWord::from_raw(v.1.raw(), fmt).expect("widening is lossless"); // entry mirror
    let mut z =
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let mut ops = OpCount::zero();
    let mut entries = Vec::new();

    for i in 0..iterations {
        if z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
            break;
        }
        let sigma = radix4_select(z, i);
        let alpha_real = ANGLES[(i as usize).min(DEPTH - 1)][(sigma + 2) as usize];
        let alpha = FixedWord::from_real(alpha_real, fmt)
            .map_err(|e| VariantError::OutOfRange(e.to_string()))?;

        if sigma != 0 {
            let mag = sigma.unsigned_abs() as u32;
            let (tx, ty) = if mag == 2 && i == 0 {
                // 2 * 4^0 doubles: one extra add instead of a shift
                ops.adds += 2;
                (x + x, y + y)
            } else {
                let shift = if mag == 2 { 2 * i - 1 } else { 2 * i };
                ops.shifts += 2;
                (x.shr_clamped(shift), y.shr_clamped(shift))
            };
            let (nx, ny) = if sigma > 0 {
                (x + ty, y - tx)
            } else {
                (x - ty, y + tx)
            };
            x = nx;
            y = ny;
            ops.adds += 2;
        }
        z = z - alpha;
        ops.adds += 1;
        ops.iterations += 1;
        entries.push(ScheduleEntry {
            index: i,
            sigma,
            angle: alpha,
        });
    }

    let status = if z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
        RunStatus::Converged
    } else {
        RunStatus::BudgetExhausted
    };

    let schedule = MicroRotationSchedule::new(entries, ScheduleSource::Radix4);
    Ok((x, y, ops, schedule, status))
}

/// Fixed-budget radix-4 rotation of `v` by `theta`. Each iteration shifts
/// by 2i bits (2i - 1 for |sigma| = 2, one doubling add at i = 0), the z
/// path subtracts the quantized atan(sigma * 4^-i), and the final
/// correction applies the per-schedule product over 1/sqrt(1 + sigma^2
/// 4^-2i).
/// Narrow a guarded word back to the caller's format, saturating like the
/// arithmetic would.
fn narrow(w: FixedWord, fmt: crate::fixnum::QFormat) -> FixedWord {
    FixedWord::from_raw(w.raw().clamp(fmt.min_raw(), fmt.max_raw()), fmt).expect("clamped raw fits")
}

pub fn radix4_rotate(
    theta: f64,
    v: (FixedWord, FixedWord),
    iterations: u32,
    cfg: &EngineConfig,
) -> Result<
    (
        FixedWord,
        FixedWord,
        OpCount,
        MicroRotationSchedule,
        RunStatus,
    ),
    VariantError,
> {
    let (mut x, mut y, mut ops, schedule, status) = radix4_core(theta, v, iterations, cfg)?;
    let k = crate::engine::scale_factor_for(Trajectory::Circular, schedule.sigma_pairs(), true);
    if k < 1.0 {
        let kq = FixedWord::from_real(k, x.fmt())
            .map_err(|e| VariantError::OutOfRange(e.to_string()))?;
        x = x * kq;
        y = y * kq;
        ops.multiplies += 2;
    }
    Ok((
        narrow(x, cfg.fmt),
        narrow(-y, cfg.fmt),
        ops,
        schedule,
        status,
    )) // exit mirror
}

pub fn rotate_unit(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let one = FixedWord::one(cfg.fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    // Half the radix-2 iteration count reaches the same shift depth.
    let iterations = cfg.max_iterations.div_ceil(2);
    let (x, y, ops, schedule, status) =
        radix4_core(theta, (one, FixedWord::zero(cfg.fmt)), iterations, cfg)?;
    let executed: Vec<(u32, i8)> = schedule.sigma_pairs().collect();
    let wide = super::finish_with_correction(x, -y, &executed, true, x.fmt(), ops, status)?;
    Ok(RotationOutcome {
        cos: narrow(wide.cos, cfg.fmt),
        sin: narrow(wide.sin, cfg.fmt),
        ..wide
    })
}
