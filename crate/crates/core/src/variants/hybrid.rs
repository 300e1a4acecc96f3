//! Hybrid CORDIC: a coarse block of ordinary iterations followed by a
//! fine block whose direction digits come straight from the residual-angle
//! bits, with no z-path adders. Past the split point atan(2^-i) and 2^-i
//! agree to below one ulp, so reading digits off the two's-complement
//! residual is as good as running the recurrence.
//!
//! Two flavors: `Mixed` feeds the fine block the residual left by the
//! coarse block; `Partitioned` splits the input angle into MSB and LSB
//! words before any iteration and never routes the coarse residual across,
//! trading accuracy for a fully decoupled pair of blocks.

use crate::engine::{self, EngineConfig, Mode, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;
use crate::variants::{RotationOutcome, VariantError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Mixed,
    Partitioned,
}

#[derive(Debug, Clone, Copy)]
pub struct HybridConfig {
    /// Coarse-iteration count, the split point. Defaults to
    /// ceil(total_bits / 3): from that index on the dyadic angle
    /// approximation is below an ulp.
    pub m: u32,
    pub total_bits: u32,
}

impl HybridConfig {
    pub fn new(m: u32, total_bits: u32) -> Result<Self, VariantError> {
        if m == 0 || m >= total_bits {
            return Err(VariantError::OutOfRange(format!(
                "split point {m} outside (0, {total_bits})"
            )));
        }
        Ok(HybridConfig { m, total_bits })
    }

    pub fn default_for(fmt: QFormat) -> Self {
        HybridConfig {
            m: fmt.total_bits().div_ceil(3),
            total_bits: fmt.total_bits(),
        }
    }
}

/// Sign-extension readout of the fine-block digits: walk the residual from
/// weight 2^-from downward, emitting the sign of what is left and
/// stripping that weight. A zero residual emits nothing, which is what
/// makes an exhausted fine block an identity.
pub fn fine_sigmas(residual: FixedWord, from: u32, to: u32) -> Vec<(u32, i8)> {
    let frac = residual.fmt().frac_bits();
    let mut r = residual.raw();
    if r == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in from..to {
        let s: i8 = if r >= 0 { 1 } else { -1 };
        let step = if i <= frac { 1i64 << (frac - i) } else { 0 };
        r -= s as i64 * step;
        out.push((i, s));
    }
    out
}

pub fn rotate_unit(
    theta: f64,
    cfg: &EngineConfig,
    flavor: Flavor,
) -> Result<RotationOutcome, VariantError> {
    let hcfg = HybridConfig::default_for(cfg.fmt);
    hybrid_rotate(theta, cfg, &hcfg, flavor)
}

pub fn hybrid_rotate(
    theta: f64,
    cfg: &EngineConfig,
    hcfg: &HybridConfig,
    flavor: Flavor,
) -> Result<RotationOutcome, VariantError> {
    let fmt = cfg.fmt;
    let n = cfg.max_iterations;
    let m = hcfg.m.min(n);
    let zq =
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;

    // angle word routed to the coarse block, and the word the fine block
    // will read its digits from
    let (z_coarse, fine_seed) = match flavor {
        Flavor::Mixed => (zq, None),
        Flavor::Partitioned => {
            let low_mask = (1i64 << fmt.frac_bits().saturating_sub(m)) - 1;
            let high = zq.raw() & !low_mask;
            let low = zq.raw() - high;
            (
                FixedWord::from_raw(high, fmt).expect("masked word fits"),
                Some(FixedWord::from_raw(low, fmt).expect("low word fits")),
            )
        }
    };

    // coarse block: ordinary iterations 0..m
    let mut state = engine::CordicState::new(
        FixedWord::one(fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?,
        FixedWord::zero(fmt),
        z_coarse,
    );
    let mut ops = OpCount::zero();
    let mut executed: Vec<(u32, i8)> = Vec::new();
    for i in 0..m {
        if state.z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
            break;
        }
        let sigma = engine::sigma_select(Mode::Rotation, &state);
        state = engine::micro_rotate_at(&state, sigma, Trajectory::Circular, i);
        executed.push((i, sigma));
        ops.adds += 3;
        ops.shifts += 2;
        ops.iterations += 1;
    }

    // fine block input: the coarse residual (mixed) or the split-off LSB
    // word (partitioned, coarse residual stays in the coarse block)
    let fine_input = match flavor {
        Flavor::Mixed => state.z,
        Flavor::Partitioned => fine_seed.unwrap(),
    };
    let fine = fine_sigmas(fine_input, m, n);

    let mut x = state.x;
    let mut y = state.y;
    for &(i, sigma) in &fine {
        let dx = y.try_shr(i).expect("fine shift in range");
        let dy = x.try_shr(i).expect("fine shift in range");
        let (nx, ny) = if sigma > 0 {
            (x - dx, y + dy)
        } else {
            (x + dx, y - dy)
        };
        x = nx;
        y = ny;
        ops.adds += 2;
        ops.shifts += 2;
        ops.iterations += 1;
        executed.push((i, sigma));
    }

    super::finish_with_correction(x, y, &executed, false, fmt, ops, RunStatus::Converged)
}
