//! Repetitive-iteration CORDIC (fixed latency). Every input runs the same
//! schedule: the direction digits are generated up front by replaying the
//! z recurrence, the first three shift indices collapse into one merged
//! step selected from eight precomputed vectors, and the remaining indices
//! run conventionally. No convergence loop, no data-dependent timing.
//!
//! The merged-step constants come from rotating the unit vector twice by
//! seven degrees at construction time: fourteen degrees is within four
//! hundredths of a degree of atan(2^-2), so the third index is folded into
//! the precomputed vector as a true (norm-preserving) rotation, and the
//! fixed scale factor skips that index. The small angle mismatch is part
//! of this architecture's error budget.

use crate::engine::{self, EngineConfig, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;
use crate::variants::{RotationOutcome, VariantError};

/// Indices merged into the head step.
const MERGED: u32 = 3;

#[derive(Debug, Clone)]
pub struct RicoConfig {
    /// Clock steps: one merged step covering indices 0..3, then one index
    /// per step. Constant for all inputs.
    pub total_iterations: u32,
    pub prerotation_angle: FixedWord,
    /// Head vectors indexed by the sign bits of (sigma0, sigma1, sigma2).
    merged_head: [[[(FixedWord, FixedWord); 2]; 2]; 2],
    fmt: QFormat,
    fixed_k: f64,
}

impl RicoConfig {
    pub fn new(total_iterations: u32, fmt: QFormat) -> Result<Self, VariantError> {
        if total_iterations < 2 {
            return Err(VariantError::OutOfRange(
                "need at least the merged step and one conventional index".into(),
            ));
        }
        let last_index = total_iterations + 1;
        if last_index >= fmt.total_bits() {
            return Err(VariantError::OutOfRange(format!(
                "{total_iterations} steps push the shift index past {fmt}"
            )));
        }

        let seven = 7.0f64.to_radians();
        let prerotation_angle = FixedWord::from_real(seven, fmt)
            .map_err(|e| VariantError::OutOfRange(e.to_string()))?;

        // rotate (1, 0) twice by seven degrees: (cos 14, sin 14)
        let (s14, c14) = (2.0 * seven).sin_cos();
        let ovx =
            FixedWord::from_real(c14, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
        let ovy =
            FixedWord::from_real(s14, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;

        let zero = (FixedWord::zero(fmt), FixedWord::zero(fmt));
        let mut merged_head = [[[zero; 2]; 2]; 2];
        for (i0, s0) in [(0usize, -1i8), (1, 1)] {
            for (i1, s1) in [(0usize, -1i8), (1, 1)] {
                for (i2, s2) in [(0usize, -1i8), (1, 1)] {
                    // index 2 enters through the sign of the head vector,
                    // indices 1 and 0 as ordinary pseudo-rotations
                    let hx = ovx;
                    let hy = if s2 > 0 { ovy } else { -ovy };
                    let (hx, hy) = pseudo(hx, hy, s1, 1);
                    let (hx, hy) = pseudo(hx, hy, s0, 0);
                    merged_head[i0][i1][i2] = (hx, hy);
                }
            }
        }

        // indices 0, 1, then 3.. ; index 2 lives inside the head as a true
        // rotation and contributes no length growth
        let corrected: Vec<(u32, i8)> = [0u32, 1]
            .into_iter()
            .chain(MERGED..=last_index)
            .map(|i| (i, 1i8))
            .collect();
        let fixed_k = engine::scale_factor_for(Trajectory::Circular, corrected, false);

        Ok(RicoConfig {
            total_iterations,
            prerotation_angle,
            merged_head,
            fmt,
            fixed_k,
        })
    }

    pub fn last_index(&self) -> u32 {
        self.total_iterations + 1
    }

    pub fn fixed_scale_factor(&self) -> f64 {
        self.fixed_k
    }
}

fn pseudo(x: FixedWord, y: FixedWord, sigma: i8, index: u32) -> (FixedWord, FixedWord) {
    let dx = y.try_shr(index).expect("head shift");
    let dy = x.try_shr(index).expect("head shift");
    if sigma > 0 {
        (x - dx, y + dy)
    } else {
        (x + dx, y - dy)
    }
}

/// Generate the full digit schedule by replaying the z recurrence.
pub fn sigma_schedule(theta: FixedWord, last_index: u32) -> (Vec<i8>, FixedWord, OpCount) {
    let fmt = theta.fmt();
    let mut z = theta;
    let mut sigmas = Vec::with_capacity(last_index as usize + 1);
    let mut ops = OpCount::zero();
    for i in 0..=last_index {
        let s: i8 = if z.raw() >= 0 { 1 } else { -1 };
        sigmas.push(s);
        let alpha = engine::elementary_angle(Trajectory::Circular, i, fmt).expect("angle");
        z = if s > 0 { z - alpha } else { z + alpha };
        ops.adds += 1;
    }
    (sigmas, z, ops)
}

/// Fixed-latency rotation of `v` by `theta`. For the unit vector the head
/// step is a table select; for anything else the head's third index runs
/// as a true rotation by the precomputed fourteen-degree constants (four
/// multiplies) before the two pseudo-rotations.
pub fn rico_rotate(
    theta: f64,
    v: (FixedWord, FixedWord),
    cfg: &RicoConfig,
) -> Result<(FixedWord, FixedWord, OpCount), VariantError> {
    let fmt = cfg.fmt;
    let zq =
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let (sigmas, _, mut ops) = sigma_schedule(zq, cfg.last_index());

    let one = FixedWord::one(fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let unit = v.0 == one && v.1.raw() == 0;

    let idx = |s: i8| usize::from(s > 0);
    let (mut x, mut y) = if unit {
        cfg.merged_head[idx(sigmas[0])][idx(sigmas[1])][idx(sigmas[2])]
    } else {
        // head over an arbitrary vector: true rotation by the
        // fourteen-degree constants, then the two pseudo-rotations
        let (s14, c14) = (14.0f64.to_radians()).sin_cos();
        let c = FixedWord::from_real(c14, fmt).expect("cos fits");
        let s = {
            let w = FixedWord::from_real(s14, fmt).expect("sin fits");
            if sigmas[2] > 0 {
                w
            } else {
                -w
            }
        };
        let hx = v.0 * c - v.1 * s;
        let hy = v.1 * c + v.0 * s;
        ops.multiplies += 4;
        ops.adds += 2;
        let (hx, hy) = pseudo(hx, hy, sigmas[1], 1);
        let (hx, hy) = pseudo(hx, hy, sigmas[0], 0);
        (hx, hy)
    };
    ops.adds += 4; // the two head pseudo-rotations
    ops.shifts += 4;
    ops.iterations += 1; // merged step

    for i in MERGED..=cfg.last_index() {
        let (nx, ny) = pseudo(x, y, sigmas[i as usize], i);
        x = nx;
        y = ny;
        ops.adds += 2;
        ops.shifts += 2;
        ops.iterations += 1;
    }

    let kq = FixedWord::from_real(cfg.fixed_k, fmt)
        .map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    x = x * kq;
    y = y * kq;
    ops.multiplies += 2;

    Ok((x, y, ops))
}

pub fn rotate_unit(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let rcfg = RicoConfig::new(8, cfg.fmt)?;
    let one = FixedWord::one(cfg.fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let (x, y, ops) = rico_rotate(theta, (one, FixedWord::zero(cfg.fmt)), &rcfg)?;
    Ok(RotationOutcome {
        cos: x,
        sin: y,
        cos_pre: x.to_real(),
        sin_pre: y.to_real(),
        ops,
        status: RunStatus::Converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt() -> QFormat {
        QFormat::q2_14()
    }

    fn unit() -> (FixedWord, FixedWord) {
        (FixedWord::one(fmt()).unwrap(), FixedWord::zero(fmt()))
    }

    #[test]
    fn forty_five_degrees_within_band() {
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        let t = std::f64::consts::FRAC_PI_4;
        let (x, y, _) = rico_rotate(t, unit(), &cfg).unwrap();
        assert!((x.to_real() - t.cos()).abs() < 2.0f64.powi(-8));
        assert!((y.to_real() - t.sin()).abs() < 2.0f64.powi(-8));
    }

    #[test]
    fn zero_angle_output_is_near_identity_at_fixed_latency() {
        // a fixed schedule cannot sit still: the digits alternate around
        // zero and leave roughly the last elementary angle as residual
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        let (x, y, _) = rico_rotate(0.0, unit(), &cfg).unwrap();
        assert!((x.to_real() - 1.0).abs() < 2.0f64.powi(-8));
        assert!(y.to_real().abs() < 3.0 * 2.0f64.powi(-9));
    }

    #[test]
    fn opcount_is_a_constant_function_of_theta() {
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        let (_, _, base) = rico_rotate(0.3, unit(), &cfg).unwrap();
        for t in 0..64 {
            let theta = (-88.0 + 176.0 * t as f64 / 63.0).to_radians();
            let (_, _, ops) = rico_rotate(theta, unit(), &cfg).unwrap();
            assert_eq!(ops, base, "theta step {t}");
        }
    }

    #[test]
    fn accuracy_band_across_sweep() {
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        for t in 0..64 {
            let theta = (-88.0 + 176.0 * t as f64 / 63.0).to_radians();
            let (x, y, _) = rico_rotate(theta, unit(), &cfg).unwrap();
            assert!(
                (x.to_real() - theta.cos()).abs() < 2.0f64.powi(-7),
                "cos at step {t}"
            );
            assert!(
                (y.to_real() - theta.sin()).abs() < 2.0f64.powi(-7),
                "sin at step {t}"
            );
        }
    }

    #[test]
    fn head_constants_match_double_seven_degree_rotation() {
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        assert!((cfg.prerotation_angle.to_real() - 7.0f64.to_radians()).abs() < fmt().ulp());
        // all-plus head = pseudo0(pseudo1(cos14, sin14))
        let (hx, hy) = cfg.merged_head[1][1][1];
        let c14 = FixedWord::from_real(14.0f64.to_radians().cos(), fmt()).unwrap();
        let s14 = FixedWord::from_real(14.0f64.to_radians().sin(), fmt()).unwrap();
        let (ex, ey) = pseudo(c14, s14, 1, 1);
        let (ex, ey) = pseudo(ex, ey, 1, 0);
        assert_eq!((hx, hy), (ex, ey));
    }

    #[test]
    fn general_vector_head_agrees_with_unit_table() {
        // feeding the unit vector through the general path must land close
        // to the table select (the table is exact, the general path rounds
        // through four multiplies)
        let cfg = RicoConfig::new(8, fmt()).unwrap();
        let v = (
            FixedWord::from_real(0.75, fmt()).unwrap(),
            FixedWord::from_real(0.25, fmt()).unwrap(),
        );
        let t = 30.0f64.to_radians();
        let (x, y, ops) = rico_rotate(t, v, &cfg).unwrap();
        // rotate (0.75, 0.25) by ~30 degrees
        let expect_x = 0.75 * t.cos() - 0.25 * t.sin();
        let expect_y = 0.25 * t.cos() + 0.75 * t.sin();
        assert!((x.to_real() - expect_x).abs() < 2.0f64.powi(-7));
        assert!((y.to_real() - expect_y).abs() < 2.0f64.powi(-7));
        assert!(ops.multiplies >= 4);
    }
}
