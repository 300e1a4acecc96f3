//! Elementary-angle-set recoding: express a known rotation angle as a
//! short signed combination of atan(2^-i) terms. The greedy pass picks the
//! elementary angle closest to the residual at every step, so a rotation
//! that is known ahead of time needs far fewer micro-rotations than the
//! sequential engine. Schedules are memoized per (angle word, accuracy).

use std::collections::HashMap;
use std::sync::RwLock;

use crate::engine::{self, EngineConfig, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;
use crate::variants::{
    MicroRotationSchedule, RotationOutcome, ScheduleEntry, ScheduleSource, VariantError,
};

type CacheKey = (i64, u32, u32, u32);

static CACHE: RwLock<Option<HashMap<CacheKey, MicroRotationSchedule>>> = RwLock::new(None);

/// Greedy recoding of `theta` to `n_bits` accuracy: repeatedly subtract
/// the signed elementary angle minimizing the residual until it drops
/// below 2^-n_bits. The same shift index may appear more than once, and
/// the entry count never exceeds n_bits.
pub fn angle_recode_greedy(theta: FixedWord, n_bits: u32) -> MicroRotationSchedule {
    let key: CacheKey = (
        theta.raw(),
        theta.fmt().total_bits(),
        theta.fmt().frac_bits(),
        n_bits,
    );
    if let Some(map) = CACHE.read().expect("recoding cache poisoned").as_ref() {
        if let Some(hit) = map.get(&key) {
            return hit.clone();
        }
    }

    let schedule = recode(theta, n_bits);
    let mut guard = CACHE.write().expect("recoding cache poisoned");
    guard
        .get_or_insert_with(HashMap::new)
        .insert(key, schedule.clone());
    schedule
}

fn recode(theta: FixedWord, n_bits: u32) -> MicroRotationSchedule {
    let fmt = theta.fmt();
    let tol = (2.0f64).powi(-(n_bits as i32));
    let mut residual = theta.to_real();
    let mut entries = Vec::new();

    while residual.abs() >= tol && entries.len() < n_bits as usize {
        let mut best = (f64::INFINITY, 0u32, 1i8);
        for i in 0..n_bits {
            let alpha =
                engine::elementary_angle_real(Trajectory::Circular, i).expect("circular angle");
            for sigma in [1i8, -1] {
                let d = (residual - sigma as f64 * alpha).abs();
                if d < best.0 {
                    best = (d, i, sigma);
                }
            }
        }
        let (_, i, sigma) = best;
        let alpha = engine::elementary_angle_real(Trajectory::Circular, i).unwrap();
        residual -= sigma as f64 * alpha;
        entries.push(ScheduleEntry {
            index: i,
            sigma,
            angle: engine::elementary_angle(Trajectory::Circular, i, fmt).unwrap(),
        });
    }

    MicroRotationSchedule::new(entries, ScheduleSource::Recoding)
}

/// Residual angle left by a schedule, against exact elementary angles.
pub fn schedule_residual(theta: f64, schedule: &MicroRotationSchedule) -> f64 {
    let applied: f64 = schedule
        .entries
        .iter()
        .map(|e| {
            e.sigma as f64 * engine::elementary_angle_real(Trajectory::Circular, e.index).unwrap()
        })
        .sum();
    theta - applied
}

/// A recoded schedule may repeat index 0, and two 45 degree rotations
/// double the vector before correction; one guard integer bit absorbs
/// that.
fn wide_format(fmt: QFormat) -> QFormat {
    QFormat::new(fmt.total_bits() + 1, fmt.frac_bits()).expect("guarded recoding format fits")
}

fn narrow(w: FixedWord, fmt: QFormat) -> FixedWord {
    FixedWord::from_raw(w.raw().clamp(fmt.min_raw(), fmt.max_raw()), fmt).expect("clamped raw fits")
}

fn apply_uncorrected(
    v: (FixedWord, FixedWord),
    schedule: &MicroRotationSchedule,
    wide: QFormat,
) -> (FixedWord, FixedWord, OpCount) {
    let mut x = FixedWord::from_raw(v.0.raw(), wide).expect("widening is lossless");
    let mut y = FixedWord::from_raw(v.1.raw(), wide).expect("widening is lossless");
    let mut ops = OpCount::zero();
    for e in &schedule.entries {
        if e.sigma == 0 {
            continue;
        }
        let dx = y.shr_clamped(e.index);
        let dy = x.shr_clamped(e.index);
        let (nx, ny) = if e.sigma > 0 {
            (x - dx, y + dy)
        } else {
            (x + dx, y - dy)
        };
        x = nx;
        y = ny;
        ops.adds += 2;
        ops.shifts += 2;
        ops.iterations += 1;
    }
    (x, y, ops)
}

/// Rotate `v` through a recoded schedule with the matching scale factor.
pub fn apply_schedule(
    v: (FixedWord, FixedWord),
    schedule: &MicroRotationSchedule,
    fmt: QFormat,
) -> Result<(FixedWord, FixedWord, OpCount), VariantError> {
    let wide = wide_format(fmt);
    let (mut x, mut y, mut ops) = apply_uncorrected(v, schedule, wide);
    if !schedule.is_empty() {
        let k = engine::scale_factor_for(Trajectory::Circular, schedule.sigma_pairs(), false);
        let kq =
            FixedWord::from_real(k, wide).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
        x = x * kq;
        y = y * kq;
        ops.multiplies += 2;
    }
    Ok((narrow(x, fmt), narrow(y, fmt), ops))
}

/// Variant dispatch: recode to the format's fraction depth and apply.
pub fn rotate_unit(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let fmt = cfg.fmt;
    let zq =
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let schedule = angle_recode_greedy(zq, fmt.frac_bits());
    let one = FixedWord::one(fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;

    let wide = wide_format(fmt);
    let (x, y, ops) = apply_uncorrected((one, FixedWord::zero(fmt)), &schedule, wide);
    let executed: Vec<(u32, i8)> = schedule.sigma_pairs().collect();
    let out =
        super::finish_with_correction(x, y, &executed, false, wide, ops, RunStatus::Converged)?;
    Ok(RotationOutcome {
        cos: narrow(out.cos, fmt),
        sin: narrow(out.sin, fmt),
        ..out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt() -> QFormat {
        QFormat::q2_14()
    }

    fn w(v: f64) -> FixedWord {
        FixedWord::from_real(v, fmt()).unwrap()
    }

    #[test]
    fn single_elementary_angle_is_one_entry() {
        let theta = std::f64::consts::FRAC_PI_4;
        let schedule = angle_recode_greedy(w(theta), 14);
        assert_eq!(schedule.len(), 1);
        assert_eq!(schedule.entries[0].index, 0);
        assert_eq!(schedule.entries[0].sigma, 1);
        // residual against the exact atan is only the input quantization
        assert!(schedule_residual(w(theta).to_real(), &schedule).abs() < fmt().ulp());
    }

    #[test]
    fn sum_of_two_elementary_angles_is_two_entries() {
        let theta = std::f64::consts::FRAC_PI_4 + 0.125f64.atan();
        let schedule = angle_recode_greedy(w(theta), 14);
        assert_eq!(schedule.len(), 2);
    }

    #[test]
    fn dct_angle_c_recodes_to_half_depth() {
        let theta = 33.75f64.to_radians();
        let schedule = angle_recode_greedy(w(theta), 14);
        assert!(schedule.len() <= 7, "got {} entries", schedule.len());
    }

    #[test]
    fn schedule_reproduces_cosine() {
        for k in 1..8 {
            let theta = k as f64 * std::f64::consts::PI / 16.0;
            let schedule = angle_recode_greedy(w(theta), 14);
            let (x, y, _) = apply_schedule((w(1.0), w(0.0)), &schedule, fmt()).unwrap();
            assert!(
                (x.to_real() - theta.cos()).abs() < 2.0f64.powi(-10),
                "cos at k={k}"
            );
            assert!(
                (y.to_real() - theta.sin()).abs() < 2.0f64.powi(-10),
                "sin at k={k}"
            );
        }
    }

    #[test]
    fn residual_below_accuracy_bound() {
        for deg in [-80.0f64, -33.0, -5.0, 12.7, 45.0, 61.3, 88.0] {
            let theta = deg.to_radians();
            let schedule = angle_recode_greedy(w(theta), 14);
            let res = schedule_residual(w(theta).to_real(), &schedule);
            assert!(res.abs() < 2.0f64.powi(-14), "{deg} deg: residual {res}");
            assert!(schedule.len() <= 14);
        }
    }

    #[test]
    fn cache_does_not_change_results() {
        let theta = w(0.912);
        let first = angle_recode_greedy(theta, 14);
        let second = angle_recode_greedy(theta, 14);
        assert_eq!(first, second);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn any_angle_in_range_recodes_within_depth_and_tolerance(
                deg in -89.0f64..89.0
            ) {
                let theta = deg.to_radians();
                let schedule = angle_recode_greedy(w(theta), 14);
                prop_assert!(schedule.len() <= 14);
                let res = schedule_residual(w(theta).to_real(), &schedule);
                prop_assert!(res.abs() < 2.0f64.powi(-14));

                let one = FixedWord::one(fmt()).unwrap();
                let (x, y, ops) =
                    apply_schedule((one, FixedWord::zero(fmt())), &schedule, fmt()).unwrap();
                prop_assert!((x.to_real() - theta.cos()).abs() < 2.0f64.powi(-10));
                prop_assert!((y.to_real() - theta.sin()).abs() < 2.0f64.powi(-10));
                prop_assert_eq!(ops.iterations as usize, schedule.len());
            }
        }
    }
}
