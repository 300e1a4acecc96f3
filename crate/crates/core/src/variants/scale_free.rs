//! Scale-free CORDIC: third-order Taylor rotation stages scheduled by a
//! leading-one bit detector, anticlockwise micro-rotations only, no
//! correction multiply anywhere.

use crate::engine::{EngineConfig, RunStatus};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;
use crate::variants::{
    MicroRotationSchedule, RotationOutcome, ScheduleEntry, ScheduleSource, VariantError,
};

/// One detector stage: locate the leading one of `z_in` (bit 15 is
/// position 15), emit shift `16 - position`, clear the bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LobStage {
    pub stage: u32,
    pub z_in: u16,
    pub lead_one_position: u32,
    pub shift: u32,
    pub z_out: u16,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LobTrace {
    pub stages: Vec<LobStage>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScaleFreeError {
    BadAngleWord(String),
    BelowRocMinimum { shift: u32, min_shift: u32 },
}

impl std::fmt::Display for ScaleFreeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScaleFreeError::BadAngleWord(msg) => write!(f, "bad angle word: {msg}"),
            ScaleFreeError::BelowRocMinimum { shift, min_shift } => write!(
                f,
                "stage shift {shift} below the region-of-convergence minimum {min_shift}; \
                 large angles exceed the small-angle approximation"
            ),
        }
    }
}

impl std::error::Error for ScaleFreeError {}

/// Decompose a nonnegative 16-fraction-bit angle word into its set bits,
/// most significant first. Each stage becomes one anticlockwise
/// micro-rotation of 2^-shift radians; zero input yields an empty
/// schedule.
pub fn lob_detect(z: FixedWord) -> Result<(MicroRotationSchedule, LobTrace), ScaleFreeError> {
    let fmt = z.fmt();
    if fmt != QFormat::q0_16() {
        return Err(ScaleFreeError::BadAngleWord(format!(
            "expected {} angle word, got {}",
            QFormat::q0_16(),
            fmt
        )));
    }
    if z.raw() < 0 || z.raw() > 0xFFFF {
        return Err(ScaleFreeError::BadAngleWord(format!(
            "detector input must be a nonnegative 16-bit payload, got {}",
            z.raw()
        )));
    }

    let mut word = z.raw() as u16;
    let mut stages = Vec::new();
    let mut entries = Vec::new();
    let mut stage = 1;
    while word != 0 {
        let position = 15 - word.leading_zeros();
        let shift = 16 - position;
        let z_out = word & !(1u16 << position);
        stages.push(LobStage {
            stage,
            z_in: word,
            lead_one_position: position,
            shift,
            z_out,
        });
        entries.push(ScheduleEntry {
            index: shift,
            sigma: 1,
            angle: FixedWord::from_raw(1i64 << position, fmt).expect("single bit fits"),
        });
        word = z_out;
        stage += 1;
    }

    Ok((
        MicroRotationSchedule::new(entries, ScheduleSource::Lobd),
        LobTrace { stages },
    ))
}

/// Result of a scale-free rotation; `worst_shift` is the smallest stage
/// shift that ran, so callers can enforce a stricter region of
/// convergence than the engine's own minimum.
#[derive(Debug, Clone, Copy)]
pub struct ScaleFreeOutput {
    pub x: FixedWord,
    pub y: FixedWord,
    pub ops: OpCount,
    pub worst_shift: Option<u32>,
}

/// Apply the third-order Taylor stage for each detector entry:
///
/// ```text
/// x' = (1 - 2^(-2i-1)) x - (2^-i - c6 * 2^-3i) y
/// y' = (2^-i - c6 * 2^-3i) x + (1 - 2^(-2i-1)) y
/// ```
///
/// The 1/6 cubic coefficient is realized as 2^-3 + 2^-5 so the whole stage
/// stays shift-add. No correction multiply is ever applied; the deviation
/// of the output norm from the input norm is the variant's documented
/// error.
pub fn scale_free_rotate(
    theta: FixedWord,
    v: (FixedWord, FixedWord),
    min_shift: u32,
) -> Result<ScaleFreeOutput, ScaleFreeError> {
    let (schedule, _) = lob_detect(theta)?;
    let mut x = v.0;
    let mut y = v.1;
    let mut ops = OpCount::zero();
    let mut worst: Option<u32> = None;

    for entry in &schedule.entries {
        let i = entry.index;
        if i < min_shift {
            return Err(ScaleFreeError::BelowRocMinimum {
                shift: i,
                min_shift,
            });
        }
        worst = Some(worst.map_or(i, |w| w.min(i)));

        // c6 * 2^-3i realized as (w >> 3i+3) + (w >> 3i+5)
        let x_cub = x.shr_clamped(3 * i + 3) + x.shr_clamped(3 * i + 5);
        let y_cub = y.shr_clamped(3 * i + 3) + y.shr_clamped(3 * i + 5);
        let nx = x - x.shr_clamped(2 * i + 1) - y.shr_clamped(i) + y_cub;
        let ny = y - y.shr_clamped(2 * i + 1) + x.shr_clamped(i) - x_cub;
        x = nx;
        y = ny;
        ops.adds += 8;
        ops.shifts += 8;
        ops.iterations += 1;
    }

    Ok(ScaleFreeOutput {
        x,
        y,
        ops,
        worst_shift: worst,
    })
}

/// Variant dispatch: fold |theta| into the detector's range. The sign is
/// absorbed by the even/odd symmetry of cosine and sine, and angles past
/// 45 degrees run on the complement with swapped outputs, which also keeps
/// every stage inside the small-angle regime the Taylor form wants.
pub fn rotate_unit(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let negate_sin = theta < 0.0;
    let mut t = theta.abs();
    if t > std::f64::consts::FRAC_PI_2 + 1e-12 {
        return Err(VariantError::OutOfRange(format!(
            "scale-free rotation expects |theta| <= pi/2, got {theta}"
        )));
    }
    let swap = t > std::f64::consts::FRAC_PI_4;
    if swap {
        t = std::f64::consts::FRAC_PI_2 - t;
    }

    let zq = FixedWord::from_real(t, QFormat::q0_16())
        .map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let one = FixedWord::one(cfg.fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let out = scale_free_rotate(zq, (one, FixedWord::zero(cfg.fmt)), 1)
        .map_err(|e| VariantError::OutOfRange(e.to_string()))?;

    let (mut c, mut s) = (out.x, out.y);
    if swap {
        std::mem::swap(&mut c, &mut s);
    }
    if negate_sin {
        s = -s;
    }
    Ok(RotationOutcome {
        cos: c,
        sin: s,
        cos_pre: c.to_real(),
        sin_pre: s.to_real(),
        ops: out.ops,
        status: RunStatus::Converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q16(raw: i64) -> FixedWord {
        FixedWord::from_raw(raw, QFormat::q0_16()).unwrap()
    }

    #[test]
    fn lobd_first_stage_of_27_degrees() {
        let (_, trace) = lob_detect(q16(0x38A3)).unwrap();
        let s = trace.stages[0];
        assert_eq!(s.lead_one_position, 13);
        assert_eq!(s.shift, 3);
        assert_eq!(s.z_out, 0x18A3);
    }

    #[test]
    fn lobd_tail_stages() {
        let (_, trace) = lob_detect(q16(0x0003)).unwrap();
        assert_eq!(trace.stages.len(), 2);
        assert_eq!(
            (
                trace.stages[0].lead_one_position,
                trace.stages[0].shift,
                trace.stages[0].z_out
            ),
            (1, 15, 0x0001)
        );
        // forced continuation down to the last set bit
        assert_eq!(
            (
                trace.stages[1].lead_one_position,
                trace.stages[1].shift,
                trace.stages[1].z_out
            ),
            (0, 16, 0x0000)
        );
    }

    #[test]
    fn lobd_zero_is_empty() {
        let (schedule, trace) = lob_detect(q16(0)).unwrap();
        assert!(schedule.is_empty());
        assert!(trace.stages.is_empty());
    }

    #[test]
    fn lobd_rejects_wrong_format_and_sign() {
        let w = FixedWord::from_real(0.25, QFormat::q2_14()).unwrap();
        assert!(lob_detect(w).is_err());
        assert!(lob_detect(q16(-1)).is_err());
    }

    #[test]
    fn lobd_roundtrip_is_binary_decomposition() {
        for raw in [0x78A3i64, 0x0001, 0x8000 - 1, 0x5555, 1, 0xFFFF] {
            let (schedule, _) = lob_detect(q16(raw)).unwrap();
            let sum: i64 = schedule.entries.iter().map(|e| e.angle.raw()).sum();
            assert_eq!(sum, raw);
            // entries ordered by application: shifts strictly increase
            for pair in schedule.entries.windows(2) {
                assert!(pair[0].index < pair[1].index);
            }
        }
    }

    #[test]
    fn zero_angle_is_identity() {
        let fmt = QFormat::q2_14();
        let one = FixedWord::one(fmt).unwrap();
        let out = scale_free_rotate(q16(0), (one, FixedWord::zero(fmt)), 1).unwrap();
        assert_eq!(out.x, one);
        assert_eq!(out.y.raw(), 0);
        assert_eq!(out.ops, OpCount::zero());
        assert_eq!(out.worst_shift, None);
    }

    #[test]
    fn single_small_rotation_matches_taylor_terms() {
        // theta = 2^-4: one stage, shift 4. Against the exact third-order
        // entries x' = 1 - 2^-9 and y' = 2^-4 - (1/6) 2^-12, the realized
        // datapath lands within two ulps.
        let fmt = QFormat::q2_14();
        let theta = FixedWord::from_real(2.0f64.powi(-4), QFormat::q0_16()).unwrap();
        let one = FixedWord::one(fmt).unwrap();
        let out = scale_free_rotate(theta, (one, FixedWord::zero(fmt)), 1).unwrap();
        let x_expect = 1.0 - 2.0f64.powi(-9);
        let y_expect = 2.0f64.powi(-4) - (1.0 / 6.0) * 2.0f64.powi(-12);
        assert!((out.x.to_real() - x_expect).abs() <= 2.0 * fmt.ulp());
        assert!((out.y.to_real() - y_expect).abs() <= 2.0 * fmt.ulp());
        assert_eq!(out.worst_shift, Some(4));
    }

    #[test]
    fn rotation_27_degrees_within_documented_band() {
        let theta = 27.0f64.to_radians();
        let zq = FixedWord::from_real(theta, QFormat::q0_16()).unwrap();
        let fmt = QFormat::q2_14();
        let one = FixedWord::one(fmt).unwrap();
        let out = scale_free_rotate(zq, (one, FixedWord::zero(fmt)), 1).unwrap();
        // accuracy limited by the stage with shift 2; two to the minus
        // seventh is the documented band at this angle
        assert!((out.x.to_real() - theta.cos()).abs() < 2.0f64.powi(-7));
        assert!((out.y.to_real() - theta.sin()).abs() < 2.0f64.powi(-7));
        assert_eq!(out.worst_shift, Some(2));
        assert_eq!(out.ops.multiplies, 0);
    }

    #[test]
    fn norm_preserved_without_correction() {
        // the defining claim: no correction multiply, norm within 2^-7
        let fmt = QFormat::q2_14();
        let one = FixedWord::one(fmt).unwrap();
        for deg in [3.0f64, 9.5, 14.0, 21.0, 27.0, 33.0, 41.0, 44.9] {
            let zq = FixedWord::from_real(deg.to_radians(), QFormat::q0_16()).unwrap();
            let out = scale_free_rotate(zq, (one, FixedWord::zero(fmt)), 1).unwrap();
            let norm = (out.x.to_real().powi(2) + out.y.to_real().powi(2)).sqrt();
            assert!(
                (norm - 1.0).abs() < 2.0f64.powi(-7),
                "{deg} deg: norm {norm}"
            );
            assert_eq!(out.ops.multiplies, 0);
        }
    }

    #[test]
    fn roc_minimum_is_enforced_when_requested() {
        let theta = 27.0f64.to_radians(); // first stage shift is 2
        let zq = FixedWord::from_real(theta, QFormat::q0_16()).unwrap();
        let fmt = QFormat::q2_14();
        let one = FixedWord::one(fmt).unwrap();
        let err = scale_free_rotate(zq, (one, FixedWord::zero(fmt)), 3).unwrap_err();
        assert!(matches!(
            err,
            ScaleFreeError::BelowRocMinimum { shift: 2, .. }
        ));
    }

    #[test]
    fn dispatch_folds_large_and_negative_angles() {
        let cfg = EngineConfig::default();
        for deg in [-60.0f64, -27.0, 11.25, 78.75, 90.0] {
            let t = deg.to_radians();
            let out = rotate_unit(t, &cfg).unwrap();
            assert!(
                (out.cos.to_real() - t.cos()).abs() < 2.0f64.powi(-7),
                "cos at {deg}"
            );
            assert!(
                (out.sin.to_real() - t.sin()).abs() < 2.0f64.powi(-7),
                "sin at {deg}"
            );
        }
    }
}
