//! The conventional CORDIC engine: micro-rotation step, direction
//! selection, scale factor, and the rotation/vectoring drivers over the
//! linear, circular, and hyperbolic trajectories.
//!
//! One iteration updates the state as
//!
//! ```text
//! x' = x - m * sigma * (y >> i)
//! y' = y + sigma * (x >> i)
//! z' = z - sigma * alpha(i)
//! ```
//!
//! with trajectory curvature `m` in {+1, 0, -1} and elementary angle
//! `alpha(i)` = atan(2^-i), 2^-i, or atanh(2^-i) respectively.

use std::sync::LazyLock;

use crate::fixnum::{FixedWord, FxError, QFormat};
use crate::opcount::OpCount;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trajectory {
    Circular,
    Linear,
    Hyperbolic,
}

impl Trajectory {
    /// Curvature constant of the x-update.
    pub fn m(&self) -> i8 {
        match self {
            Trajectory::Circular => 1,
            Trajectory::Linear => 0,
            Trajectory::Hyperbolic => -1,
        }
    }

    /// First usable shift index. atanh(2^0) diverges, so hyperbolic
    /// iteration starts at 1.
    pub fn first_index(&self) -> u32 {
        match self {
            Trajectory::Hyperbolic => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rotation,
    Vectoring,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CordicState {
    pub x: FixedWord,
    pub y: FixedWord,
    pub z: FixedWord,
    pub i: u32,
}

impl CordicState {
    pub fn new(x: FixedWord, y: FixedWord, z: FixedWord) -> Self {
        CordicState { x, y, z, i: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Converged,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOutput {
    pub state: CordicState,
    pub ops: OpCount,
    pub status: RunStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    HyperbolicIndexZero,
    BadConfig(String),
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineError::HyperbolicIndexZero => {
                write!(
                    f,
                    "hyperbolic elementary angle undefined at index 0 (atanh(1) diverges)"
                )
            }
            EngineError::BadConfig(msg) => write!(f, "engine configuration: {msg}"),
        }
    }
}

impl std::error::Error for EngineError {}

/// Engine configuration; the reconfigurability surface. One engine serves
/// both modes and all three trajectories.
#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    pub mode: Mode,
    pub trajectory: Trajectory,
    pub fmt: QFormat,
    pub max_iterations: u32,
    /// Rotation-mode convergence threshold, in ulps of the z word.
    pub z_epsilon_ulps: u32,
    /// Vectoring-mode convergence threshold, in ulps of the y word.
    pub y_epsilon_ulps: u32,
    pub scale_correction: bool,
}

impl EngineConfig {
    pub fn new(
        mode: Mode,
        trajectory: Trajectory,
        fmt: QFormat,
        max_iterations: u32,
    ) -> Result<Self, EngineError> {
        let cfg = EngineConfig {
            mode,
            trajectory,
            fmt,
            max_iterations,
            z_epsilon_ulps: 4,
            y_epsilon_ulps: 4,
            scale_correction: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.max_iterations == 0 {
            return Err(EngineError::BadConfig(
                "max_iterations must be positive".into(),
            ));
        }
        // Indices past frac_bits + 1 only stir quantization noise.
        if self.max_iterations > self.fmt.frac_bits() + 2 {
            return Err(EngineError::BadConfig(format!(
                "max_iterations {} exceeds useful depth {} of {}",
                self.max_iterations,
                self.fmt.frac_bits() + 2,
                self.fmt
            )));
        }
        if self.z_epsilon_ulps == 0 || self.y_epsilon_ulps == 0 {
            return Err(EngineError::BadConfig(
                "epsilon must be at least one ulp".into(),
            ));
        }
        Ok(())
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_trajectory(mut self, trajectory: Trajectory) -> Self {
        self.trajectory = trajectory;
        self
    }

    pub fn with_correction(mut self, on: bool) -> Self {
        self.scale_correction = on;
        self
    }
}

impl Default for EngineConfig {
    /// Q2.14, sixteen iterations, four-ulp thresholds, correction on.
    fn default() -> Self {
        EngineConfig {
            mode: Mode::Rotation,
            trajectory: Trajectory::Circular,
            fmt: QFormat::q2_14(),
            max_iterations: 16,
            z_epsilon_ulps: 4,
            y_epsilon_ulps: 4,
            scale_correction: true,
        }
    }
}

const TABLE_DEPTH: usize = 64;

static ATAN_TABLE: LazyLock<[f64; TABLE_DEPTH]> = LazyLock::new(|| {
    let mut t = [0.0; TABLE_DEPTH];
    for (i, slot) in t.iter_mut().enumerate() {
        *slot = (2.0f64).powi(-(i as i32)).atan();
    }
    t
});

static ATANH_TABLE: LazyLock<[f64; TABLE_DEPTH]> = LazyLock::new(|| {
    let mut t = [0.0; TABLE_DEPTH];
    for (i, slot) in t.iter_mut().enumerate().skip(1) {
        *slot = (2.0f64).powi(-(i as i32)).atanh();
    }
    t
});

/// Elementary angle for one micro-rotation, as an exact real.
pub fn elementary_angle_real(trajectory: Trajectory, i: u32) -> Result<f64, EngineError> {
    match trajectory {
        Trajectory::Circular => Ok(ATAN_TABLE[(i as usize).min(TABLE_DEPTH - 1)]),
        Trajectory::Linear => Ok((2.0f64).powi(-(i as i32))),
        Trajectory::Hyperbolic => {
            if i == 0 {
                Err(EngineError::HyperbolicIndexZero)
            } else {
                Ok(ATANH_TABLE[(i as usize).min(TABLE_DEPTH - 1)])
            }
        }
    }
}

/// Elementary angle quantized to the given format.
pub fn elementary_angle(
    trajectory: Trajectory,
    i: u32,
    fmt: QFormat,
) -> Result<FixedWord, EngineError> {
    let v = elementary_angle_real(trajectory, i)?;
    Ok(FixedWord::from_real(v, fmt).expect("elementary angle fits any signed format"))
}

/// Direction digit. Rotation mode follows the sign of the residual angle
/// (+1 at zero); vectoring drives y toward zero assuming x > 0.
pub fn sigma_select(mode: Mode, state: &CordicState) -> i8 {
    match mode {
        Mode::Rotation => {
            if state.z.raw() >= 0 {
                1
            } else {
                -1
            }
        }
        Mode::Vectoring => {
            if state.y.raw() < 0 {
                1
            } else {
                -1
            }
        }
    }
}

fn apply_sigma(w: FixedWord, sigma: i8) -> FixedWord {
    if sigma >= 0 {
        w
    } else {
        w.negate()
    }
}

/// One micro-rotation at the state's own index; the index advances by one.
/// Saturation flags propagate through the updated words.
pub fn micro_rotate(state: &CordicState, sigma: i8, trajectory: Trajectory) -> CordicState {
    micro_rotate_at(state, sigma, trajectory, state.i)
}

/// Micro-rotation with an explicit shift index, used by the hyperbolic
/// repeat schedule and the schedule-driven variants.
pub fn micro_rotate_at(
    state: &CordicState,
    sigma: i8,
    trajectory: Trajectory,
    index: u32,
) -> CordicState {
    debug_assert!(sigma == 1 || sigma == -1);
    let m = trajectory.m();
    let dx = state.y.try_shr(index).expect("shift within word");
    let dy = state.x.try_shr(index).expect("shift within word");
    let alpha = elementary_angle(trajectory, index, state.z.fmt()).expect("valid index");

    let x = match m {
        1 => state.x - apply_sigma(dx, sigma),
        -1 => state.x + apply_sigma(dx, sigma),
        _ => state.x,
    };
    let y = state.y + apply_sigma(dy, sigma);
    let z = state.z - apply_sigma(alpha, sigma);
    CordicState {
        x,
        y,
        z,
        i: index + 1,
    }
}

/// Scale factor over an executed schedule: the product of
/// 1/sqrt(1 + sigma^2 * r^-2i) per rotation (1/sqrt(1 - 2^-2i) on the
/// hyperbolic trajectory), with sigma = 0 entries contributing 1.
/// Multiplying the raw outputs by this factor undoes the pseudo-rotation
/// length growth. Computed in double precision and quantized once.
pub fn scale_factor_for<I>(trajectory: Trajectory, entries: I, radix4: bool) -> f64
where
    I: IntoIterator<Item = (u32, i8)>,
{
    let mut k = 1.0f64;
    for (i, sigma) in entries {
        if sigma == 0 {
            continue;
        }
        let s2 = (sigma as f64) * (sigma as f64);
        let base = if radix4 {
            (4.0f64).powi(-2 * i as i32)
        } else {
            (2.0f64).powi(-2 * i as i32)
        };
        k *= match trajectory {
            Trajectory::Hyperbolic => 1.0 / (1.0 - s2 * base).sqrt(),
            _ => 1.0 / (1.0 + s2 * base).sqrt(),
        };
    }
    k
}

/// Scale factor for `n` uniform radix-2 circular rotations starting at
/// index 0.
pub fn scale_factor_uniform(n: u32) -> f64 {
    scale_factor_for(Trajectory::Circular, (0..n).map(|i| (i, 1i8)), false)
}

/// Iteration index sequence for a trajectory. The hyperbolic sequence
/// repeats indices 4, 13, and 40 once each; without the repeats the
/// hyperbolic angle sum falls short and vectoring stalls.
pub fn index_sequence(trajectory: Trajectory, max_iterations: u32) -> Vec<u32> {
    let mut out = Vec::new();
    match trajectory {
        Trajectory::Hyperbolic => {
            for i in 1..max_iterations {
                out.push(i);
                if i == 4 || i == 13 || i == 40 {
                    out.push(i);
                }
            }
        }
        _ => out.extend(0..max_iterations),
    }
    out
}

fn converged(cfg: &EngineConfig, state: &CordicState) -> bool {
    match cfg.mode {
        Mode::Rotation => state.z.abs_raw() <= cfg.z_epsilon_ulps as i64,
        Mode::Vectoring => state.y.abs_raw() <= cfg.y_epsilon_ulps as i64,
    }
}

/// Drive the engine until convergence or budget exhaustion. Non-convergence
/// is reported through the status, never as an error. With correction on,
/// x and y are multiplied once by the quantized scale factor matching the
/// schedule that actually executed.
pub fn run(cfg: &EngineConfig, init: CordicState) -> RunOutput {
    debug_assert!(cfg.validate().is_ok());
    let mut state = init;
    let mut ops = OpCount::zero();
    let mut executed: Vec<(u32, i8)> = Vec::new();

    for index in index_sequence(cfg.trajectory, cfg.max_iterations) {
        if converged(cfg, &state) {
            break;
        }
        let sigma = sigma_select(cfg.mode, &state);
        state = micro_rotate_at(&state, sigma, cfg.trajectory, index);
        executed.push((index, sigma));
        match cfg.trajectory {
            Trajectory::Linear => {
                ops.adds += 2;
                ops.shifts += 1;
            }
            _ => {
                ops.adds += 3;
                ops.shifts += 2;
            }
        }
        ops.iterations += 1;
    }

    let status = if converged(cfg, &state) {
        RunStatus::Converged
    } else {
        RunStatus::BudgetExhausted
    };

    if cfg.scale_correction && !executed.is_empty() && cfg.trajectory != Trajectory::Linear {
        let k = scale_factor_for(cfg.trajectory, executed.iter().copied(), false);
        let kq = FixedWord::from_real(k, cfg.fmt)
            .expect("scale factor fits a format with an integer bit");
        state.x = state.x * kq;
        state.y = state.y * kq;
        ops.multiplies += 2;
    }

    RunOutput { state, ops, status }
}

/// Convenience: quantized scale factor ready for a final multiply.
pub fn quantized_scale_factor(
    trajectory: Trajectory,
    entries: &[(u32, i8)],
    radix4: bool,
    fmt: QFormat,
) -> Result<FixedWord, FxError> {
    FixedWord::from_real(
        scale_factor_for(trajectory, entries.iter().copied(), radix4),
        fmt,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn fmt() -> QFormat {
        QFormat::q2_14()
    }

    fn w(v: f64) -> FixedWord {
        FixedWord::from_real(v, fmt()).unwrap()
    }

    #[test]
    fn elementary_angles() {
        let a0 = elementary_angle(Trajectory::Circular, 0, fmt()).unwrap();
        assert!((a0.to_real() - std::f64::consts::FRAC_PI_4).abs() <= fmt().ulp());

        let a1 = elementary_angle(Trajectory::Circular, 1, fmt()).unwrap();
        assert!((a1.to_real() - 0.4636476).abs() <= fmt().ulp());

        let l3 = elementary_angle(Trajectory::Linear, 3, fmt()).unwrap();
        assert_eq!(l3.to_real(), 0.125);

        assert!(matches!(
            elementary_angle(Trajectory::Hyperbolic, 0, fmt()),
            Err(EngineError::HyperbolicIndexZero)
        ));
    }

    #[test]
    fn sigma_rules() {
        let s = CordicState::new(w(1.0), w(0.0), w(0.3));
        assert_eq!(sigma_select(Mode::Rotation, &s), 1);
        let s = CordicState::new(w(1.0), w(0.0), w(0.0));
        assert_eq!(sigma_select(Mode::Rotation, &s), 1); // tie-break
        let s = CordicState::new(w(1.0), w(-0.2), w(0.0));
        assert_eq!(sigma_select(Mode::Vectoring, &s), 1);
        let s = CordicState::new(w(1.0), w(0.2), w(0.0));
        assert_eq!(sigma_select(Mode::Vectoring, &s), -1);
    }

    #[test]
    fn micro_rotate_45_degrees_exhausts_in_one_step() {
        // atan(2^0) quantizes to the same word as the 45 degree input, so a
        // single micro-rotation leaves z exactly zero.
        let s = CordicState::new(w(1.0), w(0.0), w(std::f64::consts::FRAC_PI_4));
        let n = micro_rotate(&s, 1, Trajectory::Circular);
        assert_eq!(n.x, w(1.0));
        assert_eq!(n.y, w(1.0));
        assert_eq!(n.z.raw(), 0);
        assert_eq!(n.i, 1);
    }

    #[test]
    fn micro_rotate_linear_leaves_x() {
        let s = CordicState::new(w(0.75), w(0.5), w(0.0));
        let n = micro_rotate(&s, -1, Trajectory::Linear);
        assert_eq!(n.x, w(0.75));
        assert_eq!(n.y, w(0.5 - 0.75));
        assert_eq!(n.z, w(1.0)); // z - (-1) * 2^0
    }

    /// Replays the update equations on exact dyadic rationals. Shifts are
    /// exact divisions here, so this is the unbounded-precision reference
    /// for the quantized datapath.
    fn rational_replay(init: (f64, f64), sigmas: &[i8]) -> (BigRational, BigRational) {
        let big = |v: f64| {
            BigRational::new(
                BigInt::from((v * 16384.0).round() as i64),
                BigInt::from(16384),
            )
        };
        let mut x = big(init.0);
        let mut y = big(init.1);
        for (i, &s) in sigmas.iter().enumerate() {
            let shift = BigRational::new(BigInt::from(1), BigInt::from(1i64 << i));
            let sg = BigRational::from(BigInt::from(s as i64));
            let nx = &x - &sg * &shift * &y;
            let ny = &y + &sg * &shift * &x;
            x = nx;
            y = ny;
        }
        (x, y)
    }

    #[test]
    fn two_step_rotation_matches_rational_replay() {
        // 0.4712389 rad (27 degrees), sigmas +1 then -1; every shift in the
        // first two steps is exact, so fixed point and rationals agree
        // bit for bit.
        let z0 = w(0.4712389);
        let s0 = CordicState::new(w(1.0), w(0.0), z0);
        let s1 = micro_rotate(&s0, 1, Trajectory::Circular);
        let s2 = micro_rotate(&s1, -1, Trajectory::Circular);

        let (rx, ry) = rational_replay((1.0, 0.0), &[1, -1]);
        let to_raw = |r: &BigRational| {
            let scaled = r * BigRational::from(BigInt::from(16384));
            assert!(scaled.is_integer());
            let digits = scaled.to_integer().to_string();
            digits.parse::<i64>().unwrap()
        };
        assert_eq!(s2.x.raw(), to_raw(&rx));
        assert_eq!(s2.y.raw(), to_raw(&ry));
        // and the z path: z2 = z0 - atan(1) + atan(0.5), all quantized
        let a0 = elementary_angle(Trajectory::Circular, 0, fmt()).unwrap();
        let a1 = elementary_angle(Trajectory::Circular, 1, fmt()).unwrap();
        assert_eq!(s2.z.raw(), z0.raw() - a0.raw() + a1.raw());
    }

    #[test]
    fn pseudo_rotation_norm_growth_is_sqrt_term() {
        // After one exact-arithmetic micro-rotation at index i the squared
        // norm grows by exactly (1 + 2^-2i).
        for i in 0..8u32 {
            let (rx, ry) = rational_replay((0.75, 0.5), &[]);
            let shift = BigRational::new(BigInt::from(1), BigInt::from(1i64 << i));
            let nx = &rx - &shift * &ry;
            let ny = &ry + &shift * &rx;
            let before = &rx * &rx + &ry * &ry;
            let after = &nx * &nx + &ny * &ny;
            let growth = &after / &before;
            let expect = BigRational::from(BigInt::from(1)) + &shift * &shift;
            assert_eq!(growth, expect, "index {i}");
        }
    }

    #[test]
    fn scale_factor_values() {
        assert!((scale_factor_uniform(1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        // monotone decreasing toward the classical limit; past n = 27 the
        // per-step factor rounds to 1.0 in doubles, so equality is allowed
        let mut prev = f64::INFINITY;
        for n in 1..=30 {
            let k = scale_factor_uniform(n);
            assert!(k <= prev);
            if n <= 20 {
                assert!(k < prev);
            }
            prev = k;
        }
        assert!((scale_factor_uniform(30) - 0.6072529350088813).abs() < 1e-12);
        // empty schedule contributes nothing
        assert_eq!(
            scale_factor_for(Trajectory::Circular, [(0, 0i8), (3, 0)], false),
            1.0
        );
        // radix-4 entry with sigma = 2 at index 0
        let k = scale_factor_for(Trajectory::Circular, [(0u32, 2i8)], true);
        assert!((k - 1.0 / 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn run_zero_angle_is_identity() {
        let cfg = EngineConfig::default();
        let init = CordicState::new(w(1.0), w(0.0), w(0.0));
        let out = run(&cfg, init);
        assert_eq!(out.status, RunStatus::Converged);
        assert_eq!(out.state.x, w(1.0));
        assert_eq!(out.state.y, w(0.0));
        assert_eq!(out.ops.iterations, 0);
        assert_eq!(out.ops.multiplies, 0);
    }

    #[test]
    fn run_rotation_60_degrees() {
        let cfg = EngineConfig::default();
        let theta = 60.0f64.to_radians();
        let init = CordicState::new(w(1.0), w(0.0), w(theta));
        let out = run(&cfg, init);
        assert_eq!(out.status, RunStatus::Converged);
        assert!((out.state.x.to_real() - 0.5).abs() < 2.0f64.powi(-10));
        assert!((out.state.y.to_real() - theta.sin()).abs() < 2.0f64.powi(-10));
    }

    #[test]
    fn run_vectoring_unit_diagonal() {
        // (1, 1) grows past the Q2.14 ceiling under the circular gain, so
        // this classic case runs in Q3.13.
        let fmt = QFormat::new(16, 13).unwrap();
        let cfg = EngineConfig::new(Mode::Vectoring, Trajectory::Circular, fmt, 15).unwrap();
        let one = FixedWord::from_real(1.0, fmt).unwrap();
        let init = CordicState::new(one, one, FixedWord::zero(fmt));
        let out = run(&cfg, init);
        assert_eq!(out.status, RunStatus::Converged);
        assert!((out.state.z.to_real() - std::f64::consts::FRAC_PI_4).abs() < 2.0f64.powi(-9));
        assert!((out.state.x.to_real() - 2.0f64.sqrt()).abs() < 2.0f64.powi(-9));
    }

    #[test]
    fn run_budget_exhaustion_is_a_status() {
        let mut cfg = EngineConfig::default();
        cfg.max_iterations = 2;
        cfg.z_epsilon_ulps = 1;
        let init = CordicState::new(w(1.0), w(0.0), w(60.0f64.to_radians()));
        let out = run(&cfg, init);
        assert_eq!(out.status, RunStatus::BudgetExhausted);
        assert_eq!(out.ops.iterations, 2);
    }

    #[test]
    fn rotation_residual_bounded_over_convergence_range() {
        let cfg = EngineConfig::default().with_correction(false);
        let reach: f64 = (0..16).map(|i| (2.0f64).powi(-i).atan()).sum();
        for t in 0..128 {
            let theta = -reach + 2.0 * reach * (t as f64) / 127.0;
            let init = CordicState::new(w(1.0), w(0.0), w(theta * 0.999));
            let out = run(&cfg, init);
            let bound =
                elementary_angle_real(Trajectory::Circular, 15).unwrap() + 16.0 * fmt().ulp();
            assert!(
                out.state.z.to_real().abs() <= bound,
                "theta {theta}: residual {}",
                out.state.z.to_real()
            );
        }
    }

    #[test]
    fn vectoring_then_rotation_roundtrip() {
        // Floor-truncating shifts leave a few ulps of noise on each leg;
        // ten ulps bounds the observed worst case with default thresholds.
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(1234);
        let cfg_v = EngineConfig::default().with_mode(Mode::Vectoring);
        let cfg_r = EngineConfig::default();
        let mut worst = 0i64;
        for _ in 0..500 {
            // keep norm * gain inside the Q2.14 ceiling
            let a = rng.random_range(0.1..0.8);
            let b = rng.random_range(-0.8..0.8f64);
            let (wa, wb) = (w(a), w(b));
            let vec_out = run(&cfg_v, CordicState::new(wa, wb, w(0.0)));
            let rot_out = run(
                &cfg_r,
                CordicState::new(vec_out.state.x, w(0.0), vec_out.state.z),
            );
            worst = worst
                .max((rot_out.state.x.raw() - wa.raw()).abs())
                .max((rot_out.state.y.raw() - wb.raw()).abs());
        }
        assert!(worst <= 10, "roundtrip worst deviation {worst} ulps");
    }

    #[test]
    fn opcount_accounting_is_exact() {
        let cfg = EngineConfig {
            z_epsilon_ulps: 1,
            scale_correction: false,
            ..EngineConfig::default()
        };
        let init = CordicState::new(w(1.0), w(0.0), w(1.0));
        let out = run(&cfg, init);
        let n = out.ops.iterations;
        assert_eq!(out.ops.adds, 3 * n);
        assert_eq!(out.ops.shifts, 2 * n);
        assert_eq!(out.ops.multiplies, 0);
    }

    #[test]
    fn config_validation() {
        assert!(EngineConfig::new(Mode::Rotation, Trajectory::Circular, fmt(), 16).is_ok());
        assert!(EngineConfig::new(Mode::Rotation, Trajectory::Circular, fmt(), 17).is_err());
        assert!(EngineConfig::new(Mode::Rotation, Trajectory::Circular, fmt(), 0).is_err());
    }

    #[test]
    fn hyperbolic_sequence_repeats() {
        let seq = index_sequence(Trajectory::Hyperbolic, 15);
        assert_eq!(seq.iter().filter(|&&i| i == 4).count(), 2);
        assert_eq!(seq.iter().filter(|&&i| i == 13).count(), 2);
        assert_eq!(seq.iter().filter(|&&i| i == 1).count(), 1);
        assert!(!seq.contains(&0));
    }
}
