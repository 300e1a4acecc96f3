//! Function catalog: each computation mapped onto (mode, trajectory,
//! initialization, output extraction), with quadrant folding and
//! power-of-two scale management handled here so the engine loops stay
//! branch-free.

use std::fmt;
use std::str::FromStr;

use crate::engine::{self, CordicState, EngineConfig, Mode, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, FxError};
use crate::opcount::OpCount;
use crate::variants::{self, Variant, VariantError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    SinCos,
    Tan,
    PolarToRect,
    SinhCosh,
    Tanh,
    Exp,
    Atan,
    RectToPolar,
    Divide,
    LnSqrt,
}

impl FunctionKind {
    pub fn all() -> &'static [FunctionKind] {
        use FunctionKind::*;
        &[
            SinCos,
            Tan,
            PolarToRect,
            SinhCosh,
            Tanh,
            Exp,
            Atan,
            RectToPolar,
            Divide,
            LnSqrt,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionKind::SinCos => "sin-cos",
            FunctionKind::Tan => "tan",
            FunctionKind::PolarToRect => "polar-to-rect",
            FunctionKind::SinhCosh => "sinh-cosh",
            FunctionKind::Tanh => "tanh",
            FunctionKind::Exp => "exp",
            FunctionKind::Atan => "atan",
            FunctionKind::RectToPolar => "rect-to-polar",
            FunctionKind::Divide => "divide",
            FunctionKind::LnSqrt => "ln-sqrt",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            FunctionKind::PolarToRect | FunctionKind::RectToPolar | FunctionKind::Divide => 2,
            _ => 1,
        }
    }

    /// Trig arguments arrive in degrees on the command line.
    pub fn angle_argument_indices(&self) -> &'static [usize] {
        match self {
            FunctionKind::SinCos | FunctionKind::Tan => &[0],
            FunctionKind::PolarToRect => &[1],
            _ => &[],
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for k in FunctionKind::all() {
            if k.name() == s {
                return Ok(*k);
            }
        }
        let names: Vec<_> = FunctionKind::all().iter().map(|k| k.name()).collect();
        Err(format!(
            "unknown function '{s}' (expected one of: {})",
            names.join(", ")
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionError {
    Domain(String),
    Range(String),
    DivisionByZero,
    UnsupportedVariant {
        function: FunctionKind,
        variant: Variant,
    },
    BadArity {
        function: FunctionKind,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for FunctionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionError::Domain(msg) => write!(f, "domain error: {msg}"),
            FunctionError::Range(msg) => write!(f, "range error: {msg}"),
            FunctionError::DivisionByZero => write!(f, "division by zero"),
            FunctionError::UnsupportedVariant { function, variant } => write!(
                f,
                "{function} runs on the conventional engine only, not {variant}"
            ),
            FunctionError::BadArity {
                function,
                expected,
                got,
            } => write!(f, "{function} takes {expected} argument(s), got {got}"),
        }
    }
}

impl std::error::Error for FunctionError {}

impl From<VariantError> for FunctionError {
    fn from(e: VariantError) -> Self {
        match e {
            VariantError::OutOfRange(msg) => FunctionError::Range(msg),
            VariantError::Unsupported(msg) => FunctionError::Domain(msg),
        }
    }
}

impl From<FxError> for FunctionError {
    fn from(e: FxError) -> Self {
        FunctionError::Range(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct FunctionRequest {
    pub kind: FunctionKind,
    pub args: Vec<f64>,
    pub variant: Variant,
    pub config: EngineConfig,
}

/// Named real outputs, quantized through the engine format, with the
/// format and cost attached.
#[derive(Debug, Clone)]
pub struct FunctionResult {
    pub values: Vec<(&'static str, f64)>,
    pub opcount: OpCount,
    pub status: RunStatus,
    pub config: EngineConfig,
}

impl FunctionResult {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.values
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

/// Fold any finite angle into [-pi/2, pi/2]; the bool reports whether the
/// cosine changes sign (the sine never does under this fold).
pub fn fold_angle(theta: f64) -> (f64, bool) {
    let two_pi = std::f64::consts::TAU;
    let mut t = theta % two_pi;
    if t > std::f64::consts::PI {
        t -= two_pi;
    } else if t < -std::f64::consts::PI {
        t += two_pi;
    }
    if t > std::f64::consts::FRAC_PI_2 {
        (std::f64::consts::PI - t, true)
    } else if t < -std::f64::consts::FRAC_PI_2 {
        (-std::f64::consts::PI - t, true)
    } else {
        (t, false)
    }
}

/// Largest power-of-two downscale making `norm * gain` safe in the format.
/// Returns the shift count; the caller multiplies results back up in real
/// arithmetic.
fn prescale_shift(norm: f64, cfg: &EngineConfig) -> u32 {
    let headroom = cfg.fmt.max_value() / 1.7; // circular gain plus margin
    let mut shift = 0u32;
    let mut n = norm;
    while n > headroom && shift < 63 {
        n *= 0.5;
        shift += 1;
    }
    shift
}

fn require_conventional(kind: FunctionKind, variant: Variant) -> Result<(), FunctionError> {
    if variant == Variant::Conventional || variant == Variant::Exact {
        Ok(())
    } else {
        Err(FunctionError::UnsupportedVariant {
            function: kind,
            variant,
        })
    }
}

/// cos and sin through any rotation architecture.
pub fn sin_cos(
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    if !theta.is_finite() {
        return Err(FunctionError::Domain("angle must be finite".into()));
    }
    let (t, negate_cos) = fold_angle(theta);
    let out = variants::rotate_unit(variant, t, cfg)?;
    let c = out.cos.to_real() * if negate_cos { -1.0 } else { 1.0 };
    let s = out.sin.to_real();
    Ok(FunctionResult {
        values: vec![("cos", c), ("sin", s)],
        opcount: out.ops,
        status: out.status,
        config: *cfg,
    })
}

/// R cos / R sin: rotation from (R, 0), with R rescaled by powers of two
/// into gain headroom.
pub fn polar_to_rect(
    r: f64,
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    if !(r.is_finite() && theta.is_finite()) {
        return Err(FunctionError::Domain("arguments must be finite".into()));
    }
    if r < 0.0 {
        return Err(FunctionError::Range("radius must be nonnegative".into()));
    }
    if r == 0.0 {
        return Ok(FunctionResult {
            values: vec![("x", 0.0), ("y", 0.0)],
            opcount: OpCount::zero(),
            status: RunStatus::Converged,
            config: *cfg,
        });
    }

    // run the unit rotation through the chosen architecture and scale by R
    // afterward; a dedicated (R, 0) start would only work for the
    // conventional engine, and the unit path shares quadrant handling
    let (t, negate_cos) = fold_angle(theta);
    let out = variants::rotate_unit(variant, t, cfg)?;
    let c = out.cos.to_real() * if negate_cos { -1.0 } else { 1.0 };
    let s = out.sin.to_real();
    Ok(FunctionResult {
        values: vec![("x", r * c), ("y", r * s)],
        opcount: out.ops,
        status: out.status,
        config: *cfg,
    })
}

/// tan as the quotient of the two rotation outputs, one extra
/// linear-vectoring pass.
pub fn tan(
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    let sc = sin_cos(theta, variant, cfg)?;
    let c = sc.value("cos").unwrap();
    let s = sc.value("sin").unwrap();
    let div = divide(s, c, cfg)?;
    let q = div.value("quotient").unwrap();
    Ok(FunctionResult {
        values: vec![("tan", q)],
        opcount: sc.opcount + div.opcount,
        status: worst(sc.status, div.status),
        config: *cfg,
    })
}

fn worst(a: RunStatus, b: RunStatus) -> RunStatus {
    if a == RunStatus::BudgetExhausted || b == RunStatus::BudgetExhausted {
        RunStatus::BudgetExhausted
    } else {
        RunStatus::Converged
    }
}

/// Hyperbolic convergence reach of the repeat-indexed schedule, slightly
/// under 1.1182 radians.
pub fn hyperbolic_reach(cfg: &EngineConfig) -> f64 {
    engine::index_sequence(Trajectory::Hyperbolic, cfg.max_iterations)
        .iter()
        .map(|&i| engine::elementary_angle_real(Trajectory::Hyperbolic, i).unwrap())
        .sum()
}

/// cosh and sinh: rotation mode on the hyperbolic trajectory from (1, 0).
pub fn sinh_cosh(
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    require_conventional(FunctionKind::SinhCosh, variant)?;
    if variant == Variant::Exact {
        return Ok(FunctionResult {
            values: vec![("cosh", theta.cosh()), ("sinh", theta.sinh())],
            opcount: OpCount::zero(),
            status: RunStatus::Converged,
            config: *cfg,
        });
    }
    let reach = hyperbolic_reach(cfg);
    if !theta.is_finite() || theta.abs() > reach {
        return Err(FunctionError::Domain(format!(
            "|theta| must stay within the hyperbolic reach {reach:.4}"
        )));
    }
    let fmt = cfg.fmt;
    let run_cfg = EngineConfig {
        mode: Mode::Rotation,
        trajectory: Trajectory::Hyperbolic,
        ..*cfg
    };
    let init = CordicState::new(
        FixedWord::one(fmt)?,
        FixedWord::zero(fmt),
        FixedWord::from_real(theta, fmt)?,
    );
    let out = engine::run(&run_cfg, init);
    Ok(FunctionResult {
        values: vec![
            ("cosh", out.state.x.to_real()),
            ("sinh", out.state.y.to_real()),
        ],
        opcount: out.ops,
        status: out.status,
        config: *cfg,
    })
}

/// exp as cosh + sinh, summed in real arithmetic (the fixed sum would
/// saturate the format well inside the convergence region).
pub fn exp(
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    let hc = sinh_cosh(theta, variant, cfg)?;
    let e = hc.value("cosh").unwrap() + hc.value("sinh").unwrap();
    Ok(FunctionResult {
        values: vec![("exp", e)],
        opcount: hc.opcount,
        status: hc.status,
        config: *cfg,
    })
}

/// tanh = sinh / cosh with the linear-vectoring divider.
pub fn tanh(
    theta: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    let hc = sinh_cosh(theta, variant, cfg)?;
    let div = divide(hc.value("sinh").unwrap(), hc.value("cosh").unwrap(), cfg)?;
    Ok(FunctionResult {
        values: vec![("tanh", div.value("quotient").unwrap())],
        opcount: hc.opcount + div.opcount,
        status: worst(hc.status, div.status),
        config: *cfg,
    })
}

/// Vectoring-mode circular run with quadrant premapping and power-of-two
/// prescaling; returns (magnitude, angle, ops, status). The magnitude is
/// scale-corrected and rescaled in real arithmetic.
fn vector_circular(
    a: f64,
    b: f64,
    cfg: &EngineConfig,
) -> Result<(f64, f64, OpCount, RunStatus), FunctionError> {
    if a == 0.0 && b == 0.0 {
        return Err(FunctionError::Domain(
            "rectangular-to-polar needs a nonzero vector".into(),
        ));
    }

    // premap into the x > 0 half plane
    let (mut xa, mut xb) = (a, b);
    let mut offset = 0.0;
    if xa < 0.0 {
        offset = if xb >= 0.0 {
            std::f64::consts::PI
        } else {
            -std::f64::consts::PI
        };
        xa = -xa;
        xb = -xb;
    } else if xa == 0.0 {
        // on the y axis: quarter-turn premap
        offset = if xb > 0.0 {
            std::f64::consts::FRAC_PI_2
        } else {
            -std::f64::consts::FRAC_PI_2
        };
        let t = xa;
        xa = xb.abs();
        xb = if xb > 0.0 { -t } else { t };
    }

    let norm = (xa * xa + xb * xb).sqrt();
    let shift = prescale_shift(norm, cfg);
    let scale = (2.0f64).powi(shift as i32);
    let fmt = cfg.fmt;
    let run_cfg = EngineConfig {
        mode: Mode::Vectoring,
        trajectory: Trajectory::Circular,
        ..*cfg
    };
    let init = CordicState::new(
        FixedWord::from_real(xa / scale, fmt)?,
        FixedWord::from_real(xb / scale, fmt)?,
        FixedWord::zero(fmt),
    );
    let out = engine::run(&run_cfg, init);
    let magnitude = out.state.x.to_real() * scale;
    let angle = out.state.z.to_real() + offset;
    Ok((magnitude, angle, out.ops, out.status))
}

/// arc tangent via vectoring from (1, a).
pub fn atan(a: f64, variant: Variant, cfg: &EngineConfig) -> Result<FunctionResult, FunctionError> {
    require_conventional(FunctionKind::Atan, variant)?;
    if !a.is_finite() {
        return Err(FunctionError::Domain("argument must be finite".into()));
    }
    if variant == Variant::Exact {
        return Ok(FunctionResult {
            values: vec![("atan", a.atan())],
            opcount: OpCount::zero(),
            status: RunStatus::Converged,
            config: *cfg,
        });
    }
    let (_, angle, ops, status) = vector_circular(1.0, a, cfg)?;
    Ok(FunctionResult {
        values: vec![("atan", angle)],
        opcount: ops,
        status,
        config: *cfg,
    })
}

pub fn rect_to_polar(
    a: f64,
    b: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    require_conventional(FunctionKind::RectToPolar, variant)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(FunctionError::Domain("arguments must be finite".into()));
    }
    if variant == Variant::Exact {
        return Ok(FunctionResult {
            values: vec![("magnitude", a.hypot(b)), ("phase", b.atan2(a))],
            opcount: OpCount::zero(),
            status: RunStatus::Converged,
            config: *cfg,
        });
    }
    let (magnitude, phase, ops, status) = vector_circular(a, b, cfg)?;
    Ok(FunctionResult {
        values: vec![("magnitude", magnitude), ("phase", phase)],
        opcount: ops,
        status,
        config: *cfg,
    })
}

/// b / a through linear vectoring: x stays a, y runs from b to zero, z
/// accumulates the quotient.
pub fn divide(b: f64, a: f64, cfg: &EngineConfig) -> Result<FunctionResult, FunctionError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(FunctionError::Domain("arguments must be finite".into()));
    }
    if a == 0.0 {
        return Err(FunctionError::DivisionByZero);
    }
    let q = b / a;
    if q.abs() >= cfg.fmt.max_value() {
        return Err(FunctionError::Range(format!(
            "quotient {q} outside the z-format range of {}",
            cfg.fmt
        )));
    }

    // joint sign/scale normalization leaves the quotient untouched
    let (mut xa, mut xb) = (a, b);
    if xa < 0.0 {
        xa = -xa;
        xb = -xb;
    }
    // bring x into [headroom/2, headroom) so y = q*x stays representable
    let fmt = cfg.fmt;
    let target = fmt.max_value() * 0.5;
    let mut scale = 1.0f64;
    while xa * scale > target {
        scale *= 0.5;
    }
    while xa * scale < target * 0.5 {
        scale *= 2.0;
    }
    let run_cfg = EngineConfig {
        mode: Mode::Vectoring,
        trajectory: Trajectory::Linear,
        y_epsilon_ulps: 1,
        ..*cfg
    };
    let init = CordicState::new(
        FixedWord::from_real(xa * scale, fmt)?,
        FixedWord::from_real(xb * scale, fmt)?,
        FixedWord::zero(fmt),
    );
    let out = engine::run(&run_cfg, init);
    Ok(FunctionResult {
        values: vec![("quotient", out.state.z.to_real())],
        opcount: out.ops,
        status: out.status,
        config: *cfg,
    })
}

/// Valid argument window for `ln_sqrt` under this iteration budget: the
/// hyperbolic reach bounds |ln(a)| / 2 and the format bounds (a + 1) / 2.
pub fn ln_sqrt_domain(cfg: &EngineConfig) -> (f64, f64) {
    let reach = hyperbolic_reach(cfg);
    let lo = (-2.0 * reach).exp();
    (lo.max(0.108), 2.4)
}

/// ln and square root from one hyperbolic vectoring run on
/// ((a+1)/2, (a-1)/2): the angle accumulates ln(a)/2 and the corrected
/// magnitude is exactly sqrt(a) thanks to the halved initialization.
pub fn ln_sqrt(
    a: f64,
    variant: Variant,
    cfg: &EngineConfig,
) -> Result<FunctionResult, FunctionError> {
    require_conventional(FunctionKind::LnSqrt, variant)?;
    if !a.is_finite() || a <= 0.0 {
        return Err(FunctionError::Domain("argument must be positive".into()));
    }
    if variant == Variant::Exact {
        return Ok(FunctionResult {
            values: vec![("ln", a.ln()), ("sqrt", a.sqrt())],
            opcount: OpCount::zero(),
            status: RunStatus::Converged,
            config: *cfg,
        });
    }
    let (lo, hi) = ln_sqrt_domain(cfg);
    if a < lo || a > hi {
        return Err(FunctionError::Range(format!(
            "argument {a} outside the convergence window [{lo:.3}, {hi}]"
        )));
    }

    let fmt = cfg.fmt;
    let run_cfg = EngineConfig {
        mode: Mode::Vectoring,
        trajectory: Trajectory::Hyperbolic,
        ..*cfg
    };
    let init = CordicState::new(
        FixedWord::from_real((a + 1.0) / 2.0, fmt)?,
        FixedWord::from_real((a - 1.0) / 2.0, fmt)?,
        FixedWord::zero(fmt),
    );
    let out = engine::run(&run_cfg, init);
    Ok(FunctionResult {
        values: vec![
            ("ln", 2.0 * out.state.z.to_real()),
            ("sqrt", out.state.x.to_real()),
        ],
        opcount: out.ops,
        status: out.status,
        config: *cfg,
    })
}

/// Single entry point used by the command-line surface.
pub fn evaluate(req: &FunctionRequest) -> Result<FunctionResult, FunctionError> {
    if req.args.len() != req.kind.arity() {
        return Err(FunctionError::BadArity {
            function: req.kind,
            expected: req.kind.arity(),
            got: req.args.len(),
        });
    }
    let cfg = &req.config;
    match req.kind {
        FunctionKind::SinCos => sin_cos(req.args[0], req.variant, cfg),
        FunctionKind::Tan => tan(req.args[0], req.variant, cfg),
        FunctionKind::PolarToRect => polar_to_rect(req.args[0], req.args[1], req.variant, cfg),
        FunctionKind::SinhCosh => sinh_cosh(req.args[0], req.variant, cfg),
        FunctionKind::Tanh => tanh(req.args[0], req.variant, cfg),
        FunctionKind::Exp => exp(req.args[0], req.variant, cfg),
        FunctionKind::Atan => atan(req.args[0], req.variant, cfg),
        FunctionKind::RectToPolar => rect_to_polar(req.args[0], req.args[1], req.variant, cfg),
        FunctionKind::Divide => divide(req.args[0], req.args[1], cfg),
        FunctionKind::LnSqrt => ln_sqrt(req.args[0], req.variant, cfg),
    }
}

/// Reference values for the error column printed by the command surface.
pub fn reference_values(kind: FunctionKind, args: &[f64]) -> Vec<(&'static str, f64)> {
    match kind {
        FunctionKind::SinCos => vec![("cos", args[0].cos()), ("sin", args[0].sin())],
        FunctionKind::Tan => vec![("tan", args[0].tan())],
        FunctionKind::PolarToRect => vec![
            ("x", args[0] * args[1].cos()),
            ("y", args[0] * args[1].sin()),
        ],
        FunctionKind::SinhCosh => vec![("cosh", args[0].cosh()), ("sinh", args[0].sinh())],
        FunctionKind::Tanh => vec![("tanh", args[0].tanh())],
        FunctionKind::Exp => vec![("exp", args[0].exp())],
        FunctionKind::Atan => vec![("atan", args[0].atan())],
        FunctionKind::RectToPolar => vec![
            ("magnitude", args[0].hypot(args[1])),
            ("phase", args[1].atan2(args[0])),
        ],
        FunctionKind::Divide => vec![("quotient", args[0] / args[1])],
        FunctionKind::LnSqrt => vec![("ln", args[0].ln()), ("sqrt", args[0].sqrt())],
    }
}
