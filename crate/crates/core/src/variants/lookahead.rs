//! Lookahead CORDIC: the directions of four consecutive micro-rotations
//! are detected up front from the z recurrence alone, then the four x/y
//! updates collapse into one parallel-shift (P) and one vertical-shift (V)
//! evaluation.
//!
//! Expanding the four updates symbolically gives
//!
//! ```text
//! x4 = x0 * P - y0 * V        y4 = y0 * P + x0 * V
//! ```
//!
//! with P and V each a signed sum of seven dyadic terms in the sigma
//! products. The merged evaluation runs in a datapath widened by six
//! fraction bits so that every term shift is exact; it is then bit-exactly
//! equal to the four sequential updates carried in the same widened
//! datapath, which is the property that makes the merge legitimate.

use crate::engine::{self, EngineConfig, RunStatus, Trajectory};
use crate::fixnum::{FixedWord, QFormat};
use crate::opcount::OpCount;
use crate::variants::{RotationOutcome, VariantError};

/// Fraction bits added to the merged datapath. The smallest P/V term
/// weight is 2^-6, so six guard bits make every shift lossless.
pub const GUARD_BITS: u32 = 6;

/// One signed dyadic term: `coeff * 2^-weight` with coeff in {-2,-1,0,1,2}.
/// A coefficient of magnitude two is realized by shifting one bit less.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicTerm {
    pub weight: u32,
    pub coeff: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LookaheadBlock {
    pub sigmas: [i8; 4],
    pub p: [DyadicTerm; 7],
    pub v: [DyadicTerm; 7],
}

impl LookaheadBlock {
    pub fn new(sigmas: [i8; 4]) -> Self {
        let [s0, s1, s2, s3] = sigmas;
        debug_assert!(sigmas.iter().all(|s| s.abs() == 1));
        let t = |weight: u32, coeff: i8| DyadicTerm { weight, coeff };
        LookaheadBlock {
            sigmas,
            p: [
                t(0, 1),
                t(1, -s0 * s1),
                t(2, -s0 * s2),
                t(3, -s1 * s2 - s0 * s3),
                t(4, -s1 * s3),
                t(5, -s2 * s3),
                t(6, s0 * s1 * s2 * s3),
            ],
            v: [
                t(0, s0),
                t(1, s1),
                t(2, s2),
                t(3, -s0 * s1 * s2 + s3),
                t(4, -s0 * s1 * s3),
                t(5, -s0 * s2 * s3),
                t(6, -s1 * s2 * s3),
            ],
        }
    }
}

/// Widened format used inside the merged unit.
pub fn guard_format(fmt: QFormat) -> QFormat {
    QFormat::new(
        fmt.total_bits() + GUARD_BITS + 1,
        fmt.frac_bits() + GUARD_BITS,
    )
    .expect("guarded format stays within 64 bits")
}

/// Lift a word into the guard format (exact).
pub fn lift(w: FixedWord, gfmt: QFormat) -> FixedWord {
    FixedWord::from_raw(w.raw() << GUARD_BITS, gfmt).expect("lift fits")
}

/// Truncate a guard-format word back to the base format (floor).
pub fn truncate(w: FixedWord, fmt: QFormat) -> FixedWord {
    FixedWord::from_raw(w.raw() >> GUARD_BITS, fmt).expect("truncation fits")
}

fn apply_terms(w: FixedWord, terms: &[DyadicTerm; 7], ops: &mut OpCount) -> FixedWord {
    let mut acc = FixedWord::zero(w.fmt());
    for term in terms {
        if term.coeff == 0 {
            continue;
        }
        let shift = if term.coeff.abs() == 2 {
            term.weight - 1
        } else {
            term.weight
        };
        let shifted = w.try_shr(shift).expect("guarded shift in range");
        acc = if term.coeff > 0 {
            acc + shifted
        } else {
            acc - shifted
        };
        ops.adds += 1;
        ops.shifts += 1;
    }
    acc
}

/// Evaluate the merged block on guard-lifted inputs and truncate once at
/// the end. Each nonzero term costs one shift and one add.
pub fn lookahead_merge(
    x0: FixedWord,
    y0: FixedWord,
    block: &LookaheadBlock,
) -> (FixedWord, FixedWord, OpCount) {
    let fmt = x0.fmt();
    let gfmt = guard_format(fmt);
    let gx = lift(x0, gfmt);
    let gy = lift(y0, gfmt);

    let mut ops = OpCount::zero();
    let xp = apply_terms(gx, &block.p, &mut ops);
    let yv = apply_terms(gy, &block.v, &mut ops);
    let yp = apply_terms(gy, &block.p, &mut ops);
    let xv = apply_terms(gx, &block.v, &mut ops);
    let x4 = xp - yv;
    let y4 = yp + xv;
    ops.adds += 2;
    ops.iterations += 4;

    (truncate(x4, fmt), truncate(y4, fmt), ops)
}

/// Merged result still in the guard format, for bit-exact comparison
/// against the sequential path.
pub fn lookahead_merge_guarded(
    x0: FixedWord,
    y0: FixedWord,
    block: &LookaheadBlock,
) -> (FixedWord, FixedWord) {
    let gfmt = guard_format(x0.fmt());
    let gx = lift(x0, gfmt);
    let gy = lift(y0, gfmt);
    let mut ops = OpCount::zero();
    let xp = apply_terms(gx, &block.p, &mut ops);
    let yv = apply_terms(gy, &block.v, &mut ops);
    let yp = apply_terms(gy, &block.p, &mut ops);
    let xv = apply_terms(gx, &block.v, &mut ops);
    (xp - yv, yp + xv)
}

/// Precompute the four direction digits by running only the z recurrence;
/// x and y are untouched.
pub fn lookahead_sigmas(z0: FixedWord) -> [i8; 4] {
    let fmt = z0.fmt();
    let mut z = z0;
    let mut sigmas = [1i8; 4];
    for (j, slot) in sigmas.iter_mut().enumerate() {
        let s: i8 = if z.raw() >= 0 { 1 } else { -1 };
        *slot = s;
        let alpha =
            engine::elementary_angle(Trajectory::Circular, j as u32, fmt).expect("circular angle");
        z = if s > 0 { z - alpha } else { z + alpha };
    }
    sigmas
}

/// Single merged four-rotation block from the unit vector, corrected by
/// the four-rotation scale factor. Accuracy is capped by the 2^-3 step,
/// which is this architecture's trade: one iteration of latency for four
/// rotations of the conventional loop.
pub fn rotate_unit(theta: f64, cfg: &EngineConfig) -> Result<RotationOutcome, VariantError> {
    let fmt = cfg.fmt;
    let z0 =
        FixedWord::from_real(theta, fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let sigmas = lookahead_sigmas(z0);
    let block = LookaheadBlock::new(sigmas);
    let one = FixedWord::one(fmt).map_err(|e| VariantError::OutOfRange(e.to_string()))?;
    let (x4, y4, mut ops) = lookahead_merge(one, FixedWord::zero(fmt), &block);

    // z after the block, for the convergence status
    let mut z = z0;
    for (j, &s) in sigmas.iter().enumerate() {
        let alpha =
            engine::elementary_angle(Trajectory::Circular, j as u32, fmt).expect("circular angle");
        z = if s > 0 { z - alpha } else { z + alpha };
        ops.adds += 1;
    }
    let status = if z.abs_raw() <= cfg.z_epsilon_ulps as i64 {
        RunStatus::Converged
    } else {
        RunStatus::BudgetExhausted
    };

    let executed: Vec<(u32, i8)> = sigmas
        .iter()
        .enumerate()
        .map(|(i, &s)| (i as u32, s))
        .collect();
    super::finish_with_correction(x4, y4, &executed, false, fmt, ops, status)
}

/// Four sequential micro-rotations in the widened datapath: the reference
/// side of the merge equivalence.
pub fn sequential_guarded(x0: FixedWord, y0: FixedWord, sigmas: [i8; 4]) -> (FixedWord, FixedWord) {
    let gfmt = guard_format(x0.fmt());
    let mut state = engine::CordicState::new(lift(x0, gfmt), lift(y0, gfmt), FixedWord::zero(gfmt));
    for &s in &sigmas {
        state = engine::micro_rotate(&state, s, Trajectory::Circular);
    }
    (state.x, state.y)
}
