//! Two's-complement Q-format fixed-point arithmetic.
//!
//! Every CORDIC datapath in this crate is built on these words. The
//! conventions are deliberately rigid so that traces are reproducible:
//!
//! * real -> fixed conversion rounds half away from zero,
//! * right shifts are arithmetic (floor, toward negative infinity),
//! * add/sub/mul saturate at the format extremes and set a sticky
//!   overflow flag instead of wrapping.

use std::fmt;

/// Signed Q-format descriptor: `total_bits` two's-complement bits of which
/// the low `frac_bits` are fractional.
///
/// `Q2.14` in a 16-bit word is `QFormat::new(16, 14)`: one sign bit, one
/// integer bit, fourteen fraction bits, range `[-2, 2 - 2^-14]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QFormat {
    total_bits: u32,
    frac_bits: u32,
}

impl QFormat {
    pub fn new(total_bits: u32, frac_bits: u32) -> Result<Self, FxError> {
        if !(8..=64).contains(&total_bits) || frac_bits >= total_bits {
            return Err(FxError::InvalidFormat {
                total_bits,
                frac_bits,
            });
        }
        Ok(QFormat {
            total_bits,
            frac_bits,
        })
    }

    /// Default coordinate format: Q2.14 in a 16-bit word. The two integer
    /// bits (sign included) cover the circular gain 1.647 applied to unit
    /// vectors.
    pub fn q2_14() -> Self {
        QFormat {
            total_bits: 16,
            frac_bits: 14,
        }
    }

    /// Angle format for the scale-free datapath: sixteen fraction bits so
    /// that 27 degrees encodes as 0x78A3, carried in a 17-bit word to keep
    /// the sign bit out of the payload.
    pub fn q0_16() -> Self {
        QFormat {
            total_bits: 17,
            frac_bits: 16,
        }
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn min_raw(&self) -> i64 {
        // i128 keeps the 64-bit format from overflowing the shift
        (-(1i128 << (self.total_bits - 1))) as i64
    }

    pub fn max_raw(&self) -> i64 {
        ((1i128 << (self.total_bits - 1)) - 1) as i64
    }

    /// Value of one unit in the last place.
    pub fn ulp(&self) -> f64 {
        (2.0f64).powi(-(self.frac_bits as i32))
    }

    pub fn min_value(&self) -> f64 {
        self.min_raw() as f64 * self.ulp()
    }

    pub fn max_value(&self) -> f64 {
        self.max_raw() as f64 * self.ulp()
    }
}

impl fmt::Display for QFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q{}.{}",
            self.total_bits - self.frac_bits,
            self.frac_bits
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FxError {
    InvalidFormat { total_bits: u32, frac_bits: u32 },
    OutOfRange { value: f64, fmt: QFormat },
    RawOutOfRange { raw: i64, fmt: QFormat },
    FormatMismatch { lhs: QFormat, rhs: QFormat },
    ShiftOutOfRange { shift: u32, fmt: QFormat },
}

impl fmt::Display for FxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FxError::InvalidFormat {
                total_bits,
                frac_bits,
            } => write!(
                f,
                "invalid format: {total_bits} total / {frac_bits} frac bits"
            ),
            FxError::OutOfRange { value, fmt } => {
                write!(f, "{value} outside representable range of {fmt}")
            }
            FxError::RawOutOfRange { raw, fmt } => {
                write!(f, "raw {raw} does not fit {fmt}")
            }
            FxError::FormatMismatch { lhs, rhs } => {
                write!(f, "format mismatch: {lhs} vs {rhs}")
            }
            FxError::ShiftOutOfRange { shift, fmt } => {
                write!(f, "shift {shift} out of range for {fmt}")
            }
        }
    }
}

impl std::error::Error for FxError {}

/// One fixed-point sample: a raw two's-complement integer plus its format.
///
/// The `saturated` flag is sticky: once an operation clamps, every result
/// derived from it keeps the flag set. Equality ignores the flag.
#[derive(Debug, Clone, Copy)]
pub struct FixedWord {
    raw: i64,
    fmt: QFormat,
    saturated: bool,
}

impl PartialEq for FixedWord {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.fmt == other.fmt
    }
}

impl Eq for FixedWord {}

impl FixedWord {
    /// Convert a real value, rounding half away from zero on the raw
    /// integer. Values outside the representable range are an error, never
    /// a silent wrap.
    pub fn from_real(value: f64, fmt: QFormat) -> Result<Self, FxError> {
        if !value.is_finite() {
            return Err(FxError::OutOfRange { value, fmt });
        }
        let scaled = value * (2.0f64).powi(fmt.frac_bits as i32);
        // guard against casts past the i64 edge before the range check
        if scaled.abs() >= 9.3e18 {
            return Err(FxError::OutOfRange { value, fmt });
        }
        let raw = scaled.round() as i64; // f64::round is half-away-from-zero
        if raw < fmt.min_raw() || raw > fmt.max_raw() {
            return Err(FxError::OutOfRange { value, fmt });
        }
        Ok(FixedWord {
            raw,
            fmt,
            saturated: false,
        })
    }

    pub fn from_raw(raw: i64, fmt: QFormat) -> Result<Self, FxError> {
        if raw < fmt.min_raw() || raw > fmt.max_raw() {
            return Err(FxError::RawOutOfRange { raw, fmt });
        }
        Ok(FixedWord {
            raw,
            fmt,
            saturated: false,
        })
    }

    pub fn zero(fmt: QFormat) -> Self {
        FixedWord {
            raw: 0,
            fmt,
            saturated: false,
        }
    }

    pub fn one(fmt: QFormat) -> Result<Self, FxError> {
        Self::from_real(1.0, fmt)
    }

    /// Exact real value: `raw * 2^-frac_bits`.
    pub fn to_real(&self) -> f64 {
        self.raw as f64 * self.fmt.ulp()
    }

    pub fn raw(&self) -> i64 {
        self.raw
    }

    pub fn fmt(&self) -> QFormat {
        self.fmt
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn abs_raw(&self) -> i64 {
        self.raw.abs()
    }

    pub fn is_negative(&self) -> bool {
        self.raw < 0
    }

    fn clamp(wide: i128, fmt: QFormat, sticky: bool) -> FixedWord {
        let min = fmt.min_raw() as i128;
        let max = fmt.max_raw() as i128;
        if wide > max {
            FixedWord {
                raw: fmt.max_raw(),
                fmt,
                saturated: true,
            }
        } else if wide < min {
            FixedWord {
                raw: fmt.min_raw(),
                fmt,
                saturated: true,
            }
        } else {
            FixedWord {
                raw: wide as i64,
                fmt,
                saturated: sticky,
            }
        }
    }

    pub fn try_add(self, rhs: FixedWord) -> Result<FixedWord, FxError> {
        if self.fmt != rhs.fmt {
            return Err(FxError::FormatMismatch {
                lhs: self.fmt,
                rhs: rhs.fmt,
            });
        }
        let wide = self.raw as i128 + rhs.raw as i128;
        Ok(Self::clamp(wide, self.fmt, self.saturated || rhs.saturated))
    }

    pub fn try_sub(self, rhs: FixedWord) -> Result<FixedWord, FxError> {
        if self.fmt != rhs.fmt {
            return Err(FxError::FormatMismatch {
                lhs: self.fmt,
                rhs: rhs.fmt,
            });
        }
        let wide = self.raw as i128 - rhs.raw as i128;
        Ok(Self::clamp(wide, self.fmt, self.saturated || rhs.saturated))
    }

    pub fn negate(self) -> FixedWord {
        Self::clamp(-(self.raw as i128), self.fmt, self.saturated)
    }

    /// Arithmetic right shift: floor(raw / 2^i), the single rounding
    /// convention shared by every datapath. `i` must be below the word
    /// width.
    pub fn try_shr(self, i: u32) -> Result<FixedWord, FxError> {
        if i >= self.fmt.total_bits {
            return Err(FxError::ShiftOutOfRange {
                shift: i,
                fmt: self.fmt,
            });
        }
        Ok(FixedWord {
            raw: self.raw >> i,
            fmt: self.fmt,
            saturated: self.saturated,
        })
    }

    /// Right shift with the amount clamped to `total_bits - 1`. For any
    /// word the result equals floor(raw / 2^i) even when `i` exceeds the
    /// width, because |raw| < 2^(total-1) pins the floor at 0 or -1 from
    /// that point on. Deep Taylor terms in the scale-free datapath rely on
    /// this.
    pub fn shr_clamped(self, i: u32) -> FixedWord {
        let eff = i.min(self.fmt.total_bits - 1);
        FixedWord {
            raw: self.raw >> eff,
            fmt: self.fmt,
            saturated: self.saturated,
        }
    }

    /// Full-precision product: double-width intermediate, arithmetic right
    /// shift by `frac_bits`, then saturation.
    pub fn try_mul(self, rhs: FixedWord) -> Result<FixedWord, FxError> {
        if self.fmt != rhs.fmt {
            return Err(FxError::FormatMismatch {
                lhs: self.fmt,
                rhs: rhs.fmt,
            });
        }
        let wide = (self.raw as i128 * rhs.raw as i128) >> self.fmt.frac_bits;
        Ok(Self::clamp(wide, self.fmt, self.saturated || rhs.saturated))
    }
}

impl fmt::Display for FixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.to_real(), self.fmt)
    }
}

// Infix operators for code that has already established matching formats
// (the engines construct every word from one format). They panic on
// mismatch; fallible callers use the try_* methods.

impl std::ops::Add for FixedWord {
    type Output = FixedWord;
    fn add(self, rhs: FixedWord) -> FixedWord {
        self.try_add(rhs).expect("fixed-point add: format mismatch")
    }
}

impl std::ops::Sub for FixedWord {
    type Output = FixedWord;
    fn sub(self, rhs: FixedWord) -> FixedWord {
        self.try_sub(rhs).expect("fixed-point sub: format mismatch")
    }
}

impl std::ops::Neg for FixedWord {
    type Output = FixedWord;
    fn neg(self) -> FixedWord {
        self.negate()
    }
}

impl std::ops::Mul for FixedWord {
    type Output = FixedWord;
    fn mul(self, rhs: FixedWord) -> FixedWord {
        self.try_mul(rhs).expect("fixed-point mul: format mismatch")
    }
}
