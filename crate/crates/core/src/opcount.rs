//! Shift/add operation counters, the hardware-cost proxy attached to every
//! engine result.

/// Adds and subtracts count together; multiplies appear only in final
/// scale corrections, never inside an iteration loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCount {
    pub adds: u64,
    pub shifts: u64,
    pub multiplies: u64,
    pub iterations: u64,
}

impl OpCount {
    pub fn zero() -> Self {
        OpCount::default()
    }

    pub fn total_shift_add(&self) -> u64 {
        self.adds + self.shifts
    }
}

impl std::ops::Add for OpCount {
    type Output = OpCount;
    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            adds: self.adds + rhs.adds,
            shifts: self.shifts + rhs.shifts,
            multiplies: self.multiplies + rhs.multiplies,
            iterations: self.iterations + rhs.iterations,
        }
    }
}

impl std::ops::AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl std::fmt::Display for OpCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "adds={} shifts={} multiplies={} iterations={}",
            self.adds, self.shifts, self.multiplies, self.iterations
        )
    }
}
