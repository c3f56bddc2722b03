//! Search budgets: a state counter and an optional wall-clock limit.
//!
//! The core has no clock of its own, so a time limit comes with a closure
//! returning the elapsed time since some fixed origin.

use alloc::sync::Arc;
use core::fmt;
use core::time::Duration;

pub type Clock = Arc<dyn Fn() -> Duration + Send + Sync>;

#[derive(Clone)]
pub struct SolverBudget {
    pub max_states: u64,
    pub time_limit: Option<Duration>,
    clock: Option<Clock>,
}

impl fmt::Debug for SolverBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolverBudget")
            .field("max_states", &self.max_states)
            .field("time_limit", &self.time_limit)
            .finish()
    }
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget::states(50_000_000)
    }
}

impl SolverBudget {
    /// A pure state budget. Zero is bumped to one.
    pub fn states(max_states: u64) -> Self {
        SolverBudget { max_states: max_states.max(1), time_limit: None, clock: None }
    }

    pub fn unlimited() -> Self {
        SolverBudget::states(u64::MAX)
    }

    pub fn with_time_limit(mut self, limit: Duration, clock: Clock) -> Self {
        self.time_limit = Some(limit);
        self.clock = Some(clock);
        self
    }

    pub fn meter(&self) -> Meter {
        let start = self.clock.as_ref().map(|c| c());
        Meter { budget: self.clone(), used: 0, start }
    }
}

/// Running consumption against a [`SolverBudget`].
#[derive(Debug, Clone)]
pub struct Meter {
    budget: SolverBudget,
    used: u64,
    start: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

impl Meter {
    /// Charges one state. Time is sampled every 4096 states.
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.budget.max_states {
            return Err(Exhausted);
        }
        if self.used % 4096 == 0 {
            self.check_time()?;
        }
        Ok(())
    }

    pub fn check_time(&self) -> Result<(), Exhausted> {
        if let (Some(limit), Some(clock), Some(start)) =
            (self.budget.time_limit, self.budget.clock.as_ref(), self.start)
        {
            if clock().saturating_sub(start) > limit {
                return Err(Exhausted);
            }
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
