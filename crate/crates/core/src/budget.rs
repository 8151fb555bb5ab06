//! Wall-clock limits for the expensive engines.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn with_timeout(limit: Duration) -> Budget {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Fails with [`Error::BudgetExceeded`] once the deadline has passed.
    pub fn check(&self, stage: &str, last_completed: usize) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExceeded {
                stage: stage.to_string(),
                last_completed,
            });
        }
        Ok(())
    }
}
