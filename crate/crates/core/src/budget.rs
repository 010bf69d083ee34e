use crate::error::{Error, Result};

/// Default memory budget: `2^28` members of 8 bytes, enough for `Q_14`.
pub const DEFAULT_BUDGET_BYTES: u64 = 1 << 31;

/// Memory cap applied before any explicit enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    bytes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            bytes: DEFAULT_BUDGET_BYTES,
        }
    }
}

impl Budget {
    pub const fn new(bytes: u64) -> Self {
        Budget { bytes }
    }

    pub const fn unlimited() -> Self {
        Budget { bytes: u64::MAX }
    }

    pub const fn bytes(&self) -> u64 {
        self.bytes
    }

    pub fn check(&self, what: impl FnOnce() -> String, needed: u128) -> Result<()> {
        if needed <= self.bytes as u128 {
            Ok(())
        } else {
            Err(Error::Budget {
                what: what(),
                needed,
                budget: self.bytes,
            })
        }
    }
}
