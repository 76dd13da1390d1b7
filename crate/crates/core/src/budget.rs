//! Resource limits for the brute-force oracles and enumerations.

use crate::error::{Error, Result};

/// Environment variable overriding [`Budget::state_bytes`].
pub const BUDGET_ENV: &str = "SCRIMKIT_BUDGET";

/// Default: 4 GiB of working state.
pub const DEFAULT_STATE_BYTES: u64 = 1 << 32;

/// Bytes charged per enumerated code when converting the byte budget into an
/// item cap (so the default cap is `2^20` codes).
pub const BYTES_PER_ENUMERATED_CODE: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub state_bytes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { state_bytes: DEFAULT_STATE_BYTES }
    }
}

impl Budget {
    pub fn new(state_bytes: u64) -> Self {
        Budget { state_bytes }
    }

    /// Reads `SCRIMKIT_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Err(_) => Ok(Budget::default()),
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(Budget::new)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV} must be a byte count, got {v:?}"))),
        }
    }

    /// Largest number of codes an enumeration may produce.
    pub fn enumeration_cap(&self) -> u64 {
        (self.state_bytes / BYTES_PER_ENUMERATED_CODE).max(1)
    }

    /// Whether a dense `rows × cols` matrix with `elem_bytes` per entry fits.
    pub fn allows_matrix(&self, rows: usize, cols: usize, elem_bytes: usize) -> bool {
        (rows as u128) * (cols as u128) * (elem_bytes as u128) <= self.state_bytes as u128
    }
}
