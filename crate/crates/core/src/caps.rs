//! Size and time budgets shared by every exhaustive routine.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard upper bound on the number of element ids a ring may have.
pub const RING_ID_LIMIT: usize = 1 << 20;

/// Rings up to this size get fully materialized add/mul tables.
pub const TABLE_CAP: usize = 1 << 10;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Caps {
    /// Largest ring that may be constructed.
    pub max_ring_size: usize,
    /// Largest ring whose ideals are materialized as member sets.
    pub max_ideal_ring_size: usize,
    /// Largest ring on which the principal-pair engine enumerates every
    /// principal ideal.
    pub max_pair_size: usize,
    /// Largest ring on which every ideal is enumerated.
    pub max_oracle_size: usize,
    /// Guard on the size of the enumerated ideal lattice.
    pub max_ideal_count: usize,
    /// Largest ring on which checks that build R/I for every ideal I run.
    pub max_quotient_family_size: usize,
    pub max_group_order: usize,
    /// Ring axioms are checked on all triples up to this size, sampled above.
    pub exhaustive_validation: usize,
    pub validation_samples: usize,
    pub seed: u64,
    pub timeout_per_instance_s: Option<f64>,
    #[serde(skip)]
    /// Absolute deadline, set by [`Caps::started`].
    pub deadline: Option<Instant>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ring_size: RING_ID_LIMIT,
            max_ideal_ring_size: RING_ID_LIMIT,
            max_pair_size: 1 << 16,
            max_oracle_size: 256,
            max_ideal_count: 1 << 14,
            max_quotient_family_size: 1 << 13,
            max_group_order: 64,
            exhaustive_validation: 256,
            validation_samples: 4096,
            seed: 0x5eed,
            timeout_per_instance_s: None,
            deadline: None,
        }
    }
}

impl Caps {
    /// Starts the per-instance clock, if a timeout is configured.
    pub fn started(&self) -> Caps {
        let mut c = self.clone();
        c.deadline = self
            .timeout_per_instance_s
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
        c
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    pub fn require(&self, what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }

    /// Stable fingerprint of the size-relevant fields, used as part of cache keys.
    pub fn fingerprint(&self) -> String {
        format!(
            "r{}-i{}-p{}-o{}-c{}-q{}-g{}-v{}-s{}-seed{}",
            self.max_ring_size,
            self.max_ideal_ring_size,
            self.max_pair_size,
            self.max_oracle_size,
            self.max_ideal_count,
            self.max_quotient_family_size,
            self.max_group_order,
            self.exhaustive_validation,
            self.validation_samples,
            self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_timeout_expires() {
        let caps = Caps {
            timeout_per_instance_s: Some(0.0),
            ..Caps::default()
        }
        .started();
        std::thread::sleep(Duration::from_millis(2));
        assert_eq!(caps.check_deadline(), Err(Error::Timeout));
        assert!(Caps::default().started().check_deadline().is_ok());
    }

    #[test]
    fn fingerprint_tracks_caps() {
        let a = Caps::default();
        let b = Caps {
            max_pair_size: 17,
            ..Caps::default()
        };
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
