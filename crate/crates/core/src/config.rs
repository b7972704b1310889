//! Finite configurations (`n`-configurations) and the deterministic moves on them.
//!
//! A configuration is stored as its nonempty bins, leftmost first; the last
//! entry is bin 0, the rightmost bin. The infinite run of empty bins to the
//! left is never stored.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// An `n`-configuration: `n` balls spread over consecutive nonempty bins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    bins: Vec<u64>,
    total: u64,
}

/// Index (into a leftmost-first slice) of the bin holding the `k`-th ball
/// counted from the right, or `None` when fewer than `k` balls are present.
pub(crate) fn locate_ball(bins: &[u64], k: u64) -> Option<usize> {
    let mut seen = 0u64;
    for (idx, &count) in bins.iter().enumerate().rev() {
        seen += count;
        if seen >= k {
            return Some(idx);
        }
    }
    None
}

impl Configuration {
    pub fn new(bins: Vec<u64>) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::InvalidConfiguration("no bins".into()));
        }
        if let Some(pos) = bins.iter().position(|&b| b == 0) {
            return Err(Error::InvalidConfiguration(format!("bin {pos} is empty")));
        }
        let total = bins.iter().sum();
        Ok(Self { bins, total })
    }

    /// Caller guarantees a nonempty list of positive counts.
    pub(crate) fn from_bins_unchecked(bins: Vec<u64>) -> Self {
        debug_assert!(!bins.is_empty() && bins.iter().all(|&b| b > 0));
        let total = bins.iter().sum();
        Self { bins, total }
    }

    /// `n` bins holding one ball each.
    pub fn ones(n: u64) -> Self {
        assert!(n >= 1, "a configuration needs at least one ball");
        Self::from_bins_unchecked(alloc::vec![1; n as usize])
    }

    /// Bin counts, leftmost bin first.
    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of nonempty bins (the `p` of the `p`-tuple notation).
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ball count of bin 0.
    pub fn rightmost(&self) -> u64 {
        *self.bins.last().expect("configurations are nonempty")
    }

    /// Count of the bin at `depth` (0 is the rightmost bin), or 0 past the
    /// leftmost bin.
    pub fn bin(&self, depth: usize) -> u64 {
        if depth < self.bins.len() {
            self.bins[self.bins.len() - 1 - depth]
        } else {
            0
        }
    }

    pub fn into_bins(self) -> Vec<u64> {
        self.bins
    }

    /// The move of type `k`: add a ball right of the bin holding the `k`-th
    /// ball from the right (opening a new rightmost bin if that ball is
    /// already rightmost), then remove one ball from the leftmost bin.
    pub fn apply_move(&self, k: u64) -> Result<Self> {
        let mut next = self.clone();
        next.apply_move_in_place(k)?;
        Ok(next)
    }

    pub fn apply_move_in_place(&mut self, k: u64) -> Result<()> {
        self.add_ball(k)?;
        self.bins[0] -= 1;
        if self.bins[0] == 0 {
            self.bins.remove(0);
        }
        Ok(())
    }

    /// The move of type `k` without the leftmost deletion. The result holds one
    /// more ball; it is the `(n+1)`-ball projection of the infinite move applied
    /// to any infinite configuration whose `n`-ball projection is `self`.
    pub fn apply_move_growing(&mut self, k: u64) -> Result<()> {
        self.add_ball(k)?;
        self.total += 1;
        Ok(())
    }

    fn add_ball(&mut self, k: u64) -> Result<()> {
        if k == 0 || k > self.total {
            return Err(Error::MoveTooLarge { k, total: self.total });
        }
        let idx = locate_ball(&self.bins, k).expect("k <= total");
        if idx + 1 == self.bins.len() {
            self.bins.push(1);
        } else {
            self.bins[idx + 1] += 1;
        }
        Ok(())
    }

    /// The `n`-ball projection: keep the rightmost `n` balls.
    pub fn project(&self, n: u64) -> Result<Self> {
        if n == 0 || n > self.total {
            return Err(Error::ProjectionTooLarge { n, total: self.total });
        }
        let mut kept = Vec::new();
        let mut remaining = n;
        for &count in self.bins.iter().rev() {
            let take = count.min(remaining);
            kept.push(take);
            remaining -= take;
            if remaining == 0 {
                break;
            }
        }
        kept.reverse();
        Ok(Self { bins: kept, total: n })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.bins.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Configuration {
    type Err = Error;

    /// Parses `[2,2,1]`, leftmost bin first. Whitespace around entries is allowed.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("configuration must be bracketed: {s:?}")))?;
        let bins = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad bin count {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bins)
    }
}
