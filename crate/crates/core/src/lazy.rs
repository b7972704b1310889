//! Infinite configurations stored as a constant deep base plus an explicit
//! window of the rightmost bins.

use alloc::vec::Vec;
use core::fmt;

use crate::config::{locate_ball, Configuration};
use crate::error::{Error, Result};

/// An infinite configuration whose bins are all equal to `base` below the
/// explicitly materialized window.
///
/// The window is stored leftmost first, like [`Configuration`]. It grows on the
/// right when a move opens a new bin and on the left only when a move has to
/// modify a bin that was still implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LazyInfiniteConfiguration {
    base: u64,
    window: Vec<u64>,
    window_total: u64,
    shift: u64,
}

impl LazyInfiniteConfiguration {
    /// The constant configuration `(..., base, base, base)`.
    pub fn new(base: u64) -> Result<Self> {
        Self::with_window(base, Vec::new())
    }

    /// `window` (leftmost first) sitting on top of infinitely many `base` bins.
    pub fn with_window(base: u64, window: Vec<u64>) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidConfiguration("base must be positive".into()));
        }
        if window.contains(&0) {
            return Err(Error::InvalidConfiguration("window bins must be positive".into()));
        }
        let window_total = window.iter().sum();
        Ok(Self { base, window, window_total, shift: 0 })
    }

    /// Embeds a finite configuration as the rightmost bins over a constant base.
    pub fn from_configuration(base: u64, top: &Configuration) -> Result<Self> {
        Self::with_window(base, top.bins().to_vec())
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Materialized bins, leftmost first.
    pub fn window(&self) -> &[u64] {
        &self.window
    }

    /// Number of bins created on the right since construction.
    pub fn shift(&self) -> u64 {
        self.shift
    }

    /// Ball count of the bin at `depth` (0 is the rightmost bin).
    pub fn bin(&self, depth: usize) -> u64 {
        if depth < self.window.len() {
            self.window[self.window.len() - 1 - depth]
        } else {
            self.base
        }
    }

    /// `(X(-depth+1), ..., X(0))`, leftmost first.
    pub fn top_bins(&self, depth: usize) -> Vec<u64> {
        (0..depth).rev().map(|j| self.bin(j)).collect()
    }

    /// Applies the move of type `k` in place and reports whether a new
    /// rightmost bin was created. No ball is ever deleted.
    pub fn apply_move(&mut self, k: u64) -> Result<bool> {
        if k == 0 {
            return Err(Error::MoveTooLarge { k, total: 0 });
        }
        let created = match locate_ball(&self.window, k) {
            Some(idx) if idx + 1 == self.window.len() => {
                self.window.push(1);
                true
            }
            Some(idx) => {
                self.window[idx + 1] += 1;
                false
            }
            None => {
                // The k-th ball sits in an implicit base bin at `depth`.
                let remaining = k - self.window_total;
                let depth = self.window.len() + remaining.div_ceil(self.base) as usize - 1;
                if depth == 0 {
                    self.window.push(1);
                    true
                } else {
                    let missing = depth - self.window.len();
                    if missing > 0 {
                        self.window
                            .splice(0..0, core::iter::repeat_n(self.base, missing));
                        self.window_total += missing as u64 * self.base;
                    }
                    // The bin at depth - 1 is now the leftmost materialized one
                    // or already inside the window.
                    let idx = self.window.len() - depth;
                    self.window[idx] += 1;
                    false
                }
            }
        };
        self.window_total += 1;
        if created {
            self.shift += 1;
        }
        Ok(created)
    }

    pub fn moved(&self, k: u64) -> Result<Self> {
        let mut next = self.clone();
        next.apply_move(k)?;
        Ok(next)
    }

    /// Iterator over the ball counts of the rightmost `n` balls' bins, from the
    /// rightmost bin leftward, truncating the last one.
    fn projected_bins_rev(&self, n: u64) -> impl Iterator<Item = u64> + '_ {
        let mut remaining = n;
        let mut depth = 0usize;
        core::iter::from_fn(move || {
            if remaining == 0 {
                return None;
            }
            let take = self.bin(depth).min(remaining);
            remaining -= take;
            depth += 1;
            Some(take)
        })
    }

    /// The `n`-ball projection.
    pub fn project(&self, n: u64) -> Result<Configuration> {
        if n == 0 {
            return Err(Error::ProjectionTooLarge { n, total: u64::MAX });
        }
        let mut bins: Vec<u64> = self.projected_bins_rev(n).collect();
        bins.reverse();
        Ok(Configuration::from_bins_unchecked(bins))
    }

    /// Whether `self` and `other` have the same `n`-ball projection, without
    /// allocating.
    pub fn projections_agree(&self, other: &Self, n: u64) -> bool {
        self.projected_bins_rev(n).eq(other.projected_bins_rev(n))
    }
}

impl fmt::Display for LazyInfiniteConfiguration {
    /// `base:B` or `base:B:[w1,...,wm]`, the format accepted by [`FromStr`](core::str::FromStr).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base:{}", self.base)?;
        if !self.window.is_empty() {
            let top = Configuration::from_bins_unchecked(self.window.clone());
            write!(f, ":{top}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for LazyInfiniteConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("base:")
            .ok_or_else(|| Error::Parse(alloc::format!("expected base:B[:[..]], got {s:?}")))?;
        let (base_text, window) = match rest.split_once(':') {
            Some((b, w)) => (b, w.parse::<Configuration>()?.into_bins()),
            None => (rest, Vec::new()),
        };
        let base = base_text
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(alloc::format!("bad base {base_text:?}")))?;
        Self::with_window(base, window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn unit_move_opens_a_bin() {
        let mut x = LazyInfiniteConfiguration::new(1).unwrap();
        assert!(x.apply_move(1).unwrap());
        assert_eq!(x.window(), &[1]);
        assert_eq!(x.shift(), 1);
    }

    #[test]
    fn deep_ball_increments_right_neighbour() {
        let mut x = LazyInfiniteConfiguration::with_window(2, vec![2, 1]).unwrap();
        assert!(!x.apply_move(5).unwrap());
        assert_eq!(x.window(), &[3, 1]);
        assert_eq!(x.shift(), 0);
    }

    #[test]
    fn materializes_only_what_it_modifies() {
        // Ball 7 over base 2 with empty window lies at depth 3; depth 2 gains one.
        let mut x = LazyInfiniteConfiguration::new(2).unwrap();
        x.apply_move(7).unwrap();
        assert_eq!(x.window(), &[3, 2, 2]);
        assert_eq!(x.top_bins(5), vec![2, 2, 3, 2, 2]);
        // Rightmost base bin holds ball 1 and 2.
        let mut y = LazyInfiniteConfiguration::new(2).unwrap();
        assert!(y.apply_move(2).unwrap());
        assert_eq!(y.window(), &[1]);
        assert_eq!(y.bin(1), 2);
    }

    #[test]
    fn projection_reads_through_base() {
        let x = LazyInfiniteConfiguration::with_window(3, vec![1]).unwrap();
        assert_eq!(x.project(6).unwrap().bins(), &[2, 3, 1]);
        assert!(x.project(0).is_err());
        let y = LazyInfiniteConfiguration::with_window(1, vec![2, 1]).unwrap();
        assert!(x.projections_agree(&y, 1));
        assert!(x.projections_agree(&y, 3));
        assert!(!x.projections_agree(&y, 4));
    }

    #[test]
    fn text_round_trip() {
        let x: LazyInfiniteConfiguration = "base:2:[2,1]".parse().unwrap();
        assert_eq!(x.base(), 2);
        assert_eq!(x.window(), &[2, 1]);
        assert_eq!(x.to_string(), "base:2:[2,1]");
        assert_eq!("base:3".parse::<LazyInfiniteConfiguration>().unwrap().to_string(), "base:3");
        assert!("base:0".parse::<LazyInfiniteConfiguration>().is_err());
        assert!("3".parse::<LazyInfiniteConfiguration>().is_err());
    }
}
