//! Enumeration of all `l`-configurations (compositions of `l`).
//!
//! Configuration `m` of size `l` is read off the binary mask `m` over the
//! `l - 1` gaps between consecutive balls (counted from the left): bit `i` set
//! means a bin boundary after ball `i + 1`. Masks run in ascending order, so
//! the enumeration order and the state numbering of the automaton coincide.

use alloc::vec::Vec;
use core::ops::Range;

use crate::config::Configuration;
use crate::error::{Error, Result};

/// Largest `l` whose universe (`2^(l-1)` configurations) may be enumerated.
pub const MAX_ENUMERATION_L: u64 = 24;

pub fn check_universe(l: u64) -> Result<()> {
    if l == 0 || l > MAX_ENUMERATION_L {
        return Err(Error::UniverseTooLarge { l, cap: MAX_ENUMERATION_L });
    }
    Ok(())
}

/// `2^(l-1)`.
pub fn universe_size(l: u64) -> u64 {
    1u64 << (l - 1)
}

pub fn config_from_mask(l: u64, mask: u32) -> Configuration {
    let mut bins = Vec::new();
    let mut current = 1u64;
    for gap in 0..l - 1 {
        if mask >> gap & 1 == 1 {
            bins.push(current);
            current = 1;
        } else {
            current += 1;
        }
    }
    bins.push(current);
    Configuration::from_bins_unchecked(bins)
}

/// Inverse of [`config_from_mask`] for a configuration of any size `l <= 33`.
pub fn mask_of(config: &Configuration) -> u32 {
    let mut mask = 0u32;
    let mut balls = 0u64;
    let bins = config.bins();
    for &count in &bins[..bins.len() - 1] {
        balls += count;
        mask |= 1 << (balls - 1);
    }
    mask
}

/// Streams every `l`-configuration exactly once, in ascending mask order.
#[derive(Debug, Clone)]
pub struct Compositions {
    l: u64,
    masks: Range<u32>,
}

impl Iterator for Compositions {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        self.masks.next().map(|m| config_from_mask(self.l, m))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.masks.size_hint()
    }
}

impl ExactSizeIterator for Compositions {}

pub fn enumerate_configs(l: u64) -> Result<Compositions> {
    check_universe(l)?;
    Ok(Compositions { l, masks: 0..universe_size(l) as u32 })
}

/// The configurations whose masks fall in `masks`, for chunked sweeps.
pub fn enumerate_range(l: u64, masks: Range<u32>) -> Result<Compositions> {
    check_universe(l)?;
    let end = masks.end.min(universe_size(l) as u32);
    Ok(Compositions { l, masks: masks.start.min(end)..end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    #[test]
    fn l3_listing() {
        let all: Vec<_> = enumerate_configs(3).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(all, ["[3]", "[1,2]", "[2,1]", "[1,1,1]"]);
        let one: Vec<_> = enumerate_configs(1).unwrap().collect();
        assert_eq!(one, [Configuration::ones(1)]);
    }

    #[test]
    fn counts_and_distinctness() {
        for l in 1..=12 {
            let set: BTreeSet<_> = enumerate_configs(l).unwrap().collect();
            assert_eq!(set.len() as u64, universe_size(l));
            assert!(set.iter().all(|c| c.total() == l));
        }
    }

    #[test]
    fn mask_round_trip() {
        for l in 1..=10 {
            for m in 0..universe_size(l) as u32 {
                assert_eq!(mask_of(&config_from_mask(l, m)), m);
            }
        }
    }

    #[test]
    fn cap() {
        assert!(enumerate_configs(24).is_ok());
        assert_eq!(
            enumerate_configs(25).err(),
            Some(Error::UniverseTooLarge { l: 25, cap: 24 })
        );
        assert!(enumerate_configs(0).is_err());
        assert_eq!(enumerate_range(4, 6..100).unwrap().count(), 2);
    }
}
