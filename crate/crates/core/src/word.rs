//! Run-length encoded move words.
//!
//! Words are applied **left to right**: the first run acts first. This is the
//! reverse of writing algorithms as compositions of maps, so the composition
//! `phi_5^3 phi_2` (apply `phi_2`, then `phi_5` three times) is the word `2 5^3`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::lazy::LazyInfiniteConfiguration;

/// A maximal block of identical moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub move_type: u64,
    pub repeat: u64,
}

/// A finite sequence of moves, stored as runs with adjacent equal move types
/// merged, so equal words compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveWord {
    runs: Vec<Run>,
    len: u64,
}

impl MoveWord {
    pub fn new() -> Self {
        Self::default()
    }

    /// `move_type` repeated `repeat` times.
    pub fn power(move_type: u64, repeat: u64) -> Self {
        let mut w = Self::new();
        w.push(move_type, repeat);
        w
    }

    /// Appends `repeat` copies of `move_type`. Zero repeats are ignored.
    ///
    /// # Panics
    /// If `move_type` is zero.
    pub fn push(&mut self, move_type: u64, repeat: u64) {
        assert!(move_type >= 1, "move types are positive");
        if repeat == 0 {
            return;
        }
        self.len += repeat;
        match self.runs.last_mut() {
            Some(last) if last.move_type == move_type => last.repeat += repeat,
            _ => self.runs.push(Run { move_type, repeat }),
        }
    }

    pub fn extend_from(&mut self, other: &MoveWord) {
        for run in &other.runs {
            self.push(run.move_type, run.repeat);
        }
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: &MoveWord) -> Self {
        self.extend_from(other);
        self
    }

    /// `self` repeated `times` times.
    pub fn repeated(&self, times: u64) -> Self {
        let mut w = Self::new();
        for _ in 0..times {
            w.extend_from(self);
        }
        w
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Total number of moves.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Largest move type used, 0 for the empty word.
    pub fn max_move(&self) -> u64 {
        self.runs.iter().map(|r| r.move_type).max().unwrap_or(0)
    }

    /// Moves in application order.
    pub fn moves(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.move_type, r.repeat as usize))
    }

    pub fn apply(&self, config: &Configuration) -> Result<Configuration> {
        let mut x = config.clone();
        self.apply_in_place(&mut x)?;
        Ok(x)
    }

    pub fn apply_in_place(&self, config: &mut Configuration) -> Result<()> {
        if self.max_move() > config.total() {
            return Err(Error::MoveTooLarge { k: self.max_move(), total: config.total() });
        }
        for k in self.moves() {
            config.apply_move_in_place(k)?;
        }
        Ok(())
    }

    pub fn apply_infinite(&self, config: &LazyInfiniteConfiguration) -> LazyInfiniteConfiguration {
        let mut x = config.clone();
        self.apply_infinite_in_place(&mut x);
        x
    }

    pub fn apply_infinite_in_place(&self, config: &mut LazyInfiniteConfiguration) {
        for k in self.moves() {
            config.apply_move(k).expect("move types are positive");
        }
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, run) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if run.repeat == 1 {
                write!(f, "{}", run.move_type)?;
            } else {
                write!(f, "{}^{}", run.move_type, run.repeat)?;
            }
        }
        Ok(())
    }
}

impl FromStr for MoveWord {
    type Err = Error;

    /// Grammar: `term (" " term)*` with `term := INT ("^" INT)?`. The empty
    /// string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut word = MoveWord::new();
        for term in s.split_whitespace() {
            let (k, rep) = match term.split_once('^') {
                Some((k, rep)) => (k, rep),
                None => (term, "1"),
            };
            let k: u64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad move type in term {term:?}")))?;
            let rep: u64 = rep
                .parse()
                .map_err(|_| Error::Parse(format!("bad repeat in term {term:?}")))?;
            if k == 0 || rep == 0 {
                return Err(Error::Parse(format!("move types and repeats are positive: {term:?}")));
            }
            word.push(k, rep);
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn c(bins: &[u64]) -> Configuration {
        Configuration::new(bins.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let w: MoveWord = "2".parse().unwrap();
        assert_eq!(w.apply(&c(&[1, 2, 2])).unwrap(), c(&[2, 2, 1]));
        let w: MoveWord = "1^2".parse().unwrap();
        assert_eq!(w.apply(&c(&[3])).unwrap(), c(&[1, 1, 1]));
        let w: MoveWord = "7".parse().unwrap();
        assert!(matches!(w.apply(&c(&[2, 1])), Err(Error::MoveTooLarge { .. })));
    }

    #[test]
    fn runs_merge() {
        let a: MoveWord = "3 3".parse().unwrap();
        let b: MoveWord = "3^2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "3^2");
        let x = c(&[2, 1, 3]);
        assert_eq!(a.apply(&x).unwrap(), b.apply(&x).unwrap());
    }

    #[test]
    fn application_order_is_left_to_right() {
        // phi_5^3 phi_2 in composition notation.
        let w: MoveWord = "2 5^3".parse().unwrap();
        let x = c(&[1, 2, 2, 3]);
        let mut expect = x.apply_move(2).unwrap();
        for _ in 0..3 {
            expect = expect.apply_move(5).unwrap();
        }
        assert_eq!(w.apply(&x).unwrap(), expect);
        assert_eq!(w.moves().collect::<Vec<_>>(), [2, 5, 5, 5]);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn grammar() {
        assert!("".parse::<MoveWord>().unwrap().is_empty());
        assert!("0".parse::<MoveWord>().is_err());
        assert!("2^0".parse::<MoveWord>().is_err());
        assert!("2^".parse::<MoveWord>().is_err());
        assert!("a".parse::<MoveWord>().is_err());
        let w: MoveWord = "2^6 5^4 2^3".parse().unwrap();
        assert_eq!(w.len(), 13);
        assert_eq!(w.max_move(), 5);
        assert_eq!(w.repeated(2).len(), 26);
    }
}
