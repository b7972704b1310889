use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum DistKind {
    Deterministic(u64),
    /// Uniform over a finite set, stored sorted.
    Uniform(Vec<u64>),
    /// `(value, probability)` pairs, stored sorted by value.
    Categorical(Vec<(u64, f64)>),
}

/// Law of the move type drawn at each step. Support is bounded.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSpec {
    kind: DistKind,
    support_max: u64,
}

impl DistributionSpec {
    pub fn deterministic(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidDistribution("move types are positive".into()));
        }
        Ok(Self { kind: DistKind::Deterministic(c), support_max: c })
    }

    pub fn uniform(values: &[u64]) -> Result<Self> {
        let mut v = values.to_vec();
        v.sort_unstable();
        let n = v.len();
        v.dedup();
        if v.is_empty() || v.len() != n || v[0] == 0 {
            return Err(Error::InvalidDistribution(
                "uniform support must be a nonempty set of distinct positive integers".into(),
            ));
        }
        let support_max = *v.last().expect("nonempty");
        Ok(Self { kind: DistKind::Uniform(v), support_max })
    }

    pub fn categorical(pairs: &[(u64, f64)]) -> Result<Self> {
        let mut v = pairs.to_vec();
        v.sort_by_key(|&(x, _)| x);
        if v.is_empty() || v[0].0 == 0 || v.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDistribution(
                "categorical values must be distinct positive integers".into(),
            ));
        }
        if v.iter().any(|&(_, p)| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidDistribution("probabilities must lie in [0, 1]".into()));
        }
        let sum: f64 = v.iter().map(|&(_, p)| p).sum();
        if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}, not 1")));
        }
        let support_max = v.iter().filter(|&&(_, p)| p > 0.0).map(|&(x, _)| x).max().unwrap_or(0);
        if support_max == 0 {
            return Err(Error::InvalidDistribution("no value has positive probability".into()));
        }
        Ok(Self { kind: DistKind::Categorical(v), support_max })
    }

    pub fn kind(&self) -> &DistKind {
        &self.kind
    }

    /// Largest move type with positive probability.
    pub fn support_max(&self) -> u64 {
        self.support_max
    }

    /// Values with positive probability, ascending.
    pub fn support(&self) -> Vec<u64> {
        match &self.kind {
            DistKind::Deterministic(c) => alloc::vec![*c],
            DistKind::Uniform(v) => v.clone(),
            DistKind::Categorical(v) => v.iter().filter(|p| p.1 > 0.0).map(|p| p.0).collect(),
        }
    }

    /// Whether a single value carries all the mass.
    pub fn is_deterministic(&self) -> bool {
        self.support().len() == 1
    }

    pub fn probability(&self, value: u64) -> f64 {
        match &self.kind {
            DistKind::Deterministic(c) => f64::from(u8::from(*c == value)),
            DistKind::Uniform(v) => {
                if v.binary_search(&value).is_ok() {
                    1.0 / v.len() as f64
                } else {
                    0.0
                }
            }
            DistKind::Categorical(v) => {
                v.iter().find(|p| p.0 == value).map_or(0.0, |p| p.1)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.kind {
            DistKind::Deterministic(c) => *c,
            DistKind::Uniform(v) => v[rng.gen_range(0..v.len())],
            DistKind::Categorical(v) => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                for &(x, p) in v {
                    acc += p;
                    if u < acc {
                        return x;
                    }
                }
                // Rounding left a sliver above the cumulative sum.
                self.support_max
            }
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DistKind::Deterministic(c) => write!(f, "det:{c}"),
            DistKind::Uniform(v) => {
                f.write_str("unif:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            DistKind::Categorical(v) => {
                f.write_str("cat:")?;
                for (i, (x, p)) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}@{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_value(t: &str) -> Result<u64> {
    t.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad move type {t:?} in distribution")))
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// `det:3`, `unif:2,5` or `cat:2@0.3,5@0.7`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("distribution needs a kind prefix: {s:?}")))?;
        match kind {
            "det" => Self::deterministic(parse_value(body)?),
            "unif" => {
                let values = body.split(',').map(parse_value).collect::<Result<Vec<_>>>()?;
                Self::uniform(&values)
            }
            "cat" => {
                let pairs = body
                    .split(',')
                    .map(|term| {
                        let (x, p) = term
                            .split_once('@')
                            .ok_or_else(|| Error::Parse(format!("expected value@prob: {term:?}")))?;
                        let p: f64 = p
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad probability in {term:?}")))?;
                        Ok((parse_value(x)?, p))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::categorical(&pairs)
            }
            other => Err(Error::Parse(format!("unknown distribution kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_print() {
        for text in ["det:3", "unif:2,5", "cat:2@0.3,5@0.7"] {
            let d: DistributionSpec = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        let d: DistributionSpec = "unif:5,2".parse().unwrap();
        assert_eq!(d.support(), [2, 5]);
        assert_eq!(d.support_max(), 5);
        assert!(!d.is_deterministic());
        assert!("unif:1".parse::<DistributionSpec>().unwrap().is_deterministic());
        assert!("cat:1@1.0,4@0".parse::<DistributionSpec>().unwrap().is_deterministic());
    }

    #[test]
    fn rejects_bad_specs() {
        for text in ["det:0", "unif:", "unif:2,2", "cat:2@0.5,3@0.4", "cat:2@1.5,3@-0.5", "cat:0@1", "bin:3", "3"] {
            assert!(text.parse::<DistributionSpec>().is_err(), "{text}");
        }
        assert!(matches!(
            "cat:2@0.5,3@0.4".parse::<DistributionSpec>(),
            Err(Error::InvalidDistribution(_))
        ));
    }

    #[test]
    fn probabilities() {
        let d: DistributionSpec = "cat:2@0.25,5@0.75".parse().unwrap();
        assert_eq!(d.probability(5), 0.75);
        assert_eq!(d.probability(3), 0.0);
        let d: DistributionSpec = "unif:1,2,3,4".parse().unwrap();
        assert_eq!(d.probability(3), 0.25);
    }

    #[test]
    fn sampling_stays_in_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d: DistributionSpec = "cat:2@0.25,5@0.75".parse().unwrap();
        let mut fives = 0;
        for _ in 0..4000 {
            let x = d.sample(&mut rng);
            assert!(x == 2 || x == 5);
            fives += usize::from(x == 5);
        }
        // 3000 expected, sd ~ 27
        assert!((2850..3150).contains(&fives), "{fives}");
    }
}
