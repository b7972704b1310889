//! Explicit coupling words built from two move types `k < l`.
//!
//! Writing `l = k*d + r` with `d >= 1` and `1 <= r <= k`, the word
//! `Psi1 = k^M` (with `M = max(l, k(k-1)/2)`) sends every `l`-configuration into
//! the `k`-cycle `X_0, ..., X_{k-1}` of `phi_k`, and `k - 1` repetitions of
//! `Psi = k^(k-r) l^(dr + k d(d-1)/2) k^(l-k)` (application order) contract that
//! cycle onto `X_0`. Coupling more than `l` balls appends `phi_l` moves.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::word::MoveWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CouplingParams {
    pub k: u64,
    pub l: u64,
    pub d: u64,
    pub r: u64,
    pub m: u64,
}

impl CouplingParams {
    /// Requires `2 <= k < l`. `d` and `r` are the unique integers with
    /// `l = k*d + r`, `d >= 1` and `1 <= r <= k`.
    pub fn derive(k: u64, l: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams { k, l, reason: "need k >= 2" });
        }
        if k >= l {
            return Err(Error::InvalidParams { k, l, reason: "need k < l" });
        }
        let d = (l - 1) / k;
        let r = l - k * d;
        let m = l.max(k * (k - 1) / 2);
        Ok(Self { k, l, d, r, m })
    }

    fn check_index(&self, i: u64) -> Result<()> {
        if i >= self.k {
            Err(Error::IndexOutOfRange { index: i, bound: self.k })
        } else {
            Ok(())
        }
    }

    /// The `i`-th member of the `phi_k` cycle:
    /// `X_0 = [k,..,k,r]` (`d` bins of `k`),
    /// `X_i = [i, k,..,k, r-i]` (`d` middle bins) for `1 <= i < r`,
    /// `X_i = [i, k,..,k, k+r-i]` (`d-1` middle bins) for `r <= i < k`.
    pub fn x(&self, i: u64) -> Result<Configuration> {
        self.check_index(i)?;
        let (k, d, r) = (self.k, self.d as usize, self.r);
        let bins = if i == 0 {
            let mut b = vec![k; d];
            b.push(r);
            b
        } else if i < r {
            let mut b = vec![i];
            b.extend(core::iter::repeat_n(k, d));
            b.push(r - i);
            b
        } else {
            let mut b = vec![i];
            b.extend(core::iter::repeat_n(k, d - 1));
            b.push(k + r - i);
            b
        };
        Ok(Configuration::from_bins_unchecked(bins))
    }

    /// The whole family `X_0, ..., X_{k-1}`.
    pub fn x_family(&self) -> Vec<Configuration> {
        (0..self.k).map(|i| self.x(i).expect("index in range")).collect()
    }

    /// The contraction describing how `Psi` acts on the `X` family.
    pub fn f(&self, i: u64) -> Result<u64> {
        self.check_index(i)?;
        let (k, l, d, r) = (self.k as i64, self.l as i64, self.d as i64, self.r as i64);
        let i = i as i64;
        let value = if i < k - r { k - l + d * i } else { k - (d + 1) * (k - i) };
        Ok(value.max(0) as u64)
    }

    /// `phi_l` exponent inside `Psi`.
    pub fn psi_middle_exponent(&self) -> u64 {
        let (k, d, r) = (self.k, self.d, self.r);
        d * r + k * d * (d - 1) / 2
    }

    /// `Psi1 = k^M`.
    pub fn psi1(&self) -> MoveWord {
        MoveWord::power(self.k, self.m)
    }

    /// `Psi` in application order: `k^(k-r)`, then `l^(dr + k d(d-1)/2)`, then `k^(l-k)`.
    pub fn psi(&self) -> MoveWord {
        let mut w = MoveWord::power(self.k, self.k - self.r);
        w.push(self.l, self.psi_middle_exponent());
        w.push(self.k, self.l - self.k);
        w
    }

    /// `Psi2 Psi1`: `Psi1` followed by `k - 1` copies of `Psi`. Sends every
    /// `l`-configuration to `X_0`.
    pub fn psi2_psi1(&self) -> MoveWord {
        self.psi1().then(&self.psi().repeated(self.k - 1))
    }

    /// `Psi2 Psi1` followed by `phi_k^(k-r)`; every `l`-configuration ends in
    /// `X_{r mod k}`, whose rightmost bin holds exactly `k` balls.
    pub fn full_rightmost_bin_word(&self) -> MoveWord {
        let mut w = self.psi2_psi1();
        w.push(self.k, self.k - self.r);
        w
    }

    /// Length of `Psi2 Psi1` as given by the printed closed form, which uses
    /// `k d(d+1)/2` where the definition of `Psi` uses `k d(d-1)/2`.
    pub fn printed_length_formula(&self) -> u64 {
        let (k, l, d, r) = (self.k, self.l, self.d, self.r);
        self.m + (k - 1) * (k - r + d * r + k * d * (d + 1) / 2 + l - k)
    }
}

/// `Y_j = [j, l-j]` for `1 <= j < l`, `Y_0 = [l]`: the `phi_l` cycle of two-bin
/// configurations.
pub fn make_y(l: u64, j: u64) -> Result<Configuration> {
    if j >= l {
        return Err(Error::IndexOutOfRange { index: j, bound: l });
    }
    let bins = if j == 0 { vec![l] } else { vec![j, l - j] };
    Ok(Configuration::from_bins_unchecked(bins))
}

/// A coupling word for the rightmost `n` balls together with its accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingPlan {
    pub k: u64,
    pub l: u64,
    pub n: u64,
    /// `None` when `k = 1`, where the word is simply `1^N`.
    pub params: Option<CouplingParams>,
    pub word: MoveWord,
    pub psi1_len: u64,
    pub psi_len: u64,
    pub tail_len: u64,
    /// `N + 4 l^2`.
    pub bound: u64,
    /// The projection every starting configuration is sent to, on
    /// [`coupled_balls`](Self::coupled_balls) balls: `X_0` when `k >= 2` and
    /// `N <= l`, `X_0` grown by the `phi_l` tail when `N > l`, and `N` single
    /// balls when `k = 1`.
    pub target: Configuration,
}

impl CouplingPlan {
    /// Requires `1 <= k < l` and `n >= 1`.
    pub fn build(k: u64, l: u64, n: u64) -> Result<Self> {
        if k == 0 || k >= l {
            return Err(Error::InvalidParams { k, l, reason: "need 1 <= k < l" });
        }
        if n == 0 {
            return Err(Error::InvalidParams { k, l, reason: "need N >= 1" });
        }
        let bound = n + 4 * l * l;
        if k == 1 {
            return Ok(Self {
                k,
                l,
                n,
                params: None,
                word: MoveWord::power(1, n),
                psi1_len: n,
                psi_len: 0,
                tail_len: 0,
                bound,
                target: Configuration::ones(n),
            });
        }
        let params = CouplingParams::derive(k, l)?;
        let tail_len = n.saturating_sub(l);
        let mut word = params.psi2_psi1();
        word.push(l, tail_len);
        let mut target = params.x(0)?;
        for _ in 0..tail_len {
            target.apply_move_growing(l)?;
        }
        Ok(Self {
            k,
            l,
            n,
            params: Some(params),
            psi1_len: params.psi1().len(),
            psi_len: params.psi().len(),
            tail_len,
            word,
            bound,
            target,
        })
    }

    /// Number of rightmost balls whose positions the word fixes; `target`
    /// holds exactly this many balls. At least `N`.
    pub fn coupled_balls(&self) -> u64 {
        self.target.total()
    }

    pub fn accounting(&self) -> LengthAccounting {
        LengthAccounting {
            actual: self.word.len(),
            printed_formula: self.params.map(|p| p.printed_length_formula() + self.tail_len),
            bound: self.bound,
            derivation_bound: self.n.max(self.l) + 4 * self.l * self.l,
        }
    }
}

/// Measured and formula lengths of a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthAccounting {
    pub actual: u64,
    /// Closed-form length of `Psi2 Psi1` as printed (with `k d(d+1)/2`), plus
    /// the tail. `None` for `k = 1`.
    pub printed_formula: Option<u64>,
    /// `N + 4 l^2`.
    pub bound: u64,
    /// `max(N, l) + 4 l^2`: what the step-by-step estimate guarantees.
    pub derivation_bound: u64,
}

impl LengthAccounting {
    pub fn within_bound(&self) -> bool {
        self.actual < self.bound
    }
}
