//! The `l`-configuration dynamics as a finite automaton, and synchronizing
//! words for it.
//!
//! States are the `2^(l-1)` configurations with `l` balls, numbered by their
//! enumeration mask; letters are move types.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::enumerate::{check_universe, config_from_mask, mask_of, universe_size};
use crate::error::{Error, Result};
use crate::simulate::DistributionSpec;
use crate::word::MoveWord;

/// Default cap on the number of distinct subsets the exact search may visit.
pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 21;

/// Largest `l` accepted by the greedy pair search.
pub const MAX_GREEDY_L: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinAutomaton {
    l: u64,
    alphabet: Vec<u64>,
    /// Row-major `state x letter` table.
    delta: Vec<u32>,
}

/// Sorted, deduplicated alphabet after range checks.
pub fn normalize_alphabet(l: u64, alphabet: &[u64]) -> Result<Vec<u64>> {
    if alphabet.is_empty() {
        return Err(Error::Parse("alphabet must not be empty".into()));
    }
    let mut letters = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    if let Some(&bad) = letters.iter().find(|&&a| a == 0 || a > l) {
        return Err(Error::LetterTooLarge { letter: bad, l });
    }
    Ok(letters)
}

/// Transitions out of state `mask`, one per letter.
pub fn transition_row(l: u64, alphabet: &[u64], mask: u32) -> Vec<u32> {
    let x = config_from_mask(l, mask);
    alphabet
        .iter()
        .map(|&a| mask_of(&x.apply_move(a).expect("letters are at most l")))
        .collect()
}

impl BinAutomaton {
    pub fn build(l: u64, alphabet: &[u64]) -> Result<Self> {
        check_universe(l)?;
        let alphabet = normalize_alphabet(l, alphabet)?;
        let delta = (0..universe_size(l) as u32)
            .flat_map(|m| transition_row(l, &alphabet, m))
            .collect();
        Ok(Self { l, alphabet, delta })
    }

    /// Assembles an automaton from rows computed elsewhere (e.g. in parallel).
    /// `rows[s]` must equal [`transition_row`]`(l, alphabet, s)`.
    pub fn from_rows(l: u64, alphabet: Vec<u64>, rows: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(rows.len() as u64, universe_size(l));
        let delta = rows.into_iter().flatten().collect();
        Self { l, alphabet, delta }
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn alphabet(&self) -> &[u64] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len() / self.alphabet.len()
    }

    pub fn state(&self, s: u32) -> Configuration {
        config_from_mask(self.l, s)
    }

    pub fn state_index(&self, x: &Configuration) -> Option<u32> {
        (x.total() == self.l).then(|| mask_of(x))
    }

    /// Successor of state `s` under the letter at index `letter`.
    pub fn next(&self, s: u32, letter: usize) -> u32 {
        self.delta[s as usize * self.alphabet.len() + letter]
    }

    fn letter_index(&self, move_type: u64) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == move_type)
    }

    /// Runs `word` from state `s` through the table.
    pub fn run(&self, s: u32, word: &MoveWord) -> Option<u32> {
        let mut s = s;
        for m in word.moves() {
            s = self.next(s, self.letter_index(m)?);
        }
        Some(s)
    }

    /// Applies `word` to every state with configuration arithmetic (not the
    /// table) and returns the common end state if there is one.
    pub fn synchronizes(&self, word: &MoveWord) -> Option<Configuration> {
        if word.moves().any(|m| self.letter_index(m).is_none()) {
            return None;
        }
        let mut common: Option<Configuration> = None;
        for s in 0..self.num_states() as u32 {
            let end = word.apply(&self.state(s)).ok()?;
            match &common {
                Some(c) if *c != end => return None,
                Some(_) => {}
                None => common = Some(end),
            }
        }
        common
    }

    /// Breadth-first search over subsets reachable from the full state set;
    /// the first singleton found gives a shortest synchronizing word. Letters
    /// are tried in ascending order.
    pub fn shortest_sync_exact(&self, budget: usize) -> Result<SyncResult> {
        let n = self.num_states();
        let words_per_set = n.div_ceil(64);
        let mut full = vec![0u64; words_per_set];
        for s in 0..n {
            full[s / 64] |= 1 << (s % 64);
        }
        let mut seen: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        // (parent index, letter index) per discovered subset.
        let mut parents: Vec<(usize, usize)> = vec![(usize::MAX, 0)];
        let mut sets: Vec<Vec<u64>> = vec![full.clone()];
        seen.insert(full, 0);
        let mut queue = VecDeque::from([0usize]);
        let mut found = if n == 1 { Some(0) } else { None };
        'bfs: while let Some(id) = queue.pop_front() {
            if found.is_some() {
                break;
            }
            for letter in 0..self.alphabet.len() {
                let mut image = vec![0u64; words_per_set];
                let mut count = 0u32;
                for (w, &bits) in sets[id].iter().enumerate() {
                    let mut bits = bits;
                    while bits != 0 {
                        let s = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let t = self.next(s as u32, letter) as usize;
                        let bit = 1u64 << (t % 64);
                        if image[t / 64] & bit == 0 {
                            image[t / 64] |= bit;
                            count += 1;
                        }
                    }
                }
                if seen.contains_key(&image) {
                    continue;
                }
                if seen.len() >= budget {
                    return Err(Error::SubsetSpaceTooLarge { budget });
                }
                let new_id = sets.len();
                seen.insert(image.clone(), new_id);
                sets.push(image);
                parents.push((id, letter));
                if count == 1 {
                    found = Some(new_id);
                    break 'bfs;
                }
                queue.push_back(new_id);
            }
        }
        let end = found.ok_or(Error::NotSynchronizable)?;
        let mut letters = Vec::new();
        let mut cur = end;
        while cur != 0 {
            let (parent, letter) = parents[cur];
            letters.push(self.alphabet[letter]);
            cur = parent;
        }
        let mut word = MoveWord::new();
        for &m in letters.iter().rev() {
            word.push(m, 1);
        }
        self.finish(word, SyncMethod::Exact)
    }

    /// Greedy pair merging: repeatedly append a shortest word that merges some
    /// pair of the current image set. Valid but not necessarily shortest.
    pub fn greedy_sync(&self) -> Result<SyncResult> {
        if self.l > MAX_GREEDY_L {
            return Err(Error::UniverseTooLarge { l: self.l, cap: MAX_GREEDY_L });
        }
        let n = self.num_states();
        let merge = PairTable::build(self);
        let mut current: Vec<u32> = (0..n as u32).collect();
        let mut word = MoveWord::new();
        while current.len() > 1 {
            let mut best: Option<(u32, u32, u32)> = None;
            for (i, &q) in current.iter().enumerate() {
                for &p in &current[..i] {
                    let d = merge.dist(p, q);
                    if d != u32::MAX && best.is_none_or(|b| d < b.0) {
                        best = Some((d, p, q));
                    }
                }
            }
            let (_, mut p, mut q) = best.ok_or(Error::NotSynchronizable)?;
            let mut piece = MoveWord::new();
            while p != q {
                let letter = merge.next_letter(p, q);
                piece.push(self.alphabet[letter], 1);
                p = self.next(p, letter);
                q = self.next(q, letter);
            }
            for s in current.iter_mut() {
                *s = self.run(*s, &piece).expect("letters from the alphabet");
            }
            current.sort_unstable();
            current.dedup();
            word.extend_from(&piece);
        }
        self.finish(word, SyncMethod::Greedy)
    }

    fn finish(&self, word: MoveWord, method: SyncMethod) -> Result<SyncResult> {
        let terminal = self.synchronizes(&word).ok_or_else(|| {
            Error::InvalidConfiguration(format!("search produced a non-synchronizing word {word}"))
        })?;
        Ok(SyncResult { word, terminal, method, is_optimal: method == SyncMethod::Exact })
    }
}

/// Shortest merging words for all pairs of states, via backward BFS from the
/// diagonal.
struct PairTable {
    dist: Vec<u32>,
    next: Vec<u8>,
}

fn pair_index(p: u32, q: u32) -> usize {
    let (p, q) = if p < q { (p as usize, q as usize) } else { (q as usize, p as usize) };
    q * (q - 1) / 2 + p
}

impl PairTable {
    fn build(a: &BinAutomaton) -> Self {
        let n = a.num_states();
        let letters = a.alphabet.len();
        // Preimages per letter, CSR layout.
        let mut pre_start = vec![vec![0usize; n + 1]; letters];
        let mut pre = vec![vec![0u32; n]; letters];
        for c in 0..letters {
            for s in 0..n {
                pre_start[c][a.next(s as u32, c) as usize + 1] += 1;
            }
            for t in 0..n {
                pre_start[c][t + 1] += pre_start[c][t];
            }
            let mut fill = pre_start[c].clone();
            for s in 0..n {
                let t = a.next(s as u32, c) as usize;
                pre[c][fill[t]] = s as u32;
                fill[t] += 1;
            }
        }
        let pairs = n * n.saturating_sub(1) / 2;
        let mut dist = vec![u32::MAX; pairs];
        let mut next = vec![0u8; pairs];
        let mut queue = VecDeque::new();
        for c in 0..letters {
            for t in 0..n {
                let ps = &pre[c][pre_start[c][t]..pre_start[c][t + 1]];
                for (i, &q) in ps.iter().enumerate() {
                    for &p in &ps[..i] {
                        let idx = pair_index(p, q);
                        if dist[idx] == u32::MAX {
                            dist[idx] = 1;
                            next[idx] = c as u8;
                            queue.push_back((p, q));
                        }
                    }
                }
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let d = dist[pair_index(p, q)];
            for c in 0..letters {
                let pp = &pre[c][pre_start[c][p as usize]..pre_start[c][p as usize + 1]];
                let qq = &pre[c][pre_start[c][q as usize]..pre_start[c][q as usize + 1]];
                for &p2 in pp {
                    for &q2 in qq {
                        let idx = pair_index(p2, q2);
                        if dist[idx] == u32::MAX {
                            dist[idx] = d + 1;
                            next[idx] = c as u8;
                            queue.push_back((p2, q2));
                        }
                    }
                }
            }
        }
        Self { dist, next }
    }

    fn dist(&self, p: u32, q: u32) -> u32 {
        self.dist[pair_index(p, q)]
    }

    fn next_letter(&self, p: u32, q: u32) -> usize {
        self.next[pair_index(p, q)] as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyncMethod {
    Exact,
    Greedy,
}

impl SyncMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SyncMethod::Exact => "exact",
            SyncMethod::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncResult {
    pub word: MoveWord,
    pub terminal: Configuration,
    pub method: SyncMethod,
    pub is_optimal: bool,
}

impl SyncResult {
    /// Probability of seeing `word` in an i.i.d. move sequence drawn from
    /// `dist`, divided by its length. `None` for the empty word.
    pub fn probability_length_ratio(&self, dist: &DistributionSpec) -> Option<f64> {
        if self.word.is_empty() {
            return None;
        }
        let p: f64 = self.word.moves().map(|m| dist.probability(m)).product();
        Some(p / self.word.len() as f64)
    }
}
