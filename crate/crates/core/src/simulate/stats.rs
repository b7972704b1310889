use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Empirical counts of top-bin content vectors (leftmost bin first).
pub type Histogram = BTreeMap<Vec<u64>, u64>;

/// Multiples of [`tv_noise_sigma`] below which two histograms count as
/// statistically indistinguishable.
pub const TV_NOISE_SIGMAS: f64 = 3.0;

pub(crate) fn record(hist: &mut Histogram, key: &[u64]) {
    match hist.get_mut(key) {
        Some(count) => *count += 1,
        None => {
            hist.insert(key.to_vec(), 1);
        }
    }
}

pub fn sample_size(hist: &Histogram) -> u64 {
    hist.values().sum()
}

/// Total-variation distance between the two empirical distributions.
pub fn tv_distance(a: &Histogram, b: &Histogram) -> f64 {
    let (na, nb) = (sample_size(a) as f64, sample_size(b) as f64);
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let mut sum = 0.0;
    for (key, &ca) in a {
        let cb = b.get(key).copied().unwrap_or(0);
        sum += (ca as f64 / na - cb as f64 / nb).abs();
    }
    for (key, &cb) in b {
        if !a.contains_key(key) {
            sum += cb as f64 / nb;
        }
    }
    sum / 2.0
}

/// Sampling-noise scale of [`tv_distance`] when both histograms come from the
/// same law: `1/2 * sum_x sqrt(p_x (1 - p_x) (1/n_a + 1/n_b))` with `p` the
/// pooled frequencies. This bounds the standard deviation of the estimate and
/// is about 1.25 times its expected value under that hypothesis.
pub fn tv_noise_sigma(a: &Histogram, b: &Histogram) -> f64 {
    let (na, nb) = (sample_size(a), sample_size(b));
    if na == 0 || nb == 0 {
        return 0.0;
    }
    let total = (na + nb) as f64;
    let scale = 1.0 / na as f64 + 1.0 / nb as f64;
    let mut keys: Vec<&Vec<u64>> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let sum: f64 = keys
        .into_iter()
        .map(|k| {
            let c = a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0);
            let p = c as f64 / total;
            libm::sqrt(p * (1.0 - p) * scale)
        })
        .sum();
    sum / 2.0
}

/// Whether the two histograms share at least one cell.
pub fn overlaps(a: &Histogram, b: &Histogram) -> bool {
    a.keys().any(|k| b.contains_key(k))
}

/// Smallest `p` with `seq[t] == seq[t + p]` for every valid `t`, among
/// `p <= seq.len() / 2`.
pub fn detect_period<T: PartialEq>(seq: &[T]) -> Option<usize> {
    (1..=seq.len() / 2).find(|&p| (0..seq.len() - p).all(|t| seq[t] == seq[t + p]))
}
