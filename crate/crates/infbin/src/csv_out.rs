//! CSV time series of a single chain: `step,binsCreated,topBinVector`.

use std::io::Write;

use infbin_core::simulate::ChainState;

pub struct SeriesWriter<W: Write> {
    inner: csv::Writer<W>,
    depth: usize,
    every: u64,
}

impl<W: Write> SeriesWriter<W> {
    /// Writes the header; rows are kept for steps divisible by `every`.
    pub fn new(out: W, depth: usize, every: u64) -> csv::Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(["step", "binsCreated", "topBinVector"])?;
        Ok(Self { inner, depth, every: every.max(1) })
    }

    pub fn observe(&mut self, state: &ChainState) -> csv::Result<()> {
        if !state.step.is_multiple_of(self.every) {
            return Ok(());
        }
        let top = bracketed(&state.config.top_bins(self.depth));
        self.inner.write_record([state.step.to_string(), state.bins_created.to_string(), top])
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// `[a,b,c]`, the configuration text format.
pub fn bracketed(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(","))
}
