//! Finite stream prefixes and evaluation traces shared by the synchronous
//! models.

use alloc::vec::Vec;
use rand::Rng;

use crate::Datum;

/// A stream over `D ∪ {tick}`: a finite prefix followed by ticks forever.
/// `None` is a tick.
#[derive(Debug, Clone, Default)]
pub struct Stream {
    prefix: Vec<Option<Datum>>,
}

impl Stream {
    pub fn new(prefix: Vec<Option<Datum>>) -> Self {
        Stream { prefix }
    }

    pub fn ticks() -> Self {
        Stream::default()
    }

    pub fn from_data(data: impl IntoIterator<Item = u16>) -> Self {
        Stream::new(data.into_iter().map(|d| Some(Datum(d))).collect())
    }

    pub fn at(&self, k: usize) -> Option<Datum> {
        self.prefix.get(k).copied().flatten()
    }

    /// Declared prefix, possibly ending in explicit ticks.
    pub fn prefix(&self) -> &[Option<Datum>] {
        &self.prefix
    }

    /// Exactly `len` positions, padded with ticks.
    pub fn window(&self, len: usize) -> Vec<Option<Datum>> {
        (0..len).map(|k| self.at(k)).collect()
    }

    pub fn truncated(&self, len: usize) -> Stream {
        Stream::new(self.window(len))
    }

    pub fn push(&mut self, value: Option<Datum>) {
        self.prefix.push(value);
    }

    fn significant_len(&self) -> usize {
        self.prefix
            .iter()
            .rposition(Option::is_some)
            .map_or(0, |i| i + 1)
    }
}

/// Equality of infinite streams: trailing explicit ticks are irrelevant.
impl PartialEq for Stream {
    fn eq(&self, other: &Self) -> bool {
        let n = self.significant_len();
        n == other.significant_len() && self.prefix[..n] == other.prefix[..n]
    }
}

impl Eq for Stream {}

/// A cell received a second datum on a port that was already filled in the
/// current waiting period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub tick: usize,
    /// Left-to-right occurrence index of the cell in the term.
    pub cell: usize,
    pub port: usize,
}

/// Output of a synchronous run: streams observed up to the horizon, or up to
/// and including the tick at which a slot collision stopped the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub outputs: Vec<Stream>,
    pub collision: Option<Collision>,
}

impl Trace {
    /// Observable agreement: same outputs and, if halted, halted at the same
    /// tick. Cell identities are ignored since equal networks may list their
    /// cells in different orders.
    pub fn observably_equal(&self, other: &Trace) -> bool {
        self.outputs == other.outputs
            && self.collision.map(|c| c.tick) == other.collision.map(|c| c.tick)
    }

    pub fn into_result(self) -> crate::Result<Vec<Stream>> {
        match self.collision {
            None => Ok(self.outputs),
            Some(c) => Err(crate::Error::SlotCollision {
                tick: c.tick,
                cell: c.cell,
                port: c.port,
            }),
        }
    }
}

/// `count` random streams of length `horizon`; each position carries a datum
/// with probability `density`.
pub fn random_streams(
    rng: &mut impl Rng,
    count: usize,
    horizon: usize,
    domain_size: usize,
    density: f64,
) -> Vec<Stream> {
    (0..count)
        .map(|_| {
            Stream::new(
                (0..horizon)
                    .map(|_| {
                        rng.gen_bool(density)
                            .then(|| Datum(rng.gen_range(0..domain_size) as u16))
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn trailing_ticks_do_not_matter() {
        let a = Stream::new(vec![Some(Datum(1)), None, None]);
        let b = Stream::new(vec![Some(Datum(1))]);
        assert_eq!(a, b);
        assert_ne!(a, Stream::ticks());
        assert_eq!(b.window(3), vec![Some(Datum(1)), None, None]);
    }
}
