//! Counter-based random streams.
//!
//! A stream is a key plus a counter. Every output is a stateless mix of
//! `(key, counter)`, so draws can be addressed directly (the data field uses
//! `(replication, row, column)` as the address) and streams can be split by
//! replication index without any shared state. The mixer is the SplitMix64
//! finalizer applied to a Weyl sequence, keyed by a chained hash of the
//! address words.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hashes a sequence of words into one 64-bit value.
#[inline]
pub fn hash_words(words: &[u64]) -> u64 {
    let mut h = 0x6A09_E667_F3BC_C908u64;
    for &w in words {
        h = mix64(h ^ mix64(w.wrapping_add(GOLDEN)));
    }
    h
}

/// Maps 64 random bits to the open interval (0, 1).
#[inline]
pub fn to_open_unit(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// A value-typed, splittable counter-based random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: hash_words(&[seed]),
            counter: 0,
        }
    }

    /// Independent child stream addressed by `index`.
    pub fn split(&self, index: u64) -> Self {
        Self {
            key: hash_words(&[self.key, index]),
            counter: 0,
        }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Output at an explicit counter value; does not advance the stream.
    #[inline]
    pub fn at(&self, counter: u64) -> u64 {
        mix64(self.key ^ mix64(counter.wrapping_mul(GOLDEN)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = self.at(self.counter);
        self.counter = self.counter.wrapping_add(1);
        out
    }

    /// Uniform draw in (0, 1); never returns 0 or 1.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        to_open_unit(self.next_u64())
    }

    /// Standard exponential draw by inversion.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }
}
