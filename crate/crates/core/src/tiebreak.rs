use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Choice policy wherever a construction has several valid continuations.
/// `Canonical` always takes the first candidate in enumeration order.
#[derive(Clone, Debug)]
pub enum TieBreak {
    Canonical,
    Seeded(Box<ChaCha8Rng>),
}

impl TieBreak {
    pub fn seeded(seed: u64) -> Self {
        TieBreak::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self, TieBreak::Canonical)
    }

    pub fn arrange<T>(&mut self, items: &mut [T]) {
        if let TieBreak::Seeded(rng) = self {
            items.shuffle(rng);
        }
    }

    pub fn pick(&mut self, n: usize) -> usize {
        assert!(n > 0);
        match self {
            TieBreak::Canonical => 0,
            TieBreak::Seeded(rng) => rng.gen_range(0..n),
        }
    }
}
