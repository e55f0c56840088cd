use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-path random streams: path `p` always sees the same ChaCha8 stream
/// `p` under the key derived from `seed`, independent of scheduling.
#[derive(Debug, Clone)]
pub struct PathStreams {
    base: ChaCha8Rng,
    seed: u64,
}

impl PathStreams {
    pub fn new(seed: u64) -> Self {
        PathStreams {
            base: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, path: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(path);
        rng.set_word_pos(0);
        rng
    }
}
