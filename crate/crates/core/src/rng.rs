//! Deterministic substream derivation for parallel Monte Carlo.
//!
//! Every trial (or scene) owns a ChaCha stream keyed by the experiment seed
//! plus the identifying coordinates of its grid point, with the trial index
//! selecting the stream. Results are therefore bit-reproducible regardless of
//! how work is scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit hash of a label, for mixing strings into stream keys.
pub(crate) fn hash_label(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Derives a 32-byte stream key from a seed and domain components.
pub(crate) fn derive_key(seed: u64, components: &[u64]) -> [u8; 32] {
    let mut state = seed;
    let _ = splitmix64(&mut state);
    for &c in components {
        state ^= c;
        let _ = splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// Independent random stream `index` under the given key.
pub(crate) fn substream(key: [u8; 32], index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
