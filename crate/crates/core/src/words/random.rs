use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Letter, Word};

/// Deterministic generator for trial `trial` of a run seeded with `seed`.
///
/// The stream is ChaCha8 seeded with a SplitMix64 mix of `(seed, trial)`,
/// so trials are independent of the order they run in.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn draw_letter<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> Letter {
    let k = rng.gen_range(0..2 * rank);
    if k < rank {
        Letter::pos(k + 1)
    } else {
        Letter::neg(k - rank + 1)
    }
}

/// Reduced word of exactly `length` letters over `rank` generators,
/// drawn from `ChaCha8Rng::seed_from_u64(seed)`.
///
/// Each letter is uniform over the `2·rank` signed generators; a draw that
/// would cancel the previous letter is rejected and redrawn.
pub fn random_word(rank: usize, length: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(&mut rng, rank, length)
}

/// Same sampling scheme as [`random_word`] from an existing generator.
pub fn random_word_with<R: Rng + ?Sized>(rng: &mut R, rank: usize, length: usize) -> Word {
    assert!(rank >= 1, "rank must be positive");
    let mut letters: Vec<Letter> = Vec::with_capacity(length);
    while letters.len() < length {
        let l = draw_letter(rng, rank);
        if letters.last().is_some_and(|&last| last == l.inv()) {
            continue;
        }
        letters.push(l);
    }
    let w = Word::from_letters(letters);
    debug_assert_eq!(w.len(), length);
    w
}

/// Random reduced word with length uniform in `0..=max_len`.
pub fn random_word_up_to<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word_with(rng, rank, len)
}
