//! Seeded generators for the sampled checks. Every stream is a pure function
//! of its seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fnl::FinSuppFn;
use crate::group::Word;
use crate::lterm::LTerm;
use crate::precone::LexFlagCone;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random term of depth at most `depth` over `g1..g_rank`.
pub fn random_term(rng: &mut SampleRng, rank: usize, depth: usize) -> LTerm {
    let leaf = |rng: &mut SampleRng| {
        if rng.gen_range(0..=rank) == 0 {
            LTerm::Ident
        } else {
            LTerm::Gen(rng.gen_range(1..=rank))
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..9) {
        0 => leaf(rng),
        1 => LTerm::inv(random_term(rng, rank, depth - 1)),
        2 | 3 => LTerm::mul(random_term(rng, rank, depth - 1), random_term(rng, rank, depth - 1)),
        4..=5 => LTerm::meet(random_term(rng, rank, depth - 1), random_term(rng, rank, depth - 1)),
        _ => LTerm::join(random_term(rng, rank, depth - 1), random_term(rng, rank, depth - 1)),
    }
}

/// A flag of `rows` integer rows with entries in `[-bound, bound]`. Rows may
/// turn out dependent and be pruned.
pub fn random_flag(rng: &mut SampleRng, rank: usize, rows: usize, bound: i64) -> LexFlagCone {
    let rows: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    LexFlagCone::from_integer_rows(rank, &rows).expect("rows have the right length")
}

/// A flag of full rank.
pub fn random_full_flag(rng: &mut SampleRng, rank: usize, bound: i64) -> LexFlagCone {
    loop {
        let c = random_flag(rng, rank, rank, bound);
        if c.is_full_rank() {
            return c;
        }
    }
}

pub fn random_zvec(rng: &mut SampleRng, rank: usize, bound: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// A reduced word of length at most `max_len`.
pub fn random_word(rng: &mut SampleRng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let k = rng.gen_range(1..=rank as i32);
        let l = if rng.gen_bool(0.5) { k } else { -k };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

/// A function supported in `{0..level-1}` with entries in `[-bound, bound]`.
pub fn random_finsupp(rng: &mut SampleRng, level: u64, bound: i64) -> FinSuppFn {
    FinSuppFn::from_pairs((0..level).map(|n| (n, rng.gen_range(-bound..=bound))))
}
