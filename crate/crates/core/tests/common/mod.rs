#![allow(dead_code)]

use std::sync::Arc;

use knotcord::cord_algebra::{BrokenWord, BrokenWordSum, Entry, LaurentMonomial};
use knotcord::group_ring::GroupRing;
use knotcord::presentations::KnotGroup;
use knotcord::rewriting::{Backend, KbBudget};
use knotcord::word::{Letter, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring_for(k: &KnotGroup) -> Arc<GroupRing> {
    let (k, b) = Backend::auto(k, KbBudget::default()).expect("backend");
    GroupRing::new(&k, b).expect("ring")
}

pub fn trefoil_ring() -> Arc<GroupRing> {
    ring_for(&KnotGroup::trefoil())
}

pub fn unknot_ring() -> Arc<GroupRing> {
    ring_for(&KnotGroup::unknot())
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.random_range(0..rank);
            if rng.random_bool(0.5) {
                Letter::gen(g)
            } else {
                Letter::inv(g)
            }
        })
        .collect()
}

pub fn random_monomial(rng: &mut ChaCha8Rng, r: i64) -> LaurentMonomial {
    LaurentMonomial::new(rng.random_range(-r..=r), rng.random_range(-r..=r))
}

/// A random alternating broken word with the given end kinds and about
/// `squares` square entries (at least one when an end is square).
pub fn random_broken(rng: &mut ChaCha8Rng, rank: usize, curly_start: bool, curly_end: bool, squares: usize) -> BrokenWord {
    let mut entries = Vec::new();
    let mut curly = curly_start;
    let mut squares_left = squares.max(usize::from(!curly_start || !curly_end));
    loop {
        if curly {
            entries.push(Entry::Curly(random_monomial(rng, 2)));
            if squares_left == 0 && curly_end {
                break;
            }
        } else {
            entries.push(Entry::Square(random_word(rng, rank, 4)));
            squares_left = squares_left.saturating_sub(1);
            if squares_left == 0 && !curly_end {
                break;
            }
        }
        curly = !curly;
    }
    BrokenWord::new(entries).expect("alternating by construction")
}

pub fn random_curly_sum(rng: &mut ChaCha8Rng, rank: usize) -> BrokenWordSum {
    let terms = rng.random_range(1..=4);
    BrokenWordSum::from_terms((0..terms).map(|_| {
        let sq = rng.random_range(0..=3);
        (random_broken(rng, rank, true, true, sq), rng.random_range(-3..=3))
    }))
}
