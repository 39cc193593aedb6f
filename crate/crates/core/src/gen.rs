//! Seeded random generators for terms, sequences and ordinals.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::broom::{BroomTerm, SuffixRule};
use crate::family::{CanonicalTail, ForkRule, OmegaFamily, TailRule};
use crate::ordinal::Ordinal;
use crate::seq::{FinSeq, InfSeq};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fin_seq(rng: &mut Rng8, max_len: usize, max_entry: u64) -> FinSeq {
    let n = rng.gen_range(0..=max_len);
    FinSeq::new((0..n).map(|_| rng.gen_range(0..=max_entry)).collect())
}

/// An eventually constant or eventually periodic sequence.
pub fn inf_seq(rng: &mut Rng8, max_entry: u64) -> InfSeq {
    let prefix = fin_seq(rng, 4, max_entry).entries().to_vec();
    let period_len = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=3) };
    let period = (0..period_len).map(|_| rng.gen_range(0..=max_entry)).collect();
    InfSeq::new(prefix, period).expect("non-empty period")
}

pub fn eventually_constant(rng: &mut Rng8, max_entry: u64) -> InfSeq {
    let prefix = fin_seq(rng, 5, max_entry).entries().to_vec();
    InfSeq::eventually_constant(prefix, rng.gen_range(0..=max_entry))
}

pub fn suffix_rule(rng: &mut Rng8) -> SuffixRule {
    if rng.gen_bool(0.5) {
        SuffixRule::Constant(fin_seq(rng, 3, 4))
    } else {
        let n = rng.gen_range(1..=3);
        SuffixRule::Cycle((0..n).map(|_| fin_seq(rng, 2, 4)).collect())
    }
}

/// An ordinal below `ω^3` with small coefficients.
pub fn ordinal(rng: &mut Rng8) -> Ordinal {
    let mut terms = Vec::new();
    for e in (0..3u64).rev() {
        if rng.gen_bool(0.5) {
            terms.push((Ordinal::nat(e), rng.gen_range(1..=4)));
        }
    }
    Ordinal::from_terms(terms)
}

/// A broom of class level at most `max_level`.
pub fn broom(rng: &mut Rng8, max_level: u64) -> BroomTerm {
    if max_level == 0 || rng.gen_bool(0.15) {
        return BroomTerm::Singleton(fin_seq(rng, 2, 3));
    }
    let handle = fin_seq(rng, 2, 3);
    let forks = ForkRule::affine(rng.gen_range(1..=3), rng.gen_range(0..=3));
    let sub = |rng: &mut Rng8| {
        let l = rng.gen_range(0..max_level);
        broom(rng, l)
    };
    let tail = match rng.gen_range(0..3) {
        0 => TailRule::Const(Box::new(sub(rng))),
        1 => {
            let n = rng.gen_range(1..=3);
            TailRule::Cycle((0..n).map(|_| sub(rng)).collect())
        }
        _ => {
            let alpha = Ordinal::nat(rng.gen_range(1..=max_level));
            let mut c = CanonicalTail::new(alpha);
            let n = rng.gen_range(0..=2);
            c.suffixes = (0..n).map(|_| fin_seq(rng, 2, 3)).collect();
            TailRule::Canonical(c)
        }
    };
    let mut free: Vec<u64> = (0..12).filter(|f| forks.index_of(*f).is_none()).collect();
    free.shuffle(rng);
    let k = rng.gen_range(0..=2).min(free.len());
    let head = free[..k].iter().map(|&f| (f, sub(rng))).collect();
    BroomTerm::Broom {
        handle,
        family: OmegaFamily { head, forks, tail },
    }
}
