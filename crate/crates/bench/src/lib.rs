//! Fixed inputs for the benchmarks.

use truestages::lsr::GameBounds;
use truestages::{FinSeq, GameInstance, Ordinal, PairTree, UpsetRep};

pub fn levels() -> Vec<Ordinal> {
    vec![
        Ordinal::zero(),
        Ordinal::finite(1),
        Ordinal::finite(2),
        Ordinal::omega(),
        Ordinal::omega().succ(),
    ]
}

/// A game at level `xi` where `W` is generated by the sequences starting
/// with 1 and both trees keep only pairs with equal first entries.
pub fn game(xi: Ordinal, alphabet: u64, depth: usize) -> GameInstance {
    let w = UpsetRep::new(xi.clone(), (0..alphabet).map(|a| FinSeq::new(vec![1, a])));
    let pairs: Vec<(FinSeq, FinSeq)> = (0..alphabet)
        .map(|a| (FinSeq::new(vec![a]), FinSeq::new(vec![a])))
        .collect();
    let tree = PairTree::from_pairs(pairs).expect("pairs have equal lengths");
    GameInstance::new(xi, w, PairTree::Full, tree, GameBounds { alphabet, depth })
        .expect("W is built at the game level")
}
