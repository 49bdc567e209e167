//! Seeded random instances for the property runs.

use std::collections::BTreeMap;

use rand::Rng;
use truestages::hierarchy::ApproxFn;
use truestages::lsr::{GameBounds, GameInstance, IStrategy, PairTree, PartialPlay};
use truestages::wadge::instance_from_decider;
use truestages::{EnumerationOperator, FinSeq, Ordinal, TrueStageSystem, Universe, UpsetRep};

pub fn seq<R: Rng>(rng: &mut R, len: usize, alphabet: u64) -> FinSeq {
    (0..len)
        .map(|_| rng.gen_range(0..alphabet))
        .collect::<Vec<_>>()
        .into()
}

/// A two-valued approximation with independent fair values.
pub fn approx<R: Rng>(rng: &mut R, universe: &Universe, level: &Ordinal) -> ApproxFn {
    let table = universe
        .all()
        .into_iter()
        .map(|s| (s, rng.gen_range(0..2)))
        .collect();
    ApproxFn {
        level: level.clone(),
        table,
    }
}

/// A disjoint covering pair at `λ`: each node of the `⪯_λ`-tree is settled
/// with probability `settle`, leaves are always settled.
pub fn wadge_pair<R: Rng, O: EnumerationOperator>(
    rng: &mut R,
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    lambda: &Ordinal,
    settle: f64,
) -> (UpsetRep, UpsetRep) {
    let (w0, mut w1) = instance_from_decider(sys, universe, lambda, |t| {
        (!t.is_empty() && rng.gen_bool(settle)).then(|| rng.gen_bool(0.5))
    });
    // Leaves the decider left open default to 0; spread them over both sides.
    let (w0, moved): (Vec<_>, Vec<_>) = w0.generators.into_iter().partition(|_| rng.gen_bool(0.5));
    w1.generators.extend(moved);
    (UpsetRep::new(lambda.clone(), w0), w1)
}

fn pair_tree<R: Rng>(rng: &mut R, alphabet: u64, depth: usize, keep: f64) -> PairTree {
    if rng.gen_bool(0.1) {
        return PairTree::Full;
    }
    let mut frontier = vec![(FinSeq::empty(), FinSeq::empty())];
    let mut pairs = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (y, z) in &frontier {
            for a in 0..alphabet {
                for b in 0..alphabet {
                    if rng.gen_bool(keep) {
                        next.push((y.push(a), z.push(b)));
                    }
                }
            }
        }
        pairs.extend(next.iter().cloned());
        frontier = next;
    }
    PairTree::from_pairs(pairs).expect("pairs have equal lengths")
}

/// A game at level `ξ` with a sparse random `W` and two random trees.
pub fn game<R: Rng>(rng: &mut R, xi: &Ordinal, alphabet: u64, depth: usize) -> GameInstance {
    let universe = Universe::new(depth, alphabet);
    let generators: Vec<_> = match rng.gen_range(0..8) {
        0 => Vec::new(),
        1 => vec![FinSeq::empty()],
        _ => universe
            .all()
            .into_iter()
            .filter(|s| !s.is_empty() && rng.gen_bool(0.2))
            .collect(),
    };
    let w = UpsetRep::new(xi.clone(), generators);
    let t0 = pair_tree(rng, alphabet, depth, 0.5);
    let t1 = pair_tree(rng, alphabet, depth, 0.5);
    GameInstance::new(xi.clone(), w, t0, t1, GameBounds { alphabet, depth })
        .expect("W is built at the game level")
}

pub fn play<R: Rng>(rng: &mut R, alphabet: u64, rounds: usize) -> PartialPlay {
    PartialPlay {
        xs: seq(rng, rounds, alphabet),
        yzs: (0..rounds)
            .map(|_| (rng.gen_range(0..alphabet), rng.gen_range(0..alphabet)))
            .collect(),
    }
}

/// A uniformly random I-strategy tabulated to `depth`.
pub fn i_strategy<R: Rng>(rng: &mut R, depth: usize, alphabet: u64) -> IStrategy {
    let mut moves = BTreeMap::new();
    let mut layer: Vec<Vec<(u64, u64)>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for h in layer {
            for y in 0..alphabet {
                for z in 0..alphabet {
                    let mut e = h.clone();
                    e.push((y, z));
                    next.push(e);
                }
            }
            moves.insert(h, rng.gen_range(0..alphabet));
        }
        layer = next;
    }
    IStrategy {
        depth,
        moves,
        default: None,
    }
}
