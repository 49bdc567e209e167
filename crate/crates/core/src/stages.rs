//! Level-indexed apparent-truth relations `σ ⪯_α τ` on finite sequences.
//!
//! Level 0 is the prefix order. A successor level `β+1` keeps `σ ≺_β τ` only
//! when no `ρ` on the `⪯_β`-chain from `σ` to `τ` drops below `p_β(σ)`. At a
//! limit `λ` the relation for `σ` is the one at `λ_k`, `k = |σ|_λ`, which is
//! well defined by recursion on `|σ|`.
//!
//! `p_α(σ)` is the last number the operator enumerates on `σ`'s level-α
//! oracle: `σ` itself at level 0, and above that the binary block encoding
//! of `σ`'s guess string, cut to `|σ|` symbols.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::jump::{EnumerationOperator, JumpTrace};
use crate::ordinal::{Kind, Ordinal};
use crate::seq::FinSeq;

/// One block of a guess string: the commitment bound and, for every
/// `e < bound`, whether `e` was seen in the lower-level jump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessBlock {
    pub bound: u64,
    pub bits: Vec<bool>,
}

/// `σ`'s guess at level α: one block per element of its `⪯_α`-chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessString {
    pub level: Ordinal,
    pub blocks: Vec<GuessBlock>,
}

const BLOCK_SEP: u64 = 2;
const BLOCK_END: u64 = 3;

impl GuessString {
    pub fn is_block_prefix_of(&self, other: &GuessString) -> bool {
        other.blocks.starts_with(&self.blocks)
    }

    /// The oracle the operator consumes at the next level up. At level 0
    /// the bounds are the raw sequence entries; above that every non-root
    /// block becomes `binary(bound) 2 bits 3`.
    pub fn flatten(&self) -> Vec<u64> {
        let tail = self.blocks.iter().skip(1);
        if self.level.is_zero() {
            return tail.map(|b| b.bound).collect();
        }
        let mut out = Vec::new();
        for b in tail {
            let width = 64 - b.bound.leading_zeros();
            out.extend((0..width).rev().map(|i| (b.bound >> i) & 1));
            out.push(BLOCK_SEP);
            out.extend(b.bits.iter().map(|&x| x as u64));
            out.push(BLOCK_END);
        }
        out
    }
}

/// Switches that change how levels above 0 are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageConfig {
    /// Cut the level-α oracle of `σ` to `|σ|` symbols.
    pub cut_oracle: bool,
    /// Force `p_α(σ) = 0` while `|σ|_α` is below the finite part of α.
    pub height_gate: bool,
}

impl Default for StageConfig {
    fn default() -> Self {
        StageConfig {
            cut_oracle: true,
            height_gate: true,
        }
    }
}

type PairKey = (Ordinal, FinSeq, FinSeq);
type SeqKey = (Ordinal, FinSeq);

#[derive(Default)]
struct Memo {
    leq: HashMap<PairKey, bool>,
    height: HashMap<SeqKey, usize>,
    trace: HashMap<SeqKey, JumpTrace>,
    p: HashMap<SeqKey, u64>,
}

/// Memoized true-stage relations over an enumeration operator.
///
/// The memo tables sit behind a `RefCell`, so a system is confined to one
/// thread; build one per worker when parallelizing.
pub struct TrueStageSystem<O> {
    op: O,
    config: StageConfig,
    memo: RefCell<Memo>,
}

impl<O: EnumerationOperator> TrueStageSystem<O> {
    pub fn new(op: O) -> Self {
        Self::with_config(op, StageConfig::default())
    }

    pub fn with_config(op: O, config: StageConfig) -> Self {
        TrueStageSystem {
            op,
            config,
            memo: RefCell::new(Memo::default()),
        }
    }

    pub fn operator(&self) -> &O {
        &self.op
    }

    pub fn config(&self) -> StageConfig {
        self.config
    }

    pub fn clear(&self) {
        *self.memo.borrow_mut() = Memo::default();
    }

    /// `σ ⪯_α τ`.
    pub fn leq(&self, sigma: &FinSeq, tau: &FinSeq, alpha: &Ordinal) -> bool {
        if !sigma.is_prefix_of(tau) {
            return false;
        }
        if sigma == tau {
            return true;
        }
        let key = (alpha.clone(), sigma.clone(), tau.clone());
        if let Some(&v) = self.memo.borrow().leq.get(&key) {
            return v;
        }
        let v = match alpha.classify() {
            Kind::Zero => true,
            Kind::Successor { predecessor } => self.successor_leq(sigma, tau, &predecessor),
            Kind::Limit => {
                let k = self.height(sigma, alpha);
                let level = alpha.fund_seq(k as u64).expect("limit");
                self.leq(sigma, tau, &level)
            }
        };
        self.memo.borrow_mut().leq.insert(key, v);
        v
    }

    fn successor_leq(&self, sigma: &FinSeq, tau: &FinSeq, beta: &Ordinal) -> bool {
        if !self.leq(sigma, tau, beta) {
            return false;
        }
        let floor = self.p(sigma, beta);
        (sigma.len() + 1..=tau.len()).all(|n| {
            let rho = tau.truncate(n);
            !(self.leq(sigma, &rho, beta) && self.leq(&rho, tau, beta))
                || self.p(&rho, beta) >= floor
        })
    }

    /// `|σ|_α`: the number of strict `⪯_α`-predecessors.
    pub fn height(&self, sigma: &FinSeq, alpha: &Ordinal) -> usize {
        if alpha.is_zero() {
            return sigma.len();
        }
        let key = (alpha.clone(), sigma.clone());
        if let Some(&h) = self.memo.borrow().height.get(&key) {
            return h;
        }
        let h = (0..sigma.len())
            .filter(|&n| self.leq(&sigma.truncate(n), sigma, alpha))
            .count();
        self.memo.borrow_mut().height.insert(key, h);
        h
    }

    /// All `ρ ⪯_α τ`, shortest first.
    pub fn chain(&self, tau: &FinSeq, alpha: &Ordinal) -> Vec<FinSeq> {
        tau.prefixes()
            .filter(|rho| self.leq(rho, tau, alpha))
            .collect()
    }

    /// Immediate `⪯_α`-predecessor, `None` for the root.
    pub fn predecessor(&self, tau: &FinSeq, alpha: &Ordinal) -> Option<FinSeq> {
        (0..tau.len())
            .rev()
            .map(|n| tau.truncate(n))
            .find(|rho| self.leq(rho, tau, alpha))
    }

    /// The block `ρ` contributes at level `β+1`.
    fn successor_block(&self, rho: &FinSeq, beta: &Ordinal) -> GuessBlock {
        let bound = self.p(rho, beta);
        let seen = self.trace(rho, beta).members();
        GuessBlock {
            bound,
            bits: (0..bound).map(|e| seen.contains(&e)).collect(),
        }
    }

    pub fn guess(&self, sigma: &FinSeq, alpha: &Ordinal) -> GuessString {
        let chain = self.chain(sigma, alpha);
        let blocks = match alpha.classify() {
            Kind::Zero => chain
                .iter()
                .map(|rho| GuessBlock {
                    bound: rho.last().unwrap_or(0),
                    bits: Vec::new(),
                })
                .collect(),
            Kind::Successor { predecessor } => chain
                .iter()
                .map(|rho| self.successor_block(rho, &predecessor))
                .collect(),
            Kind::Limit => chain
                .iter()
                .map(|rho| {
                    let k = self.height(rho, alpha) as u64;
                    self.successor_block(rho, &alpha.fund_seq(k).expect("limit"))
                })
                .collect(),
        };
        GuessString {
            level: alpha.clone(),
            blocks,
        }
    }

    /// The oracle the operator reads for `σ` at level α.
    pub fn oracle(&self, sigma: &FinSeq, alpha: &Ordinal) -> Vec<u64> {
        if alpha.is_zero() {
            return sigma.as_slice().to_vec();
        }
        let mut o = self.guess(sigma, alpha).flatten();
        if self.config.cut_oracle {
            o.truncate(sigma.len());
        }
        o
    }

    /// The level-α relativized enumeration of `σ`.
    pub fn trace(&self, sigma: &FinSeq, alpha: &Ordinal) -> JumpTrace {
        let key = (alpha.clone(), sigma.clone());
        if let Some(t) = self.memo.borrow().trace.get(&key) {
            return t.clone();
        }
        let t = self.op.enumerate(&self.oracle(sigma, alpha));
        self.memo.borrow_mut().trace.insert(key, t.clone());
        t
    }

    /// `p_α(σ)`.
    pub fn p(&self, sigma: &FinSeq, alpha: &Ordinal) -> u64 {
        let key = (alpha.clone(), sigma.clone());
        if let Some(&v) = self.memo.borrow().p.get(&key) {
            return v;
        }
        let gated = self.config.height_gate
            && !alpha.is_zero()
            && (self.height(sigma, alpha) as u64) < alpha.finite_part();
        let v = if gated {
            0
        } else {
            self.trace(sigma, alpha).last_enumerated()
        };
        self.memo.borrow_mut().p.insert(key, v);
        v
    }

    /// `2^{-L}` with `L` the length of the longest common `⪯_α`-lower bound;
    /// 0 when the sequences are equal.
    pub fn distance(&self, sigma: &FinSeq, tau: &FinSeq, alpha: &Ordinal) -> Dyadic {
        if sigma == tau {
            return Dyadic::Zero;
        }
        let common = sigma.common_prefix_len(tau);
        let l = (0..=common)
            .rev()
            .find(|&n| {
                let rho = sigma.truncate(n);
                self.leq(&rho, sigma, alpha) && self.leq(&rho, tau, alpha)
            })
            .unwrap_or(0);
        Dyadic::NegPow(l as u32)
    }
}

/// A value `2^{-n}` or 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dyadic {
    Zero,
    NegPow(u32),
}

impl Dyadic {
    pub fn to_f64(self) -> f64 {
        match self {
            Dyadic::Zero => 0.0,
            Dyadic::NegPow(n) => 0.5f64.powi(n as i32),
        }
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dyadic::Zero => f.write_str("0"),
            Dyadic::NegPow(n) => write!(f, "2^-{n}"),
        }
    }
}
