//! The separation game: player I builds `x` one entry at a time, player II
//! answers with pairs `(y_i, z_i)`, and I wins as soon as II's pair
//! sequence, sampled at the apparently true stages sharing `x̄`'s opinion
//! about `W`, leaves the relevant tree.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::UpsetRep;
use crate::jump::EnumerationOperator;
use crate::ordinal::{Kind, Ordinal};
use crate::seq::FinSeq;
use crate::stages::TrueStageSystem;

/// A tree of equal-length sequence pairs, closed under truncating both
/// coordinates together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub enum PairTree {
    Full,
    Pairs(BTreeSet<(FinSeq, FinSeq)>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeRepr {
    Full { full: bool },
    Pairs { pairs: Vec<(FinSeq, FinSeq)> },
}

impl TryFrom<TreeRepr> for PairTree {
    type Error = Error;

    fn try_from(r: TreeRepr) -> Result<Self> {
        match r {
            TreeRepr::Full { full: true } => Ok(PairTree::Full),
            TreeRepr::Full { full: false } => Err(Error::Input(
                "a tree is either {\"full\": true} or {\"pairs\": [...]}".into(),
            )),
            TreeRepr::Pairs { pairs } => PairTree::from_pairs(pairs),
        }
    }
}

impl From<PairTree> for TreeRepr {
    fn from(t: PairTree) -> Self {
        match t {
            PairTree::Full => TreeRepr::Full { full: true },
            PairTree::Pairs(p) => TreeRepr::Pairs {
                pairs: p.into_iter().collect(),
            },
        }
    }
}

impl PairTree {
    pub fn root_only() -> Self {
        PairTree::Pairs([(FinSeq::empty(), FinSeq::empty())].into())
    }

    /// The least tree containing the given pairs and the root.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (FinSeq, FinSeq)>) -> Result<Self> {
        let mut out = BTreeSet::new();
        out.insert((FinSeq::empty(), FinSeq::empty()));
        for (y, z) in pairs {
            if y.len() != z.len() {
                return Err(Error::Input(format!(
                    "tree pair {y} {z} has unequal lengths"
                )));
            }
            for n in 1..=y.len() {
                out.insert((y.truncate(n), z.truncate(n)));
            }
        }
        Ok(PairTree::Pairs(out))
    }

    pub fn contains(&self, y: &FinSeq, z: &FinSeq) -> bool {
        y.len() == z.len()
            && match self {
                PairTree::Full => true,
                PairTree::Pairs(p) => p.contains(&(y.clone(), z.clone())),
            }
    }

    /// The pairs of length `depth` in the tree, entries below `alphabet`.
    pub fn paths(&self, alphabet: u64, depth: usize) -> Vec<(FinSeq, FinSeq)> {
        let mut layer = vec![(FinSeq::empty(), FinSeq::empty())];
        for _ in 0..depth {
            layer = layer
                .iter()
                .flat_map(|(y, z)| {
                    (0..alphabet)
                        .flat_map(move |a| (0..alphabet).map(move |b| (y.push(a), z.push(b))))
                })
                .filter(|(y, z)| self.contains(y, z))
                .collect();
        }
        layer
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameBounds {
    pub alphabet: u64,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct GameInstance {
    pub xi: Ordinal,
    pub w: UpsetRep,
    pub t0: PairTree,
    pub t1: PairTree,
    pub bounds: GameBounds,
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    xi: Ordinal,
    #[serde(rename = "W")]
    w: UpsetRep,
    #[serde(rename = "T0")]
    t0: PairTree,
    #[serde(rename = "T1")]
    t1: PairTree,
    bounds: GameBounds,
}

impl TryFrom<InstanceRepr> for GameInstance {
    type Error = Error;

    fn try_from(r: InstanceRepr) -> Result<Self> {
        GameInstance::new(r.xi, r.w, r.t0, r.t1, r.bounds)
    }
}

impl From<GameInstance> for InstanceRepr {
    fn from(g: GameInstance) -> Self {
        InstanceRepr {
            xi: g.xi,
            w: g.w,
            t0: g.t0,
            t1: g.t1,
            bounds: g.bounds,
        }
    }
}

impl GameInstance {
    pub fn new(
        xi: Ordinal,
        w: UpsetRep,
        t0: PairTree,
        t1: PairTree,
        bounds: GameBounds,
    ) -> Result<Self> {
        if w.level != xi {
            return Err(Error::Input(format!(
                "W sits at level {} but the game is played at {xi}",
                w.level
            )));
        }
        if bounds.alphabet == 0 {
            return Err(Error::Input("alphabet bound must be positive".into()));
        }
        Ok(GameInstance {
            xi,
            w,
            t0,
            t1,
            bounds,
        })
    }
}

/// I has played `xs`, II has answered with `yzs`; it is I's `n`-th turn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialPlay {
    pub xs: FinSeq,
    pub yzs: Vec<(u64, u64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    IWon,
    Continues,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefereeVerdict {
    pub indices: Vec<usize>,
    pub ybar: FinSeq,
    pub zbar: FinSeq,
    pub status: Status,
}

/// Judges the play at the start of I's `n`-th turn, `n = |xs|`.
pub fn referee<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    g: &GameInstance,
    p: &PartialPlay,
) -> Result<RefereeVerdict> {
    let n = p.xs.len();
    if n != p.yzs.len() {
        return Err(Error::PlayLength {
            xs: n,
            yzs: p.yzs.len(),
        });
    }
    if n == 0 {
        return Err(Error::Precondition(
            "the referee needs at least one round".into(),
        ));
    }
    let x = &p.xs;
    let in_w = g.w.contains(sys, x);
    let indices: Vec<usize> = (1..=n)
        .filter(|&i| {
            let head = x.truncate(i);
            sys.leq(&head, x, &g.xi) && (!in_w || g.w.contains(sys, &head))
        })
        .collect();
    let ybar: FinSeq = p.yzs[..indices.len()]
        .iter()
        .map(|&(y, _)| y)
        .collect::<Vec<_>>()
        .into();
    let zbar: FinSeq = indices
        .iter()
        .map(|&a| p.yzs[a - 1].1)
        .collect::<Vec<_>>()
        .into();
    let tree = if in_w { &g.t1 } else { &g.t0 };
    let status = if tree.contains(&ybar, &zbar) {
        Status::Continues
    } else {
        Status::IWon
    };
    Ok(RefereeVerdict {
        indices,
        ybar,
        zbar,
        status,
    })
}

/// A strategy for I: the next `x` after each sequence of II's answers.
/// Histories missing from the table fall back to `default` when set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IStrategy {
    pub depth: usize,
    #[serde(with = "entries")]
    pub moves: BTreeMap<Vec<(u64, u64)>, u64>,
    pub default: Option<u64>,
}

/// A strategy for II: the answer `(y, z)` after each sequence of I's moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IIStrategy {
    pub depth: usize,
    #[serde(with = "entries")]
    pub moves: BTreeMap<FinSeq, (u64, u64)>,
    pub default: Option<(u64, u64)>,
}

mod entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<K: Serialize, V: Serialize, S: Serializer>(
        map: &BTreeMap<K, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter())
    }

    pub fn deserialize<'de, K, V, D>(d: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
        D: Deserializer<'de>,
    {
        Ok(Vec::<(K, V)>::deserialize(d)?.into_iter().collect())
    }
}

impl IStrategy {
    pub fn constant(depth: usize, x: u64) -> Self {
        IStrategy {
            depth,
            moves: BTreeMap::new(),
            default: Some(x),
        }
    }

    /// Tabulates `f` on every history of fewer than `depth` answers.
    pub fn from_fn(depth: usize, alphabet: u64, f: impl Fn(&[(u64, u64)]) -> u64) -> Self {
        let mut moves = BTreeMap::new();
        let mut layer: Vec<Vec<(u64, u64)>> = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for h in layer {
                moves.insert(h.clone(), f(&h));
                for y in 0..alphabet {
                    for z in 0..alphabet {
                        let mut e = h.clone();
                        e.push((y, z));
                        next.push(e);
                    }
                }
            }
            layer = next;
        }
        IStrategy {
            depth,
            moves,
            default: None,
        }
    }

    pub fn move_at(&self, history: &[(u64, u64)]) -> Result<u64> {
        if history.len() >= self.depth {
            return Err(Error::Undefined(format!(
                "I's strategy stops at depth {}, asked after {} answers",
                self.depth,
                history.len()
            )));
        }
        self.moves
            .get(history)
            .copied()
            .or(self.default)
            .ok_or_else(|| Error::Undefined(format!("I's move after {history:?}")))
    }

    /// I's first `k+1` moves against the first `k` answers.
    pub fn respond(&self, history: &[(u64, u64)]) -> Result<FinSeq> {
        (0..=history.len())
            .map(|m| self.move_at(&history[..m]))
            .collect::<Result<Vec<_>>>()
            .map(FinSeq::from)
    }
}

impl IIStrategy {
    pub fn constant(depth: usize, yz: (u64, u64)) -> Self {
        IIStrategy {
            depth,
            moves: BTreeMap::new(),
            default: Some(yz),
        }
    }

    pub fn move_at(&self, xs: &FinSeq) -> Result<(u64, u64)> {
        if xs.is_empty() || xs.len() > self.depth {
            return Err(Error::Undefined(format!(
                "II's strategy covers 1..={} moves of I, asked at {}",
                self.depth,
                xs.len()
            )));
        }
        self.moves
            .get(xs)
            .copied()
            .or(self.default)
            .ok_or_else(|| Error::Undefined(format!("II's answer to {xs}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Solution {
    IWins { strategy: IStrategy, by_turn: usize },
    Undetermined { survival: IIStrategy },
}

/// I's moves so far and II's answers.
type PlayKey = (FinSeq, Vec<(u64, u64)>);

struct Solver<'a, O> {
    sys: &'a TrueStageSystem<O>,
    g: &'a GameInstance,
    depth: usize,
    budget: u64,
    visited: u64,
    memo: HashMap<PlayKey, Option<usize>>,
}

impl<O: EnumerationOperator> Solver<'_, O> {
    /// The earliest turn by which I can force a win from this position.
    fn value(&mut self, xs: &FinSeq, yzs: &[(u64, u64)]) -> Result<Option<usize>> {
        let n = xs.len();
        let key = (xs.clone(), yzs.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BoundExhausted(format!(
                "solver visited more than {} positions",
                self.budget
            )));
        }
        let play = PartialPlay {
            xs: xs.clone(),
            yzs: yzs.to_vec(),
        };
        let v = if n > 0 && referee(self.sys, self.g, &play)?.status == Status::IWon {
            Some(n)
        } else if n == self.depth {
            None
        } else {
            let b = self.g.bounds.alphabet;
            let mut best: Option<usize> = None;
            for x in 0..b {
                let next = xs.push(x);
                let mut worst = Some(0);
                'answers: for y in 0..b {
                    for z in 0..b {
                        let mut h = yzs.to_vec();
                        h.push((y, z));
                        match self.value(&next, &h)? {
                            None => {
                                worst = None;
                                break 'answers;
                            }
                            Some(t) => worst = worst.map(|w: usize| w.max(t)),
                        }
                    }
                }
                if let Some(t) = worst {
                    best = Some(best.map_or(t, |b| b.min(t)));
                }
            }
            best
        };
        self.memo.insert(key, v);
        Ok(v)
    }

    fn best_move(&mut self, xs: &FinSeq, yzs: &[(u64, u64)]) -> Result<Option<(u64, usize)>> {
        let b = self.g.bounds.alphabet;
        let mut best: Option<(u64, usize)> = None;
        for x in 0..b {
            let next = xs.push(x);
            let mut worst = Some(0);
            for y in 0..b {
                for z in 0..b {
                    let mut h = yzs.to_vec();
                    h.push((y, z));
                    worst = match (worst, self.value(&next, &h)?) {
                        (Some(w), Some(t)) => Some(w.max(t)),
                        _ => None,
                    };
                }
            }
            if let Some(t) = worst {
                if best.is_none_or(|(_, bt)| t < bt) {
                    best = Some((x, t));
                }
            }
        }
        Ok(best)
    }

    fn i_table(
        &mut self,
        xs: &FinSeq,
        yzs: &mut Vec<(u64, u64)>,
        out: &mut BTreeMap<Vec<(u64, u64)>, u64>,
    ) -> Result<()> {
        if yzs.len() == self.depth || self.value(xs, yzs)? == Some(xs.len()) {
            return Ok(());
        }
        let Some((x, _)) = self.best_move(xs, yzs)? else {
            return Ok(());
        };
        out.insert(yzs.clone(), x);
        let next = xs.push(x);
        let b = self.g.bounds.alphabet;
        for y in 0..b {
            for z in 0..b {
                yzs.push((y, z));
                self.i_table(&next, yzs, out)?;
                yzs.pop();
            }
        }
        Ok(())
    }

    fn ii_table(
        &mut self,
        xs: &FinSeq,
        yzs: &mut Vec<(u64, u64)>,
        out: &mut BTreeMap<FinSeq, (u64, u64)>,
    ) -> Result<()> {
        if xs.len() == self.depth {
            return Ok(());
        }
        let b = self.g.bounds.alphabet;
        for x in 0..b {
            let next = xs.push(x);
            let mut answer = None;
            'search: for y in 0..b {
                for z in 0..b {
                    yzs.push((y, z));
                    let open = self.value(&next, yzs)?.is_none();
                    yzs.pop();
                    if open {
                        answer = Some((y, z));
                        break 'search;
                    }
                }
            }
            let Some(yz) = answer else { continue };
            out.insert(next.clone(), yz);
            yzs.push(yz);
            self.ii_table(&next, yzs, out)?;
            yzs.pop();
        }
        Ok(())
    }
}

/// Bounded backward induction. `budget` caps the number of distinct
/// positions examined.
pub fn solve<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    g: &GameInstance,
    depth: usize,
    budget: u64,
) -> Result<Solution> {
    let mut s = Solver {
        sys,
        g,
        depth,
        budget,
        visited: 0,
        memo: HashMap::new(),
    };
    let root = FinSeq::empty();
    match s.value(&root, &[])? {
        Some(by_turn) => {
            let mut moves = BTreeMap::new();
            s.i_table(&root, &mut Vec::new(), &mut moves)?;
            Ok(Solution::IWins {
                strategy: IStrategy {
                    depth,
                    moves,
                    default: Some(0),
                },
                by_turn,
            })
        }
        None => {
            let mut moves = BTreeMap::new();
            s.ii_table(&root, &mut Vec::new(), &mut moves)?;
            Ok(Solution::Undetermined {
                survival: IIStrategy {
                    depth,
                    moves,
                    default: Some((0, 0)),
                },
            })
        }
    }
}

/// A position of II: a finite `z`-sequence or the pre-root token, which
/// sits below every sequence and has the empty I-response.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Position {
    Pi,
    Seq(FinSeq),
}

impl Position {
    pub fn seq(s: impl Into<FinSeq>) -> Self {
        Position::Seq(s.into())
    }

    fn below_eq(&self, other: &Position) -> bool {
        match (self, other) {
            (Position::Pi, _) => true,
            (Position::Seq(_), Position::Pi) => false,
            (Position::Seq(a), Position::Seq(b)) => a.is_prefix_of(b),
        }
    }

    /// `π` followed by every prefix of the sequence, shortest first.
    fn down_set(&self) -> Vec<Position> {
        let mut out = vec![Position::Pi];
        if let Position::Seq(s) = self {
            out.extend(s.prefixes().map(Position::Seq));
        }
        out
    }
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Position::Pi => f.write_str("pi"),
            Position::Seq(s) => s.fmt(f),
        }
    }
}

fn history(y: &FinSeq, sigma: &FinSeq) -> Result<Vec<(u64, u64)>> {
    if y.len() < sigma.len() {
        return Err(Error::ShortPrefix {
            have: y.len(),
            need: sigma.len(),
        });
    }
    Ok(y.as_slice()
        .iter()
        .copied()
        .zip(sigma.as_slice().iter().copied())
        .collect())
}

/// `S(y, σ)`: I's `|σ|+1` moves when II plays `(y_i, σ_i)`; empty at `π`.
pub fn apply_strategy(s: &IStrategy, y: &FinSeq, pos: &Position) -> Result<FinSeq> {
    match pos {
        Position::Pi => Ok(FinSeq::empty()),
        Position::Seq(sigma) => s.respond(&history(y, sigma)?),
    }
}

/// Whether I has not yet won against `(y↾|σ|, σ)`.
pub fn zero_correct<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    g: &GameInstance,
    s: &IStrategy,
    y: &FinSeq,
    pos: &Position,
) -> Result<bool> {
    let Position::Seq(sigma) = pos else {
        return Ok(true);
    };
    let h = history(y, sigma)?;
    if h.is_empty() {
        return Ok(true);
    }
    let xs = s.respond(&h[..h.len() - 1])?;
    for n in 1..=h.len() {
        let play = PartialPlay {
            xs: xs.truncate(n),
            yzs: h[..n].to_vec(),
        };
        if referee(sys, g, &play)?.status == Status::IWon {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectnessConfig {
    /// At a limit `λ`, levels `λ_0..=λ_reach` are checked in addition to the
    /// index selected by the height of the I-response.
    pub limit_reach: u64,
}

impl Default for CorrectnessConfig {
    fn default() -> Self {
        CorrectnessConfig { limit_reach: 2 }
    }
}

/// Memoized `α`-correctness and strong `α`-correctness for one `(S, y)`.
pub struct Correctness<'a, O> {
    sys: &'a TrueStageSystem<O>,
    g: &'a GameInstance,
    strategy: &'a IStrategy,
    y: FinSeq,
    config: CorrectnessConfig,
    response: RefCell<HashMap<Position, FinSeq>>,
    plain: RefCell<HashMap<(Position, Ordinal), bool>>,
    strong: RefCell<HashMap<(Position, Ordinal), bool>>,
}

impl<'a, O: EnumerationOperator> Correctness<'a, O> {
    pub fn new(
        sys: &'a TrueStageSystem<O>,
        g: &'a GameInstance,
        strategy: &'a IStrategy,
        y: FinSeq,
    ) -> Self {
        Self::with_config(sys, g, strategy, y, CorrectnessConfig::default())
    }

    pub fn with_config(
        sys: &'a TrueStageSystem<O>,
        g: &'a GameInstance,
        strategy: &'a IStrategy,
        y: FinSeq,
        config: CorrectnessConfig,
    ) -> Self {
        Correctness {
            sys,
            g,
            strategy,
            y,
            config,
            response: RefCell::default(),
            plain: RefCell::default(),
            strong: RefCell::default(),
        }
    }

    pub fn y(&self) -> &FinSeq {
        &self.y
    }

    pub fn response(&self, pos: &Position) -> Result<FinSeq> {
        if let Some(r) = self.response.borrow().get(pos) {
            return Ok(r.clone());
        }
        let r = apply_strategy(self.strategy, &self.y, pos)?;
        self.response.borrow_mut().insert(pos.clone(), r.clone());
        Ok(r)
    }

    /// `σ ⊴_α τ`: `σ ⪯ τ` and `S(y,σ) ⪯_α S(y,τ)`.
    pub fn tri_leq(&self, sigma: &Position, tau: &Position, alpha: &Ordinal) -> Result<bool> {
        if !sigma.below_eq(tau) {
            return Ok(false);
        }
        Ok(self
            .sys
            .leq(&self.response(sigma)?, &self.response(tau)?, alpha))
    }

    fn down(&self, pos: &Position, alpha: &Ordinal) -> Result<Vec<Position>> {
        let mut out = Vec::new();
        for p in pos.down_set() {
            if self.tri_leq(&p, pos, alpha)? {
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn correct(&self, pos: &Position, alpha: &Ordinal) -> Result<bool> {
        let key = (pos.clone(), alpha.clone());
        if let Some(&v) = self.plain.borrow().get(&key) {
            return Ok(v);
        }
        let v = match alpha.classify() {
            Kind::Zero => zero_correct(self.sys, self.g, self.strategy, &self.y, pos)?,
            Kind::Successor { predecessor: beta } => {
                let mut ok = self.strongly_correct(pos, &beta)?;
                if ok {
                    for t in self.down(pos, &beta)? {
                        if self.strongly_correct(&t, &beta)? && !self.tri_leq(&t, pos, alpha)? {
                            ok = false;
                            break;
                        }
                    }
                }
                ok
            }
            Kind::Limit => {
                let k = self.sys.height(&self.response(pos)?, alpha) as u64;
                let mut ok = true;
                for j in 0..=k.max(self.config.limit_reach) {
                    if !self.correct(pos, &alpha.fund_seq(j)?)? {
                        ok = false;
                        break;
                    }
                }
                ok
            }
        };
        self.plain.borrow_mut().insert(key, v);
        Ok(v)
    }

    pub fn strongly_correct(&self, pos: &Position, alpha: &Ordinal) -> Result<bool> {
        let key = (pos.clone(), alpha.clone());
        if let Some(&v) = self.strong.borrow().get(&key) {
            return Ok(v);
        }
        let mut v = true;
        for t in self.down(pos, alpha)? {
            if !self.correct(&t, alpha)? {
                v = false;
                break;
            }
        }
        self.strong.borrow_mut().insert(key, v);
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum Search<T> {
    Found(T),
    /// Nothing within the bound; says nothing about longer candidates.
    Exhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            Search::Exhausted => None,
        }
    }
}

impl<O: EnumerationOperator> Correctness<'_, O> {
    /// Sequences `τ ⪰ σ` with `|σ| ≤ |τ| < |σ| + bound` on which the
    /// strategy is defined, shortest first.
    fn candidates(&self, sigma: &FinSeq, bound: usize) -> Vec<FinSeq> {
        let top = (sigma.len() + bound)
            .min(self.y.len() + 1)
            .min(self.strategy.depth);
        let mut layer = vec![sigma.clone()];
        let mut out = Vec::new();
        for _ in sigma.len()..top {
            out.extend(layer.iter().cloned());
            layer = layer
                .iter()
                .flat_map(|t| (0..self.g.bounds.alphabet).map(move |a| t.push(a)))
                .collect();
        }
        out
    }

    /// A strongly `α`-correct `τ ⪰ σ`, given a strongly `α`-correct `ρ` and
    /// a 0-correct one-step extension `σ` of it (`⟨⟩` extends `π`).
    pub fn extend_correct(
        &self,
        rho: &Position,
        sigma: &FinSeq,
        alpha: &Ordinal,
        bound: usize,
    ) -> Result<Search<FinSeq>> {
        let one_step = match rho {
            Position::Pi => sigma.is_empty(),
            Position::Seq(r) => sigma.len() == r.len() + 1 && r.is_prefix_of(sigma),
        };
        if !one_step {
            return Err(Error::Precondition(format!(
                "{sigma} is not a one-element extension of {rho}"
            )));
        }
        if !self.strongly_correct(rho, alpha)? {
            return Err(Error::Precondition(format!(
                "{rho} is not strongly {alpha}-correct"
            )));
        }
        let pos = Position::Seq(sigma.clone());
        if !self.correct(&pos, &Ordinal::zero())? {
            return Err(Error::Precondition(format!("{sigma} is not 0-correct")));
        }
        self.extend_unchecked(rho, sigma, alpha, bound)
    }

    fn extend_unchecked(
        &self,
        rho: &Position,
        sigma: &FinSeq,
        alpha: &Ordinal,
        bound: usize,
    ) -> Result<Search<FinSeq>> {
        if alpha.is_zero() {
            return Ok(Search::Found(sigma.clone()));
        }
        if bound == 0 {
            return Ok(Search::Exhausted);
        }
        let lower = match alpha.classify() {
            Kind::Successor { predecessor } => predecessor,
            Kind::Limit => {
                let k = self.sys.height(&self.response(rho)?, alpha) as u64 + 1;
                alpha.fund_seq(k)?
            }
            Kind::Zero => unreachable!(),
        };
        if self.extend_unchecked(rho, sigma, &lower, bound)? == Search::Exhausted {
            return Ok(Search::Exhausted);
        }
        let mut ranked = Vec::new();
        for t in self.candidates(sigma, bound) {
            let pos = Position::Seq(t.clone());
            if self.strongly_correct(&pos, &lower)? {
                let key = if alpha.is_limit() {
                    0
                } else {
                    self.sys.p(&self.response(&pos)?, &lower)
                };
                ranked.push((key, t));
            }
        }
        ranked.sort_by(|(ka, a), (kb, b)| ka.cmp(kb).then(a.len().cmp(&b.len())).then(a.cmp(b)));
        for (_, t) in ranked {
            if self.strongly_correct(&Position::Seq(t.clone()), alpha)? {
                return Ok(Search::Found(t));
            }
        }
        Ok(Search::Exhausted)
    }

    /// The shortest strongly `ξ`-correct `σ ⪰ from` satisfying `keep`.
    fn shortest_correct(
        &self,
        from: &FinSeq,
        bound: usize,
        keep: impl Fn(&FinSeq) -> Result<bool>,
    ) -> Result<Search<FinSeq>> {
        for t in self.candidates(from, bound) {
            if self.strongly_correct(&Position::Seq(t.clone()), &self.g.xi)? && keep(&t)? {
                return Ok(Search::Found(t));
            }
        }
        Ok(Search::Exhausted)
    }

    /// A shortest strongly `ξ`-correct `σ` with `S(y, σ) ∈ W`, `|σ| ≤ bound`.
    pub fn separator_evidence(&self, bound: usize) -> Result<Search<FinSeq>> {
        self.shortest_correct(&FinSeq::empty(), bound + 1, |t| {
            Ok(self
                .g
                .w
                .contains(self.sys, &self.response(&Position::Seq(t.clone()))?))
        })
    }
}

/// II's answers `(y, z)` along I's moves `xs`.
pub fn extract_reduction(s: &IIStrategy, xs: &FinSeq) -> Result<(FinSeq, FinSeq)> {
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    for n in 1..=xs.len() {
        let (y, z) = s.move_at(&xs.truncate(n))?;
        ys.push(y);
        zs.push(z);
    }
    Ok((ys.into(), zs.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub sigma: FinSeq,
    pub strongly_correct: bool,
    pub status: Status,
    /// The `W`-relevant `⊴_ξ`-predecessors of `σ_i` are exactly `σ_0..σ_i`.
    pub predecessors_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Halt {
    /// I won at this turn against the next extension.
    IWon { turn: usize },
    /// No starting sequence within the bound.
    NoStart,
    /// No strongly correct extension within the bound.
    Exhausted,
    /// The supplied witness ran out.
    WitnessEnded,
    /// The play reached the requested depth.
    ReachedDepth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub steps: Vec<Step>,
    pub halt: Halt,
    /// II turns completed without I winning.
    pub survived: usize,
}

impl<O: EnumerationOperator> Correctness<'_, O> {
    fn predecessors_match(&self, sigma: &FinSeq, chosen: &[FinSeq], with_w: bool) -> Result<bool> {
        let mut found = Vec::new();
        for r in sigma.prefixes() {
            let pos = Position::Seq(r.clone());
            if !self.tri_leq(&pos, &Position::Seq(sigma.clone()), &self.g.xi)? {
                continue;
            }
            if with_w && !self.g.w.contains(self.sys, &self.response(&pos)?) {
                continue;
            }
            found.push(r);
        }
        Ok(found == chosen)
    }

    /// Tries to defeat I's strategy along `y`. With `v`, II starts from
    /// separator evidence and feeds `v` into the new coordinates; without
    /// it, II starts from the shortest strongly correct sequence and feeds
    /// the least value that keeps the play 0-correct.
    pub fn adversarial_play(
        &self,
        v: Option<&FinSeq>,
        depth: usize,
        bound: usize,
    ) -> Result<Transcript> {
        let start = match v {
            Some(_) => self.separator_evidence(bound)?,
            None => self.shortest_correct(&FinSeq::empty(), bound + 1, |_| Ok(true))?,
        };
        let Search::Found(mut sigma) = start else {
            return Ok(Transcript {
                steps: Vec::new(),
                halt: Halt::NoStart,
                survived: 0,
            });
        };
        let mut chosen = Vec::new();
        let mut steps = Vec::new();
        let halt = loop {
            chosen.push(sigma.clone());
            let pos = Position::Seq(sigma.clone());
            let status = if self.correct(&pos, &Ordinal::zero())? {
                Status::Continues
            } else {
                Status::IWon
            };
            steps.push(Step {
                sigma: sigma.clone(),
                strongly_correct: self.strongly_correct(&pos, &self.g.xi)?,
                status,
                predecessors_match: self.predecessors_match(&sigma, &chosen, v.is_some())?,
            });
            if sigma.len() >= depth {
                break Halt::ReachedDepth;
            }
            let i = chosen.len() - 1;
            let next = match v {
                Some(v) => match v.as_slice().get(i) {
                    Some(&a) => Some(a),
                    None => break Halt::WitnessEnded,
                },
                None => {
                    let mut pick = None;
                    for a in 0..self.g.bounds.alphabet {
                        if self.correct(&Position::Seq(sigma.push(a)), &Ordinal::zero())? {
                            pick = Some(a);
                            break;
                        }
                    }
                    pick
                }
            };
            let tau = match next {
                Some(a) if self.correct(&Position::Seq(sigma.push(a)), &Ordinal::zero())? => {
                    sigma.push(a)
                }
                _ => {
                    break Halt::IWon {
                        turn: sigma.len() + 1,
                    }
                }
            };
            match self.shortest_correct(&tau, bound, |_| Ok(true))? {
                Search::Found(t) => sigma = t,
                Search::Exhausted => break Halt::Exhausted,
            }
        };
        let survived = steps
            .iter()
            .filter(|s| s.status == Status::Continues)
            .map(|s| s.sigma.len())
            .max()
            .unwrap_or(0);
        Ok(Transcript {
            steps,
            halt,
            survived,
        })
    }
}
