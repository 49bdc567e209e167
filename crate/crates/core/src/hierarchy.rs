//! Effective Hausdorff–Kuratowski toolkit: upward-closed generator sets,
//! α-approximations, witness functions and the conversions between them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jump::EnumerationOperator;
use crate::ordinal::{enum_copy, kb_rank, ComputableCopy, Ordinal, RankedTree};
use crate::seq::{keyed, FinSeq, Universe};
use crate::stages::TrueStageSystem;

/// A set of sequences closed upward under `⪯_level`, given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpsetRep {
    pub level: Ordinal,
    pub generators: BTreeSet<FinSeq>,
}

impl UpsetRep {
    pub fn empty(level: Ordinal) -> Self {
        UpsetRep {
            level,
            generators: BTreeSet::new(),
        }
    }

    pub fn new(level: Ordinal, generators: impl IntoIterator<Item = FinSeq>) -> Self {
        UpsetRep {
            level,
            generators: generators.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains<O: EnumerationOperator>(&self, sys: &TrueStageSystem<O>, tau: &FinSeq) -> bool {
        tau.prefixes()
            .any(|g| self.generators.contains(&g) && sys.leq(&g, tau, &self.level))
    }

    pub fn members<O: EnumerationOperator>(
        &self,
        sys: &TrueStageSystem<O>,
        universe: &Universe,
    ) -> BTreeSet<FinSeq> {
        universe
            .all()
            .into_iter()
            .filter(|t| self.contains(sys, t))
            .collect()
    }
}

pub fn upset_close(generators: impl IntoIterator<Item = FinSeq>, alpha: &Ordinal) -> UpsetRep {
    UpsetRep::new(alpha.clone(), generators)
}

/// Whether some generator of `u` is `⪯`-below `x`.
pub fn eval_at<O: EnumerationOperator>(sys: &TrueStageSystem<O>, u: &UpsetRep, x: &FinSeq) -> bool {
    u.contains(sys, x)
}

/// Makes a family at level `α+1` pairwise disjoint.
///
/// `τ` goes to index `n` when `n < |τ|_{α+1}`, `τ` lies in the closure of
/// the `n`-th set and of no earlier one. A sequence is then dropped from `n`
/// if one of its extensions landed at an earlier index, which keeps every
/// output set upward closed.
pub fn disjointify<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    us: &[UpsetRep],
) -> Result<Vec<UpsetRep>> {
    let Some(first) = us.first() else {
        return Ok(Vec::new());
    };
    let level = first.level.clone();
    if let Some(u) = us.iter().find(|u| u.level != level) {
        return Err(Error::Precondition(format!(
            "mixed levels {} and {}",
            level, u.level
        )));
    }
    let all = universe.all();
    let mut raw: BTreeMap<FinSeq, usize> = BTreeMap::new();
    for t in &all {
        let h = sys.height(t, &level);
        if let Some(n) = (0..us.len().min(h)).find(|&n| us[n].contains(sys, t)) {
            if us[..n].iter().all(|u| !u.contains(sys, t)) {
                raw.insert(t.clone(), n);
            }
        }
    }
    let mut out: Vec<BTreeSet<FinSeq>> = vec![BTreeSet::new(); us.len()];
    for (t, &n) in &raw {
        let clash = raw.iter().any(|(t2, &m)| m < n && sys.leq(t, t2, &level));
        if !clash {
            out[n].insert(t.clone());
        }
    }
    Ok(out
        .into_iter()
        .map(|g| UpsetRep::new(level.clone(), g))
        .collect())
}

/// A total map from universe sequences to naturals approximating a
/// function along `⪯_level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxFn {
    pub level: Ordinal,
    #[serde(with = "keyed")]
    pub table: BTreeMap<FinSeq, u64>,
}

impl ApproxFn {
    pub fn from_fn(level: Ordinal, universe: &Universe, f: impl Fn(&FinSeq) -> u64) -> Self {
        ApproxFn {
            level,
            table: universe
                .all()
                .into_iter()
                .map(|s| {
                    let v = f(&s);
                    (s, v)
                })
                .collect(),
        }
    }

    pub fn get(&self, s: &FinSeq) -> Result<u64> {
        self.table
            .get(s)
            .copied()
            .ok_or_else(|| Error::Undefined(format!("approximation at {s}")))
    }
}

/// Builds the approximation at level α from a family at level `α+1`:
/// `f = n` on the `n`-th disjointified set, 0 elsewhere.
pub fn measurable_to_approx<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    us: &[UpsetRep],
    alpha: &Ordinal,
) -> Result<ApproxFn> {
    let next = alpha.succ();
    if let Some(u) = us.iter().find(|u| u.level != next) {
        return Err(Error::Precondition(format!(
            "family must sit at level {next}, found {}",
            u.level
        )));
    }
    let parts = disjointify(sys, universe, us)?;
    Ok(ApproxFn::from_fn(alpha.clone(), universe, |s| {
        parts
            .iter()
            .position(|u| u.generators.contains(s))
            .unwrap_or(0) as u64
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limit {
    pub value: u64,
    pub stable: bool,
}

/// The value at the top of `x`'s chain, and whether the last two chain
/// elements agree.
pub fn approx_limit<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
    x: &FinSeq,
) -> Result<Limit> {
    let chain = sys.chain(x, &f.level);
    let value = f.get(x)?;
    let stable = match chain.len() {
        0 | 1 => false,
        n => f.get(&chain[n - 2])? == value,
    };
    Ok(Limit { value, stable })
}

/// The sets `A_{n,k}`, generated by the sequences of height `k` at which
/// `f` takes the value `n`.
pub fn approx_to_level_sets<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
) -> BTreeMap<(u64, usize), UpsetRep> {
    let mut out: BTreeMap<(u64, usize), UpsetRep> = BTreeMap::new();
    for (s, &n) in &f.table {
        let k = sys.height(s, &f.level);
        out.entry((n, k))
            .or_insert_with(|| UpsetRep::empty(f.level.clone()))
            .generators
            .insert(s.clone());
    }
    out
}

/// An increasing family of upward-closed sets indexed by ordinals below `η`.
/// A missing index means the same set as the nearest present index below
/// it, or the empty set; index `η` is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceFamily {
    pub eta: Ordinal,
    pub level: Ordinal,
    pub sets: BTreeMap<Ordinal, UpsetRep>,
}

impl DifferenceFamily {
    /// Takes the `n`-th set as the one for the `n`-th element of the
    /// canonical copy of `η`.
    pub fn from_indexed(eta: Ordinal, level: Ordinal, us: Vec<UpsetRep>) -> Result<Self> {
        let copy = enum_copy(&eta)?;
        let mut sets = BTreeMap::new();
        for (n, u) in us.into_iter().enumerate() {
            if u.level != level {
                return Err(Error::Precondition(format!(
                    "set {n} sits at level {}, expected {level}",
                    u.level
                )));
            }
            sets.insert(copy.at_index(n as u64)?, u);
        }
        Ok(DifferenceFamily { eta, level, sets })
    }

    pub fn set_at(&self, i: &Ordinal) -> Option<&UpsetRep> {
        self.sets.range(..=i.clone()).next_back().map(|(_, u)| u)
    }

    pub fn contains_at<O: EnumerationOperator>(
        &self,
        sys: &TrueStageSystem<O>,
        i: &Ordinal,
        s: &FinSeq,
    ) -> bool {
        *i >= self.eta || self.set_at(i).is_some_and(|u| u.contains(sys, s))
    }

    /// The least index whose set contains `s`, or `η`.
    pub fn value_at<O: EnumerationOperator>(
        &self,
        sys: &TrueStageSystem<O>,
        s: &FinSeq,
    ) -> Ordinal {
        self.sets
            .iter()
            .find(|(_, u)| u.contains(sys, s))
            .map(|(i, _)| i.clone())
            .unwrap_or_else(|| self.eta.clone())
    }

    /// Membership in the difference set: the parity of the least index
    /// differs from that of `η`.
    pub fn member<O: EnumerationOperator>(&self, sys: &TrueStageSystem<O>, s: &FinSeq) -> bool {
        self.value_at(sys, s).parity() != self.eta.parity()
    }

    pub fn check_increasing<O: EnumerationOperator>(
        &self,
        sys: &TrueStageSystem<O>,
        universe: &Universe,
    ) -> Result<()> {
        if let Some(i) = self.sets.keys().find(|i| **i >= self.eta) {
            return Err(Error::Precondition(format!(
                "index {i} is not below {}",
                self.eta
            )));
        }
        let keys: Vec<_> = self.sets.keys().collect();
        for w in keys.windows(2) {
            let (lo, hi) = (&self.sets[w[0]], &self.sets[w[1]]);
            if let Some(s) = universe
                .all()
                .into_iter()
                .find(|s| lo.contains(sys, s) && !hi.contains(sys, s))
            {
                return Err(Error::NotIncreasing {
                    smaller: w[0].to_string(),
                    larger: w[1].to_string(),
                    witness: s.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// An ordinal-valued counter bounding the mind changes of an approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRepr", into = "WitnessRepr")]
pub struct WitnessFn {
    pub eta: Ordinal,
    pub copy: ComputableCopy,
    pub table: BTreeMap<FinSeq, Ordinal>,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    eta: Ordinal,
    #[serde(with = "keyed")]
    table: BTreeMap<FinSeq, Ordinal>,
}

impl TryFrom<WitnessRepr> for WitnessFn {
    type Error = Error;

    fn try_from(r: WitnessRepr) -> Result<Self> {
        WitnessFn::new(r.eta, r.table)
    }
}

impl From<WitnessFn> for WitnessRepr {
    fn from(w: WitnessFn) -> Self {
        WitnessRepr {
            eta: w.eta,
            table: w.table,
        }
    }
}

impl WitnessFn {
    pub fn new(eta: Ordinal, table: BTreeMap<FinSeq, Ordinal>) -> Result<Self> {
        let copy = enum_copy(&eta)?;
        if let Some((s, v)) = table.iter().find(|(_, v)| **v > eta) {
            return Err(Error::Input(format!(
                "witness value {v} at {s} exceeds {eta}"
            )));
        }
        Ok(WitnessFn { eta, copy, table })
    }

    pub fn get(&self, s: &FinSeq) -> Result<&Ordinal> {
        self.table
            .get(s)
            .ok_or_else(|| Error::Undefined(format!("witness at {s}")))
    }
}

/// Which prefix lengths admit an index into the candidate set `O(σ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CandidateGate {
    /// `n < |σ|`.
    #[default]
    Length,
    /// `n < |σ|_α`.
    Height,
}

/// The approximation and witness read off an increasing family: `o(σ)` is
/// the least candidate index whose set contains `σ`.
pub fn dsets_to_witness<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    fam: &DifferenceFamily,
    alpha: &Ordinal,
    gate: CandidateGate,
) -> Result<(ApproxFn, WitnessFn)> {
    fam.check_increasing(sys, universe)?;
    let copy = enum_copy(&fam.eta)?;
    let mut f = BTreeMap::new();
    let mut o = BTreeMap::new();
    for s in universe.all() {
        let reach = match gate {
            CandidateGate::Length => s.len() as u64,
            CandidateGate::Height => sys.height(&s, alpha) as u64,
        };
        let reach = copy.len().map_or(reach, |n| reach.min(n));
        let mut best = fam.eta.clone();
        for n in 0..reach {
            let i = copy.at_index(n)?;
            if i < best && fam.contains_at(sys, &i, &s) {
                best = i;
            }
        }
        f.insert(s.clone(), (best.parity() != fam.eta.parity()) as u64);
        o.insert(s, best);
    }
    Ok((
        ApproxFn {
            level: alpha.clone(),
            table: f,
        },
        WitnessFn {
            eta: fam.eta.clone(),
            copy,
            table: o,
        },
    ))
}

/// Checks the three witness clauses over every `⪯_α`-comparable pair.
pub fn check_witness<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
    o: &WitnessFn,
) -> Result<()> {
    let clause = |clause, s: &FinSeq, t: &FinSeq| Error::WitnessClause {
        clause,
        sigma: s.to_string(),
        tau: t.to_string(),
    };
    for (t, ot) in &o.table {
        let ft = f.get(t)?;
        if *ot == o.eta && ft != 0 {
            return Err(clause("iii", t, t));
        }
        for s in t.prefixes().filter(|s| s != t) {
            if !sys.leq(&s, t, &f.level) {
                continue;
            }
            let os = o.get(&s)?;
            if ot > os {
                return Err(clause("i", &s, t));
            }
            if ft != f.get(&s)? && ot >= os {
                return Err(clause("ii", &s, t));
            }
        }
    }
    Ok(())
}

/// The parity-corrected witness: `o` or `o+1`, whichever makes the parity
/// rule agree with `f`.
pub fn corrected_witness(f: &ApproxFn, o: &WitnessFn) -> Result<BTreeMap<FinSeq, Ordinal>> {
    o.table
        .iter()
        .map(|(s, v)| {
            let wanted = f.get(s)? == 1;
            let v = if (v.parity() != o.eta.parity()) == wanted {
                v.clone()
            } else {
                v.succ()
            };
            Ok((s.clone(), v))
        })
        .collect()
}

/// The increasing family `U_i = {σ : õ(σ) ≤ i}` for the corrected witness.
pub fn witness_to_dsets<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
    o: &WitnessFn,
) -> Result<DifferenceFamily> {
    check_witness(sys, f, o)?;
    let fixed = corrected_witness(f, o)?;
    let keys: BTreeSet<&Ordinal> = fixed.values().filter(|v| **v < o.eta).collect();
    let sets = keys
        .into_iter()
        .map(|i| {
            let gens = fixed
                .iter()
                .filter(|(_, v)| *v <= i)
                .map(|(s, _)| s.clone());
            (i.clone(), UpsetRep::new(f.level.clone(), gens))
        })
        .collect();
    Ok(DifferenceFamily {
        eta: o.eta.clone(),
        level: f.level.clone(),
        sets,
    })
}

/// The tree of mind changes of `f`: the root plus every `σ` whose value
/// differs from its immediate `⪯_α`-predecessor, each hung below its
/// longest predecessor already in the tree.
pub fn mind_change_tree<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
) -> Result<RankedTree> {
    let mut tree = RankedTree::new(FinSeq::empty());
    let mut seqs: Vec<&FinSeq> = f.table.keys().collect();
    seqs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in seqs {
        let Some(pred) = sys.predecessor(s, &f.level) else {
            continue;
        };
        if f.get(s)? == f.get(&pred)? {
            continue;
        }
        let parent = longest_node_below(sys, &tree, s, &f.level, false);
        tree.add_child(&parent, s.clone())?;
    }
    Ok(tree)
}

fn longest_node_below<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    tree: &RankedTree,
    s: &FinSeq,
    level: &Ordinal,
    inclusive: bool,
) -> FinSeq {
    sys.chain(s, level)
        .into_iter()
        .rev()
        .filter(|r| inclusive || r != s)
        .find(|r| tree.contains(r))
        .unwrap_or_default()
}

/// A witness for `f` from the Kleene–Brouwer ranks of its mind-change tree;
/// `η` is the number of tree nodes and every value lies below it.
pub fn approx_to_witness<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    f: &ApproxFn,
) -> Result<(Ordinal, WitnessFn)> {
    let tree = mind_change_tree(sys, f)?;
    let ranks = kb_rank(&tree);
    let table = f
        .table
        .keys()
        .map(|s| {
            let node = longest_node_below(sys, &tree, s, &f.level, true);
            (s.clone(), Ordinal::finite(ranks.rank[&node]))
        })
        .collect();
    let eta = ranks.eta.clone();
    Ok((eta.clone(), WitnessFn::new(eta, table)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jump::DefaultOperator;

    fn s<const N: usize>(v: [u64; N]) -> FinSeq {
        FinSeq::from(v)
    }

    fn sys() -> TrueStageSystem<DefaultOperator> {
        TrueStageSystem::new(DefaultOperator)
    }

    fn lvl(n: u64) -> Ordinal {
        Ordinal::finite(n)
    }

    #[test]
    fn upset_examples() {
        let sys = sys();
        let u = Universe::new(2, 5);
        let up3 = upset_close([s([3])], &lvl(0));
        let members = up3.members(&sys, &u);
        let expected: BTreeSet<_> = u
            .all()
            .into_iter()
            .filter(|t| s([3]).is_prefix_of(t))
            .collect();
        assert_eq!(members, expected);
        assert!(upset_close([], &lvl(0)).members(&sys, &u).is_empty());
        assert!(eval_at(&sys, &up3, &s([3, 1, 4])));
        assert!(!eval_at(&sys, &up3, &s([4])));
        let up5 = upset_close([s([5])], &lvl(1));
        assert!(!eval_at(&sys, &up5, &s([5, 0])));
        assert!(eval_at(&sys, &up5, &s([5])));
    }

    #[test]
    fn disjointify_examples() {
        let sys = sys();
        let u = Universe::new(3, 3);
        assert!(disjointify(&sys, &u, &[]).unwrap().is_empty());
        let same = [
            upset_close([s([2])], &lvl(1)),
            upset_close([s([2])], &lvl(1)),
        ];
        let out = disjointify(&sys, &u, &same).unwrap();
        assert!(out[1].is_empty());
        assert!(!out[0].is_empty());

        let pair = [
            upset_close([s([0])], &lvl(1)),
            upset_close([s([1])], &lvl(1)),
        ];
        let out = disjointify(&sys, &u, &pair).unwrap();
        for t in u.all() {
            let gated =
                |n: usize, orig: &UpsetRep| orig.contains(&sys, &t) && n < sys.height(&t, &lvl(1));
            assert_eq!(out[0].generators.contains(&t), gated(0, &pair[0]), "{t}");
            assert_eq!(out[1].generators.contains(&t), gated(1, &pair[1]), "{t}");
        }
    }

    #[test]
    fn disjointify_rejects_mixed_levels() {
        let us = [UpsetRep::empty(lvl(0)), UpsetRep::empty(lvl(1))];
        assert!(disjointify(&sys(), &Universe::new(1, 1), &us).is_err());
    }

    #[test]
    fn measurable_to_approx_examples() {
        let sys = sys();
        let u = Universe::new(2, 10);
        let us = [
            upset_close([s([0])], &lvl(1)),
            upset_close([s([1])], &lvl(1)),
        ];
        let f = measurable_to_approx(&sys, &u, &us, &lvl(0)).unwrap();
        assert_eq!(f.get(&s([1, 9])).unwrap(), 1);
        assert_eq!(f.get(&FinSeq::empty()).unwrap(), 0);
        let zero = measurable_to_approx(&sys, &u, &[], &lvl(0)).unwrap();
        assert!(zero.table.values().all(|&v| v == 0));
        assert!(measurable_to_approx(&sys, &u, &us, &lvl(1)).is_err());
    }

    #[test]
    fn approx_limit_examples() {
        let sys = sys();
        let u = Universe::new(2, 2);
        let seven = ApproxFn::from_fn(lvl(0), &u, |_| 7);
        assert_eq!(
            approx_limit(&sys, &seven, &s([1, 1])).unwrap(),
            Limit {
                value: 7,
                stable: true
            }
        );
        let parity = ApproxFn::from_fn(lvl(0), &u, |t| t.len() as u64 % 2);
        assert_eq!(
            approx_limit(&sys, &parity, &s([1, 1])).unwrap(),
            Limit {
                value: 0,
                stable: false
            }
        );
        assert_eq!(
            approx_limit(&sys, &seven, &FinSeq::empty()).unwrap(),
            Limit {
                value: 7,
                stable: false
            }
        );
    }

    #[test]
    fn level_sets_partition_each_height() {
        let sys = sys();
        let u = Universe::new(3, 2);
        let zero = ApproxFn::from_fn(lvl(0), &u, |_| 0);
        let sets = approx_to_level_sets(&sys, &zero);
        assert!(sets.keys().all(|&(n, _)| n == 0));
        assert_eq!(sets[&(0, 2)].generators.len(), 4);

        let two = ApproxFn::from_fn(lvl(0), &u, |t| t.as_slice().iter().sum::<u64>() % 2);
        let sets = approx_to_level_sets(&sys, &two);
        for x in u.maximal() {
            for k in 0..=x.len() {
                let hits = sets
                    .iter()
                    .filter(|((_, kk), a)| *kk == k && a.contains(&sys, &x))
                    .count();
                assert_eq!(hits, 1, "{x} at height {k}");
            }
        }
        let empty = ApproxFn {
            level: lvl(0),
            table: BTreeMap::new(),
        };
        assert!(approx_to_level_sets(&sys, &empty).is_empty());
    }

    fn two_set_family() -> DifferenceFamily {
        DifferenceFamily::from_indexed(
            lvl(2),
            lvl(0),
            vec![
                upset_close([s([0])], &lvl(0)),
                upset_close([FinSeq::empty()], &lvl(0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn dsets_to_witness_examples() {
        let sys = sys();
        let u = Universe::new(2, 2);
        let (f, o) =
            dsets_to_witness(&sys, &u, &two_set_family(), &lvl(0), CandidateGate::Length).unwrap();
        assert_eq!(
            (o.get(&s([0])).unwrap(), f.get(&s([0])).unwrap()),
            (&lvl(0), 0)
        );
        assert_eq!(
            (o.get(&s([1])).unwrap(), f.get(&s([1])).unwrap()),
            (&lvl(2), 0)
        );
        assert_eq!(
            (o.get(&s([1, 1])).unwrap(), f.get(&s([1, 1])).unwrap()),
            (&lvl(1), 1)
        );
        check_witness(&sys, &f, &o).unwrap();

        let none =
            DifferenceFamily::from_indexed(lvl(1), lvl(0), vec![UpsetRep::empty(lvl(0))]).unwrap();
        let (f, o) = dsets_to_witness(&sys, &u, &none, &lvl(0), CandidateGate::Length).unwrap();
        assert!(o.table.values().all(|v| *v == lvl(1)));
        assert!(f.table.values().all(|&v| v == 0));
    }

    #[test]
    fn dsets_to_witness_rejects_decreasing() {
        let fam = DifferenceFamily::from_indexed(
            lvl(2),
            lvl(0),
            vec![
                upset_close([s([0])], &lvl(0)),
                upset_close([s([1])], &lvl(0)),
            ],
        )
        .unwrap();
        let err = dsets_to_witness(
            &sys(),
            &Universe::new(1, 2),
            &fam,
            &lvl(0),
            CandidateGate::Length,
        );
        assert!(matches!(err, Err(Error::NotIncreasing { .. })));
    }

    #[test]
    fn parity_correction() {
        let u = Universe::new(0, 1);
        let f = ApproxFn::from_fn(lvl(0), &u, |_| 0);
        let o = WitnessFn::new(lvl(2), [(FinSeq::empty(), lvl(1))].into()).unwrap();
        assert_eq!(corrected_witness(&f, &o).unwrap()[&FinSeq::empty()], lvl(2));
        let top = WitnessFn::new(lvl(2), [(FinSeq::empty(), lvl(2))].into()).unwrap();
        assert_eq!(
            corrected_witness(&f, &top).unwrap()[&FinSeq::empty()],
            lvl(2)
        );
    }

    #[test]
    fn witness_clause_errors_name_the_pair() {
        let sys = sys();
        let u = Universe::new(1, 1);
        let f = ApproxFn::from_fn(lvl(0), &u, |t| t.len() as u64);
        let flat =
            WitnessFn::new(lvl(3), u.all().into_iter().map(|t| (t, lvl(1))).collect()).unwrap();
        match witness_to_dsets(&sys, &f, &flat) {
            Err(Error::WitnessClause { clause, sigma, tau }) => {
                assert_eq!((clause, sigma.as_str(), tau.as_str()), ("ii", "[]", "[0]"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dsets_round_trip() {
        let sys = sys();
        let u = Universe::new(2, 2);
        let fam = two_set_family();
        let (f, o) = dsets_to_witness(&sys, &u, &fam, &lvl(0), CandidateGate::Length).unwrap();
        let back = witness_to_dsets(&sys, &f, &o).unwrap();
        let (f2, _) = dsets_to_witness(&sys, &u, &back, &lvl(0), CandidateGate::Length).unwrap();
        for x in u.all() {
            assert_eq!(back.member(&sys, &x), f.get(&x).unwrap() == 1, "{x}");
        }
        assert_eq!(f, f2);
    }

    #[test]
    fn approx_to_witness_examples() {
        let sys = sys();
        let u = Universe::new(2, 2);
        let constant = ApproxFn::from_fn(lvl(0), &u, |_| 4);
        let (eta, o) = approx_to_witness(&sys, &constant).unwrap();
        assert_eq!(eta, lvl(1));
        assert!(o.table.values().all(|v| v.is_zero()));

        let line = Universe::new(2, 1);
        let parity = ApproxFn::from_fn(lvl(0), &line, |t| t.len() as u64 % 2);
        let (eta, o) = approx_to_witness(&sys, &parity).unwrap();
        assert_eq!(eta, lvl(3));
        let values: Vec<_> = line
            .all()
            .iter()
            .map(|t| o.get(t).unwrap().clone())
            .collect();
        assert_eq!(values, vec![lvl(2), lvl(1), lvl(0)]);

        let once = ApproxFn::from_fn(lvl(0), &u, |t| s([0]).is_prefix_of(t) as u64);
        let (eta, o) = approx_to_witness(&sys, &once).unwrap();
        assert_eq!(eta, lvl(2));
        for t in u.all() {
            let want = if s([0]).is_prefix_of(&t) { 0 } else { 1 };
            assert_eq!(o.get(&t).unwrap(), &lvl(want), "{t}");
        }
        check_witness(&sys, &once, &o).unwrap();
    }

    #[test]
    fn witness_json_round_trip() {
        let o = WitnessFn::new(lvl(2), [(s([1]), lvl(1))].into()).unwrap();
        let text = serde_json::to_string(&o).unwrap();
        assert_eq!(text, r#"{"eta":"2","table":{"[1]":"1"}}"#);
        assert_eq!(serde_json::from_str::<WitnessFn>(&text).unwrap(), o);
        let u = upset_close([s([1, 2])], &lvl(1));
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"level":"1","generators":[[1,2]]}"#
        );
    }
}
