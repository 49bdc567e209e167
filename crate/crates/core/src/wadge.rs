//! Separated-union decompositions of sets that are both `Σ` and `Π` at a
//! limit level, built from the tree of still-undecided sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::UpsetRep;
use crate::jump::EnumerationOperator;
use crate::ordinal::Ordinal;
use crate::seq::{FinSeq, Universe};
use crate::stages::TrueStageSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum NodeKind {
    Leaf {
        value: u8,
        witness_level: Ordinal,
    },
    Internal {
        children: Vec<DecompositionTree>,
        separators: Vec<UpsetRep>,
        separator_level: Ordinal,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub node: FinSeq,
    pub kind: NodeKind,
    pub rank: u64,
}

impl DecompositionTree {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf { .. })
    }

    pub fn children(&self) -> &[DecompositionTree] {
        match &self.kind {
            NodeKind::Leaf { .. } => &[],
            NodeKind::Internal { children, .. } => children,
        }
    }

    /// Every node, parents before children.
    pub fn walk(&self) -> Vec<&DecompositionTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            out.extend(out[i].children());
            i += 1;
        }
        out
    }
}

/// The sequences `τ` with `σ ≺_λ τ` and nothing `⪯_λ`-between them.
pub fn immediate_extensions<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    sigma: &FinSeq,
    lambda: &Ordinal,
) -> Vec<FinSeq> {
    let mut out = Vec::new();
    let mut frontier = vec![sigma.clone()];
    while let Some(t) = frontier.pop() {
        if t.len() >= universe.max_len {
            continue;
        }
        for a in 0..universe.alphabet {
            let next = t.push(a);
            if sys.predecessor(&next, lambda).as_ref() == Some(sigma) {
                out.push(next.clone());
            }
            frontier.push(next);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn check_inputs<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    w0: &UpsetRep,
    w1: &UpsetRep,
    lambda: &Ordinal,
) -> Result<()> {
    if !lambda.is_limit() {
        return Err(Error::NotLimit(lambda.to_string()));
    }
    for w in [w0, w1] {
        if w.level != *lambda {
            return Err(Error::Precondition(format!(
                "decided sets must sit at level {lambda}, found {}",
                w.level
            )));
        }
    }
    for t in universe.all() {
        let (in0, in1) = (w0.contains(sys, &t), w1.contains(sys, &t));
        if in0 && in1 {
            return Err(Error::Overlap(t.to_string()));
        }
        if !in0 && !in1 && universe.is_maximal(&t) {
            return Err(Error::Uncovered(t.to_string()));
        }
    }
    Ok(())
}

/// Decomposes the set generated by `w1` (complement `w0`) at limit level `λ`.
pub fn wadge_tree<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    w0: &UpsetRep,
    w1: &UpsetRep,
    lambda: &Ordinal,
) -> Result<DecompositionTree> {
    check_inputs(sys, universe, w0, w1, lambda)?;
    build(sys, universe, w0, w1, lambda, FinSeq::empty())
}

fn build<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    w0: &UpsetRep,
    w1: &UpsetRep,
    lambda: &Ordinal,
    node: FinSeq,
) -> Result<DecompositionTree> {
    let k = sys.height(&node, lambda) as u64;
    let decided = if w1.contains(sys, &node) {
        Some(1)
    } else if w0.contains(sys, &node) {
        Some(0)
    } else {
        None
    };
    if let Some(value) = decided {
        return Ok(DecompositionTree {
            node,
            kind: NodeKind::Leaf {
                value,
                witness_level: lambda.fund_seq(k)?,
            },
            rank: 0,
        });
    }
    let separator_level = lambda.fund_seq(k + 1)?;
    let kids = immediate_extensions(sys, universe, &node, lambda);
    let separators = kids
        .iter()
        .map(|t| UpsetRep::new(separator_level.clone(), [t.clone()]))
        .collect();
    let children = kids
        .into_iter()
        .map(|t| build(sys, universe, w0, w1, lambda, t))
        .collect::<Result<Vec<_>>>()?;
    let rank = 1 + children.iter().map(|c| c.rank).max().unwrap_or(0);
    Ok(DecompositionTree {
        node,
        kind: NodeKind::Internal {
            children,
            separators,
            separator_level,
        },
        rank,
    })
}

/// Follows the separators containing `x` down to a leaf.
pub fn decomposition_eval<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    t: &DecompositionTree,
    x: &FinSeq,
) -> Result<bool> {
    let mut at = t;
    loop {
        match &at.kind {
            NodeKind::Leaf { value, .. } => return Ok(*value == 1),
            NodeKind::Internal {
                children,
                separators,
                ..
            } => {
                let mut hits = separators
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| u.contains(sys, x))
                    .map(|(i, _)| i);
                let Some(i) = hits.next() else {
                    return Err(Error::NoSeparator(format!("{x} below {}", at.node)));
                };
                if hits.next().is_some() {
                    return Err(Error::Overlap(format!("{x} below {}", at.node)));
                }
                at = &children[i];
            }
        }
    }
}

pub fn isu_rank(t: &DecompositionTree) -> u64 {
    t.rank
}

/// Builds a disjoint covering pair by walking the `⪯_λ`-tree from the
/// root. `decide` may settle each visited node; maximal nodes it leaves
/// open are settled to 0.
pub fn instance_from_decider<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    lambda: &Ordinal,
    mut decide: impl FnMut(&FinSeq) -> Option<bool>,
) -> (UpsetRep, UpsetRep) {
    let mut w0 = UpsetRep::empty(lambda.clone());
    let mut w1 = UpsetRep::empty(lambda.clone());
    let mut stack = vec![FinSeq::empty()];
    while let Some(node) = stack.pop() {
        let verdict = decide(&node).or_else(|| universe.is_maximal(&node).then_some(false));
        match verdict {
            Some(true) => {
                w1.generators.insert(node);
            }
            Some(false) => {
                w0.generators.insert(node);
            }
            None => {
                let mut kids = immediate_extensions(sys, universe, &node, lambda);
                kids.reverse();
                stack.extend(kids);
            }
        }
    }
    (w0, w1)
}
