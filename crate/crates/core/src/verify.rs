//! Exhaustive property checks for a [`TrueStageSystem`] over a finite universe.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::jump::EnumerationOperator;
use crate::ordinal::{Kind, Ordinal};
use crate::seq::{FinSeq, Universe};
use crate::stages::TrueStageSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    /// `σ ⪯_α τ` implies `σ ⪯ τ`.
    Ts1,
    /// Predecessor sets are linearly ordered.
    Ts2,
    /// Along each maximal sequence the true prefixes form a coherent chain.
    Ts3,
    /// Nestedness across consecutive levels.
    Ts5,
    /// Successor levels match the `p`-formula and traces grow along chains.
    Ts7,
    /// The `♣` splitting property.
    Club,
    /// Limit levels agree with `λ_j` for `j` from the height to the window.
    Ts9,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Ts1,
        Property::Ts2,
        Property::Ts3,
        Property::Ts5,
        Property::Ts7,
        Property::Club,
        Property::Ts9,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::Ts1 => "TS1",
            Property::Ts2 => "TS2",
            Property::Ts3 => "TS3",
            Property::Ts5 => "TS5",
            Property::Ts7 => "TS7",
            Property::Club => "CLUB",
            Property::Ts9 => "TS9",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub levels: Vec<Ordinal>,
    pub seqs: Vec<FinSeq>,
    pub note: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<_> = self.levels.iter().map(|l| l.to_string()).collect();
        let seqs: Vec<_> = self.seqs.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "levels {} seqs {}: {}",
            levels.join(","),
            seqs.join(" "),
            self.note
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: Property,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub universe: Universe,
    pub levels: Vec<Ordinal>,
    pub window: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn outcome(&self, p: Property) -> &PropertyOutcome {
        self.outcomes
            .iter()
            .find(|o| o.property == p)
            .expect("every property is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let verdict = if o.passed() { "pass" } else { "FAIL" };
            write!(
                f,
                "{:<5} {verdict} ({} checks)",
                o.property.label(),
                o.checked
            )?;
            if let Some(c) = &o.counterexample {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// How far past `λ_k` limit stabilization is checked.
    pub window: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { window: 4 }
    }
}

struct Tally {
    property: Property,
    checked: u64,
    found: Option<Counterexample>,
}

impl Tally {
    fn new(property: Property) -> Self {
        Tally {
            property,
            checked: 0,
            found: None,
        }
    }

    fn check(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok && self.found.is_none() {
            self.found = Some(cx());
        }
    }

    fn done(self) -> PropertyOutcome {
        PropertyOutcome {
            property: self.property,
            checked: self.checked,
            counterexample: self.found,
        }
    }
}

fn cx(levels: &[&Ordinal], seqs: &[&FinSeq], note: impl Into<String>) -> Counterexample {
    Counterexample {
        levels: levels.iter().map(|&l| l.clone()).collect(),
        seqs: seqs.iter().map(|&s| s.clone()).collect(),
        note: note.into(),
    }
}

/// Runs every property over all sequences of `universe` at the given levels.
pub fn ts_verify<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    levels: &[Ordinal],
    opts: VerifyOptions,
) -> PropertyReport {
    let mut levels = levels.to_vec();
    levels.sort();
    levels.dedup();
    let all = universe.all();
    let maximal = universe.maximal();

    let mut ts1 = Tally::new(Property::Ts1);
    let mut ts2 = Tally::new(Property::Ts2);
    let mut ts3 = Tally::new(Property::Ts3);
    let mut ts5 = Tally::new(Property::Ts5);
    let mut ts7 = Tally::new(Property::Ts7);
    let mut club = Tally::new(Property::Club);
    let mut ts9 = Tally::new(Property::Ts9);

    for alpha in &levels {
        for s in &all {
            for t in &all {
                let v = sys.leq(s, t, alpha);
                ts1.check(!v || s.is_prefix_of(t), || {
                    cx(&[alpha], &[s, t], "related but not a prefix")
                });
            }
        }

        for t in &all {
            let chain = sys.chain(t, alpha);
            for (i, a) in chain.iter().enumerate() {
                for b in &chain[i + 1..] {
                    ts2.check(sys.leq(a, b, alpha), || {
                        cx(
                            &[alpha],
                            &[a, b, t],
                            "predecessors of the last sequence are incomparable",
                        )
                    });
                }
            }
        }

        for t in &maximal {
            let chain = sys.chain(t, alpha);
            for (i, rho) in chain.iter().enumerate() {
                let own = sys.chain(rho, alpha);
                ts3.check(own == chain[..=i], || {
                    cx(
                        &[alpha],
                        &[rho, t],
                        "chain of a true prefix is not the restricted chain",
                    )
                });
            }
        }

        for t in &all {
            for s in t.prefixes() {
                if !sys.leq(&s, t, alpha) {
                    continue;
                }
                let (ts, tt) = (sys.trace(&s, alpha), sys.trace(t, alpha));
                ts7.check(ts.is_prefix_of(&tt), || {
                    cx(
                        &[alpha],
                        &[&s, t],
                        "trace of the smaller sequence is not a prefix",
                    )
                });
            }
        }

        if let Kind::Successor { predecessor: beta } = alpha.classify() {
            for t in &all {
                let lower = sys.chain(t, &beta);
                for (i, s) in lower.iter().enumerate() {
                    let floor = sys.p(s, &beta);
                    let expected = lower[i + 1..]
                        .iter()
                        .filter(|rho| sys.leq(s, rho, &beta))
                        .all(|rho| sys.p(rho, &beta) >= floor);
                    ts7.check(sys.leq(s, t, alpha) == expected, || {
                        cx(&[alpha], &[s, t], "relation disagrees with the p-formula")
                    });
                }
                for s in t.prefixes() {
                    if !lower.contains(&s) {
                        ts7.check(!sys.leq(&s, t, alpha), || {
                            cx(&[alpha, &beta], &[&s, t], "related above but not below")
                        });
                    }
                }
            }
        }

        if alpha.is_limit() {
            for t in &all {
                for s in t.prefixes().filter(|s| s != t) {
                    let k = sys.height(&s, alpha) as u64;
                    let at_k = sys.leq(&s, t, &alpha.fund_seq(k).expect("limit"));
                    ts9.check(sys.leq(&s, t, alpha) == at_k, || {
                        cx(
                            &[alpha],
                            &[&s, t],
                            "limit relation differs from the selected level",
                        )
                    });
                    for j in k + 1..=k + opts.window {
                        let lj = alpha.fund_seq(j).expect("limit");
                        ts9.check(sys.leq(&s, t, &lj) == at_k, || {
                            cx(
                                &[alpha, &lj],
                                &[&s, t],
                                "relation not yet stable along the sequence",
                            )
                        });
                    }
                }
            }
        }
    }

    for pair in levels.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        for t in &all {
            for s in t.prefixes() {
                if sys.leq(&s, t, hi) {
                    ts5.check(sys.leq(&s, t, lo), || {
                        cx(&[lo, hi], &[&s, t], "related at the higher level only")
                    });
                }
            }
        }
    }

    for alpha in &levels {
        let next = alpha.succ();
        if !levels.contains(&next) {
            continue;
        }
        for s2 in &all {
            let chain = sys.chain(s2, alpha);
            for (i, s0) in chain.iter().enumerate() {
                if !sys.leq(s0, s2, &next) {
                    continue;
                }
                for s1 in &chain[i..] {
                    club.check(sys.leq(s0, s1, &next), || {
                        cx(
                            &[alpha, &next],
                            &[s0, s1, s2],
                            "the middle sequence is not related above",
                        )
                    });
                }
            }
        }
    }

    PropertyReport {
        universe: *universe,
        levels,
        window: opts.window,
        outcomes: [ts1, ts2, ts3, ts5, ts7, club, ts9]
            .into_iter()
            .map(Tally::done)
            .collect(),
    }
}
