//! The subcommands, each producing results and failures.

use std::fmt::Write;

use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use truestages::hierarchy::{
    approx_limit, approx_to_witness, check_witness, witness_to_dsets, ApproxFn,
};
use truestages::lsr::{extract_reduction, referee, solve, Correctness, GameInstance, Solution};
use truestages::wadge::{decomposition_eval, wadge_tree};
use truestages::{
    ts_verify, DefaultOperator, EnumerationOperator, Error, FinSeq, Ordinal, ReversedOperator,
    TrueStageSystem, Universe, UpsetRep, VerifyOptions, WitnessFn,
};

use crate::app::{parse_seq, Command, Context, HkAction, LsrAction, Report, WadgeAction};
use crate::gen;

/// Positions the solver may visit before giving up.
pub const SOLVE_BUDGET: u64 = 1 << 22;

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("values serialize")
}

pub fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Report, Error> {
    match cmd {
        Command::Verify { window, reversed } => {
            let opts = VerifyOptions { window: *window };
            if *reversed {
                verify(ctx, TrueStageSystem::new(ReversedOperator), opts)
            } else {
                verify(ctx, TrueStageSystem::new(DefaultOperator), opts)
            }
        }
        Command::Jump => jump(ctx),
        Command::Truestages => relations(ctx),
        Command::Hk { action } => match action {
            HkAction::Convert => hk_convert(ctx),
            HkAction::Roundtrip { trials } => hk_roundtrip(ctx, *trials),
        },
        Command::Wadge { action } => match action {
            WadgeAction::Decompose => wadge_decompose(ctx),
            WadgeAction::Eval { x } => wadge_eval(ctx, x.as_deref()),
        },
        Command::Lsr { action } => match action {
            LsrAction::Solve => lsr_solve(ctx),
            LsrAction::Referee { trials } => lsr_referee(ctx, *trials),
            LsrAction::Separator => lsr_separator(ctx),
            LsrAction::Adversarial => lsr_adversarial(ctx),
        },
    }
}

fn verify<O: EnumerationOperator>(
    ctx: &Context,
    sys: TrueStageSystem<O>,
    opts: VerifyOptions,
) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let levels = ctx.levels()?;
    let report = ts_verify(&sys, &universe, &levels, opts);
    let results = report.outcomes.iter().map(to_value).collect();
    let failures = report.failures().map(to_value).collect();
    Ok(Report {
        results,
        failures,
        text: Some(report.to_string()),
    })
}

fn jump(ctx: &Context) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let zero = Ordinal::zero();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut text = String::new();
    for s in universe.all() {
        let trace = sys.trace(&s, &zero);
        if let Err(e) = trace.check_shape(s.len()) {
            failures.push(json!({"sigma": s, "error": e.to_string()}));
        }
        if let Some(parent) = s.len().checked_sub(1).map(|n| s.truncate(n)) {
            if !sys.trace(&parent, &zero).is_prefix_of(&trace) {
                failures
                    .push(json!({"sigma": s, "error": "trace does not extend the parent trace"}));
            }
        }
        let p = sys.p(&s, &zero);
        let events: Vec<String> = trace
            .events
            .iter()
            .map(|e| format!("{}@{}", e.e, e.time))
            .collect();
        writeln!(text, "{s}\tp={p}\t{}", events.join(" ")).expect("string writes");
        results.push(json!({"sigma": s, "trace": trace.events, "p": p}));
    }
    Ok(Report {
        results,
        failures,
        text: Some(text),
    })
}

fn relations(ctx: &Context) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let levels = ctx.levels()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let all = universe.all();
    let mut results = Vec::new();
    let mut text = String::new();
    for alpha in &levels {
        for s in &all {
            for t in &all {
                let leq = sys.leq(s, t, alpha);
                writeln!(text, "{alpha}\t{s}\t{t}\t{}", leq as u8).expect("string writes");
                results.push(json!({"alpha": alpha, "sigma": s, "tau": t, "leq": leq}));
            }
        }
    }
    Ok(Report {
        results,
        failures: Vec::new(),
        text: Some(text),
    })
}

/// Approximation to witness to family; the family must agree with the
/// stable limits on maximal sequences.
fn hk_round<O: EnumerationOperator>(
    sys: &TrueStageSystem<O>,
    universe: &Universe,
    f: &ApproxFn,
    eta: Option<&Ordinal>,
) -> Result<Value, Error> {
    let (tree_eta, mut o) = approx_to_witness(sys, f)?;
    if let Some(eta) = eta {
        if *eta < tree_eta {
            return Err(Error::Input(format!(
                "--eta {eta} is below the mind-change bound {tree_eta}"
            )));
        }
        o = WitnessFn::new(eta.clone(), o.table)?;
    }
    check_witness(sys, f, &o)?;
    let fam = witness_to_dsets(sys, f, &o)?;
    let mut disagree = Vec::new();
    let mut compared = 0;
    for x in universe.maximal() {
        let lim = approx_limit(sys, f, &x)?;
        if !lim.stable {
            continue;
        }
        compared += 1;
        if fam.member(sys, &x) != (lim.value == 1) {
            disagree.push(x);
        }
    }
    Ok(json!({
        "eta": o.eta,
        "witness": o,
        "family": fam,
        "compared": compared,
        "disagreements": disagree,
    }))
}

fn hk_convert(ctx: &mut Context) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let f = match ctx.read_instance::<ApproxFn>()? {
        Some(f) => f,
        None => {
            let alpha = ctx.alpha()?;
            gen::approx(&mut ctx.rng, &universe, &alpha)
        }
    };
    let eta = ctx.eta()?;
    let out = hk_round(&sys, &universe, &f, eta.as_ref())?;
    let failures = if out["disagreements"]
        .as_array()
        .is_some_and(|d| !d.is_empty())
    {
        vec![out["disagreements"].clone()]
    } else {
        Vec::new()
    };
    Ok(Report::new(
        vec![json!({"approx": f, "conversion": out})],
        failures,
    ))
}

fn hk_roundtrip(ctx: &mut Context, trials: usize) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let alpha = ctx.alpha()?;
    let eta = ctx.eta()?;
    let mut failures = Vec::new();
    let mut etas = Vec::new();
    for trial in 0..trials {
        let f = gen::approx(&mut ctx.rng, &universe, &alpha);
        let out = hk_round(&sys, &universe, &f, eta.as_ref())?;
        if out["disagreements"]
            .as_array()
            .is_some_and(|d| !d.is_empty())
        {
            failures
                .push(json!({"trial": trial, "approx": f, "disagreements": out["disagreements"]}));
        }
        etas.push(out["eta"].clone());
    }
    Ok(Report::new(
        vec![json!({"trials": trials, "agreed": trials - failures.len(), "etas": etas})],
        failures,
    ))
}

#[derive(Deserialize)]
struct WadgeInstance {
    lambda: Ordinal,
    #[serde(rename = "W0")]
    w0: UpsetRep,
    #[serde(rename = "W1")]
    w1: UpsetRep,
}

fn wadge_instance<O: EnumerationOperator>(
    ctx: &mut Context,
    sys: &TrueStageSystem<O>,
    universe: &Universe,
) -> Result<WadgeInstance, Error> {
    if let Some(w) = ctx.read_instance::<WadgeInstance>()? {
        return Ok(w);
    }
    let lambda = ctx.alpha()?;
    if !lambda.is_limit() {
        return Err(Error::NotLimit(lambda.to_string()));
    }
    let (w0, w1) = gen::wadge_pair(&mut ctx.rng, sys, universe, &lambda, 0.3);
    Ok(WadgeInstance { lambda, w0, w1 })
}

fn wadge_decompose(ctx: &mut Context) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let w = wadge_instance(ctx, &sys, &universe)?;
    let tree = wadge_tree(&sys, &universe, &w.w0, &w.w1, &w.lambda)?;
    let mut failures = Vec::new();
    for x in universe.maximal() {
        let got = decomposition_eval(&sys, &tree, &x)?;
        if got != w.w1.contains(&sys, &x) {
            failures.push(json!({"x": x, "tree": got}));
        }
    }
    Ok(Report::new(
        vec![json!({"lambda": w.lambda, "W0": w.w0, "W1": w.w1, "rank": tree.rank, "tree": tree})],
        failures,
    ))
}

fn wadge_eval(ctx: &mut Context, x: Option<&str>) -> Result<Report, Error> {
    let universe = ctx.universe()?;
    let sys = TrueStageSystem::new(DefaultOperator);
    let w = wadge_instance(ctx, &sys, &universe)?;
    let tree = wadge_tree(&sys, &universe, &w.w0, &w.w1, &w.lambda)?;
    let xs = match x {
        Some(x) => {
            let x = parse_seq(x)?;
            universe.check(&x)?;
            if !universe.is_maximal(&x) {
                return Err(Error::Input(format!("{x} is not maximal in the universe")));
            }
            vec![x]
        }
        None => universe.maximal(),
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for x in xs {
        let value = decomposition_eval(&sys, &tree, &x)?;
        let direct = w.w1.contains(&sys, &x);
        if value != direct {
            failures.push(json!({"x": x, "tree": value, "direct": direct}));
        }
        results.push(json!({"x": x, "value": value as u8}));
    }
    Ok(Report::new(results, failures))
}

fn game(ctx: &mut Context) -> Result<GameInstance, Error> {
    if let Some(g) = ctx.read_instance::<GameInstance>()? {
        return Ok(g);
    }
    if ctx.common.alphabet == 0 {
        return Err(Error::Input("--alphabet must be positive".into()));
    }
    let xi = ctx.alpha()?;
    let (alphabet, depth) = (ctx.common.alphabet, ctx.common.depth);
    Ok(gen::game(&mut ctx.rng, &xi, alphabet, depth))
}

fn lsr_solve(ctx: &mut Context) -> Result<Report, Error> {
    let sys = TrueStageSystem::new(DefaultOperator);
    let g = game(ctx)?;
    let sol = solve(&sys, &g, ctx.common.depth, SOLVE_BUDGET)?;
    Ok(Report::new(
        vec![json!({"instance": g, "solution": sol})],
        Vec::new(),
    ))
}

fn lsr_referee(ctx: &mut Context, trials: usize) -> Result<Report, Error> {
    let sys = TrueStageSystem::new(DefaultOperator);
    let g = game(ctx)?;
    let depth = ctx.common.depth.max(1);
    let mut results = Vec::new();
    for _ in 0..trials {
        let rounds = ctx.rng.gen_range(1..=depth);
        let play = gen::play(&mut ctx.rng, g.bounds.alphabet, rounds);
        let verdict = referee(&sys, &g, &play)?;
        results.push(json!({"play": play, "verdict": verdict}));
    }
    Ok(Report::new(results, Vec::new()))
}

fn lsr_separator(ctx: &mut Context) -> Result<Report, Error> {
    let sys = TrueStageSystem::new(DefaultOperator);
    let g = game(ctx)?;
    let depth = ctx.common.depth;
    let sol = solve(&sys, &g, depth, SOLVE_BUDGET)?;
    let mut results = Vec::new();
    let mut failures = Vec::new();
    match &sol {
        Solution::IWins { strategy, .. } => {
            let universe = Universe::new(depth, g.bounds.alphabet);
            let b1: Vec<FinSeq> =
                g.t1.paths(g.bounds.alphabet, depth)
                    .into_iter()
                    .map(|(y, _)| y)
                    .collect();
            for y in universe.of_length(depth) {
                let c = Correctness::new(&sys, &g, strategy, y.clone());
                let evidence = c.separator_evidence(depth)?.found();
                let in_b1 = b1.contains(&y);
                if in_b1 && evidence.is_some() {
                    failures.push(json!({"y": y, "evidence": evidence}));
                }
                results.push(json!({"y": y, "evidence": evidence, "t1_consistent": in_b1}));
            }
        }
        Solution::Undetermined { survival } => {
            let universe = Universe::new(depth, g.bounds.alphabet);
            for xs in universe.of_length(depth) {
                let (y, z) = extract_reduction(survival, &xs)?;
                results.push(json!({"xs": xs, "y": y, "z": z}));
            }
        }
    }
    Ok(Report::new(
        std::iter::once(json!({"solution": sol}))
            .chain(results)
            .collect(),
        failures,
    ))
}

fn lsr_adversarial(ctx: &mut Context) -> Result<Report, Error> {
    let sys = TrueStageSystem::new(DefaultOperator);
    let g = game(ctx)?;
    let depth = ctx.common.depth;
    let sol = solve(&sys, &g, depth, SOLVE_BUDGET)?;
    let Solution::IWins { strategy, by_turn } = &sol else {
        return Ok(Report::new(vec![json!({"solution": sol})], Vec::new()));
    };
    let mut results = vec![json!({"by_turn": by_turn})];
    let mut failures = Vec::new();
    for (y, v) in g.t1.paths(g.bounds.alphabet, depth) {
        let c = Correctness::new(&sys, &g, strategy, y.clone());
        let t = c.adversarial_play(Some(&v), depth, depth)?;
        if t.survived >= *by_turn {
            failures.push(json!({"y": y, "v": v, "survived": t.survived}));
        }
        results.push(json!({"y": y, "v": v, "transcript": t}));
    }
    Ok(Report::new(results, failures))
}
