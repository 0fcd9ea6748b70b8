//! Exact expectations by walking the finite outcome tree in rational arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::flavor::Flavor;
use super::qubit::{Axis, PauliState, Prob};
use super::score::ExtendedScore;
use super::session::{JointRecord, MeasurementRecord};
use super::strategy::{AliceView, Choice, Strategy};

/// A node of the outcome tree at Alice's Step-4 decision point.
#[derive(Clone, Copy, Debug)]
pub struct Branch {
    pub prob: Prob,
    pub caught: bool,
    pub coin: bool,
    pub alice: PauliState,
    pub bob: PauliState,
    pub view: AliceView,
}

fn measure(flavor: &Flavor, state: PauliState, axis: Axis) -> Vec<(MeasurementRecord, Prob, PauliState)> {
    let axis = flavor.effective_axis(axis);
    state
        .outcomes(axis)
        .into_iter()
        .map(|(bit, p)| (MeasurementRecord { basis: axis, outcome: bit }, p, PauliState::new(axis, bit)))
        .collect()
}

/// All branches reaching Alice's decision, given her measurement plan up to Step 4.
pub fn decision_branches(flavor: &Flavor, precheck: Option<Axis>, step4: Option<Axis>) -> Vec<Branch> {
    let half = Prob::new(1, 2);
    let mut out = Vec::new();
    for item in flavor.items() {
        let starts: Vec<(Option<MeasurementRecord>, Prob, PauliState)> = match precheck {
            None => vec![(None, Prob::one(), item.alice)],
            Some(ax) => measure(flavor, item.alice, ax).into_iter().map(|(r, p, s)| (Some(r), p, s)).collect(),
        };
        for (pre, p1, s1) in starts {
            for (check, p2, s2) in measure(flavor, s1, item.alice.axis) {
                let prob = item.weight * p1 * p2;
                let view = AliceView { precheck: pre, ..AliceView::default() };
                if check.outcome != item.alice.bit {
                    out.push(Branch { prob, caught: true, coin: false, alice: s2, bob: item.bob, view });
                    continue;
                }
                for coin in [false, true] {
                    let s3 = if coin { flavor.apply_op(s2) } else { s2 };
                    match step4 {
                        None => out.push(Branch { prob: prob * half, caught: false, coin, alice: s3, bob: item.bob, view }),
                        Some(ax) => {
                            for (r, p4, s4) in measure(flavor, s3, ax) {
                                let view = AliceView { step4: Some(r), ..view };
                                out.push(Branch { prob: prob * half * p4, caught: false, coin, alice: s4, bob: item.bob, view });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Refine a branch by the joint Step-5 measurement.
pub fn joint_branches(flavor: &Flavor, b: &Branch, alice_axis: Axis, bob_axis: Axis) -> Vec<Branch> {
    let mut out = Vec::new();
    for (ra, pa, sa) in measure(flavor, b.alice, alice_axis) {
        for (rb, pb, sb) in measure(flavor, b.bob, bob_axis) {
            let view = AliceView { joint: Some(JointRecord { alice: ra, bob: rb }), ..b.view };
            out.push(Branch { prob: b.prob * pa * pb, alice: sa, bob: sb, view, ..*b });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactReport {
    pub score: ExtendedScore,
    pub catch_probability: Prob,
    pub win_probability: Prob,
    pub ask_bob_probability: Prob,
}

fn settle(choice: Choice, coin: bool, points: i64, prob: Prob, acc: &mut Vec<(Prob, ExtendedScore)>, win: &mut Prob) {
    match choice {
        Choice::Guess(g) => {
            let s = if g == coin { points } else { 0 };
            if g == coin {
                *win += prob;
            }
            acc.push((prob, ExtendedScore::points(s)));
        }
        Choice::CoinGuess => {
            let half = prob / 2;
            *win += half;
            acc.push((half, ExtendedScore::points(points)));
            acc.push((half, ExtendedScore::points(0)));
        }
        Choice::AskBob { .. } => unreachable!("settled only after Step 5"),
    }
}

pub fn exact_report(flavor: &Flavor, strategy: Strategy) -> ExactReport {
    let mut acc = Vec::new();
    let (mut caught, mut win, mut asked) = (Prob::zero(), Prob::zero(), Prob::zero());
    for b in decision_branches(flavor, strategy.precheck_basis(), strategy.step4_basis()) {
        if b.caught {
            caught += b.prob;
            acc.push((b.prob, ExtendedScore::NegInfinity));
            continue;
        }
        match strategy.choose(&b.view) {
            Choice::AskBob { alice, bob } => {
                asked += b.prob;
                for j in joint_branches(flavor, &b, alice, bob) {
                    let last = match strategy.choose(&j.view) {
                        Choice::AskBob { .. } => Choice::CoinGuess,
                        c => c,
                    };
                    settle(last, j.coin, 90, j.prob, &mut acc, &mut win);
                }
            }
            c => settle(c, b.coin, 100, b.prob, &mut acc, &mut win),
        }
    }
    ExactReport {
        score: ExtendedScore::expectation(acc.iter().map(|(p, s)| (*p, s))),
        catch_probability: caught,
        win_probability: win,
        ask_bob_probability: asked,
    }
}

pub fn expected_score_exact(flavor: &Flavor, strategy: Strategy) -> ExtendedScore {
    exact_report(flavor, strategy).score
}

/// Distribution of Alice's Step-4 view conditioned on Charlie's coin, with no pre-check.
pub fn alice_view_distribution(flavor: &Flavor, step4: Axis, coin: bool) -> BTreeMap<AliceView, Prob> {
    let mut dist = BTreeMap::new();
    for b in decision_branches(flavor, None, Some(step4)) {
        if b.coin == coin {
            *dist.entry(b.view).or_insert_with(Prob::zero) += b.prob * 2;
        }
    }
    dist
}

/// Alice's measurements across a round. Decisions are filled in optimally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPlan {
    pub precheck: Option<Axis>,
    pub step4: Option<Axis>,
    pub joint: (Axis, Axis),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanValue {
    pub plan: MeasurementPlan,
    /// Best score never calling Bob.
    pub bob_free: ExtendedScore,
    /// Best score calling Bob in every information set.
    pub bob_always: ExtendedScore,
    /// Best score choosing per information set whether to call Bob.
    pub bob_optional: ExtendedScore,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub plans: Vec<PlanValue>,
    pub best_bob_free: ExtendedScore,
    pub best_bob_always: ExtendedScore,
    pub best_bob_optional: ExtendedScore,
}

impl CatalogReport {
    /// True when calling Bob never beats the best strategy that keeps him out.
    pub fn bob_never_helps(&self) -> bool {
        !beats(self.best_bob_optional, self.best_bob_free)
    }
}

fn beats(a: ExtendedScore, b: ExtendedScore) -> bool {
    match (a, b) {
        (ExtendedScore::Finite(x), ExtendedScore::Finite(y)) => x > y,
        (ExtendedScore::Finite(_), ExtendedScore::NegInfinity) => true,
        _ => false,
    }
}

fn best(xs: impl Iterator<Item = ExtendedScore>) -> ExtendedScore {
    xs.fold(ExtendedScore::NegInfinity, |m, x| if beats(x, m) { x } else { m })
}

/// Split mass by coin value per view and take the Bayes-optimal guess in each.
fn optimal_guess_value(branches: &[Branch], points: i64) -> Prob {
    let mut by_view: BTreeMap<AliceView, [Prob; 2]> = BTreeMap::new();
    for b in branches {
        by_view.entry(b.view).or_insert([Prob::zero(); 2])[b.coin as usize] += b.prob;
    }
    by_view.values().map(|[p0, p1]| std::cmp::max(*p0, *p1) * points).sum()
}

pub fn plan_value(flavor: &Flavor, plan: MeasurementPlan) -> PlanValue {
    let branches = decision_branches(flavor, plan.precheck, plan.step4);
    if branches.iter().any(|b| b.caught && b.prob > Prob::zero()) {
        let n = ExtendedScore::NegInfinity;
        return PlanValue { plan, bob_free: n, bob_always: n, bob_optional: n };
    }
    let mut sets: BTreeMap<AliceView, Vec<Branch>> = BTreeMap::new();
    for b in branches {
        sets.entry(b.view).or_default().push(b);
    }
    let (mut free, mut always, mut optional) = (Prob::zero(), Prob::zero(), Prob::zero());
    for set in sets.values() {
        let now = optimal_guess_value(set, 100);
        let refined: Vec<Branch> = set.iter().flat_map(|b| joint_branches(flavor, b, plan.joint.0, plan.joint.1)).collect();
        let later = optimal_guess_value(&refined, 90);
        free += now;
        always += later;
        optional += std::cmp::max(now, later);
    }
    PlanValue {
        plan,
        bob_free: ExtendedScore::Finite(free),
        bob_always: ExtendedScore::Finite(always),
        bob_optional: ExtendedScore::Finite(optional),
    }
}

/// Every measurement plan over the flavor's bases, each with optimal decisions.
pub fn catalog_analysis(flavor: &Flavor) -> CatalogReport {
    let axes = flavor.allowed_axes();
    let optional: Vec<Option<Axis>> = std::iter::once(None).chain(axes.iter().copied().map(Some)).collect();
    let mut plans = Vec::new();
    for &precheck in &optional {
        for &step4 in &optional {
            for &a in axes {
                for &b in axes {
                    plans.push(plan_value(flavor, MeasurementPlan { precheck, step4, joint: (a, b) }));
                }
            }
        }
    }
    CatalogReport {
        best_bob_free: best(plans.iter().map(|p| p.bob_free)),
        best_bob_always: best(plans.iter().map(|p| p.bob_always)),
        best_bob_optional: best(plans.iter().map(|p| p.bob_optional)),
        plans,
    }
}
