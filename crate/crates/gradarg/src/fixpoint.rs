//! Iteration of the graded defense operator: traces, least and greatest
//! fixpoints, local well-foundedness, and reachability profiles.
//!
//! On a finite frame the monotone operator `D_n^m` stabilizes within
//! `|A|` steps when started from a post-fixpoint (a self-defended set), so
//! "iterate until two consecutive values coincide" realizes the limit of
//! the transfinite iteration. Arbitrary starts may instead enter a cycle
//! that never reaches a fixpoint; [`iterate_defense`] detects that and
//! reports it as an error rather than looping.

use std::collections::{HashSet, VecDeque};

use crate::af::{Aaf, ArgSet};
use crate::kernel::defense;
use crate::{Error, Result};

/// The step-by-step record of iterating `D_n^m` from a start set.
///
/// `steps[0]` is the start itself; the last two entries are equal, and
/// `stabilized_at` is the index of the first entry equal to its successor.
/// When the start is self-defended the steps form a ⊆-increasing chain of
/// length at most `|A| + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace {
    pub start: ArgSet,
    pub steps: Vec<ArgSet>,
    pub stabilized_at: usize,
}

impl IterationTrace {
    /// The fixpoint the iteration settled on.
    pub fn fixpoint(&self) -> &ArgSet {
        self.steps.last().expect("trace has at least two steps")
    }
}

/// Iterate `D_n^m` from `e` until the value repeats its predecessor.
///
/// Errors with [`Error::CycleWithoutFixpoint`] if the orbit revisits an
/// earlier (non-consecutive) value — possible only when `e` is not
/// self-defended, and meaning the iteration has no limit from this start.
pub fn iterate_defense(f: &Aaf, m: u32, n: u32, e: &ArgSet) -> Result<IterationTrace> {
    let mut steps = vec![e.clone()];
    let mut seen: HashSet<ArgSet> = HashSet::from([e.clone()]);
    loop {
        let next = defense(f, m, n, steps.last().unwrap());
        if &next == steps.last().unwrap() {
            let stabilized_at = steps.len() - 1;
            steps.push(next);
            return Ok(IterationTrace { start: e.clone(), steps, stabilized_at });
        }
        if !seen.insert(next.clone()) {
            return Err(Error::CycleWithoutFixpoint);
        }
        steps.push(next);
    }
}

/// `E ⊆ D_n^m(E)` — is `e` a post-fixpoint of graded defense?
pub fn is_self_defended(f: &Aaf, m: u32, n: u32, e: &ArgSet) -> bool {
    e.is_subset(&defense(f, m, n, e))
}

/// The least fixpoint of `D_n^m` above a self-defended set `e`.
///
/// Errors with a precondition violation when `e` is not self-defended — the
/// iteration from such a start is not a ⊆-chain and its limit (if any) need
/// not dominate `e`.
pub fn lfp_from(f: &Aaf, m: u32, n: u32, e: &ArgSet) -> Result<ArgSet> {
    if !is_self_defended(f, m, n, e) {
        return Err(Error::Precondition(format!(
            "lfp_from requires a self-defended start, got {e:?}"
        )));
    }
    Ok(iterate_defense(f, m, n, e)?.fixpoint().clone())
}

/// The greatest fixpoint `ν D_n^m`, by downward iteration from the full
/// universe. Equals the union of all self-defended sets.
pub fn gfp(f: &Aaf, m: u32, n: u32) -> ArgSet {
    let mut cur = ArgSet::full(f.arg_count());
    loop {
        let next = defense(f, m, n, &cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Is the attack relation restricted to `X × X` acyclic? (On a finite frame
/// this is exactly well-foundedness of → on `X`.)
pub fn wf_on(f: &Aaf, x: &ArgSet) -> bool {
    // Kahn-style peeling: repeatedly remove arguments with no remaining
    // attacker inside the restriction; acyclic iff everything is removed.
    let mut alive = x.clone();
    loop {
        let mut removed = false;
        let snapshot: Vec<usize> = alive.iter().collect();
        for a in snapshot {
            if f.attackers_of(a).intersection_card(&alive) == 0 {
                alive.remove(a);
                removed = true;
            }
        }
        if alive.is_empty() {
            return true;
        }
        if !removed {
            return false;
        }
    }
}

/// Is the *transitive closure* →⁺ (taken over the whole frame) free of
/// loops at members of `X`? Unlike [`wf_on`], a cycle that leaves `X` and
/// comes back still counts against `X`.
pub fn wf_plus_on(f: &Aaf, x: &ArgSet) -> bool {
    x.iter().all(|a| !reaches(f, a, a))
}

fn reaches(f: &Aaf, from: usize, to: usize) -> bool {
    let n = f.arg_count();
    let mut seen = ArgSet::empty(n);
    let mut queue = VecDeque::from([from]);
    while let Some(cur) = queue.pop_front() {
        for next in f.attacked_by(cur).iter() {
            if next == to {
                return true;
            }
            if !seen.contains(next) {
                seen.insert(next);
                queue.push_back(next);
            }
        }
    }
    false
}

/// Forward reachability from a seed set, measured in attack steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityProfile {
    /// Arguments reachable from the seed by at least one attack step.
    pub sigma: ArgSet,
    /// `dist[a]` = length of a shortest attack path from the seed to `a`;
    /// 0 on the seed itself, `None` outside `sigma ∪ seed`.
    pub dist: Vec<Option<usize>>,
    /// Whether `dist(a) < dist(b)` holds for every attack `a → b` whose
    /// endpoints both have a distance.
    pub strictly_increasing: bool,
}

/// BFS from `e` along attacks. `sigma` excludes the seed unless a seed
/// member is itself reached by a nonempty path.
pub fn reachability_profile(f: &Aaf, e: &ArgSet) -> ReachabilityProfile {
    let n = f.arg_count();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    for a in e.iter() {
        dist[a] = Some(0);
        queue.push_back(a);
    }
    let mut sigma = ArgSet::empty(n);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur].unwrap();
        for next in f.attacked_by(cur).iter() {
            sigma.insert(next);
            if dist[next].is_none() {
                dist[next] = Some(d + 1);
                queue.push_back(next);
            }
        }
    }
    // A seed member reached by a nonempty path is in sigma but keeps
    // distance 0.
    let strictly_increasing = f.attacks().iter().all(|&(a, b)| match (dist[a], dist[b]) {
        (Some(da), Some(db)) => da < db,
        _ => true,
    });
    ReachabilityProfile { sigma, dist, strictly_increasing }
}
