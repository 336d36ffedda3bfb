//! The inverse problem for graded conflict-freeness: which set families Ω
//! over a universe `A` arise as `cf_ℓ(F)` for some frame `F`?
//!
//! The answer is structural. From Ω one computes `Γ_Ω` — the minimal sets
//! contained in no member — and asks for a *well-organized* choice function
//! `ch` over `Γ_Ω`. When the size bounds on `Γ_Ω` and the choice condition
//! hold, orienting each `Y ∈ Γ_Ω` at `ch(Y)` (with a self-attack in the
//! size-ℓ case) yields a frame whose ℓ-conflict-free family is exactly Ω.
//! Three variants are exposed: [`Variant::I`] (sizes in `(ℓ−1, ℓ+1]`),
//! [`Variant::II`] (all sizes `ℓ+1` plus a well-founded choice, producing
//! an acyclic witness), and [`Variant::III`] (additionally per-argument
//! finiteness of `Γ_Ω` — automatic on finite universes).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::af::{Aaf, ArgSet, ExtensionFamily, Params};
use crate::analysis::anti_sets;
use crate::semantics::{enumerate, SemanticsSpec};
use crate::{Error, Result};

/// Cap on `|Γ_Ω|` for the exhaustive choice-function search.
pub const CHOICE_CAP: usize = 16;

/// A candidate family Ω over a named universe. No structural conditions
/// are imposed at construction — checking them is the module's job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOmega {
    names: Vec<String>,
    sets: ExtensionFamily,
}

impl CandidateOmega {
    pub fn new(names: Vec<String>, sets: ExtensionFamily) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Precondition("universe must be nonempty".into()));
        }
        if sets.universe() != names.len() {
            return Err(Error::IndexMismatch);
        }
        Ok(CandidateOmega { names, sets })
    }

    /// Read `{"arguments": [...], "families": {name: [[...], ...]}}`; the
    /// family named `omega` is used, or the only family if there is
    /// exactly one.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: msg.to_string() };
        let names: Vec<String> = value
            .get("arguments")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing arguments list"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("argument is not a string")))
            .collect::<Result<_>>()?;
        let families = value
            .get("families")
            .and_then(|v| v.as_object())
            .ok_or_else(|| bad("missing families object"))?;
        let fam = families
            .get("omega")
            .or_else(|| if families.len() == 1 { families.values().next() } else { None })
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing omega family"))?;
        let n = names.len();
        let mut sets = Vec::new();
        for member in fam {
            let member = member.as_array().ok_or_else(|| bad("family member is not a list"))?;
            let mut set = ArgSet::empty(n);
            for tok in member {
                let tok = tok.as_str().ok_or_else(|| bad("set member is not a string"))?;
                let idx = names
                    .iter()
                    .position(|name| name == tok)
                    .ok_or_else(|| bad(&format!("unknown argument {tok}")))?;
                set.insert(idx);
            }
            sets.push(set);
        }
        CandidateOmega::new(names, ExtensionFamily::new(n, sets))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sets: Vec<Vec<&str>> = self
            .sets
            .iter()
            .map(|s| s.iter().map(|i| self.names[i].as_str()).collect())
            .collect();
        serde_json::json!({
            "arguments": self.names,
            "attacks": [],
            "families": { "omega": sets },
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sets(&self) -> &ExtensionFamily {
        &self.sets
    }

    fn universe(&self) -> usize {
        self.names.len()
    }
}

/// Which representation theorem's conditions to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    I,
    II,
    III,
}

/// `Γ_Ω`: the ⊆-minimal subsets of the universe contained in no member of
/// Ω, in canonical order. `Γ_∅ = {∅}`.
pub fn gamma_omega(omega: &CandidateOmega) -> ExtensionFamily {
    anti_sets(&omega.sets)
}

/// A choice function over `Γ_Ω` (`choice[k] ∈ gamma[k]` for each `k`),
/// together with the flags the theorems care about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceFunction {
    pub gamma: Vec<ArgSet>,
    pub choice: Vec<usize>,
    /// No cycle `…, Y, Y′, …` with `ch(Y′) ∈ Y` and `ch(Y′) ≠ ch(Y)`.
    pub wellfounded: bool,
    /// Every argument lies in finitely many Γ members — always true here.
    pub finitary: bool,
}

fn choice_is_well_organized(omega: &CandidateOmega, gamma: &[ArgSet], choice: &[usize]) -> bool {
    // For each Y: no Ω member Z with ch(Y) ∈ Z, |Z| ≥ |Y| and Z inside the
    // union of all Γ members sharing Y's chosen point.
    gamma.iter().zip(choice).all(|(y, &c)| {
        let union = gamma
            .iter()
            .zip(choice)
            .filter(|&(_, &c2)| c2 == c)
            .fold(ArgSet::empty(omega.universe()), |acc, (x, _)| acc.union(x));
        !omega
            .sets
            .iter()
            .any(|z| z.contains(c) && z.card() >= y.card() && z.is_subset(&union))
    })
}

fn choice_is_wellfounded(gamma: &[ArgSet], choice: &[usize]) -> bool {
    // The relation Y ⊢ Y′ iff ch(Y′) ∈ Y and ch(Y′) ≠ ch(Y) admits an
    // infinite chain iff (Γ finite) it has a cycle.
    let k = gamma.len();
    let edge = |i: usize, j: usize| gamma[i].contains(choice[j]) && choice[i] != choice[j];
    // DFS cycle detection.
    let mut state = vec![0u8; k]; // 0 unvisited, 1 on stack, 2 done
    fn dfs(v: usize, k: usize, edge: &dyn Fn(usize, usize) -> bool, state: &mut [u8]) -> bool {
        state[v] = 1;
        for w in 0..k {
            if edge(v, w) {
                if state[w] == 1 {
                    return false;
                }
                if state[w] == 0 && !dfs(w, k, edge, state) {
                    return false;
                }
            }
        }
        state[v] = 2;
        true
    }
    (0..k).all(|v| state[v] != 0 || dfs(v, k, &edge, &mut state))
}

/// Search for a well-organized Γ_Ω-choice function (additionally
/// well-founded for [`Variant::II`] and flagged finitary for
/// [`Variant::III`]). The search is exhaustive in lexicographic order —
/// Γ members in canonical order, candidate points in argument order — so
/// the witness is deterministic. `None` means no choice qualifies.
pub fn find_choice(
    omega: &CandidateOmega,
    _l: u32,
    variant: Variant,
) -> Result<Option<ChoiceFunction>> {
    let gamma: Vec<ArgSet> = gamma_omega(omega).iter().cloned().collect();
    if gamma.len() > CHOICE_CAP {
        return Err(Error::CapExceeded {
            what: "choice-function search",
            cap: CHOICE_CAP,
            got: gamma.len(),
        });
    }
    if gamma.iter().any(|y| y.is_empty()) {
        // Γ = {∅} (Ω is empty): no choice can pick from the empty set.
        return Ok(None);
    }
    let members: Vec<Vec<usize>> = gamma.iter().map(|y| y.iter().collect()).collect();
    // Odometer over the assignment space.
    let mut idx = vec![0usize; gamma.len()];
    loop {
        let choice: Vec<usize> = idx.iter().zip(&members).map(|(&i, m)| m[i]).collect();
        let wellfounded = choice_is_wellfounded(&gamma, &choice);
        let organized = choice_is_well_organized(omega, &gamma, &choice);
        if organized && (variant != Variant::II || wellfounded) {
            return Ok(Some(ChoiceFunction { gamma, choice, wellfounded, finitary: true }));
        }
        // Advance; stop after the last assignment.
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < members[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The oriented attacks `→_{Y,ch}` of the construction: for `|Y| = ℓ+1`
/// every other member attacks `ch(Y)`; for `|Y| = ℓ` every member does —
/// including `ch(Y)` itself, producing a self-attack.
pub fn attacks_for_choice(ch: &ChoiceFunction, l: u32) -> Result<Vec<(usize, usize)>> {
    let mut attacks = Vec::new();
    for (y, &c) in ch.gamma.iter().zip(&ch.choice) {
        let size = y.card();
        if size == l as usize + 1 {
            attacks.extend(y.iter().filter(|&b| b != c).map(|b| (b, c)));
        } else if size == l as usize {
            attacks.extend(y.iter().map(|b| (b, c)));
        } else {
            return Err(Error::Precondition(format!(
                "anti-set size {size} outside ({}, {}]",
                l - 1,
                l + 1
            )));
        }
    }
    Ok(attacks)
}

/// Build the witness frame `F_Ω` from Ω and a choice function.
pub fn construct_f_omega(omega: &CandidateOmega, l: u32, ch: &ChoiceFunction) -> Result<Aaf> {
    Aaf::from_parts(omega.names.to_vec(), attacks_for_choice(ch, l)?)
}

/// Per-condition verdict for one variant of the representation theorem.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// (a) Ω ≠ ∅.
    pub nonempty: bool,
    /// (b) Ω is closed downward.
    pub down_closed: bool,
    pub down_witness: Option<Vec<String>>,
    /// (c) Closure under reduced meets — unconditional on a finite
    /// universe, reported as such rather than sampled.
    pub reduced_meet_closed: &'static str,
    /// (d)/(d′) size bounds on Γ_Ω members.
    pub size_bounds: bool,
    pub size_witness: Option<Vec<String>>,
    /// (e)/(e′) a well-organized (and, for variant II, well-founded)
    /// choice function exists.
    pub well_organized: bool,
    /// (f) per-argument Γ_Ω membership counts (finite by construction).
    pub gamma_counts: Vec<(String, usize)>,
    /// Extra flag: closure of Ω under bounded directed unions.
    pub directed_union_closed: bool,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.nonempty && self.down_closed && self.size_bounds && self.well_organized
    }
}

/// Evaluate the conditions of the chosen representation-theorem variant.
pub fn check_conditions(
    omega: &CandidateOmega,
    l: u32,
    variant: Variant,
) -> Result<ConditionReport> {
    let n = omega.universe();
    let gamma = gamma_omega(omega);

    let mut down_witness = None;
    'down: for e in omega.sets.iter() {
        let members: Vec<usize> = e.iter().collect();
        for mask in 0u64..1 << members.len() {
            let sub = ArgSet::from_indices(
                n,
                members
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &i)| i),
            );
            if !omega.sets.contains(&sub) {
                down_witness =
                    Some(sub.iter().map(|i| omega.names[i].clone()).collect());
                break 'down;
            }
        }
    }

    let in_bounds = |size: usize| match variant {
        Variant::I => size > (l as usize).saturating_sub(1) && size <= l as usize + 1,
        Variant::II | Variant::III => size == l as usize + 1,
    };
    let size_witness = gamma
        .iter()
        .find(|y| !in_bounds(y.card()))
        .map(|y| y.iter().map(|i| omega.names[i].clone()).collect());

    let well_organized = find_choice(omega, l, variant)?.is_some() || gamma.is_empty();

    let gamma_counts = (0..n)
        .map(|a| {
            (omega.names[a].clone(), gamma.iter().filter(|y| y.contains(a)).count())
        })
        .filter(|(_, c)| *c > 0)
        .collect();

    let directed_union_closed = omega.sets.iter().all(|x| {
        omega.sets.iter().all(|y| {
            let bounded = omega.sets.iter().any(|z| x.is_subset(z) && y.is_subset(z));
            !bounded || omega.sets.contains(&x.union(y))
        })
    });

    Ok(ConditionReport {
        nonempty: !omega.sets.is_empty(),
        down_closed: down_witness.is_none(),
        down_witness,
        reduced_meet_closed: "auto (finite universe)",
        size_bounds: size_witness.is_none(),
        size_witness,
        well_organized,
        gamma_counts,
        directed_union_closed,
    })
}

/// Outcome of the full representability test.
#[derive(Clone, Debug)]
pub struct Representable {
    pub ok: bool,
    pub report: ConditionReport,
    /// The verified witness frame, present iff `ok`.
    pub witness: Option<Aaf>,
}

/// Decide whether Ω is the ℓ-conflict-free family of some frame (acyclic
/// for [`Variant::II`]); on success the returned witness has been
/// re-verified exhaustively against Ω.
pub fn representable(omega: &CandidateOmega, l: u32, variant: Variant) -> Result<Representable> {
    let report = check_conditions(omega, l, variant)?;
    if !report.passes() {
        return Ok(Representable { ok: false, report, witness: None });
    }
    let gamma = gamma_omega(omega);
    let witness = if gamma.is_empty() {
        // Ω = ℘(A): the attack-free frame.
        Aaf::from_parts(omega.names.to_vec(), Vec::new())?
    } else {
        let ch = find_choice(omega, l, variant)?.expect("well_organized implies a choice");
        construct_f_omega(omega, l, &ch)?
    };
    let p = Params { l, ..Params::classical() };
    let cf = enumerate(&witness, &p, &SemanticsSpec::Cf)?;
    if cf != *omega.sets() {
        // Conditions passed but the construction missed Ω — a bug, not a
        // domain failure.
        return Err(Error::Precondition(
            "constructed frame does not reproduce the candidate family".into(),
        ));
    }
    if variant == Variant::II {
        assert!(
            crate::fixpoint::wf_on(&witness, &ArgSet::full(witness.arg_count())),
            "variant II witness must be acyclic"
        );
    }
    Ok(Representable { ok: true, report, witness: Some(witness) })
}

/// The set `ρ(Ω) = {ℓ : Ω is representable at grade ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoResult {
    /// `Γ_Ω = ∅` (equivalently `A ∈ Ω`): every positive grade works.
    AllPositive,
    /// The finitely many grades that work (possibly none).
    Finite(Vec<u32>),
}

/// Compute ρ(Ω) by the size case analysis — at most two candidate grades
/// survive the Γ size bounds — and confirm each candidate by a full
/// representability check.
pub fn rho(omega: &CandidateOmega) -> Result<RhoResult> {
    let gamma = gamma_omega(omega);
    if gamma.is_empty() {
        return Ok(RhoResult::AllPositive);
    }
    let sizes: BTreeSet<usize> = gamma.iter().map(|y| y.card()).collect();
    let min = *sizes.first().unwrap();
    let max = *sizes.last().unwrap();
    let candidates: Vec<u32> = if max - min >= 2 {
        Vec::new()
    } else if min == max {
        // All sizes k: grades k and k−1 fit the bounds (k−1 only if ≥ 1).
        if min > 1 {
            vec![(min - 1) as u32, min as u32]
        } else {
            vec![1]
        }
    } else {
        // Sizes {k, k+1}: only grade k fits both.
        vec![min as u32]
    };
    let mut confirmed = Vec::new();
    for l in candidates {
        if representable(omega, l, Variant::I)?.ok {
            confirmed.push(l);
        }
    }
    Ok(RhoResult::Finite(confirmed))
}
