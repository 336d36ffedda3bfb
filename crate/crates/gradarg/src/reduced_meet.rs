//! Ultrafilters over finite index sets and the reduced-meet operator, plus
//! verifiers for its distributive and closure laws.
//!
//! On a finite index set every ultrafilter is principal — generated by a
//! single point — so the reduced meet `⋂_D X_i = {x : {i | x ∈ X_i} ∈ D}`
//! collapses to projection at that point. The value of this module is not
//! the computation but the verification surface: [`is_ultrafilter`] checks
//! the four ultrafilter axioms on an explicit subset collection, and
//! [`check_laws`] / [`check_family_closure`] assert the algebraic laws that
//! make reduced meets compatible with the graded operators and with every
//! fundamental semantics.
//!
//! Subsets of the index set are passed around as `u64` bit masks over the
//! token positions, which caps index sets at 16 tokens for axiom checking
//! (2^16 subsets) — ample for the finite families that arise here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::af::{Aaf, ArgSet, ExtensionFamily, Params};
use crate::kernel::{defense, neutrality, range_plus};
use crate::{Error, Result};

/// A finite nonempty set of index tokens. Subsets are bit masks over the
/// token positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    tokens: Vec<String>,
}

impl IndexSet {
    pub fn new(tokens: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::Precondition("index set must be nonempty".into()));
        }
        if tokens.len() > 63 {
            return Err(Error::CapExceeded { what: "index set", cap: 63, got: tokens.len() });
        }
        for (i, t) in tokens.iter().enumerate() {
            if tokens[..i].contains(t) {
                return Err(Error::Precondition(format!("duplicate index token {t}")));
            }
        }
        Ok(IndexSet { tokens })
    }

    /// `{1, 2, …, k}` as string tokens.
    pub fn numbered(k: usize) -> Result<Self> {
        Self::new((1..=k).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.tokens.len()) - 1
    }
}

/// A (necessarily principal) ultrafilter over a finite index set:
/// `S ∈ D ⇔ point ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ultrafilter {
    pub over: IndexSet,
    pub point: usize,
}

impl Ultrafilter {
    pub fn principal(over: IndexSet, point: usize) -> Result<Self> {
        if point >= over.len() {
            return Err(Error::Precondition("principal point outside index set".into()));
        }
        Ok(Ultrafilter { over, point })
    }

    pub fn contains(&self, subset_mask: u64) -> bool {
        subset_mask >> self.point & 1 == 1
    }
}

/// Outcome of checking an explicit subset collection against the
/// ultrafilter axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UltrafilterVerdict {
    /// All four axioms hold; the collection is principal at this point.
    Principal(usize),
    /// The named axiom fails; `detail` exhibits a violating instance.
    Violated { axiom: &'static str, detail: String },
}

fn mask_tokens(i: &IndexSet, mask: u64) -> String {
    let names: Vec<&str> = (0..i.len())
        .filter(|&k| mask >> k & 1 == 1)
        .map(|k| i.tokens[k].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Check the four ultrafilter axioms for `d`, a collection of subsets of
/// `i` given as bit masks:
///
/// - U1: ∅ ∉ D;
/// - U2: D is closed under binary intersection;
/// - U3: D is closed upward;
/// - U4: for every S ⊆ I, exactly one of S and I − S is in D.
///
/// On success also reports the principal point (the unique member of the
/// intersection of all members). The index set is capped at 16 tokens so
/// the U3/U4 sweeps over all 2^|I| subsets stay small.
pub fn is_ultrafilter(i: &IndexSet, d: &[u64]) -> Result<UltrafilterVerdict> {
    if i.len() > 16 {
        return Err(Error::CapExceeded { what: "ultrafilter axiom check", cap: 16, got: i.len() });
    }
    let full = i.full_mask();
    for &s in d {
        if s & !full != 0 {
            return Err(Error::Precondition("collection member is not a subset of I".into()));
        }
    }
    let holds = |s: u64| d.contains(&s);
    if holds(0) {
        return Ok(UltrafilterVerdict::Violated { axiom: "U1", detail: "∅ ∈ D".into() });
    }
    for &s in d {
        for &t in d {
            if !holds(s & t) {
                return Ok(UltrafilterVerdict::Violated {
                    axiom: "U2",
                    detail: format!(
                        "{} ∩ {} = {} ∉ D",
                        mask_tokens(i, s),
                        mask_tokens(i, t),
                        mask_tokens(i, s & t)
                    ),
                });
            }
        }
    }
    for &s in d {
        let mut sup = s;
        loop {
            if !holds(sup) {
                return Ok(UltrafilterVerdict::Violated {
                    axiom: "U3",
                    detail: format!(
                        "{} ∈ D but superset {} ∉ D",
                        mask_tokens(i, s),
                        mask_tokens(i, sup)
                    ),
                });
            }
            if sup == full {
                break;
            }
            // Next superset of s in mask order.
            sup = (sup + 1) | s;
            while sup & !full != 0 {
                sup = (sup + 1) | s;
            }
        }
    }
    for s in 0..=full {
        if holds(s) == holds(full & !s) {
            return Ok(UltrafilterVerdict::Violated {
                axiom: "U4",
                detail: format!(
                    "S = {} and I−S are {} in D",
                    mask_tokens(i, s),
                    if holds(s) { "both" } else { "neither" }
                ),
            });
        }
    }
    // The meet of all members is nonempty (U1 + U2) and its members all
    // generate D; the least one is the canonical point.
    let core = d.iter().fold(full, |acc, &s| acc & s);
    debug_assert_ne!(core, 0);
    Ok(UltrafilterVerdict::Principal(core.trailing_zeros() as usize))
}

/// Extend a collection with the finite intersection property to a
/// (principal) ultrafilter; on a finite index set FIP is simply a nonempty
/// total intersection, and ties are broken toward the least index.
pub fn extend_fip(i: &IndexSet, omega: &[u64]) -> Result<Ultrafilter> {
    let core = omega.iter().fold(i.full_mask(), |acc, &s| acc & s);
    if core == 0 {
        return Err(Error::NoFip);
    }
    Ultrafilter::principal(i.clone(), core.trailing_zeros() as usize)
}

/// A total assignment of one argument set per index token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedFamily {
    pub over: IndexSet,
    pub assign: Vec<ArgSet>,
}

impl IndexedFamily {
    pub fn new(over: IndexSet, assign: Vec<ArgSet>) -> Result<Self> {
        if assign.len() != over.len() {
            return Err(Error::IndexMismatch);
        }
        Ok(IndexedFamily { over, assign })
    }

    /// `x̂ = {i : x ∈ X_i}` as a mask over the index set.
    fn hat(&self, x: usize) -> u64 {
        self.assign
            .iter()
            .enumerate()
            .fold(0, |m, (i, s)| m | (u64::from(s.contains(x)) << i))
    }

    fn universe(&self) -> usize {
        self.assign[0].universe()
    }
}

/// The reduced meet `⋂_D X_i = {x : x̂ ∈ D}`. For a principal `D` this is
/// projection at the point, and the membership computation is checked
/// against that projection.
pub fn reduced_meet(fam: &IndexedFamily, d: &Ultrafilter) -> Result<ArgSet> {
    if fam.over != d.over {
        return Err(Error::IndexMismatch);
    }
    let n = fam.universe();
    let mut out = ArgSet::empty(n);
    for x in 0..n {
        if d.contains(fam.hat(x)) {
            out.insert(x);
        }
    }
    debug_assert_eq!(out, fam.assign[d.point]);
    Ok(out)
}

/// Realize the union of a ⊆-directed family as a reduced meet: a finite
/// directed family has a ⊆-maximum, and the principal ultrafilter at (the
/// least index of) that maximum projects onto the union.
pub fn directed_union_as_meet(fam: &IndexedFamily) -> Result<(Ultrafilter, ArgSet)> {
    for x in &fam.assign {
        for y in &fam.assign {
            if !fam
                .assign
                .iter()
                .any(|z| x.is_subset(z) && y.is_subset(z))
            {
                return Err(Error::NotDirected);
            }
        }
    }
    let union = fam
        .assign
        .iter()
        .fold(ArgSet::empty(fam.universe()), |acc, s| acc.union(s));
    let point = fam
        .assign
        .iter()
        .position(|s| *s == union)
        .expect("finite directed family contains its union");
    let d = Ultrafilter::principal(fam.over.clone(), point)?;
    let meet = reduced_meet(fam, &d)?;
    debug_assert_eq!(meet, union);
    Ok((d, meet))
}

/// One verified law instance; `pass == false` means a theorem failed and
/// is treated as a bug by every caller.
#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub instance: String,
    pub pass: bool,
}

/// Verify the reduced-meet laws on a concrete family and ultrafilter:
/// distribution of `N_ℓ` and `D_n^m` over `⋂_D`, the subset law, the
/// range-membership law, and (when the range forms a ∝-chain) the
/// ∝-upper-bound law.
pub fn check_laws(
    f: &Aaf,
    p: &Params,
    fam: &IndexedFamily,
    d: &Ultrafilter,
) -> Result<Vec<LawCheck>> {
    let meet = reduced_meet(fam, d)?;
    let mut report = Vec::new();
    let instance = format!(
        "|I| = {}, point = {}, grades (ℓ,m,n,η) = ({},{},{},{})",
        fam.over.len(),
        fam.over.tokens()[d.point],
        p.l,
        p.m,
        p.n,
        p.eta
    );

    // N_ℓ(⋂_D X_i) = ⋂_D N_ℓ(X_i).
    let n_fam = IndexedFamily::new(
        fam.over.clone(),
        fam.assign.iter().map(|s| neutrality(f, p.l, s)).collect(),
    )?;
    report.push(LawCheck {
        law: "neutrality distributes over reduced meet".into(),
        instance: instance.clone(),
        pass: neutrality(f, p.l, &meet) == reduced_meet(&n_fam, d)?,
    });

    // D_n^m(⋂_D X_i) = ⋂_D D_n^m(X_i).
    let d_fam = IndexedFamily::new(
        fam.over.clone(),
        fam.assign.iter().map(|s| defense(f, p.m, p.n, s)).collect(),
    )?;
    report.push(LawCheck {
        law: "defense distributes over reduced meet".into(),
        instance: instance.clone(),
        pass: defense(f, p.m, p.n, &meet) == reduced_meet(&d_fam, d)?,
    });

    // {i : X_i ⊆ Y_i} ∈ D implies ⋂_D X ⊆ ⋂_D Y; instantiate with the
    // pointwise superset Y_i = X_i ∪ (X_i)_η^+, where the premise holds at
    // every index.
    let y_fam = IndexedFamily::new(
        fam.over.clone(),
        fam.assign
            .iter()
            .map(|s| s.union(&range_plus(f, p.eta, s)))
            .collect(),
    )?;
    report.push(LawCheck {
        law: "pointwise subset implies meet subset".into(),
        instance: instance.clone(),
        pass: meet.is_subset(&reduced_meet(&y_fam, d)?),
    });

    // {i : a ∈ (X_i)_η^+} ∈ D implies a ∈ (⋂_D X_i)_η^+.
    let meet_range = range_plus(f, p.eta, &meet);
    let range_law = (0..f.arg_count()).all(|a| {
        let mask = fam
            .assign
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, s)| m | (u64::from(range_plus(f, p.eta, s).contains(a)) << i));
        !d.contains(mask) || meet_range.contains(a)
    });
    report.push(LawCheck {
        law: "range membership carries over to the meet".into(),
        instance: instance.clone(),
        pass: range_law,
    });

    // On a ∝-chain (totally ordered by range inclusion) *some* ultrafilter
    // yields a ∝-upper-bound meet: the one at a ∝-maximal index. Vacuously
    // true when the range is not a chain.
    let ranges: Vec<ArgSet> = fam
        .assign
        .iter()
        .map(|s| s.union(&range_plus(f, p.eta, s)))
        .collect();
    let is_chain = ranges
        .iter()
        .all(|r| ranges.iter().all(|r2| r.is_subset(r2) || r2.is_subset(r)));
    let (pass, note) = if is_chain {
        let top = (0..ranges.len())
            .max_by(|&i, &j| {
                if ranges[i].is_subset(&ranges[j]) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
            .expect("nonempty family");
        let witness = Ultrafilter::principal(fam.over.clone(), top)?;
        let wit_meet = reduced_meet(fam, &witness)?;
        let wit_range = wit_meet.union(&range_plus(f, p.eta, &wit_meet));
        (
            ranges.iter().all(|r| r.is_subset(&wit_range)),
            format!("{instance}; witness point {}", fam.over.tokens()[top]),
        )
    } else {
        (true, format!("{instance}; range is not a ∝-chain — vacuous"))
    };
    report.push(LawCheck {
        law: "some meet is a ∝-upper bound of a ∝-chain".into(),
        instance: note,
        pass,
    });

    Ok(report)
}

/// Summary of a closure sweep over one extension family.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub samples: usize,
    pub closed: bool,
    /// Reduced meets that escaped the family (always empty for the
    /// fundamental semantics on finite frames).
    pub escapes: Vec<Vec<usize>>,
}

/// Draw `samples` random indexed families from `family` (index sets of up
/// to four tokens, arbitrary principal points) and check that every
/// reduced meet stays inside the family. Deterministic for a fixed seed.
pub fn check_family_closure(family: &ExtensionFamily, samples: usize, seed: u64) -> ClosureReport {
    if family.is_empty() {
        return ClosureReport { samples: 0, closed: true, escapes: Vec::new() };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<&ArgSet> = family.iter().collect();
    let mut escapes = Vec::new();
    for _ in 0..samples {
        let k = rng.gen_range(1..=4);
        let over = IndexSet::numbered(k).expect("small index set");
        let assign: Vec<ArgSet> = (0..k)
            .map(|_| members[rng.gen_range(0..members.len())].clone())
            .collect();
        let fam = IndexedFamily::new(over.clone(), assign).expect("total assignment");
        let d = Ultrafilter::principal(over, rng.gen_range(0..k)).expect("point in range");
        let meet = reduced_meet(&fam, &d).expect("matching index sets");
        if !family.contains(&meet) {
            escapes.push(meet.iter().collect());
        }
    }
    ClosureReport { samples, closed: escapes.is_empty(), escapes }
}
