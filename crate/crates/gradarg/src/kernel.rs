//! The graded operator kernel: neutrality `N_ℓ`, defense `D_n^m`, the range
//! operator `E_η^+`, and attacker-combination queries.
//!
//! Everything downstream — fixpoints, semantics enumeration, the analysis
//! and representation machinery — is assembled from these four functions.
//! Each is a popcount over the precomputed attacker bitsets in [`Aaf`], so a
//! single call is O(|A| · |A|/64) in the worst case.
//!
//! Grade intuition: an argument survives `N_ℓ(E)` when fewer than ℓ of its
//! attackers lie inside `E`; it is in `D_n^m(E)` unless at least m of its
//! attackers are themselves short of n attackers in `E`. With all grades 1
//! these collapse to the classical neutrality and defense functions.

use itertools::Itertools;

use crate::af::{Aaf, ArgSet};

/// Graded neutrality `N_ℓ(E) = {a : |a⁻ ∩ E| < ℓ}` — the arguments attacked
/// by at most ℓ − 1 members of `E`.
///
/// Antitone in `E` and monotone in `ℓ`.
pub fn neutrality(f: &Aaf, l: u32, e: &ArgSet) -> ArgSet {
    let n = f.arg_count();
    let mut out = ArgSet::empty(n);
    for a in 0..n {
        if f.attackers_of(a).intersection_card(e) < l as usize {
            out.insert(a);
        }
    }
    out
}

/// Graded defense `D_n^m(E)`: the arguments that do *not* have m or more
/// distinct attackers which are each attacked by fewer than n members of
/// `E`. Equivalently — and this is how it is computed — `N_m(N_n(E))`.
///
/// Monotone in `E`.
pub fn defense(f: &Aaf, m: u32, n: u32, e: &ArgSet) -> ArgSet {
    neutrality(f, m, &neutrality(f, n, e))
}

/// The graded range `E_η^+ = {a : |a⁻ ∩ E| ≥ η}` — arguments attacked by at
/// least η members of `E`. Satisfies `E_η^+ = A − N_η(E)`.
pub fn range_plus(f: &Aaf, eta: u32, e: &ArgSet) -> ArgSet {
    neutrality(f, eta, e).complement()
}

/// All size-η subsets of `a⁻`, in lexicographic order of member indices.
/// Empty when `a` has fewer than η attackers.
pub fn enumerate_attacker_combinations(f: &Aaf, a: usize, eta: u32) -> Vec<ArgSet> {
    let n = f.arg_count();
    f.attackers_of(a)
        .iter()
        .combinations(eta as usize)
        .map(|combo| ArgSet::from_indices(n, combo))
        .collect()
}
