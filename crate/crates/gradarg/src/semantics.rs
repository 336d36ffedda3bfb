//! The semantics catalog: exhaustive enumerators for every concrete graded
//! semantics and the combinators (maximality, range-maximality, interval,
//! parameterized) that derive the rest.
//!
//! All base semantics are subset filters over the powerset of `A`, so
//! enumeration is exact but exponential; [`ENUM_CAP`] guards against frames
//! too large to sweep. Combinators only re-filter the families produced by
//! their operands and never enumerate on their own.

use std::fmt;

use crate::af::{Aaf, ArgSet, ExtensionFamily, Params};
use crate::fixpoint::lfp_from;
use crate::kernel::{defense, neutrality, range_plus};
use crate::{Error, Result};

/// Default bound on `|A|` for subset enumeration (2^22 filter passes).
pub const ENUM_CAP: usize = 22;

/// A closed semantics term.
///
/// Base tags pick up their grades from the [`Params`] supplied at
/// evaluation time: `Cf` reads ℓ; `Def` reads m, n; the admissibility-based
/// tags read ℓ, m, n; the range-related tags and `Rr` additionally read η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemanticsSpec {
    Cf,
    Def,
    Ad,
    Co,
    Stb,
    Gr,
    GrDung,
    GrDunne,
    Na,
    Pr,
    PrDung,
    Stg,
    Ss,
    Rra,
    Rrs,
    Ideal,
    Eager,
    Max(Box<SemanticsSpec>),
    Rr(Box<SemanticsSpec>),
    Interval(Box<SemanticsSpec>, Box<SemanticsSpec>, Box<SemanticsSpec>),
    Param(Box<SemanticsSpec>, Box<SemanticsSpec>),
}

impl SemanticsSpec {
    /// Parse the CLI grammar: base tags `cf ad co stb gr gr-dung gr-dunne
    /// na pr pr-dung def stg ss rra rrs id eg` and the combinators
    /// `max(s)`, `rr(s)`, `interval(a,b,c)`, `param(a,b)`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let unknown = || Error::Unknown { what: "semantics", got: s.to_string() };
        match s {
            "cf" => return Ok(Self::Cf),
            "def" => return Ok(Self::Def),
            "ad" => return Ok(Self::Ad),
            "co" => return Ok(Self::Co),
            "stb" => return Ok(Self::Stb),
            "gr" => return Ok(Self::Gr),
            "gr-dung" => return Ok(Self::GrDung),
            "gr-dunne" => return Ok(Self::GrDunne),
            "na" => return Ok(Self::Na),
            "pr" => return Ok(Self::Pr),
            "pr-dung" => return Ok(Self::PrDung),
            "stg" => return Ok(Self::Stg),
            "ss" => return Ok(Self::Ss),
            "rra" => return Ok(Self::Rra),
            "rrs" => return Ok(Self::Rrs),
            "id" => return Ok(Self::Ideal),
            "eg" => return Ok(Self::Eager),
            _ => {}
        }
        let (head, body) = s
            .split_once('(')
            .filter(|_| s.ends_with(')'))
            .ok_or_else(unknown)?;
        let inner = &body[..body.len() - 1];
        let args = split_top_level(inner);
        match (head.trim(), args.as_slice()) {
            ("max", [a]) => Ok(Self::Max(Box::new(Self::parse(a)?))),
            ("rr", [a]) => Ok(Self::Rr(Box::new(Self::parse(a)?))),
            ("interval", [a, b, c]) => Ok(Self::Interval(
                Box::new(Self::parse(a)?),
                Box::new(Self::parse(b)?),
                Box::new(Self::parse(c)?),
            )),
            ("param", [a, b]) => {
                Ok(Self::Param(Box::new(Self::parse(a)?), Box::new(Self::parse(b)?)))
            }
            _ => Err(unknown()),
        }
    }
}

/// Split on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for SemanticsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cf => write!(f, "cf"),
            Self::Def => write!(f, "def"),
            Self::Ad => write!(f, "ad"),
            Self::Co => write!(f, "co"),
            Self::Stb => write!(f, "stb"),
            Self::Gr => write!(f, "gr"),
            Self::GrDung => write!(f, "gr-dung"),
            Self::GrDunne => write!(f, "gr-dunne"),
            Self::Na => write!(f, "na"),
            Self::Pr => write!(f, "pr"),
            Self::PrDung => write!(f, "pr-dung"),
            Self::Stg => write!(f, "stg"),
            Self::Ss => write!(f, "ss"),
            Self::Rra => write!(f, "rra"),
            Self::Rrs => write!(f, "rrs"),
            Self::Ideal => write!(f, "id"),
            Self::Eager => write!(f, "eg"),
            Self::Max(s) => write!(f, "max({s})"),
            Self::Rr(s) => write!(f, "rr({s})"),
            Self::Interval(a, b, c) => write!(f, "interval({a},{b},{c})"),
            Self::Param(a, b) => write!(f, "param({a},{b})"),
        }
    }
}

fn is_cf(f: &Aaf, l: u32, e: &ArgSet) -> bool {
    e.is_subset(&neutrality(f, l, e))
}

fn is_def(f: &Aaf, m: u32, n: u32, e: &ArgSet) -> bool {
    e.is_subset(&defense(f, m, n, e))
}

fn subset_filter(f: &Aaf, pred: impl Fn(&ArgSet) -> bool) -> ExtensionFamily {
    let n = f.arg_count();
    let sets = (0u64..1 << n)
        .map(|mask| ArgSet::from_mask(n, mask))
        .filter(|e| pred(e))
        .collect();
    ExtensionFamily::new(n, sets)
}

/// Evaluate `spec` over `f` with the default enumeration cap.
pub fn enumerate(f: &Aaf, p: &Params, spec: &SemanticsSpec) -> Result<ExtensionFamily> {
    enumerate_with_cap(f, p, spec, ENUM_CAP)
}

/// Evaluate `spec` over `f`, refusing frames with more than `cap`
/// arguments.
pub fn enumerate_with_cap(
    f: &Aaf,
    p: &Params,
    spec: &SemanticsSpec,
    cap: usize,
) -> Result<ExtensionFamily> {
    if f.arg_count() > cap {
        return Err(Error::CapExceeded {
            what: "subset enumeration",
            cap,
            got: f.arg_count(),
        });
    }
    let count = f.arg_count();
    let base = |s: &SemanticsSpec| enumerate_with_cap(f, p, s, cap);
    Ok(match spec {
        SemanticsSpec::Cf => subset_filter(f, |e| is_cf(f, p.l, e)),
        SemanticsSpec::Def => subset_filter(f, |e| is_def(f, p.m, p.n, e)),
        SemanticsSpec::Ad => {
            subset_filter(f, |e| is_cf(f, p.l, e) && is_def(f, p.m, p.n, e))
        }
        SemanticsSpec::Co => {
            subset_filter(f, |e| is_cf(f, p.l, e) && defense(f, p.m, p.n, e) == *e)
        }
        SemanticsSpec::Stb => subset_filter(f, |e| {
            neutrality(f, p.n, e) == *e && neutrality(f, p.m, e) == *e && is_cf(f, p.l, e)
        }),
        SemanticsSpec::Gr => {
            // The member of co below every other member, if one exists.
            let co = base(&SemanticsSpec::Co)?;
            let least = co
                .iter()
                .find(|e| co.iter().all(|e2| e.is_subset(e2)))
                .cloned();
            ExtensionFamily::new(count, least.into_iter().collect())
        }
        SemanticsSpec::GrDung => {
            let bottom = lfp_from(f, p.m, p.n, &ArgSet::empty(count))
                .expect("empty set is always self-defended");
            ExtensionFamily::new(count, vec![bottom])
        }
        SemanticsSpec::GrDunne => {
            let co = base(&SemanticsSpec::Co)?;
            ExtensionFamily::new(count, vec![co.meet_all()])
        }
        SemanticsSpec::Na => maximal_of(&base(&SemanticsSpec::Cf)?),
        SemanticsSpec::Pr => maximal_of(&base(&SemanticsSpec::Co)?),
        SemanticsSpec::PrDung => maximal_of(&base(&SemanticsSpec::Ad)?),
        SemanticsSpec::Stg => range_maximal(f, p.eta, &base(&SemanticsSpec::Cf)?),
        SemanticsSpec::Ss => range_maximal(f, p.eta, &base(&SemanticsSpec::Co)?),
        SemanticsSpec::Rra => range_maximal(f, p.eta, &base(&SemanticsSpec::Ad)?),
        SemanticsSpec::Rrs => range_maximal(f, p.eta, &base(&SemanticsSpec::Stb)?),
        SemanticsSpec::Ideal => ideal(f, p, cap)?,
        SemanticsSpec::Eager => eager(f, p, cap)?,
        SemanticsSpec::Max(s) => maximal_of(&base(s)?),
        SemanticsSpec::Rr(s) => range_maximal(f, p.eta, &base(s)?),
        SemanticsSpec::Interval(a, b, c) => interval(&base(a)?, &base(b)?, &base(c)?),
        SemanticsSpec::Param(a, b) => {
            let lower = ExtensionFamily::new(count, vec![ArgSet::empty(count)]);
            interval(&lower, &base(a)?, &base(b)?)
        }
    })
}

/// The ⊆-maximal members of a family.
pub fn maximal_of(family: &ExtensionFamily) -> ExtensionFamily {
    let sets = family
        .iter()
        .filter(|e| !family.iter().any(|e2| e.is_strict_subset(e2)))
        .cloned()
        .collect();
    ExtensionFamily::new(family.universe(), sets)
}

/// The members whose range `E ∪ E_η^+` is not strictly contained in any
/// other member's range. Ties (equal ranges) keep both members.
pub fn range_maximal(f: &Aaf, eta: u32, family: &ExtensionFamily) -> ExtensionFamily {
    let ranges: Vec<ArgSet> = family
        .iter()
        .map(|e| e.union(&range_plus(f, eta, e)))
        .collect();
    let sets = family
        .iter()
        .zip(&ranges)
        .filter(|(_, r)| !ranges.iter().any(|r2| r.is_strict_subset(r2)))
        .map(|(e, _)| e.clone())
        .collect();
    ExtensionFamily::new(family.universe(), sets)
}

/// `{E ∈ fam : ⋂famL ⊆ E ⊆ ⋂famR}`, with the convention `⋂∅ = A`.
pub fn interval(
    fam_l: &ExtensionFamily,
    fam: &ExtensionFamily,
    fam_r: &ExtensionFamily,
) -> ExtensionFamily {
    let lower = fam_l.meet_all();
    let upper = fam_r.meet_all();
    let sets = fam
        .iter()
        .filter(|e| lower.is_subset(e) && e.is_subset(&upper))
        .cloned()
        .collect();
    ExtensionFamily::new(fam.universe(), sets)
}

/// Graded ideal semantics: the ⊆-maximal admissible sets below `⋂ pr`.
fn ideal(f: &Aaf, p: &Params, cap: usize) -> Result<ExtensionFamily> {
    let spec = SemanticsSpec::Max(Box::new(SemanticsSpec::Param(
        Box::new(SemanticsSpec::Ad),
        Box::new(SemanticsSpec::Pr),
    )));
    enumerate_with_cap(f, p, &spec, cap)
}

/// Graded eager semantics: the ⊆-maximal admissible sets below `⋂ ss`.
fn eager(f: &Aaf, p: &Params, cap: usize) -> Result<ExtensionFamily> {
    let spec = SemanticsSpec::Max(Box::new(SemanticsSpec::Param(
        Box::new(SemanticsSpec::Ad),
        Box::new(SemanticsSpec::Ss),
    )));
    enumerate_with_cap(f, p, &spec, cap)
}
