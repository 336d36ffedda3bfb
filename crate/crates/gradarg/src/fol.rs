//! A finite model checker for the first-order language `{Att, P, ≡}` over
//! frame-based models `⟨A, →, E⟩`, together with the sentence library that
//! defines the fundamental graded semantics.
//!
//! Each semantics corresponds to a small bundle of prenex sentences built
//! from the `Cf` macro (pairwise-distinct attackers of a common target):
//! self-defense (β¹), pre-fixpoints of defense (β²), conflict-freeness
//! (β³), and reverse neutrality (β⁴). The non-prenex α-originals are kept
//! alongside as a cross-check: the two forms must agree on every model.
//! [`verify_definability`] sweeps all `E ⊆ A` to confirm that a bundle
//! carves out exactly a given extension family.

use std::collections::HashMap;

use crate::af::{Aaf, ArgSet, ExtensionFamily, Params};
use crate::semantics::ENUM_CAP;
use crate::{Error, Result};

/// Formulas of `L′ = {Att, P, ≡}` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolFormula {
    P(String),
    Att(String, String),
    Eq(String, String),
    Not(Box<FolFormula>),
    And(Vec<FolFormula>),
    Or(Vec<FolFormula>),
    Imp(Box<FolFormula>, Box<FolFormula>),
    All(String, Box<FolFormula>),
    Ex(String, Box<FolFormula>),
}

/// A frame-based model `⟨A, →, E⟩`: the frame interprets `Att`, the
/// distinguished set `E` interprets `P`, and `≡` is identity.
#[derive(Clone, Debug)]
pub struct FolModel<'a> {
    pub frame: &'a Aaf,
    pub predicate: ArgSet,
}

impl<'a> FolModel<'a> {
    pub fn new(frame: &'a Aaf, predicate: ArgSet) -> Result<Self> {
        if predicate.universe() != frame.arg_count() {
            return Err(Error::IndexMismatch);
        }
        Ok(FolModel { frame, predicate })
    }
}

/// Variable assignments: a finite map from variable tokens to arguments.
pub type Assignment = HashMap<String, usize>;

impl FolFormula {
    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let visit = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            FolFormula::P(x) => visit(x, bound, out),
            FolFormula::Att(x, y) | FolFormula::Eq(x, y) => {
                visit(x, bound, out);
                visit(y, bound, out);
            }
            FolFormula::Not(f) => f.collect_free(bound, out),
            FolFormula::And(fs) | FolFormula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            FolFormula::Imp(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            FolFormula::All(v, f) | FolFormula::Ex(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Parse the S-expression surface syntax: `(P x)`, `(att x y)`,
    /// `(= x y)`, `(not f)`, `(and f…)`, `(or f…)`, `(imp f g)`,
    /// `(all x f)`, `(ex x f)`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let formula = parse_sexp(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse { line: 1, msg: "trailing input after formula".into() });
        }
        Ok(formula)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Result<FolFormula> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let next = |pos: &mut usize| -> Result<&String> {
        let t = tokens.get(*pos).ok_or_else(|| err("unexpected end of formula".into()))?;
        *pos += 1;
        Ok(t)
    };
    if next(pos)? != "(" {
        return Err(err("expected '('".into()));
    }
    let head = next(pos)?.clone();
    let mut atom_args = Vec::new();
    let formula = match head.as_str() {
        "P" | "p" | "att" | "=" => {
            while tokens.get(*pos).is_some_and(|t| t != ")") {
                atom_args.push(next(pos)?.clone());
            }
            match (head.as_str(), atom_args.as_slice()) {
                ("P" | "p", [x]) => FolFormula::P(x.clone()),
                ("att", [x, y]) => FolFormula::Att(x.clone(), y.clone()),
                ("=", [x, y]) => FolFormula::Eq(x.clone(), y.clone()),
                _ => return Err(err(format!("bad arity for {head}"))),
            }
        }
        "not" => FolFormula::Not(Box::new(parse_sexp(tokens, pos)?)),
        "and" | "or" => {
            let mut parts = Vec::new();
            while tokens.get(*pos).is_some_and(|t| t == "(") {
                parts.push(parse_sexp(tokens, pos)?);
            }
            if head == "and" {
                FolFormula::And(parts)
            } else {
                FolFormula::Or(parts)
            }
        }
        "imp" => {
            let f = parse_sexp(tokens, pos)?;
            let g = parse_sexp(tokens, pos)?;
            FolFormula::Imp(Box::new(f), Box::new(g))
        }
        "all" | "ex" => {
            let var = next(pos)?.clone();
            let body = Box::new(parse_sexp(tokens, pos)?);
            if head == "all" {
                FolFormula::All(var, body)
            } else {
                FolFormula::Ex(var, body)
            }
        }
        other => return Err(err(format!("unknown operator {other}"))),
    };
    if next(pos)? != ")" {
        return Err(err("expected ')'".into()));
    }
    Ok(formula)
}

/// Tarskian satisfaction by structural recursion; quantifiers iterate the
/// domain in argument order. Errors on variables bound nowhere.
pub fn eval(model: &FolModel, phi: &FolFormula, rho: &Assignment) -> Result<bool> {
    let lookup = |v: &str| {
        rho.get(v).copied().ok_or_else(|| Error::Unknown {
            what: "free variable",
            got: v.to_string(),
        })
    };
    Ok(match phi {
        FolFormula::P(x) => model.predicate.contains(lookup(x)?),
        FolFormula::Att(x, y) => model.frame.has_attack(lookup(x)?, lookup(y)?),
        FolFormula::Eq(x, y) => lookup(x)? == lookup(y)?,
        FolFormula::Not(f) => !eval(model, f, rho)?,
        FolFormula::And(fs) => {
            for f in fs {
                if !eval(model, f, rho)? {
                    return Ok(false);
                }
            }
            true
        }
        FolFormula::Or(fs) => {
            for f in fs {
                if eval(model, f, rho)? {
                    return Ok(true);
                }
            }
            false
        }
        FolFormula::Imp(f, g) => !eval(model, f, rho)? || eval(model, g, rho)?,
        FolFormula::All(v, f) => {
            let mut inner = rho.clone();
            for a in 0..model.frame.arg_count() {
                inner.insert(v.clone(), a);
                if !eval(model, f, &inner)? {
                    return Ok(false);
                }
            }
            true
        }
        FolFormula::Ex(v, f) => {
            let mut inner = rho.clone();
            for a in 0..model.frame.arg_count() {
                inner.insert(v.clone(), a);
                if eval(model, f, &inner)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// `Cf(x₁,…,xₙ,x)`: the attacker variables are pairwise distinct and each
/// attacks the target. For a single attacker the distinctness conjunction
/// is empty and elided.
pub fn cf_macro(attacker_vars: &[String], target: &str) -> Result<FolFormula> {
    if attacker_vars.is_empty() {
        return Err(Error::Precondition("Cf needs at least one attacker variable".into()));
    }
    for (i, v) in attacker_vars.iter().enumerate() {
        if attacker_vars[..i].contains(v) || v == target {
            return Err(Error::Precondition(format!("duplicate variable {v} in Cf")));
        }
    }
    let mut parts = Vec::new();
    for (i, vi) in attacker_vars.iter().enumerate() {
        for vj in &attacker_vars[i + 1..] {
            parts.push(FolFormula::Not(Box::new(FolFormula::Eq(vi.clone(), vj.clone()))));
        }
    }
    for v in attacker_vars {
        parts.push(FolFormula::Att(v.clone(), target.to_string()));
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { FolFormula::And(parts) })
}

fn xs(m: u32) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

fn ys(i: u32, n: u32) -> Vec<String> {
    (1..=n).map(|k| format!("y{i}_{k}")).collect()
}

fn quantify(vars: &[String], body: FolFormula, universal: bool) -> FolFormula {
    vars.iter().rev().fold(body, |acc, v| {
        if universal {
            FolFormula::All(v.clone(), Box::new(acc))
        } else {
            FolFormula::Ex(v.clone(), Box::new(acc))
        }
    })
}

fn and(parts: Vec<FolFormula>) -> FolFormula {
    FolFormula::And(parts)
}

fn or(parts: Vec<FolFormula>) -> FolFormula {
    FolFormula::Or(parts)
}

fn not(f: FolFormula) -> FolFormula {
    FolFormula::Not(Box::new(f))
}

/// `x_i` has `n` distinct attackers inside `E`.
fn countered(i: u32, n: u32) -> FolFormula {
    let yvars = ys(i, n);
    let mut parts = vec![cf_macro(&yvars, &format!("x{i}")).unwrap()];
    parts.extend(yvars.iter().map(|y| FolFormula::P(y.clone())));
    and(parts)
}

/// β¹_{mn}: prenex form of "every member of E is mn-self-defended".
pub fn beta1(m: u32, n: u32) -> FolFormula {
    let xvars = xs(m);
    let all_ys: Vec<String> = (1..=m).flat_map(|i| ys(i, n)).collect();
    let matrix = or(vec![
        not(FolFormula::P("x".into())),
        not(cf_macro(&xvars, "x").unwrap()),
        or((1..=m).map(|i| countered(i, n)).collect()),
    ]);
    let mut sentence = quantify(&all_ys, matrix, false);
    sentence = quantify(&xvars, sentence, true);
    FolFormula::All("x".into(), Box::new(sentence))
}

/// α¹_{mn}: the non-prenex original of [`beta1`].
pub fn alpha1(m: u32, n: u32) -> FolFormula {
    let xvars = xs(m);
    let inner = and(
        std::iter::once(cf_macro(&xvars, "x").unwrap())
            .chain((1..=m).map(|i| not(quantify(&ys(i, n), countered(i, n), false))))
            .collect(),
    );
    FolFormula::All(
        "x".into(),
        Box::new(FolFormula::Imp(
            Box::new(FolFormula::P("x".into())),
            Box::new(not(quantify(&xvars, inner, false))),
        )),
    )
}

/// β²_{mn}: prenex form of "E is a pre-fixpoint of defense"
/// (`D_n^m(E) ⊆ E`).
pub fn beta2(m: u32, n: u32) -> FolFormula {
    let xvars = xs(m);
    let all_ys: Vec<String> = (1..=m).flat_map(|i| ys(i, n)).collect();
    let gamma4 = or(vec![
        FolFormula::P("x".into()),
        and(std::iter::once(cf_macro(&xvars, "x").unwrap())
            .chain((1..=m).map(|i| {
                let yvars = ys(i, n);
                or(vec![
                    not(cf_macro(&yvars, &format!("x{i}")).unwrap()),
                    or(yvars.iter().map(|y| not(FolFormula::P(y.clone()))).collect()),
                ])
            }))
            .collect()),
    ]);
    let mut sentence = quantify(&all_ys, gamma4, true);
    sentence = quantify(&xvars, sentence, false);
    FolFormula::All("x".into(), Box::new(sentence))
}

/// α²_{mn}: the non-prenex original of [`beta2`].
pub fn alpha2(m: u32, n: u32) -> FolFormula {
    let xvars = xs(m);
    let gamma3 = and(
        std::iter::once(cf_macro(&xvars, "x").unwrap())
            .chain((1..=m).map(|i| not(quantify(&ys(i, n), countered(i, n), false))))
            .collect(),
    );
    FolFormula::All(
        "x".into(),
        Box::new(FolFormula::Imp(
            Box::new(not(quantify(&xvars, gamma3, false))),
            Box::new(FolFormula::P("x".into())),
        )),
    )
}

/// The common core of β³/β⁴: `x` has ℓ distinct attackers in `E`.
fn l_attacked(l: u32) -> FolFormula {
    let xvars = xs(l);
    and(xvars
        .iter()
        .map(|v| FolFormula::P(v.clone()))
        .chain(std::iter::once(cf_macro(&xvars, "x").unwrap()))
        .collect())
}

/// β³_ℓ: prenex form of ℓ-conflict-freeness (`E ⊆ N_ℓ(E)`).
pub fn beta3(l: u32) -> FolFormula {
    let mut vars = vec!["x".to_string()];
    vars.extend(xs(l));
    quantify(
        &vars,
        or(vec![not(FolFormula::P("x".into())), not(l_attacked(l))]),
        true,
    )
}

/// α³_ℓ: the non-prenex original of [`beta3`].
pub fn alpha3(l: u32) -> FolFormula {
    FolFormula::All(
        "x".into(),
        Box::new(FolFormula::Imp(
            Box::new(FolFormula::P("x".into())),
            Box::new(not(quantify(&xs(l), l_attacked(l), false))),
        )),
    )
}

/// β⁴_ℓ: prenex form of reverse neutrality (`N_ℓ(E) ⊆ E`).
pub fn beta4(l: u32) -> FolFormula {
    let body = quantify(
        &xs(l),
        or(vec![l_attacked(l), FolFormula::P("x".into())]),
        false,
    );
    FolFormula::All("x".into(), Box::new(body))
}

/// α⁴_ℓ: the non-prenex original of [`beta4`].
pub fn alpha4(l: u32) -> FolFormula {
    FolFormula::All(
        "x".into(),
        Box::new(FolFormula::Imp(
            Box::new(not(quantify(&xs(l), l_attacked(l), false))),
            Box::new(FolFormula::P("x".into())),
        )),
    )
}

/// The sentence bundles defining each fundamental semantics.
#[derive(Clone, Debug)]
pub struct SentenceLibrary {
    pub beta1_mn: FolFormula,
    pub beta2_mn: FolFormula,
    pub beta3_l: FolFormula,
    pub beta4_l: FolFormula,
    pub sigma_def: Vec<FolFormula>,
    pub sigma_cf: Vec<FolFormula>,
    pub sigma_ad: Vec<FolFormula>,
    pub sigma_co: Vec<FolFormula>,
    pub sigma_stb: Vec<FolFormula>,
}

pub fn sentence_library(p: &Params) -> SentenceLibrary {
    let b1 = beta1(p.m, p.n);
    let b2 = beta2(p.m, p.n);
    let b3 = beta3(p.l);
    let b4 = beta4(p.l);
    SentenceLibrary {
        sigma_def: vec![b1.clone()],
        sigma_cf: vec![b3.clone()],
        sigma_ad: vec![b3.clone(), b1.clone()],
        sigma_co: vec![b3.clone(), b1.clone(), b2.clone()],
        sigma_stb: vec![beta3(p.n), beta3(p.m), beta4(p.n), beta4(p.m), beta3(p.l)],
        beta1_mn: b1,
        beta2_mn: b2,
        beta3_l: b3,
        beta4_l: b4,
    }
}

/// Does the model satisfy every sentence in the bundle?
pub fn sat_all(model: &FolModel, sigma: &[FolFormula]) -> Result<bool> {
    let rho = Assignment::new();
    for phi in sigma {
        if !eval(model, phi, &rho)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sweep every `E ⊆ A` and check `⟨A,→,E⟩ ⊨ Σ ⇔ E ∈ family`. Returns
/// `None` when the bundle defines the family exactly, otherwise the first
/// counterexample set.
pub fn verify_definability(
    f: &Aaf,
    sigma: &[FolFormula],
    family: &ExtensionFamily,
) -> Result<Option<ArgSet>> {
    let count = f.arg_count();
    if count > ENUM_CAP {
        return Err(Error::CapExceeded { what: "definability sweep", cap: ENUM_CAP, got: count });
    }
    for mask in 0u64..1 << count {
        let e = ArgSet::from_mask(count, mask);
        let model = FolModel::new(f, e.clone())?;
        if sat_all(&model, sigma)? != family.contains(&e) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Is `rho` *non*-universal for the ∃-prefixed `phi = ∃x ψ`: the model
/// satisfies `∃x ψ[ρ]` but not `∀x ψ[ρ]`?
pub fn nua(model: &FolModel, phi: &FolFormula, rho: &Assignment) -> Result<bool> {
    let FolFormula::Ex(v, body) = phi else {
        return Err(Error::Precondition("nua needs an ∃-prefixed formula".into()));
    };
    let ex = eval(model, phi, rho)?;
    let all = eval(model, &FolFormula::All(v.clone(), body.clone()), rho)?;
    Ok(ex && !all)
}

/// The finitariness diagnostic at one frame: the size of
/// `⋃_{E ⊆ A} {b : ρ ∈ Nua(F,E,φ) and ⟨A,→,E⟩ ⊨ ψ[ρ{b/x}]}`.
pub fn omega_finitary_at(f: &Aaf, phi: &FolFormula, rho: &Assignment) -> Result<usize> {
    let FolFormula::Ex(v, body) = phi else {
        return Err(Error::Precondition("omega_finitary_at needs an ∃-prefixed formula".into()));
    };
    let count = f.arg_count();
    if count > ENUM_CAP {
        return Err(Error::CapExceeded { what: "model sweep", cap: ENUM_CAP, got: count });
    }
    let mut witnesses = ArgSet::empty(count);
    for mask in 0u64..1 << count {
        let model = FolModel::new(f, ArgSet::from_mask(count, mask))?;
        if !nua(&model, phi, rho)? {
            continue;
        }
        let mut inner = rho.clone();
        for b in 0..count {
            inner.insert(v.clone(), b);
            if eval(&model, body, &inner)? {
                witnesses.insert(b);
            }
        }
    }
    Ok(witnesses.card())
}
