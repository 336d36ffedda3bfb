//! Data model for finite argumentation frameworks.
//!
//! A framework [`Aaf`] is a nonempty ordered list of named arguments plus an
//! attack relation. Argument order is declaration order and is load-bearing:
//! every [`ArgSet`] indexes its bit pattern against it, and all canonical
//! orderings (families, exports) derive from it, so outputs are byte-stable
//! across runs.
//!
//! Subsets of arguments are packed bitsets ([`ArgSet`]) so the grade
//! operators reduce to popcounts over word intersections; nothing here
//! assumes the frame fits in one machine word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::{Error, Result};

/// A subset of the arguments of one framework, packed as a bitset.
///
/// The universe size `n` is carried along so complements and full sets are
/// well-defined. Sets from different frameworks (different `n`) never
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArgSet {
    n: usize,
    words: Vec<u64>,
}

impl ArgSet {
    fn word_count(n: usize) -> usize {
        n.div_ceil(64)
    }

    /// The empty subset of a universe with `n` arguments.
    pub fn empty(n: usize) -> Self {
        ArgSet { n, words: vec![0; Self::word_count(n)] }
    }

    /// The full universe of `n` arguments.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    /// A singleton set.
    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    /// Build from explicit member indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Build from the low `n` bits of `mask` (enumeration helper; requires
    /// `n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut s = Self::empty(n);
        if !s.words.is_empty() {
            s.words[0] = mask & if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        }
        s
    }

    /// Universe size this set indexes against.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of members.
    pub fn card(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn zip_words(&self, other: &ArgSet, f: impl Fn(u64, u64) -> u64) -> ArgSet {
        debug_assert_eq!(self.n, other.n);
        ArgSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &ArgSet) -> ArgSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ArgSet) -> ArgSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ArgSet {
        ArgSet::full(self.n).difference(self)
    }

    /// `|self ∩ other|` without materialising the intersection.
    pub fn intersection_card(&self, other: &ArgSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &ArgSet) -> bool {
        self.is_subset(other) && self != other
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i))
    }

    /// Canonical order: cardinality first, then lexicographic on the sorted
    /// member list. This is the order every [`ExtensionFamily`] is stored in.
    pub fn canonical_cmp(&self, other: &ArgSet) -> std::cmp::Ordering {
        self.card()
            .cmp(&other.card())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ArgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// The four grades `ℓ, m, n, η`, all required to be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub l: u32,
    pub m: u32,
    pub n: u32,
    pub eta: u32,
}

impl Params {
    pub fn new(l: u32, m: u32, n: u32, eta: u32) -> Result<Self> {
        if l == 0 || m == 0 || n == 0 || eta == 0 {
            return Err(Error::Precondition("grades must be positive".into()));
        }
        Ok(Params { l, m, n, eta })
    }

    /// The classical collapse `ℓ = m = n = η = 1`.
    pub fn classical() -> Self {
        Params { l: 1, m: 1, n: 1, eta: 1 }
    }
}

impl Default for Params {
    fn default() -> Self {
        Params::classical()
    }
}

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite abstract argumentation framework `⟨A, →⟩`.
///
/// Construction validates that the argument list is nonempty, names are
/// unique well-formed tokens, and every attack endpoint is declared.
/// Self-attacks are legal and count as a single attacker. The per-argument
/// attacker/attacked bitsets are precomputed here once; the kernel operators
/// are popcounts over them.
#[derive(Clone, PartialEq, Eq)]
pub struct Aaf {
    names: Vec<String>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<ArgSet>, // attackers[a] = a^-
    attacked: Vec<ArgSet>,  // attacked[a] = a^+
}

impl Aaf {
    /// Build from declared names (in order) and attacks given by index.
    pub fn from_parts(names: Vec<String>, mut attacks: Vec<(usize, usize)>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Precondition("argument set must be nonempty".into()));
        }
        let mut seen = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if !valid_token(name) {
                return Err(Error::Precondition(format!("invalid argument name {name:?}")));
            }
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate argument {name}")));
            }
        }
        let n = names.len();
        for &(x, y) in &attacks {
            if x >= n || y >= n {
                return Err(Error::Precondition("attack endpoint out of range".into()));
            }
        }
        attacks.sort_unstable();
        attacks.dedup();
        let mut attackers = vec![ArgSet::empty(n); n];
        let mut attacked = vec![ArgSet::empty(n); n];
        for &(x, y) in &attacks {
            attackers[y].insert(x);
            attacked[x].insert(y);
        }
        Ok(Aaf { names, attacks, attackers, attacked })
    }

    /// Convenience constructor for tests and fixtures.
    pub fn from_named(names: &[&str], attacks: &[(&str, &str)]) -> Result<Self> {
        let name_vec: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let idx: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut pairs = Vec::with_capacity(attacks.len());
        for &(x, y) in attacks {
            let &xi = idx
                .get(x)
                .ok_or_else(|| Error::Precondition(format!("undeclared argument {x}")))?;
            let &yi = idx
                .get(y)
                .ok_or_else(|| Error::Precondition(format!("undeclared argument {y}")))?;
            pairs.push((xi, yi));
        }
        Aaf::from_parts(name_vec, pairs)
    }

    pub fn arg_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Attacks as sorted index pairs.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn has_attack(&self, x: usize, y: usize) -> bool {
        self.attacked[x].contains(y)
    }

    /// The attacker set `a^-`.
    pub fn attackers_of(&self, a: usize) -> &ArgSet {
        &self.attackers[a]
    }

    /// The attacked set `a^+`.
    pub fn attacked_by(&self, a: usize) -> &ArgSet {
        &self.attacked[a]
    }

    /// Same arguments, different attack relation.
    pub fn with_attacks(&self, attacks: Vec<(usize, usize)>) -> Result<Aaf> {
        Aaf::from_parts(self.names.clone(), attacks)
    }

    /// Render a set against this frame's names, in argument order.
    pub fn set_names(&self, set: &ArgSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Parse the APX fact format: statements `arg(X).` and `att(X,Y).`,
    /// `%` comments, blank lines; several statements may share a line.
    pub fn parse_apx(text: &str) -> Result<Aaf> {
        let mut names: Vec<String> = Vec::new();
        let mut attacks: Vec<(String, String, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('%').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            if !trimmed.ends_with('.') {
                return Err(Error::Parse { line, msg: format!("statement missing trailing '.': {trimmed:?}") });
            }
            for stmt in trimmed.split('.') {
                let stmt = stmt.trim();
                if stmt.is_empty() {
                    continue;
                }
                if let Some(body) = stmt.strip_prefix("arg(").and_then(|s| s.strip_suffix(')')) {
                    let tok = body.trim();
                    if !valid_token(tok) {
                        return Err(Error::Parse { line, msg: format!("invalid argument name {tok:?}") });
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(Error::Parse { line, msg: format!("duplicate arg declaration {tok}") });
                    }
                    names.push(tok.to_string());
                } else if let Some(body) = stmt.strip_prefix("att(").and_then(|s| s.strip_suffix(')')) {
                    let mut parts = body.split(',');
                    match (parts.next(), parts.next(), parts.next()) {
                        (Some(x), Some(y), None) => {
                            attacks.push((x.trim().to_string(), y.trim().to_string(), line));
                        }
                        _ => {
                            return Err(Error::Parse { line, msg: format!("malformed att statement {stmt:?}") });
                        }
                    }
                } else {
                    return Err(Error::Parse { line, msg: format!("unrecognized statement {stmt:?}") });
                }
            }
        }
        let idx: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(attacks.len());
        for (x, y, line) in &attacks {
            let xi = *idx.get(x.as_str()).ok_or_else(|| Error::Parse {
                line: *line,
                msg: format!("undeclared argument {x} in att"),
            })?;
            let yi = *idx.get(y.as_str()).ok_or_else(|| Error::Parse {
                line: *line,
                msg: format!("undeclared argument {y} in att"),
            })?;
            pairs.push((xi, yi));
        }
        Aaf::from_parts(names, pairs)
    }

    /// Serialize back to APX; `parse_apx ∘ emit_apx` is the identity.
    pub fn emit_apx(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("arg({name}).\n"));
        }
        for &(x, y) in &self.attacks {
            out.push_str(&format!("att({},{}).\n", self.names[x], self.names[y]));
        }
        out
    }

    /// Parse the TGF format: node lines, a `#` separator, then `X Y` edges.
    pub fn parse_tgf(text: &str) -> Result<Aaf> {
        let mut names: Vec<String> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut seen_sep = false;
        let mut last_line = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed == "#" {
                if seen_sep {
                    return Err(Error::Parse { line, msg: "second separator".into() });
                }
                seen_sep = true;
                continue;
            }
            if !seen_sep {
                if !valid_token(trimmed) {
                    return Err(Error::Parse { line, msg: format!("invalid node name {trimmed:?}") });
                }
                if names.iter().any(|n| n == trimmed) {
                    return Err(Error::Parse { line, msg: format!("duplicate node {trimmed}") });
                }
                names.push(trimmed.to_string());
            } else {
                let mut parts = trimmed.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(x), Some(y), None) => {
                        let xi = names.iter().position(|n| n == x).ok_or_else(|| Error::Parse {
                            line,
                            msg: format!("dangling edge endpoint {x}"),
                        })?;
                        let yi = names.iter().position(|n| n == y).ok_or_else(|| Error::Parse {
                            line,
                            msg: format!("dangling edge endpoint {y}"),
                        })?;
                        pairs.push((xi, yi));
                    }
                    _ => {
                        return Err(Error::Parse { line, msg: format!("malformed edge line {trimmed:?}") });
                    }
                }
            }
        }
        if !seen_sep {
            return Err(Error::Parse { line: last_line, msg: "missing '#' separator".into() });
        }
        Aaf::from_parts(names, pairs)
    }

    /// Serialize to TGF.
    pub fn emit_tgf(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(name);
            out.push('\n');
        }
        out.push_str("#\n");
        for &(x, y) in &self.attacks {
            out.push_str(&format!("{} {}\n", self.names[x], self.names[y]));
        }
        out
    }

    /// Render as a DOT digraph, optionally filling the members of
    /// `highlight`. Nodes and edges are emitted in argument order, so the
    /// output is deterministic.
    pub fn emit_dot(&self, highlight: Option<&ArgSet>) -> String {
        let mut out = String::from("digraph aaf {\n");
        for (i, name) in self.names.iter().enumerate() {
            if highlight.is_some_and(|h| h.contains(i)) {
                out.push_str(&format!("  {name} [style=filled, fillcolor=lightblue];\n"));
            } else {
                out.push_str(&format!("  {name};\n"));
            }
        }
        for &(x, y) in &self.attacks {
            out.push_str(&format!("  {} -> {};\n", self.names[x], self.names[y]));
        }
        out.push_str("}\n");
        out
    }

    /// The machine-readable export surface shared by the whole CLI:
    /// `{"arguments": [...], "attacks": [[x,y],...], "families": {name: [[...],...]}}`.
    /// Families are canonicalized before export.
    pub fn to_json(&self, families: &BTreeMap<String, ExtensionFamily>) -> serde_json::Value {
        let fams: serde_json::Map<String, serde_json::Value> = families
            .iter()
            .map(|(name, fam)| {
                let sets: Vec<serde_json::Value> = fam
                    .iter()
                    .map(|s| serde_json::Value::from(self.set_names(s)))
                    .collect();
                (name.clone(), serde_json::Value::from(sets))
            })
            .collect();
        serde_json::json!({
            "arguments": self.names,
            "attacks": self.attacks.iter()
                .map(|&(x, y)| vec![self.names[x].clone(), self.names[y].clone()])
                .collect::<Vec<_>>(),
            "families": fams,
        })
    }

    /// Parse the JSON surface emitted by [`Aaf::to_json`]; any `families`
    /// key is ignored here (frame only).
    pub fn parse_json(text: &str) -> Result<Aaf> {
        let bad = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| bad(&format!("invalid JSON: {e}")))?;
        let names: Vec<String> = value
            .get("arguments")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing \"arguments\" array"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("argument must be a string")))
            .collect::<Result<_>>()?;
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut attacks = Vec::new();
        for pair in value
            .get("attacks")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing \"attacks\" array"))?
        {
            let ends = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                bad("each attack must be a two-element array")
            })?;
            let resolve = |v: &serde_json::Value| {
                v.as_str()
                    .and_then(|s| index.get(s).copied())
                    .ok_or_else(|| bad("attack endpoint is not a declared argument"))
            };
            attacks.push((resolve(&ends[0])?, resolve(&ends[1])?));
        }
        Aaf::from_parts(names, attacks)
    }
}

impl fmt::Debug for Aaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aaf({:?}, {:?})", self.names, self.attacks)
    }
}

/// A canonically ordered, duplicate-free collection of argument sets — the
/// output shape of every semantics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionFamily {
    universe: usize,
    sets: Vec<ArgSet>,
}

impl ExtensionFamily {
    /// Canonicalize: drop duplicates, sort by (cardinality, member list).
    /// Idempotent and insensitive to input order.
    pub fn new(universe: usize, mut sets: Vec<ArgSet>) -> Self {
        sets.sort_by(|a, b| a.canonical_cmp(b));
        sets.dedup();
        ExtensionFamily { universe, sets }
    }

    pub fn empty(universe: usize) -> Self {
        ExtensionFamily { universe, sets: Vec::new() }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &ArgSet) -> bool {
        self.sets.iter().any(|s| s == set)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgSet> {
        self.sets.iter()
    }

    pub fn sets(&self) -> &[ArgSet] {
        &self.sets
    }

    /// `⋂` of all members, with the convention `⋂∅ = A` (the full universe).
    pub fn meet_all(&self) -> ArgSet {
        self.sets
            .iter()
            .fold(ArgSet::full(self.universe), |acc, s| acc.intersection(s))
    }

    /// `⋃` of all members (`⋃∅ = ∅`).
    pub fn union_all(&self) -> ArgSet {
        self.sets
            .iter()
            .fold(ArgSet::empty(self.universe), |acc, s| acc.union(s))
    }
}
