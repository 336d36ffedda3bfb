//! PyO3 bindings for Python interop.
//!
//! Exposes the solver to Python via a `Framework` class: frame
//! construction and parsing, graded kernel operations, extension
//! enumeration for every supported semantics, structural analysis, the
//! conflict-free inverse construction, and first-order evaluation. All
//! computation runs in-process on the Rust library.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gradarg::af::{Aaf, ArgSet, ExtensionFamily, Params};
use gradarg::semantics::{enumerate_with_cap, SemanticsSpec, ENUM_CAP};
use gradarg::{analysis, fixpoint, fol, kernel, representation};

fn err<T>(e: gradarg::Error) -> PyResult<T> {
    Err(PyValueError::new_err(e.to_string()))
}

fn params(l: u32, m: u32, n: u32, eta: u32) -> PyResult<Params> {
    Params::new(l, m, n, eta).or_else(err)
}

/// An abstract argumentation frame: named arguments plus a binary attack
/// relation.
///
/// Usage from Python:
///
///     from gradarg_py import Framework
///     f = Framework(["a", "b"], [("a", "b")])
///     f.extensions("co")          # [["a"]]
///     f.extensions("cf", l=2)     # graded variants via keyword grades
#[pyclass]
struct Framework {
    inner: Aaf,
}

impl Framework {
    fn set_of(&self, members: Vec<String>) -> PyResult<ArgSet> {
        let mut set = ArgSet::empty(self.inner.arg_count());
        for name in &members {
            match self.inner.index_of(name) {
                Some(i) => set.insert(i),
                None => return Err(PyValueError::new_err(format!("unknown argument: {name}"))),
            }
        }
        Ok(set)
    }

    fn family_names(&self, fam: &ExtensionFamily) -> Vec<Vec<String>> {
        fam.iter().map(|s| self.inner.set_names(s)).collect()
    }
}

#[pymethods]
impl Framework {
    /// Build a frame from argument names and (attacker, target) pairs.
    ///
    /// Raises:
    ///     ValueError: On empty/duplicate/malformed names or unknown
    ///     attack endpoints.
    #[new]
    fn new(arguments: Vec<String>, attacks: Vec<(String, String)>) -> PyResult<Self> {
        let pairs: Vec<(&str, &str)> =
            attacks.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        let names: Vec<&str> = arguments.iter().map(String::as_str).collect();
        Aaf::from_named(&names, &pairs).map(|inner| Framework { inner }).or_else(err)
    }

    /// Parse the `arg(a). att(a,b).` format.
    #[staticmethod]
    fn parse_apx(text: &str) -> PyResult<Self> {
        Aaf::parse_apx(text).map(|inner| Framework { inner }).or_else(err)
    }

    /// Parse the trivial graph format (nodes, `#`, edges).
    #[staticmethod]
    fn parse_tgf(text: &str) -> PyResult<Self> {
        Aaf::parse_tgf(text).map(|inner| Framework { inner }).or_else(err)
    }

    fn arguments(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn attacks(&self) -> Vec<(String, String)> {
        self.inner
            .attacks()
            .iter()
            .map(|&(x, y)| (self.inner.name(x).to_string(), self.inner.name(y).to_string()))
            .collect()
    }

    fn to_apx(&self) -> String {
        self.inner.emit_apx()
    }

    fn to_tgf(&self) -> String {
        self.inner.emit_tgf()
    }

    /// DOT digraph; members of `highlight` are filled.
    #[pyo3(signature = (highlight=None))]
    fn to_dot(&self, highlight: Option<Vec<String>>) -> PyResult<String> {
        let set = highlight.map(|h| self.set_of(h)).transpose()?;
        Ok(self.inner.emit_dot(set.as_ref()))
    }

    /// Arguments attacked by fewer than `l` members of `members`.
    #[pyo3(signature = (members, l=1))]
    fn neutrality(&self, members: Vec<String>, l: u32) -> PyResult<Vec<String>> {
        let e = self.set_of(members)?;
        Ok(self.inner.set_names(&kernel::neutrality(&self.inner, l, &e)))
    }

    /// The graded defense of `members` (composition of two neutrality
    /// steps with grades `n` then `m`).
    #[pyo3(signature = (members, m=1, n=1))]
    fn defense(&self, members: Vec<String>, m: u32, n: u32) -> PyResult<Vec<String>> {
        let e = self.set_of(members)?;
        Ok(self.inner.set_names(&kernel::defense(&self.inner, m, n, &e)))
    }

    /// The least fixpoint of defense above the empty set — the grounded
    /// construction.
    #[pyo3(signature = (m=1, n=1))]
    fn grounded(&self, m: u32, n: u32) -> PyResult<Vec<String>> {
        let empty = ArgSet::empty(self.inner.arg_count());
        fixpoint::lfp_from(&self.inner, m, n, &empty)
            .map(|e| self.inner.set_names(&e))
            .or_else(err)
    }

    /// Enumerate extensions under a semantics given by its text name
    /// (e.g. "cf", "ad", "co", "pr", "stb", "interval(ad,co,stb)").
    ///
    /// Returns the canonical list of extensions, each a sorted list of
    /// argument names.
    #[pyo3(signature = (spec, l=1, m=1, n=1, eta=1, cap=ENUM_CAP))]
    fn extensions(
        &self,
        spec: &str,
        l: u32,
        m: u32,
        n: u32,
        eta: u32,
        cap: usize,
    ) -> PyResult<Vec<Vec<String>>> {
        let spec = SemanticsSpec::parse(spec).or_else(err)?;
        let p = params(l, m, n, eta)?;
        enumerate_with_cap(&self.inner, &p, &spec, cap)
            .map(|fam| self.family_names(&fam))
            .or_else(err)
    }

    /// Is `arg` in some (credulous=True) or inferred by the empty premise
    /// set under every (credulous=False) extension?
    #[pyo3(signature = (spec, arg, credulous=true, l=1, m=1, n=1, eta=1))]
    #[allow(clippy::too_many_arguments)]
    fn accepts(
        &self,
        spec: &str,
        arg: &str,
        credulous: bool,
        l: u32,
        m: u32,
        n: u32,
        eta: u32,
    ) -> PyResult<bool> {
        let a = self
            .inner
            .index_of(arg)
            .ok_or_else(|| PyValueError::new_err(format!("unknown argument: {arg}")))?;
        let spec = SemanticsSpec::parse(spec).or_else(err)?;
        let p = params(l, m, n, eta)?;
        let fam = enumerate_with_cap(&self.inner, &p, &spec, ENUM_CAP).or_else(err)?;
        Ok(if credulous {
            fam.iter().any(|e| e.contains(a))
        } else {
            analysis::infers(&fam, &ArgSet::empty(self.inner.arg_count()), a)
        })
    }

    /// The minimal sets contained in no extension of the semantics.
    #[pyo3(signature = (spec, l=1, m=1, n=1, eta=1))]
    fn anti_sets(&self, spec: &str, l: u32, m: u32, n: u32, eta: u32) -> PyResult<Vec<Vec<String>>> {
        let spec = SemanticsSpec::parse(spec).or_else(err)?;
        let p = params(l, m, n, eta)?;
        let fam = enumerate_with_cap(&self.inner, &p, &spec, ENUM_CAP).or_else(err)?;
        Ok(self.family_names(&analysis::anti_sets(&fam)))
    }

    /// Evaluate an S-expression formula on the model ⟨A, →, E⟩ with the
    /// empty assignment, e.g. "(all x (not (att x x)))".
    #[pyo3(signature = (formula, members))]
    fn satisfies(&self, formula: &str, members: Vec<String>) -> PyResult<bool> {
        let phi = fol::FolFormula::parse(formula).or_else(err)?;
        let model = fol::FolModel::new(&self.inner, self.set_of(members)?).or_else(err)?;
        fol::eval(&model, &phi, &Default::default()).or_else(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Framework({:?}, {} attacks)",
            self.inner.names(),
            self.inner.attacks().len()
        )
    }
}

/// Decide whether `sets` over `arguments` is the ℓ-conflict-free family
/// of some frame; returns the witness `Framework` or None.
#[pyfunction]
#[pyo3(signature = (arguments, sets, l=1))]
fn representable(
    arguments: Vec<String>,
    sets: Vec<Vec<String>>,
    l: u32,
) -> PyResult<Option<Framework>> {
    let index = |name: &String| {
        arguments
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown argument: {name}")))
    };
    let mut members = Vec::new();
    for set in &sets {
        let mut mask = ArgSet::empty(arguments.len());
        for name in set {
            mask.insert(index(name)?);
        }
        members.push(mask);
    }
    let fam = ExtensionFamily::new(arguments.len(), members);
    let omega = representation::CandidateOmega::new(arguments, fam).or_else(err)?;
    let result =
        representation::representable(&omega, l, representation::Variant::I).or_else(err)?;
    Ok(result.witness.map(|inner| Framework { inner }))
}

#[pymodule]
fn gradarg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Framework>()?;
    m.add_function(wrap_pyfunction!(representable, m)?)?;
    Ok(())
}
