//! JSON definition files: finite Lie algebras, setups, finite commutative
//! algebras, Lie-Rinehart algebras, Leibniz pairs and `p`-files.

use crossed::comm::CommAlgebra;
use crossed::rinehart::{LeibnizPair, LieRinehart, ModuleStructure};
use crossed::scalar::{parse_rational, render_rational};
use crossed::witt::{LaurentPoly, MultiIndex};
use crossed::{Action, LieAlgebra, Matrix, Rational, Setup, Vector};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("shape error in {path}: {message}")]
    Shape { path: PathBuf, message: String },
    #[error("invariant error in {path}: {message}")]
    Invariant { path: PathBuf, message: String },
}

impl LoadError {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadError::Io { .. } => "io",
            LoadError::Parse { .. } => "parse",
            LoadError::Shape { .. } => "shape",
            LoadError::Invariant { .. } => "invariant",
        }
    }
}

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Q {
    Int(i64),
    Str(String),
}

impl From<&Rational> for Q {
    fn from(q: &Rational) -> Self {
        Q::Str(render_rational(q))
    }
}

pub type MatrixQ = Vec<Vec<Q>>;
pub type VectorQ = BTreeMap<String, Q>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub left: String,
    pub right: String,
    pub value: VectorQ,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub kind: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<Entry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub certified: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CommFile {
    pub kind: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<VectorQ>,
}

/// Either a path (relative to the referring file) or an inline definition.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ActionDef {
    Named(String),
    Table(BTreeMap<String, MatrixQ>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SetupFile {
    pub kind: String,
    pub g: Source<LieFile>,
    pub h: Source<LieFile>,
    pub action: ActionDef,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MatrixQ>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub basis: Vec<String>,
    /// Matrix of each algebra basis element acting on the module.
    pub action: BTreeMap<String, MatrixQ>,
    /// Matrix of each Lie basis element acting on the module.
    pub rho: BTreeMap<String, MatrixQ>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LieRinehartFile {
    pub kind: String,
    pub algebra: Source<CommFile>,
    #[serde(default)]
    pub derivation_algebra: bool,
    #[serde(default)]
    pub lie: Option<Source<LieFile>>,
    /// Matrix of each algebra basis element acting on `L`.
    #[serde(default)]
    pub module: Option<BTreeMap<String, MatrixQ>>,
    #[serde(default)]
    pub anchor: Option<BTreeMap<String, MatrixQ>>,
    #[serde(default)]
    pub representation: Option<RepFile>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LeibnizFile {
    pub kind: String,
    pub algebra: Source<CommFile>,
    pub lie: Source<LieFile>,
    pub beta: BTreeMap<String, MatrixQ>,
    #[serde(default)]
    pub representation: Option<RepFile>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PFile {
    pub q: Q,
    /// `p_i` keyed by the 1-based variable index, as exponent → coefficient
    /// in `x_i`.
    pub p: BTreeMap<String, BTreeMap<String, Q>>,
}

/// A module with representation matrices, loaded from a [`RepFile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub module: ModuleStructure,
    pub rho: Vec<Matrix>,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartBundle {
    pub lr: LieRinehart,
    pub representation: Option<Representation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizBundle {
    pub pair: LeibnizPair,
    pub representation: Option<Representation>,
}

struct Ctx<'a> {
    path: &'a Path,
}

impl Ctx<'_> {
    fn parse(&self, message: impl Into<String>) -> LoadError {
        LoadError::Parse {
            path: self.path.to_path_buf(),
            message: message.into(),
        }
    }

    fn shape(&self, message: impl Into<String>) -> LoadError {
        LoadError::Shape {
            path: self.path.to_path_buf(),
            message: message.into(),
        }
    }

    fn invariant(&self, message: impl Into<String>) -> LoadError {
        LoadError::Invariant {
            path: self.path.to_path_buf(),
            message: message.into(),
        }
    }

    fn core(&self, e: crossed::Error) -> LoadError {
        match e {
            crossed::Error::DimensionMismatch { .. } | crossed::Error::IndexOutOfRange { .. } => {
                self.shape(e.to_string())
            }
            _ => self.invariant(e.to_string()),
        }
    }

    fn rational(&self, q: &Q) -> Result<Rational, LoadError> {
        match q {
            Q::Int(n) => Ok(Rational::from_integer((*n).into())),
            Q::Str(s) => parse_rational(s).map_err(|e| self.parse(e.to_string())),
        }
    }

    fn kind(&self, found: &str, want: &str) -> Result<(), LoadError> {
        if found == want {
            Ok(())
        } else {
            Err(self.parse(format!("expected kind {want:?}, found {found:?}")))
        }
    }

    fn index(&self, names: &[String], name: &str, what: &str) -> Result<usize, LoadError> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| self.parse(format!("unknown {what} basis name {name:?}")))
    }

    fn vector(&self, names: &[String], v: &VectorQ, what: &str) -> Result<Vector, LoadError> {
        let mut out = vec![Rational::from_integer(0.into()); names.len()];
        for (k, q) in v {
            out[self.index(names, k, what)?] = self.rational(q)?;
        }
        Ok(out)
    }

    fn matrix(&self, m: &MatrixQ, rows: usize, cols: usize, what: &str) -> Result<Matrix, LoadError> {
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            let found_cols = m.first().map_or(0, Vec::len);
            return Err(self.shape(format!(
                "{what}: expected {rows}x{cols}, found {}x{found_cols}",
                m.len()
            )));
        }
        let rows: Vec<Vector> = m
            .iter()
            .map(|r| r.iter().map(|q| self.rational(q)).collect())
            .collect::<Result<_, _>>()?;
        Matrix::from_rows(rows).map_err(|e| self.core(e))
    }

    /// One matrix per name of `names`, all `size × size`; missing names are
    /// zero, unknown names are rejected.
    fn table(
        &self,
        names: &[String],
        t: &BTreeMap<String, MatrixQ>,
        size: usize,
        what: &str,
    ) -> Result<Vec<Matrix>, LoadError> {
        let mut out = vec![Matrix::zeros(size, size); names.len()];
        for (k, m) in t {
            let i = self.index(names, k, what)?;
            out[i] = self.matrix(m, size, size, &format!("{what} matrix of {k}"))?;
        }
        Ok(out)
    }

    fn distinct(&self, names: &[String]) -> Result<(), LoadError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(self.parse(format!("duplicate basis name {n:?}")));
            }
        }
        Ok(())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| LoadError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn resolve<T: DeserializeOwned + Clone>(base: &Path, s: &Source<T>) -> Result<(T, PathBuf), LoadError> {
    match s {
        Source::Inline(t) => Ok((t.clone(), base.to_path_buf())),
        Source::Path(p) => {
            let full = base.parent().unwrap_or(Path::new(".")).join(p);
            Ok((read_json(&full)?, full))
        }
    }
}

impl LieFile {
    pub fn build(&self, path: &Path) -> Result<LieAlgebra, LoadError> {
        let cx = Ctx { path };
        cx.kind(&self.kind, "finite_lie")?;
        cx.distinct(&self.basis)?;
        let mut g = LieAlgebra::abelian_named(self.basis.clone());
        for b in &self.brackets {
            let i = cx.index(&self.basis, &b.left, "Lie")?;
            let j = cx.index(&self.basis, &b.right, "Lie")?;
            let v = cx.vector(&self.basis, &b.value, "Lie")?;
            g.set_bracket(i, j, v).map_err(|e| cx.core(e))?;
        }
        if self.certified {
            let violations = g.check_jacobi();
            if let Some(first) = violations.first() {
                return Err(cx.invariant(format!(
                    "certified algebra fails the Jacobi identity ({} violations, first {first})",
                    violations.len()
                )));
            }
        }
        Ok(g)
    }

    pub fn from_algebra(g: &LieAlgebra, certified: bool) -> Self {
        LieFile {
            kind: "finite_lie".into(),
            basis: g.names().to_vec(),
            brackets: entries(g.names(), g.structure()),
            certified,
        }
    }
}

fn entries<'a>(names: &[String], structure: impl Iterator<Item = (&'a (usize, usize), &'a Vector)>) -> Vec<Entry> {
    structure
        .map(|(&(i, j), v)| Entry {
            left: names[i].clone(),
            right: names[j].clone(),
            value: vector_q(names, v),
        })
        .collect()
}

fn vector_q(names: &[String], v: &[Rational]) -> VectorQ {
    names
        .iter()
        .zip(v)
        .filter(|(_, c)| *c != &Rational::from_integer(0.into()))
        .map(|(n, c)| (n.clone(), Q::from(c)))
        .collect()
}

pub fn matrix_q(m: &Matrix) -> MatrixQ {
    m.to_rows().iter().map(|r| r.iter().map(Q::from).collect()).collect()
}

impl CommFile {
    pub fn build(&self, path: &Path) -> Result<CommAlgebra, LoadError> {
        let cx = Ctx { path };
        cx.kind(&self.kind, "finite_comm")?;
        cx.distinct(&self.basis)?;
        let mut a = CommAlgebra::null(self.basis.clone());
        for p in &self.products {
            let i = cx.index(&self.basis, &p.left, "algebra")?;
            let j = cx.index(&self.basis, &p.right, "algebra")?;
            let v = cx.vector(&self.basis, &p.value, "algebra")?;
            a.set_product(i, j, v).map_err(|e| cx.core(e))?;
        }
        let unit = self
            .unit
            .as_ref()
            .map(|u| cx.vector(&self.basis, u, "algebra"))
            .transpose()?;
        a.set_unit(unit).map_err(|e| cx.core(e))?;
        let violations = a.check();
        if let Some(first) = violations.first() {
            return Err(cx.invariant(format!("not a commutative associative algebra: {first}")));
        }
        Ok(a)
    }

    pub fn from_algebra(a: &CommAlgebra) -> Self {
        CommFile {
            kind: "finite_comm".into(),
            basis: a.names().to_vec(),
            products: entries(a.names(), a.structure()),
            unit: a.unit().map(|u| vector_q(a.names(), u)),
        }
    }
}

impl SetupFile {
    pub fn build(&self, path: &Path) -> Result<Setup, LoadError> {
        let cx = Ctx { path };
        cx.kind(&self.kind, "setup")?;
        let (gf, gp) = resolve(path, &self.g)?;
        let (hf, hp) = resolve(path, &self.h)?;
        let g = gf.build(&gp)?;
        let h = hf.build(&hp)?;
        let rho = match &self.action {
            ActionDef::Named(n) if n == "adjoint" => {
                if g != h {
                    return Err(cx.shape("the adjoint action needs g and h to be the same algebra"));
                }
                Action::adjoint(&g)
            }
            ActionDef::Named(n) if n == "zero" => Action::zero(g.dim(), h.dim()),
            ActionDef::Named(n) => {
                return Err(cx.parse(format!(
                    "unknown action {n:?}; expected a table, \"adjoint\" or \"zero\""
                )))
            }
            ActionDef::Table(t) => Action::new(cx.table(g.names(), t, h.dim(), "action")?),
        };
        let map = match &self.map {
            Some(m) => cx.matrix(m, h.dim(), g.dim(), "H")?,
            None => Matrix::zeros(h.dim(), g.dim()),
        };
        Setup::new(g, h, rho, map).map_err(|e| cx.core(e))
    }

    /// The setup with both algebras and the action table inlined.
    pub fn from_setup(s: &Setup) -> Self {
        let action = s
            .g()
            .names()
            .iter()
            .zip(s.rho().matrices())
            .map(|(n, m)| (n.clone(), matrix_q(m)))
            .collect();
        SetupFile {
            kind: "setup".into(),
            g: Source::Inline(LieFile::from_algebra(s.g(), false)),
            h: Source::Inline(LieFile::from_algebra(s.h(), false)),
            action: ActionDef::Table(action),
            map: Some(matrix_q(s.map())),
        }
    }
}

impl RepFile {
    fn build(&self, cx: &Ctx, a: &CommAlgebra, lie: &LieAlgebra) -> Result<Representation, LoadError> {
        cx.distinct(&self.basis)?;
        let d = self.basis.len();
        let action = cx.table(a.names(), &self.action, d, "module action")?;
        let module = ModuleStructure::new(a.clone(), self.basis.clone(), action).map_err(|e| cx.core(e))?;
        let violations = module.check();
        if let Some(first) = violations.first() {
            return Err(cx.invariant(format!("representation space is not a module: {first}")));
        }
        Ok(Representation {
            module,
            rho: cx.table(lie.names(), &self.rho, d, "rho")?,
            strict: self.strict,
        })
    }
}

impl LieRinehartFile {
    pub fn build(&self, path: &Path) -> Result<LieRinehartBundle, LoadError> {
        let cx = Ctx { path };
        cx.kind(&self.kind, "lie_rinehart")?;
        let (af, ap) = resolve(path, &self.algebra)?;
        let a = af.build(&ap)?;
        let lr = if self.derivation_algebra {
            if self.lie.is_some() || self.module.is_some() || self.anchor.is_some() {
                return Err(cx.parse("derivation_algebra excludes lie, module and anchor"));
            }
            LieRinehart::derivation_algebra(a.clone()).map_err(|e| cx.core(e))?
        } else {
            let (Some(lie), Some(module), Some(anchor)) = (&self.lie, &self.module, &self.anchor) else {
                return Err(cx.parse("expected lie, module and anchor, or derivation_algebra: true"));
            };
            let (lf, lp) = resolve(path, lie)?;
            let lie = lf.build(&lp)?;
            let module = cx.table(a.names(), module, lie.dim(), "module")?;
            let anchor = cx.table(lie.names(), anchor, a.dim(), "anchor")?;
            LieRinehart::new(a.clone(), lie, module, anchor).map_err(|e| cx.core(e))?
        };
        let representation = self
            .representation
            .as_ref()
            .map(|r| r.build(&cx, &a, crossed::rinehart::Anchored::lie(&lr)))
            .transpose()?;
        Ok(LieRinehartBundle { lr, representation })
    }
}

impl LeibnizFile {
    pub fn build(&self, path: &Path) -> Result<LeibnizBundle, LoadError> {
        let cx = Ctx { path };
        cx.kind(&self.kind, "leibniz_pair")?;
        let (af, ap) = resolve(path, &self.algebra)?;
        let a = af.build(&ap)?;
        let (lf, lp) = resolve(path, &self.lie)?;
        let lie = lf.build(&lp)?;
        let beta = cx.table(lie.names(), &self.beta, a.dim(), "beta")?;
        let representation = self
            .representation
            .as_ref()
            .map(|r| r.build(&cx, &a, &lie))
            .transpose()?;
        let pair = LeibnizPair::new(a, lie, beta).map_err(|e| cx.core(e))?;
        Ok(LeibnizBundle { pair, representation })
    }
}

impl PFile {
    pub fn build(&self, path: &Path, n: usize) -> Result<(Vec<LaurentPoly>, Rational), LoadError> {
        let cx = Ctx { path };
        let mut p = vec![LaurentPoly::zero(n); n];
        for (k, poly) in &self.p {
            let i: usize = k
                .parse()
                .map_err(|_| cx.parse(format!("variable index {k:?} is not a number")))?;
            if i == 0 || i > n {
                return Err(cx.shape(format!("variable index {i} out of range 1..={n}")));
            }
            let mut terms = Vec::new();
            for (e, c) in poly {
                let e: i64 = e
                    .parse()
                    .map_err(|_| cx.parse(format!("exponent {e:?} is not an integer")))?;
                let mut r = vec![0; n];
                r[i - 1] = e;
                terms.push((MultiIndex::new(r), cx.rational(c)?));
            }
            p[i - 1] = LaurentPoly::from_terms(n, terms).map_err(|e| cx.core(e))?;
        }
        Ok((p, cx.rational(&self.q)?))
    }
}

pub fn load_lie(path: &Path) -> Result<LieAlgebra, LoadError> {
    read_json::<LieFile>(path)?.build(path)
}

pub fn load_comm(path: &Path) -> Result<CommAlgebra, LoadError> {
    read_json::<CommFile>(path)?.build(path)
}

pub fn load_setup(path: &Path) -> Result<Setup, LoadError> {
    read_json::<SetupFile>(path)?.build(path)
}

pub fn load_lie_rinehart(path: &Path) -> Result<LieRinehartBundle, LoadError> {
    read_json::<LieRinehartFile>(path)?.build(path)
}

pub fn load_leibniz(path: &Path) -> Result<LeibnizBundle, LoadError> {
    read_json::<LeibnizFile>(path)?.build(path)
}

pub fn load_p(path: &Path, n: usize) -> Result<(Vec<LaurentPoly>, Rational), LoadError> {
    read_json::<PFile>(path)?.build(path, n)
}
