//! Finite-dimensional Lie algebras given by structure constants, actions by
//! derivations, and crossed homomorphisms between them.
//!
//! A crossed homomorphism `H: g → h` with respect to an action `ρ` satisfies
//!
//! ```text
//! H[x,y] = ρ(x)(Hy) − ρ(y)(Hx) + [Hx, Hy]
//! ```
//!
//! Every identity here is bilinear, so checking it on basis pairs decides it
//! exactly.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::{axpy, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Finding;
use crate::scalar::{int, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`; absent pairs bracket to zero.
    structure: BTreeMap<(usize, usize), Vector>,
}

impl LieAlgebra {
    /// Abelian algebra on the given basis names.
    pub fn abelian_named(names: Vec<String>) -> Self {
        LieAlgebra {
            names,
            structure: BTreeMap::new(),
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::abelian_named((1..=dim).map(|i| format!("e{i}")).collect())
    }

    /// Sets `[e_i, e_j] = value` (and implicitly `[e_j, e_i] = −value`).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        let n = self.dim();
        ensure_dim("bracket value", n, value.len())?;
        for k in [i, j] {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k + 1, bound: n });
            }
        }
        if i == j {
            if is_zero_vec(&value) {
                return Ok(());
            }
            return Err(Error::Invalid(format!("bracket [{0}, {0}] must vanish", self.names[i])));
        }
        let (key, value) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.iter().map(|x| -x).collect())
        };
        if is_zero_vec(&value) {
            self.structure.remove(&key);
        } else {
            self.structure.insert(key, value);
        }
        Ok(())
    }

    pub fn with_bracket(mut self, i: usize, j: usize, value: Vector) -> Result<Self> {
        self.set_bracket(i, j, value)?;
        Ok(self)
    }

    fn with_int_bracket(self, i: usize, j: usize, value: &[i64]) -> Self {
        self.with_bracket(i, j, crate::linalg::vec_from_ints(value))
            .expect("built-in structure constants are well formed")
    }

    /// `sl2` on the basis `h, e, f` with `[h,e]=2e, [h,f]=−2f, [e,f]=h`.
    pub fn sl2() -> Self {
        Self::abelian_named(vec!["h".into(), "e".into(), "f".into()])
            .with_int_bracket(0, 1, &[0, 2, 0])
            .with_int_bracket(0, 2, &[0, 0, -2])
            .with_int_bracket(1, 2, &[1, 0, 0])
    }

    /// Three-dimensional Heisenberg algebra `[p,q] = z`.
    pub fn heisenberg() -> Self {
        Self::abelian_named(vec!["p".into(), "q".into(), "z".into()]).with_int_bracket(0, 1, &[0, 0, 1])
    }

    /// The two-dimensional non-abelian algebra `[e1,e2] = e1`.
    pub fn two_dim() -> Self {
        Self::abelian(2).with_int_bracket(0, 1, &[1, 0])
    }

    /// `gl_n` on the matrix units, index of `E_ij` is `i*n + j` (0-based).
    pub fn gl(n: usize) -> Self {
        let names = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        let mut alg = Self::abelian_named(names);
        let idx = |i: usize, j: usize| i * n + j;
        for (a, b) in (0..n * n).flat_map(|a| (a + 1..n * n).map(move |b| (a, b))) {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
            let mut v = zero_vec(n * n);
            if j == k {
                v[idx(i, l)] += int(1);
            }
            if l == i {
                v[idx(k, j)] -= int(1);
            }
            alg.set_bracket(a, b, v).expect("gl structure constants");
        }
        alg
    }

    pub fn dim(&self) -> usize {
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

    /// Nonzero structure constants, `i < j`.
    pub fn structure(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.structure.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vec(self.dim()),
            Less => self
                .structure
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| zero_vec(self.dim())),
            Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| zero_vec(self.dim())),
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        ensure_dim("bracket argument", self.dim(), x.len())?;
        ensure_dim("bracket argument", self.dim(), y.len())?;
        Ok(self.bracket_raw(x, y))
    }

    pub(crate) fn bracket_raw(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (&(i, j), v) in &self.structure {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            axpy(&mut out, &c, v);
        }
        out
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_raw(x, &unit_vec(n, j))).collect();
        Matrix::from_columns(n, &cols).expect("square by construction")
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim(), i))
    }

    /// Jacobi residual `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let e = |a| unit_vec(n, a);
        let mut r = self.bracket_raw(&e(i), &self.bracket_basis(j, k));
        let t2 = self.bracket_raw(&e(j), &self.bracket_basis(k, i));
        let t3 = self.bracket_raw(&e(k), &self.bracket_basis(i, j));
        axpy(&mut r, &int(1), &t2);
        axpy(&mut r, &int(1), &t3);
        r
    }

    /// Every basis triple `i < j < k` violating Jacobi.
    pub fn check_jacobi(&self) -> Vec<Finding> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r = self.jacobi_residual(i, j, k);
                    if !is_zero_vec(&r) {
                        out.push(Finding::from_vector(
                            "jacobi",
                            vec![self.names[i].clone(), self.names[j].clone(), self.names[k].clone()],
                            &self.names,
                            &r,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Failures of `D[u,v] = [Du,v] + [u,Dv]` on basis pairs.
    pub fn check_derivation(&self, d: &Matrix, label: &str) -> Result<Vec<Finding>> {
        ensure_dim("derivation rows", self.dim(), d.rows())?;
        ensure_dim("derivation cols", self.dim(), d.cols())?;
        let n = self.dim();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let lhs = d.mul_vec(&self.bracket_basis(u, v));
                let mut rhs = self.bracket_raw(&d.column(u), &unit_vec(n, v));
                axpy(&mut rhs, &int(1), &self.bracket_raw(&unit_vec(n, u), &d.column(v)));
                let r = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&r) {
                    out.push(Finding::from_vector(
                        "derivation",
                        vec![label.to_string(), self.names[u].clone(), self.names[v].clone()],
                        &self.names,
                        &r,
                    ));
                }
            }
        }
        Ok(out)
    }

    /// Failures of `φ[e_i,e_j] = [φe_i, φe_j]` for a linear map `φ: self → target`.
    pub fn check_homomorphism(&self, target: &LieAlgebra, phi: &Matrix) -> Result<Vec<Finding>> {
        ensure_dim("homomorphism rows", target.dim(), phi.rows())?;
        ensure_dim("homomorphism cols", self.dim(), phi.cols())?;
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = phi.mul_vec(&self.bracket_basis(i, j));
                let rhs = target.bracket_raw(&phi.column(i), &phi.column(j));
                let r = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&r) {
                    out.push(Finding::from_vector(
                        "homomorphism",
                        vec![self.names[i].clone(), self.names[j].clone()],
                        target.names(),
                        &r,
                    ));
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries of a square matrix on this algebra, keyed `row<-col`.
    pub(crate) fn label_matrix(&self, m: &Matrix) -> BTreeMap<String, Rational> {
        label_matrix(&self.names, &self.names, m)
    }
}

pub(crate) fn label_matrix(rows: &[String], cols: &[String], m: &Matrix) -> BTreeMap<String, Rational> {
    let mut out = BTreeMap::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = &m[(i, j)];
            if !x.is_zero() {
                out.insert(format!("{}<-{}", rows[i], cols[j]), x.clone());
            }
        }
    }
    out
}

/// A linear map `ρ: g → gl(h)` given on the basis of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    matrices: Vec<Matrix>,
}

impl Action {
    pub fn new(matrices: Vec<Matrix>) -> Self {
        Action { matrices }
    }

    pub fn zero(g_dim: usize, h_dim: usize) -> Self {
        Action::new(vec![Matrix::zeros(h_dim, h_dim); g_dim])
    }

    pub fn adjoint(g: &LieAlgebra) -> Self {
        Action::new((0..g.dim()).map(|i| g.ad_basis(i)).collect())
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn basis(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn at(&self, x: &[Rational]) -> Matrix {
        let n = self.matrices.first().map_or(0, Matrix::rows);
        let mut out = Matrix::zeros(n, n);
        for (c, m) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub(crate) fn validate(&self, g_dim: usize, h_dim: usize) -> Result<()> {
        ensure_dim("number of action matrices", g_dim, self.matrices.len())?;
        for m in &self.matrices {
            ensure_dim("action matrix rows", h_dim, m.rows())?;
            ensure_dim("action matrix cols", h_dim, m.cols())?;
        }
        Ok(())
    }
}

/// Derivation failures of each `ρ(e_i)` and homomorphism failures
/// `ρ([e_i,e_j]) ≠ [ρ(e_i), ρ(e_j)]`. Empty means `ρ` is an action.
pub fn check_action(g: &LieAlgebra, h: &LieAlgebra, rho: &Action) -> Result<Vec<Finding>> {
    rho.validate(g.dim(), h.dim())?;
    let mut out = Vec::new();
    for (i, m) in rho.matrices.iter().enumerate() {
        out.extend(h.check_derivation(m, g.name(i))?);
    }
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let lhs = rho.at(&g.bracket_basis(i, j));
            let rhs = rho.matrices[i].commutator(&rho.matrices[j]);
            let r = &lhs - &rhs;
            if !r.is_zero() {
                out.push(Finding::new(
                    "action_homomorphism",
                    vec![g.name(i).to_string(), g.name(j).to_string()],
                    h.label_matrix(&r),
                ));
            }
        }
    }
    Ok(out)
}

/// The data `(g, h, ρ, H)` with shapes validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setup {
    g: LieAlgebra,
    h: LieAlgebra,
    rho: Action,
    map: Matrix,
}

impl Setup {
    /// `map` has shape `dim h × dim g`; its columns are `H(e_i)`.
    pub fn new(g: LieAlgebra, h: LieAlgebra, rho: Action, map: Matrix) -> Result<Self> {
        rho.validate(g.dim(), h.dim())?;
        ensure_dim("crossed homomorphism rows", h.dim(), map.rows())?;
        ensure_dim("crossed homomorphism cols", g.dim(), map.cols())?;
        Ok(Setup { g, h, rho, map })
    }

    /// `g = h` with the adjoint action.
    pub fn adjoint(g: LieAlgebra, map: Matrix) -> Result<Self> {
        let rho = Action::adjoint(&g);
        Setup::new(g.clone(), g, rho, map)
    }

    pub fn with_map(&self, map: Matrix) -> Result<Self> {
        Setup::new(self.g.clone(), self.h.clone(), self.rho.clone(), map)
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.h
    }

    pub fn rho(&self) -> &Action {
        &self.rho
    }

    /// The matrix of `H`.
    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn apply_map(&self, x: &[Rational]) -> Vector {
        self.map.mul_vec(x)
    }
}

fn crossed_residual_raw(g: &LieAlgebra, h: &LieAlgebra, rho: &Action, map: &Matrix, i: usize, j: usize) -> Vector {
    let hx = map.column(i);
    let hy = map.column(j);
    let mut r = map.mul_vec(&g.bracket_basis(i, j));
    axpy(&mut r, &int(-1), &rho.basis(i).mul_vec(&hy));
    axpy(&mut r, &int(1), &rho.basis(j).mul_vec(&hx));
    axpy(&mut r, &int(-1), &h.bracket_raw(&hx, &hy));
    r
}

fn is_crossed_raw(g: &LieAlgebra, h: &LieAlgebra, rho: &Action, map: &Matrix) -> bool {
    (0..g.dim()).all(|i| (i + 1..g.dim()).all(|j| is_zero_vec(&crossed_residual_raw(g, h, rho, map, i, j))))
}

/// `H[e_i,e_j] − ρ(e_i)(He_j) + ρ(e_j)(He_i) − [He_i, He_j]`.
pub fn crossed_hom_residual(s: &Setup, i: usize, j: usize) -> Vector {
    crossed_residual_raw(&s.g, &s.h, &s.rho, &s.map, i, j)
}

/// Basis pairs `i < j` where the crossed homomorphism identity fails.
pub fn check_crossed_hom(s: &Setup) -> Vec<Finding> {
    let n = s.g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let r = crossed_hom_residual(s, i, j);
            if !is_zero_vec(&r) {
                out.push(Finding::from_vector(
                    "crossed_hom",
                    vec![s.g.name(i).to_string(), s.g.name(j).to_string()],
                    s.h.names(),
                    &r,
                ));
            }
        }
    }
    out
}

pub fn is_crossed_hom(s: &Setup) -> bool {
    is_crossed_raw(&s.g, &s.h, &s.rho, &s.map)
}

pub(crate) fn ensure_crossed_hom(s: &Setup) -> Result<()> {
    let violations = check_crossed_hom(s).len();
    if violations == 0 {
        Ok(())
    } else {
        Err(Error::NotCrossedHom { violations })
    }
}

/// `ρ_H(e_i) = ρ(e_i) + ad(He_i)`, formed without checking `H`.
pub fn induced_action_unchecked(s: &Setup) -> Action {
    Action::new(
        (0..s.g.dim())
            .map(|i| s.rho.basis(i) + &s.h.ad(&s.map.column(i)))
            .collect(),
    )
}

pub fn induced_action(s: &Setup) -> Result<Action> {
    ensure_crossed_hom(s)?;
    Ok(induced_action_unchecked(s))
}

/// `g ⋉_ρ h` on the basis of `g` followed by the basis of `h`, without
/// validating `ρ`.
pub fn semidirect_unchecked(g: &LieAlgebra, h: &LieAlgebra, rho: &Action) -> LieAlgebra {
    let (m, n) = (g.dim(), h.dim());
    let mut names: Vec<String> = g.names().to_vec();
    for name in h.names() {
        let mut name = name.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let mut out = LieAlgebra::abelian_named(names);
    for a in 0..m + n {
        for b in a + 1..m + n {
            let mut v = zero_vec(m + n);
            if b < m {
                v[..m].clone_from_slice(&g.bracket_basis(a, b));
            } else if a < m {
                v[m..].clone_from_slice(&rho.basis(a).column(b - m));
            } else {
                v[m..].clone_from_slice(&h.bracket_basis(a - m, b - m));
            }
            out.set_bracket(a, b, v).expect("semidirect structure constants");
        }
    }
    out
}

pub fn semidirect(g: &LieAlgebra, h: &LieAlgebra, rho: &Action) -> Result<LieAlgebra> {
    let violations = check_action(g, h, rho)?.len();
    if violations > 0 {
        return Err(Error::NotAction { violations });
    }
    Ok(semidirect_unchecked(g, h, rho))
}

/// Outcome of comparing the twist map against the defining identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistCheck {
    /// `(x,u) ↦ (x, Hx + u)` is a homomorphism `g ⋉_{ρ_H} h → g ⋉_ρ h`.
    pub twist_is_homomorphism: bool,
    /// `x ↦ (x, Hx)` is a homomorphism `g → g ⋉_ρ h`.
    pub section_is_homomorphism: bool,
    pub is_crossed_hom: bool,
}

impl TwistCheck {
    pub fn agrees(&self) -> bool {
        self.twist_is_homomorphism == self.is_crossed_hom && self.section_is_homomorphism == self.is_crossed_hom
    }
}

pub fn twist_iso_check(s: &Setup) -> TwistCheck {
    let (m, n) = (s.g.dim(), s.h.dim());
    let twisted = semidirect_unchecked(&s.g, &s.h, &induced_action_unchecked(s));
    let plain = semidirect_unchecked(&s.g, &s.h, &s.rho);
    let mut twist = Matrix::identity(m + n);
    let mut section = Matrix::zeros(m + n, m);
    for i in 0..m {
        section[(i, i)] = int(1);
        for k in 0..n {
            twist[(m + k, i)] = s.map[(k, i)].clone();
            section[(m + k, i)] = s.map[(k, i)].clone();
        }
    }
    let twist_ok = twisted
        .check_homomorphism(&plain, &twist)
        .expect("shapes agree")
        .is_empty();
    let section_ok =
        s.g.check_homomorphism(&plain, &section)
            .expect("shapes agree")
            .is_empty();
    TwistCheck {
        twist_is_homomorphism: twist_ok,
        section_is_homomorphism: section_ok,
        is_crossed_hom: is_crossed_hom(s),
    }
}

pub const GRID_SEARCH_LIMIT: u128 = 10_000_000;

/// All maps `H` with entries drawn from `grid` that are crossed
/// homomorphisms, in lexicographic order of their row-major entries (grid
/// order per entry).
pub fn solve_crossed_homs_grid(g: &LieAlgebra, h: &LieAlgebra, rho: &Action, grid: &[Rational]) -> Result<Vec<Matrix>> {
    rho.validate(g.dim(), h.dim())?;
    let slots = g.dim() * h.dim();
    let base = grid.len() as u128;
    let candidates = base.checked_pow(slots as u32).unwrap_or(u128::MAX);
    if candidates > GRID_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            candidates,
            limit: GRID_SEARCH_LIMIT,
        });
    }
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let found = (0..candidates as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut entries = vec![Rational::zero(); slots];
            for e in entries.iter_mut().rev() {
                *e = grid[(code % base as u64) as usize].clone();
                code /= base as u64;
            }
            let map = Matrix::from_row_major(h.dim(), g.dim(), entries).expect("slot count");
            is_crossed_raw(g, h, rho, &map).then_some(map)
        })
        .collect();
    Ok(found)
}

/// Checks that `(φ_g, φ_h)` is a homomorphism from the crossed homomorphism
/// of `source` to that of `target`: both maps are Lie homomorphisms,
/// `H∘φ_g = φ_h∘H'` and `φ_h(ρ(x)u) = ρ(φ_g x)(φ_h u)`.
pub fn check_morphism(source: &Setup, target: &Setup, phi_g: &Matrix, phi_h: &Matrix) -> Result<Vec<Finding>> {
    let (g, h) = (&target.g, &target.h);
    ensure_dim("source and target g", g.dim(), source.g.dim())?;
    ensure_dim("source and target h", h.dim(), source.h.dim())?;
    let mut out = Vec::new();
    out.extend(g.check_homomorphism(g, phi_g)?.into_iter().map(|f| Finding {
        check: "phi_g_homomorphism".into(),
        ..f
    }));
    out.extend(h.check_homomorphism(h, phi_h)?.into_iter().map(|f| Finding {
        check: "phi_h_homomorphism".into(),
        ..f
    }));
    let lhs = &target.map * phi_g;
    let rhs = phi_h * &source.map;
    for i in 0..g.dim() {
        let r = sub_vec(&lhs.column(i), &rhs.column(i));
        if !is_zero_vec(&r) {
            out.push(Finding::from_vector(
                "intertwines_maps",
                vec![g.name(i).into()],
                h.names(),
                &r,
            ));
        }
    }
    for i in 0..g.dim() {
        let l = phi_h * target.rho.basis(i);
        let r = &target.rho.at(&phi_g.column(i)) * phi_h;
        let d = &l - &r;
        if !d.is_zero() {
            out.push(Finding::new(
                "intertwines_action",
                vec![g.name(i).into()],
                h.label_matrix(&d),
            ));
        }
    }
    Ok(out)
}
