//! Lie-Rinehart algebras and Leibniz pairs over finite-dimensional
//! commutative algebras, their weak and admissible representations, and the
//! representations `(ρ ⊞ θ) ∘ ι_H` on `V ⊗ M`.

use crate::comm::{gl_tensor, gl_tensor_action, CommAlgebra, GeneralizedWitt};
use crate::error::{ensure_dim, Error, Result};
use crate::lie::{check_crossed_hom, label_matrix, LieAlgebra, Setup};
use crate::linalg::{kernel_basis, solve, sub_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Finding;
use crate::scalar::{int, Rational};
use num_traits::Zero;

/// A module `M` over a commutative algebra `A`, given by the matrices of the
/// basis elements of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure {
    algebra: CommAlgebra,
    names: Vec<String>,
    action: Vec<Matrix>,
}

impl ModuleStructure {
    pub fn new(algebra: CommAlgebra, names: Vec<String>, action: Vec<Matrix>) -> Result<Self> {
        ensure_dim("module action matrices", algebra.dim(), action.len())?;
        for m in &action {
            ensure_dim("module action rows", names.len(), m.rows())?;
            ensure_dim("module action cols", names.len(), m.cols())?;
        }
        Ok(ModuleStructure { algebra, names, action })
    }

    /// `A` acting on itself.
    pub fn regular(algebra: &CommAlgebra) -> Self {
        let action = (0..algebra.dim()).map(|s| algebra.mult_basis(s)).collect();
        ModuleStructure {
            algebra: algebra.clone(),
            names: algebra.names().to_vec(),
            action,
        }
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `a ∈ A` acting on `M`.
    pub fn act(&self, a: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `V ⊗ M` with `A` acting on the second factor; `v_a ⊗ m_b` sits at
    /// `a*dim M + b`.
    pub fn tensor_left(&self, v_names: &[String]) -> Self {
        let names = v_names
            .iter()
            .flat_map(|v| self.names.iter().map(move |m| format!("{v} (x) {m}")))
            .collect();
        let id = Matrix::identity(v_names.len());
        ModuleStructure {
            algebra: self.algebra.clone(),
            names,
            action: self.action.iter().map(|m| id.kron(m)).collect(),
        }
    }

    /// Associativity `a(bm) = (ab)m` and unit failures.
    pub fn check(&self) -> Vec<Finding> {
        let a = &self.algebra;
        let mut out = Vec::new();
        for s in 0..a.dim() {
            for t in s..a.dim() {
                let lhs = &self.action[s] * &self.action[t];
                let rhs = self.act(&a.product_basis(s, t));
                let d = &lhs - &rhs;
                if !d.is_zero() {
                    out.push(Finding::new(
                        "module_associativity",
                        vec![a.name(s).into(), a.name(t).into()],
                        label_matrix(&self.names, &self.names, &d),
                    ));
                }
            }
        }
        if let Some(u) = a.unit() {
            let d = &self.act(u) - &Matrix::identity(self.dim());
            if !d.is_zero() {
                out.push(Finding::new(
                    "module_unit",
                    vec![],
                    label_matrix(&self.names, &self.names, &d),
                ));
            }
        }
        out
    }
}

/// Failures of `D(am) = aD(m) + σ(a)m` together with the derivation
/// property of `σ`.
pub fn check_first_order(m: &ModuleStructure, d: &Matrix, sigma: &Matrix) -> Result<Vec<Finding>> {
    ensure_dim("operator rows", m.dim(), d.rows())?;
    ensure_dim("operator cols", m.dim(), d.cols())?;
    let a = m.algebra();
    let mut out = a.check_derivation(sigma, "sigma")?;
    for s in 0..a.dim() {
        let r = &(&(d * &m.action[s]) - &(&m.action[s] * d)) - &m.act(&sigma.column(s));
        if !r.is_zero() {
            out.push(Finding::new(
                "first_order",
                vec![a.name(s).into()],
                label_matrix(m.names(), m.names(), &r),
            ));
        }
    }
    Ok(out)
}

/// A Lie algebra with an anchor into the derivations of a commutative
/// algebra.
pub trait Anchored {
    fn algebra(&self) -> &CommAlgebra;
    fn lie(&self) -> &LieAlgebra;
    fn anchor(&self) -> &[Matrix];

    /// `α(x)` for a coordinate vector `x`.
    fn anchor_at(&self, x: &[Rational]) -> Matrix {
        let n = self.algebra().dim();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in x.iter().zip(self.anchor()) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }
}

fn check_anchor_shapes(algebra: &CommAlgebra, lie: &LieAlgebra, anchor: &[Matrix]) -> Result<()> {
    ensure_dim("anchor matrices", lie.dim(), anchor.len())?;
    for d in anchor {
        ensure_dim("anchor rows", algebra.dim(), d.rows())?;
        ensure_dim("anchor cols", algebra.dim(), d.cols())?;
    }
    Ok(())
}

/// Derivation and Lie homomorphism failures of the anchor.
fn anchor_findings<T: Anchored + ?Sized>(p: &T) -> Vec<Finding> {
    let (a, lie) = (p.algebra(), p.lie());
    let mut out = Vec::new();
    for (k, d) in p.anchor().iter().enumerate() {
        out.extend(a.check_derivation(d, lie.name(k)).expect("shapes checked"));
    }
    for k in 0..lie.dim() {
        for l in k + 1..lie.dim() {
            let lhs = p.anchor_at(&lie.bracket_basis(k, l));
            let rhs = p.anchor()[k].commutator(&p.anchor()[l]);
            let d = &lhs - &rhs;
            if !d.is_zero() {
                out.push(Finding::new(
                    "anchor_homomorphism",
                    vec![lie.name(k).into(), lie.name(l).into()],
                    label_matrix(a.names(), a.names(), &d),
                ));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehart {
    algebra: CommAlgebra,
    lie: LieAlgebra,
    module: ModuleStructure,
    anchor: Vec<Matrix>,
}

impl Anchored for LieRinehart {
    fn algebra(&self) -> &CommAlgebra {
        &self.algebra
    }
    fn lie(&self) -> &LieAlgebra {
        &self.lie
    }
    fn anchor(&self) -> &[Matrix] {
        &self.anchor
    }
}

impl LieRinehart {
    /// `module_action[s]` is the matrix of `a_s` acting on `L`.
    pub fn new(algebra: CommAlgebra, lie: LieAlgebra, module_action: Vec<Matrix>, anchor: Vec<Matrix>) -> Result<Self> {
        check_anchor_shapes(&algebra, &lie, &anchor)?;
        let module = ModuleStructure::new(algebra.clone(), lie.names().to_vec(), module_action)?;
        Ok(LieRinehart {
            algebra,
            lie,
            module,
            anchor,
        })
    }

    /// The sub-Lie-Rinehart algebra of `Der(A)` spanned by linearly
    /// independent derivations, with the inclusion as anchor. The span must
    /// be closed under commutators and multiplication by `A`.
    pub fn from_derivations(algebra: CommAlgebra, derivations: Vec<Matrix>, names: Vec<String>) -> Result<Self> {
        let n = algebra.dim();
        ensure_dim("derivation names", derivations.len(), names.len())?;
        for (k, d) in derivations.iter().enumerate() {
            ensure_dim("derivation rows", n, d.rows())?;
            ensure_dim("derivation cols", n, d.cols())?;
            if !algebra.is_derivation(d) {
                return Err(Error::NotDerivation { index: k + 1 });
            }
        }
        let flat: Vec<Vector> = derivations.iter().map(|d| d.entries().to_vec()).collect();
        let span = Matrix::from_columns(n * n, &flat)?;
        if crate::linalg::rank(&span) != derivations.len() {
            return Err(Error::Invalid("derivations are linearly dependent".into()));
        }
        let coords = |m: &Matrix, what: &str| -> Result<Vector> {
            solve(&span, m.entries())?
                .ok_or_else(|| Error::Invalid(format!("span of derivations is not closed under {what}")))
        };
        let mut lie = LieAlgebra::abelian_named(names);
        for k in 0..derivations.len() {
            for l in k + 1..derivations.len() {
                lie.set_bracket(k, l, coords(&derivations[k].commutator(&derivations[l]), "brackets")?)?;
            }
        }
        let mut module_action = Vec::new();
        for s in 0..n {
            let a = algebra.mult_basis(s);
            let cols = derivations
                .iter()
                .map(|d| coords(&(&a * d), "multiplication by A"))
                .collect::<Result<Vec<_>>>()?;
            module_action.push(Matrix::from_columns(derivations.len(), &cols)?);
        }
        LieRinehart::new(algebra, lie, module_action, derivations)
    }

    /// `Der(A)` on a basis of the solution space of the derivation equations.
    pub fn derivation_algebra(algebra: CommAlgebra) -> Result<Self> {
        let derivations = derivations_of(&algebra);
        let names = (1..=derivations.len()).map(|k| format!("D{k}")).collect();
        LieRinehart::from_derivations(algebra, derivations, names)
    }

    pub fn from_generalized_witt(w: &GeneralizedWitt) -> Self {
        LieRinehart::new(w.algebra().clone(), w.lie().clone(), w.module_action(), w.anchor())
            .expect("consistent shapes")
    }

    pub fn module(&self) -> &ModuleStructure {
        &self.module
    }

    /// Forget the `A`-module structure on `L`.
    pub fn to_leibniz_pair(&self) -> LeibnizPair {
        LeibnizPair {
            algebra: self.algebra.clone(),
            lie: self.lie.clone(),
            beta: self.anchor.clone(),
        }
    }

    /// `(L; ad)`, a weak representation that is in general not strict.
    pub fn adjoint_rep(&self) -> (ModuleStructure, Vec<Matrix>) {
        (
            self.module.clone(),
            (0..self.lie.dim()).map(|k| self.lie.ad_basis(k)).collect(),
        )
    }
}

/// A basis of `Der(A)`, as the kernel of the linearized Leibniz rule.
pub fn derivations_of(a: &CommAlgebra) -> Vec<Matrix> {
    let n = a.dim();
    // unknown D has entries D[(r, c)] at r*n + c; one equation per (i ≤ j, r)
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let prod = a.product_basis(i, j);
            let mut eqs = vec![zero_vec(n * n); n];
            for (c, pc) in prod.iter().enumerate() {
                for (r, eq) in eqs.iter_mut().enumerate() {
                    eq[r * n + c] += pc;
                }
            }
            // − D(e_i) e_j − e_i D(e_j)
            for (c, idx) in [(i, j), (j, i)] {
                let mult = a.mult_basis(idx);
                for k in 0..n {
                    for (r, eq) in eqs.iter_mut().enumerate() {
                        eq[k * n + c] -= &mult[(r, k)];
                    }
                }
            }
            rows.extend(eqs);
        }
    }
    if rows.is_empty() {
        return (0..n * n)
            .map(|k| Matrix::from_row_major(n, n, unit_vec(n * n, k)).expect("shape"))
            .collect();
    }
    let system = Matrix::from_rows(rows).expect("rectangular");
    kernel_basis(&system)
        .into_iter()
        .map(|v| Matrix::from_row_major(n, n, v).expect("shape"))
        .collect()
}

/// Every invariant of a Lie-Rinehart algebra on basis tuples.
pub fn check_lie_rinehart(lr: &LieRinehart) -> Vec<Finding> {
    let (a, lie) = (&lr.algebra, &lr.lie);
    let mut out = lie.check_jacobi();
    out.extend(lr.module.check());
    out.extend(anchor_findings(lr));
    for s in 0..a.dim() {
        for k in 0..lie.dim() {
            // α(a_s e_k) = a_s α(e_k)
            let lhs = lr.anchor_at(&lr.module.action[s].column(k));
            let rhs = &a.mult_basis(s) * &lr.anchor[k];
            let d = &lhs - &rhs;
            if !d.is_zero() {
                out.push(Finding::new(
                    "anchor_a_linear",
                    vec![a.name(s).into(), lie.name(k).into()],
                    label_matrix(a.names(), a.names(), &d),
                ));
            }
        }
    }
    for k in 0..lie.dim() {
        for s in 0..a.dim() {
            for l in 0..lie.dim() {
                // [e_k, a_s e_l] − a_s [e_k, e_l] − α(e_k)(a_s) e_l
                let lhs = lie.bracket_raw(&unit_vec(lie.dim(), k), &lr.module.action[s].column(l));
                let t1 = lr.module.action[s].mul_vec(&lie.bracket_basis(k, l));
                let t2 = lr.module.act(&lr.anchor[k].column(s)).column(l);
                let r = sub_vec(&sub_vec(&lhs, &t1), &t2);
                if !crate::linalg::is_zero_vec(&r) {
                    out.push(Finding::from_vector(
                        "leibniz",
                        vec![lie.name(k).into(), a.name(s).into(), lie.name(l).into()],
                        lie.names(),
                        &r,
                    ));
                }
            }
        }
    }
    out
}

fn rep_findings<T: Anchored + ?Sized>(p: &T, m: &ModuleStructure, rho: &[Matrix]) -> Result<Vec<Finding>> {
    let (a, lie) = (p.algebra(), p.lie());
    ensure_dim("module algebra", a.dim(), m.algebra().dim())?;
    ensure_dim("representation matrices", lie.dim(), rho.len())?;
    for r in rho {
        ensure_dim("representation rows", m.dim(), r.rows())?;
        ensure_dim("representation cols", m.dim(), r.cols())?;
    }
    let names = m.names();
    let mut out = Vec::new();
    for k in 0..lie.dim() {
        for l in k + 1..lie.dim() {
            let mut lhs = Matrix::zeros(m.dim(), m.dim());
            for (c, r) in lie.bracket_basis(k, l).iter().zip(rho) {
                if !c.is_zero() {
                    lhs = &lhs + &r.scale(c);
                }
            }
            let d = &lhs - &rho[k].commutator(&rho[l]);
            if !d.is_zero() {
                out.push(Finding::new(
                    "representation_homomorphism",
                    vec![lie.name(k).into(), lie.name(l).into()],
                    label_matrix(names, names, &d),
                ));
            }
        }
    }
    for (k, rho_k) in rho.iter().enumerate() {
        for s in 0..a.dim() {
            // ρ(x)(a m) − a ρ(x) m − α(x)(a) m
            let d = &(&(rho_k * &m.action()[s]) - &(&m.action()[s] * rho_k)) - &m.act(&p.anchor()[k].column(s));
            if !d.is_zero() {
                out.push(Finding::new(
                    "compatibility",
                    vec![lie.name(k).into(), a.name(s).into()],
                    label_matrix(names, names, &d),
                ));
            }
        }
    }
    Ok(out)
}

/// Weak representation axioms; with `strict` also `ρ(ax) = aρ(x)`.
pub fn check_weak_rep(lr: &LieRinehart, m: &ModuleStructure, rho: &[Matrix], strict: bool) -> Result<Vec<Finding>> {
    let mut out = rep_findings(lr, m, rho)?;
    if strict {
        let a = &lr.algebra;
        for s in 0..a.dim() {
            for k in 0..lr.lie.dim() {
                let mut lhs = Matrix::zeros(m.dim(), m.dim());
                for (c, r) in lr.module.action[s].column(k).iter().zip(rho) {
                    if !c.is_zero() {
                        lhs = &lhs + &r.scale(c);
                    }
                }
                let d = &lhs - &(&m.action()[s] * &rho[k]);
                if !d.is_zero() {
                    out.push(Finding::new(
                        "a_linearity",
                        vec![a.name(s).into(), lr.lie.name(k).into()],
                        label_matrix(m.names(), m.names(), &d),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// `(A; α)`.
pub fn natural_rep<T: Anchored + ?Sized>(p: &T) -> (ModuleStructure, Vec<Matrix>) {
    (ModuleStructure::regular(p.algebra()), p.anchor().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizPair {
    algebra: CommAlgebra,
    lie: LieAlgebra,
    beta: Vec<Matrix>,
}

impl Anchored for LeibnizPair {
    fn algebra(&self) -> &CommAlgebra {
        &self.algebra
    }
    fn lie(&self) -> &LieAlgebra {
        &self.lie
    }
    fn anchor(&self) -> &[Matrix] {
        &self.beta
    }
}

impl LeibnizPair {
    pub fn new(algebra: CommAlgebra, lie: LieAlgebra, beta: Vec<Matrix>) -> Result<Self> {
        check_anchor_shapes(&algebra, &lie, &beta)?;
        Ok(LeibnizPair { algebra, lie, beta })
    }
}

/// Jacobi of `S`, and `β` being a Lie homomorphism into `Der(A)`.
pub fn check_leibniz_pair(p: &LeibnizPair) -> Vec<Finding> {
    let mut out = p.lie.check_jacobi();
    out.extend(anchor_findings(p));
    out
}

/// Lie homomorphism and `ρ(x)(am) = aρ(x)m + β(x)(a)m`.
pub fn check_admissible_rep(p: &LeibnizPair, m: &ModuleStructure, rho: &[Matrix]) -> Result<Vec<Finding>> {
    rep_findings(p, m, rho)
}

/// The action Lie-Rinehart algebra `S ⊗ A`; `x_k ⊗ a_s` sits at
/// `k*dim A + s`.
pub fn action_lie_rinehart(p: &LeibnizPair) -> Result<LieRinehart> {
    let violations = check_leibniz_pair(p).len();
    if violations > 0 {
        return Err(Error::InvalidPair { violations });
    }
    let (a, s_alg) = (&p.algebra, &p.lie);
    let (da, ds) = (a.dim(), s_alg.dim());
    let names = (0..ds)
        .flat_map(|k| (0..da).map(move |s| (k, s)))
        .map(|(k, s)| format!("{} (x) {}", s_alg.name(k), a.name(s)))
        .collect();
    let tensor =
        |x: &[Rational], y: &[Rational]| -> Vector { x.iter().flat_map(|c| y.iter().map(move |d| c * d)).collect() };
    let mut lie = LieAlgebra::abelian_named(names);
    for u in 0..ds * da {
        for v in u + 1..ds * da {
            let (k, s) = (u / da, u % da);
            let (l, t) = (v / da, v % da);
            let (es, et) = (unit_vec(da, s), unit_vec(da, t));
            // [x,y] ⊗ ab + y ⊗ aβ(x)b − x ⊗ bβ(y)a
            let mut w = tensor(&s_alg.bracket_basis(k, l), &a.mul(&es, &et));
            let t2 = tensor(&unit_vec(ds, l), &a.mul(&es, &p.beta[k].column(t)));
            let t3 = tensor(&unit_vec(ds, k), &a.mul(&et, &p.beta[l].column(s)));
            crate::linalg::axpy(&mut w, &int(1), &t2);
            crate::linalg::axpy(&mut w, &int(-1), &t3);
            lie.set_bracket(u, v, w)?;
        }
    }
    let module_action = (0..da).map(|s| Matrix::identity(ds).kron(&a.mult_basis(s))).collect();
    let anchor = (0..ds * da).map(|u| &a.mult_basis(u % da) * &p.beta[u / da]).collect();
    LieRinehart::new(a.clone(), lie, module_action, anchor)
}

/// `ρ̄(x ⊗ a) = aρ(x)` on the basis of `S ⊗ A`.
pub fn extend_admissible(p: &LeibnizPair, m: &ModuleStructure, rho: &[Matrix]) -> Result<Vec<Matrix>> {
    ensure_dim("representation matrices", p.lie.dim(), rho.len())?;
    ensure_dim("module algebra", p.algebra.dim(), m.algebra().dim())?;
    Ok((0..p.lie.dim() * p.algebra.dim())
        .map(|u| &m.action()[u % p.algebra.dim()] * &rho[u / p.algebra.dim()])
        .collect())
}

/// A representation of `gl_n`; `θ(E_ij)` is stored at `i*n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlnRep {
    n: usize,
    names: Vec<String>,
    theta: Vec<Matrix>,
}

impl GlnRep {
    pub fn new(n: usize, names: Vec<String>, theta: Vec<Matrix>) -> Result<Self> {
        ensure_dim("gl representation matrices", n * n, theta.len())?;
        for t in &theta {
            ensure_dim("gl representation rows", names.len(), t.rows())?;
            ensure_dim("gl representation cols", names.len(), t.cols())?;
        }
        Ok(GlnRep { n, names, theta })
    }

    /// One-dimensional, every `E_ij` acting as zero.
    pub fn trivial(n: usize) -> Self {
        GlnRep {
            n,
            names: vec!["1".into()],
            theta: vec![Matrix::zeros(1, 1); n * n],
        }
    }

    pub fn natural(n: usize) -> Self {
        let theta = (0..n * n)
            .map(|k| {
                let mut m = Matrix::zeros(n, n);
                m[(k / n, k % n)] = int(1);
                m
            })
            .collect();
        GlnRep {
            n,
            names: (1..=n).map(|i| format!("v{i}")).collect(),
            theta,
        }
    }

    pub fn adjoint(n: usize) -> Self {
        let gl = LieAlgebra::gl(n);
        GlnRep {
            n,
            names: gl.names().to_vec(),
            theta: (0..n * n).map(|k| gl.ad_basis(k)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `θ(E_ij)`, 0-based.
    pub fn theta(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.n + j]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.theta
    }

    /// `θ_1 ⊗ 1 + 1 ⊗ θ_2` on `V_1 ⊗ V_2`.
    pub fn tensor(&self, other: &GlnRep) -> Result<GlnRep> {
        ensure_dim("gl rank of tensor factors", self.n, other.n)?;
        let (i1, i2) = (Matrix::identity(self.dim()), Matrix::identity(other.dim()));
        let names = self
            .names
            .iter()
            .flat_map(|a| other.names.iter().map(move |b| format!("{a} (x) {b}")))
            .collect();
        let theta = self
            .theta
            .iter()
            .zip(&other.theta)
            .map(|(a, b)| &a.kron(&i2) + &i1.kron(b))
            .collect();
        Ok(GlnRep {
            n: self.n,
            names,
            theta,
        })
    }

    /// Failures of the `gl_n` commutation relations.
    pub fn check(&self) -> Vec<Finding> {
        let n = self.n;
        let gl = LieAlgebra::gl(n);
        let mut out = Vec::new();
        for a in 0..n * n {
            for b in a + 1..n * n {
                let mut lhs = Matrix::zeros(self.dim(), self.dim());
                for (c, t) in gl.bracket_basis(a, b).iter().zip(&self.theta) {
                    if !c.is_zero() {
                        lhs = &lhs + &t.scale(c);
                    }
                }
                let d = &self.theta[a].commutator(&self.theta[b]) - &lhs;
                if !d.is_zero() {
                    out.push(Finding::new(
                        "gl_relation",
                        vec![gl.name(a).into(), gl.name(b).into()],
                        label_matrix(&self.names, &self.names, &d),
                    ));
                }
            }
        }
        out
    }
}

/// A module together with representation matrices for a Lie algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub module: ModuleStructure,
    pub rho: Vec<Matrix>,
}

/// `(g, gl_n ⊗ A, α, H)` for an anchored algebra.
pub fn anchored_setup<T: Anchored + ?Sized>(p: &T, n: usize, h: &Matrix) -> Result<Setup> {
    Setup::new(
        p.lie().clone(),
        gl_tensor(n, p.algebra()),
        gl_tensor_action(n, p.anchor()),
        h.clone(),
    )
}

/// `(ρ ⊞ θ) ∘ ι_H` on `V ⊗ M`:
/// `x · (v ⊗ m) = v ⊗ ρ(x)m + Σ H(x)_{ij,s} θ(E_ij)v ⊗ a_s m`.
pub fn boxplus_pullback<T: Anchored + ?Sized>(
    p: &T,
    theta: &GlnRep,
    m: &ModuleStructure,
    rho: &[Matrix],
    h: &Matrix,
) -> Result<Rep> {
    let lie = p.lie();
    ensure_dim("representation matrices", lie.dim(), rho.len())?;
    ensure_dim("module algebra", p.algebra().dim(), m.algebra().dim())?;
    let setup = anchored_setup(p, theta.n, h)?;
    let violations = check_crossed_hom(&setup).len();
    if violations > 0 {
        return Err(Error::NotCrossedHom { violations });
    }
    let da = p.algebra().dim();
    let id_v = Matrix::identity(theta.dim());
    let out = (0..lie.dim())
        .map(|k| {
            let mut acc = id_v.kron(&rho[k]);
            for (idx, c) in h.column(k).iter().enumerate() {
                if !c.is_zero() {
                    let (ij, s) = (idx / da, idx % da);
                    acc = &acc + &theta.theta[ij].kron(&m.action()[s]).scale(c);
                }
            }
            acc
        })
        .collect();
    Ok(Rep {
        module: m.tensor_left(theta.names()),
        rho: out,
    })
}

/// Permutation matrix sending `(v_1 ⊗ v_2) ⊗ m` to `v_1 ⊗ (v_2 ⊗ m)`.
pub fn regrouping(d1: usize, d2: usize, dm: usize) -> Matrix {
    let size = d1 * d2 * dm;
    let mut p = Matrix::zeros(size, size);
    for a in 0..d1 {
        for b in 0..d2 {
            for c in 0..dm {
                let left = (a * d2 + b) * dm + c;
                let right = a * (d2 * dm) + (b * dm + c);
                p[(right, left)] = int(1);
            }
        }
    }
    p
}

/// Failures of `map ∘ a_k = b_k ∘ map`.
pub fn check_intertwiner(a: &[Matrix], b: &[Matrix], map: &Matrix, labels: &[String]) -> Vec<Finding> {
    let rows: Vec<String> = (1..=map.rows()).map(|i| format!("b{i}")).collect();
    let cols: Vec<String> = (1..=map.cols()).map(|i| format!("a{i}")).collect();
    a.iter()
        .zip(b)
        .enumerate()
        .filter_map(|(k, (x, y))| {
            let d = &(map * x) - &(y * map);
            (!d.is_zero()).then(|| Finding::new("intertwiner", vec![labels[k].clone()], label_matrix(&rows, &cols, &d)))
        })
        .collect()
}

/// Compares the actions on `(V_1 ⊗ V_2) ⊗ M` and `V_1 ⊗ (V_2 ⊗ M)` under
/// regrouping, for the representation matrices and the `A`-actions.
pub fn check_associator<T: Anchored + ?Sized>(
    p: &T,
    theta1: &GlnRep,
    theta2: &GlnRep,
    m: &ModuleStructure,
    rho: &[Matrix],
    h: &Matrix,
) -> Result<Vec<Finding>> {
    let left = boxplus_pullback(p, &theta1.tensor(theta2)?, m, rho, h)?;
    let inner = boxplus_pullback(p, theta2, m, rho, h)?;
    let right = boxplus_pullback(p, theta1, &inner.module, &inner.rho, h)?;
    let perm = regrouping(theta1.dim(), theta2.dim(), m.dim());
    let mut out = check_intertwiner(&left.rho, &right.rho, &perm, p.lie().names());
    out.extend(check_intertwiner(
        left.module.action(),
        right.module.action(),
        &perm,
        p.algebra().names(),
    ));
    Ok(out)
}

/// With `V = K` trivial, the pulled back action must equal `ρ`.
pub fn check_unit<T: Anchored + ?Sized>(
    p: &T,
    n: usize,
    m: &ModuleStructure,
    rho: &[Matrix],
    h: &Matrix,
) -> Result<Vec<Finding>> {
    let unit = boxplus_pullback(p, &GlnRep::trivial(n), m, rho, h)?;
    let id = Matrix::identity(m.dim());
    let mut out = check_intertwiner(&unit.rho, rho, &id, p.lie().names());
    out.extend(check_intertwiner(
        unit.module.action(),
        m.action(),
        &id,
        p.algebra().names(),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comm::{power_derivation, truncated_polynomial};

    fn euler_witt(deg: usize) -> GeneralizedWitt {
        GeneralizedWitt::new(
            truncated_polynomial(&[deg]),
            vec![power_derivation(&[deg], 0, 1).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn derivation_algebras() {
        let der3 = LieRinehart::derivation_algebra(truncated_polynomial(&[3])).unwrap();
        assert_eq!(der3.lie().dim(), 2);
        assert!(check_lie_rinehart(&der3).is_empty());
        let der2 = LieRinehart::derivation_algebra(truncated_polynomial(&[2])).unwrap();
        assert_eq!(der2.lie().dim(), 1);
        assert!(check_lie_rinehart(&der2).is_empty());
    }

    #[test]
    fn lie_a_algebra_with_zero_anchor() {
        let a = truncated_polynomial(&[2]);
        let lie = LieAlgebra::abelian(2);
        let module = (0..2).map(|s| Matrix::identity(1).kron(&a.mult_basis(s))).collect();
        let lr = LieRinehart::new(a, lie, module, vec![Matrix::zeros(2, 2); 2]).unwrap();
        assert!(check_lie_rinehart(&lr).is_empty());
    }

    #[test]
    fn broken_leibniz_is_reported() {
        let w = euler_witt(3);
        let lr = LieRinehart::from_generalized_witt(&w);
        assert!(check_lie_rinehart(&lr).is_empty());
        let mut broken = lr.clone();
        broken.lie = LieAlgebra::abelian_named(lr.lie().names().to_vec());
        let report = check_lie_rinehart(&broken);
        assert!(report.iter().any(|f| f.check == "leibniz"));
    }

    #[test]
    fn weak_rep_examples() {
        let lr = LieRinehart::from_generalized_witt(&euler_witt(3));
        let (m, ad) = lr.adjoint_rep();
        assert!(check_weak_rep(&lr, &m, &ad, false).unwrap().is_empty());
        let strict = check_weak_rep(&lr, &m, &ad, true).unwrap();
        assert!(strict.iter().any(|f| f.check == "a_linearity"));
        let (m, alpha) = natural_rep(&lr);
        assert!(check_weak_rep(&lr, &m, &alpha, true).unwrap().is_empty());
        assert!(matches!(
            check_weak_rep(&lr, &m, &alpha[..1], false),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn leibniz_pair_examples() {
        let lr = LieRinehart::from_generalized_witt(&euler_witt(3));
        let pair = lr.to_leibniz_pair();
        assert!(check_leibniz_pair(&pair).is_empty());
        let (m, beta) = natural_rep(&pair);
        assert!(check_admissible_rep(&pair, &m, &beta).unwrap().is_empty());
        let zero = vec![Matrix::zeros(3, 3); beta.len()];
        assert!(!check_admissible_rep(&pair, &m, &zero).unwrap().is_empty());
        let (m, ad) = lr.adjoint_rep();
        assert!(check_admissible_rep(&pair, &m, &ad).unwrap().is_empty());
        let bad = LeibnizPair::new(
            truncated_polynomial(&[3]),
            LieAlgebra::abelian(1),
            vec![power_derivation(&[3], 0, 0).unwrap()],
        )
        .unwrap();
        assert!(check_leibniz_pair(&bad).iter().any(|f| f.check == "derivation"));
        assert!(matches!(action_lie_rinehart(&bad), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn action_lie_rinehart_examples() {
        let a = truncated_polynomial(&[2]);
        let zero = LeibnizPair::new(a.clone(), LieAlgebra::sl2(), vec![Matrix::zeros(2, 2); 3]).unwrap();
        let lr = action_lie_rinehart(&zero).unwrap();
        assert!(check_lie_rinehart(&lr).is_empty());
        // [e ⊗ x, f ⊗ 1] = h ⊗ x
        assert_eq!(lr.lie().bracket_basis(3, 4), unit_vec(6, 1));
        let pair = LeibnizPair::new(
            a.clone(),
            LieAlgebra::abelian(1),
            vec![power_derivation(&[2], 0, 1).unwrap()],
        )
        .unwrap();
        let lr = action_lie_rinehart(&pair).unwrap();
        assert!(!lr.lie().is_abelian());
        assert!(check_lie_rinehart(&lr).is_empty());
        let (m, beta) = natural_rep(&pair);
        let ext = extend_admissible(&pair, &m, &beta).unwrap();
        assert!(check_weak_rep(&lr, &m, &ext, true).unwrap().is_empty());
    }

    #[test]
    fn gl_reps_satisfy_relations() {
        for n in 1..=3 {
            assert!(GlnRep::trivial(n).check().is_empty());
            assert!(GlnRep::natural(n).check().is_empty());
            assert!(GlnRep::adjoint(n).check().is_empty());
        }
        let t = GlnRep::natural(2).tensor(&GlnRep::natural(2)).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.check().is_empty());
    }

    #[test]
    fn boxplus_on_finite_model() {
        let w = euler_witt(2);
        let lr = LieRinehart::from_generalized_witt(&w);
        let h = w.crossed_hom_matrix();
        assert!(!h.is_zero());
        let (m, alpha) = natural_rep(&lr);
        let theta = GlnRep::natural(1);
        let rep = boxplus_pullback(&lr, &theta, &m, &alpha, &h).unwrap();
        assert!(check_weak_rep(&lr, &rep.module, &rep.rho, false).unwrap().is_empty());
        assert!(check_unit(&lr, 1, &m, &alpha, &h).unwrap().is_empty());
        let two = GlnRep::natural(1).tensor(&GlnRep::adjoint(1)).unwrap();
        assert!(check_associator(&lr, &two, &theta, &m, &alpha, &h).unwrap().is_empty());
        let bad = Matrix::from_ints(2, 2, &[0, 1, 0, 0]);
        assert!(matches!(
            boxplus_pullback(&lr, &theta, &m, &alpha, &bad),
            Err(Error::NotCrossedHom { .. })
        ));
    }

    #[test]
    fn zero_crossed_hom_acts_on_m_only() {
        let lr = LieRinehart::derivation_algebra(truncated_polynomial(&[2])).unwrap();
        let (m, alpha) = natural_rep(&lr);
        let theta = GlnRep::natural(2);
        let h = Matrix::zeros(4 * 2, 1);
        let rep = boxplus_pullback(&lr, &theta, &m, &alpha, &h).unwrap();
        assert_eq!(rep.rho[0], Matrix::identity(2).kron(&alpha[0]));
    }

    #[test]
    fn first_order_operators() {
        let a = truncated_polynomial(&[3]);
        let m = ModuleStructure::regular(&a);
        let d = power_derivation(&[3], 0, 1).unwrap();
        assert!(check_first_order(&m, &d, &d).unwrap().is_empty());
        let shifted = &d + &Matrix::identity(3);
        assert!(check_first_order(&m, &shifted, &d).unwrap().is_empty());
        assert!(!check_first_order(&m, &shifted, &Matrix::zeros(3, 3))
            .unwrap()
            .is_empty());
        assert!(m.check().is_empty());
    }
}
