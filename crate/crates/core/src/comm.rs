//! Finite-dimensional commutative algebras, their derivations, the
//! generalized Witt algebra `W_m(A, Δ)` and the crossed homomorphism into
//! `gl_m ⊗ A`.

use crate::error::{ensure_dim, Error, Result};
use crate::lie::{Action, LieAlgebra, Setup};
use crate::linalg::{axpy, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Finding;
use crate::scalar::{int, Rational};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    names: Vec<String>,
    /// `e_i · e_j` for `i ≤ j`; absent pairs multiply to zero.
    structure: BTreeMap<(usize, usize), Vector>,
    unit: Option<Vector>,
}

impl CommAlgebra {
    /// The algebra with all products zero.
    pub fn null(names: Vec<String>) -> Self {
        CommAlgebra {
            names,
            structure: BTreeMap::new(),
            unit: None,
        }
    }

    /// The field itself, basis `1`.
    pub fn field() -> Self {
        truncated_polynomial(&[])
    }

    pub fn set_product(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        let n = self.dim();
        ensure_dim("product value", n, value.len())?;
        for k in [i, j] {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k + 1, bound: n });
            }
        }
        let key = (i.min(j), i.max(j));
        if is_zero_vec(&value) {
            self.structure.remove(&key);
        } else {
            self.structure.insert(key, value);
        }
        Ok(())
    }

    pub fn set_unit(&mut self, unit: Option<Vector>) -> Result<()> {
        if let Some(u) = &unit {
            ensure_dim("unit", self.dim(), u.len())?;
        }
        self.unit = unit;
        Ok(())
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

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    /// Nonzero products, `i ≤ j`.
    pub fn structure(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.structure.iter()
    }

    pub fn product_basis(&self, i: usize, j: usize) -> Vector {
        self.structure
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(|| zero_vec(self.dim()))
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (&(i, j), v) in &self.structure {
            let mut c = &a[i] * &b[j];
            if i != j {
                c += &a[j] * &b[i];
            }
            axpy(&mut out, &c, v);
        }
        out
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &unit_vec(n, j))).collect();
        Matrix::from_columns(n, &cols).expect("square by construction")
    }

    pub fn mult_basis(&self, i: usize) -> Matrix {
        self.mult_matrix(&unit_vec(self.dim(), i))
    }

    /// Associativity failures on basis triples, and unit failures.
    pub fn check(&self) -> Vec<Finding> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&self.product_basis(i, j), &unit_vec(n, k));
                    let rhs = self.mul(&unit_vec(n, i), &self.product_basis(j, k));
                    let r = sub_vec(&lhs, &rhs);
                    if !is_zero_vec(&r) {
                        out.push(Finding::from_vector(
                            "associativity",
                            vec![self.names[i].clone(), self.names[j].clone(), self.names[k].clone()],
                            &self.names,
                            &r,
                        ));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let r = sub_vec(&self.mul(u, &unit_vec(n, i)), &unit_vec(n, i));
                if !is_zero_vec(&r) {
                    out.push(Finding::from_vector(
                        "unit",
                        vec![self.names[i].clone()],
                        &self.names,
                        &r,
                    ));
                }
            }
        }
        out
    }

    /// Failures of `D(ab) = D(a)b + aD(b)` on basis pairs.
    pub fn check_derivation(&self, d: &Matrix, label: &str) -> Result<Vec<Finding>> {
        ensure_dim("derivation rows", self.dim(), d.rows())?;
        ensure_dim("derivation cols", self.dim(), d.cols())?;
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let lhs = d.mul_vec(&self.product_basis(i, j));
                let mut rhs = self.mul(&d.column(i), &unit_vec(n, j));
                axpy(&mut rhs, &int(1), &self.mul(&unit_vec(n, i), &d.column(j)));
                let r = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&r) {
                    out.push(Finding::from_vector(
                        "derivation",
                        vec![label.to_string(), self.names[i].clone(), self.names[j].clone()],
                        &self.names,
                        &r,
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        self.check_derivation(d, "D").map(|f| f.is_empty()).unwrap_or(false)
    }
}

/// Exponent vectors of the monomial basis of `K[x_1..x_k]/(x_1^{d_1}, …)`,
/// lexicographic in the exponents.
pub fn truncated_exponents(degrees: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in degrees {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..d).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

fn variable_name(k: usize, count: usize) -> String {
    if count == 1 {
        "x".to_string()
    } else {
        format!("x{}", k + 1)
    }
}

fn monomial_name(exps: &[usize]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| {
            let v = variable_name(k, exps.len());
            if e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// `K[x_1, …, x_k]/(x_1^{d_1}, …, x_k^{d_k})` on its monomial basis, unital.
pub fn truncated_polynomial(degrees: &[usize]) -> CommAlgebra {
    let basis = truncated_exponents(degrees);
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = basis.len();
    let mut alg = CommAlgebra::null(basis.iter().map(|e| monomial_name(e)).collect());
    for i in 0..n {
        for j in i..n {
            let sum: Vec<usize> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if let Some(&k) = index.get(&sum) {
                alg.set_product(i, j, unit_vec(n, k)).expect("in range");
            }
        }
    }
    if n > 0 {
        let one = index[&vec![0; degrees.len()]];
        alg.set_unit(Some(unit_vec(n, one))).expect("in range");
    }
    alg
}

/// The derivation `x_k^p ∂/∂x_k` of a truncated polynomial algebra; it is a
/// derivation for `p ≥ 1`, and `p = 1` is the Euler derivation `x_k ∂/∂x_k`.
pub fn power_derivation(degrees: &[usize], k: usize, p: usize) -> Result<Matrix> {
    if k >= degrees.len() {
        return Err(Error::IndexOutOfRange {
            index: k + 1,
            bound: degrees.len(),
        });
    }
    let basis = truncated_exponents(degrees);
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let n = basis.len();
    let mut d = Matrix::zeros(n, n);
    for (col, e) in basis.iter().enumerate() {
        if e[k] == 0 {
            continue;
        }
        let mut t = e.clone();
        t[k] = e[k] - 1 + p;
        if let Some(&row) = index.get(&t) {
            d[(row, col)] = int(e[k] as i64);
        }
    }
    Ok(d)
}

/// `gl_m ⊗ A` as a Lie algebra; `E_ij ⊗ a_s` sits at `(i*m + j)*dim A + s`.
pub fn gl_tensor(m: usize, a: &CommAlgebra) -> LieAlgebra {
    let da = a.dim();
    let size = m * m * da;
    let names = (0..m * m)
        .flat_map(|ij| (0..da).map(move |s| (ij, s)))
        .map(|(ij, s)| format!("E{}{} (x) {}", ij / m + 1, ij % m + 1, a.name(s)))
        .collect();
    let mut out = LieAlgebra::abelian_named(names);
    for x in 0..size {
        for y in x + 1..size {
            let (ij, s) = (x / da, x % da);
            let (kl, t) = (y / da, y % da);
            let (i, j, k, l) = (ij / m, ij % m, kl / m, kl % m);
            let prod = a.product_basis(s, t);
            let mut v = zero_vec(size);
            if j == k {
                let base = (i * m + l) * da;
                axpy(&mut v[base..base + da], &int(1), &prod);
            }
            if l == i {
                let base = (k * m + j) * da;
                axpy(&mut v[base..base + da], &int(-1), &prod);
            }
            out.set_bracket(x, y, v).expect("gl tensor structure constants");
        }
    }
    out
}

/// The action `α(x)(g ⊗ a) = g ⊗ α(x)(a)` of anchor matrices on `gl_m ⊗ A`.
pub fn gl_tensor_action(m: usize, anchor: &[Matrix]) -> Action {
    Action::new(anchor.iter().map(|d| Matrix::identity(m * m).kron(d)).collect())
}

/// `W_m(A, Δ) = A ⊗ span(Δ)` with `[a∂, bδ] = a∂(b)δ − bδ(a)∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedWitt {
    algebra: CommAlgebra,
    delta: Vec<Matrix>,
    lie: LieAlgebra,
}

impl GeneralizedWitt {
    /// `a_s ∂_i` sits at index `i*dim A + s`.
    pub fn new(algebra: CommAlgebra, delta: Vec<Matrix>) -> Result<Self> {
        for (i, d) in delta.iter().enumerate() {
            ensure_dim("derivation rows", algebra.dim(), d.rows())?;
            ensure_dim("derivation cols", algebra.dim(), d.cols())?;
            if !algebra.check_derivation(d, "D")?.is_empty() {
                return Err(Error::NotDerivation { index: i + 1 });
            }
        }
        for i in 0..delta.len() {
            for j in i + 1..delta.len() {
                if !delta[i].commutator(&delta[j]).is_zero() {
                    return Err(Error::NotCommuting(i + 1, j + 1));
                }
            }
        }
        let (m, da) = (delta.len(), algebra.dim());
        let names = (0..m)
            .flat_map(|i| (0..da).map(move |s| (i, s)))
            .map(|(i, s)| {
                if m == 1 {
                    format!("{} D", algebra.name(s))
                } else {
                    format!("{} D{}", algebra.name(s), i + 1)
                }
            })
            .collect();
        let mut lie = LieAlgebra::abelian_named(names);
        for x in 0..m * da {
            for y in x + 1..m * da {
                let (i, s) = (x / da, x % da);
                let (j, t) = (y / da, y % da);
                let mut v = zero_vec(m * da);
                // a ∂_i(b) δ_j − b δ_j(a) ∂_i
                let t1 = algebra.mul(&unit_vec(da, s), &delta[i].column(t));
                let t2 = algebra.mul(&unit_vec(da, t), &delta[j].column(s));
                axpy(&mut v[j * da..(j + 1) * da], &int(1), &t1);
                axpy(&mut v[i * da..(i + 1) * da], &int(-1), &t2);
                lie.set_bracket(x, y, v).expect("generalized Witt structure constants");
            }
        }
        Ok(GeneralizedWitt { algebra, delta, lie })
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.algebra
    }

    pub fn delta(&self) -> &[Matrix] {
        &self.delta
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn rank(&self) -> usize {
        self.delta.len()
    }

    /// Anchor: `a ∂_i` acts on `A` as `a · ∂_i`.
    pub fn anchor(&self) -> Vec<Matrix> {
        let da = self.algebra.dim();
        (0..self.rank())
            .flat_map(|i| (0..da).map(move |s| (i, s)))
            .map(|(i, s)| &self.algebra.mult_basis(s) * &self.delta[i])
            .collect()
    }

    /// Matrices of the `A`-module structure on `W_m(A, Δ)`.
    pub fn module_action(&self) -> Vec<Matrix> {
        (0..self.algebra.dim())
            .map(|s| Matrix::identity(self.rank()).kron(&self.algebra.mult_basis(s)))
            .collect()
    }

    /// `H(Σ a_i ∂_i) = Σ_{i,j} E_ij ⊗ ∂_i(a_j)` evaluated on a coordinate
    /// vector of `W_m(A, Δ)`; the result is in `gl_m ⊗ A` coordinates.
    pub fn crossed_hom_apply(&self, x: &[Rational]) -> Result<Vector> {
        let (m, da) = (self.rank(), self.algebra.dim());
        ensure_dim("generalized Witt element", m * da, x.len())?;
        let mut out = zero_vec(m * m * da);
        for j in 0..m {
            let aj = &x[j * da..(j + 1) * da];
            for i in 0..m {
                let base = (i * m + j) * da;
                axpy(&mut out[base..base + da], &int(1), &self.delta[i].mul_vec(aj));
            }
        }
        Ok(out)
    }

    pub fn crossed_hom_matrix(&self) -> Matrix {
        let n = self.lie.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|k| self.crossed_hom_apply(&unit_vec(n, k)).expect("dimension"))
            .collect();
        Matrix::from_columns(self.rank() * self.rank() * self.algebra.dim(), &cols).expect("shape")
    }

    /// `(W_m(A,Δ), gl_m ⊗ A, α, H)`.
    pub fn setup(&self) -> Setup {
        let m = self.rank();
        Setup::new(
            self.lie.clone(),
            gl_tensor(m, &self.algebra),
            gl_tensor_action(m, &self.anchor()),
            self.crossed_hom_matrix(),
        )
        .expect("consistent shapes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{check_action, check_crossed_hom};
    use crate::linalg::vec_from_ints;

    #[test]
    fn truncated_polynomial_structure() {
        let a = truncated_polynomial(&[3]);
        assert_eq!(a.names(), ["1", "x", "x^2"]);
        assert!(a.check().is_empty());
        assert_eq!(a.product_basis(1, 1), vec_from_ints(&[0, 0, 1]));
        assert!(is_zero_vec(&a.product_basis(1, 2)));
        let b = truncated_polynomial(&[2, 2]);
        assert_eq!(b.names(), ["1", "x2", "x1", "x1 x2"]);
        assert!(b.check().is_empty());
        assert_eq!(CommAlgebra::field().dim(), 1);
    }

    #[test]
    fn power_derivations() {
        let a = truncated_polynomial(&[3]);
        assert!(a.is_derivation(&power_derivation(&[3], 0, 1).unwrap()));
        assert!(a.is_derivation(&power_derivation(&[3], 0, 2).unwrap()));
        // d/dx itself is not a derivation of K[x]/(x^3)
        assert!(!a.is_derivation(&power_derivation(&[3], 0, 0).unwrap()));
    }

    #[test]
    fn generalized_witt_examples() {
        let a = truncated_polynomial(&[3]);
        let w = GeneralizedWitt::new(a.clone(), vec![power_derivation(&[3], 0, 1).unwrap()]).unwrap();
        let lie = w.lie();
        assert!(lie.check_jacobi().is_empty());
        assert_eq!(lie.bracket_basis(0, 1), vec_from_ints(&[0, 1, 0]));
        assert_eq!(lie.bracket_basis(0, 2), vec_from_ints(&[0, 0, 2]));
        assert!(is_zero_vec(&lie.bracket_basis(1, 2)));
        let z = GeneralizedWitt::new(a, vec![Matrix::zeros(3, 3)]).unwrap();
        assert!(z.lie().is_abelian());
        let one = GeneralizedWitt::new(CommAlgebra::field(), vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(one.lie().dim(), 1);
    }

    #[test]
    fn generalized_witt_guards() {
        let a = truncated_polynomial(&[3]);
        let dx = power_derivation(&[3], 0, 0).unwrap();
        assert!(matches!(
            GeneralizedWitt::new(a, vec![dx]),
            Err(Error::NotDerivation { index: 1 })
        ));
        let b = truncated_polynomial(&[3]);
        let e = power_derivation(&[3], 0, 1).unwrap();
        let f = power_derivation(&[3], 0, 2).unwrap();
        assert!(matches!(
            GeneralizedWitt::new(b, vec![e, f]),
            Err(Error::NotCommuting(1, 2))
        ));
    }

    #[test]
    fn generalized_witt_crossed_hom() {
        let a = truncated_polynomial(&[3]);
        let w = GeneralizedWitt::new(a, vec![power_derivation(&[3], 0, 1).unwrap()]).unwrap();
        // x^2 D ↦ E11 ⊗ 2x^2
        assert_eq!(
            w.crossed_hom_apply(&vec_from_ints(&[0, 0, 1])).unwrap(),
            vec_from_ints(&[0, 0, 2])
        );
        assert!(is_zero_vec(&w.crossed_hom_apply(&vec_from_ints(&[5, 0, 0])).unwrap()));
        for degrees in [vec![3], vec![4], vec![2, 2]] {
            let a = truncated_polynomial(&degrees);
            let delta = (0..degrees.len())
                .map(|k| power_derivation(&degrees, k, 1).unwrap())
                .collect();
            let s = GeneralizedWitt::new(a, delta).unwrap().setup();
            assert!(check_action(s.g(), s.h(), s.rho()).unwrap().is_empty());
            assert!(check_crossed_hom(&s).is_empty());
        }
    }
}
