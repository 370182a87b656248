//! The cochain complex `C*(g, h) = ⊕ Hom(Λ^k g, h)`: the differential `d`
//! and derived bracket whose Maurer-Cartan elements are the crossed
//! homomorphisms, the twisted differential `d_{ρ_H}`, cohomology dimensions,
//! linear deformations and Nijenhuis elements.

use crate::error::{ensure_dim, Error, Result};
use crate::lie::{ensure_crossed_hom, induced_action_unchecked, Action, LieAlgebra, Setup, GRID_SEARCH_LIMIT};
use crate::linalg::{axpy, invert, is_zero_vec, rank, sub_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Finding;
use crate::scalar::{frac, int, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Strictly increasing `k`-subsets of `0..n`, lexicographically.
pub fn sorted_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sign of the permutation sorting `idx`, with the sorted tuple; `None` when
/// an index repeats.
fn sort_with_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut inversions = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            match idx[a].cmp(&idx[b]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, sorted))
}

/// An alternating map `Λ^k g → h`, stored on sorted basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    g_dim: usize,
    h_dim: usize,
    values: BTreeMap<Vec<usize>, Vector>,
}

impl Cochain {
    pub fn zero(degree: usize, g_dim: usize, h_dim: usize) -> Self {
        Cochain {
            degree,
            g_dim,
            h_dim,
            values: BTreeMap::new(),
        }
    }

    /// A degree-0 cochain, an element of `h`.
    pub fn from_element(g_dim: usize, u: Vector) -> Self {
        let h_dim = u.len();
        let mut c = Cochain::zero(0, g_dim, h_dim);
        c.set(&[], u).expect("degree 0");
        c
    }

    /// A linear map `g → h` (columns are images of basis vectors) as a
    /// degree-1 cochain.
    pub fn from_map(m: &Matrix) -> Self {
        let mut c = Cochain::zero(1, m.cols(), m.rows());
        for i in 0..m.cols() {
            c.set(&[i], m.column(i)).expect("in range");
        }
        c
    }

    /// The inverse of [`Cochain::from_map`] for degree 1.
    pub fn to_map(&self) -> Result<Matrix> {
        ensure_dim("cochain degree", 1, self.degree)?;
        let cols: Vec<Vector> = (0..self.g_dim).map(|i| self.eval_basis(&[i])).collect();
        Matrix::from_columns(self.h_dim, &cols)
    }

    /// Coordinates in the basis of sorted tuples (lexicographic) times the
    /// basis of `h`.
    pub fn from_flat(degree: usize, g_dim: usize, h_dim: usize, flat: &[Rational]) -> Result<Self> {
        let tuples = sorted_tuples(g_dim, degree);
        ensure_dim("flat cochain", tuples.len() * h_dim, flat.len())?;
        let mut c = Cochain::zero(degree, g_dim, h_dim);
        for (t, tuple) in tuples.iter().enumerate() {
            c.set(tuple, flat[t * h_dim..(t + 1) * h_dim].to_vec())?;
        }
        Ok(c)
    }

    pub fn to_flat(&self) -> Vector {
        sorted_tuples(self.g_dim, self.degree)
            .iter()
            .flat_map(|t| self.eval_basis(t))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    /// Stored values on sorted tuples; zero values are not stored.
    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Sets `f(e_{i_1}, …, e_{i_k})`; the tuple may be unsorted, in which case
    /// the value is stored with the permutation sign.
    pub fn set(&mut self, idx: &[usize], value: Vector) -> Result<()> {
        ensure_dim("cochain arguments", self.degree, idx.len())?;
        ensure_dim("cochain value", self.h_dim, value.len())?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.g_dim) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                bound: self.g_dim,
            });
        }
        let Some((sign, sorted)) = sort_with_sign(idx) else {
            if is_zero_vec(&value) {
                return Ok(());
            }
            return Err(Error::Invalid(
                "alternating cochain must vanish on repeated arguments".into(),
            ));
        };
        if is_zero_vec(&value) {
            self.values.remove(&sorted);
        } else {
            let v = if sign == 1 {
                value
            } else {
                value.iter().map(|x| -x).collect()
            };
            self.values.insert(sorted, v);
        }
        Ok(())
    }

    /// `f(e_{i_1}, …, e_{i_k})` for any index tuple.
    pub fn eval_basis(&self, idx: &[usize]) -> Vector {
        match sort_with_sign(idx) {
            None => zero_vec(self.h_dim),
            Some((sign, sorted)) => match self.values.get(&sorted) {
                None => zero_vec(self.h_dim),
                Some(v) if sign == 1 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
            },
        }
    }

    /// Multilinear evaluation on arbitrary vectors of `g`.
    pub fn eval(&self, args: &[Vector]) -> Result<Vector> {
        ensure_dim("cochain arguments", self.degree, args.len())?;
        for a in args {
            ensure_dim("cochain argument", self.g_dim, a.len())?;
        }
        let mut out = zero_vec(self.h_dim);
        for (tuple, value) in &self.values {
            // Σ over permutations σ of sign(σ) Π args[p][tuple[σ(p)]]
            let c = alternating_coefficient(args, tuple);
            if !c.is_zero() {
                axpy(&mut out, &c, value);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &int(1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &int(-1))
    }

    fn combine(&self, other: &Self, c: &Rational) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.values {
            let mut cur = out.values.remove(t).unwrap_or_else(|| zero_vec(self.h_dim));
            axpy(&mut cur, c, v);
            if !is_zero_vec(&cur) {
                out.values.insert(t.clone(), cur);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Cochain::zero(self.degree, self.g_dim, self.h_dim);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.values {
            out.values.insert(t.clone(), v.iter().map(|x| x * c).collect());
        }
        out
    }

    /// Nonzero values keyed by `(name, …)` of the argument tuple and the
    /// basis of `h`.
    pub fn findings(&self, check: &str, g: &LieAlgebra, h: &LieAlgebra) -> Vec<Finding> {
        self.values
            .iter()
            .map(|(t, v)| Finding::from_vector(check, t.iter().map(|&i| g.name(i).to_string()).collect(), h.names(), v))
            .collect()
    }
}

/// Determinant of the `k × k` matrix `args[p][tuple[q]]`.
fn alternating_coefficient(args: &[Vector], tuple: &[usize]) -> Rational {
    let k = tuple.len();
    if k == 0 {
        return int(1);
    }
    let mut m = Matrix::zeros(k, k);
    for p in 0..k {
        for q in 0..k {
            m[(p, q)] = args[p][tuple[q]].clone();
        }
    }
    determinant(&m)
}

fn determinant(m: &Matrix) -> Rational {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &piv;
            for j in c..n {
                let d = &f * &a[(c, j)];
                a[(i, j)] -= d;
            }
        }
    }
    det
}

fn check_ambient(g: &LieAlgebra, h: &LieAlgebra, f: &Cochain) -> Result<()> {
    ensure_dim("cochain source", g.dim(), f.g_dim)?;
    ensure_dim("cochain target", h.dim(), f.h_dim)
}

/// Arguments with positions `skip` removed.
fn without(args: &[usize], skip: &[usize]) -> Vec<usize> {
    args.iter()
        .enumerate()
        .filter(|(p, _)| !skip.contains(p))
        .map(|(_, &a)| a)
        .collect()
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Evaluates `f(v, e_{rest…})` with `v` a vector in the first slot.
fn eval_first_vector(f: &Cochain, v: &[Rational], rest: &[usize]) -> Vector {
    let mut out = zero_vec(f.h_dim);
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut idx = Vec::with_capacity(rest.len() + 1);
        idx.push(j);
        idx.extend_from_slice(rest);
        axpy(&mut out, c, &f.eval_basis(&idx));
    }
    out
}

/// Builds a cochain of degree `k` from its values on sorted tuples.
fn build(k: usize, g_dim: usize, h_dim: usize, value: impl Fn(&[usize]) -> Vector + Sync) -> Cochain {
    let tuples = sorted_tuples(g_dim, k);
    let vals: Vec<(Vec<usize>, Vector)> = tuples
        .into_par_iter()
        .map(|t| {
            let v = value(&t);
            (t, v)
        })
        .collect();
    let mut c = Cochain::zero(k, g_dim, h_dim);
    for (t, v) in vals {
        if !is_zero_vec(&v) {
            c.values.insert(t, v);
        }
    }
    c
}

/// The differential `d` of degree `+1` whose Maurer-Cartan elements are the
/// crossed homomorphisms:
///
/// ```text
/// (df)(x_1..x_{m+1}) = Σ_i (−1)^{m+i} ρ(x_i) f(..x̂_i..)
///                    + Σ_{i<j} (−1)^{m+i+j−1} f([x_i,x_j], ..x̂_i..x̂_j..)
/// ```
pub fn plain_differential(g: &LieAlgebra, h: &LieAlgebra, rho: &Action, f: &Cochain) -> Result<Cochain> {
    check_ambient(g, h, f)?;
    rho.validate(g.dim(), h.dim())?;
    let m = f.degree;
    Ok(build(m + 1, g.dim(), h.dim(), |x| {
        let mut out = zero_vec(h.dim());
        for i in 0..=m {
            let v = rho.basis(x[i]).mul_vec(&f.eval_basis(&without(x, &[i])));
            axpy(&mut out, &sign(m + i + 1), &v);
        }
        for i in 0..=m {
            for j in i + 1..=m {
                let br = g.bracket_basis(x[i], x[j]);
                let v = eval_first_vector(f, &br, &without(x, &[i, j]));
                axpy(&mut out, &sign(m + i + j + 1), &v);
            }
        }
        out
    }))
}

/// `(m, n)`-shuffles of `0..m+n` as the index set taking the first `m`
/// slots, with the sign of the shuffle.
fn shuffles(m: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    sorted_tuples(m + n, m)
        .into_iter()
        .map(|first| {
            let second: Vec<usize> = (0..m + n).filter(|i| !first.contains(i)).collect();
            let inversions: usize = first.iter().enumerate().map(|(p, &i)| i - p).sum();
            let s = if inversions.is_multiple_of(2) { 1 } else { -1 };
            (first, second, s)
        })
        .collect()
}

/// `⟦f_1, f_2⟧ = (−1)^{mn+1} Σ_σ sign(σ) [f_1(x_σ(1..m)), f_2(x_σ(m+1..))]_h`.
pub fn derived_bracket(h: &LieAlgebra, f1: &Cochain, f2: &Cochain) -> Result<Cochain> {
    ensure_dim("cochain sources", f1.g_dim, f2.g_dim)?;
    ensure_dim("cochain target", h.dim(), f1.h_dim)?;
    ensure_dim("cochain target", h.dim(), f2.h_dim)?;
    let (m, n) = (f1.degree, f2.degree);
    let overall = sign(m * n + 1);
    let sh = shuffles(m, n);
    Ok(build(m + n, f1.g_dim, h.dim(), |x| {
        let mut out = zero_vec(h.dim());
        for (first, second, s) in &sh {
            let a: Vec<usize> = first.iter().map(|&p| x[p]).collect();
            let b: Vec<usize> = second.iter().map(|&p| x[p]).collect();
            let v = h.bracket_raw(&f1.eval_basis(&a), &f2.eval_basis(&b));
            axpy(&mut out, &(&overall * int(*s)), &v);
        }
        out
    }))
}

/// `dH + ½⟦H, H⟧`; its value at `(x, y)` is
/// `ρ(x)Hy − ρ(y)Hx − H[x,y] + [Hx, Hy]`.
pub fn mc_residual(s: &Setup) -> Cochain {
    let hc = Cochain::from_map(s.map());
    let d = plain_differential(s.g(), s.h(), s.rho(), &hc).expect("setup shapes");
    let b = derived_bracket(s.h(), &hc, &hc).expect("setup shapes");
    d.add(&b.scale(&frac(1, 2)))
}

fn ce_unchecked(s: &Setup, rho_h: &Action, f: &Cochain) -> Cochain {
    let (g, h) = (s.g(), s.h());
    let k = f.degree;
    build(k + 1, g.dim(), h.dim(), |x| {
        let mut out = zero_vec(h.dim());
        for i in 0..=k {
            let v = rho_h.basis(x[i]).mul_vec(&f.eval_basis(&without(x, &[i])));
            axpy(&mut out, &sign(i), &v);
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let br = g.bracket_basis(x[i], x[j]);
                let v = eval_first_vector(f, &br, &without(x, &[i, j]));
                axpy(&mut out, &sign(i + j), &v);
            }
        }
        out
    })
}

/// The Chevalley-Eilenberg differential of the representation `ρ_H`:
///
/// ```text
/// d_{ρ_H} f(x_1..x_{k+1}) = Σ_i (−1)^{i+1} (ρ(x_i) + [Hx_i, ·]) f(..x̂_i..)
///                         + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], ..x̂_i..x̂_j..)
/// ```
pub fn ce_differential(s: &Setup, f: &Cochain) -> Result<Cochain> {
    check_ambient(s.g(), s.h(), f)?;
    ensure_crossed_hom(s)?;
    Ok(ce_unchecked(s, &induced_action_unchecked(s), f))
}

/// Whether `d_{ρ_H} f = (−1)^{k−1} (df + ⟦H, f⟧)`.
pub fn sign_relation_check(s: &Setup, f: &Cochain) -> Result<bool> {
    let lhs = ce_differential(s, f)?;
    let d = plain_differential(s.g(), s.h(), s.rho(), f)?;
    let b = derived_bracket(s.h(), &Cochain::from_map(s.map()), f)?;
    // (−1)^{k−1} = (−1)^{k+1}
    let rhs = d.add(&b).scale(&sign(f.degree + 1));
    Ok(lhs == rhs)
}

/// Matrix of `d_{ρ_H}: C^k → C^{k+1}` in the flat cochain bases.
pub fn differential_matrix(s: &Setup, k: usize) -> Result<Matrix> {
    ensure_crossed_hom(s)?;
    let (gd, hd) = (s.g().dim(), s.h().dim());
    let rho_h = induced_action_unchecked(s);
    let src = sorted_tuples(gd, k).len() * hd;
    let dst = sorted_tuples(gd, k + 1).len() * hd;
    let cols: Vec<Vector> = (0..src)
        .into_par_iter()
        .map(|c| {
            let f = Cochain::from_flat(k, gd, hd, &unit_vec(src, c)).expect("flat size");
            ce_unchecked(s, &rho_h, &f).to_flat()
        })
        .collect();
    Matrix::from_columns(dst, &cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub k: usize,
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeDims>,
}

impl CohomologyReport {
    pub fn dim_h(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_h).collect()
    }
}

/// Dimensions of `C^k, Z^k, B^k, H^k` for `k = 0..=k_max`, with `B^0 = 0`.
pub fn cohomology_dims(s: &Setup, k_max: usize) -> Result<CohomologyReport> {
    ensure_crossed_hom(s)?;
    let (gd, hd) = (s.g().dim(), s.h().dim());
    let ranks: Vec<usize> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            if k > gd {
                0
            } else {
                rank(&differential_matrix(s, k).expect("crossed"))
            }
        })
        .collect();
    let degrees = (0..=k_max)
        .map(|k| {
            let dim_c = if k > gd { 0 } else { sorted_tuples(gd, k).len() * hd };
            let dim_z = dim_c - ranks[k];
            let dim_b = if k == 0 { 0 } else { ranks[k - 1] };
            DegreeDims {
                k,
                dim_c,
                dim_z,
                dim_b,
                dim_h: dim_z - dim_b,
            }
        })
        .collect();
    Ok(CohomologyReport { degrees })
}

/// `Φ(f) = φ_h ∘ f ∘ (φ_g^{-1})^{⊗k}`.
pub fn cochain_map_phi(phi_g: &Matrix, phi_h: &Matrix, f: &Cochain) -> Result<Cochain> {
    ensure_dim("phi_g size", f.g_dim, phi_g.cols())?;
    ensure_dim("phi_h size", f.h_dim, phi_h.cols())?;
    let inv = invert(phi_g)?;
    let cols: Vec<Vector> = (0..f.g_dim).map(|i| inv.column(i)).collect();
    let k = f.degree;
    let out_h = phi_h.rows();
    let mut out = Cochain::zero(k, f.g_dim, out_h);
    for t in sorted_tuples(f.g_dim, k) {
        let args: Vec<Vector> = t.iter().map(|&i| cols[i].clone()).collect();
        let v = phi_h.mul_vec(&f.eval(&args)?);
        out.set(&t, v)?;
    }
    Ok(out)
}

/// Failures of the two conditions under which `H + t𝔥` is a crossed
/// homomorphism for every `t`: `𝔥` is a 1-cocycle of `d_{ρ_H}`, and
/// `[𝔥x, 𝔥y] = 0`.
pub fn check_linear_deformation(s: &Setup, frk: &Matrix) -> Result<Vec<Finding>> {
    ensure_crossed_hom(s)?;
    ensure_dim("deformation rows", s.h().dim(), frk.rows())?;
    ensure_dim("deformation cols", s.g().dim(), frk.cols())?;
    let (g, h) = (s.g(), s.h());
    let mut out = ce_differential(s, &Cochain::from_map(frk))?.findings("cocycle", g, h);
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let r = h.bracket_raw(&frk.column(i), &frk.column(j));
            if !is_zero_vec(&r) {
                out.push(Finding::from_vector(
                    "abelian_image",
                    vec![g.name(i).into(), g.name(j).into()],
                    h.names(),
                    &r,
                ));
            }
        }
    }
    Ok(out)
}

/// Per-condition outcome of the Nijenhuis check.
#[derive(Clone, Debug, Serialize)]
pub struct NijenhuisReport {
    pub element: Vec<String>,
    pub conditions: Vec<ConditionResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub name: String,
    pub pass: bool,
    pub first_counterexample: Option<Finding>,
    pub violations: usize,
}

impl NijenhuisReport {
    pub fn is_nijenhuis(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn findings(&self) -> Vec<Finding> {
        self.conditions
            .iter()
            .filter_map(|c| c.first_counterexample.clone())
            .collect()
    }

    pub fn passes(&self, name: &str) -> bool {
        self.conditions.iter().any(|c| c.name == name && c.pass)
    }
}

fn nij_findings(s: &Setup, x: &[Rational]) -> [Vec<Finding>; 4] {
    let (g, h, rho) = (s.g(), s.h(), s.rho());
    let rx = rho.at(x);
    let hx = s.apply_map(x);
    let gn = |i: usize| g.name(i).to_string();
    let hn = |i: usize| h.name(i).to_string();
    let ad_x: Vec<Vector> = (0..g.dim()).map(|i| g.bracket_raw(x, &unit_vec(g.dim(), i))).collect();
    let mut nij1 = Vec::new();
    for y in 0..g.dim() {
        for z in y + 1..g.dim() {
            let r = g.bracket_raw(&ad_x[y], &ad_x[z]);
            if !is_zero_vec(&r) {
                nij1.push(Finding::from_vector("Nij1", vec![gn(y), gn(z)], g.names(), &r));
            }
        }
    }
    let mut nij2 = Vec::new();
    for u in 0..h.dim() {
        for v in u + 1..h.dim() {
            let r = h.bracket_raw(&rx.column(u), &rx.column(v));
            if !is_zero_vec(&r) {
                nij2.push(Finding::from_vector("Nij2", vec![hn(u), hn(v)], h.names(), &r));
            }
        }
    }
    let mut nij3 = Vec::new();
    for (y, adx_y) in ad_x.iter().enumerate() {
        let m = &rho.at(adx_y) * &rx;
        if !m.is_zero() {
            nij3.push(Finding::new(
                "Nij3",
                vec![gn(y)],
                crate::lie::label_matrix(h.names(), h.names(), &m),
            ));
        }
    }
    let mut nij4 = Vec::new();
    for y in 0..g.dim() {
        let mut inner = rho.basis(y).mul_vec(&hx);
        axpy(&mut inner, &int(1), &h.bracket_raw(&s.map().column(y), &hx));
        let r = rx.mul_vec(&inner);
        if !is_zero_vec(&r) {
            nij4.push(Finding::from_vector("Nij4", vec![gn(y)], h.names(), &r));
        }
    }
    [nij1, nij2, nij3, nij4]
}

/// Checks the four Nijenhuis conditions at `x` on all basis choices.
pub fn check_nijenhuis(s: &Setup, x: &[Rational]) -> Result<NijenhuisReport> {
    ensure_dim("element", s.g().dim(), x.len())?;
    ensure_crossed_hom(s)?;
    let names = ["Nij1", "Nij2", "Nij3", "Nij4"];
    let conditions = nij_findings(s, x)
        .into_iter()
        .zip(names)
        .map(|(f, name)| ConditionResult {
            name: name.into(),
            pass: f.is_empty(),
            violations: f.len(),
            first_counterexample: f.into_iter().next(),
        })
        .collect();
    Ok(NijenhuisReport {
        element: x.iter().map(|c| c.to_string()).collect(),
        conditions,
    })
}

/// All grid elements `x` that are Nijenhuis elements, in lexicographic
/// order of coordinates.
pub fn nijenhuis_grid(s: &Setup, grid: &[Rational]) -> Result<Vec<Vector>> {
    ensure_crossed_hom(s)?;
    let n = s.g().dim();
    let base = grid.len() as u128;
    let candidates = base.checked_pow(n as u32).unwrap_or(u128::MAX);
    if candidates > GRID_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            candidates,
            limit: GRID_SEARCH_LIMIT,
        });
    }
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    Ok((0..candidates as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut x = vec![Rational::zero(); n];
            for e in x.iter_mut().rev() {
                *e = grid[(code % base as u64) as usize].clone();
                code /= base as u64;
            }
            nij_findings(s, &x).iter().all(Vec::is_empty).then_some(x)
        })
        .collect())
}

/// `𝔥 = d_{ρ_H}(−Hx)`, i.e. `𝔥(y) = ρ(y)(−Hx) + [Hy, −Hx]`.
pub fn trivial_deformation_generator(s: &Setup, x: &[Rational]) -> Result<Matrix> {
    let report = check_nijenhuis(s, x)?;
    if !report.is_nijenhuis() {
        return Err(Error::NotNijenhuis {
            violations: report.conditions.iter().map(|c| c.violations).sum(),
        });
    }
    let minus_hx: Vector = s.apply_map(x).iter().map(|c| -c).collect();
    let f = ce_differential(s, &Cochain::from_element(s.g().dim(), minus_hx))?;
    f.to_map()
}

/// Checks that `(Id + t ad_x, Id + t ρ(x))` witnesses the equivalence of
/// the deformations generated by `𝔥_1` and `𝔥_2`: the Nijenhuis conditions
/// (Nij1)–(Nij3), `(𝔥_2 − 𝔥_1)(y) = −ρ(y)Hx − [Hy, Hx]` and
/// `𝔥_1[x, y] = ρ(x)𝔥_2(y)`.
pub fn check_deformation_equivalence(s: &Setup, h1: &Matrix, h2: &Matrix, x: &[Rational]) -> Result<Vec<Finding>> {
    ensure_dim("element", s.g().dim(), x.len())?;
    ensure_crossed_hom(s)?;
    for m in [h1, h2] {
        ensure_dim("deformation rows", s.h().dim(), m.rows())?;
        ensure_dim("deformation cols", s.g().dim(), m.cols())?;
    }
    let (g, h, rho) = (s.g(), s.h(), s.rho());
    let [nij1, nij2, nij3, _] = nij_findings(s, x);
    let mut out: Vec<Finding> = nij1.into_iter().chain(nij2).chain(nij3).collect();
    let hx = s.apply_map(x);
    let rx = rho.at(x);
    for y in 0..g.dim() {
        let diff = sub_vec(&h2.column(y), &h1.column(y));
        let mut want: Vector = rho.basis(y).mul_vec(&hx).iter().map(|c| -c).collect();
        axpy(&mut want, &int(-1), &h.bracket_raw(&s.map().column(y), &hx));
        let r = sub_vec(&diff, &want);
        if !is_zero_vec(&r) {
            out.push(Finding::from_vector("deforiso1", vec![g.name(y).into()], h.names(), &r));
        }
        let lhs = h1.mul_vec(&g.bracket_raw(x, &unit_vec(g.dim(), y)));
        let r = sub_vec(&lhs, &rx.mul_vec(&h2.column(y)));
        if !is_zero_vec(&r) {
            out.push(Finding::from_vector("deforiso2", vec![g.name(y).into()], h.names(), &r));
        }
    }
    Ok(out)
}

/// Whether `H` is a crossed homomorphism, decided through the
/// Maurer-Cartan equation.
pub fn is_maurer_cartan(s: &Setup) -> bool {
    mc_residual(s).is_zero()
}
