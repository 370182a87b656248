//! The Witt algebra `W_n` of derivations of Laurent polynomials, its
//! divergence-free and Hamiltonian subalgebras, and the crossed
//! homomorphisms into `gl_n ⊗ A_n`.
//!
//! Basis elements are `x^r d_i` with `d_i = x_i ∂_i`, so
//! `[x^r d_i, x^s d_j] = s_i x^{r+s} d_j − r_j x^{r+s} d_i`. Direction indices
//! are 0-based in the API and printed 1-based.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::Matrix;
use crate::report::Finding;
use crate::scalar::{int, Rational};
use crate::sparse::Sparse;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(exponents: Vec<i64>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `r_i` as a rational.
    pub(crate) fn q(&self, i: usize) -> Rational {
        int(self.0[i])
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    /// Parses `(1,0,-2)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(MultiIndex(Vec::new()));
        }
        t.split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(MultiIndex)
            .map_err(|_| Error::Invalid(format!("malformed multi-index {s:?}")))
    }
}

/// The exponent box `[-B, B]^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    bound: u32,
}

impl Window {
    pub fn new(bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Invalid("window bound must be at least 1".into()));
        }
        Ok(Window { bound })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn contains(&self, r: &MultiIndex) -> bool {
        r.0.iter().all(|e| e.unsigned_abs() <= self.bound as u64)
    }

    /// All exponents in the box, lexicographically.
    pub fn exponents(&self, n: usize) -> Vec<MultiIndex> {
        let b = self.bound as i64;
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (-b..=b).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

fn monomial_label(r: &MultiIndex) -> String {
    format!("x^{r}")
}

/// An element of `A_n = K[x_1^{±1}, …, x_n^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: Sparse<MultiIndex>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: Sparse::new(),
        }
    }

    pub fn monomial(r: MultiIndex, c: Rational) -> Self {
        LaurentPoly {
            n: r.len(),
            terms: Sparse::term(r, c),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(MultiIndex::zero(n), int(1))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().collect();
        for (r, _) in &terms {
            ensure_dim("Laurent exponent length", n, r.len())?;
        }
        Ok(LaurentPoly {
            n,
            terms: terms.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coef(&self, r: &MultiIndex) -> Rational {
        self.terms.coef(r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.add(&other.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.sub(&other.terms),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.scale(c),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "Laurent polynomials in different rings");
        LaurentPoly {
            n: self.n,
            terms: self.terms.bilinear(&other.terms, |r, s| Sparse::term(r.add(s), int(1))),
        }
    }

    pub fn labels(&self) -> BTreeMap<String, Rational> {
        self.terms.iter().map(|(r, c)| (monomial_label(r), c.clone())).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(r, c)| (monomial_label(r), c)))
    }
}

fn write_sum<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, &'a Rational)>) -> fmt::Result {
    let mut empty = true;
    for (label, c) in terms {
        if !empty {
            write!(f, " + ")?;
        }
        write!(f, "{c}·{label}")?;
        empty = false;
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

/// An element of `W_n`, a combination of `x^r d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElem {
    n: usize,
    terms: Sparse<(MultiIndex, usize)>,
}

pub fn witt_label(r: &MultiIndex, i: usize) -> String {
    format!("x^{r} d_{}", i + 1)
}

impl WittElem {
    pub fn zero(n: usize) -> Self {
        WittElem {
            n,
            terms: Sparse::new(),
        }
    }

    /// `c · x^r d_i`.
    pub fn monomial(r: MultiIndex, i: usize, c: Rational) -> Self {
        assert!(i < r.len(), "direction out of range");
        WittElem {
            n: r.len(),
            terms: Sparse::term((r, i), c),
        }
    }

    pub fn basis(r: MultiIndex, i: usize) -> Self {
        Self::monomial(r, i, int(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn coef(&self, r: &MultiIndex, i: usize) -> Rational {
        self.terms.coef(&(r.clone(), i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        WittElem {
            n: self.n,
            terms: self.terms.add(&other.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WittElem {
            n: self.n,
            terms: self.terms.sub(&other.terms),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WittElem {
            n: self.n,
            terms: self.terms.scale(c),
        }
    }

    /// The derivation applied to a Laurent polynomial: `x^r d_i (x^s) = s_i x^{r+s}`.
    pub fn apply(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .bilinear(&a.terms, |(r, i), s| Sparse::term(r.add(s), s.q(*i))),
        }
    }

    /// The `A_n`-module structure `a · (x^r d_i)`.
    pub fn mul_poly(&self, a: &LaurentPoly) -> WittElem {
        WittElem {
            n: self.n,
            terms: a
                .terms
                .bilinear(&self.terms, |s, (r, i)| Sparse::term((r.add(s), *i), int(1))),
        }
    }

    pub fn labels(&self) -> BTreeMap<String, Rational> {
        self.terms
            .iter()
            .map(|((r, i), c)| (witt_label(r, *i), c.clone()))
            .collect()
    }
}

impl fmt::Display for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|((r, i), c)| (witt_label(r, *i), c)))
    }
}

fn bracket_basis(r: &MultiIndex, i: usize, s: &MultiIndex, j: usize) -> Sparse<(MultiIndex, usize)> {
    let t = r.add(s);
    let mut out = Sparse::term((t.clone(), j), s.q(i));
    out.add_term((t, i), -r.q(j));
    out
}

pub fn witt_bracket(a: &WittElem, b: &WittElem) -> Result<WittElem> {
    ensure_dim("Witt bracket", a.n, b.n)?;
    Ok(WittElem {
        n: a.n,
        terms: a.terms.bilinear(&b.terms, |(r, i), (s, j)| bracket_basis(r, *i, s, *j)),
    })
}

/// `div(x^r d_i) = r_i x^r`.
pub fn divergence(w: &WittElem) -> LaurentPoly {
    LaurentPoly {
        n: w.n,
        terms: w.terms.map_linear(|(r, i)| Sparse::term(r.clone(), r.q(*i))),
    }
}

/// `d_ij(r) = r_j x^r d_i − r_i x^r d_j`.
pub fn s_generator(n: usize, i: usize, j: usize, r: &MultiIndex) -> Result<WittElem> {
    for k in [i, j] {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k + 1, bound: n });
        }
    }
    ensure_dim("exponent length", n, r.len())?;
    let mut w = WittElem::monomial(r.clone(), i, r.q(j));
    w.terms.add_term((r.clone(), j), -r.q(i));
    Ok(w)
}

/// `h(r) = Σ_i (r_{n+i} x^r d_i − r_i x^r d_{n+i}) ∈ W_{2n}`.
pub fn hamiltonian_field(n: usize, r: &MultiIndex) -> Result<WittElem> {
    ensure_dim("Hamiltonian exponent length", 2 * n, r.len())?;
    let mut w = WittElem::zero(2 * n);
    for i in 0..n {
        w.terms.add_term((r.clone(), i), r.q(n + i));
        w.terms.add_term((r.clone(), n + i), -r.q(i));
    }
    Ok(w)
}

/// The coefficient of `[h(r), h(s)] = c · h(r+s)`.
pub fn hamiltonian_structure_constant(n: usize, r: &MultiIndex, s: &MultiIndex) -> Rational {
    (0..n)
        .map(|i| r.q(n + i) * s.q(i) - s.q(n + i) * r.q(i))
        .fold(Rational::zero(), |a, b| a + b)
}

/// An element of `gl_n ⊗ A_n`, a combination of `E_ij ⊗ x^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlLaurent {
    n: usize,
    terms: Sparse<(usize, usize, MultiIndex)>,
}

pub fn gl_label(i: usize, j: usize, r: &MultiIndex) -> String {
    format!("E_{}{} (x) x^{r}", i + 1, j + 1)
}

impl GlLaurent {
    pub fn zero(n: usize) -> Self {
        GlLaurent {
            n,
            terms: Sparse::new(),
        }
    }

    /// `c · E_ij ⊗ x^r`.
    pub fn monomial(i: usize, j: usize, r: MultiIndex, c: Rational) -> Self {
        GlLaurent {
            n: r.len(),
            terms: Sparse::term((i, j, r), c),
        }
    }

    /// `M ⊗ x^r` for an `n × n` matrix `M`.
    pub fn from_matrix(m: &Matrix, r: &MultiIndex) -> Self {
        let mut out = GlLaurent::zero(r.len());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.terms.add_term((i, j, r.clone()), m[(i, j)].clone());
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, MultiIndex), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GlLaurent {
            n: self.n,
            terms: self.terms.add(&other.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GlLaurent {
            n: self.n,
            terms: self.terms.sub(&other.terms),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GlLaurent {
            n: self.n,
            terms: self.terms.scale(c),
        }
    }

    /// `[E_ij ⊗ a, E_kl ⊗ b] = δ_jk E_il ⊗ ab − δ_li E_kj ⊗ ab`.
    pub fn bracket(&self, other: &Self) -> Self {
        GlLaurent {
            n: self.n,
            terms: self.terms.bilinear(&other.terms, |(i, j, r), (k, l, s)| {
                let t = r.add(s);
                let mut out = Sparse::new();
                if j == k {
                    out.add_term((*i, *l, t.clone()), int(1));
                }
                if l == i {
                    out.add_term((*k, *j, t), int(-1));
                }
                out
            }),
        }
    }

    /// The action `α(w)(g ⊗ a) = g ⊗ w(a)`.
    pub fn act_by(&self, w: &WittElem) -> Self {
        GlLaurent {
            n: self.n,
            terms: w.terms.bilinear(&self.terms, |(r, d), (i, j, s)| {
                Sparse::term((*i, *j, r.add(s)), s.q(*d))
            }),
        }
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn exponents(&self) -> BTreeSet<MultiIndex> {
        self.terms.iter().map(|((_, _, r), _)| r.clone()).collect()
    }

    /// The matrix coefficient of `x^r`, of size `size × size`.
    pub fn coefficient(&self, size: usize, r: &MultiIndex) -> Matrix {
        let mut m = Matrix::zeros(size, size);
        for ((i, j, s), c) in self.terms.iter() {
            if s == r {
                m[(*i, *j)] = c.clone();
            }
        }
        m
    }

    pub fn trace(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((i, j, _), _)| i == j)
                .map(|((_, _, r), c)| (r.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn labels(&self) -> BTreeMap<String, Rational> {
        self.terms
            .iter()
            .map(|((i, j, r), c)| (gl_label(*i, *j, r), c.clone()))
            .collect()
    }
}

impl fmt::Display for GlLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|((i, j, r), c)| (gl_label(*i, *j, r), c)))
    }
}

/// `H(x^r d_j) = Σ_i r_i E_ij ⊗ x^r`.
pub fn canonical_crossed_hom_w(w: &WittElem) -> GlLaurent {
    GlLaurent {
        n: w.n,
        terms: w
            .terms
            .map_linear(|(r, j)| (0..r.len()).map(|i| ((i, *j, r.clone()), r.q(i))).collect()),
    }
}

/// The matrix `M` with `H(h(r)) = M ⊗ x^r`: `M_{k,i} = r_k r_{n+i}` and
/// `M_{k,n+i} = −r_k r_i`.
pub fn hamiltonian_matrix(n: usize, r: &MultiIndex) -> Result<Matrix> {
    ensure_dim("Hamiltonian exponent length", 2 * n, r.len())?;
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for k in 0..2 * n {
        for i in 0..n {
            m[(k, i)] = r.q(k) * r.q(n + i);
            m[(k, n + i)] = -(r.q(k) * r.q(i));
        }
    }
    Ok(m)
}

/// `J = [[0, I], [−I, 0]]` of size `2n`.
pub fn symplectic_form(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = int(1);
        j[(n + i, i)] = int(-1);
    }
    j
}

/// `Mᵀ J + J M`, zero exactly when `M ∈ sp_{2n}`.
pub fn symplectic_defect(m: &Matrix) -> Matrix {
    let j = symplectic_form(m.rows() / 2);
    &(&m.transpose() * &j) + &(&j * m)
}

/// Checks that every `p_i` only involves `x_i`.
pub fn validate_p(n: usize, p: &[LaurentPoly]) -> Result<()> {
    ensure_dim("number of p polynomials", n, p.len())?;
    for (i, pi) in p.iter().enumerate() {
        ensure_dim("p polynomial ring", n, pi.n)?;
        let bad = pi
            .terms
            .iter()
            .any(|(r, _)| r.0.iter().enumerate().any(|(k, &e)| k != i && e != 0));
        if bad {
            return Err(Error::MalformedP { index: i + 1 });
        }
    }
    Ok(())
}

fn pq_unchecked(p: &[LaurentPoly], q: &Rational, w: &WittElem) -> LaurentPoly {
    let mut out = LaurentPoly::zero(w.n);
    for ((r, i), c) in w.terms.iter() {
        let x = LaurentPoly::monomial(r.clone(), c.clone());
        out = out.add(&p[*i].mul(&x)).add(&x.scale(&(q * r.q(*i))));
    }
    out
}

/// `H_{p,q}(x^r d_i) = (p_i + q r_i) x^r`.
pub fn crossed_hom_pq(p: &[LaurentPoly], q: &Rational, w: &WittElem) -> Result<LaurentPoly> {
    validate_p(w.n, p)?;
    Ok(pq_unchecked(p, q, w))
}

/// Which subalgebra and crossed homomorphism to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `W_n` with the canonical `H`.
    Full,
    /// `S_n`, spanned by the `d_ij(r)` and the `d_i`.
    DivergenceFree,
    /// `H_n ⊂ W_{2n}` spanned by the `h(r)`.
    Hamiltonian,
    /// `W_n` with `H_{p,q}` into the abelian `A_n`.
    Pq { p: Vec<LaurentPoly>, q: Rational },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Full => "full",
            Family::DivergenceFree => "sdiv",
            Family::Hamiltonian => "ham",
            Family::Pq { .. } => "pq",
        }
    }

    /// Rank of the ambient Witt algebra.
    pub fn ambient(&self, n: usize) -> usize {
        match self {
            Family::Hamiltonian => 2 * n,
            _ => n,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WittReport {
    pub family: String,
    pub n: usize,
    pub window: u32,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub findings: Vec<Finding>,
}

/// The windowed basis of `W_n`.
pub fn window_basis(n: usize, window: Window) -> Vec<WittElem> {
    window
        .exponents(n)
        .into_iter()
        .flat_map(|r| (0..n).map(move |i| WittElem::basis(r.clone(), i)))
        .collect()
}

/// The spanning set of the chosen family with exponents in the window.
pub fn family_basis(n: usize, family: &Family, window: Window) -> Vec<WittElem> {
    match family {
        Family::Full | Family::Pq { .. } => window_basis(n, window),
        Family::DivergenceFree => {
            let mut out: Vec<WittElem> = (0..n).map(|i| WittElem::basis(MultiIndex::zero(n), i)).collect();
            for r in window.exponents(n).into_iter().filter(|r| !r.is_zero()) {
                for i in 0..n {
                    for j in i + 1..n {
                        let w = s_generator(n, i, j, &r).expect("indices in range");
                        if !w.is_zero() {
                            out.push(w);
                        }
                    }
                }
            }
            out
        }
        Family::Hamiltonian => window
            .exponents(2 * n)
            .into_iter()
            .filter(|r| !r.is_zero())
            .map(|r| hamiltonian_field(n, &r).expect("length 2n"))
            .collect(),
    }
}

fn element_label(w: &WittElem) -> String {
    w.to_string()
}

/// Checks `H[u,v] = α(u)(Hv) − α(v)(Hu) + [Hu, Hv]` on every ordered pair of
/// the windowed family, plus the landing conditions of the restricted
/// families (traceless for `S_n`, symplectic for `H_n`).
pub fn verify_witt_crossed_hom(n: usize, family: &Family, window: Window) -> Result<WittReport> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if let Family::Pq { p, .. } = family {
        validate_p(n, p)?;
    }
    let basis = family_basis(n, family, window);
    let mut findings: Vec<Finding> = match family {
        Family::Pq { p, q } => pq_pair_findings(&basis, p, q),
        _ => canonical_pair_findings(&basis),
    };
    let size = family.ambient(n);
    for w in &basis {
        match family {
            Family::DivergenceFree | Family::Hamiltonian => {
                let div = divergence(w);
                if !div.is_zero() {
                    findings.push(Finding::new("divergence", vec![element_label(w)], div.labels()));
                }
                let hw = canonical_crossed_hom_w(w);
                for r in hw.exponents() {
                    let m = hw.coefficient(size, &r);
                    if *family == Family::DivergenceFree {
                        let tr = m.trace();
                        if !tr.is_zero() {
                            let residual = BTreeMap::from([(monomial_label(&r), tr)]);
                            findings.push(Finding::new("traceless", vec![element_label(w)], residual));
                        }
                    } else {
                        let d = symplectic_defect(&m);
                        if !d.is_zero() {
                            let residual = GlLaurent::from_matrix(&d, &r).labels();
                            findings.push(Finding::new("symplectic", vec![element_label(w)], residual));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    Ok(WittReport {
        family: family.name().to_string(),
        n,
        window: window.bound(),
        basis_size: basis.len(),
        pairs_checked: basis.len() * basis.len(),
        findings,
    })
}

fn canonical_pair_findings(basis: &[WittElem]) -> Vec<Finding> {
    let images: Vec<GlLaurent> = basis.iter().map(canonical_crossed_hom_w).collect();
    (0..basis.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let images = &images;
            (0..basis.len()).filter_map(move |b| {
                let (u, v) = (&basis[a], &basis[b]);
                let lhs = canonical_crossed_hom_w(&witt_bracket(u, v).expect("same n"));
                let rhs = images[b]
                    .act_by(u)
                    .sub(&images[a].act_by(v))
                    .add(&images[a].bracket(&images[b]));
                let r = lhs.sub(&rhs);
                (!r.is_zero())
                    .then(|| Finding::new("crossed_hom", vec![element_label(u), element_label(v)], r.labels()))
            })
        })
        .collect()
}

fn pq_pair_findings(basis: &[WittElem], p: &[LaurentPoly], q: &Rational) -> Vec<Finding> {
    let images: Vec<LaurentPoly> = basis.iter().map(|w| pq_unchecked(p, q, w)).collect();
    (0..basis.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let images = &images;
            (0..basis.len()).filter_map(move |b| {
                let (u, v) = (&basis[a], &basis[b]);
                let lhs = pq_unchecked(p, q, &witt_bracket(u, v).expect("same n"));
                let rhs = u.apply(&images[b]).sub(&v.apply(&images[a]));
                let r = lhs.sub(&rhs);
                (!r.is_zero())
                    .then(|| Finding::new("crossed_hom", vec![element_label(u), element_label(v)], r.labels()))
            })
        })
        .collect()
}
