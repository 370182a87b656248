//! Modules over the Witt algebra on `V ⊗ A_n`: the Shen-Larsson modules
//! obtained by pulling back `ρ ⊞ θ` along the canonical crossed
//! homomorphism, and their twists by `H_{p,q}`.

use crate::error::{ensure_dim, Error, Result};
use crate::report::Finding;
use crate::rinehart::GlnRep;
use crate::scalar::{int, Rational};
use crate::sparse::Sparse;
use crate::witt::{crossed_hom_pq, validate_p, window_basis, LaurentPoly, MultiIndex, Window, WittElem};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// An element of `V ⊗ A_n`: a combination of `v_a ⊗ x^s`.
pub type TensorLaurent = Sparse<(usize, MultiIndex)>;

pub fn tensor_label(names: &[String], a: usize, s: &MultiIndex) -> String {
    format!("{} (x) x^{s}", names[a])
}

pub fn tensor_labels(names: &[String], t: &TensorLaurent) -> BTreeMap<String, Rational> {
    t.iter()
        .map(|((a, s), c)| (tensor_label(names, *a, s), c.clone()))
        .collect()
}

/// Multiplication by a Laurent polynomial on the `A_n` factor.
pub fn mul_poly(p: &LaurentPoly, t: &TensorLaurent) -> TensorLaurent {
    let mut out = TensorLaurent::new();
    for (r, c) in p.terms() {
        for ((a, s), d) in t.iter() {
            out.add_term((*a, r.add(s)), c * d);
        }
    }
    out
}

/// A module over `W_n` on `V ⊗ A_n`, given on basis elements.
pub trait WittModule: Sync {
    fn n(&self) -> usize;
    fn v_names(&self) -> &[String];

    /// `(x^r d_i) · (v_a ⊗ x^s)`.
    fn act_basis(&self, r: &MultiIndex, i: usize, a: usize, s: &MultiIndex) -> TensorLaurent;

    fn act(&self, w: &WittElem, t: &TensorLaurent) -> TensorLaurent {
        let mut out = TensorLaurent::new();
        for ((r, i), c) in w.terms() {
            for ((a, s), d) in t.iter() {
                out.add_scaled(&(c * d), &self.act_basis(r, *i, *a, s));
            }
        }
        out
    }
}

/// `(x^r d_i) · (v ⊗ x^s) = s_i v ⊗ x^{r+s} + Σ_k r_k θ(E_ki)v ⊗ x^{r+s}`.
#[derive(Clone, Debug)]
pub struct ShenLarsson {
    theta: GlnRep,
}

impl ShenLarsson {
    pub fn new(n: usize, theta: GlnRep) -> Result<Self> {
        ensure_dim("gl rank of the representation", n, theta.n())?;
        Ok(ShenLarsson { theta })
    }

    pub fn theta(&self) -> &GlnRep {
        &self.theta
    }
}

impl WittModule for ShenLarsson {
    fn n(&self) -> usize {
        self.theta.n()
    }

    fn v_names(&self) -> &[String] {
        self.theta.names()
    }

    fn act_basis(&self, r: &MultiIndex, i: usize, a: usize, s: &MultiIndex) -> TensorLaurent {
        let t = r.add(s);
        let mut out = TensorLaurent::term((a, t.clone()), int(s.get(i)));
        for k in 0..self.n() {
            if r.get(k) == 0 {
                continue;
            }
            let col = self.theta.theta(k, i).column(a);
            for (b, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term((b, t.clone()), c * int(r.get(k)));
                }
            }
        }
        out
    }
}

/// `w · t` for the Shen-Larsson module of `θ`.
pub fn shen_larsson_apply(n: usize, theta: &GlnRep, w: &WittElem, t: &TensorLaurent) -> Result<TensorLaurent> {
    ensure_dim("Witt rank", n, w.n())?;
    let module = ShenLarsson::new(n, theta.clone())?;
    for ((a, s), _) in t.iter() {
        ensure_dim("exponent length", n, s.len())?;
        if *a >= theta.dim() {
            return Err(Error::IndexOutOfRange {
                index: a + 1,
                bound: theta.dim(),
            });
        }
    }
    Ok(module.act(w, t))
}

/// The module `M` with `w` acting as `ρ(w) + H_{p,q}(w)·`.
#[derive(Clone, Debug)]
pub struct PqTwist<M> {
    inner: M,
    p: Vec<LaurentPoly>,
    q: Rational,
}

pub fn twisting_pq<M: WittModule>(p: Vec<LaurentPoly>, q: Rational, inner: M) -> Result<PqTwist<M>> {
    validate_p(inner.n(), &p)?;
    Ok(PqTwist { inner, p, q })
}

impl<M: WittModule> WittModule for PqTwist<M> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn v_names(&self) -> &[String] {
        self.inner.v_names()
    }

    fn act_basis(&self, r: &MultiIndex, i: usize, a: usize, s: &MultiIndex) -> TensorLaurent {
        let w = WittElem::basis(r.clone(), i);
        let hw = crossed_hom_pq(&self.p, &self.q, &w).expect("p validated");
        let t = TensorLaurent::term((a, s.clone()), int(1));
        self.inner.act_basis(r, i, a, s).add(&mul_poly(&hw, &t))
    }
}

/// Basis `v_a ⊗ x^s` with `s` in the window.
pub fn module_window_basis(dim_v: usize, n: usize, window: Window) -> Vec<(usize, MultiIndex)> {
    let exps = window.exponents(n);
    (0..dim_v)
        .flat_map(|a| exps.iter().map(move |s| (a, s.clone())))
        .collect()
}

/// Checks `[u,v]·m = u·(v·m) − v·(u·m)` for all windowed basis pairs
/// `u, v` and module basis elements `m`.
pub fn check_module_axiom_window<M: WittModule>(module: &M, window: Window) -> Vec<Finding> {
    let n = module.n();
    let basis = window_basis(n, window);
    let mbasis = module_window_basis(module.v_names().len(), n, window);
    let names = module.v_names();
    (0..basis.len())
        .into_par_iter()
        .flat_map_iter(|x| {
            let (basis, mbasis) = (&basis, &mbasis);
            (x + 1..basis.len()).flat_map(move |y| {
                let (u, v) = (&basis[x], &basis[y]);
                let uv = crate::witt::witt_bracket(u, v).expect("same n");
                mbasis.iter().filter_map(move |(a, s)| {
                    let m = TensorLaurent::term((*a, s.clone()), int(1));
                    let lhs = module.act(&uv, &m);
                    let rhs = module
                        .act(u, &module.act(v, &m))
                        .sub(&module.act(v, &module.act(u, &m)));
                    let r = lhs.sub(&rhs);
                    (!r.is_zero()).then(|| {
                        Finding::new(
                            "module_axiom",
                            vec![u.to_string(), v.to_string(), tensor_label(names, *a, s)],
                            tensor_labels(names, &r),
                        )
                    })
                })
            })
        })
        .collect()
}

/// Checks `u·(a t) = a(u·t) + u(a) t` for windowed `u`, monomials `a` and
/// module basis elements `t`.
pub fn check_weak_compat_window<M: WittModule>(module: &M, window: Window) -> Vec<Finding> {
    let n = module.n();
    let basis = window_basis(n, window);
    let monomials: Vec<LaurentPoly> = window
        .exponents(n)
        .into_iter()
        .map(|r| LaurentPoly::monomial(r, int(1)))
        .collect();
    let mbasis = module_window_basis(module.v_names().len(), n, window);
    let names = module.v_names();
    basis
        .par_iter()
        .flat_map_iter(|u| {
            let (monomials, mbasis) = (&monomials, &mbasis);
            monomials.iter().flat_map(move |p| {
                let up = u.apply(p);
                mbasis.iter().filter_map(move |(a, s)| {
                    let t = TensorLaurent::term((*a, s.clone()), int(1));
                    let lhs = module.act(u, &mul_poly(p, &t));
                    let rhs = mul_poly(p, &module.act(u, &t)).add(&mul_poly(&up, &t));
                    let r = lhs.sub(&rhs);
                    (!r.is_zero()).then(|| {
                        Finding::new(
                            "weak_compatibility",
                            vec![u.to_string(), p.to_string(), tensor_label(names, *a, s)],
                            tensor_labels(names, &r),
                        )
                    })
                })
            })
        })
        .collect()
}
