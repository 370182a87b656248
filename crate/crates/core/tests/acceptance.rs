use crossed::cohomology::{
    ce_differential, check_linear_deformation, check_nijenhuis, cohomology_dims, mc_residual, sign_relation_check,
    sorted_tuples, trivial_deformation_generator, Cochain,
};
use crossed::comm::{power_derivation, truncated_polynomial, GeneralizedWitt};
use crossed::lie::{check_action, check_crossed_hom, solve_crossed_homs_grid, twist_iso_check};
use crossed::linalg::{kernel_basis, rank, vec_from_ints};
use crossed::rinehart::{check_associator, check_unit, natural_rep, GlnRep, LieRinehart};
use crossed::scalar::int;
use crossed::shen::{check_module_axiom_window, check_weak_compat_window, ShenLarsson};
use crossed::witt::{
    canonical_crossed_hom_w, hamiltonian_field, verify_witt_crossed_hom, window_basis, witt_bracket, Family, GlLaurent,
    MultiIndex, Window, WittElem,
};
use crossed::{Action, LieAlgebra, Matrix, Rational, Setup, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit_secs: f64,
    run: fn() -> Outcome,
}

fn grid3() -> Vec<Rational> {
    vec![int(-1), int(0), int(1)]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn two_dim_setup(h: &Matrix) -> Setup {
    Setup::adjoint(LieAlgebra::two_dim(), h.clone()).unwrap()
}

/// All 81 maps with entries in {−1, 0, 1}, split by the closed-form condition
/// `a21 = 0 ∧ (1 + a11) a22 = 0`.
fn example_grid_oracle() -> (Vec<Matrix>, Vec<Matrix>) {
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for a11 in -1..=1i64 {
        for a12 in -1..=1 {
            for a21 in -1..=1 {
                for a22 in -1..=1 {
                    let m = Matrix::from_ints(2, 2, &[a11, a12, a21, a22]);
                    if a21 == 0 && (1 + a11) * a22 == 0 {
                        accepted.push(m);
                    } else {
                        rejected.push(m);
                    }
                }
            }
        }
    }
    (accepted, rejected)
}

fn criterion_1() -> Outcome {
    let g = LieAlgebra::two_dim();
    let found = solve_crossed_homs_grid(&g, &g, &Action::adjoint(&g), &grid3()).map_err(|e| e.to_string())?;
    let (want, _) = example_grid_oracle();
    ensure(want.len() == 15, || format!("oracle has {} maps", want.len()))?;
    let mut a: Vec<String> = found.iter().map(|m| format!("{m:?}")).collect();
    let mut b: Vec<String> = want.iter().map(|m| format!("{m:?}")).collect();
    a.sort();
    b.sort();
    ensure(a == b, || {
        format!("solver returned {} maps, oracle {}", found.len(), want.len())
    })?;
    Ok(format!("{} maps, equal to the closed-form set", found.len()))
}

fn sl2_natural_on_plane() -> Action {
    Action::new(vec![
        Matrix::from_ints(2, 2, &[1, 0, 0, -1]),
        Matrix::from_ints(2, 2, &[0, 1, 0, 0]),
        Matrix::from_ints(2, 2, &[0, 0, 1, 0]),
    ])
}

fn pool() -> Vec<LieAlgebra> {
    vec![
        LieAlgebra::abelian(1),
        LieAlgebra::abelian(2),
        LieAlgebra::abelian(3),
        LieAlgebra::two_dim(),
        LieAlgebra::sl2(),
        LieAlgebra::heisenberg(),
        LieAlgebra::gl(2),
    ]
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, sparse: bool) -> Matrix {
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| {
            if sparse && rng.gen_bool(0.75) {
                0
            } else {
                rng.gen_range(-2..=2)
            }
        })
        .collect();
    Matrix::from_ints(rows, cols, &entries)
}

/// Random setups with dimensions at most 4 and entries in {−2..2}: adjoint,
/// zero and matrix actions, with maps drawn densely, sparsely or as known
/// crossed homomorphisms.
fn random_setups(count: usize, seed: u64) -> Vec<Setup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = pool();
    (0..count)
        .map(|_| {
            let (g, h, rho) = match rng.gen_range(0..4) {
                0 => {
                    let g = pool[rng.gen_range(0..pool.len())].clone();
                    let rho = Action::adjoint(&g);
                    (g.clone(), g, rho)
                }
                1 => {
                    let g = pool[rng.gen_range(0..pool.len())].clone();
                    let h = pool[rng.gen_range(0..pool.len())].clone();
                    let rho = Action::zero(g.dim(), h.dim());
                    (g, h, rho)
                }
                2 => {
                    let k = rng.gen_range(1..=3);
                    let d = random_matrix(&mut rng, k, k, false);
                    let rho = Action::new(vec![Matrix::zeros(k, k), d]);
                    (LieAlgebra::two_dim(), LieAlgebra::abelian(k), rho)
                }
                _ => (LieAlgebra::sl2(), LieAlgebra::abelian(2), sl2_natural_on_plane()),
            };
            let (m, n) = (g.dim(), h.dim());
            let map = match rng.gen_range(0..4) {
                0 => random_matrix(&mut rng, n, m, false),
                1 | 2 => random_matrix(&mut rng, n, m, true),
                _ if m == n && rho == Action::adjoint(&g) => Matrix::identity(n).scale(&int(-1)),
                _ => Matrix::zeros(n, m),
            };
            Setup::new(g, h, rho, map).unwrap()
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let setups = random_setups(200, 0x5eed_0002);
    let mut crossed = 0;
    for (k, s) in setups.iter().enumerate() {
        let violations = check_action(s.g(), s.h(), s.rho()).map_err(|e| e.to_string())?;
        ensure(violations.is_empty(), || format!("setup {k}: invalid action"))?;
        let t = twist_iso_check(s);
        ensure(t.agrees(), || format!("setup {k}: {t:?}"))?;
        if t.is_crossed_hom {
            crossed += 1;
        }
    }
    ensure(crossed > 0 && crossed < setups.len(), || {
        format!("degenerate sample: {crossed} crossed")
    })?;
    Ok(format!(
        "{} setups, {crossed} crossed, {} not",
        setups.len(),
        setups.len() - crossed
    ))
}

/// `Σ_i r_i E_ij ⊗ x^r`, computed term by term.
fn witt_map_oracle(w: &WittElem) -> GlLaurent {
    let mut out = GlLaurent::zero(w.n());
    for ((r, j), c) in w.terms() {
        for i in 0..w.n() {
            out = out.add(&GlLaurent::monomial(i, *j, r.clone(), c * int(r.get(i))));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let window = Window::new(2).unwrap();
    let mut pairs = 0;
    for n in 1..=3 {
        for w in window_basis(n, window) {
            ensure(canonical_crossed_hom_w(&w) == witt_map_oracle(&w), || {
                format!("H({w}) differs from oracle")
            })?;
        }
        let report = verify_witt_crossed_hom(n, &Family::Full, window).map_err(|e| e.to_string())?;
        ensure(report.findings.is_empty(), || {
            format!(
                "n={n}: {} findings, first {}",
                report.findings.len(),
                report.findings[0]
            )
        })?;
        pairs += report.pairs_checked;
    }
    Ok(format!("n=1,2,3, B=2: {pairs} ordered pairs, no violations"))
}

fn criterion_4() -> Outcome {
    let window = Window::new(2).unwrap();
    let sn = verify_witt_crossed_hom(2, &Family::DivergenceFree, window).map_err(|e| e.to_string())?;
    ensure(sn.findings.is_empty(), || format!("S_2: {}", sn.findings[0]))?;
    let hn = verify_witt_crossed_hom(1, &Family::Hamiltonian, window).map_err(|e| e.to_string())?;
    ensure(hn.findings.is_empty(), || format!("H_1: {}", hn.findings[0]))?;
    let r = MultiIndex::new(vec![1, 1]);
    let displayed = Matrix::from_ints(2, 2, &[1, -1, 1, -1]);
    let got = canonical_crossed_hom_w(&hamiltonian_field(1, &r).unwrap());
    ensure(got == GlLaurent::from_matrix(&displayed, &r), || {
        format!("H(h((1,1))) = {got}")
    })?;
    Ok(format!(
        "S_2: {} elements, H_1: {} elements, H(h((1,1))) matches",
        sn.basis_size, hn.basis_size
    ))
}

fn criterion_5() -> Outcome {
    let window = Window::new(2).unwrap();
    let exps = window.exponents(2);
    let mut checked = 0;
    for r in &exps {
        for s in &exps {
            let lhs = witt_bracket(&hamiltonian_field(1, r).unwrap(), &hamiltonian_field(1, s).unwrap())
                .map_err(|e| e.to_string())?;
            let c = r.get(1) * s.get(0) - s.get(1) * r.get(0);
            let rhs = hamiltonian_field(1, &r.add(s)).unwrap().scale(&int(c));
            ensure(lhs == rhs, || format!("[h({r}), h({s})] = {lhs}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn criterion_6() -> Outcome {
    let window = Window::new(2).unwrap();
    let mut runs = 0;
    for n in 1..=2 {
        for (name, theta) in [
            ("trivial", GlnRep::trivial(n)),
            ("natural", GlnRep::natural(n)),
            ("adjoint", GlnRep::adjoint(n)),
        ] {
            let module = ShenLarsson::new(n, theta).map_err(|e| e.to_string())?;
            let law = check_module_axiom_window(&module, window);
            ensure(law.is_empty(), || format!("{name}, n={n}: {}", law[0]))?;
            let weak = check_weak_compat_window(&module, window);
            ensure(weak.is_empty(), || format!("{name}, n={n}: {}", weak[0]))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (theta, n) combinations"))
}

fn finite_models() -> Vec<(String, Setup)> {
    [3usize, 4]
        .iter()
        .map(|&deg| {
            let w = GeneralizedWitt::new(
                truncated_polynomial(&[deg]),
                vec![power_derivation(&[deg], 0, 1).unwrap()],
            )
            .unwrap();
            (format!("generalized Witt on K[x]/(x^{deg})"), w.setup())
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let (accepted, rejected) = example_grid_oracle();
    let mut certified: Vec<(String, Setup)> = accepted
        .iter()
        .map(|m| (format!("grid map {m:?}"), two_dim_setup(m)))
        .collect();
    certified.extend(
        random_setups(200, 0x5eed_0002)
            .into_iter()
            .filter(|s| check_crossed_hom(s).is_empty())
            .map(|s| ("random crossed setup".to_string(), s)),
    );
    certified.extend(finite_models());
    for (label, s) in &certified {
        ensure(check_crossed_hom(s).is_empty(), || format!("{label} is not certified"))?;
        ensure(mc_residual(s).is_zero(), || format!("{label}: nonzero residual"))?;
    }
    for m in &rejected {
        ensure(!mc_residual(&two_dim_setup(m)).is_zero(), || {
            format!("rejected {m:?}: zero residual")
        })?;
    }
    Ok(format!("{} vanish, {} nonzero", certified.len(), rejected.len()))
}

fn cohomology_setups() -> Vec<Setup> {
    let sl2 = LieAlgebra::sl2();
    // H = φ − Id for the automorphism h ↦ −h, e ↦ −f, f ↦ −e
    let omega = Matrix::from_ints(3, 3, &[-2, 0, 0, 0, -1, -1, 0, -1, -1]);
    vec![
        Setup::adjoint(sl2.clone(), Matrix::zeros(3, 3)).unwrap(),
        Setup::adjoint(sl2.clone(), Matrix::identity(3).scale(&int(-1))).unwrap(),
        Setup::adjoint(sl2, omega).unwrap(),
        two_dim_setup(&Matrix::from_ints(2, 2, &[3, -5, 0, 0])),
        two_dim_setup(&Matrix::from_ints(2, 2, &[-1, 2, 0, 1])),
    ]
}

fn criterion_8() -> Outcome {
    let setups = cohomology_setups();
    for s in &setups {
        ensure(check_crossed_hom(s).is_empty(), || {
            "cohomology setup is not crossed".into()
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let count = 80;
    for trial in 0..count {
        let s = &setups[trial % setups.len()];
        let degree = rng.gen_range(0..=3);
        let (gd, hd) = (s.g().dim(), s.h().dim());
        let size = sorted_tuples(gd, degree).len() * hd;
        let flat: Vec<Rational> = (0..size).map(|_| int(rng.gen_range(-2..=2))).collect();
        let f = Cochain::from_flat(degree, gd, hd, &flat).map_err(|e| e.to_string())?;
        let d = ce_differential(s, &f).map_err(|e| e.to_string())?;
        let dd = ce_differential(s, &d).map_err(|e| e.to_string())?;
        ensure(dd.is_zero(), || format!("trial {trial}: d^2 != 0 in degree {degree}"))?;
        ensure(sign_relation_check(s, &f).map_err(|e| e.to_string())?, || {
            format!("trial {trial}: sign relation fails in degree {degree}")
        })?;
    }
    Ok(format!("{count} cochains over {} setups", setups.len()))
}

/// Centre dimension and `dim Der / dim ad(g)` of `sl2` by direct linear
/// algebra on the structure constants.
fn sl2_oracle() -> (usize, usize) {
    let g = LieAlgebra::sl2();
    let n = g.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| g.ad_basis(i)).collect();
    let mut stacked = Vec::new();
    for ad in &ads {
        stacked.extend(ad.to_rows());
    }
    let centre = kernel_basis(&Matrix::from_rows(stacked).unwrap()).len();
    // D[e_i, e_j] = [De_i, e_j] + [e_i, De_j], unknown D[(r, c)] at r*n + c
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let br = g.bracket_basis(i, j);
            for t in 0..n {
                let mut row = vec![int(0); n * n];
                for (k, c) in br.iter().enumerate() {
                    row[t * n + k] += c;
                }
                for k in 0..n {
                    row[k * n + i] -= &g.bracket_basis(k, j)[t];
                    row[k * n + j] -= &g.bracket_basis(i, k)[t];
                }
                rows.push(row);
            }
        }
    }
    let derivations = kernel_basis(&Matrix::from_rows(rows).unwrap()).len();
    let inner_rows: Vec<Vector> = ads.iter().map(|m| m.entries().to_vec()).collect();
    let inner = rank(&Matrix::from_rows(inner_rows).unwrap());
    (centre, derivations - inner)
}

fn criterion_9() -> Outcome {
    let one = LieAlgebra::abelian(1);
    let trivial = Setup::new(one.clone(), one, Action::zero(1, 1), Matrix::zeros(1, 1)).unwrap();
    let a = cohomology_dims(&trivial, 1).map_err(|e| e.to_string())?.dim_h();
    ensure(a == vec![1, 1], || format!("abelian: {a:?}"))?;
    let sl2 = Setup::adjoint(LieAlgebra::sl2(), Matrix::zeros(3, 3)).unwrap();
    let b = cohomology_dims(&sl2, 1).map_err(|e| e.to_string())?.dim_h();
    let (centre, outer) = sl2_oracle();
    ensure(b == vec![centre, outer] && b == vec![0, 0], || {
        format!("sl2: {b:?}, oracle ({centre}, {outer})")
    })?;
    Ok(format!("abelian H^0,H^1 = {a:?}; sl2 H^0,H^1 = {b:?}"))
}

fn grid_points(dim: usize) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vector| {
                grid3().into_iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Nijenhuis elements of criterion 10 with their setups.
fn nijenhuis_suite() -> Result<Vec<(Setup, Vector)>, String> {
    let heis = LieAlgebra::heisenberg();
    let crossed =
        solve_crossed_homs_grid(&heis, &heis, &Action::adjoint(&heis), &grid3()).map_err(|e| e.to_string())?;
    ensure(crossed.len() > 1, || "no nonzero Heisenberg crossed homs".into())?;
    let mut found = Vec::new();
    for h in &crossed {
        let s = Setup::adjoint(heis.clone(), h.clone()).unwrap();
        for x in grid_points(3) {
            let report = check_nijenhuis(&s, &x).map_err(|e| e.to_string())?;
            ensure(report.is_nijenhuis(), || format!("Heisenberg, H={h:?}, x={x:?} fails"))?;
            found.push((s.clone(), x));
        }
    }
    let case_ii = two_dim_setup(&Matrix::from_ints(2, 2, &[-1, 2, 0, 1]));
    let x = vec_from_ints(&[1, 1]);
    ensure(
        check_nijenhuis(&case_ii, &x).map_err(|e| e.to_string())?.is_nijenhuis(),
        || "e1+e2 fails".into(),
    )?;
    found.push((case_ii, x));
    Ok(found)
}

fn criterion_10() -> Outcome {
    let found = nijenhuis_suite()?;
    let sl2 = Setup::adjoint(LieAlgebra::sl2(), Matrix::zeros(3, 3)).unwrap();
    let mut failing = 0;
    for x in grid_points(3).into_iter().filter(|x| x.iter().any(|c| *c != int(0))) {
        let report = check_nijenhuis(&sl2, &x).map_err(|e| e.to_string())?;
        ensure(!report.passes("Nij1"), || format!("sl2: x={x:?} passes Nij1"))?;
        failing += 1;
    }
    ensure(failing == 26, || format!("{failing} sl2 points"))?;
    Ok(format!(
        "{} Nijenhuis elements certified, {failing} sl2 points fail Nij1",
        found.len()
    ))
}

fn criterion_11() -> Outcome {
    let found = nijenhuis_suite()?;
    for (s, x) in &found {
        let frk = trivial_deformation_generator(s, x).map_err(|e| e.to_string())?;
        let f = check_linear_deformation(s, &frk).map_err(|e| e.to_string())?;
        ensure(f.is_empty(), || format!("x={x:?}: {}", f[0]))?;
    }
    Ok(format!("{} trivial deformations certified", found.len()))
}

fn criterion_12() -> Outcome {
    let a = truncated_polynomial(&[2]);
    let der = LieRinehart::derivation_algebra(a.clone()).map_err(|e| e.to_string())?;
    let euler = GeneralizedWitt::new(a, vec![power_derivation(&[2], 0, 1).unwrap()]).map_err(|e| e.to_string())?;
    let witt = LieRinehart::from_generalized_witt(&euler);
    let models = [
        ("Der(A), H = 0", der.clone(), Matrix::zeros(2, 1)),
        ("Der(A), H = 1 + x", der, Matrix::from_ints(2, 1, &[1, 1])),
        ("A (x) Delta, canonical H", witt, euler.crossed_hom_matrix()),
    ];
    let v = GlnRep::natural(1);
    for (label, lr, h) in &models {
        let (m, rho) = natural_rep(lr);
        let assoc = check_associator(lr, &v, &v, &m, &rho, h).map_err(|e| format!("{label}: {e}"))?;
        ensure(assoc.is_empty(), || format!("{label}: {}", assoc[0]))?;
        let unit = check_unit(lr, 1, &m, &rho, h).map_err(|e| format!("{label}: {e}"))?;
        ensure(unit.is_empty(), || format!("{label}: {}", unit[0]))?;
    }
    Ok(format!("{} models, regrouping and unit exact", models.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "grid classification of the 2-dim example",
            limit_secs: 1.0,
            run: criterion_1,
        },
        Criterion {
            id: 2,
            title: "twist isomorphism agrees with crossed-hom check",
            limit_secs: 10.0,
            run: criterion_2,
        },
        Criterion {
            id: 3,
            title: "Witt crossed hom on windows",
            limit_secs: 60.0,
            run: criterion_3,
        },
        Criterion {
            id: 4,
            title: "divergence-free and Hamiltonian landings",
            limit_secs: 10.0,
            run: criterion_4,
        },
        Criterion {
            id: 5,
            title: "Hamiltonian bracket formula",
            limit_secs: 5.0,
            run: criterion_5,
        },
        Criterion {
            id: 6,
            title: "Shen-Larsson module law and weak compatibility",
            limit_secs: 120.0,
            run: criterion_6,
        },
        Criterion {
            id: 7,
            title: "Maurer-Cartan residual characterises crossed homs",
            limit_secs: 10.0,
            run: criterion_7,
        },
        Criterion {
            id: 8,
            title: "d^2 = 0 and sign relation",
            limit_secs: 30.0,
            run: criterion_8,
        },
        Criterion {
            id: 9,
            title: "cohomology dimensions",
            limit_secs: 10.0,
            run: criterion_9,
        },
        Criterion {
            id: 10,
            title: "Nijenhuis suite",
            limit_secs: 10.0,
            run: criterion_10,
        },
        Criterion {
            id: 11,
            title: "trivial deformations from Nijenhuis elements",
            limit_secs: 10.0,
            run: criterion_11,
        },
        Criterion {
            id: 12,
            title: "tensor regrouping and unit coherence",
            limit_secs: 10.0,
            run: criterion_12,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(detail) if secs > c.limit_secs => Err(format!("{detail}; over time limit")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!(
            "[{tag}] criterion {:>2}: {} ({detail}) [exact; {secs:.3}s / {:.0}s]",
            c.id, c.title, c.limit_secs
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
