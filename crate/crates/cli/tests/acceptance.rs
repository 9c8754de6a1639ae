//! End-to-end acceptance checks, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL` line with its timing.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hodge_core::domain::describe_domain;
use hodge_core::higgs::{
    check_commutation, pointwise_rank, random_commuting_higgs, rank_one_lemma_check, HiggsField,
    LemmaVerdict, SamplingStrategy,
};
use hodge_core::horizontal::{
    isotropic_tuple_dimension, stabilizer_dimension, su22_embedding, verify_pu2n_criterion,
};
use hodge_core::intlin::{integer_kernel, same_lattice};
use hodge_core::pi2::{class_of_root, pi2_report, pi_u_star, relation_closure, Pi2Class};
use hodge_core::rootcalc::{bracket_generating_check, parabolic_from_ranks};
use hodge_core::spheremesh::{build_colored_mesh, subdivided_octahedron};
use hodge_core::{sampling, HodgeNumbers, Matrix};

fn criterion(id: u32, limit_secs: u64, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(limit_secs);
    let (ok, detail) = match &outcome {
        Ok(d) => (in_time, d.clone()),
        Err(d) => (false, d.clone()),
    };
    println!(
        "criterion {id}: {} ({detail}; {:.2}s of {limit_secs}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(outcome.is_ok(), "criterion {id}: {detail}");
    assert!(in_time, "criterion {id} took {elapsed:?}, limit {limit_secs}s");
}

fn hn(r: &[usize]) -> HodgeNumbers {
    HodgeNumbers::new(r.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_01_dimension_identities() {
    criterion(1, 1, || {
        for n in 1..=8 {
            let d = describe_domain(&hn(&[1, n, 1]));
            ensure(d.dim_du == 2 * n + 1, || format!("n={n}: dim {}", d.dim_du))?;
            ensure(d.horizontal_rank == 2 * n, || format!("n={n}: horizontal {}", d.horizontal_rank))?;
        }
        Ok("n = 1..8".into())
    });
}

#[test]
fn criterion_02_pi2_calculus() {
    criterion(2, 30, || {
        let tuples = HodgeNumbers::enumerate_up_to(8);
        let mut roots = 0;
        for ranks in &tuples {
            let k = ranks.k();
            let report = pi2_report(ranks);
            ensure(report.rank_du == k && report.rank_d == k - 1, || {
                format!("{ranks}: ranks {} {}", report.rank_du, report.rank_d)
            })?;
            // Independent kernel of Σ(−1)^i a_i from the Smith normal form.
            let row: Vec<i64> = (0..k).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
            let kernel = integer_kernel(&vec![row], k);
            let classes: Vec<Vec<i64>> = report.kernel_classes.iter().map(|c| c.coords().to_vec()).collect();
            ensure(classes.len() == kernel.len() && same_lattice(&classes, &kernel), || {
                format!("{ranks}: kernel lattice differs")
            })?;
            ensure(report.kernel_classes.iter().all(|c| pi_u_star(c) == 0), || {
                format!("{ranks}: kernel class not killed")
            })?;
            let pd = parabolic_from_ranks(ranks);
            let oracle = relation_closure(&pd).map_err(|e| format!("{ranks}: {e}"))?;
            for r in &pd.n_roots {
                roots += 1;
                let closed: Pi2Class = class_of_root(r, &pd).map_err(|e| e.to_string())?;
                ensure(oracle[r] == closed, || format!("{ranks}: mismatch at {:?}", r.coords()))?;
            }
        }
        Ok(format!("{} tuples, {roots} roots, 0 mismatches", tuples.len()))
    });
}

#[test]
fn criterion_03_bracket_generation() {
    criterion(3, 30, || {
        let mut count = 0;
        for pieces in 2..=6 {
            for ranks in HodgeNumbers::enumerate_bounded(pieces, 3) {
                let b = bracket_generating_check(&parabolic_from_ranks(&ranks));
                ensure(b.generated, || format!("{ranks} is not bracket generated"))?;
                count += 1;
            }
        }
        Ok(format!("{count} tuples"))
    });
}

#[test]
fn criterion_04_pu2n_regularity() {
    criterion(4, 60, || {
        let mut found = Vec::new();
        for n in 2..=4 {
            let s = verify_pu2n_criterion(n, 10_000, 2024).map_err(|e| e.to_string())?;
            ensure(s.mismatches == 0, || format!("n={n}: {} mismatches", s.mismatches))?;
            ensure(s.found_regular_isotropic, || format!("n={n}: no regular isotropic plane"))?;
            found.push(s.regular_isotropic);
        }
        Ok(format!("3 x 10^4 planes, regular isotropic found {found:?}"))
    });
}

#[test]
fn criterion_05_n1_obstruction() {
    criterion(5, 20, || {
        let s = verify_pu2n_criterion(1, 10_000, 2024).map_err(|e| e.to_string())?;
        ensure(s.regular_isotropic == 0, || format!("{} regular isotropic", s.regular_isotropic))?;
        ensure(s.isotropic_not_line == 0, || format!("{} isotropic non-lines", s.isotropic_not_line))?;
        ensure(s.mismatches == 0, || format!("{} mismatches", s.mismatches))?;
        Ok(format!("{} isotropic samples, all complex lines", s.isotropic))
    });
}

#[test]
fn criterion_06_stabilizer_dimensions() {
    criterion(6, 1, || {
        for n in 1..=10 {
            for k in 1..=n {
                let s = stabilizer_dimension(n, k).map_err(|e| e.to_string())?;
                ensure(s.stab_dim + s.orbit_dim == n * (2 * n + 1), || format!("n={n} k={k}: sum"))?;
                ensure(s.orbit_dim == 2 * n * k - k * (k - 1) / 2, || format!("n={n} k={k}: orbit"))?;
                ensure(s.orbit_dim == isotropic_tuple_dimension(n, k), || format!("n={n} k={k}: tuple"))?;
            }
        }
        Ok("1 <= k <= n <= 10".into())
    });
}

/// Every entry of a `(2,1,2)` field with two directions in `{−1, 0, 1}`.
fn grid_field(code: usize) -> HiggsField {
    let mut digits = [0i64; 8];
    let mut c = code;
    for d in &mut digits {
        *d = (c % 3) as i64 - 1;
        c /= 3;
    }
    let theta0 = (0..2).map(|a| Matrix::from_int_rows(&[&[digits[2 * a], digits[2 * a + 1]]])).collect();
    let theta1 = (0..2)
        .map(|a| Matrix::from_int_rows(&[&[digits[4 + 2 * a]], &[digits[5 + 2 * a]]]))
        .collect();
    HiggsField::new(hn(&[2, 1, 2]), 2, vec![theta0, theta1]).unwrap()
}

#[test]
fn criterion_07_rank_one_lemma() {
    criterion(7, 120, || {
        let mut triggered = 0;
        let shapes: Vec<(usize, usize)> = (1..=4).flat_map(|a| (1..=4).map(move |b| (a, b))).collect();
        for j in 0..1000u64 {
            let (a, b) = shapes[j as usize % shapes.len()];
            let ranks = hn(&[a, 1, b]);
            let m_t = 1 + (j / shapes.len() as u64 % 3) as usize;
            let seed = sampling::derive_seed(7, "acceptance-higgs", j);
            let strategy = match j % 3 {
                0 => SamplingStrategy::Pullback,
                1 if a >= 2 && m_t >= 2 => SamplingStrategy::Nullspace { rank_profile: vec![Some(2)] },
                _ => SamplingStrategy::Nullspace { rank_profile: vec![] },
            };
            let h = random_commuting_higgs(&ranks, m_t, seed, &strategy).map_err(|e| e.to_string())?;
            ensure(check_commutation(&h).holds, || format!("sample {j} does not commute"))?;
            // Direct check, independent of the verdict logic.
            if pointwise_rank(&h, 0).unwrap() >= 2 {
                triggered += 1;
                ensure(h.vanishes(1), || format!("sample {j}: θ_1 ≠ 0 with rank θ_0 ≥ 2"))?;
            }
            ensure(rank_one_lemma_check(&h, 1).unwrap().holds(), || format!("sample {j}: verdict"))?;
        }
        let (mut commuting, mut grid_triggered) = (0, 0);
        for code in 0..3usize.pow(8) {
            let h = grid_field(code);
            if !check_commutation(&h).holds {
                continue;
            }
            commuting += 1;
            let v = rank_one_lemma_check(&h, 1).unwrap();
            ensure(v.holds(), || format!("grid field {code} violates the lemma"))?;
            if v == (LemmaVerdict::Holds { triggered: true }) {
                grid_triggered += 1;
            }
        }
        ensure(triggered > 0 && grid_triggered > 0, || "hypothesis never met".into())?;
        Ok(format!(
            "1000 random ({triggered} triggered), grid {commuting}/6561 commuting ({grid_triggered} triggered)"
        ))
    });
}

#[test]
fn criterion_08_su22_embedding() {
    criterion(8, 10, || {
        let mut checked = 0;
        for r in [&[1, 2, 1][..], &[2, 3, 2], &[2, 2, 2, 2]] {
            let ranks = hn(r);
            for i in 0..ranks.k() - 1 {
                let e = su22_embedding(&ranks, i).map_err(|e| format!("{ranks} i={i}: {e}"))?;
                ensure(e.sub_ranks == vec![1, 2, 1], || format!("{ranks} i={i}: sub type"))?;
                ensure(e.all_checks_pass(), || format!("{ranks} i={i}: {e:?}"))?;
                let pd = parabolic_from_ranks(&ranks);
                let expected = class_of_root(&pd.beta_range(i, i + 1), &pd).unwrap();
                ensure(e.highest_root_class == expected, || format!("{ranks} i={i}: class"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} embeddings"))
    });
}

#[test]
fn criterion_09_mesh_suite() {
    criterion(9, 10, || {
        let mut fineness = Vec::new();
        for s in 0..=5 {
            let m = build_colored_mesh(subdivided_octahedron(s)).map_err(|e| format!("s={s}: {e}"))?;
            let a = &m.audit;
            ensure(a.even && a.properly_colored && a.trichromatic, || format!("s={s}: coloring"))?;
            ensure(a.surface.euler == 2 && a.surface.closed_surface(), || format!("s={s}: surface"))?;
            ensure(a.circumcenters_inside && a.max_equidistance_residual < 1e-10, || format!("s={s}: geometry"))?;
            ensure(a.gluing_sphere_like, || format!("s={s}: gluing"))?;
            let colors: BTreeSet<_> = m.coloring.colors.iter().collect();
            ensure(colors.len() == 3, || format!("s={s}: colors"))?;
            fineness.push(a.fineness);
        }
        ensure(fineness.windows(2).all(|w| w[1] < w[0]), || format!("fineness {fineness:?}"))?;
        Ok(format!("s = 0..5, fineness {:.4} -> {:.4}", fineness[0], fineness[5]))
    });
}

#[test]
fn criterion_10_determinism() {
    criterion(10, 60, || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_hodge-domains"))
                .args(["verify", "--ranks", "1,2,1", "--seed", "42", "--samples", "10000"])
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout, || "outputs differ".into())?;
        ensure(!a.stdout.is_empty(), || "empty output".into())?;
        Ok(format!("{} identical bytes", a.stdout.len()))
    });
}
