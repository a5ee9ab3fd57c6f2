//! Acceptance criteria, one test each. Run with
//! `cargo test -p treeindex --test acceptance -- --nocapture` to see the
//! PASS/FAIL line printed by every criterion.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use treeindex::enumeration::{
    degree_sequences, enumerate_semiregular, enumerate_trees, find_minimizers, SearchOptions,
};
use treeindex::spectral::{
    caterpillar_symmetry_check, is_unimodal, pendant_minima_check, perron, trunk_center,
    trunk_recurrence_residual, NORMALIZATION_TOL,
};
use treeindex::transforms::{
    lemma1_property_run, reduce_to_caterpillar, spiral_rearrangement, theorem1_witness, Policy,
};
use treeindex::tree::families::{caterpillar, mixed_degree_minimizers, path, star};
use treeindex::DegreeSequence;

fn report(id: u32, name: &str, failures: &[String], detail: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id} [{name}]: {status} ({detail})");
    for f in failures.iter().take(10) {
        println!("  - {f}");
    }
    assert!(
        failures.is_empty(),
        "criterion {id} failed: {} problem(s)",
        failures.len()
    );
}

#[test]
fn criterion_1_mixed_degree_minimizers() {
    let start = Instant::now();
    let pi: DegreeSequence = "4^4,3^2,2,1^12".parse().unwrap();
    let r = find_minimizers(
        &pi,
        &SearchOptions {
            jobs: 4,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if (r.min_mu * r.min_mu - 6.0).abs() > 1e-9 {
        failures.push(format!("min_mu^2 = {}", r.min_mu * r.min_mu));
    }
    let forms: BTreeSet<_> = r.minimizers.iter().map(|m| m.canonical.clone()).collect();
    for (i, t) in mixed_degree_minimizers().iter().enumerate() {
        if !forms.contains(&t.canonical_form()) {
            failures.push(format!(
                "known tree {} missing from the minimizer set",
                i + 1
            ));
        }
    }
    if r.all_caterpillars {
        failures.push("every minimizer is a caterpillar".into());
    }
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        1,
        "mixed-degree minimizers",
        &failures,
        format!(
            "{} trees, {} minimizers, min_mu = {:.15}, {:.2?}",
            r.tree_count,
            r.minimizers.len(),
            r.min_mu,
            elapsed
        ),
    );
}

#[test]
fn criterion_2_caterpillar_is_the_unique_minimizer() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut classes = 0;
    for d in 3..=5 {
        for n in (2..=20).filter(|n| (n - 2) % (d - 1) == 0) {
            classes += 1;
            let pi = DegreeSequence::semiregular(d, n).unwrap();
            let r = find_minimizers(
                &pi,
                &SearchOptions {
                    jobs: 4,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            let cat = caterpillar(d, n).unwrap();
            if !r.unique || !r.minimizers[0].tree.is_isomorphic(&cat) {
                failures.push(format!(
                    "({d}, {n}): minimizer is not the unique caterpillar"
                ));
            }
            if let Some(gap) = r.gap {
                if gap <= 1e-9 {
                    failures.push(format!("({d}, {n}): gap {gap:e}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        2,
        "semiregular minimizers",
        &failures,
        format!("{classes} classes, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_3_closed_form_spectra() {
    let mut failures = Vec::new();
    for n in 1..=50 {
        let mu = perron(&path(n)).unwrap().mu;
        let exact = 2.0 * (PI / (n as f64 + 1.0)).cos();
        if (mu - exact).abs() > 1e-10 {
            failures.push(format!("P_{n}: {mu} vs {exact}"));
        }
    }
    for m in 1..=50 {
        let mu = perron(&star(m)).unwrap().mu;
        if (mu - (m as f64).sqrt()).abs() > 1e-10 {
            failures.push(format!("K_1,{m}: {mu}"));
        }
    }
    report(
        3,
        "closed-form spectra",
        &failures,
        "P_1..P_50, K_1,1..K_1,50".into(),
    );
}

#[test]
fn criterion_4_switch_inequality() {
    let s = lemma1_property_run(20_240_601, 10_000).unwrap();
    let mut failures = Vec::new();
    if s.instances < 10_000 {
        failures.push(format!("only {} instances", s.instances));
    }
    if s.min_delta < -1e-12 {
        failures.push(format!("min delta {:e}", s.min_delta));
    }
    if s.strictness_mismatches > 0 {
        failures.push(format!("{} strictness mismatches", s.strictness_mismatches));
    }
    if s.max_closed_form_error > 1e-12 {
        failures.push(format!("closed-form error {:e}", s.max_closed_form_error));
    }
    if s.unimodality_failures > 0 {
        failures.push(format!("{} unimodality failures", s.unimodality_failures));
    }
    report(
        4,
        "switch inequality",
        &failures,
        format!(
            "{} instances, {} strict, min delta {:e}, closed-form error {:e}",
            s.instances, s.strict_instances, s.min_delta, s.max_closed_form_error
        ),
    );
}

#[test]
fn criterion_5_reduction_replay() {
    let mut failures = Vec::new();
    let mut trees = 0;
    let mut witnesses = 0;
    for (d, n) in [(3, 16), (4, 14)] {
        let mu_cat = perron(&caterpillar(d, n).unwrap()).unwrap().mu;
        for g in enumerate_semiregular(d, n).unwrap() {
            trees += 1;
            for policy in [Policy::Minimal, Policy::Any] {
                match reduce_to_caterpillar(&g, policy) {
                    Ok(seq) => match seq.replay_inverse() {
                        Ok(back) if back.is_isomorphic(&g) => {}
                        Ok(_) => failures
                            .push(format!("({d},{n}) {}: replay differs", g.canonical_form())),
                        Err(e) => failures.push(format!("({d},{n}) replay: {e}")),
                    },
                    Err(e) => failures.push(format!("({d},{n}) {}: {e}", g.canonical_form())),
                }
            }
            if g.is_caterpillar() {
                continue;
            }
            witnesses += 1;
            match theorem1_witness(&g) {
                Ok(w) => {
                    if w.rq < mu_cat - 1e-9 {
                        failures.push(format!(
                            "({d},{n}) {}: rq {} < mu_cat {}",
                            g.canonical_form(),
                            w.rq,
                            mu_cat
                        ));
                    }
                    if w.mu_g < w.rq - 1e-12 {
                        failures.push(format!(
                            "({d},{n}) {}: mu {} < rq {}",
                            g.canonical_form(),
                            w.mu_g,
                            w.rq
                        ));
                    }
                    for row in &w.trace {
                        if row.rq_after < row.rq_before - 1e-12 {
                            failures.push(format!(
                                "({d},{n}) {}: step at {} lowers rq",
                                g.canonical_form(),
                                row.v_star
                            ));
                        }
                    }
                }
                Err(e) => failures.push(format!("({d},{n}) {}: {e}", g.canonical_form())),
            }
        }
    }
    report(
        5,
        "reduction replay",
        &failures,
        format!("{trees} trees, {witnesses} witnesses"),
    );
}

#[test]
fn criterion_6_caterpillar_perron_vector() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for d in 3..=29 {
        for n in (2..=30).filter(|n| (n - 2) % (d - 1) == 0) {
            cases += 1;
            let c = caterpillar(d, n).unwrap();
            let r = perron(&c).unwrap();
            let f = &r.perron;
            let tag = format!("C({d},{n})");
            if !f.is_positive() {
                failures.push(format!("{tag}: not positive"));
            }
            if (f.norm() - 1.0).abs() > NORMALIZATION_TOL {
                failures.push(format!("{tag}: norm {}", f.norm()));
            }
            if !caterpillar_symmetry_check(&c, &r, 1e-9).unwrap().symmetric {
                failures.push(format!("{tag}: not trunk-symmetric"));
            }
            let center = trunk_center(&c).unwrap();
            if !center
                .vertices()
                .iter()
                .any(|&v| is_unimodal(&c, f, v, 1e-12))
            {
                failures.push(format!("{tag}: not unimodal about {center:?}"));
            }
            if n > 2 {
                if !pendant_minima_check(&c, &r) {
                    failures.push(format!("{tag}: pendant vertices are not strict minima"));
                }
                let res = trunk_recurrence_residual(&c, &r, d).unwrap();
                if res > 1e-9 {
                    failures.push(format!("{tag}: trunk recurrence residual {res:e}"));
                }
            }
        }
    }
    report(
        6,
        "caterpillar Perron vector",
        &failures,
        format!("{cases} caterpillars"),
    );
}

#[test]
fn criterion_7_spiral() {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut fallbacks = 0;
    for d in [3, 4] {
        for k in 4..=12usize {
            let n = k * (d - 1) + 2;
            for l1 in 2..=(k + 2) / 2 {
                for l2 in 2..=l1 {
                    let Some(l3) = (k + 2).checked_sub(l1 + l2) else {
                        continue;
                    };
                    if !(2..=l2).contains(&l3) {
                        continue;
                    }
                    cases += 1;
                    let tag = format!("d={d} k={k} ({l1},{l2},{l3})");
                    let out = match spiral_rearrangement(d, n, [l1, l2, l3]) {
                        Ok(out) => out,
                        Err(e) => {
                            failures.push(format!("{tag}: {e}"));
                            continue;
                        }
                    };
                    if out.method != treeindex::transforms::SpiralMethod::Literal {
                        fallbacks += 1;
                    }
                    if out.rq_trace.windows(2).any(|w| w[1] < w[0] - 1e-12) {
                        failures.push(format!("{tag}: trace decreases"));
                    }
                    let last = *out.rq_trace.last().unwrap();
                    if last < out.mu_cat - 1e-9 {
                        failures.push(format!("{tag}: final rq {last} < {}", out.mu_cat));
                    }
                    let bp = out.tree.branching_points();
                    if bp.len() != 1 {
                        failures.push(format!("{tag}: {} branching points", bp.len()));
                        continue;
                    }
                    let mut lengths: Vec<usize> = out
                        .tree
                        .neighbors(bp[0])
                        .iter()
                        .filter(|&&u| !out.tree.is_pendant(u))
                        .map(|&u| out.tree.branch(bp[0], u).unwrap().length)
                        .collect();
                    lengths.sort_unstable_by(|a, b| b.cmp(a));
                    if lengths != [l1, l2, l3] {
                        failures.push(format!("{tag}: lengths {lengths:?}"));
                    }
                }
            }
        }
    }
    report(
        7,
        "spiral rearrangement",
        &failures,
        format!("{cases} triples, {fallbacks} via cut-and-graft"),
    );
}

#[test]
fn criterion_8_generator_soundness() {
    let mut failures = Vec::new();
    let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    let mut got = Vec::new();
    for n in 1..=10 {
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for pi in degree_sequences(n) {
            for t in enumerate_trees(&pi) {
                total += 1;
                if !seen.insert(t.canonical_form()) {
                    failures.push(format!("n={n}: duplicate {}", t.canonical_form()));
                }
            }
        }
        got.push(total);
    }
    if got != expected {
        failures.push(format!("counts {got:?}"));
    }
    report(
        8,
        "generator soundness",
        &failures,
        format!("counts {got:?}"),
    );
}
