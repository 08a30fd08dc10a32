//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them).

use std::process::Command;
use std::time::Instant;

use ivfopt_core::corpus::{corpus_get, corpus_names};
use ivfopt_core::optimality::{
    diff_inclusion_check, sum_rule_experiment, weak_efficient_check, zero_optimality_check, SumIvf,
};
use ivfopt_core::weak_subdiff::{
    equivalence_report, member_check, region_1d, WeakCandidate, DEFAULT_TOL,
};
use ivfopt_core::{family_inf_sup, EndpointRange, GridSpec, Interval, IntervalFn, IntervalVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn conclude(n: u32, desc: &str, failures: &[String]) {
    let ok = failures.is_empty();
    println!("ACCEPTANCE {n} ({desc}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failures: {failures:?}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ivfopt"))
}

fn cand1(lo: f64, hi: f64, c: f64) -> WeakCandidate {
    WeakCandidate::new(
        IntervalVector::new(vec![Interval::new(lo, hi).unwrap()]).unwrap(),
        c,
    )
    .unwrap()
}

fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = bin().args(args).output().expect("binary runs");
    let body = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().expect("exit code"), body)
}

fn bound(v: &serde_json::Value) -> f64 {
    match v.as_str().expect("formatted number") {
        "inf" => f64::INFINITY,
        "-inf" => f64::NEG_INFINITY,
        s => s.parse().expect("parseable number"),
    }
}

/// Criterion 1: region bounds for example_3_1 at u=0 and u=1.
#[test]
fn criterion_1_example_regions() {
    let mut failures = Vec::new();
    for c in [0.0, 0.5, 1.0] {
        for (u, lo_min, lo_max, hi_min, hi_max) in [
            (0.0, -1.0 - c, c, -c, 1.0 + c),
            (1.0, 1.0 - c, f64::INFINITY, 2.0 - c, f64::INFINITY),
        ] {
            let start = Instant::now();
            let (code, body) = run_json(&[
                "region",
                "--ivf",
                "corpus:example_3_1",
                "--u",
                &u.to_string(),
                "--c",
                &c.to_string(),
            ]);
            let elapsed = start.elapsed().as_secs_f64();
            if code != 0 {
                failures.push(format!("u={u} c={c}: exit {code}"));
                continue;
            }
            if elapsed >= 1.0 {
                failures.push(format!("u={u} c={c}: took {elapsed:.2}s"));
            }
            let r = &body["results"];
            for (label, got, want) in [
                ("g_lo.min", bound(&r["g_lo"]["min"]), lo_min),
                ("g_lo.max", bound(&r["g_lo"]["max"]), lo_max),
                ("g_hi.min", bound(&r["g_hi"]["min"]), hi_min),
                ("g_hi.max", bound(&r["g_hi"]["max"]), hi_max),
            ] {
                let ok = if want.is_infinite() {
                    got == want
                } else {
                    (got - want).abs() <= 1e-3
                };
                if !ok {
                    failures.push(format!("u={u} c={c} {label}: got {got}, want {want}"));
                }
            }
        }
    }
    conclude(1, "example_3_1 region bounds", &failures);
}

/// Criterion 2: figure_1 membership and the plot-data support property.
#[test]
fn criterion_2_figure_1_candidate() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let member = bin()
        .args([
            "check-member",
            "--ivf",
            "corpus:figure_1",
            "--u",
            "1",
            "--g",
            "0.25,1.5",
            "--c",
            "0.5",
        ])
        .output()
        .expect("binary runs");
    if member.status.code() != Some(0) {
        failures.push(format!("check-member exit {:?}", member.status.code()));
    }
    let plot = bin()
        .args([
            "plot-data",
            "--ivf",
            "corpus:figure_1",
            "--u",
            "1",
            "--g",
            "0.25,1.5",
            "--c",
            "0.5",
            "--grid",
            "2001",
        ])
        .output()
        .expect("binary runs");
    let text = String::from_utf8(plot.stdout).expect("utf8");
    let rows: Vec<&str> = text.lines().skip(1).collect();
    if rows.len() != 2001 {
        failures.push(format!("expected 2001 rows, got {}", rows.len()));
    }
    for row in rows {
        let cols: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        if !(cols[3] <= cols[1] + 1e-9 && cols[4] <= cols[2] + 1e-9) {
            failures.push(format!("support property violated at row '{row}'"));
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 1.0 {
        failures.push(format!("took {elapsed:.2}s"));
    }
    conclude(2, "figure_1 membership and support data", &failures);
}

/// Criterion 3: the sum rule fails with a verified witness split.
#[test]
fn criterion_3_sum_rule_counterexample() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let f1 = corpus_get("sum_rule_phi1").unwrap();
    let f2 = corpus_get("sum_rule_phi2").unwrap();
    let grid = GridSpec::default_focal(&[0.0]);
    let rep = sum_rule_experiment(&f1, &f2, 0.0, &[0.0, 0.5], &grid).unwrap();
    for p in &rep.per_c {
        if p.equal {
            failures.push(format!("c={}: sets reported equal", p.c));
            continue;
        }
        match &p.witness {
            None => failures.push(format!("c={}: no witness", p.c)),
            Some(w) => {
                let p1 = cand1(w.part1.0.lo(), w.part1.0.hi(), w.part1.1);
                let p2 = cand1(w.part2.0.lo(), w.part2.0.hi(), w.part2.1);
                let whole = cand1(w.g.lo(), w.g.hi(), w.c);
                let sum = SumIvf::new(&f1, &f2).unwrap();
                if !member_check(&f1, &[0.0], &p1, &grid, 1e-9).unwrap().0 {
                    failures.push(format!("c={}: part1 not a member of phi1", p.c));
                }
                if !member_check(&f2, &[0.0], &p2, &grid, 1e-9).unwrap().0 {
                    failures.push(format!("c={}: part2 not a member of phi2", p.c));
                }
                if member_check(&sum, &[0.0], &whole, &grid, 1e-9).unwrap().0 {
                    failures.push(format!("c={}: witness is a member of the sum", p.c));
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 2.0 {
        failures.push(format!("took {elapsed:.2}s"));
    }
    conclude(3, "sum-rule counterexample with verified witness", &failures);
}

/// Criterion 4: non-inclusion with the displayed region bounds.
#[test]
fn criterion_4_non_inclusion_bounds() {
    let mut failures = Vec::new();
    let f1 = corpus_get("note_4_1_phi1").unwrap();
    let f2 = corpus_get("note_4_1_phi2").unwrap();
    let grid = GridSpec::default_focal(&[0.0]);
    let rep = diff_inclusion_check(&f1, &f2, 0.0, &[0.0, 0.5, 1.0], &grid).unwrap();
    for p in &rep.per_c {
        if p.subset {
            failures.push(format!("c={}: subset unexpectedly true", p.c));
        }
        if (p.region_a.g_lo.min - (-2.0 - p.c)).abs() > 1e-3 {
            failures.push(format!(
                "c={}: phi1 g_lo.min {} != {}",
                p.c,
                p.region_a.g_lo.min,
                -2.0 - p.c
            ));
        }
        if (p.region_b.g_lo.min - (-1.0 - p.c)).abs() > 1e-3 {
            failures.push(format!(
                "c={}: phi2 g_lo.min {} != {}",
                p.c,
                p.region_b.g_lo.min,
                -1.0 - p.c
            ));
        }
    }
    conclude(4, "pair non-inclusion with displayed bounds", &failures);
}

/// Criterion 5: interval-algebra lemma suite on 10,000 random samples.
#[test]
fn criterion_5_lemma_suite() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let iv = |rng: &mut StdRng| {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let b: f64 = rng.gen_range(-10.0..10.0);
        Interval::new(a.min(b), a.max(b)).unwrap()
    };
    const TOL: f64 = 1e-12;
    for i in 0..10_000 {
        let x = iv(&mut rng);
        let y = iv(&mut rng);
        let z = iv(&mut rng);
        let w = iv(&mut rng);

        // shift: eps <= (w - y) - z implies z + eps <= w - y (gH differences)
        let d = w.gh_sub(y).gh_sub(z);
        let cap = d.lo().min(d.hi());
        if cap >= 0.0 {
            let e = Interval::point(rng.gen_range(0.0..1.0) * cap);
            if !z.add(e).unwrap().preceq(w.gh_sub(y), TOL) {
                failures.push(format!("sample {i}: shift inequality"));
            }
        }

        // gH-difference of sums is inside the sum of gH-differences
        let lhs = x.add(y).unwrap().gh_sub(z.add(w).unwrap());
        let rhs = x.gh_sub(z).add(y.gh_sub(w)).unwrap();
        if !(rhs.lo() <= lhs.lo() + TOL && lhs.hi() <= rhs.hi() + TOL) {
            failures.push(format!("sample {i}: difference-of-sums subset"));
        }

        // exact negation identity
        let neg = Interval::ZERO.gh_sub(
            w.scalar_mul(-1.0)
                .gh_sub(y.scalar_mul(-1.0))
                .gh_sub(z.scalar_mul(-1.0)),
        );
        if neg != w.gh_sub(y).gh_sub(z) {
            failures.push(format!("sample {i}: negation identity not exact"));
        }

        // order-shift family (i)-(v)
        let xy = x.gh_sub(y);
        if Interval::ZERO.preceq(xy, 0.0)
            && !Interval::ZERO.gh_sub(z).preceq(xy.gh_sub(z), TOL)
        {
            failures.push(format!("sample {i}: order shift (i)"));
        }
        if z.preceq(xy, 0.0) && !z.gh_sub(w).preceq(xy.gh_sub(w), TOL) {
            failures.push(format!("sample {i}: order shift (ii)"));
        }
        let l = xy.lo().max(xy.hi()) + rng.gen_range(0.0..5.0);
        if !Interval::point(-l).preceq(y.gh_sub(x), TOL) {
            failures.push(format!("sample {i}: order shift (iii)"));
        }
        let gamma = -(xy.lo().min(xy.hi())) + rng.gen_range(0.0..5.0);
        if !y.gh_sub(Interval::point(gamma)).preceq(x, TOL) {
            failures.push(format!("sample {i}: order shift (iv)"));
        }
        if z.preceq(x.add(y).unwrap(), 0.0) && !z.gh_sub(y).preceq(x, TOL) {
            failures.push(format!("sample {i}: order shift (v)"));
        }

        // inner-product norm bound
        let dir: [f64; 1] = [rng.gen_range(-10.0..10.0)];
        let cvec = IntervalVector::new(vec![x]).unwrap();
        if -dir[0].abs() * cvec.norm() > cvec.inner_product(&dir).unwrap().norm() + TOL {
            failures.push(format!("sample {i}: inner-product norm bound"));
        }

        // family inf/sup bracket every member
        let fam = [x, y, z];
        let (inf, sup) = family_inf_sup(&fam).unwrap();
        for m in fam {
            if !inf.preceq(m, 0.0) || !m.preceq(sup, 0.0) {
                failures.push(format!("sample {i}: inf/sup bracket"));
            }
        }

        if failures.len() > 5 {
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        failures.push(format!("took {elapsed:.2}s"));
    }
    conclude(5, "interval lemma suite, 10k samples", &failures);
}

fn sample_within(rng: &mut StdRng, r: EndpointRange) -> f64 {
    let lo = r.min.max(-100.0);
    let hi = r.max.min(100.0);
    if hi <= lo {
        return lo;
    }
    let margin = 1e-3 * (hi - lo);
    rng.gen_range(lo + margin..hi - margin)
}

/// Criterion 6: convexity of membership under blends, and closedness at
/// bounded region corners, across corpus functions and focal points.
#[test]
fn criterion_6_convexity_and_closedness() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(99);
    let cases: [(&str, [f64; 3]); 5] = [
        ("example_3_1", [-0.5, 0.0, 0.5]),
        ("figure_1", [0.0, 1.0, 1.5]),
        ("example_2_1", [-0.5, 0.0, 0.5]),
        ("theorem_4_3_demo", [-0.5, 0.0, 0.5]),
        ("note_4_1_phi1", [-0.25, 0.0, 0.25]),
    ];
    for (name, focals) in cases {
        let f = corpus_get(name).unwrap();
        for u in focals {
            let grid = GridSpec::default_focal(&[u]);
            // find a c with a nonempty region
            let mut chosen = None;
            for c in [0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
                let r = region_1d(&f, u, c, &grid, DEFAULT_TOL).unwrap();
                if !r.empty {
                    chosen = Some((c, r));
                    break;
                }
            }
            let (c, region) = match chosen {
                Some(v) => v,
                None => {
                    failures.push(format!("{name} u={u}: no nonempty region found"));
                    continue;
                }
            };

            for pair in 0..100 {
                let a_lo = sample_within(&mut rng, region.g_lo);
                let a_hi = sample_within(&mut rng, region.g_hi).max(a_lo);
                let b_lo = sample_within(&mut rng, region.g_lo);
                let b_hi = sample_within(&mut rng, region.g_hi).max(b_lo);
                for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    let g_lo = beta * a_lo + (1.0 - beta) * b_lo;
                    let g_hi = beta * a_hi + (1.0 - beta) * b_hi;
                    let cand = cand1(g_lo, g_hi, c);
                    if !member_check(&f, &[u], &cand, &grid, 1e-9).unwrap().0 {
                        failures.push(format!(
                            "{name} u={u} c={c} pair {pair} beta {beta}: blend rejected"
                        ));
                    }
                }
                if failures.len() > 5 {
                    break;
                }
            }

            for g_lo in [region.g_lo.min, region.g_lo.max] {
                for g_hi in [region.g_hi.min, region.g_hi.max] {
                    if !g_lo.is_finite() || !g_hi.is_finite() || g_lo > g_hi {
                        continue;
                    }
                    let cand = cand1(g_lo, g_hi, c);
                    if !member_check(&f, &[u], &cand, &grid, 1e-9).unwrap().0 {
                        failures.push(format!(
                            "{name} u={u} c={c}: corner ({g_lo},{g_hi}) rejected"
                        ));
                    }
                }
            }
        }
    }
    conclude(6, "membership convexity and corner closedness", &failures);
}

/// Criterion 7: the three equivalence flags agree everywhere probed.
#[test]
fn criterion_7_equivalence_flags() {
    let mut failures = Vec::new();
    for name in corpus_names() {
        let f = corpus_get(name).unwrap();
        let (lo, hi) = f.domain()[0];
        for frac in [0.25, 0.5, 0.75] {
            let u = lo + (hi - lo) * frac;
            let grid = GridSpec::default_focal(&[u]);
            let rep = equivalence_report(&f, &[u], &grid, &[0.0, 0.5, 1.0, 2.0, 5.0]).unwrap();
            if rep.weak_subdiff_nonempty != rep.lower_lipschitz
                || rep.lower_lipschitz != rep.certificate_exists
            {
                failures.push(format!(
                    "{name} u={u}: flags disagree ({}, {}, {})",
                    rep.weak_subdiff_nonempty, rep.lower_lipschitz, rep.certificate_exists
                ));
            }
            if name == "log_lipschitz" {
                match rep.lipschitz.global_l {
                    Some(l) if l <= 2.0 => {}
                    other => failures.push(format!("log_lipschitz u={u}: global L {other:?}")),
                }
            }
        }
    }
    conclude(7, "lower-Lipschitz equivalence flags", &failures);
}

/// Criterion 8: zero-inclusion optimality equals weak efficiency.
#[test]
fn criterion_8_zero_inclusion_equivalence() {
    let mut failures = Vec::new();
    for name in corpus_names() {
        let f = corpus_get(name).unwrap();
        let (lo, hi) = f.domain()[0];
        for k in 0..11 {
            let u = lo + (hi - lo) * k as f64 / 10.0;
            let grid = GridSpec::uniform(501).with_focal(&[u], 8);
            let zero = zero_optimality_check(&f, &[u], &grid, DEFAULT_TOL).unwrap();
            let weak = weak_efficient_check(&f, &[u], &grid, DEFAULT_TOL).unwrap();
            if zero.holds != weak.weak_efficient {
                failures.push(format!("{name} u={u}: {} vs {}", zero.holds, weak.weak_efficient));
            }
        }
    }
    conclude(8, "zero-inclusion vs weak efficiency", &failures);
}

/// Criterion 9: all golden cases pass, deterministically and quickly.
#[test]
fn criterion_9_repro_all() {
    let mut failures = Vec::new();
    let start = Instant::now();
    let first = bin().args(["repro", "--case", "all"]).output().expect("runs");
    let second = bin().args(["repro", "--case", "all"]).output().expect("runs");
    let elapsed = start.elapsed().as_secs_f64();
    if first.status.code() != Some(0) {
        failures.push(format!("exit {:?}", first.status.code()));
    }
    if first.stdout != second.stdout {
        failures.push("reports are not byte-stable across runs".to_string());
    }
    if elapsed >= 10.0 {
        failures.push(format!("took {elapsed:.2}s"));
    }
    let body: serde_json::Value = serde_json::from_slice(&first.stdout).expect("json");
    if body["results"]["passed"] != serde_json::json!(9) {
        failures.push(format!("passed = {}", body["results"]["passed"]));
    }
    conclude(9, "golden repro cases", &failures);
}
