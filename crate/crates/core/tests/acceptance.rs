//! Acceptance gate: ten end-to-end criteria at their stated tolerances.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one `PASS`/`FAIL` line, followed by a summary. The process exits nonzero
//! if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use asymwell::shooting::lowest_states_numeric;
use asymwell::spectrum::lowest_states;
use asymwell::*;
use common::{flat_well_energy, phi_quadrature, FdHamiltonian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn standard_below_100() -> Vec<EigenState> {
    find_spectrum(&WellSpec::standard(), 100.0).expect("standard spectrum")
}

fn c1_eigenvalue_table() -> Outcome {
    let published = [0.95, 3.78, 8.44, 14.78, 20.84, 22.34, 24.94, 29.24, 33.30];
    let start = Instant::now();
    let states = lowest_states(&WellSpec::standard(), 9).expect("spectrum");
    let elapsed = start.elapsed().as_secs_f64();
    let mismatched: Vec<String> = states
        .iter()
        .zip(published)
        .filter(|(s, p)| ((s.energy * 100.0).round() / 100.0 - p).abs() > 1e-9)
        .map(|(s, p)| format!("n={} E={:.6} (expected {p:.2})", s.n, s.energy))
        .collect();
    let pass = states.len() == 9 && mismatched.is_empty() && elapsed < 1.0;
    outcome(
        pass,
        format!(
            "{} of 9 match after rounding; runtime {elapsed:.3} s{}",
            9 - mismatched.len(),
            if mismatched.is_empty() {
                String::new()
            } else {
                format!("; mismatched: {}", mismatched.join(", "))
            }
        ),
    )
}

fn c2_depression_ratio() -> Outcome {
    let states = lowest_states(&WellSpec::standard(), 4).expect("spectrum");
    let ratios: Vec<f64> = states
        .iter()
        .map(|s| s.energy / (s.n as f64 * PI / 3.0).powi(2))
        .collect();
    let pass = ratios.iter().all(|r| (0.82..=0.88).contains(r));
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    outcome(pass, format!("ratios n=1..4: {}", shown.join(", ")))
}

fn c3_state_count() -> Outcome {
    let n = standard_below_100().len();
    outcome(n == 18, format!("{n} eigenvalues below E = 100"))
}

fn c4_bound_sandwich() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut wells = vec![WellSpec::standard()];
    for _ in 0..50 {
        wells.push(
            WellSpec::new(
                rng.gen_range(1.0..=5.0),
                rng.gen_range(1.0..=5.0),
                rng.gen_range(5.0..=50.0),
            )
            .expect("random well"),
        );
    }
    let (mut checked, mut violations) = (0, Vec::new());
    for (w, spec) in wells.iter().enumerate() {
        for s in find_spectrum(spec, 100.0).expect("spectrum") {
            if !s.is_above_threshold() {
                continue;
            }
            let Ok(b) = bounds_at(spec, s.energy) else {
                continue;
            };
            let (p, _) = side_probabilities(&s);
            checked += 1;
            if !(b.lower - 1e-9 <= p && p <= b.upper + 1e-9) {
                let over = if p > b.upper {
                    p - b.upper
                } else {
                    b.lower - p
                };
                violations.push((w, s.n, p, over));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let standard: Vec<String> = violations
        .iter()
        .filter(|v| v.0 == 0)
        .map(|v| format!("n={} p={:.5}", v.1, v.2))
        .collect();
    let worst = violations.iter().map(|v| v.3).fold(0.0, f64::max);
    outcome(
        violations.is_empty() && elapsed < 30.0,
        format!(
            "{} of {checked} above-step states outside [lower, upper] (worst by {worst:.4}); \
             standard set: [{}]; runtime {elapsed:.2} s",
            violations.len(),
            standard.join(", ")
        ),
    )
}

fn c5_anomalous_states() -> Outcome {
    let states = lowest_states(&WellSpec::standard(), 8).expect("spectrum");
    let (s6, s8) = (&states[5], &states[7]);
    let c6 = classify_matching(s6, DEFAULT_MATCH_THRESHOLD).expect("classify n=6");
    let c8 = classify_matching(s8, DEFAULT_MATCH_THRESHOLD).expect("classify n=8");
    let (p6, _) = side_probabilities(s6);
    let (p8, _) = side_probabilities(s8);
    let lower8 = bounds_at(&WellSpec::standard(), s8.energy)
        .expect("bounds")
        .lower;

    let ok6_class = c6.kind == MatchKind::NearAntinode;
    let ok6_p = p6 > 0.4 && p6 < 0.5;
    let ok8_class = c8.kind == MatchKind::NearNode;
    let ok8_p = (p8 - lower8).abs() <= 0.03;
    outcome(
        ok6_class && ok6_p && ok8_class && ok8_p,
        format!(
            "n=6: {} (antinode metric {:.3}), p_left {p6:.5} in (0.4, 0.5): {ok6_p}; \
             n=8: {} (node metric {:.3}), p_left {p8:.5} vs lower {lower8:.5}: {ok8_p}",
            c6.kind.name(),
            c6.antinode_metric,
            c8.kind.name(),
            c8.node_metric
        ),
    )
}

/// Step states below 100 paired with their delta = 0.2 smoothed counterparts.
fn smoothed_pairs() -> (Vec<EigenState>, Vec<GridSolution>, f64) {
    let step = standard_below_100();
    let smooth_spec = WellSpec::standard()
        .smoothed(Smoothing::Exponential { delta: 0.2 })
        .expect("smoothed well");
    let start = Instant::now();
    let smooth = lowest_states_numeric(&smooth_spec, step.len(), DEFAULT_GRID).expect("shooting");
    (step, smooth, start.elapsed().as_secs_f64())
}

fn c6_smoothing_shift() -> Outcome {
    let (step, smooth, elapsed) = smoothed_pairs();
    let shifts: Vec<(f64, f64)> = step
        .iter()
        .zip(&smooth)
        .map(|(s, g)| (s.energy, (g.energy - s.energy) / s.energy))
        .collect();
    let over: Vec<String> = shifts
        .iter()
        .enumerate()
        .filter(|(_, (_, d))| d.abs() > 0.03)
        .map(|(i, (_, d))| format!("n={} {:+.4}", i + 1, d))
        .collect();
    // trend of log|dE/E| against log E
    let pts: Vec<(f64, f64)> = shifts
        .iter()
        .map(|(e, d)| (e.ln(), d.abs().max(1e-300).ln()))
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let max_above = shifts
        .iter()
        .filter(|(e, _)| *e > 20.0)
        .map(|(_, d)| d.abs())
        .fold(0.0, f64::max);
    outcome(
        over.is_empty() && slope < 0.0 && elapsed < 60.0 && smooth.len() == step.len(),
        format!(
            "{} of {} shifts exceed 3% [{}]; max above the step {max_above:.4}; \
             log-log slope {slope:.2}; runtime {elapsed:.2} s",
            over.len(),
            shifts.len(),
            over.join(", ")
        ),
    )
}

fn c7_probability_repair() -> Outcome {
    let (step, smooth, _) = smoothed_pairs();
    let spec = WellSpec::standard();
    let mut worse = Vec::new();
    let mut checked = 0;
    for (s, g) in step.iter().zip(&smooth) {
        if !s.is_above_threshold() || s.n == 5 {
            continue;
        }
        checked += 1;
        let p_cl = classical_model(&spec, s.energy).expect("classical").p_left;
        let (p0, _) = side_probabilities(s);
        let p_delta = side_probability_numeric(g);
        if (p_delta - p_cl).abs() > (p0 - p_cl).abs() {
            worse.push(format!(
                "n={} |{p_delta:.4} - {p_cl:.4}| > |{p0:.4} - {p_cl:.4}|",
                s.n
            ));
        }
    }
    outcome(
        worse.is_empty(),
        format!(
            "{} of {checked} states move away from the classical value [{}]",
            worse.len(),
            worse.join("; ")
        ),
    )
}

fn c8_cross_solver() -> Outcome {
    let spec = WellSpec::standard();
    let exact = standard_below_100();
    let numeric = find_spectrum_numeric(&spec, 100.0, DEFAULT_GRID).expect("shooting");
    let fd = FdHamiltonian::new(&spec, DEFAULT_GRID);
    let mut worst_num: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for (s, g) in exact.iter().zip(&numeric) {
        worst_num = worst_num.max(((g.energy - s.energy) / s.energy).abs());
        let e_fd = fd.eigenvalue(s.n);
        worst_fd = worst_fd
            .max(((e_fd - s.energy) / s.energy).abs())
            .max(((e_fd - g.energy) / g.energy).abs());
    }
    outcome(
        numeric.len() == exact.len() && worst_num <= 1e-6 && worst_fd <= 1e-4,
        format!(
            "{} analytic / {} shooting states; worst analytic-shooting {worst_num:.2e}, \
             worst against finite differences {worst_fd:.2e}",
            exact.len(),
            numeric.len()
        ),
    )
}

fn c9_transform_integrity() -> Outcome {
    let states = lowest_states(&WellSpec::standard(), 9).expect("spectrum");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_even, mut worst_norm, mut worst_quad): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for s in &states {
        let d = density_series(s, 60.0, 48_001).expect("density");
        let peak = d.density.iter().cloned().fold(0.0, f64::max);
        worst_even = worst_even.max(d.asymmetry() / peak);
        worst_norm = worst_norm.max((d.total_probability() - 1.0).abs());

        let psi = |x: f64| s.psi(x).expect("inside");
        let mut ps: Vec<f64> = (0..4).map(|_| rng.gen_range(-15.0..15.0)).collect();
        for c in [s.k, -s.k, s.q, -s.q] {
            ps.push(c);
            ps.push(c + rng.gen_range(-1e-6..1e-6));
        }
        for p in ps {
            let (re, im) = phi_quadrature(&psi, 3.0, 3.0, p);
            let closed = phi(s, p);
            worst_quad = worst_quad.max((closed.re - re).abs().max((closed.im - im).abs()));
        }
    }
    outcome(
        worst_even <= 1e-12 && worst_norm <= 1e-4 && worst_quad <= 1e-8,
        format!(
            "relative asymmetry {worst_even:.1e}, Parseval error {worst_norm:.1e}, \
             closed form vs quadrature {worst_quad:.1e}"
        ),
    )
}

fn c10_limits() -> Outcome {
    let spec = WellSpec::new(3.0, 3.0, 1e-12).expect("well");
    let states = lowest_states(&spec, 18).expect("spectrum");
    let mut worst_e: f64 = 0.0;
    let mut worst_p: f64 = 0.0;
    for s in &states {
        let e0 = flat_well_energy(s.n, 6.0);
        worst_e = worst_e.max(((s.energy - e0) / e0).abs());
        worst_p = worst_p.max((side_probabilities(s).0 - 0.5).abs());
    }
    let std = WellSpec::standard();
    let p_far = classical_model(&std, 1e8).expect("classical").p_left;
    let far_err = (p_far - std.a / (std.a + std.b)).abs();
    outcome(
        worst_e <= 1e-6 && worst_p <= 1e-9 && far_err <= 1e-4,
        format!(
            "v0=1e-12: worst energy error {worst_e:.1e}, worst |p_left - 0.5| {worst_p:.1e}; \
             classical p_left at E=1e8 off by {far_err:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("eigenvalue table", c1_eigenvalue_table),
        ("depression ratio", c2_depression_ratio),
        ("state count", c3_state_count),
        ("bound sandwich", c4_bound_sandwich),
        ("anomalous-state detection", c5_anomalous_states),
        ("smoothing energy shift", c6_smoothing_shift),
        ("smoothing probability repair", c7_probability_repair),
        ("cross-solver oracle", c8_cross_solver),
        ("transform integrity", c9_transform_integrity),
        ("limits", c10_limits),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<30} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
