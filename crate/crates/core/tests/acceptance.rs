use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use su2gap::dynamics::{fiber_image_interval, fiber_image_numeric, iterate_phi_endpoint, DEFAULT_MAX_STEPS};
use su2gap::geometry::{
    commutator_trace_of_square, construct_pair_from_fricke, fricke_commutator_trace, pi_map, trace_of_square,
    TraceTriple,
};
use su2gap::measure::{distance_to_boundary, pushforward_histogram, pushforward_samples, transported_values};
use su2gap::spectral::{gap_profile, irrep_matrix, random_unit_vector, word_defect_check, CMatrix, IrrepLevel};
use su2gap::su2::{commutator, haar_pair, haar_sample, Pair, SU2Element, Streams, Word};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fricke_vogt() -> Outcome {
    let mut rng = Streams::new(1).stream(0);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let p = haar_pair(&mut rng);
        let t = commutator(&p.a, &p.b).trace();
        worst = worst.max((t - fricke_commutator_trace(TraceTriple::of_pair(&p))).abs());
    }
    check(worst < 1e-10, || format!("max residual {worst:e}"))?;
    Ok(format!("max residual {worst:.2e}"))
}

fn square_formulas() -> Outcome {
    let mut rng = Streams::new(2).stream(0);
    let (mut w1, mut w2): (f64, f64) = (0.0, 0.0);
    for _ in 0..100_000 {
        let p = haar_pair(&mut rng);
        let c = pi_map(&p);
        let a2 = p.a * p.a;
        w1 = w1.max((trace_of_square(c.x) - a2.trace()).abs());
        w2 = w2.max((commutator_trace_of_square(c.x, c.t) - commutator(&a2, &p.b).trace()).abs());
    }
    check(w1 < 1e-10 && w2 < 1e-10, || format!("residuals {w1:e}, {w2:e}"))?;
    Ok(format!("residuals {w1:.2e}, {w2:.2e}"))
}

fn construction_grid() -> Outcome {
    let (mut points, mut worst, mut defect): (usize, f64, f64) = (0, 0.0, 0.0);
    for i in 0..=400 {
        let x = -2.0 + i as f64 * 0.01;
        for j in 0..=400 {
            let t = -2.0 + j as f64 * 0.01;
            if x * x - 2.0 > t {
                continue;
            }
            let p = construct_pair_from_fricke(x, t).map_err(|e| format!("({x}, {t}): {e}"))?;
            let c = pi_map(&p);
            worst = worst.max((c.x - x).abs()).max((c.t - t).abs());
            for g in [p.a, p.b] {
                defect = defect.max(g.unitarity_defect()).max((g.det() - 1.0).norm());
            }
            points += 1;
        }
    }
    check(worst < 1e-10 && defect < 1e-12, || format!("coord {worst:e}, SU(2) {defect:e}"))?;
    Ok(format!("{points} points, coord {worst:.2e}, SU(2) {defect:.2e}"))
}

fn image_and_density() -> Outcome {
    let n = 1_000_000;
    let outside = pushforward_samples(n, 4)
        .iter()
        .filter(|&&(x, t)| x * x - 2.0 > t + 1e-12)
        .count();
    check(outside == 0, || format!("{outside} samples outside D"))?;
    let h = pushforward_histogram(n, 40, 4).map_err(|e| e.to_string())?;
    let mut interior = 0;
    for (row, col, count) in h.iter_cells() {
        let (cx, ct) = h.cell_center(row, col);
        if cx * cx - 2.0 <= ct && distance_to_boundary(cx, ct) >= 0.05 {
            interior += 1;
            check(count > 0, || format!("empty cell at ({cx}, {ct})"))?;
        }
    }
    Ok(format!("{n} samples in D, {interior} interior cells populated"))
}

fn fiber_image() -> Outcome {
    let grid = 10_001;
    for t in [-2.0, -1.0, 0.0, 1.0, 1.9, 2.0] {
        let exact = fiber_image_interval(t);
        let num = fiber_image_numeric(t, grid);
        // |d/dx (x^2 (t - 2) + 2)| <= 16 on the fiber; grid step <= 4 / (grid - 1)
        let tol = 1e-9 + 64.0 / (grid - 1) as f64;
        check(
            (num.lo - exact.lo).abs() <= tol && (num.hi - exact.hi).abs() <= tol,
            || format!("t = {t}: grid [{}, {}] vs [{}, {}]", num.lo, num.hi, exact.lo, exact.hi),
        )?;
        let values = transported_values(t, 20_000, 5).map_err(|e| e.to_string())?;
        let stray = values.iter().filter(|&&v| !exact.contains(v, 1e-9)).count();
        check(stray == 0, || format!("t = {t}: {stray} transported values outside"))?;
    }
    Ok("six fibers, endpoints and transport inside [t^2 - 2, 2]".into())
}

fn escape() -> Outcome {
    let mut slowest = 0;
    for k in 0..4000 {
        let t0 = -2.0 + k as f64 * 1e-3;
        let steps = iterate_phi_endpoint(t0, DEFAULT_MAX_STEPS)
            .steps_to_negative
            .ok_or_else(|| format!("t0 = {t0} not reached"))?;
        check(steps <= 25, || format!("t0 = {t0}: {steps} steps"))?;
        slowest = slowest.max(steps);
    }
    let s19 = iterate_phi_endpoint(1.9, DEFAULT_MAX_STEPS).steps_to_negative;
    check(s19 == Some(3), || format!("steps(1.9) = {s19:?}"))?;
    let s2 = iterate_phi_endpoint(2.0, DEFAULT_MAX_STEPS).steps_to_negative;
    check(s2.is_none(), || format!("steps(2) = {s2:?}"))?;
    Ok(format!("slowest {slowest} steps, steps(1.9) = 3, t0 = 2 not reached"))
}

fn word_bound() -> Outcome {
    let mut rng = Streams::new(7).stream(0);
    let mut tightest = f64::INFINITY;
    for _ in 0..1000 {
        let p = haar_pair(&mut rng);
        let len = rng.random_range(0..=12);
        let w = Word::random(&mut rng, len);
        let level = IrrepLevel(rng.random_range(1..=20));
        let v = random_unit_vector(&mut rng, level.dim());
        let c = word_defect_check(&p, &w, level, &v).map_err(|e| e.to_string())?;
        check(c.lhs <= c.rhs + 1e-10, || format!("{w}: {} > {}", c.lhs, c.rhs))?;
        tightest = tightest.min(c.rhs - c.lhs);
    }
    let aa: Word = "AA".parse().map_err(|e: su2gap::Error| e.to_string())?;
    for _ in 0..100 {
        let p = haar_pair(&mut rng);
        let level = IrrepLevel(rng.random_range(1..=20));
        let v = random_unit_vector(&mut rng, level.dim());
        let step = (irrep_matrix(&p.a, level) * &v - &v).norm();
        let c = word_defect_check(&p, &aa, level, &v).map_err(|e| e.to_string())?;
        check(c.lhs <= 2.0 * step + 1e-10 && 2.0 * step <= c.rhs + 1e-12, || {
            format!("AA: lhs {} rhs {} step {step}", c.lhs, c.rhs)
        })?;
    }
    Ok(format!("1000 trials, smallest slack {tightest:.2e}; AA within twice one step"))
}

fn representations() -> Outcome {
    let mut rng = Streams::new(8).stream(0);
    let (mut hom, mut uni, mut chi): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..100 {
        let g = haar_sample(&mut rng);
        let h = haar_sample(&mut rng);
        let theta = (g.trace() / 2.0).acos();
        for n in 0..=30 {
            let level = IrrepLevel(n);
            let (pg, ph) = (irrep_matrix(&g, level), irrep_matrix(&h, level));
            hom = hom.max((irrep_matrix(&(g * h), level) - &pg * &ph).norm());
            uni = uni.max((pg.adjoint() * &pg - CMatrix::identity(n + 1, n + 1)).norm());
            let weyl = ((n + 1) as f64 * theta).sin() / theta.sin();
            chi = chi.max((pg.trace() - weyl).norm());
        }
    }
    check(hom < 1e-9 && uni < 1e-9 && chi < 1e-9, || format!("hom {hom:e} uni {uni:e} chi {chi:e}"))?;
    Ok(format!("hom {hom:.2e}, unitarity {uni:.2e}, character {chi:.2e}"))
}

fn spectral_extremes() -> Outcome {
    let ident = gap_profile(&Pair::IDENTITY, 50).map_err(|e| e.to_string())?;
    check(ident.min_gap == 0.0, || format!("(I, I): {}", ident.min_gap))?;
    let commuting = Pair::new(
        SU2Element::diagonal(std::f64::consts::PI / 5.0),
        SU2Element::diagonal(2f64.sqrt()),
    );
    let cp = gap_profile(&commuting, 50).map_err(|e| e.to_string())?;
    check(cp.min_gap < 0.05, || format!("commuting: {}", cp.min_gap))?;
    let s5 = 5f64.sqrt();
    let lps = Pair::new(
        SU2Element::from_quaternion(1.0 / s5, 2.0 / s5, 0.0, 0.0),
        SU2Element::from_quaternion(1.0 / s5, 0.0, 2.0 / s5, 0.0),
    );
    let lp = gap_profile(&lps, 50).map_err(|e| e.to_string())?;
    check(lp.min_gap > 0.05, || format!("quaternionic: {}", lp.min_gap))?;
    Ok(format!(
        "identity 0, commuting {:.4} (n = {}), quaternionic {:.4} (n = {})",
        cp.min_gap, cp.argmin_level, lp.min_gap, lp.argmin_level
    ))
}

fn determinism() -> Outcome {
    let pair = r#"{"type":"fricke","x":0.4,"t":1.0}"#;
    let commands: Vec<Vec<&str>> = vec![
        vec!["sample", "--count", "50"],
        vec!["traces", "--pair", pair],
        vec!["construct", "--fricke", "0.3", "-1.2"],
        vec!["phi-iterate", "--t0", "1.95"],
        vec!["fiber-image", "--t", "0.5"],
        vec!["orbit", "--pair", pair, "--depth", "4"],
        vec!["gap-profile", "--pair", pair, "--nmax", "20"],
        vec!["defect", "--pair", pair, "--word", "AbAB", "--level", "7", "--trials", "20"],
        vec!["density", "--samples", "200000", "--bins", "20", "--delta", "0.05"],
        vec!["fiber-sample", "--t", "0.3", "--samples", "500"],
        vec!["fiber-transport", "--t", "1", "--samples", "5000"],
    ];
    for cmd in &commands {
        for format in ["csv", "json"] {
            let mut args = vec!["--seed", "11", "--format", format];
            args.extend(cmd.iter().copied());
            let run = |extra: &[&str]| {
                Command::new(env!("CARGO_BIN_EXE_su2gap"))
                    .args(&args)
                    .args(extra)
                    .output()
                    .map_err(|e| e.to_string())
            };
            let first = run(&[])?;
            check(first.status.success(), || format!("{cmd:?} failed"))?;
            let second = run(&[])?;
            let threaded = run(&["--threads", "3"])?;
            check(first.stdout == second.stdout && first.stdout == threaded.stdout, || {
                format!("{} {format} differs between runs", cmd[0])
            })?;
        }
    }
    Ok(format!("{} commands x 2 formats byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("commutator trace identity", Some(Duration::from_secs(5)), fricke_vogt),
        ("square trace formulas", Some(Duration::from_secs(5)), square_formulas),
        ("construction on a grid of D", Some(Duration::from_secs(30)), construction_grid),
        ("pushforward image and density", Some(Duration::from_secs(60)), image_and_density),
        ("fiber image interval", None, fiber_image),
        ("endpoint escape", None, escape),
        ("word displacement bound", None, word_bound),
        ("representation sanity", None, representations),
        ("spectral extremes", None, spectral_extremes),
        ("seeded determinism", None, determinism),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
