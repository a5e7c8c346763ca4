//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if
//! any criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ruelle::biortho::{cross_bound_check, orthogonality_verdict, Verdict};
use ruelle::cascade::{cascade_time, h_cross_approx, GridSpec};
use ruelle::linalg::principal_angles;
use ruelle::stretched_haar::{cycle_eigenfunction, fejer_h, stretched_haar_filter};
use ruelle::transfer::{
    elemprop_suite, fixed_space, lawton_matrix, ruelle_apply, spectrum, Filter, LawtonMatrix,
};
use ruelle::LaurentPoly;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn stretched_matrix(p: i64) -> LawtonMatrix {
    let f = stretched_haar_filter(p).unwrap();
    lawton_matrix(&f, f.m0()).unwrap()
}

/// Orbit count of `k ↦ 2k mod p` by marking visited residues.
fn orbit_count(p: usize) -> usize {
    let mut seen = vec![false; p];
    let mut count = 0;
    for start in 0..p {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = 2 * k % p;
        }
    }
    count
}

/// Coefficients `(q - |j|)/norm` at exponents `step·j`, `|j| < q`: the
/// expansion of `sin²(q·step·x/2) / (norm·sin²(step·x/2))`.
fn fejer_oracle(q: i64, step: i64, norm: f64) -> LaurentPoly {
    let lo = -(q - 1) * step;
    let mut c = vec![Complex64::new(0.0, 0.0); (2 * (q - 1) * step + 1) as usize];
    for j in -(q - 1)..q {
        c[((j * step) - lo) as usize] = Complex64::new((q - j.abs()) as f64 / norm, 0.0);
    }
    LaurentPoly::new(lo, c)
}

fn c1_dimension() -> Outcome {
    let r = fixed_space(&stretched_matrix(9), ONE, 1e-9).unwrap();
    let worst = r.residuals.iter().cloned().fold(0.0, f64::max);
    outcome(
        r.dim == 3 && worst <= 1e-9,
        format!(
            "dim = {}, max residual = {worst:.2e} (need 3, <= 1e-9)",
            r.dim
        ),
    )
}

fn c2_span() -> Outcome {
    let m = stretched_matrix(9);
    let r = fixed_space(&m, ONE, 1e-9).unwrap();
    let reference: Vec<DVector<Complex64>> = [
        LaurentPoly::one(),
        fejer_oracle(3, 3, 9.0),
        fejer_oracle(9, 1, 81.0),
    ]
    .iter()
    .map(|f| m.to_vector(f))
    .collect();
    let angles = principal_angles(&r.vectors, &reference);
    let worst = angles.iter().cloned().fold(0.0, f64::max);
    outcome(
        angles.len() == 3 && worst <= 1e-7,
        format!("{} angles, max = {worst:.2e} (need <= 1e-7)", angles.len()),
    )
}

fn c3_cycle_counts() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [1usize, 3, 5, 7, 9] {
        let dim = fixed_space(&stretched_matrix(p as i64), ONE, 1e-9)
            .unwrap()
            .dim;
        let orbits = orbit_count(p);
        pass &= dim == orbits;
        parts.push(format!("p={p}: dim {dim} / orbits {orbits}"));
    }
    outcome(pass, parts.join(", "))
}

fn c4_rotation_sum() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [1i64, 3, 5, 7, 9, 15] {
        let h = fejer_oracle(p, 1, (p * p) as f64);
        let mut sum = LaurentPoly::zero();
        for k in 0..p {
            let rho = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64);
            sum = &sum + &h.rotate(rho).unwrap();
        }
        worst = worst.max(sum.max_abs_diff(&LaurentPoly::one()));
    }
    outcome(
        worst <= 1e-12,
        format!("max coefficient error {worst:.2e} (need <= 1e-12)"),
    )
}

fn c5_partial_sums() -> Outcome {
    let o1 = cycle_eigenfunction(9, &[0]).unwrap();
    let o2 = cycle_eigenfunction(9, &[1, 2, 4, 8, 7, 5]).unwrap();
    let o3 = cycle_eigenfunction(9, &[3, 6]).unwrap();
    let partial = &o1 + &o3;
    let mut grid_err: f64 = 0.0;
    for i in 0..512 {
        let x = 2.0 * PI * (i as f64 + 0.5) / 512.0;
        let closed = (4.5 * x).sin().powi(2) / (9.0 * (1.5 * x).sin().powi(2));
        grid_err = grid_err.max((partial.eval(x) - closed).norm());
    }
    let total_err = (&(&o1 + &o2) + &o3).max_abs_diff(&LaurentPoly::one());
    outcome(
        grid_err <= 1e-10 && total_err <= 1e-12,
        format!("grid error {grid_err:.2e} (<= 1e-10), full sum error {total_err:.2e} (<= 1e-12)"),
    )
}

fn c6_haar() -> Outcome {
    let h = Filter::haar();
    let ev = spectrum(&lawton_matrix(&h, h.m0()).unwrap()).unwrap();
    let expected = [1.0, 0.5, 0.5];
    let err = if ev.len() == 3 {
        ev.iter()
            .zip(expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let report = orthogonality_verdict(&h, 1e-9).unwrap();
    outcome(
        err <= 1e-12 && report.verdict == Verdict::Orthogonal && report.eigenvalue1_dimension == 1,
        format!(
            "spectrum error {err:.2e} (<= 1e-12), verdict {} dim {}",
            report.verdict, report.eigenvalue1_dimension
        ),
    )
}

fn c7_elemprop() -> Outcome {
    let s = elemprop_suite(2024, 100).unwrap();
    let worst = s.max_residuals.iter().cloned().fold(0.0, f64::max);
    outcome(
        s.passed == 100 && worst <= 1e-11,
        format!(
            "{}/100 cases, max residual {worst:.2e} (<= 1e-11)",
            s.passed
        ),
    )
}

fn eval_raw(p: &LaurentPoly, theta: f64) -> Complex64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * Complex64::from_polar(1.0, -((p.min_deg() + i as i64) as f64) * theta))
        .sum()
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let len = rng.gen_range(1..=9);
    let lo = rng.gen_range(-4i64..=4);
    LaurentPoly::new(
        lo,
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

fn c8_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let scale = rng.gen_range(2i64..=4);
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        let f = random_poly(&mut rng);
        let m0 = Filter::new(a.clone(), scale).unwrap();
        let r = ruelle_apply(&m0, &b, &f);
        for i in 0..64 {
            let theta = 2.0 * PI * i as f64 / 64.0;
            let avg: Complex64 = (0..scale)
                .map(|j| {
                    let w = (theta + 2.0 * PI * j as f64) / scale as f64;
                    eval_raw(&a, w).conj() * eval_raw(&b, w) * eval_raw(&f, w)
                })
                .sum::<Complex64>()
                / scale as f64;
            worst = worst.max((r.eval(theta) - avg).norm());
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max deviation {worst:.2e} over 20 x 64 (<= 1e-9)"),
    )
}

fn c9_cascade() -> Outcome {
    let h = Filter::haar();
    let s9 = stretched_haar_filter(9).unwrap();
    let grid = GridSpec::period(256);
    let haar_err = h_cross_approx(&h, &h, 20, 1000, grid)
        .unwrap()
        .max_abs_diff(|_| ONE);
    let fejer = fejer_oracle(9, 1, 81.0);
    let s9_err = h_cross_approx(&s9, &s9, 20, 1000, grid)
        .unwrap()
        .max_abs_diff(|w| fejer.eval(w));
    outcome(
        haar_err <= 2e-3 && s9_err <= 5e-3,
        format!("Haar error {haar_err:.2e} (<= 2e-3), p=9 error {s9_err:.2e} (<= 5e-3)"),
    )
}

fn c10a_haar_box() -> Outcome {
    let h = Filter::haar();
    let mut exact = true;
    for iters in [1, 10] {
        let g = cascade_time(&h, iters, 1024).unwrap();
        exact &= g.points().all(|(x, v)| {
            let boxv = if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
            v.re == boxv && v.im == 0.0
        });
    }
    outcome(
        exact,
        "M χ_[0,1) = χ_[0,1) bitwise after 1 and 10 iterations",
    )
}

fn c10b_stretched_cascade() -> Outcome {
    let g = cascade_time(&stretched_haar_filter(9).unwrap(), 10, 1024).unwrap();
    let err =
        g.l2_distance(|x| Complex64::new(if x > 0.0 && x < 9.0 { 1.0 / 9.0 } else { 0.0 }, 0.0));
    outcome(
        err <= 1e-6,
        format!("L2 error {err:.4e} after 10 iterations (need <= 1e-6)"),
    )
}

fn c11a_bound() -> Outcome {
    let h_phi = fejer_h(9).unwrap();
    let h_o3 = cycle_eigenfunction(9, &[3, 6]).unwrap();
    let r = cross_bound_check(&h_o3, &h_phi, &h_phi, 256, 1e-8).unwrap();
    outcome(
        r.violations == 0 && r.c_max.is_finite(),
        format!(
            "violations = {}, c_max = {:.3e} (need 0, finite)",
            r.violations, r.c_max
        ),
    )
}

fn c11b_bound() -> Outcome {
    let h_phi = fejer_h(9).unwrap();
    let r = cross_bound_check(&LaurentPoly::one(), &h_phi, &h_phi, 256, 1e-8).unwrap();
    outcome(
        r.violations > 0,
        format!("violations = {} (need > 0)", r.violations),
    )
}

fn c12_cli() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_rl"))
            .args(args)
            .env_remove("RL_DEFAULT_TOL")
            .output()
            .unwrap()
            .stdout
    };
    let cycles = [run(&["cycles", "--p", "9"]), run(&["cycles", "--p", "9"])];
    let verdict = [
        run(&["verdict", "--filter", "stretched:9"]),
        run(&["verdict", "--filter", "stretched:9"]),
    ];
    let identical = cycles[0] == cycles[1] && verdict[0] == verdict[1];
    let cycles_ok = cycles[0] == b"{\"p\":9,\"cycles\":[[0],[1,2,4,5,7,8],[3,6]]}\n";
    let v: serde_json::Value = serde_json::from_slice(&verdict[0]).unwrap();
    let verdict_ok = v["verdict"] == "Fails" && v["dim"] == 3;
    outcome(
        identical && cycles_ok && verdict_ok,
        format!("byte-identical {identical}, cycles match {cycles_ok}, verdict Fails/dim 3 {verdict_ok}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("1   p=9 eigenspace dimension", c1_dimension),
        ("2   p=9 basis span", c2_span),
        ("3   cycle counts", c3_cycle_counts),
        ("4   rotation sum of h_phi", c4_rotation_sum),
        ("5   p=9 partial sums", c5_partial_sums),
        ("6   Haar spectrum and verdict", c6_haar),
        ("7   elementary identities", c7_elemprop),
        ("8   root-averaging oracle", c8_oracle),
        ("9   cascade periodization", c9_cascade),
        ("10a Haar box fixed point", c10a_haar_box),
        ("10b stretched:9 time cascade", c10b_stretched_cascade),
        ("11a bound for h_O3", c11a_bound),
        ("11b bound for constant", c11b_bound),
        ("12  CLI determinism", c12_cli),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
