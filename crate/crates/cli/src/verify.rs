use std::fmt::Write;

use num_traits::Zero;
use unimoments::exact::{binomial, factorial, rat, rat_int, rational_string, to_f64, BigInt, DensePoly, Rational};
use unimoments::ffield::{self, FqPoly};
use unimoments::gamma;
use unimoments::moments;
use unimoments::{Error, Result};

use crate::{Suite, VerifyArgs};

struct Report {
    lines: String,
    failures: usize,
    checks: usize,
}

impl Report {
    fn new() -> Self {
        Report { lines: String::new(), failures: 0, checks: 0 }
    }

    fn check(&mut self, name: &str, outcome: Result<String>) {
        self.checks += 1;
        match outcome {
            Ok(detail) => {
                let _ = writeln!(self.lines, "PASS  {name}: {detail}");
            }
            Err(e) => {
                self.failures += 1;
                let _ = writeln!(self.lines, "FAIL  {name}: {e}");
            }
        }
    }
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

/// Runs a suite and returns the report together with the failure count.
pub fn run(a: &VerifyArgs) -> (String, usize) {
    let mut r = Report::new();
    let suites: &[Suite] = match a.suite {
        Suite::All => &[Suite::Moments, Suite::Gamma, Suite::Ff],
        Suite::Moments => &[Suite::Moments],
        Suite::Gamma => &[Suite::Gamma],
        Suite::Ff => &[Suite::Ff],
    };
    for s in suites {
        match s {
            Suite::Moments => moments_suite(&mut r, a.quick, a.seed),
            Suite::Gamma => gamma_suite(&mut r, a.quick, a.seed),
            Suite::Ff => ff_suite(&mut r, a.quick),
            Suite::All => unreachable!(),
        }
    }
    let _ = writeln!(r.lines, "{} checks, {} failed", r.checks, r.failures);
    (r.lines, r.failures)
}

fn moments_suite(r: &mut Report, quick: bool, seed: Option<u64>) {
    r.check("lattice DP equals brute force (k <= 3, N <= 3)", (|| {
        for k in 1..=3 {
            for n in 1..=3 {
                if k == 3 && n == 3 && quick {
                    continue;
                }
                let brute = moments::bruteforce_counts(k, n)?;
                let dp = moments::lattice_dp_counts(k, n, &Default::default())?;
                if brute.iter().map(|&v| BigInt::from(v)).ne(dp.iter().cloned()) {
                    return Err(fail(format!("k={k} N={n}")));
                }
            }
        }
        Ok("all counts equal".into())
    })());

    let n_max = if quick { 5 } else { 8 };
    r.check("binomial range m <= N and functional equation", (|| {
        let mut entries = 0;
        for k in 2..=4 {
            for n in 1..=n_max {
                if k == 4 && n > 5 {
                    continue;
                }
                let dp = moments::lattice_dp_counts(k, n, &Default::default())?;
                let kn = (k * n) as usize;
                for m in 0..=kn {
                    if dp[kn - m] != dp[m] {
                        return Err(fail(format!("I_{k}({m};{n}) != I_{k}({};{n})", kn - m)));
                    }
                    if m as u32 <= n {
                        let b = binomial(m as i64 + i64::from(k * k) - 1, i64::from(k * k) - 1)?;
                        if dp[kn - m] != b {
                            return Err(fail(format!("I_{k}({m};{n}) is not C(m+k^2-1,k^2-1)")));
                        }
                    }
                    entries += 1;
                }
            }
        }
        Ok(format!("{entries} entries"))
    })());

    r.check("Weyl-dimension sum equals lattice DP", (|| {
        for (k, n) in [(2, 7), (3, 5), (4, 3)] {
            let dp = moments::lattice_dp_counts(k, n, &Default::default())?;
            for m in 0..=k * n {
                if moments::ik_weyl_sum(k, m, n)? != dp[(k * n - m) as usize] {
                    return Err(fail(format!("k={k} m={m} N={n}")));
                }
            }
        }
        Ok("k = 2, 3, 4".into())
    })());

    r.check("generating functions P_2, P_3 match the tables", (|| {
        let (n2, n3) = if quick { (8, 6) } else { (12, 10) };
        for (k, top) in [(2, n2), (3, n3)] {
            for n in 1..=top {
                let p = moments::pk_closed_form(k, n)?;
                let t = moments::moment_table(k, n)?;
                for (m, v) in t.values().iter().enumerate() {
                    if p.coeff(m) != Rational::from_integer(v.clone()) {
                        return Err(fail(format!("P_{k} at N={n}, m={m}")));
                    }
                }
            }
        }
        Ok(format!("k=2 up to N={n2}, k=3 up to N={n3}"))
    })());

    r.check("degree-8 middle polynomial for k = 3", (|| {
        let n = 10;
        let poly = moments::poly8(n);
        let t = moments::moment_table(3, n)?;
        for m in n - 3..=2 * n + 3 {
            if poly.eval(&rat_int(m)) != Rational::from_integer(t.values()[m as usize].clone()) {
                return Err(fail(format!("m = {m}")));
            }
        }
        Ok("N-3 <= m <= 2N+3 at N = 10".into())
    })());

    r.check("contingency counts equal the binomial range", (|| {
        for (k, m, n) in [(2, 3, 5), (3, 2, 4), (2, 4, 4)] {
            let c = moments::ik_contingency(k, m, n)?;
            let e = moments::ik_exact(k, m, n)?;
            if c != e {
                return Err(fail(format!("k={k} m={m} N={n}: {c} vs {e}")));
            }
        }
        Ok("three configurations".into())
    })());

    if let Some(seed) = seed {
        r.check("Haar Monte Carlo within 4 standard errors", (|| {
            let samples = if quick { 20_000 } else { 200_000 };
            for (k, m, n) in [(2, 2, 3), (2, 3, 4), (3, 3, 2)] {
                let e = moments::ik_monte_carlo(k, m, n, samples, seed)?;
                let exact = to_f64(&Rational::from_integer(moments::ik_exact(k, m, n)?));
                if !e.within(exact, 4.0) {
                    return Err(fail(format!("k={k} m={m} N={n}: {} +/- {} vs {exact}", e.mean, e.stderr)));
                }
            }
            Ok(format!("{samples} samples, seed {seed}"))
        })());
    }
}

/// The degree-8 middle piece of γ_3 times `8!`.
fn gamma3_middle_times_8_factorial() -> DensePoly {
    DensePoly::from_ints(&[-927, 4392, -8484, 8568, -4830, 1512, -252, 24, -2])
}

fn gamma_suite(r: &mut Report, quick: bool, seed: Option<u64>) {
    r.check("gamma_2 pieces are c^3/6 and (2-c)^3/6", (|| {
        let g = gamma::gamma_full(2)?;
        let x = DensePoly::x();
        let first = x.pow(3).scale(&rat(1, 6));
        let second = (&DensePoly::constant(rat_int(2)) - &x).pow(3).scale(&rat(1, 6));
        if g.pieces() != [first, second] {
            return Err(fail(format!("got {:?}", g.pieces())));
        }
        Ok("coefficient-exact".into())
    })());

    r.check("gamma_3 pieces match the degree-8 formulas", (|| {
        let g = gamma::gamma_full(3)?;
        let inv = Rational::new(1.into(), factorial(8));
        let x = DensePoly::x();
        let expected = [
            x.pow(8).scale(&inv),
            gamma3_middle_times_8_factorial().scale(&inv),
            (&DensePoly::constant(rat_int(3)) - &x).pow(8).scale(&inv),
        ];
        if g.pieces() != expected {
            return Err(fail("pieces differ".into()));
        }
        Ok(format!("gamma_3(3/2) = {}", rational_string(&g.eval(&rat(3, 2))?)))
    })());

    let k_top = if quick { 3 } else { 4 };
    r.check("first piece is c^(k^2-1)/(k^2-1)!", (|| {
        for k in 1..=k_top {
            let g = gamma::gamma_full(k)?;
            if g.pieces()[0] != gamma::first_piece_law(k) {
                return Err(fail(format!("k = {k}")));
            }
        }
        Ok(format!("k <= {k_top}"))
    })());

    r.check("symmetry gamma_k(c) = gamma_k(k-c) on a grid", (|| {
        for k in 2..=3 {
            for j in 0..=4 * k {
                let c = rat(i64::from(j), 4);
                let a = gamma::gamma_at_rational(k, &c)?;
                let b = gamma::gamma_at_rational(k, &(rat_int(k) - &c))?;
                if a != b {
                    return Err(fail(format!("k={k} c={c}")));
                }
            }
        }
        Ok("k = 2, 3 at quarter points".into())
    })());

    r.check("a_2 against 6/pi^2", (|| {
        let a2 = gamma::a_k_constant(2, gamma::DEFAULT_PRIME_CUTOFF)?;
        let target = 6.0 / std::f64::consts::PI.powi(2);
        let diff = (a2 - target).abs();
        if diff > 1e-3 {
            return Err(fail(format!("a_2 = {a2}, off by {diff}")));
        }
        Ok(format!("a_2 = {a2}, difference {diff:.2e}"))
    })());

    r.check("Riemann sums W_2 approach the Fourier integral", (|| {
        let g = gamma::gamma_full(2)?;
        let mut worst: f64 = 0.0;
        for alpha in [0.0, 1.0, 2.0] {
            let target = gamma::fourier_integral(&g, alpha);
            for n in [20u32, 40, 80] {
                let err = (gamma::w_k_riemann(2, alpha, n)? - target).norm();
                if err > 10.0 / f64::from(n) {
                    return Err(fail(format!("alpha={alpha} N={n}: error {err}")));
                }
                worst = worst.max(err * f64::from(n));
            }
        }
        Ok(format!("max N*error = {worst:.4}"))
    })());

    if let Some(seed) = seed {
        r.check("gamma Monte Carlo within 4 standard errors", (|| {
            let samples = if quick { 50_000 } else { 500_000 };
            for (k, c) in [(2, rat(1, 2)), (2, rat(3, 2)), (3, rat(3, 2)), (3, rat(1, 2))] {
                let e = gamma::gamma_monte_carlo(k, to_f64(&c), samples, seed)?;
                let exact = to_f64(&gamma::gamma_at_rational(k, &c)?);
                if !e.within(exact, 4.0) {
                    return Err(fail(format!("k={k} c={c}: {} +/- {} vs {exact}", e.mean, e.stderr)));
                }
            }
            Ok(format!("{samples} samples, seed {seed}"))
        })());
    }
}

fn ff_suite(r: &mut Report, quick: bool) {
    let n_max = if quick { 4 } else { 6 };
    r.check("mean identity and zero variance for large h", (|| {
        let mut configs = 0;
        for q in [3u32, 5] {
            for k in [2u32, 3] {
                for n in 2..=n_max {
                    if q == 5 && n > 5 && quick {
                        continue;
                    }
                    let table = ffield::dk_table(q, n, k)?;
                    for h in 0..=n - 2 {
                        // the mean identity is asserted inside
                        let rep = ffield::short_interval_variance_from(&table, h)?;
                        let threshold = (n * (k - 1)) / k;
                        if h >= threshold && !rep.variance().is_zero() {
                            return Err(fail(format!("q={q} k={k} n={n} h={h}: Var = {}", rep.variance())));
                        }
                        configs += 1;
                    }
                }
            }
        }
        Ok(format!("{configs} configurations"))
    })());

    r.check("progression variance: direct equals character route", (|| {
        let mut cases: Vec<(u32, &str, u32, u32)> = vec![(3, "1,0,1", 2, 2), (5, "0,1,1", 2, 3), (3, "2,1,0,1", 3, 2)];
        if !quick {
            cases.extend([(5, "1,1,0,1", 4, 2), (3, "1,0,1", 2, 3), (5, "2,0,1", 2, 2), (3, "1,2,0,1", 4, 3)]);
        }
        for (q, m, n, k) in &cases {
            let modulus = FqPoly::parse(*q, m)?;
            let direct = ffield::ap_variance_direct(*q, &modulus, *n, *k)?;
            let chars = ffield::ap_variance_characters(*q, &modulus, *n, *k)?;
            let (a, b) = (to_f64(direct.variance()), to_f64(&chars));
            if (a - b).abs() > 1e-6 * a.abs().max(1.0) {
                return Err(fail(format!("q={q} Q={modulus} n={n} k={k}: {a} vs {b}")));
            }
        }
        Ok(format!("{} configurations", cases.len()))
    })());

    r.check("short-interval ratio approaches 1 as q grows", (|| {
        let qs: &[u32] = if quick { &[3, 5] } else { &[5, 7] };
        let mut last = f64::INFINITY;
        let mut out = Vec::new();
        for &q in qs {
            let rep = ffield::short_interval_variance(q, 5, 0, 2)?;
            let dev = (rep.ratio().unwrap_or(f64::NAN) - 1.0).abs();
            if !(dev <= 3.0 / f64::from(q).sqrt()) || dev >= last {
                return Err(fail(format!("q={q}: |ratio - 1| = {dev}")));
            }
            last = dev;
            out.push(format!("q={q}: {dev:.4}"));
        }
        Ok(format!("n=5, h=0, k=2; {}", out.join(", ")))
    })());
}
