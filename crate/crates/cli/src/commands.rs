use std::fmt::Write;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use unimoments::exact::{float_string, rational_string, to_f64, BigInt, Rational};
use unimoments::ffield::{self, FqPoly, VarianceReport};
use unimoments::gamma::{self, ConjectureInput, Prediction};
use unimoments::moments::{self, Branch};
use unimoments::{Budget, Error, Result};

use crate::output::{svg_plot, Csv};
use crate::{
    FfApArgs, FfShortArgs, Format, GammaArgs, GammaMcArgs, IkArgs, KnArgs, PredictArgs, WkArgs,
};

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::Precondition(format!(
            "--format {f:?} is not available here (choose one of {allowed:?})"
        )))
    }
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Precondition(format!("cannot read {s:?} as a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(Rational::new(digits, BigInt::from(10).pow(frac.len() as u32)))
}

pub fn ik(a: &IkArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Text, &[Format::Text, Format::Csv])?;
    let (value, route) = match moments::ik_closed_form(a.k, a.m, a.n)? {
        Some(v) => (v, format!("closed-form-{}", Branch::of(a.k, a.m, a.n).as_str())),
        None => match moments::ik_lattice_dp(a.k, a.m, a.n) {
            Ok(v) => (v, "lattice-dp".to_string()),
            Err(Error::Budget(_)) => (moments::ik_weyl_sum(a.k, a.m, a.n)?, "weyl-sum".to_string()),
            Err(e) => return Err(e),
        },
    };
    let mc = match (a.samples, a.seed) {
        (Some(samples), Some(seed)) => Some(moments::ik_monte_carlo(a.k, a.m, a.n, samples, seed)?),
        _ => None,
    };
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["k", "m", "N", "I_k", "route", "mc_mean", "mc_stderr"]);
            let (mean, se) = mc.map_or((String::new(), String::new()), |e| {
                (float_string(e.mean), float_string(e.stderr))
            });
            csv.row(&[
                a.k.to_string(),
                a.m.to_string(),
                a.n.to_string(),
                value.to_string(),
                route,
                mean,
                se,
            ]);
            csv.finish()
        }
        _ => {
            let mut s = format!("I_{}({};{}) = {value}  [{route}]\n", a.k, a.m, a.n);
            if let Some(e) = mc {
                let z = (e.mean - value.to_f64().unwrap_or(f64::NAN)) / e.stderr;
                let _ = writeln!(
                    s,
                    "Monte Carlo: {} +/- {}  (z = {})",
                    float_string(e.mean),
                    float_string(e.stderr),
                    float_string(z)
                );
            }
            s
        }
    })
}

pub fn table(a: &KnArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Text])?;
    let t = moments::moment_table(a.k, a.n)?;
    let mut csv = Csv::new(&["m", "I_k", "closed_form_branch"]);
    let mut text = String::new();
    for (m, v) in t.values().iter().enumerate() {
        let branch = t.branch(m as u32).as_str();
        csv.row(&[m.to_string(), v.to_string(), branch.to_string()]);
        let _ = writeln!(text, "{m:>4}  {v:>30}  {branch}");
    }
    Ok(if format == Format::Csv { csv.finish() } else { text })
}

pub fn gamma(a: &GammaArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Svg, Format::Text])?;
    if a.resolution == 0 {
        return Err(Error::Precondition("--resolution must be at least 1".into()));
    }
    let g = gamma::gamma_full(a.k)?;
    if format == Format::Text {
        let mut s = String::new();
        for (r, p) in g.pieces().iter().enumerate() {
            let _ = writeln!(s, "[{r}, {}]: {p}", r + 1);
        }
        let _ = writeln!(s, "integral over [0,{}]: {}", a.k, rational_string(&g.integral()));
        return Ok(s);
    }
    let steps = a.k * a.resolution;
    let mut csv = Csv::new(&["c", "gamma_exact", "gamma_float", "piece"]);
    let mut points = Vec::new();
    for j in 0..=steps {
        let c = Rational::new(BigInt::from(j), BigInt::from(a.resolution));
        let v = g.eval(&c)?;
        let piece = (j / a.resolution).min(a.k - 1);
        points.push((to_f64(&c), to_f64(&v)));
        csv.row(&[
            rational_string(&c),
            rational_string(&v),
            float_string(to_f64(&v)),
            piece.to_string(),
        ]);
    }
    Ok(match format {
        Format::Svg => {
            let marks: Vec<f64> = (1..a.k).map(f64::from).collect();
            svg_plot(&format!("gamma_{}(c)", a.k), &points, &marks)
        }
        _ => csv.finish(),
    })
}

pub fn gamma_mc(a: &GammaMcArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Text, &[Format::Text, Format::Csv])?;
    let c = parse_rational(&a.c)?;
    let cf = to_f64(&c);
    let est = gamma::gamma_monte_carlo(a.k, cf, a.samples, a.seed)?;
    let exact = if a.k <= Budget::default().max_gamma_k {
        Some(gamma::gamma_at_rational(a.k, &c)?)
    } else {
        None
    };
    let z = exact.as_ref().map(|e| (est.mean - to_f64(e)) / est.stderr);
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["k", "c", "mc_mean", "mc_stderr", "exact", "z"]);
            csv.row(&[
                a.k.to_string(),
                rational_string(&c),
                float_string(est.mean),
                float_string(est.stderr),
                exact.as_ref().map(rational_string).unwrap_or_default(),
                z.map(float_string).unwrap_or_default(),
            ]);
            csv.finish()
        }
        _ => {
            let mut s = format!(
                "gamma_{}({}) ~ {} +/- {}  ({} samples, seed {})\n",
                a.k,
                rational_string(&c),
                float_string(est.mean),
                float_string(est.stderr),
                a.samples,
                a.seed
            );
            if let (Some(e), Some(z)) = (exact, z) {
                let _ = writeln!(s, "exact: {} = {}  (z = {})", rational_string(&e), float_string(to_f64(&e)), float_string(z));
            }
            s
        }
    })
}

pub fn pk(a: &KnArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Text])?;
    let p = moments::pk_closed_form(a.k, a.n)?;
    let t = moments::moment_table(a.k, a.n)?;
    let mut csv = Csv::new(&["m", "P_k_coefficient", "I_k", "equal"]);
    let mut text = String::new();
    let mut mismatches = 0;
    for (m, v) in t.values().iter().enumerate() {
        let coeff = p.coeff(m);
        let equal = coeff == Rational::from_integer(v.clone());
        mismatches += usize::from(!equal);
        csv.row(&[m.to_string(), rational_string(&coeff), v.to_string(), equal.to_string()]);
        let _ = writeln!(text, "{m:>4}  {:>24}  {v:>24}  {}", rational_string(&coeff), if equal { "ok" } else { "MISMATCH" });
    }
    if mismatches > 0 {
        return Err(Error::Verification(format!(
            "{mismatches} coefficients of P_{} differ from the moment table at N = {}",
            a.k, a.n
        )));
    }
    Ok(if format == Format::Csv { csv.finish() } else { text })
}

fn prediction_lines(s: &mut String, p: &Prediction, shape_name: &str, scale_name: &str, log_name: &str) {
    let _ = writeln!(s, "  a_k               = {}", float_string(p.a_k));
    let _ = writeln!(s, "  {shape_name:<17} = {}", float_string(p.shape));
    let _ = writeln!(s, "  {scale_name:<17} = {}", float_string(p.scale));
    let _ = writeln!(s, "  {log_name:<17} = {}", float_string(p.log_power));
    let _ = writeln!(s, "  prediction        = {}", float_string(p.value));
}

pub fn predict(a: &PredictArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Text, &[Format::Text, Format::Csv])?;
    let (mode, param, p, names) = match (a.delta, a.q_modulus) {
        (Some(delta), _) => {
            let mut input = ConjectureInput::short_interval(a.k, a.x, delta);
            input.prime_cutoff = a.prime_cutoff;
            let p = gamma::predict_variance_si(&input)?;
            ("short-interval", delta, p, ("P_k(delta)", "H = X^delta", "(log X)^(k^2-1)"))
        }
        (None, Some(q)) => {
            let mut input = ConjectureInput::progression(a.k, a.x, q);
            input.prime_cutoff = a.prime_cutoff;
            input.epsilon = a.epsilon;
            let p = gamma::predict_variance_ap(&input)?;
            ("progression", q, p, ("gamma_k(logX/logQ)", "X/Q", "(log Q)^(k^2-1)"))
        }
        (None, None) => return Err(Error::Precondition("give either --delta or --Q".into())),
    };
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "mode", "k", "X", "parameter", "a_k", "shape", "scale", "log_power", "prediction", "label",
            ]);
            csv.row(&[
                mode.to_string(),
                a.k.to_string(),
                float_string(a.x),
                float_string(param),
                float_string(p.a_k),
                float_string(p.shape),
                float_string(p.scale),
                float_string(p.log_power),
                float_string(p.value),
                "HEURISTIC".to_string(),
            ]);
            csv.finish()
        }
        _ => {
            let mut s = format!(
                "HEURISTIC {mode} variance prediction (conjectural, no error term)\n  k = {}, X = {}, {} = {}, primes up to {}\n",
                a.k,
                float_string(a.x),
                if mode == "progression" { "Q" } else { "delta" },
                float_string(param),
                a.prime_cutoff
            );
            prediction_lines(&mut s, &p, names.0, names.1, names.2);
            s
        }
    })
}

fn report_fields(r: &VarianceReport) -> [String; 4] {
    [
        rational_string(r.variance()),
        float_string(to_f64(r.variance())),
        rational_string(r.prediction()),
        r.ratio_label(),
    ]
}

pub fn ff_short(a: &FfShortArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Text])?;
    if a.n < 2 {
        return Err(Error::Precondition(format!("short intervals need n >= 2 (got n = {})", a.n)));
    }
    let hs: Vec<u32> = match a.h {
        Some(h) => vec![h],
        None => (0..=a.n - 2).collect(),
    };
    if let Some(&h) = hs.iter().find(|&&h| h + 2 > a.n) {
        return Err(Error::Precondition(format!("need 0 <= h <= n - 2 (got h = {h}, n = {})", a.n)));
    }
    let start = Instant::now();
    eprintln!("building d_{} table over F_{}[t] up to degree {} ...", a.k, a.q, a.n);
    let table = ffield::dk_table(a.q, a.n, a.k)?;
    eprintln!("  {} monic polynomials of degree {} swept in {:.2?}", u64::from(a.q).pow(a.n), a.n, start.elapsed());
    let mut csv = Csv::new(&[
        "q", "n", "h", "k", "H", "I_k", "mean", "Var", "Var_float", "prediction", "ratio",
    ]);
    let mut text = String::new();
    for h in hs {
        let r = ffield::short_interval_variance_from(&table, h)?;
        let big_h = u64::from(a.q).pow(h + 1);
        let ik = r.prediction() / Rational::from_integer(BigInt::from(big_h));
        let [var, var_f, pred, ratio] = report_fields(&r);
        let _ = writeln!(
            text,
            "q={} n={} h={h} k={}: Var = {var} ({var_f}), H*I_k(n;n-h-2) = {pred}, ratio = {ratio}",
            a.q, a.n, a.k
        );
        csv.row(&[
            a.q.to_string(),
            a.n.to_string(),
            h.to_string(),
            a.k.to_string(),
            big_h.to_string(),
            rational_string(&ik),
            rational_string(r.mean()),
            var,
            var_f,
            pred,
            ratio,
        ]);
    }
    Ok(if format == Format::Csv { csv.finish() } else { text })
}

pub fn ff_ap(a: &FfApArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Text])?;
    let modulus = FqPoly::parse(a.q, &a.modulus)?;
    let r = ffield::ap_variance_direct(a.q, &modulus, a.n, a.k)?;
    let via_chars = ffield::ap_variance_characters(a.q, &modulus, a.n, a.k)?;
    let agree = &via_chars == r.variance();
    let phi = ffield::phi(&modulus)?;
    let deg = modulus.degree().unwrap_or(0);
    let scale = Rational::new(BigInt::from(a.q).pow(a.n), BigInt::from(a.q).pow(deg));
    let ik = if scale.is_zero() { Rational::zero() } else { r.prediction() / &scale };
    let [var, var_f, pred, ratio] = report_fields(&r);
    let out = match format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "q", "Q", "n", "k", "Phi", "I_k", "mean", "Var_direct", "Var_direct_float",
                "Var_characters", "prediction", "ratio", "routes_agree",
            ]);
            csv.row(&[
                a.q.to_string(),
                modulus.to_string(),
                a.n.to_string(),
                a.k.to_string(),
                phi.to_string(),
                rational_string(&ik),
                rational_string(r.mean()),
                var,
                var_f,
                rational_string(&via_chars),
                pred,
                ratio,
                agree.to_string(),
            ]);
            csv.finish()
        }
        _ => format!(
            "q={} Q={modulus} n={} k={}: Phi(Q) = {phi}\n  Var (direct)     = {var} ({var_f})\n  Var (characters) = {}\n  (q^n/|Q|) I_k(n; deg Q - 1) = {pred}\n  ratio = {ratio}\n",
            a.q,
            a.n,
            a.k,
            rational_string(&via_chars)
        ),
    };
    if !agree {
        return Err(Error::Verification(format!(
            "character route gives {} but direct enumeration gives {}",
            rational_string(&via_chars),
            rational_string(r.variance())
        )));
    }
    Ok(out)
}

fn complex_string(z: num_complex::Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", float_string(z.re), float_string(z.im.abs()))
}

pub fn wk(a: &WkArgs, format: Option<Format>) -> Result<String> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Text])?;
    let w = gamma::w_k_riemann(a.k, a.alpha, a.n)?;
    let g = gamma::gamma_full(a.k)?;
    let integral = gamma::fourier_integral(&g, a.alpha);
    let err = (w - integral).norm();
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "k", "alpha", "N", "W_re", "W_im", "integral_re", "integral_im", "abs_error", "error_times_N",
            ]);
            csv.row(&[
                a.k.to_string(),
                float_string(a.alpha),
                a.n.to_string(),
                float_string(w.re),
                float_string(w.im),
                float_string(integral.re),
                float_string(integral.im),
                float_string(err),
                float_string(err * f64::from(a.n)),
            ]);
            csv.finish()
        }
        _ => format!(
            "W_{}({}, {}) = {}\nintegral       = {}\n|difference|   = {}  (N * |difference| = {})\n",
            a.k,
            float_string(a.alpha),
            a.n,
            complex_string(w),
            complex_string(integral),
            float_string(err),
            float_string(err * f64::from(a.n))
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("1.25").unwrap(), Rational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }
}
