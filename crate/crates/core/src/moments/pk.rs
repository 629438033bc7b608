//! Expansions of the rational generating functions `P_2(x)` and `P_3(x)`,
//! and the middle-range polynomial `Poly_8(m)` for `k = 3`.

use crate::error::{ensure, Result};
use crate::exact::{factorial, rat, rat_int, DensePoly, Rational};

fn add_term(terms: &mut Vec<(usize, Rational)>, power: u64, c: Rational) {
    terms.push((power as usize, c));
}

/// Numerator of `P_k(x)`; the full generating function is this divided by
/// `(1 - x)^{k²}`.
pub fn pk_numerator(k: u32, n: u32) -> Result<DensePoly> {
    ensure!(k == 2 || k == 3, "closed-form P_k is only available for k in {{2, 3}} (got k = {k})");
    ensure!(n >= 1, "N must be at least 1");
    let nn = u64::from(n);
    let ni = i64::from(n);
    let mut terms: Vec<(usize, Rational)> = Vec::new();
    if k == 2 {
        let sq = rat_int((2 + ni) * (2 + ni));
        add_term(&mut terms, 0, rat(1, 1));
        add_term(&mut terms, 2 * nn + 4, rat(1, 1));
        add_term(&mut terms, nn + 1, -sq.clone());
        add_term(&mut terms, nn + 2, rat_int(2 * (3 + 4 * ni + ni * ni)));
        add_term(&mut terms, nn + 3, -sq);
    } else {
        let s3 = (3 + ni) * (3 + ni);
        add_term(&mut terms, 0, rat(1, 1));
        add_term(&mut terms, 3 * nn + 9, rat(-1, 1));

        let a = rat_int(s3 * (4 + 5 * ni + ni * ni));
        add_term(&mut terms, nn + 2, a.clone());
        // Antisymmetry under x -> x^{3N+9}/x pairs x^{N+2} with x^{2N+7}.
        add_term(&mut terms, 2 * nn + 7, -a);

        let b = rat_int(s3 * (2 + ni) * (2 + ni)) * rat(1, 4);
        add_term(&mut terms, 2 * nn + 8, b.clone());
        add_term(&mut terms, nn + 1, -b);

        let c = rat_int(s3 * (10 + 7 * ni + ni * ni));
        add_term(&mut terms, nn + 4, c.clone());
        add_term(&mut terms, 2 * nn + 5, -c);

        let d = rat_int(s3 * (ni + 4) * (ni + 4)) * rat(1, 4);
        add_term(&mut terms, 2 * nn + 4, d.clone());
        add_term(&mut terms, nn + 5, -d);

        let e = rat_int(56 + 90 * ni + 51 * ni * ni + 12 * ni.pow(3) + ni.pow(4)) * rat(3, 2);
        add_term(&mut terms, 2 * nn + 6, e.clone());
        add_term(&mut terms, nn + 3, -e);
    }
    let top = terms.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut coeffs = vec![Rational::from_integer(0.into()); top + 1];
    for (p, c) in terms {
        coeffs[p] += c;
    }
    Ok(DensePoly::from_coeffs(coeffs))
}

/// `P_k(x)` expanded through degree `kN`: numerator times the truncated
/// series of `1/(1 - x)^{k²}`. The coefficient of `x^m` is `I_k(m;N)`.
pub fn pk_closed_form(k: u32, n: u32) -> Result<DensePoly> {
    let num = pk_numerator(k, n)?;
    let order = (k * n) as usize + 1;
    let denom = DensePoly::from_ints(&[1, -1]).pow(k * k);
    let inv = denom.series_truncated_inverse(order)?;
    Ok((&num * &inv).truncate(order))
}

/// `C(m + shift, r)` as a polynomial in `m`.
pub fn binomial_poly(shift: i64, r: u32) -> DensePoly {
    let mut acc = DensePoly::one();
    for i in 0..i64::from(r) {
        acc = &acc * &DensePoly::from_ints(&[shift - i, 1]);
    }
    acc.scale(&Rational::new(1.into(), factorial(r)))
}

/// `Poly_8(m)` for a given `N`, as a polynomial in `m`.
pub fn poly8(n: u32) -> DensePoly {
    let ni = i64::from(n);
    let s3 = (3 + ni) * (3 + ni);
    let terms: [(Rational, i64); 6] = [
        (rat(1, 1), 8),
        (-(rat_int(s3 * (ni + 4) * (ni + 4)) * rat(1, 4)), 3 - ni),
        (rat_int(s3 * (10 + 7 * ni + ni * ni)), 4 - ni),
        (
            -(rat_int(56 + 90 * ni + 51 * ni * ni + 12 * ni.pow(3) + ni.pow(4)) * rat(3, 2)),
            5 - ni,
        ),
        (rat_int(s3 * (4 + 5 * ni + ni * ni)), 6 - ni),
        (-(rat_int(s3 * (2 + ni) * (2 + ni)) * rat(1, 4)), 7 - ni),
    ];
    terms.iter().fold(DensePoly::zero(), |acc, (c, shift)| {
        &acc + &binomial_poly(*shift, 8).scale(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;

    #[test]
    fn p2_low_coefficients() {
        let p = pk_closed_form(2, 3).unwrap();
        assert_eq!(p.coeff(2), rat_int(binomial(5, 3).unwrap()));
        assert_eq!(p.degree(), Some(6));
    }

    #[test]
    fn p2_palindromic() {
        for n in 1..12 {
            let p = pk_closed_form(2, n).unwrap();
            let len = (2 * n + 1) as usize;
            for m in 0..len {
                assert_eq!(p.coeff(m), p.coeff(len - 1 - m));
            }
        }
    }

    #[test]
    fn p3_numerator_antisymmetric() {
        for n in 1..8 {
            let num = pk_numerator(3, n).unwrap();
            let top = (3 * n + 9) as usize;
            for i in 0..=top {
                assert_eq!(num.coeff(i), -num.coeff(top - i), "N={n} i={i}");
            }
        }
    }

    #[test]
    fn rejects_other_k() {
        assert!(pk_closed_form(4, 3).is_err());
        assert!(pk_closed_form(1, 3).is_err());
    }

    #[test]
    fn binomial_poly_values() {
        let p = binomial_poly(-2, 3);
        for m in 0..12i64 {
            let x = m - 2;
            let expect = if x >= 0 { binomial(x, 3).unwrap() } else {
                // generalized binomial x(x-1)(x-2)/6 for negative x
                ((x * (x - 1) * (x - 2)) / 6).into()
            };
            assert_eq!(p.eval(&rat_int(m)), rat_int(expect));
        }
    }
}
