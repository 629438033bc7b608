use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use unimoments::exact::{binomial, rat, rat_int, BigInt, Rational};
use unimoments::ffield::{self, FqPoly};
use unimoments::gamma;
use unimoments::moments::{self, Branch};
use unimoments::Budget;

#[test]
fn lattice_dp_matches_brute_force() {
    for k in 1..=3 {
        for n in 1..=4 {
            let brute = moments::bruteforce_counts(k, n).unwrap();
            let dp = moments::lattice_dp_counts(k, n, &Budget::default()).unwrap();
            let brute: Vec<BigInt> = brute.into_iter().map(BigInt::from).collect();
            assert_eq!(brute, dp, "k={k} N={n}");
        }
    }
}

#[test]
fn three_routes_agree() {
    for (k, n) in [(2, 9), (3, 6), (4, 4), (5, 2)] {
        let table = moments::moment_table(k, n).unwrap();
        for m in 0..=k * n {
            let expect = &table.values()[m as usize];
            assert_eq!(&moments::ik_weyl_sum(k, m, n).unwrap(), expect, "weyl k={k} m={m} N={n}");
            assert_eq!(&moments::ik_lattice_dp(k, m, n).unwrap(), expect, "dp k={k} m={m} N={n}");
            assert_eq!(&moments::ik_exact(k, m, n).unwrap(), expect);
        }
    }
}

#[test]
fn closed_form_branches() {
    for k in 2..=4 {
        for n in 1..=6 {
            for m in 0..=k * n {
                let dp = moments::ik_lattice_dp(k, m, n).unwrap();
                match moments::ik_closed_form(k, m, n).unwrap() {
                    Some(v) => assert_eq!(v, dp),
                    None => assert_eq!(Branch::of(k, m, n), Branch::Middle),
                }
            }
        }
    }
}

#[test]
fn contingency_matches_low_range() {
    for k in 1..=3 {
        for n in 2..=4 {
            for m in 0..=n {
                let dim = i64::from(k * k) - 1;
                let b = binomial(i64::from(m) + dim, dim).unwrap();
                assert_eq!(moments::ik_contingency(k, m, n).unwrap(), b);
            }
        }
    }
}

#[test]
fn poly8_covers_the_middle_band() {
    for n in [6u32, 8, 10] {
        let table = moments::moment_table(3, n).unwrap();
        let p = moments::poly8(n);
        for m in n - 3..=2 * n + 3 {
            let expect = Rational::from_integer(table.values()[m as usize].clone());
            assert_eq!(p.eval(&rat_int(m)), expect, "N={n} m={m}");
        }
        // the binomial stops at m = N
        let dim = 8;
        let b = binomial(i64::from(n) + 3 + dim, dim).unwrap();
        assert_ne!(table.values()[(n + 3) as usize], b);
    }
}

#[test]
fn mixed_moment_equals_contingency_count() {
    // ∫ Sc_1² conj(Sc_2) dU equals the number of 2×1 tables with rows (1,1), column 2
    let est = moments::secular_product_moment(&[1, 1], &[2], 4, 40_000, 5).unwrap();
    let exact = moments::contingency_count(&[1, 1], &[2]).unwrap();
    assert_eq!(exact, BigInt::from(1));
    assert!((est.mean.re - 1.0).abs() <= 4.0 * est.stderr_re, "{est:?}");
    assert!(est.mean.im.abs() <= 4.0 * est.stderr_im.max(1e-12), "{est:?}");
}

#[test]
fn gamma_symmetry_and_validation() {
    for k in 2..=3 {
        for j in 1..(6 * k) {
            let c = rat(i64::from(j), 6);
            let a = gamma::gamma_at_rational(k, &c).unwrap();
            let b = gamma::gamma_at_rational(k, &(rat_int(k) - &c)).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn gamma_pieces_continuous() {
    for k in 2..=4 {
        let g = gamma::gamma_full(k).unwrap();
        for r in 1..k {
            let x = rat_int(r);
            assert_eq!(g.pieces()[r as usize - 1].eval(&x), g.pieces()[r as usize].eval(&x));
        }
        assert!(g.eval(&rat_int(0)).unwrap().is_zero());
        assert!(g.eval(&rat_int(k)).unwrap().is_zero());
    }
}

#[test]
fn gamma_monte_carlo_grid() {
    for (k, c) in [(2, rat(1, 3)), (2, rat(5, 4)), (3, rat(1, 2)), (3, rat(7, 4))] {
        let exact = unimoments::exact::to_f64(&gamma::gamma_at_rational(k, &c).unwrap());
        let e = gamma::gamma_monte_carlo(k, unimoments::exact::to_f64(&c), 100_000, 42).unwrap();
        assert!(e.within(exact, 4.0), "k={k} c={c}: {e:?} vs {exact}");
    }
}

#[test]
fn short_interval_means_and_zero_range() {
    for q in [2u32, 3, 5] {
        for k in [2u32, 3] {
            for n in 2..=5 {
                let table = ffield::dk_table(q, n, k).unwrap();
                for h in 0..=n - 2 {
                    let r = ffield::short_interval_variance_from(&table, h).unwrap();
                    let c = binomial(i64::from(n + k - 1), i64::from(k - 1)).unwrap();
                    let mean = u64::from(q).pow(h + 1) * c.to_u64().unwrap();
                    assert_eq!(r.mean(), &rat_int(mean));
                    if h >= n * (k - 1) / k {
                        assert!(r.variance().is_zero(), "q={q} k={k} n={n} h={h}");
                    }
                }
            }
        }
    }
}

#[test]
fn progression_routes_agree() {
    for (q, coeffs, n, k) in [(3, "1,0,1", 2, 2), (5, "0,1,1", 2, 3), (2, "1,1,1", 2, 3), (7, "1,0,1", 1, 2)] {
        let m = FqPoly::parse(q, coeffs).unwrap();
        let direct = ffield::ap_variance_direct(q, &m, n, k).unwrap();
        let chars = ffield::ap_variance_characters(q, &m, n, k).unwrap();
        assert_eq!(direct.variance(), &chars, "q={q} Q={m}");
    }
}

#[test]
fn even_characters_number_phi_over_q_minus_one() {
    for (q, coeffs) in [(3, "1,0,1"), (5, "1,1,0,1"), (3, "0,1,0,1")] {
        let m = FqPoly::parse(q, coeffs).unwrap();
        let chars = ffield::characters_mod(&m).unwrap();
        let even = chars.iter().filter(|c| c.is_even()).count() as u64;
        assert_eq!(even, ffield::phi(&m).unwrap() / u64::from(q - 1));
    }
}

#[test]
fn m_coefficient_bound() {
    // |M(n; d_k χ)| is at most the number of factorizations, q^n C(n+k-1,k-1)
    let m = FqPoly::parse(5, "1,1,0,1").unwrap();
    for chi in ffield::characters_mod(&m).unwrap().iter().skip(1) {
        for n in 0..=4 {
            let v = ffield::m_coefficient(chi, n, 2).unwrap().norm();
            assert!(v <= 5f64.powi(n as i32) * f64::from(n + 1) + 1e-9);
        }
        assert!(ffield::m_coefficient(chi, 5, 2).unwrap().norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn functional_equation(k in 1u32..=4, n in 1u32..=6, m_frac in 0.0f64..=1.0) {
        let m = ((f64::from(k * n)) * m_frac).round() as u32;
        prop_assert_eq!(
            moments::ik_exact(k, m, n).unwrap(),
            moments::ik_exact(k, k * n - m, n).unwrap()
        );
    }

    #[test]
    fn dk_multiplicative(a in 0u64..243, b in 0u64..27) {
        let table = ffield::dk_table(3, 8, 3).unwrap();
        let f = FqPoly::from_monic_code(3, 5, a);
        let g = FqPoly::from_monic_code(3, 3, b);
        prop_assume!(f.gcd(&g).degree() == Some(0));
        prop_assert_eq!(table.dk(&f.mul(&g)).unwrap(), table.dk(&f).unwrap() * table.dk(&g).unwrap());
    }

    #[test]
    fn dk_prime_powers(code in 0u64..9, e in 1u32..=4, k in 1u32..=4) {
        let p = FqPoly::from_monic_code(3, 2, code);
        prop_assume!(p.is_irreducible());
        let table = ffield::dk_table(3, 8, k).unwrap();
        let pe = (0..e).fold(FqPoly::one(3), |acc, _| acc.mul(&p));
        let expect = binomial(i64::from(e + k - 1), i64::from(k - 1)).unwrap();
        prop_assert_eq!(BigInt::from(table.dk(&pe).unwrap()), expect);
    }

    #[test]
    fn characters_multiplicative(a in 0u64..125, b in 0u64..125) {
        let m = FqPoly::parse(5, "2,0,1,1").unwrap();
        let f = FqPoly::from_monic_code(5, 3, a);
        let g = FqPoly::from_monic_code(5, 3, b);
        for chi in ffield::characters_mod(&m).unwrap().iter().step_by(7) {
            let lhs = chi.eval(&f.mul(&g));
            let rhs = chi.eval(&f) * chi.eval(&g);
            prop_assert!((lhs - rhs).norm() < 1e-9);
            prop_assert_eq!(lhs.norm() == 0.0, f.mul(&g).gcd(&m).degree() != Some(0));
        }
    }
}
