use airy_core::coeffs::middle::{middle_coeff, middle_coeff_exact};
use airy_core::coeffs::oracle::{oracle_invert, ORACLE_MAX_ORDER};
use airy_core::coeffs::{build_ab_table, chi_derivative, ScaledRational};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn scaled_eq(x: &ScaledRational, coeff: &BigRational, unit: i8) -> bool {
    x.unit == unit && &x.coeff == coeff
}

#[test]
fn middle_coefficients_equal_the_inversion() {
    let oracle = oracle_invert(ORACLE_MAX_ORDER).unwrap();
    for n in 1..=ORACLE_MAX_ORDER {
        assert_eq!(middle_coeff_exact(n), oracle.inversion[n], "n={n}");
        let f = middle_coeff(n, Complex64::new(1.0, 0.0)).unwrap();
        let o = &oracle.inversion[n];
        let want = Complex64::new(o.re.to_f64().unwrap(), o.im.to_f64().unwrap());
        assert!((f - want).norm() <= 1e-12 * want.norm(), "n={n}");
    }
}

#[test]
fn chi_taylor_coefficients_equal_the_composition() {
    let oracle = oracle_invert(ORACLE_MAX_ORDER).unwrap();
    let table = build_ab_table(20).unwrap();
    for m in 0..=20 {
        assert!(scaled_eq(table.a_taylor_exact(m).unwrap(), &oracle.chi[m], 1), "a m={m}");
        assert!(scaled_eq(table.b_taylor_exact(m).unwrap(), &oracle.chi_recip[m], -1), "b m={m}");
        let s6 = 6f64.cbrt();
        let a = oracle.chi[m].to_f64().unwrap() * s6;
        let b = oracle.chi_recip[m].to_f64().unwrap() / s6;
        assert!(((table.a(m) - a) / a).abs() <= 1e-12);
        assert!(((table.b(m) - b) / b).abs() <= 1e-12);
    }
}

#[test]
fn chi_derivatives_vanish_off_multiples_of_three() {
    for n in 1..=60 {
        let d = chi_derivative(n).unwrap();
        assert_eq!(d.coeff.is_zero(), n % 3 != 0, "n={n}");
    }
}

#[test]
fn coefficient_growth_matches_the_radius() {
    // radius (3/4)^{1/3} in t, so successive ratios in u = t³ approach 4/3
    let table = build_ab_table(60).unwrap();
    for m in 40..60 {
        for ratio in [table.a(m + 1) / table.a(m), table.b(m + 1) / table.b(m)] {
            assert!((ratio.abs() / (4.0 / 3.0) - 1.0).abs() <= 0.05, "m={m} ratio={ratio}");
        }
    }
    let root = |m: usize| table.a(m).abs().powf(1.0 / m as f64);
    assert!(root(20) < root(40) && root(40) < root(60) && root(60) < 4.0 / 3.0);
}
