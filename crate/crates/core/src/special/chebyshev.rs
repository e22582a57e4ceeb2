use crate::scalar::Scalar;

/// `U_n(x)` by the three-term recurrence `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn chebyshev_u<T: Scalar>(n: usize, x: &T) -> T {
    chebyshev_u_pair(n, x).0
}

/// `(U_n(x), U_{n-1}(x))`, with `U_{-1} = 0`.
pub fn chebyshev_u_pair<T: Scalar>(n: usize, x: &T) -> (T, T) {
    let two_x = x.clone() + x.clone();
    let mut prev = T::zero();
    let mut cur = T::one();
    for _ in 0..n {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `U_n` extended to negative order by running the recurrence backwards:
/// `U_{-1} = 0`, `U_{-2} = -1`, and generally `U_{-n} = -U_{n-2}`.
pub fn chebyshev_u_ext<T: Scalar>(n: i64, x: &T) -> T {
    match n {
        n if n >= 0 => chebyshev_u(n as usize, x),
        -1 => T::zero(),
        n => -chebyshev_u((-n - 2) as usize, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn low_orders() {
        assert_eq!(chebyshev_u(0, &0.7), 1.0);
        assert!((chebyshev_u(1, &0.7) - 1.4f64).abs() < 1e-15);
        assert_eq!(chebyshev_u(2, &0.5), 0.0);
    }

    #[test]
    fn negative_orders_continue_the_recurrence() {
        let x = 0.37f64;
        for n in -6i64..6 {
            let lhs = chebyshev_u_ext(n + 2, &x);
            let rhs = 2.0 * x * chebyshev_u_ext(n + 1, &x) - chebyshev_u_ext(n, &x);
            assert!((lhs - rhs).abs() < 1e-14, "n = {n}");
        }
    }

    /// `U_n(x)` exactly: with `x = m 2^-s`, `V_n = 2^(sn) U_n` obeys
    /// `V_{n+1} = 2m V_n - 4^s V_{n-1}` over the integers.
    fn exact_u(n: usize, x: f64) -> f64 {
        use num_traits::Float;
        let (mant, exp, sign) = x.integer_decode();
        let m = BigInt::from(mant) * BigInt::from(sign);
        let s = (-exp as i64).max(0);
        let m = if exp > 0 { m << exp as usize } else { m };
        let four_s = BigInt::from(1) << (2 * s) as usize;
        let (mut prev, mut cur) = (BigInt::from(0), BigInt::from(1));
        for _ in 0..n {
            let next = BigInt::from(2) * &m * &cur - &four_s * &prev;
            prev = cur;
            cur = next;
        }
        crate::scalar::bigint_ldexp(&cur, -s * n as i64)
    }

    #[test]
    fn trigonometric_form() {
        for n in 0..=200usize {
            for i in 1..40 {
                let t = std::f64::consts::PI * i as f64 / 40.0;
                let x = t.cos();
                let expected = ((n as f64 + 1.0) * t).sin() / t.sin();
                // the reference itself carries ~7e-13 of rounding at n = 200
                assert!(
                    (chebyshev_u(n, &x) - expected).abs() < 2e-12,
                    "n={n} t={t}"
                );
                assert!((chebyshev_u(n, &x) - exact_u(n, x)).abs() < 1e-12, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn endpoint_values() {
        for n in 0..30usize {
            assert_eq!(chebyshev_u(n, &1.0), (n + 1) as f64);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(chebyshev_u(n, &-1.0), sign * (n + 1) as f64);
        }
    }

    #[test]
    fn exact_on_rationals() {
        // U_3(x) = 8x^3 - 4x
        let x = BigRational::new(BigInt::from(2), BigInt::from(5));
        let expected = BigRational::from_integer(8.into()) * x.powu(3)
            - BigRational::from_integer(4.into()) * x.clone();
        assert_eq!(chebyshev_u(3, &x), expected);
    }
}
