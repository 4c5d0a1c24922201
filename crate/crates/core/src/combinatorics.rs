//! Generalized binomial coefficients, Gaussian q-binomial coefficients and
//! q-integers.
//!
//! `binomial` accepts any signed upper argument via the falling-factorial
//! quotient, with the usual convention that the value is 0 for a negative
//! lower argument.
//!
//! `q_binomial` extends the Gaussian coefficient to negative upper
//! arguments through the product formula
//! `prod_{t=1..j} (1 - q^(m+1-t)) / (1 - q^t)`,
//! whose partial products are always exact Laurent polynomials. For
//! nonnegative upper arguments this reproduces the usual convention
//! (0 outside `0 <= j <= m`); for negative upper arguments it yields a
//! signed Laurent monomial times a polynomial, e.g.
//! `[-1 choose j] = (-1)^j q^(-j(j+1)/2)`.
//!
//! The negative-top extension is an interpretation: the strict "0 unless
//! 0 <= j <= m" convention is incompatible with the q-determinant
//! identities checked downstream (the verifier carries a probe that
//! demonstrates the breakage), while the product extension makes them hold.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Polynomial;

/// Binomial coefficient with signed upper argument:
/// `m (m-1) ... (m-j+1) / j!`, and 0 when `j < 0`.
pub fn binomial(m: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for t in 1..=j {
        // Each prefix is itself a binomial coefficient, so the division is exact.
        c = c * BigInt::from(m - t + 1) / BigInt::from(t);
    }
    c
}

/// Gaussian q-binomial coefficient for any signed upper argument.
pub fn q_binomial(m: i64, j: i64) -> Polynomial {
    if j < 0 {
        return Polynomial::zero();
    }
    let mut p = Polynomial::one();
    for t in 1..=j {
        let numerator = &Polynomial::one() - &Polynomial::q_pow(m + 1 - t);
        let denominator = &Polynomial::one() - &Polynomial::q_pow(t);
        p = (&p * &numerator)
            .divide_exact(&denominator)
            .expect("q-binomial prefix division is exact");
        if p.is_zero() {
            break;
        }
    }
    p
}

/// q-integer `[n] = 1 + q + ... + q^(n-1)`; `[0] = 0`.
pub fn q_int(n: u64) -> Polynomial {
    let mut p = Polynomial::zero();
    for e in 0..n {
        p = &p + &Polynomial::q_pow(e as i64);
    }
    p
}
