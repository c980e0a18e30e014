//! q-integers, q-factorials and Gaussian binomials as Laurent polynomials.

use super::LaurentPoly;
use crate::error::{Error, Result};

/// `[n]_q = (1 - q^n)/(1 - q)`. For negative `n` this is `-q^n [-n]_q`.
pub fn qint(n: i64) -> LaurentPoly {
    if n >= 0 {
        LaurentPoly::from_coeffs(0, &vec![1; n as usize])
    } else {
        -&qint(-n).shift(n)
    }
}

/// `[p]_q! = [1]_q [2]_q ... [p]_q`.
pub fn qfact(p: u32) -> LaurentPoly {
    (1..=p as i64).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k))
}

/// Gaussian binomial `[p]_q! / ([i]_q! [p-i]_q!)`, obtained by exact
/// polynomial division.
pub fn qbinom(p: u32, i: u32) -> Result<LaurentPoly> {
    if i > p {
        return Err(Error::Precondition(format!("qbinom({p},{i}): need 0 <= i <= p")));
    }
    let den = &qfact(i) * &qfact(p - i);
    qfact(p)
        .div_exact(&den)
        .ok_or_else(|| Error::Precondition(format!("qbinom({p},{i}): division was not exact")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(qint(3), LaurentPoly::from_coeffs(0, &[1, 1, 1]));
        assert_eq!(qint(0), LaurentPoly::zero());
        assert_eq!(qbinom(2, 1).unwrap(), LaurentPoly::from_coeffs(0, &[1, 1]));
        assert_eq!(qbinom(4, 2).unwrap(), LaurentPoly::from_coeffs(0, &[1, 1, 2, 1, 1]));
        assert!(qbinom(2, 3).is_err());
    }

    #[test]
    fn negative_qint_matches_definition() {
        // (1 - q^-2)/(1 - q) = -q^-2 - q^-1
        assert_eq!(qint(-2), LaurentPoly::from_coeffs(-2, &[-1, -1]));
    }

    proptest! {
        #[test]
        fn symmetry_and_pascal(p in 1u32..12, i in 0u32..12) {
            prop_assume!(i <= p);
            let b = qbinom(p, i).unwrap();
            prop_assert!(b.has_nonnegative_integer_coeffs());
            prop_assert_eq!(&b, &qbinom(p, p - i).unwrap());
            if i >= 1 {
                let lhs = &qbinom(p - 1, i - 1).unwrap()
                    + &qbinom(p - 1, i).map(|x| x.shift(i as i64)).unwrap_or_default();
                prop_assert_eq!(b, lhs);
            }
        }
    }
}
