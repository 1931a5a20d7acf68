//! Exact rational helpers on top of `num-rational`.

use alloc::string::String;
use alloc::format;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Real `m`-th root of `q` when it is rational.
pub fn exact_root(q: &Rational, m: u32) -> Option<Rational> {
    if m == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && m % 2 == 0 {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(m);
        if num_traits::pow(r.clone(), m as usize) == n.abs() {
            Some(r)
        } else {
            None
        }
    };
    let n = root_int(q.numer())?;
    let d = root_int(q.denom())?;
    let r = Rational::new(n, d);
    Some(if q.is_negative() { -r } else { r })
}

pub fn rational_pow(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

pub fn is_one(q: &Rational) -> bool {
    q.is_one()
}

/// `a` or `a/b`, no spaces.
pub fn show(q: &Rational) -> String {
    format!("{q}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(exact_root(&int(-27), 3), Some(int(-3)));
        assert_eq!(exact_root(&frac(16, 81), 4), Some(frac(2, 3)));
        assert_eq!(exact_root(&int(-4), 2), None);
        assert_eq!(exact_root(&int(2), 2), None);
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(show(&frac(-35, 18)), "-35/18");
        assert_eq!(show(&int(7)), "7");
    }
}
