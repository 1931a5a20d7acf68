//! Elements of a quaternion symbol algebra `(a,b)_ℚ`.

use core::fmt;

use num_traits::{One, Zero};

use crate::qarith::{QuaternionSymbol, SquareClass};
use crate::rational::{frac, int};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QalgError {
    #[error("elements of {0} and {1} cannot be combined")]
    AlgebraMismatch(QuaternionSymbol, QuaternionSymbol),
    #[error("element has reduced norm zero")]
    ZeroNorm,
    #[error("no built-in primitive {n}-th root of unity in {algebra}; need a = {needed}")]
    UnsupportedZeta {
        n: u32,
        algebra: QuaternionSymbol,
        needed: i64,
    },
}

/// `x0 + x1·i + x2·j + x3·ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionElement {
    pub algebra: QuaternionSymbol,
    pub c: [Rational; 4],
}

impl QuaternionElement {
    pub fn new(algebra: QuaternionSymbol, c: [Rational; 4]) -> Self {
        QuaternionElement { algebra, c }
    }

    pub fn scalar(algebra: QuaternionSymbol, x: Rational) -> Self {
        Self::new(algebra, [x, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn one(algebra: QuaternionSymbol) -> Self {
        Self::scalar(algebra, Rational::one())
    }

    pub fn i(algebra: QuaternionSymbol) -> Self {
        Self::new(algebra, [int(0), int(1), int(0), int(0)])
    }

    pub fn j(algebra: QuaternionSymbol) -> Self {
        Self::new(algebra, [int(0), int(0), int(1), int(0)])
    }

    pub fn ij(algebra: QuaternionSymbol) -> Self {
        Self::new(algebra, [int(0), int(0), int(0), int(1)])
    }

    fn check(&self, other: &Self) -> Result<(), QalgError> {
        if self.algebra != other.algebra {
            return Err(QalgError::AlgebraMismatch(self.algebra, other.algebra));
        }
        Ok(())
    }

    fn ab(&self) -> (Rational, Rational) {
        (self.algebra.a.to_rational(), self.algebra.b.to_rational())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QalgError> {
        self.check(other)?;
        let c = core::array::from_fn(|k| &self.c[k] + &other.c[k]);
        Ok(Self::new(self.algebra, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QalgError> {
        self.check(other)?;
        let c = core::array::from_fn(|k| &self.c[k] - &other.c[k]);
        Ok(Self::new(self.algebra, c))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.algebra, core::array::from_fn(|k| &self.c[k] * r))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QalgError> {
        qmul(self, other)
    }

    pub fn conjugate(&self) -> Self {
        let [x0, x1, x2, x3] = &self.c;
        Self::new(self.algebra, [x0.clone(), -x1, -x2, -x3])
    }

    pub fn nrd(&self) -> Rational {
        let (a, b) = self.ab();
        let [x0, x1, x2, x3] = &self.c;
        x0 * x0 - &a * x1 * x1 - &b * x2 * x2 + &a * &b * x3 * x3
    }

    pub fn inverse(&self) -> Result<Self, QalgError> {
        qinv(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.algebra);
        for _ in 0..e {
            r = qmul(&r, self).expect("same algebra");
        }
        r
    }

    pub fn is_central(&self) -> bool {
        is_central(self)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_central() && self.c[0].is_one()
    }

    /// The rational value of a central element.
    pub fn central_value(&self) -> Option<&Rational> {
        self.is_central().then_some(&self.c[0])
    }
}

impl fmt::Display for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = &self.c;
        write!(f, "{x0} + {x1}*i + {x2}*j + {x3}*ij")
    }
}

pub fn qmul(x: &QuaternionElement, y: &QuaternionElement) -> Result<QuaternionElement, QalgError> {
    x.check(y)?;
    let (a, b) = x.ab();
    let [x0, x1, x2, x3] = &x.c;
    let [y0, y1, y2, y3] = &y.c;
    let c0 = x0 * y0 + &a * x1 * y1 + &b * x2 * y2 - &a * &b * x3 * y3;
    let c1 = x0 * y1 + x1 * y0 - &b * x2 * y3 + &b * x3 * y2;
    let c2 = x0 * y2 + x2 * y0 + &a * x1 * y3 - &a * x3 * y1;
    let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
    Ok(QuaternionElement::new(x.algebra, [c0, c1, c2, c3]))
}

pub fn qinv(x: &QuaternionElement) -> Result<QuaternionElement, QalgError> {
    let n = x.nrd();
    if n.is_zero() {
        return Err(QalgError::ZeroNorm);
    }
    Ok(x.conjugate().scale(&n.recip()))
}

pub fn is_central(x: &QuaternionElement) -> bool {
    x.c[1..].iter().all(Zero::is_zero)
}

/// A primitive `n`-th root of unity for `n ∈ {3,4,6}` in the presentations
/// `(−1,b)` (for `n = 4`) and `(−3,b)` (for `n = 3, 6`).
pub fn make_zeta(n: u32, algebra: QuaternionSymbol) -> Result<QuaternionElement, QalgError> {
    let needed = match n {
        4 => -1,
        3 | 6 => -3,
        _ => 0,
    };
    if needed == 0 || algebra.a != SquareClass::new(needed).expect("nonzero") {
        return Err(QalgError::UnsupportedZeta { n, algebra, needed });
    }
    let c = match n {
        4 => [int(0), int(1), int(0), int(0)],
        3 => [frac(-1, 2), frac(1, 2), int(0), int(0)],
        _ => [frac(1, 2), frac(1, 2), int(0), int(0)],
    };
    Ok(QuaternionElement::new(algebra, c))
}

/// Multiplicative order of `x` if it is at most `bound`.
pub fn multiplicative_order(x: &QuaternionElement, bound: u32) -> Option<u32> {
    let mut p = x.clone();
    for k in 1..=bound {
        if p.is_one() {
            return Some(k);
        }
        p = qmul(&p, x).ok()?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(a: i64, b: i64) -> QuaternionSymbol {
        QuaternionSymbol::from_integers(a, b).unwrap()
    }

    #[test]
    fn relations() {
        let q = alg(-1, 3);
        let (i, j) = (QuaternionElement::i(q), QuaternionElement::j(q));
        assert_eq!(qmul(&i, &j).unwrap(), QuaternionElement::ij(q));
        assert_eq!(qmul(&j, &i).unwrap(), QuaternionElement::ij(q).scale(&int(-1)));
        assert_eq!(qmul(&i, &i).unwrap(), QuaternionElement::scalar(q, int(-1)));
        let one_plus_i = QuaternionElement::new(q, [int(1), int(1), int(0), int(0)]);
        assert_eq!(qmul(&one_plus_i, &one_plus_i).unwrap(), i.scale(&int(2)));
        assert_eq!(
            qinv(&one_plus_i).unwrap(),
            QuaternionElement::new(q, [frac(1, 2), frac(-1, 2), int(0), int(0)])
        );
        assert_eq!(qinv(&i).unwrap(), i.scale(&int(-1)));
    }

    #[test]
    fn mismatched_algebras() {
        let x = QuaternionElement::i(alg(-1, 3));
        let y = QuaternionElement::i(alg(-3, 3));
        assert!(matches!(qmul(&x, &y), Err(QalgError::AlgebraMismatch(..))));
    }

    #[test]
    fn zetas() {
        for (n, q) in [(4, alg(-1, 3)), (3, alg(-3, 5)), (6, alg(-3, 5))] {
            let z = make_zeta(n, q).unwrap();
            assert_eq!(multiplicative_order(&z, 12), Some(n));
        }
        let z6 = make_zeta(6, alg(-3, 5)).unwrap();
        assert_eq!(z6.pow(3), QuaternionElement::scalar(alg(-3, 5), int(-1)));
        assert!(make_zeta(4, alg(-3, 5)).is_err());
        assert!(make_zeta(5, alg(-1, 3)).is_err());
    }
}
