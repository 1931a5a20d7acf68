//! Square classes, local squares, Hilbert symbols, quaternion algebras over ℚ
//! as Brauer classes, and multiquadratic fields.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero has no square class")]
    Zero,
    #[error("square class of {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("{0} is a square and generates no quadratic field")]
    SquareGenerator(SquareClass),
    #[error("generator {0} is dependent on the other generators")]
    DependentGenerator(SquareClass),
    #[error("the quaternion algebra {0} is split")]
    SplitAlgebra(QuaternionSymbol),
    #[error("ramification set {0} has odd cardinality")]
    OddRamification(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

// ---------------------------------------------------------------------------
// integer helpers

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division. Stops early once the cofactor is
/// prime, so the worst case is a product of two primes near `sqrt(n)`.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if is_prime(n) {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn squarefree_part(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

// ---------------------------------------------------------------------------
// square classes

/// An element of ℚ*/ℚ*², stored as its signed squarefree representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(i64);

/// An element of ℚ*/±ℚ*², stored as its positive squarefree representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbsSquareClass(u64);

/// A coordinate of the F₂-vector space ℚ*/ℚ*²: the sign or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Sign,
    Prime(u64),
}

impl SquareClass {
    pub const ONE: SquareClass = SquareClass(1);
    pub const MINUS_ONE: SquareClass = SquareClass(-1);

    /// The class of a nonzero integer.
    pub fn new(n: i64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::Zero);
        }
        let m = squarefree_part(n.unsigned_abs()) as i64;
        Ok(SquareClass(if n < 0 { -m } else { m }))
    }

    /// The class of a nonzero rational: `r / c` is a rational square.
    pub fn from_rational(r: &Rational) -> Result<Self, ArithError> {
        if r.is_zero() {
            return Err(ArithError::Zero);
        }
        let to_u64 = |b: &BigInt| {
            b.abs()
                .to_u64()
                .ok_or_else(|| ArithError::Overflow(r.to_string()))
        };
        let n = squarefree_part(to_u64(r.numer())?);
        let d = squarefree_part(to_u64(r.denom())?);
        let abs = AbsSquareClass(n)
            .checked_mul(AbsSquareClass(d))
            .ok_or_else(|| ArithError::Overflow(r.to_string()))?;
        let v = i64::try_from(abs.0).map_err(|_| ArithError::Overflow(r.to_string()))?;
        Ok(SquareClass(if r.is_negative() { -v } else { v }))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// The sign as a square class: `1` or `-1`.
    pub fn sign(self) -> SquareClass {
        if self.0 < 0 {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn abs(self) -> AbsSquareClass {
        AbsSquareClass(self.0.unsigned_abs())
    }

    pub fn to_rational(self) -> Rational {
        crate::rational::int(self.0)
    }

    pub fn primes(self) -> Vec<u64> {
        factor(self.0.unsigned_abs()).into_iter().map(|(p, _)| p).collect()
    }

    pub fn checked_mul(self, other: SquareClass) -> Option<SquareClass> {
        let abs = self.abs().checked_mul(other.abs())?;
        let v = i64::try_from(abs.0).ok()?;
        Some(SquareClass(if (self.0 < 0) != (other.0 < 0) { -v } else { v }))
    }
}

impl core::ops::Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        self.checked_mul(rhs)
            .expect("square class product exceeds the 64-bit range")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl AbsSquareClass {
    pub const ONE: AbsSquareClass = AbsSquareClass(1);

    pub fn new(n: u64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::Zero);
        }
        Ok(AbsSquareClass(squarefree_part(n)))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// The positive representative as a signed class.
    pub fn positive(self) -> SquareClass {
        SquareClass(self.0 as i64)
    }

    pub fn primes(self) -> Vec<u64> {
        factor(self.0).into_iter().map(|(p, _)| p).collect()
    }

    pub fn checked_mul(self, other: AbsSquareClass) -> Option<AbsSquareClass> {
        let g = gcd(self.0, other.0);
        let v = (self.0 / g).checked_mul(other.0 / g)?;
        if v > i64::MAX as u64 {
            return None;
        }
        Some(AbsSquareClass(v))
    }
}

impl core::ops::Mul for AbsSquareClass {
    type Output = AbsSquareClass;
    fn mul(self, rhs: AbsSquareClass) -> AbsSquareClass {
        self.checked_mul(rhs)
            .expect("square class product exceeds the 64-bit range")
    }
}

impl fmt::Display for AbsSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The canonicalization ℚ* → ℚ*/ℚ*².
pub fn squarefree_reduce(r: &Rational) -> Result<SquareClass, ArithError> {
    SquareClass::from_rational(r)
}

// ---------------------------------------------------------------------------
// F₂-linear algebra on square classes

/// An element of an F₂-vector space whose coordinates are [`Atom`]s.
pub trait F2Class: Copy + Eq + Ord + fmt::Debug {
    fn unit() -> Self;
    fn times(self, other: Self) -> Self;
    fn has_atom(self, a: Atom) -> bool;
    fn atoms(self) -> Vec<Atom>;
    /// The largest atom, `None` for the identity.
    fn pivot(self) -> Option<Atom> {
        self.atoms().into_iter().max()
    }
}

impl F2Class for SquareClass {
    fn unit() -> Self {
        SquareClass::ONE
    }
    fn times(self, other: Self) -> Self {
        self * other
    }
    fn has_atom(self, a: Atom) -> bool {
        match a {
            Atom::Sign => self.0 < 0,
            Atom::Prime(p) => self.0.unsigned_abs() % p == 0,
        }
    }
    fn atoms(self) -> Vec<Atom> {
        let mut v = Vec::new();
        if self.0 < 0 {
            v.push(Atom::Sign);
        }
        v.extend(self.primes().into_iter().map(Atom::Prime));
        v
    }
}

impl F2Class for AbsSquareClass {
    fn unit() -> Self {
        AbsSquareClass::ONE
    }
    fn times(self, other: Self) -> Self {
        self * other
    }
    fn has_atom(self, a: Atom) -> bool {
        match a {
            Atom::Sign => false,
            Atom::Prime(p) => self.0 % p == 0,
        }
    }
    fn atoms(self) -> Vec<Atom> {
        self.primes().into_iter().map(Atom::Prime).collect()
    }
}

/// A finite subgroup of square classes kept in reduced echelon form: every
/// basis element has a distinct pivot (its largest atom) which occurs in no
/// other basis element. The basis is therefore canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span<T> {
    basis: Vec<T>,
}

impl<T: F2Class> Default for Span<T> {
    fn default() -> Self {
        Span { basis: Vec::new() }
    }
}

impl<T: F2Class> Span<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_elements<I: IntoIterator<Item = T>>(it: I) -> Self {
        let mut s = Self::new();
        for x in it {
            s.insert(x);
        }
        s
    }

    /// Canonical basis, sorted by descending pivot.
    pub fn basis(&self) -> &[T] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, mut x: T) -> T {
        for &b in &self.basis {
            if x.has_atom(b.pivot().expect("basis elements are nontrivial")) {
                x = x.times(b);
            }
        }
        x
    }

    pub fn contains(&self, x: T) -> bool {
        self.reduce(x) == T::unit()
    }

    /// Adds `x`; returns false if it was already in the span.
    pub fn insert(&mut self, x: T) -> bool {
        let r = self.reduce(x);
        let Some(p) = r.pivot() else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if b.has_atom(p) {
                *b = b.times(r);
            }
        }
        self.basis.push(r);
        self.basis.sort_by(|a, b| b.pivot().cmp(&a.pivot()));
        true
    }

    pub fn is_subspace_of(&self, other: &Span<T>) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// All `2^dim` elements, indexed by the bit pattern over the basis.
    pub fn elements(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(1 << self.basis.len());
        for mask in 0u32..(1 << self.basis.len()) {
            out.push(self.combination(mask));
        }
        out
    }

    /// Product of the basis elements selected by `mask`.
    pub fn combination(&self, mask: u32) -> T {
        let mut x = T::unit();
        for (i, &b) in self.basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x = x.times(b);
            }
        }
        x
    }

    /// Coordinates of `x` over the basis, if `x` lies in the span.
    pub fn coordinates(&self, x: T) -> Option<u32> {
        let mut mask = 0;
        let mut y = x;
        for (i, &b) in self.basis.iter().enumerate() {
            if y.has_atom(b.pivot().expect("nontrivial")) {
                y = y.times(b);
                mask |= 1 << i;
            }
        }
        (y == T::unit()).then_some(mask)
    }

    /// All subspaces of codimension one.
    pub fn hyperplanes(&self) -> Vec<Span<T>> {
        let r = self.basis.len();
        let mut out = Vec::new();
        for functional in 1u32..(1 << r) {
            let elems = (0u32..(1 << r))
                .filter(|m| (m & functional).count_ones() % 2 == 0)
                .map(|m| self.combination(m));
            out.push(Span::from_elements(elems));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// places and Hilbert symbols

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place, ArithError> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Legendre symbol of `u` modulo an odd prime `p`, as ±1 (0 if `p | u`).
fn legendre(u: i64, p: u64) -> i8 {
    let r = u.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Splits `a` as `p^v · u` with `v ∈ {0,1}` (squarefree input).
fn split_prime(a: i64, p: u64) -> (u32, i64) {
    if a.unsigned_abs() % p == 0 {
        (1, a / p as i64)
    } else {
        (0, a)
    }
}

pub fn is_local_square(a: SquareClass, v: Place) -> bool {
    match v {
        Place::Infinity => a.0 > 0,
        Place::Finite(2) => a.0.rem_euclid(8) == 1,
        Place::Finite(p) => {
            let (e, u) = split_prime(a.0, p);
            e == 0 && legendre(u, p) == 1
        }
    }
}

/// The Hilbert symbol `(a,b)_v ∈ {+1, −1}`.
pub fn hilbert_symbol(a: SquareClass, b: SquareClass, v: Place) -> i8 {
    match v {
        Place::Infinity => {
            if a.0 < 0 && b.0 < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (al, u) = split_prime(a.0, 2);
            let (be, w) = split_prime(b.0, 2);
            let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32;
            let omega = |x: i64| match x.rem_euclid(8) {
                1 | 7 => 0u32,
                _ => 1,
            };
            let e = eps(u) * eps(w) + al * omega(w) + be * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (al, u) = split_prime(a.0, p);
            let (be, w) = split_prime(b.0, p);
            let mut s: i8 = 1;
            if al * be == 1 && p % 4 == 3 {
                s = -s;
            }
            if be == 1 {
                s *= legendre(u, p);
            }
            if al == 1 {
                s *= legendre(w, p);
            }
            s
        }
    }
}

// ---------------------------------------------------------------------------
// quaternion algebras

/// A class in Br(ℚ)[2], given by its ramified places.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QuaternionClass {
    ramified: BTreeSet<Place>,
}

impl QuaternionClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_places<I: IntoIterator<Item = Place>>(places: I) -> Result<Self, ArithError> {
        let ramified: BTreeSet<Place> = places.into_iter().collect();
        let q = QuaternionClass { ramified };
        if q.ramified.len() % 2 == 1 {
            return Err(ArithError::OddRamification(q.to_string()));
        }
        Ok(q)
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_trivial(&self) -> bool {
        self.ramified.is_empty()
    }

    /// Product in the Brauer group: symmetric difference of ramification.
    pub fn product(&self, other: &QuaternionClass) -> QuaternionClass {
        QuaternionClass {
            ramified: self
                .ramified
                .symmetric_difference(&other.ramified)
                .copied()
                .collect(),
        }
    }

    /// Whether this class becomes trivial over `k`.
    pub fn splits_over(&self, k: &PolyquadraticField) -> bool {
        splits_over(self, k)
    }

    /// Whether the two classes agree after restriction to `k`.
    pub fn equal_over(&self, other: &QuaternionClass, k: &PolyquadraticField) -> bool {
        self.product(other).splits_over(k)
    }
}

impl fmt::Display for QuaternionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ram{{")?;
        for (i, v) in self.ramified.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The quaternion algebra `(a,b)_ℚ`: `i² = a`, `j² = b`, `ij = −ji`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuaternionSymbol {
    pub a: SquareClass,
    pub b: SquareClass,
}

impl QuaternionSymbol {
    pub fn new(a: SquareClass, b: SquareClass) -> Self {
        QuaternionSymbol { a, b }
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self, ArithError> {
        Ok(QuaternionSymbol {
            a: SquareClass::new(a)?,
            b: SquareClass::new(b)?,
        })
    }

    pub fn ramification(&self) -> QuaternionClass {
        ramification_set(*self)
    }

    pub fn is_division(&self) -> bool {
        !self.ramification().is_trivial()
    }

    pub fn is_definite(&self) -> bool {
        self.ramification().ramified.contains(&Place::Infinity)
    }

    pub fn isomorphic(&self, other: &QuaternionSymbol) -> bool {
        self.ramification() == other.ramification()
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Places where a symbol ramifies. Only ∞, 2 and primes dividing `ab` can.
pub fn ramification_set(s: QuaternionSymbol) -> QuaternionClass {
    let mut candidates: BTreeSet<Place> = BTreeSet::new();
    candidates.insert(Place::Infinity);
    candidates.insert(Place::Finite(2));
    for p in s.a.primes().into_iter().chain(s.b.primes()) {
        candidates.insert(Place::Finite(p));
    }
    QuaternionClass {
        ramified: candidates
            .into_iter()
            .filter(|&v| hilbert_symbol(s.a, s.b, v) == -1)
            .collect(),
    }
}

/// Ramification of `(a,b)` for raw classes.
pub fn symbol_class(a: SquareClass, b: SquareClass) -> QuaternionClass {
    ramification_set(QuaternionSymbol::new(a, b))
}

/// Whether `ℚ(√b)` is isomorphic to a maximal subfield of the division
/// algebra `big_b`.
pub fn embeds_as_maximal_subfield(b: SquareClass, big_b: QuaternionSymbol) -> Result<bool, ArithError> {
    let ram = big_b.ramification();
    if ram.is_trivial() {
        return Err(ArithError::SplitAlgebra(big_b));
    }
    if b.is_one() {
        return Ok(false);
    }
    let k = PolyquadraticField::new(&[b])?;
    Ok(splits_over(&ram, &k))
}

// ---------------------------------------------------------------------------
// multiquadratic fields

/// `ℚ(√t₁, …, √t_r)` with independent generators.
#[derive(Debug, Clone)]
pub struct PolyquadraticField {
    generators: Vec<SquareClass>,
    span: Span<SquareClass>,
}

impl PolyquadraticField {
    pub fn rationals() -> Self {
        PolyquadraticField {
            generators: Vec::new(),
            span: Span::new(),
        }
    }

    pub fn new(generators: &[SquareClass]) -> Result<Self, ArithError> {
        let mut k = Self::rationals();
        for &t in generators {
            k = k.adjoin(t)?;
        }
        Ok(k)
    }

    /// The field generated by the square roots of a span.
    pub fn from_span(span: Span<SquareClass>) -> Self {
        PolyquadraticField {
            generators: span.basis().iter().rev().copied().collect(),
            span,
        }
    }

    pub fn adjoin(&self, t: SquareClass) -> Result<Self, ArithError> {
        if t.is_one() {
            return Err(ArithError::SquareGenerator(t));
        }
        let mut span = self.span.clone();
        if !span.insert(t) {
            return Err(ArithError::DependentGenerator(t));
        }
        let mut generators = self.generators.clone();
        generators.push(t);
        Ok(PolyquadraticField { generators, span })
    }

    pub fn generators(&self) -> &[SquareClass] {
        &self.generators
    }

    pub fn span(&self) -> &Span<SquareClass> {
        &self.span
    }

    /// `log₂` of the degree over ℚ.
    pub fn rank(&self) -> usize {
        self.span.dim()
    }

    pub fn degree(&self) -> u64 {
        1 << self.span.dim()
    }

    pub fn is_rationals(&self) -> bool {
        self.span.dim() == 0
    }

    /// Whether `t` is a square in this field.
    pub fn contains_sqrt(&self, t: SquareClass) -> bool {
        self.span.contains(t)
    }

    pub fn is_subfield_of(&self, other: &PolyquadraticField) -> bool {
        self.span.is_subspace_of(&other.span)
    }

    /// The compositum of two multiquadratic fields.
    pub fn compositum(&self, other: &PolyquadraticField) -> PolyquadraticField {
        let mut k = self.clone();
        for &t in other.generators() {
            if !k.contains_sqrt(t) {
                k = k.adjoin(t).expect("independent by the check above");
            }
        }
        k
    }

    /// Subfields of index two.
    pub fn maximal_subfields(&self) -> Vec<PolyquadraticField> {
        self.span
            .hyperplanes()
            .into_iter()
            .map(PolyquadraticField::from_span)
            .collect()
    }
}

impl PartialEq for PolyquadraticField {
    fn eq(&self, other: &Self) -> bool {
        self.span == other.span
    }
}

impl Eq for PolyquadraticField {}

impl fmt::Display for PolyquadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q(")?;
        for (i, t) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "sqrt {t}")?;
        }
        write!(f, ")")
    }
}

/// `K` embeds into `ℚ_v` iff every generator is a local square at `v`.
pub fn field_is_local_point(k: &PolyquadraticField, v: Place) -> bool {
    k.generators.iter().all(|&t| is_local_square(t, v))
}

/// A class over ℚ restricted to `K` is trivial iff at every ramified place the
/// completions of `K` have even local degree.
pub fn splits_over(q: &QuaternionClass, k: &PolyquadraticField) -> bool {
    q.ramified.iter().all(|&v| !field_is_local_point(k, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn sc(n: i64) -> SquareClass {
        SquareClass::new(n).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(squarefree_reduce(&int(18)).unwrap(), sc(2));
        assert_eq!(squarefree_reduce(&frac(-4, 9)).unwrap(), sc(-1));
        assert_eq!(squarefree_reduce(&frac(3, 8)).unwrap(), sc(6));
        assert_eq!(squarefree_reduce(&int(0)), Err(ArithError::Zero));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(720), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(factor(9745), vec![(5, 1), (1949, 1)]);
        assert_eq!(factor(1), vec![]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
    }

    #[test]
    fn span_is_canonical() {
        let a = Span::from_elements([sc(5), sc(-3)]);
        let b = Span::from_elements([sc(-15), sc(5)]);
        let c = Span::from_elements([sc(-3), sc(-15), sc(5)]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(sc(-15)));
        assert!(!a.contains(sc(-1)));
        assert_eq!(a.coordinates(sc(1)), Some(0));
        assert_eq!(a.hyperplanes().len(), 3);
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(sc(-1), Place::Finite(5)));
        assert!(!is_local_square(sc(-1), Place::Infinity));
        assert!(!is_local_square(sc(5), Place::Finite(2)));
        assert!(is_local_square(sc(-7), Place::Finite(2)));
    }

    #[test]
    fn fields() {
        assert!(PolyquadraticField::new(&[sc(5), sc(-3), sc(-15)]).is_err());
        let k = PolyquadraticField::new(&[sc(5), sc(-1)]).unwrap();
        assert_eq!(k.to_string(), "Q(sqrt 5, sqrt -1)");
        assert_eq!(k.maximal_subfields().len(), 3);
        assert!(field_is_local_point(&PolyquadraticField::new(&[sc(-1)]).unwrap(), Place::Finite(5)));
    }
}
