//! Explicit number fields `ℚ[x]/(f)` with automorphisms given by the image of
//! the generator.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::groups::FiniteGroup;
use crate::qarith::{self, ArithError, SquareClass};
use crate::rational::int;
use crate::Rational;

pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberFieldError {
    #[error("minimal polynomial must be monic with integer coefficients")]
    NotMonic,
    #[error("degree {0} outside the supported range 1..=8")]
    DegreeOutOfRange(usize),
    #[error("polynomial is reducible: it has the factor {0}")]
    Reducible(String),
    #[error("coordinate vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the proposed image is not a root of the minimal polynomial")]
    NotARoot,
    #[error("the proposed map is not bijective")]
    NotBijective,
    #[error("action violates the group law at ({0}, {1})")]
    RelationViolated(String, String),
    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("expected {expected} generator images, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("fixed field has degree {0}, expected 2")]
    NotQuadratic(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

// ---------------------------------------------------------------------------
// polynomials over ℚ, ascending coefficients

pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n)
        .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
        .collect())
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Formats an ascending coefficient list as a polynomial in `x`.
pub fn format_poly(p: &[Rational]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() || k == 0 {
            let _ = write!(s, "{a}");
        }
        match k {
            0 => {}
            1 => s.push('x'),
            _ => {
                let _ = write!(s, "x^{k}");
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

// ---------------------------------------------------------------------------
// linear algebra over ℚ

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of `{v : M v = 0}` for an `r × c` matrix.
pub fn kernel(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -a[k][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn matrix_rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

// ---------------------------------------------------------------------------
// fields

/// `ℚ[x]/(f)` for a monic irreducible integer polynomial `f` of degree ≤ 8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: Vec<BigInt>,
    modulus: Poly,
    degree: usize,
}

/// An element in the power basis `1, θ, …, θ^{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    pub coords: Vec<Rational>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl NumberField {
    /// `minpoly` holds ascending integer coefficients of a monic polynomial.
    pub fn new(minpoly: Vec<BigInt>) -> Result<Self, NumberFieldError> {
        let mut minpoly = minpoly;
        while minpoly.last().is_some_and(Zero::is_zero) {
            minpoly.pop();
        }
        if minpoly.last().is_none_or(|c| !c.is_one()) {
            return Err(NumberFieldError::NotMonic);
        }
        let degree = minpoly.len() - 1;
        if degree == 0 || degree > MAX_DEGREE {
            return Err(NumberFieldError::DegreeOutOfRange(degree));
        }
        if let Some(g) = integer_factor(&minpoly) {
            let g: Poly = g.into_iter().map(Rational::from_integer).collect();
            return Err(NumberFieldError::Reducible(format_poly(&g)));
        }
        let modulus = minpoly.iter().cloned().map(Rational::from_integer).collect();
        Ok(NumberField {
            minpoly,
            modulus,
            degree,
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, NumberFieldError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement, NumberFieldError> {
        if coords.len() != self.degree {
            return Err(NumberFieldError::WrongLength {
                expected: self.degree,
                found: coords.len(),
            });
        }
        Ok(FieldElement { coords })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![Rational::zero(); self.degree],
        }
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = r;
        e
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    /// The generator `θ = x mod f`.
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree == 1 {
            e.coords[0] = -Rational::from_integer(self.minpoly[0].clone());
        } else {
            e.coords[1] = Rational::one();
        }
        e
    }

    fn reduce(&self, p: Poly) -> FieldElement {
        let (_, r) = poly_divrem(&p, &self.modulus);
        let mut coords = r;
        coords.resize(self.degree, Rational::zero());
        FieldElement { coords }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, r: &Rational) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| x * r).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(poly_mul(&a.coords, &b.coords))
    }

    /// Inverse via the extended Euclidean algorithm against the minpoly.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, NumberFieldError> {
        if a.is_zero() {
            return Err(NumberFieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.coords.clone()));
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because f is irreducible
        let c = r0[0].recip();
        let s: Poly = s0.iter().map(|x| x * &c).collect();
        Ok(self.reduce(s))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, NumberFieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement, NumberFieldError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut r = self.one();
        for _ in 0..e.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        Ok(r)
    }

    /// Evaluates an integer polynomial (ascending) at `a`.
    pub fn eval_poly(&self, p: &[Rational], a: &FieldElement) -> FieldElement {
        p.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), &self.from_rational(c.clone())))
    }

    /// Minimal polynomial over ℚ (monic, ascending).
    pub fn minimal_polynomial(&self, a: &FieldElement) -> Poly {
        let mut powers = vec![self.one()];
        loop {
            let k = powers.len();
            let next = self.mul(&powers[k - 1], a);
            // columns are powers 0..=k; solve for a dependency with top coefficient 1
            let m: Vec<Vec<Rational>> = (0..self.degree)
                .map(|row| {
                    powers
                        .iter()
                        .chain(core::iter::once(&next))
                        .map(|p| p.coords[row].clone())
                        .collect()
                })
                .collect();
            let ker = kernel(&m, k + 1);
            if let Some(v) = ker.into_iter().find(|v| !v[k].is_zero()) {
                let lead = v[k].clone();
                return v.into_iter().map(|c| c / &lead).collect();
            }
            powers.push(next);
        }
    }

    /// Builds the automorphism `θ ↦ image`, checking that it is one.
    pub fn automorphism(&self, image: FieldElement) -> Result<FieldAutomorphism, NumberFieldError> {
        if image.coords.len() != self.degree {
            return Err(NumberFieldError::WrongLength {
                expected: self.degree,
                found: image.coords.len(),
            });
        }
        if !self.eval_poly(&self.modulus, &image).is_zero() {
            return Err(NumberFieldError::NotARoot);
        }
        let phi = self.unchecked_automorphism(image);
        if matrix_rank(&phi.matrix) != self.degree {
            return Err(NumberFieldError::NotBijective);
        }
        Ok(phi)
    }

    fn unchecked_automorphism(&self, image: FieldElement) -> FieldAutomorphism {
        let mut columns = vec![self.one()];
        for k in 1..self.degree {
            columns.push(self.mul(&columns[k - 1], &image));
        }
        let matrix: Vec<Vec<Rational>> = (0..self.degree)
            .map(|r| columns.iter().map(|c| c.coords[r].clone()).collect())
            .collect();
        FieldAutomorphism { image, matrix }
    }

    pub fn identity(&self) -> FieldAutomorphism {
        self.automorphism(self.generator()).expect("identity is an automorphism")
    }

    pub fn apply(&self, phi: &FieldAutomorphism, e: &FieldElement) -> FieldElement {
        apply_automorphism(phi, e)
    }

    /// `φ∘ψ`.
    pub fn compose(&self, phi: &FieldAutomorphism, psi: &FieldAutomorphism) -> FieldAutomorphism {
        self.unchecked_automorphism(apply_automorphism(phi, &psi.image))
    }

    pub fn trace(&self, e: &FieldElement) -> Rational {
        // trace of multiplication by e
        let mut t = Rational::zero();
        let mut basis = self.one();
        let theta = self.generator();
        for k in 0..self.degree {
            t += &self.mul(e, &basis).coords[k];
            basis = self.mul(&basis, &theta);
        }
        t
    }

    /// Discriminant of the order `ℤ[θ]`, i.e. of the minimal polynomial.
    pub fn poly_discriminant(&self) -> Rational {
        let mut basis = vec![self.one()];
        let theta = self.generator();
        for k in 1..self.degree {
            basis.push(self.mul(&basis[k - 1], &theta));
        }
        self.discriminant_of(&basis)
    }

    /// `det(Tr(b_i b_j))`.
    pub fn discriminant_of(&self, basis: &[FieldElement]) -> Rational {
        let m: Vec<Vec<Rational>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.trace(&self.mul(x, y))).collect())
            .collect();
        determinant(m)
    }

    /// Fixed vectors of a set of automorphisms, as a basis.
    pub fn fixed_subspace(&self, autos: &[FieldAutomorphism]) -> Vec<FieldElement> {
        let n = self.degree;
        let mut rows = Vec::new();
        for phi in autos {
            for r in 0..n {
                let mut row = phi.matrix[r].clone();
                row[r] -= Rational::one();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return (0..n)
                .map(|k| {
                    let mut e = self.zero();
                    e.coords[k] = Rational::one();
                    e
                })
                .collect();
        }
        kernel(&rows, n).into_iter().map(|coords| FieldElement { coords }).collect()
    }

    /// For a group `H` whose fixed field is quadratic, the square class `t`
    /// with fixed field `ℚ(√t)`.
    pub fn quadratic_fixed_label(&self, autos: &[FieldAutomorphism]) -> Result<SquareClass, NumberFieldError> {
        let fixed = self.fixed_subspace(autos);
        if fixed.len() != 2 {
            return Err(NumberFieldError::NotQuadratic(fixed.len()));
        }
        let w = fixed
            .iter()
            .find(|e| e.as_rational().is_none())
            .expect("a two-dimensional fixed space is not contained in ℚ");
        let mut w = w.clone();
        w.coords[0] = Rational::zero();
        // w² = p + q w
        let w2 = self.mul(&w, &w);
        let k = (1..self.degree).find(|&k| !w.coords[k].is_zero()).expect("w irrational");
        let q = &w2.coords[k] / &w.coords[k];
        let p = &w2.coords[0];
        let disc = p + &q * &q / int(4);
        Ok(qarith::squarefree_reduce(&disc)?)
    }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !m[k][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// An automorphism stored by the image of the generator and its matrix in
/// the power basis.
#[derive(Debug, Clone)]
pub struct FieldAutomorphism {
    image: FieldElement,
    matrix: Vec<Vec<Rational>>,
}

impl FieldAutomorphism {
    pub fn image(&self) -> &FieldElement {
        &self.image
    }
}

impl PartialEq for FieldAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for FieldAutomorphism {}

pub fn apply_automorphism(phi: &FieldAutomorphism, e: &FieldElement) -> FieldElement {
    FieldElement {
        coords: phi
            .matrix
            .iter()
            .map(|row| row.iter().zip(&e.coords).map(|(a, b)| a * b).sum())
            .collect(),
    }
}

/// Extends generator images to a group action `g ↦ φ_g` with
/// `φ_{gh} = φ_g ∘ φ_h`, checking every pair.
pub fn action_homomorphism(
    field: &NumberField,
    group: &FiniteGroup,
    images: &[FieldAutomorphism],
) -> Result<Vec<FieldAutomorphism>, NumberFieldError> {
    if images.len() != group.generators().len() {
        return Err(NumberFieldError::GeneratorCount {
            expected: group.generators().len(),
            found: images.len(),
        });
    }
    let mut act: Vec<Option<FieldAutomorphism>> = vec![None; group.order()];
    act[0] = Some(field.identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, &s) in group.generators().iter().enumerate() {
            let y = group.mul(x, s);
            if act[y].is_none() {
                let ax = act[x].as_ref().expect("visited");
                act[y] = Some(field.compose(ax, &images[gi]));
                queue.push_back(y);
            }
        }
    }
    let act: Vec<FieldAutomorphism> = act.into_iter().map(|a| a.expect("generated")).collect();
    for g in group.elements() {
        for h in group.elements() {
            if act[group.mul(g, h)] != field.compose(&act[g], &act[h]) {
                return Err(NumberFieldError::RelationViolated(
                    group.label(g).into(),
                    group.label(h).into(),
                ));
            }
        }
    }
    Ok(act)
}

/// `∏_{φ∈H} φ(e)` for a group `H` of automorphisms.
pub fn relative_norm(
    field: &NumberField,
    e: &FieldElement,
    h: &[FieldAutomorphism],
) -> Result<FieldElement, NumberFieldError> {
    check_closed(field, h)?;
    Ok(norm_unchecked(field, e, h))
}

fn check_closed(field: &NumberField, h: &[FieldAutomorphism]) -> Result<(), NumberFieldError> {
    let images: Vec<&FieldElement> = h.iter().map(|a| &a.image).collect();
    let closed = h
        .iter()
        .all(|a| h.iter().all(|b| images.contains(&&apply_automorphism(a, &b.image))));
    if !closed || !images.contains(&&field.generator()) {
        return Err(NumberFieldError::NotClosed);
    }
    Ok(())
}

fn norm_unchecked(field: &NumberField, e: &FieldElement, h: &[FieldAutomorphism]) -> FieldElement {
    h.iter()
        .fold(field.one(), |acc, phi| field.mul(&acc, &apply_automorphism(phi, e)))
}

/// Looks for `w` with integer coordinates of absolute value at most `height`
/// and at most `support` nonzero coordinates such that `Nm_H(w) = target`.
pub fn search_norm_witness(
    field: &NumberField,
    h: &[FieldAutomorphism],
    target: &FieldElement,
    height: i64,
    support: usize,
) -> Result<Option<FieldElement>, NumberFieldError> {
    check_closed(field, h)?;
    let n = field.degree();
    let mut positions: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..support {
        let mut next = positions.clone();
        for p in &positions {
            let start = p.last().map_or(0, |&l| l + 1);
            for k in start..n {
                let mut q = p.clone();
                q.push(k);
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        positions = next;
    }
    positions.retain(|p| !p.is_empty());
    positions.sort_by_key(Vec::len);
    for pos in positions {
        let mut vals = vec![1i64; pos.len()];
        'values: loop {
            let mut e = field.zero();
            for (&k, &v) in pos.iter().zip(&vals) {
                e.coords[k] = int(v);
            }
            if norm_unchecked(field, &e, h) == *target {
                return Ok(Some(e));
            }
            for v in vals.iter_mut() {
                *v = if *v > 0 { -*v } else { -*v + 1 };
                if *v <= height {
                    continue 'values;
                }
                *v = 1;
            }
            break;
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// irreducibility

fn ipoly_eval(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn signed_divisors(n: u64) -> Vec<i64> {
    let mut ds = vec![1u64];
    for (p, e) in qarith::factor(n) {
        let mut next = Vec::new();
        for &d in &ds {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        ds = next;
    }
    ds.into_iter().flat_map(|d| [d as i64, -(d as i64)]).collect()
}

fn ipoly_divides(g: &[BigInt], f: &[BigInt]) -> bool {
    // g monic
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = r.last().expect("nonempty").clone();
        let shift = r.len() - g.len();
        for (k, gk) in g.iter().enumerate() {
            r[shift + k] -= &c * gk;
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

/// Kronecker's method: returns a monic integer factor of degree between 1 and
/// `deg f / 2`, or `None` if `f` (monic, integral) is irreducible over ℚ.
pub fn integer_factor(f: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return None;
    }
    // sample points, preferring values with few divisors
    let mut samples: Vec<(i64, Vec<i64>)> = Vec::new();
    for k in 0..40i64 {
        let m = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = ipoly_eval(f, m);
        if v.is_zero() {
            return Some(vec![BigInt::from(-m), BigInt::one()]);
        }
        if let Some(a) = v.abs().to_u64() {
            samples.push((m, signed_divisors(a)));
        }
    }
    samples.sort_by_key(|(_, d)| d.len());
    for k in 1..=n / 2 {
        let pts = &samples[..k];
        let check = &samples[k..(k + 4).min(samples.len())];
        // g = ∏(x − m_j) + Σ v_j L_j(x)
        let node: Poly = pts.iter().fold(vec![Rational::one()], |acc, (m, _)| {
            poly_mul(&acc, &[int(-m), Rational::one()])
        });
        let lagrange: Vec<Poly> = (0..k)
            .map(|j| {
                let mj = int(pts[j].0);
                let mut l = vec![Rational::one()];
                for (i, (mi, _)) in pts.iter().enumerate() {
                    if i != j {
                        let mi = int(*mi);
                        let denom = (&mj - &mi).recip();
                        l = poly_mul(&l, &[-&mi * &denom, denom]);
                    }
                }
                l
            })
            .collect();
        let mut idx = vec![0usize; k];
        loop {
            let mut g = node.clone();
            g.resize(k + 1, Rational::zero());
            for j in 0..k {
                let v = int(pts[j].1[idx[j]]);
                for (c, l) in g.iter_mut().zip(&lagrange[j]) {
                    *c += &v * l;
                }
            }
            if g.iter().all(|c| c.is_integer()) {
                let gi: Vec<BigInt> = g.iter().map(|c| c.to_integer()).collect();
                let plausible = check.iter().all(|(m, _)| {
                    let gv = ipoly_eval(&gi, *m);
                    !gv.is_zero() && (ipoly_eval(f, *m) % gv).is_zero()
                });
                if plausible && ipoly_divides(&gi, f) {
                    return Some(gi);
                }
            }
            let mut j = 0;
            loop {
                if j == k {
                    break;
                }
                idx[j] += 1;
                if idx[j] < pts[j].1.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
        }
    }
    None
}

/// Rational root check used by tests and diagnostics.
pub fn has_rational_root(f: &[Rational]) -> bool {
    let lead = f.last().cloned().unwrap_or_else(Rational::one);
    let monic: Poly = f.iter().map(|c| c / &lead).collect();
    let denom_lcm = monic
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = monic
        .iter()
        .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let a0 = ints[0].abs();
    if a0.is_zero() {
        return true;
    }
    let an = ints.last().expect("nonempty").abs();
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return false;
    };
    for p in signed_divisors(a0) {
        for q in signed_divisors(an).into_iter().filter(|&q| q > 0) {
            if poly_eval(&monic, &Rational::new(BigInt::from(p), BigInt::from(q))).is_zero() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn gaussian() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    #[test]
    fn arithmetic() {
        let k = gaussian();
        let x = k.generator();
        assert_eq!(k.mul(&x, &x), k.from_rational(int(-1)));
        assert_eq!(k.inv(&x).unwrap(), k.neg(&x));
        let q5 = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        let y = q5.generator();
        let a = q5.add(&q5.one(), &y);
        let b = q5.sub(&q5.one(), &y);
        assert_eq!(q5.mul(&a, &b), q5.from_rational(int(-4)));
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(NumberField::from_i64(&[-4, 0, 1]).is_err());
        assert!(NumberField::from_i64(&[4, 0, 0, 0, 1]).is_err()); // x^4+4 = (x²+2x+2)(x²−2x+2)
        assert!(NumberField::from_i64(&[16, 0, 64, 0, -4, 0, 4, 0, 1]).is_ok());
        assert!(NumberField::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).is_err());
        assert!(matches!(NumberField::from_i64(&[2, 3]), Err(NumberFieldError::NotMonic)));
    }

    #[test]
    fn conjugation_and_norm() {
        let k = gaussian();
        let conj = k.automorphism(k.neg(&k.generator())).unwrap();
        assert_eq!(k.apply(&conj, &k.generator()), k.neg(&k.generator()));
        assert_eq!(k.apply(&conj, &k.from_rational(int(7))), k.from_rational(int(7)));
        let e = k.add(&k.from_rational(int(2)), &k.generator());
        let h = [k.identity(), conj.clone()];
        assert_eq!(relative_norm(&k, &e, &h).unwrap(), k.from_rational(int(5)));
        assert_eq!(relative_norm(&k, &e, &[k.identity()]).unwrap(), e);
        assert!(relative_norm(&k, &e, &[conj]).is_err());
        assert_eq!(k.quadratic_fixed_label(&[k.identity()]).unwrap(), SquareClass::new(-1).unwrap());
        let witness = search_norm_witness(&k, &h, &k.from_rational(int(5)), 3, 2).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::from_i64(&[16, 0, 64, 0, -4, 0, 4, 0, 1]).unwrap();
        let i = k
            .element(vec![int(0), frac(-35, 18), int(0), frac(5, 18), int(0), frac(-1, 9), int(0), frac(-5, 144)])
            .unwrap();
        assert_eq!(k.minimal_polynomial(&i), vec![int(1), int(0), int(1)]);
        assert_eq!(format_poly(&k.minimal_polynomial(&i)), "x^2 + 1");
        assert!(!has_rational_root(&[int(1), int(0), int(1)]));
        assert!(has_rational_root(&[int(-1), int(0), int(4)]));
    }
}
