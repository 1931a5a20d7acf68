//! 2-cocycles on finite groups: verification, products, restriction,
//! coboundary solving and the sign / `P/P²` decomposition of 2-torsion
//! classes with values in ℚ*.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::f2::{self, BitRow};
use crate::groups::FiniteGroup;
use crate::numfield::{apply_automorphism, FieldAutomorphism, FieldElement, NumberField};
use crate::qarith::{AbsSquareClass, SquareClass};
use crate::rational::{exact_root, int};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("expected {expected} values, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("cocycles live on different groups")]
    GroupMismatch,
    #[error("cocycle is not normalized: c(1,1) = {0}")]
    NotNormalized(String),
    #[error("cocycle value zero at ({0},{1})")]
    ZeroValue(String, String),
    #[error("class is not 2-torsion")]
    NotTwoTorsion,
    #[error("the P/P² part is not a homomorphism")]
    NotHomomorphism,
}

/// Coefficients with trivial group action.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn unit() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_unit_one(&self) -> bool {
        *self == Self::unit()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn of(r: &Rational) -> Sign {
        Sign::from_minus(r.is_negative())
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        if self.is_minus() {
            -1
        } else {
            1
        }
    }

    pub fn to_rational(self) -> Rational {
        int(self.to_i8() as i64)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_minus() { "-1" } else { "1" })
    }
}

impl Coefficient for Sign {
    fn unit() -> Self {
        Sign::Plus
    }
    fn times(&self, other: &Self) -> Self {
        Sign::from_minus(self.is_minus() != other.is_minus())
    }
    fn inverse(&self) -> Self {
        *self
    }
}

impl Coefficient for Rational {
    fn unit() -> Self {
        One::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
}

/// A function `G × G → A` stored row-major: `values[g·|G| + h] = c(g,h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCocycle<T> {
    group: FiniteGroup,
    values: Vec<T>,
}

/// A function `G → A` with value 1 at the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct OneChain<T> {
    group: FiniteGroup,
    values: Vec<T>,
}

impl<T: Coefficient> TwoCocycle<T> {
    pub fn new(group: FiniteGroup, values: Vec<T>) -> Result<Self, CocycleError> {
        let n = group.order();
        if values.len() != n * n {
            return Err(CocycleError::WrongSize {
                expected: n * n,
                found: values.len(),
            });
        }
        Ok(TwoCocycle { group, values })
    }

    pub fn from_fn(group: FiniteGroup, f: impl Fn(usize, usize) -> T) -> Self {
        let n = group.order();
        let values = (0..n * n).map(|x| f(x / n, x % n)).collect();
        TwoCocycle { group, values }
    }

    pub fn trivial(group: FiniteGroup) -> Self {
        Self::from_fn(group, |_, _| T::unit())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, g: usize, h: usize) -> &T {
        &self.values[g * self.group.order() + h]
    }

    pub fn set(&mut self, g: usize, h: usize, v: T) {
        let n = self.group.order();
        self.values[g * n + h] = v;
    }

    /// First triple `(g,h,k)` violating the cocycle identity.
    pub fn first_violation(&self) -> Option<(usize, usize, usize)> {
        let gr = &self.group;
        for g in gr.elements() {
            for h in gr.elements() {
                for k in gr.elements() {
                    let lhs = self.value(g, h).times(self.value(gr.mul(g, h), k));
                    let rhs = self.value(h, k).times(self.value(g, gr.mul(h, k)));
                    if lhs != rhs {
                        return Some((g, h, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_trivial_table(&self) -> bool {
        self.values.iter().all(Coefficient::is_unit_one)
    }

    pub fn product(&self, other: &TwoCocycle<T>) -> Result<TwoCocycle<T>, CocycleError> {
        if self.group != other.group {
            return Err(CocycleError::GroupMismatch);
        }
        Ok(TwoCocycle {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.times(b))
                .collect(),
        })
    }

    pub fn inverse(&self) -> TwoCocycle<T> {
        TwoCocycle {
            group: self.group.clone(),
            values: self.values.iter().map(Coefficient::inverse).collect(),
        }
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> TwoCocycle<U> {
        TwoCocycle {
            group: self.group.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Pull back along an embedding `H → G`.
    pub fn restrict(&self, sub: &FiniteGroup, embedding: &[usize]) -> TwoCocycle<T> {
        TwoCocycle::from_fn(sub.clone(), |g, h| {
            self.value(embedding[g], embedding[h]).clone()
        })
    }

    /// Pull back along a surjection `Γ → G`.
    pub fn inflate(&self, big: &FiniteGroup, projection: &[usize]) -> TwoCocycle<T> {
        TwoCocycle::from_fn(big.clone(), |g, h| {
            self.value(projection[g], projection[h]).clone()
        })
    }
}

impl<T: Coefficient> OneChain<T> {
    pub fn new(group: FiniteGroup, values: Vec<T>) -> Result<Self, CocycleError> {
        if values.len() != group.order() {
            return Err(CocycleError::WrongSize {
                expected: group.order(),
                found: values.len(),
            });
        }
        Ok(OneChain { group, values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &T {
        &self.values[g]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `∂d(g,h) = d(g)·d(h)·d(gh)⁻¹`.
    pub fn coboundary(&self) -> TwoCocycle<T> {
        let g = &self.group;
        TwoCocycle::from_fn(g.clone(), |x, y| {
            self.values[x]
                .times(&self.values[y])
                .times(&self.values[g.mul(x, y)].inverse())
        })
    }
}

pub fn verify_cocycle<T: Coefficient>(c: &TwoCocycle<T>) -> bool {
    c.first_violation().is_none()
}

pub fn cocycle_product<T: Coefficient>(
    a: &TwoCocycle<T>,
    b: &TwoCocycle<T>,
) -> Result<TwoCocycle<T>, CocycleError> {
    a.product(b)
}

/// Exhaustive search for `d: G → ±1` with `∂d = c`, in lexicographic order
/// of `(d(g₁), d(g₂), …)` with `+1 < −1`. Returns the first witness.
pub fn pm_coboundary_witness(c: &TwoCocycle<Sign>) -> Option<OneChain<Sign>> {
    let g = c.group();
    let n = g.order();
    if n == 1 {
        return c.value(0, 0).is_unit_one().then(|| OneChain {
            group: g.clone(),
            values: vec![Sign::Plus],
        });
    }
    let free = n - 1;
    let mut d = vec![Sign::Plus; n];
    for mask in 0u64..(1u64 << free) {
        for k in 1..n {
            d[k] = Sign::from_minus(mask >> (free - k) & 1 == 1);
        }
        let ok = g.elements().all(|x| {
            g.elements().all(|y| {
                let v = d[x].times(&d[y]).times(&d[g.mul(x, y)]);
                v == *c.value(x, y)
            })
        });
        if ok {
            return Some(OneChain {
                group: g.clone(),
                values: d,
            });
        }
    }
    None
}

/// The same decision by solving `x_g + x_h + x_{gh} = c(g,h)` over F₂.
pub fn pm_coboundary_f2(c: &TwoCocycle<Sign>) -> Option<OneChain<Sign>> {
    let g = c.group();
    let n = g.order();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let mut r = BitRow::zeros(n);
            r.flip(x);
            r.flip(y);
            r.flip(g.mul(x, y));
            rows.push(r);
            rhs.push(c.value(x, y).is_minus());
        }
    }
    // d(1) = 1
    let mut r = BitRow::zeros(n);
    r.set(0, true);
    rows.push(r);
    rhs.push(false);
    let x = f2::solve(&rows, &rhs, n)?;
    Some(OneChain {
        group: g.clone(),
        values: x.into_iter().map(Sign::from_minus).collect(),
    })
}

/// A map `d` with `∂d = c²`.
pub fn derive_d_map(c: &TwoCocycle<Rational>) -> Result<OneChain<Rational>, CocycleError> {
    let g = c.group();
    for x in g.elements() {
        for y in g.elements() {
            if c.value(x, y).is_zero() {
                return Err(CocycleError::ZeroValue(g.label(x).into(), g.label(y).into()));
            }
        }
    }
    if !c.value(0, 0).is_one() {
        return Err(CocycleError::NotNormalized(alloc::format!("{}", c.value(0, 0))));
    }
    let sq = |x: usize, y: usize| {
        let v = c.value(x, y);
        v * v
    };
    // d(s)^m = ∏_{i<m} c²(sⁱ, s) for each generator s of order m
    let mut base = Vec::new();
    for &s in g.generators() {
        let m = g.element_order(s);
        let mut prod = Rational::one();
        let mut p = 0;
        for _ in 0..m {
            prod *= sq(p, s);
            p = g.mul(p, s);
        }
        base.push((s, m, exact_root(&prod, m as u32).ok_or(CocycleError::NotTwoTorsion)?));
    }
    let even: Vec<usize> = (0..base.len()).filter(|&k| base[k].1 % 2 == 0).collect();
    for flips in 0u32..(1 << even.len()) {
        let mut gen_values: Vec<Rational> = base.iter().map(|b| b.2.clone()).collect();
        for (bit, &k) in even.iter().enumerate() {
            if flips >> bit & 1 == 1 {
                gen_values[k] = -gen_values[k].clone();
            }
        }
        let mut d: Vec<Option<Rational>> = vec![None; g.order()];
        d[0] = Some(Rational::one());
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &(s, _, _)) in base.iter().enumerate() {
                let y = g.mul(x, s);
                if d[y].is_none() {
                    let dx = d[x].as_ref().expect("visited");
                    d[y] = Some(dx * &gen_values[k] / sq(x, s));
                    queue.push_back(y);
                }
            }
        }
        let d: Vec<Rational> = d.into_iter().map(|v| v.expect("generated")).collect();
        let consistent = g.elements().all(|x| {
            g.elements().all(|y| &d[x] * &d[y] / &d[g.mul(x, y)] == sq(x, y))
        });
        if consistent {
            return Ok(OneChain {
                group: g.clone(),
                values: d,
            });
        }
    }
    Err(CocycleError::NotTwoTorsion)
}

/// The two components of a 2-torsion class with values in ℚ*.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTorsionParts {
    /// `(g,h) ↦ sign c(g,h)`.
    pub sign_part: TwoCocycle<Sign>,
    /// `g ↦ |d(g)|` in `P/P²`, a homomorphism.
    pub p_part: Vec<AbsSquareClass>,
}

pub fn decompose_two_torsion(c: &TwoCocycle<Rational>) -> Result<TwoTorsionParts, CocycleError> {
    let d = derive_d_map(c)?;
    let g = c.group();
    let p_part: Vec<AbsSquareClass> = d
        .values()
        .iter()
        .map(|v| {
            SquareClass::from_rational(v)
                .map(SquareClass::abs)
                .map_err(|_| CocycleError::NotTwoTorsion)
        })
        .collect::<Result<_, _>>()?;
    let hom = g.elements().all(|x| {
        g.elements().all(|y| p_part[g.mul(x, y)] == p_part[x] * p_part[y])
    });
    if !hom {
        return Err(CocycleError::NotHomomorphism);
    }
    Ok(TwoTorsionParts {
        sign_part: c.map(Sign::of),
        p_part,
    })
}

/// Checks `c(ρ,μ) = λ(ρ)·ρ(λ(μ))·λ(ρμ)⁻¹` for all pairs, where `action[g]`
/// is the automorphism attached to `g`.
pub fn verify_unit_coboundary(
    c: &TwoCocycle<Sign>,
    lambda: &[FieldElement],
    field: &NumberField,
    action: &[FieldAutomorphism],
) -> bool {
    let g = c.group();
    if lambda.len() != g.order() || action.len() != g.order() || lambda.iter().any(FieldElement::is_zero) {
        return false;
    }
    g.elements().all(|x| {
        g.elements().all(|y| {
            let lhs = field.scale(&lambda[g.mul(x, y)], &c.value(x, y).to_rational());
            let rhs = field.mul(&lambda[x], &apply_automorphism(&action[x], &lambda[y]));
            lhs == rhs
        })
    })
}

/// For cyclic `⟨h⟩` of order `m`, the invariant `∏_{i<m} c(hⁱ, h)`.
pub fn cyclic_invariant<T: Coefficient>(c: &TwoCocycle<T>, h: usize) -> T {
    let g = c.group();
    let mut acc = T::unit();
    let mut p = 0;
    for _ in 0..g.element_order(h) {
        acc = acc.times(c.value(p, h));
        p = g.mul(p, h);
    }
    acc
}

/// Writes the class of a ±1 cocycle as a sum of cup products `χ_i ∪ χ_j`
/// of the given characters (`chars[k].1[g]` is `χ_k(g)` in F₂). Returns the
/// pairs of square classes whose quaternion symbols multiply to the class,
/// or `None` if the class is outside the span of those cup products.
pub fn cup_decomposition(
    c: &TwoCocycle<Sign>,
    chars: &[(SquareClass, Vec<bool>)],
) -> Option<Vec<(SquareClass, SquareClass)>> {
    let g = c.group();
    let n = g.order();
    let mut pairs = Vec::new();
    for i in 0..chars.len() {
        for j in i..chars.len() {
            pairs.push((i, j));
        }
    }
    let unknowns = n + pairs.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let mut r = BitRow::zeros(unknowns);
            r.flip(x);
            r.flip(y);
            r.flip(g.mul(x, y));
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if chars[i].1[x] && chars[j].1[y] {
                    r.flip(n + k);
                }
            }
            rows.push(r);
            rhs.push(c.value(x, y).is_minus());
        }
    }
    let sol = f2::solve(&rows, &rhs, unknowns)?;
    Some(
        pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| sol[n + k])
            .map(|(_, &(i, j))| (chars[i].0, chars[j].0))
            .collect(),
    )
}
