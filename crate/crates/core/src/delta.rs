//! The image of δ: explicit cocycles for each finite subgroup shape of
//! `B*/ℚ*`, closed forms for the two components of `δ(ψ)`, and a brute-force
//! oracle computing `δ(ψ)` from explicit quaternion lifts.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::cocycle::{
    cup_decomposition, decompose_two_torsion, pm_coboundary_witness, CocycleError, Sign,
    TwoCocycle,
};
use crate::groups::{cyclic_group, dihedral_group, klein_group, FiniteGroup};
use crate::qalg::{qinv, qmul, QalgError, QuaternionElement};
use crate::qarith::{
    embeds_as_maximal_subfield, symbol_class, AbsSquareClass, ArithError, Atom, F2Class,
    PolyquadraticField, Span, QuaternionClass, QuaternionSymbol, SquareClass,
};
use crate::rational::{int, rational_pow};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Qalg(#[from] QalgError),
    #[error("n = {0} is not one of 3, 4, 6")]
    UnsupportedOrder(u32),
    #[error("{0} is not a subgroup of B*/Q* for B = {1}")]
    NotAdmissible(Shape, QuaternionSymbol),
    #[error("{name} = {value} is a square in {base}")]
    SquareInBase {
        name: &'static str,
        value: SquareClass,
        base: String,
    },
    #[error("s = {0} and t = {1} define the same quadratic extension of {2}")]
    DependentGenerators(SquareClass, SquareClass, String),
    #[error("Q(sqrt {0}) is not a maximal subfield of {1}")]
    NotMaximalSubfield(SquareClass, QuaternionSymbol),
    #[error("a = {0} must be positive")]
    NonPositiveA(SquareClass),
    #[error("{found} is not isomorphic to B = {expected}")]
    AlgebraMismatch { expected: String, found: String },
    #[error("lift product at ({0},{1}) is not central")]
    NotCentral(String, String),
    #[error("expected {expected} lifts, found {found}")]
    LiftCount { expected: usize, found: usize },
    #[error("the P/P² part does not factor through the given characters")]
    CharacterMismatch,
}

/// Isomorphism type of a finite subgroup of `B*/ℚ*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    C2,
    V4,
    Cyclic(u32),
    /// `D₂ₙ`, stored by `n`.
    Dihedral(u32),
}

impl Shape {
    pub fn group(self) -> FiniteGroup {
        match self {
            Shape::C2 => cyclic_group(2),
            Shape::V4 => klein_group(),
            Shape::Cyclic(n) => cyclic_group(n as usize),
            Shape::Dihedral(n) => dihedral_group(n as usize),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::C2 => write!(f, "C2"),
            Shape::V4 => write!(f, "C2xC2"),
            Shape::Cyclic(n) => write!(f, "C{n}"),
            Shape::Dihedral(n) => write!(f, "D{}", 2 * n),
        }
    }
}

fn check_n(n: u32) -> Result<(), DeltaError> {
    match n {
        3 | 4 | 6 => Ok(()),
        _ => Err(DeltaError::UnsupportedOrder(n)),
    }
}

/// `α = 2 + ζₙ + ζₙ⁻¹` as an exact rational.
pub fn alpha_value(n: u32) -> Result<Rational, DeltaError> {
    check_n(n)?;
    Ok(int(match n {
        3 => 1,
        4 => 2,
        _ => 3,
    }))
}

/// The class of `α`.
pub fn cn_alpha(n: u32) -> Result<SquareClass, DeltaError> {
    Ok(SquareClass::from_rational(&alpha_value(n)?)?)
}

/// The class of `d = (ζₙ + ζₙ⁻¹)² − 4`.
pub fn d2n_d(n: u32) -> Result<SquareClass, DeltaError> {
    check_n(n)?;
    let z = alpha_value(n)? - int(2);
    Ok(SquareClass::from_rational(&(&z * &z - int(4)))?)
}

/// `a = (1+ζₙ)ⁿ`: `−1` for `n = 3`, `−α^{n/2}` for even `n`.
pub fn cn_a_value(n: u32) -> Result<Rational, DeltaError> {
    let alpha = alpha_value(n)?;
    Ok(if n % 2 == 1 {
        int(-1)
    } else {
        -rational_pow(&alpha, (n / 2) as i64)
    })
}

/// Fixed shape order: C₂, C₂×C₂, C₃, C₄, C₆, D₆, D₈, D₁₂, keeping those
/// that occur in `B*/ℚ*`.
pub fn admissible_subgroups(b: QuaternionSymbol) -> Result<Vec<Shape>, DeltaError> {
    let has = |n: u32| -> Result<bool, DeltaError> {
        let field = if n == 4 { -1 } else { -3 };
        Ok(embeds_as_maximal_subfield(SquareClass::new(field)?, b)?)
    };
    let mut out = vec![Shape::C2, Shape::V4];
    let cyc: Vec<u32> = [3, 4, 6]
        .into_iter()
        .filter_map(|n| has(n).map(|ok| ok.then_some(n)).transpose())
        .collect::<Result<_, _>>()?;
    out.extend(cyc.iter().map(|&n| Shape::Cyclic(n)));
    out.extend(cyc.iter().map(|&n| Shape::Dihedral(n)));
    Ok(out)
}

pub fn is_admissible(shape: Shape, b: QuaternionSymbol) -> Result<bool, DeltaError> {
    Ok(admissible_subgroups(b)?.contains(&shape))
}

// ---------------------------------------------------------------------------
// P-morphisms

/// A homomorphism `G_K → P/P²`, `σ ↦ ∏ dᵢ^{χ_{tᵢ}(σ)}`.
#[derive(Debug, Clone)]
pub struct PMorphism {
    pairs: Vec<(SquareClass, AbsSquareClass)>,
    base: PolyquadraticField,
}

impl PMorphism {
    pub fn new(pairs: Vec<(SquareClass, AbsSquareClass)>, base: PolyquadraticField) -> Self {
        PMorphism { pairs, base }
    }

    pub fn trivial(base: PolyquadraticField) -> Self {
        PMorphism::new(Vec::new(), base)
    }

    pub fn pairs(&self) -> &[(SquareClass, AbsSquareClass)] {
        &self.pairs
    }

    pub fn base(&self) -> &PolyquadraticField {
        &self.base
    }

    /// Column view: each prime `p` maps to the product of the reduced `t`
    /// over pairs whose `d` contains `p`.
    fn columns(&self) -> Vec<(u64, SquareClass)> {
        let mut cols: Vec<(u64, SquareClass)> = Vec::new();
        for &(t, d) in &self.pairs {
            let t = self.base.span().reduce(t);
            if t.is_one() {
                continue;
            }
            for p in d.primes() {
                match cols.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, c)) => *c = *c * t,
                    None => cols.push((p, t)),
                }
            }
        }
        cols.retain(|(_, c)| !c.is_one());
        cols.sort();
        cols
    }

    /// The unique reduced presentation `∏ (t_k, d_k)`: the `d_k` form the
    /// echelon basis of the image in `P/P²` (ascending pivot) and each `t_k`
    /// is reduced modulo the base field.
    pub fn canonical(&self) -> PMorphism {
        let cols = self.columns();
        let mut atoms: Vec<Atom> = cols.iter().flat_map(|(_, c)| c.atoms()).collect();
        atoms.sort();
        atoms.dedup();
        let rows = atoms.iter().map(|&a| {
            cols.iter()
                .filter(|(_, c)| c.has_atom(a))
                .fold(AbsSquareClass::ONE, |acc, &(p, _)| acc * AbsSquareClass::new(p).expect("prime"))
        });
        let image = Span::from_elements(rows);
        let mut pairs: Vec<(SquareClass, AbsSquareClass)> = image
            .basis()
            .iter()
            .map(|&d| {
                let Atom::Prime(p) = d.pivot().expect("nontrivial") else {
                    unreachable!("P/P² has no sign atom")
                };
                let t = cols.iter().find(|(q, _)| *q == p).map(|&(_, c)| c).expect("pivot column");
                (t, d)
            })
            .collect();
        pairs.sort_by_key(|&(_, d)| d.pivot());
        PMorphism::new(pairs, self.base.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical().pairs.is_empty()
    }

    /// Dimension of the image in `P/P²`.
    pub fn rank(&self) -> usize {
        self.canonical().pairs.len()
    }

    /// Same homomorphism read over a larger field.
    pub fn restrict(&self, k: &PolyquadraticField) -> PMorphism {
        PMorphism::new(self.pairs.clone(), k.clone()).canonical()
    }

    pub fn product(&self, other: &PMorphism) -> PMorphism {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        PMorphism::new(pairs, self.base.clone()).canonical()
    }

    /// The image in `P/P²`.
    pub fn image(&self) -> Span<AbsSquareClass> {
        Span::from_elements(self.canonical().pairs.iter().map(|p| p.1))
    }

    /// The span of the characters involved, modulo the base.
    pub fn character_span(&self) -> Span<SquareClass> {
        Span::from_elements(self.canonical().pairs.iter().map(|p| p.0))
    }

    /// `K_P`: the base with the square roots of the canonical characters.
    pub fn kernel_field(&self) -> PolyquadraticField {
        let mut k = self.base.clone();
        for (t, _) in self.canonical().pairs {
            k = k.adjoin(t).expect("canonical characters are independent mod the base");
        }
        k
    }

    /// Writes this morphism as `∏ (t_k, basis_k)` for a basis of its image.
    pub fn coefficients_in_basis(&self, basis: &[AbsSquareClass]) -> Option<Vec<SquareClass>> {
        let canon = self.canonical();
        let span = Span::from_elements(basis.iter().copied());
        if span.dim() != basis.len() || span != self.image() {
            return None;
        }
        let mut ts = vec![SquareClass::ONE; basis.len()];
        for &(t, d) in &canon.pairs {
            let mask = (0u32..(1 << basis.len())).find(|&m| {
                (0..basis.len())
                    .filter(|k| m >> k & 1 == 1)
                    .fold(AbsSquareClass::ONE, |acc, k| acc * basis[k])
                    == d
            })?;
            for (k, tk) in ts.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *tk = *tk * t;
                }
            }
        }
        let check = PMorphism::new(ts.iter().copied().zip(basis.iter().copied()).collect(), self.base.clone());
        (check == *self).then_some(ts)
    }
}

impl PartialEq for PMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.canonical().pairs == other.canonical().pairs
    }
}

impl fmt::Display for PMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "()");
        }
        for (t, d) in &self.pairs {
            write!(f, "({t},{d})")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// classes

/// The `γ±` component.
#[derive(Debug, Clone)]
pub enum SignComponent {
    /// A quaternion class over ℚ read over `base`, with the symbols it came
    /// from.
    Symbolic {
        class: QuaternionClass,
        symbols: Vec<(SquareClass, SquareClass)>,
    },
    /// An explicit ±1 cocycle on `Gal(M/K)`, with `M` named by a certificate
    /// when known.
    CocycleForm {
        cocycle: TwoCocycle<Sign>,
        shape: Shape,
        extension: Option<String>,
    },
}

impl SignComponent {
    pub fn trivial() -> Self {
        SignComponent::Symbolic {
            class: QuaternionClass::trivial(),
            symbols: Vec::new(),
        }
    }

    pub fn from_symbols(symbols: Vec<(SquareClass, SquareClass)>) -> Self {
        let class = symbols
            .iter()
            .fold(QuaternionClass::trivial(), |acc, &(a, b)| acc.product(&symbol_class(a, b)));
        SignComponent::Symbolic { class, symbols }
    }

    pub fn from_class(class: QuaternionClass) -> Self {
        SignComponent::Symbolic {
            class,
            symbols: Vec::new(),
        }
    }

    pub fn class(&self) -> Option<&QuaternionClass> {
        match self {
            SignComponent::Symbolic { class, .. } => Some(class),
            SignComponent::CocycleForm { .. } => None,
        }
    }
}

/// `γ = (γ̄, γ±)` over a base field.
#[derive(Debug, Clone)]
pub struct GammaClass {
    pub pbar: PMorphism,
    pub sign: SignComponent,
    pub base: PolyquadraticField,
}

impl GammaClass {
    pub fn trivial(base: PolyquadraticField) -> Self {
        GammaClass {
            pbar: PMorphism::trivial(base.clone()),
            sign: SignComponent::trivial(),
            base,
        }
    }

    /// Both components trivial (only decidable for symbolic signs).
    pub fn is_trivial(&self) -> Option<bool> {
        let sign = self.sign.class()?.splits_over(&self.base);
        Some(sign && self.pbar.is_trivial())
    }
}

fn require_nonsquare(name: &'static str, t: SquareClass, k: &PolyquadraticField) -> Result<(), DeltaError> {
    if k.contains_sqrt(t) {
        return Err(DeltaError::SquareInBase {
            name,
            value: t,
            base: format!("{k}"),
        });
    }
    Ok(())
}

/// `δ(ψ)` for `ψ` with image `C₂`, `ψ(σ) = ȳ`, `y² = b`, `K(√t) = M`.
pub fn delta_c2(
    t: SquareClass,
    b: SquareClass,
    big_b: QuaternionSymbol,
    k: &PolyquadraticField,
) -> Result<GammaClass, DeltaError> {
    require_nonsquare("t", t, k)?;
    if !embeds_as_maximal_subfield(b, big_b)? {
        return Err(DeltaError::NotMaximalSubfield(b, big_b));
    }
    Ok(GammaClass {
        pbar: PMorphism::new(vec![(t, b.abs())], k.clone()).canonical(),
        sign: SignComponent::from_symbols(vec![(t, b.sign())]),
        base: k.clone(),
    })
}

/// The sign symbols `(s,t)(s, sign a)(t, sign b)` of a `C₂×C₂` morphism.
pub fn v4_sign_symbols(s: SquareClass, t: SquareClass, a: SquareClass, b: SquareClass) -> Vec<(SquareClass, SquareClass)> {
    vec![(s, t), (s, a.sign()), (t, b.sign())]
}

fn require_independent(s: SquareClass, t: SquareClass, k: &PolyquadraticField) -> Result<(), DeltaError> {
    require_nonsquare("s", s, k)?;
    require_nonsquare("t", t, k)?;
    if k.contains_sqrt(s * t) {
        return Err(DeltaError::DependentGenerators(s, t, format!("{k}")));
    }
    Ok(())
}

/// `δ(ψ)` for image `C₂×C₂`, `x² = a > 0`, `y² = b`, `M^⟨τ⟩ = K(√s)`,
/// `M^⟨σ⟩ = K(√t)`.
pub fn delta_c2xc2(
    s: SquareClass,
    t: SquareClass,
    a: SquareClass,
    b: SquareClass,
    big_b: QuaternionSymbol,
    k: &PolyquadraticField,
) -> Result<GammaClass, DeltaError> {
    if a.is_negative() {
        return Err(DeltaError::NonPositiveA(a));
    }
    let ab = QuaternionSymbol::new(a, b);
    if !ab.isomorphic(&big_b) {
        return Err(DeltaError::AlgebraMismatch {
            expected: format!("{}", big_b.ramification()),
            found: format!("{ab} = {}", ab.ramification()),
        });
    }
    require_independent(s, t, k)?;
    Ok(GammaClass {
        pbar: PMorphism::new(vec![(s, a.abs()), (t, b.abs())], k.clone()).canonical(),
        sign: SignComponent::from_symbols(vec![(b.sign() * s, t)]),
        base: k.clone(),
    })
}

// ---------------------------------------------------------------------------
// explicit cocycles

/// `c(σ,σ) = b` on `C₂`.
pub fn gamma_c2(b: &Rational) -> TwoCocycle<Rational> {
    TwoCocycle::from_fn(cyclic_group(2), |g, h| if g == 1 && h == 1 { b.clone() } else { int(1) })
}

fn klein_bits(g: usize) -> (bool, bool) {
    (g & 1 == 1, g & 2 == 2)
}

/// Inflation of `c(σ,σ) = a` along `C₂×C₂ → ⟨σ⟩`.
pub fn gamma_s_a(a: &Rational) -> TwoCocycle<Rational> {
    TwoCocycle::from_fn(klein_group(), |g, h| {
        if klein_bits(g).0 && klein_bits(h).0 {
            a.clone()
        } else {
            int(1)
        }
    })
}

/// Inflation of `c(τ,τ) = b` along `C₂×C₂ → ⟨τ⟩`.
pub fn gamma_t_b(b: &Rational) -> TwoCocycle<Rational> {
    TwoCocycle::from_fn(klein_group(), |g, h| {
        if klein_bits(g).1 && klein_bits(h).1 {
            b.clone()
        } else {
            int(1)
        }
    })
}

/// `γ_{s,t}(ρ,μ) = (−1)^{χ_s(μ)χ_t(ρ)}`.
pub fn gamma_s_t() -> TwoCocycle<Sign> {
    TwoCocycle::from_fn(klein_group(), |g, h| Sign::from_minus(klein_bits(h).0 && klein_bits(g).1))
}

/// `γ_{s,t}·γ_{s,a}·γ_{t,b}` with values in ℚ*.
pub fn v4_cocycle(a: &Rational, b: &Rational) -> TwoCocycle<Rational> {
    let st = gamma_s_t().map(|s| s.to_rational());
    st.product(&gamma_s_a(a))
        .and_then(|c| c.product(&gamma_t_b(b)))
        .expect("same group")
}

/// `c(σⁱ,σʲ) = a` if `i + j ≥ n`, else 1.
pub fn cn_cocycle(n: usize, a: &Rational) -> TwoCocycle<Rational> {
    TwoCocycle::from_fn(cyclic_group(n), |i, j| if i + j >= n { a.clone() } else { int(1) })
}

/// The sign table `−1` iff `i + j ≥ n` on `Cₙ`.
pub fn build_cn_sign_cocycle(n: usize) -> TwoCocycle<Sign> {
    TwoCocycle::from_fn(cyclic_group(n), |i, j| Sign::from_minus(i + j >= n))
}

/// The three cocycles `γ_b`, `e` and `c_± = sign(γ_b·e)` on `D₂ₙ`.
pub fn build_d2n_cocycles(
    n: u32,
    a: &Rational,
    b: &Rational,
    alpha: &Rational,
) -> Result<(TwoCocycle<Rational>, TwoCocycle<Rational>, TwoCocycle<Sign>), DeltaError> {
    check_n(n)?;
    let n = n as usize;
    let g = dihedral_group(n);
    let split = |x: usize| (x % n, x / n);
    let gamma_b = TwoCocycle::from_fn(g.clone(), |x, y| {
        if split(x).1 + split(y).1 == 2 {
            b.clone()
        } else {
            int(1)
        }
    });
    let e = TwoCocycle::from_fn(g, |x, y| {
        let ((i, j), (i2, _)) = (split(x), split(y));
        if j == 1 {
            let v = rational_pow(alpha, i2 as i64);
            if i >= i2 {
                v
            } else {
                v / a
            }
        } else if i + i2 >= n {
            a.clone()
        } else {
            int(1)
        }
    });
    let prod = gamma_b.product(&e)?;
    let sign = prod.map(Sign::of);
    Ok((gamma_b, e, sign))
}

/// The paper-form `c_±` on `D₂ₙ` (b > 0, a < 0).
pub fn d2n_sign_cocycle(n: u32) -> Result<TwoCocycle<Sign>, DeltaError> {
    let alpha = alpha_value(n)?;
    let a = cn_a_value(n)?;
    Ok(build_d2n_cocycles(n, &a, &int(1), &alpha)?.2)
}

/// `δ(ψ)` for image `Cₙ`, `ψ(σ) = 1 + ζₙ`, `K(√t) = M^⟨σ²⟩`.
pub fn delta_cn(
    n: u32,
    t: SquareClass,
    big_b: QuaternionSymbol,
    k: &PolyquadraticField,
    extension: Option<&str>,
) -> Result<GammaClass, DeltaError> {
    check_n(n)?;
    if !is_admissible(Shape::Cyclic(n), big_b)? {
        return Err(DeltaError::NotAdmissible(Shape::Cyclic(n), big_b));
    }
    if n % 2 == 1 {
        return Ok(GammaClass::trivial(k.clone()));
    }
    require_nonsquare("t", t, k)?;
    Ok(GammaClass {
        pbar: PMorphism::new(vec![(t, cn_alpha(n)?.abs())], k.clone()).canonical(),
        sign: SignComponent::CocycleForm {
            cocycle: build_cn_sign_cocycle(n as usize),
            shape: Shape::Cyclic(n),
            extension: extension.map(String::from),
        },
        base: k.clone(),
    })
}

/// `δ(ψ)` for image `D₂ₙ` with `M^⟨σ²,τ⟩ = K(√s)`, `M^⟨σ⟩ = K(√t)`,
/// `y² = b` and `B ≅ (d,b)`.
pub fn delta_d2n(
    n: u32,
    s: SquareClass,
    t: SquareClass,
    b: SquareClass,
    big_b: QuaternionSymbol,
    k: &PolyquadraticField,
    extension: Option<&str>,
) -> Result<GammaClass, DeltaError> {
    check_n(n)?;
    if !is_admissible(Shape::Dihedral(n), big_b)? {
        return Err(DeltaError::NotAdmissible(Shape::Dihedral(n), big_b));
    }
    let db = QuaternionSymbol::new(d2n_d(n)?, b);
    if !db.isomorphic(&big_b) {
        return Err(DeltaError::AlgebraMismatch {
            expected: format!("{}", big_b.ramification()),
            found: format!("{db} = {}", db.ramification()),
        });
    }
    if n % 2 == 1 {
        require_nonsquare("t", t, k)?;
        return Ok(GammaClass {
            pbar: PMorphism::new(vec![(t, b.abs())], k.clone()).canonical(),
            sign: SignComponent::trivial(),
            base: k.clone(),
        });
    }
    require_independent(s, t, k)?;
    let alpha = alpha_value(n)?;
    let (_, _, sign) = build_d2n_cocycles(n, &cn_a_value(n)?, &b.to_rational(), &alpha)?;
    Ok(GammaClass {
        pbar: PMorphism::new(vec![(s, cn_alpha(n)?.abs()), (t, b.abs())], k.clone()).canonical(),
        sign: SignComponent::CocycleForm {
            cocycle: sign,
            shape: Shape::Dihedral(n),
            extension: extension.map(String::from),
        },
        base: k.clone(),
    })
}

/// `c(g,h) = lift(g)·lift(h)·lift(gh)⁻¹`, checked central.
pub fn delta_bruteforce(g: &FiniteGroup, lifts: &[QuaternionElement]) -> Result<TwoCocycle<Rational>, DeltaError> {
    if lifts.len() != g.order() {
        return Err(DeltaError::LiftCount {
            expected: g.order(),
            found: lifts.len(),
        });
    }
    let inverses: Vec<QuaternionElement> = lifts.iter().map(qinv).collect::<Result<_, _>>()?;
    let mut values = Vec::with_capacity(g.order() * g.order());
    for x in g.elements() {
        for y in g.elements() {
            let p = qmul(&qmul(&lifts[x], &lifts[y])?, &inverses[g.mul(x, y)])?;
            match p.central_value() {
                Some(v) if !v.is_zero() => values.push(v.clone()),
                _ => return Err(DeltaError::NotCentral(g.label(x).into(), g.label(y).into())),
            }
        }
    }
    Ok(TwoCocycle::new(g.clone(), values)?)
}

/// Lifts `xⁱyʲ` on `D₂ₙ` (or `xⁱ` on `Cₙ` when `y` is `None`).
pub fn power_lifts(n: usize, x: &QuaternionElement, y: Option<&QuaternionElement>) -> Result<Vec<QuaternionElement>, DeltaError> {
    let mut out = Vec::new();
    let js: &[usize] = if y.is_some() { &[0, 1] } else { &[0] };
    for &j in js {
        for i in 0..n {
            let mut e = x.pow(i as u32);
            if j == 1 {
                e = qmul(&e, y.expect("dihedral"))?;
            }
            out.push(e);
        }
    }
    Ok(out)
}

/// Reads a ℚ*-valued 2-torsion cocycle on `Gal(M/K)` as `(γ̄, γ±)`, with
/// `chars[k] = (t_k, χ_{t_k})` the characters cutting out the quadratic
/// subfields. The sign is symbolic when it lies in the span of cup products
/// of the characters, otherwise it is returned as a cocycle.
pub fn components_from_cocycle(
    c: &TwoCocycle<Rational>,
    chars: &[(SquareClass, Vec<bool>)],
    k: &PolyquadraticField,
    shape: Shape,
) -> Result<GammaClass, DeltaError> {
    let parts = decompose_two_torsion(c)?;
    let g = c.group();
    // dual elements g_k with χ_i(g_k) = δ_ik
    let mut pairs = Vec::new();
    for (idx, (t, _)) in chars.iter().enumerate() {
        let gk = g
            .elements()
            .find(|&x| chars.iter().enumerate().all(|(i, ch)| ch.1[x] == (i == idx)))
            .ok_or(DeltaError::CharacterMismatch)?;
        pairs.push((*t, parts.p_part[gk]));
    }
    for x in g.elements() {
        let expect = pairs
            .iter()
            .zip(chars)
            .filter(|(_, ch)| ch.1[x])
            .fold(AbsSquareClass::ONE, |acc, (p, _)| acc * p.1);
        if expect != parts.p_part[x] {
            return Err(DeltaError::CharacterMismatch);
        }
    }
    let pbar = PMorphism::new(pairs, k.clone()).canonical();
    let sign = match cup_decomposition(&parts.sign_part, chars) {
        Some(symbols) => SignComponent::from_symbols(symbols),
        None => SignComponent::CocycleForm {
            cocycle: parts.sign_part,
            shape,
            extension: None,
        },
    };
    Ok(GammaClass {
        pbar,
        sign,
        base: k.clone(),
    })
}

/// Whether two ±1 cocycles on the same group are cohomologous.
pub fn cohomologous(a: &TwoCocycle<Sign>, b: &TwoCocycle<Sign>) -> bool {
    match a.product(b) {
        Ok(p) => pm_coboundary_witness(&p).is_some(),
        Err(_) => false,
    }
}

/// Characters of the standard shapes: `χ_t` for `C₂` and `Cₙ`, `χ_s, χ_t`
/// for `C₂×C₂` and `D₂ₙ` (`n` even).
pub fn shape_characters(shape: Shape) -> Vec<Vec<bool>> {
    let g = shape.group();
    match shape {
        Shape::C2 => vec![vec![false, true]],
        Shape::V4 => vec![g.elements().map(|x| x & 1 == 1).collect(), g.elements().map(|x| x & 2 == 2).collect()],
        Shape::Cyclic(n) if n % 2 == 1 => vec![],
        Shape::Cyclic(_) => vec![g.elements().map(|x| x % 2 == 1).collect()],
        Shape::Dihedral(n) => {
            let n = n as usize;
            let chi_t = g.elements().map(|x| x / n == 1).collect();
            if n % 2 == 1 {
                vec![chi_t]
            } else {
                vec![g.elements().map(|x| (x % n) % 2 == 1).collect(), chi_t]
            }
        }
    }
}

/// A pure quaternion `y` with `y²` in the class `target`, found by bounded
/// search over integer coordinates; `orthogonal_to` restricts to elements
/// anticommuting with a given pure quaternion.
pub fn find_pure_square(
    algebra: QuaternionSymbol,
    target: SquareClass,
    orthogonal_to: Option<&QuaternionElement>,
    bound: i64,
) -> Option<QuaternionElement> {
    let mut candidates: Vec<[i64; 3]> = Vec::new();
    for x1 in -bound..=bound {
        for x2 in -bound..=bound {
            for x3 in -bound..=bound {
                if (x1, x2, x3) != (0, 0, 0) {
                    candidates.push([x1, x2, x3]);
                }
            }
        }
    }
    candidates.sort_by_key(|c| (c.iter().map(|v| v.abs()).sum::<i64>(), *c));
    for [x1, x2, x3] in candidates {
        let y = QuaternionElement::new(algebra, [int(0), int(x1), int(x2), int(x3)]);
        if let Some(o) = orthogonal_to {
            let anti = qmul(o, &y).ok()?.add(&qmul(&y, o).ok()?).ok()?;
            if !anti.is_zero() {
                continue;
            }
        }
        let sq = qmul(&y, &y).ok()?;
        let v = sq.central_value()?;
        if v.is_zero() {
            continue;
        }
        if SquareClass::from_rational(v).ok()? == target {
            return Some(y);
        }
    }
    None
}

/// The identity `x·y = α·y·x⁻¹` for `x = 1 + ζ`.
pub fn dihedral_relation_holds(x: &QuaternionElement, y: &QuaternionElement, alpha: &Rational) -> bool {
    let lhs = qmul(x, y);
    let rhs = qinv(x).and_then(|xi| qmul(y, &xi)).map(|r| r.scale(alpha));
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// `x = 1 + ζₙ` in a supported presentation.
pub fn one_plus_zeta(n: u32, algebra: QuaternionSymbol) -> Result<QuaternionElement, DeltaError> {
    let z = crate::qalg::make_zeta(n, algebra)?;
    Ok(QuaternionElement::one(algebra).add(&z)?)
}

/// The sign of a nonzero rational as a square class.
pub fn sign_class(r: &Rational) -> SquareClass {
    if r.is_negative() {
        SquareClass::MINUS_ONE
    } else {
        SquareClass::ONE
    }
}

/// Check that `2 + ζ + ζ⁻¹` is central and equal to `α`.
pub fn zeta_trace_is_alpha(n: u32, algebra: QuaternionSymbol) -> Result<bool, DeltaError> {
    let z = crate::qalg::make_zeta(n, algebra)?;
    let s = QuaternionElement::scalar(algebra, int(2)).add(&z)?.add(&qinv(&z)?)?;
    Ok(s.central_value() == Some(&alpha_value(n)?))
}
