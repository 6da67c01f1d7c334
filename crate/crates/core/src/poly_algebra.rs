//! Bivariate polynomials over `Q` or `F_p`, coordinate changes of the plane
//! fixing the origin, and monomialization of ideals.
//!
//! Only the prime field of each characteristic is modelled: supports and
//! weighted orders depend on which coefficients vanish, and that pattern is
//! already decided in the prime field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use crate::newton_geometry::Monomial;
use crate::newton_geometry::MonomialIdeal;
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("polynomials live over different fields (char {0} vs char {1})")]
    FieldMismatch(u64, u64),
    #[error("the zero polynomial has no support")]
    ZeroPolynomial,
    #[error("{0} is not invertible in characteristic {1}")]
    NotInvertible(String, u64),
    #[error("an ideal needs at least one nonzero generator")]
    EmptyIdeal,
    #[error("the coefficient pool is empty")]
    EmptyPool,
    #[error("linear step has zero determinant")]
    SingularLinear,
    #[error("degree bound must be at least 1")]
    BadDegree,
}

/// Characteristic of the coefficient field: 0 for `Q`, else a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoefficientField {
    characteristic: u64,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl CoefficientField {
    pub fn new(characteristic: u64) -> Result<Self, PolyError> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(PolyError::NotPrime(characteristic));
        }
        Ok(CoefficientField { characteristic })
    }

    pub const fn rationals() -> Self {
        CoefficientField { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn modulus(&self) -> BigInt {
        BigInt::from(self.characteristic)
    }

    /// Image of a rational number in the field.
    pub fn element(&self, q: &Rational) -> Result<Rational, PolyError> {
        if self.characteristic == 0 {
            return Ok(q.clone());
        }
        let p = self.modulus();
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(PolyError::NotInvertible(q.to_string(), self.characteristic));
        }
        let num = q.numer().mod_floor(&p);
        let inv = den.modpow(&(&p - 2u32), &p);
        Ok(Rational::from_integer((num * inv).mod_floor(&p)))
    }

    pub fn from_int(&self, n: i64) -> Rational {
        self.element(&Rational::from_integer(BigInt::from(n))).expect("integers map to the field")
    }

    fn normalize(&self, q: Rational) -> Rational {
        if self.characteristic == 0 {
            q
        } else {
            Rational::from_integer(q.to_integer().mod_floor(&self.modulus()))
        }
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.normalize(a + b)
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Rational) -> Rational {
        self.normalize(-a)
    }

    pub fn inv(&self, a: &Rational) -> Result<Rational, PolyError> {
        if a.is_zero() {
            return Err(PolyError::NotInvertible("0".into(), self.characteristic));
        }
        if self.characteristic == 0 {
            Ok(a.recip())
        } else {
            self.element(&a.recip())
        }
    }

    fn check_same(&self, other: &CoefficientField) -> Result<(), PolyError> {
        if self != other {
            return Err(PolyError::FieldMismatch(self.characteristic, other.characteristic));
        }
        Ok(())
    }
}

/// Polynomial in `x, y`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariatePolynomial {
    field: CoefficientField,
    terms: BTreeMap<Monomial, Rational>,
}

impl BivariatePolynomial {
    pub fn zero(field: CoefficientField) -> Self {
        BivariatePolynomial { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: CoefficientField, c: &Rational) -> Result<Self, PolyError> {
        Self::term(field, Monomial::ONE, c)
    }

    pub fn term(field: CoefficientField, m: Monomial, c: &Rational) -> Result<Self, PolyError> {
        let mut p = Self::zero(field);
        p.add_term(m, field.element(c)?);
        Ok(p)
    }

    pub fn monomial(field: CoefficientField, m: Monomial) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, Rational::one());
        p
    }

    pub fn x(field: CoefficientField) -> Self {
        Self::monomial(field, Monomial::new(1, 0))
    }

    pub fn y(field: CoefficientField) -> Self {
        Self::monomial(field, Monomial::new(0, 1))
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, reducing
    /// coefficients into the field and merging repeated monomials.
    pub fn from_terms<I>(field: CoefficientField, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, field.element(&c)?);
        }
        Ok(p)
    }

    /// `c` must already be a field element.
    fn add_term(&mut self, m: Monomial, c: Rational) {
        let field = self.field;
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry = field.add(entry, &c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Set of monomials with nonzero coefficient.
    pub fn support(&self) -> Result<BTreeSet<Monomial>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.terms.keys().copied().collect())
    }

    /// `p`-weighted order: least `<p, m>` over the support.
    pub fn weighted_order(&self, p: [i64; 2]) -> Option<i64> {
        self.terms.keys().map(|m| m.weight(p)).min()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::monomial(self.field, Monomial::ONE);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(self.field);
        let c = self.field.normalize(c.clone());
        for (m, a) in &self.terms {
            p.add_term(*m, self.field.mul(a, &c));
        }
        p
    }

    /// `f(img_x, img_y)`, fully expanded in the field.
    pub fn substitute(
        &self,
        img_x: &BivariatePolynomial,
        img_y: &BivariatePolynomial,
    ) -> Result<Self, PolyError> {
        self.field.check_same(&img_x.field)?;
        self.field.check_same(&img_y.field)?;
        let max_ex = self.terms.keys().map(|m| m.ex).max().unwrap_or(0);
        let max_ey = self.terms.keys().map(|m| m.ey).max().unwrap_or(0);
        let powers = |base: &BivariatePolynomial, n: u32| {
            let mut out = vec![Self::monomial(self.field, Monomial::ONE)];
            for i in 0..n as usize {
                let next = &out[i] * base;
                out.push(next);
            }
            out
        };
        let xs = powers(img_x, max_ex);
        let ys = powers(img_y, max_ey);
        let mut result = Self::zero(self.field);
        for (m, c) in &self.terms {
            let product = &xs[m.ex as usize] * &ys[m.ey as usize];
            for (mm, cc) in product.terms {
                result.add_term(mm, self.field.mul(c, &cc));
            }
        }
        Ok(result)
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let field = self.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        BivariatePolynomial { field, terms }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = BivariatePolynomial::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }
}

fn fmt_coefficient(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Terms by descending total degree, then descending `x` exponent. The
    /// output is accepted by [`crate::parse::parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse((m.degree(), m.ex)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*m == Monomial::ONE, mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_coefficient(&mag))?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{}*{m}", fmt_coefficient(&mag))?,
            }
        }
        Ok(())
    }
}

/// Ideal given by nonzero generators over one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialIdeal {
    field: CoefficientField,
    generators: Vec<BivariatePolynomial>,
}

impl PolynomialIdeal {
    pub fn new(generators: Vec<BivariatePolynomial>) -> Result<Self, PolyError> {
        let first = generators.first().ok_or(PolyError::EmptyIdeal)?;
        let field = first.field;
        for g in &generators {
            field.check_same(&g.field)?;
            if g.is_zero() {
                return Err(PolyError::EmptyIdeal);
            }
        }
        Ok(PolynomialIdeal { field, generators })
    }

    /// Ideal generated by monomials with coefficient 1.
    pub fn from_monomial_ideal(field: CoefficientField, ideal: &MonomialIdeal) -> Self {
        let generators = ideal
            .generators()
            .iter()
            .map(|m| BivariatePolynomial::monomial(field, *m))
            .collect();
        PolynomialIdeal { field, generators }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn generators(&self) -> &[BivariatePolynomial] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(BivariatePolynomial::is_monomial)
    }

    /// `p`-order of the ideal: least weighted order over the generators.
    pub fn weighted_order(&self, p: [i64; 2]) -> i64 {
        self.generators
            .iter()
            .filter_map(|g| g.weighted_order(p))
            .min()
            .expect("generators are nonzero")
    }
}

impl fmt::Display for PolynomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The monomial ideal generated by every monomial in the generators' supports.
///
/// This equals the ideal generated by all monomials of all elements: each
/// element is a combination `sum g_i f_i`, every monomial of `g_i f_i` is a
/// multiple of a monomial of `g_i`, and cancellation can only remove terms.
pub fn monomialize(ideal: &PolynomialIdeal) -> MonomialIdeal {
    let support = ideal.generators.iter().flat_map(|g| g.terms.keys().copied());
    MonomialIdeal::new(support).expect("generators are nonzero")
}

pub fn support(f: &BivariatePolynomial) -> Result<BTreeSet<Monomial>, PolyError> {
    f.support()
}

pub fn substitute(
    f: &BivariatePolynomial,
    img_x: &BivariatePolynomial,
    img_y: &BivariatePolynomial,
) -> Result<BivariatePolynomial, PolyError> {
    f.substitute(img_x, img_y)
}

/// One elementary coordinate change.
///
/// Shear polynomials are coefficient lists for `t, t^2, ...`, so the
/// constant term is zero and the origin stays fixed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AutomorphismStep {
    /// `x -> m00 x + m01 y`, `y -> m10 x + m11 y`.
    Linear([[Rational; 2]; 2]),
    /// `x -> x + h(y)`.
    ShearX(Vec<Rational>),
    /// `y -> y + h(x)`.
    ShearY(Vec<Rational>),
}

fn univariate(field: CoefficientField, h: &[Rational], var: Monomial) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::zero(field);
    for (i, c) in h.iter().enumerate() {
        let k = i as u32 + 1;
        p.add_term(Monomial::new(var.ex * k, var.ey * k), c.clone());
    }
    p
}

impl AutomorphismStep {
    fn normalized(self, field: CoefficientField) -> Result<Self, PolyError> {
        let norm = |v: Vec<Rational>| -> Result<Vec<Rational>, PolyError> {
            let mut v = v.iter().map(|c| field.element(c)).collect::<Result<Vec<_>, _>>()?;
            while v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
            Ok(v)
        };
        Ok(match self {
            AutomorphismStep::Linear(m) => {
                let e = |c: &Rational| field.element(c);
                let m = [[e(&m[0][0])?, e(&m[0][1])?], [e(&m[1][0])?, e(&m[1][1])?]];
                if field.add(&field.mul(&m[0][0], &m[1][1]), &field.neg(&field.mul(&m[0][1], &m[1][0]))).is_zero() {
                    return Err(PolyError::SingularLinear);
                }
                AutomorphismStep::Linear(m)
            }
            AutomorphismStep::ShearX(h) => AutomorphismStep::ShearX(norm(h)?),
            AutomorphismStep::ShearY(h) => AutomorphismStep::ShearY(norm(h)?),
        })
    }

    /// Images of `x` and `y`.
    pub fn images(&self, field: CoefficientField) -> (BivariatePolynomial, BivariatePolynomial) {
        let x = BivariatePolynomial::x(field);
        let y = BivariatePolynomial::y(field);
        match self {
            AutomorphismStep::Linear(m) => (
                &x.scale(&m[0][0]) + &y.scale(&m[0][1]),
                &x.scale(&m[1][0]) + &y.scale(&m[1][1]),
            ),
            AutomorphismStep::ShearX(h) => (&x + &univariate(field, h, Monomial::new(0, 1)), y),
            AutomorphismStep::ShearY(h) => {
                let shifted = &y + &univariate(field, h, Monomial::new(1, 0));
                (x, shifted)
            }
        }
    }

    pub fn inverse(&self, field: CoefficientField) -> Result<Self, PolyError> {
        Ok(match self {
            AutomorphismStep::Linear(m) => {
                let det = field.add(&field.mul(&m[0][0], &m[1][1]), &field.neg(&field.mul(&m[0][1], &m[1][0])));
                let inv = field.inv(&det)?;
                let s = |c: &Rational| field.mul(c, &inv);
                AutomorphismStep::Linear([
                    [s(&m[1][1]), s(&field.neg(&m[0][1]))],
                    [s(&field.neg(&m[1][0])), s(&m[0][0])],
                ])
            }
            AutomorphismStep::ShearX(h) => AutomorphismStep::ShearX(h.iter().map(|c| field.neg(c)).collect()),
            AutomorphismStep::ShearY(h) => AutomorphismStep::ShearY(h.iter().map(|c| field.neg(c)).collect()),
        })
    }

    fn is_identity(&self) -> bool {
        match self {
            AutomorphismStep::Linear(m) => {
                m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero()
            }
            AutomorphismStep::ShearX(h) | AutomorphismStep::ShearY(h) => h.is_empty(),
        }
    }
}

/// Composite of elementary steps, applied first to last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneAutomorphism {
    field: CoefficientField,
    steps: Vec<AutomorphismStep>,
}

impl PlaneAutomorphism {
    pub fn identity(field: CoefficientField) -> Self {
        PlaneAutomorphism { field, steps: Vec::new() }
    }

    pub fn new(field: CoefficientField, steps: Vec<AutomorphismStep>) -> Result<Self, PolyError> {
        let steps = steps.into_iter().map(|s| s.normalized(field)).collect::<Result<_, _>>()?;
        Ok(PlaneAutomorphism { field, steps })
    }

    pub fn single(field: CoefficientField, step: AutomorphismStep) -> Result<Self, PolyError> {
        Self::new(field, vec![step])
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn steps(&self) -> &[AutomorphismStep] {
        &self.steps
    }

    pub fn is_identity(&self) -> bool {
        self.steps.iter().all(AutomorphismStep::is_identity)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PlaneAutomorphism) -> PlaneAutomorphism {
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        PlaneAutomorphism { field: self.field, steps }
    }

    /// Step-wise inverse: reversed order, each step inverted.
    pub fn inverse(&self) -> Result<Self, PolyError> {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| s.inverse(self.field))
            .collect::<Result<_, _>>()?;
        Ok(PlaneAutomorphism { field: self.field, steps })
    }

    pub fn apply_polynomial(&self, f: &BivariatePolynomial) -> Result<BivariatePolynomial, PolyError> {
        self.field.check_same(&f.field)?;
        let mut g = f.clone();
        for step in &self.steps {
            let (ix, iy) = step.images(self.field);
            g = g.substitute(&ix, &iy)?;
        }
        Ok(g)
    }

    pub fn apply(&self, ideal: &PolynomialIdeal) -> Result<PolynomialIdeal, PolyError> {
        self.field.check_same(&ideal.field)?;
        let generators = ideal
            .generators
            .iter()
            .map(|g| self.apply_polynomial(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolynomialIdeal { field: self.field, generators })
    }
}

pub fn apply(phi: &PlaneAutomorphism, ideal: &PolynomialIdeal) -> Result<PolynomialIdeal, PolyError> {
    phi.apply(ideal)
}

impl fmt::Display for PlaneAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "id");
        }
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            let (ix, iy) = step.images(self.field);
            write!(f, "(x, y) -> ({ix}, {iy})")?;
        }
        Ok(())
    }
}

/// Identity, then every invertible linear map with entries in `pool`, then
/// every nonzero shear `x -> x + h(y)` and `y -> y + h(x)` with
/// `deg h <= degree_bound` and coefficients in `pool`.
pub fn elementary_automorphisms(
    field: CoefficientField,
    degree_bound: u32,
    pool: &[Rational],
) -> Result<Vec<PlaneAutomorphism>, PolyError> {
    if pool.is_empty() {
        return Err(PolyError::EmptyPool);
    }
    if degree_bound == 0 {
        return Err(PolyError::BadDegree);
    }
    let mut elems: Vec<Rational> = pool.iter().map(|c| field.element(c)).collect::<Result<_, _>>()?;
    elems.sort();
    elems.dedup();

    let mut out = vec![PlaneAutomorphism::identity(field)];
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    let m = [[a.clone(), b.clone()], [c.clone(), d.clone()]];
                    if let Ok(phi) = PlaneAutomorphism::single(field, AutomorphismStep::Linear(m)) {
                        if !phi.is_identity() {
                            out.push(phi);
                        }
                    }
                }
            }
        }
    }

    let n = elems.len();
    let total = n.checked_pow(degree_bound).expect("shear enumeration too large");
    let mut shears = Vec::new();
    for code in 0..total {
        let mut h = Vec::with_capacity(degree_bound as usize);
        let mut rest = code;
        for _ in 0..degree_bound {
            h.push(elems[rest % n].clone());
            rest /= n;
        }
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        shears.push(h);
    }
    for make in [AutomorphismStep::ShearX as fn(Vec<Rational>) -> AutomorphismStep, AutomorphismStep::ShearY] {
        for h in &shears {
            out.push(PlaneAutomorphism::single(field, make(h.clone()))?);
        }
    }
    Ok(out)
}

/// Integer coefficient pool, e.g. `[0, 1, -1]`.
pub fn integer_pool(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()
}

/// Coefficient of a field element as a small integer, when it is one.
pub fn small_integer(c: &Rational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{integer, rational};

    fn f0() -> CoefficientField {
        CoefficientField::rationals()
    }

    fn fp(p: u64) -> CoefficientField {
        CoefficientField::new(p).unwrap()
    }

    fn x_plus_y(field: CoefficientField) -> BivariatePolynomial {
        &BivariatePolynomial::x(field) + &BivariatePolynomial::y(field)
    }

    fn mono(ex: u32, ey: u32) -> Monomial {
        Monomial::new(ex, ey)
    }

    #[test]
    fn field_validation() {
        assert!(CoefficientField::new(4).is_err());
        assert!(CoefficientField::new(1).is_err());
        assert!(CoefficientField::new(7).is_ok());
        assert_eq!(fp(5).element(&rational(1, 2)).unwrap(), integer(3));
        assert!(fp(5).element(&rational(1, 5)).is_err());
        assert_eq!(fp(3).from_int(-1), integer(2));
    }

    #[test]
    fn substitute_examples() {
        for (field, expected) in [
            (fp(2), vec![mono(2, 0), mono(0, 2)]),
            (f0(), vec![mono(2, 0), mono(1, 1), mono(0, 2)]),
        ] {
            let x = BivariatePolynomial::x(field);
            let f = x.pow(2);
            let g = f.substitute(&x_plus_y(field), &BivariatePolynomial::y(field)).unwrap();
            let support: Vec<_> = g.support().unwrap().into_iter().collect();
            let mut expected = expected;
            expected.sort();
            assert_eq!(support, expected);
            if field.characteristic() == 0 {
                assert_eq!(g.coefficient(&mono(1, 1)), Some(&integer(2)));
            }
        }
        let x = BivariatePolynomial::x(f0());
        let same = x.substitute(&x, &BivariatePolynomial::y(f0())).unwrap();
        assert_eq!(same, x);
        assert!(x.substitute(&BivariatePolynomial::x(fp(2)), &BivariatePolynomial::y(f0())).is_err());
    }

    #[test]
    fn apply_examples() {
        let field = f0();
        let y = BivariatePolynomial::y(field);
        let x2 = BivariatePolynomial::x(field).pow(2);
        let ideal = PolynomialIdeal::new(vec![y.clone()]).unwrap();
        let phi = PlaneAutomorphism::single(field, AutomorphismStep::ShearY(vec![integer(0), integer(1)])).unwrap();
        assert_eq!(apply(&phi, &ideal).unwrap().generators(), &[&y + &x2]);
        assert_eq!(apply(&PlaneAutomorphism::identity(field), &ideal).unwrap(), ideal);

        let swap = AutomorphismStep::Linear([[integer(0), integer(1)], [integer(1), integer(0)]]);
        let swap = PlaneAutomorphism::single(field, swap).unwrap();
        let i = PolynomialIdeal::new(vec![x2.clone(), y.pow(3)]).unwrap();
        let out = apply(&swap, &i).unwrap();
        assert_eq!(out.generators(), &[y.pow(2), BivariatePolynomial::x(field).pow(3)]);
    }

    #[test]
    fn support_examples() {
        let field = f0();
        let f = &BivariatePolynomial::x(field).pow(2) + &BivariatePolynomial::y(field).scale(&integer(3));
        assert_eq!(support(&f).unwrap(), [mono(2, 0), mono(0, 1)].into_iter().collect());
        assert_eq!(support(&x_plus_y(fp(3)).pow(3)).unwrap().len(), 2);
        assert_eq!(support(&x_plus_y(f0()).pow(3)).unwrap().len(), 4);
        assert_eq!(support(&BivariatePolynomial::zero(field)), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn frobenius_supports() {
        for p in [2u32, 3, 5] {
            let sp = support(&x_plus_y(fp(p as u64)).pow(p)).unwrap();
            assert_eq!(sp, [mono(p, 0), mono(0, p)].into_iter().collect());
            assert_eq!(support(&x_plus_y(f0()).pow(p)).unwrap().len(), p as usize + 1);
        }
    }

    #[test]
    fn monomialize_examples() {
        let field = f0();
        let x = BivariatePolynomial::x(field);
        let y = BivariatePolynomial::y(field);
        let f = &(&x.pow(2) + &y.pow(3)) + &x.pow(5);
        let i = PolynomialIdeal::new(vec![f]).unwrap();
        assert_eq!(monomialize(&i).generators(), &[mono(0, 3), mono(2, 0)]);

        let sq2 = PolynomialIdeal::new(vec![x_plus_y(fp(2)).pow(2)]).unwrap();
        assert_eq!(monomialize(&sq2).generators(), &[mono(0, 2), mono(2, 0)]);
        let sq0 = PolynomialIdeal::new(vec![x_plus_y(f0()).pow(2)]).unwrap();
        assert_eq!(monomialize(&sq0).generators(), &[mono(0, 2), mono(1, 1), mono(2, 0)]);
    }

    #[test]
    fn elementary_enumeration() {
        let field = fp(2);
        let all = elementary_automorphisms(field, 1, &integer_pool(&[0, 1])).unwrap();
        let upper = PlaneAutomorphism::single(
            field,
            AutomorphismStep::Linear([[integer(1), integer(1)], [integer(0), integer(1)]]),
        )
        .unwrap();
        let shear = PlaneAutomorphism::single(field, AutomorphismStep::ShearY(vec![integer(1)])).unwrap();
        assert!(all.contains(&upper));
        assert!(all.contains(&shear));
        assert!(all[0].is_identity());

        let only_zero = elementary_automorphisms(field, 3, &integer_pool(&[0])).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert!(only_zero[0].is_identity());

        let two = elementary_automorphisms(f0(), 2, &integer_pool(&[0, 1])).unwrap();
        let sq = PlaneAutomorphism::single(f0(), AutomorphismStep::ShearY(vec![integer(0), integer(1)])).unwrap();
        assert!(two.contains(&sq));

        assert_eq!(elementary_automorphisms(field, 1, &[]), Err(PolyError::EmptyPool));
        // GL2(F_2) has 6 elements; the identity is listed once.
        assert_eq!(all.len(), 1 + 5 + 2);
    }

    #[test]
    fn singular_linear_rejected() {
        let m = AutomorphismStep::Linear([[integer(1), integer(1)], [integer(1), integer(1)]]);
        assert_eq!(PlaneAutomorphism::single(f0(), m), Err(PolyError::SingularLinear));
        // det = 2 vanishes in characteristic 2.
        let m = AutomorphismStep::Linear([[integer(1), integer(1)], [integer(-1), integer(1)]]);
        assert_eq!(PlaneAutomorphism::single(fp(2), m.clone()), Err(PolyError::SingularLinear));
        assert!(PlaneAutomorphism::single(f0(), m).is_ok());
    }

    #[test]
    fn display_round_trip_shape() {
        let field = f0();
        let f = &(&BivariatePolynomial::x(field).pow(2) - &BivariatePolynomial::y(field).scale(&integer(3)))
            + &BivariatePolynomial::constant(field, &rational(1, 2)).unwrap();
        assert_eq!(f.to_string(), "x^2 - 3*y + 1/2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = CoefficientField> {
            prop_oneof![Just(0u64), Just(2), Just(3), Just(5)].prop_map(|c| CoefficientField::new(c).unwrap())
        }

        fn poly(field: CoefficientField, max_deg: u32, max_terms: usize) -> impl Strategy<Value = BivariatePolynomial> {
            prop::collection::vec(((0..=max_deg, 0..=max_deg), -4i64..=4), 0..=max_terms).prop_map(move |ts| {
                BivariatePolynomial::from_terms(field, ts.into_iter().map(|((a, b), c)| (Monomial::new(a, b), integer(c))))
                    .unwrap()
            })
        }

        fn step(field: CoefficientField) -> impl Strategy<Value = AutomorphismStep> {
            let coeff = || (-2i64..=2).prop_map(integer);
            prop_oneof![
                (coeff(), coeff(), coeff(), coeff())
                    .prop_map(|(a, b, c, d)| AutomorphismStep::Linear([[a, b], [c, d]])),
                prop::collection::vec(coeff(), 1..=3).prop_map(AutomorphismStep::ShearX),
                prop::collection::vec(coeff(), 1..=3).prop_map(AutomorphismStep::ShearY),
            ]
            .prop_filter_map("invertible", move |s| s.normalized(field).ok())
        }

        fn setup() -> impl Strategy<Value = (CoefficientField, BivariatePolynomial, BivariatePolynomial, BivariatePolynomial, BivariatePolynomial)> {
            field().prop_flat_map(|fd| (Just(fd), poly(fd, 3, 4), poly(fd, 3, 4), poly(fd, 2, 3), poly(fd, 2, 3)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn substitute_is_a_ring_map((fd, f, g, ix, iy) in setup()) {
                let _ = fd;
                let lhs = (&f * &g).substitute(&ix, &iy).unwrap();
                let rhs = &f.substitute(&ix, &iy).unwrap() * &g.substitute(&ix, &iy).unwrap();
                prop_assert_eq!(lhs, rhs);
                let lhs = (&f + &g).substitute(&ix, &iy).unwrap();
                let rhs = &f.substitute(&ix, &iy).unwrap() + &g.substitute(&ix, &iy).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn stepwise_inverse_restores_ideal(
                (fd, steps, gens) in field().prop_flat_map(|fd| (
                    Just(fd),
                    prop::collection::vec(step(fd), 0..=3),
                    prop::collection::vec(poly(fd, 3, 3), 1..=3),
                ))
            ) {
                let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
                prop_assume!(!gens.is_empty());
                let ideal = PolynomialIdeal::new(gens).unwrap();
                let phi = PlaneAutomorphism::new(fd, steps).unwrap();
                let image = phi.apply(&ideal).unwrap();
                prop_assert!(image.generators().iter().all(|g| !g.is_zero()));
                let back = phi.inverse().unwrap().apply(&image).unwrap();
                prop_assert_eq!(back, ideal);
            }

            #[test]
            fn weighted_order_sees_no_cancellation(
                (fd, f) in field().prop_flat_map(|fd| (Just(fd), poly(fd, 6, 6))),
                p in (1i64..=9, 1i64..=9),
            ) {
                let _ = fd;
                prop_assume!(!f.is_zero());
                let order = f.weighted_order([p.0, p.1]).unwrap();
                let ideal = PolynomialIdeal::new(vec![f.clone()]).unwrap();
                let m = monomialize(&ideal);
                prop_assert_eq!(m.polygon().support_value([p.0, p.1]).unwrap(), order);
            }

            #[test]
            fn monomialize_is_monotone(
                (fd, gi, extra) in field().prop_flat_map(|fd| (
                    Just(fd),
                    prop::collection::vec(poly(fd, 5, 4), 1..=3),
                    prop::collection::vec(poly(fd, 5, 4), 0..=2),
                ))
            ) {
                let _ = fd;
                let gi: Vec<_> = gi.into_iter().filter(|g| !g.is_zero()).collect();
                prop_assume!(!gi.is_empty());
                let mut gj = gi.clone();
                gj.extend(extra.into_iter().filter(|g| !g.is_zero()));
                let i = monomialize(&PolynomialIdeal::new(gi).unwrap());
                let j = monomialize(&PolynomialIdeal::new(gj).unwrap());
                prop_assert!(j.contains(&i));
                for v in i.polygon().vertices() {
                    prop_assert!(j.contains_monomial(v));
                }
            }
        }
    }
}
