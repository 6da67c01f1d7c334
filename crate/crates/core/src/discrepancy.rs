//! Log discrepancies of toric divisors, minimal log discrepancies and log
//! canonical thresholds of monomial multiideals at the origin of the plane.
//!
//! For a weight `p = (p1, p2)` with both entries positive, the divisor `E_p`
//! of the weighted blow up has `k = p1 + p2 - 1` and valuation equal to the
//! support value of the Newton polygon, so its log discrepancy is
//!
//! ```text
//! a(p) = p1 + p2 - sum_i e_i * <p, Γ_i>.
//! ```
//!
//! `a` is positively homogeneous and linear on every cone of the merged
//! normal fan of the polygons. [`mld`] uses this to reduce the infimum over
//! all weights to finitely many evaluations:
//!
//! * if `a` is negative on some ray of the fan it is negative on a whole
//!   open sector, which contains lattice points `p >= (1,1)`, and scaling
//!   sends the value to `-inf`;
//! * otherwise `a >= 0` everywhere, and each `p >= (1,1)` is an
//!   `N`-combination of the Hilbert basis of its cone. Either a non-axis
//!   basis element `h` occurs, so `a(p) >= a(h)`, or `p` is a combination of
//!   `(1,0)` and `(0,1)` in a single smooth cone, so `a(p) >= a(1,1)`. The
//!   minimum over `(1,1)` and the non-axis basis elements is therefore the
//!   minimum over all `p >= (1,1)`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::newton_geometry::{hilbert_basis, refined_fan, Fan, GeometryError, MonomialIdeal, NewtonPolygon, Ray};
use crate::poly_algebra::{
    elementary_automorphisms, monomialize, CoefficientField, PlaneAutomorphism, PolyError, PolynomialIdeal,
};
use crate::scalars::{ExactScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscrepancyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("a multiideal needs at least one (ideal, exponent) pair")]
    Empty,
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(ExactScalar),
    #[error("weight vector ({0}, {1}) must have both entries >= 1")]
    BadWeight(i64, i64),
    #[error("the pair is log canonical at the origin; there is no negative witness")]
    LogCanonical,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} cannot be written as a + b*pi + c/pi")]
    NotRepresentable(String),
    #[error("scan would reach weight {0}, beyond the budget {1}")]
    BudgetExceeded(i64, i64),
    #[error("weights overflowed while searching for a negative witness")]
    Overflow,
}

/// Weight `p` of the toric divisor `E_p` centred at the origin.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightVector {
    pub p1: i64,
    pub p2: i64,
}

impl WeightVector {
    pub fn new(p1: i64, p2: i64) -> Result<Self, DiscrepancyError> {
        if p1 < 1 || p2 < 1 {
            return Err(DiscrepancyError::BadWeight(p1, p2));
        }
        Ok(WeightVector { p1, p2 })
    }

    pub const ONE: WeightVector = WeightVector { p1: 1, p2: 1 };

    /// `k_E = p1 + p2 - 1`.
    pub fn k(&self) -> i64 {
        self.p1 + self.p2 - 1
    }

    pub fn as_array(&self) -> [i64; 2] {
        [self.p1, self.p2]
    }

    /// Order used to pick computing divisors: smaller `k`, then smaller `p1`.
    fn scan_key(&self) -> (i64, i64) {
        (self.k(), self.p1)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p1, self.p2)
    }
}

/// Product `a_1^{e_1} ... a_s^{e_s}` of monomial ideals with positive exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiIdeal {
    pairs: Vec<(MonomialIdeal, ExactScalar)>,
    polygons: Vec<NewtonPolygon>,
}

impl MultiIdeal {
    pub fn new(pairs: Vec<(MonomialIdeal, ExactScalar)>) -> Result<Self, DiscrepancyError> {
        if pairs.is_empty() {
            return Err(DiscrepancyError::Empty);
        }
        for (_, e) in &pairs {
            if !e.is_positive() {
                return Err(DiscrepancyError::NonPositiveExponent(e.clone()));
            }
        }
        let polygons = pairs.iter().map(|(i, _)| i.polygon()).collect();
        Ok(MultiIdeal { pairs, polygons })
    }

    pub fn single(ideal: MonomialIdeal, exponent: ExactScalar) -> Result<Self, DiscrepancyError> {
        Self::new(vec![(ideal, exponent)])
    }

    pub fn pairs(&self) -> &[(MonomialIdeal, ExactScalar)] {
        &self.pairs
    }

    pub fn polygons(&self) -> &[NewtonPolygon] {
        &self.polygons
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExactScalar> {
        self.pairs.iter().map(|(_, e)| e)
    }

    pub fn is_trivial(&self) -> bool {
        self.pairs.iter().all(|(i, _)| i.is_trivial())
    }

    /// Same ideals with every exponent multiplied by `t`.
    pub fn scaled(&self, t: &ExactScalar) -> Result<Self, DiscrepancyError> {
        let pairs = self
            .pairs
            .iter()
            .map(|(i, e)| {
                e.checked_mul(t)
                    .map(|et| (i.clone(), et))
                    .ok_or_else(|| DiscrepancyError::NotRepresentable(format!("({e}) * ({t})")))
            })
            .collect::<Result<_, _>>()?;
        Self::new(pairs)
    }

    pub(crate) fn terms(&self) -> Vec<Term<'_>> {
        self.polygons.iter().zip(self.pairs.iter().map(|(_, e)| e)).collect()
    }
}

impl fmt::Display for MultiIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (ideal, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{ideal} @ {e}")?;
        }
        Ok(())
    }
}

/// Borrowed `(polygon, exponent)` pair; the evaluation routines work on
/// slices of these so enumerations can share precomputed polygons.
pub(crate) type Term<'a> = (&'a NewtonPolygon, &'a ExactScalar);

/// Value of an mld: a finite scalar or `-inf`. `MinusInfinity` sorts first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MldValue {
    MinusInfinity,
    Finite(ExactScalar),
}

impl MldValue {
    pub fn finite(&self) -> Option<&ExactScalar> {
        match self {
            MldValue::Finite(v) => Some(v),
            MldValue::MinusInfinity => None,
        }
    }

    pub fn is_minus_infinity(&self) -> bool {
        matches!(self, MldValue::MinusInfinity)
    }
}

impl Ord for MldValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MldValue::MinusInfinity, MldValue::MinusInfinity) => Ordering::Equal,
            (MldValue::MinusInfinity, _) => Ordering::Less,
            (_, MldValue::MinusInfinity) => Ordering::Greater,
            (MldValue::Finite(a), MldValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for MldValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MldValue::MinusInfinity => write!(f, "-inf"),
            MldValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Evidence behind an [`MldResult`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MldCertificate {
    /// Every ray of the merged fan with its log discrepancy.
    pub rays: Vec<(Ray, ExactScalar)>,
    /// Candidate weights and their values; empty when the mld is `-inf`.
    pub candidates: Vec<(WeightVector, ExactScalar)>,
    /// First ray (in slope order) with a negative value.
    pub negative_ray: Option<Ray>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MldResult {
    pub value: MldValue,
    /// Computing divisor of least `k` (then least `p1`); for `-inf`, the
    /// least such divisor with negative log discrepancy.
    pub divisor: WeightVector,
    pub certificate: MldCertificate,
}

pub(crate) fn discrepancy_at(terms: &[Term<'_>], p: [i64; 2]) -> ExactScalar {
    let mut total = ExactScalar::from_integer(p[0] + p[1]);
    for (polygon, e) in terms {
        let v = polygon.support_value_unchecked(p);
        if v != 0 {
            total = &total - &e.scale_int(v);
        }
    }
    total
}

/// `a(E_p) = p1 + p2 - sum e_i <p, Γ_i>`; `p` may be any nonzero quadrant
/// vector, though only `p >= (1,1)` names a divisor centred at the origin.
pub fn log_discrepancy(p: [i64; 2], multi: &MultiIdeal) -> Result<ExactScalar, DiscrepancyError> {
    if p[0] < 0 || p[1] < 0 || p == [0, 0] {
        return Err(GeometryError::BadWeight(p).into());
    }
    Ok(discrepancy_at(&multi.terms(), p))
}

/// `val_{E_p}(I)`, the `p`-weighted order of the ideal.
pub fn valuation(p: WeightVector, ideal: &MonomialIdeal) -> i64 {
    ideal.polygon().support_value_unchecked(p.as_array())
}

/// Weights `p >= (1,1)` in scan order: by `p1 + p2`, then by `p1`.
fn diagonal_scan(max_weight: i64) -> impl Iterator<Item = WeightVector> {
    (2..=max_weight).flat_map(|w| (1..w).map(move |p1| WeightVector { p1, p2: w - p1 }))
}

fn check_budget(weight: i64, budget: Option<i64>) -> Result<(), DiscrepancyError> {
    match budget {
        Some(b) if weight > b => Err(DiscrepancyError::BudgetExceeded(weight, b)),
        _ => Ok(()),
    }
}

/// A weight `p >= (1,1)` with `a(p) < 0`, derived from a negative ray.
fn negative_point(terms: &[Term<'_>], fan: &Fan, negative: Ray) -> Result<[i64; 2], DiscrepancyError> {
    if !negative.is_axis() {
        return Ok(negative.dir());
    }
    // a is linear on the cone spanned by the axis and its neighbour r, so
    // a(n * axis + r) = n * a(axis) + a(r), which is negative for large n.
    let rays = fan.rays();
    let (axis, neighbour) = if negative == Ray::X_AXIS {
        (Ray::X_AXIS.dir(), rays[1].dir())
    } else {
        (Ray::Y_AXIS.dir(), rays[rays.len() - 2].dir())
    };
    let mut n: i64 = 1;
    loop {
        let p = [
            n.checked_mul(axis[0]).and_then(|v| v.checked_add(neighbour[0])).ok_or(DiscrepancyError::Overflow)?,
            n.checked_mul(axis[1]).and_then(|v| v.checked_add(neighbour[1])).ok_or(DiscrepancyError::Overflow)?,
        ];
        if discrepancy_at(terms, p).is_negative() {
            return Ok(p);
        }
        n = n.checked_mul(2).ok_or(DiscrepancyError::Overflow)?;
    }
}

fn fan_of(terms: &[Term<'_>]) -> Fan {
    refined_fan(terms.iter().map(|(p, _)| *p))
}

fn negative_witness(
    terms: &[Term<'_>],
    fan: &Fan,
    negative: Ray,
    budget: Option<i64>,
) -> Result<WeightVector, DiscrepancyError> {
    let bound = negative_point(terms, fan, negative)?;
    let weight = bound[0] + bound[1];
    check_budget(weight, budget)?;
    for p in diagonal_scan(weight) {
        if discrepancy_at(terms, p.as_array()).is_negative() {
            return Ok(p);
        }
    }
    WeightVector::new(bound[0], bound[1])
}

pub(crate) fn mld_terms(terms: &[Term<'_>], budget: Option<i64>) -> Result<MldResult, DiscrepancyError> {
    let fan = fan_of(terms);
    let rays: Vec<(Ray, ExactScalar)> =
        fan.rays().iter().map(|r| (*r, discrepancy_at(terms, r.dir()))).collect();

    let negative = rays.iter().find(|(_, a)| a.is_negative()).map(|(r, _)| *r);
    if let Some(neg) = negative {
        // Prefer a non-axis negative ray for the bound; any one will do.
        let bound_ray = rays.iter().find(|(r, a)| !r.is_axis() && a.is_negative()).map_or(neg, |(r, _)| *r);
        let divisor = negative_witness(terms, &fan, bound_ray, budget)?;
        return Ok(MldResult {
            value: MldValue::MinusInfinity,
            divisor,
            certificate: MldCertificate { rays, candidates: Vec::new(), negative_ray: Some(neg) },
        });
    }

    let mut points = vec![WeightVector::ONE];
    for (u, v) in fan.cones() {
        for h in hilbert_basis(u, v)? {
            if h[0] >= 1 && h[1] >= 1 {
                points.push(WeightVector { p1: h[0], p2: h[1] });
            }
        }
    }
    points.sort_by_key(WeightVector::scan_key);
    points.dedup();
    let candidates: Vec<(WeightVector, ExactScalar)> =
        points.into_iter().map(|p| (p, discrepancy_at(terms, p.as_array()))).collect();

    let mut best = 0;
    for (i, (_, a)) in candidates.iter().enumerate().skip(1) {
        if a < &candidates[best].1 {
            best = i;
        }
    }
    let (mut divisor, value) = candidates[best].clone();
    // A non-candidate weight of smaller k cannot beat the candidate minimum,
    // but it may tie with it.
    check_budget(divisor.p1 + divisor.p2, budget)?;
    for p in diagonal_scan(divisor.p1 + divisor.p2) {
        if p.scan_key() >= divisor.scan_key() {
            break;
        }
        if discrepancy_at(terms, p.as_array()) == value {
            divisor = p;
            break;
        }
    }
    Ok(MldResult {
        value: MldValue::Finite(value),
        divisor,
        certificate: MldCertificate { rays, candidates, negative_ray: None },
    })
}

/// Minimal log discrepancy at the origin, with a certificate.
pub fn mld(multi: &MultiIdeal) -> MldResult {
    mld_terms(&multi.terms(), None).expect("unbudgeted mld cannot fail")
}

/// Least-`k` weight with negative log discrepancy.
pub fn minus_infinity_witness(multi: &MultiIdeal) -> Result<WeightVector, DiscrepancyError> {
    let result = mld(multi);
    match result.value {
        MldValue::MinusInfinity => Ok(result.divisor),
        MldValue::Finite(_) => Err(DiscrepancyError::LogCanonical),
    }
}

/// Toric divisor of least `k` computing the mld (or witnessing `-inf`).
pub fn min_k_computing_divisor(multi: &MultiIdeal) -> WeightVector {
    mld(multi).divisor
}

/// Value of an lct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LctValue {
    Finite(ExactScalar),
    /// Every valuation vanishes (all ideals trivial).
    Unbounded,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LctResult {
    pub value: LctValue,
    pub ray: Option<Ray>,
    /// `false` when the computing ray is a coordinate axis (the divisor is
    /// the axis itself, not exceptional).
    pub exceptional: bool,
    /// `(ray, k + 1, sum e_i val)` for every ray with nonzero valuation.
    pub ratios: Vec<(Ray, i64, ExactScalar)>,
}

/// Log canonical threshold: least `(p1 + p2) / sum e_i <p, Γ_i>` over the
/// rays of the merged fan, axes included. Along a cone the ratio is a
/// fractional-linear function of the cone parameter, hence monotone, so its
/// minimum is at a ray. On ties an exceptional ray is preferred.
pub fn lct(multi: &MultiIdeal) -> Result<LctResult, DiscrepancyError> {
    lct_terms(&multi.terms())
}

pub(crate) fn lct_terms(terms: &[Term<'_>]) -> Result<LctResult, DiscrepancyError> {
    let fan = fan_of(terms);
    let mut ratios = Vec::new();
    for r in fan.rays() {
        let mut den = ExactScalar::zero();
        for (polygon, e) in terms {
            let v = polygon.support_value_unchecked(r.dir());
            if v != 0 {
                den += &e.scale_int(v);
            }
        }
        if !den.is_zero() {
            ratios.push((*r, r.dir()[0] + r.dir()[1], den));
        }
    }
    let mut best: Option<usize> = None;
    for (i, (r, n, d)) in ratios.iter().enumerate() {
        let Some(b) = best else {
            best = Some(i);
            continue;
        };
        let (br, bn, bd) = &ratios[b];
        // n/d < bn/bd with positive denominators.
        match bd.scale_int(*n).cmp(&d.scale_int(*bn)) {
            Ordering::Less => best = Some(i),
            Ordering::Equal if br.is_axis() && !r.is_axis() => best = Some(i),
            _ => {}
        }
    }
    let Some(b) = best else {
        return Ok(LctResult { value: LctValue::Unbounded, ray: None, exceptional: false, ratios });
    };
    let (ray, n, den) = ratios[b].clone();
    let value = den
        .checked_recip()
        .map(|inv| inv.scale_int(n))
        .ok_or_else(|| DiscrepancyError::NotRepresentable(format!("{n} / ({den})")))?;
    Ok(LctResult { value: LctValue::Finite(value), ray: Some(ray), exceptional: !ray.is_axis(), ratios })
}

/// Checks the threshold against the mld: with exponents scaled by
/// `t = lct` the mld is finite and `>= 0` (and exactly 0 when an
/// exceptional divisor computes the lct), and with `t (1 + 1/k)`,
/// `k = 1..=5`, it is `-inf`.
pub fn lct_mld_consistency(multi: &MultiIdeal) -> Result<bool, DiscrepancyError> {
    let threshold = lct(multi)?;
    let LctValue::Finite(t) = &threshold.value else {
        return Err(DiscrepancyError::Precondition("lct is unbounded".into()));
    };
    let at_t = mld(&multi.scaled(t)?);
    let at_t_ok = match &at_t.value {
        MldValue::Finite(v) if threshold.exceptional => v.is_zero(),
        MldValue::Finite(v) => !v.is_negative(),
        MldValue::MinusInfinity => false,
    };
    if !at_t_ok {
        return Ok(false);
    }
    for k in 1..=5i64 {
        let bumped = t.scale(&Rational::new((k + 1).into(), k.into()));
        if !mld(&multi.scaled(&bumped)?).value.is_minus_infinity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum of `a(p)` over the box `{1..B}^2`, found by exhaustive scan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BruteForceMld {
    /// `MinusInfinity` iff some value in the box is negative.
    pub value: MldValue,
    pub min_value: ExactScalar,
    /// Least-`k` weight with a negative value if there is one, otherwise
    /// the least-`k` minimizer.
    pub argmin: WeightVector,
}

pub fn brute_force_mld(multi: &MultiIdeal, bound: i64) -> Result<BruteForceMld, DiscrepancyError> {
    if bound < 1 {
        return Err(DiscrepancyError::Precondition(format!("box bound {bound} must be >= 1")));
    }
    let terms = multi.terms();
    let mut min: Option<(WeightVector, ExactScalar)> = None;
    let mut first_negative: Option<WeightVector> = None;
    for w in 2..=2 * bound {
        for p1 in (w - bound).max(1)..=(w - 1).min(bound) {
            let p = WeightVector { p1, p2: w - p1 };
            let a = discrepancy_at(&terms, p.as_array());
            if first_negative.is_none() && a.is_negative() {
                first_negative = Some(p);
            }
            if min.as_ref().is_none_or(|(_, m)| &a < m) {
                min = Some((p, a));
            }
        }
    }
    let (argmin, min_value) = min.expect("box is nonempty");
    Ok(match first_negative {
        Some(p) => BruteForceMld { value: MldValue::MinusInfinity, min_value, argmin: p },
        None => BruteForceMld { value: MldValue::Finite(min_value.clone()), min_value, argmin },
    })
}

/// Multiideal of polynomial ideals over one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMultiIdeal {
    field: CoefficientField,
    pairs: Vec<(PolynomialIdeal, ExactScalar)>,
}

impl PolyMultiIdeal {
    pub fn new(pairs: Vec<(PolynomialIdeal, ExactScalar)>) -> Result<Self, DiscrepancyError> {
        let field = pairs.first().ok_or(DiscrepancyError::Empty)?.0.field();
        for (ideal, e) in &pairs {
            if ideal.field() != field {
                return Err(PolyError::FieldMismatch(field.characteristic(), ideal.field().characteristic()).into());
            }
            if !e.is_positive() {
                return Err(DiscrepancyError::NonPositiveExponent(e.clone()));
            }
        }
        Ok(PolyMultiIdeal { field, pairs })
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn pairs(&self) -> &[(PolynomialIdeal, ExactScalar)] {
        &self.pairs
    }

    pub fn is_monomial(&self) -> bool {
        self.pairs.iter().all(|(i, _)| i.is_monomial())
    }

    pub fn monomialized(&self) -> MultiIdeal {
        let pairs = self.pairs.iter().map(|(i, e)| (monomialize(i), e.clone())).collect();
        MultiIdeal::new(pairs).expect("exponents were checked")
    }

    pub fn transformed(&self, phi: &PlaneAutomorphism) -> Result<Self, DiscrepancyError> {
        let pairs = self
            .pairs
            .iter()
            .map(|(i, e)| Ok((phi.apply(i)?, e.clone())))
            .collect::<Result<_, DiscrepancyError>>()?;
        Ok(PolyMultiIdeal { field: self.field, pairs })
    }
}

impl fmt::Display for PolyMultiIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (ideal, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{ideal} @ {e}")?;
        }
        Ok(())
    }
}

/// mld of the monomialized multiideal: an upper bound for the mld of the
/// polynomial multiideal in the given coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MldBound {
    pub result: MldResult,
    pub monomialized: MultiIdeal,
    /// Always `true`: the value bounds the true mld from above.
    pub upper_bound: bool,
    /// Every generator was already a monomial, so the bound is the mld.
    pub exact: bool,
}

pub fn monomialized_upper_bound(poly: &PolyMultiIdeal) -> MldBound {
    let monomialized = poly.monomialized();
    MldBound { result: mld(&monomialized), monomialized, upper_bound: true, exact: poly.is_monomial() }
}

/// Parameters for [`coordinate_search`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub degree_bound: u32,
    pub pool: Vec<Rational>,
    pub max_steps: u32,
    /// Stop after this many coordinate changes have been tried.
    pub max_candidates: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub bound: MldBound,
    pub automorphism: PlaneAutomorphism,
    pub examined: usize,
}

/// Least monomialized bound over the given coordinate changes; the first
/// one attaining it wins.
pub fn search_over<'a, I>(poly: &PolyMultiIdeal, automorphisms: I) -> Result<SearchOutcome, DiscrepancyError>
where
    I: IntoIterator<Item = &'a PlaneAutomorphism>,
{
    let mut best: Option<(MldBound, PlaneAutomorphism)> = None;
    let mut examined = 0;
    for phi in automorphisms {
        examined += 1;
        let bound = monomialized_upper_bound(&poly.transformed(phi)?);
        if best.as_ref().is_none_or(|(b, _)| bound.result.value < b.result.value) {
            best = Some((bound, phi.clone()));
        }
    }
    let (bound, automorphism) =
        best.ok_or_else(|| DiscrepancyError::Precondition("no coordinate changes to search".into()))?;
    Ok(SearchOutcome { bound, automorphism, examined })
}

/// Breadth-first search over compositions of at most `max_steps`
/// elementary coordinate changes, starting with the identity.
pub fn coordinate_search(poly: &PolyMultiIdeal, options: &SearchOptions) -> Result<SearchOutcome, DiscrepancyError> {
    let elementary = elementary_automorphisms(poly.field(), options.degree_bound, &options.pool)?;
    let steps: Vec<&PlaneAutomorphism> = elementary.iter().filter(|a| !a.is_identity()).collect();
    let limit = options.max_candidates.unwrap_or(usize::MAX);

    let mut candidates = vec![PlaneAutomorphism::identity(poly.field())];
    let mut frontier = candidates.clone();
    for _ in 0..options.max_steps {
        if candidates.len() >= limit {
            break;
        }
        let mut next = Vec::new();
        'outer: for prefix in &frontier {
            for step in &steps {
                if candidates.len() + next.len() >= limit {
                    break 'outer;
                }
                next.push(prefix.then(step));
            }
        }
        candidates.extend(next.iter().cloned());
        frontier = next;
    }
    candidates.truncate(limit);
    search_over(poly, candidates.iter())
}
