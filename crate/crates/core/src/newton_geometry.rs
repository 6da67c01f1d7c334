//! Staircase monomial ideals in two variables, their Newton polygons, the
//! common refinement of their normal fans and Hilbert bases of 2-D cones.
//!
//! All lattice vectors here are `[i64; 2]`. Polygons keep only their
//! vertices: for a weight in the closed first quadrant the minimum of a
//! linear form over `conv(vertices) + R^2_{>=0}` is attained at a vertex.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("weight {0:?} must be nonzero and lie in the closed first quadrant")]
    BadWeight([i64; 2]),
    #[error("vector {0:?} is not a primitive nonzero vector of the closed first quadrant")]
    BadRay([i64; 2]),
    #[error("rays {0:?} and {1:?} are parallel")]
    ParallelRays([i64; 2], [i64; 2]),
    #[error("an ideal needs at least one generator")]
    NoGenerators,
}

/// The monomial `x^ex * y^ey`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0 };

    pub const fn new(ex: u32, ey: u32) -> Self {
        Monomial { ex, ey }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.ex <= other.ex && self.ey <= other.ey
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.ex + other.ex, self.ey + other.ey)
    }

    /// `<p, (ex, ey)>`.
    pub fn weight(&self, p: [i64; 2]) -> i64 {
        p[0] * self.ex as i64 + p[1] * self.ey as i64
    }

    pub fn degree(&self) -> u32 {
        self.ex + self.ey
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| match e {
            1 => write!(f, "{name}"),
            _ => write!(f, "{name}^{e}"),
        };
        match (self.ex, self.ey) {
            (0, 0) => write!(f, "1"),
            (ex, 0) => var(f, "x", ex),
            (0, ey) => var(f, "y", ey),
            (ex, ey) => {
                var(f, "x", ex)?;
                write!(f, "*")?;
                var(f, "y", ey)
            }
        }
    }
}

/// Monomial ideal given by its minimal generators, sorted by `ex` ascending
/// (hence `ey` strictly descending).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The unit ideal, the whole polynomial ring.
    pub fn trivial() -> Self {
        MonomialIdeal { generators: vec![Monomial::ONE] }
    }

    /// Builds the ideal generated by `gens`, keeping only the
    /// divisibility-minimal ones.
    pub fn new<I: IntoIterator<Item = Monomial>>(gens: I) -> Result<Self, GeometryError> {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        if all.is_empty() {
            return Err(GeometryError::NoGenerators);
        }
        // Sorting by (ex, ey) puts every minimal generator before the
        // monomials it divides; a sweep keeping strictly decreasing ey
        // leaves exactly the minimal ones.
        all.sort_unstable();
        all.dedup();
        let mut generators: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if generators.last().is_none_or(|last| m.ey < last.ey) {
                generators.push(m);
            }
        }
        Ok(MonomialIdeal { generators })
    }

    /// Wraps generators already known to form a sorted antichain.
    pub(crate) fn from_sorted_antichain(generators: Vec<Monomial>) -> Self {
        debug_assert!(generators.windows(2).all(|w| w[0].ex < w[1].ex && w[0].ey > w[1].ey));
        MonomialIdeal { generators }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators[0] == Monomial::ONE
    }

    /// `true` iff `self` contains `other`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|m| self.contains_monomial(m))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Largest exponent appearing among the generators.
    pub fn max_exponent(&self) -> u32 {
        self.generators.iter().map(|g| g.ex.max(g.ey)).max().unwrap_or(0)
    }

    pub fn polygon(&self) -> NewtonPolygon {
        polygon_of(self)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Deduplicated divisibility-minimal generator set of `gens`.
pub fn make_ideal<I: IntoIterator<Item = Monomial>>(gens: I) -> Result<MonomialIdeal, GeometryError> {
    MonomialIdeal::new(gens)
}

/// `true` iff `j` is contained in `i`.
pub fn contains(i: &MonomialIdeal, j: &MonomialIdeal) -> bool {
    i.contains(j)
}

/// Primitive integer vector in the closed first quadrant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Ray([i64; 2]);

impl Ray {
    pub const X_AXIS: Ray = Ray([1, 0]);
    pub const Y_AXIS: Ray = Ray([0, 1]);

    pub fn new(dir: [i64; 2]) -> Result<Self, GeometryError> {
        if dir[0] < 0 || dir[1] < 0 || dir == [0, 0] || dir[0].gcd(&dir[1]) != 1 {
            return Err(GeometryError::BadRay(dir));
        }
        Ok(Ray(dir))
    }

    /// Primitive vector on the ray through a nonzero quadrant vector.
    pub fn through(v: [i64; 2]) -> Result<Self, GeometryError> {
        if v[0] < 0 || v[1] < 0 || v == [0, 0] {
            return Err(GeometryError::BadRay(v));
        }
        let g = v[0].gcd(&v[1]);
        Ok(Ray([v[0] / g, v[1] / g]))
    }

    pub fn dir(&self) -> [i64; 2] {
        self.0
    }

    pub fn is_axis(&self) -> bool {
        self.0[0] == 0 || self.0[1] == 0
    }

    /// Order by angle from the x-axis.
    pub fn slope_cmp(&self, other: &Ray) -> Ordering {
        0.cmp(&cross(self.0, other.0))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0[0], self.0[1])
    }
}

fn cross(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Bounded edge of a Newton polygon with its primitive inner normal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Edge {
    pub start: Monomial,
    pub end: Monomial,
    pub normal: Ray,
}

/// `conv(vertices) + R^2_{>=0}`, vertices sorted by `ex` ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NewtonPolygon {
    vertices: Vec<Monomial>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices
            .windows(2)
            .map(|w| {
                let (s, e) = (w[0], w[1]);
                let n = [s.ey as i64 - e.ey as i64, e.ex as i64 - s.ex as i64];
                Edge { start: s, end: e, normal: Ray::through(n).expect("staircase edge") }
            })
            .collect()
    }

    /// `min { <p, q> : q in polygon }` for `p` in the closed first quadrant.
    pub fn support_value(&self, p: [i64; 2]) -> Result<i64, GeometryError> {
        if p[0] < 0 || p[1] < 0 || p == [0, 0] {
            return Err(GeometryError::BadWeight(p));
        }
        Ok(self.support_value_unchecked(p))
    }

    pub(crate) fn support_value_unchecked(&self, p: [i64; 2]) -> i64 {
        self.vertices.iter().map(|v| v.weight(p)).min().expect("nonempty polygon")
    }

    /// Vertex realising the support value, the first one in vertex order.
    pub fn minimizing_vertex(&self, p: [i64; 2]) -> Monomial {
        *self.vertices.iter().min_by_key(|v| v.weight(p)).expect("nonempty polygon")
    }
}

/// Newton polygon of a monomial ideal.
pub fn polygon_of(ideal: &MonomialIdeal) -> NewtonPolygon {
    // Lower hull of a staircase: points come sorted by ex ascending and ey
    // descending, so the hull facing the origin turns counter-clockwise.
    let mut hull: Vec<Monomial> = Vec::with_capacity(ideal.generators.len());
    for &m in &ideal.generators {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let oa = [a.ex as i64 - o.ex as i64, a.ey as i64 - o.ey as i64];
            let om = [m.ex as i64 - o.ex as i64, m.ey as i64 - o.ey as i64];
            if cross(oa, om) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(m);
    }
    NewtonPolygon { vertices: hull }
}

/// Support value of a polygon at `p`.
pub fn support_value(polygon: &NewtonPolygon, p: [i64; 2]) -> Result<i64, GeometryError> {
    polygon.support_value(p)
}

/// Complete fan of the first quadrant: rays from `(1,0)` to `(0,1)` by slope.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Fan {
    rays: Vec<Ray>,
}

impl Fan {
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// Consecutive ray pairs.
    pub fn cones(&self) -> impl Iterator<Item = (Ray, Ray)> + '_ {
        self.rays.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Merged normal fan of the given polygons.
pub fn refined_fan<'a, I>(polygons: I) -> Fan
where
    I: IntoIterator<Item = &'a NewtonPolygon>,
{
    let mut rays = vec![Ray::X_AXIS, Ray::Y_AXIS];
    for polygon in polygons {
        rays.extend(polygon.edges().into_iter().map(|e| e.normal));
    }
    rays.sort_by(|a, b| a.slope_cmp(b));
    rays.dedup();
    Fan { rays }
}

/// Solves `a*s + b*t = gcd(a, b)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = extended_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Hilbert basis of the monoid `cone(u, v) ∩ Z^2`, ordered from `u` to `v`.
///
/// Repeated unimodular subdivision: for the current ray `w` pick `w'` with
/// `det(w, w') = 1` and write `v = alpha*w + d*w'`. After the shear that
/// brings `alpha` into `[0, d)`, the cone is `cone((1,0), (alpha', d))`,
/// whose next Hilbert basis element is `(1,1)`, i.e.
/// `(1 + floor(alpha/d)) w + w'`. The determinant with `v` drops from `d`
/// to `d - alpha'`, so the walk ends at `v`.
pub fn hilbert_basis(u: Ray, v: Ray) -> Result<Vec<[i64; 2]>, GeometryError> {
    let (u, v, reversed) = match cross(u.0, v.0).cmp(&0) {
        Ordering::Equal => return Err(GeometryError::ParallelRays(u.0, v.0)),
        Ordering::Greater => (u.0, v.0, false),
        Ordering::Less => (v.0, u.0, true),
    };
    let mut basis = vec![u];
    let mut cur = u;
    loop {
        let d = cross(cur, v);
        if d == 1 {
            basis.push(v);
            break;
        }
        // cur[0]*t - cur[1]*s = 1
        let (g, x, y) = extended_gcd(cur[0], cur[1]);
        debug_assert_eq!(g, 1);
        let comp = [-y, x];
        let alpha = cross(v, comp);
        let shift = alpha.div_euclid(d);
        cur = [(1 + shift) * cur[0] + comp[0], (1 + shift) * cur[1] + comp[1]];
        basis.push(cur);
    }
    if reversed {
        basis.reverse();
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ex: u32, ey: u32) -> Monomial {
        Monomial::new(ex, ey)
    }

    fn ideal(gens: &[(u32, u32)]) -> MonomialIdeal {
        make_ideal(gens.iter().map(|&(a, b)| m(a, b))).unwrap()
    }

    #[test]
    fn make_ideal_examples() {
        assert_eq!(ideal(&[(2, 0), (0, 3), (5, 0)]).generators(), &[m(0, 3), m(2, 0)]);
        assert_eq!(ideal(&[(0, 0), (1, 0)]), MonomialIdeal::trivial());
        assert_eq!(ideal(&[(1, 1)]).generators(), &[m(1, 1)]);
        assert_eq!(ideal(&[(1, 1), (1, 1), (2, 3)]).generators(), &[m(1, 1)]);
        assert!(make_ideal([]).is_err());
    }

    #[test]
    fn polygon_examples() {
        assert_eq!(polygon_of(&ideal(&[(2, 0), (0, 3)])).vertices(), &[m(0, 3), m(2, 0)]);
        assert_eq!(polygon_of(&ideal(&[(2, 0), (1, 1), (0, 2)])).vertices(), &[m(0, 2), m(2, 0)]);
        assert_eq!(polygon_of(&MonomialIdeal::trivial()).vertices(), &[m(0, 0)]);
        // (1,1) lies below the segment from (0,3) to (3,0).
        assert_eq!(
            polygon_of(&ideal(&[(3, 0), (1, 1), (0, 3)])).vertices(),
            &[m(0, 3), m(1, 1), m(3, 0)]
        );
        assert_eq!(polygon_of(&ideal(&[(4, 0), (2, 2), (0, 4)])).vertices(), &[m(0, 4), m(4, 0)]);
    }

    #[test]
    fn support_value_examples() {
        let g = polygon_of(&ideal(&[(2, 0), (0, 3)]));
        assert_eq!(g.support_value([3, 2]), Ok(6));
        assert_eq!(g.support_value([1, 1]), Ok(2));
        let t = polygon_of(&MonomialIdeal::trivial());
        assert_eq!(t.support_value([5, 7]), Ok(0));
        assert!(g.support_value([0, 0]).is_err());
        assert!(g.support_value([-1, 2]).is_err());
    }

    #[test]
    fn refined_fan_examples() {
        let g = polygon_of(&ideal(&[(2, 0), (0, 3)]));
        // Oracle for the normal: <(3,2),(0,3)> = <(3,2),(2,0)> = 6.
        assert_eq!(m(0, 3).weight([3, 2]), m(2, 0).weight([3, 2]));
        let dirs: Vec<_> = refined_fan([&g]).rays().iter().map(Ray::dir).collect();
        assert_eq!(dirs, vec![[1, 0], [3, 2], [0, 1]]);

        let t = polygon_of(&MonomialIdeal::trivial());
        let dirs: Vec<_> = refined_fan([&t]).rays().iter().map(Ray::dir).collect();
        assert_eq!(dirs, vec![[1, 0], [0, 1]]);

        let g = polygon_of(&ideal(&[(3, 0), (0, 7)]));
        assert_eq!(m(0, 7).weight([7, 3]), m(3, 0).weight([7, 3]));
        let dirs: Vec<_> = refined_fan([&g]).rays().iter().map(Ray::dir).collect();
        assert_eq!(dirs, vec![[1, 0], [7, 3], [0, 1]]);
    }

    #[test]
    fn refined_fan_merges_shared_normals() {
        let a = polygon_of(&ideal(&[(1, 0), (0, 1)]));
        let b = polygon_of(&ideal(&[(2, 0), (0, 2)]));
        let c = polygon_of(&ideal(&[(3, 0), (1, 1), (0, 3)]));
        let dirs: Vec<_> = refined_fan([&a, &b, &c]).rays().iter().map(Ray::dir).collect();
        assert_eq!(dirs, vec![[1, 0], [2, 1], [1, 1], [1, 2], [0, 1]]);
    }

    /// Irreducible elements of cone(u,v) ∩ Z^2 found by exhaustive search.
    fn brute_hilbert(u: [i64; 2], v: [i64; 2]) -> Vec<[i64; 2]> {
        let (bx, by) = (u[0] + v[0], u[1] + v[1]);
        let inside = |p: [i64; 2]| cross(u, p) >= 0 && cross(p, v) >= 0 && p != [0, 0];
        let pts: Vec<[i64; 2]> = (0..=bx)
            .flat_map(|a| (0..=by).map(move |b| [a, b]))
            .filter(|&p| inside(p))
            .collect();
        let mut out: Vec<[i64; 2]> = pts
            .iter()
            .copied()
            .filter(|&p| {
                !pts.iter().any(|&q| {
                    q != p && q[0] <= p[0] && q[1] <= p[1] && inside([p[0] - q[0], p[1] - q[1]])
                })
            })
            .collect();
        out.sort_by(|a, b| 0.cmp(&cross(*a, *b)));
        out
    }

    #[test]
    fn hilbert_basis_examples() {
        let r = |a, b| Ray::new([a, b]).unwrap();
        assert_eq!(hilbert_basis(r(1, 0), r(0, 1)).unwrap(), vec![[1, 0], [0, 1]]);
        assert_eq!(hilbert_basis(r(1, 0), r(1, 1)).unwrap(), vec![[1, 0], [1, 1]]);
        assert_eq!(brute_hilbert([1, 0], [2, 3]), vec![[1, 0], [1, 1], [2, 3]]);
        assert_eq!(hilbert_basis(r(1, 0), r(2, 3)).unwrap(), vec![[1, 0], [1, 1], [2, 3]]);
        assert_eq!(hilbert_basis(r(2, 3), r(1, 0)).unwrap(), vec![[2, 3], [1, 1], [1, 0]]);
        assert!(hilbert_basis(r(1, 1), r(1, 1)).is_err());
    }

    #[test]
    fn hilbert_basis_long_continued_fraction() {
        let r = |a, b| Ray::new([a, b]).unwrap();
        assert_eq!(hilbert_basis(r(1, 0), r(1, 7)).unwrap(), brute_hilbert([1, 0], [1, 7]));
        assert_eq!(hilbert_basis(r(7, 3), r(0, 1)).unwrap(), brute_hilbert([7, 3], [0, 1]));
        assert_eq!(hilbert_basis(r(5, 1), r(1, 5)).unwrap(), brute_hilbert([5, 1], [1, 5]));
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&ideal(&[(1, 0)]), &ideal(&[(2, 0), (1, 1)])));
        assert!(!contains(&ideal(&[(2, 0)]), &ideal(&[(1, 0)])));
        let i = ideal(&[(2, 0), (0, 3)]);
        assert!(contains(&i, &i));
    }

    #[test]
    fn ray_validation() {
        assert!(Ray::new([2, 2]).is_err());
        assert!(Ray::new([0, 0]).is_err());
        assert!(Ray::new([-1, 1]).is_err());
        assert_eq!(Ray::through([4, 6]).unwrap().dir(), [2, 3]);
    }

    #[test]
    fn display() {
        assert_eq!(ideal(&[(2, 0), (1, 1), (0, 3)]).to_string(), "x^2, x*y, y^3");
        assert_eq!(MonomialIdeal::trivial().to_string(), "1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monomials(max: u32, len: usize) -> impl Strategy<Value = Vec<Monomial>> {
            prop::collection::vec((0..=max, 0..=max).prop_map(|(a, b)| Monomial::new(a, b)), 1..=len)
        }

        fn cone() -> impl Strategy<Value = (Ray, Ray)> {
            ((0i64..=12, 0i64..=12), (0i64..=12, 0i64..=12))
                .prop_filter_map("primitive, non-parallel", |((a, b), (c, d))| {
                    let u = Ray::new([a, b]).ok()?;
                    let v = Ray::new([c, d]).ok()?;
                    (cross(u.0, v.0) > 0).then_some((u, v))
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn polygon_ignores_redundant_multiples(gens in monomials(20, 8), pick in 0usize..8, shift in (0u32..5, 0u32..5)) {
                let base = make_ideal(gens.clone()).unwrap();
                let mut more = gens.clone();
                let g = gens[pick % gens.len()];
                more.push(Monomial::new(g.ex + shift.0, g.ey + shift.1));
                prop_assert_eq!(polygon_of(&base), polygon_of(&make_ideal(more).unwrap()));
            }

            #[test]
            fn polygon_vertices_strictly_convex(gens in monomials(20, 8)) {
                let poly = polygon_of(&make_ideal(gens).unwrap());
                for e in poly.edges() {
                    let n = e.normal.dir();
                    prop_assert!(n[0] >= 1 && n[1] >= 1);
                    prop_assert_eq!(e.start.weight(n), e.end.weight(n));
                    for v in poly.vertices() {
                        if *v != e.start && *v != e.end {
                            prop_assert!(v.weight(n) > e.start.weight(n));
                        }
                    }
                }
            }

            #[test]
            fn support_value_homogeneous(gens in monomials(20, 8), p in (0i64..30, 0i64..30), k in 1i64..=5) {
                prop_assume!(p != (0, 0));
                let poly = polygon_of(&make_ideal(gens).unwrap());
                let v = poly.support_value([p.0, p.1]).unwrap();
                prop_assert_eq!(poly.support_value([k * p.0, k * p.1]).unwrap(), k * v);
            }

            #[test]
            fn support_value_linear_on_fan_cones(gens in monomials(20, 8)) {
                let poly = polygon_of(&make_ideal(gens).unwrap());
                let fan = refined_fan([&poly]);
                for (u, v) in fan.cones() {
                    let (u, v) = (u.dir(), v.dir());
                    let vertex = poly.minimizing_vertex([u[0] + v[0], u[1] + v[1]]);
                    for (s, t) in [(1, 1), (2, 1), (1, 3)] {
                        let p = [s * u[0] + t * v[0], s * u[1] + t * v[1]];
                        prop_assert_eq!(vertex.weight(p), poly.support_value(p).unwrap());
                    }
                }
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn hilbert_basis_matches_brute_force((u, v) in cone()) {
                let basis = hilbert_basis(u, v).unwrap();
                prop_assert_eq!(&basis, &brute_hilbert(u.dir(), v.dir()));
                for h in &basis {
                    if *h != [1, 0] && *h != [0, 1] {
                        prop_assert!(h[0] >= 1 && h[1] >= 1);
                    }
                }
            }
        }
    }
}
