//! Exact constructions of the benchmark polytopes.
//!
//! Families with a known inequality description (cubes, cross polytopes,
//! dwarfed cubes, products of polygons and their dwarfed versions) carry it
//! together with a strictly interior point, so their polar duals can be
//! formed directly. The dwarfing inequality, where present, is listed last;
//! its polar vertex is therefore the last point of the polar family.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::arith::{solve_linear, Matrix, Scalar, Solution, Vector};
use crate::geometry::{polar, Halfspace, Point};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cube,
    Cross,
    DwarfedCube,
    SimplexProduct,
    PolygonProduct,
    DwarfedPolygonProduct,
    Cyclic,
    RandSphere,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Cube,
        Family::Cross,
        Family::DwarfedCube,
        Family::SimplexProduct,
        Family::PolygonProduct,
        Family::DwarfedPolygonProduct,
        Family::Cyclic,
        Family::RandSphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cube => "cube",
            Family::Cross => "cross",
            Family::DwarfedCube => "dwarfed-cube",
            Family::SimplexProduct => "simplex-product",
            Family::PolygonProduct => "polygon-product",
            Family::DwarfedPolygonProduct => "dwarfed-polygon-product",
            Family::Cyclic => "cyclic",
            Family::RandSphere => "rand-sphere",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// Which polytope to build. Only the parameters relevant to `family` are
/// read: `d` for all but `simplex-product`, `s` for the polygon families,
/// `n` for `cyclic` and `rand-sphere`, `a` and `b` for `simplex-product`,
/// `seed` for `rand-sphere`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub family: Family,
    pub d: usize,
    pub s: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec { family, d: 3, s: 3, n: 10, a: 1, b: 1, seed: 0 }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = s;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_ab(mut self, a: usize, b: usize) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Short identifier such as `dwarfed-polygon-product-d4-s3`.
    pub fn id(&self) -> String {
        match self.family {
            Family::Cube | Family::Cross | Family::DwarfedCube => format!("{}-d{}", self.family, self.d),
            Family::SimplexProduct => format!("{}-a{}-b{}", self.family, self.a, self.b),
            Family::PolygonProduct | Family::DwarfedPolygonProduct => {
                format!("{}-d{}-s{}", self.family, self.d, self.s)
            }
            Family::Cyclic => format!("{}-d{}-n{}", self.family, self.d, self.n),
            Family::RandSphere => format!("{}-d{}-n{}-seed{}", self.family, self.d, self.n, self.seed),
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        match self.family {
            Family::Cube => cube(self.d),
            Family::Cross => cross(self.d),
            Family::DwarfedCube => dwarfed_cube(self.d),
            Family::SimplexProduct => simplex_product(self.a, self.b),
            Family::PolygonProduct => polygon_product(self.d, self.s),
            Family::DwarfedPolygonProduct => dwarfed_polygon_product(self.d, self.s),
            Family::Cyclic => cyclic(self.d, self.n),
            Family::RandSphere => rand_sphere(self.d, self.n, self.seed),
        }
    }
}

/// A generated point configuration with whatever extra structure is known
/// analytically.
#[derive(Clone, Debug)]
pub struct Generated {
    pub points: Vec<Point>,
    /// Facet-defining inequalities, when known in closed form.
    pub inequalities: Option<Vec<Halfspace>>,
    /// A point strictly inside every inequality.
    pub interior: Option<Point>,
    /// Index of the dwarfing inequality in `inequalities`.
    pub dwarfing: Option<usize>,
}

impl Generated {
    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Point::dim)
    }

    /// The polar dual: one point per inequality (the dwarfing vertex last),
    /// with the original points turned into inequalities around the origin.
    /// Requires every original point to be a vertex.
    pub fn polar(&self) -> Result<Generated> {
        let (Some(ineqs), Some(c)) = (&self.inequalities, &self.interior) else {
            return Err(Error::InvalidParameter("polar needs inequalities and an interior point".into()));
        };
        let points = polar(ineqs, c)?;
        // vertex v of P gives 1 - (v - c)·y >= 0 on the polar
        let inequalities = self
            .points
            .iter()
            .map(|v| Halfspace::new(Scalar::one(), v.coords().sub(c.coords()).scale(&Scalar::from(-1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Generated {
            points,
            inequalities: Some(inequalities),
            interior: Some(Point::origin(c.dim())),
            dwarfing: None,
        })
    }
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d).expect("nonzero denominator")
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn cube_inequalities(d: usize) -> Vec<Halfspace> {
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut lo = alloc::vec![0i64; d + 1];
        lo[i + 1] = 1;
        let mut hi = alloc::vec![0i64; d + 1];
        hi[0] = 1;
        hi[i + 1] = -1;
        out.push(Halfspace::from_ints(&lo).expect("nonzero"));
        out.push(Halfspace::from_ints(&hi).expect("nonzero"));
    }
    out
}

/// The unit cube `[0,1]^d`.
pub fn cube(d: usize) -> Result<Generated> {
    require(d >= 1, || format!("cube needs d >= 1, got {d}"))?;
    let points = (0..1u64 << d)
        .map(|m| Point::new((0..d).map(|i| Scalar::from(((m >> i) & 1) as i64)).collect()))
        .collect();
    Ok(Generated {
        points,
        inequalities: Some(cube_inequalities(d)),
        interior: Some(Point::new(alloc::vec![q(1, 2); d])),
        dwarfing: None,
    })
}

/// The cross polytope `conv{±e_i}`.
pub fn cross(d: usize) -> Result<Generated> {
    require(d >= 1, || format!("cross needs d >= 1, got {d}"))?;
    let mut points = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1i64, -1] {
            let mut c = alloc::vec![0i64; d];
            c[i] = s;
            points.push(Point::from_ints(&c));
        }
    }
    let inequalities = (0..1u64 << d)
        .map(|m| {
            let mut c = alloc::vec![1i64; d + 1];
            for i in 0..d {
                c[i + 1] = if (m >> i) & 1 == 1 { 1 } else { -1 };
            }
            Halfspace::from_ints(&c).expect("nonzero")
        })
        .collect();
    Ok(Generated { points, inequalities: Some(inequalities), interior: Some(Point::origin(d)), dwarfing: None })
}

/// The dwarfed cube `[0,1]^d ∩ {sum x_i <= 3/2}`: vertices `0`, `e_i` and
/// `e_i + e_j / 2` for `i != j`.
pub fn dwarfed_cube(d: usize) -> Result<Generated> {
    require(d >= 2, || format!("dwarfed cube needs d >= 2, got {d}"))?;
    let mut points = Vec::with_capacity(d * d + 1);
    points.push(Point::origin(d));
    for i in 0..d {
        points.push(Point::from_vector(Vector::unit(d, i)));
    }
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut v = Vector::unit(d, i);
                v[j] = q(1, 2);
                points.push(Point::from_vector(v));
            }
        }
    }
    let mut inequalities = cube_inequalities(d);
    let mut cut = alloc::vec![q(3, 2)];
    cut.extend((0..d).map(|_| Scalar::from(-1)));
    inequalities.push(Halfspace::from_coefficients(&cut)?);
    Ok(Generated {
        points,
        dwarfing: Some(inequalities.len() - 1),
        inequalities: Some(inequalities),
        interior: Some(Point::new(alloc::vec![q(1, 2 * d as i64); d])),
    })
}

/// `Δ_a × Δ_b` as pairs of standard basis vectors in `Q^(a+1) × Q^(b+1)`.
/// The configuration spans only an `(a+b)`-dimensional flat.
pub fn simplex_product(a: usize, b: usize) -> Result<Generated> {
    require(a >= 1 && b >= 1, || format!("simplex product needs a, b >= 1, got {a}, {b}"))?;
    let dim = a + b + 2;
    let mut points = Vec::with_capacity((a + 1) * (b + 1));
    for i in 0..=a {
        for j in 0..=b {
            let mut v = Vector::unit(dim, i);
            v[a + 1 + j] = Scalar::one();
            points.push(Point::from_vector(v));
        }
    }
    Ok(Generated { points, inequalities: None, interior: None, dwarfing: None })
}

/// The `s` edge inequalities `c0 + c1 x + c2 y >= 0` of the polygon factor.
pub fn polygon_inequalities(s: usize) -> Vec<[i64; 3]> {
    let s = s as i64;
    let mut out = alloc::vec![[0, 0, 1], [0, s, -1]];
    for i in 0..=(s - 4) {
        let k = 2 * i + 1;
        out.push([k * (s + i) - i * i + s * s, -k, -1]);
    }
    out.push([2 * s * (2 * s - 3), -(2 * s - 3), -1]);
    out
}

/// Vertices of the polygon factor with, for each, the indices of the two
/// edge inequalities tight at it; computed by intersecting all pairs of edge
/// lines and keeping the feasible intersections.
pub fn polygon_vertices(s: usize) -> Vec<(Point, Vec<usize>)> {
    let ineqs = polygon_inequalities(s);
    let value = |c: &[i64; 3], p: &Point| Scalar::from(c[0]) + Scalar::from(c[1]) * &p[0] + Scalar::from(c[2]) * &p[1];
    let mut out: Vec<(Point, Vec<usize>)> = Vec::new();
    for i in 0..ineqs.len() {
        for j in (i + 1)..ineqs.len() {
            let a = Matrix::from_rows(alloc::vec![
                Vector::from_ints(&[ineqs[i][1], ineqs[i][2]]),
                Vector::from_ints(&[ineqs[j][1], ineqs[j][2]]),
            ])
            .expect("2x2");
            let rhs = Vector::from_ints(&[-ineqs[i][0], -ineqs[j][0]]);
            let Ok(Solution::Unique(x)) = solve_linear(&a, &rhs) else { continue };
            let p = Point::from_vector(x);
            if out.iter().any(|(o, _)| *o == p) {
                continue;
            }
            if ineqs.iter().all(|c| !value(c, &p).is_negative()) {
                let tight = (0..ineqs.len()).filter(|&k| value(&ineqs[k], &p).is_zero()).collect();
                out.push((p, tight));
            }
        }
    }
    out
}

fn check_polygon_params(d: usize, s: usize) -> Result<usize> {
    require(d >= 4 && d % 2 == 0, || format!("polygon products need even d >= 4, got {d}"))?;
    require(s >= 3, || format!("polygon products need s >= 3, got {s}"))?;
    Ok(d / 2)
}

fn polygon_product_inequalities(delta: usize, s: usize) -> Vec<Halfspace> {
    let d = 2 * delta;
    let mut out = Vec::new();
    for k in 0..delta {
        for c in polygon_inequalities(s) {
            let mut row = alloc::vec![0i64; d + 1];
            row[0] = c[0];
            row[2 * k + 1] = c[1];
            row[2 * k + 2] = c[2];
            out.push(Halfspace::from_ints(&row).expect("nonzero"));
        }
    }
    out
}

/// All index tuples `(i_1, .., i_delta)` with `0 <= i_k < s`, last index
/// fastest.
fn tuples(delta: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..delta {
        out = out
            .into_iter()
            .flat_map(|t| (0..s).map(move |i| {
                let mut t = t.clone();
                t.push(i);
                t
            }))
            .collect();
    }
    out
}

fn product_point(factors: &[Point], tuple: &[usize]) -> Point {
    Point::new(tuple.iter().flat_map(|&i| factors[i].iter().cloned()).collect())
}

/// `G_d(s)`, the product of `d/2` copies of the `s`-gon, coordinates ordered
/// `(x_1, y_1, .., x_δ, y_δ)`.
pub fn polygon_product(d: usize, s: usize) -> Result<Generated> {
    let delta = check_polygon_params(d, s)?;
    let factors: Vec<Point> = polygon_vertices(s).into_iter().map(|(p, _)| p).collect();
    let points = tuples(delta, factors.len()).iter().map(|t| product_point(&factors, t)).collect();
    Ok(Generated {
        points,
        inequalities: Some(polygon_product_inequalities(delta, s)),
        interior: Some(Point::new(alloc::vec![q(1, delta as i64); d])),
        dwarfing: None,
    })
}

/// `g_d(s) = G_d(s) ∩ {sum_k x_k <= 2s - 1}`, the sum running over the
/// `x` coordinates only.
///
/// Vertices are the vertices of `G_d(s)` satisfying the cut, plus the
/// points where the cut hyperplane crosses an edge of `G_d(s)` strictly.
pub fn dwarfed_polygon_product(d: usize, s: usize) -> Result<Generated> {
    let delta = check_polygon_params(d, s)?;
    let polygon = polygon_vertices(s);
    let factors: Vec<Point> = polygon.iter().map(|(p, _)| p.clone()).collect();
    let adjacent = |i: usize, j: usize| polygon[i].1.iter().any(|e| polygon[j].1.contains(e));
    let bound = Scalar::from(2 * s as i64 - 1);
    let xsum = |p: &Point| -> Scalar { (0..delta).map(|k| &p[2 * k]).sum() };

    let all = tuples(delta, factors.len());
    let mut points: Vec<Point> = Vec::new();
    for t in &all {
        let p = product_point(&factors, t);
        if xsum(&p) <= bound {
            points.push(p);
        }
    }
    let mut seen: BTreeSet<Point> = points.iter().cloned().collect();
    for t in &all {
        for k in 0..delta {
            for j in 0..factors.len() {
                if j <= t[k] || !adjacent(t[k], j) {
                    continue;
                }
                let mut u = t.clone();
                u[k] = j;
                let (p, r) = (product_point(&factors, t), product_point(&factors, &u));
                let (sp, sr) = (xsum(&p), xsum(&r));
                if (sp < bound && sr > bound) || (sp > bound && sr < bound) {
                    // p + lambda (r - p) with lambda = (bound - sp) / (sr - sp)
                    let lambda = (&bound - &sp).checked_div(&(&sr - &sp))?;
                    let x = Point::from_vector(p.coords().add(&r.coords().sub(p.coords()).scale(&lambda)));
                    if seen.insert(x.clone()) {
                        points.push(x);
                    }
                }
            }
        }
    }

    let mut inequalities = polygon_product_inequalities(delta, s);
    let mut cut = alloc::vec![0i64; d + 1];
    cut[0] = 2 * s as i64 - 1;
    for k in 0..delta {
        cut[2 * k + 1] = -1;
    }
    inequalities.push(Halfspace::from_ints(&cut)?);
    Ok(Generated {
        points,
        dwarfing: Some(inequalities.len() - 1),
        inequalities: Some(inequalities),
        interior: Some(Point::new(alloc::vec![q(1, delta as i64); d])),
    })
}

/// `n` points `(t, t^2, .., t^d)` on the moment curve for `t = 1, .., n`.
pub fn cyclic(d: usize, n: usize) -> Result<Generated> {
    require(d >= 1, || format!("cyclic polytope needs d >= 1, got {d}"))?;
    require(n > d, || format!("cyclic polytope needs n >= d + 1, got n = {n}, d = {d}"))?;
    let points = (1..=n as i64)
        .map(|t| {
            let mut acc = num_bigint::BigInt::from(1);
            Point::new(
                (0..d)
                    .map(|_| {
                        acc *= t;
                        Scalar::from_integer(acc.clone())
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(Generated { points, inequalities: None, interior: None, dwarfing: None })
}

/// Denominator of the rounded sphere coordinates.
pub const SPHERE_SCALE: i64 = 1_000_000;

/// `n` distinct points near the unit sphere: a standard Gaussian vector
/// (ChaCha8 stream, ziggurat sampler) normalized in double precision, each
/// coordinate rounded to six decimals and taken exactly as `k / 10^6`.
pub fn rand_sphere(d: usize, n: usize, seed: u64) -> Result<Generated> {
    require(d >= 2, || format!("random sphere needs d >= 2, got {d}"))?;
    require(n > d, || format!("random sphere needs n >= d + 1, got n = {n}, d = {d}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let g: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = libm::sqrt(g.iter().map(|x| x * x).sum());
        if norm == 0.0 {
            continue;
        }
        let p = Point::new(
            g.iter()
                .map(|x| Scalar::from_ratio(libm::round(x / norm * SPHERE_SCALE as f64) as i64, SPHERE_SCALE).expect("nonzero"))
                .collect(),
        );
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    Ok(Generated { points, inequalities: None, interior: None, dwarfing: None })
}
