//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use bbhull_core::arith::Scalar;
use bbhull_core::generators::{
    cross, dwarfed_cube, dwarfed_polygon_product, polygon_product, rand_sphere, Family, GeneratorSpec,
};
use bbhull_core::geometry::{affine_basis, Point};
use bbhull_core::hull::{caratheodory, convex_hull, Hull, InsertionOrder};
use bbhull_core::oracle::{brute_force_hull, enumerate_faces, IncidenceMatrix};
use bbhull_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hull(points: &[Point], order: InsertionOrder) -> Result<Hull, String> {
    convex_hull(points, order).map_err(|e| format!("hull failed: {e}"))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn f_vector(h: &Hull) -> Result<Vec<usize>, String> {
    let p = &h.polytope;
    let inc = IncidenceMatrix::from_polytope(p).map_err(|e| e.to_string())?;
    enumerate_faces(&inc, &p.vertices(), p.dim).map_err(|e| e.to_string())
}

fn dwarfed_cube_counts() -> Check {
    for d in 2..=10 {
        let g = dwarfed_cube(d).map_err(|e| e.to_string())?;
        let h = hull(&g.points, InsertionOrder::Given)?;
        let (m, n) = (h.polytope.n_facets(), h.polytope.n_vertices());
        ensure(m == 2 * d + 1, || format!("d={d}: {m} facets, expected {}", 2 * d + 1))?;
        ensure(n == d * d + 1, || format!("d={d}: {n} vertices, expected {}", d * d + 1))?;
        let expected: BTreeSet<_> = g.inequalities.unwrap().into_iter().collect();
        ensure(h.polytope.facet_set() == expected, || format!("d={d}: facets differ from the construction"))?;
    }
    Ok("d=2..10: 2d+1 facets, d^2+1 vertices".into())
}

fn dwarfed_cube_polar_star() -> Check {
    let mut stars = Vec::new();
    for d in 3..=8 {
        let g = dwarfed_cube(d).and_then(|g| g.polar()).map_err(|e| e.to_string())?;
        let h = hull(&g.points, InsertionOrder::Given)?;
        let last = g.points.len() - 1;
        ensure(h.stats.last_point == Some(last), || format!("d={d}: last processed point is not the dwarfing vertex"))?;
        let star = h.stats.star_of_last;
        let expected = (1 << d) - d - 1;
        ensure(star == expected, || format!("d={d}: star {star}, expected {expected}"))?;
        ensure(h.triangulation.star_size(last) == star, || format!("d={d}: recorded star disagrees with triangulation"))?;
        stars.push(star);
    }
    Ok(format!("d=3..8 stars {stars:?} = 2^d-d-1"))
}

fn dwarfed_polygon_counts() -> Check {
    let mut lines = Vec::new();
    for (d, s) in [(4, 3), (4, 4), (4, 5), (4, 6), (6, 3), (6, 4)] {
        let delta = d / 2;
        let g = dwarfed_polygon_product(d, s).map_err(|e| e.to_string())?;
        let h = hull(&g.points, InsertionOrder::Given)?;
        let (m, n) = (h.polytope.n_facets(), h.polytope.n_vertices());
        let want_m = delta * s + 1;
        let want_n = (d - 1) * (delta * s + 1 - d) + 2;
        ensure(m == want_m, || format!("g_{d}({s}): {m} facets, expected {want_m}"))?;
        ensure(n == want_n, || format!("g_{d}({s}): {n} vertices, expected {want_n}"))?;

        let big = polygon_product(d, s).map_err(|e| e.to_string())?;
        let big: BTreeSet<Point> = big.points.into_iter().collect();
        let shared = h.polytope.vertices().iter().filter(|v| big.contains(*v)).count();
        let want_shared = delta * (s - 2) + 1;
        ensure(shared == want_shared, || format!("g_{d}({s}): {shared} shared vertices, expected {want_shared}"))?;

        let dual = g.polar().map_err(|e| e.to_string())?;
        let hd = hull(&dual.points, InsertionOrder::Given)?;
        let star = hd.stats.star_of_last;
        let want_star = s.pow(delta as u32) - delta * s + 2 * delta - 1;
        ensure(star == want_star, || format!("g_{d}({s})*: star {star}, expected {want_star}"))?;
        lines.push(format!("({d},{s}):{m}/{n}/{shared}/{star}"));
    }
    Ok(format!("facets/vertices/shared/polar star {}", lines.join(" ")))
}

fn cross_polytope_facets() -> Check {
    for d in 3..=8 {
        let g = cross(d).map_err(|e| e.to_string())?;
        let h = hull(&g.points, InsertionOrder::Given)?;
        let m = h.polytope.n_facets();
        ensure(m == 1 << d, || format!("d={d}: {m} facets, expected {}", 1 << d))?;
        ensure(h.polytope.n_vertices() == 2 * d, || format!("d={d}: wrong vertex count"))?;
    }
    Ok("d=3..8: 2^d facets".into())
}

fn simplex_f_vectors() -> Check {
    for n in 1..=6 {
        let mut pts = vec![Point::origin(n)];
        pts.extend((0..n).map(|i| {
            let mut c = vec![0i64; n];
            c[i] = 1;
            Point::from_ints(&c)
        }));
        let h = hull(&pts, InsertionOrder::Given)?;
        let f = f_vector(&h)?;
        let want: Vec<usize> = (0..n).map(|k| binomial(n + 1, k + 1)).collect();
        ensure(f == want, || format!("n={n}: f-vector {f:?}, expected {want:?}"))?;
    }
    Ok("n=1..6: f_k = C(n+1,k+1)".into())
}

fn random_instances_match_brute_force() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut done = 0;
    let mut total_facets = 0;
    while done < 50 {
        let d = rng.random_range(2..=4);
        let n = rng.random_range(d + 1..=12);
        // small coordinates force coplanarities, duplicates and interior points
        let pts: Vec<Point> =
            (0..n).map(|_| Point::from_ints(&(0..d).map(|_| rng.random_range(-2..=2)).collect::<Vec<_>>())).collect();
        if affine_basis(&pts).map_err(|e| e.to_string())?.0 < d {
            continue;
        }
        let expected: BTreeSet<_> = brute_force_hull(&pts).map_err(|e| e.to_string())?.into_iter().collect();
        for order in [InsertionOrder::Given, InsertionOrder::Random(done as u64)] {
            let h = hull(&pts, order)?;
            h.polytope.check().map_err(|e| format!("instance {done}: {e}"))?;
            ensure(h.polytope.facet_set() == expected, || format!("instance {done} (d={d}, n={n}, {order}): facets differ"))?;
        }
        total_facets += expected.len();
        done += 1;
    }
    Ok(format!("50 instances, {total_facets} facets in total"))
}

fn order_invariance() -> Check {
    let specs = [
        GeneratorSpec::new(Family::Cube).with_d(4),
        GeneratorSpec::new(Family::Cross).with_d(4),
        GeneratorSpec::new(Family::DwarfedCube).with_d(4),
        GeneratorSpec::new(Family::SimplexProduct).with_ab(2, 2),
        GeneratorSpec::new(Family::PolygonProduct).with_d(4).with_s(4),
        GeneratorSpec::new(Family::DwarfedPolygonProduct).with_d(4).with_s(4),
        GeneratorSpec::new(Family::Cyclic).with_d(4).with_n(9),
        GeneratorSpec::new(Family::RandSphere).with_d(3).with_n(40).with_seed(5),
    ];
    for spec in specs {
        let g = spec.generate().map_err(|e| e.to_string())?;
        let base = hull(&g.points, InsertionOrder::Given)?;
        let facets = base.polytope.facet_set();
        let volume = base.triangulation.volume().map_err(|e| e.to_string())?;
        for seed in 0..20 {
            let h = hull(&g.points, InsertionOrder::Random(seed))?;
            let id = spec.id();
            ensure(h.polytope.facet_set() == facets, || format!("{id} seed {seed}: facets differ"))?;
            ensure(h.polytope.vertex_indices == base.polytope.vertex_indices, || format!("{id} seed {seed}: vertices differ"))?;
            let v = h.triangulation.volume().map_err(|e| e.to_string())?;
            ensure(v == volume, || format!("{id} seed {seed}: volume {v} vs {volume}"))?;
            ensure(h.stats.growth_bounds_hold(h.polytope.dim), || format!("{id} seed {seed}: growth bound violated"))?;
        }
    }
    Ok("8 families x 20 orders: same facets, vertices, volume".into())
}

fn caratheodory_points() -> Check {
    let instances = [
        GeneratorSpec::new(Family::Cube).with_d(3),
        GeneratorSpec::new(Family::DwarfedCube).with_d(3),
        GeneratorSpec::new(Family::Cross).with_d(4),
        GeneratorSpec::new(Family::SimplexProduct).with_ab(1, 2),
        GeneratorSpec::new(Family::RandSphere).with_d(3).with_n(25).with_seed(1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut outside = 0;
    for k in 0..100 {
        let g = instances[k % instances.len()].generate().map_err(|e| e.to_string())?;
        let pts = &g.points;
        let weights: Vec<i64> = pts.iter().map(|_| rng.random_range(0..5)).collect();
        let total: i64 = weights.iter().sum::<i64>().max(1);
        let d = pts[0].dim();
        let p = Point::new(
            (0..d)
                .map(|j| {
                    let s: Scalar = pts.iter().zip(&weights).map(|(v, &w)| &v[j] * &Scalar::from(w)).sum();
                    s.checked_div(&Scalar::from(total)).expect("positive")
                })
                .collect(),
        );
        let p = if weights.iter().all(|&w| w == 0) { pts[0].clone() } else { p };
        let c = caratheodory(pts, &p).map_err(|e| format!("point {k}: {e}"))?;
        let sum: Scalar = c.barycentric.iter().sum();
        ensure(sum == Scalar::one(), || format!("point {k}: weights sum to {sum}"))?;
        ensure(c.barycentric.iter().all(|l| !l.is_negative()), || format!("point {k}: negative weight"))?;
        let chosen: Vec<Point> = c.indices.iter().map(|&i| pts[i].clone()).collect();
        let rank = affine_basis(&chosen).map_err(|e| e.to_string())?.0;
        ensure(rank + 1 == chosen.len(), || format!("point {k}: support is affinely dependent"))?;
        for j in 0..d {
            let s: Scalar = chosen.iter().zip(&c.barycentric).map(|(v, l)| &v[j] * l).sum();
            ensure(s == p[j], || format!("point {k}: coordinate {j} reconstructs to {s}"))?;
        }

        // push the point past its farthest support vertex
        let far = Point::new((0..d).map(|j| &pts[0][j] * &Scalar::from(3) - &p[j] * &Scalar::from(2) + Scalar::from(5)).collect());
        match caratheodory(pts, &far) {
            Err(Error::OutsideHull { witness }) => {
                let v = witness.evaluate(&far).map_err(|e| e.to_string())?;
                ensure(v.is_negative(), || format!("point {k}: witness does not separate"))?;
                outside += 1;
            }
            Ok(c) => {
                let sum: Scalar = c.barycentric.iter().sum();
                ensure(sum == Scalar::one(), || format!("point {k}: far point weights sum to {sum}"))?;
            }
            Err(e) => return Err(format!("point {k}: far point: {e}")),
        }
    }
    Ok(format!("100 points reconstructed exactly; {outside} outside points got separating witnesses"))
}

fn sphere_instances() -> Check {
    let mut lines = Vec::new();
    for n in [100, 200] {
        let g = rand_sphere(3, n, 42).map_err(|e| e.to_string())?;
        for p in &g.points {
            for x in p.iter() {
                let den = x.denom();
                ensure((num_bigint::BigInt::from(1_000_000) % den).bits() == 0, || format!("n={n}: denominator {den}"))?;
            }
        }
        let h = hull(&g.points, InsertionOrder::Random(42))?;
        ensure(h.polytope.facets.iter().all(|f| f.incident.len() == 3), || format!("n={n}: non-simplicial facet"))?;
        let f = f_vector(&h)?;
        let euler = f[0] as i64 - f[1] as i64 + f[2] as i64;
        ensure(euler == 2, || format!("n={n}: f-vector {f:?}, Euler characteristic {euler}"))?;
        ensure(2 * f[1] == 3 * f[2], || format!("n={n}: 2E != 3F"))?;
        lines.push(format!("n={n} f={f:?}"));
    }
    Ok(format!("simplicial, Euler 2: {}", lines.join(", ")))
}

fn polar_growth() -> Check {
    let mut means = Vec::new();
    for s in 3..=6 {
        let g = dwarfed_polygon_product(4, s).and_then(|g| g.polar()).map_err(|e| e.to_string())?;
        let mut total = 0usize;
        for seed in 0..10 {
            total += hull(&g.points, InsertionOrder::Random(seed))?.triangulation.size();
        }
        means.push(total as f64 / 10.0);
    }
    ensure(means.windows(2).all(|w| w[0] < w[1]), || format!("means {means:?} not strictly increasing"))?;
    Ok(format!("mean t for s=3..6: {means:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("dwarfed cube facet and vertex counts", dwarfed_cube_counts),
        ("dwarfed cube polar, star of the last vertex", dwarfed_cube_polar_star),
        ("dwarfed polygon products and their polars", dwarfed_polygon_counts),
        ("cross polytope facets", cross_polytope_facets),
        ("simplex f-vectors", simplex_f_vectors),
        ("random instances against brute force", random_instances_match_brute_force),
        ("insertion order invariance", order_invariance),
        ("Caratheodory decompositions", caratheodory_points),
        ("random sphere hulls", sphere_instances),
        ("placing triangulation growth on polars", polar_growth),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.2}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:.2}s] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
