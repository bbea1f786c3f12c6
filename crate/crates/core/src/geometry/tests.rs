use super::*;
use crate::sampling;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const E: FieldMode = FieldMode::Euclidean;
const R: FieldMode = FieldMode::Rational;

fn p(c: [i64; 4]) -> Point {
    Point::ints(c)
}

fn v(c: [i64; 4]) -> Vector {
    Vector::ints(c)
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

fn unit_cone() -> Cone {
    Cone::new(Point::origin(), Scalar::one()).unwrap()
}

fn line(base: [i64; 4], dir: [i64; 4]) -> Line {
    Line::new(p(base), v(dir)).unwrap()
}

#[test]
fn vector_algebra() {
    assert_eq!(&v([1, 1, 0, 0]) + &v([0, 0, 1, 0]), v([1, 1, 1, 0]));
    assert_eq!(spatial_dot(&v([0, 3, 4, 0]), &v([0, 4, -3, 0])), Scalar::zero());
    assert!(is_orthogonal(&v([0, 3, 4, 0]), &v([0, 4, -3, 0]), None));
    assert!(is_orthogonal(&v([1, 1, 0, 0]), &v([1, 1, 0, 0]), Some(&unit_cone())));
    assert!(!is_orthogonal(&v([1, 1, 0, 0]), &v([1, 1, 0, 0]), None));
    assert_eq!(
        v([1, 2, 0, 0]).scaled(&q(1, 2)),
        Vector::new(q(1, 2), Scalar::one(), Scalar::zero(), Scalar::zero())
    );
}

#[test]
fn separations() {
    let a = Point::origin();
    let b = p([7, 3, 4, 0]);
    assert_eq!(space2(&a, &b), Scalar::from(25));
    assert_eq!(time2(&a, &b), Scalar::from(49));
    assert_eq!(space2(&b, &b), Scalar::zero());
    assert_eq!(time2(&b, &b), Scalar::zero());
    assert_eq!(time2(&p([-7, 0, 0, 0]), &a), Scalar::from(49));
}

#[test]
fn collinearity() {
    let o = Point::origin();
    assert!(collinear(&o, &p([1, 1, 0, 0]), &p([2, 2, 0, 0])));
    assert!(!collinear(&o, &p([1, 1, 0, 0]), &p([2, 3, 0, 0])));
    let x = p([3, 1, 4, 1]);
    assert!(collinear(&x, &x, &p([5, 9, 2, 6])));
}

#[test]
fn joining_lines() {
    let l = line_joining(&Point::origin(), &p([1, 1, 0, 0])).unwrap();
    assert_eq!(l.basepoint, Point::origin());
    assert_eq!(l.direction, v([1, 1, 0, 0]));
    assert!(l.contains(&p([2, 2, 0, 0])));
    assert_eq!(line_joining(&p([1, 2, 3, 4]), &p([1, 2, 3, 4])), Err(Error::DegenerateLine));
}

#[test]
fn parallelism() {
    assert!(parallel(&line([0; 4], [0, 1, 0, 0]), &line([5, 5, 5, 5], [0, 2, 0, 0])));
    assert!(!parallel(&line([0; 4], [1, 1, 0, 0]), &line([0; 4], [1, 2, 0, 0])));
    assert!(parallel(&line([0; 4], [1, 2, 3, 4]), &line([0; 4], [-1, -2, -3, -4])));
}

#[test]
fn meeting_lines() {
    let axis = line([0; 4], [1, 0, 0, 0]);
    assert_eq!(lines_meet(&axis, &line([0, 1, 0, 0], [1, 0, 0, 0])), LineMeet::Disjoint);
    assert_eq!(lines_meet(&axis, &axis), LineMeet::Identical);
    assert_eq!(lines_meet(&line([0; 4], [0, 1, 0, 0]), &line([1, 0, 0, 0], [0, 1, 0, 0])), LineMeet::Disjoint);
    assert_eq!(lines_meet(&axis, &line([0, 2, 0, 0], [1, -1, 0, 0])), LineMeet::MeetAt(p([2, 0, 0, 0])));
    assert_eq!(lines_meet(&axis, &line([0, 2, 1, 0], [1, -1, 0, 0])), LineMeet::Disjoint);
}

#[test]
fn plane_membership() {
    let pl = Plane::new(p([1, 0, 1, 0]), v([1, 0, 1, 0]), v([0, 1, 0, 0])).unwrap();
    assert!(in_plane(&pl.basepoint, &pl));
    assert!(in_plane(&p([0, 1, 0, 0]), &pl));
    assert_eq!(pl.coordinates(&p([0, 1, 0, 0])), Some((Scalar::from(-1), Scalar::one())));
    assert!(!in_plane(&p([0, 0, 0, 1]), &pl));
    assert_eq!(Plane::new(Point::origin(), v([1, 1, 0, 0]), v([2, 2, 0, 0])), Err(Error::DegeneratePlane));
}

#[test]
fn plane_identity() {
    let pl = Plane::new(p([1, 2, 3, 4]), v([1, 0, 1, 0]), v([0, 1, 0, 0])).unwrap();
    let swapped = Plane::new(pl.basepoint.clone(), pl.d2.clone(), pl.d1.clone()).unwrap();
    assert!(same_plane(&pl, &swapped));
    let moved = Plane::new(&pl.basepoint + &pl.d1.scaled(&q(7, 3)), pl.d1.clone(), pl.d2.clone()).unwrap();
    assert!(same_plane(&pl, &moved));
    let other = Plane::new(pl.basepoint.clone(), pl.d1.clone(), v([0, 0, 0, 1])).unwrap();
    assert!(!same_plane(&pl, &other));
}

#[test]
fn time_axis() {
    assert!(on_axis_t(&p([5, 0, 0, 0])));
    assert!(!on_axis_t(&p([5, 1, 0, 0])));
    assert!(on_axis_t(&Point::origin()));
}

#[test]
fn cone_sides() {
    let c = unit_cone();
    assert_eq!(cone_classify(&p([1, 1, 0, 0]), &c), ConeSide::OnCone);
    assert_eq!(cone_classify(&p([1, 0, 0, 0]), &c), ConeSide::InsideCone);
    assert_eq!(cone_classify(&p([1, 2, 0, 0]), &c), ConeSide::OutsideCone);
    assert_eq!(cone_classify(&Point::origin(), &c), ConeSide::OnCone);
    assert_eq!(Cone::new(Point::origin(), Scalar::zero()), Err(Error::NonPositiveSlope));
}

#[test]
fn plane_sections() {
    let c = unit_cone();
    let o = Point::origin;
    let tangent = Plane::new(o(), v([1, 1, 0, 0]), v([0, 0, 1, 0])).unwrap();
    match plane_cone_classify(&tangent, &c, R).unwrap() {
        PlaneConeSection::OneLine(l) => assert_eq!(l.direction, v([1, 1, 0, 0])),
        other => panic!("{other:?}"),
    }
    let cross = Plane::new(o(), v([1, 1, 0, 0]), v([1, -1, 0, 0])).unwrap();
    match plane_cone_classify(&cross, &c, R).unwrap() {
        PlaneConeSection::TwoLines(a, b) => {
            assert_eq!(a.direction, v([1, 1, 0, 0]));
            assert_eq!(b.direction, v([1, -1, 0, 0]));
        }
        other => panic!("{other:?}"),
    }
    let spatial = Plane::new(o(), v([0, 1, 0, 0]), v([0, 0, 1, 0])).unwrap();
    assert_eq!(plane_cone_classify(&spatial, &c, R).unwrap(), PlaneConeSection::VertexOnly);
    let off = Plane::new(p([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 1, 0])).unwrap();
    assert_eq!(plane_cone_classify(&off, &c, R).unwrap(), PlaneConeSection::NotThroughVertex);
    // Irrational null directions: t-x plane with slope 1 meets x = t and x = -t,
    // but the (t, x+y) plane at slope 1 needs sqrt(2).
    let tilted = Plane::new(o(), v([1, 0, 0, 0]), v([0, 1, 1, 0])).unwrap();
    assert!(matches!(plane_cone_classify(&tilted, &c, R), Err(Error::NotEuclidean(_))));
    assert!(matches!(plane_cone_classify(&tilted, &c, E).unwrap(), PlaneConeSection::TwoLines(..)));
}

#[test]
fn tangent_plane_examples() {
    let c = unit_cone();
    let pl = tangent_plane_at(&p([1, 0, 1, 0]), &c).unwrap();
    assert_eq!(pl.basepoint, p([1, 0, 1, 0]));
    assert_eq!(pl.d1, v([1, 0, 1, 0]));
    assert_eq!(pl.d2, v([0, 1, 0, 0]));
    let pl = tangent_plane_at(&p([1, 1, 0, 0]), &c).unwrap();
    assert_eq!(pl.d1, v([1, 1, 0, 0]));
    assert_eq!(pl.d2, v([0, 0, 1, 0]));
    assert_eq!(tangent_plane_at(&Point::origin(), &c), Err(Error::VertexInput));
    assert_eq!(tangent_plane_at(&p([1, 0, 0, 0]), &c), Err(Error::NotOnCone));
}

#[test]
fn tangent_through_outside_examples() {
    let c = unit_cone();
    let f = p([3, 5, 0, 0]);
    let (e, pl) = tangent_plane_through_outside(&f, &c, R).unwrap();
    assert_eq!(e, p([5, 3, 4, 0]));
    assert_eq!(pl.d1, v([5, 3, 4, 0]));
    assert_eq!(pl.d2, v([0, 4, -3, 0]));
    assert_eq!(pl.coordinates(&f), Some((q(-2, 5), q(4, 5))));

    let (e, pl) = tangent_plane_through_outside(&p([0, 1, 0, 0]), &c, R).unwrap();
    assert_eq!(e, p([1, 0, 1, 0]));
    assert!(in_plane(&p([0, 1, 0, 0]), &pl));

    assert!(matches!(tangent_plane_through_outside(&p([1, 2, 0, 0]), &c, R), Err(Error::NotEuclidean(_))));
    let (e, pl) = tangent_plane_through_outside(&p([1, 2, 0, 0]), &c, E).unwrap();
    assert!(on_cone(&e, &c) && in_plane(&p([1, 2, 0, 0]), &pl));

    assert_eq!(tangent_plane_through_outside(&p([2, 1, 0, 0]), &c, E), Err(Error::NotOutside));
    assert_eq!(tangent_plane_through_outside(&p([1, 1, 0, 0]), &c, E), Err(Error::NotOutside));
}

#[test]
fn tangent_through_points_off_the_equator() {
    // Spatial parts dominated by z: the coordinate-basis rule has no tangent
    // plane through these, the generator-line rule must.
    let c = unit_cone();
    for f in [[1, 0, 0, 5], [1, 0, 0, -5], [0, 0, 0, 1], [-2, 1, 1, 7], [3, -1, 0, 4]] {
        let f = p(f);
        let (e, pl) = tangent_plane_through_outside(&f, &c, E).unwrap();
        assert!(on_cone(&e, &c) && e != c.vertex && in_plane(&f, &pl), "{f:?}");
    }
}

#[test]
fn line_cone_examples() {
    let c = unit_cone();
    assert_eq!(
        line_cone_intersect(&line([0, 2, 0, 0], [1, 0, 0, 0]), &c, R).unwrap(),
        LineConeMeet::Points(vec![p([-2, 2, 0, 0]), p([2, 2, 0, 0])])
    );
    assert_eq!(line_cone_intersect(&line([0; 4], [1, 1, 0, 0]), &c, R).unwrap(), LineConeMeet::WholeLine);
    assert_eq!(line_cone_intersect(&line([0, 3, 0, 0], [0, 0, 1, 0]), &c, R).unwrap(), LineConeMeet::Empty);
    assert!(matches!(line_cone_intersect(&line([0, 1, 1, 0], [1, 0, 0, 0]), &c, R), Err(Error::NotEuclidean(_))));
}

#[test]
fn sloped_point_examples() {
    let o = Point::origin();
    let f = p([4, 0, 0, 0]);
    let one = Scalar::one();
    assert_eq!(sloped_point_on_line(&o, &f, &p([1, 0, 1, 0]), &one, R).unwrap(), vec![p([2, 0, 2, 0])]);
    assert_eq!(
        sloped_point_on_line(&o, &f, &p([1, 0, 2, 0]), &one, R).unwrap(),
        vec![p([-4, 0, -8, 0]), Point::new(q(4, 3), Scalar::zero(), q(8, 3), Scalar::zero())]
    );
    assert!(matches!(sloped_point_on_line(&o, &f, &p([1, 0, 1, 1]), &one, R), Err(Error::NotEuclidean(_))));
    let roots = sloped_point_on_line(&o, &f, &p([1, 0, 1, 1]), &one, E).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(matches!(sloped_point_on_line(&o, &o, &p([1, 0, 1, 0]), &one, E), Err(Error::PreconditionViolated(_))));
    assert!(matches!(sloped_point_on_line(&o, &f, &p([1, 0, 0, 0]), &one, E), Err(Error::PreconditionViolated(_))));
}

#[test]
fn geometry_literals() {
    let l: Line = serde_json::from_str(r#"{"line": {"base": [0, 0, 0, 0], "dir": ["1/2", 1, 0, 0]}}"#).unwrap();
    assert_eq!(l.direction.dt, q(1, 2));
    let back = serde_json::to_string(&l).unwrap();
    assert_eq!(back, r#"{"line":{"base":["0","0","0","0"],"dir":["1/2","1","0","0"]}}"#);
    let c: Cone = serde_json::from_str(r#"{"cone": {"vertex": [1, 2, 3, 4], "slope": "sqrt(2)"}}"#).unwrap();
    assert_eq!(&c.slope * &c.slope, Scalar::from(2));
    assert!(serde_json::from_str::<Line>(r#"{"line": {"base": [0, 0, 0, 0], "dir": [1, 0, 0, 0], "x": 1}}"#).is_err());
    assert!(serde_json::from_str::<Point>(r#"[0, 0, 0]"#).is_err());
}

/// Brute-force reference for line/cone intersection: sample the cone form
/// along the line on a rational grid and bracket roots by sign changes. The
/// extremum of the sampled quadratic (recovered from three samples by finite
/// differences) is added to the grid so every interval is monotone.
mod oracle {
    use super::*;

    pub fn q_at(l: &Line, c: &Cone, t: &Scalar) -> Scalar {
        c.form_at(&l.point_at(t))
    }

    pub fn scan(l: &Line, c: &Cone, bound: i64, steps: i64) -> Option<Vec<(Scalar, Scalar)>> {
        let mut ts: Vec<Scalar> = (-steps..=steps).map(|k| Scalar::ratio(k * bound, steps)).collect();
        let (m, z, pl) = (q_at(l, c, &Scalar::from(-1)), q_at(l, c, &Scalar::zero()), q_at(l, c, &Scalar::one()));
        let second = &(&m + &pl) - &(&z + &z);
        if !second.is_zero() {
            let vertex = -((&pl - &m) / (&second + &second));
            if vertex.abs() <= Scalar::from(bound) {
                ts.push(vertex);
                ts.sort();
                ts.dedup();
            }
        }
        let vals: Vec<Scalar> = ts.iter().map(|t| q_at(l, c, t)).collect();
        if vals.iter().all(Scalar::is_zero) {
            return None;
        }
        let mut brackets = Vec::new();
        for i in 0..ts.len() {
            if vals[i].is_zero() {
                brackets.push((ts[i].clone(), ts[i].clone()));
            } else if i + 1 < ts.len() && !vals[i + 1].is_zero() && vals[i].signum() != vals[i + 1].signum() {
                brackets.push((ts[i].clone(), ts[i + 1].clone()));
            }
        }
        Some(brackets)
    }
}

#[test]
fn line_cone_matches_sign_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for _ in 0..250 {
        let cone = Cone::new(sampling::point(&mut rng, 2, 2), sampling::positive_rational(&mut rng, 2, 2)).unwrap();
        // Lines through a sampled on-cone point make roots frequent.
        let base = if rand::Rng::gen_bool(&mut rng, 0.5) {
            sampling::on_cone(&mut rng, &cone, 2, 2)
        } else {
            sampling::point(&mut rng, 3, 2)
        };
        let l = Line::new(base, sampling::nonzero_vector(&mut rng, 3, 2)).unwrap();
        let found = line_cone_intersect(&l, &cone, E).unwrap();
        let Some(brackets) = oracle::scan(&l, &cone, 64, 64) else {
            assert_eq!(found, LineConeMeet::WholeLine);
            compared += 1;
            continue;
        };
        let params: Vec<Scalar> = match &found {
            LineConeMeet::Empty => vec![],
            LineConeMeet::Points(ps) => ps
                .iter()
                .map(|pt| {
                    let c = linalg::combination(&(pt - &l.basepoint).to_array(), &[l.direction.to_array()]).unwrap();
                    c[0].clone()
                })
                .collect(),
            LineConeMeet::WholeLine => panic!("scan found isolated roots"),
        };
        for t in &params {
            assert!(oracle::q_at(&l, &cone, t).is_zero());
        }
        let inside: Vec<&Scalar> = params.iter().filter(|t| t.abs() <= Scalar::from(64)).collect();
        assert_eq!(inside.len(), brackets.len(), "{l:?} {cone:?} {params:?} {brackets:?}");
        for (t, (lo, hi)) in inside.iter().zip(&brackets) {
            assert!(lo <= *t && *t <= hi);
        }
        compared += 1;
    }
    assert!(compared >= 200);
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_cone(rng: &mut ChaCha8Rng) -> Cone {
    let slope = if rand::Rng::gen_ratio(rng, 1, 6) {
        Scalar::from(2).sqrt(E).unwrap()
    } else {
        sampling::positive_rational(rng, 3, 4)
    };
    Cone::new(sampling::point(rng, 5, 3), slope).unwrap()
}

proptest! {
    #[test]
    fn separations_symmetric(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = sampling::point(&mut rng, 9, 5);
        let b = sampling::point(&mut rng, 9, 5);
        prop_assert_eq!(space2(&a, &b), space2(&b, &a));
        prop_assert_eq!(time2(&a, &b), time2(&b, &a));
        prop_assert!(!space2(&a, &b).is_negative() && !time2(&a, &b).is_negative());
    }

    #[test]
    fn joined_points_parallel(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let l = Line::new(sampling::point(&mut rng, 9, 5), sampling::nonzero_vector(&mut rng, 9, 5)).unwrap();
        let s = sampling::rational(&mut rng, 9, 5);
        let t = &s + &sampling::nonzero_rational(&mut rng, 9, 5);
        let j = line_joining(&l.point_at(&s), &l.point_at(&t)).unwrap();
        prop_assert!(parallel(&l, &j));
        prop_assert!(l.same_line(&j));
    }

    #[test]
    fn distinct_parallel_lines_never_meet(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let l1 = Line::new(sampling::point(&mut rng, 9, 5), sampling::nonzero_vector(&mut rng, 9, 5)).unwrap();
        let off = sampling::point(&mut rng, 9, 5);
        prop_assume!(!l1.contains(&off));
        let l2 = Line::new(off, l1.direction.scaled(&sampling::nonzero_rational(&mut rng, 9, 5))).unwrap();
        prop_assert_eq!(lines_meet(&l1, &l2), LineMeet::Disjoint);
    }

    #[test]
    fn tangent_plane_axioms(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let cone = random_cone(&mut rng);
        let e = sampling::on_cone(&mut rng, &cone, 5, 4);
        let pl = tangent_plane_at(&e, &cone).unwrap();
        prop_assert_eq!(&pl.basepoint, &e);
        prop_assert!(in_plane(&cone.vertex, &pl));
        let generator = line_joining(&cone.vertex, &e).unwrap();
        match plane_cone_classify(&pl, &cone, E).unwrap() {
            PlaneConeSection::OneLine(l) => prop_assert!(l.same_line(&generator)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn tangent_through_outside_points(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let cone = random_cone(&mut rng);
        let f = sampling::outside_cone(&mut rng, &cone, 5, 4);
        let (e, pl) = tangent_plane_through_outside(&f, &cone, E).unwrap();
        prop_assert!(on_cone(&e, &cone) && e != cone.vertex);
        prop_assert!(in_plane(&f, &pl));
        prop_assert!(same_plane(&pl, &tangent_plane_at(&e, &cone).unwrap()));
    }

    #[test]
    fn parallel_cones(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let econe = random_cone(&mut rng);
        let e = sampling::on_cone(&mut rng, &econe, 5, 4);
        let pe = tangent_plane_at(&e, &econe).unwrap();
        let a = sampling::rational(&mut rng, 5, 4);
        let b = sampling::rational(&mut rng, 5, 4);
        let fv = &(&pe.basepoint + &pe.d1.scaled(&a)) + &pe.d2.scaled(&b);
        let fcone = Cone::new(fv, econe.slope.clone()).unwrap();
        let f = &fcone.vertex + &(&e - &econe.vertex).scaled(&sampling::nonzero_rational(&mut rng, 5, 4));
        prop_assert!(on_cone(&f, &fcone) && in_plane(&f, &pe));
        let pf = tangent_plane_at(&f, &fcone).unwrap();
        prop_assert!(same_plane(&pe, &pf));
        prop_assert!(parallel(&line_joining(&econe.vertex, &e).unwrap(), &line_joining(&fcone.vertex, &f).unwrap()));
    }

    #[test]
    fn sloped_points_satisfy_both_conditions(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let e = Point::new(sampling::rational(&mut rng, 5, 3), Scalar::zero(), Scalar::zero(), Scalar::zero());
        let f = Point::new(&e.t + &sampling::nonzero_rational(&mut rng, 5, 3), Scalar::zero(), Scalar::zero(), Scalar::zero());
        let g = sampling::point(&mut rng, 5, 3);
        prop_assume!(!on_axis_t(&g));
        let s = sampling::positive_rational(&mut rng, 3, 3);
        let pts = sloped_point_on_line(&e, &f, &g, &s, E).unwrap();
        prop_assert!(!pts.is_empty());
        for pt in &pts {
            prop_assert!(collinear(&e, &g, pt));
            prop_assert_eq!(space2(pt, &f), &s.square() * &time2(pt, &f));
        }
    }
}
