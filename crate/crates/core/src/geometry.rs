//! (1+3)-dimensional spacetime: points, vectors, lines, planes and upright cones.
//!
//! Coordinates are ordered `(t, x, y, z)`. A cone stores its speed `c` as the
//! slope; membership uses `c^2`. The cone axioms are realized constructively:
//! [`tangent_plane_at`] and [`tangent_plane_through_outside`] build the planes
//! whose existence the axioms assert.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldMode, Scalar};
use crate::linalg;

/// A spacetime location.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "[Scalar; 4]", into = "[Scalar; 4]")]
pub struct Point {
    pub t: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

/// A displacement between points.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "[Scalar; 4]", into = "[Scalar; 4]")]
pub struct Vector {
    pub dt: Scalar,
    pub dx: Scalar,
    pub dy: Scalar,
    pub dz: Scalar,
}

impl Point {
    pub fn new(t: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Point {
        Point { t, x, y, z }
    }

    pub fn ints(c: [i64; 4]) -> Point {
        Point::from(c.map(Scalar::from))
    }

    pub fn origin() -> Point {
        Point::default()
    }

    pub fn to_array(&self) -> [Scalar; 4] {
        [self.t.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    /// The time coordinate.
    pub fn tval(&self) -> &Scalar {
        &self.t
    }

    pub fn is_rational(&self) -> bool {
        self.to_array().iter().all(Scalar::is_rational)
    }
}

impl From<[Scalar; 4]> for Point {
    fn from([t, x, y, z]: [Scalar; 4]) -> Point {
        Point { t, x, y, z }
    }
}

impl From<Point> for [Scalar; 4] {
    fn from(p: Point) -> [Scalar; 4] {
        [p.t, p.x, p.y, p.z]
    }
}

impl Vector {
    pub fn new(dt: Scalar, dx: Scalar, dy: Scalar, dz: Scalar) -> Vector {
        Vector { dt, dx, dy, dz }
    }

    pub fn ints(c: [i64; 4]) -> Vector {
        Vector::from(c.map(Scalar::from))
    }

    pub fn zero() -> Vector {
        Vector::default()
    }

    pub fn to_array(&self) -> [Scalar; 4] {
        [self.dt.clone(), self.dx.clone(), self.dy.clone(), self.dz.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.dt.is_zero() && self.dx.is_zero() && self.dy.is_zero() && self.dz.is_zero()
    }

    pub fn scaled(&self, s: &Scalar) -> Vector {
        Vector::new(&self.dt * s, &self.dx * s, &self.dy * s, &self.dz * s)
    }

    pub fn neg(&self) -> Vector {
        self.scaled(&Scalar::from(-1))
    }

    pub fn spatial(&self) -> [Scalar; 3] {
        [self.dx.clone(), self.dy.clone(), self.dz.clone()]
    }

    /// Divide by the first nonzero component so that component becomes 1.
    fn normalized(&self) -> Vector {
        match self.to_array().into_iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scaled(&lead.recip().expect("nonzero lead")),
            None => self.clone(),
        }
    }
}

impl From<[Scalar; 4]> for Vector {
    fn from([dt, dx, dy, dz]: [Scalar; 4]) -> Vector {
        Vector { dt, dx, dy, dz }
    }
}

impl From<Vector> for [Scalar; 4] {
    fn from(v: Vector) -> [Scalar; 4] {
        [v.dt, v.dx, v.dy, v.dz]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.t, self.x, self.y, self.z)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}, {}>", self.dt, self.dx, self.dy, self.dz)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Vector;
    fn sub(self, q: &Point) -> Vector {
        Vector::new(&self.t - &q.t, &self.x - &q.x, &self.y - &q.y, &self.z - &q.z)
    }
}

impl<'a> Add<&'a Vector> for &'a Point {
    type Output = Point;
    fn add(self, v: &Vector) -> Point {
        Point::new(&self.t + &v.dt, &self.x + &v.dx, &self.y + &v.dy, &self.z + &v.dz)
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, v: &Vector) -> Vector {
        Vector::new(&self.dt + &v.dt, &self.dx + &v.dx, &self.dy + &v.dy, &self.dz + &v.dz)
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, v: &Vector) -> Vector {
        Vector::new(&self.dt - &v.dt, &self.dx - &v.dx, &self.dy - &v.dy, &self.dz - &v.dz)
    }
}

pub fn spatial_dot(u: &Vector, v: &Vector) -> Scalar {
    &(&(&u.dx * &v.dx) + &(&u.dy * &v.dy)) + &(&u.dz * &v.dz)
}

/// `spatialDot(u,v) - slope^2 * dt * dt'`.
pub fn cone_form(u: &Vector, v: &Vector, slope: &Scalar) -> Scalar {
    &spatial_dot(u, v) - &(&slope.square() * &(&u.dt * &v.dt))
}

/// Orthogonality under the cone form when a cone is given, plain spatial otherwise.
pub fn is_orthogonal(u: &Vector, v: &Vector, cone: Option<&Cone>) -> bool {
    match cone {
        Some(c) => cone_form(u, v, &c.slope).is_zero(),
        None => spatial_dot(u, v).is_zero(),
    }
}

pub fn space2(p: &Point, q: &Point) -> Scalar {
    let d = p - q;
    spatial_dot(&d, &d)
}

pub fn time2(p: &Point, q: &Point) -> Scalar {
    (&p.t - &q.t).square()
}

pub fn on_axis_t(p: &Point) -> bool {
    p.x.is_zero() && p.y.is_zero() && p.z.is_zero()
}

/// Coincident points count as collinear.
pub fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    linalg::dependent(&(b - a).to_array(), &(c - a).to_array())
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "tagged::LineTag", into = "tagged::LineTag")]
pub struct Line {
    pub basepoint: Point,
    pub direction: Vector,
}

impl Line {
    pub fn new(basepoint: Point, direction: Vector) -> Result<Line> {
        if direction.is_zero() {
            return Err(Error::DegenerateLine);
        }
        Ok(Line { basepoint, direction })
    }

    pub fn point_at(&self, t: &Scalar) -> Point {
        &self.basepoint + &self.direction.scaled(t)
    }

    pub fn contains(&self, p: &Point) -> bool {
        linalg::dependent(&self.direction.to_array(), &(p - &self.basepoint).to_array())
    }

    /// Same point set.
    pub fn same_line(&self, other: &Line) -> bool {
        parallel(self, other) && self.contains(&other.basepoint)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line[{:?} + s{:?}]", self.basepoint, self.direction)
    }
}

pub fn line_joining(a: &Point, b: &Point) -> Result<Line> {
    Line::new(a.clone(), b - a)
}

pub fn parallel(l1: &Line, l2: &Line) -> bool {
    linalg::dependent(&l1.direction.to_array(), &l2.direction.to_array())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LineMeet {
    Identical,
    MeetAt(Point),
    Disjoint,
}

pub fn lines_meet(l1: &Line, l2: &Line) -> LineMeet {
    let delta = &l2.basepoint - &l1.basepoint;
    if parallel(l1, l2) {
        return if l1.contains(&l2.basepoint) { LineMeet::Identical } else { LineMeet::Disjoint };
    }
    let basis = [l1.direction.to_array(), l2.direction.neg().to_array()];
    match linalg::combination(&delta.to_array(), &basis) {
        Some(c) => LineMeet::MeetAt(l1.point_at(&c[0])),
        None => LineMeet::Disjoint,
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "tagged::PlaneTag", into = "tagged::PlaneTag")]
pub struct Plane {
    pub basepoint: Point,
    pub d1: Vector,
    pub d2: Vector,
}

impl Plane {
    pub fn new(basepoint: Point, d1: Vector, d2: Vector) -> Result<Plane> {
        if linalg::rank(&[d1.to_array(), d2.to_array()]) < 2 {
            return Err(Error::DegeneratePlane);
        }
        Ok(Plane { basepoint, d1, d2 })
    }

    /// Coefficients `(a, b)` with `p = basepoint + a d1 + b d2`.
    pub fn coordinates(&self, p: &Point) -> Option<(Scalar, Scalar)> {
        let c = linalg::combination(&(p - &self.basepoint).to_array(), &[self.d1.to_array(), self.d2.to_array()])?;
        let mut it = c.into_iter();
        Some((it.next()?, it.next()?))
    }
}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plane[{:?} + a{:?} + b{:?}]", self.basepoint, self.d1, self.d2)
    }
}

pub fn in_plane(p: &Point, pl: &Plane) -> bool {
    linalg::rank(&[pl.d1.to_array(), pl.d2.to_array(), (p - &pl.basepoint).to_array()]) <= 2
}

pub fn same_plane(p1: &Plane, p2: &Plane) -> bool {
    let span = |v: &Vector| linalg::rank(&[p1.d1.to_array(), p1.d2.to_array(), v.to_array()]) <= 2;
    in_plane(&p2.basepoint, p1) && span(&p2.d1) && span(&p2.d2)
}

/// An upright cone: `space2(vertex, p) = slope^2 * time2(vertex, p)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "tagged::ConeTag", into = "tagged::ConeTag")]
pub struct Cone {
    pub vertex: Point,
    pub slope: Scalar,
}

impl Cone {
    pub fn new(vertex: Point, slope: Scalar) -> Result<Cone> {
        if !slope.is_positive() {
            return Err(Error::NonPositiveSlope);
        }
        Ok(Cone { vertex, slope })
    }

    /// The cone's quadratic form at `p`.
    pub fn form_at(&self, p: &Point) -> Scalar {
        let d = p - &self.vertex;
        cone_form(&d, &d, &self.slope)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone[{:?}, slope {}]", self.vertex, self.slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ConeSide {
    OnCone,
    InsideCone,
    OutsideCone,
}

pub fn cone_classify(p: &Point, c: &Cone) -> ConeSide {
    match c.form_at(p).signum() {
        0 => ConeSide::OnCone,
        s if s < 0 => ConeSide::InsideCone,
        _ => ConeSide::OutsideCone,
    }
}

pub fn on_cone(p: &Point, c: &Cone) -> bool {
    cone_classify(p, c) == ConeSide::OnCone
}

/// Real roots of `a t^2 + b t + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Roots {
    /// The polynomial vanishes identically.
    All,
    /// Distinct roots in ascending order.
    Finite(Vec<Scalar>),
}

pub fn solve_quadratic(a: &Scalar, b: &Scalar, c: &Scalar, mode: FieldMode) -> Result<Roots> {
    if a.is_zero() {
        if b.is_zero() {
            return Ok(if c.is_zero() { Roots::All } else { Roots::Finite(vec![]) });
        }
        return Ok(Roots::Finite(vec![-(c / b)]));
    }
    let disc = &b.square() - &(&Scalar::from(4) * &(a * c));
    let two_a = a + a;
    match disc.signum() {
        s if s < 0 => Ok(Roots::Finite(vec![])),
        0 => Ok(Roots::Finite(vec![-(b / &two_a)])),
        _ => {
            let r = disc.sqrt(mode)?;
            let mut roots = vec![(&(-b) - &r) / &two_a, (&(-b) + &r) / &two_a];
            roots.sort();
            Ok(Roots::Finite(roots))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PlaneConeSection {
    VertexOnly,
    OneLine(Line),
    TwoLines(Line, Line),
    NotThroughVertex,
}

/// Classify how a plane through the vertex meets the cone.
pub fn plane_cone_classify(pl: &Plane, c: &Cone, mode: FieldMode) -> Result<PlaneConeSection> {
    if !in_plane(&c.vertex, pl) {
        return Ok(PlaneConeSection::NotThroughVertex);
    }
    let s = &c.slope;
    let a = cone_form(&pl.d1, &pl.d1, s);
    let bc = cone_form(&pl.d1, &pl.d2, s);
    let cc = cone_form(&pl.d2, &pl.d2, s);
    let disc = &bc.square() - &(&a * &cc);
    let through = |dir: Vector| Line::new(c.vertex.clone(), dir.normalized());
    let combo = |u: &Scalar, v: &Scalar| &pl.d1.scaled(u) + &pl.d2.scaled(v);
    match disc.signum() {
        s if s < 0 => Ok(PlaneConeSection::VertexOnly),
        0 => {
            if a.is_zero() && cc.is_zero() {
                return Err(Error::DegeneratePlane);
            }
            let dir = if a.is_zero() { pl.d1.clone() } else { combo(&-&bc, &a) };
            Ok(PlaneConeSection::OneLine(through(dir)?))
        }
        _ => {
            let (d_first, d_second) = if a.is_zero() {
                (pl.d1.clone(), combo(&-&cc, &(&bc + &bc)))
            } else {
                let r = disc.sqrt(mode)?;
                // Ratios a/b of the two null directions, ascending.
                let mut ratios = [&(&-&bc - &r) / &a, &(&-&bc + &r) / &a];
                ratios.sort();
                let [r1, r2] = ratios;
                (combo(&r1, &Scalar::one()), combo(&r2, &Scalar::one()))
            };
            Ok(PlaneConeSection::TwoLines(through(d_first)?, through(d_second)?))
        }
    }
}

/// Second spanning direction of the tangent plane along the generator `g`.
///
/// The choice depends only on the generator line (it is invariant under
/// `g -> -g` and positive scaling), so cones with the same slope and
/// parallel generators get parallel tangent planes.
fn tangent_direction(g: &Vector) -> Vector {
    let sigma = if g.dt.is_negative() { Scalar::from(-1) } else { Scalar::one() };
    let [gx, gy, gz] = g.spatial();
    let (ux, uy, uz) = (&sigma * &gx, &sigma * &gy, &sigma * &gz);
    let norm2 = spatial_dot(g, g);
    let z = Scalar::zero;
    let w = if uz.is_positive() {
        Vector::new(z(), &norm2 - &(&gx * &gx), -(&gx * &gy), -(&gx * &gz))
    } else if uz.is_negative() {
        Vector::new(z(), -(&gy * &gx), &norm2 - &(&gy * &gy), -(&gy * &gz))
    } else if uy.is_zero() && ux.is_negative() {
        Vector::new(z(), z(), z(), Scalar::one())
    } else {
        Vector::new(z(), gy.clone(), -&gx, z())
    };
    match w.to_array().into_iter().find(|c| !c.is_zero()) {
        Some(lead) if lead.is_negative() => w.neg(),
        _ => w,
    }
}

/// The tangent plane to `c` along the generator through `e`.
pub fn tangent_plane_at(e: &Point, c: &Cone) -> Result<Plane> {
    if e == &c.vertex {
        return Err(Error::VertexInput);
    }
    if !on_cone(e, c) {
        return Err(Error::NotOnCone);
    }
    let g = e - &c.vertex;
    let w = tangent_direction(&g);
    Plane::new(e.clone(), g, w)
}

fn dot3(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn parallel3(a: &[Scalar; 3], b: &[Scalar; 3]) -> bool {
    let pad = |v: &[Scalar; 3]| [Scalar::zero(), v[0].clone(), v[1].clone(), v[2].clone()];
    linalg::rank(&[pad(a), pad(b)]) <= 1
}

/// Points `G` of the plane span(b1, b2) in R^3 with `G.F = rhs` and `|G|^2 = r2`,
/// ordered along the line `G.F = rhs`.
fn circle_line_in_span(
    b1: &[Scalar; 3],
    b2: &[Scalar; 3],
    f: &[Scalar; 3],
    rhs: &Scalar,
    r2: &Scalar,
    mode: FieldMode,
) -> Result<Vec<[Scalar; 3]>> {
    let l0 = dot3(b1, f);
    let l1 = dot3(b2, f);
    let ll = &l0.square() + &l1.square();
    if ll.is_zero() {
        return Ok(vec![]);
    }
    let k = rhs / &ll;
    let (x0, y0) = (&k * &l0, &k * &l1);
    let (dx, dy) = (l1.clone(), -&l0);
    let m11 = dot3(b1, b1);
    let m12 = dot3(b1, b2);
    let m22 = dot3(b2, b2);
    let quad = |ax: &Scalar, ay: &Scalar, bx: &Scalar, by: &Scalar| {
        &(&(&m11 * &(ax * bx)) + &(&m12 * &(&(ax * by) + &(ay * bx)))) + &(&m22 * &(ay * by))
    };
    let qa = quad(&dx, &dy, &dx, &dy);
    let qb = &Scalar::from(2) * &quad(&x0, &y0, &dx, &dy);
    let qc = &quad(&x0, &y0, &x0, &y0) - r2;
    let Roots::Finite(ts) = solve_quadratic(&qa, &qb, &qc, mode)? else {
        return Ok(vec![]);
    };
    Ok(ts
        .iter()
        .map(|t| {
            let alpha = &x0 + &(t * &dx);
            let beta = &y0 + &(t * &dy);
            std::array::from_fn(|i| &(&alpha * &b1[i]) + &(&beta * &b2[i]))
        })
        .collect())
}

/// A point `e` on the cone whose tangent plane contains the outside point `f`.
///
/// The generator is normalized so that `e.t - vertex.t` equals the largest
/// spatial coordinate magnitude of `f - vertex` divided by the slope.
pub fn tangent_plane_through_outside(f: &Point, c: &Cone, mode: FieldMode) -> Result<(Point, Plane)> {
    if cone_classify(f, c) != ConeSide::OutsideCone {
        return Err(Error::NotOutside);
    }
    let fp = f - &c.vertex;
    let s = &c.slope;
    let s2 = s.square();
    let big_f = fp.spatial();
    let rhs = &s2 * &fp.dt;
    let tau = big_f.iter().map(Scalar::abs).fold(Scalar::zero(), Scalar::max) / s;
    let (o, i) = (Scalar::zero, Scalar::one);
    let xh = [i(), o(), o()];
    let yh = [o(), i(), o()];
    let zh = [o(), o(), i()];

    let mut branches: Vec<Result<Vec<[Scalar; 3]>>> = Vec::new();
    if big_f[2].is_zero() {
        branches.push(circle_line_in_span(&xh, &yh, &big_f, &rhs, &s2, mode));
    }
    branches.push(Ok(vec![[-s, o(), o()]]));
    for axis in [&xh, &yh] {
        let other = if parallel3(axis, &big_f) { zh.clone() } else { big_f.clone() };
        branches.push(circle_line_in_span(axis, &other, &big_f, &rhs, &s2, mode));
    }

    let mut missing_root = None;
    for branch in branches {
        let cands = match branch {
            Ok(c) => c,
            Err(err @ Error::NotEuclidean(_)) => {
                missing_root.get_or_insert(err);
                continue;
            }
            Err(err) => return Err(err),
        };
        for g in cands {
            let dir = Vector::new(i(), g[0].clone(), g[1].clone(), g[2].clone()).scaled(&tau);
            let e = &c.vertex + &dir;
            if e == c.vertex || !on_cone(&e, c) {
                continue;
            }
            let plane = tangent_plane_at(&e, c)?;
            if in_plane(f, &plane) {
                return Ok((e, plane));
            }
        }
    }
    Err(missing_root.unwrap_or_else(|| Error::PreconditionViolated("no tangent plane through the point".into())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LineConeMeet {
    Empty,
    Points(Vec<Point>),
    WholeLine,
}

/// Intersection of a line with a cone, ordered by line parameter.
pub fn line_cone_intersect(l: &Line, c: &Cone, mode: FieldMode) -> Result<LineConeMeet> {
    let b = &l.basepoint - &c.vertex;
    let d = &l.direction;
    let qa = cone_form(d, d, &c.slope);
    let qb = &Scalar::from(2) * &cone_form(&b, d, &c.slope);
    let qc = cone_form(&b, &b, &c.slope);
    Ok(match solve_quadratic(&qa, &qb, &qc, mode)? {
        Roots::All => LineConeMeet::WholeLine,
        Roots::Finite(ts) if ts.is_empty() => LineConeMeet::Empty,
        Roots::Finite(ts) => LineConeMeet::Points(ts.iter().map(|t| l.point_at(t)).collect()),
    })
}

/// Points `p` on the line through `e` and `g` with `space2(p,f) = s^2 time2(p,f)`,
/// where `e` and `f` are distinct points of the time axis and `g` is off it.
pub fn sloped_point_on_line(e: &Point, f: &Point, g: &Point, s: &Scalar, mode: FieldMode) -> Result<Vec<Point>> {
    if !on_axis_t(e) || !on_axis_t(f) {
        return Err(Error::PreconditionViolated("e and f must lie on the time axis".into()));
    }
    if e == f {
        return Err(Error::PreconditionViolated("e and f must differ".into()));
    }
    if on_axis_t(g) {
        return Err(Error::PreconditionViolated("g must lie off the time axis".into()));
    }
    if !s.is_positive() {
        return Err(Error::PreconditionViolated("slope must be positive".into()));
    }
    let line = line_joining(e, g)?;
    let cone = Cone::new(f.clone(), s.clone())?;
    match line_cone_intersect(&line, &cone, mode)? {
        LineConeMeet::Points(ps) => Ok(ps),
        // On the line, the form is negative at e and positive far away or where
        // the time separation vanishes, so a root always exists.
        LineConeMeet::Empty | LineConeMeet::WholeLine => {
            unreachable!("form changes sign along the line")
        }
    }
}

mod tagged {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct LineBody {
        base: Point,
        dir: Vector,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct LineTag {
        line: LineBody,
    }

    impl From<LineTag> for Line {
        fn from(t: LineTag) -> Line {
            Line { basepoint: t.line.base, direction: t.line.dir }
        }
    }

    impl From<Line> for LineTag {
        fn from(l: Line) -> LineTag {
            LineTag { line: LineBody { base: l.basepoint, dir: l.direction } }
        }
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct PlaneBody {
        base: Point,
        d1: Vector,
        d2: Vector,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct PlaneTag {
        plane: PlaneBody,
    }

    impl From<PlaneTag> for Plane {
        fn from(t: PlaneTag) -> Plane {
            Plane { basepoint: t.plane.base, d1: t.plane.d1, d2: t.plane.d2 }
        }
    }

    impl From<Plane> for PlaneTag {
        fn from(p: Plane) -> PlaneTag {
            PlaneTag { plane: PlaneBody { base: p.basepoint, d1: p.d1, d2: p.d2 } }
        }
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ConeBody {
        vertex: Point,
        slope: Scalar,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ConeTag {
        cone: ConeBody,
    }

    impl From<ConeTag> for Cone {
        fn from(t: ConeTag) -> Cone {
            Cone { vertex: t.cone.vertex, slope: t.cone.slope }
        }
    }

    impl From<Cone> for ConeTag {
        fn from(c: Cone) -> ConeTag {
            ConeTag { cone: ConeBody { vertex: c.vertex, slope: c.slope } }
        }
    }
}

#[cfg(test)]
mod tests;
