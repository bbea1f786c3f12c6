//! Sampled auditors for the axioms of special relativity.
//!
//! Each universally quantified axiom is evaluated on a deterministic grid plus
//! a seeded random stream derived from `(seed, axiom)`, so reports do not
//! depend on evaluation order. A failing report carries a [`Witness`] that
//! [`Witness::revalidate`] re-checks from the raw formula.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldMode, Scalar};
use crate::geometry::{
    collinear, in_plane, line_joining, on_axis_t, on_cone, parallel, plane_cone_classify, same_plane, space2,
    tangent_plane_at, tangent_plane_through_outside, time2, Cone, ConeSide, Plane, PlaneConeSection, Point, Vector,
};
use crate::linalg;
use crate::sampling::{self, SamplingConfig};
use crate::worldview::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    AxWVT,
    AxWVTSym,
    AxPh,
    AxEv,
    AxSelf,
    AxSym,
    AxEuclidean,
    AxLines,
    AxPlanes,
    AxCones,
    AxTangentBase,
    AxTangentVertex,
    AxConeTangent,
    AxParallelCones,
    AxParallelConesE,
}

impl AxiomId {
    /// Audit order.
    pub const ALL: [AxiomId; 15] = [
        AxiomId::AxWVT,
        AxiomId::AxWVTSym,
        AxiomId::AxPh,
        AxiomId::AxEv,
        AxiomId::AxSelf,
        AxiomId::AxSym,
        AxiomId::AxEuclidean,
        AxiomId::AxLines,
        AxiomId::AxPlanes,
        AxiomId::AxCones,
        AxiomId::AxTangentBase,
        AxiomId::AxTangentVertex,
        AxiomId::AxConeTangent,
        AxiomId::AxParallelCones,
        AxiomId::AxParallelConesE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::AxWVT => "AxWVT",
            AxiomId::AxWVTSym => "AxWVTSym",
            AxiomId::AxPh => "AxPh",
            AxiomId::AxEv => "AxEv",
            AxiomId::AxSelf => "AxSelf",
            AxiomId::AxSym => "AxSym",
            AxiomId::AxEuclidean => "AxEuclidean",
            AxiomId::AxLines => "AxLines",
            AxiomId::AxPlanes => "AxPlanes",
            AxiomId::AxCones => "AxCones",
            AxiomId::AxTangentBase => "AxTangentBase",
            AxiomId::AxTangentVertex => "AxTangentVertex",
            AxiomId::AxConeTangent => "AxConeTangent",
            AxiomId::AxParallelCones => "AxParallelCones",
            AxiomId::AxParallelConesE => "AxParallelConesE",
        }
    }

    fn index(self) -> u64 {
        AxiomId::ALL.iter().position(|&a| a == self).expect("listed") as u64
    }
}

impl std::fmt::Display for AxiomId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Pass,
    Fail,
    NotCheckable,
}

/// The instance of an axiom that failed, with both sides of the formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Witness {
    /// `m` sees photon `photon` at `x` and `y`, which are not lightlike for `m`.
    PhotonSpeed { observer: String, photon: String, x: Point, y: Point, space2: Scalar, bound: Scalar },
    /// Photon existence through `x`, `y` disagrees with `space2 = c^2 time2`.
    PhotonBiconditional { observer: String, x: Point, y: Point, photon_exists: bool, lightlike: bool },
    /// `m` sees `body` at `x` but `k` does not see it at `y = wvt k m x`, or vice versa.
    Event { m: String, k: String, body: String, x: Point, y: Point, seen_by_m: bool, seen_by_k: bool },
    /// The observer sees itself off its time axis.
    SelfOffAxis { observer: String, x: Point },
    /// Two events simultaneous for both observers at different spatial distances.
    Symmetry { m: String, k: String, x: Point, y: Point, xk: Point, yk: Point, space2_m: Scalar, space2_k: Scalar },
    /// `W k b x` and `W m b (wvt m k x)` differ.
    Worldview { m: String, k: String, body: String, x: Point, image: Point, seen_by_k: bool, seen_by_m: bool },
    /// `y = wvt k m x` but `wvt m k y` is not `x`.
    WorldviewSymmetry { m: String, k: String, x: Point, y: Point, back: Point },
    /// Collinear points of `k` whose images for `m` are not collinear.
    Collinearity { m: String, k: String, points: Vec<Point>, images: Vec<Point> },
    /// Coplanar points of `k` whose images for `m` are not coplanar.
    Coplanarity { m: String, k: String, points: Vec<Point>, images: Vec<Point> },
    /// A point of `k`'s lightcone whose image is off `m`'s lightcone at the image vertex.
    ConeImage { m: String, k: String, cone: Cone, point: Point, image: Point, image_cone: Cone },
    /// A nonnegative quantity with no square root in the field.
    NoSquareRoot { x: Scalar },
    TangentBase { cone: Cone, e: Point, plane: Plane },
    TangentVertex { cone: Cone, e: Point, plane: Plane },
    /// The tangent plane meets the cone outside the generator (or `point` is a
    /// plane point where cone membership and generator membership disagree).
    ConeTangent { cone: Cone, e: Point, plane: Plane, point: Option<Point> },
    ParallelCones { econe: Cone, e: Point, fcone: Cone, f: Point },
    /// No tangent plane through the outside point `f` was produced, or the
    /// produced `e` does not qualify.
    ParallelConesE { cone: Cone, f: Point, e: Option<Point> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub verdict: Verdict,
    pub instances_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Outcome of auditing every axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Audit {
    pub reports: Vec<AxiomReport>,
    pub pass: bool,
}

impl Audit {
    pub fn failing(&self) -> Vec<AxiomId> {
        self.reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.axiom).collect()
    }
}

/// Evaluation state for one axiom: the model, the sampling bounds and a private RNG.
struct Ctx<'a> {
    model: &'a Model,
    cfg: &'a SamplingConfig,
    rng: ChaCha8Rng,
    checked: u64,
    notes: Vec<String>,
}

type Found = Option<Witness>;

fn stream_seed(seed: u64, axiom: AxiomId) -> u64 {
    // splitmix64 finalizer over the pair.
    let mut z = seed ^ (axiom.index() + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl<'a> Ctx<'a> {
    fn radius(&self) -> i64 {
        self.cfg.grid_radius as i64
    }

    fn num_bound(&self) -> i64 {
        self.radius() + 2
    }

    fn den_bound(&self) -> i64 {
        self.cfg.denominator_bound.max(1) as i64
    }

    fn grid(&self) -> Vec<Point> {
        let r = self.radius();
        let mut out = Vec::new();
        for t in -r..=r {
            for x in -r..=r {
                for y in -r..=r {
                    for z in -r..=r {
                        out.push(Point::ints([t, x, y, z]));
                    }
                }
            }
        }
        out
    }

    fn random_points(&mut self, n: u32) -> Vec<Point> {
        let (nb, db) = (self.num_bound(), self.den_bound());
        (0..n).map(|_| sampling::point(&mut self.rng, nb, db)).collect()
    }

    fn points(&mut self) -> Vec<Point> {
        let mut pts = self.grid();
        pts.extend(self.random_points(self.cfg.random_count));
        pts
    }

    fn rational(&mut self) -> Scalar {
        let (nb, db) = (self.num_bound(), self.den_bound());
        sampling::rational(&mut self.rng, nb, db)
    }

    fn nonzero(&mut self) -> Scalar {
        let (nb, db) = (self.num_bound(), self.den_bound());
        sampling::nonzero_rational(&mut self.rng, nb, db)
    }

    fn nonzero_vector(&mut self) -> Vector {
        let (nb, db) = (self.num_bound(), self.den_bound());
        sampling::nonzero_vector(&mut self.rng, nb, db)
    }

    fn params(&mut self) -> Vec<Scalar> {
        let r = self.radius();
        let mut ts: Vec<Scalar> = (-r..=r).map(Scalar::from).collect();
        for _ in 0..(self.cfg.random_count / 4).max(2) {
            ts.push(self.rational());
        }
        ts
    }

    /// Points at which `viewer` sees `body`, one per sampled worldline parameter.
    fn sightings(&mut self, viewer: &str, body: &str) -> Result<Vec<Point>> {
        let model = self.model;
        let fv = model.frame(viewer)?;
        let b = model.body(body)?;
        let params = self.params();
        Ok(match &b.worldline {
            Some(l) => params.iter().map(|t| fv.apply(&l.point_at(t))).collect(),
            None => {
                let fb = model.frame(body)?;
                params
                    .iter()
                    .map(|t| fv.apply(&fb.apply_inverse(&Point::new(t.clone(), Scalar::zero(), Scalar::zero(), Scalar::zero()))))
                    .collect()
            }
        })
    }

    fn random_cone(&mut self, slopes: &[Scalar]) -> Cone {
        let vertex = self.random_points(1).remove(0);
        let slope = if !slopes.is_empty() && rand::Rng::gen_bool(&mut self.rng, 0.5) {
            slopes[rand::Rng::gen_range(&mut self.rng, 0..slopes.len())].clone()
        } else {
            let db = self.den_bound();
            sampling::positive_rational(&mut self.rng, 3, db)
        };
        Cone::new(vertex, slope).expect("positive slope")
    }

    fn on_cone(&mut self, cone: &Cone) -> Point {
        let (nb, db) = (self.num_bound(), self.den_bound());
        sampling::on_cone(&mut self.rng, cone, nb, db)
    }

    fn pairs(&self) -> Result<Vec<(String, String)>> {
        let obs = self.model.observers();
        if obs.is_empty() {
            return Err(Error::NotApplicable("model has no observers".into()));
        }
        Ok(obs.iter().flat_map(|m| obs.iter().map(move |k| (m.to_string(), k.to_string()))).collect())
    }

    fn tick(&mut self) {
        self.checked += 1;
    }
}

/// Audit one axiom against a model.
pub fn check_axiom(model: &Model, axiom: AxiomId, cfg: &SamplingConfig) -> Result<AxiomReport> {
    if cfg.random_count == 0 || cfg.denominator_bound == 0 {
        return Err(Error::Schema("sampling counts must be positive".into()));
    }
    let mut cx = Ctx {
        model,
        cfg,
        rng: ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, axiom)),
        checked: 0,
        notes: Vec::new(),
    };
    let found = match axiom {
        AxiomId::AxWVT => ax_wvt(&mut cx)?,
        AxiomId::AxWVTSym => ax_wvt_sym(&mut cx)?,
        AxiomId::AxPh => ax_ph(&mut cx)?,
        AxiomId::AxEv => ax_ev(&mut cx)?,
        AxiomId::AxSelf => ax_self(&mut cx)?,
        AxiomId::AxSym => ax_sym(&mut cx)?,
        AxiomId::AxEuclidean => ax_euclidean(&mut cx)?,
        AxiomId::AxLines => ax_lines(&mut cx)?,
        AxiomId::AxPlanes => ax_planes(&mut cx)?,
        AxiomId::AxCones => ax_cones(&mut cx)?,
        AxiomId::AxTangentBase | AxiomId::AxTangentVertex | AxiomId::AxConeTangent => ax_tangent(&mut cx, axiom)?,
        AxiomId::AxParallelCones => ax_parallel_cones(&mut cx)?,
        AxiomId::AxParallelConesE => ax_parallel_cones_e(&mut cx)?,
    };
    let existential_gap = axiom == AxiomId::AxPh && !model.photon_plenum();
    let verdict = match &found {
        Some(_) => Verdict::Fail,
        None if cx.checked == 0 || existential_gap => Verdict::NotCheckable,
        None => Verdict::Pass,
    };
    Ok(AxiomReport { axiom, verdict, instances_checked: cx.checked, counterexample: found, notes: cx.notes })
}

/// Audit every axiom in a fixed order. Axioms are evaluated concurrently; each
/// has its own random stream, so the result does not depend on scheduling.
pub fn audit_all(model: &Model, cfg: &SamplingConfig) -> Audit {
    let reports: Vec<AxiomReport> = AxiomId::ALL
        .par_iter()
        .map(|&a| {
            check_axiom(model, a, cfg).unwrap_or_else(|e| AxiomReport {
                axiom: a,
                verdict: Verdict::NotCheckable,
                instances_checked: 0,
                counterexample: None,
                notes: vec![e.to_string()],
            })
        })
        .collect();
    let pass = reports.iter().all(|r| r.verdict != Verdict::Fail);
    Audit { reports, pass }
}

fn ax_wvt(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    let bodies: Vec<String> = model.bodies().iter().map(|b| b.id.clone()).collect();
    for (m, k) in cx.pairs()? {
        for b in &bodies {
            let mut xs = cx.sightings(&k, b)?;
            xs.extend(cx.points());
            for x in xs {
                cx.tick();
                let image = model.wvt(&m, &k, &x)?;
                let seen_by_k = model.w(&k, b, &x)?;
                let seen_by_m = model.w(&m, b, &image)?;
                if seen_by_k != seen_by_m {
                    return Ok(Some(Witness::Worldview { m, k, body: b.clone(), x, image, seen_by_k, seen_by_m }));
                }
            }
        }
    }
    Ok(None)
}

fn ax_wvt_sym(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    for (m, k) in cx.pairs()? {
        for x in cx.points() {
            cx.tick();
            let y = model.wvt(&k, &m, &x)?;
            let back = model.wvt(&m, &k, &y)?;
            if back != x {
                return Ok(Some(Witness::WorldviewSymmetry { m, k, x, y, back }));
            }
            // The converse: a different y does not map back to x.
            let other = &y + &cx.nonzero_vector();
            let back = model.wvt(&m, &k, &other)?;
            if back == x {
                return Ok(Some(Witness::WorldviewSymmetry { m, k, x, y: other, back }));
            }
        }
    }
    Ok(None)
}

fn ax_ph(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    let observers: Vec<String> = model.observers().iter().map(|s| s.to_string()).collect();
    if observers.is_empty() {
        return Err(Error::NotApplicable("model has no observers".into()));
    }
    let photons: Vec<String> = model.bodies().iter().filter(|b| b.ph).map(|b| b.id.clone()).collect();
    // Every sighted photon moves at the observer's light speed.
    for m in &observers {
        let c2 = model.c_of(m)?.square();
        for ph in &photons {
            let seen = cx.sightings(m, ph)?;
            for pair in seen.windows(2) {
                cx.tick();
                let (x, y) = (&pair[0], &pair[1]);
                let bound = &c2 * &time2(x, y);
                if space2(x, y) != bound {
                    return Ok(Some(Witness::PhotonSpeed {
                        observer: m.clone(),
                        photon: ph.clone(),
                        x: x.clone(),
                        y: y.clone(),
                        space2: space2(x, y),
                        bound,
                    }));
                }
            }
        }
    }
    if !model.photon_plenum() {
        cx.notes.push("existential direction needs a photon plenum; lightlike-speed sub-check only".into());
        return Ok(None);
    }
    let reference = observers[0].clone();
    let c_ref = model.c_of(&reference)?;
    let db = cx.den_bound();
    for m in &observers {
        let c = model.c_of(m)?;
        for x in cx.points() {
            let u = sampling::unit_vector(&mut cx.rng, db);
            let tau = cx.nonzero();
            let r = &tau * &c;
            let own = &x + &Vector::new(tau.clone(), &r * &u[0], &r * &u[1], &r * &u[2]);
            // A pair that is lightlike for the reference observer, seen by m.
            let xr = model.wvt(&reference, m, &x)?;
            let u2 = sampling::unit_vector(&mut cx.rng, db);
            let rr = &tau * &c_ref;
            let yr = &xr + &Vector::new(tau.clone(), &rr * &u2[0], &rr * &u2[1], &rr * &u2[2]);
            let theirs = model.wvt(m, &reference, &yr)?;
            let random = &x + &cx.nonzero_vector();
            for y in [own, theirs, random] {
                cx.tick();
                let photon_exists = model.photon_through(m, &x, &y)?;
                let lightlike = space2(&x, &y) == &c.square() * &time2(&x, &y);
                if photon_exists != lightlike {
                    return Ok(Some(Witness::PhotonBiconditional { observer: m.clone(), x, y, photon_exists, lightlike }));
                }
            }
        }
    }
    Ok(None)
}

fn ax_ev(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    let bodies: Vec<String> = model.bodies().iter().map(|b| b.id.clone()).collect();
    for (m, k) in cx.pairs()? {
        let mut xs = cx.points();
        for b in &bodies {
            xs.extend(cx.sightings(&m, b)?);
        }
        for x in xs {
            let y = model.wvt(&k, &m, &x)?;
            for b in &bodies {
                cx.tick();
                let seen_by_m = model.w(&m, b, &x)?;
                let seen_by_k = model.w(&k, b, &y)?;
                if seen_by_m != seen_by_k {
                    return Ok(Some(Witness::Event { m, k, body: b.clone(), x, y, seen_by_m, seen_by_k }));
                }
            }
        }
    }
    Ok(None)
}

fn ax_self(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    let observers: Vec<String> = model.observers().iter().map(|s| s.to_string()).collect();
    if observers.is_empty() {
        return Err(Error::NotApplicable("model has no observers".into()));
    }
    for m in observers {
        let mut xs = cx.sightings(&m, &m)?;
        xs.extend(cx.points().into_iter().filter(|x| model.w(&m, &m, x).unwrap_or(false)));
        for x in xs {
            cx.tick();
            if !model.w(&m, &m, &x)? {
                continue;
            }
            if !on_axis_t(&x) {
                return Ok(Some(Witness::SelfOffAxis { observer: m, x }));
            }
        }
    }
    Ok(None)
}

/// Spatial displacements `d` (with `d.t = 0`) that keep the `k`-time of `x + d`
/// equal to that of `x`, assuming the coordinate change is affine near `x`.
fn simultaneous_basis(model: &Model, m: &str, k: &str, x: &Point) -> Result<Vec<[Scalar; 3]>> {
    let base = model.wvt(k, m, x)?;
    let row: [Scalar; 3] = std::array::from_fn(|j| {
        let mut e = [0i64; 4];
        e[j + 1] = 1;
        let moved = model.wvt(k, m, &(x + &Vector::ints(e))).expect("observers checked");
        &moved.t - &base.t
    });
    let axes: [[Scalar; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from(if i == j { 1 } else { 0 })));
    let cross = |a: &[Scalar; 3], b: &[Scalar; 3]| -> [Scalar; 3] {
        [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ]
    };
    if row.iter().all(Scalar::is_zero) {
        return Ok(axes.to_vec());
    }
    let mut basis: Vec<[Scalar; 3]> = Vec::new();
    for a in &axes {
        let c = cross(&row, a);
        let pad = |v: &[Scalar; 3]| [Scalar::zero(), v[0].clone(), v[1].clone(), v[2].clone()];
        let mut rows: Vec<[Scalar; 4]> = basis.iter().map(pad).collect();
        rows.push(pad(&c));
        if linalg::rank(&rows) == rows.len() {
            basis.push(c);
        }
        if basis.len() == 2 {
            break;
        }
    }
    Ok(basis)
}

fn ax_sym(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    let mut skipped = 0u64;
    for (m, k) in cx.pairs()? {
        for x in cx.points() {
            let basis = simultaneous_basis(model, &m, &k, &x)?;
            let mut d = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
            for b in &basis {
                let coef = cx.rational();
                for i in 0..3 {
                    d[i] = &d[i] + &(&coef * &b[i]);
                }
            }
            let [dx, dy, dz] = d;
            let y = &x + &Vector::new(Scalar::zero(), dx, dy, dz);
            let xk = model.wvt(&k, &m, &x)?;
            let yk = model.wvt(&k, &m, &y)?;
            if xk.t != yk.t {
                skipped += 1;
                continue;
            }
            cx.tick();
            let (space2_m, space2_k) = (space2(&x, &y), space2(&xk, &yk));
            if space2_m != space2_k {
                return Ok(Some(Witness::Symmetry { m, k, x, y, xk, yk, space2_m, space2_k }));
            }
        }
    }
    if skipped > 0 {
        cx.notes.push(format!("{skipped} generated pairs were not simultaneous for both observers (non-affine map)"));
    }
    Ok(None)
}

fn ax_euclidean(cx: &mut Ctx) -> Result<Found> {
    let mode = cx.model.field_mode;
    let r = cx.radius().max(2);
    let mut xs: Vec<Scalar> = vec![Scalar::from(2)];
    xs.extend((0..=r * r).map(Scalar::from));
    for _ in 0..cx.cfg.random_count {
        xs.push(cx.rational().abs());
    }
    if mode == FieldMode::Euclidean {
        let roots: Vec<Scalar> = xs.iter().take(6).map(|x| x.sqrt(mode)).collect::<Result<_>>()?;
        xs.extend(roots.iter().map(|s| s + &Scalar::one()));
    }
    for x in xs {
        cx.tick();
        match x.sqrt(mode) {
            Ok(s) if !s.is_negative() && &s * &s == x => {}
            Ok(_) => return Err(Error::PreconditionViolated(format!("square root of {x} is wrong"))),
            Err(Error::NotEuclidean(_)) => return Ok(Some(Witness::NoSquareRoot { x })),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn ax_lines(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    for (m, k) in cx.pairs()? {
        for p in cx.points() {
            cx.tick();
            let d = cx.nonzero_vector();
            let lambda = cx.nonzero();
            let points = vec![p.clone(), &p + &d, &p + &d.scaled(&lambda)];
            let images = points.iter().map(|q| model.wvt(&m, &k, q)).collect::<Result<Vec<_>>>()?;
            if !collinear(&images[0], &images[1], &images[2]) {
                return Ok(Some(Witness::Collinearity { m, k, points, images }));
            }
        }
    }
    Ok(None)
}

fn coplanar(ps: &[Point]) -> bool {
    let diffs: Vec<[Scalar; 4]> = ps[1..].iter().map(|q| (q - &ps[0]).to_array()).collect();
    linalg::rank(&diffs) <= 2
}

fn ax_planes(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    for (m, k) in cx.pairs()? {
        for p in cx.points() {
            cx.tick();
            let d1 = cx.nonzero_vector();
            let d2 = cx.nonzero_vector();
            let (a, b) = (cx.rational(), cx.rational());
            let points = vec![p.clone(), &p + &d1, &p + &d2, &(&p + &d1.scaled(&a)) + &d2.scaled(&b)];
            let images = points.iter().map(|q| model.wvt(&m, &k, q)).collect::<Result<Vec<_>>>()?;
            if !coplanar(&images) {
                return Ok(Some(Witness::Coplanarity { m, k, points, images }));
            }
        }
    }
    Ok(None)
}

fn ax_cones(cx: &mut Ctx) -> Result<Found> {
    let model = cx.model;
    for (m, k) in cx.pairs()? {
        for v in cx.points() {
            let cone = model.lightcone_at(&k, &v)?;
            let image_cone = model.lightcone_at(&m, &model.wvt(&m, &k, &v)?)?;
            for _ in 0..2 {
                cx.tick();
                let point = cx.on_cone(&cone);
                let image = model.wvt(&m, &k, &point)?;
                if !on_cone(&image, &image_cone) {
                    return Ok(Some(Witness::ConeImage { m, k, cone, point, image, image_cone }));
                }
            }
        }
    }
    Ok(None)
}

fn slopes(model: &Model) -> Vec<Scalar> {
    model.light_speeds().values().cloned().collect()
}

fn cone_count(cx: &Ctx) -> u32 {
    cx.cfg.random_count.max(8) * 2
}

fn ax_tangent(cx: &mut Ctx, axiom: AxiomId) -> Result<Found> {
    let slopes = slopes(cx.model);
    let mode = cx.model.field_mode;
    for _ in 0..cone_count(cx) {
        let cone = cx.random_cone(&slopes);
        let e = cx.on_cone(&cone);
        let plane = tangent_plane_at(&e, &cone)?;
        cx.tick();
        match axiom {
            AxiomId::AxTangentBase => {
                if plane.basepoint != e {
                    return Ok(Some(Witness::TangentBase { cone, e, plane }));
                }
            }
            AxiomId::AxTangentVertex => {
                if !in_plane(&cone.vertex, &plane) {
                    return Ok(Some(Witness::TangentVertex { cone, e, plane }));
                }
            }
            _ => {
                let generator = line_joining(&cone.vertex, &e)?;
                let meets_in_generator = match plane_cone_classify(&plane, &cone, mode)? {
                    PlaneConeSection::OneLine(l) => l.same_line(&generator),
                    _ => false,
                };
                if !meets_in_generator {
                    return Ok(Some(Witness::ConeTangent { cone, e, plane, point: None }));
                }
                for _ in 0..3 {
                    let (a, b) = (cx.rational(), cx.rational());
                    let point = &(&plane.basepoint + &plane.d1.scaled(&a)) + &plane.d2.scaled(&b);
                    if on_cone(&point, &cone) != collinear(&cone.vertex, &e, &point) {
                        return Ok(Some(Witness::ConeTangent { cone, e, plane, point: Some(point) }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn ax_parallel_cones(cx: &mut Ctx) -> Result<Found> {
    let slopes = slopes(cx.model);
    for _ in 0..cone_count(cx) {
        let econe = cx.random_cone(&slopes);
        let e = cx.on_cone(&econe);
        let pe = tangent_plane_at(&e, &econe)?;
        let (a, b) = (cx.rational(), cx.rational());
        let fv = &(&pe.basepoint + &pe.d1.scaled(&a)) + &pe.d2.scaled(&b);
        let fcone = Cone::new(fv, econe.slope.clone())?;
        let mu = cx.nonzero();
        let f = &fcone.vertex + &(&e - &econe.vertex).scaled(&mu);
        cx.tick();
        if !parallel_cones_hold(&econe, &e, &fcone, &f)? {
            return Ok(Some(Witness::ParallelCones { econe, e, fcone, f }));
        }
    }
    Ok(None)
}

/// The conclusion of the parallel-cones axiom for one instance.
fn parallel_cones_hold(econe: &Cone, e: &Point, fcone: &Cone, f: &Point) -> Result<bool> {
    let pe = tangent_plane_at(e, econe)?;
    let pf = tangent_plane_at(f, fcone)?;
    Ok(same_plane(&pe, &pf) && parallel(&line_joining(&econe.vertex, e)?, &line_joining(&fcone.vertex, f)?))
}

fn ax_parallel_cones_e(cx: &mut Ctx) -> Result<Found> {
    let slopes = slopes(cx.model);
    let mode = cx.model.field_mode;
    let mut deferred = 0u64;
    for i in 0..cone_count(cx) {
        let cone = cx.random_cone(&slopes);
        let f = if i % 2 == 0 {
            let (nb, db) = (cx.num_bound(), cx.den_bound());
            sampling::outside_cone(&mut cx.rng, &cone, nb, db)
        } else {
            // Outside points built from a known tangent plane, so rational
            // solutions exist.
            let e = cx.on_cone(&cone);
            let pl = tangent_plane_at(&e, &cone)?;
            let (a, b) = (cx.rational(), cx.nonzero());
            &(&pl.basepoint + &pl.d1.scaled(&a)) + &pl.d2.scaled(&b)
        };
        match tangent_plane_through_outside(&f, &cone, mode) {
            Ok((e, _)) => {
                cx.tick();
                if !tangent_through_holds(&cone, &f, &e) {
                    return Ok(Some(Witness::ParallelConesE { cone, f, e: Some(e) }));
                }
            }
            Err(Error::NotEuclidean(_)) if mode == FieldMode::Rational => deferred += 1,
            Err(_) => {
                cx.tick();
                return Ok(Some(Witness::ParallelConesE { cone, f, e: None }));
            }
        }
    }
    if deferred > 0 {
        cx.notes.push(format!("{deferred} instances need square roots outside the rational field (see AxEuclidean)"));
    }
    Ok(None)
}

fn tangent_through_holds(cone: &Cone, f: &Point, e: &Point) -> bool {
    e != &cone.vertex
        && on_cone(e, cone)
        && tangent_plane_at(e, cone).map(|pl| in_plane(f, &pl)).unwrap_or(false)
}

impl Witness {
    /// Re-evaluate the violated formula on `model`; true when the violation is real.
    pub fn revalidate(&self, model: &Model) -> bool {
        self.recheck(model).unwrap_or(false)
    }

    fn recheck(&self, model: &Model) -> Result<bool> {
        Ok(match self {
            Witness::PhotonSpeed { observer, photon, x, y, .. } => {
                model.body(photon)?.ph
                    && model.w(observer, photon, x)?
                    && model.w(observer, photon, y)?
                    && space2(x, y) != &model.c_of(observer)?.square() * &time2(x, y)
            }
            Witness::PhotonBiconditional { observer, x, y, .. } => {
                let c2 = model.c_of(observer)?.square();
                model.photon_through(observer, x, y)? != (space2(x, y) == &c2 * &time2(x, y))
            }
            Witness::Event { m, k, body, x, y, .. } => {
                *y == model.wvt(k, m, x)? && model.w(m, body, x)? != model.w(k, body, y)?
            }
            Witness::SelfOffAxis { observer, x } => model.w(observer, observer, x)? && !on_axis_t(x),
            Witness::Symmetry { m, k, x, y, xk, yk, .. } => {
                *xk == model.wvt(k, m, x)?
                    && *yk == model.wvt(k, m, y)?
                    && x.t == y.t
                    && xk.t == yk.t
                    && space2(x, y) != space2(xk, yk)
            }
            Witness::Worldview { m, k, body, x, image, .. } => {
                *image == model.wvt(m, k, x)? && model.w(k, body, x)? != model.w(m, body, image)?
            }
            Witness::WorldviewSymmetry { m, k, x, y, .. } => {
                (*y == model.wvt(k, m, x)?) != (*x == model.wvt(m, k, y)?)
            }
            Witness::Collinearity { m, k, points, images } => {
                points.len() == 3
                    && collinear(&points[0], &points[1], &points[2])
                    && images_match(model, m, k, points, images)?
                    && !collinear(&images[0], &images[1], &images[2])
            }
            Witness::Coplanarity { m, k, points, images } => {
                points.len() == 4 && coplanar(points) && images_match(model, m, k, points, images)? && !coplanar(images)
            }
            Witness::ConeImage { m, k, cone, point, image, image_cone } => {
                *cone == model.lightcone_at(k, &cone.vertex)?
                    && *image_cone == model.lightcone_at(m, &model.wvt(m, k, &cone.vertex)?)?
                    && on_cone(point, cone)
                    && *image == model.wvt(m, k, point)?
                    && !on_cone(image, image_cone)
            }
            Witness::NoSquareRoot { x } => {
                !x.is_negative() && matches!(x.sqrt(model.field_mode), Err(Error::NotEuclidean(_)))
            }
            Witness::TangentBase { cone, e, plane } => {
                *plane == tangent_plane_at(e, cone)? && plane.basepoint != *e
            }
            Witness::TangentVertex { cone, e, plane } => {
                *plane == tangent_plane_at(e, cone)? && !in_plane(&cone.vertex, plane)
            }
            Witness::ConeTangent { cone, e, plane, point } => {
                *plane == tangent_plane_at(e, cone)?
                    && match point {
                        Some(q) => in_plane(q, plane) && on_cone(q, cone) != collinear(&cone.vertex, e, q),
                        None => {
                            let generator = line_joining(&cone.vertex, e)?;
                            !matches!(plane_cone_classify(plane, cone, model.field_mode)?,
                                PlaneConeSection::OneLine(l) if l.same_line(&generator))
                        }
                    }
            }
            Witness::ParallelCones { econe, e, fcone, f } => {
                on_cone(e, econe)
                    && e != &econe.vertex
                    && on_cone(f, fcone)
                    && f != &fcone.vertex
                    && econe.slope == fcone.slope
                    && in_plane(f, &tangent_plane_at(e, econe)?)
                    && in_plane(&fcone.vertex, &tangent_plane_at(e, econe)?)
                    && !parallel_cones_hold(econe, e, fcone, f)?
            }
            Witness::ParallelConesE { cone, f, e } => {
                crate::geometry::cone_classify(f, cone) == ConeSide::OutsideCone
                    && match e {
                        Some(e) => !tangent_through_holds(cone, f, e),
                        None => tangent_plane_through_outside(f, cone, model.field_mode).is_err(),
                    }
            }
        })
    }
}

fn images_match(model: &Model, m: &str, k: &str, points: &[Point], images: &[Point]) -> Result<bool> {
    if points.len() != images.len() {
        return Ok(false);
    }
    for (p, q) in points.iter().zip(images) {
        if model.wvt(m, k, p)? != *q {
            return Ok(false);
        }
    }
    Ok(true)
}
