//! Bodies, observers' coordinate maps, and the worldview relation.
//!
//! A [`Model`] fixes a world chart. Bodies carry worldlines in that chart and
//! each inertial observer carries a [`CoordinateMap`] from world coordinates
//! to its own. `W m b p` holds when `p`, read back into the world chart
//! through `m`'s map, lies on `b`'s worldline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldMode, Scalar};
use crate::geometry::{on_axis_t, space2, time2, Cone, Line, Point, Vector};
use crate::linalg::{self, Mat4};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Body {
    pub id: String,
    #[serde(default)]
    pub ph: bool,
    #[serde(default)]
    pub iob: bool,
    /// World-chart worldline. Observers may omit it, in which case they are
    /// seen exactly where their own map sends them to the time axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worldline: Option<Line>,
}

impl Body {
    pub fn observer(id: &str, worldline: Option<Line>) -> Body {
        Body { id: id.into(), ph: false, iob: true, worldline }
    }

    pub fn photon(id: &str, worldline: Line) -> Body {
        Body { id: id.into(), ph: true, iob: false, worldline: Some(worldline) }
    }
}

/// `p[target] += coeff * p[source]^2`, applied in world coordinates before the
/// affine part. Bijective for `target != source`; used to build deliberately
/// non-affine maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Warp {
    pub target: usize,
    pub source: usize,
    pub coeff: Scalar,
}

impl Warp {
    fn apply(&self, p: &[Scalar; 4], sign: i64) -> [Scalar; 4] {
        let mut out = p.clone();
        let bump = &(&Scalar::from(sign) * &self.coeff) * &p[self.source].square();
        out[self.target] = &out[self.target] + &bump;
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    linear: Mat4,
    translation: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    warp: Option<Warp>,
}

/// World coordinates to observer coordinates: `p -> linear * warp(p) + translation`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct CoordinateMap {
    linear: Mat4,
    translation: Vector,
    warp: Option<Warp>,
    inverse: Mat4,
}

impl PartialEq for CoordinateMap {
    fn eq(&self, other: &CoordinateMap) -> bool {
        self.linear == other.linear && self.translation == other.translation && self.warp == other.warp
    }
}

impl Eq for CoordinateMap {}

impl TryFrom<RawMap> for CoordinateMap {
    type Error = Error;
    fn try_from(r: RawMap) -> Result<CoordinateMap> {
        let mut m = CoordinateMap::new(r.linear, r.translation)?;
        if let Some(w) = r.warp {
            m = m.with_warp(w)?;
        }
        Ok(m)
    }
}

impl From<CoordinateMap> for RawMap {
    fn from(m: CoordinateMap) -> RawMap {
        RawMap { linear: m.linear, translation: m.translation, warp: m.warp }
    }
}

impl CoordinateMap {
    pub fn new(linear: Mat4, translation: Vector) -> Result<CoordinateMap> {
        let inverse = linalg::invert(&linear)?;
        Ok(CoordinateMap { linear, translation, warp: None, inverse })
    }

    pub fn identity() -> CoordinateMap {
        CoordinateMap::new(linalg::identity(), Vector::zero()).expect("identity is invertible")
    }

    pub fn with_warp(mut self, warp: Warp) -> Result<CoordinateMap> {
        if warp.target >= 4 || warp.source >= 4 || warp.target == warp.source {
            return Err(Error::Schema("warp needs distinct target and source coordinates below 4".into()));
        }
        self.warp = Some(warp);
        Ok(self)
    }

    pub fn linear(&self) -> &Mat4 {
        &self.linear
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn is_affine(&self) -> bool {
        self.warp.is_none()
    }

    /// Replace one entry of the linear part.
    pub fn perturbed(&self, row: usize, col: usize, delta: &Scalar) -> Result<CoordinateMap> {
        let mut linear = self.linear.clone();
        linear[row][col] = &linear[row][col] + delta;
        let mut m = CoordinateMap::new(linear, self.translation.clone())?;
        m.warp = self.warp.clone();
        Ok(m)
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut v = p.to_array();
        if let Some(w) = &self.warp {
            v = w.apply(&v, 1);
        }
        let image = linalg::mat_vec(&self.linear, &v);
        &Point::from(image) + &self.translation
    }

    pub fn apply_inverse(&self, p: &Point) -> Point {
        let shifted = (p - &Point::from(self.translation.to_array())).to_array();
        let v = linalg::mat_vec(&self.inverse, &shifted);
        match &self.warp {
            Some(w) => Point::from(w.apply(&v, -1)),
            None => Point::from(v),
        }
    }

    /// The affine map with `linear * p + translation`, inverted exactly.
    pub fn inverse(&self) -> Result<CoordinateMap> {
        if self.warp.is_some() {
            return Err(Error::PreconditionViolated("inverse of a warped map is not affine".into()));
        }
        let t = linalg::mat_vec(&self.inverse, &self.translation.to_array());
        CoordinateMap::new(self.inverse.clone(), Vector::from(t).neg())
    }
}

/// A concrete model: bodies, observer frames and declared light speeds.
#[derive(Debug, Clone)]
pub struct Model {
    pub field_mode: FieldMode,
    bodies: Vec<Body>,
    index: BTreeMap<String, usize>,
    frames: BTreeMap<String, CoordinateMap>,
    light_speed: BTreeMap<String, Scalar>,
    photon_plenum: bool,
}

impl Model {
    pub fn new(
        field_mode: FieldMode,
        bodies: Vec<Body>,
        frames: BTreeMap<String, CoordinateMap>,
        light_speed: BTreeMap<String, Scalar>,
        photon_plenum: bool,
    ) -> Result<Model> {
        let mut index = BTreeMap::new();
        for (i, b) in bodies.iter().enumerate() {
            if index.insert(b.id.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate body id {:?}", b.id)));
            }
            if b.iob {
                if !frames.contains_key(&b.id) {
                    return Err(Error::Schema(format!("observer {:?} has no frame", b.id)));
                }
                match light_speed.get(&b.id) {
                    None => return Err(Error::Schema(format!("observer {:?} has no light speed", b.id))),
                    Some(c) if !c.is_positive() => {
                        return Err(Error::Schema(format!("light speed of {:?} must be positive", b.id)))
                    }
                    Some(_) => {}
                }
            } else if b.worldline.is_none() {
                return Err(Error::Schema(format!("body {:?} needs a worldline", b.id)));
            }
            if let Some(l) = &b.worldline {
                if l.direction.is_zero() {
                    return Err(Error::Schema(format!("worldline of {:?} has zero direction", b.id)));
                }
            }
        }
        for id in frames.keys().chain(light_speed.keys()) {
            match index.get(id) {
                Some(&i) if bodies[i].iob => {}
                _ => return Err(Error::Schema(format!("frame or light speed given for non-observer {id:?}"))),
            }
        }
        if field_mode == FieldMode::Rational {
            let rational_map = |m: &CoordinateMap| {
                m.linear.iter().flatten().all(Scalar::is_rational) && m.translation.to_array().iter().all(Scalar::is_rational)
            };
            let rational_line = |l: &Line| l.basepoint.is_rational() && Vector::to_array(&l.direction).iter().all(Scalar::is_rational);
            if !frames.values().all(rational_map)
                || !light_speed.values().all(Scalar::is_rational)
                || !bodies.iter().filter_map(|b| b.worldline.as_ref()).all(rational_line)
            {
                return Err(Error::Schema("irrational value in a rational-mode model".into()));
            }
        }
        Ok(Model { field_mode, bodies, index, frames, light_speed, photon_plenum })
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn body(&self, id: &str) -> Result<&Body> {
        self.index.get(id).map(|&i| &self.bodies[i]).ok_or_else(|| Error::UnknownBody(id.into()))
    }

    pub fn photon_plenum(&self) -> bool {
        self.photon_plenum
    }

    /// Observer ids in declaration order.
    pub fn observers(&self) -> Vec<&str> {
        self.bodies.iter().filter(|b| b.iob).map(|b| b.id.as_str()).collect()
    }

    pub fn frame(&self, m: &str) -> Result<&CoordinateMap> {
        self.frames.get(m).ok_or_else(|| Error::NotAnObserver(m.into()))
    }

    pub fn frames(&self) -> &BTreeMap<String, CoordinateMap> {
        &self.frames
    }

    pub fn light_speeds(&self) -> &BTreeMap<String, Scalar> {
        &self.light_speed
    }

    /// A copy with one observer's frame replaced.
    pub fn with_frame(&self, m: &str, map: CoordinateMap) -> Result<Model> {
        self.frame(m)?;
        let mut out = self.clone();
        out.frames.insert(m.into(), map);
        Ok(out)
    }

    pub fn with_light_speed(&self, m: &str, c: Scalar) -> Result<Model> {
        self.frame(m)?;
        if !c.is_positive() {
            return Err(Error::Schema("light speed must be positive".into()));
        }
        let mut out = self.clone();
        out.light_speed.insert(m.into(), c);
        Ok(out)
    }

    pub fn with_field_mode(&self, mode: FieldMode) -> Model {
        let mut out = self.clone();
        out.field_mode = mode;
        out
    }

    /// Whatever `k` sees at `p`, `m` sees at `wvt(m, k, p)`.
    pub fn wvt(&self, m: &str, k: &str, p: &Point) -> Result<Point> {
        let fm = self.frame(m)?;
        let fk = self.frame(k)?;
        Ok(fm.apply(&fk.apply_inverse(p)))
    }

    /// Does observer `m` see body `b` at `p` (in `m`'s coordinates)?
    pub fn w(&self, m: &str, b: &str, p: &Point) -> Result<bool> {
        let fm = self.frame(m)?;
        let body = self.body(b)?;
        let world = fm.apply_inverse(p);
        Ok(match &body.worldline {
            Some(l) => l.contains(&world),
            None => on_axis_t(&self.frame(b)?.apply(&world)),
        })
    }

    pub fn c_of(&self, m: &str) -> Result<Scalar> {
        self.light_speed.get(m).cloned().ok_or_else(|| Error::NotAnObserver(m.into()))
    }

    pub fn lightcone_at(&self, m: &str, v: &Point) -> Result<Cone> {
        Cone::new(v.clone(), self.c_of(m)?)
    }

    /// Is there a photon that `m` sees at both `x` and `y`?
    ///
    /// In plenum models photons are all the lines that the first declared
    /// observer sees as lightlike at its own light speed; other observers see
    /// them through their coordinate change.
    pub fn photon_through(&self, m: &str, x: &Point, y: &Point) -> Result<bool> {
        self.frame(m)?;
        if self.photon_plenum {
            let r = *self.observers().first().ok_or_else(|| Error::NotApplicable("no observers".into()))?;
            if x == y {
                return Ok(true);
            }
            let (xr, yr) = (self.wvt(r, m, x)?, self.wvt(r, m, y)?);
            let c = self.c_of(r)?;
            return Ok(space2(&xr, &yr) == &c.square() * &time2(&xr, &yr));
        }
        for b in self.bodies.iter().filter(|b| b.ph) {
            if self.w(m, &b.id, x)? && self.w(m, &b.id, y)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// How the moving observer's velocity is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum BoostSpec {
    /// Speed along x, in the same units as the light speed.
    Velocity(Scalar),
    /// `(a, b, h)` with `a^2 + b^2 = h^2`: velocity `(a/h) c`, Lorentz factor `h/b`.
    Triple(i64, i64, i64),
}

/// Two observers: `m` at rest in the world chart and `k` boosted along x,
/// plus two extensional photons through the origin. Photons are a plenum.
pub fn build_boost_model(spec: &BoostSpec, c: &Scalar, mode: FieldMode, shift: Option<&Vector>) -> Result<Model> {
    if !c.is_positive() {
        return Err(Error::Schema("light speed must be positive".into()));
    }
    let (v, gamma) = match spec {
        BoostSpec::Triple(a, b, h) => {
            if a * a + b * b != h * h || *h <= 0 {
                return Err(Error::Schema(format!("({a}, {b}, {h}) is not a Pythagorean triple")));
            }
            if *b == 0 {
                return Err(Error::SuperluminalBoost);
            }
            (&Scalar::ratio(*a, *h) * c, Scalar::ratio(*h, b.abs()))
        }
        BoostSpec::Velocity(v) => {
            if v.abs() >= *c {
                return Err(Error::SuperluminalBoost);
            }
            let beta2 = &v.square() / &c.square();
            let gamma = (&Scalar::one() - &beta2).sqrt(mode)?.recip()?;
            (v.clone(), gamma)
        }
    };
    let z = Scalar::zero;
    let gv = &gamma * &v;
    let linear: Mat4 = [
        [gamma.clone(), -(&gv / &c.square()), z(), z()],
        [-&gv, gamma.clone(), z(), z()],
        [z(), z(), Scalar::one(), z()],
        [z(), z(), z(), Scalar::one()],
    ];
    let frame_k = CoordinateMap::new(linear, shift.cloned().unwrap_or_default())?;
    let k_line = Line::new(frame_k.apply_inverse(&Point::origin()), Vector::new(Scalar::one(), v.clone(), z(), z()))?;
    let m_line = Line::new(Point::origin(), Vector::ints([1, 0, 0, 0]))?;
    let bodies = vec![
        Body::observer("m", Some(m_line)),
        Body::observer("k", Some(k_line)),
        Body::photon("ph+", Line::new(Point::origin(), Vector::new(Scalar::one(), c.clone(), z(), z()))?),
        Body::photon("ph-", Line::new(Point::origin(), Vector::new(Scalar::one(), -c, z(), z()))?),
    ];
    let frames = BTreeMap::from([("m".to_string(), CoordinateMap::identity()), ("k".to_string(), frame_k)]);
    let light_speed = BTreeMap::from([("m".to_string(), c.clone()), ("k".to_string(), c.clone())]);
    Model::new(mode, bodies, frames, light_speed, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: FieldMode = FieldMode::Rational;
    const E: FieldMode = FieldMode::Euclidean;

    fn p(c: [i64; 4]) -> Point {
        Point::ints(c)
    }

    fn boost345() -> Model {
        build_boost_model(&BoostSpec::Triple(3, 4, 5), &Scalar::one(), R, None).unwrap()
    }

    #[test]
    fn boost_coordinates() {
        let m = boost345();
        assert_eq!(m.wvt("k", "m", &p([5, 3, 0, 0])).unwrap(), p([4, 0, 0, 0]));
        assert_eq!(m.frame("k").unwrap().linear()[0][0], Scalar::ratio(5, 4));
        let x = p([2, -7, 1, 3]);
        assert_eq!(m.wvt("m", "m", &x).unwrap(), x);
        assert_eq!(m.wvt("k", "m", &m.wvt("m", "k", &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn rest_boost_is_identity() {
        let m = build_boost_model(&BoostSpec::Velocity(Scalar::zero()), &Scalar::one(), R, None).unwrap();
        assert_eq!(m.frame("k").unwrap(), &CoordinateMap::identity());
    }

    #[test]
    fn non_pythagorean_velocity() {
        let half = BoostSpec::Velocity(Scalar::ratio(1, 2));
        assert!(matches!(build_boost_model(&half, &Scalar::one(), R, None), Err(Error::NotEuclidean(_))));
        let m = build_boost_model(&half, &Scalar::one(), E, None).unwrap();
        let gamma = m.frame("k").unwrap().linear()[0][0].clone();
        assert_eq!(gamma, Scalar::parse("2/sqrt(3)").unwrap());
        let fast = BoostSpec::Velocity(Scalar::one());
        assert_eq!(build_boost_model(&fast, &Scalar::one(), E, None).unwrap_err(), Error::SuperluminalBoost);
        assert_eq!(
            build_boost_model(&BoostSpec::Triple(5, 0, 5), &Scalar::one(), R, None).unwrap_err(),
            Error::SuperluminalBoost
        );
    }

    #[test]
    fn sightings() {
        let m = boost345();
        assert!(m.w("m", "k", &Point::origin()).unwrap());
        assert!(m.w("m", "m", &p([7, 0, 0, 0])).unwrap());
        assert!(!m.w("m", "m", &p([1, 1, 0, 0])).unwrap());
        assert!(m.w("m", "k", &p([5, 3, 0, 0])).unwrap());
        assert!(m.w("k", "k", &p([4, 0, 0, 0])).unwrap());
        assert_eq!(m.w("ph+", "m", &Point::origin()), Err(Error::NotAnObserver("ph+".into())));
        assert_eq!(m.w("m", "nobody", &Point::origin()), Err(Error::UnknownBody("nobody".into())));
    }

    #[test]
    fn observer_worldlines_map_to_time_axis() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..50 {
            let (a, b, h) = crate::sampling::pythagorean_triple(&mut rng, 7);
            let shift = crate::sampling::vector(&mut rng, 5, 3);
            let c = crate::sampling::positive_rational(&mut rng, 3, 3);
            let model = build_boost_model(&BoostSpec::Triple(a, b, h), &c, R, Some(&shift)).unwrap();
            for o in model.observers() {
                let l = model.body(o).unwrap().worldline.clone().unwrap();
                for t in [-2, 0, 3] {
                    let seen = model.frame(o).unwrap().apply(&l.point_at(&Scalar::from(t)));
                    assert!(on_axis_t(&seen));
                }
            }
        }
    }

    #[test]
    fn light_speeds_and_cones() {
        let m = boost345();
        assert_eq!(m.c_of("m").unwrap(), Scalar::one());
        assert_eq!(m.c_of("ph+"), Err(Error::NotAnObserver("ph+".into())));
        let m2 = m.with_light_speed("k", Scalar::ratio(3, 2)).unwrap();
        assert_eq!(m2.c_of("k").unwrap(), Scalar::ratio(3, 2));
        let v = p([1, 2, 3, 4]);
        let cone = m2.lightcone_at("k", &v).unwrap();
        assert_eq!(cone.vertex, v);
        assert_eq!(cone.slope, Scalar::ratio(3, 2));
    }

    #[test]
    fn plenum_photons() {
        let m = boost345();
        assert!(m.photon_through("m", &Point::origin(), &p([1, 0, 1, 0])).unwrap());
        assert!(!m.photon_through("m", &Point::origin(), &p([1, 0, 2, 0])).unwrap());
        // k sees the same photons as lightlike.
        let (x, y) = (Point::origin(), p([5, 3, 4, 0]));
        assert!(m.photon_through("k", &m.wvt("k", "m", &x).unwrap(), &m.wvt("k", "m", &y).unwrap()).unwrap());
    }

    #[test]
    fn warped_maps_invert() {
        let warp = Warp { target: 1, source: 2, coeff: Scalar::ratio(1, 3) };
        let map = CoordinateMap::identity().with_warp(warp).unwrap();
        let x = p([1, 2, 3, 4]);
        assert_eq!(map.apply(&x), p([1, 5, 3, 4]));
        assert_eq!(map.apply_inverse(&map.apply(&x)), x);
        assert!(!map.is_affine());
    }

    #[test]
    fn model_invariants() {
        let bodies = vec![Body::observer("m", None)];
        assert!(matches!(Model::new(R, bodies.clone(), BTreeMap::new(), BTreeMap::new(), true), Err(Error::Schema(_))));
        let frames = BTreeMap::from([("m".to_string(), CoordinateMap::identity())]);
        let speeds = BTreeMap::from([("m".to_string(), Scalar::one())]);
        let model = Model::new(R, bodies, frames, speeds, true).unwrap();
        // Without a declared worldline the observer is seen on its own axis.
        assert!(model.w("m", "m", &p([3, 0, 0, 0])).unwrap());
        assert!(!model.w("m", "m", &p([3, 0, 1, 0])).unwrap());
    }

    #[test]
    fn map_serde_round_trip() {
        let m = boost345();
        let k = m.frame("k").unwrap();
        let s = serde_json::to_string(k).unwrap();
        let back: CoordinateMap = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, k);
        let singular = r#"{"linear": [[0,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]], "translation": [0,0,0,0]}"#;
        assert!(serde_json::from_str::<CoordinateMap>(singular).is_err());
    }
}
