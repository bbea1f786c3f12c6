//! No observer moves faster than light, as an exact check and as a refutation.
//!
//! [`check_noftl`] tests `space2 <= c^2 time2` for two sightings of one
//! observer by another. [`build_ftl_witness`] takes a purported
//! faster-than-light sighting together with the coordinate map that would
//! realise it, and replays the refutation step by step: tangent plane through
//! the outside point, transport to the moving observer, the sloped point on the
//! transported line, and back. The trace ends either in two distinct parallel
//! lines meeting, or in the first axiom instance the map breaks.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::axioms::{AxiomId, Witness};
use crate::error::{Error, Result};
use crate::field::{FieldMode, Scalar};
use crate::geometry::{
    collinear, in_plane, line_joining, lines_meet, on_axis_t, on_cone, parallel, same_plane, sloped_point_on_line,
    space2, tangent_plane_at, tangent_plane_through_outside, time2, Cone, Line, LineMeet, Plane, Point, Vector,
};
use crate::linalg::{self, Mat4};
use crate::sampling;
use crate::worldview::{Body, CoordinateMap, Model};

/// Outcome of [`check_noftl`] with both exact sides of the inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NoFtlCheck {
    pub pass: bool,
    pub space2: Scalar,
    /// `c_m^2 * time2`.
    pub bound: Scalar,
}

/// Does `m` see `k` move no faster than light between sightings `e` and `f`?
pub fn check_noftl(model: &Model, m: &str, k: &str, e: &Point, f: &Point) -> Result<NoFtlCheck> {
    for id in [m, k] {
        if !model.body(id)?.iob {
            return Err(Error::NotAnObserver(id.into()));
        }
    }
    if e == f {
        return Err(Error::PreconditionViolated("the two sightings must be distinct events".into()));
    }
    for p in [e, f] {
        if !model.w(m, k, p)? {
            return Err(Error::PreconditionViolated(format!("{m} does not see {k} at {}", fmt_point(p))));
        }
    }
    let s2 = space2(e, f);
    let bound = &model.c_of(m)?.square() * &time2(e, f);
    Ok(NoFtlCheck { pass: s2 <= bound, space2: s2, bound })
}

fn fmt_point(p: &Point) -> String {
    let [t, x, y, z] = p.to_array();
    format!("({t}, {x}, {y}, {z})")
}

/// A purported faster-than-light sighting: `m` sees `k` at `e` and `f`, and
/// `purported_map` takes `m`'s coordinates to `k`'s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FtlHypothesis {
    pub e: Point,
    pub f: Point,
    pub c_m: Scalar,
    pub purported_map: CoordinateMap,
    pub c_k: Scalar,
}

impl FtlHypothesis {
    fn check_invariants(&self) -> Result<()> {
        if !self.c_m.is_positive() || !self.c_k.is_positive() {
            return Err(Error::BadHypothesis("light speeds must be positive".into()));
        }
        if self.e == self.f {
            return Err(Error::BadHypothesis("e and f must differ".into()));
        }
        if !self.purported_map.is_affine() {
            return Err(Error::BadHypothesis("the purported map must be affine".into()));
        }
        if !on_axis_t(&self.purported_map.apply(&self.e)) || !on_axis_t(&self.purported_map.apply(&self.f)) {
            return Err(Error::BadHypothesis("the purported map must send e and f onto the time axis".into()));
        }
        Ok(())
    }

    /// Two observers: `m` with the identity frame and `k` with the purported map.
    pub fn model(&self) -> Result<Model> {
        let frames = BTreeMap::from([
            ("m".to_string(), CoordinateMap::identity()),
            ("k".to_string(), self.purported_map.clone()),
        ]);
        let speeds = BTreeMap::from([("m".to_string(), self.c_m.clone()), ("k".to_string(), self.c_k.clone())]);
        Model::new(
            FieldMode::Euclidean,
            vec![Body::observer("m", None), Body::observer("k", None)],
            frames,
            speeds,
            false,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConverseCheck {
    pub space2: Scalar,
    pub bound: Scalar,
}

/// The point `g` of `e`'s lightcone whose tangent plane contains `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TangentStep {
    pub g: Point,
    pub plane: Plane,
}

/// `e`, `f`, `g` in `k`'s coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MappedPoints {
    pub wvte: Point,
    pub wvtf: Point,
    pub wvtg: Point,
}

/// Where the transported line through `e` and `g` meets `k`'s lightcone at `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MeetStep {
    pub wvtz: Point,
    pub z: Point,
    pub f_cone: Cone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Trace {
    pub converse_check: ConverseCheck,
    pub e_cone: Cone,
    pub tangent: TangentStep,
    pub mapped: MappedPoints,
    /// Absent when `g` already lands on `k`'s time axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<MeetStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Refutation {
    /// Two distinct parallel lines share this point: the hypothesis is absurd.
    ParallelLinesMeetAt { point: Point },
    /// The purported map breaks this axiom instance.
    AxiomViolated { axiom: AxiomId, witness: Witness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContradictionCertificate {
    pub steps: Trace,
    pub line_a: Line,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_b: Option<Line>,
    pub verdict: Refutation,
}

/// Certificate file contents: the hypothesis travels with its refutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateFile {
    pub format: String,
    pub hypothesis: FtlHypothesis,
    pub certificate: ContradictionCertificate,
}

pub const CERTIFICATE_FORMAT: &str = "specrel-certificate/1";

impl CertificateFile {
    pub fn new(hypothesis: FtlHypothesis, certificate: ContradictionCertificate) -> CertificateFile {
        CertificateFile { format: CERTIFICATE_FORMAT.into(), hypothesis, certificate }
    }
}

/// Replay the refutation of `h`.
pub fn build_ftl_witness(h: &FtlHypothesis, mode: FieldMode) -> Result<ContradictionCertificate> {
    h.check_invariants()?;
    let converse_check = ConverseCheck { space2: space2(&h.e, &h.f), bound: &h.c_m.square() * &time2(&h.e, &h.f) };
    if converse_check.space2 <= converse_check.bound {
        return Err(Error::NotFtl);
    }
    let e_cone = Cone::new(h.e.clone(), h.c_m.clone())?;
    let (g, plane) = tangent_plane_through_outside(&h.f, &e_cone, mode)?;
    let map = &h.purported_map;
    let mapped = MappedPoints { wvte: map.apply(&h.e), wvtf: map.apply(&h.f), wvtg: map.apply(&g) };
    if mapped.wvte == mapped.wvtf || mapped.wvtf == mapped.wvtg || mapped.wvtg == mapped.wvte {
        return Err(Error::BadHypothesis("the purported map is not injective".into()));
    }
    let meet = if on_axis_t(&mapped.wvtg) {
        None
    } else {
        let roots = sloped_point_on_line(&mapped.wvte, &mapped.wvtf, &mapped.wvtg, &h.c_k, mode)?;
        let wvtz = roots.into_iter().next().expect("sloped points exist");
        let z = map.apply_inverse(&wvtz);
        let f_cone = Cone::new(z.clone(), h.c_m.clone())?;
        Some(MeetStep { wvtz, z, f_cone })
    };
    let steps = Trace { converse_check, e_cone, tangent: TangentStep { g, plane }, mapped, meet };
    let line_a = line_joining(&h.e, &steps.tangent.g)?;
    let line_b = steps.meet.as_ref().map(|mt| line_joining(&h.f, &mt.z)).transpose()?;
    let verdict = refute(h, &steps)?;
    Ok(ContradictionCertificate { steps, line_a, line_b, verdict })
}

/// The axiom-instance chain, evaluated on the trace alone.
fn refute(h: &FtlHypothesis, tr: &Trace) -> Result<Refutation> {
    let (m, k) = ("m".to_string(), "k".to_string());
    let g = &tr.tangent.g;
    let mp = &tr.mapped;
    if on_axis_t(&mp.wvtg) {
        // e, f, g would be collinear, yet g is on e's cone and f is outside it.
        if collinear(&h.e, &h.f, g) {
            return Err(Error::PreconditionViolated("e, f and g are collinear".into()));
        }
        return Ok(Refutation::AxiomViolated {
            axiom: AxiomId::AxLines,
            witness: Witness::Collinearity {
                m,
                k,
                points: vec![mp.wvte.clone(), mp.wvtf.clone(), mp.wvtg.clone()],
                images: vec![h.e.clone(), h.f.clone(), g.clone()],
            },
        });
    }
    let mt = tr.meet.as_ref().ok_or_else(|| Error::PreconditionViolated("missing meeting step".into()))?;
    if !collinear(&h.e, g, &mt.z) {
        return Ok(Refutation::AxiomViolated {
            axiom: AxiomId::AxLines,
            witness: Witness::Collinearity {
                m,
                k,
                points: vec![mp.wvte.clone(), mp.wvtg.clone(), mt.wvtz.clone()],
                images: vec![h.e.clone(), g.clone(), mt.z.clone()],
            },
        });
    }
    if !on_cone(&h.f, &mt.f_cone) {
        return Ok(Refutation::AxiomViolated {
            axiom: AxiomId::AxCones,
            witness: Witness::ConeImage {
                m,
                k,
                cone: Cone::new(mt.wvtz.clone(), h.c_k.clone())?,
                point: mp.wvtf.clone(),
                image: h.f.clone(),
                image_cone: mt.f_cone.clone(),
            },
        });
    }
    if !on_cone(&mt.z, &tr.e_cone) {
        return Ok(Refutation::AxiomViolated {
            axiom: AxiomId::AxConeTangent,
            witness: Witness::ConeTangent {
                cone: tr.e_cone.clone(),
                e: g.clone(),
                plane: tr.tangent.plane.clone(),
                point: Some(mt.z.clone()),
            },
        });
    }
    let pf = tangent_plane_at(&h.f, &mt.f_cone)?;
    let line_a = line_joining(&h.e, g)?;
    let line_b = line_joining(&h.f, &mt.z)?;
    if !(same_plane(&tr.tangent.plane, &pf) && parallel(&line_a, &line_b)) {
        return Ok(Refutation::AxiomViolated {
            axiom: AxiomId::AxParallelCones,
            witness: Witness::ParallelCones {
                econe: tr.e_cone.clone(),
                e: g.clone(),
                fcone: mt.f_cone.clone(),
                f: h.f.clone(),
            },
        });
    }
    Ok(Refutation::ParallelLinesMeetAt { point: mt.z.clone() })
}

/// Result of [`validate_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Validation {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

/// Re-check every recorded step of `cert` against `h` from scratch.
pub fn validate_certificate(cert: &ContradictionCertificate, h: &FtlHypothesis) -> Validation {
    match recheck(cert, h) {
        Ok(()) => Validation { ok: true, first_mismatch: None },
        Err(msg) => Validation { ok: false, first_mismatch: Some(msg) },
    }
}

fn require(cond: bool, what: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn recheck(cert: &ContradictionCertificate, h: &FtlHypothesis) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    h.check_invariants().map_err(err)?;
    let tr = &cert.steps;
    let cc = &tr.converse_check;
    require(cc.space2 == space2(&h.e, &h.f), "converse check: space2")?;
    require(cc.bound == &h.c_m.square() * &time2(&h.e, &h.f), "converse check: bound")?;
    require(cc.space2 > cc.bound, "converse check: not faster than light")?;
    require(tr.e_cone.vertex == h.e && tr.e_cone.slope == h.c_m, "eCone: not the lightcone at e")?;

    let g = &tr.tangent.g;
    require(on_cone(g, &tr.e_cone), "tangent: g off eCone")?;
    require(g != &h.e && g != &h.f, "tangent: g coincides with e or f")?;
    let pg = tangent_plane_at(g, &tr.e_cone).map_err(err)?;
    require(tr.tangent.plane == pg, "tangent: plane is not the tangent plane at g")?;
    require(in_plane(&h.f, &pg), "tangent: f not in the plane")?;
    require(!collinear(&h.e, &h.f, g), "tangent: e, f, g collinear")?;

    let map = &h.purported_map;
    let mp = &tr.mapped;
    require(mp.wvte == map.apply(&h.e), "mapped: wvte")?;
    require(mp.wvtf == map.apply(&h.f), "mapped: wvtf")?;
    require(mp.wvtg == map.apply(g), "mapped: wvtg")?;
    require(on_axis_t(&mp.wvte) && on_axis_t(&mp.wvtf), "mapped: e or f off the time axis")?;
    require(mp.wvte != mp.wvtf && mp.wvtf != mp.wvtg && mp.wvtg != mp.wvte, "mapped: points not distinct")?;

    require(cert.line_a == line_joining(&h.e, g).map_err(err)?, "lineA is not the line through e and g")?;
    match (&tr.meet, &cert.line_b) {
        (None, None) => require(on_axis_t(&mp.wvtg), "meet: missing although g is off the time axis")?,
        (Some(mt), Some(line_b)) => {
            require(!on_axis_t(&mp.wvtg), "meet: present although g is on the time axis")?;
            require(line_b.contains(&h.f) && line_b.contains(&mt.z), "lineB does not pass through f and z")?;
            require(*line_b == line_joining(&h.f, &mt.z).map_err(err)?, "lineB is not the line through f and z")?;
            require(!line_b.same_line(&cert.line_a), "lineA and lineB coincide")?;
            require(collinear(&mp.wvte, &mp.wvtg, &mt.wvtz), "meet: wvtz off the transported line")?;
            let k_cone = Cone::new(mp.wvtf.clone(), h.c_k.clone()).map_err(err)?;
            require(on_cone(&mt.wvtz, &k_cone), "meet: wvtz off k's lightcone at wvtf")?;
            require(map.apply(&mt.z) == mt.wvtz, "meet: z does not map to wvtz")?;
            require(mt.f_cone.vertex == mt.z && mt.f_cone.slope == h.c_m, "meet: fCone is not the lightcone at z")?;
        }
        _ => return Err("meet step and lineB disagree".into()),
    }

    let expected = refute(h, tr).map_err(err)?;
    require(cert.verdict == expected, "verdict does not follow from the trace")?;
    match &cert.verdict {
        Refutation::AxiomViolated { witness, .. } => {
            let model = h.model().map_err(err)?;
            require(witness.revalidate(&model), "witness does not re-validate")?;
        }
        Refutation::ParallelLinesMeetAt { point } => {
            let line_b = cert.line_b.as_ref().ok_or("lineB missing")?;
            require(parallel(&cert.line_a, line_b), "lines are not parallel")?;
            require(
                lines_meet(&cert.line_a, line_b) == LineMeet::MeetAt(point.clone()),
                "lines do not meet at the recorded point",
            )?;
        }
    }
    Ok(())
}

/// A faster-than-light pair `e`, `f` for light speed `c_m`, with an affine map
/// taking both onto the time axis.
pub fn random_hypothesis<R: Rng>(rng: &mut R, c_m: &Scalar, c_k: &Scalar, num_bound: i64, den_bound: i64) -> FtlHypothesis {
    let e = sampling::point(rng, num_bound, den_bound);
    let u = sampling::unit_vector(rng, den_bound);
    let tau = sampling::rational(rng, num_bound, den_bound);
    let excess = sampling::positive_rational(rng, num_bound, den_bound);
    let rho = &(c_m * &tau.abs()) + &excess;
    let d = Vector::new(tau, &rho * &u[0], &rho * &u[1], &rho * &u[2]);
    let f = &e + &d;
    let columns_to_matrix = |cols: &[[Scalar; 4]; 4]| -> Mat4 {
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
    };
    let invertible = |rng: &mut R, first: [Scalar; 4]| -> Mat4 {
        loop {
            let cols = [
                first.clone(),
                sampling::vector(rng, num_bound, den_bound).to_array(),
                sampling::vector(rng, num_bound, den_bound).to_array(),
                sampling::vector(rng, num_bound, den_bound).to_array(),
            ];
            let m = columns_to_matrix(&cols);
            if !linalg::determinant(&m).is_zero() {
                return m;
            }
        }
    };
    let c = invertible(rng, d.to_array());
    let delta = sampling::nonzero_rational(rng, num_bound, den_bound);
    let b = invertible(rng, [delta, Scalar::zero(), Scalar::zero(), Scalar::zero()]);
    let linear = linalg::mat_mul(&b, &linalg::invert(&c).expect("checked determinant"));
    let a = Vector::new(sampling::rational(rng, num_bound, den_bound), Scalar::zero(), Scalar::zero(), Scalar::zero());
    let me = linalg::mat_vec(&linear, &e.to_array());
    let translation = Vector::from(std::array::from_fn(|i| &a.to_array()[i] - &me[i]));
    let purported_map = CoordinateMap::new(linear, translation).expect("product of invertible matrices");
    FtlHypothesis { e, f, c_m: c_m.clone(), purported_map, c_k: c_k.clone() }
}

#[cfg(test)]
mod tests;
