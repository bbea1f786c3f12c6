//! Scene files: a model, sampling bounds, and optional check blocks.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize};
use specrel::geometry::{Point, Vector};
use specrel::noftl::FtlHypothesis;
use specrel::sampling::SamplingConfig;
use specrel::worldview::{build_boost_model, Body, BoostSpec, CoordinateMap, Model};
use specrel::{Error, FieldMode, Scalar};

pub const SCENE_FORMAT: &str = "specrel-scene/1";

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scene {
    pub format: String,
    pub field_mode: FieldMode,
    pub model: ModelSpec,
    #[serde(default)]
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub noftl: Vec<NoFtlBlock>,
    #[serde(default)]
    pub hypotheses: Vec<FtlHypothesis>,
}

/// Either a `boost` shorthand or explicit bodies, frames and light speeds.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModelSpec {
    pub boost: Option<BoostBlock>,
    pub bodies: Option<Vec<Body>>,
    pub frames: Option<BTreeMap<String, CoordinateMap>>,
    pub light_speed: Option<BTreeMap<String, Scalar>>,
    pub photon_plenum: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BoostBlock {
    pub triple: Option<(i64, i64, i64)>,
    pub velocity: Option<Scalar>,
    pub c: Scalar,
    pub shift: Option<Vector>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SamplingSpec {
    pub seed: Option<u64>,
    pub grid_radius: Option<u32>,
    pub random_count: Option<u32>,
    pub denominator_bound: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NoFtlBlock {
    pub m: String,
    pub k: String,
    pub e: Point,
    pub f: Point,
}

/// Deserialize JSON, reporting the field path and source position on failure.
pub fn parse_json<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, Error> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            Error::Parse(inner.to_string())
        } else {
            Error::Schema(format!("at {path}: {inner}"))
        }
    })
}

pub fn parse_scene(bytes: &[u8]) -> Result<Scene, Error> {
    let scene: Scene = parse_json(bytes)?;
    if scene.format != SCENE_FORMAT {
        return Err(Error::Schema(format!("at format: expected {SCENE_FORMAT:?}, found {:?}", scene.format)));
    }
    Ok(scene)
}

impl SamplingSpec {
    pub fn resolve(&self) -> SamplingConfig {
        let d = SamplingConfig::default();
        SamplingConfig {
            seed: self.seed.unwrap_or(d.seed),
            grid_radius: self.grid_radius.unwrap_or(d.grid_radius),
            random_count: self.random_count.unwrap_or(d.random_count),
            denominator_bound: self.denominator_bound.unwrap_or(d.denominator_bound),
        }
    }
}

fn require_rational(what: &str, values: &[Scalar], mode: FieldMode) -> Result<(), Error> {
    if mode == FieldMode::Rational && !values.iter().all(Scalar::is_rational) {
        return Err(Error::Schema(format!("at {what}: square roots are not available in rational mode")));
    }
    Ok(())
}

impl Scene {
    pub fn build_model(&self, mode: FieldMode) -> Result<Model, Error> {
        let spec = &self.model;
        match &spec.boost {
            Some(b) => {
                if spec.bodies.is_some() || spec.frames.is_some() || spec.light_speed.is_some() || spec.photon_plenum.is_some() {
                    return Err(Error::Schema("at model: boost cannot be combined with explicit bodies".into()));
                }
                let boost = match (&b.triple, &b.velocity) {
                    (Some((a, bb, h)), None) => BoostSpec::Triple(*a, *bb, *h),
                    (None, Some(v)) => BoostSpec::Velocity(v.clone()),
                    _ => return Err(Error::Schema("at model.boost: give exactly one of triple or velocity".into())),
                };
                let mut scalars = vec![b.c.clone()];
                scalars.extend(b.velocity.iter().cloned());
                scalars.extend(b.shift.iter().flat_map(|s| s.to_array()));
                require_rational("model.boost", &scalars, mode)?;
                build_boost_model(&boost, &b.c, mode, b.shift.as_ref())
            }
            None => {
                let (Some(bodies), Some(frames), Some(speeds)) = (&spec.bodies, &spec.frames, &spec.light_speed) else {
                    return Err(Error::Schema("at model: give boost, or bodies, frames and lightSpeed".into()));
                };
                Model::new(mode, bodies.clone(), frames.clone(), speeds.clone(), spec.photon_plenum.unwrap_or(false))
            }
        }
    }

    /// Reject irrational literals in the check blocks when running in rational mode.
    pub fn check_blocks(&self, mode: FieldMode) -> Result<(), Error> {
        for (i, b) in self.noftl.iter().enumerate() {
            let vals: Vec<Scalar> = b.e.to_array().into_iter().chain(b.f.to_array()).collect();
            require_rational(&format!("noftl[{i}]"), &vals, mode)?;
        }
        for (i, h) in self.hypotheses.iter().enumerate() {
            let mut vals: Vec<Scalar> = h.e.to_array().into_iter().chain(h.f.to_array()).collect();
            vals.extend([h.c_m.clone(), h.c_k.clone()]);
            vals.extend(h.purported_map.linear().iter().flatten().cloned());
            vals.extend(h.purported_map.translation().to_array());
            require_rational(&format!("hypotheses[{i}]"), &vals, mode)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boost_shorthand_builds_two_observers() {
        let scene = parse_scene(
            br#"{"format":"specrel-scene/1","fieldMode":"rational","model":{"boost":{"triple":[3,4,5],"c":"1"}}}"#,
        )
        .unwrap();
        let model = scene.build_model(FieldMode::Rational).unwrap();
        assert_eq!(model.observers(), vec!["m", "k"]);
        assert_eq!(model.frame("k").unwrap().linear()[0][0], Scalar::ratio(5, 4));
    }

    #[test]
    fn rejections_name_the_field() {
        let err = parse_scene(br#"{"format":"specrel-scene/1","fieldMode":"rational","model":{"boost":{"triple":[3,4,5],"c":"0.5"}}}"#)
            .unwrap_err();
        assert!(matches!(&err, Error::Schema(m) if m.contains("model.boost.c")), "{err}");
        let err = parse_scene(br#"{"format":"specrel-scene/1","fieldMode":"rational","model":{},"extra":1}"#).unwrap_err();
        assert!(matches!(&err, Error::Schema(m) if m.contains("extra")), "{err}");
        let err = parse_scene(b"{\"format\":").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn square_roots_need_euclidean_mode() {
        let scene = parse_scene(
            br#"{"format":"specrel-scene/1","fieldMode":"rational","model":{"boost":{"triple":[3,4,5],"c":"sqrt(2)"}}}"#,
        )
        .unwrap();
        assert!(matches!(scene.build_model(FieldMode::Rational), Err(Error::Schema(_))));
        assert!(scene.build_model(FieldMode::Euclidean).is_ok());
    }
}
