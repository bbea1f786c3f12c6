use super::*;
use crate::geometry::Line;
use crate::worldview::{build_boost_model, BoostSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(c: [i64; 4]) -> Point {
    Point::ints(c)
}

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

/// Affine map sending the origin to itself and `(dt, dx, 0, 0)` to `(1, 0, 0, 0)`.
fn axis_map(dt: i64, dx: i64) -> CoordinateMap {
    let z = Scalar::zero;
    let linear = [
        [z(), Scalar::ratio(1, dx), z(), z()],
        [Scalar::from(dx), Scalar::from(-dt), z(), z()],
        [z(), z(), Scalar::one(), z()],
        [z(), z(), z(), Scalar::one()],
    ];
    CoordinateMap::new(linear, Vector::zero()).unwrap()
}

fn hypothesis(dt: i64, dx: i64) -> FtlHypothesis {
    FtlHypothesis { e: Point::origin(), f: p([dt, dx, 0, 0]), c_m: Scalar::one(), purported_map: axis_map(dt, dx), c_k: Scalar::one() }
}

#[test]
fn worked_example() {
    let h = hypothesis(3, 5);
    assert_eq!(h.purported_map.apply(&h.f), p([1, 0, 0, 0]));
    let cert = build_ftl_witness(&h, FieldMode::Euclidean).unwrap();
    let tan = &cert.steps.tangent;
    assert_eq!(tan.g, p([5, 3, 4, 0]));
    assert_eq!(tan.plane.basepoint, p([5, 3, 4, 0]));
    assert_eq!(tan.plane.d1, Vector::ints([5, 3, 4, 0]));
    assert_eq!(tan.plane.d2, Vector::ints([0, 4, -3, 0]));
    assert_eq!(tan.plane.coordinates(&h.f), Some((q("-2/5"), q("4/5"))));
    assert_eq!(cert.steps.converse_check, ConverseCheck { space2: Scalar::from(25), bound: Scalar::from(9) });
    match &cert.verdict {
        Refutation::AxiomViolated { axiom, witness } => {
            assert_eq!(*axiom, AxiomId::AxCones);
            assert!(matches!(witness, Witness::ConeImage { .. }));
        }
        other => panic!("unexpected verdict {other:?}"),
    }
    assert_eq!(validate_certificate(&cert, &h), Validation { ok: true, first_mismatch: None });
}

#[test]
fn rational_mode_needs_square_roots() {
    let h = hypothesis(1, 2);
    assert!(matches!(build_ftl_witness(&h, FieldMode::Rational), Err(Error::NotEuclidean(_))));
    let cert = build_ftl_witness(&h, FieldMode::Euclidean).unwrap();
    assert!(!cert.steps.tangent.g.is_rational());
    assert!(validate_certificate(&cert, &h).ok);
}

#[test]
fn tampered_certificates_are_rejected() {
    let h = hypothesis(3, 5);
    let cert = build_ftl_witness(&h, FieldMode::Euclidean).unwrap();

    let mut moved = cert.clone();
    let mt = moved.steps.meet.as_mut().unwrap();
    mt.z = &mt.z + &Vector::ints([0, 1, 0, 0]);
    let v = validate_certificate(&moved, &h);
    assert!(!v.ok);
    assert_eq!(v.first_mismatch.as_deref(), Some("lineB does not pass through f and z"));

    let mut swapped = cert.clone();
    let z = cert.steps.meet.as_ref().unwrap().z.clone();
    swapped.verdict = Refutation::ParallelLinesMeetAt { point: z };
    assert_eq!(validate_certificate(&swapped, &h).first_mismatch.as_deref(), Some("verdict does not follow from the trace"));

    let mut other_g = cert.clone();
    other_g.steps.tangent.g = p([5, 3, -4, 0]);
    assert!(!validate_certificate(&other_g, &h).ok);

    let mut other_h = h.clone();
    other_h.c_k = Scalar::from(2);
    assert!(!validate_certificate(&cert, &other_h).ok);
}

#[test]
fn hypotheses_must_be_faster_than_light_and_well_formed() {
    let mut h = hypothesis(5, 3);
    assert_eq!(build_ftl_witness(&h, FieldMode::Euclidean), Err(Error::NotFtl));
    h = hypothesis(3, 5);
    h.f = p([3, 5, 1, 0]);
    assert!(matches!(build_ftl_witness(&h, FieldMode::Euclidean), Err(Error::BadHypothesis(_))));
    h = hypothesis(3, 5);
    h.c_k = Scalar::zero();
    assert!(matches!(build_ftl_witness(&h, FieldMode::Euclidean), Err(Error::BadHypothesis(_))));
}

#[test]
fn boost_sightings_are_subluminal() {
    let model = build_boost_model(&BoostSpec::Triple(3, 4, 5), &Scalar::one(), FieldMode::Rational, None).unwrap();
    let r = check_noftl(&model, "m", "k", &Point::origin(), &p([5, 3, 0, 0])).unwrap();
    assert_eq!(r, NoFtlCheck { pass: true, space2: Scalar::from(9), bound: Scalar::from(25) });
    assert!(matches!(
        check_noftl(&model, "m", "k", &Point::origin(), &Point::origin()),
        Err(Error::PreconditionViolated(_))
    ));
    assert!(matches!(
        check_noftl(&model, "m", "k", &Point::origin(), &p([1, 0, 0, 0])),
        Err(Error::PreconditionViolated(_))
    ));
    assert!(matches!(check_noftl(&model, "m", "ph+", &Point::origin(), &p([1, 1, 0, 0])), Err(Error::NotAnObserver(_))));
}

#[test]
fn lightlike_sightings_sit_on_the_boundary() {
    let lightlike = Line::new(Point::origin(), Vector::ints([1, 1, 0, 0])).unwrap();
    let frames = BTreeMap::from([("m".to_string(), CoordinateMap::identity()), ("k".to_string(), CoordinateMap::identity())]);
    let speeds = BTreeMap::from([("m".to_string(), Scalar::one()), ("k".to_string(), Scalar::one())]);
    let model = Model::new(
        FieldMode::Rational,
        vec![Body::observer("m", None), Body::observer("k", Some(lightlike))],
        frames,
        speeds,
        false,
    )
    .unwrap();
    let r = check_noftl(&model, "m", "k", &Point::origin(), &p([1, 1, 0, 0])).unwrap();
    assert_eq!(r, NoFtlCheck { pass: true, space2: Scalar::one(), bound: Scalar::one() });
}

#[test]
fn random_hypotheses_are_refuted_by_an_axiom() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..12 {
        let c_m = Scalar::ratio(1 + i % 3, 1);
        let c_k = Scalar::ratio(1, 1 + i % 2);
        let h = random_hypothesis(&mut rng, &c_m, &c_k, 3, 3);
        let cert = build_ftl_witness(&h, FieldMode::Euclidean).unwrap();
        assert!(matches!(cert.verdict, Refutation::AxiomViolated { .. }));
        assert!(validate_certificate(&cert, &h).ok, "{:?}", validate_certificate(&cert, &h));
        let file = CertificateFile::new(h.clone(), cert.clone());
        let json = serde_json::to_string(&file).unwrap();
        let back: CertificateFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        assert!(validate_certificate(&back.certificate, &back.hypothesis).ok);
    }
}
