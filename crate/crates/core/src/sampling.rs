//! Seeded generators for exact rational test data.
//!
//! Every generator draws from a caller-supplied RNG, so a fixed seed gives a
//! fixed sequence of scalars, points, cone points and Pythagorean triples.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::Scalar;
use crate::geometry::{cone_classify, Cone, ConeSide, Point, Vector};

/// Bounds on the random part of an audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SamplingConfig {
    pub seed: u64,
    pub grid_radius: u32,
    pub random_count: u32,
    pub denominator_bound: u32,
}

impl Default for SamplingConfig {
    fn default() -> SamplingConfig {
        SamplingConfig { seed: 0, grid_radius: 1, random_count: 24, denominator_bound: 6 }
    }
}

/// A rational `p/q` with `|p| <= num_bound * q` and `1 <= q <= den_bound`.
pub fn rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Scalar {
    let q = rng.gen_range(1..=den_bound.max(1));
    let p = rng.gen_range(-num_bound * q..=num_bound * q);
    Scalar::ratio(p, q)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Scalar {
    loop {
        let r = rational(rng, num_bound, den_bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn positive_rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Scalar {
    nonzero_rational(rng, num_bound, den_bound).abs()
}

pub fn point<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Point {
    Point::from(std::array::from_fn(|_| rational(rng, num_bound, den_bound)))
}

pub fn vector<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Vector {
    Vector::from(std::array::from_fn(|_| rational(rng, num_bound, den_bound)))
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Vector {
    loop {
        let v = vector(rng, num_bound, den_bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// The rational unit vector obtained by inverse stereographic projection of `(a, b)`.
pub fn unit_direction(a: &Scalar, b: &Scalar) -> [Scalar; 3] {
    let n = &(&a.square() + &b.square());
    let den = n + &Scalar::one();
    let two = Scalar::from(2);
    [&(&two * a) / &den, &(&two * b) / &den, &(n - &Scalar::one()) / &den]
}

/// A rational unit vector; coordinate axes in both orientations are drawn
/// with extra weight because the tangent construction special-cases them.
pub fn unit_vector<R: Rng>(rng: &mut R, den_bound: i64) -> [Scalar; 3] {
    if rng.gen_ratio(1, 8) {
        let axis = rng.gen_range(0..3);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        return std::array::from_fn(|i| Scalar::from(if i == axis { sign } else { 0 }));
    }
    let a = rational(rng, 3, den_bound);
    let b = rational(rng, 3, den_bound);
    unit_direction(&a, &b)
}

/// A point of the cone other than its vertex, on either nappe.
pub fn on_cone<R: Rng>(rng: &mut R, cone: &Cone, num_bound: i64, den_bound: i64) -> Point {
    let u = unit_vector(rng, den_bound);
    let tau = nonzero_rational(rng, num_bound, den_bound);
    let r = &tau * &cone.slope;
    let dir = Vector::new(tau, &r * &u[0], &r * &u[1], &r * &u[2]);
    &cone.vertex + &dir
}

/// A point strictly outside the cone.
pub fn outside_cone<R: Rng>(rng: &mut R, cone: &Cone, num_bound: i64, den_bound: i64) -> Point {
    loop {
        let p = &cone.vertex + &vector(rng, num_bound, den_bound);
        if cone_classify(&p, cone) == ConeSide::OutsideCone {
            return p;
        }
    }
}

/// A primitive-style Pythagorean triple `(a, b, h)` with `a^2 + b^2 = h^2`, `b > 0`, `|a| < h`.
pub fn pythagorean_triple<R: Rng>(rng: &mut R, bound: i64) -> (i64, i64, i64) {
    let m = rng.gen_range(2..=bound.max(2));
    let n = rng.gen_range(1..m);
    let (a, b) = if rng.gen_bool(0.5) { (m * m - n * n, 2 * m * n) } else { (2 * m * n, m * m - n * n) };
    let a = if rng.gen_bool(0.5) { -a } else { a };
    (a, b, m * m + n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::on_cone as is_on_cone;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_points_have_their_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let u = unit_vector(&mut rng, 5);
            assert_eq!(&(&u[0].square() + &u[1].square()) + &u[2].square(), Scalar::one());
            let cone = Cone::new(point(&mut rng, 5, 3), positive_rational(&mut rng, 3, 4)).unwrap();
            let e = on_cone(&mut rng, &cone, 5, 4);
            assert!(is_on_cone(&e, &cone) && e != cone.vertex);
            let f = outside_cone(&mut rng, &cone, 5, 4);
            assert_eq!(cone_classify(&f, &cone), ConeSide::OutsideCone);
            let (a, b, h) = pythagorean_triple(&mut rng, 9);
            assert_eq!(a * a + b * b, h * h);
            assert!(b > 0 && a.abs() < h);
        }
    }

    #[test]
    fn seeds_reproduce() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| point(&mut rng, 9, 9)).collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }
}
