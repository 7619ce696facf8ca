//! Hyperbolic plane in the Poincaré disk model.
//!
//! Elements of `PSL₂(ℝ)` are stored as real unimodular matrices; they act on
//! the disk through the Cayley transform, i.e. as `z ↦ (αz + β)/(β̄z + ᾱ)` with
//! `α = ((a+d) + i(b−c))/2` and `β = ((a−d) − i(b+c))/2`.
//!
//! The module builds regular `4g`-gons centred at the origin, the side
//! pairings that glue them into a closed genus-`g` surface with one cone
//! point, and the lifted holonomy of the cone point.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::circle_dynamics::{
    self, CircleError, LiftedCircleMap, MoebiusLift, TranslationNumberEstimate,
};

/// Largest circumradius tried by [`radius_for_area`]. Beyond it the area
/// differs from its supremum by less than binary64 can resolve.
const MAX_RADIUS: f64 = 40.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperbolicError {
    #[error("area {area} outside the open interval (0, {max}) for genus {genus}")]
    AreaOutOfRange { genus: usize, area: f64, max: f64 },
    #[error("segment lengths differ: {first} vs {second}")]
    LengthMismatch { first: f64, second: f64 },
    #[error("genus must be at least 1")]
    InvalidGenus,
    #[error("circumradius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("point ({x}, {y}) is not inside the unit disk")]
    OutsideDisk { x: f64, y: f64 },
    #[error("matrix determinant {0} is not 1")]
    Determinant(f64),
    #[error("need an even, nonzero number of side pairings, got {0}")]
    OddPairingCount(usize),
    #[error(transparent)]
    Circle(#[from] CircleError),
}

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HyperbolicError> {
        if !(x.is_finite() && y.is_finite()) || x * x + y * y >= 1.0 {
            return Err(HyperbolicError::OutsideDisk { x, y });
        }
        Ok(HPoint { x, y })
    }

    pub fn origin() -> Self {
        HPoint { x: 0.0, y: 0.0 }
    }

    pub fn from_complex(z: Complex64) -> Result<Self, HyperbolicError> {
        Self::new(z.re, z.im)
    }

    /// Point at hyperbolic distance `r` from the origin in direction `angle`.
    pub fn polar(r: f64, angle: f64) -> Self {
        let z = Complex64::from_polar((r / 2.0).tanh(), angle);
        HPoint { x: z.re, y: z.im }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Hyperbolic distance `2 artanh |p − q| / |1 − p̄q|`.
pub fn hdistance(p: &HPoint, q: &HPoint) -> f64 {
    let (p, q) = (p.to_complex(), q.to_complex());
    let ratio = (p - q).norm() / (Complex64::new(1.0, 0.0) - p.conj() * q).norm();
    2.0 * ratio.min(1.0).atanh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Element of `PSL₂(ℝ)`, a matrix `[[a, b], [c, d]]` with `ad − bc = 1`
/// identified with its negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry2H {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl fmt::Display for Isometry2H {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Isometry2H {
    /// Checks `|ad − bc − 1| ≤ 1e−12` (relative to the entry size).
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HyperbolicError> {
        let det = a * d - b * c;
        let scale = 1.0f64.max(a.abs().max(b.abs()).max(c.abs()).max(d.abs()).powi(2));
        if !det.is_finite() || (det - 1.0).abs() > 1e-12 * scale {
            return Err(HyperbolicError::Determinant(det));
        }
        Ok(Isometry2H { a, b, c, d })
    }

    /// Rescales a matrix of positive determinant to determinant one.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HyperbolicError> {
        let det = a * d - b * c;
        if !(det > 0.0 && det.is_finite()) {
            return Err(HyperbolicError::Determinant(det));
        }
        let s = det.sqrt();
        Ok(Isometry2H {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        Isometry2H {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Rotation of the disk about its centre by `angle` (counter-clockwise).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Isometry2H {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
    }

    /// The transvection along the geodesic through the origin taking 0 to `p`.
    pub fn translation_to(p: &HPoint) -> Self {
        let z = p.to_complex();
        let k = 1.0 / (1.0 - z.norm_sqr()).sqrt();
        Self::from_disk(Complex64::new(k, 0.0), z * k)
    }

    /// Builds the element acting as `z ↦ (αz + β)/(β̄z + ᾱ)`; the pair is
    /// assumed to satisfy `|α|² − |β|² = 1`.
    pub fn from_disk(alpha: Complex64, beta: Complex64) -> Self {
        Isometry2H {
            a: alpha.re + beta.re,
            b: alpha.im - beta.im,
            c: -alpha.im - beta.im,
            d: alpha.re - beta.re,
        }
    }

    pub fn to_disk(&self) -> (Complex64, Complex64) {
        let alpha = Complex64::new((self.a + self.d) / 2.0, (self.b - self.c) / 2.0);
        let beta = Complex64::new((self.a - self.d) / 2.0, -(self.b + self.c) / 2.0);
        (alpha, beta)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Classification by `|trace|` with tolerance `1e−9` around 2.
    pub fn kind(&self) -> IsometryKind {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= 1e-9 {
            IsometryKind::Parabolic
        } else if t < 2.0 {
            IsometryKind::Elliptic
        } else {
            IsometryKind::Hyperbolic
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry2H) -> Isometry2H {
        Isometry2H {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Isometry2H {
        Isometry2H {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let (alpha, beta) = self.to_disk();
        (alpha * z + beta) / (beta.conj() * z + alpha.conj())
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        let w = self.apply_complex(p.to_complex());
        HPoint { x: w.re, y: w.im }
    }

    /// Largest entrywise difference to `other`, minimised over the sign.
    pub fn distance_projective(&self, other: &Isometry2H) -> f64 {
        let x = self.entries();
        let y = other.entries();
        let plus = (0..4).map(|i| (x[i] - y[i]).abs()).fold(0.0, f64::max);
        let minus = (0..4).map(|i| (x[i] + y[i]).abs()).fold(0.0, f64::max);
        plus.min(minus)
    }
}

/// Regular `4g`-gon centred at the origin.
///
/// Vertex `s_k` (1-based) sits at hyperbolic distance `R` from the centre at
/// angle `−2π(k−1)/4g`, so the vertices run clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolygon {
    genus: usize,
    radius: f64,
    vertices: Vec<HPoint>,
}

impl SymmetricPolygon {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn vertices(&self) -> &[HPoint] {
        &self.vertices
    }

    /// `s_k` with the index read modulo `4g` (1-based).
    pub fn vertex(&self, k: isize) -> HPoint {
        let n = self.vertices.len() as isize;
        self.vertices[(k - 1).rem_euclid(n) as usize]
    }

    pub fn side_count(&self) -> usize {
        self.vertices.len()
    }

    /// Common interior angle at every vertex.
    pub fn interior_angle(&self) -> f64 {
        let n = self.side_count() as f64;
        // Half the interior angle is the base angle of a right triangle with
        // hypotenuse R and apex angle π/n: cosh R = cot(π/n) · cot(angle).
        2.0 * (1.0 / (self.radius.cosh() * (PI / n).tan())).atan()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.side_count() as isize;
        (1..=n)
            .map(|k| hdistance(&self.vertex(k), &self.vertex(k + 1)))
            .collect()
    }
}

pub fn build_symmetric_polygon(genus: usize, radius: f64) -> Result<SymmetricPolygon, HyperbolicError> {
    if genus == 0 {
        return Err(HyperbolicError::InvalidGenus);
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(HyperbolicError::InvalidRadius(radius));
    }
    let n = 4 * genus;
    let vertices = (0..n)
        .map(|k| HPoint::polar(radius, -TAU * k as f64 / n as f64))
        .collect();
    Ok(SymmetricPolygon {
        genus,
        radius,
        vertices,
    })
}

/// Gauss–Bonnet: `(4g − 2)π − Σ interior angles`.
pub fn polygon_area(poly: &SymmetricPolygon) -> f64 {
    let n = poly.side_count() as f64;
    (n - 2.0) * PI - n * poly.interior_angle()
}

/// Supremum `(4g − 2)π` of symmetric polygon areas.
pub fn max_area(genus: usize) -> f64 {
    (4 * genus) as f64 * PI - 2.0 * PI
}

/// Circumradius whose symmetric polygon has the requested area, by bisection
/// (area is increasing in the radius).
pub fn radius_for_area(genus: usize, area: f64) -> Result<f64, HyperbolicError> {
    if genus == 0 {
        return Err(HyperbolicError::InvalidGenus);
    }
    let max = max_area(genus);
    let out_of_range = HyperbolicError::AreaOutOfRange { genus, area, max };
    if !(area > 0.0 && area < max) {
        return Err(out_of_range);
    }
    let area_at = |r: f64| polygon_area(&build_symmetric_polygon(genus, r).expect("positive radius"));
    if area_at(MAX_RADIUS) < area {
        return Err(out_of_range);
    }
    let (mut lo, mut hi) = (0.0f64, MAX_RADIUS);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if area_at(mid) < area {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if lo > 0.0 { 0.5 * (lo + hi) } else { hi })
}

/// Orientation-preserving isometry taking `a ↦ a2` and `b ↦ b2`.
pub fn isometry_from_segments(
    a: &HPoint,
    b: &HPoint,
    a2: &HPoint,
    b2: &HPoint,
) -> Result<Isometry2H, HyperbolicError> {
    let first = hdistance(a, b);
    let second = hdistance(a2, b2);
    if (first - second).abs() > 1e-9 {
        return Err(HyperbolicError::LengthMismatch { first, second });
    }
    // Move the first endpoint to the origin and rotate the second onto the
    // positive real axis; the isometry is the composite of one such
    // normalisation with the inverse of the other.
    let normalize = |p: &HPoint, q: &HPoint| {
        let back = Isometry2H::translation_to(p).inverse();
        let w = back.apply_complex(q.to_complex());
        Isometry2H::rotation(-w.arg()).compose(&back)
    };
    let n1 = normalize(a, b);
    let n2 = normalize(a2, b2);
    Ok(n2.inverse().compose(&n1))
}

/// The `2g` side pairings
/// `φ_{2i−1}: s_{4i−1} ↦ s_{4i−2}, s_{4i} ↦ s_{4i−3}` and
/// `φ_{2i}: s_{4i−2} ↦ s_{4i+1}, s_{4i−1} ↦ s_{4i}`,
/// which glue `[s_{4i−3}, s_{4i−2}]` to `[s_{4i}, s_{4i−1}]` and
/// `[s_{4i−2}, s_{4i−1}]` to `[s_{4i+1}, s_{4i}]`.
pub fn side_pairings(poly: &SymmetricPolygon) -> Result<Vec<Isometry2H>, HyperbolicError> {
    let s = |k: usize| poly.vertex(k as isize);
    let mut out = Vec::with_capacity(2 * poly.genus());
    for i in 1..=poly.genus() {
        out.push(isometry_from_segments(
            &s(4 * i - 1),
            &s(4 * i),
            &s(4 * i - 2),
            &s(4 * i - 3),
        )?);
        out.push(isometry_from_segments(
            &s(4 * i - 2),
            &s(4 * i - 1),
            &s(4 * i + 1),
            &s(4 * i),
        )?);
    }
    Ok(out)
}

/// `∏_{i=1}^{g} [φ_{2i−1}, φ_{2i}]` with `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator_product(pairings: &[Isometry2H]) -> Result<Isometry2H, HyperbolicError> {
    if pairings.is_empty() || !pairings.len().is_multiple_of(2) {
        return Err(HyperbolicError::OddPairingCount(pairings.len()));
    }
    Ok(pairings.chunks(2).fold(Isometry2H::identity(), |acc, pair| {
        let (a, b) = (pair[0], pair[1]);
        acc.compose(&a)
            .compose(&b)
            .compose(&a.inverse())
            .compose(&b.inverse())
    }))
}

/// Canonical lift (`f(0) ∈ [0,1)`) of the boundary action.
pub fn boundary_lift(iso: &Isometry2H) -> LiftedCircleMap {
    MoebiusLift::canonical(*iso).into()
}

/// Everything computed on the way to the holonomy translation number.
#[derive(Debug, Clone)]
pub struct HolonomyReport {
    pub polygon: SymmetricPolygon,
    pub area: f64,
    pub pairings: Vec<Isometry2H>,
    pub commutator: Isometry2H,
    pub estimate: TranslationNumberEstimate,
}

/// Builds the polygon of the given area, lifts its side pairings
/// canonically, and estimates the translation number of the lifted relator.
///
/// The result does not depend on the choice of lifts: every generator occurs
/// once with each exponent, so integer shifts cancel.
pub fn holonomy(genus: usize, area: f64, iterations: usize) -> Result<HolonomyReport, HyperbolicError> {
    let radius = radius_for_area(genus, area)?;
    let polygon = build_symmetric_polygon(genus, radius)?;
    let pairings = side_pairings(&polygon)?;
    let commutator = commutator_product(&pairings)?;
    let lifts: Vec<LiftedCircleMap> = pairings.iter().map(boundary_lift).collect();
    let relator = circle_dynamics::evaluate_relator(&lifts)?;
    let estimate = circle_dynamics::translation_number(&relator, iterations)?;
    Ok(HolonomyReport {
        area: polygon_area(&polygon),
        polygon,
        pairings,
        commutator,
        estimate,
    })
}

pub fn holonomy_translation_number(
    genus: usize,
    area: f64,
    iterations: usize,
) -> Result<TranslationNumberEstimate, HyperbolicError> {
    Ok(holonomy(genus, area, iterations)?.estimate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_conversion_round_trips() {
        let m = Isometry2H::normalized(2.0, 1.0, 3.0, 2.0).unwrap();
        let (alpha, beta) = m.to_disk();
        assert!((alpha.norm_sqr() - beta.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(Isometry2H::from_disk(alpha, beta).distance_projective(&m) < 1e-14);
    }

    #[test]
    fn rotation_acts_by_rotation() {
        let r = Isometry2H::rotation(0.7);
        let z = Complex64::new(0.3, -0.2);
        let w = r.apply_complex(z);
        assert!((w - z * Complex64::from_polar(1.0, 0.7)).norm() < 1e-14);
        assert_eq!(r.kind(), IsometryKind::Elliptic);
    }

    #[test]
    fn translation_moves_origin() {
        let p = HPoint::new(0.4, 0.5).unwrap();
        let t = Isometry2H::translation_to(&p);
        let q = t.apply(&HPoint::origin());
        assert!((q.to_complex() - p.to_complex()).norm() < 1e-14);
        assert_eq!(t.kind(), IsometryKind::Hyperbolic);
        assert!((t.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn points_outside_disk_are_rejected() {
        assert!(HPoint::new(1.0, 0.0).is_err());
        assert!(HPoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn determinant_is_checked() {
        assert!(matches!(
            Isometry2H::new(2.0, 0.0, 0.0, 1.0),
            Err(HyperbolicError::Determinant(_))
        ));
        assert!(Isometry2H::normalized(-1.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn polygon_has_requested_shape() {
        let poly = build_symmetric_polygon(2, 2.0).unwrap();
        assert_eq!(poly.side_count(), 8);
        for v in poly.vertices() {
            assert!((hdistance(&HPoint::origin(), v) - 2.0).abs() < 1e-12);
        }
        let sides = poly.side_lengths();
        let spread = sides.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - sides.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread < 1e-10);
        assert!(build_symmetric_polygon(0, 1.0).is_err());
        assert!(build_symmetric_polygon(1, 0.0).is_err());
    }

    #[test]
    fn area_limits() {
        let tiny = build_symmetric_polygon(2, 1e-4).unwrap();
        assert!(polygon_area(&tiny) < 1e-6);
        for r in [0.5, 1.0, 3.0, 10.0] {
            let a = polygon_area(&build_symmetric_polygon(1, r).unwrap());
            assert!(a > 0.0 && a < 2.0 * PI);
        }
    }

    #[test]
    fn radius_for_area_rejects_out_of_range() {
        assert!(matches!(
            radius_for_area(2, 6.0 * PI),
            Err(HyperbolicError::AreaOutOfRange { .. })
        ));
        assert!(radius_for_area(2, 0.0).is_err());
        assert!(radius_for_area(2, -1.0).is_err());
        let r = radius_for_area(2, 4.0 * PI).unwrap();
        assert!(r.is_finite());
    }

    #[test]
    fn commutator_of_commuting_inputs_is_identity() {
        let a = Isometry2H::rotation(0.3);
        let b = Isometry2H::rotation(1.1);
        let c = commutator_product(&[a, b]).unwrap();
        assert!(c.distance_projective(&Isometry2H::identity()) < 1e-14);
        assert!(commutator_product(&[a]).is_err());
    }

    #[test]
    fn pairings_glue_the_stated_edges() {
        let poly = build_symmetric_polygon(2, 1.7).unwrap();
        let ph = side_pairings(&poly).unwrap();
        let s = |k: isize| poly.vertex(k);
        let close = |p: HPoint, q: HPoint| hdistance(&p, &q) < 1e-9;
        for i in 1..=2isize {
            let (a, b) = (ph[2 * i as usize - 2], ph[2 * i as usize - 1]);
            assert!(close(a.apply(&s(4 * i - 1)), s(4 * i - 2)));
            assert!(close(a.apply(&s(4 * i)), s(4 * i - 3)));
            assert!(close(b.apply(&s(4 * i - 2)), s(4 * i + 1)));
            assert!(close(b.apply(&s(4 * i - 1)), s(4 * i)));
        }
    }

    #[test]
    fn angle_sum_two_pi_closes_up() {
        let r = radius_for_area(2, 4.0 * std::f64::consts::PI).unwrap();
        let poly = build_symmetric_polygon(2, r).unwrap();
        let c = commutator_product(&side_pairings(&poly).unwrap()).unwrap();
        assert!(c.distance_projective(&Isometry2H::identity()) < 1e-8, "{c}");
    }

    #[test]
    fn length_mismatch_is_reported() {
        let o = HPoint::origin();
        let p = HPoint::new(0.5, 0.0).unwrap();
        let q = HPoint::new(0.1, 0.0).unwrap();
        assert!(matches!(
            isometry_from_segments(&o, &p, &o, &q),
            Err(HyperbolicError::LengthMismatch { .. })
        ));
    }
}
