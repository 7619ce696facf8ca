//! Existence, counting and bound formulas for contact structures on an
//! oriented circle bundle `V → S` over a closed orientable surface.
//!
//! A bundle is described by [`BundleData`]: the Euler characteristic `χ(S)`
//! of the base and the Euler number `e = χ(V,S)` of the bundle. Everything
//! here is exact integer or rational arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

/// Largest `n` accepted by the brute-force orbit count.
pub const ORBIT_ORACLE_MAX_N: u64 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("Euler characteristic {0} of a closed orientable surface must be even")]
    OddEulerCharacteristic(i64),
    #[error("Euler characteristic {0} exceeds 2")]
    EulerCharacteristicTooLarge(i64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("orbit enumeration limited to genus 1 or 2 and n <= 12 (got genus {genus}, n = {n})")]
    ScaleExceeded { genus: u64, n: u64 },
    #[error("enrollment {0} must have denominator 1 or 2")]
    InvalidEnrollment(String),
    #[error("{0}")]
    InvalidArgument(String),
}

/// `(χ(S), χ(V,S))` for a circle bundle over a closed orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundleData {
    chi_s: i64,
    euler: i64,
}

impl BundleData {
    pub fn new(chi_s: i64, euler: i64) -> Result<Self, ClassifyError> {
        if chi_s % 2 != 0 {
            return Err(ClassifyError::OddEulerCharacteristic(chi_s));
        }
        if chi_s > 2 {
            return Err(ClassifyError::EulerCharacteristicTooLarge(chi_s));
        }
        Ok(BundleData { chi_s, euler })
    }

    pub fn chi_s(&self) -> i64 {
        self.chi_s
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn genus(&self) -> u64 {
        ((2 - self.chi_s) / 2) as u64
    }

    pub fn is_sphere(&self) -> bool {
        self.chi_s == 2
    }
}

/// Twisting number of a plane field along a Legendrian fibre; an integer or
/// a half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnrollmentValue(Rational64);

impl EnrollmentValue {
    pub fn new(value: Rational64) -> Result<Self, ClassifyError> {
        if *value.denom() == 1 || *value.denom() == 2 {
            Ok(EnrollmentValue(value))
        } else {
            Err(ClassifyError::InvalidEnrollment(value.to_string()))
        }
    }

    pub fn integer(n: i64) -> Self {
        EnrollmentValue(Rational64::from_integer(n))
    }

    /// `k/2`.
    pub fn halves(k: i64) -> Self {
        EnrollmentValue(Rational64::new(k, 2))
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `2e`, always an integer.
    pub fn doubled(&self) -> i64 {
        (self.0 * 2).to_integer()
    }
}

impl fmt::Display for EnrollmentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Enrollment values `−n` realised by transverse contact structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnrollmentSpectrum {
    /// The listed `n > 0`.
    Finite(BTreeSet<u64>),
    /// Every `n ≥ 1` (trivial bundle over the torus).
    AllPositive,
}

impl EnrollmentSpectrum {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            EnrollmentSpectrum::Finite(s) => s.contains(&n),
            EnrollmentSpectrum::AllPositive => n >= 1,
        }
    }
}

/// The integers `m_i(ξ)` attached to a tangent contact structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistVector(Vec<i64>);

impl TwistVector {
    pub fn new(genus: u64, m: Vec<i64>) -> Result<Self, ClassifyError> {
        if m.len() as u64 != 2 * genus {
            return Err(ClassifyError::InvalidArgument(format!(
                "twist vector for genus {genus} needs {} entries, got {}",
                2 * genus,
                m.len()
            )));
        }
        Ok(TwistVector(m))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

/// Contact structures transverse to the fibres exist iff `e ≤ −χ(S)` when
/// `χ(S) ≤ 0`, and `e < 0` on the sphere.
pub fn transverse_exists(b: BundleData) -> bool {
    if b.chi_s <= 0 {
        b.euler <= -b.chi_s
    } else {
        b.euler < 0
    }
}

/// Flat (foliated) bundles: `|e| ≤ max(0, −χ(S))`.
pub fn flat_exists(b: BundleData) -> bool {
    b.euler.abs() <= 0.max(-b.chi_s)
}

/// Transverse confoliations: `e ≤ max(0, −χ(S))`.
pub fn confoliation_bound(b: BundleData) -> bool {
    b.euler <= 0.max(-b.chi_s)
}

/// Lowering the Euler number preserves the existence of transverse structures.
pub fn surgery_monotone(_chi_s: i64, e_source: i64, e_target: i64) -> bool {
    e_target <= e_source
}

/// Smallest `d > 0` with `d·e = −2χ(S)`, the degree of the covering behind a
/// contact structure tangent to the fibres.
pub fn tangent_exists(b: BundleData) -> Option<u64> {
    let target = -2 * b.chi_s;
    if b.euler == 0 {
        return (target == 0).then_some(1);
    }
    if target % b.euler != 0 {
        return None;
    }
    let d = target / b.euler;
    (d > 0).then_some(d as u64)
}

/// `{1} ∪ {n > 0 : n·e = −χ(S)}` for bases with `χ(S) ≤ 0` carrying a
/// transverse structure.
pub fn transverse_enrollment_spectrum(b: BundleData) -> Result<EnrollmentSpectrum, ClassifyError> {
    if b.chi_s > 0 {
        return Err(ClassifyError::PreconditionViolated(
            "the spectrum formula needs chi(S) <= 0; use sphere_enrollment for the sphere".into(),
        ));
    }
    if !transverse_exists(b) {
        return Err(ClassifyError::PreconditionViolated(format!(
            "no transverse contact structure for chi(S) = {}, e = {}",
            b.chi_s, b.euler
        )));
    }
    if b.chi_s == 0 && b.euler == 0 {
        return Ok(EnrollmentSpectrum::AllPositive);
    }
    let mut set = BTreeSet::from([1u64]);
    if b.euler != 0 && (-b.chi_s) % b.euler == 0 {
        let n = -b.chi_s / b.euler;
        if n > 0 {
            set.insert(n as u64);
        }
    }
    Ok(EnrollmentSpectrum::Finite(set))
}

/// Enrollment of transverse structures over the sphere: `−2` on `S³`
/// (`e = −1`), `−1` otherwise.
pub fn sphere_enrollment(euler: i64) -> Result<EnrollmentValue, ClassifyError> {
    match euler {
        e if e >= 0 => Err(ClassifyError::PreconditionViolated(format!(
            "no transverse contact structure over the sphere with e = {e}"
        ))),
        -1 => Ok(EnrollmentValue::integer(-2)),
        _ => Ok(EnrollmentValue::integer(-1)),
    }
}

/// Enrollment `−d/2` of a structure whose Legendrian fibration is a degree-`d`
/// covering of the unit tangent bundle.
pub fn legendrian_fibration_enrollment(d: u64) -> Result<EnrollmentValue, ClassifyError> {
    if d == 0 {
        return Err(ClassifyError::InvalidArgument("covering degree must be positive".into()));
    }
    Ok(EnrollmentValue::halves(-(d as i64)))
}

/// Number of divisors of `n`, by trial division.
pub fn divisor_count(n: u64) -> u64 {
    let mut count = 0;
    let mut k = 1u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            count += if k * k == n { 1 } else { 2 };
        }
        k += 1;
    }
    count
}

/// Conjugacy classes of tangent structures with a given `n`: `τ(n)`.
pub fn count_tangent_conjugacy_classes(n: u64) -> Result<u64, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::InvalidArgument("n must be positive".into()));
    }
    Ok(divisor_count(n))
}

fn symplectic_pairing(x: &[u64], y: &[u64], n: u64) -> u64 {
    // coordinates ordered (a₁, b₁, a₂, b₂, …), ⟨a_i, b_i⟩ = 1
    let mut s = 0u64;
    for i in 0..x.len() / 2 {
        s += x[2 * i] * y[2 * i + 1] % n;
        s += (n - x[2 * i + 1] * y[2 * i] % n) % n;
    }
    s % n
}

fn transvection(x: &[u64], v: &[u64], n: u64) -> Vec<u64> {
    let k = symplectic_pairing(x, v, n);
    x.iter().zip(v).map(|(xi, vi)| (xi + k * vi) % n).collect()
}

fn decode(mut index: usize, dim: usize, n: u64) -> Vec<u64> {
    (0..dim)
        .map(|_| {
            let d = index as u64 % n;
            index /= n as usize;
            d
        })
        .collect()
}

fn encode(x: &[u64], n: u64) -> usize {
    x.iter().rev().fold(0usize, |acc, &d| acc * n as usize + d as usize)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Brute-force count of orbits of `Sp(2g, ℤ/n)` on `(ℤ/n)^{2g}`.
///
/// The group is generated by the transvections along every `a_i` and `b_i`,
/// the transvection along `a₁ − a₂` (for `g = 2`) and the exchange of the two
/// symplectic blocks. Orbits are the connected components of the graph
/// joining each vector to its images.
pub fn cohomology_orbit_count(genus: u64, n: u64) -> Result<u64, ClassifyError> {
    if !(1..=2).contains(&genus) || n == 0 || n > ORBIT_ORACLE_MAX_N {
        return Err(ClassifyError::ScaleExceeded { genus, n });
    }
    let dim = 2 * genus as usize;
    let size = (n as usize).pow(dim as u32);
    let unit = |i: usize| -> Vec<u64> {
        let mut v = vec![0u64; dim];
        v[i] = 1 % n;
        v
    };
    let mut directions: Vec<Vec<u64>> = (0..dim).map(unit).collect();
    if genus == 2 {
        let mut mix = vec![0u64; dim];
        mix[0] = 1 % n;
        mix[2] = (n - 1) % n;
        directions.push(mix);
    }
    let mut parent: Vec<usize> = (0..size).collect();
    for index in 0..size {
        let x = decode(index, dim, n);
        let mut images: Vec<Vec<u64>> = directions.iter().map(|v| transvection(&x, v, n)).collect();
        if genus == 2 {
            images.push(vec![x[2], x[3], x[0], x[1]]);
        }
        for y in images {
            let (ra, rb) = (find(&mut parent, index), find(&mut parent, encode(&y, n)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let roots = (0..size).filter(|&i| find(&mut parent, i) == i).count();
    Ok(roots as u64)
}

/// `gcd(entries, n)`; the image of the morphism is the subgroup of order `n/d`.
pub fn morphism_image_divisor(vector: &[i64], n: u64) -> Result<u64, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::InvalidArgument("n must be positive".into()));
    }
    let n = n as i64;
    Ok(vector
        .iter()
        .fold(n, |acc, &x| acc.gcd(&x.rem_euclid(n)))
        .unsigned_abs())
}

/// Upper bound on isotopy classes of virtually overtwisted structures:
/// `max(0, −χ(S) − e − 1)`, plus one when `e > 0`.
pub fn virtually_overtwisted_bound(b: BundleData) -> u64 {
    let base = 0.max(-b.chi_s - b.euler - 1) as u64;
    if b.euler > 0 {
        base + 1
    } else {
        base
    }
}

/// Homology class `(n, n·e + χ(S) − 1)` and slope `μ` of the boundary torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySlope {
    pub class: (i64, i64),
    pub slope: Rational64,
}

pub fn boundary_slope(n: i64, euler: i64, chi_s: i64) -> Result<BoundarySlope, ClassifyError> {
    if n <= 0 {
        return Err(ClassifyError::InvalidArgument("n must be positive".into()));
    }
    let second = n * euler + chi_s - 1;
    Ok(BoundarySlope {
        class: (n, second),
        slope: Rational64::new(second, n),
    })
}

/// Homology class `±(2e, 2χ(S))` of the singular locus; returned with the `+` sign.
pub fn whitney_singular_class(e: EnrollmentValue, chi_s: i64) -> (i64, i64) {
    (e.doubled(), 2 * chi_s)
}

/// Enrollment of a connected sum with a Legendrian knot of Thurston–Bennequin
/// invariant `tb1`: `e₀ + tb1 + 1`.
pub fn enrollment_connect_sum(e0: EnrollmentValue, tb1: i64) -> EnrollmentValue {
    EnrollmentValue(e0.0 + Rational64::from_integer(tb1 + 1))
}

/// Enrollment of the preimage of a Legendrian fibre under the covering by the
/// bundle of Euler number `euler`: `|e|·e(L)`.
pub fn lift_enrollment_over_sphere(e: EnrollmentValue, euler: i64) -> Result<EnrollmentValue, ClassifyError> {
    EnrollmentValue::new(e.0 * Rational64::from_integer(euler.abs()))
}

/// `e(L) = tb(L) ± 1` for bundles with Euler number `±1`.
pub fn tb_vs_enrollment_unit_euler(tb: i64, sign: i64) -> Result<EnrollmentValue, ClassifyError> {
    if sign.abs() != 1 {
        return Err(ClassifyError::InvalidArgument("sign must be +1 or -1".into()));
    }
    Ok(EnrollmentValue::integer(tb + sign))
}

/// Tangent structures with the same `n` are isotopic iff their twist
/// vectors agree entry by entry.
pub fn tangent_isotopy_equal(a: &TwistVector, b: &TwistVector) -> bool {
    a.0 == b.0
}

/// Every formula at once, as reported by the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationSummary {
    pub bundle: BundleData,
    pub transverse_exists: bool,
    pub flat_exists: bool,
    pub confoliation_ok: bool,
    pub tangent_degree: Option<u64>,
    /// `None` over the sphere or when no transverse structure exists.
    pub enrollment_spectrum: Option<EnrollmentSpectrum>,
    /// `τ(n)` for each finite `n` in the spectrum other than 1 — when the
    /// spectrum is `{1, n}` this is a single number.
    pub conjugacy_classes: Option<u64>,
    pub vot_bound: u64,
    /// Boundary class for the largest `n` in the spectrum.
    pub boundary_slope: Option<BoundarySlope>,
    /// Singular class for the canonical tangent enrollment `−d/2`.
    pub whitney_class: Option<(i64, i64)>,
    pub sphere_enrollment: Option<EnrollmentValue>,
}

pub fn summarize(b: BundleData) -> ClassificationSummary {
    let spectrum = if b.is_sphere() {
        None
    } else {
        transverse_enrollment_spectrum(b).ok()
    };
    let largest = match &spectrum {
        Some(EnrollmentSpectrum::Finite(s)) => s.iter().next_back().copied(),
        Some(EnrollmentSpectrum::AllPositive) => Some(1),
        None => None,
    };
    let tangent_degree = tangent_exists(b);
    ClassificationSummary {
        bundle: b,
        transverse_exists: transverse_exists(b),
        flat_exists: flat_exists(b),
        confoliation_ok: confoliation_bound(b),
        tangent_degree,
        conjugacy_classes: largest.map(divisor_count),
        boundary_slope: largest.and_then(|n| boundary_slope(n as i64, b.euler, b.chi_s).ok()),
        enrollment_spectrum: spectrum,
        vot_bound: virtually_overtwisted_bound(b),
        whitney_class: tangent_degree
            .and_then(|d| legendrian_fibration_enrollment(d).ok())
            .map(|e| whitney_singular_class(e, b.chi_s)),
        sphere_enrollment: if b.is_sphere() {
            sphere_enrollment(b.euler).ok()
        } else {
            None
        },
    }
}

impl fmt::Display for BoundarySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) slope {}", self.class.0, self.class.1, self.slope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn b(chi: i64, e: i64) -> BundleData {
        BundleData::new(chi, e).unwrap()
    }

    #[test]
    fn bundle_data_validation() {
        assert_eq!(BundleData::new(-3, 0), Err(ClassifyError::OddEulerCharacteristic(-3)));
        assert_eq!(BundleData::new(4, 0), Err(ClassifyError::EulerCharacteristicTooLarge(4)));
        assert_eq!(b(-4, 0).genus(), 3);
        assert_eq!(b(2, -1).genus(), 0);
    }

    #[test]
    fn existence_inequalities() {
        assert!(transverse_exists(b(-2, 2)));
        assert!(!transverse_exists(b(2, 0)));
        assert!(!transverse_exists(b(0, 1)));
        assert!(flat_exists(b(-2, -2)));
        assert!(!flat_exists(b(-2, 3)));
        assert!(flat_exists(b(2, 0)));
        assert!(confoliation_bound(b(-2, 2)));
        assert!(confoliation_bound(b(-2, -5)));
        assert!(!confoliation_bound(b(2, 1)));
        assert!(surgery_monotone(-2, 2, 1));
        assert!(!surgery_monotone(-2, 1, 2));
        assert!(surgery_monotone(-2, 1, 1));
    }

    #[test]
    fn tangent_degree() {
        assert_eq!(tangent_exists(b(-2, 1)), Some(4));
        assert_eq!(tangent_exists(b(-2, 3)), None);
        assert_eq!(tangent_exists(b(0, 0)), Some(1));
        assert_eq!(tangent_exists(b(-2, -1)), None);
        assert_eq!(tangent_exists(b(-2, 0)), None);
    }

    #[test]
    fn spectra() {
        let s = transverse_enrollment_spectrum(b(-2, 1)).unwrap();
        assert_eq!(s, EnrollmentSpectrum::Finite(BTreeSet::from([1, 2])));
        let s = transverse_enrollment_spectrum(b(-4, -3)).unwrap();
        assert_eq!(s, EnrollmentSpectrum::Finite(BTreeSet::from([1])));
        assert_eq!(transverse_enrollment_spectrum(b(0, 0)).unwrap(), EnrollmentSpectrum::AllPositive);
        assert!(matches!(
            transverse_enrollment_spectrum(b(-2, 5)),
            Err(ClassifyError::PreconditionViolated(_))
        ));
        assert!(transverse_enrollment_spectrum(b(2, -1)).is_err());
    }

    #[test]
    fn enrollment_values() {
        assert_eq!(sphere_enrollment(-1).unwrap(), EnrollmentValue::integer(-2));
        assert_eq!(sphere_enrollment(-5).unwrap(), EnrollmentValue::integer(-1));
        assert!(sphere_enrollment(0).is_err());
        assert_eq!(legendrian_fibration_enrollment(1).unwrap(), EnrollmentValue::halves(-1));
        assert_eq!(legendrian_fibration_enrollment(2).unwrap(), EnrollmentValue::integer(-1));
        assert_eq!(legendrian_fibration_enrollment(6).unwrap(), EnrollmentValue::integer(-3));
        assert!(EnrollmentValue::new(Rational64::new(1, 3)).is_err());
        assert_eq!(EnrollmentValue::halves(-1).to_string(), "-1/2");
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(count_tangent_conjugacy_classes(1), Ok(1));
        assert_eq!(count_tangent_conjugacy_classes(6), Ok(4));
        assert_eq!(count_tangent_conjugacy_classes(12), Ok(6));
        assert!(count_tangent_conjugacy_classes(0).is_err());
    }

    #[test]
    fn orbit_counts_small() {
        assert_eq!(cohomology_orbit_count(1, 2), Ok(2));
        assert_eq!(cohomology_orbit_count(2, 4), Ok(3));
        assert_eq!(cohomology_orbit_count(1, 1), Ok(1));
        assert_eq!(cohomology_orbit_count(2, 1), Ok(1));
        assert!(matches!(
            cohomology_orbit_count(3, 2),
            Err(ClassifyError::ScaleExceeded { .. })
        ));
        assert!(cohomology_orbit_count(1, 13).is_err());
    }

    #[test]
    fn image_divisor() {
        assert_eq!(morphism_image_divisor(&[0, 0, 0, 0], 6), Ok(6));
        assert_eq!(morphism_image_divisor(&[1, 0, 0, 0], 6), Ok(1));
        assert_eq!(morphism_image_divisor(&[4, 6], 8), Ok(2));
        assert_eq!(morphism_image_divisor(&[-2, 4], 8), Ok(2));
    }

    #[test]
    fn bounds_and_slopes() {
        assert_eq!(virtually_overtwisted_bound(b(-2, -3)), 4);
        assert_eq!(virtually_overtwisted_bound(b(-2, 1)), 1);
        assert_eq!(virtually_overtwisted_bound(b(2, -5)), 2);
        let s = boundary_slope(1, -1, 0).unwrap();
        assert_eq!(s.class, (1, -2));
        assert_eq!(s.slope, Rational64::from_integer(-2));
        // n·e = −χ gives μ = −1/n
        let s = boundary_slope(2, 1, -2).unwrap();
        assert_eq!(s.slope, Rational64::new(-1, 2));
        assert_eq!(boundary_slope(1, 3, -2).unwrap().slope, Rational64::zero());
    }

    #[test]
    fn enrollment_arithmetic() {
        assert_eq!(whitney_singular_class(EnrollmentValue::halves(-1), -2), (-1, -4));
        assert_eq!(whitney_singular_class(EnrollmentValue::integer(-3), -2), (-6, -4));
        assert_eq!(whitney_singular_class(EnrollmentValue::integer(-1), 0), (-2, 0));
        let e = EnrollmentValue::halves(-3);
        assert_eq!(enrollment_connect_sum(e, -1), e);
        assert_eq!(
            enrollment_connect_sum(EnrollmentValue::integer(-3), -2),
            EnrollmentValue::integer(-4)
        );
        assert_eq!(
            enrollment_connect_sum(EnrollmentValue::integer(0), 5),
            EnrollmentValue::integer(6)
        );
        assert_eq!(
            lift_enrollment_over_sphere(EnrollmentValue::integer(-1), -3).unwrap(),
            EnrollmentValue::integer(-3)
        );
        assert_eq!(
            lift_enrollment_over_sphere(EnrollmentValue::integer(-2), -2).unwrap(),
            EnrollmentValue::integer(-4)
        );
        assert_eq!(lift_enrollment_over_sphere(e, 1).unwrap(), e);
        assert_eq!(tb_vs_enrollment_unit_euler(-1, 1).unwrap(), EnrollmentValue::integer(0));
        assert_eq!(tb_vs_enrollment_unit_euler(-1, -1).unwrap(), EnrollmentValue::integer(-2));
        assert_eq!(tb_vs_enrollment_unit_euler(0, 1).unwrap(), EnrollmentValue::integer(1));
        assert!(tb_vs_enrollment_unit_euler(0, 2).is_err());
    }

    #[test]
    fn twist_vectors() {
        let a = TwistVector::new(1, vec![0, 0]).unwrap();
        let b = TwistVector::new(1, vec![0, 1]).unwrap();
        let c = TwistVector::new(1, vec![1, 0]).unwrap();
        assert!(tangent_isotopy_equal(&a, &a.clone()));
        assert!(!tangent_isotopy_equal(&a, &b));
        assert!(!tangent_isotopy_equal(&b, &c));
        assert!(TwistVector::new(2, vec![0, 1]).is_err());
    }

    #[test]
    fn summary_routes_sphere() {
        let s = summarize(b(2, -1));
        assert_eq!(s.sphere_enrollment, Some(EnrollmentValue::integer(-2)));
        assert_eq!(s.enrollment_spectrum, None);
        let s = summarize(b(-2, 1));
        assert_eq!(s.conjugacy_classes, Some(2));
        assert_eq!(s.vot_bound, 1);
    }
}
