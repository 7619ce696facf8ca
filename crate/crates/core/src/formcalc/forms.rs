//! 1-forms over charts: exterior derivative, contact sign, pullback and the
//! characteristic slope of cylindrical tori.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chart::Chart;
use super::expr::{Compiled, Expr};
use super::{ContactSign, FormError};

/// Values with `|c| ≤ CONTACT_TOLERANCE` count as zero.
pub const CONTACT_TOLERANCE: f64 = 1e-12;

/// Default sample count per axis for [`contact_sign`].
pub const DEFAULT_GRID: usize = 64;

const MAX_WITNESSES: usize = 8;

/// `Σ a_i dx_i` over a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    chart: Chart,
    coefficients: Vec<Expr>,
}

impl OneForm {
    pub fn new(chart: Chart, coefficients: Vec<Expr>) -> Result<Self, FormError> {
        if coefficients.len() != chart.dim() {
            return Err(FormError::DimensionMismatch {
                expected: chart.dim(),
                found: coefficients.len(),
            });
        }
        for c in &coefficients {
            if let Some(v) = c.variables().into_iter().find(|v| chart.index_of(v).is_none()) {
                return Err(FormError::UnknownVariable { name: v, offset: None });
            }
        }
        Ok(OneForm { chart, coefficients })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coefficients(&self) -> &[Expr] {
        &self.coefficients
    }

    pub fn coefficient(&self, name: &str) -> Option<&Expr> {
        self.chart.index_of(name).map(|i| &self.coefficients[i])
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `f · α`.
    pub fn scaled(&self, factor: &Expr) -> OneForm {
        OneForm {
            chart: self.chart.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| Expr::Mul(vec![factor.clone(), c.clone()]))
                .collect(),
        }
    }

    /// Same coefficients over a different chart with the same coordinate names.
    pub fn with_chart(&self, chart: Chart) -> Result<OneForm, FormError> {
        OneForm::new(chart, self.coefficients.clone())
    }

    pub(crate) fn compiled(&self) -> Result<Vec<Compiled>, FormError> {
        self.coefficients
            .iter()
            .map(|c| Compiled::new(c, self.chart.names()))
            .collect()
    }

    /// Coefficient values at a point.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, FormError> {
        self.coefficients
            .iter()
            .map(|c| c.eval(self.chart.names(), point))
            .collect()
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in self.chart.names().iter().zip(&self.coefficients) {
            if c.is_zero() {
                continue;
            }
            let (negative, shown): (bool, Option<Expr>) = match c {
                Expr::Const(k) if *k == num_rational::BigRational::from_integer(1.into()) => (false, None),
                Expr::Const(k) if *k == num_rational::BigRational::from_integer((-1).into()) => (true, None),
                Expr::Const(k) if k < &num_rational::BigRational::from_integer(0.into()) && !first => {
                    (true, Some(Expr::Const(-k)))
                }
                Expr::Neg(inner) if !first => (true, Some((**inner).clone())),
                other => (false, Some(other.clone())),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if let Some(e) = shown {
                if matches!(e, Expr::Add(_)) {
                    write!(f, "({e})*")?;
                } else {
                    write!(f, "{e}*")?;
                }
            }
            write!(f, "d{name}")?;
            first = false;
        }
        if first {
            write!(f, "0*d{}", self.chart.names()[0])?;
        }
        Ok(())
    }
}

/// `Σ_{i<j} c_ij dx_i ∧ dx_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    names: Vec<String>,
    entries: Vec<((usize, usize), Expr)>,
}

impl TwoForm {
    /// Coefficient of `dx_i ∧ dx_j`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Expr {
        if i == j {
            return Expr::zero();
        }
        let (a, b) = (i.min(j), i.max(j));
        let c = self
            .entries
            .iter()
            .find(|(k, _)| *k == (a, b))
            .map(|(_, e)| e.clone())
            .unwrap_or_else(Expr::zero);
        if i < j {
            c
        } else {
            Expr::Neg(Box::new(c)).simplify()
        }
    }

    /// Coefficient of `d<a> ∧ d<b>` by coordinate names.
    pub fn get_named(&self, a: &str, b: &str) -> Option<Expr> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.get(i, j))
    }

    pub fn entries(&self) -> &[((usize, usize), Expr)] {
        &self.entries
    }

    pub fn is_symbolically_zero(&self) -> bool {
        self.entries.iter().all(|(_, e)| e.is_zero())
    }
}

/// `dα`, with `c_ij = ∂_i a_j − ∂_j a_i`.
pub fn exterior_derivative(alpha: &OneForm) -> TwoForm {
    let names = alpha.chart.names().to_vec();
    let n = names.len();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = Expr::Add(vec![
                alpha.coefficients[j].diff(&names[i]),
                Expr::Neg(Box::new(alpha.coefficients[i].diff(&names[j]))),
            ])
            .simplify();
            entries.push(((i, j), c));
        }
    }
    TwoForm { names, entries }
}

/// Coefficient of `α ∧ dα` relative to `dx₁ ∧ dx₂ ∧ dx₃`.
pub fn contact_coefficient(alpha: &OneForm) -> Result<Expr, FormError> {
    if alpha.dim() != 3 {
        return Err(FormError::DimensionMismatch {
            expected: 3,
            found: alpha.dim(),
        });
    }
    let d = exterior_derivative(alpha);
    let a = &alpha.coefficients;
    Ok(Expr::Add(vec![
        Expr::Mul(vec![a[0].clone(), d.get(1, 2)]),
        Expr::Neg(Box::new(Expr::Mul(vec![a[1].clone(), d.get(0, 2)]))),
        Expr::Mul(vec![a[2].clone(), d.get(0, 1)]),
    ])
    .simplify())
}

/// Outcome of sampling the contact condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactReport {
    pub sign: ContactSign,
    /// Smallest `|α ∧ dα|` seen.
    pub min_abs: f64,
    /// Sample points showing the failure (mixed verdicts only).
    pub witnesses: Vec<Vec<f64>>,
    pub samples: usize,
    pub excluded: usize,
}

/// Samples the coefficient of `α ∧ dα` on a grid (`grid` holds one count per
/// axis, or a single count for all axes) and classifies its sign.
///
/// Samples with `|c| < 10·tolerance` get extra neighbours at half the grid
/// step along each axis before a verdict is reached.
pub fn contact_sign(alpha: &OneForm, grid: &[usize]) -> Result<ContactReport, FormError> {
    let coefficient = contact_coefficient(alpha)?;
    let chart = alpha.chart();
    let counts: Vec<usize> = match grid.len() {
        1 => vec![grid[0]; 3],
        3 => grid.to_vec(),
        k => {
            return Err(FormError::DimensionMismatch { expected: 3, found: k });
        }
    };
    if counts.contains(&0) {
        return Err(FormError::InvalidChart("grid counts must be positive".into()));
    }
    let compiled = Compiled::new(&coefficient, chart.names())?;
    let filter = chart.exclusion_filter()?;
    let axes: Vec<Vec<f64>> = (0..3).map(|a| chart.axis_samples(a, counts[a])).collect();
    let steps: Vec<f64> = (0..3)
        .map(|a| {
            if axes[a].len() > 1 {
                axes[a][1] - axes[a][0]
            } else {
                chart.ranges()[a].1 - chart.ranges()[a].0
            }
        })
        .collect();

    let mut stats = SignStats::default();
    let mut point = [0.0; 3];
    for &x in &axes[0] {
        for &y in &axes[1] {
            for &z in &axes[2] {
                point = [x, y, z];
                if filter.excludes(&point) {
                    stats.excluded += 1;
                    continue;
                }
                let c = compiled.eval(&point);
                stats.record(&point, c)?;
                if c.abs() < 10.0 * CONTACT_TOLERANCE {
                    for axis in 0..3 {
                        for dir in [-0.5, 0.5] {
                            let mut q = point;
                            q[axis] += dir * steps[axis];
                            let (lo, hi) = chart.ranges()[axis];
                            if !chart.periodic()[axis] && (q[axis] < lo || q[axis] > hi) {
                                continue;
                            }
                            if filter.excludes(&q) {
                                continue;
                            }
                            stats.record(&q, compiled.eval(&q))?;
                        }
                    }
                }
            }
        }
    }
    let _ = point;
    stats.finish()
}

#[derive(Default)]
struct SignStats {
    samples: usize,
    excluded: usize,
    positive: usize,
    negative: usize,
    min_abs: f64,
    zero_points: Vec<Vec<f64>>,
    first_positive: Option<Vec<f64>>,
    first_negative: Option<Vec<f64>>,
}

impl SignStats {
    fn record(&mut self, p: &[f64], c: f64) -> Result<(), FormError> {
        if !c.is_finite() {
            return Err(FormError::NonFinite { point: p.to_vec() });
        }
        if self.samples == 0 || c.abs() < self.min_abs {
            self.min_abs = c.abs();
        }
        self.samples += 1;
        if c > CONTACT_TOLERANCE {
            self.positive += 1;
            self.first_positive.get_or_insert_with(|| p.to_vec());
        } else if c < -CONTACT_TOLERANCE {
            self.negative += 1;
            self.first_negative.get_or_insert_with(|| p.to_vec());
        } else if self.zero_points.len() < MAX_WITNESSES {
            self.zero_points.push(p.to_vec());
        }
        Ok(())
    }

    fn finish(self) -> Result<ContactReport, FormError> {
        if self.samples == 0 {
            return Err(FormError::EmptySample);
        }
        let sign = if self.positive == self.samples {
            ContactSign::Positive
        } else if self.negative == self.samples {
            ContactSign::Negative
        } else {
            ContactSign::Mixed
        };
        let witnesses = if sign == ContactSign::Mixed {
            let mut w = self.zero_points;
            w.truncate(MAX_WITNESSES - 2);
            w.extend(self.first_positive);
            w.extend(self.first_negative);
            w
        } else {
            Vec::new()
        };
        Ok(ContactReport {
            sign,
            min_abs: self.min_abs,
            witnesses,
            samples: self.samples,
            excluded: self.excluded,
        })
    }
}

/// A smooth map given by one expression per target coordinate, written in
/// the source chart's coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartMap {
    source: Chart,
    components: Vec<Expr>,
}

impl ChartMap {
    pub fn new(source: Chart, components: Vec<Expr>) -> Result<Self, FormError> {
        for c in &components {
            if let Some(v) = c.variables().into_iter().find(|v| source.index_of(v).is_none()) {
                return Err(FormError::UnknownVariable { name: v, offset: None });
            }
        }
        Ok(ChartMap { source, components })
    }

    pub fn identity(chart: &Chart) -> Self {
        ChartMap {
            source: chart.clone(),
            components: chart.names().iter().map(|n| Expr::var(n)).collect(),
        }
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// `self ∘ inner`: `inner` maps into the source chart of `self`.
    pub fn compose(&self, inner: &ChartMap) -> Result<ChartMap, FormError> {
        if inner.components.len() != self.source.dim() {
            return Err(FormError::DimensionMismatch {
                expected: self.source.dim(),
                found: inner.components.len(),
            });
        }
        let subst: HashMap<String, Expr> = self
            .source
            .names()
            .iter()
            .cloned()
            .zip(inner.components.iter().cloned())
            .collect();
        ChartMap::new(
            inner.source.clone(),
            self.components.iter().map(|c| c.substitute(&subst)).collect(),
        )
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, FormError> {
        self.components
            .iter()
            .map(|c| c.eval(self.source.names(), point))
            .collect()
    }
}

/// `F*α`: coefficient `k` is `Σ_j a_j(F) ∂F_j/∂x_k`.
pub fn pullback(map: &ChartMap, alpha: &OneForm) -> Result<OneForm, FormError> {
    if map.components.len() != alpha.dim() {
        return Err(FormError::DimensionMismatch {
            expected: alpha.dim(),
            found: map.components.len(),
        });
    }
    let subst: HashMap<String, Expr> = alpha
        .chart
        .names()
        .iter()
        .cloned()
        .zip(map.components.iter().cloned())
        .collect();
    let pulled: Vec<Expr> = alpha.coefficients.iter().map(|a| a.substitute(&subst)).collect();
    let coefficients = map
        .source
        .names()
        .iter()
        .map(|xk| {
            Expr::Add(
                pulled
                    .iter()
                    .zip(&map.components)
                    .map(|(a, f)| Expr::Mul(vec![a.clone(), f.diff(xk)]))
                    .collect(),
            )
            .simplify()
        })
        .collect();
    OneForm::new(map.source.clone(), coefficients)
}

/// Numeric equality of two forms at random points of `a`'s chart.
pub fn forms_equal(a: &OneForm, b: &OneForm, points: usize, tol: f64, seed: u64) -> Result<bool, FormError> {
    Ok(max_form_difference(a, b, points, seed)? <= tol)
}

/// Largest coefficient difference between two forms at random points,
/// relative to `1 + |coefficient|`.
pub fn max_form_difference(a: &OneForm, b: &OneForm, points: usize, seed: u64) -> Result<f64, FormError> {
    if a.chart.names() != b.chart.names() {
        return Err(FormError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (ca, cb) = (a.compiled()?, b.compiled()?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let p = a.chart.random_point(&mut rng)?;
        for (x, y) in ca.iter().zip(&cb) {
            let (u, v) = (x.eval(&p), y.eval(&p));
            worst = worst.max((u - v).abs() / (1.0 + u.abs().max(v.abs())));
        }
    }
    Ok(worst)
}

/// How far two forms are from defining the same oriented kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMatch {
    /// Largest component of `a` orthogonal to `b`, relative to `|a|`.
    pub max_residual: f64,
    /// Range of the ratio `⟨a, b⟩ / |b|²`; positive iff the orientations agree.
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl KernelMatch {
    pub fn is_positive_multiple(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.min_ratio > 0.0
    }
}

/// Compares `a` and `b` pointwise: `a` should equal `λ·b` with `λ > 0`.
pub fn kernel_match(a: &OneForm, b: &OneForm, points: usize, seed: u64) -> Result<KernelMatch, FormError> {
    if a.chart.names() != b.chart.names() {
        return Err(FormError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (ca, cb) = (a.compiled()?, b.compiled()?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = KernelMatch {
        max_residual: 0.0,
        min_ratio: f64::INFINITY,
        max_ratio: f64::NEG_INFINITY,
    };
    for _ in 0..points {
        let p = a.chart.random_point(&mut rng)?;
        let u: Vec<f64> = ca.iter().map(|c| c.eval(&p)).collect();
        let v: Vec<f64> = cb.iter().map(|c| c.eval(&p)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let uu: f64 = u.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            return Err(FormError::NonFinite { point: p });
        }
        let ratio = u.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() / vv;
        let residual = u
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - ratio * y).powi(2))
            .sum::<f64>()
            .sqrt()
            / uu.sqrt().max(f64::MIN_POSITIVE);
        out.max_residual = out.max_residual.max(residual);
        out.min_ratio = out.min_ratio.min(ratio);
        out.max_ratio = out.max_ratio.max(ratio);
    }
    Ok(out)
}

/// Names of the radial, angular and height coordinates of a cylindrical chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusCoords<'a> {
    pub radial: &'a str,
    pub angle: &'a str,
    pub height: &'a str,
}

impl Default for TorusCoords<'static> {
    fn default() -> Self {
        TorusCoords {
            radial: "r",
            angle: "theta",
            height: "z",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeReport {
    /// `dz/dθ` of the kernel line field on the torus (value at the first sample).
    pub slope: f64,
    /// Largest minus smallest slope over the samples.
    pub spread: f64,
    pub samples: usize,
}

/// Slope `dz/dθ = −a_θ/a_z` of the characteristic foliation of the torus
/// `{radial = r}`, sampled on a `samples × samples` grid of the angle and height.
pub fn characteristic_slope_on_torus(
    alpha: &OneForm,
    coords: TorusCoords<'_>,
    r: f64,
    samples: usize,
) -> Result<SlopeReport, FormError> {
    let chart = alpha.chart();
    let find = |n: &str| {
        chart.index_of(n).ok_or_else(|| FormError::UnknownVariable {
            name: n.to_string(),
            offset: None,
        })
    };
    let (ir, ia, ih) = (find(coords.radial)?, find(coords.angle)?, find(coords.height)?);
    if alpha.dim() != 3 {
        return Err(FormError::DimensionMismatch {
            expected: 3,
            found: alpha.dim(),
        });
    }
    let compiled = alpha.compiled()?;
    let samples = samples.max(1);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut first = None;
    let mut point = [0.0; 3];
    point[ir] = r;
    for &a in &chart.axis_samples(ia, samples) {
        for &h in &chart.axis_samples(ih, samples) {
            point[ia] = a;
            point[ih] = h;
            let (ca, ch) = (compiled[ia].eval(&point), compiled[ih].eval(&point));
            if ch.is_nan() || ca.is_nan() || ch.abs() <= CONTACT_TOLERANCE * (1.0 + ca.abs()) {
                return Err(FormError::DegenerateKernel { r });
            }
            let s = -ca / ch;
            first.get_or_insert(s);
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    Ok(SlopeReport {
        slope: first.expect("at least one sample"),
        spread: hi - lo,
        samples: samples * samples,
    })
}

/// `r²/(r⁴ − 1)`, written to avoid cancellation near `r = 1`.
pub fn zeta_slope(r: f64) -> f64 {
    let r2 = r * r;
    r2 / ((r - 1.0) * (r + 1.0) * (r2 + 1.0))
}

/// Radius solving `r²/(r⁴ − 1) = p/q`, with the residual reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRadius {
    pub r: f64,
    pub residual: f64,
}

/// Inverts the slope function by bisection: negative slopes come from
/// `r ∈ (0, 1)`, positive ones from `r > 1`; the slope function is
/// decreasing on each branch.
pub fn r_of_slope(p: i64, q: i64) -> Result<SlopeRadius, FormError> {
    if q <= 0 || p.gcd(&q) != 1 {
        return Err(FormError::InvalidSlope { p, q });
    }
    if p == 0 {
        return Err(FormError::SlopeOutOfRange { p, q });
    }
    let target = p as f64 / q as f64;
    let (mut lo, mut hi) = if target < 0.0 {
        (0.0, 1.0)
    } else {
        let mut hi = 2.0;
        while zeta_slope(hi) >= target {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(FormError::SlopeOutOfRange { p, q });
            }
        }
        (1.0, hi)
    };
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if zeta_slope(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = if (zeta_slope(lo) - target).abs() < (zeta_slope(hi) - target).abs() && lo > 0.0 && lo != 1.0 {
        lo
    } else {
        hi
    };
    Ok(SlopeRadius {
        r,
        residual: (zeta_slope(r) - target).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formcalc::parse_form;

    fn xyz() -> Chart {
        Chart::new(&[("x", -2.0, 2.0), ("y", -2.0, 2.0), ("z", -2.0, 2.0)]).unwrap()
    }

    fn form(text: &str) -> OneForm {
        parse_form(text, &xyz(), &HashMap::new()).unwrap()
    }

    #[test]
    fn derivative_of_standard_form() {
        let d = exterior_derivative(&form("dz - y*dx"));
        assert_eq!(d.get(0, 1), Expr::one());
        assert_eq!(d.get(1, 0), Expr::int(-1));
        assert_eq!(d.get(0, 2), Expr::zero());
        assert_eq!(d.get(1, 2), Expr::zero());
    }

    #[test]
    fn exact_forms_are_closed() {
        // d(sin(x)·y) = y cos(x) dx + sin(x) dy
        let d = exterior_derivative(&form("y*cos(x)*dx + sin(x)*dy"));
        assert!(d.is_symbolically_zero(), "{d:?}");
    }

    #[test]
    fn contact_signs() {
        let r = contact_sign(&form("dz - y*dx"), &[16]).unwrap();
        assert_eq!(r.sign, ContactSign::Positive);
        assert!((r.min_abs - 1.0).abs() < 1e-15);
        let r = contact_sign(&form("dx"), &[8]).unwrap();
        assert_eq!(r.sign, ContactSign::Mixed);
        assert_eq!(r.min_abs, 0.0);
        assert!(!r.witnesses.is_empty());
        let r = contact_sign(&form("dz + y*dx"), &[8]).unwrap();
        assert_eq!(r.sign, ContactSign::Negative);
    }

    #[test]
    fn contact_sign_rejects_other_dimensions() {
        let chart = Chart::new(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]).unwrap();
        let f = parse_form("dx", &chart, &HashMap::new()).unwrap();
        assert!(matches!(contact_sign(&f, &[4]), Err(FormError::DimensionMismatch { .. })));
    }

    #[test]
    fn identity_pullback() {
        let a = form("dz + x*dy - y*dx");
        let p = pullback(&ChartMap::identity(&xyz()), &a).unwrap();
        assert!(forms_equal(&p, &a, 200, 1e-12, 1).unwrap());
    }

    #[test]
    fn slope_function_and_inverse() {
        assert!((zeta_slope(0.5) + 4.0 / 15.0).abs() < 1e-15);
        let s = r_of_slope(-4, 15).unwrap();
        assert!((s.r - 0.5).abs() < 1e-9);
        assert!(s.residual < 1e-10);
        assert!(matches!(r_of_slope(0, 1), Err(FormError::SlopeOutOfRange { .. })));
        assert!(matches!(r_of_slope(2, 4), Err(FormError::InvalidSlope { .. })));
        assert!(matches!(r_of_slope(1, -2), Err(FormError::InvalidSlope { .. })));
        let s = r_of_slope(3, 2).unwrap();
        assert!(s.r > 1.0 && s.residual < 1e-10);
    }

    #[test]
    fn display_round_trips() {
        for text in ["dz - y*dx", "-dx + 2*dy", "(1 - x^4)*dz + x^2*dy", "-(x*y)*dx - 3*dz", "x*dx - dy + dz"] {
            let f = form(text);
            let printed = f.to_string();
            assert_eq!(form(&printed), f, "{text} -> {printed}");
        }
        assert_eq!(form("x*dx - dy + dz").to_string(), "x*dx - dy + dz");
        assert_eq!(form("0*dx").to_string(), "0*dx");
    }
}
