//! Lifts of circle homeomorphisms to the real line.
//!
//! A [`LiftedCircleMap`] is an increasing homeomorphism `f` of `ℝ` with
//! `f(t + 1) = f(t) + 1`. Three representations are supported:
//!
//! - piecewise-linear maps with exact rational breakpoints ([`PlMap`]),
//!   evaluated exactly;
//! - boundary actions of disk isometries ([`MoebiusLift`]), evaluated in
//!   binary64;
//! - words in other maps and their inverses ([`WordMap`]).
//!
//! Only one period is stored; equivariance holds by construction.
//!
//! The circle coordinate is `t ↦ e^{2πit}` on the boundary of the unit disk.
//! Words are read as function composition: `[w₁, w₂, …, w_k]` is
//! `w₁ ∘ w₂ ∘ … ∘ w_k`, so `w_k` is applied first.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::hyperbolic::Isometry2H;

/// Default sampling resolution for numerical sup/inf of displacement.
pub const DEFAULT_DISPLACEMENT_GRID: usize = 4096;

/// Exact iteration of piecewise-linear maps falls back to binary64 once the
/// iterate needs more bits than this.
const EXACT_ITERATION_BIT_LIMIT: u64 = 512;

/// Resolution `2^-DYADIC_BITS` of the outward rounding once exact iteration
/// outgrows [`EXACT_ITERATION_BIT_LIMIT`].
const DYADIC_BITS: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircleError {
    #[error("piecewise-linear map needs at least one breakpoint")]
    NoBreakpoints,
    #[error("breakpoint abscissa {0} lies outside [0,1)")]
    AbscissaOutOfRange(String),
    #[error("breakpoint abscissae must be strictly increasing (index {0})")]
    UnsortedAbscissae(usize),
    #[error("map is not strictly increasing at breakpoint {0}")]
    NotIncreasing(usize),
    #[error("a relator needs an even, nonzero number of generators, got {0}")]
    InvalidGeneratorCount(usize),
    #[error("iteration count must be positive")]
    ZeroIterations,
    #[error("sampling grid must have at least one point")]
    EmptyGrid,
    #[error("lifts differ by a non-constant amount (spread {spread:e}, worst at t = {witness})")]
    NonConstantDifference { spread: f64, witness: f64 },
    #[error("lifts differ by {value}, which is not within tolerance of an integer")]
    NonIntegerDifference { value: f64 },
}

/// Sup or inf of `f(t) - t`: exact for piecewise-linear maps, sampled otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Displacement {
    Exact(BigRational),
    Approx(f64),
}

impl Displacement {
    pub fn to_f64(&self) -> f64 {
        match self {
            Displacement::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Displacement::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Displacement::Exact(r) => Some(r),
            Displacement::Approx(_) => None,
        }
    }
}

impl fmt::Display for Displacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Displacement::Exact(r) => write!(f, "{r}"),
            Displacement::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Estimate `f^N(0)/N` of the translation number of `f`.
///
/// The true translation number lies within `error_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationNumberEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub iterations: usize,
}

fn floor_rat(x: &BigRational) -> BigRational {
    x.floor()
}

/// Piecewise-linear lift stored over one period.
///
/// Breakpoints `(t_i, v_i)` have `t_i ∈ [0,1)` strictly increasing and
/// `v_i = f(t_i)` strictly increasing with `v_last < v_0 + 1`. Between the last
/// breakpoint and `t_0 + 1` the map interpolates towards `v_0 + 1`.
#[derive(Debug, Clone)]
pub struct PlMap {
    points: Vec<(BigRational, BigRational)>,
    approx: Vec<(f64, f64)>,
}

impl PartialEq for PlMap {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PlMap {}

impl PlMap {
    pub fn new(points: Vec<(BigRational, BigRational)>) -> Result<Self, CircleError> {
        if points.is_empty() {
            return Err(CircleError::NoBreakpoints);
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        for (i, (t, _)) in points.iter().enumerate() {
            if *t < zero || *t >= one {
                return Err(CircleError::AbscissaOutOfRange(t.to_string()));
            }
            if i > 0 && points[i - 1].0 >= *t {
                return Err(CircleError::UnsortedAbscissae(i));
            }
            if i > 0 && points[i - 1].1 >= points[i].1 {
                return Err(CircleError::NotIncreasing(i));
            }
        }
        let last = points.len() - 1;
        if points[last].1 >= &points[0].1 + &one {
            return Err(CircleError::NotIncreasing(last));
        }
        let mut map = PlMap {
            points,
            approx: Vec::new(),
        };
        map.simplify();
        map.approx = map
            .points
            .iter()
            .map(|(t, v)| (t.to_f64().unwrap_or(f64::NAN), v.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(map)
    }

    /// `t ↦ t + c`.
    pub fn translation(c: BigRational) -> Self {
        PlMap::new(vec![(BigRational::zero(), c)]).expect("a translation is always valid")
    }

    pub fn identity() -> Self {
        Self::translation(BigRational::zero())
    }

    pub fn breakpoints(&self) -> &[(BigRational, BigRational)] {
        &self.points
    }

    /// Breakpoint `i`, or its periodic shift for indices just outside the range.
    fn point_wrapped(&self, i: isize) -> (BigRational, BigRational) {
        let n = self.points.len() as isize;
        let k = i.rem_euclid(n);
        let shift = BigRational::from_integer(((i - k) / n).into());
        let (t, v) = &self.points[k as usize];
        (t + &shift, v + &shift)
    }

    fn slope_between(&self, i: isize) -> BigRational {
        let (t0, v0) = self.point_wrapped(i);
        let (t1, v1) = self.point_wrapped(i + 1);
        (v1 - v0) / (t1 - t0)
    }

    // Drops breakpoints whose two adjacent segments have the same slope.
    fn simplify(&mut self) {
        while self.points.len() > 1 {
            let n = self.points.len() as isize;
            let redundant =
                (0..n).find(|&i| self.slope_between(i - 1) == self.slope_between(i));
            match redundant {
                Some(i) => {
                    self.points.remove(i as usize);
                }
                None => break,
            }
        }
        if self.points.len() == 1 {
            let (t, v) = self.points[0].clone();
            self.points[0] = (BigRational::zero(), v - t);
        }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let n = floor_rat(t);
        let s = t - &n;
        let i = self.points.partition_point(|(ti, _)| *ti <= s) as isize;
        let (t0, v0) = self.point_wrapped(i - 1);
        let (t1, v1) = self.point_wrapped(i);
        let value = &v0 + (&v1 - &v0) * (&s - &t0) / (&t1 - &t0);
        value + n
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let n = t.floor();
        let s = t - n;
        let len = self.approx.len();
        let i = self.approx.partition_point(|(ti, _)| *ti <= s);
        let (t0, v0) = if i == 0 {
            let (t, v) = self.approx[len - 1];
            (t - 1.0, v - 1.0)
        } else {
            self.approx[i - 1]
        };
        let (t1, v1) = if i == len {
            let (t, v) = self.approx[0];
            (t + 1.0, v + 1.0)
        } else {
            self.approx[i]
        };
        v0 + (v1 - v0) * (s - t0) / (t1 - t0) + n
    }

    pub fn inverse(&self) -> PlMap {
        let mut points: Vec<(BigRational, BigRational)> = self
            .points
            .iter()
            .map(|(t, v)| {
                let k = floor_rat(v);
                (v - &k, t - &k)
            })
            .collect();
        points.sort_by(|a, b| a.0.cmp(&b.0));
        PlMap::new(points).expect("inverse of a valid map is valid")
    }

    /// Exact composition `self ∘ inner`.
    pub fn compose(&self, inner: &PlMap) -> PlMap {
        let inner_inv = inner.inverse();
        let mut abscissae: Vec<BigRational> = inner.points.iter().map(|(t, _)| t.clone()).collect();
        for (u, _) in &self.points {
            let s = inner_inv.eval(u);
            abscissae.push(&s - floor_rat(&s));
        }
        let table: BTreeMap<BigRational, BigRational> = abscissae
            .into_iter()
            .map(|s| {
                let v = self.eval(&inner.eval(&s));
                (s, v)
            })
            .collect();
        PlMap::new(table.into_iter().collect()).expect("composition of valid maps is valid")
    }

    /// `sup (f(t) - t)`, attained at a breakpoint.
    pub fn sup_displacement(&self) -> BigRational {
        self.points
            .iter()
            .map(|(t, v)| v - t)
            .max()
            .expect("at least one breakpoint")
    }
}

#[derive(Debug, Clone, Copy)]
struct BoundaryAction {
    arg_alpha: f64,
    ratio: Complex64,
    shift: f64,
}

impl BoundaryAction {
    // For z ↦ (αz + β)/(β̄z + ᾱ) on |z| = 1, M(z)/z = (α/ᾱ)·w̄/w with
    // w = 1 + (β̄/ᾱ)z and Re w > 0, so arg(M(z)/z) = 2 arg α − 2 Arg w has a
    // continuous closed form on the whole circle.
    fn of(iso: &Isometry2H) -> Self {
        let (alpha, beta) = iso.to_disk();
        let ratio = beta.conj() / alpha.conj();
        let arg_alpha = alpha.arg();
        let d0 = (arg_alpha - (Complex64::new(1.0, 0.0) + ratio).arg()) / PI;
        BoundaryAction {
            arg_alpha,
            ratio,
            shift: -d0.floor(),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let frac = t - t.floor();
        let z = Complex64::from_polar(1.0, TAU * frac);
        let w = Complex64::new(1.0, 0.0) + self.ratio * z;
        t + (self.arg_alpha - w.arg()) / PI + self.shift
    }
}

/// Lift of the boundary action of a disk isometry.
///
/// The canonical lift (winding 0) has `f(0) ∈ [0,1)`; `winding` adds an
/// integer translation.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusLift {
    iso: Isometry2H,
    winding: i64,
    fwd: BoundaryAction,
    bwd: BoundaryAction,
}

impl MoebiusLift {
    pub fn new(iso: Isometry2H, winding: i64) -> Self {
        MoebiusLift {
            iso,
            winding,
            fwd: BoundaryAction::of(&iso),
            bwd: BoundaryAction::of(&iso.inverse()),
        }
    }

    pub fn canonical(iso: Isometry2H) -> Self {
        Self::new(iso, 0)
    }

    pub fn isometry(&self) -> &Isometry2H {
        &self.iso
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.fwd.eval(t) + self.winding as f64
    }

    pub fn eval_inverse(&self, y: f64) -> f64 {
        // The canonical lift of M⁻¹ differs from the true inverse by an integer.
        let s0 = self.bwd.eval(y);
        let k = (self.eval(s0) - y).round();
        s0 - k
    }

    pub fn inverse(&self) -> MoebiusLift {
        let canonical = MoebiusLift::canonical(self.iso.inverse());
        let c = canonical.eval(self.eval(0.0));
        MoebiusLift::new(self.iso.inverse(), -(c.round() as i64))
    }

    /// Single Möbius lift equal to `self ∘ inner`.
    ///
    /// Two lifts of the same circle map differ by a constant integer, so the
    /// winding is read off at `t = 0`.
    pub fn compose(&self, inner: &MoebiusLift) -> MoebiusLift {
        let product = self.iso.compose(&inner.iso);
        let candidate = MoebiusLift::canonical(product);
        let w = (self.eval(inner.eval(0.0)) - candidate.eval(0.0)).round();
        MoebiusLift::new(product, w as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Direct,
    Inverse,
}

impl Exponent {
    pub fn flip(self) -> Self {
        match self {
            Exponent::Direct => Exponent::Inverse,
            Exponent::Inverse => Exponent::Direct,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Exponent::Direct => 1,
            Exponent::Inverse => -1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Letter {
    pub map: Arc<LiftedCircleMap>,
    pub exponent: Exponent,
}

/// Product `w₁ ∘ w₂ ∘ … ∘ w_k` of maps and inverses.
#[derive(Debug, Clone, Default)]
pub struct WordMap {
    pub letters: Vec<Letter>,
}

impl WordMap {
    pub fn new(letters: Vec<Letter>) -> Self {
        WordMap { letters }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.letters.iter().rev().fold(t, |x, l| match l.exponent {
            Exponent::Direct => l.map.eval(x),
            Exponent::Inverse => l.map.eval_inverse(x),
        })
    }

    pub fn eval_inverse(&self, y: f64) -> f64 {
        self.letters.iter().fold(y, |x, l| match l.exponent {
            Exponent::Direct => l.map.eval_inverse(x),
            Exponent::Inverse => l.map.eval(x),
        })
    }

    pub fn inverse(&self) -> WordMap {
        WordMap {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    map: Arc::clone(&l.map),
                    exponent: l.exponent.flip(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    PiecewiseLinear,
    MoebiusBoundaryLift,
    Word,
}

/// A homeomorphism of `ℝ` commuting with `t ↦ t + 1`.
#[derive(Debug, Clone)]
pub enum LiftedCircleMap {
    PiecewiseLinear(PlMap),
    MoebiusBoundaryLift(MoebiusLift),
    Word(WordMap),
}

impl From<PlMap> for LiftedCircleMap {
    fn from(m: PlMap) -> Self {
        LiftedCircleMap::PiecewiseLinear(m)
    }
}

impl From<MoebiusLift> for LiftedCircleMap {
    fn from(m: MoebiusLift) -> Self {
        LiftedCircleMap::MoebiusBoundaryLift(m)
    }
}

impl From<WordMap> for LiftedCircleMap {
    fn from(m: WordMap) -> Self {
        LiftedCircleMap::Word(m)
    }
}

impl LiftedCircleMap {
    pub fn identity() -> Self {
        PlMap::identity().into()
    }

    pub fn translation(c: BigRational) -> Self {
        PlMap::translation(c).into()
    }

    pub fn kind(&self) -> MapKind {
        match self {
            LiftedCircleMap::PiecewiseLinear(_) => MapKind::PiecewiseLinear,
            LiftedCircleMap::MoebiusBoundaryLift(_) => MapKind::MoebiusBoundaryLift,
            LiftedCircleMap::Word(_) => MapKind::Word,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            LiftedCircleMap::PiecewiseLinear(m) => m.eval_f64(t),
            LiftedCircleMap::MoebiusBoundaryLift(m) => m.eval(t),
            LiftedCircleMap::Word(w) => w.eval(t),
        }
    }

    pub fn eval_inverse(&self, y: f64) -> f64 {
        match self {
            LiftedCircleMap::PiecewiseLinear(m) => m.inverse().eval_f64(y),
            LiftedCircleMap::MoebiusBoundaryLift(m) => m.eval_inverse(y),
            LiftedCircleMap::Word(w) => w.eval_inverse(y),
        }
    }

    /// Exact piecewise-linear form, when every constituent is piecewise-linear.
    pub fn flatten_pl(&self) -> Option<PlMap> {
        match self {
            LiftedCircleMap::PiecewiseLinear(m) => Some(m.clone()),
            LiftedCircleMap::MoebiusBoundaryLift(_) => None,
            LiftedCircleMap::Word(w) => {
                let mut acc = PlMap::identity();
                for l in &w.letters {
                    let m = l.map.flatten_pl()?;
                    let m = match l.exponent {
                        Exponent::Direct => m,
                        Exponent::Inverse => m.inverse(),
                    };
                    acc = acc.compose(&m);
                }
                Some(acc)
            }
        }
    }

    /// Number of primitive evaluations behind one call to [`eval`](Self::eval).
    pub fn evaluation_cost(&self) -> usize {
        match self {
            LiftedCircleMap::Word(w) => w.letters.iter().map(|l| l.map.evaluation_cost()).sum(),
            _ => 1,
        }
    }

    /// `|f(t+1) - f(t) - 1|`.
    pub fn equivariance_defect(&self, t: f64) -> f64 {
        (self.eval(t + 1.0) - self.eval(t) - 1.0).abs()
    }
}

/// `f ∘ g`; piecewise-linear pairs are flattened exactly, anything else
/// becomes a two-letter word.
pub fn compose(f: &LiftedCircleMap, g: &LiftedCircleMap) -> LiftedCircleMap {
    if let (LiftedCircleMap::PiecewiseLinear(a), LiftedCircleMap::PiecewiseLinear(b)) = (f, g) {
        return a.compose(b).into();
    }
    WordMap::new(vec![
        Letter {
            map: Arc::new(f.clone()),
            exponent: Exponent::Direct,
        },
        Letter {
            map: Arc::new(g.clone()),
            exponent: Exponent::Direct,
        },
    ])
    .into()
}

pub fn invert(f: &LiftedCircleMap) -> LiftedCircleMap {
    match f {
        LiftedCircleMap::PiecewiseLinear(m) => m.inverse().into(),
        LiftedCircleMap::MoebiusBoundaryLift(m) => m.inverse().into(),
        LiftedCircleMap::Word(w) => w.inverse().into(),
    }
}

/// `h(f) = sup_t (f(t) - t)`, exact whenever `f` flattens to a piecewise-linear
/// map, otherwise sampled on [`DEFAULT_DISPLACEMENT_GRID`] points of `[0,1)`.
pub fn sup_displacement(f: &LiftedCircleMap) -> Displacement {
    sup_displacement_on_grid(f, DEFAULT_DISPLACEMENT_GRID)
}

pub fn sup_displacement_on_grid(f: &LiftedCircleMap, grid: usize) -> Displacement {
    if let Some(pl) = f.flatten_pl() {
        return Displacement::Exact(pl.sup_displacement());
    }
    let grid = grid.max(1);
    let sup = (0..grid)
        .map(|i| {
            let t = i as f64 / grid as f64;
            f.eval(t) - t
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Displacement::Approx(sup)
}

/// `inf_t (f(t) - t) = -h(f⁻¹)`.
pub fn inf_displacement(f: &LiftedCircleMap) -> Displacement {
    match sup_displacement(&invert(f)) {
        Displacement::Exact(r) => Displacement::Exact(-r),
        Displacement::Approx(x) => Displacement::Approx(-x),
    }
}

/// Estimates the translation number by `f^N(0)/N`.
///
/// The orbit of `0` is tracked as an enclosure `lo ≤ f^k(0) ≤ hi`, which
/// monotonicity of `f` preserves. Piecewise-linear maps are iterated exactly
/// while the iterate stays under 512 bits and are then rounded outward to a
/// dyadic grid; every other map kind is iterated in binary64 with an outward
/// slack per step. The reported bound is `1/N` plus half the enclosure width,
/// so rounding that gets amplified near a repelling fixed point widens the
/// bound instead of silently biasing the value.
pub fn translation_number(
    f: &LiftedCircleMap,
    iterations: usize,
) -> Result<TranslationNumberEstimate, CircleError> {
    if iterations == 0 {
        return Err(CircleError::ZeroIterations);
    }
    if let Some(pl) = f.flatten_pl() {
        return Ok(pl_iteration(&pl, iterations));
    }
    Ok(float_iteration(f, iterations))
}

fn round_dyadic(x: &BigRational, up: bool) -> BigRational {
    let scale = BigRational::from_integer(num_bigint::BigInt::one() << DYADIC_BITS);
    let scaled = x * &scale;
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r / scale
}

fn pl_iteration(pl: &PlMap, iterations: usize) -> TranslationNumberEstimate {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for _ in 0..iterations {
        let collapsed = lo == hi;
        lo = pl.eval(&lo);
        hi = if collapsed { lo.clone() } else { pl.eval(&hi) };
        if lo.numer().bits() + lo.denom().bits() > EXACT_ITERATION_BIT_LIMIT {
            lo = round_dyadic(&lo, false);
        }
        if hi.numer().bits() + hi.denom().bits() > EXACT_ITERATION_BIT_LIMIT {
            hi = round_dyadic(&hi, true);
        }
    }
    let n = BigRational::from_integer(iterations.into());
    let value = ((&lo + &hi) / (BigRational::from_integer(2.into()) * &n))
        .to_f64()
        .unwrap_or(f64::NAN);
    let half_width = ((&hi - &lo) / (BigRational::from_integer(2.into()) * &n))
        .to_f64()
        .unwrap_or(f64::NAN);
    TranslationNumberEstimate {
        value,
        error_bound: 1.0 / iterations as f64 + half_width + 4.0 * f64::EPSILON * (1.0 + value.abs()),
        iterations,
    }
}

fn float_iteration(f: &LiftedCircleMap, iterations: usize) -> TranslationNumberEstimate {
    let cost = f.evaluation_cost() as f64;
    // Each primitive evaluation rounds at a few ulps of the running iterate.
    let slack = |x: f64| cost * 16.0 * f64::EPSILON * (1.0 + x.abs());
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for _ in 0..iterations {
        let a = f.eval(lo);
        let b = if hi == lo { a } else { f.eval(hi) };
        lo = a - slack(a);
        hi = b + slack(b);
    }
    let n = iterations as f64;
    let value = 0.5 * (lo + hi) / n;
    TranslationNumberEstimate {
        value,
        error_bound: 1.0 / n + 0.5 * (hi - lo) / n + 4.0 * f64::EPSILON * (1.0 + value.abs()),
        iterations,
    }
}

/// `∏_{i=1}^{g} [f_{2i-1}, f_{2i}]` with `[a, b] = a ∘ b ∘ a⁻¹ ∘ b⁻¹`.
pub fn evaluate_relator(maps: &[LiftedCircleMap]) -> Result<LiftedCircleMap, CircleError> {
    if maps.is_empty() || !maps.len().is_multiple_of(2) {
        return Err(CircleError::InvalidGeneratorCount(maps.len()));
    }
    let mut letters = Vec::with_capacity(2 * maps.len());
    for pair in maps.chunks(2) {
        let a = Arc::new(pair[0].clone());
        let b = Arc::new(pair[1].clone());
        for (m, e) in [
            (&a, Exponent::Direct),
            (&b, Exponent::Direct),
            (&a, Exponent::Inverse),
            (&b, Exponent::Inverse),
        ] {
            letters.push(Letter {
                map: Arc::clone(m),
                exponent: e,
            });
        }
    }
    Ok(WordMap::new(letters).into())
}

/// Outcome of a displacement-bound check on a sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WoodCheck {
    pub holds: bool,
    pub bound: f64,
    pub min_displacement: f64,
    pub max_displacement: f64,
    /// First grid point where `|f(t) - t|` exceeds the bound.
    pub witness: Option<f64>,
}

/// Checks `-bound ≤ f(t) - t ≤ bound` at `grid` points of `[0,1)`.
pub fn displacement_within(
    f: &LiftedCircleMap,
    bound: f64,
    grid: usize,
) -> Result<WoodCheck, CircleError> {
    if grid == 0 {
        return Err(CircleError::EmptyGrid);
    }
    let slack = 1e-12 * (1.0 + bound.abs());
    let mut min_d = f64::INFINITY;
    let mut max_d = f64::NEG_INFINITY;
    let mut witness = None;
    for i in 0..grid {
        let t = i as f64 / grid as f64;
        let d = f.eval(t) - t;
        min_d = min_d.min(d);
        max_d = max_d.max(d);
        if witness.is_none() && d.abs() > bound + slack {
            witness = Some(t);
        }
    }
    Ok(WoodCheck {
        holds: witness.is_none(),
        bound,
        min_displacement: min_d,
        max_displacement: max_d,
        witness,
    })
}

/// Wood's bound for a genus-`g` relator: `-2g ≤ φ_K(t) - t ≤ 2g`.
pub fn wood_bound_check(maps: &[LiftedCircleMap], grid: usize) -> Result<WoodCheck, CircleError> {
    let relator = evaluate_relator(maps)?;
    let genus = maps.len() / 2;
    displacement_within(&relator, 2.0 * genus as f64, grid)
}

/// Reads the Euler number off two lifts of the boundary holonomy: checks that
/// `f_D - f_K` is constant on the grid and returns the nearest integer.
pub fn euler_from_sections(
    f_d: &LiftedCircleMap,
    f_k: &LiftedCircleMap,
    grid: usize,
    tol: f64,
) -> Result<i64, CircleError> {
    if grid == 0 {
        return Err(CircleError::EmptyGrid);
    }
    let diffs: Vec<(f64, f64)> = (0..grid)
        .map(|i| {
            let t = i as f64 / grid as f64;
            (t, f_d.eval(t) - f_k.eval(t))
        })
        .collect();
    let base = diffs[0].1;
    let (witness, worst) = diffs
        .iter()
        .map(|&(t, d)| (t, (d - base).abs()))
        .fold((0.0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let min = diffs.iter().map(|d| d.1).fold(f64::INFINITY, f64::min);
    let max = diffs.iter().map(|d| d.1).fold(f64::NEG_INFINITY, f64::max);
    if max - min > tol {
        return Err(CircleError::NonConstantDifference {
            spread: max - min,
            witness: if worst > 0.0 { witness } else { 0.0 },
        });
    }
    let mean = diffs.iter().map(|d| d.1).sum::<f64>() / grid as f64;
    let nearest = mean.round();
    if (mean - nearest).abs() > tol {
        return Err(CircleError::NonIntegerDifference { value: mean });
    }
    Ok(nearest as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn pl(points: &[(i64, i64, i64, i64)]) -> PlMap {
        PlMap::new(
            points
                .iter()
                .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn translations_compose_and_invert_exactly() {
        let a = LiftedCircleMap::translation(rat(1, 3));
        let b = LiftedCircleMap::translation(rat(-5, 7));
        let ab = compose(&a, &b).flatten_pl().unwrap();
        assert_eq!(ab, PlMap::translation(rat(1, 3) + rat(-5, 7)));
        let inv = invert(&a).flatten_pl().unwrap();
        assert_eq!(inv, PlMap::translation(rat(-1, 3)));
    }

    #[test]
    fn identity_is_neutral() {
        let f = pl(&[(0, 1, 1, 4), (1, 2, 3, 5)]);
        let id = PlMap::identity();
        assert_eq!(id.compose(&f), f);
        assert_eq!(f.compose(&id), f);
    }

    #[test]
    fn pl_inverse_round_trip_is_exact() {
        let f = pl(&[(0, 1, 1, 4), (1, 2, 3, 5)]);
        let inv = f.inverse();
        for k in 0..50 {
            let t = rat(k - 25, 17);
            assert_eq!(inv.eval(&f.eval(&t)), t);
            assert_eq!(f.eval(&inv.eval(&t)), t);
        }
        assert_eq!(inv.compose(&f), PlMap::identity());
    }

    #[test]
    fn rejects_invalid_breakpoints() {
        assert_eq!(PlMap::new(vec![]), Err(CircleError::NoBreakpoints));
        assert!(matches!(
            PlMap::new(vec![(rat(1, 1), rat(0, 1))]),
            Err(CircleError::AbscissaOutOfRange(_))
        ));
        assert_eq!(
            PlMap::new(vec![(rat(1, 2), rat(0, 1)), (rat(1, 4), rat(1, 2))]),
            Err(CircleError::UnsortedAbscissae(1))
        );
        assert_eq!(
            PlMap::new(vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(0, 1))]),
            Err(CircleError::NotIncreasing(1))
        );
        // last value must stay below f(0) + 1
        assert_eq!(
            PlMap::new(vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 1))]),
            Err(CircleError::NotIncreasing(1))
        );
    }

    #[test]
    fn collinear_breakpoints_are_dropped() {
        let f = pl(&[(0, 1, 1, 10), (1, 2, 6, 10)]);
        assert_eq!(f, PlMap::translation(rat(1, 10)));
    }

    #[test]
    fn displacement_of_translation_and_identity() {
        let c = rat(-7, 3);
        let f = LiftedCircleMap::translation(c.clone());
        assert_eq!(sup_displacement(&f), Displacement::Exact(c.clone()));
        assert_eq!(inf_displacement(&f), Displacement::Exact(c));
        let id = LiftedCircleMap::identity();
        assert_eq!(sup_displacement(&id), Displacement::Exact(rat(0, 1)));
    }

    #[test]
    fn translation_number_of_rational_translation_is_exact() {
        let f = LiftedCircleMap::translation(rat(3, 7));
        let est = translation_number(&f, 100).unwrap();
        assert_eq!(est.value, 3.0 / 7.0);
        assert!(est.error_bound >= 0.01 && est.error_bound < 0.01 + 1e-14);
        assert_eq!(translation_number(&f, 0), Err(CircleError::ZeroIterations));
    }

    #[test]
    fn one_sided_fixed_point_does_not_bias_the_estimate() {
        // 1/13 attracts from the left and repels to the right; an orbit that
        // is rounded across it gains a spurious lap.
        let f = pl(&[(1, 13, 1, 13), (4, 13, 12, 13)]);
        let shifted: LiftedCircleMap = f.compose(&PlMap::translation(rat(1, 1))).into();
        let f: LiftedCircleMap = f.into();
        for n in [50, 400, 2000] {
            let a = translation_number(&f, n).unwrap();
            let b = translation_number(&shifted, n).unwrap();
            assert!(a.value.abs() <= a.error_bound, "n={n}: {a:?}");
            assert!((b.value - 1.0).abs() <= b.error_bound, "n={n}: {b:?}");
        }
    }

    #[test]
    fn relator_requires_even_count() {
        let id = LiftedCircleMap::identity();
        assert!(matches!(
            evaluate_relator(&[id.clone(), id.clone(), id.clone()]),
            Err(CircleError::InvalidGeneratorCount(3))
        ));
        assert!(matches!(evaluate_relator(&[]), Err(CircleError::InvalidGeneratorCount(0))));
    }

    #[test]
    fn relator_of_commuting_translations_is_identity() {
        let a = LiftedCircleMap::translation(rat(2, 5));
        let b = LiftedCircleMap::translation(rat(-1, 3));
        let r = evaluate_relator(&[a, b]).unwrap();
        assert_eq!(r.flatten_pl().unwrap(), PlMap::identity());
    }

    #[test]
    fn wood_check_flags_constructed_violation() {
        let g = 2;
        let f = LiftedCircleMap::translation(rat(2 * g + 1, 1));
        let check = displacement_within(&f, 2.0 * g as f64, 64).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness, Some(0.0));
        let id = LiftedCircleMap::identity();
        assert!(wood_bound_check(&[id.clone(), id], 64).unwrap().holds);
    }

    #[test]
    fn euler_number_from_constructed_sections() {
        let id = LiftedCircleMap::identity();
        let rot = LiftedCircleMap::translation(rat(1, 4));
        let fk = evaluate_relator(&[rot.clone(), rot]).unwrap();
        let fd = LiftedCircleMap::translation(rat(-3, 1));
        assert_eq!(euler_from_sections(&fd, &fk, 256, 1e-9), Ok(-3));
        assert_eq!(euler_from_sections(&id, &id, 256, 1e-9), Ok(0));

        let bumped: LiftedCircleMap = pl(&[(0, 1, 0, 1), (1, 2, 3, 5)]).into();
        assert!(matches!(
            euler_from_sections(&bumped, &id, 256, 1e-9),
            Err(CircleError::NonConstantDifference { .. })
        ));
        let half = LiftedCircleMap::translation(rat(1, 2));
        assert!(matches!(
            euler_from_sections(&half, &id, 256, 1e-9),
            Err(CircleError::NonIntegerDifference { .. })
        ));
    }
}
