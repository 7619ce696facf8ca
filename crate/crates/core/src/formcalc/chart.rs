//! Coordinate charts: named coordinates with ranges, periodicity flags and
//! excluded neighbourhoods of singular loci.

use rand::Rng;

use super::expr::{Compiled, Expr};
use super::FormError;

/// Default half-width of the excluded neighbourhood around a singular locus.
pub const DEFAULT_EXCLUSION_EPSILON: f64 = 1e-3;

/// Points with `|expr| < epsilon` are left out of every sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct Exclusion {
    pub expr: Expr,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    names: Vec<String>,
    ranges: Vec<(f64, f64)>,
    periodic: Vec<bool>,
    exclusions: Vec<Exclusion>,
}

impl Chart {
    /// `coords` lists `(name, low, high)`.
    pub fn new(coords: &[(&str, f64, f64)]) -> Result<Self, FormError> {
        Self::from_parts(
            coords.iter().map(|c| c.0.to_string()).collect(),
            coords.iter().map(|c| (c.1, c.2)).collect(),
        )
    }

    pub fn from_parts(names: Vec<String>, ranges: Vec<(f64, f64)>) -> Result<Self, FormError> {
        if names.is_empty() {
            return Err(FormError::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(FormError::InvalidChart(format!("coordinate '{n}' declared twice")));
            }
            if matches!(n.as_str(), "pi" | "sin" | "cos" | "exp") {
                return Err(FormError::InvalidChart(format!("'{n}' is reserved")));
            }
        }
        for (n, &(lo, hi)) in names.iter().zip(&ranges) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(FormError::InvalidChart(format!("empty range [{lo}, {hi}] for '{n}'")));
            }
        }
        let dim = names.len();
        Ok(Chart {
            names,
            ranges,
            periodic: vec![false; dim],
            exclusions: Vec::new(),
        })
    }

    pub fn with_periodic(mut self, name: &str) -> Result<Self, FormError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| FormError::InvalidChart(format!("unknown coordinate '{name}'")))?;
        self.periodic[i] = true;
        Ok(self)
    }

    pub fn with_exclusion(mut self, expr: Expr, epsilon: f64) -> Result<Self, FormError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(FormError::InvalidChart(format!(
                "exclusion radius must be positive, got {epsilon}"
            )));
        }
        if let Some(v) = expr.variables().into_iter().find(|v| self.index_of(v).is_none()) {
            return Err(FormError::UnknownVariable { name: v, offset: None });
        }
        self.exclusions.push(Exclusion { expr, epsilon });
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    pub fn periodic(&self) -> &[bool] {
        &self.periodic
    }

    pub fn exclusions(&self) -> &[Exclusion] {
        &self.exclusions
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `count` sample values along one axis: endpoints included for ordinary
    /// axes, the duplicate endpoint dropped for periodic ones.
    pub fn axis_samples(&self, axis: usize, count: usize) -> Vec<f64> {
        let (lo, hi) = self.ranges[axis];
        if count <= 1 {
            return vec![0.5 * (lo + hi)];
        }
        let steps = if self.periodic[axis] { count } else { count - 1 };
        (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
            .collect()
    }

    pub(crate) fn exclusion_filter(&self) -> Result<ExclusionFilter, FormError> {
        Ok(ExclusionFilter(
            self.exclusions
                .iter()
                .map(|e| Ok((Compiled::new(&e.expr, &self.names)?, e.epsilon)))
                .collect::<Result<_, FormError>>()?,
        ))
    }

    pub fn is_excluded(&self, point: &[f64]) -> Result<bool, FormError> {
        Ok(self.exclusion_filter()?.excludes(point))
    }

    /// Uniform random point of the chart outside every exclusion.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<f64>, FormError> {
        let filter = self.exclusion_filter()?;
        for _ in 0..10_000 {
            let p: Vec<f64> = self.ranges.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
            if !filter.excludes(&p) {
                return Ok(p);
            }
        }
        Err(FormError::InvalidChart("exclusions cover the whole chart".into()))
    }
}

pub(crate) struct ExclusionFilter(Vec<(Compiled, f64)>);

impl ExclusionFilter {
    pub(crate) fn excludes(&self, point: &[f64]) -> bool {
        self.0.iter().any(|(e, eps)| e.eval(point).abs() < *eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Chart::new(&[("x", 0.0, 1.0), ("x", 0.0, 1.0)]).is_err());
        assert!(Chart::new(&[("x", 1.0, 0.0)]).is_err());
        assert!(Chart::new(&[("pi", 0.0, 1.0)]).is_err());
        let c = Chart::new(&[("r", 0.0, 1.0)]).unwrap();
        assert!(c.clone().with_periodic("s").is_err());
        assert!(c.clone().with_exclusion(Expr::var("r"), 0.0).is_err());
        assert!(c.with_exclusion(Expr::var("q"), 1e-3).is_err());
    }

    #[test]
    fn samples() {
        let c = Chart::new(&[("x", 0.0, 1.0), ("t", 0.0, 1.0)])
            .unwrap()
            .with_periodic("t")
            .unwrap();
        assert_eq!(c.axis_samples(0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(c.axis_samples(1, 4), vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn exclusions_apply() {
        let c = Chart::new(&[("r", 0.0, 1.0)])
            .unwrap()
            .with_exclusion(Expr::var("r"), DEFAULT_EXCLUSION_EPSILON)
            .unwrap();
        assert!(c.is_excluded(&[0.0005]).unwrap());
        assert!(!c.is_excluded(&[0.5]).unwrap());
    }
}
