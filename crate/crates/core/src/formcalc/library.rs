//! Catalog of the explicit contact forms used in the classification, the
//! maps along which they are pulled back, and the Hopf-flow invariance check.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_rational::BigRational;

use super::chart::{Chart, DEFAULT_EXCLUSION_EPSILON};
use super::expr::Expr;
use super::forms::{max_form_difference, pullback, r_of_slope, ChartMap, OneForm};
use super::parse::{parse_expr, parse_form};
use super::{ContactSign, FormError};

const TAU: f64 = 2.0 * PI;

/// One catalog form.
#[derive(Debug, Clone, PartialEq)]
pub struct LibraryEntry {
    pub name: &'static str,
    /// Surface syntax the form was parsed from.
    pub source: String,
    pub form: OneForm,
    /// Sign of `α ∧ dα` in chart order; `None` for entries that are not
    /// 3-dimensional.
    pub expected: Option<ContactSign>,
    /// Enrollment around the fibres, where the classification states it.
    pub enrollment: Option<i64>,
    pub note: &'static str,
}

fn chart(coords: &[(&str, f64, f64)], periodic: &[&str]) -> Chart {
    let mut c = Chart::new(coords).expect("catalog chart");
    for p in periodic {
        c = c.with_periodic(p).expect("catalog chart");
    }
    c
}

fn radial_chart(coords: &[(&str, f64, f64)], periodic: &[&str]) -> Chart {
    chart(coords, periodic)
        .with_exclusion(Expr::var("r"), DEFAULT_EXCLUSION_EPSILON)
        .expect("catalog chart")
}

fn int_bindings(pairs: &[(&str, i64)]) -> HashMap<String, Expr> {
    pairs.iter().map(|(k, v)| (k.to_string(), Expr::int(*v))).collect()
}

fn entry(
    name: &'static str,
    chart: Chart,
    text: &str,
    bindings: &[(&str, i64)],
    expected: Option<ContactSign>,
    enrollment: Option<i64>,
    note: &'static str,
) -> LibraryEntry {
    let form = parse_form(text, &chart, &int_bindings(bindings)).expect("catalog form parses");
    LibraryEntry {
        name,
        source: text.to_string(),
        form,
        expected,
        enrollment,
        note,
    }
}

/// Chart `(x, y, t)` with `t` periodic of period 1.
fn strip_chart() -> Chart {
    chart(&[("x", -1.0, 1.0), ("y", -1.0, 1.0), ("t", 0.0, 1.0)], &["t"])
}

/// Chart `(r, θ, z)` of a solid torus neighbourhood, axis excluded.
pub fn zeta_chart() -> Chart {
    radial_chart(
        &[("r", 0.05, 1.4), ("theta", 0.0, TAU), ("z", 0.0, TAU)],
        &["theta", "z"],
    )
}

/// Chart `(p, θ, z)` carrying `dz + p dθ`.
pub fn jet_chart() -> Chart {
    chart(&[("p", -2.0, 2.0), ("theta", 0.0, TAU), ("z", -2.0, 2.0)], &["theta"])
}

/// `cos(2nπt)dx − sin(2nπt)dy` on `(x, y, t)`: enrollment `−n` around the
/// `t`-circles.
pub fn rotating_form(n: i64) -> Result<OneForm, FormError> {
    parse_form(
        "cos(2*n*pi*t)*dx - sin(2*n*pi*t)*dy",
        &strip_chart(),
        &int_bindings(&[("n", n)]),
    )
}

/// `cos(2nπx)dy − sin(2nπx)dt` on `(x, y, t)`.
pub fn sheared_form(n: i64) -> Result<OneForm, FormError> {
    parse_form(
        "cos(2*n*pi*x)*dy - sin(2*n*pi*x)*dt",
        &chart(&[("x", 0.0, 1.0), ("y", -1.0, 1.0), ("t", -1.0, 1.0)], &["x"]),
        &int_bindings(&[("n", n)]),
    )
}

/// The model contact forms.
pub fn model_library() -> Vec<LibraryEntry> {
    let cube = || chart(&[("x", -2.0, 2.0), ("y", -2.0, 2.0), ("z", -2.0, 2.0)], &[]);
    vec![
        entry(
            "wood",
            chart(&[("x", -1.0, 1.0), ("y", -1.0, 1.0), ("theta", 0.0, TAU)], &["theta"]),
            "dtheta + y*dx",
            &[],
            Some(ContactSign::Negative),
            None,
            "dtheta - u*dx with u = -y; contact exactly when the y-derivative of u has constant sign",
        ),
        entry(
            "rotating",
            strip_chart(),
            "cos(2*n*pi*t)*dx - sin(2*n*pi*t)*dy",
            &[("n", 1)],
            Some(ContactSign::Positive),
            Some(-1),
            "enrollment -n around the fibres, here n = 1",
        ),
        entry(
            "clairaldian",
            chart(&[("x", -1.0, 1.0), ("y", -1.0, 1.0), ("t", -1.0, 1.0)], &[]),
            "cos(n*pi*x)*dy - sin(n*pi*x)*dt",
            &[("n", 2)],
            Some(ContactSign::Positive),
            None,
            "convex surface {t = 0} fibred by Legendrian circles, n = 2",
        ),
        entry(
            "zeta",
            zeta_chart(),
            "(1 - r^4)*dz + r^2*dtheta",
            &[],
            Some(ContactSign::Positive),
            None,
            "tori r = const carry linear characteristic foliations of slope r^2/(r^4 - 1)",
        ),
        entry(
            "standard",
            cube(),
            "dz - y*dx",
            &[],
            Some(ContactSign::Positive),
            None,
            "standard contact structure on R^3",
        ),
        entry(
            "radial",
            radial_chart(
                &[("r", 0.0, 1.5), ("theta", 0.0, TAU), ("t", -1.0, 1.0)],
                &["theta"],
            ),
            "dt + r^2*dtheta",
            &[],
            Some(ContactSign::Positive),
            None,
            "neighbourhood of a transverse knot",
        ),
        entry(
            "symmetric",
            cube(),
            "dz + x*dy - y*dx",
            &[],
            Some(ContactSign::Positive),
            None,
            "kernel invariant under (e^s x, e^s y, e^(2s) z)",
        ),
        entry(
            "twisted",
            chart(&[("x1", -1.0, 1.0), ("x2", -1.0, 1.0), ("theta", 0.0, TAU)], &["theta"]),
            "cos(m*theta)*dx1 - sin(m*theta)*dx2",
            &[("m", 2)],
            Some(ContactSign::Positive),
            None,
            "tangent to the theta-circles, twisting m = 2 times",
        ),
        entry(
            "jet",
            jet_chart(),
            "dz + p*dtheta",
            &[],
            Some(ContactSign::Positive),
            None,
            "1-jet space of functions on the circle",
        ),
        entry(
            "sphere",
            chart(
                &[("x1", -1.0, 1.0), ("y1", -1.0, 1.0), ("x2", -1.0, 1.0), ("y2", -1.0, 1.0)],
                &[],
            ),
            "x1*dy1 - y1*dx1 + x2*dy2 - y2*dx2",
            &[],
            None,
            None,
            "restricts to the standard contact structure on the unit sphere of C^2",
        ),
    ]
}

/// Looks up a catalog entry by name.
pub fn library_entry(name: &str) -> Option<LibraryEntry> {
    model_library().into_iter().find(|e| e.name == name)
}

fn float_const(v: f64) -> Expr {
    Expr::rational(BigRational::from_float(v).expect("finite constant"))
}

/// Embedding `(x, y, t) ↦ (p, θ, z)` with `θ = 2πx`,
/// `z = cos(2nπx)y − sin(2nπx)t`, `p = n(sin(2nπx)y + cos(2nπx)t)`,
/// which carries `cos(2nπx)dy − sin(2nπx)dt` to `dz + p dθ`.
pub fn jet_embedding(n: i64) -> Result<ChartMap, FormError> {
    let source = chart(&[("x", 0.0, 1.0), ("y", -1.0, 1.0), ("t", -1.0, 1.0)], &["x"]);
    let b = int_bindings(&[("n", n)]);
    let comps = [
        "n*(sin(2*n*pi*x)*y + cos(2*n*pi*x)*t)",
        "2*pi*x",
        "cos(2*n*pi*x)*y - sin(2*n*pi*x)*t",
    ]
    .iter()
    .map(|c| parse_expr(c, source.names(), &b))
    .collect::<Result<Vec<_>, _>>()?;
    ChartMap::new(source, comps)
}

/// Which of the two embeddings `ψ±` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// The embedding `ψ±_{p,q}` of `(1/2)D² × S¹`, in coordinates `(a, s, t)`
/// (polar radius, polar angle, circle), into the `ζ` chart:
///
/// `r = 2a·r(p,q)·(1 ± (a/q)cos(qs − pt))`, `θ = s + (a/q)sin(2(qs − pt))`, `z = t`.
pub fn psi_embedding(p: i64, q: i64, branch: Branch) -> Result<ChartMap, FormError> {
    let radius = r_of_slope(p, q)?.r;
    psi_embedding_with_radius(p, q, radius, branch)
}

/// As [`psi_embedding`] with an explicit `r(p,q)`.
pub fn psi_embedding_with_radius(p: i64, q: i64, radius: f64, branch: Branch) -> Result<ChartMap, FormError> {
    let source = chart(
        &[("a", 0.02, 0.45), ("s", 0.0, TAU), ("t", 0.0, TAU)],
        &["s", "t"],
    );
    let mut b = int_bindings(&[("p", p), ("q", q)]);
    b.insert("R".into(), float_const(radius));
    let sign = match branch {
        Branch::Plus => "+",
        Branch::Minus => "-",
    };
    let comps = [
        format!("2*a*R*(1 {sign} (a/q)*cos(q*s - p*t))"),
        "s + (a/q)*sin(2*(q*s - p*t))".to_string(),
        "t".to_string(),
    ]
    .iter()
    .map(|c| parse_expr(c, source.names(), &b))
    .collect::<Result<Vec<_>, _>>()?;
    ChartMap::new(source, comps)
}

/// `ψ±*ζ` on `(1/2)D² × S¹`.
pub fn psi_pullback(p: i64, q: i64, branch: Branch) -> Result<OneForm, FormError> {
    let zeta = library_entry("zeta").expect("catalog has zeta").form;
    pullback(&psi_embedding(p, q, branch)?, &zeta)
}

/// Linear map rotating `(x1, y1)` by `2πt` and `(x2, y2)` by `±2πt`.
pub fn hopf_flow(t: f64, branch: Branch) -> Result<ChartMap, FormError> {
    let sphere = library_entry("sphere").expect("catalog has sphere").form;
    let source = sphere.chart().clone();
    let (c, s) = ((TAU * t).cos(), (TAU * t).sin());
    let s2 = match branch {
        Branch::Plus => s,
        Branch::Minus => -s,
    };
    let rot = |cx: f64, sx: f64, u: &str, v: &str| -> [Expr; 2] {
        [
            Expr::add(vec![
                Expr::mul(vec![float_const(cx), Expr::var(u)]),
                Expr::mul(vec![float_const(-sx), Expr::var(v)]),
            ]),
            Expr::add(vec![
                Expr::mul(vec![float_const(sx), Expr::var(u)]),
                Expr::mul(vec![float_const(cx), Expr::var(v)]),
            ]),
        ]
    };
    let [x1, y1] = rot(c, s, "x1", "y1");
    let [x2, y2] = rot(c, s2, "x2", "y2");
    ChartMap::new(source, vec![x1, y1, x2, y2])
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfReport {
    /// Largest relative coefficient difference between the pulled-back and
    /// the original form over all times, branches and sample points.
    pub max_difference: f64,
    pub times: Vec<f64>,
    pub holds: bool,
}

/// Pulls the 4-dimensional catalog form back along both Hopf flows at each
/// time and compares with the original at random points.
pub fn hopf_invariance_check(times: &[f64], tol: f64) -> Result<HopfReport, FormError> {
    let sphere = library_entry("sphere").expect("catalog has sphere").form;
    let mut worst: f64 = 0.0;
    for (k, &t) in times.iter().enumerate() {
        for branch in [Branch::Plus, Branch::Minus] {
            let pulled = pullback(&hopf_flow(t, branch)?, &sphere)?;
            worst = worst.max(max_form_difference(&pulled, &sphere, 200, k as u64)?);
        }
    }
    Ok(HopfReport {
        max_difference: worst,
        times: times.to_vec(),
        holds: worst <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formcalc::forms::{contact_sign, kernel_match};

    #[test]
    fn catalog_shape() {
        let lib = model_library();
        assert!(lib.len() >= 10);
        let three: Vec<_> = lib.iter().filter(|e| e.form.dim() == 3).collect();
        assert!(three.iter().all(|e| e.expected.is_some()));
        assert_eq!(library_entry("rotating").unwrap().enrollment, Some(-1));
    }

    #[test]
    fn catalog_signs_on_coarse_grid() {
        for e in model_library().into_iter().filter(|e| e.form.dim() == 3) {
            let report = contact_sign(&e.form, &[12]).unwrap();
            assert_eq!(Some(report.sign), e.expected, "{}", e.name);
        }
    }

    #[test]
    fn jet_embedding_pulls_back_exactly() {
        let jet = library_entry("jet").unwrap().form;
        let pulled = pullback(&jet_embedding(1).unwrap(), &jet).unwrap();
        let target = sheared_form(1).unwrap();
        let m = kernel_match(&pulled, &target.with_chart(pulled.chart().clone()).unwrap(), 100, 3).unwrap();
        assert!(m.is_positive_multiple(1e-10), "{m:?}");
    }

    #[test]
    fn psi_pullbacks_are_positive() {
        for branch in [Branch::Plus, Branch::Minus] {
            let f = psi_pullback(-4, 15, branch).unwrap();
            assert_eq!(contact_sign(&f, &[10]).unwrap().sign, ContactSign::Positive);
        }
    }

    #[test]
    fn hopf_quarter_turn() {
        let r = hopf_invariance_check(&[0.0, 0.25], 1e-12).unwrap();
        assert!(r.holds, "{r:?}");
    }
}
