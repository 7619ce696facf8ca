//! Multicurves on closed orientable surfaces, encoded by their complements.
//!
//! A [`SurfaceDecomposition`] lists the connected pieces of `S ∖ Γ` (each a
//! compact surface of some genus with some boundary circles) and the curves
//! of `Γ`, each gluing two boundary slots. This is enough to decide the
//! tightness criteria for invariant contact structures and convex surfaces,
//! which only look at disk components and the number of curves.
//!
//! Text format, one decomposition per file (`#` starts a comment):
//!
//! ```text
//! surface chi=0 sphere=false
//! piece A genus=0 boundaries=2
//! piece B genus=0 boundaries=2
//! curve c1 A.1 B.1
//! curve c2 A.2 B.2
//! ```
//!
//! Boundary slots are numbered from 1 within each piece.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

/// Largest number of pieces accepted by [`isotopy_equal`].
pub const MAX_ISOMORPHISM_PIECES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MulticurveError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("isomorphism search limited to {MAX_ISOMORPHISM_PIECES} pieces, got {0}")]
    ScaleExceeded(usize),
    #[error("({p}, {q}) is not a primitive class")]
    NotPrimitive { p: i64, q: i64 },
    #[error("a dividing set needs an even, positive number of components, got {0}")]
    InvalidComponentCount(u64),
    #[error("non-orientable surfaces are not supported")]
    NonOrientable,
    #[error("{0}")]
    InvalidArgument(String),
}

/// Unoriented primitive homology class `(p, q)` on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusCurve {
    p: i64,
    q: i64,
}

impl TorusCurve {
    /// Normalised so that `q > 0`, or `q = 0` and `p = 1`.
    pub fn new(p: i64, q: i64) -> Result<Self, MulticurveError> {
        if p.gcd(&q) != 1 {
            return Err(MulticurveError::NotPrimitive { p, q });
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(TorusCurve { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// `2n` parallel curves of a common slope on a torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusDividingSet {
    components: u64,
    slope: TorusCurve,
}

impl TorusDividingSet {
    pub fn new(components: u64, slope: TorusCurve) -> Result<Self, MulticurveError> {
        if components == 0 || !components.is_multiple_of(2) {
            return Err(MulticurveError::InvalidComponentCount(components));
        }
        Ok(TorusDividingSet { components, slope })
    }

    pub fn components(&self) -> u64 {
        self.components
    }

    pub fn slope(&self) -> TorusCurve {
        self.slope
    }
}

/// Minimal intersection number `|p q′ − q p′|` of two torus curves.
pub fn torus_intersection(a: &TorusCurve, b: &TorusCurve) -> u64 {
    (a.p * b.q - a.q * b.p).unsigned_abs()
}

/// Upper bound `−½ · #Γ · i(Γ, C)` on the twisting of a convex torus along `C`.
pub fn bennequin_semilocal_bound(gamma: &TorusDividingSet, c: &TorusCurve) -> Rational64 {
    let i = torus_intersection(&gamma.slope, c) as i64;
    -Rational64::new(gamma.components as i64 * i, 2)
}

/// Thurston–Bennequin invariant `deg + n − 1` of the knot obtained from a
/// curve of the given degree in an `n`-fold cover.
pub fn tb_from_degree(deg: i64, n: i64) -> Result<i64, MulticurveError> {
    if n <= 0 {
        return Err(MulticurveError::InvalidArgument("n must be positive".into()));
    }
    Ok(deg + n - 1)
}

/// A compact orientable piece of `S ∖ Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub genus: u32,
    pub boundaries: u32,
}

impl Piece {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries as i64
    }

    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.boundaries == 1
    }
}

/// Boundary slot `slot` (0-based) of piece `piece` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub piece: usize,
    pub slot: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    pub ends: [SlotRef; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDecomposition {
    pub ambient_chi: i64,
    pub ambient_sphere: bool,
    pub pieces: Vec<Piece>,
    pub curves: Vec<Curve>,
    pub piece_names: Vec<String>,
    pub curve_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// The first entry names the first violation found.
    pub diagnostics: Vec<String>,
}

impl SurfaceDecomposition {
    /// Builds a decomposition with generated names `P0, P1, …` and `c0, c1, …`.
    pub fn new(ambient_chi: i64, ambient_sphere: bool, pieces: Vec<Piece>, curves: Vec<Curve>) -> Self {
        let piece_names = (0..pieces.len()).map(|i| format!("P{i}")).collect();
        let curve_names = (0..curves.len()).map(|i| format!("c{i}")).collect();
        SurfaceDecomposition {
            ambient_chi,
            ambient_sphere,
            pieces,
            curves,
            piece_names,
            curve_names,
        }
    }

    /// The closed surface of Euler characteristic `chi` with no curves.
    pub fn closed(chi: i64) -> Self {
        let genus = ((2 - chi) / 2).max(0) as u32;
        Self::new(chi, chi == 2, vec![Piece { genus, boundaries: 0 }], vec![])
    }

    pub fn has_disk(&self) -> bool {
        self.pieces.iter().any(Piece::is_disk)
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut diagnostics = Vec::new();
        if self.pieces.is_empty() {
            diagnostics.push("no pieces".to_string());
        }
        if self.ambient_chi % 2 != 0 || self.ambient_chi > 2 {
            diagnostics.push(format!(
                "ambient euler characteristic {} is not that of a closed orientable surface",
                self.ambient_chi
            ));
        }
        if self.ambient_sphere != (self.ambient_chi == 2) {
            diagnostics.push(format!(
                "sphere flag {} inconsistent with chi={}",
                self.ambient_sphere, self.ambient_chi
            ));
        }
        let closed_allowed = self.pieces.len() == 1 && self.curves.is_empty();
        for (i, p) in self.pieces.iter().enumerate() {
            if p.boundaries == 0 && !closed_allowed {
                diagnostics.push(format!("piece {} has no boundary", self.piece_names[i]));
            }
        }
        let total: i64 = self.pieces.iter().map(Piece::euler_characteristic).sum();
        if !self.pieces.is_empty() && total != self.ambient_chi {
            diagnostics.push(format!(
                "euler mismatch: pieces sum to {total}, surface has {}",
                self.ambient_chi
            ));
        }
        let mut uses: BTreeMap<SlotRef, usize> = BTreeMap::new();
        for (ci, c) in self.curves.iter().enumerate() {
            for end in c.ends {
                match self.pieces.get(end.piece) {
                    Some(p) if end.slot < p.boundaries => *uses.entry(end).or_default() += 1,
                    _ => diagnostics.push(format!(
                        "curve {} references missing slot {}",
                        self.curve_names[ci],
                        self.slot_name(end)
                    )),
                }
            }
        }
        for (pi, p) in self.pieces.iter().enumerate() {
            for slot in 0..p.boundaries {
                let s = SlotRef { piece: pi, slot };
                match uses.get(&s).copied().unwrap_or(0) {
                    1 => {}
                    0 => diagnostics.push(format!("slot {} unused", self.slot_name(s))),
                    k => diagnostics.push(format!("slot {} used {k} times", self.slot_name(s))),
                }
            }
        }
        if !self.pieces.is_empty() && !self.is_connected() {
            diagnostics.push("gluing graph disconnected".to_string());
        }
        ValidationReport {
            valid: diagnostics.is_empty(),
            diagnostics,
        }
    }

    fn slot_name(&self, s: SlotRef) -> String {
        let name = self
            .piece_names
            .get(s.piece)
            .cloned()
            .unwrap_or_else(|| format!("#{}", s.piece));
        format!("{name}.{}", s.slot + 1)
    }

    fn is_connected(&self) -> bool {
        let n = self.pieces.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for c in &self.curves {
                let (a, b) = (c.ends[0].piece, c.ends[1].piece);
                for (from, to) in [(a, b), (b, a)] {
                    if from == i && to < n && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn ensure_valid(&self) -> Result<(), MulticurveError> {
        let report = self.validate();
        match report.diagnostics.into_iter().next() {
            None => Ok(()),
            Some(first) => Err(MulticurveError::InvalidDecomposition(first)),
        }
    }

    /// Parses the text format described in the module documentation.
    pub fn parse(text: &str) -> Result<Self, MulticurveError> {
        let mut header: Option<(i64, bool)> = None;
        let mut pieces = Vec::new();
        let mut piece_names: Vec<String> = Vec::new();
        let mut pending_curves: Vec<(usize, String, String, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| MulticurveError::Parse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "surface" => {
                    if header.is_some() {
                        return Err(err("duplicate surface line".into()));
                    }
                    let attrs = attributes(&words[1..]).map_err(err)?;
                    let chi = attr_int(&attrs, "chi").map_err(err)?;
                    let sphere = match attrs.get("sphere").map(String::as_str) {
                        Some("true") => true,
                        Some("false") => false,
                        Some(other) => return Err(err(format!("sphere must be true or false, got {other}"))),
                        None => chi == 2,
                    };
                    if let Some(o) = attrs.get("orientable") {
                        if o != "true" {
                            return Err(MulticurveError::NonOrientable);
                        }
                    }
                    header = Some((chi, sphere));
                }
                "piece" => {
                    if words.len() < 2 {
                        return Err(err("piece needs an identifier".into()));
                    }
                    let name = words[1].to_string();
                    if piece_names.contains(&name) {
                        return Err(err(format!("duplicate piece {name}")));
                    }
                    let attrs = attributes(&words[2..]).map_err(err)?;
                    if attrs.contains_key("crosscaps") {
                        return Err(MulticurveError::NonOrientable);
                    }
                    let genus = attr_int(&attrs, "genus").map_err(err)?;
                    let boundaries = attr_int(&attrs, "boundaries").map_err(err)?;
                    if genus < 0 || boundaries < 0 {
                        return Err(err("genus and boundaries must be nonnegative".into()));
                    }
                    pieces.push(Piece {
                        genus: genus as u32,
                        boundaries: boundaries as u32,
                    });
                    piece_names.push(name);
                }
                "curve" => {
                    if words.len() != 4 {
                        return Err(err("expected: curve <id> <piece>.<slot> <piece>.<slot>".into()));
                    }
                    pending_curves.push((
                        line_no,
                        words[1].to_string(),
                        words[2].to_string(),
                        words[3].to_string(),
                    ));
                }
                other => return Err(err(format!("unknown directive '{other}'"))),
            }
        }
        let (chi, sphere) = header.ok_or(MulticurveError::Parse {
            line: 1,
            message: "missing surface line".into(),
        })?;
        let mut curves = Vec::new();
        let mut curve_names = Vec::new();
        for (line, name, a, b) in pending_curves {
            let resolve = |s: &str| -> Result<SlotRef, MulticurveError> {
                let err = |message: String| MulticurveError::Parse { line, message };
                let (piece, slot) = s
                    .rsplit_once('.')
                    .ok_or_else(|| err(format!("slot '{s}' must look like <piece>.<slot>")))?;
                let piece = piece_names
                    .iter()
                    .position(|p| p == piece)
                    .ok_or_else(|| err(format!("unknown piece '{piece}'")))?;
                let slot: u32 = slot
                    .parse()
                    .ok()
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| err(format!("slot number in '{s}' must be a positive integer")))?;
                Ok(SlotRef { piece, slot: slot - 1 })
            };
            curves.push(Curve {
                ends: [resolve(&a)?, resolve(&b)?],
            });
            curve_names.push(name);
        }
        Ok(SurfaceDecomposition {
            ambient_chi: chi,
            ambient_sphere: sphere,
            pieces,
            curves,
            piece_names,
            curve_names,
        })
    }
}

fn attributes(words: &[&str]) -> Result<BTreeMap<String, String>, String> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("expected key=value, got '{w}'"))
        })
        .collect()
}

fn attr_int(attrs: &BTreeMap<String, String>, key: &str) -> Result<i64, String> {
    attrs
        .get(key)
        .ok_or_else(|| format!("missing {key}="))?
        .parse()
        .map_err(|_| format!("{key} must be an integer"))
}

/// Essential multicurve: no component bounds a disk. On the sphere every
/// curve bounds, so only the empty multicurve qualifies.
pub fn is_essential(dec: &SurfaceDecomposition) -> Result<bool, MulticurveError> {
    dec.ensure_valid()?;
    if dec.ambient_sphere {
        return Ok(dec.curves.is_empty());
    }
    Ok(!dec.has_disk())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tightness {
    UniversallyTight,
    NotUniversallyTight,
    /// A disk component occurs while the dividing set is disconnected or the
    /// Euler number fails the inequality required for tightness.
    OvertwistedCertificate,
}

impl fmt::Display for Tightness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tightness::UniversallyTight => "UniversallyTight",
            Tightness::NotUniversallyTight => "NotUniversallyTight",
            Tightness::OvertwistedCertificate => "OvertwistedCertificate",
        })
    }
}

/// Tightness of the invariant contact structure with dividing set `Γ` on a
/// bundle of Euler number `euler`.
///
/// Universally tight iff no component of `S ∖ Γ` is a disk, or — over the
/// sphere — `Γ` is connected and nonempty with `e ≥ 0`, or `Γ` is empty with
/// `e < 0`. When a disk component is present, tightness requires `Γ`
/// connected and `e > 0` (`e ≥ 0` on the sphere); failing that yields an
/// overtwisted certificate.
pub fn universal_tightness(dec: &SurfaceDecomposition, euler: i64) -> Result<Tightness, MulticurveError> {
    dec.ensure_valid()?;
    let k = dec.curves.len();
    let disk = dec.has_disk();
    let tight = if dec.ambient_sphere {
        (k == 0 && euler < 0) || (k == 1 && euler >= 0)
    } else {
        !disk
    };
    if tight {
        return Ok(Tightness::UniversallyTight);
    }
    let euler_ok = if dec.ambient_sphere { euler >= 0 } else { euler > 0 };
    if disk && (k != 1 || !euler_ok) {
        return Ok(Tightness::OvertwistedCertificate);
    }
    Ok(Tightness::NotUniversallyTight)
}

/// Tightness of the homogeneous neighbourhood `F × ℝ` of a convex surface
/// with dividing set `Γ`: no disk component, or on the sphere `Γ` connected
/// and nonempty.
pub fn convex_neighborhood_tight(dec: &SurfaceDecomposition) -> Result<bool, MulticurveError> {
    dec.ensure_valid()?;
    Ok(if dec.ambient_sphere {
        dec.curves.len() == 1
    } else {
        !dec.has_disk()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct CanonicalForm {
    ambient_chi: i64,
    pieces: Vec<Piece>,
    edges: Vec<(usize, usize)>,
}

/// A decomposition considered up to relabelling pieces, curves and slots.
#[derive(Debug)]
pub struct MulticurveClass {
    dec: SurfaceDecomposition,
    canonical: OnceLock<Result<CanonicalForm, MulticurveError>>,
}

impl Clone for MulticurveClass {
    fn clone(&self) -> Self {
        MulticurveClass::new(self.dec.clone())
    }
}

impl MulticurveClass {
    pub fn new(dec: SurfaceDecomposition) -> Self {
        MulticurveClass {
            dec,
            canonical: OnceLock::new(),
        }
    }

    pub fn decomposition(&self) -> &SurfaceDecomposition {
        &self.dec
    }

    fn canonical(&self) -> Result<&CanonicalForm, MulticurveError> {
        self.canonical
            .get_or_init(|| canonical_form(&self.dec))
            .as_ref()
            .map_err(Clone::clone)
    }
}

// Smallest relabelled edge list over all piece permutations that keep the
// pieces sorted by (genus, boundaries).
fn canonical_form(dec: &SurfaceDecomposition) -> Result<CanonicalForm, MulticurveError> {
    dec.ensure_valid()?;
    let n = dec.pieces.len();
    if n > MAX_ISOMORPHISM_PIECES {
        return Err(MulticurveError::ScaleExceeded(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| dec.pieces[i]);
    let pieces: Vec<Piece> = order.iter().map(|&i| dec.pieces[i]).collect();
    // groups of equal labels, as ranges of positions in `order`
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || pieces[i] != pieces[start] {
            groups.push(start..i);
            start = i;
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut position = vec![0usize; n];
    let mut arrangement = order.clone();
    search(dec, &groups, 0, &mut arrangement, &mut position, &mut best);
    Ok(CanonicalForm {
        ambient_chi: dec.ambient_chi,
        pieces,
        edges: best.unwrap_or_default(),
    })
}

fn search(
    dec: &SurfaceDecomposition,
    groups: &[std::ops::Range<usize>],
    g: usize,
    arrangement: &mut Vec<usize>,
    position: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if g == groups.len() {
        for (pos, &piece) in arrangement.iter().enumerate() {
            position[piece] = pos;
        }
        let mut edges: Vec<(usize, usize)> = dec
            .curves
            .iter()
            .map(|c| {
                let (a, b) = (position[c.ends[0].piece], position[c.ends[1].piece]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    let range = groups[g].clone();
    permute(dec, groups, g, arrangement, position, best, range.start, range.end);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    dec: &SurfaceDecomposition,
    groups: &[std::ops::Range<usize>],
    g: usize,
    arrangement: &mut Vec<usize>,
    position: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
    k: usize,
    end: usize,
) {
    if k + 1 >= end {
        search(dec, groups, g + 1, arrangement, position, best);
        return;
    }
    for i in k..end {
        arrangement.swap(k, i);
        permute(dec, groups, g, arrangement, position, best, k + 1, end);
        arrangement.swap(k, i);
    }
}

/// Isomorphism of decorated gluing graphs: pieces matched by genus and
/// boundary count, curves by the pieces they join.
pub fn isotopy_equal(a: &MulticurveClass, b: &MulticurveClass) -> Result<bool, MulticurveError> {
    if a.dec.ambient_sphere != b.dec.ambient_sphere {
        return Ok(false);
    }
    Ok(a.canonical()? == b.canonical()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slot(piece: usize, slot: u32) -> SlotRef {
        SlotRef { piece, slot }
    }

    fn curve(a: (usize, u32), b: (usize, u32)) -> Curve {
        Curve {
            ends: [slot(a.0, a.1), slot(b.0, b.1)],
        }
    }

    fn annulus_cycle(k: usize) -> SurfaceDecomposition {
        let pieces = vec![Piece { genus: 0, boundaries: 2 }; k];
        let curves = (0..k).map(|i| curve((i, 1), ((i + 1) % k, 0))).collect();
        SurfaceDecomposition::new(0, false, pieces, curves)
    }

    #[test]
    fn torus_curves_are_normalized() {
        assert_eq!(TorusCurve::new(-1, -2).unwrap(), TorusCurve::new(1, 2).unwrap());
        assert_eq!(TorusCurve::new(-1, 0).unwrap(), TorusCurve::new(1, 0).unwrap());
        assert!(TorusCurve::new(2, 4).is_err());
        assert!(TorusCurve::new(0, 0).is_err());
    }

    #[test]
    fn intersections() {
        let t = |p, q| TorusCurve::new(p, q).unwrap();
        assert_eq!(torus_intersection(&t(1, 0), &t(0, 1)), 1);
        assert_eq!(torus_intersection(&t(2, 3), &t(2, 3)), 0);
        assert_eq!(torus_intersection(&t(2, 3), &t(1, 1)), 1);
    }

    #[test]
    fn bennequin_bound_examples() {
        let t = |p, q| TorusCurve::new(p, q).unwrap();
        for n in 1..5u64 {
            let gamma = TorusDividingSet::new(2 * n, t(0, 1)).unwrap();
            assert_eq!(bennequin_semilocal_bound(&gamma, &t(1, 0)), Rational64::from_integer(-(n as i64)));
        }
        let gamma = TorusDividingSet::new(2, t(1, 0)).unwrap();
        assert_eq!(bennequin_semilocal_bound(&gamma, &t(1, 0)), Rational64::from_integer(0));
        assert!(TorusDividingSet::new(3, t(1, 0)).is_err());
        assert!(TorusDividingSet::new(0, t(1, 0)).is_err());
    }

    #[test]
    fn tb_examples() {
        assert_eq!(tb_from_degree(-3, 3), Ok(-1));
        assert_eq!(tb_from_degree(0, 1), Ok(0));
        assert_eq!(tb_from_degree(-1, 1), Ok(-1));
        assert!(tb_from_degree(0, 0).is_err());
    }

    #[test]
    fn validation_examples() {
        assert!(annulus_cycle(2).validate().valid);
        let sphere = SurfaceDecomposition::new(
            2,
            true,
            vec![Piece { genus: 0, boundaries: 1 }; 2],
            vec![curve((0, 0), (1, 0))],
        );
        assert!(sphere.validate().valid);
        let bad = SurfaceDecomposition::new(
            -2,
            false,
            vec![Piece { genus: 1, boundaries: 1 }, Piece { genus: 1, boundaries: 2 }],
            vec![curve((0, 0), (1, 0))],
        );
        let report = bad.validate();
        assert!(!report.valid);
        assert!(report.diagnostics[0].starts_with("euler mismatch"));
    }

    #[test]
    fn validation_catches_slot_misuse_and_disconnection() {
        let double = SurfaceDecomposition::new(
            0,
            false,
            vec![Piece { genus: 0, boundaries: 2 }],
            vec![curve((0, 0), (0, 0))],
        );
        let r = double.validate();
        assert!(r.diagnostics.iter().any(|d| d.contains("used 2 times")));
        assert!(r.diagnostics.iter().any(|d| d.contains("unused")));
        let split = SurfaceDecomposition::new(
            4,
            false,
            vec![Piece { genus: 0, boundaries: 1 }; 4],
            vec![curve((0, 0), (1, 0)), curve((2, 0), (3, 0))],
        );
        assert!(split.validate().diagnostics.iter().any(|d| d.contains("disconnected")));
        let sphere_flag = SurfaceDecomposition::new(0, true, vec![Piece { genus: 1, boundaries: 0 }], vec![]);
        assert!(!sphere_flag.validate().valid);
    }

    #[test]
    fn essential_examples() {
        assert_eq!(is_essential(&annulus_cycle(2)), Ok(true));
        let with_disk = SurfaceDecomposition::new(
            -2,
            false,
            vec![Piece { genus: 0, boundaries: 1 }, Piece { genus: 2, boundaries: 1 }],
            vec![curve((0, 0), (1, 0))],
        );
        assert_eq!(is_essential(&with_disk), Ok(false));
        assert_eq!(is_essential(&SurfaceDecomposition::closed(-2)), Ok(true));
        assert_eq!(is_essential(&SurfaceDecomposition::closed(2)), Ok(true));
    }

    #[test]
    fn isotopy_examples() {
        let a = MulticurveClass::new(annulus_cycle(2));
        let b = MulticurveClass::new(annulus_cycle(4));
        assert_eq!(isotopy_equal(&a, &a.clone()), Ok(true));
        assert_eq!(isotopy_equal(&a, &b), Ok(false));
        let mut relabeled = annulus_cycle(4);
        relabeled.curves.reverse();
        relabeled.curves.swap(0, 2);
        assert_eq!(isotopy_equal(&b, &MulticurveClass::new(relabeled)), Ok(true));
        let big = MulticurveClass::new(annulus_cycle(9));
        assert_eq!(isotopy_equal(&big, &big), Err(MulticurveError::ScaleExceeded(9)));
    }

    #[test]
    fn parse_round_trip() {
        let text = "# two parallel curves\nsurface chi=0 sphere=false\npiece A genus=0 boundaries=2\npiece B genus=0 boundaries=2\ncurve c1 A.1 B.1\ncurve c2 A.2 B.2\n";
        let dec = SurfaceDecomposition::parse(text).unwrap();
        assert_eq!(dec.pieces.len(), 2);
        assert_eq!(dec.curves[1].ends[1], slot(1, 1));
        assert!(dec.validate().valid);
        assert!(matches!(
            SurfaceDecomposition::parse("surface chi=0\npiece A genus=x boundaries=1\n"),
            Err(MulticurveError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SurfaceDecomposition::parse("surface chi=0\ncurve c A.1 B.1\n"),
            Err(MulticurveError::Parse { line: 2, .. })
        ));
        assert_eq!(
            SurfaceDecomposition::parse("surface chi=0 orientable=false\n"),
            Err(MulticurveError::NonOrientable)
        );
    }
}
