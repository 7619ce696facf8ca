//! Expression trees, symbolic differentiation and light simplification.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FormError;

/// Scalar expression over named coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Const(BigRational),
    Pi,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(r: BigRational) -> Expr {
        Expr::Const(r)
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn add(terms: Vec<Expr>) -> Expr {
        Expr::Add(terms)
    }

    pub fn mul(factors: Vec<Expr>) -> Expr {
        Expr::Mul(factors)
    }

    #[allow(clippy::should_implement_trait)] // a constructor, like `add` and `mul`
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, n: i32) -> Expr {
        Expr::Pow(Box::new(a), n)
    }

    pub fn sin(a: Expr) -> Expr {
        Expr::Sin(Box::new(a))
    }

    pub fn cos(a: Expr) -> Expr {
        Expr::Cos(Box::new(a))
    }

    pub fn exp(a: Expr) -> Expr {
        Expr::Exp(Box::new(a))
    }

    /// Negation that folds constants: `-(c)` becomes the constant `-c`.
    pub fn negate(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn as_const(&self) -> Option<&BigRational> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Names of all variables occurring in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Const(_) | Expr::Pi => {}
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => a.collect_vars(out),
        }
    }

    /// Replaces variables by expressions; unmapped variables stay.
    pub fn substitute(&self, map: &HashMap<String, Expr>) -> Expr {
        let rec = |e: &Expr| Box::new(e.substitute(map));
        match self {
            Expr::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Expr::Const(_) | Expr::Pi => self.clone(),
            Expr::Add(xs) => Expr::Add(xs.iter().map(|x| x.substitute(map)).collect()),
            Expr::Mul(xs) => Expr::Mul(xs.iter().map(|x| x.substitute(map)).collect()),
            Expr::Div(a, b) => Expr::Div(rec(a), rec(b)),
            Expr::Pow(a, n) => Expr::Pow(rec(a), *n),
            Expr::Neg(a) => Expr::Neg(rec(a)),
            Expr::Sin(a) => Expr::Sin(rec(a)),
            Expr::Cos(a) => Expr::Cos(rec(a)),
            Expr::Exp(a) => Expr::Exp(rec(a)),
        }
    }

    /// Evaluates with a variable lookup.
    pub fn eval_with(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, FormError> {
        Ok(match self {
            Expr::Var(v) => lookup(v).ok_or_else(|| FormError::UnknownVariable {
                name: v.clone(),
                offset: None,
            })?,
            Expr::Const(c) => rational_to_f64(c),
            Expr::Pi => std::f64::consts::PI,
            Expr::Add(xs) => {
                let mut s = 0.0;
                for x in xs {
                    s += x.eval_with(lookup)?;
                }
                s
            }
            Expr::Mul(xs) => {
                let mut p = 1.0;
                for x in xs {
                    p *= x.eval_with(lookup)?;
                }
                p
            }
            Expr::Div(a, b) => a.eval_with(lookup)? / b.eval_with(lookup)?,
            Expr::Pow(a, n) => a.eval_with(lookup)?.powi(*n),
            Expr::Neg(a) => -a.eval_with(lookup)?,
            Expr::Sin(a) => a.eval_with(lookup)?.sin(),
            Expr::Cos(a) => a.eval_with(lookup)?.cos(),
            Expr::Exp(a) => a.eval_with(lookup)?.exp(),
        })
    }

    /// Evaluates with values given in the order of `names`.
    pub fn eval(&self, names: &[String], values: &[f64]) -> Result<f64, FormError> {
        self.eval_with(&|v: &str| names.iter().position(|n| n == v).map(|i| values[i]))
    }

    /// Symbolic partial derivative, simplified.
    pub fn diff(&self, var: &str) -> Expr {
        self.diff_raw(var).simplify()
    }

    fn diff_raw(&self, var: &str) -> Expr {
        match self {
            Expr::Var(v) => Expr::int(if v == var { 1 } else { 0 }),
            Expr::Const(_) | Expr::Pi => Expr::zero(),
            Expr::Add(xs) => Expr::Add(xs.iter().map(|x| x.diff_raw(var)).collect()),
            Expr::Mul(xs) => Expr::Add(
                (0..xs.len())
                    .map(|i| {
                        let mut f = xs.clone();
                        f[i] = xs[i].diff_raw(var);
                        Expr::Mul(f)
                    })
                    .collect(),
            ),
            Expr::Div(a, b) => Expr::div(
                Expr::Add(vec![
                    Expr::Mul(vec![a.diff_raw(var), (**b).clone()]),
                    Expr::Neg(Box::new(Expr::Mul(vec![(**a).clone(), b.diff_raw(var)]))),
                ]),
                Expr::pow((**b).clone(), 2),
            ),
            Expr::Pow(a, n) => Expr::Mul(vec![
                Expr::int(*n as i64),
                Expr::pow((**a).clone(), n - 1),
                a.diff_raw(var),
            ]),
            Expr::Neg(a) => Expr::Neg(Box::new(a.diff_raw(var))),
            Expr::Sin(a) => Expr::Mul(vec![Expr::cos((**a).clone()), a.diff_raw(var)]),
            Expr::Cos(a) => Expr::Neg(Box::new(Expr::Mul(vec![
                Expr::sin((**a).clone()),
                a.diff_raw(var),
            ]))),
            Expr::Exp(a) => Expr::Mul(vec![self.clone(), a.diff_raw(var)]),
        }
    }

    /// Constant folding, flattening and removal of neutral elements.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Var(_) | Expr::Const(_) | Expr::Pi => self.clone(),
            Expr::Add(xs) => simplify_add(xs),
            Expr::Mul(xs) => simplify_mul(xs),
            Expr::Neg(a) => match a.simplify() {
                Expr::Const(c) => Expr::Const(-c),
                Expr::Neg(inner) => *inner,
                other => Expr::Neg(Box::new(other)),
            },
            Expr::Div(a, b) => {
                let (a, b) = (a.simplify(), b.simplify());
                if a.is_zero() {
                    return Expr::zero();
                }
                match (&a, &b) {
                    (_, Expr::Const(c)) if c.is_one() => a,
                    (Expr::Const(x), Expr::Const(y)) if !y.is_zero() => Expr::Const(x / y),
                    (_, Expr::Const(y)) if !y.is_zero() => simplify_mul(&[Expr::Const(y.recip()), a]),
                    _ => Expr::div(a, b),
                }
            }
            Expr::Pow(a, n) => {
                let a = a.simplify();
                match (*n, &a) {
                    (0, _) => Expr::one(),
                    (1, _) => a,
                    (_, Expr::Const(c)) if !c.is_zero() || *n > 0 => Expr::Const(rational_pow(c, *n)),
                    (_, Expr::Pow(b, m)) => Expr::pow((**b).clone(), m * n),
                    _ => Expr::pow(a, *n),
                }
            }
            Expr::Sin(a) => match a.simplify() {
                z if z.is_zero() => Expr::zero(),
                other => Expr::sin(other),
            },
            Expr::Cos(a) => match a.simplify() {
                z if z.is_zero() => Expr::one(),
                other => Expr::cos(other),
            },
            Expr::Exp(a) => match a.simplify() {
                z if z.is_zero() => Expr::one(),
                other => Expr::exp(other),
            },
        }
    }

    /// Node count, a rough size measure.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Const(_) | Expr::Pi => 1,
            Expr::Add(xs) | Expr::Mul(xs) => 1 + xs.iter().map(Expr::size).sum::<usize>(),
            Expr::Div(a, b) => 1 + a.size() + b.size(),
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Sin(a) | Expr::Cos(a) | Expr::Exp(a) => 1 + a.size(),
        }
    }
}

fn rational_pow(c: &BigRational, n: i32) -> BigRational {
    let mut out = BigRational::one();
    let base = if n < 0 { c.recip() } else { c.clone() };
    for _ in 0..n.unsigned_abs() {
        out *= &base;
    }
    out
}

fn simplify_add(xs: &[Expr]) -> Expr {
    let mut terms = Vec::new();
    let mut constant = BigRational::zero();
    let mut stack: Vec<Expr> = xs.iter().rev().map(Expr::simplify).collect();
    while let Some(x) = stack.pop() {
        match x {
            Expr::Add(inner) => stack.extend(inner.into_iter().rev()),
            Expr::Const(c) => constant += c,
            other => terms.push(other),
        }
    }
    let mut terms = collect_like_terms(terms);
    if !constant.is_zero() {
        terms.push(Expr::Const(constant));
    }
    match terms.len() {
        0 => Expr::zero(),
        1 => terms.pop().expect("one term"),
        _ => Expr::Add(terms),
    }
}

/// Splits a simplified term into a rational coefficient and the rest.
fn split_coefficient(term: Expr) -> (BigRational, Expr) {
    match term {
        Expr::Neg(inner) => {
            let (c, rest) = split_coefficient(*inner);
            (-c, rest)
        }
        Expr::Mul(mut fs) if matches!(fs.first(), Some(Expr::Const(_))) => {
            let Expr::Const(c) = fs.remove(0) else { unreachable!() };
            let rest = if fs.len() == 1 { fs.pop().expect("one factor") } else { Expr::Mul(fs) };
            (c, rest)
        }
        other => (BigRational::one(), other),
    }
}

/// Merges structurally equal terms, keeping first-occurrence order.
fn collect_like_terms(terms: Vec<Expr>) -> Vec<Expr> {
    let mut groups: Vec<(BigRational, Expr)> = Vec::new();
    for t in terms {
        let (c, rest) = split_coefficient(t);
        match groups.iter_mut().find(|(_, r)| *r == rest) {
            Some((acc, _)) => *acc += c,
            None => groups.push((c, rest)),
        }
    }
    groups
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, rest)| simplify_mul(&[Expr::Const(c), rest]))
        .collect()
}

fn simplify_mul(xs: &[Expr]) -> Expr {
    let mut factors = Vec::new();
    let mut constant = BigRational::one();
    let mut stack: Vec<Expr> = xs.iter().rev().map(Expr::simplify).collect();
    while let Some(x) = stack.pop() {
        match x {
            Expr::Mul(inner) => stack.extend(inner.into_iter().rev()),
            Expr::Const(c) => constant *= c,
            Expr::Neg(inner) => {
                constant = -constant;
                stack.push(*inner);
            }
            other => factors.push(other),
        }
    }
    if constant.is_zero() {
        return Expr::zero();
    }
    let product = match factors.len() {
        0 => return Expr::Const(constant),
        1 => factors.pop().expect("one factor"),
        _ => Expr::Mul(factors),
    };
    if constant.is_one() {
        product
    } else if (-&constant).is_one() {
        Expr::Neg(Box::new(product))
    } else {
        let mut all = vec![Expr::Const(constant)];
        match product {
            Expr::Mul(fs) => all.extend(fs),
            other => all.push(other),
        }
        Expr::Mul(all)
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// Expression compiled against a fixed coordinate order for fast evaluation.
#[derive(Debug, Clone)]
pub struct Compiled(Node);

#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    Const(f64),
    Add(Vec<Node>),
    Mul(Vec<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Neg(Box<Node>),
    Sin(Box<Node>),
    Cos(Box<Node>),
    Exp(Box<Node>),
}

impl Compiled {
    pub fn new(expr: &Expr, names: &[String]) -> Result<Self, FormError> {
        Ok(Compiled(compile(expr, names)?))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        eval_node(&self.0, x)
    }
}

fn compile(e: &Expr, names: &[String]) -> Result<Node, FormError> {
    let rec = |a: &Expr| -> Result<Box<Node>, FormError> { Ok(Box::new(compile(a, names)?)) };
    Ok(match e {
        Expr::Var(v) => Node::Var(names.iter().position(|n| n == v).ok_or_else(|| {
            FormError::UnknownVariable {
                name: v.clone(),
                offset: None,
            }
        })?),
        Expr::Const(c) => Node::Const(rational_to_f64(c)),
        Expr::Pi => Node::Const(std::f64::consts::PI),
        Expr::Add(xs) => Node::Add(xs.iter().map(|x| compile(x, names)).collect::<Result<_, _>>()?),
        Expr::Mul(xs) => Node::Mul(xs.iter().map(|x| compile(x, names)).collect::<Result<_, _>>()?),
        Expr::Div(a, b) => Node::Div(rec(a)?, rec(b)?),
        Expr::Pow(a, n) => Node::Pow(rec(a)?, *n),
        Expr::Neg(a) => Node::Neg(rec(a)?),
        Expr::Sin(a) => Node::Sin(rec(a)?),
        Expr::Cos(a) => Node::Cos(rec(a)?),
        Expr::Exp(a) => Node::Exp(rec(a)?),
    })
}

fn eval_node(n: &Node, x: &[f64]) -> f64 {
    match n {
        Node::Var(i) => x[*i],
        Node::Const(c) => *c,
        Node::Add(xs) => xs.iter().map(|c| eval_node(c, x)).sum(),
        Node::Mul(xs) => xs.iter().map(|c| eval_node(c, x)).product(),
        Node::Div(a, b) => eval_node(a, x) / eval_node(b, x),
        Node::Pow(a, k) => eval_node(a, x).powi(*k),
        Node::Neg(a) => -eval_node(a, x),
        Node::Sin(a) => eval_node(a, x).sin(),
        Node::Cos(a) => eval_node(a, x).cos(),
        Node::Exp(a) => eval_node(a, x).exp(),
    }
}

// ---- printing ----
//
// The printer emits text that the parser reads back to the same tree, so
// parentheses follow the parser's associativity rules exactly.

fn is_nonneg_integer(c: &BigRational) -> bool {
    c.is_integer() && !c.is_negative()
}

fn write_const(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

// The parser reads `INT / INT` as one rational literal, so a quotient whose
// left side ends in a bare integer must not be followed by a bare integer.
fn ends_with_bare_int(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => is_nonneg_integer(c),
        Expr::Mul(fs) => matches!(fs.last(), Some(Expr::Const(c)) if is_nonneg_integer(c)),
        _ => false,
    }
}

fn starts_with_digit(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => !c.is_negative(),
        Expr::Pow(base, _) => matches!(&**base, Expr::Const(c) if is_nonneg_integer(c)),
        _ => false,
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Const(c) => write_const(f, c),
            Expr::Pi => f.write_str("pi"),
            Expr::Add(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i == 0 {
                        paren(f, x, matches!(x, Expr::Add(_)))?;
                        continue;
                    }
                    match x {
                        Expr::Neg(inner) => {
                            f.write_str(" - ")?;
                            paren(f, inner, matches!(**inner, Expr::Add(_)))?;
                        }
                        Expr::Const(c) if c.is_negative() => {
                            f.write_str(" - ")?;
                            write_const(f, &-c)?;
                        }
                        other => {
                            f.write_str(" + ")?;
                            paren(f, other, matches!(other, Expr::Add(_)))?;
                        }
                    }
                }
                Ok(())
            }
            Expr::Mul(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    let wrap = match x {
                        Expr::Add(_) | Expr::Mul(_) => true,
                        Expr::Div(..) => i > 0,
                        _ => false,
                    };
                    paren(f, x, wrap)?;
                }
                Ok(())
            }
            Expr::Div(a, b) => {
                paren(f, a, matches!(**a, Expr::Add(_)))?;
                f.write_str("/")?;
                let wrap = match &**b {
                    Expr::Add(_) | Expr::Mul(_) | Expr::Div(..) | Expr::Neg(_) => true,
                    Expr::Const(c) => !is_nonneg_integer(c),
                    _ => false,
                } || (ends_with_bare_int(a) && starts_with_digit(b));
                paren(f, b, wrap)
            }
            Expr::Pow(a, n) => {
                let simple = match &**a {
                    Expr::Var(_) | Expr::Pi | Expr::Sin(_) | Expr::Cos(_) | Expr::Exp(_) => true,
                    Expr::Const(c) => is_nonneg_integer(c),
                    _ => false,
                };
                paren(f, a, !simple)?;
                write!(f, "^{n}")
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                paren(
                    f,
                    a,
                    matches!(**a, Expr::Add(_) | Expr::Mul(_) | Expr::Div(..) | Expr::Const(_)),
                )
            }
            Expr::Sin(a) => write!(f, "sin({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
        }
    }
}
