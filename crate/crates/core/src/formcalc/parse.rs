//! Tokenizer and recursive-descent parser for expressions, 1-forms and
//! form files.
//!
//! Expression grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ['^' ['-'] INT]
//! atom  := NUMBER | INT '/' INT | 'pi' | IDENT | FUNC '(' expr ')' | '(' expr ')'
//! ```
//!
//! `INT '/' INT` is read as one exact rational literal unless the first
//! integer is itself the right operand of a `/`. Decimal and scientific
//! literals are converted to exact rationals.
//!
//! A 1-form is a sum of terms `coeff * dX`, `dX` or `-dX`, where `X` is a
//! chart coordinate; a differential may appear only as the last factor of a
//! top-level term.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::chart::Chart;
use super::expr::Expr;
use super::forms::OneForm;
use super::{ContactSign, FormError};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num { text: String, integer: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Lt,
    Eq,
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num { text, .. } => format!("number '{text}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Colon => "':'".into(),
        Tok::Semi => "';'".into(),
        Tok::Lt => "'<'".into(),
        Tok::Eq => "'='".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> FormError {
    FormError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Splits `text` into tokens; `#` starts a comment running to the end of the line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, FormError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b';' => Some(Tok::Semi),
            b'<' => Some(Tok::Lt),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, offset: start });
            i += 1;
            continue;
        }
        let digit_at = |k: usize| k < bytes.len() && bytes[k].is_ascii_digit();
        if c.is_ascii_digit() || (c == b'.' && digit_at(i + 1)) {
            let mut integer = true;
            while digit_at(i) {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                integer = false;
                i += 1;
                while digit_at(i) {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut k = i + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if digit_at(k) {
                    integer = false;
                    i = k;
                    while digit_at(i) {
                        i += 1;
                    }
                }
            }
            out.push(Token {
                tok: Tok::Num {
                    text: text[start..i].to_string(),
                    integer,
                },
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
            });
            continue;
        }
        let ch = text[start..].chars().next().unwrap_or('?');
        return Err(syntax(start, format!("unexpected character '{ch}'")));
    }
    out.push(Token {
        tok: Tok::End,
        offset: text.len(),
    });
    Ok(out)
}

/// Exact value of a decimal literal such as `1.25e-3`.
pub(crate) fn decimal_to_rational(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() { "0".to_string() } else { digits };
    let n: BigInt = digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(n, Pow::pow(&ten, (-scale) as u32))
    })
}

pub(crate) struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// Coordinates usable as variables and as differentials.
    coords: &'a [String],
    bindings: &'a HashMap<String, Expr>,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(tokens: &'a [Token], coords: &'a [String], bindings: &'a HashMap<String, Expr>) -> Self {
        Parser {
            tokens,
            pos: 0,
            coords,
            bindings,
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.peek().tok == Tok::End
    }

    pub(crate) fn offset(&self) -> usize {
        self.peek().offset
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), FormError> {
        if self.peek().tok == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", describe(&tok))))
        }
    }

    fn unexpected(&self, context: &str) -> FormError {
        let t = self.peek();
        syntax(t.offset, format!("{context}, found {}", describe(&t.tok)))
    }

    pub(crate) fn expect_end(&self) -> Result<(), FormError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("expected end of input"))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, FormError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected("expected an identifier")),
        }
    }

    fn basis_index(&self, name: &str) -> Option<usize> {
        if self.coords.iter().any(|c| c == name) {
            return None;
        }
        name.strip_prefix('d')
            .and_then(|rest| self.coords.iter().position(|c| c == rest))
    }

    fn peek_basis(&self, k: usize) -> Option<usize> {
        match self.peek_at(k) {
            Tok::Ident(s) => self.basis_index(s),
            _ => None,
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, FormError> {
        let first = self.term()?;
        let mut terms = vec![first];
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.advance();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.advance();
                    terms.push(self.term()?.negate());
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, FormError> {
        let acc = self.unary(false)?;
        self.term_tail(acc).map(|(e, _)| e)
    }

    // Continues a product chain. Returns the expression and, in form mode,
    // stops in front of a differential after '*'.
    fn term_tail(&mut self, mut acc: Expr) -> Result<(Expr, Option<usize>), FormError> {
        let mut chain = false;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    if let Some(idx) = self.peek_basis(1) {
                        self.advance();
                        self.advance();
                        return Ok((acc, Some(idx)));
                    }
                    self.advance();
                    let rhs = self.unary(false)?;
                    match (&mut acc, chain) {
                        (Expr::Mul(fs), true) => fs.push(rhs),
                        _ => {
                            acc = Expr::Mul(vec![acc, rhs]);
                            chain = true;
                        }
                    }
                }
                Tok::Slash => {
                    self.advance();
                    let rhs = self.unary(true)?;
                    acc = Expr::div(acc, rhs);
                    chain = false;
                }
                _ => return Ok((acc, None)),
            }
        }
    }

    fn unary(&mut self, right_of_div: bool) -> Result<Expr, FormError> {
        if self.peek().tok == Tok::Minus {
            self.advance();
            return Ok(self.unary(right_of_div)?.negate());
        }
        self.power(right_of_div)
    }

    fn power(&mut self, right_of_div: bool) -> Result<Expr, FormError> {
        let base = self.atom(right_of_div)?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.advance();
        let negative = if self.peek().tok == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num { text, integer: true } => {
                self.advance();
                let n: i32 = text
                    .parse()
                    .map_err(|_| syntax(t.offset, "exponent too large"))?;
                Ok(Expr::pow(base, if negative { -n } else { n }))
            }
            _ => Err(self.unexpected("expected an integer exponent")),
        }
    }

    fn atom(&mut self, right_of_div: bool) -> Result<Expr, FormError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num { text, integer } => {
                self.advance();
                if *integer && !right_of_div && self.peek().tok == Tok::Slash {
                    if let Tok::Num {
                        text: den,
                        integer: true,
                    } = self.peek_at(1).clone()
                    {
                        let den_offset = self.tokens[self.pos + 1].offset;
                        self.advance();
                        self.advance();
                        let n: BigInt = text.parse().expect("digits");
                        let d: BigInt = den.parse().expect("digits");
                        if d == BigInt::from(0) {
                            return Err(syntax(den_offset, "zero denominator in rational literal"));
                        }
                        return Ok(Expr::Const(BigRational::new(n, d)));
                    }
                }
                decimal_to_rational(text)
                    .map(Expr::Const)
                    .ok_or_else(|| syntax(t.offset, format!("malformed number '{text}'")))
            }
            Tok::Ident(name) => {
                self.advance();
                match name.as_str() {
                    "pi" => return Ok(Expr::Pi),
                    "sin" | "cos" | "exp" => {
                        if self.peek().tok != Tok::LParen {
                            return Err(self.unexpected(&format!("expected '(' after {name}")));
                        }
                        self.advance();
                        let arg = self.expr()?;
                        self.expect(Tok::RParen)?;
                        return Ok(match name.as_str() {
                            "sin" => Expr::sin(arg),
                            "cos" => Expr::cos(arg),
                            _ => Expr::exp(arg),
                        });
                    }
                    _ => {}
                }
                if self.coords.iter().any(|c| c == name) {
                    return Ok(Expr::Var(name.clone()));
                }
                if let Some(value) = self.bindings.get(name) {
                    return Ok(value.clone());
                }
                if self.basis_index(name).is_some() {
                    return Err(syntax(
                        t.offset,
                        format!("differential '{name}' must be the last factor of a top-level term"),
                    ));
                }
                Err(FormError::UnknownVariable {
                    name: name.clone(),
                    offset: Some(t.offset),
                })
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("expected an expression")),
        }
    }

    /// Parses `term (('+'|'-') term)*` of a 1-form; returns one coefficient
    /// per coordinate, combining repeated differentials into a sum.
    pub(crate) fn form(&mut self) -> Result<Vec<Expr>, FormError> {
        let dim = self.coords.len();
        let mut coeffs: Vec<Option<Expr>> = vec![None; dim];
        let mut combined = vec![false; dim];
        let mut first = true;
        loop {
            let negative = if first {
                false
            } else {
                match self.peek().tok {
                    Tok::Plus => {
                        self.advance();
                        false
                    }
                    Tok::Minus => {
                        self.advance();
                        true
                    }
                    Tok::End => break,
                    _ => return Err(self.unexpected("expected '+' or '-'")),
                }
            };
            first = false;
            let (coef, idx) = self.form_term()?;
            let coef = if negative { coef.negate() } else { coef };
            coeffs[idx] = Some(match coeffs[idx].take() {
                None => coef,
                Some(Expr::Add(mut terms)) if combined[idx] => {
                    terms.push(coef);
                    Expr::Add(terms)
                }
                Some(prev) => {
                    combined[idx] = true;
                    Expr::Add(vec![prev, coef])
                }
            });
        }
        Ok(coeffs.into_iter().map(|c| c.unwrap_or_else(Expr::zero)).collect())
    }

    fn form_term(&mut self) -> Result<(Expr, usize), FormError> {
        let mut k = 0;
        while *self.peek_at(k) == Tok::Minus {
            k += 1;
        }
        if let Some(idx) = self.peek_basis(k) {
            let mut coef = Expr::one();
            for _ in 0..k {
                self.advance();
                coef = coef.negate();
            }
            self.advance();
            return Ok((coef, idx));
        }
        let acc = self.unary(false)?;
        match self.term_tail(acc)? {
            (coef, Some(idx)) => Ok((coef, idx)),
            (_, None) => Err(syntax(self.offset(), "missing differential")),
        }
    }
}

/// Parses a scalar expression over the given variables.
pub fn parse_expr(text: &str, vars: &[String], bindings: &HashMap<String, Expr>) -> Result<Expr, FormError> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(&tokens, vars, bindings);
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a 1-form over `chart`; `bindings` substitutes named constants.
pub fn parse_form(text: &str, chart: &Chart, bindings: &HashMap<String, Expr>) -> Result<OneForm, FormError> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(&tokens, chart.names(), bindings);
    let coeffs = p.form()?;
    p.expect_end()?;
    OneForm::new(chart.clone(), coeffs)
}

/// One `form` statement of a form file.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedForm {
    pub name: Option<String>,
    pub form: OneForm,
    pub expect: Option<ContactSign>,
}

/// Parsed contents of a form file.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFile {
    pub chart: Chart,
    pub bindings: HashMap<String, Expr>,
    pub forms: Vec<NamedForm>,
}

/// Parses a form file: `;`-terminated statements
///
/// ```text
/// chart x:[-2,2] y:[-2,2] theta:[0,2*pi];
/// periodic theta;
/// exclude r<1e-3;
/// let n = 2;
/// form alpha = cos(n*theta)*dx - sin(n*theta)*dy;
/// expect positive;
/// ```
///
/// Error offsets are byte offsets into the whole file.
pub fn parse_form_file(text: &str) -> Result<FormFile, FormError> {
    let tokens = tokenize(text)?;
    let mut chart: Option<Chart> = None;
    let mut bindings: HashMap<String, Expr> = HashMap::new();
    let mut forms: Vec<NamedForm> = Vec::new();
    let no_vars: Vec<String> = Vec::new();
    let mut start = 0;
    while start < tokens.len() && tokens[start].tok != Tok::End {
        let end = (start..tokens.len())
            .find(|&i| matches!(tokens[i].tok, Tok::Semi | Tok::End))
            .expect("token stream ends with End");
        let mut stmt: Vec<Token> = tokens[start..end].to_vec();
        stmt.push(Token {
            tok: Tok::End,
            offset: tokens[end].offset,
        });
        start = if tokens[end].tok == Tok::Semi { end + 1 } else { end };
        if stmt.len() == 1 {
            continue;
        }
        let keyword = match &stmt[0].tok {
            Tok::Ident(k) => k.clone(),
            other => return Err(syntax(stmt[0].offset, format!("expected a statement, found {}", describe(other)))),
        };
        let kw_offset = stmt[0].offset;
        let body = &stmt[1..];
        match keyword.as_str() {
            "chart" => {
                if chart.is_some() {
                    return Err(syntax(kw_offset, "chart declared twice"));
                }
                let mut p = Parser::new(body, &no_vars, &bindings);
                let mut coords = Vec::new();
                while !p.at_end() {
                    let name_offset = p.offset();
                    let name = p.ident()?;
                    p.expect(Tok::Colon)?;
                    p.expect(Tok::LBracket)?;
                    let lo_offset = p.offset();
                    let lo = p.expr()?;
                    p.expect(Tok::Comma)?;
                    let hi_offset = p.offset();
                    let hi = p.expr()?;
                    p.expect(Tok::RBracket)?;
                    let lo = constant_value(&lo, lo_offset)?;
                    let hi = constant_value(&hi, hi_offset)?;
                    coords.push((name, lo, hi, name_offset));
                }
                let names = coords.iter().map(|c| c.0.clone()).collect();
                let ranges = coords.iter().map(|c| (c.1, c.2)).collect();
                chart = Some(Chart::from_parts(names, ranges).map_err(|e| at(kw_offset, e))?);
            }
            "periodic" => {
                let c = chart.take().ok_or_else(|| syntax(kw_offset, "periodic before chart"))?;
                let mut p = Parser::new(body, &no_vars, &bindings);
                let mut c = c;
                while !p.at_end() {
                    let off = p.offset();
                    let name = p.ident()?;
                    c = c.with_periodic(&name).map_err(|e| at(off, e))?;
                }
                chart = Some(c);
            }
            "exclude" => {
                let c = chart.take().ok_or_else(|| syntax(kw_offset, "exclude before chart"))?;
                let names = c.names().to_vec();
                let mut p = Parser::new(body, &names, &bindings);
                let e = p.expr()?;
                p.expect(Tok::Lt)?;
                let eps_offset = p.offset();
                let eps = p.expr()?;
                p.expect_end()?;
                let eps = constant_value(&eps, eps_offset)?;
                chart = Some(c.with_exclusion(e, eps).map_err(|e| at(eps_offset, e))?);
            }
            "let" => {
                let mut p = Parser::new(body, &no_vars, &bindings);
                let name = p.ident()?;
                p.expect(Tok::Eq)?;
                let value_offset = p.offset();
                let value = p.expr()?;
                p.expect_end()?;
                constant_value(&value, value_offset)?;
                if chart.as_ref().is_some_and(|c| c.index_of(&name).is_some()) {
                    return Err(syntax(kw_offset, format!("'{name}' is a chart coordinate")));
                }
                bindings.insert(name, value);
            }
            "form" => {
                let c = chart.as_ref().ok_or_else(|| syntax(kw_offset, "form before chart"))?;
                let (name, body) = match (&body[0].tok, body.get(1).map(|t| &t.tok)) {
                    (Tok::Ident(n), Some(Tok::Eq)) => (Some(n.clone()), &body[2..]),
                    _ => (None, body),
                };
                let mut p = Parser::new(body, c.names(), &bindings);
                let coeffs = p.form()?;
                p.expect_end()?;
                forms.push(NamedForm {
                    name,
                    form: OneForm::new(c.clone(), coeffs).map_err(|e| at(kw_offset, e))?,
                    expect: None,
                });
            }
            "expect" => {
                let last = forms
                    .last_mut()
                    .ok_or_else(|| syntax(kw_offset, "expect before any form"))?;
                let mut p = Parser::new(body, &no_vars, &bindings);
                let off = p.offset();
                let word = p.ident()?;
                p.expect_end()?;
                last.expect = Some(match word.as_str() {
                    "positive" => ContactSign::Positive,
                    "negative" => ContactSign::Negative,
                    "mixed" => ContactSign::Mixed,
                    other => return Err(syntax(off, format!("unknown sign '{other}'"))),
                });
            }
            other => return Err(syntax(kw_offset, format!("unknown statement '{other}'"))),
        }
    }
    let chart = chart.ok_or_else(|| syntax(text.len(), "missing chart statement"))?;
    Ok(FormFile {
        chart,
        bindings,
        forms,
    })
}

fn at(offset: usize, e: FormError) -> FormError {
    match e {
        FormError::InvalidChart(message) => FormError::Syntax { offset, message },
        other => other,
    }
}

fn constant_value(e: &Expr, offset: usize) -> Result<f64, FormError> {
    let v = e
        .eval_with(&|_| None)
        .map_err(|_| syntax(offset, "expected a constant expression"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(syntax(offset, "constant is not finite"))
    }
}

/// `(line, column)`, both 1-based, of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |k| before.len() - k - 1) + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn xyz() -> Chart {
        Chart::new(&[("x", -2.0, 2.0), ("y", -2.0, 2.0), ("z", -2.0, 2.0)]).unwrap()
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(decimal_to_rational("1e-3"), Some(rat(1, 1000)));
        assert_eq!(decimal_to_rational("0.05"), Some(rat(1, 20)));
        assert_eq!(decimal_to_rational("1.4"), Some(rat(7, 5)));
        assert_eq!(decimal_to_rational("2.5E2"), Some(rat(250, 1)));
    }

    #[test]
    fn rational_literals() {
        let v = names(&["x"]);
        let b = HashMap::new();
        assert_eq!(parse_expr("1/2", &v, &b).unwrap(), Expr::Const(rat(1, 2)));
        assert_eq!(
            parse_expr("x/2/3", &v, &b).unwrap(),
            Expr::div(Expr::div(Expr::var("x"), Expr::int(2)), Expr::int(3))
        );
        assert_eq!(parse_expr("-3/4", &v, &b).unwrap(), Expr::Const(rat(-3, 4)));
    }

    #[test]
    fn precedence() {
        let v = names(&["x", "y"]);
        let b = HashMap::new();
        let e = parse_expr("x + 2*y^2", &v, &b).unwrap();
        assert_eq!(
            e,
            Expr::Add(vec![
                Expr::var("x"),
                Expr::Mul(vec![Expr::int(2), Expr::pow(Expr::var("y"), 2)])
            ])
        );
        let e = parse_expr("-x^2", &v, &b).unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::pow(Expr::var("x"), 2))));
    }

    #[test]
    fn unknown_variable_has_offset() {
        let v = names(&["x"]);
        let err = parse_expr("x + w", &v, &HashMap::new()).unwrap_err();
        assert_eq!(
            err,
            FormError::UnknownVariable {
                name: "w".into(),
                offset: Some(4)
            }
        );
    }

    #[test]
    fn simple_form() {
        let f = parse_form("dz - y*dx", &xyz(), &HashMap::new()).unwrap();
        assert_eq!(f.coefficients()[0], Expr::Neg(Box::new(Expr::var("y"))));
        assert_eq!(f.coefficients()[1], Expr::zero());
        assert_eq!(f.coefficients()[2], Expr::one());
    }

    #[test]
    fn form_syntax_errors() {
        let err = parse_form("dx + + dy", &xyz(), &HashMap::new()).unwrap_err();
        assert!(matches!(err, FormError::Syntax { offset: 5, .. }), "{err:?}");
        let err = parse_form("x + dy", &xyz(), &HashMap::new()).unwrap_err();
        assert!(matches!(err, FormError::Syntax { offset: 2, .. }), "{err:?}");
        let err = parse_form("(dx)", &xyz(), &HashMap::new()).unwrap_err();
        assert!(matches!(err, FormError::Syntax { offset: 1, .. }), "{err:?}");
        let err = parse_form("x/dy", &xyz(), &HashMap::new()).unwrap_err();
        assert!(matches!(err, FormError::Syntax { .. }));
    }

    #[test]
    fn repeated_differentials_combine() {
        let f = parse_form("x*dy + z*dy - dx", &xyz(), &HashMap::new()).unwrap();
        assert_eq!(f.coefficients()[1], Expr::Add(vec![Expr::var("x"), Expr::var("z")]));
        assert_eq!(f.coefficients()[0], Expr::int(-1));
    }

    #[test]
    fn form_file() {
        let text = "# sample\nchart x:[-1,1] y:[-1,1] t:[0,1];\nperiodic t;\nlet n = 2;\nform a = cos(2*n*pi*t)*dx - sin(2*n*pi*t)*dy;\nexpect positive;\n";
        let file = parse_form_file(text).unwrap();
        assert_eq!(file.chart.names(), &names(&["x", "y", "t"])[..]);
        assert!(file.chart.periodic()[2]);
        assert_eq!(file.forms.len(), 1);
        assert_eq!(file.forms[0].name.as_deref(), Some("a"));
        assert_eq!(file.forms[0].expect, Some(ContactSign::Positive));
        let err = parse_form_file("chart x:[0,1];\nform dx + ;").unwrap_err();
        match err {
            FormError::Syntax { offset, .. } => assert_eq!(line_col("chart x:[0,1];\nform dx + ;", offset), (2, 11)),
            other => panic!("{other:?}"),
        }
        assert!(parse_form_file("form dx;").is_err());
    }
}
