//! Text input: the polynomial expression grammar and complex point literals.
//!
//! Polynomial grammar: variables `z1..z9` or `z{k}`, integer/decimal literals
//! (kept exact), the imaginary unit `i` (with `3i` lexing as one imaginary
//! literal), operators `+ - * ^`, division by a nonzero constant, and
//! parentheses. Whitespace insensitive. Example: `(1/2)*z1^3 + (2-3i)*z1*z2`.

use crate::error::{Error, Result};
use crate::exact::QComplex;
use crate::poly::Polynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

const MAX_VAR_INDEX: usize = 64;
const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigRational),
    ImagNumber(BigRational),
    ImagUnit,
    Var(usize), // 0-based
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err_at(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0usize;
    let mut line = 1usize;
    let mut col = 1usize;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            let mut value: BigRational = {
                let digits: String = chars[start..i].iter().collect();
                BigRational::from_integer(digits.parse::<BigInt>().expect("digits"))
            };
            if i < chars.len() && chars[i] == '.' {
                advance(&mut i, &mut line, &mut col);
                let fstart = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut line, &mut col);
                }
                if i == fstart {
                    return Err(err_at(line, col, "expected digits after decimal point"));
                }
                let frac: String = chars[fstart..i].iter().collect();
                let numer = frac.parse::<BigInt>().expect("digits");
                let denom = BigInt::from(10u32).pow((i - fstart) as u32);
                value += BigRational::new(numer, denom);
            }
            if i < chars.len() && chars[i] == 'i' {
                advance(&mut i, &mut line, &mut col);
                toks.push(Spanned {
                    tok: Tok::ImagNumber(value),
                    line: tline,
                    col: tcol,
                });
            } else {
                toks.push(Spanned {
                    tok: Tok::Number(value),
                    line: tline,
                    col: tcol,
                });
            }
            continue;
        }
        if c == 'i' {
            advance(&mut i, &mut line, &mut col);
            toks.push(Spanned {
                tok: Tok::ImagUnit,
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c == 'z' {
            advance(&mut i, &mut line, &mut col);
            let braced = i < chars.len() && chars[i] == '{';
            if braced {
                advance(&mut i, &mut line, &mut col);
            }
            let dstart = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            if i == dstart {
                return Err(err_at(
                    tline,
                    tcol,
                    "expected a variable index after `z` (like z1 or z{12})",
                ));
            }
            let digits: String = chars[dstart..i].iter().collect();
            if braced {
                if i >= chars.len() || chars[i] != '}' {
                    return Err(err_at(line, col, "unclosed `{` in variable name"));
                }
                advance(&mut i, &mut line, &mut col);
            }
            let index: usize = digits
                .parse()
                .map_err(|_| err_at(tline, tcol, "variable index too large"))?;
            if index == 0 {
                return Err(err_at(tline, tcol, "variable indices start at z1"));
            }
            if index > MAX_VAR_INDEX {
                return Err(err_at(
                    tline,
                    tcol,
                    format!("variable index {index} exceeds the supported {MAX_VAR_INDEX}"),
                ));
            }
            toks.push(Spanned {
                tok: Tok::Var(index - 1),
                line: tline,
                col: tcol,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(err_at(tline, tcol, format!("unexpected character `{other}`")));
            }
        };
        advance(&mut i, &mut line, &mut col);
        toks.push(Spanned {
            tok,
            line: tline,
            col: tcol,
        });
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    n_vars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> (usize, usize) {
        self.toks
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Star => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    let (line, col) = (t.line, t.col);
                    self.next();
                    let rhs = self.unary()?;
                    let c = rhs.constant_value().ok_or_else(|| {
                        err_at(line, col, "division is only supported by a nonzero constant")
                    })?;
                    if c.is_zero() {
                        return Err(err_at(line, col, "division by zero"));
                    }
                    let inv = QComplex::one().div(&c).expect("nonzero divisor");
                    acc = acc.scale(&inv);
                }
                // An atom directly following an atom is a common slip for a
                // missing `*`; point at it explicitly.
                Tok::Number(_) | Tok::ImagNumber(_) | Tok::ImagUnit | Tok::Var(_)
                | Tok::LParen => {
                    return Err(err_at(
                        t.line,
                        t.col,
                        "expected an operator here; use `*` for multiplication",
                    ));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Minus) => {
                self.next();
                let inner = self.unary()?;
                Ok(-&inner)
            }
            Some(Tok::Plus) => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.tok == Tok::Caret {
                let (line, col) = (t.line, t.col);
                self.next();
                let e = match self.next() {
                    Some(Spanned {
                        tok: Tok::Number(r),
                        ..
                    }) if r.is_integer() && !r.numer().sign().eq(&num_bigint::Sign::Minus) => {
                        let v = r.to_integer();
                        u32::try_from(&v)
                            .ok()
                            .filter(|&v| v <= MAX_EXPONENT)
                            .ok_or_else(|| {
                                err_at(line, col, format!("exponent exceeds {MAX_EXPONENT}"))
                            })?
                    }
                    _ => {
                        return Err(err_at(
                            line,
                            col,
                            "exponent must be a non-negative integer literal",
                        ));
                    }
                };
                return Ok(base.pow(e));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = match self.next() {
            Some(t) => t,
            None => {
                let (line, col) = self.end_pos();
                return Err(err_at(line, col, "unexpected end of expression"));
            }
        };
        match t.tok {
            Tok::Number(r) => Ok(Polynomial::constant(
                self.n_vars,
                QComplex::from_rational(r),
            )),
            Tok::ImagNumber(r) => Ok(Polynomial::constant(
                self.n_vars,
                QComplex::new(BigRational::zero(), r),
            )),
            Tok::ImagUnit => Ok(Polynomial::constant(self.n_vars, QComplex::i())),
            Tok::Var(j) => Polynomial::var(self.n_vars, j),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Spanned {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    Some(u) => Err(err_at(u.line, u.col, "expected `)`")),
                    None => {
                        let (line, col) = self.end_pos();
                        Err(err_at(line, col, "unclosed parenthesis"))
                    }
                }
            }
            other => Err(err_at(
                t.line,
                t.col,
                format!("unexpected token `{}`", tok_name(&other)),
            )),
        }
    }
}

fn tok_name(t: &Tok) -> &'static str {
    match t {
        Tok::Number(_) => "number",
        Tok::ImagNumber(_) => "imaginary number",
        Tok::ImagUnit => "i",
        Tok::Var(_) => "variable",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
    }
}

/// Parse an expression; the variable count is the highest index that appears
/// (at least 1).
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let n_vars = toks
        .iter()
        .filter_map(|t| match t.tok {
            Tok::Var(j) => Some(j + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    parse_with(toks, n_vars)
}

/// Parse an expression in a fixed variable ring; indices beyond `n_vars` are
/// rejected.
pub fn parse_polynomial_in(text: &str, n_vars: usize) -> Result<Polynomial> {
    let toks = lex(text)?;
    for t in &toks {
        if let Tok::Var(j) = t.tok {
            if j >= n_vars {
                return Err(err_at(
                    t.line,
                    t.col,
                    format!("variable z{} out of range for {n_vars} variables", j + 1),
                ));
            }
        }
    }
    parse_with(toks, n_vars.max(1))
}

fn parse_with(toks: Vec<Spanned>, n_vars: usize) -> Result<Polynomial> {
    if toks.is_empty() {
        return Err(err_at(1, 1, "empty polynomial expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        n_vars,
    };
    let poly = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(err_at(
            t.line,
            t.col,
            format!("unexpected trailing `{}`", tok_name(&t.tok)),
        ));
    }
    Ok(poly)
}

/// Parse one complex literal like `1.5`, `-2i`, `0.7071+0.7071i`, or `i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err_at(1, 1, "empty complex literal"));
    }
    let bytes: Vec<char> = s.chars().collect();
    // Split into real and imaginary parts at a '+'/'-' that is neither the
    // leading sign nor part of a float exponent.
    let mut split: Option<usize> = None;
    for k in 1..bytes.len() {
        if (bytes[k] == '+' || bytes[k] == '-')
            && bytes[k - 1] != 'e'
            && bytes[k - 1] != 'E'
        {
            split = Some(k);
            // Keep the last such sign so forms like `1e-3+2i` split correctly.
        }
    }
    let invalid = || err_at(1, 1, format!("invalid complex literal `{text}`"));
    let parse_imag = |chunk: &str| -> Result<f64> {
        let body = chunk.strip_suffix('i').ok_or_else(invalid)?;
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => other.parse::<f64>().map_err(|_| invalid()),
        }
    };
    match split {
        Some(k) => {
            let (re_str, im_str): (String, String) =
                (bytes[..k].iter().collect(), bytes[k..].iter().collect());
            if !im_str.ends_with('i') {
                return Err(invalid());
            }
            let re = re_str.parse::<f64>().map_err(|_| invalid())?;
            let im = parse_imag(&im_str)?;
            Ok(Complex64::new(re, im))
        }
        None => {
            if s.ends_with('i') {
                Ok(Complex64::new(0.0, parse_imag(&s)?))
            } else {
                Ok(Complex64::new(s.parse::<f64>().map_err(|_| invalid())?, 0.0))
            }
        }
    }
}

/// Parse a comma-separated point like `0.7071+0i,0.7071+0i`.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.iter().all(|p| p.trim().is_empty()) {
        return Err(err_at(1, 1, "empty point"));
    }
    parts.into_iter().map(parse_complex).collect()
}
