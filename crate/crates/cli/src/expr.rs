//! The expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*'? unary)*            juxtaposition multiplies
//! unary  := '-' unary | factor
//! factor := atom ('^' nat)?
//! atom   := rational | 'x' | 'y' | 'z' | 'u' nat | call | '(' expr ')'
//! call   := ('tau' | 'inv' | 'd' nat | 'theta' nat | 'D' '[' int (',' int)* ']') '(' expr ')'
//!         | 'geo' '(' expr ',' 'u' nat ')'
//! ```
//!
//! A run of letters such as `xxy` is read as the product `x*x*y`, so the
//! output of [`TruncSeries::render`] parses back to the same series.

use std::fmt;

use hoffman::maps::theta_series;
use hoffman::{apply_spec, geo, partial, tau, MapSpec, NCPoly, Rational, TruncSeries, Truncation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {msg}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Func {
    Tau,
    Inv,
    Partial(usize),
    Theta(usize),
    Delta(Vec<i32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Letter(Letter),
    U(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
    Geo(Box<Expr>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Letter(Letter),
    U(usize),
    Func(Func),
    Geo,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let q: Rational = s.parse().map_err(|_| ExprError {
                pos: start,
                msg: format!("bad number `{s}`"),
            })?;
            out.push((start, Tok::Num(q)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            lex_word(&word, start, &mut out)?;
            if word == "D" {
                // D[e1,...,es]
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if i >= chars.len() || chars[i] != '[' {
                    return err(i, "expected `[` after D");
                }
                let close = match chars[i..].iter().position(|&c| c == ']') {
                    Some(k) => i + k,
                    None => return err(i, "unclosed `[`"),
                };
                let inner: String = chars[i + 1..close].iter().collect();
                let spec = inner
                    .split(',')
                    .map(|p| p.trim().parse::<i32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ExprError {
                        pos: i,
                        msg: format!("bad exponent list `[{inner}]`"),
                    })?;
                out.push((start, Tok::Func(Func::Delta(spec))));
                i = close + 1;
            }
            continue;
        }
        return err(start, format!("unexpected character `{c}`"));
    }
    Ok(out)
}

fn number_suffix(word: &str, prefix: &str) -> Option<usize> {
    let rest = word.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn lex_word(word: &str, start: usize, out: &mut Vec<(usize, Tok)>) -> Result<(), ExprError> {
    let tok = match word {
        "tau" => Some(Tok::Func(Func::Tau)),
        "inv" => Some(Tok::Func(Func::Inv)),
        "geo" => Some(Tok::Geo),
        "D" => return Ok(()),
        _ => None,
    }
    .or_else(|| number_suffix(word, "theta").map(|n| Tok::Func(Func::Theta(n))))
    .or_else(|| number_suffix(word, "d").map(|n| Tok::Func(Func::Partial(n))))
    .or_else(|| number_suffix(word, "u").map(Tok::U));
    if let Some(t) = tok {
        out.push((start, t));
        return Ok(());
    }
    // a run of letters, possibly ending in a u-variable: `xxy`, `xu1`
    let bytes = word.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let l = match bytes[k] {
            b'x' => Letter::X,
            b'y' => Letter::Y,
            b'z' => Letter::Z,
            b'u' => match number_suffix(&word[k..], "u") {
                Some(j) => {
                    out.push((start + k, Tok::U(j)));
                    return Ok(());
                }
                None => return err(start + k, format!("unknown name `{word}`")),
            },
            _ => return err(start + k, format!("unknown name `{word}`")),
        };
        out.push((start + k, Tok::Letter(l)));
        k += 1;
    }
    Ok(())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => err(at, format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(
                    Tok::Num(_)
                    | Tok::Letter(_)
                    | Tok::U(_)
                    | Tok::Func(_)
                    | Tok::Geo
                    | Tok::LParen,
                ) => {}
                _ => return Ok(lhs),
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            return match self.bump() {
                Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => {
                    let n = q.to_string().parse::<u32>().map_err(|_| ExprError {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => err(at, "expected a nonnegative integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(q)) => Ok(Expr::Num(q)),
            Some(Tok::Letter(l)) => Ok(Expr::Letter(l)),
            Some(Tok::U(j)) => Ok(Expr::U(j)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Func(f)) => {
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(f, Box::new(e)))
            }
            Some(Tok::Geo) => {
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let at = self.here();
                let j = match self.bump() {
                    Some(Tok::U(j)) => j,
                    _ => return err(at, "expected a u-variable"),
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Geo(Box::new(e), j))
            }
            Some(_) => err(at, "expected a number, letter, u-variable, call or `(`"),
            None => err(at, "unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(q) if q.is_negative() || !q.is_integer() => 3,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_negative() => write!(f, "-{}", q.abs()),
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Letter(Letter::X) => write!(f, "x"),
            Expr::Letter(Letter::Y) => write!(f, "y"),
            Expr::Letter(Letter::Z) => write!(f, "z"),
            Expr::U(j) => write!(f, "u{j}"),
            Expr::Neg(e) => write!(f, "-{}", wrap(e, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", wrap(a, 5)),
            Expr::Call(func, e) => {
                match func {
                    Func::Tau => write!(f, "tau")?,
                    Func::Inv => write!(f, "inv")?,
                    Func::Partial(n) => write!(f, "d{n}")?,
                    Func::Theta(n) => write!(f, "theta{n}")?,
                    Func::Delta(s) => {
                        let parts: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                        write!(f, "D[{}]", parts.join(","))?
                    }
                }
                write!(f, "({e})")
            }
            Expr::Geo(e, j) => write!(f, "geo({e}, u{j})"),
        }
    }
}

/// Evaluates an expression in the box `t`.
pub fn evaluate(e: &Expr, t: Truncation) -> Result<TruncSeries, ExprError> {
    eval(e, t).map_err(|msg| ExprError { pos: 0, msg })
}

fn eval(e: &Expr, t: Truncation) -> Result<TruncSeries, String> {
    let s = |p: &NCPoly| TruncSeries::inject(p, t);
    Ok(match e {
        Expr::Num(q) => s(&NCPoly::constant(q.clone())),
        Expr::Letter(Letter::X) => s(&NCPoly::x()),
        Expr::Letter(Letter::Y) => s(&NCPoly::y()),
        Expr::Letter(Letter::Z) => s(&NCPoly::z()),
        Expr::U(j) => {
            if *j == 0 || *j > t.s {
                return Err(format!("unknown u-variable u{j} (box has u1..u{})", t.s));
            }
            TruncSeries::u(*j, t)
        }
        Expr::Neg(a) => -eval(a, t)?,
        Expr::Add(a, b) => &eval(a, t)? + &eval(b, t)?,
        Expr::Sub(a, b) => &eval(a, t)? - &eval(b, t)?,
        Expr::Mul(a, b) => &eval(a, t)? * &eval(b, t)?,
        Expr::Pow(a, n) => eval(a, t)?.pow(*n),
        Expr::Call(f, a) => {
            let v = eval(a, t)?;
            match f {
                Func::Tau => tau(&v),
                Func::Inv => v.geometric_inverse().map_err(|e| e.to_string())?,
                Func::Partial(n) => partial(*n, &v).map_err(|e| e.to_string())?,
                Func::Theta(n) => theta_series(*n, &v),
                Func::Delta(spec) => {
                    let spec = MapSpec::new(spec.clone())
                        .padded(t.s)
                        .map_err(|e| e.to_string())?;
                    apply_spec(&spec, &v).map_err(|e| e.to_string())?
                }
            }
        }
        Expr::Geo(a, j) => {
            if *j == 0 || *j > t.s {
                return Err(format!("unknown u-variable u{j} (box has u1..u{})", t.s));
            }
            geo(&eval(a, t)?, *j)
        }
    })
}

/// Parses and evaluates `text` in the box `t`.
pub fn parse_expression(text: &str, t: Truncation) -> Result<TruncSeries, ExprError> {
    evaluate(&parse(text)?, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: usize, w: usize, n: usize) -> Truncation {
        Truncation::new(s, w, n)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse_expression("tau(x*x*y)", t(1, 8, 2)).unwrap().render(),
            "xy^2"
        );
        let v = parse_expression("x * inv(1 - x*u1) * y", t(1, 3, 2)).unwrap();
        assert_eq!(v.render(), "xy + x^2y*u1");
        assert_eq!(
            parse_expression("d1(x*y)", t(1, 8, 2)).unwrap().render(),
            "-x^2y + xy^2"
        );
    }

    #[test]
    fn juxtaposition_and_precedence() {
        let a = parse_expression("3/2 xxy - 2x^2y", t(1, 8, 2)).unwrap();
        assert_eq!(a.render(), "-1/2*x^2y");
        let b = parse_expression("-x^2", t(1, 8, 2)).unwrap();
        assert_eq!(b.render(), "-x^2");
        let c = parse_expression("D[1](x) - x geo(y, u1)", t(1, 6, 3)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x + * y").unwrap_err().pos, 4);
        assert_eq!(parse("x + (y").unwrap_err().pos, 6);
        assert!(parse("foo(x)").is_err());
        assert!(parse_expression("u4", t(3, 8, 2)).is_err());
        assert!(parse_expression("inv(2 + x)", t(1, 8, 2)).is_err());
    }

    #[test]
    fn rendered_series_parse_back() {
        let tr = t(2, 6, 3);
        let v = parse_expression("D[1,-1](x y) + 3/4 u2 tau(x^2 y)", tr).unwrap();
        let again = parse_expression(&v.render(), tr).unwrap();
        assert_eq!(again, v);
    }
}
