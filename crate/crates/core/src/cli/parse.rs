//! Parsers for command-line values: numbers, complex s, parameter lists,
//! x-grids and identity expressions.
//!
//! Numbers are decimals, rationals `p/q`, the constant `pi`, with an
//! optional sign and power, e.g. `-1/3`, `2^-0.5`, `pi^2`.
//!
//! Identity expressions:
//!
//! ```text
//! expr   := call | entry
//! call   := "product(" expr ("," expr)* ")" | "power(" expr "," number ")"
//!         | "scale(" expr "," number ")" | "recip(" expr ")"
//! entry  := name ["{" name "=" number ("," name "=" number)* "}"]
//! ```
//!
//! `power(e, r)` is s ↦ F(rs), `scale(e, c)` is s ↦ c^s F(s), `recip(e)`
//! is s ↦ F(-s) and `product` multiplies.

use num_complex::Complex64;

use crate::catalog::{self, Params};
use crate::error::{Error, Result};
use crate::gtform::{GammaTypeForm, Scalar};

/// Longest accepted input, in bytes.
pub const MAX_INPUT: usize = 4096;
/// Deepest accepted nesting of calls.
pub const MAX_DEPTH: usize = 32;
/// Most grid points accepted by [`parse_grid`].
pub const MAX_GRID: usize = 1_000_000;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Result<Self> {
        if src.len() > MAX_INPUT {
            return Err(err(format!("input longer than {MAX_INPUT} bytes")));
        }
        Ok(Cursor { src, pos: 0 })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected '{c}' at byte {} in '{}'", self.pos, self.src)))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn ident(&mut self) -> Result<&'a str> {
        let id = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if id.is_empty() || !id.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(err(format!("expected a name at byte {} in '{}'", self.pos, self.src)));
        }
        Ok(id)
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return Err(err(format!("unexpected trailing input '{}'", self.rest())));
        }
        Ok(())
    }

    fn decimal(&mut self) -> Result<f64> {
        self.skip_ws();
        let rest = self.rest().as_bytes();
        let mut end = 0;
        while end < rest.len() && (rest[end].is_ascii_digit() || rest[end] == b'.') {
            end += 1;
        }
        if end < rest.len() && (rest[end] == b'e' || rest[end] == b'E') {
            let mut k = end + 1;
            if k < rest.len() && (rest[k] == b'+' || rest[k] == b'-') {
                k += 1;
            }
            let digits = k;
            while k < rest.len() && rest[k].is_ascii_digit() {
                k += 1;
            }
            if k > digits {
                end = k;
            }
        }
        let text = &self.rest()[..end];
        let v: f64 = text.parse().map_err(|_| err(format!("bad number at byte {} in '{}'", self.pos, self.src)))?;
        self.pos += end;
        Ok(v)
    }

    fn atom(&mut self, depth: usize) -> Result<f64> {
        if self.eat('(') {
            let v = self.number(depth + 1)?;
            self.expect(')')?;
            return Ok(v);
        }
        if self.rest().trim_start().starts_with("pi") {
            self.skip_ws();
            self.pos += 2;
            return Ok(std::f64::consts::PI);
        }
        let v = self.decimal()?;
        if self.eat('/') {
            let d = self.decimal()?;
            if d == 0.0 {
                return Err(err("division by zero"));
            }
            return Ok(v / d);
        }
        Ok(v)
    }

    fn number(&mut self, depth: usize) -> Result<f64> {
        if depth > MAX_DEPTH {
            return Err(err("number nested too deeply"));
        }
        let mut sign = 1.0;
        loop {
            if self.eat('-') {
                sign = -sign;
            } else if !self.eat('+') {
                break;
            }
        }
        let mut v = self.atom(depth)?;
        if self.eat('^') {
            v = v.powf(self.number(depth + 1)?);
        }
        Ok(sign * v)
    }
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(err(format!("{what} is not a finite number")))
    }
}

/// A number such as `0.25`, `-1/3`, `2^-0.5`, `2^(-1/2)` or `pi`.
pub fn parse_number(s: &str) -> Result<f64> {
    let mut c = Cursor::new(s)?;
    let v = c.number(0)?;
    c.finish()?;
    finite(v, s)
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let mut c = Cursor::new(s)?;
    let re = finite(c.number(0)?, "real part")?;
    let im = if c.eat(',') { finite(c.number(0)?, "imaginary part")? } else { 0.0 };
    c.finish()?;
    Ok(Complex64::new(re, im))
}

fn assignments(c: &mut Cursor<'_>, out: &mut Params, close: Option<char>) -> Result<()> {
    loop {
        if let Some(end) = close {
            if c.peek() == Some(end) {
                return Ok(());
            }
        }
        let key = c.ident()?;
        c.expect('=')?;
        let v = finite(c.number(0)?, key)?;
        if out.insert(key, v).is_some() {
            return Err(err(format!("parameter '{key}' given twice")));
        }
        if !c.eat(',') {
            return Ok(());
        }
    }
}

/// Parameter assignments `k=v`, given as separate items or comma-separated.
pub fn parse_params<S: AsRef<str>>(items: &[S]) -> Result<Params> {
    let mut out = Params::new();
    for item in items {
        let mut c = Cursor::new(item.as_ref())?;
        assignments(&mut c, &mut out, None)?;
        c.finish()?;
    }
    Ok(out)
}

/// `a:b:steps`: `steps` evenly spaced points from a to b inclusive.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(err(format!("grid must be a:b:steps, got '{s}'")));
    };
    let (a, b) = (finite(parse_number(a)?, "grid start")?, finite(parse_number(b)?, "grid end")?);
    finite(b - a, "grid width")?;
    let n: usize = n.trim().parse().map_err(|_| err(format!("grid steps must be a positive integer, got '{n}'")))?;
    if !(a < b) {
        return Err(err(format!("grid needs a < b, got {a}, {b}")));
    }
    if !(2..=MAX_GRID).contains(&n) {
        return Err(err(format!("grid steps must lie in [2, {MAX_GRID}], got {n}")));
    }
    let xs: Vec<f64> = (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect();
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(err(format!("grid {a}:{b}:{n} is finer than floating-point resolution")));
    }
    Ok(xs)
}

/// Comma-separated real numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    let mut c = Cursor::new(s)?;
    let mut out = vec![finite(c.number(0)?, "list item")?];
    while c.eat(',') {
        out.push(finite(c.number(0)?, "list item")?);
    }
    c.finish()?;
    Ok(out)
}

/// Parsed identity expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Entry { name: String, params: Params },
    Product(Vec<Expr>),
    Power(Box<Expr>, f64),
    Scale(Box<Expr>, f64),
    Recip(Box<Expr>),
}

fn expr(c: &mut Cursor<'_>, depth: usize) -> Result<Expr> {
    if depth > MAX_DEPTH {
        return Err(err("expression nested too deeply"));
    }
    let name = c.ident()?;
    let call = match name {
        "product" | "power" | "scale" | "recip" => c.eat('('),
        _ => false,
    };
    if !call {
        let mut params = Params::new();
        if c.eat('{') {
            assignments(c, &mut params, Some('}'))?;
            c.expect('}')?;
        }
        return Ok(Expr::Entry { name: name.to_string(), params });
    }
    let first = expr(c, depth + 1)?;
    let out = match name {
        "product" => {
            let mut items = vec![first];
            while c.eat(',') {
                items.push(expr(c, depth + 1)?);
            }
            Expr::Product(items)
        }
        "power" | "scale" => {
            c.expect(',')?;
            let v = finite(c.number(0)?, name)?;
            if name == "power" {
                Expr::Power(Box::new(first), v)
            } else {
                Expr::Scale(Box::new(first), v)
            }
        }
        _ => Expr::Recip(Box::new(first)),
    };
    c.expect(')')?;
    Ok(out)
}

/// Parse an identity expression.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut c = Cursor::new(s)?;
    let e = expr(&mut c, 0)?;
    c.finish()?;
    Ok(e)
}

impl Expr {
    /// Build the catalog entries and combine their forms.
    pub fn to_form(&self) -> Result<GammaTypeForm> {
        Ok(match self {
            Expr::Entry { name, params } => catalog::build(name, params)?.form,
            Expr::Product(items) => {
                let mut acc = GammaTypeForm::one();
                for e in items {
                    acc = acc.product(&e.to_form()?);
                }
                acc
            }
            Expr::Power(e, r) => e.to_form()?.power(Scalar::from_f64(*r))?,
            Expr::Scale(e, c) => e.to_form()?.scale(*c)?,
            Expr::Recip(e) => e.to_form()?.reciprocal(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("0.25").unwrap(), 0.25);
        assert_eq!(parse_number("-1/4").unwrap(), -0.25);
        assert_eq!(parse_number(" 2^-1 ").unwrap(), 0.5);
        assert_eq!(parse_number("pi").unwrap(), std::f64::consts::PI);
        assert_eq!(parse_number("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_number("2^2^3").unwrap(), 256.0);
        assert_eq!(parse_number("2^(-1/2)").unwrap(), 0.5f64.sqrt());
        assert_eq!(parse_number("(1/2)^2").unwrap(), 0.25);
        for bad in ["", "1/0", "abc", "1 2", "--", "1e999", "pi^", "+", "(1", "()"] {
            assert!(parse_number(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5,-2").unwrap(), Complex64::new(0.5, -2.0));
        assert!(parse_complex("0.5,").is_err());
        assert!(parse_complex("0.5,1,2").is_err());
    }

    #[test]
    fn params() {
        let p = parse_params(&["alpha=1.5", "beta=2,n=3"]).unwrap();
        assert_eq!((p.get("alpha"), p.get("beta"), p.get("n")), (Some(1.5), Some(2.0), Some(3.0)));
        assert!(parse_params(&["a=1", "a=2"]).is_err());
        assert!(parse_params(&["a"]).is_err());
        assert!(parse_params(&["=1"]).is_err());
        assert!(parse_params::<&str>(&[]).unwrap().is_empty());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:5").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("-1/2:1/2:3").unwrap(), vec![-0.5, 0.0, 0.5]);
        for bad in ["0:1", "1:0:5", "0:1:1", "0:1:x", "0:1:2:3", "0:1:-3", "-1e308:1e308:3", "1:1.0000000000000002:100"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn expressions() {
        let e = parse_expr("scale(product(beta{alpha=3, beta=1}, power(beta{alpha=2,beta=2}, 1/2)), 1)").unwrap();
        let Expr::Scale(inner, c) = &e else { panic!("{e:?}") };
        assert_eq!(*c, 1.0);
        assert!(matches!(**inner, Expr::Product(ref v) if v.len() == 2));
        assert_eq!(parse_expr("rayleigh").unwrap(), Expr::Entry { name: "rayleigh".into(), params: Params::new() });
        assert!(parse_expr("recip(gumbel)").unwrap().to_form().is_ok());
        for bad in ["", "product(", "power(rayleigh)", "scale(rayleigh,1", "rayleigh{", "rayleigh x", "1abc"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
        let deep = "recip(".repeat(40) + "gumbel" + &")".repeat(40);
        assert!(parse_expr(&deep).is_err());
    }
}
