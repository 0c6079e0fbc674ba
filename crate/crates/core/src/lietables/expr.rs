//! Formula language for table rows: integers, variables, `+ - * / ^`,
//! `gcd(a,b)`, `prod(i,lo,hi,body)`, `Phi(k)` (the k-th cyclotomic polynomial
//! at `q`) and `sqrt(m)`. Values live in `Q(sqrt(d))` for a squarefree `d`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::cyclotomic_poly;
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with rational `a`, `b`. `d == 1` means plain rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

impl Quad {
    pub fn rational(d: u64, a: BigRational) -> Self {
        Quad {
            a,
            b: BigRational::zero(),
            d,
        }
    }

    pub fn int(d: u64, a: i64) -> Self {
        Self::rational(d, BigRational::from_integer(a.into()))
    }

    pub fn one(d: u64) -> Self {
        Quad {
            a: BigRational::one(),
            b: BigRational::zero(),
            d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn add(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d: self.d,
        }
    }

    fn neg(&self) -> Quad {
        Quad {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    fn mul(&self, o: &Quad) -> Quad {
        let d = BigRational::from_integer(self.d.into());
        Quad {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }

    fn inv(&self) -> Result<Quad> {
        let d = BigRational::from_integer(self.d.into());
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        if norm.is_zero() {
            return Err(Error::TableData("division by zero".into()));
        }
        Ok(Quad {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d,
        })
    }

    fn pow(&self, e: i64) -> Result<Quad> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Quad::one(self.d);
        let mut sq = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::TableData(format!(
                "unexpected '{c}' at {i} in '{src}'"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        let at = self.toks.get(self.pos).map_or(self.src.len(), |(i, _)| *i);
        Error::TableData(format!("{what} at {at} in '{}'", self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            // right associative, binds tighter than unary minus on the left
            let exp = self.unary()?;
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src,
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Bindings for evaluation. `q` must be present for `Phi`.
#[derive(Clone, Debug)]
pub struct Env {
    pub d: u64,
    pub vars: HashMap<String, Quad>,
}

impl Env {
    pub fn new(d: u64) -> Self {
        Env {
            d,
            vars: HashMap::new(),
        }
    }

    pub fn set(&mut self, name: &str, v: Quad) {
        self.vars.insert(name.to_string(), v);
    }

    pub fn set_int(&mut self, name: &str, v: i64) {
        self.set(name, Quad::int(self.d, v));
    }
}

fn small_int(v: &Quad, what: &str) -> Result<i64> {
    v.to_integer()
        .and_then(|n| n.to_i64())
        .ok_or_else(|| Error::TableData(format!("{what} must be a machine integer, got {v}")))
}

fn big_int(v: &Quad, what: &str) -> Result<BigInt> {
    v.to_integer()
        .ok_or_else(|| Error::TableData(format!("{what} must be an integer, got {v}")))
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<Quad> {
        match self {
            Expr::Num(n) => Ok(Quad::rational(env.d, BigRational::from_integer(n.clone()))),
            Expr::Var(name) => env
                .vars
                .get(name)
                .cloned()
                .ok_or_else(|| Error::TableData(format!("unbound variable '{name}'"))),
            Expr::Neg(e) => Ok(e.eval(env)?.neg()),
            Expr::Bin(op, l, r) => {
                let a = l.eval(env)?;
                let b = r.eval(env)?;
                match op {
                    Op::Add => Ok(a.add(&b)),
                    Op::Sub => Ok(a.add(&b.neg())),
                    Op::Mul => Ok(a.mul(&b)),
                    Op::Div => Ok(a.mul(&b.inv()?)),
                    Op::Pow => a.pow(small_int(&b, "exponent")?),
                }
            }
            Expr::Call(name, args) => self.call(name, args, env),
        }
    }

    fn call(&self, name: &str, args: &[Expr], env: &Env) -> Result<Quad> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::TableData(format!("{name} takes {n} arguments")))
            }
        };
        match name {
            "gcd" => {
                arity(2)?;
                let a = big_int(&args[0].eval(env)?, "gcd argument")?;
                let b = big_int(&args[1].eval(env)?, "gcd argument")?;
                Ok(Quad::rational(env.d, BigRational::from_integer(a.gcd(&b))))
            }
            "prod" => {
                arity(4)?;
                let Expr::Var(var) = &args[0] else {
                    return Err(Error::TableData("prod needs a loop variable".into()));
                };
                let lo = small_int(&args[1].eval(env)?, "prod bound")?;
                let hi = small_int(&args[2].eval(env)?, "prod bound")?;
                let mut inner = env.clone();
                let mut acc = Quad::one(env.d);
                for i in lo..=hi {
                    inner.set_int(var, i);
                    acc = acc.mul(&args[3].eval(&inner)?);
                }
                Ok(acc)
            }
            "Phi" => {
                arity(1)?;
                let k = small_int(&args[0].eval(env)?, "cyclotomic index")?;
                if !(1..=u32::MAX as i64).contains(&k) {
                    return Err(Error::TableData(format!("bad cyclotomic index {k}")));
                }
                let q = env
                    .vars
                    .get("q")
                    .ok_or_else(|| Error::TableData("Phi needs q".into()))?;
                let poly = cyclotomic_poly(k as u32);
                let mut acc = Quad::int(env.d, 0);
                for &c in poly.coeffs.iter().rev() {
                    acc = acc.mul(q).add(&Quad::int(env.d, c));
                }
                Ok(acc)
            }
            "sqrt" => {
                arity(1)?;
                let m = big_int(&args[0].eval(env)?, "sqrt argument")?;
                sqrt_in(env.d, &m)
            }
            _ => Err(Error::TableData(format!("unknown function '{name}'"))),
        }
    }
}

/// `sqrt(m)` as an element of `Q(sqrt(d))`, if it lies there.
pub fn sqrt_in(d: u64, m: &BigInt) -> Result<Quad> {
    let fail = || Error::TableData(format!("sqrt({m}) is not in Q(sqrt({d}))"));
    if m.is_negative() {
        return Err(fail());
    }
    let r = m.sqrt();
    if &(&r * &r) == m {
        return Ok(Quad::rational(d, BigRational::from_integer(r)));
    }
    let dd = BigInt::from(d);
    if d > 1 && (m % &dd).is_zero() {
        let t = m / &dd;
        let s = t.sqrt();
        if s.clone() * &s == t {
            return Ok(Quad {
                a: BigRational::zero(),
                b: BigRational::from_integer(s),
                d,
            });
        }
    }
    Err(fail())
}

/// `sqrt(p^k)` for odd `k`, i.e. `p^((k-1)/2) * sqrt(p)`.
pub fn sqrt_prime_power(p: u64, k: u32) -> Quad {
    debug_assert!(k % 2 == 1);
    let s = num_traits::pow(BigInt::from(p), (k / 2) as usize);
    Quad {
        a: BigRational::zero(),
        b: BigRational::from_integer(s),
        d: p,
    }
}
