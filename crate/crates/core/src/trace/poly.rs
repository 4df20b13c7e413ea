//! Sparse integer polynomials in the seven trace coordinates.
//!
//! Variables are indexed `a b c x y z d` (0..7). Printing uses graded lex order with
//! `a < b < c < x < y < z < d`, highest monomial first, so output is stable for golden
//! tests: `-a*b*c + 2*x^2 - 4`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{LabError, Result};

pub const VARS: [&str; 7] = ["a", "b", "c", "x", "y", "z", "d"];

pub type Exps = [u8; 7];

/// Terms are kept sorted in descending grlex order with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Exps, i128)>,
}

fn grlex(p: &Exps, q: &Exps) -> Ordering {
    let dp: u32 = p.iter().map(|&e| e as u32).sum();
    let dq: u32 = q.iter().map(|&e| e as u32).sum();
    dp.cmp(&dq).then_with(|| {
        for i in (0..7).rev() {
            match p[i].cmp(&q[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: i128) -> Poly {
        Poly::from_terms([([0; 7], c)]).expect("no overflow")
    }

    /// The variable with index `i` (see [`VARS`]).
    pub fn var(i: usize) -> Poly {
        let mut e = [0u8; 7];
        e[i] = 1;
        Poly {
            terms: vec![(e, 1)],
        }
    }

    pub fn var_named(name: &str) -> Option<Poly> {
        VARS.iter().position(|v| *v == name).map(Poly::var)
    }

    /// Collects like terms.
    pub fn from_terms<I: IntoIterator<Item = (Exps, i128)>>(terms: I) -> Result<Poly> {
        let mut acc: HashMap<Exps, i128> = HashMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or(LabError::Overflow)?;
        }
        let mut terms: Vec<(Exps, i128)> = acc.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|p, q| grlex(&q.0, &p.0));
        Ok(Poly { terms })
    }

    pub fn terms(&self) -> &[(Exps, i128)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> i128 {
        self.terms.iter().map(|t| t.1.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Result<Poly> {
        Poly::from_terms(self.terms.iter().chain(o.terms.iter()).copied())
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Result<Poly> {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|&(e, c)| c.checked_mul(k).map(|v| (e, v)).ok_or(LabError::Overflow))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly> {
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &o.terms {
                let mut e = [0u8; 7];
                for i in 0..7 {
                    e[i] = e1[i].checked_add(e2[i]).ok_or(LabError::Overflow)?;
                }
                out.push((e, c1.checked_mul(c2).ok_or(LabError::Overflow)?));
            }
        }
        Poly::from_terms(out)
    }

    pub fn pow(&self, n: u32) -> Result<Poly> {
        let mut acc = Poly::constant(1);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial for every variable.
    pub fn compose(&self, subs: &[Poly; 7]) -> Result<Poly> {
        let mut acc = Poly::zero();
        for &(e, c) in &self.terms {
            let mut m = Poly::constant(c);
            for i in 0..7 {
                if e[i] > 0 {
                    m = m.mul(&subs[i].pow(e[i] as u32)?)?;
                }
            }
            acc = acc.add(&m)?;
        }
        Ok(acc)
    }

    /// Evaluates in double-double arithmetic: each monomial is formed with error-free
    /// products and the terms are summed with Neumaier compensation, so the result is
    /// limited by the conditioning of the input rather than by the evaluation.
    pub fn eval(&self, pt: &[f64; 7]) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &(e, c) in &self.terms {
            let (mut hi, mut lo) = (c as f64, (c - c as f64 as i128) as f64);
            for i in 0..7 {
                for _ in 0..e[i] {
                    let p = hi * pt[i];
                    let err = hi.mul_add(pt[i], -p);
                    lo = lo.mul_add(pt[i], err);
                    hi = p;
                }
            }
            comp += lo;
            let t = sum + hi;
            if sum.abs() >= hi.abs() {
                comp += (sum - t) + hi;
            } else {
                comp += (hi - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    /// Sum of absolute term values, the conditioning scale of [`Poly::eval`].
    pub fn abs_eval(&self, pt: &[f64; 7]) -> f64 {
        self.terms
            .iter()
            .map(|&(e, c)| {
                let mut m = (c as f64).abs();
                for i in 0..7 {
                    m *= pt[i].abs().powi(e[i] as i32);
                }
                m
            })
            .sum()
    }

    /// Parses `+ - * ^`, parentheses, integers and the seven variable names. Extra
    /// names may be bound to polynomials through `bindings`.
    pub fn parse_with(text: &str, bindings: &[(&str, Poly)]) -> Result<Poly> {
        let toks = tokenize(text)?;
        let mut p = Parser {
            toks,
            pos: 0,
            bindings,
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(LabError::Syntax {
                pos: p.pos,
                found: format!("{:?}", p.toks[p.pos]),
            });
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Poly> {
        Poly::parse_with(text, &[])
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, &(e, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono: Vec<String> = (0..7)
                .filter(|&i| e[i] > 0)
                .map(|i| match e[i] {
                    1 => VARS[i].to_string(),
                    k => format!("{}^{k}", VARS[i]),
                })
                .collect();
            let mag = c.unsigned_abs();
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i128),
    Name(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|_| LabError::Overflow)?));
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Name(c.to_string()));
            i += 1;
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(LabError::Syntax {
                pos: i,
                found: c.to_string(),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    bindings: &'a [(&'a str, Poly)],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self) -> LabError {
        LabError::Syntax {
            pos: self.pos,
            found: self
                .peek()
                .map(|t| format!("{t:?}"))
                .unwrap_or_else(|| "end of input".into()),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }

    /// Products, with juxtaposition (`2ab`, `a(b+c)`) read as multiplication.
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n <= 64 => {
                    self.pos += 1;
                    return base.pow(n as u32);
                }
                _ => return Err(self.err()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(n))
            }
            Some(Tok::Name(v)) => {
                self.pos += 1;
                if let Some(p) = Poly::var_named(&v) {
                    return Ok(p);
                }
                self.bindings
                    .iter()
                    .find(|b| b.0 == v)
                    .map(|b| b.1.clone())
                    .ok_or_else(|| LabError::Syntax {
                        pos: self.pos - 1,
                        found: v,
                    })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err()),
        }
    }
}
