//! Multivariate polynomials over F₂ with Laurent (unit) variables and a
//! square-root constant.
//!
//! The constant `a ∉ k²` is never a variable of its own: a registry holds a
//! single square-root variable `s` and `a` is always written `s^2`. "Lies in
//! k" then means "does not mention `s`".

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("variable `{name}` already registered as {existing:?}")]
    KindConflict { name: String, existing: VarKind },
    #[error("registry already has a square-root constant `{0}`")]
    SecondSqrt(String),
    #[error("negative exponent on non-unit variable `{0}`")]
    NegativeExponent(String),
    #[error("variable `{0}` occurs with a negative exponent but is bound to a non-unit")]
    NonUnitBinding(String),
    #[error("parse error in `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Ordinary,
    /// Invertible torus parameter; may carry negative exponents.
    Unit,
    /// The designated `s = √a`.
    SqrtConstant,
}

/// Names and kinds of variables; registration order is the monomial order.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    by_name: HashMap<String, Var>,
    /// Parsing unknown names registers them as ordinary variables.
    auto_intern: bool,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry with `s` as the square-root constant and `t`, `u` as units,
    /// auto-registering every other name as ordinary.
    pub fn standard() -> Self {
        let mut r = Registry {
            auto_intern: true,
            ..Default::default()
        };
        r.sqrt_constant("s").unwrap();
        r.unit("t").unwrap();
        r.unit("u").unwrap();
        r
    }

    pub fn set_auto_intern(&mut self, on: bool) {
        self.auto_intern = on;
    }

    fn register(&mut self, name: &str, kind: VarKind) -> Result<Var, PolyError> {
        if let Some(&v) = self.by_name.get(name) {
            let existing = self.kinds[v.0 as usize];
            if existing != kind {
                return Err(PolyError::KindConflict {
                    name: name.to_string(),
                    existing,
                });
            }
            return Ok(v);
        }
        if kind == VarKind::SqrtConstant {
            if let Some(s) = self.sqrt_var() {
                return Err(PolyError::SecondSqrt(self.name(s).to_string()));
            }
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.kinds.push(kind);
        self.by_name.insert(name.to_string(), v);
        Ok(v)
    }

    pub fn ordinary(&mut self, name: &str) -> Result<Var, PolyError> {
        self.register(name, VarKind::Ordinary)
    }

    pub fn unit(&mut self, name: &str) -> Result<Var, PolyError> {
        self.register(name, VarKind::Unit)
    }

    pub fn sqrt_constant(&mut self, name: &str) -> Result<Var, PolyError> {
        self.register(name, VarKind::SqrtConstant)
    }

    pub fn sqrt_var(&self) -> Option<Var> {
        self.kinds
            .iter()
            .position(|k| *k == VarKind::SqrtConstant)
            .map(|i| Var(i as u32))
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.kinds[v.0 as usize]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len()).map(|i| Var(i as u32))
    }

    /// `a = s²` for this registry's square-root constant.
    pub fn a(&self) -> Option<Poly> {
        self.sqrt_var().map(|s| Poly::var(s).pow(2))
    }

    pub fn render(&self, p: &Poly) -> String {
        p.display(self).to_string()
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.0.is_empty() {
            return "1".to_string();
        }
        m.0.iter()
            .map(|&(v, e)| {
                if e == 1 {
                    self.name(v).to_string()
                } else {
                    format!("{}^{}", self.name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses `x5*x10 + x9^2 + s^2`, `(x+y)^2`, `t^-2*x`. Integer literals are
    /// reduced mod 2 and `-` is read as `+`.
    pub fn parse(&mut self, input: &str) -> Result<Poly, PolyError> {
        let mut p = PolyParser {
            reg: self,
            chars: input.chars().collect(),
            pos: 0,
            input,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }

    pub fn check(&self, p: &Poly) -> Result<(), PolyError> {
        for m in &p.terms {
            for &(v, e) in &m.0 {
                if e < 0 && self.kind(v) != VarKind::Unit {
                    return Err(PolyError::NegativeExponent(self.name(v).to_string()));
                }
            }
        }
        Ok(())
    }

    fn cmp_grlex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        // Descending: higher degree first, then larger exponent on the
        // earliest registered variable, ordinary coordinates before units and
        // the square-root constant.
        b.degree().cmp(&a.degree()).then_with(|| {
            let vars: BTreeSet<(bool, Var)> =
                a.0.iter()
                    .chain(&b.0)
                    .map(|&(v, _)| (self.kind(v) != VarKind::Ordinary, v))
                    .collect();
            vars.into_iter()
                .map(|(_, v)| v)
                .map(|v| b.exponent(v).cmp(&a.exponent(v)))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    }
}

/// Sparse exponent vector, sorted by variable, zero exponents omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents(mut exps: Vec<(Var, i32)>) -> Self {
        exps.sort();
        let mut out: Vec<(Var, i32)> = Vec::new();
        for (v, e) in exps {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    if ea + eb != 0 {
                        out.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    out.push((va, ea));
                    i += 1;
                }
                (Some(_), Some(&(vb, eb))) => {
                    out.push((vb, eb));
                    j += 1;
                }
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|_| k != 0)
                .map(|&(v, e)| (v, e * k))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.0.iter().any(|&(w, _)| w == v)
    }
}

/// Polynomial over F₂: a set of monomials with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeSet<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Monomial::one())
    }

    pub fn constant(c: i64) -> Self {
        if c.rem_euclid(2) == 1 {
            Poly::one()
        } else {
            Poly::zero()
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly {
            terms: [m].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn square(&self) -> Poly {
        // Frobenius: squaring is additive in characteristic 2.
        Poly {
            terms: self.terms.iter().map(|m| m.pow(2)).collect(),
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.iter().any(|m| m.mentions(v))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(
        &self,
        reg: &Registry,
        bindings: &BTreeMap<Var, Poly>,
    ) -> Result<Poly, PolyError> {
        for m in &self.terms {
            for &(v, e) in &m.0 {
                if e < 0 {
                    if let Some(b) = bindings.get(&v) {
                        let ok = b.as_monomial().is_some_and(|bm| {
                            bm.0.iter().all(|&(w, _)| reg.kind(w) == VarKind::Unit)
                        });
                        if !ok {
                            return Err(PolyError::NonUnitBinding(reg.name(v).to_string()));
                        }
                    }
                }
            }
        }
        let mut out = Poly::zero();
        for m in &self.terms {
            let mut term = Poly::one();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    Some(b) if e >= 0 => term = &term * &b.pow(e as u32),
                    Some(b) => {
                        let inv = b.as_monomial().expect("checked above").inverse();
                        term = term.mul_monomial(&inv.pow(-e));
                    }
                    None => rest.push((v, e)),
                }
            }
            out += &term.mul_monomial(&Monomial(rest));
        }
        Ok(out)
    }

    /// Evaluates at a point of a characteristic-2 field.
    pub fn eval<F: Char2Field>(&self, point: &impl Fn(Var) -> F) -> Option<F> {
        let mut acc = F::zero();
        for m in &self.terms {
            let mut t = F::one();
            for &(v, e) in &m.0 {
                let x = point(v);
                let base = if e < 0 { x.inv()? } else { x };
                for _ in 0..e.unsigned_abs() {
                    t = t * base;
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    pub fn display<'a>(&'a self, reg: &'a Registry) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, reg }
    }

    /// Terms in canonical (graded lexicographic, descending) order.
    pub fn sorted_terms(&self, reg: &Registry) -> Vec<&Monomial> {
        let mut v: Vec<&Monomial> = self.terms.iter().collect();
        v.sort_by(|a, b| reg.cmp_grlex(a, b));
        v
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    reg: &'a Registry,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .poly
            .sorted_terms(self.reg)
            .into_iter()
            .map(|m| self.reg.render_monomial(m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly {
            terms: self
                .terms
                .symmetric_difference(&rhs.terms)
                .cloned()
                .collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.terms {
            for b in &rhs.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Minimal field interface for evaluating polynomials.
pub trait Char2Field: Copy + PartialEq + Add<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn inv(self) -> Option<Self>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareClass {
    /// Setting the polynomial to zero would force `√a ∈ k`.
    UnsolvableOverK {
        /// `q` with `p = q² + s²`.
        root: Poly,
    },
    SolvableCandidate {
        /// Set when `p` is a power of a single variable, whose only solution
        /// is that variable vanishing.
        forced_zero: Option<Var>,
    },
}

/// Decides whether `p = 0` has a k-rational solution obstruction of the shape
/// `q² = a` with `q` free of `s`.
pub fn classify_square_obstruction(reg: &Registry, p: &Poly) -> SquareClass {
    let single_var_power = || {
        p.as_monomial().and_then(|m| match m.0.as_slice() {
            [(v, e)] if *e > 0 => Some(*v),
            _ => None,
        })
    };
    let candidate = || SquareClass::SolvableCandidate {
        forced_zero: single_var_power(),
    };
    let Some(s) = reg.sqrt_var() else {
        return candidate();
    };
    let s2 = Monomial(vec![(s, 2)]);
    if !p.terms.contains(&s2) {
        return candidate();
    }
    let mut rest = p.clone();
    rest.toggle(s2);
    let mut root = Poly::zero();
    for m in &rest.terms {
        if m.mentions(s) || m.0.iter().any(|&(_, e)| e % 2 != 0) {
            return candidate();
        }
        root.toggle(Monomial(m.0.iter().map(|&(v, e)| (v, e / 2)).collect()));
    }
    SquareClass::UnsolvableOverK { root }
}

struct PolyParser<'a> {
    reg: &'a mut Registry,
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl PolyParser<'_> {
    fn error(&self, reason: &str) -> PolyError {
        PolyError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        if matches!(self.peek(), Some('-')) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            let _ = c;
            self.pos += 1;
            acc += &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_alphanumeric() || c == '(' || c == '√' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some('√') => {
                self.pos += 1;
                if self.peek() == Some('a') {
                    self.pos += 1;
                }
                let s = self
                    .reg
                    .sqrt_var()
                    .ok_or_else(|| self.error("no square-root constant"))?;
                Poly::var(s)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| self.error("integer literal too large"))?;
                Poly::constant(n)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let v = match self.reg.lookup(&name) {
                    Some(v) => v,
                    None if name == "a" && self.reg.sqrt_var().is_some() => {
                        return self.power_of(self.reg.a().unwrap());
                    }
                    None if self.reg.auto_intern => self.reg.ordinary(&name)?,
                    None => return Err(PolyError::UnknownVar(name)),
                };
                Poly::var(v)
            }
            _ => return Err(self.error("expected a factor")),
        };
        self.power_of(base)
    }

    fn power_of(&mut self, base: Poly) -> Result<Poly, PolyError> {
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected exponent"));
        }
        let e: u32 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("bad exponent"))?;
        if neg {
            let m = base
                .as_monomial()
                .ok_or_else(|| self.error("negative power of a non-monomial"))?;
            for &(v, _) in &m.0 {
                if self.reg.kind(v) != VarKind::Unit {
                    return Err(PolyError::NegativeExponent(self.reg.name(v).to_string()));
                }
            }
            Ok(Poly::monomial(m.pow(-(e as i32))))
        } else {
            Ok(base.pow(e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Registry {
        Registry::standard()
    }

    #[test]
    fn frobenius_and_char_two() {
        let mut r = reg();
        let p = r.parse("x + y").unwrap();
        assert_eq!(p.pow(2), r.parse("x^2 + y^2").unwrap());
        assert_eq!(p.square(), p.pow(2));
        assert!((&p + &p).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let mut r = reg();
        let p = r.parse("(x5 + x8)*(x10 + x11)").unwrap();
        let q = r.parse("x5*x10 + x5*x11 + x8*x10 + x8*x11").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rendering_is_grlex() {
        let mut r = Registry::new();
        for i in 4..=12 {
            r.ordinary(&format!("x{i}")).unwrap();
        }
        r.sqrt_constant("s").unwrap();
        let p = r
            .parse("s^2 + x9^2 + x8*x10 + x7*x11 + x7*x8 + x5*x11 + x5*x10")
            .unwrap();
        assert_eq!(
            r.render(&p),
            "x5*x10 + x5*x11 + x7*x8 + x7*x11 + x8*x10 + x9^2 + s^2"
        );
        assert_eq!(r.render(&Poly::zero()), "0");
        assert_eq!(r.render(&Poly::one()), "1");
    }

    #[test]
    fn laurent_units() {
        let mut r = reg();
        let p = r.parse("t^-2*x").unwrap();
        assert_eq!(r.render(&p), "t^-2*x");
        let t2 = r.parse("t^2").unwrap();
        assert_eq!(&p * &t2, r.parse("x").unwrap());
        assert!(r.parse("x^-1").is_err());
    }

    #[test]
    fn substitution() {
        let mut r = reg();
        let p = r.parse("y^2 + x9^2 + s^2").unwrap();
        let x4 = r.ordinary("x4").unwrap();
        let y = r.lookup("y").unwrap();
        let x9 = r.lookup("x9").unwrap();
        let b: BTreeMap<Var, Poly> = [(x4, Poly::var(y)), (x9, Poly::var(x9))]
            .into_iter()
            .collect();
        assert_eq!(p.substitute(&r, &b).unwrap(), p);

        let q = r.parse("s^2 + x^2").unwrap();
        let s = r.sqrt_var().unwrap();
        let b: BTreeMap<Var, Poly> = [(s, Poly::zero())].into_iter().collect();
        assert_eq!(q.substitute(&r, &b).unwrap(), r.parse("x^2").unwrap());

        let laurent = r.parse("t^-1*x").unwrap();
        let t = r.lookup("t").unwrap();
        let bad: BTreeMap<Var, Poly> = [(t, r.parse("x + 1").unwrap())].into_iter().collect();
        assert!(laurent.substitute(&r, &bad).is_err());
        let good: BTreeMap<Var, Poly> = [(t, r.parse("u^2").unwrap())].into_iter().collect();
        assert_eq!(
            laurent.substitute(&r, &good).unwrap(),
            r.parse("u^-2*x").unwrap()
        );
    }

    #[test]
    fn obstruction_classifier() {
        let mut r = reg();
        let p = r.parse("y^2 + x9^2 + s^2").unwrap();
        match classify_square_obstruction(&r, &p) {
            SquareClass::UnsolvableOverK { root } => {
                assert_eq!(root, r.parse("y + x9").unwrap())
            }
            other => panic!("{other:?}"),
        }
        let x = r.parse("x").unwrap();
        assert_eq!(
            classify_square_obstruction(&r, &x.pow(2)),
            SquareClass::SolvableCandidate {
                forced_zero: x.variables().into_iter().next()
            }
        );
        let x6 = r.parse("x6^2").unwrap();
        let v6 = r.lookup("x6").unwrap();
        assert_eq!(
            classify_square_obstruction(&r, &x6),
            SquareClass::SolvableCandidate {
                forced_zero: Some(v6)
            }
        );
        let mixed = r.parse("x*y + s^2").unwrap();
        assert!(matches!(
            classify_square_obstruction(&r, &mixed),
            SquareClass::SolvableCandidate { .. }
        ));
        let with_s = r.parse("s^2 + s*x").unwrap();
        assert!(matches!(
            classify_square_obstruction(&r, &with_s),
            SquareClass::SolvableCandidate { .. }
        ));
    }

    #[test]
    fn registry_rules() {
        let mut r = reg();
        assert!(r.sqrt_constant("w").is_err());
        assert!(r.ordinary("t").is_err());
        let mut strict = Registry::new();
        assert!(matches!(strict.parse("q"), Err(PolyError::UnknownVar(_))));
        assert_eq!(r.parse("a").unwrap(), r.parse("s^2").unwrap());
    }
}
