//! Resultants of the catalog's weighted homogeneous cubics against their
//! `z`-derivatives, compared with a table of factored forms.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{Family, TypeLabel};

const SEKIGUCHI: &str = include_str!("../data/sekiguchi.txt");
const OMEGA: &str = include_str!("../data/omega.txt");

/// Commutative coefficient ring with exact division, enough for Bareiss
/// elimination.
pub trait Coeff: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when `o` does not divide `self` exactly.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

/// Univariate polynomial over ℚ, coefficients lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(Zero::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(<Self as Coeff>::one_elem(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] / &lc;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }
}

impl Coeff for UniPoly {
    fn zero_elem() -> Self {
        UniPoly::default()
    }
    fn one_elem() -> Self {
        UniPoly::from_ints(&[1])
    }
    fn is_zero_elem(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Coeff::is_zero_elem(o) {
            return None;
        }
        let (q, r) = self.divrem(o);
        Coeff::is_zero_elem(&r).then_some(q)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if Zero::is_zero(c) {
            continue;
        }
        let abs = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => alloc::format!("{var}^{i}"),
        };
        match (mono.is_empty(), abs.is_one()) {
            (true, _) => write!(f, "{abs}")?,
            (false, true) => f.write_str(&mono)?,
            (false, false) => write!(f, "{abs}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "y")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Resultant of two univariate polynomials (coefficients lowest first, each
/// with nonzero leading coefficient): the determinant of the Sylvester matrix
/// whose first `deg g` rows carry the shifted coefficients of `f`, highest
/// first, followed by `deg f` rows of `g`.
pub fn resultant<R: Coeff>(f: &[R], g: &[R]) -> R {
    if f.is_empty() || g.is_empty() {
        return R::zero_elem();
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return R::one_elem();
    }
    let mut rows: Vec<Vec<R>> = Vec::with_capacity(size);
    for (p, deg, count) in [(f, m, n), (g, n, m)] {
        for shift in 0..count {
            let mut row = vec![R::zero_elem(); size];
            for (k, c) in p.iter().enumerate() {
                row[shift + deg - k] = c.clone();
            }
            rows.push(row);
        }
    }
    determinant(rows)
}

/// Bareiss fraction-free elimination.
pub fn determinant<R: Coeff>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one_elem();
    }
    let mut sign = false;
    let mut prev = R::one_elem();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return R::zero_elem(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Polynomial in `x`, `y`, `z` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl MPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = MPoly::default();
        if !Zero::is_zero(&c) {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = MPoly::default();
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigRational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.terms.entry(*e).or_insert_with(BigRational::zero);
            *v += c;
            if Zero::is_zero(v) {
                out.terms.remove(e);
            }
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out = out.add(&MPoly {
                    terms: [(e, c1 * c2)].into_iter().collect(),
                });
            }
        }
        out
    }

    fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Substitute `x = eps` and collect coefficients of `z^k` as polynomials
    /// in `y`, lowest power of `z` first.
    pub fn specialize_x(&self, eps: &BigRational) -> Vec<UniPoly> {
        let dz = self.degree_in(2) as usize;
        let dy = self.degree_in(1) as usize;
        let mut table = vec![vec![BigRational::zero(); dy + 1]; dz + 1];
        for (e, c) in &self.terms {
            let xv = num_traits::pow(eps.clone(), e[0] as usize);
            table[e[2] as usize][e[1] as usize] += c * xv;
        }
        let mut out: Vec<UniPoly> = table.into_iter().map(UniPoly::new).collect();
        while out.last().is_some_and(|p| Coeff::is_zero_elem(p)) {
            out.pop();
        }
        out
    }

    /// The polynomial in `y` alone; `None` if `x` or `z` occurs.
    pub fn as_univariate_y(&self) -> Option<UniPoly> {
        let s = self.specialize_x(&BigRational::zero());
        if self.degree_in(0) > 0 || s.len() > 1 {
            return None;
        }
        Some(s.into_iter().next().unwrap_or_default())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| core::cmp::Reverse([e[2], e[1], e[0]]));
        let mut first = true;
        for (e, c) in order {
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mut mono = String::new();
            for (v, k) in ["x", "y", "z"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&alloc::format!("{v}^{k}")),
                }
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("no data for {0}")]
    Missing(TypeLabel),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().or_else(|_| self.err("number too large"))
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = MPoly::default();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = acc.add(&if negate { t.neg() } else { t });
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'x' | b'y' | b'z' | b'('))
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                let d = self.power()?;
                match d.as_constant() {
                    Some(c) if !Zero::is_zero(&c) => {
                        acc = acc.mul(&MPoly::constant(BigRational::one() / c))
                    }
                    _ => return self.err("division by a non-constant or zero"),
                }
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            Ok(base.pow(self.number()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(b @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                Ok(MPoly::var((b - b'x') as usize))
            }
            Some(b'0'..=b'9') => Ok(MPoly::constant(rat(self.number()? as i64))),
            _ => self.err("expected a number, variable or '('"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

/// Parse a polynomial in `x`, `y`, `z`: integers, `+ - * / ^`, parentheses
/// and implicit multiplication by juxtaposition.
pub fn parse_poly(text: &str) -> Result<MPoly, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// `unit · Π factor^multiplicity` with factors in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub unit: BigRational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl FactoredForm {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (f, k)| {
                acc.mul(&f.pow(*k))
            })
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, k)| f.degree().unwrap_or(0) * *k as usize)
            .sum()
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_negative() {
            f.write_str("-")?;
        }
        f.write_str("c")?;
        for (p, k) in &self.factors {
            if p.coeffs() == [BigRational::zero(), BigRational::one()] {
                f.write_str(" y")?;
            } else {
                write!(f, " ({p})")?;
            }
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// Parse `[-]c f1^k1 f2^k2 …` where each factor is `y` or a parenthesized
/// polynomial in `y`.
pub fn parse_factored(text: &str) -> Result<FactoredForm, ParseError> {
    let mut p = Parser::new(text);
    let unit = if p.eat(b'-') { rat(-1) } else { rat(1) };
    if !p.eat(b'c') {
        return p.err("expected the constant 'c'");
    }
    let mut factors = Vec::new();
    while p.peek().is_some() {
        p.eat(b'*');
        let base = p.atom()?;
        let k = if p.eat(b'^') { p.number()? } else { 1 };
        match base.as_univariate_y() {
            Some(u) => factors.push((u, k)),
            None => return p.err("factor must be a polynomial in y"),
        }
    }
    Ok(FactoredForm { unit, factors })
}

fn lookup(data: &'static str, label: TypeLabel) -> Result<&'static str, ParseError> {
    data.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .find_map(|l| {
            let (k, v) = l.split_once(':')?;
            (k.trim() == label.as_str()).then_some(v.trim())
        })
        .ok_or(ParseError::Missing(label))
}

/// The weighted homogeneous polynomial attached to `label`.
pub fn sekiguchi_polynomial(label: TypeLabel) -> Result<MPoly, ParseError> {
    parse_poly(lookup(SEKIGUCHI, label)?)
}

/// The tabulated factored form of the restricted resultant for `label`.
pub fn omega_table(label: TypeLabel) -> Result<FactoredForm, ParseError> {
    parse_factored(lookup(OMEGA, label)?)
}

/// `(deg x, deg y, deg z, total)`.
pub fn family_weights(family: Family) -> [u32; 4] {
    match family {
        Family::A => [2, 3, 4, 12],
        Family::B => [2, 4, 6, 18],
        Family::H => [2, 6, 10, 30],
    }
}

/// The `x` value of the restriction line: -1 for type A, 1 otherwise.
pub fn epsilon(family: Family) -> i64 {
    match family {
        Family::A => -1,
        Family::B | Family::H => 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAudit {
    pub label: TypeLabel,
    pub weights: [u32; 4],
    /// Monomials (exponents of x, y, z) whose weight differs from the total,
    /// with their weight.
    pub off_weight: Vec<([u32; 3], u32)>,
    pub z_degree: u32,
}

impl WeightAudit {
    pub fn passes(&self) -> bool {
        self.off_weight.is_empty() && self.z_degree == 3
    }
}

pub fn weight_audit(label: TypeLabel) -> Result<WeightAudit, ParseError> {
    let poly = sekiguchi_polynomial(label)?;
    let weights = family_weights(label.family());
    let off_weight = poly
        .terms()
        .map(|(e, _)| (*e, e[0] * weights[0] + e[1] * weights[1] + e[2] * weights[2]))
        .filter(|(_, w)| *w != weights[3])
        .collect();
    Ok(WeightAudit {
        label,
        weights,
        off_weight,
        z_degree: poly.degree_in(2),
    })
}

/// Restricted resultant `ω(ε, y) = res_z(Δ(ε, y, z), ∂Δ/∂z(ε, y, z))`.
pub fn omega(poly: &MPoly, eps: i64) -> UniPoly {
    let f = poly.specialize_x(&rat(eps));
    let df: Vec<UniPoly> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&rat(k as i64)))
        .collect();
    resultant(&f, &df)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaCheck {
    pub label: TypeLabel,
    pub epsilon: i64,
    pub omega: UniPoly,
    pub expected: FactoredForm,
    /// `ω / expanded(expected)` when that quotient is a nonzero constant with
    /// zero remainder.
    pub constant: Option<BigRational>,
    pub quotient: UniPoly,
    pub remainder: UniPoly,
}

impl OmegaCheck {
    pub fn holds(&self) -> bool {
        self.constant.is_some()
    }

    pub fn degree_matches(&self) -> bool {
        self.omega.degree() == Some(self.expected.degree())
    }
}

pub fn specialize_and_check(label: TypeLabel) -> Result<OmegaCheck, ParseError> {
    let eps = epsilon(label.family());
    let omega = omega(&sekiguchi_polynomial(label)?, eps);
    let expected = omega_table(label)?;
    let (quotient, remainder) = omega.divrem(&expected.expand());
    let constant = (Coeff::is_zero_elem(&remainder) && quotient.degree() == Some(0))
        .then(|| quotient.coeffs()[0].clone());
    Ok(OmegaCheck {
        label,
        epsilon: eps,
        omega,
        expected,
        constant,
        quotient,
        remainder,
    })
}

/// Rational as `n` or `n/d`, for reports.
pub fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// Small rational to `f64` for display purposes only.
pub fn approx(q: &BigRational) -> Option<f64> {
    Some(q.numer().to_f64()? / q.denom().to_f64()?)
}
