//! Exact polynomial carriers.
//!
//! Basis elements are kept as multisets of linear factors and never expanded.
//! Degree polynomials live in [`QTPoly`], a sparse bivariate polynomial with
//! big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
}

/// `(x_var - shift)` or `(y_var - shift)`, where `shift` is the parameter
/// with 1-based index `param` (an alpha for X, a beta for Y).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFactor {
    pub axis: Axis,
    pub var: usize,
    pub param: usize,
    pub shift: Rational,
}

impl LinearFactor {
    pub fn x(var: usize, param: usize, shift: Rational) -> Self {
        LinearFactor { axis: Axis::X, var, param, shift }
    }

    pub fn y(var: usize, param: usize, shift: Rational) -> Self {
        LinearFactor { axis: Axis::Y, var, param, shift }
    }

    /// Value at a point laid out as `(x_1..x_n, y_1..y_n)`.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let n = point.len() / 2;
        let coord = match self.axis {
            Axis::X => &point[self.var - 1],
            Axis::Y => &point[n + self.var - 1],
        };
        coord - &self.shift
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::X => write!(f, "(x{}-a{})", self.var, self.param),
            Axis::Y => write!(f, "(y{}-b{})", self.var, self.param),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cancellation failed: {factor} is not a factor of the numerator")]
pub struct CancellationError {
    pub factor: String,
}

/// A product of linear factors, stored as a multiset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactorProduct {
    factors: BTreeMap<LinearFactor, u32>,
}

impl FactorProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = LinearFactor>>(it: I) -> Self {
        let mut p = Self::one();
        for f in it {
            p.push(f);
        }
        p
    }

    pub fn push(&mut self, f: LinearFactor) {
        *self.factors.entry(f).or_insert(0) += 1;
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.factors.values().map(|&c| c as usize).sum()
    }

    /// `(x-degree, y-degree)`.
    pub fn bidegree(&self) -> (u32, u32) {
        let mut d = (0, 0);
        for (f, &c) in &self.factors {
            match f.axis {
                Axis::X => d.0 += c,
                Axis::Y => d.1 += c,
            }
        }
        d
    }

    pub fn multiplicity(&self, f: &LinearFactor) -> u32 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    /// Factors with multiplicity, in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = (&LinearFactor, u32)> {
        self.factors.iter().map(|(f, &c)| (f, c))
    }

    /// Flat list of factors, repeated by multiplicity.
    pub fn to_vec(&self) -> Vec<LinearFactor> {
        self.iter()
            .flat_map(|(f, c)| std::iter::repeat(f.clone()).take(c as usize))
            .collect()
    }

    pub fn mul(&self, other: &FactorProduct) -> FactorProduct {
        let mut out = self.clone();
        for (f, c) in other.iter() {
            *out.factors.entry(f.clone()).or_insert(0) += c;
        }
        out
    }

    /// Removes each factor of `divisor` once per occurrence.
    pub fn divide_exact(&self, divisor: &FactorProduct) -> Result<FactorProduct, CancellationError> {
        let mut out = self.clone();
        for (f, c) in divisor.iter() {
            match out.factors.get_mut(f) {
                Some(have) if *have >= c => {
                    *have -= c;
                    if *have == 0 {
                        out.factors.remove(f);
                    }
                }
                _ => return Err(CancellationError { factor: f.to_string() }),
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut v = Rational::one();
        for (f, c) in self.iter() {
            let e = f.evaluate(point);
            if e.is_zero() {
                return e;
            }
            for _ in 0..c {
                v *= &e;
            }
        }
        v
    }

    /// True when some factor vanishes at `point`; cheaper than [`evaluate`](Self::evaluate).
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.factors.keys().any(|f| f.evaluate(point).is_zero())
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "()");
        }
        for (fac, c) in self.iter() {
            for _ in 0..c {
                write!(f, "{fac}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("term t^{t}*q^{q} exceeds the reversal box ({max_t}, {max_q})")]
pub struct DegreeOverflow {
    pub t: u32,
    pub q: u32,
    pub max_t: u32,
    pub max_q: u32,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{dividend} is not divisible by {divisor}")]
pub struct NonDivisible {
    pub dividend: String,
    pub divisor: String,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse q,t polynomial: {0}")]
pub struct ParsePolyError(String);

/// Bivariate polynomial in `t` and `q` with integer coefficients.
///
/// Keys are `(t-exponent, q-exponent)`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QTPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * t^t_exp * q^q_exp`.
    pub fn monomial(c: impl Into<BigInt>, t_exp: u32, q_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(t_exp, q_exp, c.into());
        p
    }

    pub fn t_pow(e: u32) -> Self {
        Self::monomial(1, e, 0)
    }

    pub fn q_pow(e: u32) -> Self {
        Self::monomial(1, 0, e)
    }

    pub fn add_term(&mut self, t_exp: u32, q_exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (t_exp, q_exp);
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t_exp: u32, q_exp: u32) -> BigInt {
        self.terms.get(&(t_exp, q_exp)).cloned().unwrap_or_default()
    }

    /// `((t, q), c)` in increasing `(t, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum t-exponent and maximum q-exponent over all terms.
    pub fn max_degrees(&self) -> Option<(u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let t = self.terms.keys().map(|k| k.0).max().unwrap();
        let q = self.terms.keys().map(|k| k.1).max().unwrap();
        Some((t, q))
    }

    /// Sum of coefficients, i.e. the value at `q = t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> QTPoly {
        let mut out = QTPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Coefficient of `t^i q^j` in the output is that of `t^(N-i) q^(M-j)` in the input.
    pub fn qt_reverse(&self, max_t: u32, max_q: u32) -> Result<QTPoly, DegreeOverflow> {
        let mut out = QTPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > max_t || j > max_q {
                return Err(DegreeOverflow { t: i, q: j, max_t, max_q });
            }
            out.add_term(max_t - i, max_q - j, c.clone());
        }
        Ok(out)
    }

    /// Exchanges the roles of `q` and `t`.
    pub fn swap_qt(&self) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    pub fn is_qt_symmetric(&self, max_t: u32, max_q: u32) -> bool {
        self.qt_reverse(max_t, max_q).map(|r| &r == self).unwrap_or(false)
    }

    /// Exact division; the divisor's leading term (lex in `(t, q)`) must divide
    /// every intermediate leading term with an integral quotient.
    pub fn div_exact(&self, divisor: &QTPoly) -> Result<QTPoly, NonDivisible> {
        let fail = || NonDivisible { dividend: self.to_string(), divisor: divisor.to_string() };
        let (&(dt, dq), dc) = divisor.terms.iter().next_back().ok_or_else(fail)?;
        let mut rem = self.clone();
        let mut quot = QTPoly::zero();
        while let Some((&(rt, rq), rc)) = rem.terms.iter().next_back() {
            if rt < dt || rq < dq {
                return Err(fail());
            }
            let (c, r) = num_integer::Integer::div_rem(rc, dc);
            if !r.is_zero() {
                return Err(fail());
            }
            let step = QTPoly::monomial(c, rt - dt, rq - dq);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_form()).expect("plain data serializes")
    }

    pub fn json_form(&self) -> QTPolyJson {
        QTPolyJson {
            terms: self
                .terms
                .iter()
                .map(|(&(t, q), c)| QTTerm { t, q, c: c.to_string() })
                .collect(),
        }
    }
}

/// Serialized form `{"terms":[{"t":i,"q":j,"c":c}]}`.
///
/// Coefficients are emitted as JSON numbers when they fit in `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct QTPolyJson {
    pub terms: Vec<QTTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct QTTerm {
    pub t: u32,
    pub q: u32,
    #[serde(deserialize_with = "de_bigint")]
    pub c: String,
}

fn de_bigint<'de, D: serde::Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    match v {
        serde_json::Value::Number(n) => Ok(n.to_string()),
        serde_json::Value::String(s) => Ok(s),
        other => Err(serde::de::Error::custom(format!("bad coefficient {other}"))),
    }
}

impl Serialize for QTTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QTTerm", 3)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("q", &self.q)?;
        match self.c.parse::<i64>() {
            Ok(v) => st.serialize_field("c", &v)?,
            Err(_) => st.serialize_field("c", &self.c)?,
        }
        st.end()
    }
}

impl Serialize for QTPolyJson {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QTPoly", 1)?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}

impl TryFrom<QTPolyJson> for QTPoly {
    type Error = ParsePolyError;

    fn try_from(j: QTPolyJson) -> Result<Self, Self::Error> {
        let mut p = QTPoly::zero();
        for term in j.terms {
            let c: BigInt = term.c.parse().map_err(|_| ParsePolyError(term.c.clone()))?;
            p.add_term(term.t, term.q, c);
        }
        Ok(p)
    }
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let unit = i > 0 || j > 0;
            if !unit || c.abs() != BigInt::one() {
                parts.push(c.to_string());
            } else if c.is_negative() {
                parts.push("-1".to_string());
            }
            match j {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{j}")),
            }
            match i {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{i}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for QTPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut p = QTPoly::zero();
        if s == "0" {
            return Ok(p);
        }
        for term in s.split(" + ") {
            let mut c = BigInt::one();
            let (mut ti, mut qj) = (0u32, 0u32);
            for part in term.trim().split('*') {
                let bad = || ParsePolyError(term.to_string());
                if let Some(rest) = part.strip_prefix('t') {
                    ti = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else if let Some(rest) = part.strip_prefix('q') {
                    qj = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else {
                    c = part.parse().map_err(|_| bad())?;
                }
            }
            p.add_term(ti, qj, c);
        }
        Ok(p)
    }
}

impl<'a> Add<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Add for QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: QTPoly) -> QTPoly {
        &self + &rhs
    }
}

impl Mul for QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: QTPoly) -> QTPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for QTPoly {
    fn sum<I: Iterator<Item = QTPoly>>(iter: I) -> QTPoly {
        iter.fold(QTPoly::zero(), |a, b| &a + &b)
    }
}

/// `[m]_t = 1 + t + ... + t^(m-1)`, with `[0]_t = 0`.
pub fn t_integer(m: u32) -> QTPoly {
    let mut p = QTPoly::zero();
    for i in 0..m {
        p.add_term(i, 0, BigInt::one());
    }
    p
}

/// `[m]_t! = [1]_t [2]_t ... [m]_t`, with `[0]_t! = 1`.
pub fn t_factorial(m: u32) -> QTPoly {
    (1..=m).fold(QTPoly::one(), |acc, i| &acc * &t_integer(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize, j: usize) -> LinearFactor {
        LinearFactor::x(k, j, rat(j as i64))
    }
    fn y(k: usize, j: usize) -> LinearFactor {
        LinearFactor::y(k, j, rat(j as i64))
    }

    #[test]
    fn cancellation_example() {
        let p = FactorProduct::from_factors([x(3, 1), x(3, 2)]);
        let d = FactorProduct::from_factors([x(3, 2)]);
        assert_eq!(p.divide_exact(&d).unwrap(), FactorProduct::from_factors([x(3, 1)]));
        assert_eq!(p.divide_exact(&FactorProduct::one()).unwrap(), p);
        let bad = FactorProduct::from_factors([y(2, 1)]).divide_exact(&FactorProduct::from_factors([x(2, 2)]));
        assert!(bad.is_err());
    }

    #[test]
    fn evaluation_basics() {
        let pt: Vec<Rational> = [1, 2, 1, 2].iter().map(|&v| rat(v)).collect();
        assert_eq!(FactorProduct::one().evaluate(&pt), rat(1));
        let f = FactorProduct::from_factors([y(1, 1)]);
        assert!(f.evaluate(&pt).is_zero());
        assert!(f.vanishes_at(&pt));
    }

    #[test]
    fn display_forms() {
        let p = FactorProduct::from_factors([y(1, 1), x(3, 1)]);
        assert_eq!(p.to_string(), "(x3-a1)(y1-b1)");
        assert_eq!(FactorProduct::one().to_string(), "()");
        let f: QTPoly = "1 + 2*q + 2*t + q*t".parse().unwrap();
        assert_eq!(f.to_string(), "1 + 2*q + 2*t + q*t");
        assert_eq!(serde_json::to_string(&f.json_form()).unwrap(), r#"{"terms":[{"t":0,"q":0,"c":1},{"t":0,"q":1,"c":2},{"t":1,"q":0,"c":2},{"t":1,"q":1,"c":1}]}"#);
        let back: QTPolyJson = serde_json::from_value(f.to_json()).unwrap();
        assert_eq!(QTPoly::try_from(back).unwrap(), f);
    }

    #[test]
    fn t_analogs() {
        assert_eq!(t_integer(1), QTPoly::one());
        assert_eq!(t_integer(0), QTPoly::zero());
        assert_eq!(t_factorial(0), QTPoly::one());
        assert_eq!(t_integer(3).to_string(), "1 + t + t^2");
        assert_eq!(t_factorial(3).to_string(), "1 + 2*t + 2*t^2 + t^3");
    }

    #[test]
    fn reversal() {
        let f: QTPoly = "1 + 2*q + 2*t + q*t".parse().unwrap();
        assert_eq!(f.qt_reverse(1, 1).unwrap(), f);
        assert!(QTPoly::one().is_qt_symmetric(0, 0));
        let g: QTPoly = "1 + t".parse().unwrap();
        assert!(g.is_qt_symmetric(1, 0));
        assert_eq!(g.qt_reverse(2, 0).unwrap().to_string(), "t + t^2");
        assert!(g.qt_reverse(0, 0).is_err());
    }

    #[test]
    fn division() {
        let a = &t_factorial(3) * &"1 + q*t".parse::<QTPoly>().unwrap();
        assert_eq!(a.div_exact(&t_factorial(3)).unwrap().to_string(), "1 + q*t");
        assert!(t_integer(3).div_exact(&t_integer(2)).is_err());
    }
}
