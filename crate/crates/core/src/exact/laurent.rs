use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// Finitely supported map exponent -> rational coefficient in one formal
/// variable. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c);
        p
    }

    /// The variable itself raised to `exp`.
    pub fn var_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// Builds from integer coefficients starting at exponent `low`.
    pub fn from_coeffs(low: i64, cs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, &c) in cs.iter().enumerate() {
            p.add_term(low + k as i64, Rational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    /// Multiplies by var^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes var -> var^k (k may be negative).
    pub fn dilate(&self, k: i64) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in &self.coeffs {
            p.add_term(e * k, c.clone());
        }
        p
    }

    /// Substitutes var -> var^{-1}.
    pub fn invert_var(&self) -> Self {
        self.dilate(-1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only exponents `<= max`.
    pub fn truncate(&self, max: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.range(..=max).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.coeffs {
            let xe = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += c * xe;
        }
        acc
    }

    /// Exact division; `None` if the divisor is zero or does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Division with remainder after normalising both operands to genuine
    /// polynomials. The quotient is shifted back so that
    /// `self = q*d + r` holds as Laurent polynomials.
    pub fn div_rem(&self, d: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
        let dl = d.low_degree()?;
        let d_norm = d.shift(-dl);
        let sl = self.low_degree().unwrap_or(0);
        let mut rem = self.shift(-sl);
        let dd = d_norm.degree().unwrap();
        let lc = d_norm.leading_coeff().unwrap().clone();
        let mut q = LaurentPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lc;
            let t = LaurentPoly::monomial(c, rd - dd);
            rem = &rem - &(&t * &d_norm);
            q = &q + &t;
        }
        // self*x^{-sl} = q*d*x^{-dl} + rem
        Some((q.shift(sl - dl), rem.shift(sl)))
    }

    /// True when every coefficient is a non-negative integer.
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Coefficients as i64 when they are all small integers.
    pub fn integer_coeffs(&self) -> Option<BTreeMap<i64, i64>> {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                if c.is_integer() {
                    c.to_integer().to_i64().map(|v| (*e, v))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Dense coefficient list from exponent 0 to `max` inclusive (the polynomial
    /// must not contain negative exponents).
    pub fn dense_coeffs(&self, max: i64) -> Vec<Rational> {
        (0..=max).map(|e| self.coeff(e)).collect()
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("q"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("q"))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// JSON form: `{"<exponent>": [num, den], ...}` with integers written as JSON
/// numbers when they fit in an i64 and as decimal strings otherwise.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), &RationalJson::from(c))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, RationalJson> = BTreeMap::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, v) in raw {
            let e: i64 = k.parse().map_err(D::Error::custom)?;
            p.add_term(e, v.to_rational().map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

/// `[num, den]` pair used by every JSON encoding of rationals.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RationalJson(pub IntJson, pub IntJson);

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Big(String),
}

impl IntJson {
    fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => IntJson::Small(v),
            None => IntJson::Big(b.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            IntJson::Small(v) => Ok(BigInt::from(*v)),
            IntJson::Big(s) => s.parse().map_err(|e| format!("bad integer {s}: {e}")),
        }
    }
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson(IntJson::from_big(r.numer()), IntJson::from_big(r.denom()))
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, String> {
        let n = self.0.to_big()?;
        let d = self.1.to_big()?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_and_cancellation() {
        let a = LaurentPoly::from_coeffs(-1, &[1, 2, 3]);
        let b = LaurentPoly::from_coeffs(-1, &[1, 2, 3]);
        assert!((&a - &b).is_zero());
        let p = &LaurentPoly::from_coeffs(0, &[1, 1]) * &LaurentPoly::from_coeffs(0, &[1, -1]);
        assert_eq!(p, LaurentPoly::from_coeffs(0, &[1, 0, -1]));
    }

    #[test]
    fn exact_division() {
        // (1 - q^3) / (1 - q) = 1 + q + q^2
        let n = LaurentPoly::from_coeffs(0, &[1, 0, 0, -1]);
        let d = LaurentPoly::from_coeffs(0, &[1, -1]);
        assert_eq!(n.div_exact(&d).unwrap(), LaurentPoly::from_coeffs(0, &[1, 1, 1]));
        // q^{-2} + q^{-1} divided by q^{-1}(1+q) = q^{-1}
        let n = LaurentPoly::from_coeffs(-2, &[1, 1]);
        let d = LaurentPoly::from_coeffs(-1, &[1, 1]);
        assert_eq!(n.div_exact(&d).unwrap(), LaurentPoly::var_pow(-1));
        assert!(LaurentPoly::from_coeffs(0, &[1, 0, 1]).div_exact(&d).is_none());
    }

    #[test]
    fn json_roundtrip_with_big_coefficients() {
        let mut p = LaurentPoly::from_coeffs(-2, &[3, 0, -7]);
        p.add_term(5, rat(1, 3));
        let big = Rational::from_integer(BigInt::from(10).pow(30));
        p.add_term(9, big);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"-2\":[3,1]"));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_coeffs(-1, &[-1, 2, 0, 1]);
        assert_eq!(p.display_with("q"), "-q^-1 + 2 + q^2");
    }
}
