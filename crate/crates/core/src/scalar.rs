//! The coefficient ring `K = Q(ζ_m)[s]/(s^2 - q)`.
//!
//! A scalar is `(one + s·sqrt) / den` where `one` and `sqrt` are integer vectors in the
//! power basis of `Q(ζ_m)` modulo the m-th cyclotomic polynomial and `den > 0` is a shared
//! denominator. Values are kept reduced, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    one: Vec<BigInt>,
    sqrt: Vec<BigInt>,
    den: BigInt,
}

/// Arithmetic context for scalars with a fixed `m` and `q`.
#[derive(Clone, Debug)]
pub struct ScalarRing {
    m: usize,
    q: BigInt,
    phi: usize,
    /// Monic cyclotomic polynomial, low degree first, length `phi + 1`.
    cyclo: Vec<BigInt>,
    /// `x^j mod Φ_m` for `phi <= j <= 2 phi - 2`.
    high_powers: Vec<Vec<BigInt>>,
    /// `ζ^j` for `0 <= j < m`.
    roots: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Eq,
    IsZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithResult {
    Value(Scalar),
    Bool(bool),
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact division of integer polynomials (low degree first), divisor monic.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

/// Coefficients of the m-th cyclotomic polynomial.
pub fn cyclotomic(m: usize) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = -BigInt::one();
    p[m] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_vec(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * c).collect()
}

impl Scalar {
    fn normalize(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.one.iter_mut().chain(self.sqrt.iter_mut()) {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in self.one.iter().chain(self.sqrt.iter()) {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if is_zero_vec(&self.one) && is_zero_vec(&self.sqrt) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in self.one.iter_mut().chain(self.sqrt.iter_mut()) {
                *c /= &g;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.one) && is_zero_vec(&self.sqrt)
    }

    /// Rational value when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if is_zero_vec(&self.sqrt) && is_zero_vec(&self.one[1..]) {
            Some((self.one[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn one_part(&self) -> &[BigInt] {
        &self.one
    }

    pub fn sqrt_part(&self) -> &[BigInt] {
        &self.sqrt
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    fn combine(&self, other: &Scalar, sign: i32) -> Scalar {
        assert_eq!(self.one.len(), other.one.len(), "scalars from different rings");
        if self.den == other.den {
            let f = |a: &BigInt, b: &BigInt| if sign > 0 { a + b } else { a - b };
            return Scalar {
                one: self.one.iter().zip(&other.one).map(|(a, b)| f(a, b)).collect(),
                sqrt: self.sqrt.iter().zip(&other.sqrt).map(|(a, b)| f(a, b)).collect(),
                den: self.den.clone(),
            }
            .normalize();
        }
        let l = self.den.lcm(&other.den);
        let ca = &l / &self.den;
        let cb = &l / &other.den;
        let f = |a: &BigInt, b: &BigInt| {
            if sign > 0 {
                a * &ca + b * &cb
            } else {
                a * &ca - b * &cb
            }
        };
        Scalar {
            one: self.one.iter().zip(&other.one).map(|(a, b)| f(a, b)).collect(),
            sqrt: self.sqrt.iter().zip(&other.sqrt).map(|(a, b)| f(a, b)).collect(),
            den: l,
        }
        .normalize()
    }

    pub fn to_json(&self) -> Value {
        let enc = |v: &[BigInt]| Value::Array(v.iter().map(bigint_to_json).collect());
        json!({"one": enc(&self.one), "s": enc(&self.sqrt), "den": bigint_to_json(&self.den)})
    }

    /// Parses the JSON form; the ring is checked by [`ScalarRing::check`].
    pub fn from_json(v: &Value) -> Result<Scalar> {
        let bad = || Error::Malformed(format!("scalar {v}"));
        let arr = |key: &str| -> Result<Vec<BigInt>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|x| bigint_from_json(x).ok_or_else(bad))
                .collect()
        };
        let one = arr("one")?;
        let sqrt = arr("s")?;
        let den = match v.get("den") {
            None => BigInt::one(),
            Some(d) => bigint_from_json(d).ok_or_else(bad)?,
        };
        if one.len() != sqrt.len() || one.is_empty() || den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar { one, sqrt, den }.normalize())
    }
}

fn bigint_to_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(b.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Scalar::from_json(&v).map_err(D::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, 1)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, -1)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.combine(&rhs, 1)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.combine(&rhs, -1)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.combine(rhs, 1);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.combine(rhs, -1);
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            one: self.one.iter().map(|c| -c).collect(),
            sqrt: self.sqrt.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (tag, v) in [("", &self.one), ("s", &self.sqrt)] {
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mon = match (j, tag) {
                    (0, "") => String::new(),
                    (0, t) => t.to_string(),
                    (1, t) => format!("{t}z"),
                    (j, t) => format!("{t}z^{j}"),
                };
                parts.push(if mon.is_empty() { c.to_string() } else { format!("{c}*{mon}") });
            }
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl ScalarRing {
    pub fn new(m: usize, q: u64) -> ScalarRing {
        assert!(m >= 1);
        let cyclo = cyclotomic(m);
        let phi = cyclo.len() - 1;
        let mut ring = ScalarRing {
            m,
            q: BigInt::from(q),
            phi,
            cyclo,
            high_powers: Vec::new(),
            roots: Vec::new(),
        };
        let mut cur: Vec<BigInt> = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        let mut powers = Vec::new();
        for _ in 0..(2 * phi).max(m) {
            powers.push(cur.clone());
            cur = ring.times_x(&cur);
        }
        ring.roots = powers[..m].to_vec();
        ring.high_powers = (phi..2 * phi.max(1) - 1).map(|j| powers[j].clone()).collect();
        ring
    }

    pub fn from_params(p: &crate::Params) -> ScalarRing {
        ScalarRing::new(p.m() as usize, p.q)
    }

    fn times_x(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        let top = v[self.phi - 1].clone();
        for j in (1..self.phi).rev() {
            out[j] = v[j - 1].clone();
        }
        if !top.is_zero() {
            for j in 0..self.phi {
                out[j] -= &top * &self.cyclo[j];
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        if v.len() <= self.phi {
            v.resize(self.phi, BigInt::zero());
            return v;
        }
        let mut out: Vec<BigInt> = v.drain(..self.phi).collect();
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(&self.high_powers[j]) {
                if !h.is_zero() {
                    *o += c * h;
                }
            }
        }
        out
    }

    fn cmul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if is_zero_vec(a) || is_zero_vec(b) {
            return vec![BigInt::zero(); self.phi];
        }
        self.reduce(poly_mul(a, b))
    }

    fn raw(&self, one: Vec<BigInt>, sqrt: Vec<BigInt>, den: BigInt) -> Scalar {
        Scalar { one, sqrt, den }.normalize()
    }

    pub fn zero(&self) -> Scalar {
        let z = vec![BigInt::zero(); self.phi];
        Scalar { one: z.clone(), sqrt: z, den: BigInt::one() }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        self.rational(v, 1).expect("nonzero denominator")
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        self.rational_big(BigInt::from(num), BigInt::from(den))
    }

    pub fn rational_big(&self, num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::NotInvertible("zero denominator".into()));
        }
        let mut one = vec![BigInt::zero(); self.phi];
        one[0] = num;
        Ok(self.raw(one, vec![BigInt::zero(); self.phi], den))
    }

    /// `ζ_m^j` for any integer `j`.
    pub fn root_of_unity(&self, j: i64) -> Scalar {
        let r = j.rem_euclid(self.m as i64) as usize;
        Scalar { one: self.roots[r].clone(), sqrt: vec![BigInt::zero(); self.phi], den: BigInt::one() }
    }

    /// The square root `s` of `q`.
    pub fn sqrt_q(&self) -> Scalar {
        let mut sqrt = vec![BigInt::zero(); self.phi];
        sqrt[0] = BigInt::one();
        Scalar { one: vec![BigInt::zero(); self.phi], sqrt, den: BigInt::one() }
    }

    /// Parses a scalar given as a JSON object, an integer, or a string `"p"` or `"p/q"`.
    pub fn parse_json(&self, v: &Value) -> Result<Scalar> {
        let c = match v {
            Value::Number(_) => {
                let n = bigint_from_json(v).ok_or_else(|| Error::Malformed(format!("scalar {v}")))?;
                self.rational_big(n, BigInt::one())?
            }
            Value::String(text) => {
                let (num, den) = text.split_once('/').unwrap_or((text.as_str(), "1"));
                let parse = |x: &str| x.trim().parse::<BigInt>().map_err(|_| Error::Malformed(format!("scalar {v}")));
                self.rational_big(parse(num)?, parse(den)?)?
            }
            _ => Scalar::from_json(v)?,
        };
        self.check(&c)?;
        Ok(c)
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if a.one.len() != self.phi {
            return Err(Error::Malformed(format!(
                "scalar has {} coordinates, ring needs {}",
                a.one.len(),
                self.phi
            )));
        }
        Ok(())
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let sa = !is_zero_vec(&a.sqrt);
        let sb = !is_zero_vec(&b.sqrt);
        let mut one = self.cmul(&a.one, &b.one);
        if sa && sb {
            let t = self.cmul(&a.sqrt, &b.sqrt);
            one = add_vec(&one, &scale_vec(&t, &self.q));
        }
        let sqrt = match (sa, sb) {
            (false, false) => vec![BigInt::zero(); self.phi],
            (true, false) => self.cmul(&a.sqrt, &b.one),
            (false, true) => self.cmul(&a.one, &b.sqrt),
            (true, true) => add_vec(&self.cmul(&a.sqrt, &b.one), &self.cmul(&a.one, &b.sqrt)),
        };
        self.raw(one, sqrt, &a.den * &b.den)
    }

    /// Multiplication by `ζ^j`.
    pub fn mul_root(&self, a: &Scalar, j: i64) -> Scalar {
        if j.rem_euclid(self.m as i64) == 0 {
            return a.clone();
        }
        self.mul(a, &self.root_of_unity(j))
    }

    pub fn mul_int(&self, a: &Scalar, c: i64) -> Scalar {
        let c = BigInt::from(c);
        self.raw(scale_vec(&a.one, &c), scale_vec(&a.sqrt, &c), a.den.clone())
    }

    pub fn div_int(&self, a: &Scalar, c: i64) -> Result<Scalar> {
        if c == 0 {
            return Err(Error::NotInvertible("division by zero".into()));
        }
        Ok(self.raw(a.one.clone(), a.sqrt.clone(), &a.den * BigInt::from(c)))
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Inverse of a scalar of the form `r · ζ^j · s^e` with `r ∈ Q^×` and `e ∈ {0, 1}`.
    pub fn invert_restricted(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::NotInvertible("zero".into()));
        }
        let has_one = !is_zero_vec(&a.one);
        let has_sqrt = !is_zero_vec(&a.sqrt);
        if has_one && has_sqrt {
            return Err(Error::NotInvertible(format!("{a} mixes 1 and sqrt(q)")));
        }
        let part = if has_one { &a.one } else { &a.sqrt };
        for j in 0..self.m as i64 {
            let rot = self.cmul(part, &self.roots[(self.m as i64 - j) as usize % self.m]);
            if is_zero_vec(&rot[1..]) {
                // a = (rot0 / den) ζ^j s^e
                let r0 = rot[0].clone();
                let mut inv = self.mul(
                    &self.rational_big(a.den.clone(), r0)?,
                    &self.root_of_unity(-j),
                );
                if has_sqrt {
                    inv = self.mul(&inv, &self.sqrt_q());
                    inv = self.raw(inv.one, inv.sqrt, inv.den * &self.q);
                }
                return Ok(inv);
            }
        }
        Err(Error::NotInvertible(format!("{a} is not a monomial r·ζ^j·s^e")))
    }

    pub fn arith(&self, a: &Scalar, b: Option<&Scalar>, op: ArithOp) -> Result<ArithResult> {
        let need_b = || b.ok_or_else(|| Error::Malformed("binary operation needs two operands".into()));
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        Ok(match op {
            ArithOp::Add => ArithResult::Value(a + need_b()?),
            ArithOp::Sub => ArithResult::Value(a - need_b()?),
            ArithOp::Mul => ArithResult::Value(self.mul(a, need_b()?)),
            ArithOp::Neg => ArithResult::Value(-a),
            ArithOp::Eq => ArithResult::Bool(a == need_b()?),
            ArithOp::IsZero => ArithResult::Bool(a.is_zero()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), coeffs(&[-1, 1]));
        assert_eq!(cyclotomic(2), coeffs(&[1, 1]));
        assert_eq!(cyclotomic(4), coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_have_order_m() {
        for m in [1usize, 2, 4, 6, 12] {
            let k = ScalarRing::new(m, m as u64 + 1);
            let z = k.root_of_unity(1);
            assert_eq!(k.pow(&z, m as u32), k.one());
            // sum of all m-th roots vanishes unless m = 1
            let mut s = k.zero();
            for j in 0..m as i64 {
                s += &k.root_of_unity(j);
            }
            assert_eq!(s, if m == 1 { k.one() } else { k.zero() });
        }
    }

    #[test]
    fn sqrt_squares_to_q() {
        let k = ScalarRing::new(4, 5);
        let s = k.sqrt_q();
        assert_eq!(k.mul(&s, &s), k.int(5));
    }

    #[test]
    fn restricted_inverse() {
        let k = ScalarRing::new(12, 13);
        let a = k.mul(&k.mul(&k.rational(3, 7).unwrap(), &k.root_of_unity(5)), &k.sqrt_q());
        let inv = k.invert_restricted(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        let b = &k.one() + &k.sqrt_q();
        assert!(k.invert_restricted(&b).is_err());
        let c = &k.one() + &k.root_of_unity(1);
        assert!(k.invert_restricted(&c).is_err());
        assert!(k.invert_restricted(&k.zero()).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k = ScalarRing::new(6, 7);
        let a = k.mul(&k.rational(-5, 6).unwrap(), &(&k.root_of_unity(2) + &k.sqrt_q()));
        let v = a.to_json();
        assert_eq!(Scalar::from_json(&v).unwrap(), a);
        let big = k.mul_int(&k.pow(&k.int(1 << 40), 3), 7);
        assert_eq!(Scalar::from_json(&big.to_json()).unwrap(), big);
    }
}
