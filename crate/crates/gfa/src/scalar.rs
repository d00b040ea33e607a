//! Scalar arithmetic over the four supported domains.
//!
//! Every algebraic routine in this crate is written once against [`Scalar`]
//! and runs exactly over `Z_n` and the rationals, or in double precision
//! over the reals and complexes. Values are immutable; all operations are
//! pure functions.

use std::fmt;

use num::complex::Complex64;
use num::rational::BigRational;
use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus: residues stay in 64 bits with 128-bit
/// intermediate products.
pub const MAX_MODULUS: u64 = 1 << 32;

/// The commutative ring the computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarDomain {
    Real,
    Complex,
    /// Integers modulo `n`, `2 <= n <= 2^32`.
    Zmod(u64),
    Rational,
}

impl ScalarDomain {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("modulus must be >= 2, got {n}")));
        }
        if n > MAX_MODULUS {
            return Err(Error::domain(format!(
                "modulus {n} exceeds the supported cap 2^32"
            )));
        }
        Ok(ScalarDomain::Zmod(n))
    }

    /// Exact domains admit bit-for-bit equality tests; floating domains
    /// need tolerance-based comparison.
    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarDomain::Zmod(_) | ScalarDomain::Rational)
    }

    pub fn kind_str(&self) -> &'static str {
        match self {
            ScalarDomain::Real => "real",
            ScalarDomain::Complex => "complex",
            ScalarDomain::Zmod(_) => "zmod",
            ScalarDomain::Rational => "rational",
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Zmod(n) => write!(f, "zmod({n})"),
            d => f.write_str(d.kind_str()),
        }
    }
}

impl Serialize for ScalarDomain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("kind", self.kind_str())?;
        if let ScalarDomain::Zmod(n) = self {
            m.serialize_entry("modulus", n)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ScalarDomain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            modulus: Option<u64>,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.kind.as_str(), raw.modulus) {
            ("real", None) => Ok(ScalarDomain::Real),
            ("complex", None) => Ok(ScalarDomain::Complex),
            ("rational", None) => Ok(ScalarDomain::Rational),
            ("zmod", Some(n)) => {
                ScalarDomain::zmod(n).map_err(|e| serde::de::Error::custom(e.to_string()))
            }
            ("zmod", None) => Err(serde::de::Error::custom("zmod domain requires a modulus")),
            (k, Some(_)) => Err(serde::de::Error::custom(format!(
                "modulus is only valid for zmod, not {k}"
            ))),
            (k, None) => Err(serde::de::Error::custom(format!("unknown scalar kind {k:?}"))),
        }
    }
}

/// A single value in one of the four domains. Residues are always reduced
/// to `0..n`, rationals always canonical (reduced, positive denominator).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Real(f64),
    Complex(Complex64),
    Zmod { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl Scalar {
    pub fn zero(domain: ScalarDomain) -> Scalar {
        match domain {
            ScalarDomain::Real => Scalar::Real(0.0),
            ScalarDomain::Complex => Scalar::Complex(Complex64::new(0.0, 0.0)),
            ScalarDomain::Zmod(n) => Scalar::Zmod { value: 0, modulus: n },
            ScalarDomain::Rational => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(domain: ScalarDomain) -> Scalar {
        Scalar::from_i64(domain, 1)
    }

    pub fn from_i64(domain: ScalarDomain, k: i64) -> Scalar {
        match domain {
            ScalarDomain::Real => Scalar::Real(k as f64),
            ScalarDomain::Complex => Scalar::Complex(Complex64::new(k as f64, 0.0)),
            ScalarDomain::Zmod(n) => {
                let v = k.rem_euclid(n as i64) as u64;
                Scalar::Zmod { value: v, modulus: n }
            }
            ScalarDomain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
        }
    }

    /// Exact `p/q` in the given domain. Over `Z_n` the denominator must be
    /// a unit.
    pub fn from_ratio(domain: ScalarDomain, p: i64, q: i64) -> Result<Scalar> {
        if q == 0 {
            return Err(Error::domain("zero denominator"));
        }
        match domain {
            ScalarDomain::Real => Ok(Scalar::Real(p as f64 / q as f64)),
            ScalarDomain::Complex => Ok(Scalar::Complex(Complex64::new(p as f64 / q as f64, 0.0))),
            ScalarDomain::Rational => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(p),
                BigInt::from(q),
            ))),
            ScalarDomain::Zmod(_) => {
                Scalar::from_i64(domain, p).div(&Scalar::from_i64(domain, q))
            }
        }
    }

    pub fn zmod(value: u64, modulus: u64) -> Scalar {
        Scalar::Zmod { value: value % modulus, modulus }
    }

    pub fn rational(p: i64, q: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn complex(re: f64, im: f64) -> Scalar {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Real(_) => ScalarDomain::Real,
            Scalar::Complex(_) => ScalarDomain::Complex,
            Scalar::Zmod { modulus, .. } => ScalarDomain::Zmod(*modulus),
            Scalar::Rational(_) => ScalarDomain::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Real(x) => *x == 0.0,
            Scalar::Complex(z) => z.re == 0.0 && z.im == 0.0,
            Scalar::Zmod { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::Real(a + b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a + b),
            (Scalar::Zmod { value: a, modulus: n }, Scalar::Zmod { value: b, modulus: m })
                if n == m =>
            {
                Scalar::Zmod { value: (a + b) % n, modulus: *n }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => panic!("scalar domain mismatch: {} vs {}", self.domain(), rhs.domain()),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Real(a) => Scalar::Real(-a),
            Scalar::Complex(a) => Scalar::Complex(-a),
            Scalar::Zmod { value, modulus } => Scalar::Zmod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(a) => Scalar::Rational(-a),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::Real(a * b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(a * b),
            (Scalar::Zmod { value: a, modulus: n }, Scalar::Zmod { value: b, modulus: m })
                if n == m =>
            {
                let prod = (*a as u128 * *b as u128) % (*n as u128);
                Scalar::Zmod { value: prod as u64, modulus: *n }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => panic!("scalar domain mismatch: {} vs {}", self.domain(), rhs.domain()),
        }
    }

    /// Multiplicative inverse. Over `Z_n` only units are invertible;
    /// elsewhere only zero is excluded.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Real(a) => {
                if *a == 0.0 {
                    Err(Error::domain("division by zero (real)"))
                } else {
                    Ok(Scalar::Real(1.0 / a))
                }
            }
            Scalar::Complex(z) => {
                if z.re == 0.0 && z.im == 0.0 {
                    Err(Error::domain("division by zero (complex)"))
                } else {
                    Ok(Scalar::Complex(z.inv()))
                }
            }
            Scalar::Zmod { value, modulus } => {
                let inv = mod_inverse(*value, *modulus).ok_or_else(|| {
                    Error::domain(format!(
                        "{value} is not a unit mod {modulus} (gcd = {}); division undefined",
                        num::integer::gcd(*value, *modulus)
                    ))
                })?;
                Ok(Scalar::Zmod { value: inv, modulus: *modulus })
            }
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::domain("division by zero (rational)"))
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Tolerance comparison for floating domains; exact equality otherwise.
    pub fn approx_eq(&self, rhs: &Scalar, eps: f64) -> bool {
        match (self, rhs) {
            (Scalar::Real(a), Scalar::Real(b)) => (a - b).abs() <= eps,
            (Scalar::Complex(a), Scalar::Complex(b)) => (a - b).norm() <= eps,
            _ => self == rhs,
        }
    }

    /// Canonical distance from zero, used for summaries and tolerance
    /// checks. For residues this is the distance to 0 in the cyclic group.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Real(a) => a.abs(),
            Scalar::Complex(z) => z.norm(),
            Scalar::Zmod { value, modulus } => (*value).min(modulus - value) as f64,
            Scalar::Rational(r) => r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
        }
    }

    /// Numeric view for real-valued domains (real and rational).
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Real(a) => Some(*a),
            Scalar::Rational(r) => r.to_f64(),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Option<Complex64> {
        match self {
            Scalar::Real(a) => Some(Complex64::new(*a, 0.0)),
            Scalar::Complex(z) => Some(*z),
            Scalar::Rational(r) => r.to_f64().map(|x| Complex64::new(x, 0.0)),
            Scalar::Zmod { .. } => None,
        }
    }

    /// Strictly-positive test, meaningful for the ordered domains.
    pub fn is_positive_real(&self) -> Option<bool> {
        match self {
            Scalar::Real(a) => Some(*a > 0.0),
            Scalar::Rational(r) => Some(r.is_positive()),
            _ => None,
        }
    }

    /// JSON literal per the wire format: real → number, complex →
    /// `[re, im]`, zmod → integer, rational → `"p/q"`.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Number, Value};
        match self {
            Scalar::Real(a) => Number::from_f64(*a)
                .map(Value::Number)
                .unwrap_or_else(|| json!(a.to_string())),
            Scalar::Complex(z) => json!([z.re, z.im]),
            Scalar::Zmod { value, .. } => json!(value),
            Scalar::Rational(r) => json!(format!("{}/{}", r.numer(), r.denom())),
        }
    }

    pub fn from_json(domain: ScalarDomain, v: &serde_json::Value) -> Result<Scalar> {
        use serde_json::Value;
        match (domain, v) {
            (ScalarDomain::Real, Value::Number(x)) => x
                .as_f64()
                .map(Scalar::Real)
                .ok_or_else(|| Error::parse(format!("non-finite real literal {x}"))),
            (ScalarDomain::Complex, Value::Array(parts)) if parts.len() == 2 => {
                let re = parts[0]
                    .as_f64()
                    .ok_or_else(|| Error::parse("complex literal parts must be numbers"))?;
                let im = parts[1]
                    .as_f64()
                    .ok_or_else(|| Error::parse("complex literal parts must be numbers"))?;
                Ok(Scalar::complex(re, im))
            }
            (ScalarDomain::Complex, Value::Number(x)) => {
                // plain number accepted as a real complex value
                let re = x
                    .as_f64()
                    .ok_or_else(|| Error::parse(format!("non-finite literal {x}")))?;
                Ok(Scalar::complex(re, 0.0))
            }
            (ScalarDomain::Zmod(n), Value::Number(x)) => {
                let value = x.as_u64().ok_or_else(|| {
                    Error::parse(format!("zmod literal must be an integer in 0..{n}, got {x}"))
                })?;
                if value >= n {
                    return Err(Error::parse(format!(
                        "residue {value} outside domain 0..{n}"
                    )));
                }
                Ok(Scalar::Zmod { value, modulus: n })
            }
            (ScalarDomain::Rational, Value::String(s)) => parse_rational(s),
            (ScalarDomain::Rational, Value::Number(x)) => {
                if let Some(i) = x.as_i64() {
                    Ok(Scalar::from_i64(ScalarDomain::Rational, i))
                } else {
                    Err(Error::parse(format!(
                        "rational literal must be an integer or \"p/q\" string, got {x}"
                    )))
                }
            }
            (d, v) => Err(Error::parse(format!("invalid {d} scalar literal: {v}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(a) => write!(f, "{a}"),
            Scalar::Complex(z) => {
                if z.im >= 0.0 {
                    write!(f, "{}+{}i", z.re, z.im)
                } else {
                    write!(f, "{}{}i", z.re, z.im)
                }
            }
            Scalar::Zmod { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

fn parse_rational(s: &str) -> Result<Scalar> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator {p:?}")))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator {q:?}")))?;
    if q.is_zero() {
        return Err(Error::parse(format!("zero denominator in rational {s:?}")));
    }
    Ok(Scalar::Rational(BigRational::new(p, q)))
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    // extended Euclid over i128
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

/// Trial-division factorization, sufficient for the moduli this crate
/// targets (n ≤ 10^6 for zero-divisor scans, 2^32 for arithmetic).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Product of the distinct primes of `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|(p, _)| p).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZmodClass {
    Zero,
    Unit,
    ZeroDivisor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZmodClassification {
    pub class: ZmodClass,
    pub nilpotent: bool,
}

/// Classify a residue of `Z_n`: zero, unit, or zero divisor, plus the
/// nilpotency flag (x is nilpotent iff every prime of n divides x).
pub fn zmod_classify(n: u64, x: u64) -> Result<ZmodClassification> {
    if n < 2 {
        return Err(Error::domain(format!("modulus must be >= 2, got {n}")));
    }
    if x >= n {
        return Err(Error::domain(format!("residue {x} out of range 0..{n}")));
    }
    let class = if x == 0 {
        ZmodClass::Zero
    } else if num::integer::gcd(x, n) == 1 {
        ZmodClass::Unit
    } else {
        ZmodClass::ZeroDivisor
    };
    let nilpotent = x % radical(n) == 0;
    Ok(ZmodClassification { class, nilpotent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classify_spec_cases() {
        let c = zmod_classify(30, 6).unwrap();
        assert_eq!(c.class, ZmodClass::ZeroDivisor);
        assert!(!c.nilpotent);

        let c = zmod_classify(30, 7).unwrap();
        assert_eq!(c.class, ZmodClass::Unit);
        assert!(!c.nilpotent);

        let c = zmod_classify(8, 2).unwrap();
        assert_eq!(c.class, ZmodClass::ZeroDivisor);
        assert!(c.nilpotent);

        assert!(zmod_classify(1, 0).is_err());
        assert!(zmod_classify(10, 10).is_err());
    }

    #[test]
    fn nilpotent_is_never_a_unit() {
        for n in 2u64..=1000 {
            let rad = radical(n);
            for x in 0..n {
                let c = zmod_classify(n, x).unwrap();
                assert_eq!(c.nilpotent, x % rad == 0);
                if c.nilpotent {
                    assert_ne!(c.class, ZmodClass::Unit, "nilpotent unit x={x} mod {n}");
                }
            }
        }
    }

    #[test]
    fn zmod_division_requires_unit() {
        let six = Scalar::zmod(6, 30);
        let seven = Scalar::zmod(7, 30);
        assert!(six.inv().is_err());
        let inv7 = seven.inv().unwrap();
        assert_eq!(seven.mul(&inv7), Scalar::zmod(1, 30));
    }

    #[test]
    fn rational_literals_round_trip() {
        let r = Scalar::from_json(ScalarDomain::Rational, &serde_json::json!("-3/9")).unwrap();
        assert_eq!(r, Scalar::rational(-1, 3));
        assert_eq!(r.to_json(), serde_json::json!("-1/3"));
        assert!(Scalar::from_json(ScalarDomain::Rational, &serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn zmod_literal_range_checked() {
        assert!(Scalar::from_json(ScalarDomain::Zmod(5), &serde_json::json!(5)).is_err());
        assert!(Scalar::from_json(ScalarDomain::Zmod(5), &serde_json::json!(4)).is_ok());
    }

    fn rational_strategy() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| Scalar::rational(p, q))
    }

    proptest! {
        #[test]
        fn zmod_ring_axioms(n in 2u64..1000, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let a = Scalar::zmod(a % n, n);
            let b = Scalar::zmod(b % n, n);
            let c = Scalar::zmod(c % n, n);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a.neg()), Scalar::zero(ScalarDomain::Zmod(n)));
        }

        #[test]
        fn zmod_results_are_reduced(n in 2u64..1000, a in 0u64..1000, b in 0u64..1000) {
            let a = Scalar::zmod(a, n);
            let b = Scalar::zmod(b, n);
            for s in [a.add(&b), a.mul(&b), a.neg(), a.sub(&b)] {
                match s {
                    Scalar::Zmod { value, modulus } => prop_assert!(value < modulus),
                    _ => prop_assert!(false),
                }
            }
        }

        #[test]
        fn rational_ring_axioms(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
