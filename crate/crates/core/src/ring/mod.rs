//! Exact arithmetic over a fixed family of principal ideal rings.
//!
//! Every supported ring is a quotient of a Euclidean domain (its *covering
//! domain*): ℤ for ℤ and ℤ/n, the field itself for 𝔽_p and ℚ, and 𝔽_p[x] for
//! 𝔽_p[x]/(f). Elements of all rings share the [`Value`] payload type; a ring
//! reduces payloads to canonical representatives so equality is structural.

pub mod matrix;
pub mod module;
pub mod poly;
pub mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{invalid, Error, Result};
pub use poly::Poly;

/// Payload of a ring element. Which variant is used is dictated by the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Poly(Poly),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(q) => write!(f, "{q}"),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// A Euclidean domain covering one or more supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Integers,
    PrimeField(u64),
    Rationals,
    Polynomials(u64),
}

/// Basic arithmetic shared by [`Domain`] and [`RingSpec`]; matrices are generic over it.
pub trait Coefficients: Clone + fmt::Debug + PartialEq {
    fn zero(&self) -> Value;
    fn one(&self) -> Value;
    fn from_i64(&self, n: i64) -> Value;
    fn add(&self, a: &Value, b: &Value) -> Value;
    fn neg(&self, a: &Value) -> Value;
    fn mul(&self, a: &Value, b: &Value) -> Value;
    fn is_zero(&self, a: &Value) -> bool;

    fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }
}

impl Domain {
    fn fp(&self) -> u64 {
        match self {
            Domain::PrimeField(p) | Domain::Polynomials(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Domain::PrimeField(_) | Domain::Rationals)
    }

    /// Euclidean size used for pivot selection: |n| for ℤ, 1 for nonzero field
    /// elements, 1 + degree for polynomials. Zero has size 0.
    pub fn norm(&self, a: &Value) -> BigInt {
        if self.is_zero(a) {
            return BigInt::zero();
        }
        match (self, a) {
            (Domain::Integers, Value::Int(n)) => n.abs(),
            (Domain::Polynomials(_), Value::Poly(f)) => BigInt::from(f.0.len()),
            _ => BigInt::one(),
        }
    }

    pub fn is_unit(&self, a: &Value) -> bool {
        match (self, a) {
            (Domain::Integers, Value::Int(n)) => n.abs().is_one(),
            (Domain::Polynomials(_), Value::Poly(f)) => f.degree() == Some(0),
            _ => !self.is_zero(a),
        }
    }

    /// Euclidean division `a = q·b + r` with `norm(r) < norm(b)`. Panics on `b = 0`.
    pub fn div_rem(&self, a: &Value, b: &Value) -> (Value, Value) {
        match (self, a, b) {
            (Domain::Integers, Value::Int(x), Value::Int(y)) => {
                // floor division then shift the remainder into (-|y|/2, |y|/2]
                let (q, r) = x.div_mod_floor(y);
                let (q, r) = if (&r + &r).abs() > y.abs() {
                    (q + 1, r - y)
                } else {
                    (q, r)
                };
                (Value::Int(q), Value::Int(r))
            }
            (Domain::Polynomials(p), Value::Poly(x), Value::Poly(y)) => {
                let (q, r) = x.div_rem(y, *p);
                (Value::Poly(q), Value::Poly(r))
            }
            _ => {
                let inv = self.inverse(b).expect("field division by zero");
                (self.mul(a, &inv), self.zero())
            }
        }
    }

    /// Inverse of a unit, `None` otherwise.
    pub fn inverse(&self, a: &Value) -> Option<Value> {
        if !self.is_unit(a) {
            return None;
        }
        Some(match (self, a) {
            (Domain::Integers, Value::Int(n)) => Value::Int(n.clone()),
            (Domain::PrimeField(p), Value::Int(n)) => {
                Value::Int(BigInt::from(poly::field_inv(n.to_u64().unwrap(), *p)))
            }
            (Domain::Rationals, Value::Rat(q)) => Value::Rat(q.recip()),
            (Domain::Polynomials(p), Value::Poly(f)) => {
                Value::Poly(Poly::constant(poly::field_inv(f.0[0], *p), *p))
            }
            _ => unreachable!("value does not belong to domain"),
        })
    }

    /// Canonical associate of `a` and the unit `u` with `u·a` canonical.
    /// Integers become non-negative, field elements become 1, polynomials monic.
    pub fn normalize(&self, a: &Value) -> (Value, Value) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        match (self, a) {
            (Domain::Integers, Value::Int(n)) => {
                if n.is_negative() {
                    (Value::Int(-n), self.from_i64(-1))
                } else {
                    (a.clone(), self.one())
                }
            }
            (Domain::Polynomials(p), Value::Poly(f)) => {
                let (m, inv) = f.monic(*p);
                (Value::Poly(m), Value::Poly(Poly::constant(inv, *p)))
            }
            _ => (self.one(), self.inverse(a).unwrap()),
        }
    }

    /// `a / b` when `b` divides `a` exactly.
    pub fn exact_div(&self, a: &Value, b: &Value) -> Option<Value> {
        if self.is_zero(b) {
            return if self.is_zero(a) { Some(self.zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, b);
        self.is_zero(&r).then_some(q)
    }

    pub fn divides(&self, d: &Value, a: &Value) -> bool {
        self.exact_div(a, d).is_some()
    }

    /// Normalized greatest common divisor.
    pub fn gcd(&self, a: &Value, b: &Value) -> Value {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let (_, r) = self.div_rem(&x, &y);
            x = y;
            y = r;
        }
        self.normalize(&x).0
    }

    /// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`, `g` not necessarily normalized.
    pub fn gcd_ext(&self, a: &Value, b: &Value) -> (Value, Value, Value) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Irreducible factors (normalized, without multiplicity) of a nonzero non-unit.
    pub fn prime_factors(&self, a: &Value) -> Vec<Value> {
        if self.is_zero(a) || self.is_unit(a) {
            return Vec::new();
        }
        match (self, a) {
            (Domain::Integers, Value::Int(n)) => {
                let mut n = n.abs();
                let mut out = Vec::new();
                let mut d = BigInt::from(2);
                while &d * &d <= n {
                    if (&n % &d).is_zero() {
                        out.push(Value::Int(d.clone()));
                        while (&n % &d).is_zero() {
                            n /= &d;
                        }
                    }
                    d += 1;
                }
                if n > BigInt::one() {
                    out.push(Value::Int(n));
                }
                out
            }
            (Domain::Polynomials(p), Value::Poly(f)) => {
                let p = *p;
                let mut rest = f.monic(p).0;
                let mut out = Vec::new();
                let mut deg = 1;
                while rest.degree().unwrap_or(0) >= 2 * deg {
                    for cand in monic_polys(deg, p) {
                        let (_, r) = rest.div_rem(&cand, p);
                        if r.is_zero() {
                            while rest.div_rem(&cand, p).1.is_zero() {
                                rest = rest.div_rem(&cand, p).0;
                            }
                            out.push(Value::Poly(cand));
                        }
                    }
                    deg += 1;
                }
                if rest.degree().unwrap_or(0) >= 1 {
                    out.push(Value::Poly(rest));
                }
                out.sort();
                out
            }
            _ => Vec::new(),
        }
    }
}

fn monic_polys(deg: usize, p: u64) -> impl Iterator<Item = Poly> {
    let count = (p as u128).pow(deg as u32) as u64;
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        Poly(c)
    })
}

impl Coefficients for Domain {
    fn zero(&self) -> Value {
        match self {
            Domain::Integers | Domain::PrimeField(_) => Value::Int(BigInt::zero()),
            Domain::Rationals => Value::Rat(BigRational::zero()),
            Domain::Polynomials(_) => Value::Poly(Poly::zero()),
        }
    }

    fn one(&self) -> Value {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> Value {
        match self {
            Domain::Integers => Value::int(n),
            Domain::PrimeField(p) => Value::Int(BigInt::from(n).mod_floor(&BigInt::from(*p))),
            Domain::Rationals => Value::Rat(BigRational::from_integer(n.into())),
            Domain::Polynomials(p) => {
                let c = BigInt::from(n).mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                Value::Poly(Poly::constant(c, *p))
            }
        }
    }

    fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => match self {
                Domain::PrimeField(p) => Value::Int((x + y).mod_floor(&BigInt::from(*p))),
                _ => Value::Int(x + y),
            },
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(y, self.fp())),
            _ => panic!("mixed value kinds in {self:?}: {a:?} + {b:?}"),
        }
    }

    fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Int(x) => match self {
                Domain::PrimeField(p) => Value::Int((-x).mod_floor(&BigInt::from(*p))),
                _ => Value::Int(-x),
            },
            Value::Rat(x) => Value::Rat(-x),
            Value::Poly(x) => Value::Poly(x.neg(self.fp())),
        }
    }

    fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => match self {
                Domain::PrimeField(p) => Value::Int((x * y).mod_floor(&BigInt::from(*p))),
                _ => Value::Int(x * y),
            },
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.mul(y, self.fp())),
            _ => panic!("mixed value kinds in {self:?}: {a:?} * {b:?}"),
        }
    }

    fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Int(x) => x.is_zero(),
            Value::Rat(x) => x.is_zero(),
            Value::Poly(x) => x.is_zero(),
        }
    }
}

/// One of the supported computable principal ideal rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    IntegersMod(BigInt),
    PrimeField(u64),
    Rationals,
    /// 𝔽_p[x]/(f) with f monic of degree ≥ 1.
    UnivariateQuotient(u64, Poly),
}

/// Primes are kept below 2^31 so residue products fit in a u64.
const MAX_PRIME: u64 = 1 << 31;

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn integers_mod(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::from(2) {
            return invalid(format!("ℤ/n needs n ≥ 2, got {n}"));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p >= MAX_PRIME {
            return invalid(format!("{p} is not a supported prime"));
        }
        Ok(RingSpec::PrimeField(p))
    }

    /// 𝔽_p[x]/(f) from coefficients of f, lowest degree first.
    pub fn univariate_quotient(p: u64, f: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) || p >= MAX_PRIME {
            return invalid(format!("{p} is not a supported prime"));
        }
        let f = Poly::from_coeffs(f, p);
        if f.degree().unwrap_or(0) < 1 || f.leading() != 1 {
            return invalid(format!("modulus {f} must be monic of degree ≥ 1"));
        }
        Ok(RingSpec::UnivariateQuotient(p, f))
    }

    /// Checks the variant invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::IntegersMod(n) => RingSpec::integers_mod(n.clone()).map(|_| ()),
            RingSpec::PrimeField(p) => RingSpec::prime_field(*p).map(|_| ()),
            RingSpec::UnivariateQuotient(p, f) => {
                RingSpec::univariate_quotient(*p, f.0.clone()).map(|_| ())
            }
            _ => Ok(()),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            RingSpec::Integers | RingSpec::IntegersMod(_) => Domain::Integers,
            RingSpec::PrimeField(p) => Domain::PrimeField(*p),
            RingSpec::Rationals => Domain::Rationals,
            RingSpec::UnivariateQuotient(p, _) => Domain::Polynomials(*p),
        }
    }

    /// Generator of the kernel of the covering map `domain → ring`, if nonzero.
    pub fn modulus(&self) -> Option<Value> {
        match self {
            RingSpec::IntegersMod(n) => Some(Value::Int(n.clone())),
            RingSpec::UnivariateQuotient(_, f) => Some(Value::Poly(f.clone())),
            _ => None,
        }
    }

    /// Modulus as a domain value, zero for domains.
    pub fn modulus_or_zero(&self) -> Value {
        self.modulus().unwrap_or_else(|| self.domain().zero())
    }

    pub fn is_artinian(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn is_domain(&self) -> bool {
        match self {
            RingSpec::IntegersMod(_) | RingSpec::UnivariateQuotient(..) => false,
            _ => true,
        }
    }

    /// Canonical representative of a domain value in this ring.
    pub fn reduce(&self, a: &Value) -> Value {
        match (self, a) {
            (RingSpec::IntegersMod(n), Value::Int(x)) => Value::Int(x.mod_floor(n)),
            (RingSpec::PrimeField(p), Value::Int(x)) => Value::Int(x.mod_floor(&BigInt::from(*p))),
            (RingSpec::Rationals, Value::Int(x)) => Value::Rat(BigRational::from_integer(x.clone())),
            (RingSpec::UnivariateQuotient(p, f), Value::Poly(x)) => {
                Value::Poly(x.div_rem(f, *p).1)
            }
            _ => a.clone(),
        }
    }

    pub fn is_unit(&self, a: &Value) -> bool {
        match self.modulus() {
            None => self.domain().is_unit(a),
            Some(m) => {
                let d = self.domain();
                d.is_unit(&d.gcd(a, &m))
            }
        }
    }

    /// Inverse of a unit, via the extended gcd with the modulus.
    pub fn inverse(&self, a: &Value) -> Option<Value> {
        if !self.is_unit(a) {
            return None;
        }
        let dom = self.domain();
        let (g, s, _) = dom.gcd_ext(a, &self.modulus_or_zero());
        Some(self.reduce(&dom.mul(&s, &dom.inverse(&g)?)))
    }

    /// The ring `domain/(d)` where `d` is taken together with this ring's
    /// modulus; `None` when the quotient is the zero ring.
    pub fn quotient_by(&self, d: &Value) -> Option<RingSpec> {
        let dom = self.domain();
        let g = dom.gcd(d, &self.modulus_or_zero());
        if dom.is_unit(&g) {
            return None;
        }
        if dom.is_zero(&g) {
            return Some(match self {
                RingSpec::IntegersMod(_) | RingSpec::UnivariateQuotient(..) => unreachable!(),
                other => other.clone(),
            });
        }
        Some(match (dom, g) {
            (Domain::Integers, Value::Int(n)) => RingSpec::IntegersMod(n),
            (Domain::Polynomials(p), Value::Poly(f)) => RingSpec::UnivariateQuotient(p, f),
            _ => unreachable!("fields have no proper nonzero ideals"),
        })
    }

    /// Parse a decimal-string element (rationals as `a/b`, polynomials are not accepted here).
    pub fn parse_scalar(&self, s: &str) -> Result<Value> {
        let dom = self.domain();
        let bad = || Error::InvalidInput(format!("cannot parse {s:?} as element of {self}"));
        let v = match dom {
            Domain::Integers | Domain::PrimeField(_) => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                match dom {
                    Domain::PrimeField(p) => Value::Int(n.mod_floor(&BigInt::from(p))),
                    _ => Value::Int(n),
                }
            }
            Domain::Rationals => {
                let q: BigRational = s.trim().parse().map_err(|_| bad())?;
                Value::Rat(q)
            }
            Domain::Polynomials(p) => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                let c = n.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                Value::Poly(Poly::constant(c, p))
            }
        };
        Ok(self.reduce(&v))
    }

    pub fn element(&self, v: Value) -> RingElement {
        RingElement { ring: self.clone(), value: self.reduce(&v) }
    }
}

impl Coefficients for RingSpec {
    fn zero(&self) -> Value {
        self.domain().zero()
    }
    fn one(&self) -> Value {
        self.reduce(&self.domain().one())
    }
    fn from_i64(&self, n: i64) -> Value {
        self.reduce(&self.domain().from_i64(n))
    }
    fn add(&self, a: &Value, b: &Value) -> Value {
        self.reduce(&self.domain().add(a, b))
    }
    fn neg(&self, a: &Value) -> Value {
        self.reduce(&self.domain().neg(a))
    }
    fn mul(&self, a: &Value, b: &Value) -> Value {
        self.reduce(&self.domain().mul(a, b))
    }
    fn is_zero(&self, a: &Value) -> bool {
        self.domain().is_zero(&self.reduce(a))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "ℤ"),
            RingSpec::IntegersMod(n) => write!(f, "ℤ/{n}"),
            RingSpec::PrimeField(p) => write!(f, "𝔽{p}"),
            RingSpec::Rationals => write!(f, "ℚ"),
            RingSpec::UnivariateQuotient(p, m) => write!(f, "𝔽{p}[x]/({m})"),
        }
    }
}

/// An element of a supported ring in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub ring: RingSpec,
    pub value: Value,
}

impl RingElement {
    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        self.ring.element(self.ring.add(&self.value, &other.value))
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        self.ring.element(self.ring.mul(&self.value, &other.value))
    }

    pub fn neg(&self) -> RingElement {
        self.ring.element(self.ring.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(RingSpec::integers_mod(1).is_err());
        assert!(RingSpec::prime_field(9).is_err());
        assert!(RingSpec::univariate_quotient(2, vec![1]).is_err());
        assert!(RingSpec::univariate_quotient(3, vec![1, 2]).is_err());
        assert!(RingSpec::univariate_quotient(2, vec![0, 0, 1]).is_ok());
    }

    #[test]
    fn canonical_forms() {
        let z6 = RingSpec::integers_mod(6).unwrap();
        assert_eq!(z6.from_i64(-1), Value::int(5));
        assert_eq!(z6.mul(&Value::int(4), &Value::int(5)), Value::int(2));
        assert!(z6.is_unit(&Value::int(5)));
        assert!(!z6.is_unit(&Value::int(4)));
        let q = RingSpec::Rationals;
        let half = q.parse_scalar("2/4").unwrap();
        assert_eq!(half, q.parse_scalar("1/2").unwrap());
        assert_eq!(q.reduce(&Value::int(3)), q.parse_scalar("3").unwrap());
    }

    #[test]
    fn integer_division_is_euclidean() {
        let d = Domain::Integers;
        for a in -20..20 {
            for b in [-7i64, -3, 2, 5] {
                let (q, r) = d.div_rem(&Value::int(a), &Value::int(b));
                assert_eq!(d.add(&d.mul(&q, &Value::int(b)), &r), Value::int(a));
                assert!(d.norm(&r) < d.norm(&Value::int(b)));
            }
        }
    }

    #[test]
    fn quotients() {
        let z = RingSpec::Integers;
        assert_eq!(z.quotient_by(&Value::int(6)), Some(RingSpec::IntegersMod(6.into())));
        assert_eq!(z.quotient_by(&Value::int(1)), None);
        assert_eq!(z.quotient_by(&Value::int(0)), Some(RingSpec::Integers));
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert_eq!(z4.quotient_by(&Value::int(6)), Some(RingSpec::IntegersMod(2.into())));
    }

    #[test]
    fn factorization() {
        let d = Domain::Integers;
        assert_eq!(d.prime_factors(&Value::int(-12)), vec![Value::int(2), Value::int(3)]);
        let f2x = Domain::Polynomials(2);
        // x^2 + x = x(x+1)
        let f = Value::Poly(Poly(vec![0, 1, 1]));
        assert_eq!(f2x.prime_factors(&f).len(), 2);
        let x2 = Value::Poly(Poly(vec![0, 0, 1]));
        assert_eq!(f2x.prime_factors(&x2), vec![Value::Poly(Poly(vec![0, 1]))]);
    }
}
