//! Koszul DG-rings `R⟨ξ₁..ξ_k ; dξ_j = a_j⟩` over a supported ring `R`.
//!
//! Exterior monomials are bitmasks `S ⊆ {0..k}` written in increasing index
//! order; `ξ_S` sits in degree `−|S|`.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::FreeComplex;
use crate::error::{invalid, Error, Result};
use crate::ring::matrix::Matrix;
use crate::ring::{Coefficients, RingSpec, Value};

/// Koszul generators beyond this are refused; the monomial basis has `2^k` elements.
pub const MAX_KOSZUL_LENGTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DGRingPresentation {
    base: RingSpec,
    generators: Vec<Value>,
}

/// A homogeneous or inhomogeneous element of the underlying graded ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KoszulElement(pub BTreeMap<u32, Value>);

impl KoszulElement {
    pub fn zero() -> Self {
        KoszulElement(BTreeMap::new())
    }

    /// `c · ξ_S`, dropped if `c` vanishes in `ring`.
    pub fn monomial(ring: &RingSpec, mask: u32, c: Value) -> Self {
        let mut k = KoszulElement::zero();
        k.add_term(ring, mask, &c);
        k
    }

    pub fn scalar(ring: &RingSpec, c: Value) -> Self {
        Self::monomial(ring, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, ring: &RingSpec, mask: u32, c: &Value) {
        let v = match self.0.get(&mask) {
            Some(old) => ring.add(old, c),
            None => ring.reduce(c),
        };
        if ring.is_zero(&v) {
            self.0.remove(&mask);
        } else {
            self.0.insert(mask, v);
        }
    }

    /// Degree if homogeneous (the zero element reports `None`).
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.0.keys().map(|m| -(m.count_ones() as i64));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

/// `ξ_S · ξ_T` as `(sign, S ∪ T)`, or `None` when they share a generator.
pub fn mul_monomials(s: u32, t: u32) -> Option<(i64, u32)> {
    if s & t != 0 {
        return None;
    }
    // each element of T moves left past the elements of S larger than it
    let mut swaps = 0;
    let mut tt = t;
    while tt != 0 {
        let j = tt.trailing_zeros();
        swaps += (s >> (j + 1)).count_ones();
        tt &= tt - 1;
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, s | t))
}

impl DGRingPresentation {
    /// The Koszul DG-ring on `a`; an empty sequence gives the ordinary ring.
    pub fn koszul(base: RingSpec, a: Vec<Value>) -> Result<Self> {
        base.validate()?;
        if a.len() > MAX_KOSZUL_LENGTH {
            return invalid(format!("at most {MAX_KOSZUL_LENGTH} Koszul generators"));
        }
        let generators = a.iter().map(|x| base.reduce(x)).collect();
        let r = DGRingPresentation { base, generators };
        r.check_axioms()?;
        Ok(r)
    }

    pub fn ordinary(base: RingSpec) -> Self {
        DGRingPresentation { base, generators: Vec::new() }
    }

    pub fn base(&self) -> &RingSpec {
        &self.base
    }

    pub fn generators(&self) -> &[Value] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_ordinary(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn num_monomials(&self) -> u32 {
        1 << self.generators.len()
    }

    /// Monomials of cohomological degree `deg` in increasing mask order.
    pub fn monomials_of_degree(&self, deg: i64) -> Vec<u32> {
        (0..self.num_monomials()).filter(|m| -(m.count_ones() as i64) == deg).collect()
    }

    /// `d(ξ_S) = Σ_p (−1)^p a_{j_p} ξ_{S∖j_p}` where `j_p` is the `p`-th element of `S`.
    pub fn d_monomial(&self, s: u32) -> KoszulElement {
        let mut out = KoszulElement::zero();
        let mut rest = s;
        let mut p = 0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let c = if p % 2 == 0 {
                self.generators[j as usize].clone()
            } else {
                self.base.neg(&self.generators[j as usize])
            };
            out.add_term(&self.base, s & !(1 << j), &c);
            rest &= rest - 1;
            p += 1;
        }
        out
    }

    pub fn d(&self, x: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (&s, c) in &x.0 {
            for (&t, e) in &self.d_monomial(s).0 {
                out.add_term(&self.base, t, &self.base.mul(c, e));
            }
        }
        out
    }

    pub fn mul(&self, x: &KoszulElement, y: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (&s, a) in &x.0 {
            for (&t, b) in &y.0 {
                if let Some((sign, u)) = mul_monomials(s, t) {
                    let c = self.base.mul(a, b);
                    let c = if sign < 0 { self.base.neg(&c) } else { c };
                    out.add_term(&self.base, u, &c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &KoszulElement, y: &KoszulElement) -> KoszulElement {
        let mut out = x.clone();
        for (&s, c) in &y.0 {
            out.add_term(&self.base, s, c);
        }
        out
    }

    pub fn scale(&self, c: &Value, x: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (&s, v) in &x.0 {
            out.add_term(&self.base, s, &self.base.mul(c, v));
        }
        out
    }

    /// Exhaustive check of `d² = 0`, `ξ² = 0` and the Leibniz rule on monomial pairs.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.num_monomials();
        let r = &self.base;
        for s in 0..n {
            let xs = KoszulElement::monomial(r, s, r.one());
            if !self.d(&self.d(&xs)).is_zero() {
                return Err(Error::Invariant(format!("d² ≠ 0 on monomial {s:b}")));
            }
            for t in 0..n {
                let xt = KoszulElement::monomial(r, t, r.one());
                let lhs = self.d(&self.mul(&xs, &xt));
                let sign = if s.count_ones() % 2 == 0 { r.one() } else { r.from_i64(-1) };
                let rhs = self.add(
                    &self.mul(&self.d(&xs), &xt),
                    &self.scale(&sign, &self.mul(&xs, &self.d(&xt))),
                );
                if lhs != rhs {
                    return Err(Error::Invariant(format!("Leibniz fails on {s:b}·{t:b}")));
                }
            }
        }
        for j in 0..self.len() {
            let x = KoszulElement::monomial(r, 1 << j, r.one());
            if !self.mul(&x, &x).is_zero() {
                return Err(Error::Invariant("odd generator squares to nonzero".into()));
            }
        }
        Ok(())
    }

    /// `A` as a complex of free `R`-modules (the Koszul complex).
    pub fn underlying_complex(&self) -> FreeComplex {
        let k = self.len() as i64;
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for deg in -k..=0 {
            let src = self.monomials_of_degree(deg);
            ranks.insert(deg, src.len());
            if deg == 0 {
                continue;
            }
            let tgt = self.monomials_of_degree(deg + 1);
            let mut m = Matrix::zeros(self.base.clone(), tgt.len(), src.len());
            for (j, &s) in src.iter().enumerate() {
                for (&t, c) in &self.d_monomial(s).0 {
                    let i = tgt.binary_search(&t).unwrap();
                    m.set(i, j, c.clone());
                }
            }
            diffs.insert(deg, m);
        }
        FreeComplex::new(self.base.clone(), ranks, diffs).expect("Koszul complex squares to zero")
    }

    /// `Ā = H⁰(A) = R/(a₁..a_k)` with the generator of the ideal.
    pub fn h0(&self) -> Result<H0Ring> {
        let dom = self.base.domain();
        let g = self.generators.iter().fold(dom.zero(), |acc, a| dom.gcd(&acc, a));
        match self.base.quotient_by(&g) {
            Some(ring) => Ok(H0Ring { ring, generator: g }),
            None => Err(Error::UnsupportedInstance(format!(
                "H⁰ of {self} is the zero ring (the ideal is the unit ideal)"
            ))),
        }
    }
}

impl fmt::Display for DGRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{}", self.base);
        }
        let a: Vec<String> = self.generators.iter().map(|x| x.to_string()).collect();
        write!(f, "Kos({};{})", self.base, a.join(","))
    }
}

/// `Ā` as a supported ring, with the generator `g` of `(a₁..a_k)` in the covering domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Ring {
    pub ring: RingSpec,
    pub generator: Value,
}

impl H0Ring {
    /// The quotient map `A⁰ = R → Ā`.
    pub fn project(&self, x: &Value) -> Value {
        self.ring.reduce(x)
    }
}

pub fn koszul_dg_ring(base: RingSpec, a: Vec<Value>) -> Result<DGRingPresentation> {
    DGRingPresentation::koszul(base, a)
}

pub fn h0_ring(a: &DGRingPresentation) -> Result<H0Ring> {
    a.h0()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology;

    #[test]
    fn monomial_signs() {
        // ξ1 · ξ0 = −ξ0 ξ1
        assert_eq!(mul_monomials(0b10, 0b01), Some((-1, 0b11)));
        assert_eq!(mul_monomials(0b01, 0b10), Some((1, 0b11)));
        assert_eq!(mul_monomials(0b01, 0b01), None);
    }

    #[test]
    fn koszul_cohomology() {
        let a = koszul_dg_ring(RingSpec::Integers, vec![Value::int(2)]).unwrap();
        let h = cohomology(&a.underlying_complex());
        assert_eq!(h.get(0).factors, vec![Value::int(2)]);
        assert!(h.get(-1).is_zero());

        let z4 = RingSpec::integers_mod(4).unwrap();
        let a = koszul_dg_ring(z4.clone(), vec![Value::int(2)]).unwrap();
        let h = cohomology(&a.underlying_complex());
        assert_eq!(h.get(0).factors, vec![Value::int(2)]);
        assert_eq!(h.get(-1).factors, vec![Value::int(2)]);

        let a = koszul_dg_ring(z4.clone(), vec![]).unwrap();
        assert!(a.is_ordinary());
        assert_eq!(cohomology(&a.underlying_complex()).get(0).factors, vec![Value::int(4)]);
    }

    #[test]
    fn three_generators_satisfy_axioms() {
        let z8 = RingSpec::integers_mod(8).unwrap();
        let a = koszul_dg_ring(z8, vec![Value::int(2), Value::int(4), Value::int(6)]).unwrap();
        a.check_axioms().unwrap();
        assert_eq!(a.underlying_complex().total_rank(), 8);
    }

    #[test]
    fn h0_rings() {
        let z = RingSpec::Integers;
        let a = koszul_dg_ring(z.clone(), vec![Value::int(2)]).unwrap();
        assert_eq!(h0_ring(&a).unwrap().ring, RingSpec::IntegersMod(2.into()));
        let a = koszul_dg_ring(z.clone(), vec![Value::int(4), Value::int(6)]).unwrap();
        assert_eq!(h0_ring(&a).unwrap().ring, RingSpec::IntegersMod(2.into()));
        let z4 = RingSpec::integers_mod(4).unwrap();
        let a = koszul_dg_ring(z4, vec![Value::int(2)]).unwrap();
        assert_eq!(h0_ring(&a).unwrap().ring, RingSpec::IntegersMod(2.into()));
        let a = koszul_dg_ring(z, vec![Value::int(3), Value::int(2)]).unwrap();
        assert!(matches!(h0_ring(&a), Err(Error::UnsupportedInstance(_))));
    }
}
