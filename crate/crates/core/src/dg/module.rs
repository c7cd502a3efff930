//! Finitely generated semi-free DG-modules over a Koszul DG-ring.
//!
//! A module is `⊕_b A·e_b` with `d(e_b) = Σ_c r_{cb} e_c`. Since `A` is
//! non-positive, each `r_{cb}` is homogeneous of degree `|e_b| + 1 − |e_c| ≤ 0`,
//! so `d` only reaches basis elements of strictly larger degree and the
//! filtration by basis degree exhibits the module as semi-free.

use std::collections::BTreeMap;

use super::ring::{mul_monomials, DGRingPresentation, KoszulElement};
use super::same_dg_ring as same_ring_dg;
use crate::complex::FreeComplex;
use crate::error::{invalid, Error, Result};
use crate::mutation::{self, Mutant};
use crate::ring::matrix::Matrix;
use crate::ring::{Coefficients, RingSpec, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub deg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiFreeDGModule {
    ring: DGRingPresentation,
    basis: Vec<BasisElement>,
    /// `(c, b) ↦ r_{cb}`, nonzero entries only.
    diff: BTreeMap<(usize, usize), KoszulElement>,
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl SemiFreeDGModule {
    /// Validating constructor: coefficients must be homogeneous of the right
    /// degree and the underlying complex must square to zero.
    pub fn new(
        ring: DGRingPresentation,
        basis: Vec<BasisElement>,
        diff: BTreeMap<(usize, usize), KoszulElement>,
    ) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for ((c, b), r) in diff {
            if c >= basis.len() || b >= basis.len() {
                return invalid(format!("differential refers to basis index {} out of range", c.max(b)));
            }
            let r = reduce_elem(ring.base(), &r);
            if r.is_zero() {
                continue;
            }
            let want = basis[b].deg + 1 - basis[c].deg;
            if r.degree() != Some(want) {
                return invalid(format!(
                    "coefficient of {} in d({}) must be homogeneous of degree {want}",
                    basis[c].name, basis[b].name
                ));
            }
            clean.insert((c, b), r);
        }
        let m = SemiFreeDGModule { ring, basis, diff: clean };
        m.underlying_complex_checked()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        ring: DGRingPresentation,
        basis: Vec<BasisElement>,
        diff: BTreeMap<(usize, usize), KoszulElement>,
    ) -> Self {
        let diff = diff.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        SemiFreeDGModule { ring, basis, diff }
    }

    pub fn zero(ring: &DGRingPresentation) -> Self {
        SemiFreeDGModule { ring: ring.clone(), basis: Vec::new(), diff: BTreeMap::new() }
    }

    /// `A·e` with `e` in degree `deg`.
    pub fn free(ring: &DGRingPresentation, deg: i64) -> Self {
        let basis = vec![BasisElement { name: "e".into(), deg }];
        SemiFreeDGModule { ring: ring.clone(), basis, diff: BTreeMap::new() }
    }

    /// `A` as a module over itself.
    pub fn unit(ring: &DGRingPresentation) -> Self {
        Self::free(ring, 0)
    }

    /// `cone(c : A → A)`: `e₀` in degree 0, `e₁` in degree −1, `d e₁ = c e₀`.
    pub fn cone_of_scalar(ring: &DGRingPresentation, c: &Value) -> Self {
        let r = ring.base();
        let basis = vec![
            BasisElement { name: "e0".into(), deg: 0 },
            BasisElement { name: "e1".into(), deg: -1 },
        ];
        let mut diff = BTreeMap::new();
        diff.insert((0, 1), KoszulElement::scalar(r, c.clone()));
        Self::new_unchecked(ring.clone(), basis, diff)
    }

    pub fn ring(&self) -> &DGRingPresentation {
        &self.ring
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn differential(&self) -> &BTreeMap<(usize, usize), KoszulElement> {
        &self.diff
    }

    /// `d(e_b)` as a list of `(c, r_{cb})`.
    pub fn d_basis(&self, b: usize) -> Vec<(usize, &KoszulElement)> {
        self.diff.iter().filter(|((_, bb), _)| *bb == b).map(|(&(c, _), r)| (c, r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Degrees in which the underlying complex can be nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.basis.iter().map(|b| b.deg).min()? - self.ring.len() as i64;
        let hi = self.basis.iter().map(|b| b.deg).max()?;
        Some((lo, hi))
    }

    /// Basis `(S, b)` of the degree-`n` part of the underlying complex.
    pub fn layout(&self, n: i64) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for (b, e) in self.basis.iter().enumerate() {
            for s in self.ring.monomials_of_degree(n - e.deg) {
                out.push((s, b));
            }
        }
        out
    }

    /// Matrix of left multiplication by a homogeneous `r` from degree `n` to `n + |r|`.
    pub fn action(&self, r: &KoszulElement, n: i64) -> Matrix {
        let base = self.ring.base();
        let src = self.layout(n);
        let shift = r.degree().unwrap_or(0);
        let tgt = self.layout(n + shift);
        let index: BTreeMap<(u32, usize), usize> =
            tgt.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut m = Matrix::zeros(base.clone(), tgt.len(), src.len());
        for (j, &(s, b)) in src.iter().enumerate() {
            for (&t, c) in &r.0 {
                if let Some((sg, u)) = mul_monomials(t, s) {
                    let i = index[&(u, b)];
                    let v = if sg < 0 { base.neg(c) } else { c.clone() };
                    m.set(i, j, base.add(m.get(i, j), &v));
                }
            }
        }
        m
    }

    /// Differential of the underlying complex between two consecutive layouts.
    fn underlying_d(&self, src: &[(u32, usize)], tgt: &[(u32, usize)]) -> Matrix {
        let base = self.ring.base();
        let index: BTreeMap<(u32, usize), usize> =
            tgt.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut m = Matrix::zeros(base.clone(), tgt.len(), src.len());
        let put = |m: &mut Matrix, key: (u32, usize), j: usize, v: &Value| {
            let i = index[&key];
            let nv = base.add(m.get(i, j), v);
            m.set(i, j, nv);
        };
        for (j, &(s, b)) in src.iter().enumerate() {
            // d(ξ_S e_b) = d(ξ_S) e_b + (−1)^{|S|} ξ_S d(e_b)
            for (&t, c) in &self.ring.d_monomial(s).0 {
                put(&mut m, (t, b), j, c);
            }
            let sg = sign(s.count_ones() as i64);
            for (c_idx, r) in self.d_basis(b) {
                for (&t, v) in &r.0 {
                    if let Some((sg2, u)) = mul_monomials(s, t) {
                        let coef = if sg * sg2 < 0 { base.neg(v) } else { v.clone() };
                        put(&mut m, (u, c_idx), j, &coef);
                    }
                }
            }
        }
        m
    }

    fn underlying_complex_checked(&self) -> Result<FreeComplex> {
        let base = self.ring.base().clone();
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(FreeComplex::zero(base));
        };
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let mut prev = self.layout(lo);
        for n in lo..=hi {
            let next = self.layout(n + 1);
            ranks.insert(n, prev.len());
            if !prev.is_empty() && !next.is_empty() {
                diffs.insert(n, self.underlying_d(&prev, &next));
            }
            prev = next;
        }
        FreeComplex::new(base, ranks, diffs).map_err(|e| match e {
            Error::Invariant(m) => Error::Invariant(format!("DG-module differential: {m}")),
            other => other,
        })
    }

    /// The complex of free `A⁰`-modules underlying `M`; it computes `H^i(M)`.
    pub fn underlying_complex(&self) -> FreeComplex {
        self.underlying_complex_checked().expect("validated at construction")
    }

    /// `M[k]`: basis degrees lowered by `k`, differential scaled by `(−1)^k`.
    pub fn shift(&self, k: i64) -> SemiFreeDGModule {
        let base = self.ring.base();
        let s = base.from_i64(sign(k));
        let basis = self
            .basis
            .iter()
            .map(|e| BasisElement { name: e.name.clone(), deg: e.deg - k })
            .collect();
        let diff = self.diff.iter().map(|(&k2, r)| (k2, self.ring.scale(&s, r))).collect();
        SemiFreeDGModule::new_unchecked(self.ring.clone(), basis, diff)
    }

    pub fn direct_sum(&self, other: &SemiFreeDGModule) -> Result<SemiFreeDGModule> {
        same_ring_dg(&self.ring, &other.ring)?;
        let n = self.basis.len();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut diff = self.diff.clone();
        for (&(c, b), r) in &other.diff {
            diff.insert((c + n, b + n), r.clone());
        }
        Ok(SemiFreeDGModule::new_unchecked(self.ring.clone(), basis, diff))
    }

    /// Adjoin a basis element `e` of degree `deg` with `d(e) = z`, where `z` is
    /// a cocycle of the underlying complex in degree `deg + 1` (coordinates in
    /// [`layout`](Self::layout) order).
    pub fn adjoin(&self, name: &str, deg: i64, z: &[Value]) -> Result<SemiFreeDGModule> {
        let lay = self.layout(deg + 1);
        if lay.len() != z.len() {
            return invalid("cocycle has the wrong length");
        }
        let base = self.ring.base();
        let new = self.basis.len();
        let mut basis = self.basis.clone();
        basis.push(BasisElement { name: name.into(), deg });
        let mut diff = self.diff.clone();
        for (&(s, b), v) in lay.iter().zip(z) {
            if base.is_zero(v) {
                continue;
            }
            diff.entry((b, new)).or_insert_with(KoszulElement::zero).add_term(base, s, v);
        }
        SemiFreeDGModule::new(self.ring.clone(), basis, diff)
    }

    /// `Ā ⊗_A M` as a complex of free `Ā`-modules: kill the `ξ`'s and reduce.
    pub fn tensor_with_h0(&self) -> Result<FreeComplex> {
        let h0 = self.ring.h0()?;
        let mut ranks = BTreeMap::new();
        let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (b, e) in self.basis.iter().enumerate() {
            by_deg.entry(e.deg).or_default().push(b);
        }
        for (&n, v) in &by_deg {
            ranks.insert(n, v.len());
        }
        let mut diffs = BTreeMap::new();
        for (&n, src) in &by_deg {
            let Some(tgt) = by_deg.get(&(n + 1)) else { continue };
            let mut m = Matrix::zeros(h0.ring.clone(), tgt.len(), src.len());
            for (j, &b) in src.iter().enumerate() {
                for (c, r) in self.d_basis(b) {
                    if let (Some(i), Some(v)) = (tgt.iter().position(|&x| x == c), r.0.get(&0)) {
                        m.set(i, j, h0.ring.reduce(v));
                    }
                }
            }
            diffs.insert(n, m);
        }
        FreeComplex::new(h0.ring, ranks, diffs)
    }

    /// Base change of every coefficient into a ring with the same covering domain.
    pub fn reduce_into(&self, target: &DGRingPresentation) -> Result<SemiFreeDGModule> {
        if target.base().domain() != self.ring.base().domain() {
            return invalid(format!("no map {} → {}", self.ring, target));
        }
        let diff = self.diff.iter().map(|(&k, r)| (k, reduce_elem(target.base(), r))).collect();
        SemiFreeDGModule::new(target.clone(), self.basis.clone(), diff)
    }
}

fn reduce_elem(ring: &RingSpec, r: &KoszulElement) -> KoszulElement {
    let mut out = KoszulElement::zero();
    for (&s, v) in &r.0 {
        out.add_term(ring, s, v);
    }
    out
}

/// `M ⊗_A N` on the basis `e_b ⊗ f_c` (M index outermost).
///
/// `d(e⊗f) = de⊗f + (−1)^{|e|} e⊗df`, and moving a coefficient `r` left past
/// `e` costs `(−1)^{|r||e|}`.
pub fn dg_tensor(m: &SemiFreeDGModule, n: &SemiFreeDGModule) -> Result<SemiFreeDGModule> {
    same_ring_dg(&m.ring, &n.ring)?;
    let base = m.ring.base();
    let nn = n.basis.len();
    let mut basis = Vec::with_capacity(m.basis.len() * nn);
    for e in &m.basis {
        for f in &n.basis {
            basis.push(BasisElement { name: format!("{}⊗{}", e.name, f.name), deg: e.deg + f.deg });
        }
    }
    let drop_sign = mutation::is_active(Mutant::KoszulSign);
    let mut diff: BTreeMap<(usize, usize), KoszulElement> = BTreeMap::new();
    for (b, e) in m.basis.iter().enumerate() {
        for c in 0..nn {
            let src = b * nn + c;
            for (b2, r) in m.d_basis(b) {
                let key = (b2 * nn + c, src);
                let cur = diff.remove(&key).unwrap_or_default();
                diff.insert(key, m.ring.add(&cur, r));
            }
            for (c2, r) in n.d_basis(c) {
                let rdeg = r.degree().unwrap_or(0);
                let s = if drop_sign { 1 } else { sign(e.deg) * sign(rdeg * e.deg) };
                let coef = m.ring.scale(&base.from_i64(s), r);
                let key = (b * nn + c2, src);
                let cur = diff.remove(&key).unwrap_or_default();
                diff.insert(key, m.ring.add(&cur, &coef));
            }
        }
    }
    let out = SemiFreeDGModule::new_unchecked(m.ring.clone(), basis, diff);
    if drop_sign {
        // the mutated differential need not square to zero; keep it unchecked
        return Ok(out);
    }
    out.underlying_complex_checked()?;
    Ok(out)
}

/// `T ⊗_{A⁰} M` for a complex `T` of free `A⁰`-modules (e.g. a telescope).
pub fn tensor_base_complex(t: &FreeComplex, m: &SemiFreeDGModule) -> Result<SemiFreeDGModule> {
    if t.ring() != m.ring.base() {
        return invalid(format!("complex over {} but DG-ring over {}", t.ring(), m.ring.base()));
    }
    let base = m.ring.base();
    // basis: (degree i of T, index a in T^i, basis b of M); T index outermost
    let mut slots: Vec<(i64, usize)> = Vec::new();
    for (&i, &r) in t.ranks() {
        for a in 0..r {
            slots.push((i, a));
        }
    }
    let nb = m.basis.len();
    let pos: BTreeMap<(i64, usize), usize> = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut basis = Vec::new();
    for &(i, a) in &slots {
        for e in &m.basis {
            basis.push(BasisElement { name: format!("t{i}.{a}⊗{}", e.name), deg: i + e.deg });
        }
    }
    let drop_sign = mutation::is_active(Mutant::KoszulSign);
    let mut diff: BTreeMap<(usize, usize), KoszulElement> = BTreeMap::new();
    for (k, &(i, a)) in slots.iter().enumerate() {
        let dt = t.d(i);
        for b in 0..nb {
            let src = k * nb + b;
            for row in 0..dt.rows {
                let v = dt.get(row, a);
                if base.is_zero(v) {
                    continue;
                }
                let tgt = pos[&(i + 1, row)] * nb + b;
                diff.insert((tgt, src), KoszulElement::scalar(base, v.clone()));
            }
            for (c, r) in m.d_basis(b) {
                // moving r past an element of degree i
                let rdeg = r.degree().unwrap_or(0);
                let s = if drop_sign { 1 } else { sign(i) * sign(rdeg * i) };
                let tgt = k * nb + c;
                let coef = m.ring.scale(&base.from_i64(s), r);
                let cur = diff.remove(&(tgt, src)).unwrap_or_default();
                diff.insert((tgt, src), m.ring.add(&cur, &coef));
            }
        }
    }
    Ok(SemiFreeDGModule::new_unchecked(m.ring.clone(), basis, diff))
}

/// `Hom_A(P, M)` as a complex of free `A⁰`-modules.
///
/// Degree `i` is `∏_b M^{|e_b| + i}` (a map is determined by its values on the
/// basis of `P`), with `(df)(e_b) = d(f(e_b)) − (−1)^i f(d e_b)` and
/// `f(r·x) = (−1)^{i|r|} r·f(x)`.
pub fn hom_a(p: &SemiFreeDGModule, m: &SemiFreeDGModule) -> Result<FreeComplex> {
    same_ring_dg(&p.ring, &m.ring)?;
    let base = p.ring.base().clone();
    let mc = m.underlying_complex();
    let (Some((plo, phi)), Some((mlo, mhi))) = (p.degree_range(), m.degree_range()) else {
        return Ok(FreeComplex::zero(base));
    };
    // P's basis degrees lie in [plo + k, phi]
    let plo = plo + p.ring.len() as i64;
    let lo = mlo - phi;
    let hi = mhi - plo;
    let flip = mutation::is_active(Mutant::HomSign);
    let blocks = |i: i64| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for (b, e) in p.basis.iter().enumerate() {
            let r = mc.rank(e.deg + i);
            if r > 0 {
                out.push((b, off, r));
                off += r;
            }
        }
        out
    };
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for i in lo..=hi {
        let src = blocks(i);
        let tgt = blocks(i + 1);
        let cols: usize = src.iter().map(|x| x.2).sum();
        let rows: usize = tgt.iter().map(|x| x.2).sum();
        ranks.insert(i, cols);
        if cols == 0 || rows == 0 {
            continue;
        }
        let mut d = Matrix::zeros(base.clone(), rows, cols);
        for &(b, to, _) in &tgt {
            let nb = p.basis[b].deg;
            if let Some(&(_, so, _)) = src.iter().find(|x| x.0 == b) {
                d.set_block(to, so, &mc.d(nb + i));
            }
            // −(−1)^i f(d e_b) = −(−1)^i Σ_c (−1)^{i|r|} r f(e_c)
            for (c, r) in p.d_basis(b) {
                if let Some(&(_, so, _)) = src.iter().find(|x| x.0 == c) {
                    let rdeg = r.degree().unwrap_or(0);
                    let s0 = sign(i) * sign(i * rdeg);
                    let s = if flip { s0 } else { -s0 };
                    let act = m.action(r, p.basis[c].deg + i).scale(&base.from_i64(s));
                    let cur = d.block(to, so, act.rows, act.cols);
                    d.set_block(to, so, &cur.add(&act));
                }
            }
        }
        diffs.insert(i, d);
    }
    if flip {
        return Ok(FreeComplex::from_parts_unchecked(base, ranks, diffs));
    }
    FreeComplex::new(base, ranks, diffs)
}
