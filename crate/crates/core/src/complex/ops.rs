use std::collections::BTreeMap;

use super::{same_ring, ComplexMap, FreeComplex};
use crate::error::Result;
use crate::mutation::{self, Mutant};
use crate::ring::matrix::Matrix;
use crate::ring::Coefficients;

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `C[k]`: `C[k]^i = C^{i+k}` with differential `(−1)^k d`.
pub fn shift(c: &FreeComplex, k: i64) -> FreeComplex {
    let s = c.ring.from_i64(sign(k));
    let ranks = c.ranks.iter().map(|(&i, &r)| (i - k, r)).collect();
    let diffs = c.diffs.iter().map(|(&i, d)| (i - k, d.scale(&s))).collect();
    FreeComplex::from_parts_unchecked(c.ring.clone(), ranks, diffs)
}

/// `cone(f)^n = C^{n+1} ⊕ D^n`, `d(c, y) = (−d c, f c + d y)`.
pub fn cone(f: &ComplexMap) -> FreeComplex {
    let (c, d) = (&f.source, &f.target);
    let ring = c.ring.clone();
    let mut degs: Vec<i64> = c.ranks.keys().map(|i| i - 1).chain(d.ranks.keys().copied()).collect();
    degs.sort();
    degs.dedup();
    let ranks: BTreeMap<i64, usize> = degs.iter().map(|&n| (n, c.rank(n + 1) + d.rank(n))).collect();
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        let (cs, ds) = (c.rank(n + 1), d.rank(n));
        let (ct, dt) = (c.rank(n + 2), d.rank(n + 1));
        let mut m = Matrix::zeros(ring.clone(), ct + dt, cs + ds);
        m.set_block(0, 0, &c.d(n + 1).neg());
        m.set_block(ct, 0, &f.component(n + 1));
        m.set_block(ct, cs, &d.d(n));
        diffs.insert(n, m);
    }
    FreeComplex::from_parts_unchecked(ring, ranks, diffs)
}

/// Offsets of the `(i, n − i)` blocks inside a total degree `n`, ordered by `i`.
pub(crate) fn tensor_blocks(c: &FreeComplex, d: &FreeComplex, n: i64) -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (&i, &r) in &c.ranks {
        let s = d.rank(n - i);
        if s > 0 {
            out.push((i, off, r * s));
            off += r * s;
        }
    }
    out
}

/// Total complex of `C ⊗ D` with `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`.
///
/// The basis of `C^i ⊗ D^j` is ordered with the `C` index outermost.
pub fn tensor(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    same_ring(&c.ring, &d.ring)?;
    let ring = c.ring.clone();
    let mut ranks = BTreeMap::new();
    for (&i, &r) in &c.ranks {
        for (&j, &s) in &d.ranks {
            *ranks.entry(i + j).or_insert(0) += r * s;
        }
    }
    let drop_sign = mutation::is_active(Mutant::KoszulSign);
    let mut diffs = BTreeMap::new();
    for &n in ranks.keys() {
        let src = tensor_blocks(c, d, n);
        let tgt = tensor_blocks(c, d, n + 1);
        let rows = tgt.last().map_or(0, |&(_, o, l)| o + l);
        let cols = src.last().map_or(0, |&(_, o, l)| o + l);
        let mut m = Matrix::zeros(ring.clone(), rows, cols);
        for &(i, so, _) in &src {
            let j = n - i;
            let idd = Matrix::identity(ring.clone(), d.rank(j));
            if let Some(&(_, to, _)) = tgt.iter().find(|t| t.0 == i + 1) {
                if let Some(dc) = c.diffs.get(&i) {
                    m.set_block(to, so, &dc.kronecker(&idd));
                }
            }
            if let Some(&(_, to, _)) = tgt.iter().find(|t| t.0 == i) {
                if let Some(dd) = d.diffs.get(&j) {
                    let s = if drop_sign { 1 } else { sign(i) };
                    let blk = Matrix::identity(ring.clone(), c.rank(i)).kronecker(dd);
                    m.set_block(to, so, &blk.scale(&ring.from_i64(s)));
                }
            }
        }
        diffs.insert(n, m);
    }
    Ok(FreeComplex::from_parts_unchecked(ring, ranks, diffs))
}

/// Offsets of the `Hom(C^i, D^{i+n})` blocks of `Hom(C, D)^n`.
///
/// A map `f_i` is stored row-major: entry `(r, s)` sits at `r · rank C^i + s`.
pub(crate) fn hom_blocks(c: &FreeComplex, d: &FreeComplex, n: i64) -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (&i, &r) in &c.ranks {
        let s = d.rank(i + n);
        if s > 0 {
            out.push((i, off, r * s));
            off += r * s;
        }
    }
    out
}

/// `Hom(C, D)^n = ∏_i Hom(C^i, D^{i+n})` with `d(f) = d∘f − (−1)^n f∘d`.
pub fn hom_complex(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    same_ring(&c.ring, &d.ring)?;
    let ring = c.ring.clone();
    let mut ranks = BTreeMap::new();
    for (&i, &r) in &c.ranks {
        for (&j, &s) in &d.ranks {
            *ranks.entry(j - i).or_insert(0) += r * s;
        }
    }
    let flip = mutation::is_active(Mutant::HomSign);
    let mut diffs = BTreeMap::new();
    for &n in ranks.keys() {
        let src = hom_blocks(c, d, n);
        let tgt = hom_blocks(c, d, n + 1);
        let rows = tgt.last().map_or(0, |&(_, o, l)| o + l);
        let cols = src.last().map_or(0, |&(_, o, l)| o + l);
        let mut m = Matrix::zeros(ring.clone(), rows, cols);
        for &(i, to, _) in &tgt {
            // (df)_i = d_D ∘ f_i − (−1)^n f_{i+1} ∘ d_C^i
            if let Some(&(_, so, _)) = src.iter().find(|s| s.0 == i) {
                if let Some(dd) = d.diffs.get(&(i + n)) {
                    let blk = dd.kronecker(&Matrix::identity(ring.clone(), c.rank(i)));
                    m.set_block(to, so, &blk);
                }
            }
            if let Some(&(_, so, _)) = src.iter().find(|s| s.0 == i + 1) {
                if let Some(dc) = c.diffs.get(&i) {
                    let s = if flip { sign(n) } else { -sign(n) };
                    let blk = Matrix::identity(ring.clone(), d.rank(i + n + 1)).kronecker(&dc.transpose());
                    m.set_block(to, so, &blk.scale(&ring.from_i64(s)));
                }
            }
        }
        diffs.insert(n, m);
    }
    Ok(FreeComplex::from_parts_unchecked(ring, ranks, diffs))
}

/// `f ⊗ g : C ⊗ D → C' ⊗ D'` for degree-0 maps.
pub fn tensor_maps(f: &ComplexMap, g: &ComplexMap) -> Result<ComplexMap> {
    let src = tensor(&f.source, &g.source)?;
    let tgt = tensor(&f.target, &g.target)?;
    let ring = src.ring.clone();
    let mut comps = BTreeMap::new();
    for &n in src.ranks.keys() {
        let sb = tensor_blocks(&f.source, &g.source, n);
        let tb = tensor_blocks(&f.target, &g.target, n);
        let mut m = Matrix::zeros(ring.clone(), tgt.rank(n), src.rank(n));
        for &(i, so, _) in &sb {
            if let Some(&(_, to, _)) = tb.iter().find(|t| t.0 == i) {
                m.set_block(to, so, &f.component(i).kronecker(&g.component(n - i)));
            }
        }
        comps.insert(n, m);
    }
    Ok(ComplexMap::new_unchecked(src, tgt, comps))
}

/// `Hom(φ, ψ) : Hom(C, D) → Hom(C', D')`, `f ↦ ψ∘f∘φ`, for degree-0 maps `φ: C' → C`, `ψ: D → D'`.
pub fn hom_maps(phi: &ComplexMap, psi: &ComplexMap) -> Result<ComplexMap> {
    let src = hom_complex(&phi.target, &psi.source)?;
    let tgt = hom_complex(&phi.source, &psi.target)?;
    let ring = src.ring.clone();
    let mut comps = BTreeMap::new();
    for &n in src.ranks.keys() {
        let sb = hom_blocks(&phi.target, &psi.source, n);
        let tb = hom_blocks(&phi.source, &psi.target, n);
        let mut m = Matrix::zeros(ring.clone(), tgt.rank(n), src.rank(n));
        for &(i, so, _) in &sb {
            if let Some(&(_, to, _)) = tb.iter().find(|t| t.0 == i) {
                let blk = psi.component(i + n).kronecker(&phi.component(i).transpose());
                m.set_block(to, so, &blk);
            }
        }
        comps.insert(n, m);
    }
    Ok(ComplexMap::new_unchecked(src, tgt, comps))
}
