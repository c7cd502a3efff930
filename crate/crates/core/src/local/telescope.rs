use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{minimize, tensor, tensor_maps, ComplexMap, FreeComplex};
use crate::error::{invalid, Result};
use crate::mutation::{self, Mutant};
use crate::ring::matrix::Matrix;
use crate::ring::{Coefficients, RingSpec, Value};

/// `Tel_m(R; a₁,…,a_k)`: the span of `δ₀..δ_m` in each telescope factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopeTruncation {
    pub ring: RingSpec,
    pub generators: Vec<Value>,
    pub order: usize,
    pub complex: FreeComplex,
}

fn single(ring: &RingSpec, a: &Value, m: usize) -> FreeComplex {
    let n = m + 1;
    let mut d = Matrix::zeros(ring.clone(), n, n);
    let minus_a = ring.neg(a);
    d.set(0, 0, ring.one());
    for i in 1..n {
        if mutation::is_active(Mutant::TelescopeIndex) {
            d.set(i, i, ring.one());
            d.set(i - 1, i, minus_a.clone());
        } else {
            d.set(i - 1, i, ring.one());
            d.set(i, i, minus_a.clone());
        }
    }
    FreeComplex::from_differentials(ring.clone(), 0, vec![d]).expect("two-term complex")
}

/// Basis inclusion `Tel_m(a) → Tel_n(a)` of a single factor.
fn single_inclusion(ring: &RingSpec, a: &Value, m: usize, n: usize) -> ComplexMap {
    let (src, tgt) = (single(ring, a, m), single(ring, a, n));
    let mut f = Matrix::zeros(ring.clone(), n + 1, m + 1);
    for i in 0..=m {
        f.set(i, i, ring.one());
    }
    let comps: BTreeMap<i64, Matrix> = [(0, f.clone()), (1, f)].into_iter().collect();
    ComplexMap::new_unchecked(src, tgt, comps)
}

fn fold_maps(maps: Vec<ComplexMap>) -> Result<ComplexMap> {
    let mut it = maps.into_iter();
    let mut acc = it.next().expect("at least one generator");
    for f in it {
        acc = tensor_maps(&acc, &f)?;
    }
    Ok(acc)
}

fn reduced_generators(ring: &RingSpec, a: &[Value]) -> Result<Vec<Value>> {
    if a.is_empty() {
        return invalid("telescope needs at least one generator");
    }
    Ok(a.iter().map(|x| ring.reduce(x)).collect())
}

pub fn build_telescope(ring: &RingSpec, a: &[Value], m: usize) -> Result<TelescopeTruncation> {
    let gens = reduced_generators(ring, a)?;
    let mut complex = single(ring, &gens[0], m);
    for g in &gens[1..] {
        complex = tensor(&complex, &single(ring, g, m))?;
    }
    FreeComplex::new(ring.clone(), complex.ranks().clone(), complex.differentials().clone())?;
    Ok(TelescopeTruncation { ring: ring.clone(), generators: gens, order: m, complex })
}

impl TelescopeTruncation {
    /// The inclusion `Tel_m → Tel_n` for `n ≥ m`.
    pub fn inclusion(&self, n: usize) -> Result<ComplexMap> {
        if n < self.order {
            return invalid(format!("cannot include order {} into order {n}", self.order));
        }
        let maps = self
            .generators
            .iter()
            .map(|a| single_inclusion(&self.ring, a, self.order, n))
            .collect();
        fold_maps(maps)
    }
}

/// Whether `source → target` is one of the canonical maps: a quotient map,
/// `ℤ → 𝔽_p`, `ℤ/n → 𝔽_p` with `p | n`, or `ℤ ⊆ ℚ`.
pub fn canonical_map_exists(source: &RingSpec, target: &RingSpec) -> bool {
    use RingSpec::*;
    if source == target {
        return true;
    }
    match (source, target) {
        (Integers, PrimeField(_) | Rationals) => true,
        (IntegersMod(n), PrimeField(p)) => (n % p).is_zero(),
        _ if source.domain() == target.domain() => match (source.modulus(), target.modulus()) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(m), Some(n)) => target.domain().divides(&n, &m),
        },
        _ => false,
    }
}

/// `Tel_m(A; a) ⊗_A B` along the canonical map `A → B`, computed entrywise.
pub fn telescope_base_change(t: &TelescopeTruncation, target: &RingSpec) -> Result<TelescopeTruncation> {
    if !canonical_map_exists(&t.ring, target) {
        return invalid(format!("unsupported ring map {} → {}", t.ring, target));
    }
    let diffs = t
        .complex
        .differentials()
        .iter()
        .map(|(&i, d)| (i, d.map_entries(target.clone(), |v| target.reduce(v))))
        .collect();
    let complex = FreeComplex::from_parts_unchecked(target.clone(), t.complex.ranks().clone(), diffs);
    Ok(TelescopeTruncation {
        ring: target.clone(),
        generators: t.generators.iter().map(|g| target.reduce(g)).collect(),
        order: t.order,
        complex,
    })
}

/// A small complex homotopy equivalent to `Tel_m`, with the equivalences.
///
/// Each factor is minimized separately, so for one generator this is
/// `R --±a^m--> R` or less.
#[derive(Clone, Debug)]
pub struct ReducedTelescope {
    pub ring: RingSpec,
    pub generators: Vec<Value>,
    pub order: usize,
    pub complex: FreeComplex,
    factors: Vec<(ComplexMap, ComplexMap)>,
}

impl ReducedTelescope {
    pub fn new(ring: &RingSpec, a: &[Value], m: usize) -> Result<Self> {
        let gens = reduced_generators(ring, a)?;
        let mut factors = Vec::new();
        for g in &gens {
            let min = minimize(&single(ring, g, m));
            factors.push((min.inclusion, min.projection));
        }
        let complex = fold_complexes(factors.iter().map(|f| f.0.source.clone()).collect())?;
        Ok(ReducedTelescope { ring: ring.clone(), generators: gens, order: m, complex, factors })
    }

    /// The map `R_m → R_n` induced by `Tel_m ⊆ Tel_n`.
    pub fn transition(&self, other: &ReducedTelescope) -> Result<ComplexMap> {
        if other.generators != self.generators || other.ring != self.ring {
            return invalid("telescopes over different data");
        }
        let mut maps = Vec::new();
        for (k, a) in self.generators.iter().enumerate() {
            let inc = single_inclusion(&self.ring, a, self.order, other.order);
            let f = other.factors[k].1.compose_after(&inc.compose_after(&self.factors[k].0)?)?;
            maps.push(f);
        }
        fold_maps(maps)
    }
}

fn fold_complexes(cs: Vec<FreeComplex>) -> Result<FreeComplex> {
    let mut it = cs.into_iter();
    let mut acc = it.next().expect("at least one generator");
    for c in it {
        acc = tensor(&acc, &c)?;
    }
    Ok(acc)
}
