//! Finitely generated modules over the supported rings.
//!
//! Everything is computed over the covering domain `D` with the ring's modulus
//! `m` adjoined as extra relations, so a module over `D/(m)` is classified by
//! its invariant factors as a `D`-module. Those factors determine the module up
//! to isomorphism.

use std::fmt;

use super::matrix::{DomainMatrix, Matrix};
use super::smith::{domain_kernel, smith_domain};
use super::{Coefficients, Domain, RingSpec, Value};
use crate::error::{invalid, Result};

/// `coker(relations: R^k → R^generators)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: RingSpec,
    pub generators: usize,
    pub relations: Matrix<RingSpec>,
}

impl ModulePresentation {
    pub fn new(generators: usize, relations: Matrix<RingSpec>) -> Result<Self> {
        if relations.rows != generators {
            return invalid(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows
            ));
        }
        Ok(ModulePresentation { ring: relations.ring.clone(), generators, relations })
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        let relations = Matrix::zeros(ring.clone(), rank, 0);
        ModulePresentation { ring, generators: rank, relations }
    }

    /// `R/(d)`.
    pub fn cyclic(ring: RingSpec, d: Value) -> Self {
        let relations = Matrix::from_entries(ring.clone(), 1, 1, vec![ring.reduce(&d)]).unwrap();
        ModulePresentation { ring, generators: 1, relations }
    }
}

/// Isomorphism type `⊕ D/(d_i)` of a module over a supported ring.
///
/// Factors are normalized non-units of the covering domain in divisibility
/// order, with zeros (free `D` summands) last. Over `D/(m)` a free summand
/// shows up as the factor `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleInvariants {
    pub ring: RingSpec,
    pub factors: Vec<Value>,
}

impl ModuleInvariants {
    pub fn zero(ring: RingSpec) -> Self {
        ModuleInvariants { ring, factors: Vec::new() }
    }

    /// The diagonal presentation `⊕ R/(d_i)`.
    pub fn presentation(&self) -> ModulePresentation {
        let n = self.factors.len();
        let diag: Vec<Value> = self.factors.iter().map(|f| self.ring.reduce(f)).collect();
        let rel = Matrix::diagonal(self.ring.clone(), n, n, &diag);
        ModulePresentation { ring: self.ring.clone(), generators: n, relations: rel }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of cyclic summands.
    pub fn num_summands(&self) -> usize {
        self.factors.len()
    }

    /// Number of `D`-free summands (only possible when the ring is a domain).
    pub fn free_rank(&self) -> usize {
        let d = self.ring.domain();
        self.factors.iter().filter(|f| d.is_zero(f)).count()
    }

    /// Nonzero factors.
    pub fn torsion(&self) -> Vec<Value> {
        let d = self.ring.domain();
        self.factors.iter().filter(|f| !d.is_zero(f)).cloned().collect()
    }

    /// Isomorphic to a free module over its ring.
    pub fn is_free(&self) -> bool {
        let m = self.ring.modulus_or_zero();
        self.factors.iter().all(|f| *f == m)
    }

    /// Compact label such as `ℤ/2 ⊕ ℤ`.
    pub fn label(&self) -> String {
        self.to_string()
    }

    fn from_diagonal(ring: &RingSpec, diag: impl IntoIterator<Item = Value>) -> Self {
        let d = ring.domain();
        let mut factors: Vec<Value> = diag
            .into_iter()
            .map(|x| d.normalize(&x).0)
            .filter(|x| !d.is_unit(x))
            .collect();
        // the SNF chain already puts nonzero factors first; keep zeros last
        factors.sort_by_key(|x| d.is_zero(x));
        ModuleInvariants { ring: ring.clone(), factors }
    }
}

fn domain_name(d: &Domain) -> String {
    match d {
        Domain::Integers => "ℤ".into(),
        Domain::PrimeField(p) => format!("𝔽{p}"),
        Domain::Rationals => "ℚ".into(),
        Domain::Polynomials(p) => format!("𝔽{p}[x]"),
    }
}

impl fmt::Display for ModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let d = self.ring.domain();
        let base = domain_name(&d);
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                if d.is_zero(x) {
                    base.clone()
                } else {
                    match (&d, x) {
                        (Domain::Polynomials(_), _) => format!("{base}/({x})"),
                        _ => format!("{base}/{x}"),
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn modulus_block(ring: &RingSpec, n: usize) -> Option<DomainMatrix> {
    ring.modulus()
        .map(|m| Matrix::identity(ring.domain(), n).scale(&m))
}

/// Invariant factors of a presented module.
pub fn module_invariants(p: &ModulePresentation) -> ModuleInvariants {
    let mut rel = p.relations.lift();
    if let Some(mb) = modulus_block(&p.ring, p.generators) {
        rel = rel.hcat(&mb);
    }
    let s = smith_domain(&rel);
    let d = p.ring.domain();
    let diag = (0..p.generators).map(|i| {
        if i < s.rank() {
            s.invariant_factors[i].clone()
        } else {
            d.zero()
        }
    });
    ModuleInvariants::from_diagonal(&p.ring, diag)
}

/// Decide `M ≅ N`. Both must be modules over the same ring.
pub fn module_iso_test(a: &ModulePresentation, b: &ModulePresentation) -> Result<bool> {
    if a.ring != b.ring {
        return invalid(format!("modules over different rings: {} vs {}", a.ring, b.ring));
    }
    Ok(module_invariants(a) == module_invariants(b))
}

/// `(span G + span R) / span R` inside `R^n`, with adapted generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub invariants: ModuleInvariants,
    /// Ambient vectors (as columns) generating the cyclic summands, in factor order.
    pub generators: Matrix<RingSpec>,
    /// Presentation on the columns of `G`.
    pub relations: Matrix<RingSpec>,
}

/// Quotient of the submodule spanned by the columns of `gens` by the one spanned
/// by the columns of `rels`; both live in the same `R^n`.
pub fn subquotient(gens: &Matrix<RingSpec>, rels: &Matrix<RingSpec>) -> Subquotient {
    assert_eq!(gens.rows, rels.rows, "ambient mismatch in subquotient");
    assert_eq!(gens.ring, rels.ring, "ring mismatch in subquotient");
    let ring = &gens.ring;
    let dom = ring.domain();
    let n = gens.rows;
    let g = gens.cols;
    let gl = gens.lift();
    let mut big = gl.hcat(&rels.lift());
    if let Some(mb) = modulus_block(ring, n) {
        big = big.hcat(&mb);
    }
    let rel = domain_kernel(&big).row_range(0..g);
    let s = smith_domain(&rel);
    let adapted = gl.mul(&s.u_inv);
    let mut diag = Vec::new();
    let mut cols = Vec::new();
    for i in 0..g {
        let f = if i < s.rank() { s.invariant_factors[i].clone() } else { dom.zero() };
        if dom.is_unit(&f) {
            continue;
        }
        diag.push(f);
        cols.push(adapted.column(i).iter().map(|v| ring.reduce(v)).collect::<Vec<_>>());
    }
    // zero factors can only come last in an SNF chain, so order is preserved
    let invariants = ModuleInvariants::from_diagonal(ring, diag);
    Subquotient {
        invariants,
        generators: Matrix::from_columns(ring.clone(), n, &cols),
        relations: rel.into_ring(ring),
    }
}
