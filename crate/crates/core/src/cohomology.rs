//! The Chevalley–Eilenberg complex of a Lie algebra over GF(2) with trivial
//! coefficients.
//!
//! On one-forms `d e^k = sum of e^{ij}` over the pairs `i < j` with
//! `e_k` in `[e_i, e_j]`; `d` extends to the exterior algebra as a
//! derivation. For a graded algebra `d` maps `Λ^q_k` into `Λ^{q+1}_k`, so
//! all ranks, kernels and class representatives are computed one
//! `(q, k)` block at a time. Non-graded algebras fall back to the full
//! `Λ^q → Λ^{q+1}` matrices.

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exterior::{enumerate_rank, Basis, Form, Monomial};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::lie::GradedLieAlgebra;
use crate::par::Exec;

fn d_monomial(g: &GradedLieAlgebra, m: &Monomial) -> Form {
    let mut out = Form::zero();
    for (pos, &c) in m.indices().iter().enumerate() {
        let pairs = g.bracket_preimages(c);
        if pairs.is_empty() {
            continue;
        }
        let rest = m.remove_at(pos);
        for &(a, b) in pairs {
            let ab = Monomial::new(vec![a, b]).expect("a < b");
            if let Some(t) = rest.wedge(&ab) {
                out.toggle(t);
            }
        }
    }
    out
}

/// `d f`.
pub fn d_apply(g: &GradedLieAlgebra, f: &Form) -> Result<Form> {
    if let Some(max) = f.max_index() {
        if max > g.dim() {
            return Err(Error::IndexOutOfRange {
                index: max,
                max: g.dim(),
            });
        }
    }
    Ok(f.map_linear(|m| d_monomial(g, m)))
}

/// Degrees `k` for which `Λ^q_k` of an `n`-dimensional algebra is nonzero.
pub fn degree_range(q: usize, n: u32) -> std::ops::RangeInclusive<u32> {
    let q32 = q as u32;
    if q32 > n {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    let lo = q32 * (q32 + 1) / 2;
    let hi = q32 * n - q32 * q32.saturating_sub(1) / 2;
    lo..=hi
}

/// The matrix of `d : Λ^q_k → Λ^{q+1}_k`.
#[derive(Debug, Clone)]
pub struct CochainBlock {
    pub q: usize,
    pub k: u32,
    pub domain: Basis,
    pub codomain: Basis,
    pub matrix: BitMatrix,
}

fn matrix_of(g: &GradedLieAlgebra, domain: &Basis, codomain: &Basis) -> Result<BitMatrix> {
    let columns = domain
        .monomials()
        .iter()
        .map(|m| codomain.to_coords(&d_monomial(g, m)))
        .collect::<Result<Vec<_>>>()?;
    BitMatrix::from_columns(codomain.len(), &columns)
}

fn require_graded(g: &GradedLieAlgebra) -> Result<()> {
    if g.is_graded() {
        Ok(())
    } else {
        Err(Error::Invalid(
            "degree blocks need a graded algebra ([e_i, e_j] in span of e_{i+j})".into(),
        ))
    }
}

/// The homogeneous block of `d` on `Λ^q_k`.
pub fn block(g: &GradedLieAlgebra, q: usize, k: u32) -> Result<CochainBlock> {
    require_graded(g)?;
    let n = g.dim();
    let domain = Basis::enumerate(q, k, 1, n);
    let codomain = Basis::enumerate(q + 1, k, 1, n);
    let matrix = matrix_of(g, &domain, &codomain)?;
    Ok(CochainBlock {
        q,
        k,
        domain,
        codomain,
        matrix,
    })
}

/// The full matrix of `d : Λ^q → Λ^{q+1}`, no grading assumed.
pub fn global_block(g: &GradedLieAlgebra, q: usize) -> Result<CochainBlock> {
    let n = g.dim();
    let domain = Basis::new(enumerate_rank(q, 1, n));
    let codomain = Basis::new(enumerate_rank(q + 1, 1, n));
    let matrix = matrix_of(g, &domain, &codomain)?;
    Ok(CochainBlock {
        q,
        k: 0,
        domain,
        codomain,
        matrix,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub q: usize,
    pub degree: Option<u32>,
    pub dim_ker: usize,
    pub dim_im_prev: usize,
    pub betti: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Form>>,
}

impl BettiReport {
    fn new(q: usize, degree: Option<u32>, dim_ker: usize, dim_im_prev: usize) -> Self {
        debug_assert!(dim_im_prev <= dim_ker);
        Self {
            q,
            degree,
            dim_ker,
            dim_im_prev,
            betti: dim_ker - dim_im_prev,
            representatives: None,
        }
    }

    pub fn with_representatives(mut self, reps: Vec<Form>) -> Self {
        self.representatives = Some(reps);
        self
    }
}

/// `dim H^q_k`.
pub fn betti_graded(g: &GradedLieAlgebra, q: usize, k: u32) -> Result<BettiReport> {
    let cur = block(g, q, k)?;
    let dim_ker = cur.domain.len() - cur.matrix.rank();
    let dim_im_prev = if q == 0 {
        0
    } else {
        block(g, q - 1, k)?.matrix.rank()
    };
    Ok(BettiReport::new(q, Some(k), dim_ker, dim_im_prev))
}

pub fn betti(g: &GradedLieAlgebra, q: usize) -> Result<BettiReport> {
    betti_with(g, q, Exec::default())
}

/// `b_q`, summed over degree blocks (or from the full matrices when the
/// algebra is not graded).
pub fn betti_with(g: &GradedLieAlgebra, q: usize, exec: Exec) -> Result<BettiReport> {
    if !g.is_graded() {
        let cur = global_block(g, q)?;
        let dim_ker = cur.domain.len() - cur.matrix.rank();
        let dim_im_prev = if q == 0 {
            0
        } else {
            global_block(g, q - 1)?.matrix.rank()
        };
        return Ok(BettiReport::new(q, None, dim_ker, dim_im_prev));
    }
    let parts = exec.map(degree_range(q, g.dim()).collect(), |k| {
        betti_graded(g, q, k)
    });
    let (mut ker, mut im) = (0, 0);
    for p in parts {
        let p = p?;
        ker += p.dim_ker;
        im += p.dim_im_prev;
    }
    Ok(BettiReport::new(q, None, ker, im))
}

/// `b_q = dim ker(d|Λ^q) + dim ker(d|Λ^{q-1}) - C(n, q-1)` on the full,
/// unblocked matrices.
pub fn betti_by_kernel_formula(g: &GradedLieAlgebra, q: usize) -> Result<usize> {
    if q == 0 {
        return Err(Error::Domain("kernel formula needs q >= 1".into()));
    }
    let ker = |q: usize| -> Result<usize> {
        let b = global_block(g, q)?;
        Ok(b.domain.len() - b.matrix.rank())
    };
    let total =
        ker(q)? as i128 + ker(q - 1)? as i128 - binomial(g.dim() as u64, q as u64 - 1) as i128;
    usize::try_from(total).map_err(|_| Error::Domain("negative Betti number".into()))
}

/// Coordinates of `Λ^q_k` (or all of `Λ^q` when `k` is `None`) together with
/// the coboundary subspace `d(Λ^{q-1})` in those coordinates.
struct Coboundaries {
    basis: Basis,
    space: Echelon,
}

fn coboundaries(g: &GradedLieAlgebra, q: usize, k: Option<u32>) -> Result<Coboundaries> {
    let prev = match (q, k) {
        (0, _) => None,
        (_, Some(k)) => Some(block(g, q - 1, k)?),
        (_, None) => Some(global_block(g, q - 1)?),
    };
    let basis = match (&prev, k) {
        (Some(b), _) => b.codomain.clone(),
        (None, Some(k)) => Basis::enumerate(0, k, 1, g.dim()),
        (None, None) => Basis::new(vec![Monomial::one()]),
    };
    let mut space = Echelon::new(basis.len());
    if let Some(prev) = prev {
        for j in 0..prev.matrix.cols() {
            space.insert(prev.matrix.column(j))?;
        }
    }
    Ok(Coboundaries { basis, space })
}

fn block_representatives(g: &GradedLieAlgebra, q: usize, k: Option<u32>) -> Result<Vec<Form>> {
    let cur = match k {
        Some(k) => block(g, q, k)?,
        None => global_block(g, q)?,
    };
    let cob = coboundaries(g, q, k)?;
    let mut reps = Echelon::new(cur.domain.len());
    for z in cur.matrix.kernel_basis() {
        reps.insert(cob.space.reduce(&z)?)?;
    }
    reps.basis()
        .iter()
        .map(|v| cur.domain.from_coords(v))
        .collect()
}

/// Canonical representatives of a basis of `H^q`: per degree block, the
/// reduced echelon basis of the cocycles after reduction modulo the
/// coboundaries. Ordered by degree, then by leading monomial.
pub fn cohomology_basis(g: &GradedLieAlgebra, q: usize) -> Result<Vec<Form>> {
    cohomology_basis_with(g, q, Exec::default())
}

pub fn cohomology_basis_with(g: &GradedLieAlgebra, q: usize, exec: Exec) -> Result<Vec<Form>> {
    if !g.is_graded() {
        return block_representatives(g, q, None);
    }
    let parts = exec.map(degree_range(q, g.dim()).collect(), |k| {
        block_representatives(g, q, Some(k))
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Representatives of a basis of `H^q_k`.
pub fn cohomology_basis_graded(g: &GradedLieAlgebra, q: usize, k: u32) -> Result<Vec<Form>> {
    block_representatives(g, q, Some(k))
}

fn rank_of(f: &Form) -> Result<usize> {
    Ok(f.uniform_rank()?.unwrap_or(0))
}

pub fn is_cocycle(g: &GradedLieAlgebra, f: &Form) -> Result<bool> {
    f.uniform_rank()?;
    Ok(d_apply(g, f)?.is_zero())
}

/// True iff `f` lies in the image of `d` on forms of one rank lower.
pub fn is_coboundary(g: &GradedLieAlgebra, f: &Form) -> Result<bool> {
    Ok(normal_form(g, f)?.is_zero())
}

/// Canonical representative of `f` modulo coboundaries: the reduction of
/// each degree component against the reduced echelon basis of the
/// coboundary space. Two forms are cohomologous iff their normal forms agree.
pub fn normal_form(g: &GradedLieAlgebra, f: &Form) -> Result<Form> {
    let q = rank_of(f)?;
    if let Some(max) = f.max_index() {
        if max > g.dim() {
            return Err(Error::IndexOutOfRange {
                index: max,
                max: g.dim(),
            });
        }
    }
    if f.is_zero() {
        return Ok(Form::zero());
    }
    let parts: Vec<(Option<u32>, Form)> = if g.is_graded() {
        f.degree_components()
            .into_iter()
            .map(|(k, c)| (Some(k), c))
            .collect()
    } else {
        vec![(None, f.clone())]
    };
    let mut out = Form::zero();
    for (k, part) in parts {
        let cob = coboundaries(g, q, k)?;
        let v = cob.basis.to_coords(&part)?;
        out += &cob.basis.from_coords(&cob.space.reduce(&v)?)?;
    }
    Ok(out)
}

/// The cup product of two classes, returned as the canonical representative
/// of the class of `a ∧ b`.
pub fn cup_product(g: &GradedLieAlgebra, a: &Form, b: &Form) -> Result<Form> {
    for x in [a, b] {
        if !is_cocycle(g, x)? {
            return Err(Error::NotCocycle(x.to_string()));
        }
    }
    normal_form(g, &a.wedge(b))
}

/// True iff the classes of `forms` (all of rank `q`) are linearly independent
/// in `H^q`.
pub fn independent_mod_coboundaries(g: &GradedLieAlgebra, forms: &[Form]) -> Result<bool> {
    let mut q = None;
    for f in forms {
        if let Some(r) = f.uniform_rank()? {
            if q.is_some_and(|q| q != r) {
                return Err(Error::NonUniformRank);
            }
            q = Some(r);
        } else {
            return Ok(false);
        }
    }
    let Some(q) = q else {
        return Ok(true);
    };
    let keys: Vec<Option<u32>> = if g.is_graded() {
        let mut ks: Vec<u32> = forms
            .iter()
            .flat_map(|f| f.degree_components().into_keys())
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks.into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    // Concatenate the per-degree coordinate systems.
    let mut monomials = Vec::new();
    let mut pieces = Vec::new();
    for k in keys {
        let cob = coboundaries(g, q, k)?;
        pieces.push((monomials.len(), cob.space));
        monomials.extend(cob.basis.monomials().iter().cloned());
    }
    let total = Basis::new(monomials);
    let mut space = Echelon::new(total.len());
    for (offset, sub) in &pieces {
        for v in sub.basis() {
            space.insert(BitVec::from_ones(
                total.len(),
                v.iter_ones().map(|i| i + offset),
            ))?;
        }
    }
    for f in forms {
        if !space.insert(total.to_coords(f)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
