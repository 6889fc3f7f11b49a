//! Explicit constructions for the maximal-class families `m0`, `m2`.
//!
//! Notation: `h` is the span of `e_2, e_3, ...`. In `m0` one has
//! `d ω = e^1 ∧ D ω` for `ω` in `Λ(h)`, where `D` is the Lie derivative
//! along `e_1` restricted to `Λ(h)`: `D e^2 = 0`, `D e^i = e^{i-1}`,
//! extended as a derivation. `D_1` is the same derivation on all of
//! `Λ(e_1, e_2, ...)` with `D_1 e^1 = 0`.
//!
//! The cocycle series is `F(ω, e^i) = Σ_{l ≥ 0} D^l ω ∧ e^{i+1+l}`, which
//! satisfies `D F(ω, e^i) = ω ∧ e^i`.
//!
//! The degree-2 series can be written out as
//! `F(e^i, e^i) = e^{i,i+1} + e^{i-1,i+2} + ... + e^{2,2i-1}`; it is always
//! computed here from the defining sum.

use crate::combinatorics::{binom_mod2, partitions_exact, split_pow2};
use crate::error::{Error, Result};
use crate::exterior::{e, enumerate_basis, Basis, Form, Monomial};
use crate::gf2::{BitMatrix, BitVec};

fn lower_monomial(m: &Monomial, floor: u32) -> Form {
    let mut out = Form::zero();
    for (pos, &c) in m.indices().iter().enumerate() {
        if c <= floor {
            continue;
        }
        if let Some(t) = m.replace_at(pos, c - 1) {
            out.toggle(t);
        }
    }
    out
}

/// `D` on `Λ(h)`: lowers one index at a time, `e^2 ↦ 0`.
pub fn lie_derivative_h(f: &Form) -> Result<Form> {
    if f.involves_index(1) {
        return Err(Error::ContainsFirstIndex);
    }
    Ok(f.map_linear(|m| lower_monomial(m, 2)))
}

/// `D_1` on the whole exterior algebra: `e^1, e^2 ↦ 0`, `e^i ↦ e^{i-1}`.
pub fn lie_derivative(f: &Form) -> Form {
    f.map_linear(|m| lower_monomial(m, 2))
}

/// `F(ω, e^i)`; the sum stops at the first vanishing power of `D`.
pub fn cocycle_series(omega: &Form, i: u32) -> Result<Form> {
    if i < 2 {
        return Err(Error::Domain(format!("F(ω, e^i) needs i >= 2, got {i}")));
    }
    let mut power = lie_derivative_h(omega)?;
    let mut out = omega.wedge(&e(&[i + 1]));
    let mut l = 1;
    while !power.is_zero() {
        out += &power.wedge(&e(&[i + 1 + l]));
        power = lie_derivative_h(&power)?;
        l += 1;
    }
    Ok(out)
}

/// `F(e^{i_1 ... i_q}, e^{i_q})` for a monomial over `h`.
pub fn series_of_monomial(m: &Monomial) -> Result<Form> {
    let last = m
        .max_index()
        .ok_or_else(|| Error::Domain("F needs a nonempty monomial".into()))?;
    cocycle_series(&Form::from(m.clone()), last)
}

/// Basis of `ker D` on `Λ^{rank}_k(h)` in the infinite algebra: the series
/// `F(e^{i_1...i_q}, e^{i_q})` with `q = rank - 1`, `2 <= i_1 < ... < i_q`
/// and `i_q + 1 + Σ i_j = k`. Ordered by the index tuple.
pub fn ker_d_infinite(rank: usize, k: u32) -> Result<Vec<Form>> {
    if rank < 2 {
        return Err(Error::Domain(format!(
            "ker_d_infinite needs rank >= 2, got {rank}"
        )));
    }
    let q = rank - 1;
    let mut tuples = Vec::new();
    let mut last = 2;
    while 2 * last < k {
        let rest = k - 2 * last - 1;
        for head in enumerate_basis(q - 1, rest, 2, last - 1) {
            tuples.push(head.wedge(&Monomial::new(vec![last]).unwrap()).unwrap());
        }
        last += 1;
    }
    tuples.sort();
    tuples.iter().map(series_of_monomial).collect()
}

/// The matrix of `D : Λ^{rank}_k(e_2..e_n) → Λ^{rank}_{k-1}(e_2..e_n)`.
pub fn lie_derivative_block(rank: usize, k: u32, n: u32) -> Result<(Basis, Basis, BitMatrix)> {
    let domain = Basis::enumerate(rank, k, 2, n);
    let codomain = Basis::enumerate(rank, k.saturating_sub(1), 2, n);
    let columns = domain
        .monomials()
        .iter()
        .map(|m| codomain.to_coords(&lower_monomial(m, 2)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = BitMatrix::from_columns(codomain.len(), &columns)?;
    Ok((domain, codomain, matrix))
}

/// Basis of `ker D` on `Λ^{rank}_k(e_2..e_n)` by direct elimination.
pub fn ker_d_truncated(rank: usize, k: u32, n: u32) -> Result<Vec<Form>> {
    if rank < 2 || n < 3 {
        return Err(Error::Domain(format!(
            "ker_d_truncated needs rank >= 2 and n >= 3, got rank {rank}, n {n}"
        )));
    }
    let (domain, _, matrix) = lie_derivative_block(rank, k, n)?;
    matrix
        .kernel_basis()
        .iter()
        .map(|v| domain.from_coords(v))
        .collect()
}

/// `dim ker D` on all of `Λ^{rank}(e_2..e_n)`.
pub fn ker_d_dim(rank: usize, n: u32) -> Result<usize> {
    let lo = (2..2 + rank as u32).sum::<u32>();
    let hi = (0..rank as u32).map(|i| n.saturating_sub(i)).sum::<u32>();
    let mut total = 0;
    for k in lo..=hi {
        let (domain, _, matrix) = lie_derivative_block(rank, k, n)?;
        total += domain.len() - matrix.rank();
    }
    Ok(total)
}

/// The binomial system deciding whether `e^n ∧ F(e^k, e^k)` extends to a
/// `D`-cocycle of `m0(n)`: `A x = (1, 0, ..., 0)` with
/// `A_{ij} = C(n - (a+j-1) + 2(i-1), (a+j-1) + (i-1) - k) mod 2`.
#[derive(Debug, Clone)]
pub struct ASystem {
    pub n: u32,
    pub k: u32,
    /// `⌈(n + 2k + 1) / 3⌉`
    pub a: u32,
    /// `⌊n / 2⌋ + k - 1`
    pub b: u32,
    pub matrix: BitMatrix,
    pub rhs: BitVec,
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if n < 4 || k < 2 || k > n / 2 {
        return Err(Error::Domain(format!(
            "need n >= 4 and 2 <= k <= n/2, got n {n}, k {k}"
        )));
    }
    Ok(())
}

fn bounds(n: u32, k: u32) -> (u32, u32) {
    ((n + 2 * k + 1).div_ceil(3), n / 2 + k - 1)
}

pub fn matrix_a(n: u32, k: u32) -> Result<ASystem> {
    check_nk(n, k)?;
    let (a, b) = bounds(n, k);
    let (n_, k_, a_) = (n as i64, k as i64, a as i64);
    let matrix = BitMatrix::from_fn(
        (k - 1) as usize,
        (b + 1).saturating_sub(a) as usize,
        |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            let r = a_ + j - 1;
            binom_mod2(n_ - r + 2 * (i - 1), r + (i - 1) - k_)
        },
    );
    let rhs = BitVec::unit((k - 1) as usize, 0);
    Ok(ASystem {
        n,
        k,
        a,
        b,
        matrix,
        rhs,
    })
}

/// Explicit solution of the binomial system for `k <= m`, where
/// `n = 2^p + m`: `x_j = Σ_{s<p} C(m - k, n - (a+j-1) - 2^s) mod 2`.
pub fn x_solution(n: u32, k: u32) -> Result<BitVec> {
    check_nk(n, k)?;
    let (p, m) = split_pow2(n as u64)?;
    let m = m as u32;
    if k > m {
        return Err(Error::Domain(format!(
            "no solution exists for k > m (n = {n}, k = {k}, m = {m})"
        )));
    }
    let (a, b) = bounds(n, k);
    let len = (b + 1).saturating_sub(a) as usize;
    Ok(BitVec::from_ones(
        len,
        (0..len).filter(|&j| {
            let r = (a + j as u32) as i64;
            (0..p)
                .filter(|&s| binom_mod2((m - k) as i64, n as i64 - r - (1i64 << s)))
                .count()
                % 2
                == 1
        }),
    ))
}

/// For `k > m`, the row combination `(C(k-m-1, 0), ..., C(k-m-1, k-m-1), 0,
/// ..., 0)` that annihilates the binomial matrix, exhibiting the first row
/// as a combination of the others.
pub fn row_dependency(n: u32, k: u32) -> Result<BitVec> {
    check_nk(n, k)?;
    let (_, m) = split_pow2(n as u64)?;
    let m = m as u32;
    if k <= m {
        return Err(Error::Domain(format!(
            "rows are independent of the first for k <= m (n = {n}, k = {k}, m = {m})"
        )));
    }
    let top = (k - m - 1) as i64;
    Ok(BitVec::from_ones(
        (k - 1) as usize,
        (0..=top)
            .filter(|&l| binom_mod2(top, l))
            .map(|l| l as usize),
    ))
}

/// Closed forms for `b_1`, `b_2`, `b_3` of `m0(n)` (equal for `m2(n)`).
pub fn closed_betti(n: u32, q: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!("closed_betti needs n >= 3, got {n}")));
    }
    let n64 = n as u64;
    match q {
        1 => Ok(2),
        2 => Ok(n64.div_ceil(2)),
        3 if n == 3 => Ok(1),
        3 => {
            let (p, m) = split_pow2(n64)?;
            let two_p = 1u64 << p;
            Ok((two_p - 1) * (two_p / 2 - 1) / 3 + m * (m - 1) / 2 + (n64 - 1) / 2)
        }
        _ => Err(Error::Domain(format!(
            "closed forms exist for q in 1..=3, got {q}"
        ))),
    }
}

/// `H^2(m0(n))`: `e^{1n}` and `F(e^i, e^i)` for `2 <= i <= (n+1)/2`.
pub fn h2_basis_m0n(n: u32) -> Result<Vec<Form>> {
    if n < 3 {
        return Err(Error::Domain(format!("m0(n) needs n >= 3, got {n}")));
    }
    let mut out = vec![e(&[1, n])];
    for i in 2..=n.div_ceil(2) {
        out.push(cocycle_series(&e(&[i]), i)?);
    }
    Ok(out)
}

/// `H^2(m2(n))`: as for `m0(n)` with `e^{1n}` replaced by `e^{1n} + e^{2,n-1}`.
pub fn h2_basis_m2n(n: u32) -> Result<Vec<Form>> {
    if n < 5 {
        return Err(Error::Domain(format!("m2(n) needs n >= 5, got {n}")));
    }
    let mut out = h2_basis_m0n(n)?;
    out[0] = e(&[1, n]) + e(&[2, n - 1]);
    Ok(out)
}

/// The `D`-cocycles of `m0(t)` involving `e^t`, one for each `2 <= k <= m`:
/// `Σ_{r=a}^{b} x_{r-a+1} F(e^{t+2k-2r, r}, e^r)` with `x = x_solution(t, k)`.
pub fn top_cocycles(t: u32) -> Result<Vec<Form>> {
    if t < 4 {
        return Err(Error::Domain(format!("top_cocycles needs t >= 4, got {t}")));
    }
    let (_, m) = split_pow2(t as u64)?;
    let mut out = Vec::new();
    for k in 2..=m as u32 {
        let (a, _) = bounds(t, k);
        let x = x_solution(t, k)?;
        let mut sum = Form::zero();
        for j in x.iter_ones() {
            let r = a + j as u32;
            sum += &cocycle_series(&e(&[t + 2 * k - 2 * r, r]), r)?;
        }
        out.push(sum);
    }
    Ok(out)
}

/// Explicit 3-cocycles whose classes form a basis of `H^3(m0(n))`, `n >= 4`:
/// `e^{1,i-1,i}` for `2 + ⌊n/2⌋ <= i <= n`, followed by
/// `top_cocycles(t)` for `t = 4..=n`.
pub fn h3_basis_m0n(n: u32) -> Result<Vec<Form>> {
    if n < 4 {
        return Err(Error::Domain(format!("h3_basis_m0n needs n >= 4, got {n}")));
    }
    let mut out: Vec<Form> = (2 + n / 2..=n).map(|i| e(&[1, i - 1, i])).collect();
    for t in 4..=n {
        out.extend(top_cocycles(t)?);
    }
    Ok(out)
}

/// `H^3(m2(n))` from the `m0(n)` basis through the involution.
pub fn h3_basis_m2n(n: u32) -> Result<Vec<Form>> {
    if n < 5 {
        return Err(Error::Domain(format!("m2(n) needs n >= 5, got {n}")));
    }
    Ok(h3_basis_m0n(n)?.iter().map(involution).collect())
}

/// `ω = e^1 ∧ ξ + e^2 ∧ η + ζ` with `ξ` over `e^2, e^3, ...` and `η`, `ζ`
/// over `e^3, e^4, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition12 {
    pub xi: Form,
    pub eta: Form,
    pub zeta: Form,
}

impl Decomposition12 {
    pub fn recompose(&self) -> Form {
        let mut out = e(&[1]).wedge(&self.xi);
        out += &e(&[2]).wedge(&self.eta);
        out += &self.zeta;
        out
    }
}

pub fn decompose_12(omega: &Form) -> Result<Decomposition12> {
    match omega.uniform_rank()? {
        Some(r) if r < 2 => {
            return Err(Error::Domain(format!(
                "decomposition needs rank >= 2, got {r}"
            )))
        }
        _ => {}
    }
    let mut out = Decomposition12::default();
    for m in omega.monomials() {
        match m.min_index() {
            Some(1) => out.xi.toggle(m.remove_at(0)),
            Some(2) => out.eta.toggle(m.remove_at(0)),
            _ => out.zeta.toggle(m.clone()),
        }
    }
    Ok(out)
}

/// The involution `f` exchanging the differentials of `m0` and `m2`:
/// identity in rank <= 1, and on rank >= 2
/// `e^1 ∧ ξ + e^2 ∧ η + ζ ↦ e^1 ∧ ξ + e^2 ∧ (η + D_1 ξ) + ζ`.
/// Forms of mixed rank are mapped rank by rank.
pub fn involution(omega: &Form) -> Form {
    let mut out = Form::zero();
    for (rank, part) in omega.rank_components() {
        if rank < 2 {
            out += &part;
            continue;
        }
        let mut dec = decompose_12(&part).expect("uniform rank >= 2");
        dec.eta += &lie_derivative(&dec.xi);
        out += &dec.recompose();
    }
    out
}

/// Cocycles whose classes form a basis of `H^q` of the infinite algebras `m0`
/// and `m2` (the same list serves both) in degrees up to `max_degree`:
/// `e^1, e^2` for `q = 1`, otherwise the series spanning `ker D` in rank `q`.
pub fn infinite_h_basis(q: usize, max_degree: u32) -> Result<Vec<Form>> {
    match q {
        0 => Err(Error::Domain("infinite_h_basis needs q >= 1".into())),
        1 => Ok([1, 2]
            .into_iter()
            .filter(|&i| i <= max_degree)
            .map(|i| e(&[i]))
            .collect()),
        _ => {
            let mut out = Vec::new();
            for k in 0..=max_degree {
                out.extend(ker_d_infinite(q, k)?);
            }
            Ok(out)
        }
    }
}

/// `P_q(j) - P_q(j - 1)` with `j = k - q(q+1)/2`: the predicted
/// `dim H^q_k` of the infinite algebras.
pub fn graded_dimension(q: usize, k: u32) -> i64 {
    let q = q as i64;
    let j = k as i64 - q * (q + 1) / 2;
    partitions_exact(j, q) as i64 - partitions_exact(j - 1, q) as i64
}
