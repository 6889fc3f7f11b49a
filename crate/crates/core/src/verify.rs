//! Named verification suites: brute-force computations checked against the
//! closed forms and explicit constructions of [`crate::maxclass`].
//!
//! Each check records the first counterexample it meets.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{
    betti, betti_by_kernel_formula, betti_graded, d_apply, independent_mod_coboundaries, is_cocycle,
};
use crate::combinatorics::{binom_mod2, binomial, split_pow2};
use crate::error::{Error, Result};
use crate::exterior::{enumerate_rank, Form, Monomial};
use crate::gf2::{in_span, BitMatrix, BitVec};
use crate::lie::{make_m0, make_m2, Family};
use crate::maxclass::{
    closed_betti, graded_dimension, h3_basis_m0n, infinite_h_basis, involution, ker_d_dim,
    ker_d_infinite, lie_derivative_block, matrix_a, row_dependency, top_cocycles, x_solution,
};
use crate::par::Exec;

/// Reference values of `b_3(m0(n))` for `n = 3..=20`.
pub const B3_TABLE: [u64; 18] = [
    1, 2, 3, 4, 7, 10, 11, 12, 15, 18, 23, 28, 35, 42, 43, 44, 47, 50,
];

/// Published `D`-cocycles involving `e^t` for `t = 4..=12`, in positional
/// notation (`(10)` is index 10).
pub const TOP_COCYCLE_TABLE: [(u32, &[&str]); 9] = [
    (4, &["e^{234}"]),
    (5, &[]),
    (6, &["e^{245}+e^{236}"]),
    (7, &["e^{345}+e^{246}+e^{237}", "e^{356}+e^{257}+e^{347}"]),
    (
        8,
        &[
            "e^{256}+e^{247}+e^{238}",
            "e^{456}+e^{357}+e^{258}+e^{348}",
            "e^{467}+e^{278}+e^{368}+e^{458}",
        ],
    ),
    (9, &[]),
    (10, &["e^{267}+e^{258}+e^{249}+e^{23(10)}"]),
    (
        11,
        &[
            "e^{367}+e^{268}+e^{358}+e^{349}+e^{24(10)}+e^{23(11)}",
            "e^{378}+e^{279}+e^{369}+e^{35(10)}+e^{25(11)}+e^{34(11)}",
        ],
    ),
    (
        12,
        &[
            "e^{467}+e^{368}+e^{458}+e^{269}+e^{25(10)}+e^{24(11)}+e^{23(12)}",
            "e^{478}+e^{289}+e^{379}+e^{469}+e^{45(10)}+e^{35(11)}+e^{25(12)}+e^{34(12)}",
            "e^{489}+e^{38(10)}+e^{47(10)}+e^{28(11)}+e^{46(11)}+e^{27(12)}+e^{36(12)}+e^{45(12)}",
        ],
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ReferenceTable,
    ClosedForms,
    Interweaving,
    Kernels,
    Partitions,
    Gf2Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::ReferenceTable,
        Suite::ClosedForms,
        Suite::Interweaving,
        Suite::Kernels,
        Suite::Partitions,
        Suite::Gf2Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ReferenceTable => "paper-table",
            Suite::ClosedForms => "closed-forms",
            Suite::Interweaving => "interweaving",
            Suite::Kernels => "kernels",
            Suite::Partitions => "partitions",
            Suite::Gf2Oracle => "gf2-oracle",
        }
    }

    pub fn run(self, exec: Exec) -> SuiteReport {
        let checks = match self {
            Suite::ReferenceTable => reference_table(exec),
            Suite::ClosedForms => closed_forms(exec),
            Suite::Interweaving => interweaving(),
            Suite::Kernels => kernels(exec),
            Suite::Partitions => partitions(exec),
            Suite::Gf2Oracle => gf2_oracle(),
        };
        SuiteReport {
            suite: self,
            checks,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub property: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs `f` over `items` and keeps the first failure message in input order.
fn check<T, F>(property: &str, exec: Exec, items: Vec<T>, f: F) -> Check
where
    T: Send,
    F: Fn(T) -> std::result::Result<(), String> + Sync + Send,
{
    let results = exec.map(items, f);
    let counterexample = results.into_iter().find_map(|r| r.err());
    Check {
        property: property.to_string(),
        passed: counterexample.is_none(),
        counterexample,
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn reference_table(exec: Exec) -> Vec<Check> {
    let rows: Vec<(u32, u64)> = (3..=20).zip(B3_TABLE).collect();
    vec![
        check(
            "brute-force b3(m0(n)) matches the table, n=3..20",
            exec,
            rows.clone(),
            |(n, want)| {
                let got = betti(&make_m0(n).map_err(err)?, 3).map_err(err)?.betti as u64;
                (got == want)
                    .then_some(())
                    .ok_or(format!("n={n}: brute force {got}, table {want}"))
            },
        ),
        check(
            "closed form b3 matches the table, n=3..20",
            Exec::Sequential,
            rows,
            |(n, want)| {
                let got = closed_betti(n, 3).map_err(err)?;
                (got == want)
                    .then_some(())
                    .ok_or(format!("n={n}: closed form {got}, table {want}"))
            },
        ),
    ]
}

fn closed_forms(exec: Exec) -> Vec<Check> {
    let mut items = Vec::new();
    for n in 3..=40 {
        items.push((n, 1));
        items.push((n, 2));
    }
    items.extend((4..=26).map(|n| (n, 3)));
    let m2_items: Vec<(u32, usize)> = (5..=24)
        .flat_map(|n| (1..=3).map(move |q| (n, q)))
        .collect();
    vec![
        check(
            "closed-form b1,b2,b3 equal brute force for m0(n)",
            exec,
            items,
            |(n, q)| {
                let got = betti(&make_m0(n).map_err(err)?, q).map_err(err)?.betti as u64;
                let want = closed_betti(n, q).map_err(err)?;
                (got == want).then_some(()).ok_or(format!(
                    "n={n} q={q}: brute force {got}, closed form {want}"
                ))
            },
        ),
        check(
            "b_q(m2(n)) = b_q(m0(n)), q=1..3, n=5..24",
            exec,
            m2_items,
            |(n, q)| {
                let a = betti(&make_m0(n).map_err(err)?, q).map_err(err)?.betti;
                let b = betti(&make_m2(n).map_err(err)?, q).map_err(err)?.betti;
                (a == b)
                    .then_some(())
                    .ok_or(format!("n={n} q={q}: m0 {a}, m2 {b}"))
            },
        ),
        check(
            "b3 at odd n is the mean of its neighbours",
            Exec::Sequential,
            (5..=39).step_by(2).collect(),
            |n: u32| {
                let mid = closed_betti(n, 3).map_err(err)?;
                let sum =
                    closed_betti(n - 1, 3).map_err(err)? + closed_betti(n + 1, 3).map_err(err)?;
                (2 * mid == sum).then_some(()).ok_or(format!("n={n}"))
            },
        ),
        check(
            "blockwise Betti numbers equal the global kernel formula",
            exec,
            (3..=9u32)
                .flat_map(|n| (1..=n as usize).map(move |q| (n, q)))
                .collect(),
            |(n, q)| {
                for g in [make_m0(n).map_err(err)?, Family::M2.covering(n)] {
                    let a = betti(&g, q).map_err(err)?.betti;
                    let b = betti_by_kernel_formula(&g, q).map_err(err)?;
                    if a != b {
                        return Err(format!(
                            "dim {} q={q}: blocks {a}, kernel formula {b}",
                            g.dim()
                        ));
                    }
                }
                Ok(())
            },
        ),
    ]
}

/// Monomials of rank 1..=4 with indices <= 12.
fn small_monomials() -> Vec<Form> {
    (1..=4)
        .flat_map(|q| enumerate_rank(q, 1, 12))
        .map(Form::from)
        .collect()
}

fn random_form(rng: &mut ChaCha8Rng, max_rank: usize, max_index: u32) -> Form {
    let terms = rng.gen_range(1..=6);
    (0..terms)
        .filter_map(|_| {
            let q = rng.gen_range(1..=max_rank);
            Monomial::from_unsorted((0..q).map(|_| rng.gen_range(1..=max_index)).collect())
        })
        .collect()
}

fn interweaving_failure(
    g0: &crate::lie::GradedLieAlgebra,
    g2: &crate::lie::GradedLieAlgebra,
    w: &Form,
) -> std::result::Result<(), String> {
    let fw = involution(w);
    if involution(&fw) != *w {
        return Err(format!("f(f({w})) != {w}"));
    }
    let d0 = d_apply(g0, w).map_err(err)?;
    let d2 = d_apply(g2, w).map_err(err)?;
    if involution(&d0) != d_apply(g2, &fw).map_err(err)? {
        return Err(format!("f d0 != d2 f on {w}"));
    }
    if involution(&d2) != d_apply(g0, &fw).map_err(err)? {
        return Err(format!("f d2 != d0 f on {w}"));
    }
    Ok(())
}

fn interweaving() -> Vec<Check> {
    let (g0, g2) = (Family::M0.covering(12), Family::M2.covering(12));
    let monomials = small_monomials();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d32);
    let random: Vec<Form> = (0..1000).map(|_| random_form(&mut rng, 4, 12)).collect();
    vec![
        check(
            "f is an involution exchanging d0 and d2 on monomials of rank <= 4, indices <= 12",
            Exec::Sequential,
            monomials.clone(),
            |w| interweaving_failure(&g0, &g2, &w),
        ),
        check(
            "f preserves rank and degree",
            Exec::Sequential,
            monomials,
            |w| {
                let fw = involution(&w);
                let same = fw.monomials().all(|m| {
                    let ref_m = w.monomials().next().unwrap();
                    m.rank() == ref_m.rank() && m.degree() == ref_m.degree()
                });
                same.then_some(()).ok_or(format!("f({w}) = {fw}"))
            },
        ),
        check(
            "interweaving on 1000 random mixed forms",
            Exec::Sequential,
            random,
            |w| interweaving_failure(&g0, &g2, &w),
        ),
    ]
}

fn span_equal(a: &[BitVec], b: &[BitVec], len: usize) -> std::result::Result<bool, String> {
    let ma = BitMatrix::from_rows(len, a.to_vec()).map_err(err)?;
    let mb = BitMatrix::from_rows(len, b.to_vec()).map_err(err)?;
    let both = BitMatrix::from_rows(len, a.iter().chain(b).cloned().collect()).map_err(err)?;
    let (ra, rb) = (ma.rank(), mb.rank());
    Ok(ra == rb && ra == both.rank())
}

fn kernels(exec: Exec) -> Vec<Check> {
    let rank_degree: Vec<(usize, u32)> = (2..=5)
        .flat_map(|r| (1..=25).map(move |k| (r, k)))
        .collect();
    let surj: Vec<(usize, u32)> = (1..=4)
        .flat_map(|q| (2..=25).map(move |k| (q, k)))
        .collect();
    let nk: Vec<(u32, u32)> = (4..=40)
        .flat_map(|n| (2..=n / 2).map(move |k| (n, k)))
        .collect();
    vec![
        check(
            "series F span ker D in the infinite algebra, rank <= 5, degree <= 25",
            exec,
            rank_degree,
            |(r, k)| {
                let (domain, _, matrix) = lie_derivative_block(r, k, k.max(2)).map_err(err)?;
                let series = ker_d_infinite(r, k).map_err(err)?;
                let coords = series
                    .iter()
                    .map(|f| domain.to_coords(f))
                    .collect::<Result<Vec<_>>>()
                    .map_err(err)?;
                let kernel = matrix.kernel_basis();
                if coords.len() != kernel.len() || !span_equal(&coords, &kernel, domain.len())? {
                    return Err(format!(
                        "rank {r} degree {k}: {} series, kernel dim {}",
                        coords.len(),
                        kernel.len()
                    ));
                }
                Ok(())
            },
        ),
        check(
            "D is onto in the infinite algebra, rank <= 4, degree <= 25",
            exec,
            surj,
            |(q, k)| {
                let (_, codomain, matrix) = lie_derivative_block(q, k, k).map_err(err)?;
                (matrix.rank() == codomain.len())
                    .then_some(())
                    .ok_or(format!("rank {q} degree {k}"))
            },
        ),
        check(
            "dim ker D on 3-forms: d_4 = 1 and d_n = d_(n-1) + m - 1",
            exec,
            (4..=26).collect(),
            |n: u32| {
                let d = ker_d_dim(3, n).map_err(err)?;
                if n == 4 {
                    return (d == 1).then_some(()).ok_or(format!("d_4 = {d}"));
                }
                let prev = ker_d_dim(3, n - 1).map_err(err)?;
                let (_, m) = split_pow2(n as u64).map_err(err)?;
                (d as u64 == prev as u64 + m - 1)
                    .then_some(())
                    .ok_or(format!("n={n}: d_n={d}, d_(n-1)={prev}, m={m}"))
            },
        ),
        check(
            "A x = (1,0,..,0) is solvable iff k <= m; explicit x and row dependency verify",
            exec,
            nk,
            |(n, k)| {
                let sys = matrix_a(n, k).map_err(err)?;
                let (_, m) = split_pow2(n as u64).map_err(err)?;
                let solvable = sys.matrix.solve(&sys.rhs).map_err(err)?.is_some();
                if solvable != (k as u64 <= m) {
                    return Err(format!("n={n} k={k} m={m}: solvable={solvable}"));
                }
                if k as u64 <= m {
                    let x = x_solution(n, k).map_err(err)?;
                    if sys.matrix.mul_vec(&x).map_err(err)? != sys.rhs {
                        return Err(format!("n={n} k={k}: A x != e_1"));
                    }
                } else {
                    let y = row_dependency(n, k).map_err(err)?;
                    if !sys.matrix.vec_mul(&y).map_err(err)?.is_zero() || !y.get(0) {
                        return Err(format!("n={n} k={k}: row combination does not vanish"));
                    }
                }
                Ok(())
            },
        ),
        check(
            "explicit H^3(m0(n)) basis: cocycles, independent, closed-form count, n=4..26",
            exec,
            (4..=26).collect(),
            |n: u32| {
                let g = make_m0(n).map_err(err)?;
                let basis = h3_basis_m0n(n).map_err(err)?;
                let want = closed_betti(n, 3).map_err(err)?;
                if basis.len() as u64 != want {
                    return Err(format!("n={n}: {} elements, b3 = {want}", basis.len()));
                }
                for f in &basis {
                    if !is_cocycle(&g, f).map_err(err)? {
                        return Err(format!("n={n}: {f} is not a cocycle"));
                    }
                }
                independent_mod_coboundaries(&g, &basis)
                    .map_err(err)?
                    .then_some(())
                    .ok_or(format!("n={n}: classes are dependent"))
            },
        ),
        check(
            "top cocycles match the published table, t=4..12",
            Exec::Sequential,
            TOP_COCYCLE_TABLE.to_vec(),
            |(t, row)| {
                let ours: Vec<String> = top_cocycles(t)
                    .map_err(err)?
                    .iter()
                    .map(Form::to_string)
                    .collect();
                let theirs: Vec<String> = row
                    .iter()
                    .map(|s| Form::from_compact(s).map(|f| f.to_string()))
                    .collect::<Result<_>>()
                    .map_err(err)?;
                (ours == theirs)
                    .then_some(())
                    .ok_or(format!("t={t}: computed {ours:?}, table {theirs:?}"))
            },
        ),
        check(
            "degree-k block of the infinite algebra agrees between truncations n=k and n=k+5",
            exec,
            (1..=20u32).collect(),
            |k| {
                for fam in [Family::M0, Family::M2] {
                    let (a, b) = (fam.covering(k), fam.covering(k + 5));
                    for q in 1..=4 {
                        let x = betti_graded(&a, q, k).map_err(err)?.betti;
                        let y = betti_graded(&b, q, k).map_err(err)?.betti;
                        if x != y {
                            return Err(format!("{fam} degree {k} q={q}: {x} vs {y}"));
                        }
                    }
                }
                Ok(())
            },
        ),
    ]
}

fn partitions(exec: Exec) -> Vec<Check> {
    let items: Vec<(usize, u32)> = (2..=4)
        .flat_map(|q| (q as u32 * (q as u32 + 1) / 2..=30).map(move |k| (q, k)))
        .collect();
    let exponents: Vec<u32> = (2..=8).collect();
    vec![
        check("graded dimensions of H^q(m0), H^q(m2): series count = partition difference = brute force, q=2..4, degree <= 30", exec, items, |(q, k)| {
            let listed = infinite_h_basis(q, k).map_err(err)?.iter().filter(|f| f.uniform_degree() == Some(k)).count() as i64;
            let formula = graded_dimension(q, k);
            if listed != formula {
                return Err(format!("q={q} degree {k}: {listed} series, partition formula {formula}"));
            }
            for fam in [Family::M0, Family::M2] {
                let brute = betti_graded(&fam.covering(k), q, k).map_err(err)?.betti as i64;
                if brute != formula {
                    return Err(format!("{fam} q={q} degree {k}: brute force {brute}, formula {formula}"));
                }
            }
            Ok(())
        }),
        check("C(2^p + x, y) even for 0 <= x < y < 2^p, p=2..8", Exec::Sequential, exponents.clone(), |p| {
            let top = 1i64 << p;
            for y in 0..top {
                for x in 0..y {
                    if binom_mod2(top + x, y) {
                        return Err(format!("p={p} x={x} y={y}"));
                    }
                }
            }
            Ok(())
        }),
        check("C(2^p - 1 - x, y) = C(x + y, y) mod 2 for x, y <= 2^p - 2, y > 0, x + y > 0", Exec::Sequential, exponents, |p| {
            let top = 1i64 << p;
            for y in 1..=top - 2 {
                for x in (-top)..=top - 2 {
                    if x + y > 0 && binom_mod2(top - 1 - x, y) != binom_mod2(y + x, y) {
                        return Err(format!("p={p} x={x} y={y}"));
                    }
                }
            }
            Ok(())
        }),
        check("Lucas rule agrees with exact binomials, N <= 64", Exec::Sequential, (0..=64u64).collect(), |n| {
            for t in 0..=n {
                if binom_mod2(n as i64, t as i64) != (binomial(n, t) % 2 == 1) {
                    return Err(format!("C({n},{t})"));
                }
            }
            Ok(())
        }),
        check("Vandermonde mod 2: Σ_i C(l,i) C(N,t+i) = C(N+l, t+l)", Exec::Sequential, (0..=20i64).collect(), |l| {
            for n in 0..=20 {
                for t in -20..=20 {
                    let lhs = (0..=l).filter(|&i| binom_mod2(l, i) && binom_mod2(n, t + i)).count() % 2 == 1;
                    if lhs != binom_mod2(n + l, t + l) {
                        return Err(format!("l={l} N={n} t={t}"));
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Every vector of `GF(2)^rows` reachable as a row combination, as bitmasks.
fn row_span(m: &BitMatrix) -> std::collections::HashSet<u64> {
    let rows: Vec<u64> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| m.get(i, j))
                .map(|j| 1u64 << j)
                .sum()
        })
        .collect();
    (0u64..1 << rows.len())
        .map(|mask| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, r)| acc ^ r)
        })
        .collect()
}

fn mask_of(v: &BitVec) -> u64 {
    v.iter_ones().map(|i| 1u64 << i).sum()
}

fn gf2_oracle() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f32);
    let cases: Vec<(BitMatrix, BitVec)> = (0..500)
        .map(|_| {
            let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
            let density = rng.gen_range(0.1..0.9);
            let m = BitMatrix::from_fn(r, c, |_, _| rng.gen_bool(density));
            let b = BitVec::from_ones(r, (0..r).filter(|_| rng.gen_bool(0.5)));
            (m, b)
        })
        .collect();
    vec![
        check("rank, kernel, solve and span membership agree with exhaustive enumeration on 500 matrices <= 8x8", Exec::Sequential, cases, |(m, b)| {
            let span = row_span(&m);
            let rank = span.len().trailing_zeros() as usize;
            if m.rank() != rank {
                return Err(format!("rank {} vs enumeration {rank} for {m:?}", m.rank()));
            }
            let kernel = m.kernel_basis();
            let kernel_size = (0u64..1 << m.cols())
                .filter(|&x| m.mul_vec(&BitVec::from_ones(m.cols(), (0..m.cols()).filter(|j| x >> j & 1 == 1))).map(|v| v.is_zero()).unwrap_or(false))
                .count();
            if 1usize << kernel.len() != kernel_size || kernel.iter().any(|v| !m.mul_vec(v).unwrap().is_zero()) {
                return Err(format!("kernel of {m:?}"));
            }
            let column_span = row_span(&m.transpose());
            let consistent = column_span.contains(&mask_of(&b));
            match m.solve(&b).map_err(err)? {
                Some(x) if m.mul_vec(&x).map_err(err)? == b && consistent => {}
                None if !consistent => {}
                other => return Err(format!("solve({m:?}, {b:?}) = {other:?}")),
            }
            let rows: Vec<BitVec> = (0..m.rows()).map(|i| m.row(i).clone()).collect();
            let probe = BitVec::from_ones(m.cols(), (0..m.cols()).filter(|j| (mask_of(&b) >> j) & 1 == 1));
            if in_span(&rows, &probe).map_err(err)? != span.contains(&mask_of(&probe)) {
                return Err(format!("in_span({probe:?}) for {m:?}"));
            }
            Ok(())
        }),
    ]
}
