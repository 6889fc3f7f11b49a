//! Finite-dimensional Lie algebras over GF(2) given by structure constants,
//! with the graded families `m0(n)` and `m2(n)`.
//!
//! Algebra file format, one item per line, `#` starts a comment:
//!
//! ```text
//! dim 5
//! 1 2 : 3
//! 1 3 : 4
//! 1 4 : 5
//! 2 3 : 5
//! ```
//!
//! `i j : k1 k2 ...` sets `[e_i, e_j] = e_k1 + e_k2 + ...`. Pairs are
//! unordered (characteristic 2), may appear only once, and every index must
//! lie in `1..=dim`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Structure constants `c_{ij}^k` of a Lie algebra over GF(2) on the basis
/// `e_1, ..., e_n`, with `deg(e_i) = i`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    dim: u32,
    brackets: BTreeMap<(u32, u32), BTreeSet<u32>>,
    // dual[k] = pairs (i, j), i < j, with c_{ij}^k = 1
    dual: Vec<Vec<(u32, u32)>>,
}

impl GradedLieAlgebra {
    /// Builds an algebra from its nonzero brackets. Pairs are normalized to
    /// `i < j`; zero brackets are dropped.
    pub fn new(
        dim: u32,
        brackets: impl IntoIterator<Item = ((u32, u32), BTreeSet<u32>)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for ((i, j), out) in brackets {
            for &x in [i, j].iter().chain(&out) {
                if x == 0 || x > dim {
                    return Err(Error::IndexOutOfRange { index: x, max: dim });
                }
            }
            if i == j {
                if out.is_empty() {
                    continue;
                }
                return Err(Error::Invalid(format!("[e_{i}, e_{i}] must vanish")));
            }
            if out.is_empty() {
                continue;
            }
            let key = (i.min(j), i.max(j));
            if table.insert(key, out).is_some() {
                return Err(Error::Invalid(format!("bracket {key:?} given twice")));
            }
        }
        let mut dual = vec![Vec::new(); dim as usize + 1];
        for (&(i, j), out) in &table {
            for &k in out {
                dual[k as usize].push((i, j));
            }
        }
        Ok(Self {
            dim,
            brackets: table,
            dual,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `[e_i, e_j]` as a set of basis indices.
    pub fn bracket(&self, i: u32, j: u32) -> BTreeSet<u32> {
        self.brackets
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn brackets(&self) -> impl Iterator<Item = (&(u32, u32), &BTreeSet<u32>)> {
        self.brackets.iter()
    }

    /// Pairs `(i, j)`, `i < j`, whose bracket contains `e_k`; the terms of
    /// `d e^k`.
    pub fn bracket_preimages(&self, k: u32) -> &[(u32, u32)] {
        self.dual.get(k as usize).map_or(&[], Vec::as_slice)
    }

    /// `[e_i, v]` for `v` a sum of basis vectors.
    fn bracket_with(&self, i: u32, v: &BTreeSet<u32>) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for &l in v {
            for k in self.bracket(i, l) {
                if !out.remove(&k) {
                    out.insert(k);
                }
            }
        }
        out
    }

    pub fn is_graded(&self) -> bool {
        self.brackets
            .iter()
            .all(|(&(i, j), out)| out.iter().all(|&k| k == i + j))
    }

    /// Exhaustive check of the grading and of the Jacobi identity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (&(i, j), out) in &self.brackets {
            for &k in out {
                if k != i + j {
                    report.grading_violations.push((i, j, k));
                }
            }
        }
        let n = self.dim;
        for i in 1..=n {
            for j in i + 1..=n {
                let ij = self.bracket(i, j);
                for k in j + 1..=n {
                    let mut sum = self.bracket_with(i, &self.bracket(j, k));
                    for x in self.bracket_with(j, &self.bracket(k, i)) {
                        if !sum.remove(&x) {
                            sum.insert(x);
                        }
                    }
                    for x in self.bracket_with(k, &ij) {
                        if !sum.remove(&x) {
                            sum.insert(x);
                        }
                    }
                    if !sum.is_empty() {
                        report.jacobi_violations.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    /// Serializes into the algebra file format.
    pub fn save(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for (&(i, j), out) in &self.brackets {
            let rhs: Vec<String> = out.iter().map(u32::to_string).collect();
            s.push_str(&format!("{i} {j} : {}\n", rhs.join(" ")));
        }
        s
    }

    /// Parses the algebra file format without validating Jacobi or grading.
    pub fn parse(src: &str) -> Result<Self> {
        let mut dim: Option<u32> = None;
        let mut entries: Vec<(usize, (u32, u32), BTreeSet<u32>)> = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line, message };
            let int = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| parse_err(format!("expected a non-negative integer, found `{t}`")))
            };
            let Some(n) = dim else {
                let mut toks = body.split_whitespace();
                match (toks.next(), toks.next(), toks.next()) {
                    (Some("dim"), Some(t), None) => {
                        let n = int(t)?;
                        if n == 0 {
                            return Err(Error::Semantic {
                                line,
                                message: "dimension must be positive".into(),
                            });
                        }
                        dim = Some(n);
                        continue;
                    }
                    _ => return Err(parse_err("expected header `dim N`".into())),
                }
            };
            let (lhs, rhs) = body
                .split_once(':')
                .ok_or_else(|| parse_err("expected `i j : k1 k2 ...`".into()))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            if lhs.len() != 2 {
                return Err(parse_err(format!(
                    "expected two indices before `:`, found {}",
                    lhs.len()
                )));
            }
            let (i, j) = (int(lhs[0])?, int(lhs[1])?);
            let mut out = BTreeSet::new();
            for t in rhs.split_whitespace() {
                let k = int(t)?;
                if k == 0 || k > n {
                    return Err(Error::Semantic {
                        line,
                        message: format!("index {k} out of range 1..={n}"),
                    });
                }
                if !out.insert(k) {
                    return Err(Error::Semantic {
                        line,
                        message: format!("index {k} repeated"),
                    });
                }
            }
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::Semantic {
                        line,
                        message: format!("index {x} out of range 1..={n}"),
                    });
                }
            }
            if i == j {
                return Err(Error::Semantic {
                    line,
                    message: format!("bracket of e_{i} with itself"),
                });
            }
            let key = (i.min(j), i.max(j));
            if entries.iter().any(|(_, k, _)| *k == key) {
                return Err(Error::Semantic {
                    line,
                    message: format!("bracket [e_{}, e_{}] given twice", key.0, key.1),
                });
            }
            entries.push((line, key, out));
        }
        let dim = dim.ok_or(Error::Parse {
            line: 0,
            message: "empty input, missing `dim N` header".into(),
        })?;
        Self::new(dim, entries.into_iter().map(|(_, k, v)| (k, v)))
    }

    /// Parses and validates. With `strict`, any grading or Jacobi violation
    /// is an error; otherwise violations are returned as warnings.
    pub fn load(src: &str, strict: bool) -> Result<Loaded> {
        let algebra = Self::parse(src)?;
        let warnings = algebra.validate();
        if strict && !warnings.is_valid() {
            return Err(Error::Invalid(warnings.to_string()));
        }
        Ok(Loaded { algebra, warnings })
    }
}

impl fmt::Debug for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedLieAlgebra(dim {}, {} brackets)",
            self.dim,
            self.brackets.len()
        )
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub algebra: GradedLieAlgebra,
    pub warnings: ValidationReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(i, j, k)` with `e_k` in `[e_i, e_j]` but `k != i + j`.
    pub grading_violations: Vec<(u32, u32, u32)>,
    /// Triples `i < j < k` where the Jacobi sum is nonzero.
    pub jacobi_violations: Vec<(u32, u32, u32)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.grading_violations.is_empty() && self.jacobi_violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut first = true;
        for (i, j, k) in &self.grading_violations {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(
                f,
                "grading violation: [e_{i}, e_{j}] contains e_{k}, degree {k} != {}",
                i + j
            )?;
        }
        for (i, j, k) in &self.jacobi_violations {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "jacobi violation at (e_{i}, e_{j}, e_{k})")?;
        }
        Ok(())
    }
}

/// The two families of graded algebras of maximal class handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `[e_1, e_i] = e_{i+1}`.
    M0,
    /// `[e_1, e_i] = e_{i+1}`, `[e_2, e_j] = e_{j+2}`.
    M2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::M0 => "m0",
            Family::M2 => "m2",
        }
    }

    pub fn min_dim(self) -> u32 {
        match self {
            Family::M0 => 3,
            Family::M2 => 5,
        }
    }

    /// The truncation `m0(n)` or `m2(n)`.
    pub fn truncation(self, n: u32) -> Result<GradedLieAlgebra> {
        match self {
            Family::M0 => make_m0(n),
            Family::M2 => make_m2(n),
        }
    }

    /// A truncation that agrees with the infinite algebra on every index up
    /// to `max_index`.
    pub fn covering(self, max_index: u32) -> GradedLieAlgebra {
        self.truncation(max_index.max(self.min_dim()))
            .expect("dimension is at least the family minimum")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m0" => Ok(Family::M0),
            "m2" => Ok(Family::M2),
            other => Err(Error::Domain(format!("unknown family `{other}`"))),
        }
    }
}

/// `m0(n)`: `[e_1, e_i] = e_{i+1}` for `1 < i < n`.
pub fn make_m0(n: u32) -> Result<GradedLieAlgebra> {
    if n < 3 {
        return Err(Error::Domain(format!("m0(n) needs n >= 3, got {n}")));
    }
    GradedLieAlgebra::new(n, (2..n).map(|i| ((1, i), BTreeSet::from([i + 1]))))
}

/// `m2(n)`: the `m0(n)` brackets plus `[e_2, e_j] = e_{j+2}` for
/// `2 < j < n - 1`.
pub fn make_m2(n: u32) -> Result<GradedLieAlgebra> {
    if n < 5 {
        return Err(Error::Domain(format!("m2(n) needs n >= 5, got {n}")));
    }
    let first = (2..n).map(|i| ((1, i), BTreeSet::from([i + 1])));
    let second = (3..n - 1).map(|j| ((2, j), BTreeSet::from([j + 2])));
    GradedLieAlgebra::new(n, first.chain(second))
}
