//! Exterior algebra over GF(2) in the dual basis `e^1, e^2, ...`.
//!
//! A [`Monomial`] is a strictly increasing index list; a [`Form`] is a set of
//! monomials (coefficients are 0 or 1, so addition is symmetric difference).
//! There are no signs in characteristic 2.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// `e^{i_1 i_2 ... i_q}` with `0 < i_1 < ... < i_q`. The empty monomial is
/// the scalar 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::Domain("monomial index 0".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "monomial indices must be strictly increasing: {indices:?}"
            )));
        }
        Ok(Self(indices))
    }

    /// Sorts the indices; `None` for a repeated index or an index 0, both of
    /// which give the zero form.
    pub fn from_unsorted(mut indices: Vec<u32>) -> Option<Self> {
        indices.sort_unstable();
        if indices.first() == Some(&0) || indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self(indices))
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Product of two monomials, `None` when they share an index.
    pub fn wedge(&self, other: &Monomial) -> Option<Monomial> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Monomial(out))
    }

    /// The monomial with the index at `pos` removed.
    pub fn remove_at(&self, pos: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(pos);
        Monomial(v)
    }

    /// Replaces the index at `pos` by `new`; `None` if that collides with
    /// another index or `new` is 0.
    pub fn replace_at(&self, pos: usize, new: u32) -> Option<Monomial> {
        if new == 0 {
            return None;
        }
        let rest = self.remove_at(pos);
        rest.wedge(&Monomial(vec![new]))
    }

    /// Parses the positional notation `24(10)`, where indices above 9 are
    /// parenthesised.
    pub fn from_compact(s: &str) -> Result<Monomial> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("bad compact monomial `{s}`"),
        };
        let mut out = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '(' => {
                    let mut num = String::new();
                    loop {
                        match chars.next() {
                            Some(')') => break,
                            Some(d) if d.is_ascii_digit() => num.push(d),
                            _ => return Err(bad()),
                        }
                    }
                    out.push(num.parse().map_err(|_| bad())?);
                }
                d if d.is_ascii_digit() => out.push(d.to_digit(10).unwrap()),
                ',' | ' ' => {}
                _ => return Err(bad()),
            }
        }
        Monomial::from_unsorted(out.clone())
            .filter(|m| m.0 == out)
            .ok_or_else(bad)
    }
}

impl TryFrom<Vec<u32>> for Monomial {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Monomial::new(v)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "e{{")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let bad = |msg: &str| Error::Parse {
            line: 0,
            message: format!("{msg}: `{s}`"),
        };
        let inner = s
            .strip_prefix("e{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| bad("expected e{i,j,...}"))?;
        let indices = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad index")))
                .collect::<Result<Vec<_>>>()?
        };
        Monomial::new(indices)
    }
}

/// An element of the exterior algebra over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Monomial>", into = "Vec<Monomial>")]
pub struct Form(BTreeSet<Monomial>);

/// Shorthand for the monomial form `e^{indices}` (zero on a repeated index
/// or an index 0).
pub fn e(indices: &[u32]) -> Form {
    Monomial::from_unsorted(indices.to_vec())
        .map(Form::from)
        .unwrap_or_default()
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Monomial::one().into()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.contains(m)
    }

    /// Adds one monomial (removing it if already present).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for a in &self.0 {
            for b in &other.0 {
                if let Some(m) = a.wedge(b) {
                    out.toggle(m);
                }
            }
        }
        out
    }

    /// `Some(q)` when every monomial has rank `q`, `None` for the zero form.
    pub fn uniform_rank(&self) -> Result<Option<usize>> {
        let mut ranks = self.0.iter().map(Monomial::rank);
        let Some(first) = ranks.next() else {
            return Ok(None);
        };
        if ranks.all(|r| r == first) {
            Ok(Some(first))
        } else {
            Err(Error::NonUniformRank)
        }
    }

    pub fn degree_components(&self) -> BTreeMap<u32, Form> {
        let mut out: BTreeMap<u32, Form> = BTreeMap::new();
        for m in &self.0 {
            out.entry(m.degree()).or_default().0.insert(m.clone());
        }
        out
    }

    pub fn rank_components(&self) -> BTreeMap<usize, Form> {
        let mut out: BTreeMap<usize, Form> = BTreeMap::new();
        for m in &self.0 {
            out.entry(m.rank()).or_default().0.insert(m.clone());
        }
        out
    }

    /// Single degree shared by all monomials, if any.
    pub fn uniform_degree(&self) -> Option<u32> {
        let mut degs = self.0.iter().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.iter().filter_map(Monomial::max_index).max()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.0.iter().filter_map(Monomial::min_index).min()
    }

    pub fn involves_index(&self, i: u32) -> bool {
        self.0.iter().any(|m| m.contains(i))
    }

    /// Linear extension of a map on monomials.
    pub fn map_linear(&self, mut f: impl FnMut(&Monomial) -> Form) -> Form {
        let mut out = Form::zero();
        for m in &self.0 {
            out += &f(m);
        }
        out
    }

    /// Parses the compact notation `e^{345}+e^{24(10)}`.
    pub fn from_compact(s: &str) -> Result<Form> {
        let mut out = Form::zero();
        for term in s.split('+') {
            let t = term.trim();
            let inner = t
                .strip_prefix("e^{")
                .and_then(|r| r.strip_suffix('}'))
                .or_else(|| t.strip_prefix("e^"))
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("bad compact term `{t}`"),
                })?;
            out.toggle(Monomial::from_compact(inner)?);
        }
        Ok(out)
    }
}

impl From<Monomial> for Form {
    fn from(m: Monomial) -> Self {
        Form(BTreeSet::from([m]))
    }
}

impl From<Vec<Monomial>> for Form {
    fn from(v: Vec<Monomial>) -> Self {
        v.into_iter().collect()
    }
}

impl From<Form> for Vec<Monomial> {
    fn from(f: Form) -> Self {
        f.0.into_iter().collect()
    }
}

impl FromIterator<Monomial> for Form {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut f = Form::zero();
        for m in iter {
            f.toggle(m);
        }
        f
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        for m in &rhs.0 {
            self.toggle(m.clone());
        }
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        Form(self.0.symmetric_difference(&rhs.0).cloned().collect())
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Form::zero());
        }
        s.split('+').map(str::parse::<Monomial>).collect()
    }
}

/// Rank-`q` monomials with indices in `[min_index, max_index]` and degree
/// `k`, in lexicographic order.
pub fn enumerate_basis(q: usize, k: u32, min_index: u32, max_index: u32) -> Vec<Monomial> {
    fn go(
        q: usize,
        remaining: u32,
        lo: u32,
        hi: u32,
        stack: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if q == 0 {
            if remaining == 0 {
                out.push(Monomial(stack.clone()));
            }
            return;
        }
        let q32 = q as u32;
        for first in lo..=hi {
            // smallest possible sum of the q indices starting at `first`
            let min_sum = q32 * first + q32 * (q32 - 1) / 2;
            if min_sum > remaining {
                break;
            }
            if hi < first + q32 - 1 {
                break;
            }
            // `first` plus the top q-1 indices <= hi
            let max_sum = first + (q32 - 1) * hi - (q32 - 1) * q32.saturating_sub(2) / 2;
            if max_sum < remaining {
                continue;
            }
            stack.push(first);
            go(q - 1, remaining - first, first + 1, hi, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    let lo = min_index.max(1);
    if lo > max_index && q > 0 {
        return out;
    }
    go(q, k, lo, max_index, &mut Vec::with_capacity(q), &mut out);
    out
}

/// All rank-`q` monomials with indices in `[min_index, max_index]`, in
/// lexicographic order.
pub fn enumerate_rank(q: usize, min_index: u32, max_index: u32) -> Vec<Monomial> {
    fn go(q: usize, lo: u32, hi: u32, stack: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if q == 0 {
            out.push(Monomial(stack.clone()));
            return;
        }
        let mut first = lo;
        while first + (q as u32) <= hi + 1 {
            stack.push(first);
            go(q - 1, first + 1, hi, stack, out);
            stack.pop();
            first += 1;
        }
    }
    let mut out = Vec::new();
    go(q, min_index.max(1), max_index, &mut Vec::new(), &mut out);
    out
}

/// An ordered monomial basis of a homogeneous component, with the reverse
/// index for coordinate maps.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self { monomials, index }
    }

    pub fn enumerate(q: usize, k: u32, min_index: u32, max_index: u32) -> Self {
        Self::new(enumerate_basis(q, k, min_index, max_index))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_coords(&self, f: &Form) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.len());
        for m in f.monomials() {
            let i = self
                .position(m)
                .ok_or_else(|| Error::NotInBasis(m.to_string()))?;
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &BitVec) -> Result<Form> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        Ok(v.iter_ones().map(|i| self.monomials[i].clone()).collect())
    }
}
