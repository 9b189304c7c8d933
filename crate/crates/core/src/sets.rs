//! Bit-vector integer sets and the elementary additive statistics on them.
//!
//! A set lives in one of three ambients:
//!
//! * [`Ambient::Interval`]: a subset of `[N] = {1..N}`, stored with universe
//!   `N + 1` so that element `k` sits at index `k` (index 0 stays clear);
//! * [`Ambient::NonNegative`]: a subset of `{0..U-1}` with ordinary integer
//!   arithmetic, used for difference sets;
//! * [`Ambient::Cyclic`]: a subset of `Z/UZ`, sums and differences reduced
//!   mod `U`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    Interval,
    NonNegative,
    Cyclic,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    universe: usize,
    ambient: Ambient,
    words: Vec<u64>,
    len: usize,
}

impl IntSet {
    fn empty_raw(universe: usize, ambient: Ambient) -> Self {
        IntSet {
            universe,
            ambient,
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    fn build<I>(universe: usize, ambient: Ambient, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty_raw(universe, ambient);
        for x in elements {
            if x >= universe {
                return Err(Error::OutOfUniverse {
                    element: x,
                    universe,
                });
            }
            if ambient == Ambient::Interval && x == 0 {
                return Err(Error::ZeroInInterval);
            }
            set.set_bit(x);
        }
        Ok(set)
    }

    fn set_bit(&mut self, x: usize) {
        let (w, b) = (x / 64, x % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
    }

    /// A subset of `[n]`.
    pub fn interval<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        Self::build(n + 1, Ambient::Interval, elements)
    }

    /// A subset of `Z/modulus Z`. Elements must already be reduced.
    pub fn cyclic<I: IntoIterator<Item = usize>>(modulus: usize, elements: I) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        Self::build(modulus, Ambient::Cyclic, elements)
    }

    /// A subset of `{0..universe-1}` with integer arithmetic.
    pub fn nonnegative<I: IntoIterator<Item = usize>>(
        universe: usize,
        elements: I,
    ) -> Result<Self> {
        Self::build(universe, Ambient::NonNegative, elements)
    }

    /// Builds a set of the given ambient and universe size.
    pub fn with_ambient<I: IntoIterator<Item = usize>>(
        ambient: Ambient,
        universe: usize,
        elements: I,
    ) -> Result<Self> {
        match ambient {
            Ambient::Interval => {
                if universe == 0 {
                    return Err(Error::invalid("interval universe must be at least 1"));
                }
                Self::interval(universe - 1, elements)
            }
            Ambient::Cyclic => Self::cyclic(universe, elements),
            Ambient::NonNegative => Self::nonnegative(universe, elements),
        }
    }

    pub fn empty_interval(n: usize) -> Self {
        Self::empty_raw(n + 1, Ambient::Interval)
    }

    pub fn full_interval(n: usize) -> Self {
        Self::interval(n, 1..=n).expect("in range")
    }

    /// `{lo..=hi} ∩ [n]`.
    pub fn interval_range(n: usize, lo: usize, hi: usize) -> Self {
        Self::interval(n, lo.max(1)..=hi.min(n)).expect("in range")
    }

    /// All odd numbers in `[n]`.
    pub fn odds(n: usize) -> Self {
        Self::interval(n, (1..=n).step_by(2)).expect("in range")
    }

    /// First element of the upper third `{⌈(N+1)/3⌉..N}`.
    pub fn upper_third_start(n: usize) -> usize {
        (n + 1).div_ceil(3).max(1)
    }

    pub fn upper_third(n: usize) -> Self {
        Self::interval_range(n, Self::upper_third_start(n), n)
    }

    pub fn full_cyclic(modulus: usize) -> Self {
        Self::cyclic(modulus, 0..modulus).expect("in range")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// `N` for an [`Ambient::Interval`] set.
    pub fn n(&self) -> usize {
        self.universe.saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn check_compatible(&self, other: &IntSet) -> Result<()> {
        if self.universe != other.universe || self.ambient != other.ambient {
            return Err(Error::invalid(format!(
                "incompatible sets: {:?}/{} vs {:?}/{}",
                self.ambient, self.universe, other.ambient, other.universe
            )));
        }
        Ok(())
    }

    fn from_words(universe: usize, ambient: Ambient, words: Vec<u64>) -> Self {
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        IntSet {
            universe,
            ambient,
            words,
            len,
        }
    }

    fn zip_words(&self, other: &IntSet, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check_compatible(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(Self::from_words(self.universe, self.ambient, words))
    }

    pub fn union(&self, other: &IntSet) -> Result<Self> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &IntSet) -> Result<Self> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &IntSet) -> Result<Self> {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.universe == other.universe
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Regards a subset of `[N]` (or of `{0..U-1}`) as a set of residues mod `p`.
    pub fn embed_mod(&self, p: usize) -> Result<Self> {
        if self.ambient == Ambient::Cyclic {
            return Err(Error::invalid("set is already cyclic"));
        }
        if let Some(m) = self.max() {
            if m >= p {
                return Err(Error::invalid(format!(
                    "element {m} does not fit in Z/{p}Z without wraparound"
                )));
            }
        }
        Self::cyclic(p, self.iter())
    }

    /// The residues of a cyclic set lying in `{1..n}`, as a subset of `[n]`.
    pub fn restrict_to_interval(&self, n: usize) -> Self {
        Self::interval(n, self.iter().filter(|&x| x >= 1 && x <= n)).expect("filtered")
    }

    /// Bitmask with bit `k` set for each element `k`, if every element is below 128.
    pub fn to_mask(&self) -> Option<u128> {
        match self.max() {
            Some(m) if m >= 128 => None,
            _ => Some(self.iter().fold(0u128, |acc, x| acc | 1 << x)),
        }
    }

    fn sum(&self, x: usize, y: usize) -> Option<usize> {
        match self.ambient {
            Ambient::Cyclic => Some((x + y) % self.universe),
            _ => Some(x + y).filter(|&s| s < self.universe),
        }
    }

    /// Indicator vector of length `universe`.
    pub fn indicator(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.universe];
        for x in self.iter() {
            v[x] = 1.0;
        }
        v
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet[{:?} {}]", self.ambient, self.universe)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + b);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// A witness `x + y = z` inside a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveTriple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl fmt::Display for AdditiveTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} = {}", self.x, self.y, self.z)
    }
}

/// Finds some `x + y = z` in `a`, preferring `x < y` over `x = y`.
pub fn find_additive_triple(a: &IntSet) -> Option<AdditiveTriple> {
    let elems = a.elements();
    let distinct = elems.iter().enumerate().find_map(|(i, &x)| {
        elems[i + 1..].iter().find_map(|&y| {
            a.sum(x, y)
                .filter(|&z| a.contains(z))
                .map(|z| AdditiveTriple { x, y, z })
        })
    });
    distinct.or_else(|| {
        elems.iter().find_map(|&x| {
            a.sum(x, x)
                .filter(|&z| a.contains(z))
                .map(|z| AdditiveTriple { x, y: x, z })
        })
    })
}

pub fn is_sum_free(a: &IntSet) -> bool {
    let elems = a.elements();
    elems.iter().enumerate().all(|(i, &x)| {
        elems[i..]
            .iter()
            .all(|&y| a.sum(x, y).is_none_or(|z| !a.contains(z)))
    })
}

/// Sum-freeness of a bitmask subset of `{1..127}`.
#[inline]
pub fn is_sum_free_mask(mask: u128) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        if (mask << x) & mask != 0 {
            return false;
        }
    }
    true
}

/// Number of ordered pairs `(x, y)` in `A × A` with `x + y ∈ A`.
pub fn count_additive_triples(a: &IntSet) -> u64 {
    let elems = a.elements();
    let mut count = 0u64;
    for &x in &elems {
        for &y in &elems {
            if a.sum(x, y).is_some_and(|z| a.contains(z)) {
                count += 1;
            }
        }
    }
    count
}

/// Representation counts of differences `a - a'` over `A × A`.
#[derive(Clone, Debug)]
pub struct DiffPopularity {
    base: IntSet,
    /// Integer ambients: index `d + (U - 1)`. Cyclic: index `d mod U`.
    counts: Vec<u64>,
}

impl DiffPopularity {
    pub fn new(a: &IntSet) -> Self {
        let u = a.universe();
        let cyclic = a.ambient() == Ambient::Cyclic;
        let mut counts = vec![0u64; if cyclic { u } else { 2 * u - 1 }];
        let elems = a.elements();
        for &x in &elems {
            for &y in &elems {
                let idx = if cyclic {
                    (x + u - y) % u
                } else {
                    x + u - 1 - y
                };
                counts[idx] += 1;
            }
        }
        DiffPopularity {
            base: a.clone(),
            counts,
        }
    }

    pub fn base(&self) -> &IntSet {
        &self.base
    }

    /// Number of representations of `d` as `a - a'`.
    pub fn count(&self, d: i64) -> u64 {
        let u = self.base.universe() as i64;
        if self.base.ambient() == Ambient::Cyclic {
            self.counts[d.rem_euclid(u) as usize]
        } else if d.abs() < u {
            self.counts[(d + u - 1) as usize]
        } else {
            0
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `D(A, k)`: nonnegative differences (or residues) with at least `k` representations.
    pub fn popular(&self, k: f64) -> IntSet {
        let u = self.base.universe();
        let keep = (0..u).filter(|&d| self.count(d as i64) as f64 >= k);
        match self.base.ambient() {
            Ambient::Cyclic => IntSet::cyclic(u, keep),
            _ => IntSet::nonnegative(u, keep),
        }
        .expect("differences in range")
    }
}

/// `D(A, k)`; see [`DiffPopularity::popular`].
pub fn popular_differences(a: &IntSet, k: f64) -> Result<IntSet> {
    if !(k >= 0.0) {
        return Err(Error::invalid(format!(
            "popularity threshold {k} must be >= 0"
        )));
    }
    Ok(DiffPopularity::new(a).popular(k))
}

/// Size of a symmetric difference set stored by its nonnegative half:
/// each nonzero member counts for `d` and `-d`, zero counts once.
pub fn signed_cardinality(d: &IntSet) -> usize {
    match d.ambient() {
        Ambient::Cyclic => d.len(),
        _ => 2 * d.len() - usize::from(d.contains(0)),
    }
}

/// The image of `A ⊆ Z` under `Z → Z/tZ`.
pub fn project_mod_t(a: &IntSet, t: usize) -> Result<IntSet> {
    if t == 0 {
        return Err(Error::invalid("projection modulus must be positive"));
    }
    if a.ambient() == Ambient::Cyclic {
        return Err(Error::invalid("projection expects an integer set"));
    }
    IntSet::cyclic(t, a.iter().map(|x| x % t))
}

/// Raw quantities behind the interval-or-odd dichotomy for large almost sum-free sets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureStats {
    /// `min |A \ I|` over intervals `I ⊆ [N]` of the target length.
    pub min_exceptions: usize,
    pub even_count: usize,
    /// `1/2 - |A|/N`.
    pub eta: f64,
}

pub fn structure_stats(a: &IntSet, target_len: usize) -> Result<StructureStats> {
    if a.ambient() != Ambient::Interval {
        return Err(Error::invalid("structure statistics need a subset of [N]"));
    }
    let n = a.n();
    if target_len == 0 || target_len > n {
        return Err(Error::invalid(format!(
            "interval length {target_len} not in [1, {n}]"
        )));
    }
    // prefix[k] = |A ∩ [1, k]|
    let mut prefix = vec![0usize; n + 1];
    for k in 1..=n {
        prefix[k] = prefix[k - 1] + usize::from(a.contains(k));
    }
    let best_inside = (1..=n + 1 - target_len)
        .map(|s| prefix[s + target_len - 1] - prefix[s - 1])
        .max()
        .unwrap_or(0);
    Ok(StructureStats {
        min_exceptions: a.len() - best_inside,
        even_count: a.iter().filter(|x| x % 2 == 0).count(),
        eta: 0.5 - a.len() as f64 / n as f64,
    })
}

/// Outcome of the popular-difference inequality
/// `½|D(A, ε^{1/2}N)| + |A| ≤ N(1 + 2ε^{1/2})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarCheck {
    /// `εN² ≥` number of additive triples of `A`.
    pub premise: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn popular_difference_bound(a: &IntSet, eps: f64) -> Result<StarCheck> {
    if a.ambient() != Ambient::Interval {
        return Err(Error::invalid("expected a subset of [N]"));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    let n = a.n() as f64;
    let premise = eps * n * n >= count_additive_triples(a) as f64;
    let d = popular_differences(a, eps.sqrt() * n)?;
    let lhs = 0.5 * signed_cardinality(&d) as f64 + a.len() as f64;
    let rhs = n * (1.0 + 2.0 * eps.sqrt());
    Ok(StarCheck {
        premise,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// Graph on `A` joining `a, a'` when `a - a'` is not `K`-popular.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PopularityGraph {
    pub threshold: f64,
    /// Unordered edges.
    pub edges: u64,
    pub degrees: Vec<u64>,
}

impl PopularityGraph {
    pub fn new(a: &IntSet, threshold: f64) -> Self {
        let pop = DiffPopularity::new(a);
        let elems = a.elements();
        let degrees: Vec<u64> = elems
            .iter()
            .map(|&x| {
                elems
                    .iter()
                    .filter(|&&y| (pop.count(x as i64 - y as i64) as f64) < threshold)
                    .count() as u64
            })
            .collect();
        PopularityGraph {
            threshold,
            edges: degrees.iter().sum::<u64>() / 2,
            degrees,
        }
    }

    pub fn vertices_above(&self, degree: f64) -> usize {
        self.degrees.iter().filter(|&&d| d as f64 > degree).count()
    }
}

/// Checks the popularity-graph bounds at scale `ε` for `A ⊆ [N]`: with
/// `K = 32ε^{1/2}N` there are at most `64ε^{1/2}N²` edges and at most
/// `8ε^{1/4}N` vertices of degree above `16ε^{1/4}N`.
pub fn popularity_graph_bounds_hold(a: &IntSet, eps: f64) -> bool {
    let n = a.n() as f64;
    let g = PopularityGraph::new(a, 32.0 * eps.sqrt() * n);
    let q = eps.powf(0.25);
    g.edges as f64 <= 64.0 * eps.sqrt() * n * n
        && g.vertices_above(16.0 * q * n) as f64 <= 8.0 * q * n
}
