//! Exact counting of sum-free subsets.
//!
//! Universes are subsets of `{1..127}` handled as `u128` bitmasks. The
//! branch-and-bound counter fixes elements from the largest down. Once a
//! set `S` of large elements is chosen, a smaller candidate `y` is ruled out
//! exactly when `y = b − a` or `y = b/2` for some `a < b` in `S`; that
//! forbidden mask is updated with one shift per inclusion.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::sig6;
use crate::sets::{is_sum_free_mask, IntSet};

/// Largest universe the naive `2^k` scan accepts.
pub const NAIVE_LIMIT: usize = 26;
/// Largest universe the branch-and-bound counter accepts.
pub const BB_LIMIT: usize = 60;
/// Sum-free subsets visited before [`enumerate_sum_free`] gives up.
pub const ENUMERATION_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseKind {
    Full,
    Odd,
    UpperThird,
    Custom,
}

impl UniverseKind {
    pub fn build(self, n: usize) -> Option<IntSet> {
        match self {
            UniverseKind::Full => Some(IntSet::full_interval(n)),
            UniverseKind::Odd => Some(IntSet::odds(n)),
            UniverseKind::UpperThird => Some(IntSet::upper_third(n)),
            UniverseKind::Custom => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UniverseKind::Full => "full",
            UniverseKind::Odd => "odd",
            UniverseKind::UpperThird => "upper-third",
            UniverseKind::Custom => "custom",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Naive,
    BranchAndBound,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::BranchAndBound => "bb",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub n: usize,
    pub universe: UniverseKind,
    pub universe_size: usize,
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub count: BigUint,
    pub method: Method,
    pub node_visits: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn universe_mask(universe: &IntSet, limit: usize) -> Result<u128> {
    if universe.len() > limit {
        return Err(Error::Budget {
            size: universe.len(),
            limit,
        });
    }
    if universe.contains(0) {
        return Err(Error::invalid("counting universes are subsets of [N]"));
    }
    universe
        .to_mask()
        .ok_or_else(|| Error::invalid("counting universes must lie inside {1..127}"))
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(job)
}

/// Ground truth: tests every one of the `2^|universe|` subsets.
pub fn count_sum_free_naive(universe: &IntSet, workers: usize) -> Result<CountResult> {
    let start = Instant::now();
    universe_mask(universe, NAIVE_LIMIT)?;
    let elems = universe.elements();
    let k = elems.len();
    // split on the top bits, Gray-code walk through the rest
    let top = k.min(6);
    let low = k - top;
    let count: u64 = with_workers(workers, || {
        (0u64..1 << top)
            .into_par_iter()
            .map(|prefix| {
                let mut set = (0..top)
                    .filter(|b| prefix >> b & 1 == 1)
                    .fold(0u128, |m, b| m | 1 << elems[low + b]);
                let mut hits = u64::from(is_sum_free_mask(set));
                for i in 1u64..1 << low {
                    set ^= 1 << elems[i.trailing_zeros() as usize];
                    hits += u64::from(is_sum_free_mask(set));
                }
                hits
            })
            .sum()
    });
    Ok(CountResult {
        n: universe.n(),
        universe: UniverseKind::Custom,
        universe_size: k,
        count: BigUint::from(count),
        method: Method::Naive,
        node_visits: 1 << k,
        elapsed: start.elapsed(),
    })
}

/// A node of the search: candidates still open, elements chosen, and the
/// candidates ruled out by the chosen ones.
#[derive(Clone, Copy, Debug)]
struct Node {
    open: u128,
    chosen: u128,
    forbidden: u128,
}

impl Node {
    fn root(universe: u128) -> Self {
        Node {
            open: universe,
            chosen: 0,
            forbidden: 0,
        }
    }

    /// Splits on the largest open candidate: `(without x, with x)`, the
    /// latter absent if `x` is forbidden.
    #[inline]
    fn branch(self) -> (Node, Option<Node>) {
        let x = 127 - self.open.leading_zeros();
        let open = self.open & !(1u128 << x);
        let skip = Node { open, ..self };
        if self.forbidden >> x & 1 == 1 {
            return (skip, None);
        }
        let half = if x % 2 == 0 { 1u128 << (x / 2) } else { 0 };
        let forbidden = self.forbidden | (self.chosen >> x) | half;
        let take = Node {
            open: open & !forbidden,
            chosen: self.chosen | 1 << x,
            forbidden,
        };
        (skip, Some(take))
    }

    /// Every extension by open candidates stays sum-free.
    #[inline]
    fn free(self) -> bool {
        is_sum_free_mask(self.chosen | self.open)
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    count: u128,
    visits: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            count: self.count + o.count,
            visits: self.visits + o.visits,
        }
    }
}

fn count_subtree(node: Node) -> Tally {
    if node.open == 0 || node.free() {
        return Tally {
            count: 1u128 << node.open.count_ones(),
            visits: 1,
        };
    }
    let (skip, take) = node.branch();
    let mut t = count_subtree(skip);
    if let Some(take) = take {
        t = t + count_subtree(take);
    }
    t.visits += 1;
    t
}

/// Expands the top `depth` levels, returning independent subproblems and the
/// tally of nodes resolved on the way.
fn split(node: Node, depth: u32, out: &mut Vec<Node>) -> Tally {
    if node.open == 0 || node.free() {
        return count_subtree(node);
    }
    if depth == 0 {
        out.push(node);
        return Tally::default();
    }
    let (skip, take) = node.branch();
    let mut t = split(skip, depth - 1, out);
    if let Some(take) = take {
        t = t + split(take, depth - 1, out);
    }
    t.visits += 1;
    t
}

fn effective_workers(workers: usize) -> usize {
    if workers == 0 {
        rayon::current_num_threads().max(1)
    } else {
        workers
    }
}

/// Exact count by branch and bound. The result, including `node_visits`, does
/// not depend on `workers` (0 means all available threads).
pub fn count_sum_free_bb(universe: &IntSet, workers: usize) -> Result<CountResult> {
    let start = Instant::now();
    let mask = universe_mask(universe, BB_LIMIT)?;
    let w = effective_workers(workers);
    let depth = usize::BITS - (w - 1).leading_zeros() + 3;
    let mut tasks = Vec::new();
    let head = split(Node::root(mask), depth, &mut tasks);
    let tally = with_workers(w, || {
        tasks
            .par_iter()
            .map(|&t| count_subtree(t))
            .reduce(Tally::default, |a, b| a + b)
    }) + head;
    Ok(CountResult {
        n: universe.n(),
        universe: UniverseKind::Custom,
        universe_size: universe.len(),
        count: BigUint::from(tally.count),
        method: Method::BranchAndBound,
        node_visits: tally.visits,
        elapsed: start.elapsed(),
    })
}

/// Counts over one of the named universes of `[n]`.
pub fn count_universe(
    n: usize,
    kind: UniverseKind,
    method: Method,
    workers: usize,
) -> Result<CountResult> {
    let universe = kind
        .build(n)
        .ok_or_else(|| Error::invalid("custom universes need an explicit set"))?;
    let mut result = match method {
        Method::Naive => count_sum_free_naive(&universe, workers)?,
        Method::BranchAndBound => count_sum_free_bb(&universe, workers)?,
    };
    result.universe = kind;
    Ok(result)
}

fn enumerate_node<F: FnMut(u128)>(
    node: Node,
    visitor: &mut F,
    visited: &mut u64,
    limit: u64,
) -> Result<()> {
    if node.open == 0 {
        if *visited == limit {
            return Err(Error::PartialEnumeration {
                visited: *visited,
                limit,
            });
        }
        *visited += 1;
        visitor(node.chosen);
        return Ok(());
    }
    let (skip, take) = node.branch();
    enumerate_node(skip, visitor, visited, limit)?;
    if let Some(take) = take {
        enumerate_node(take, visitor, visited, limit)?;
    }
    Ok(())
}

/// Calls `visitor` with the bitmask of every sum-free subset of `universe`
/// (bit `k` set for element `k`). Larger elements are decided first and the
/// branch without an element comes before the branch with it, so `[2]` yields
/// `∅, {1}, {2}`. Returns the number of visits.
pub fn enumerate_sum_free<F: FnMut(u128)>(universe: &IntSet, visitor: F) -> Result<u64> {
    enumerate_sum_free_limited(universe, ENUMERATION_LIMIT, visitor)
}

pub fn enumerate_sum_free_limited<F: FnMut(u128)>(
    universe: &IntSet,
    limit: u64,
    mut visitor: F,
) -> Result<u64> {
    let mask = universe_mask(universe, BB_LIMIT)?;
    let mut visited = 0;
    enumerate_node(Node::root(mask), &mut visitor, &mut visited, limit)?;
    Ok(visited)
}

/// Unordered parallel enumeration; `visitor` may run concurrently.
pub fn enumerate_sum_free_par<F: Fn(u128) + Sync>(
    universe: &IntSet,
    workers: usize,
    visitor: F,
) -> Result<u64> {
    let mask = universe_mask(universe, BB_LIMIT)?;
    let w = effective_workers(workers);
    let mut tasks = Vec::new();
    let mut frontier = vec![Node::root(mask)];
    // breadth-first expansion until there is enough work to share
    while !frontier.is_empty() && tasks.len() + frontier.len() < 8 * w {
        let mut next = Vec::new();
        for node in frontier {
            if node.open == 0 {
                tasks.push(node);
            } else {
                let (skip, take) = node.branch();
                next.push(skip);
                next.extend(take);
            }
        }
        frontier = next;
    }
    tasks.extend(frontier);
    with_workers(w, || {
        tasks
            .par_iter()
            .map(|&t| {
                let mut visited = 0;
                let mut f = |m| visitor(m);
                enumerate_node(t, &mut f, &mut visited, u64::MAX).map(|_| visited)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    /// `|SF(N)|`.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub total: BigUint,
    /// Sum-free sets of odd numbers: `2^{⌈N/2⌉}`.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub odd_only: BigUint,
    /// Sum-free subsets of `{⌈(N+1)/3⌉..N}`.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub upper_third: BigUint,
    /// Sum-free subsets of the odd numbers in the upper third.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub overlap: BigUint,
    /// Sum-free sets in neither class.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub exceptional: BigUint,
    pub ratio: f64,
    pub exceptional_ratio: f64,
}

/// `value / 2^{n/2}`.
pub fn normalized(value: &BigUint, n: usize) -> f64 {
    value.to_f64().expect("finite") / 2f64.powf(n as f64 / 2.0)
}

pub fn census_classify(n: usize, workers: usize) -> Result<CensusRecord> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let total = count_sum_free_bb(&IntSet::full_interval(n), workers)?.count;
    let upper = IntSet::upper_third(n);
    let upper_third = count_sum_free_bb(&upper, workers)?.count;
    let overlap = count_sum_free_bb(&upper.intersection(&IntSet::odds(n))?, workers)?.count;
    let odd_only = BigUint::from(1u8) << n.div_ceil(2);
    let exceptional = BigInt::from(total.clone())
        - BigInt::from(odd_only.clone())
        - BigInt::from(upper_third.clone())
        + BigInt::from(overlap.clone());
    let exceptional = exceptional
        .to_biguint()
        .expect("the two classes overlap exactly in `overlap`");
    Ok(CensusRecord {
        n,
        ratio: normalized(&total, n),
        exceptional_ratio: normalized(&exceptional, n),
        total,
        odd_only,
        upper_third,
        overlap,
        exceptional,
    })
}

/// The four census counts obtained by classifying every sum-free set one by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectCensus {
    pub total: u64,
    pub odd_only: u64,
    pub upper_third: u64,
    pub overlap: u64,
}

pub fn census_by_enumeration(n: usize) -> Result<DirectCensus> {
    let odd_mask = IntSet::odds(n)
        .to_mask()
        .ok_or_else(|| Error::invalid("N too large"))?;
    let upper_mask = IntSet::upper_third(n)
        .to_mask()
        .expect("inside odds' range");
    let mut c = DirectCensus {
        total: 0,
        odd_only: 0,
        upper_third: 0,
        overlap: 0,
    };
    enumerate_sum_free(&IntSet::full_interval(n), |s| {
        let odd = s & !odd_mask == 0;
        let upper = s & !upper_mask == 0;
        c.total += 1;
        c.odd_only += u64::from(odd);
        c.upper_third += u64::from(upper);
        c.overlap += u64::from(odd && upper);
    })?;
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioPoint {
    pub n: usize,
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub total: BigUint,
    /// `|SF(N)| / 2^{N/2}`.
    pub ratio: f64,
    pub parity: Parity,
}

pub fn ratio_series(n_min: usize, n_max: usize, workers: usize) -> Result<Vec<RatioPoint>> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::invalid(format!("bad range {n_min}..={n_max}")));
    }
    (n_min..=n_max)
        .map(|n| {
            let total = count_sum_free_bb(&IntSet::full_interval(n), workers)?.count;
            Ok(RatioPoint {
                n,
                ratio: normalized(&total, n),
                parity: Parity::of(n),
                total,
            })
        })
        .collect()
}

/// Ratios along one parity class, in increasing `N`.
pub fn parity_class(series: &[RatioPoint], parity: Parity) -> Vec<(usize, f64)> {
    series
        .iter()
        .filter(|p| p.parity == parity)
        .map(|p| (p.n, p.ratio))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub total: BigUint,
    /// `log₂|SF(N)| / N`.
    pub rate: f64,
    /// `log₂(max ratio) / N`.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    /// Every rate lies in `[1/2, 1/2 + slack]`.
    pub within_bounds: bool,
    /// Rates strictly decrease along the list.
    pub decreasing: bool,
}

/// `log₂|SF(N)|/N` along `n_list`, checked against `1/2 + log₂(ratio_max)/N`.
pub fn prop12_check(n_list: &[usize], workers: usize) -> Result<GrowthReport> {
    let totals = n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::invalid("N must be at least 1"));
            }
            Ok((
                n,
                count_sum_free_bb(&IntSet::full_interval(n), workers)?.count,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let ratio_max = totals
        .iter()
        .map(|(n, t)| normalized(t, *n))
        .fold(f64::NEG_INFINITY, f64::max);
    let rows: Vec<GrowthRow> = totals
        .into_iter()
        .map(|(n, total)| GrowthRow {
            n,
            rate: total.to_f64().expect("finite").log2() / n as f64,
            slack: ratio_max.log2() / n as f64,
            total,
        })
        .collect();
    let within_bounds = rows
        .iter()
        .all(|r| r.rate >= 0.5 && r.rate <= 0.5 + r.slack);
    let decreasing = rows.windows(2).all(|w| w[1].rate < w[0].rate);
    Ok(GrowthReport {
        rows,
        within_bounds,
        decreasing,
    })
}

pub const CENSUS_HEADER: &str =
    "N,total,odd_only,upper_third,overlap,exceptional,ratio,exceptional_ratio";

pub fn census_csv(records: &[CensusRecord]) -> String {
    let mut out = String::from(CENSUS_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            r.total,
            r.odd_only,
            r.upper_third,
            r.overlap,
            r.exceptional,
            sig6(r.ratio),
            sig6(r.exceptional_ratio)
        ));
    }
    out
}

impl CountResult {
    pub fn is_zero(&self) -> bool {
        self.count.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: usize) -> u64 {
        count_sum_free_naive(&IntSet::full_interval(n), 2)
            .unwrap()
            .count
            .to_u64()
            .unwrap()
    }

    fn bb(u: &IntSet) -> u64 {
        count_sum_free_bb(u, 2).unwrap().count.to_u64().unwrap()
    }

    #[test]
    fn naive_small_counts() {
        assert_eq!(naive(1), 2);
        assert_eq!(naive(3), 6);
        assert_eq!(naive(4), 9);
        assert_eq!(
            count_sum_free_naive(&IntSet::empty_interval(3), 1)
                .unwrap()
                .count,
            BigUint::from(1u8)
        );
    }

    #[test]
    fn naive_budget() {
        let big = IntSet::full_interval(27);
        assert!(matches!(
            count_sum_free_naive(&big, 1),
            Err(Error::Budget {
                size: 27,
                limit: 26
            })
        ));
    }

    #[test]
    fn bb_matches_naive_on_full_intervals() {
        for n in 1..=16 {
            assert_eq!(bb(&IntSet::full_interval(n)), naive(n), "N = {n}");
        }
    }

    #[test]
    fn bb_on_odds_counts_every_subset() {
        for n in [1, 2, 9, 20, 41, 80] {
            let c = bb(&IntSet::odds(n));
            assert_eq!(c, 1u64 << n.div_ceil(2), "N = {n}");
        }
    }

    #[test]
    fn bb_rejects_large_or_out_of_range_universes() {
        let wide = IntSet::interval(200, [150]).unwrap();
        assert!(count_sum_free_bb(&wide, 1).is_err());
        let many = IntSet::full_interval(61);
        assert!(matches!(
            count_sum_free_bb(&many, 1),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn bb_independent_of_workers() {
        let u = IntSet::full_interval(30);
        let one = count_sum_free_bb(&u, 1).unwrap();
        let four = count_sum_free_bb(&u, 4).unwrap();
        let max = count_sum_free_bb(&u, 0).unwrap();
        assert_eq!(one.count, four.count);
        assert_eq!(one.node_visits, four.node_visits);
        assert_eq!(one.count, max.count);
        assert_eq!(one.node_visits, max.node_visits);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let mut seen = Vec::new();
        let n = enumerate_sum_free(&IntSet::full_interval(2), |m| seen.push(m)).unwrap();
        assert_eq!(n, 3);
        assert_eq!(seen, vec![0, 1 << 1, 1 << 2]);

        let mut seen = Vec::new();
        let n = enumerate_sum_free(&IntSet::empty_interval(5), |m| seen.push(m)).unwrap();
        assert_eq!((n, seen), (1, vec![0]));

        assert_eq!(
            enumerate_sum_free(&IntSet::full_interval(4), |_| {}).unwrap(),
            9
        );
    }

    #[test]
    fn enumeration_budget() {
        let err = enumerate_sum_free_limited(&IntSet::full_interval(10), 50, |_| {}).unwrap_err();
        assert!(matches!(
            err,
            Error::PartialEnumeration {
                visited: 50,
                limit: 50
            }
        ));
    }

    #[test]
    fn parallel_enumeration_visits_everything() {
        use std::sync::atomic::{AtomicU64, Ordering};
        let u = IntSet::full_interval(24);
        let sum = AtomicU64::new(0);
        let visits = enumerate_sum_free_par(&u, 4, |m| {
            assert!(is_sum_free_mask(m));
            sum.fetch_add(1, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(visits, sum.load(Ordering::Relaxed));
        assert_eq!(visits, bb(&u));
    }

    #[test]
    fn census_small() {
        let r = census_classify(4, 1).unwrap();
        assert_eq!(r.total, BigUint::from(9u8));
        assert_eq!(r.odd_only, BigUint::from(4u8));
        assert_eq!(r.upper_third, BigUint::from(6u8));
        assert_eq!(r.overlap, BigUint::from(2u8));
        assert_eq!(r.exceptional, BigUint::from(1u8));

        let r = census_classify(1, 1).unwrap();
        assert_eq!(
            (r.total, r.odd_only, r.upper_third, r.overlap, r.exceptional),
            (2u8.into(), 2u8.into(), 2u8.into(), 2u8.into(), 0u8.into())
        );
        assert!(census_classify(0, 1).is_err());
    }

    #[test]
    fn census_exceptional_set_at_four() {
        let mut exceptional = Vec::new();
        let odd = IntSet::odds(4).to_mask().unwrap();
        let upper = IntSet::upper_third(4).to_mask().unwrap();
        enumerate_sum_free(&IntSet::full_interval(4), |s| {
            if s & !odd != 0 && s & !upper != 0 {
                exceptional.push(s);
            }
        })
        .unwrap();
        assert_eq!(exceptional, vec![1 << 1 | 1 << 4]);
    }

    #[test]
    fn census_matches_enumeration() {
        for n in 1..=24 {
            let r = census_classify(n, 2).unwrap();
            let d = census_by_enumeration(n).unwrap();
            assert_eq!(r.total, d.total.into());
            assert_eq!(r.odd_only, d.odd_only.into());
            assert_eq!(r.upper_third, d.upper_third.into());
            assert_eq!(r.overlap, d.overlap.into());
        }
    }

    #[test]
    fn ratio_examples() {
        let s = ratio_series(3, 4, 1).unwrap();
        assert!((s[0].ratio - 6.0 / 2f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(s[1].ratio, 2.25);
        assert_eq!(s[0].parity, Parity::Odd);
        assert!(ratio_series(5, 4, 1).is_err());
    }

    #[test]
    fn growth_examples() {
        let r = prop12_check(&[4, 10], 1).unwrap();
        assert!((r.rows[0].rate - 9f64.log2() / 4.0).abs() < 1e-12);
        // |SF(10)| = 151 from the naive scan
        assert!((r.rows[1].rate - 151f64.log2() / 10.0).abs() < 1e-12);
        assert!(r.within_bounds && r.decreasing);
    }

    #[test]
    fn monotone_totals() {
        let s = ratio_series(1, 30, 2).unwrap();
        for w in s.windows(2) {
            assert!(w[1].total >= w[0].total);
        }
    }

    #[test]
    fn csv_rows() {
        let csv = census_csv(&[census_classify(4, 1).unwrap()]);
        assert_eq!(
            csv,
            "N,total,odd_only,upper_third,overlap,exceptional,ratio,exceptional_ratio\n\
             4,9,4,6,2,1,2.25,0.25\n"
        );
    }
}
