//! Granularization of a set of residues along a progression partition.
//!
//! For a step `d` and a cell count `M`, `Z/pZ` splits into `M` progressions
//! `I_i = {λd : ip/M ≤ λ < (i+1)p/M}` of length `L` or `L − 1`, where
//! `L = ⌈p/M⌉`. The granularization `A'` of `A` is the union of the cells in
//! which `A` has density at least `ε₁`. When `d` is a *good length*, i.e.
//! `‖dr/p‖ ≤ (4L)^{-1} (δp/|Â(r)|)^{1/2}` on the large spectrum of `A`, the set
//! `A'` inherits the additive behaviour of `A`; the verifiers below measure
//! this on concrete instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{count_additive_triples, find_additive_triple, Ambient, IntSet};
use crate::spectral::{
    circle_dist, dft, kernel_g, large_spectrum, LargeSpectrum, PrimeContext, Spectrum,
};

/// A nonnegative real held as an exact rational, for tie-free threshold tests.
#[derive(Clone, Debug)]
pub struct ExactFraction(BigRational);

impl ExactFraction {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::invalid(format!(
                "{value} is not a finite nonnegative real"
            )));
        }
        Ok(ExactFraction(BigRational::from_f64(value).expect("finite")))
    }

    /// `count ≥ value · size`, exactly.
    pub fn count_reaches(&self, count: u64, size: u64) -> bool {
        let lhs = BigInt::from(count) * self.0.denom();
        let rhs = self.0.numer() * BigInt::from(size);
        lhs >= rhs
    }

    /// `count ≤ value · size`, exactly.
    pub fn count_within(&self, count: u64, size: u64) -> bool {
        BigInt::from(count) * self.0.denom() <= self.0.numer() * BigInt::from(size)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GranParams {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    /// `|A|/p`.
    pub alpha: f64,
    pub m: usize,
    pub l: usize,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} = {v} must lie in (0, 1)")))
    }
}

impl GranParams {
    pub fn new(eps1: f64, eps2: f64, eps3: f64, alpha: f64, m: usize, p: usize) -> Result<Self> {
        check_unit("eps1", eps1)?;
        check_unit("eps2", eps2)?;
        check_unit("eps3", eps3)?;
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!(
                "alpha = {alpha} must lie in [0, 1]"
            )));
        }
        if m == 0 || m > p {
            return Err(Error::invalid(format!("M = {m} must lie in [1, {p}]")));
        }
        Ok(GranParams {
            eps1,
            eps2,
            eps3,
            alpha,
            m,
            l: p.div_ceil(m),
        })
    }

    /// `ε₁ = ε`, `ε₂ = ε²/144`, `ε₃ = ε²/80`: the choice under which a good
    /// length makes `A'` almost sum-free.
    pub fn linked(eps: f64, alpha: f64, m: usize, p: usize) -> Result<Self> {
        Self::new(eps, eps * eps / 144.0, eps * eps / 80.0, alpha, m, p)
    }

    /// `ε = (log N)^{-1/11}`, `M = ⌊N exp(−(log N)^{1/12})⌋`. Only meaningful
    /// for astronomically large `N`.
    pub fn asymptotic(n: usize, alpha: f64, p: usize) -> Result<Self> {
        let ln = (n.max(3) as f64).ln();
        let eps = ln.powf(-1.0 / 11.0);
        let m = (n as f64 * (-ln.powf(1.0 / 12.0)).exp()).floor().max(1.0) as usize;
        Self::linked(eps, alpha, m.min(p), p)
    }

    /// `M = ⌈p/16⌉`, giving `L = 16` (or less for tiny `p`).
    pub fn default_m(p: usize) -> usize {
        p.div_ceil(16)
    }

    /// `δ = ε₁² ε₂ ε₃^{1/2} α^{-1/2} / 16`; infinite for `α = 0`.
    pub fn delta(&self) -> f64 {
        self.eps1 * self.eps1 * self.eps2 * self.eps3.sqrt() / (16.0 * self.alpha.sqrt())
    }
}

/// Sufficient condition `p > (4L)^{256 α² ε₁⁻⁴ ε₂⁻² ε₃⁻¹}` for a good length
/// to exist, compared in the log domain.
pub fn good_length_guaranteed(p: usize, params: &GranParams) -> bool {
    let exponent =
        256.0 * params.alpha.powi(2) / (params.eps1.powi(4) * params.eps2.powi(2) * params.eps3);
    (p as f64).ln() > exponent * ((4 * params.l) as f64).ln()
}

#[derive(Clone, Debug)]
pub struct ProgressionPartition {
    p: usize,
    d: usize,
    /// `starts[i] = ⌈ip/M⌉`; cell `i` is `{λd : starts[i] ≤ λ < starts[i+1]}`.
    starts: Vec<usize>,
    cell_of: Vec<u32>,
}

pub fn partition_progressions(
    ctx: &PrimeContext,
    d: usize,
    m: usize,
) -> Result<ProgressionPartition> {
    let p = ctx.p();
    if d % p == 0 {
        return Err(Error::invalid("progression step d must be nonzero mod p"));
    }
    if m == 0 || m > p {
        return Err(Error::invalid(format!("M = {m} must lie in [1, {p}]")));
    }
    let d = d % p;
    let starts: Vec<usize> = (0..=m).map(|i| (i * p).div_ceil(m)).collect();
    let mut cell_of = vec![0u32; p];
    for (i, w) in starts.windows(2).enumerate() {
        for lambda in w[0]..w[1] {
            cell_of[lambda * d % p] = i as u32;
        }
    }
    Ok(ProgressionPartition {
        p,
        d,
        starts,
        cell_of,
    })
}

impl ProgressionPartition {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn l(&self) -> usize {
        self.p.div_ceil(self.m())
    }

    pub fn cell_len(&self, i: usize) -> usize {
        self.starts[i + 1] - self.starts[i]
    }

    /// Residues of cell `i` in progression order.
    pub fn cell(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (self.starts[i]..self.starts[i + 1]).map(move |lambda| lambda * self.d % self.p)
    }

    pub fn cell_index(&self, x: usize) -> usize {
        self.cell_of[x % self.p] as usize
    }

    pub fn cell_set(&self, i: usize) -> IntSet {
        IntSet::cyclic(self.p, self.cell(i)).expect("residues")
    }
}

#[derive(Clone, Debug)]
pub struct Granularization {
    partition: ProgressionPartition,
    eps1: f64,
    /// `|A ∩ I_i|` per cell.
    counts: Vec<usize>,
    cells: Vec<usize>,
    aprime: IntSet,
}

pub fn granularize(a: &IntSet, part: &ProgressionPartition, eps1: f64) -> Result<Granularization> {
    if a.ambient() != Ambient::Cyclic || a.universe() != part.p() {
        return Err(Error::invalid("granularization needs a subset of Z/pZ"));
    }
    check_unit("eps1", eps1)?;
    let threshold = ExactFraction::new(eps1)?;
    let mut counts = vec![0usize; part.m()];
    for x in a {
        counts[part.cell_index(x)] += 1;
    }
    let cells: Vec<usize> = (0..part.m())
        .filter(|&i| threshold.count_reaches(counts[i] as u64, part.cell_len(i) as u64))
        .collect();
    let aprime =
        IntSet::cyclic(part.p(), cells.iter().flat_map(|&i| part.cell(i))).expect("residues");
    Ok(Granularization {
        partition: part.clone(),
        eps1,
        counts,
        cells,
        aprime,
    })
}

impl Granularization {
    pub fn partition(&self) -> &ProgressionPartition {
        &self.partition
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    /// The dense cells `T ⊆ Z/MZ`.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn cell_count(&self, i: usize) -> usize {
        self.counts[i]
    }

    /// `A'`.
    pub fn aprime(&self) -> &IntSet {
        &self.aprime
    }

    /// `|A' \ A|`: cell points added by granularizing.
    pub fn filled_len(&self) -> usize {
        self.aprime.len() - self.cells.iter().map(|&i| self.counts[i]).sum::<usize>()
    }

    /// `|A \ A'|`: points of `A` in sparse cells.
    pub fn dropped_len(&self) -> usize {
        let total: usize = self.counts.iter().sum();
        total - self.cells.iter().map(|&i| self.counts[i]).sum::<usize>()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodLengthReport {
    pub d: usize,
    pub is_good: bool,
    /// `max_{r∈R} ‖dr/p‖ / ((4L)^{-1}(δp/|Â(r)|)^{1/2})`; zero for empty `R`.
    pub worst_ratio: f64,
    pub large: LargeSpectrum,
}

/// The two sides of the good-length inequality at frequency `r`.
fn good_length_sides(s: &Spectrum, d: usize, r: usize, l: usize, delta: f64) -> (f64, f64) {
    let p = s.context().p();
    let lhs = circle_dist(d * r % p, p);
    let rhs = (delta * p as f64 / s.at(r).norm()).sqrt() / (4 * l) as f64;
    (lhs, rhs)
}

fn check_against(
    s: &Spectrum,
    large: &LargeSpectrum,
    d: usize,
    l: usize,
    delta: f64,
) -> (bool, f64) {
    large
        .members
        .iter()
        .fold((true, 0.0f64), |(good, worst), &r| {
            let (lhs, rhs) = good_length_sides(s, d, r, l, delta);
            (good && lhs <= rhs, worst.max(lhs / rhs))
        })
}

fn large_spectrum_for(s: &Spectrum, params: &GranParams) -> Result<LargeSpectrum> {
    let delta = params.delta();
    if delta.is_infinite() {
        return Ok(LargeSpectrum {
            delta,
            members: Vec::new(),
        });
    }
    large_spectrum(s, delta)
}

pub fn good_length_check(s: &Spectrum, d: usize, params: &GranParams) -> Result<GoodLengthReport> {
    let p = s.context().p();
    if d % p == 0 {
        return Err(Error::invalid("length d must be nonzero mod p"));
    }
    let large = large_spectrum_for(s, params)?;
    let (is_good, worst_ratio) = check_against(s, &large, d % p, params.l, params.delta());
    Ok(GoodLengthReport {
        d: d % p,
        is_good,
        worst_ratio,
        large,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodLengthSearch {
    pub best: GoodLengthReport,
    pub found_good: bool,
    /// Whether `p` exceeds the threshold that guarantees a good length.
    pub existence_guaranteed: bool,
}

/// Scans every `d ∈ {1..p−1}` and keeps the one with the smallest worst ratio
/// (good lengths first, then smallest `d`). Independent of the thread count.
pub fn good_length_search(s: &Spectrum, params: &GranParams) -> Result<GoodLengthSearch> {
    let p = s.context().p();
    if p < 2 {
        return Err(Error::invalid("Z/pZ has no nonzero step"));
    }
    let large = large_spectrum_for(s, params)?;
    let delta = params.delta();
    let scan = |d: usize| {
        let (good, ratio) = check_against(s, &large, d, params.l, delta);
        (good, ratio, d)
    };
    let better = |a: (bool, f64, usize), b: (bool, f64, usize)| {
        let key = |x: &(bool, f64, usize)| (!x.0, x.1, x.2);
        let (ka, kb) = (key(&a), key(&b));
        match ka
            .0
            .cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.cmp(&kb.2))
        {
            std::cmp::Ordering::Greater => b,
            _ => a,
        }
    };
    let (is_good, worst_ratio, d) = (1..p)
        .into_par_iter()
        .map(scan)
        .reduce_with(better)
        .expect("p >= 2");
    Ok(GoodLengthSearch {
        best: GoodLengthReport {
            d,
            is_good,
            worst_ratio,
            large,
        },
        found_good: is_good,
        existence_guaranteed: good_length_guaranteed(p, params),
    })
}

/// Convolution of two sets of residues, as exact representation counts.
pub fn convolve_sets(a: &IntSet, b: &IntSet) -> Vec<u64> {
    let p = a.universe();
    let mut reps = vec![0u64; p];
    let bs = b.elements();
    for x in a {
        for &y in &bs {
            reps[(x + y) % p] += 1;
        }
    }
    reps
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop3Report {
    /// `|{x : (A'∗A')(x) ≥ ε₂p, x ∉ A + A}|`.
    pub bad_count: usize,
    /// `ε₃p`.
    pub bound: f64,
    /// Whether the count was held to the bound (only for a good length).
    pub asserted: bool,
}

/// Points popular in `A' + A'` that `A + A` misses.
pub fn verify_prop3(
    a: &IntSet,
    g: &Granularization,
    params: &GranParams,
    d_is_good: bool,
) -> Result<Prop3Report> {
    let p = g.partition().p();
    if a.ambient() != Ambient::Cyclic || a.universe() != p {
        return Err(Error::invalid("expected a subset of Z/pZ"));
    }
    let popular = ExactFraction::new(params.eps2)?;
    let sums = convolve_sets(a, a);
    let aprime_reps = convolve_sets(g.aprime(), g.aprime());
    let bad_count = (0..p)
        .filter(|&x| popular.count_reaches(aprime_reps[x], p as u64) && sums[x] == 0)
        .count();
    let bound = params.eps3 * p as f64;
    if d_is_good {
        assert!(
            ExactFraction::new(params.eps3)?.count_within(bad_count as u64, p as u64),
            "{bad_count} bad points exceed eps3 * p = {bound} for a good length"
        );
    }
    Ok(Prop3Report {
        bad_count,
        bound,
        asserted: d_is_good,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop4Report {
    /// Ordered additive pairs of `A'` in `Z/pZ`.
    pub triples: u64,
    /// `εp²`.
    pub bound: f64,
    pub holds: bool,
    pub asserted: bool,
}

/// Triples of `A'` against `εp²`. Held to the bound only when `A` is sum-free
/// in `Z/pZ`, the parameters are linked to `ε`, and `d` is a good length.
pub fn verify_prop4(
    a: &IntSet,
    g: &Granularization,
    params: &GranParams,
    eps: f64,
    d_is_good: bool,
) -> Result<Prop4Report> {
    let p = g.partition().p();
    if a.ambient() != Ambient::Cyclic || a.universe() != p {
        return Err(Error::invalid("expected a subset of Z/pZ"));
    }
    let triples = count_additive_triples(g.aprime());
    let bound = eps * (p * p) as f64;
    let holds = ExactFraction::new(eps)?.count_within(triples, (p * p) as u64);
    let linked =
        params.eps1 == eps && params.eps2 == eps * eps / 144.0 && params.eps3 == eps * eps / 80.0;
    let asserted = d_is_good && linked && find_additive_triple(a).is_none();
    if asserted {
        assert!(holds, "A' has {triples} triples, above eps p^2 = {bound}");
    }
    Ok(Prop4Report {
        triples,
        bound,
        holds,
        asserted,
    })
}

/// `a₁(n) = (2L−1)^{-1} Σ_{|j|<L} A(n − jd)`, the average of `A` over the
/// symmetric progression `P = {−(L−1)d, …, (L−1)d}` around `n`.
pub fn smoothed_indicator(a: &IntSet, d: usize, l: usize) -> Vec<f64> {
    let p = a.universe();
    let width = (2 * l - 1) as f64;
    (0..p)
        .map(|n| {
            let hits = (0..2 * l - 1)
                .filter(|&k| {
                    // j = k − (L − 1)
                    let shift = (k + p * l - (l - 1)) % p * d % p;
                    a.contains((n + p - shift) % p)
                })
                .count();
            hits as f64 / width
        })
        .collect()
}

/// `sup_x |Â(x)| |1 − g(x)²|` for the kernel of step `d` and length `L`.
pub fn kernel_error_sup(s: &Spectrum, d: usize, l: usize) -> Result<f64> {
    let ctx = s.context();
    (0..ctx.p()).try_fold(0.0f64, |sup, x| {
        let g = kernel_g(ctx, d, l, x)?;
        Ok(sup.max(s.at(x).norm() * (1.0 - g * g).abs()))
    })
}

/// Measurements of the smoothing argument for one `(A, d)`.
#[derive(Clone, Debug, Serialize)]
pub struct SmoothingCheck {
    /// `sup_x |Â(x)||1 − g(x)²|`.
    pub kernel_sup: f64,
    /// `δp`.
    pub kernel_bound: f64,
    /// `Σ_n |(A∗A)(n) − (a₁∗a₁)(n)|²`.
    pub error_sum: f64,
    /// `αδ²p³`.
    pub error_bound: f64,
    /// `min_{n∈A'} a₁(n)`, to compare with `ε₁/4`.
    pub min_smoothed_on_aprime: Option<f64>,
}

pub fn smoothing_check(
    a: &IntSet,
    s: &Spectrum,
    g: &Granularization,
    params: &GranParams,
) -> Result<SmoothingCheck> {
    let p = s.context().p();
    let d = g.partition().d();
    let l = params.l;
    let a1 = smoothed_indicator(a, d, l);
    let a1a1 = crate::spectral::convolve(&a1, &a1)?;
    let aa = convolve_sets(a, a);
    let error_sum = (0..p).map(|n| (aa[n] as f64 - a1a1[n]).powi(2)).sum();
    let delta = params.delta();
    let pf = p as f64;
    Ok(SmoothingCheck {
        kernel_sup: kernel_error_sup(s, d, l)?,
        kernel_bound: delta * pf,
        error_sum,
        error_bound: params.alpha * delta * delta * pf * pf * pf,
        min_smoothed_on_aprime: g.aprime().iter().map(|n| a1[n]).reduce(f64::min),
    })
}

/// The set `F ⊇ A` obtained from a granularization of `A ⊆ [N]`, together
/// with everything measured along the way.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub params: GranParams,
    pub search: GoodLengthSearch,
    pub granularization: Granularization,
    /// `(A' ∩ [N]) ∪ (A \ A')`.
    pub member: IntSet,
    /// `A \ A'`.
    pub added: IntSet,
    pub prop3: Prop3Report,
    pub prop4: Prop4Report,
}

impl FamilyWitness {
    /// No strictly good length exists, so the best available `d` was used.
    pub fn heuristic(&self) -> bool {
        !self.search.found_good
    }

    pub fn report(&self) -> GranularizationReport {
        let g = &self.granularization;
        let best = &self.search.best;
        GranularizationReport {
            p: g.partition().p(),
            d: g.partition().d(),
            m: self.params.m,
            l: self.params.l,
            eps1: self.params.eps1,
            eps2: self.params.eps2,
            eps3: self.params.eps3,
            delta: self.params.delta(),
            k: best.large.k(),
            is_good: best.is_good,
            worst_ratio: best.worst_ratio,
            aprime_size: g.aprime().len(),
            added_size: self.added.len(),
            triples_aprime: self.prop4.triples,
            bad_count: self.prop3.bad_count,
            bound: self.prop3.bound,
            regime: if self.heuristic() {
                "heuristic"
            } else {
                "good-length"
            },
            existence_guaranteed: self.search.existence_guaranteed,
        }
    }
}

/// Serialized summary of a [`FamilyWitness`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GranularizationReport {
    pub p: usize,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub delta: f64,
    pub k: usize,
    pub is_good: bool,
    pub worst_ratio: f64,
    pub aprime_size: usize,
    pub added_size: usize,
    pub triples_aprime: u64,
    pub bad_count: usize,
    pub bound: f64,
    /// `"good-length"` or `"heuristic"` (best available `d`, not a good length).
    pub regime: &'static str,
    pub existence_guaranteed: bool,
}

/// Granularizes a sum-free `A ⊆ [N]` with linked parameters and returns the
/// covering set. `m` defaults to [`GranParams::default_m`].
pub fn cover_in_family(
    a: &IntSet,
    ctx: &PrimeContext,
    eps: f64,
    m: Option<usize>,
) -> Result<FamilyWitness> {
    cover_with(a, ctx, eps, None, m)
}

/// As [`cover_in_family`], with `ε₂, ε₃` overriding the linked values.
pub fn cover_with(
    a: &IntSet,
    ctx: &PrimeContext,
    eps: f64,
    eps23: Option<(f64, f64)>,
    m: Option<usize>,
) -> Result<FamilyWitness> {
    if a.ambient() != Ambient::Interval {
        return Err(Error::invalid("expected a subset of [N]"));
    }
    if let Some(t) = find_additive_triple(a) {
        return Err(Error::NotSumFree {
            x: t.x,
            y: t.y,
            z: t.z,
        });
    }
    let p = ctx.p();
    let n = a.n();
    let residues = a.embed_mod(p)?;
    let alpha = a.len() as f64 / p as f64;
    let m = m.unwrap_or_else(|| GranParams::default_m(p));
    let params = match eps23 {
        Some((eps2, eps3)) => GranParams::new(eps, eps2, eps3, alpha, m, p)?,
        None => GranParams::linked(eps, alpha, m, p)?,
    };
    let spectrum = dft(&residues, ctx)?;
    let search = good_length_search(&spectrum, &params)?;
    let part = partition_progressions(ctx, search.best.d, params.m)?;
    let granularization = granularize(&residues, &part, eps)?;

    let aprime_in_n = granularization.aprime().restrict_to_interval(n);
    let added = a.difference(&aprime_in_n)?;
    let member = aprime_in_n.union(a)?;
    assert!(a.is_subset(&member));
    assert!(
        ExactFraction::new(eps)?.count_within(added.len() as u64, p as u64),
        "{} points of A outside A' exceed eps * p",
        added.len()
    );

    let good = search.found_good;
    let prop3 = verify_prop3(&residues, &granularization, &params, good)?;
    let prop4 = verify_prop4(&residues, &granularization, &params, eps, good)?;
    Ok(FamilyWitness {
        params,
        search,
        granularization,
        member,
        added,
        prop3,
        prop4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::choose_prime;

    fn ctx23() -> PrimeContext {
        choose_prime(10).unwrap()
    }

    #[test]
    fn exact_threshold() {
        let half = ExactFraction::new(0.5).unwrap();
        assert!(half.count_reaches(3, 6));
        assert!(!half.count_reaches(2, 5));
        // 0.1 is slightly above 1/10 as a double
        let tenth = ExactFraction::new(0.1).unwrap();
        assert!(!tenth.count_reaches(1, 10));
        assert!(tenth.count_within(1, 10));
        assert!(ExactFraction::new(-0.1).is_err());
        assert!(ExactFraction::new(f64::NAN).is_err());
    }

    #[test]
    fn params_and_delta() {
        let g = GranParams::linked(0.25, 0.1, 38, 601).unwrap();
        assert_eq!(g.l, 16);
        assert_eq!(g.eps2, 0.0625 / 144.0);
        let expected = 0.0625 * g.eps2 * g.eps3.sqrt() / (16.0 * 0.1f64.sqrt());
        assert_eq!(g.delta(), expected);
        assert!(GranParams::linked(1.0, 0.1, 4, 23).is_err());
        assert!(GranParams::linked(0.5, 0.1, 24, 23).is_err());
        assert!(GranParams::new(0.5, 0.5, 0.5, 1.5, 4, 23).is_err());
        assert_eq!(GranParams::default_m(601), 38);
        assert!(GranParams::asymptotic(1000, 0.2, 2003).is_ok());
    }

    #[test]
    fn partition_examples() {
        let ctx = ctx23();
        let one = partition_progressions(&ctx, 5, 1).unwrap();
        assert_eq!(one.cell_len(0), 23);
        let singles = partition_progressions(&ctx, 1, 23).unwrap();
        for i in 0..23 {
            assert_eq!(singles.cell(i).collect::<Vec<_>>(), vec![i]);
        }
        let four = partition_progressions(&ctx, 1, 4).unwrap();
        let sizes: Vec<usize> = (0..4).map(|i| four.cell_len(i)).collect();
        assert_eq!(sizes, vec![6, 6, 6, 5]);
        assert_eq!(four.cell(3).collect::<Vec<_>>(), vec![18, 19, 20, 21, 22]);
        assert!(partition_progressions(&ctx, 0, 4).is_err());
        assert!(partition_progressions(&ctx, 23, 4).is_err());
        assert!(partition_progressions(&ctx, 1, 24).is_err());
    }

    #[test]
    fn partition_cells_are_progressions() {
        let ctx = choose_prime(40).unwrap();
        let p = ctx.p();
        for d in [1, 2, 7, p - 1] {
            for m in [1, 3, 10, p] {
                let part = partition_progressions(&ctx, d, m).unwrap();
                let l = part.l();
                let mut seen = vec![false; p];
                for i in 0..m {
                    let cell: Vec<usize> = part.cell(i).collect();
                    assert!(cell.len() == l || cell.len() + 1 == l);
                    for w in cell.windows(2) {
                        assert_eq!((w[0] + d) % p, w[1]);
                    }
                    for x in cell {
                        assert!(!seen[x]);
                        seen[x] = true;
                        assert_eq!(part.cell_index(x), i);
                    }
                }
                assert!(seen.into_iter().all(|s| s));
            }
        }
    }

    #[test]
    fn granularize_examples() {
        let ctx = ctx23();
        let part = partition_progressions(&ctx, 1, 4).unwrap();
        let empty = IntSet::cyclic(23, []).unwrap();
        let g = granularize(&empty, &part, 0.3).unwrap();
        assert!(g.cells().is_empty() && g.aprime().is_empty());

        let full = IntSet::full_cyclic(23);
        let g = granularize(&full, &part, 0.3).unwrap();
        assert_eq!(g.cells(), &[0, 1, 2, 3]);
        assert_eq!(g.aprime(), &full);

        let cell0 = part.cell_set(0);
        let g = granularize(&cell0, &part, 0.5).unwrap();
        assert_eq!(g.cells(), &[0]);
        assert_eq!(g.aprime(), &cell0);
        assert_eq!(g.filled_len(), 0);
        assert_eq!(g.dropped_len(), 0);

        // 3 of 6 in cell 1 is exactly the 0.5 threshold
        let a = IntSet::cyclic(23, [6, 8, 10, 18]).unwrap();
        let g = granularize(&a, &part, 0.5).unwrap();
        assert_eq!(g.cells(), &[1]);
        assert_eq!(g.filled_len(), 3);
        assert_eq!(g.dropped_len(), 1);
        assert!(granularize(&IntSet::interval(22, [1]).unwrap(), &part, 0.5).is_err());
    }

    #[test]
    fn good_length_trivial_spectra() {
        let ctx = ctx23();
        for a in [IntSet::cyclic(23, []).unwrap(), IntSet::full_cyclic(23)] {
            let s = dft(&a, &ctx).unwrap();
            let params = GranParams::linked(0.3, s.alpha(), 4, 23).unwrap();
            for d in 1..23 {
                let r = good_length_check(&s, d, &params).unwrap();
                assert!(r.is_good);
                assert_eq!(r.worst_ratio, 0.0);
            }
            let found = good_length_search(&s, &params).unwrap();
            assert!(found.found_good);
            assert_eq!(found.best.d, 1);
        }
    }

    #[test]
    fn good_length_rejects_zero_step() {
        let ctx = ctx23();
        let s = dft(&IntSet::full_cyclic(23), &ctx).unwrap();
        let params = GranParams::linked(0.3, 1.0, 4, 23).unwrap();
        assert!(good_length_check(&s, 0, &params).is_err());
        assert!(good_length_check(&s, 46, &params).is_err());
    }

    #[test]
    fn smoothed_indicator_average() {
        let a = IntSet::cyclic(11, [0, 1, 2]).unwrap();
        let a1 = smoothed_indicator(&a, 1, 2);
        // window {n-1, n, n+1}
        assert_eq!(a1[1], 1.0);
        assert_eq!(a1[0], 2.0 / 3.0);
        assert_eq!(a1[10], 1.0 / 3.0);
        assert_eq!(a1[5], 0.0);
        let total: f64 = a1.iter().sum();
        assert!((total - 3.0).abs() < 1e-12);
    }

    #[test]
    fn verifiers_on_trivial_sets() {
        let ctx = ctx23();
        let part = partition_progressions(&ctx, 1, 4).unwrap();
        let params = GranParams::linked(0.3, 0.0, 4, 23).unwrap();
        let empty = IntSet::cyclic(23, []).unwrap();
        let g = granularize(&empty, &part, 0.3).unwrap();
        assert_eq!(
            verify_prop3(&empty, &g, &params, true).unwrap().bad_count,
            0
        );
        assert!(verify_prop4(&empty, &g, &params, 0.3, true).unwrap().holds);

        let full = IntSet::full_cyclic(23);
        let params = GranParams::linked(0.3, 1.0, 4, 23).unwrap();
        let g = granularize(&full, &part, 0.3).unwrap();
        assert_eq!(verify_prop3(&full, &g, &params, true).unwrap().bad_count, 0);
    }

    #[test]
    fn cover_of_empty_and_rejects_non_sum_free() {
        let ctx = choose_prime(30).unwrap();
        let w = cover_in_family(&IntSet::empty_interval(30), &ctx, 0.25, None).unwrap();
        assert!(w.member.is_empty());
        assert_eq!(w.report().aprime_size, 0);
        let bad = IntSet::interval(30, [1, 2, 3]).unwrap();
        assert!(matches!(
            cover_in_family(&bad, &ctx, 0.25, None),
            Err(Error::NotSumFree { x: 1, y: 2, z: 3 })
        ));
    }

    #[test]
    fn cover_of_upper_half() {
        let n = 60;
        let ctx = choose_prime(n).unwrap();
        let a = IntSet::interval_range(n, n / 2 + 1, n);
        let w = cover_in_family(&a, &ctx, 0.25, Some(ctx.p())).unwrap();
        // with singleton cells A' = A
        assert!(w.added.is_empty());
        assert_eq!(w.member, a);
    }
}
