//! Fourier analysis on `Z/pZ` with `f̂(r) = Σ_x f(x) e(rx/p)`.
//!
//! Transforms are evaluated directly against a shared table of `p`-th roots
//! of unity; at the sizes used here (`p` up to a few tens of thousands) the
//! `O(p·|A|)` cost is fine and the direct sum is the reference.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{Ambient, IntSet};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// The pair `(N, p)` with `p` the least prime in `[2N, 4N]`.
#[derive(Clone)]
pub struct PrimeContext {
    n: usize,
    p: usize,
    roots: Arc<[Complex64]>,
}

impl std::fmt::Debug for PrimeContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeContext")
            .field("n", &self.n)
            .field("p", &self.p)
            .finish()
    }
}

impl PartialEq for PrimeContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.p == other.p
    }
}

pub fn choose_prime(n: usize) -> Result<PrimeContext> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let p = (2 * n..=4 * n)
        .find(|&q| is_prime(q as u64))
        .expect("Bertrand's postulate");
    Ok(PrimeContext::with_prime(n, p))
}

impl PrimeContext {
    fn with_prime(n: usize, p: usize) -> Self {
        let roots = (0..p)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64))
            .collect();
        PrimeContext { n, p, roots }
    }

    /// A context for an explicit prime, without the `[2N, 4N]` constraint.
    pub fn for_prime(p: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Self::with_prime(p / 2, p))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `e(k/p)`.
    #[inline]
    pub fn root(&self, k: usize) -> Complex64 {
        self.roots[k % self.p]
    }

    /// Checks that `a` is a set of residues mod `p`.
    pub fn check_residues(&self, a: &IntSet) -> Result<()> {
        if a.ambient() != Ambient::Cyclic || a.universe() != self.p {
            return Err(Error::invalid(format!(
                "expected a subset of Z/{}Z, got {:?} with universe {}",
                self.p,
                a.ambient(),
                a.universe()
            )));
        }
        Ok(())
    }

    /// Transform of an arbitrary real function on `Z/pZ`.
    pub fn transform(&self, f: &[f64]) -> Result<Vec<Complex64>> {
        self.check_len(f.len())?;
        let p = self.p;
        let support: Vec<(usize, f64)> = f
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, v)| *v != 0.0)
            .collect();
        Ok((0..p)
            .into_par_iter()
            .map(|r| {
                support
                    .iter()
                    .map(|&(x, v)| self.roots[r * x % p] * v)
                    .sum()
            })
            .collect())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.p {
            return Err(Error::invalid(format!(
                "vector of length {len} over Z/{}Z",
                self.p
            )));
        }
        Ok(())
    }
}

/// `‖t‖`, the distance from `t` to the nearest integer.
pub fn dist_to_int(t: f64) -> f64 {
    let frac = t - t.floor();
    frac.min(1.0 - frac)
}

/// `‖k/p‖` computed from the residue of `k` mod `p`.
pub fn circle_dist(k: usize, p: usize) -> f64 {
    let k = k % p;
    k.min(p - k) as f64 / p as f64
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    context: PrimeContext,
    values: Vec<Complex64>,
    size: usize,
}

pub fn dft(a: &IntSet, ctx: &PrimeContext) -> Result<Spectrum> {
    ctx.check_residues(a)?;
    let p = ctx.p();
    let elems = a.elements();
    let values = (0..p)
        .into_par_iter()
        .map(|r| elems.iter().map(|&x| ctx.roots[r * x % p]).sum())
        .collect();
    Ok(Spectrum {
        context: ctx.clone(),
        values,
        size: a.len(),
    })
}

impl Spectrum {
    pub fn context(&self) -> &PrimeContext {
        &self.context
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, r: usize) -> Complex64 {
        self.values[r % self.context.p()]
    }

    /// `|A|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `α = |A|/p`.
    pub fn alpha(&self) -> f64 {
        self.size as f64 / self.context.p() as f64
    }

    /// `Σ_r |Â(r)|²`, equal to `p|A|`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,re,im,abs\n");
        for (r, v) in self.values.iter().enumerate() {
            writeln!(out, "{r},{},{},{}", v.re, v.im, v.norm()).expect("String write");
        }
        out
    }
}

/// The nonzero frequencies with `|Â(r)| ≥ δp`.
#[derive(Clone, Debug, Serialize)]
pub struct LargeSpectrum {
    pub delta: f64,
    pub members: Vec<usize>,
}

impl LargeSpectrum {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn large_spectrum(s: &Spectrum, delta: f64) -> Result<LargeSpectrum> {
    if !(delta > 0.0) {
        return Err(Error::invalid(format!("delta {delta} must be positive")));
    }
    let threshold = delta * s.context.p() as f64;
    let members: Vec<usize> = (1..s.context.p())
        .filter(|&r| s.values[r].norm() >= threshold)
        .collect();
    let k = members.len();
    assert!(
        k == 0 || (k as f64) < s.alpha() / (delta * delta),
        "large spectrum of size {k} violates the Parseval bound"
    );
    Ok(LargeSpectrum { delta, members })
}

/// `(f ∗ g)(x) = Σ_y f(y) g(x − y)` on `Z/pZ`.
pub fn convolve(f: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    if f.len() != g.len() || f.is_empty() {
        return Err(Error::invalid(format!(
            "convolution of lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    let p = f.len();
    let mut out = vec![0.0; p];
    for (y, &fy) in f.iter().enumerate().filter(|(_, v)| **v != 0.0) {
        for (x, o) in out.iter_mut().enumerate() {
            *o += fy * g[(x + p - y) % p];
        }
    }
    Ok(out)
}

/// Rounds a vector that must be integral, such as a convolution of indicators.
pub fn round_counts(values: &[f64]) -> Result<Vec<u64>> {
    values
        .iter()
        .map(|&v| {
            let r = v.round();
            if (v - r).abs() > 1e-6 || r < 0.0 {
                Err(Error::invalid(format!("{v} is not a nonnegative integer")))
            } else {
                Ok(r as u64)
            }
        })
        .collect()
}

/// `g(x) = (2L−1)^{-1} Σ_{|j|<L} e(jdx/p)`, a real number in `[−1, 1]`.
pub fn kernel_g(ctx: &PrimeContext, d: usize, l: usize, x: usize) -> Result<f64> {
    let p = ctx.p();
    if d % p == 0 {
        return Err(Error::invalid("kernel step d must be nonzero mod p"));
    }
    if l == 0 || l > p {
        return Err(Error::invalid(format!("kernel length {l} not in [1, {p}]")));
    }
    let step = d % p * (x % p) % p;
    let sum: f64 = (1..l).map(|j| ctx.root(j * step % p).re).sum();
    Ok((1.0 + 2.0 * sum) / (2 * l - 1) as f64)
}

/// Additive triples of `A ⊆ [N]` counted through the convolution `A ∗ A` in `Z/pZ`.
pub fn triple_count_spectral(a: &IntSet, ctx: &PrimeContext) -> Result<u64> {
    if a.ambient() == Ambient::Cyclic {
        return Err(Error::invalid("expected an integer set"));
    }
    if a.max().is_some_and(|m| 2 * m > ctx.p()) {
        return Err(Error::invalid("sums of A would wrap around mod p"));
    }
    let ind = a.embed_mod(ctx.p())?.indicator();
    let reps = round_counts(&convolve(&ind, &ind)?)?;
    Ok(a.iter().map(|z| reps[z]).sum())
}
