//! Seeded invariant suites. Each trial draws its instance from a
//! [`Rng`] seeded once per suite, so a `(suite, config)` pair always produces
//! the same report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::granular::{cover_in_family, partition_progressions, smoothed_indicator};
use crate::sampling::{random_subset, random_sum_free, Rng};
use crate::sets::{popular_difference_bound, project_mod_t, DiffPopularity, IntSet};
use crate::spectral::{choose_prime, circle_dist, convolve, dft, kernel_g, PrimeContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Parseval,
    Kernel,
    Prop3,
    Prop4,
    Lemma11,
    Star,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Parseval,
        Suite::Kernel,
        Suite::Prop3,
        Suite::Prop4,
        Suite::Lemma11,
        Suite::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parseval => "parseval",
            Suite::Kernel => "kernel",
            Suite::Prop3 => "prop3",
            Suite::Prop4 => "prop4",
            Suite::Lemma11 => "lemma11",
            Suite::Star => "star",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::invalid(format!("unknown suite {name:?}")))
    }

    /// `N` used when the caller does not choose one.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Parseval => 100,
            Suite::Kernel => 500,
            Suite::Prop3 | Suite::Prop4 => 200,
            Suite::Lemma11 | Suite::Star => 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub n: usize,
    pub eps1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub passed: usize,
    /// Trials whose claim is conditional and whose condition did not hold.
    pub diagnostic: usize,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            trials: 0,
            passed: 0,
            diagnostic: 0,
            lines: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, line: String) {
        self.trials += 1;
        self.passed += usize::from(ok);
        self.lines.push(line);
    }

    pub fn failed(&self) -> usize {
        self.trials - self.passed - self.diagnostic
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            writeln!(out, "{l}").expect("String write");
        }
        let checked = self.trials - self.diagnostic;
        write!(
            out,
            "{}: {}/{} pass",
            self.suite.name(),
            self.passed,
            checked
        )
        .expect("String write");
        if self.diagnostic > 0 {
            write!(out, ", {} diagnostic", self.diagnostic).expect("String write");
        }
        out.push('\n');
        out
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.n < 2 {
        return Err(Error::invalid("suites need N >= 2"));
    }
    match suite {
        Suite::Parseval => parseval(&choose_prime(cfg.n)?, cfg.trials, cfg.seed),
        Suite::Kernel => kernel(cfg),
        Suite::Prop3 | Suite::Prop4 => granular(suite, cfg),
        Suite::Lemma11 => lemma11(cfg),
        Suite::Star => star(cfg),
    }
}

fn random_residues(p: usize, rng: &mut Rng) -> IntSet {
    IntSet::cyclic(p, (0..p).filter(|_| rng.coin())).expect("residues")
}

/// Parseval and the convolution theorem on random subsets of `Z/pZ`.
pub fn parseval(ctx: &PrimeContext, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = Rng::new(seed);
    let p = ctx.p();
    let mut report = SuiteReport::new(Suite::Parseval);
    for t in 0..trials {
        let a = random_residues(p, &mut rng);
        let b = random_residues(p, &mut rng);
        let sa = dft(&a, ctx)?;
        let sb = dft(&b, ctx)?;
        let mass = (p * a.len()) as f64;
        let parseval_err = (sa.energy() - mass).abs() / mass.max(1.0);
        let ab = convolve(&a.indicator(), &b.indicator())?;
        let conv = ctx.transform(&ab)?;
        let conv_err = (0..p)
            .map(|r| (conv[r] - sa.at(r) * sb.at(r)).norm())
            .fold(0.0, f64::max);
        let zero_err = (sa.at(0).re - a.len() as f64).abs();
        let ok = parseval_err <= 1e-9 && conv_err <= 1e-6 && zero_err <= 1e-9 * p as f64;
        report.record(
            ok,
            format!(
                "trial {t}: p={p} |A|={} parseval_rel={parseval_err:.3e} convolution_abs={conv_err:.3e}",
                a.len()
            ),
        );
    }
    Ok(report)
}

/// Largest `|â₁(x) − Â(x)g(x)|` for the smoothing of `A` by step `d`, length `L`.
pub fn smoothing_transform_error(
    a: &IntSet,
    ctx: &PrimeContext,
    d: usize,
    l: usize,
) -> Result<f64> {
    let s = dft(a, ctx)?;
    let a1 = ctx.transform(&smoothed_indicator(a, d, l))?;
    (0..ctx.p()).try_fold(0.0f64, |worst, x| {
        let g = kernel_g(ctx, d, l, x)?;
        Ok(worst.max((a1[x] - s.at(x) * g).norm()))
    })
}

/// `1 − g(x) ≤ (2π²L²/3)‖dx/p‖²` and `|g| ≤ 1` on random tuples, and the
/// transform of the smoothed indicator on a few random sets.
pub fn kernel(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = Rng::new(cfg.seed);
    let mut report = SuiteReport::new(Suite::Kernel);
    for t in 0..cfg.trials {
        let ctx = choose_prime(rng.between(1, cfg.n))?;
        let p = ctx.p();
        let x = rng.below(p);
        let d = rng.between(1, p - 1);
        let l = rng.between(1, p.min(64));
        let g = kernel_g(&ctx, d, l, x)?;
        let dist = circle_dist(d * x % p, p);
        let bound = 2.0 * std::f64::consts::PI.powi(2) * (l * l) as f64 / 3.0 * dist * dist;
        let ok = 1.0 - g <= bound + 1e-9 && g.abs() <= 1.0 + 1e-12;
        report.record(
            ok,
            format!(
                "trial {t}: p={p} d={d} L={l} x={x} 1-g={:.6e} bound={bound:.6e}",
                1.0 - g
            ),
        );
    }
    let smoothing_trials = cfg.trials.min(20);
    for t in 0..smoothing_trials {
        let ctx = choose_prime(rng.between(5, 100))?;
        let p = ctx.p();
        let a = random_residues(p, &mut rng);
        let d = rng.between(1, p - 1);
        let l = rng.between(1, p.div_ceil(2));
        let err = smoothing_transform_error(&a, &ctx, d, l)?;
        report.record(
            err <= 1e-6,
            format!("smoothing {t}: p={p} d={d} L={l} max_err={err:.3e}"),
        );
    }
    Ok(report)
}

fn granular(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = Rng::new(cfg.seed);
    let ctx = choose_prime(cfg.n)?;
    let mut report = SuiteReport::new(suite);
    for t in 0..cfg.trials {
        let a = random_sum_free(cfg.n, &mut rng);
        let w = cover_in_family(&a, &ctx, cfg.eps1, None)?;
        let r = w.report();
        let line = match suite {
            Suite::Prop3 => format!(
                "trial {t}: |A|={} d={} good={} bad_count={} bound={}",
                a.len(),
                r.d,
                r.is_good,
                r.bad_count,
                r.bound
            ),
            _ => format!(
                "trial {t}: |A|={} d={} good={} triples={} bound={}",
                a.len(),
                r.d,
                r.is_good,
                w.prop4.triples,
                w.prop4.bound
            ),
        };
        let asserted = match suite {
            Suite::Prop3 => w.prop3.asserted,
            _ => w.prop4.asserted,
        };
        if asserted {
            report.record(true, line);
        } else {
            report.trials += 1;
            report.diagnostic += 1;
            report.lines.push(format!("{line} (diagnostic)"));
        }
    }
    Ok(report)
}

/// Projection facts for `π: Z → Z/tZ` with `t > N/4`: `K`-popular
/// differences map to `K/4`-popular ones, and every `8K`-popular residue
/// lifts to a `K`-popular difference.
pub fn projection_check(a: &IntSet, t: usize, delta: f64) -> Result<(bool, bool)> {
    let n = a.n();
    if 4 * t <= n || t > n {
        return Err(Error::invalid(format!("t = {t} outside (N/4, N]")));
    }
    let k = delta * n as f64;
    let pop = DiffPopularity::new(a);
    let proj = project_mod_t(a, t)?;
    let proj_pop = DiffPopularity::new(&proj);
    let n = n as i64;
    let ti = t as i64;
    let pushes = (-n..=n)
        .filter(|&d| pop.count(d) as f64 >= 4.0 * k)
        .all(|d| proj_pop.count(d.rem_euclid(ti)) as f64 >= k);
    let lifts = (0..ti)
        .filter(|&r| proj_pop.count(r) as f64 >= 8.0 * k)
        .all(|r| {
            (-n..=n)
                .filter(|d| d.rem_euclid(ti) == r)
                .any(|d| pop.count(d) as f64 >= k)
        });
    Ok((pushes, lifts))
}

fn lemma11(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = Rng::new(cfg.seed);
    let n = cfg.n;
    let mut report = SuiteReport::new(Suite::Lemma11);
    for trial in 0..cfg.trials {
        let a = random_subset(n, &mut rng);
        let t = rng.between(n / 4 + 1, n);
        let delta = 0.005 + 0.095 * rng.unit();
        let (pushes, lifts) = projection_check(&a, t, delta)?;
        report.record(
            pushes && lifts,
            format!(
                "trial {trial}: |A|={} t={t} delta={delta:.4} forward={pushes} lift={lifts}",
                a.len()
            ),
        );
    }
    Ok(report)
}

fn star(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = Rng::new(cfg.seed);
    let n = cfg.n;
    let eps = 1.0 / (n * n) as f64;
    let mut report = SuiteReport::new(Suite::Star);
    for t in 0..cfg.trials {
        let a = random_sum_free(n, &mut rng);
        let c = popular_difference_bound(&a, eps)?;
        report.record(
            c.premise && c.holds,
            format!("trial {t}: |A|={} lhs={} rhs={}", a.len(), c.lhs, c.rhs),
        );
    }
    Ok(report)
}

/// Partition invariants for one `(p, d, M)`: exact cover, cell lengths in
/// `{L − 1, L}`, and common difference `d` inside each cell.
pub fn partition_is_exact(ctx: &PrimeContext, d: usize, m: usize) -> Result<bool> {
    let part = partition_progressions(ctx, d, m)?;
    let p = ctx.p();
    let l = part.l();
    let mut hits = vec![0u8; p];
    let mut ok = true;
    for i in 0..m {
        let cell: Vec<usize> = part.cell(i).collect();
        ok &= cell.len() == l || cell.len() + 1 == l;
        ok &= cell.windows(2).all(|w| (w[0] + d) % p == w[1]);
        for x in cell {
            hits[x] += 1;
        }
    }
    Ok(ok && hits.iter().all(|&h| h == 1))
}
