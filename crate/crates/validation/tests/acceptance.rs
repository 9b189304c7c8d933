//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion builds a full transcript of the values it computed; the
//! determinism criterion reruns all of them with different worker counts and
//! compares transcripts byte for byte.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use sumfree_core::census::{
    census_classify, count_sum_free_bb, count_sum_free_naive, prop12_check, ratio_series,
};
use sumfree_core::granular::{
    cover_in_family, good_length_search, granularize, partition_progressions, smoothing_check,
    verify_prop3, GranParams,
};
use sumfree_core::sampling::{random_sized_subset, random_subset, random_sum_free, Rng};
use sumfree_core::sets::{count_additive_triples, is_sum_free, IntSet};
use sumfree_core::spectral::{choose_prime, dft, triple_count_spectral, PrimeContext};
use sumfree_core::suites::{self, partition_is_exact, Suite, SuiteConfig};

const PARSEVAL_REL: f64 = 1e-9;
const CONVOLUTION_ABS: f64 = 1e-6;
const ERROR_SUM_REL: f64 = 1e-6;
const NOISE_INCREASE: f64 = 0.05;

struct Verdict {
    pass: bool,
    summary: String,
    transcript: String,
}

fn in_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    let mut b = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        b = b.num_threads(workers);
    }
    b.build().expect("pool").install(job)
}

fn within(start: Instant, budget: Duration) -> bool {
    start.elapsed() <= budget
}

fn exact_small_counts(workers: usize) -> Verdict {
    let oracle: [u32; 10] = [2, 3, 6, 9, 16, 24, 42, 61, 108, 151];
    let start = Instant::now();
    let mut t = String::new();
    let mut pass = true;
    for (i, &want) in oracle.iter().enumerate() {
        let n = i + 1;
        let got = count_sum_free_naive(&IntSet::full_interval(n), workers)
            .unwrap()
            .count;
        pass &= got == BigUint::from(want);
        writeln!(t, "N={n} count={got}").unwrap();
    }
    let timely = within(start, Duration::from_secs(1));
    Verdict {
        pass: pass && timely,
        summary: format!(
            "|SF(N)| for N=1..10 matches the oracle list: {pass}, under 1 s: {timely}"
        ),
        transcript: t,
    }
}

fn oracle_equivalence(workers: usize) -> Verdict {
    let start = Instant::now();
    let mut t = String::new();
    let mut mismatches = 0;
    for n in 1..=22 {
        let u = IntSet::full_interval(n);
        let a = count_sum_free_naive(&u, workers).unwrap();
        let b = count_sum_free_bb(&u, workers).unwrap();
        mismatches += usize::from(a.count != b.count);
        writeln!(
            t,
            "N={n} naive={} bb={} visits={}",
            a.count, b.count, b.node_visits
        )
        .unwrap();
    }
    let mut rng = Rng::new(2);
    let pool: Vec<usize> = (1..=30).collect();
    for i in 0..500 {
        let size = rng.between(0, 22);
        let u = random_sized_subset(30, &pool, size, &mut rng);
        let a = count_sum_free_naive(&u, workers).unwrap();
        let b = count_sum_free_bb(&u, workers).unwrap();
        mismatches += usize::from(a.count != b.count);
        writeln!(
            t,
            "universe {i}: size={size} naive={} bb={}",
            a.count, b.count
        )
        .unwrap();
    }
    let timely = within(start, Duration::from_secs(300));
    Verdict {
        pass: mismatches == 0 && timely,
        summary: format!(
            "branch and bound vs naive on N<=22 and 500 random universes: {mismatches} mismatches, under 5 min: {timely}"
        ),
        transcript: t,
    }
}

fn parity_split(workers: usize) -> Verdict {
    let series = ratio_series(20, 42, workers).unwrap();
    let mut t = String::new();
    let mut violations = Vec::new();
    for p in &series {
        writeln!(t, "N={} total={} ratio={:.17e}", p.n, p.total, p.ratio).unwrap();
    }
    for w in series.windows(2) {
        let (odd, even) = if w[0].n % 2 == 1 {
            (&w[0], &w[1])
        } else {
            (&w[1], &w[0])
        };
        if odd.ratio <= even.ratio {
            violations.push(format!("{}/{}", odd.n, even.n));
        }
    }
    Verdict {
        pass: violations.is_empty(),
        summary: format!(
            "ratio(odd N) > ratio(even N±1) on N=20..42: {} violations {violations:?}",
            violations.len()
        ),
        transcript: t,
    }
}

fn growth_trend(workers: usize) -> Verdict {
    let ns: Vec<usize> = (10..=42).step_by(4).collect();
    let report = prop12_check(&ns, workers).unwrap();
    let mut t = String::new();
    let rates: Vec<f64> = report
        .rows
        .iter()
        .map(|r| {
            let rate = r.total.to_f64().unwrap().log2() / r.n as f64;
            writeln!(t, "N={} total={} rate={rate:.17e}", r.n, r.total).unwrap();
            rate
        })
        .collect();
    let decreasing = rates.windows(2).all(|w| w[1] < w[0]);
    let in_range = rates.iter().all(|&r| r > 0.5 && r <= 0.8);
    Verdict {
        pass: decreasing && in_range && report.decreasing,
        summary: format!(
            "log2|SF(N)|/N over N=10,14,..,42: decreasing={decreasing}, within (0.5, 0.8]={in_range}"
        ),
        transcript: t,
    }
}

fn exceptional_decay(workers: usize) -> Verdict {
    let records: Vec<_> = (24..=41)
        .map(|n| census_classify(n, workers).unwrap())
        .collect();
    let mut t = String::new();
    for r in &records {
        writeln!(
            t,
            "N={} total={} exceptional={} exceptional_ratio={:.17e}",
            r.n, r.total, r.exceptional, r.exceptional_ratio
        )
        .unwrap();
    }
    let mut pass = true;
    let mut notes = Vec::new();
    for (parity, lo, hi) in [("even", 24, 40), ("odd", 25, 41)] {
        let class: Vec<_> = records
            .iter()
            .filter(|r| r.n >= lo && r.n <= hi && r.n % 2 == lo % 2)
            .collect();
        let increases: Vec<(usize, f64)> = class
            .windows(2)
            .filter(|w| w[1].exceptional_ratio > w[0].exceptional_ratio)
            .map(|w| {
                (
                    w[1].n,
                    w[1].exceptional_ratio / w[0].exceptional_ratio - 1.0,
                )
            })
            .collect();
        let ok = increases.is_empty() || (increases.len() == 1 && increases[0].1 < NOISE_INCREASE);
        pass &= ok;
        notes.push(format!("{parity}: {} increases", increases.len()));
    }
    Verdict {
        pass,
        summary: format!(
            "exceptional_ratio non-increasing per parity class (one <5% increase allowed): {}",
            notes.join(", ")
        ),
        transcript: t,
    }
}

fn granularization_invariants(workers: usize) -> Verdict {
    let n = 300;
    let ctx = choose_prime(n).unwrap();
    let p = ctx.p();
    let eps_list = [0.1, 0.25, 0.5];
    let mut rng = Rng::new(6);
    let mut t = String::new();
    let mut literal_fail = [0usize; 3];
    let mut corrected_fail = 0;
    let mut monotone_fail = 0;
    let mut partition_fail = 0;
    let mut partitions = 0;
    in_pool(workers, || {
        for i in 0..200 {
            let a = random_sum_free(n, &mut rng);
            let res = a.embed_mod(p).unwrap();
            for (k, &eps) in eps_list.iter().enumerate() {
                let w = cover_in_family(&a, &ctx, eps, None).unwrap();
                let g = &w.granularization;
                let filled = g.aprime().difference(&res).unwrap().len();
                let dropped = res.difference(g.aprime()).unwrap().len();
                literal_fail[k] += usize::from(filled as f64 > eps * p as f64);
                corrected_fail += usize::from(dropped as f64 > eps * p as f64);
                partitions += 1;
                partition_fail += usize::from(
                    !partition_is_exact(&ctx, g.partition().d(), g.partition().m()).unwrap(),
                );
                writeln!(
                    t,
                    "set {i} eps1={eps}: |A|={} d={} filled={filled} dropped={dropped}",
                    a.len(),
                    g.partition().d()
                )
                .unwrap();
            }
            let d = rng.between(1, p - 1);
            let m = rng.between(1, p);
            partitions += 1;
            partition_fail += usize::from(!partition_is_exact(&ctx, d, m).unwrap());
            let part = partition_progressions(&ctx, d, m).unwrap();
            let chain: Vec<IntSet> = eps_list
                .iter()
                .map(|&e| granularize(&res, &part, e).unwrap().aprime().clone())
                .collect();
            let monotone = chain[1].is_subset(&chain[0]) && chain[2].is_subset(&chain[1]);
            monotone_fail += usize::from(!monotone);
            writeln!(
                t,
                "set {i} d={d} M={m}: sizes {:?}",
                chain.iter().map(IntSet::len).collect::<Vec<_>>()
            )
            .unwrap();
        }
    });
    let literal_total: usize = literal_fail.iter().sum();
    Verdict {
        pass: literal_total == 0 && monotone_fail == 0 && partition_fail == 0,
        summary: format!(
            "|A'\\A| <= eps1 p violated in {:?} of 200 sets for eps1 {eps_list:?}; \
             |A\\A'| <= eps1 p violated {corrected_fail} times; \
             monotonicity failures {monotone_fail}; partition failures {partition_fail}/{partitions}",
            literal_fail
        ),
        transcript: t,
    }
}

fn spectral_identities(workers: usize) -> Verdict {
    let start = Instant::now();
    let mut t = String::new();
    let mut failures = 0;
    in_pool(workers, || {
        for (k, p) in [211, 1009, 4001].into_iter().enumerate() {
            let ctx = PrimeContext::for_prime(p).unwrap();
            let r = suites::parseval(&ctx, 100, 70 + k as u64).unwrap();
            failures += r.failed();
            t.push_str(&r.render());
        }
        let ctx = choose_prime(50).unwrap();
        let mut rng = Rng::new(7);
        for i in 0..100 {
            let a = random_subset(50, &mut rng);
            let spectral = triple_count_spectral(&a, &ctx).unwrap();
            let direct = count_additive_triples(&a);
            failures += usize::from(spectral != direct);
            writeln!(t, "set {i}: spectral={spectral} direct={direct}").unwrap();
        }
    });
    let timely = within(start, Duration::from_secs(120));
    Verdict {
        pass: failures == 0 && timely,
        summary: format!(
            "Parseval (rel {PARSEVAL_REL:e}) and convolution (abs {CONVOLUTION_ABS:e}) at p=211,1009,4001 and spectral triple counts on [50]: {failures} failures, under 2 min: {timely}"
        ),
        transcript: t,
    }
}

fn kernel_bounds(workers: usize) -> Verdict {
    let cfg = SuiteConfig {
        trials: 10_000,
        seed: 8,
        n: Suite::Kernel.default_n(),
        eps1: 0.25,
    };
    let r = in_pool(workers, || suites::run(Suite::Kernel, &cfg)).unwrap();
    Verdict {
        pass: r.all_passed() && r.trials == 10_020,
        summary: format!(
            "1-g(x) <= (2 pi^2 L^2/3)|dx/p|^2 on 10^4 tuples and a1^ = A^ g on 20 sets: {}/{} pass",
            r.passed, r.trials
        ),
        transcript: r.render(),
    }
}

/// `|Â(r)|` from a plain cosine/sine sum.
fn oracle_abs(a: &IntSet, p: usize, r: usize) -> f64 {
    let (re, im) = a.iter().fold((0.0, 0.0), |(re, im), x| {
        let theta = -2.0 * PI * ((x * r) % p) as f64 / p as f64;
        (re + theta.cos(), im + theta.sin())
    });
    re.hypot(im)
}

/// Whether `d` is a good length, recomputed from scratch.
fn oracle_is_good(a: &IntSet, p: usize, d: usize, l: usize, delta: f64) -> bool {
    (1..p).all(|r| {
        let abs = oracle_abs(a, p, r);
        if abs < delta * p as f64 {
            return true;
        }
        let k = d * r % p;
        let dist = k.min(p - k) as f64 / p as f64;
        dist <= (delta * p as f64 / abs).sqrt() / (4 * l) as f64
    })
}

fn good_length_instance(i: usize, rng: &mut Rng) -> IntSet {
    let n = rng.between(40, 150);
    match i % 3 {
        0 => {
            let lo = rng.between(n / 2 + 1, 3 * n / 4);
            IntSet::interval_range(n, lo, n)
        }
        1 => {
            let lo = rng.between(1, n / 3);
            let hi = rng.between(2 * n / 3, n);
            IntSet::interval(n, (lo..=hi).filter(|x| x % 2 == 1)).unwrap()
        }
        _ => random_sum_free(n, rng),
    }
}

fn good_length_machinery(workers: usize) -> Verdict {
    let mut rng = Rng::new(11);
    let mut t = String::new();
    let (mut good, mut disagreements, mut error_fail, mut prop3_fail) = (0, 0, 0, 0);
    in_pool(workers, || {
        for i in 0..90 {
            let a = good_length_instance(i, &mut rng);
            assert!(is_sum_free(&a));
            let ctx = choose_prime(a.n()).unwrap();
            let p = ctx.p();
            let l = [1, 2, 3, 4][rng.below(4)];
            let eps1 = [0.5, 0.75][rng.below(2)];
            let res = a.embed_mod(p).unwrap();
            let s = dft(&res, &ctx).unwrap();
            let params = GranParams::new(eps1, 0.75, 0.75, s.alpha(), p.div_ceil(l), p).unwrap();
            let search = good_length_search(&s, &params).unwrap();
            let d = search.best.d;
            write!(
                t,
                "instance {i}: N={} p={p} L={l} eps1={eps1} d={d} good={}",
                a.n(),
                search.found_good
            )
            .unwrap();
            if search.found_good {
                good += 1;
                if !oracle_is_good(&res, p, d, params.l, params.delta()) {
                    disagreements += 1;
                }
                let part = partition_progressions(&ctx, d, params.m).unwrap();
                let g = granularize(&res, &part, eps1).unwrap();
                let sm = smoothing_check(&res, &s, &g, &params).unwrap();
                if sm.error_sum > sm.error_bound * (1.0 + ERROR_SUM_REL) {
                    error_fail += 1;
                }
                let p3 = verify_prop3(&res, &g, &params, true).unwrap();
                if p3.bad_count as f64 > p3.bound {
                    prop3_fail += 1;
                }
                write!(
                    t,
                    " error_sum={:.6e} bound={:.6e} bad={} eps3p={}",
                    sm.error_sum, sm.error_bound, p3.bad_count, p3.bound
                )
                .unwrap();
            }
            t.push('\n');
        }
    });
    Verdict {
        pass: good > 0 && disagreements == 0 && error_fail == 0 && prop3_fail == 0,
        summary: format!(
            "{good}/90 instances have a good length; oracle disagreements {disagreements}, \
             error-sum bound failures {error_fail}, prop3 bound failures {prop3_fail}"
        ),
        transcript: t,
    }
}

fn lemma_suite(workers: usize) -> Verdict {
    let star = SuiteConfig {
        trials: 50,
        seed: 10,
        n: 60,
        eps1: 0.25,
    };
    let lemma11 = SuiteConfig {
        trials: 100,
        ..star.clone()
    };
    let (s, l) = in_pool(workers, || {
        (
            suites::run(Suite::Star, &star).unwrap(),
            suites::run(Suite::Lemma11, &lemma11).unwrap(),
        )
    });
    Verdict {
        pass: s.all_passed() && l.all_passed(),
        summary: format!(
            "star bound on 50 sum-free sets in [60]: {}/{}; projection lemma on 100 sets: {}/{}",
            s.passed, s.trials, l.passed, l.trials
        ),
        transcript: s.render() + &l.render(),
    }
}

type Criterion = (&'static str, fn(usize) -> Verdict);

const CRITERIA: [Criterion; 10] = [
    ("exact small counts", exact_small_counts),
    ("oracle equivalence", oracle_equivalence),
    ("parity split", parity_split),
    ("growth trend", growth_trend),
    ("exceptional decay", exceptional_decay),
    ("granularization invariants", granularization_invariants),
    ("spectral identities", spectral_identities),
    ("kernel bounds", kernel_bounds),
    ("good-length machinery", good_length_machinery),
    ("lemma suite", lemma_suite),
];

fn line(k: usize, name: &str, pass: bool, summary: &str) {
    let mark = if pass { "PASS" } else { "FAIL" };
    println!("criterion {k:>2} [{mark}] {name}: {summary}");
}

fn main() {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut all = true;
    let mut transcripts = Vec::new();
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let v = run(max);
        line(k + 1, name, v.pass, &v.summary);
        all &= v.pass;
        transcripts.push(v.transcript);
    }
    let mut differing = Vec::new();
    for workers in [1, 4, max] {
        for (k, (name, run)) in CRITERIA.iter().enumerate() {
            if run(workers).transcript != transcripts[k] {
                differing.push(format!("{name} (workers={workers})"));
            }
        }
    }
    let deterministic = differing.is_empty();
    line(
        11,
        "determinism",
        deterministic,
        &format!(
            "reports identical across reruns and workers 1, 4, {max}: differing {differing:?}"
        ),
    );
    all &= deterministic;
    if !all {
        std::process::exit(1);
    }
}
