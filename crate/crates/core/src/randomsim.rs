//! Monte Carlo estimation of piercing statistics for random fixed-length
//! societies, plus the closed-form probabilities they are compared against.
//!
//! Arcs are closed, length p, with left endpoints drawn i.i.d. uniform on
//! [0, 1). Each trial uses its own ChaCha8 stream so results do not depend
//! on how trials are split across threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arc::{Arc, Closure};
use crate::error::{Error, Result};
use crate::piercing::exact_pierce;
use crate::society::Society;

/// RNG for one trial: master seed picks the key, the trial index picks the
/// stream, so trial t is the same no matter which thread runs it.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// One random society: n closed arcs of length p, uniform left endpoints.
pub fn random_society(n: u32, p: f64, master_seed: u64, trial: u64) -> Result<Society<f64>> {
    if !(n >= 1) {
        return Err(Error::ParameterRange(format!("need n >= 1, got n={n}")));
    }
    if !(p > 0.0 && p < 1.0) || !p.is_finite() {
        return Err(Error::ParameterRange(format!(
            "need arc length 0 < p < 1, got p={p}"
        )));
    }
    let mut rng = trial_rng(master_seed, trial);
    let arcs = (0..n)
        .map(|_| Arc::new(rng.gen::<f64>(), p, Closure::Closed))
        .collect::<Result<Vec<_>>>()?;
    Society::new(arcs)
}

/// Exact binomial coefficient as f64; exact for n <= 45 where all values
/// fit in the 53-bit mantissa.
pub fn binomial_f64(n: u32, k: u32) -> f64 {
    crate::counting::binomial(n as u64, k as u64) as f64
}

/// Where a (n, p, k) triple stands relative to the closed form
/// P(tau = k) = C(n,k) (1-kp)^(k-1) (kp)^(n-k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    /// p < 1/(2k): the closed form is proved.
    Proven,
    /// 1/(2k) <= p < 1/k: conjectured to still hold.
    Conjectured,
    /// p >= 1/k: the closed form does not apply (it may be negative or
    /// meaningless).
    Outside,
}

pub fn applicability(p: f64, k: u32) -> Applicability {
    let k = k as f64;
    if p < 1.0 / (2.0 * k) {
        Applicability::Proven
    } else if p < 1.0 / k {
        Applicability::Conjectured
    } else {
        Applicability::Outside
    }
}

/// Closed form P(tau = k) = C(n,k) (1-kp)^(k-1) (kp)^(n-k) for a random
/// n-voter society with arc length p. Valid when p < 1/(2k), conjectured
/// up to p < 1/k.
pub fn formula_tau_k(n: u32, k: u32, p: f64) -> Result<f64> {
    if k < 1 || k > n {
        return Err(Error::ParameterRange(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let kf = k as f64;
    Ok(binomial_f64(n, k) * (1.0 - kf * p).powi(k as i32 - 1) * (kf * p).powi((n - k) as i32))
}

/// P(tau = 1) for n = 3 in closed form over the whole range 0 < p < 1.
pub fn formula_tau1_n3(p: f64) -> f64 {
    if p < 0.5 {
        3.0 * p * p
    } else if p < 2.0 / 3.0 {
        -9.0 * p * p + 12.0 * p - 3.0
    } else {
        1.0
    }
}

/// E[tau] from the closed form, summing k * P(tau = k) over k = 1..n.
/// Terms with kp >= 1 are dropped: tau = k forces k pairwise-disjoint closed
/// arcs of total length kp < 1, so those probabilities are exactly zero and
/// the raw polynomial is meaningless there.
pub fn expected_tau_formula(n: u32, p: f64) -> f64 {
    (1..=n)
        .filter(|&k| (k as f64) * p < 1.0)
        .map(|k| k as f64 * formula_tau_k(n, k, p).unwrap().max(0.0))
        .sum()
}

/// P(some k of the n arcs are pairwise disjoint ... ) uses the classical
/// circular non-overlap probability (1 - kp)^(k-1) for k arcs of length p.
pub fn disjoint_probability(k: u32, p: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::ParameterRange("need k >= 1".into()));
    }
    let kf = k as f64;
    if kf * p >= 1.0 {
        return Err(Error::ParameterRange(format!(
            "k arcs of length p cannot be disjoint when k*p >= 1 (k={k}, p={p})"
        )));
    }
    Ok((1.0 - kf * p).powi(k as i32 - 1))
}

/// Monte Carlo check of the closed-form pairwise-disjointness probability.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DisjointCheck {
    pub k: u32,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub estimate: f64,
    pub se: f64,
    pub closed_form: f64,
}

/// Estimate the probability that k random arcs of length p are pairwise
/// disjoint and pair it with the closed form (1 - kp)^(k-1).
pub fn disjoint_probability_check(k: u32, p: f64, trials: u64, seed: u64) -> Result<DisjointCheck> {
    let closed_form = disjoint_probability(k, p)?;
    if trials == 0 {
        return Err(Error::ParameterRange("need at least one trial".into()));
    }
    let hits: u64 = (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let s = random_society(k, p, seed, trial).expect("validated parameters");
            let arcs = s.arcs();
            (0..arcs.len())
                .all(|i| (i + 1..arcs.len()).all(|j| !arcs[i].intersects(&arcs[j])))
        })
        .count() as u64;
    let estimate = hits as f64 / trials as f64;
    Ok(DisjointCheck {
        k,
        p,
        trials,
        seed,
        estimate,
        se: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        closed_form,
    })
}

/// Parameters of one simulation run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SimParams {
    pub n: u32,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

/// One row of the histogram with its standard error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TauEstimate {
    pub k: u32,
    pub count: u64,
    pub prob: f64,
    /// sqrt(prob * (1 - prob) / trials)
    pub se: f64,
    pub formula: Option<f64>,
    pub applicability: Applicability,
}

/// Result of a Monte Carlo run over `trials` independent societies.
#[derive(Clone, Debug, Serialize)]
pub struct SimulationReport {
    pub params: SimParams,
    pub histogram: BTreeMap<u32, u64>,
    pub estimates: Vec<TauEstimate>,
    pub mean_tau: f64,
    /// standard error of the mean: sample sd / sqrt(trials)
    pub mean_tau_se: f64,
}

impl SimulationReport {
    pub fn prob_of(&self, k: u32) -> f64 {
        *self.histogram.get(&k).unwrap_or(&0) as f64 / self.params.trials as f64
    }

    pub fn se_of(&self, k: u32) -> f64 {
        let p = self.prob_of(k);
        (p * (1.0 - p) / self.params.trials as f64).sqrt()
    }
}

fn run_trials(params: SimParams) -> BTreeMap<u32, u64> {
    (0..params.trials)
        .into_par_iter()
        .map(|trial| {
            let s = random_society(params.n, params.p, params.seed, trial)
                .expect("validated parameters");
            let tau = exact_pierce(&s).size() as u32;
            let mut h = BTreeMap::new();
            h.insert(tau, 1u64);
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Run the simulation. `jobs = 0` uses all cores; any other value pins the
/// rayon pool width. The histogram is identical for every `jobs` value.
pub fn simulate(params: SimParams, jobs: usize) -> Result<SimulationReport> {
    if params.trials == 0 {
        return Err(Error::ParameterRange("need at least one trial".into()));
    }
    // validate n, p once up front
    random_society(params.n, params.p, params.seed, 0)?;

    let histogram = if jobs == 0 {
        run_trials(params)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ParameterRange(format!("cannot build thread pool: {e}")))?
            .install(|| run_trials(params))
    };

    let trials = params.trials as f64;
    let mean_tau = histogram
        .iter()
        .map(|(&k, &c)| k as f64 * c as f64)
        .sum::<f64>()
        / trials;
    let var = histogram
        .iter()
        .map(|(&k, &c)| (k as f64 - mean_tau).powi(2) * c as f64)
        .sum::<f64>()
        / trials;
    let mean_tau_se = (var / trials).sqrt();

    let estimates = (1..=params.n)
        .map(|k| {
            let count = *histogram.get(&k).unwrap_or(&0);
            let prob = count as f64 / trials;
            let app = applicability(params.p, k);
            let formula = match app {
                Applicability::Outside => None,
                _ => Some(formula_tau_k(params.n, k, params.p).unwrap()),
            };
            TauEstimate {
                k,
                count,
                prob,
                se: (prob * (1.0 - prob) / trials).sqrt(),
                formula,
                applicability: app,
            }
        })
        .collect();

    Ok(SimulationReport {
        params,
        histogram,
        estimates,
        mean_tau,
        mean_tau_se,
    })
}

/// One row of a parameter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub p: f64,
    pub k: u32,
    pub prob_sim: f64,
    pub se: f64,
    pub prob_formula: Option<f64>,
    pub formula_applicable: Applicability,
    pub trials: u64,
    pub seed: u64,
}

/// Estimate P(tau = k) for every k = 1..n and each p in `ps`, one simulation
/// per p. For n = 3, k = 1 the closed form covers the whole range of p.
pub fn sweep(n: u32, ps: &[f64], trials: u64, seed: u64, jobs: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(ps.len() * n as usize);
    for &p in ps {
        let report = simulate(SimParams { n, p, trials, seed }, jobs)?;
        for k in 1..=n {
            let app = applicability(p, k);
            let prob_formula = match app {
                Applicability::Outside => {
                    if n == 3 && k == 1 {
                        Some(formula_tau1_n3(p))
                    } else {
                        None
                    }
                }
                _ => Some(formula_tau_k(n, k, p)?),
            };
            rows.push(SweepRow {
                n,
                p,
                k,
                prob_sim: report.prob_of(k),
                se: report.se_of(k),
                prob_formula,
                formula_applicable: app,
                trials,
                seed,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_rng_is_counter_based() {
        let mut a = trial_rng(7, 3);
        let mut b = trial_rng(7, 3);
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
        let mut c = trial_rng(7, 4);
        let mut d = trial_rng(8, 3);
        let x = trial_rng(7, 3).gen::<u64>();
        assert_ne!(c.gen::<u64>(), x);
        assert_ne!(d.gen::<u64>(), x);
    }

    #[test]
    fn random_society_shape() {
        let s = random_society(6, 0.2, 1, 0).unwrap();
        assert_eq!(s.len(), 6);
        for a in s.arcs() {
            assert_eq!(*a.length(), 0.2);
            assert!(*a.left() >= 0.0 && *a.left() < 1.0);
        }
        // same (seed, trial) reproduces the society
        assert_eq!(s, random_society(6, 0.2, 1, 0).unwrap());
        assert_ne!(s, random_society(6, 0.2, 1, 1).unwrap());
    }

    #[test]
    fn random_society_rejects_bad_params() {
        assert!(random_society(0, 0.2, 1, 0).is_err());
        assert!(random_society(3, 0.0, 1, 0).is_err());
        assert!(random_society(3, 1.0, 1, 0).is_err());
    }

    #[test]
    fn formula_examples() {
        // n=5, k=4, p=0.15: C(5,4)(0.4)^3(0.6)^1 = 0.192
        let v = formula_tau_k(5, 4, 0.15).unwrap();
        assert!((v - 0.192).abs() < 1e-12);
        // n=5, k=5, p=0.15: (0.25)^4 = 0.00390625
        let v = formula_tau_k(5, 5, 0.15).unwrap();
        assert!((v - 0.00390625).abs() < 1e-12);
        // n=10, k=7, p=0.10: C(10,7)(0.3)^6(0.7)^3 = 0.0300...
        let v = formula_tau_k(10, 7, 0.10).unwrap();
        assert!((v - 120.0 * 0.3f64.powi(6) * 0.7f64.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn n3_tau1_formula_is_continuous() {
        for bp in [0.5, 2.0 / 3.0] {
            let lo = formula_tau1_n3(bp - 1e-9);
            let hi = formula_tau1_n3(bp + 1e-9);
            assert!((lo - hi).abs() < 1e-7, "discontinuity at {bp}");
        }
        assert!((formula_tau1_n3(0.3) - 0.27).abs() < 1e-12);
        assert_eq!(formula_tau1_n3(0.9), 1.0);
    }

    #[test]
    fn expected_tau_example() {
        // n=5, p=0.2: hand sum of k C(5,k)(1-kp)^(k-1)(kp)^(5-k)
        let v = expected_tau_formula(5, 0.2);
        assert!((v - 2.6317).abs() < 5e-4, "got {v}");
    }

    #[test]
    fn disjoint_probability_range() {
        assert!((disjoint_probability(1, 0.9).unwrap() - 1.0).abs() < 1e-15);
        assert!((disjoint_probability(2, 0.25).unwrap() - 0.5).abs() < 1e-15);
        assert!(disjoint_probability(4, 0.25).is_err());
    }

    #[test]
    fn disjoint_check_matches_closed_form() {
        let c = disjoint_probability_check(3, 0.1, 20_000, 5).unwrap();
        assert!((c.closed_form - 0.49).abs() < 1e-12);
        assert!(
            (c.estimate - c.closed_form).abs() < 3.0 * c.se.max(1e-9),
            "estimate {} vs {}",
            c.estimate,
            c.closed_form
        );
    }

    #[test]
    fn applicability_bands() {
        assert_eq!(applicability(0.1, 3), Applicability::Proven);
        assert_eq!(applicability(0.2, 3), Applicability::Conjectured);
        assert_eq!(applicability(0.4, 3), Applicability::Outside);
    }

    #[test]
    fn single_voter_always_tau_one() {
        let r = simulate(
            SimParams {
                n: 1,
                p: 0.3,
                trials: 50,
                seed: 11,
            },
            1,
        )
        .unwrap();
        assert_eq!(r.histogram.get(&1), Some(&50));
        assert_eq!(r.mean_tau, 1.0);
        assert_eq!(r.mean_tau_se, 0.0);
    }

    #[test]
    fn histogram_independent_of_jobs() {
        let params = SimParams {
            n: 5,
            p: 0.2,
            trials: 200,
            seed: 42,
        };
        let a = simulate(params, 1).unwrap();
        let b = simulate(params, 4).unwrap();
        assert_eq!(a.histogram, b.histogram);
    }

    #[test]
    fn long_arcs_give_tau_one() {
        // p = 0.95 >= (n-1)/n for n = 4
        let r = simulate(
            SimParams {
                n: 4,
                p: 0.95,
                trials: 100,
                seed: 3,
            },
            1,
        )
        .unwrap();
        assert_eq!(r.histogram.get(&1), Some(&100));
    }
}
