//! Bootstrap significance testing and exhaustive multiplet scans.
//!
//! Every statistic here follows the same resampling protocol: rows of the
//! data matrix are redrawn i.i.d. with replacement (`n_obs` rows per
//! replicate), the statistic is recomputed per replicate, and the percentile
//! interval at levels (α/2, 1−α/2) becomes the confidence interval. A
//! quantity is significant when that interval excludes zero. No
//! multiple-comparison correction is applied; the raw interval bounds are
//! exposed so users can correct downstream.
//!
//! Replicates run in parallel, but the RNG stream is split deterministically
//! per replicate index, so parallel and serial runs agree bit for bit: the
//! whole pipeline is a pure function of (data, order, n_boot, alpha, seed).
//!
//! Rows are treated as exchangeable — this is a plain i.i.d. bootstrap, not a
//! block bootstrap, so confidence intervals for strongly autocorrelated
//! series will be optimistic.

use crate::copula::{copula_transform, DataMatrix, GaussianModel};
use crate::discrete::DiscreteJointDistribution;
use crate::error::{Error, Result};
use crate::measures::{EntropyCache, EntropySource};
use crate::subset::SubsetMask;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default bootstrap replicate count.
pub const DEFAULT_N_BOOT: usize = 1000;
/// Two-sided significance level of the default 95% interval.
pub const DEFAULT_ALPHA: f64 = 0.05;
/// A failing replicate is redrawn at most this many times before giving up.
const MAX_REDRAWS: usize = 10;

/// How subset entropies are estimated from a data matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorBackend {
    /// Rank → normal scores → correlation matrix → closed-form entropies.
    GaussianCopula,
    /// Plug-in probability table from integer-coded columns.
    Discrete,
}

impl EstimatorBackend {
    /// Fits an entropy source to `data`.
    pub fn fit(&self, data: &DataMatrix) -> Result<Box<dyn EntropySource + Send + Sync>> {
        match self {
            EstimatorBackend::GaussianCopula => {
                Ok(Box::new(GaussianModel::fit(&copula_transform(data)?)?))
            }
            EstimatorBackend::Discrete => {
                let codes = integer_codes(data)?;
                Ok(Box::new(DiscreteJointDistribution::from_observations(
                    &codes,
                    data.n_obs(),
                    data.n_vars(),
                )?))
            }
        }
    }
}

fn integer_codes(data: &DataMatrix) -> Result<Vec<usize>> {
    let mut codes = Vec::with_capacity(data.n_obs() * data.n_vars());
    for t in 0..data.n_obs() {
        for (j, &v) in data.row(t).iter().enumerate() {
            if v < 0.0 || v.fract() != 0.0 || v > (1u64 << 32) as f64 {
                return Err(Error::NotIntegerCoded {
                    row: t,
                    col: j,
                    value: v,
                });
            }
            codes.push(v as usize);
        }
    }
    Ok(codes)
}

/// Bootstrap parameters; all randomness flows from `seed`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BootstrapSettings {
    pub n_boot: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl Default for BootstrapSettings {
    fn default() -> Self {
        Self {
            n_boot: DEFAULT_N_BOOT,
            alpha: DEFAULT_ALPHA,
            seed: 0,
        }
    }
}

impl BootstrapSettings {
    fn validate(&self) -> Result<()> {
        if self.n_boot < 100 {
            return Err(Error::TooFewReplicates {
                required: 100,
                actual: self.n_boot,
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::BadAlpha(self.alpha));
        }
        Ok(())
    }
}

/// Point estimate with a percentile bootstrap interval.
///
/// `significant` is true exactly when 0 lies outside `[ci_low, ci_high]`.
/// The interval need not contain the point estimate (percentile intervals
/// can exclude it for skewed statistics), but `ci_low <= ci_high` always
/// holds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientReport {
    pub label: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub significant: bool,
    pub n_boot: usize,
    pub seed: u64,
}

/// Empirical quantile with linear interpolation between order statistics.
fn percentile(sorted: &[f64], level: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = level * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (h - lo as f64)
}

fn report_from_samples(
    label: String,
    estimate: f64,
    mut samples: Vec<f64>,
    settings: &BootstrapSettings,
) -> GradientReport {
    samples.sort_by(f64::total_cmp);
    let ci_low = percentile(&samples, settings.alpha / 2.0);
    let ci_high = percentile(&samples, 1.0 - settings.alpha / 2.0);
    // The point estimate may legitimately fall outside a percentile
    // interval; the bounds themselves must be ordered.
    assert!(ci_low <= ci_high);
    GradientReport {
        label,
        estimate,
        ci_low,
        ci_high,
        significant: ci_low > 0.0 || ci_high < 0.0,
        n_boot: settings.n_boot,
        seed: settings.seed,
    }
}

/// Row indices of one replicate: `n_obs` draws with replacement, from a
/// ChaCha stream keyed by (seed, stream id). Stream ids encode the replicate
/// index and the redraw attempt, so no two draws anywhere share a stream.
fn resample_indices(n_obs: usize, seed: u64, stream: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n_obs).map(|_| rng.gen_range(0..n_obs)).collect()
}

/// Vector-valued bootstrap core: one resample per replicate, all target
/// quantities evaluated on it. Returns the replicate-major matrix.
fn bootstrap_samples<F>(
    data: &DataMatrix,
    statistic: &F,
    settings: &BootstrapSettings,
) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&DataMatrix) -> Result<Vec<f64>> + Sync,
{
    let n_boot = settings.n_boot;
    let seed = settings.seed;
    (0..n_boot)
        .into_par_iter()
        .map(|r| {
            let mut last: Option<Error> = None;
            for attempt in 0..MAX_REDRAWS {
                let stream = (attempt * n_boot + r) as u64;
                let rows = resample_indices(data.n_obs(), seed, stream);
                let sample = data.select_rows(&rows)?;
                match statistic(&sample) {
                    Ok(values) => return Ok(values),
                    Err(e) => last = Some(e),
                }
            }
            Err(Error::BootstrapExhausted {
                attempts: MAX_REDRAWS,
                last: last.expect("at least one attempt ran").to_string(),
            })
        })
        .collect()
}

/// Percentile-bootstrap report for an arbitrary scalar statistic of the data.
///
/// The statistic is evaluated once on the full sample for the point estimate
/// and once per replicate for the interval. A replicate on which the
/// statistic fails (a singular correlation, say) is redrawn, up to 10·n_boot
/// attempts overall. Deterministic given `settings.seed`.
pub fn bootstrap<F>(
    data: &DataMatrix,
    label: impl Into<String>,
    statistic: F,
    settings: &BootstrapSettings,
) -> Result<GradientReport>
where
    F: Fn(&DataMatrix) -> Result<f64> + Sync,
{
    settings.validate()?;
    let estimate = statistic(data)?;
    let rows = bootstrap_samples(data, &|d| statistic(d).map(|v| vec![v]), settings)?;
    let samples: Vec<f64> = rows.into_iter().map(|mut v| v.pop().unwrap()).collect();
    Ok(report_from_samples(
        label.into(),
        estimate,
        samples,
        settings,
    ))
}

/// All k-subsets of {0..n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn member_label(prefix: &str, members: &[usize], names: &[String]) -> String {
    let joined: Vec<&str> = members.iter().map(|&i| names[i].as_str()).collect();
    format!("{prefix}[{}]", joined.join(","))
}

/// The gradient targets of one order: γ-subsets in lexicographic order.
fn gradient_targets(n_vars: usize, order: usize) -> Vec<Vec<usize>> {
    combinations(n_vars, order)
}

fn evaluate_gradients(
    cache: &EntropyCache<Box<dyn EntropySource + Send + Sync>>,
    targets: &[Vec<usize>],
    order: usize,
) -> Result<Vec<f64>> {
    let sys = cache.full_system();
    targets
        .iter()
        .map(|members| match order {
            1 => cache.gradient_first(sys, members[0]),
            2 => cache.gradient_second(sys, members[0], members[1]),
            _ => cache.gradient_k(sys, SubsetMask::from_iter(members.iter().copied())),
        })
        .collect()
}

/// One significance report per gradient of the requested order.
///
/// Order 1 yields a report per variable, order 2 per unordered pair, and any
/// higher order a report per γ-subset via the chain rule (which needs
/// `n_vars - order >= 3`). Estimates come from the full sample; intervals
/// from the shared resampling protocol, every target evaluated on the same
/// replicates.
pub fn gradient_significance(
    data: &DataMatrix,
    backend: EstimatorBackend,
    order: usize,
    names: Option<&[String]>,
    settings: &BootstrapSettings,
) -> Result<Vec<GradientReport>> {
    settings.validate()?;
    if order == 0 {
        return Err(Error::Parse("gradient order must be at least 1".into()));
    }
    let names = match names {
        Some(n) => n.to_vec(),
        None => default_names(data.n_vars()),
    };
    let targets = gradient_targets(data.n_vars(), order);
    let statistic = |d: &DataMatrix| -> Result<Vec<f64>> {
        let cache = EntropyCache::new(backend.fit(d)?);
        evaluate_gradients(&cache, &targets, order)
    };
    let estimates = statistic(data)?;
    let samples = bootstrap_samples(data, &statistic, settings)?;
    let prefix = format!("grad{order}");
    Ok(targets
        .iter()
        .enumerate()
        .map(|(t, members)| {
            let column: Vec<f64> = samples.iter().map(|row| row[t]).collect();
            report_from_samples(
                member_label(&prefix, members, &names),
                estimates[t],
                column,
                settings,
            )
        })
        .collect())
}

/// Ω report for one multiplet of the scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultipletReport {
    pub members: Vec<usize>,
    #[serde(flatten)]
    pub report: GradientReport,
}

/// Redundancy/synergy totals attached to one variable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariableIndex {
    pub variable: usize,
    pub name: String,
    /// Σ Ω over significant redundant multiplets containing the variable (≥ 0).
    pub r_omega: f64,
    /// Σ Ω over significant synergistic multiplets containing it (≤ 0).
    pub s_omega: f64,
}

/// Redundancy/synergy totals attached to one unordered pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairIndex {
    pub i: usize,
    pub j: usize,
    pub name_i: String,
    pub name_j: String,
    pub r_omega: f64,
    pub s_omega: f64,
}

/// Exhaustive Ω scan over all multiplets of one order, with per-variable and
/// per-pair aggregation indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultipletScan {
    pub order: usize,
    pub multiplets: Vec<MultipletReport>,
    pub variable_indices: Vec<VariableIndex>,
    pub pair_indices: Vec<PairIndex>,
}

/// Evaluates Ω and its significance for every C(n_vars, order) multiplet,
/// then aggregates: a multiplet is redundant (synergistic) when its
/// full-sample Ω is positive (negative) *and* its interval excludes zero;
/// R_Ω sums redundant Ω over the multiplets containing a variable or pair,
/// S_Ω the synergistic ones.
pub fn scan_multiplets(
    data: &DataMatrix,
    backend: EstimatorBackend,
    order: usize,
    names: Option<&[String]>,
    settings: &BootstrapSettings,
) -> Result<MultipletScan> {
    settings.validate()?;
    if order != 3 && order != 4 {
        return Err(Error::BadScanOrder(order));
    }
    if data.n_vars() < order {
        return Err(Error::SystemTooSmall {
            required: order,
            actual: data.n_vars(),
        });
    }
    let names = match names {
        Some(n) => n.to_vec(),
        None => default_names(data.n_vars()),
    };
    let multiplets = combinations(data.n_vars(), order);
    let statistic = |d: &DataMatrix| -> Result<Vec<f64>> {
        let cache = EntropyCache::new(backend.fit(d)?);
        multiplets
            .iter()
            .map(|m| cache.o_information(SubsetMask::from_iter(m.iter().copied())))
            .collect()
    };
    let estimates = statistic(data)?;
    let samples = bootstrap_samples(data, &statistic, settings)?;

    let reports: Vec<MultipletReport> = multiplets
        .iter()
        .enumerate()
        .map(|(t, members)| {
            let column: Vec<f64> = samples.iter().map(|row| row[t]).collect();
            MultipletReport {
                members: members.clone(),
                report: report_from_samples(
                    member_label("omega", members, &names),
                    estimates[t],
                    column,
                    settings,
                ),
            }
        })
        .collect();

    let mut variable_indices: Vec<VariableIndex> = (0..data.n_vars())
        .map(|v| VariableIndex {
            variable: v,
            name: names[v].clone(),
            r_omega: 0.0,
            s_omega: 0.0,
        })
        .collect();
    let pair_members = combinations(data.n_vars(), 2);
    let mut pair_indices: Vec<PairIndex> = pair_members
        .iter()
        .map(|p| PairIndex {
            i: p[0],
            j: p[1],
            name_i: names[p[0]].clone(),
            name_j: names[p[1]].clone(),
            r_omega: 0.0,
            s_omega: 0.0,
        })
        .collect();
    let pair_slot = |i: usize, j: usize| -> usize {
        // Lexicographic rank of the pair (i < j) among C(n, 2).
        let n = data.n_vars();
        (0..i).map(|a| n - 1 - a).sum::<usize>() + (j - i - 1)
    };

    for m in &reports {
        if !m.report.significant {
            continue;
        }
        let omega = m.report.estimate;
        for (a, &va) in m.members.iter().enumerate() {
            if omega > 0.0 {
                variable_indices[va].r_omega += omega;
            } else if omega < 0.0 {
                variable_indices[va].s_omega += omega;
            }
            for &vb in &m.members[a + 1..] {
                let slot = pair_slot(va, vb);
                if omega > 0.0 {
                    pair_indices[slot].r_omega += omega;
                } else if omega < 0.0 {
                    pair_indices[slot].s_omega += omega;
                }
            }
        }
    }

    Ok(MultipletScan {
        order,
        multiplets: reports,
        variable_indices,
        pair_indices,
    })
}
