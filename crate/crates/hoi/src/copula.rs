//! Gaussian-copula entropy estimation for continuous data.
//!
//! Each column is rank-transformed to normal scores — the empirical copula
//! composed with the standard normal quantile function — and a correlation
//! matrix is fitted to the scores. Any subset entropy then has the closed
//! Gaussian form ½ log2((2πe)^k det R_sub), so the whole O-information
//! algebra runs against the fitted [`GaussianModel`] exactly as it does
//! against a discrete table.
//!
//! Ranks are normalized as r/(N+1), which keeps every score finite, and ties
//! receive average ranks. The plug-in estimator is not bias-corrected;
//! significance is the bootstrap's job.

use crate::error::{Error, Result};
use crate::measures::EntropySource;
use crate::subset::SubsetMask;
use nalgebra::DMatrix;
use statrs::distribution::{ContinuousCDF, Normal};

/// Observations × variables table of finite reals.
///
/// Requires `n_obs >= n_vars + 2` so a correlation matrix is estimable.
#[derive(Clone, Debug)]
pub struct DataMatrix {
    values: Vec<f64>, // row-major
    n_obs: usize,
    n_vars: usize,
}

impl DataMatrix {
    /// Builds from a row-major buffer of `n_obs * n_vars` finite values.
    pub fn new(values: Vec<f64>, n_obs: usize, n_vars: usize) -> Result<Self> {
        if values.len() != n_obs * n_vars || n_vars == 0 {
            return Err(Error::Parse(format!(
                "data buffer of {} entries does not match {n_obs} x {n_vars}",
                values.len()
            )));
        }
        if n_obs < n_vars + 2 {
            return Err(Error::TooFewObservations { n_obs, n_vars });
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: k / n_vars,
                    col: k % n_vars,
                });
            }
        }
        Ok(Self {
            values,
            n_obs,
            n_vars,
        })
    }

    /// Builds from per-variable columns of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n_vars = columns.len();
        let n_obs = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n_obs) {
            return Err(Error::Parse("columns have unequal lengths".into()));
        }
        let mut values = Vec::with_capacity(n_obs * n_vars);
        for t in 0..n_obs {
            for col in columns {
                values.push(col[t]);
            }
        }
        Self::new(values, n_obs, n_vars)
    }

    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n_vars + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.n_vars..(row + 1) * self.n_vars]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n_obs).map(|t| self.get(t, col)).collect()
    }

    /// New matrix built from the given rows of `self`, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.n_vars);
        for &t in rows {
            values.extend_from_slice(self.row(t));
        }
        Self::new(values, rows.len(), self.n_vars)
    }
}

/// Average ranks (1-based) of a column, ties sharing the mean rank.
fn average_ranks(column: &[f64]) -> Vec<f64> {
    let n = column.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| column[a].total_cmp(&column[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && column[order[end]] == column[order[start]] {
            end += 1;
        }
        // Positions start..end hold equal values; ranks are 1-based.
        let mean_rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = mean_rank;
        }
        start = end;
    }
    ranks
}

/// Rank-transforms every column to normal scores Φ⁻¹(r/(N+1)).
///
/// The output is invariant under strictly monotone per-column transformations
/// of the input, and each column has empirical mean ≈ 0. A constant column
/// has no usable ranks and is reported as an error.
pub fn copula_transform(data: &DataMatrix) -> Result<DataMatrix> {
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let n = data.n_obs() as f64;
    let mut columns = Vec::with_capacity(data.n_vars());
    for j in 0..data.n_vars() {
        let col = data.column(j);
        let distinct = {
            let mut sorted = col.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            sorted.len()
        };
        if distinct < 2 {
            return Err(Error::ConstantColumn { index: j });
        }
        let scores: Vec<f64> = average_ranks(&col)
            .into_iter()
            .map(|r| normal.inverse_cdf(r / (n + 1.0)))
            .collect();
        columns.push(scores);
    }
    DataMatrix::from_columns(&columns)
}

/// Correlation matrix of copula-transformed data, the entropy backend for
/// continuous variables.
#[derive(Clone, Debug)]
pub struct GaussianModel {
    corr: DMatrix<f64>,
}

/// Condition-number threshold above which a fit is rejected as singular.
pub const MAX_CONDITION_NUMBER: f64 = 1e12;

impl GaussianModel {
    /// Sample correlation matrix of the columns of `data` (normally the
    /// output of [`copula_transform`]).
    ///
    /// Rejects singular or near-singular fits (condition number above
    /// [`MAX_CONDITION_NUMBER`]); see [`Self::fit_ridged`] for the escape
    /// hatch.
    pub fn fit(data: &DataMatrix) -> Result<Self> {
        Self::fit_impl(data, 0.0)
    }

    /// As [`Self::fit`] but shrinks the correlation toward the identity,
    /// (R + ridge·I) / (1 + ridge), before validation.
    pub fn fit_ridged(data: &DataMatrix, ridge: f64) -> Result<Self> {
        Self::fit_impl(data, ridge)
    }

    fn fit_impl(data: &DataMatrix, ridge: f64) -> Result<Self> {
        let p = data.n_vars();
        let n = data.n_obs();
        let means: Vec<f64> = (0..p)
            .map(|j| data.column(j).iter().sum::<f64>() / n as f64)
            .collect();
        let mut cov = DMatrix::<f64>::zeros(p, p);
        for t in 0..n {
            let row = data.row(t);
            for i in 0..p {
                let di = row[i] - means[i];
                for j in i..p {
                    cov[(i, j)] += di * (row[j] - means[j]);
                }
            }
        }
        let mut corr = DMatrix::zeros(p, p);
        for i in 0..p {
            if cov[(i, i)] <= 0.0 {
                return Err(Error::ConstantColumn { index: i });
            }
        }
        for i in 0..p {
            corr[(i, i)] = 1.0;
            for j in (i + 1)..p {
                let r = cov[(i, j)] / (cov[(i, i)] * cov[(j, j)]).sqrt();
                corr[(i, j)] = r;
                corr[(j, i)] = r;
            }
        }
        if ridge > 0.0 {
            let scale = 1.0 + ridge;
            for i in 0..p {
                for j in 0..p {
                    let target = if i == j {
                        corr[(i, j)] + ridge
                    } else {
                        corr[(i, j)]
                    };
                    corr[(i, j)] = target / scale;
                }
            }
        }
        Self::from_correlation(corr)
    }

    /// Wraps an explicit correlation matrix, validating symmetry (1e-12),
    /// unit diagonal (1e-12), positive definiteness, and conditioning.
    pub fn from_correlation(corr: DMatrix<f64>) -> Result<Self> {
        let p = corr.nrows();
        if p == 0 || corr.ncols() != p {
            return Err(Error::Parse("correlation matrix must be square".into()));
        }
        if p > SubsetMask::MAX_VARS {
            return Err(Error::Parse(format!(
                "at most {} variables supported, got {p}",
                SubsetMask::MAX_VARS
            )));
        }
        for i in 0..p {
            if (corr[(i, i)] - 1.0).abs() > 1e-12 {
                return Err(Error::Parse(format!(
                    "diagonal entry [{i}][{i}] = {} is not 1",
                    corr[(i, i)]
                )));
            }
            for j in (i + 1)..p {
                if (corr[(i, j)] - corr[(j, i)]).abs() > 1e-12 {
                    return Err(Error::Parse(format!(
                        "correlation matrix is asymmetric at [{i}][{j}]"
                    )));
                }
            }
        }
        let eigen = corr.clone().symmetric_eigen();
        let min = eigen
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let max = eigen
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        if min <= 0.0 {
            return Err(Error::SingularCorrelation {
                cond: f64::INFINITY,
            });
        }
        let cond = max / min;
        if cond > MAX_CONDITION_NUMBER {
            return Err(Error::SingularCorrelation { cond });
        }
        Ok(Self { corr })
    }

    pub fn n_vars(&self) -> usize {
        self.corr.nrows()
    }

    pub fn correlation(&self) -> &DMatrix<f64> {
        &self.corr
    }

    /// Differential entropy of the subset, ½ log2((2πe)^k det R_sub) bits.
    ///
    /// The log-determinant is accumulated in log space from a Cholesky
    /// factorization of the subset correlation; a factorization failure means
    /// the submatrix is numerically non-positive and is reported as a
    /// breakdown rather than propagated as NaN.
    pub fn entropy(&self, subset: SubsetMask) -> Result<f64> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !subset.valid_for(self.n_vars()) {
            return Err(Error::InvalidSubset {
                subset,
                n_vars: self.n_vars(),
            });
        }
        let idx: Vec<usize> = subset.iter().collect();
        let k = idx.len();
        let sub = DMatrix::from_fn(k, k, |r, c| self.corr[(idx[r], idx[c])]);
        let chol = sub.cholesky().ok_or(Error::NumericalBreakdown)?;
        let log2_det: f64 = (0..k).map(|i| 2.0 * chol.l_dirty()[(i, i)].log2()).sum();
        Ok(0.5 * (k as f64 * LOG2_TWO_PI_E + log2_det))
    }
}

/// log2(2πe), the per-variable constant of the Gaussian entropy.
pub const LOG2_TWO_PI_E: f64 = 4.094191170361282;

impl EntropySource for GaussianModel {
    fn n_vars(&self) -> usize {
        self.corr.nrows()
    }

    fn subset_entropy(&self, subset: SubsetMask) -> Result<f64> {
        self.entropy(subset)
    }
}
