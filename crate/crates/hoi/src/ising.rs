//! Exact Boltzmann distributions for small coupled-spin systems.
//!
//! Spin systems up to 24 spins are enumerated exactly: every configuration
//! gets its Boltzmann weight, normalized through a log-sum-exp pass so large
//! β cannot underflow. The resulting table plugs straight into the
//! [`crate::measures::EntropyCache`], and [`sweep`] traces any of the
//! O-information quantities across an inverse-temperature grid.

use crate::discrete::DiscreteJointDistribution;
use crate::error::{Error, Result};
use crate::measures::EntropyCache;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest spin count for exact enumeration (2^24 states).
pub const MAX_SPINS: usize = 24;

/// Pairwise-coupled spin system at a fixed inverse temperature.
///
/// The Hamiltonian is H(s) = −Σ_{i<j} J_ij s_i s_j with each unordered pair
/// counted once, spins s_i ∈ {−1, +1}.
#[derive(Clone, Debug)]
pub struct IsingModel {
    n_spins: usize,
    couplings: Vec<f64>, // row-major n x n
    beta: f64,
}

impl IsingModel {
    /// Builds a model from a symmetric coupling matrix with zero diagonal
    /// (checked to 1e-12) and a non-negative inverse temperature.
    pub fn new(couplings: Vec<Vec<f64>>, beta: f64) -> Result<Self> {
        let n = couplings.len();
        if n == 0 || couplings.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("couplings must form a square matrix".into()));
        }
        if beta < 0.0 || !beta.is_finite() {
            return Err(Error::NegativeBeta(beta));
        }
        for (i, row) in couplings.iter().enumerate() {
            if row[i].abs() > 1e-12 {
                return Err(Error::AsymmetricCouplings { i, j: i });
            }
            for (j, &v) in row.iter().enumerate().skip(i + 1) {
                if (v - couplings[j][i]).abs() > 1e-12 {
                    return Err(Error::AsymmetricCouplings { i, j });
                }
            }
        }
        let flat = couplings.into_iter().flatten().collect();
        Ok(Self {
            n_spins: n,
            couplings: flat,
            beta,
        })
    }

    /// The frustrated-hexagon benchmark: spin 0 at the center of a
    /// six-spin ring.
    ///
    /// Ring couplings are ferromagnetic (+1) between neighbours; the six
    /// center–periphery couplings alternate −1, +1 around the ring, so every
    /// center–edge triangle is frustrated once the central spin joins the
    /// system. The rotation-plus-gauge symmetry of this placement makes all
    /// six peripheral spins informationally equivalent.
    pub fn hexagon(beta: f64) -> Result<Self> {
        let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(12);
        for k in 1..=6usize {
            let next = if k == 6 { 1 } else { k + 1 };
            edges.push((k, next, 1.0));
            edges.push((0, k, if k & 1 == 0 { 1.0 } else { -1.0 }));
        }
        let mut j = vec![vec![0.0; 7]; 7];
        for (a, b, v) in edges {
            j[a][b] = v;
            j[b][a] = v;
        }
        Self::new(j, beta)
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.couplings[i * self.n_spins + j]
    }

    /// H(s) = −Σ_{i<j} J_ij s_i s_j for the configuration encoded in `state`
    /// (bit of variable 0 most significant, bit 0 ↦ s = −1, bit 1 ↦ s = +1).
    pub fn hamiltonian(&self, state: usize) -> f64 {
        let n = self.n_spins;
        let spin = |i: usize| -> f64 {
            if state >> (n - 1 - i) & 1 == 1 {
                1.0
            } else {
                -1.0
            }
        };
        let mut energy = 0.0;
        for i in 0..n {
            let si = spin(i);
            for j in (i + 1)..n {
                let jij = self.coupling(i, j);
                if jij != 0.0 {
                    energy -= jij * si * spin(j);
                }
            }
        }
        energy
    }

    /// Exact Boltzmann distribution p(s) = exp(−β H(s)) / Z over all 2^n
    /// configurations.
    ///
    /// Weights are normalized via log-sum-exp so the table stays finite at
    /// any β; masses sum to 1 within 1e-12.
    pub fn boltzmann_distribution(&self) -> Result<DiscreteJointDistribution> {
        if self.n_spins > MAX_SPINS {
            return Err(Error::TableTooLarge {
                states: 1usize << self.n_spins,
                cap: 1usize << MAX_SPINS,
            });
        }
        let states = 1usize << self.n_spins;
        let log_weights: Vec<f64> = (0..states)
            .map(|s| -self.beta * self.hamiltonian(s))
            .collect();
        let max = log_weights
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = log_weights.iter().map(|&lw| (lw - max).exp()).collect();
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        DiscreteJointDistribution::new(vec![2; self.n_spins], probs)
    }

    /// Partition function by direct summation, Z = Σ_s exp(−β H(s)).
    pub fn partition_function(&self) -> f64 {
        let states = 1usize << self.n_spins;
        (0..states)
            .map(|s| (-self.beta * self.hamiltonian(s)).exp())
            .sum()
    }
}

/// One quantity to trace across a β grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepQuantity {
    OInformation,
    GradientFirst(usize),
    GradientSecond(usize, usize),
    LocalOInformation(usize, usize),
}

impl SweepQuantity {
    /// All first-order gradients of an n-spin system.
    pub fn all_first_order(n: usize) -> Vec<Self> {
        (0..n).map(SweepQuantity::GradientFirst).collect()
    }

    /// All pair gradients of an n-spin system.
    pub fn all_second_order(n: usize) -> Vec<Self> {
        let mut q = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                q.push(SweepQuantity::GradientSecond(i, j));
            }
        }
        q
    }

    /// All pairwise local O-informations of an n-spin system.
    pub fn all_local(n: usize) -> Vec<Self> {
        let mut q = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                q.push(SweepQuantity::LocalOInformation(i, j));
            }
        }
        q
    }

    fn evaluate(&self, cache: &EntropyCache<DiscreteJointDistribution>) -> Result<f64> {
        let sys = cache.full_system();
        match *self {
            SweepQuantity::OInformation => cache.o_information(sys),
            SweepQuantity::GradientFirst(i) => cache.gradient_first(sys, i),
            SweepQuantity::GradientSecond(i, j) => cache.gradient_second(sys, i, j),
            SweepQuantity::LocalOInformation(i, j) => cache.local_o_information(sys, i, j),
        }
    }
}

impl fmt::Display for SweepQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SweepQuantity::OInformation => write!(f, "oinfo"),
            SweepQuantity::GradientFirst(i) => write!(f, "grad1_{i}"),
            SweepQuantity::GradientSecond(i, j) => write!(f, "grad2_{i}_{j}"),
            SweepQuantity::LocalOInformation(i, j) => write!(f, "local_{i}_{j}"),
        }
    }
}

/// One traced curve: a quantity and its value at every grid point.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCurve {
    pub quantity: SweepQuantity,
    pub label: String,
    pub values: Vec<f64>,
}

/// Quantities traced over an inverse-temperature grid.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub betas: Vec<f64>,
    pub curves: Vec<SweepCurve>,
}

impl SweepResult {
    pub fn curve(&self, quantity: SweepQuantity) -> Option<&SweepCurve> {
        self.curves.iter().find(|c| c.quantity == quantity)
    }
}

/// Default β grid: 64 points, linear on [0, 2].
pub fn default_beta_grid() -> Vec<f64> {
    linear_grid(0.0, 2.0, 64)
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Evaluates every quantity at every grid point, exactly.
///
/// Grid points are independent and evaluated in parallel, one fresh entropy
/// cache per point; results are ordered by grid index regardless of
/// completion order.
pub fn sweep<F>(
    model_factory: F,
    betas: &[f64],
    quantities: &[SweepQuantity],
) -> Result<SweepResult>
where
    F: Fn(f64) -> Result<IsingModel> + Sync,
{
    if betas.is_empty() {
        return Err(Error::Parse("beta grid is empty".into()));
    }
    let per_beta: Vec<Vec<f64>> = betas
        .par_iter()
        .map(|&beta| -> Result<Vec<f64>> {
            let model = model_factory(beta)?;
            let cache = EntropyCache::new(model.boltzmann_distribution()?);
            quantities.iter().map(|q| q.evaluate(&cache)).collect()
        })
        .collect::<Result<_>>()?;
    let curves = quantities
        .iter()
        .enumerate()
        .map(|(qi, &quantity)| SweepCurve {
            quantity,
            label: quantity.to_string(),
            values: per_beta.iter().map(|row| row[qi]).collect(),
        })
        .collect();
    Ok(SweepResult {
        betas: betas.to_vec(),
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hexagon_geometry() {
        let m = IsingModel::hexagon(0.5).unwrap();
        assert_eq!(m.n_spins(), 7);
        let mut nonzero_pairs = 0;
        for i in 0..7 {
            assert_eq!(m.coupling(i, i), 0.0);
            for j in (i + 1)..7 {
                let jij = m.coupling(i, j);
                assert_eq!(jij, m.coupling(j, i));
                if jij != 0.0 {
                    nonzero_pairs += 1;
                    assert_eq!(jij.abs(), 1.0);
                }
            }
        }
        // 6 ring couplings + 6 spokes.
        assert_eq!(nonzero_pairs, 12);
        // Spokes alternate sign around the ring.
        for k in 1..=6usize {
            let next = if k == 6 { 1 } else { k + 1 };
            assert_eq!(m.coupling(0, k), -m.coupling(0, next));
        }
    }

    #[test]
    fn infinite_temperature_is_uniform() {
        let m = IsingModel::hexagon(0.0).unwrap();
        let d = m.boltzmann_distribution().unwrap();
        for &p in d.probs() {
            assert_abs_diff_eq!(p, 1.0 / 128.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(m.partition_function(), 128.0, epsilon = 1e-9);
    }

    #[test]
    fn global_spin_flip_symmetry() {
        let m = IsingModel::hexagon(0.7).unwrap();
        let d = m.boltzmann_distribution().unwrap();
        let states = d.probs().len();
        for s in 0..states {
            let flipped = !s & (states - 1);
            assert_abs_diff_eq!(d.probs()[s], d.probs()[flipped], epsilon = 1e-15);
        }
    }

    #[test]
    fn partition_function_matches_table_normalization() {
        let m = IsingModel::hexagon(1.3).unwrap();
        let d = m.boltzmann_distribution().unwrap();
        let z = m.partition_function();
        // p(s)·Z recovers the raw Boltzmann weight.
        for s in 0..128 {
            let w = (-m.beta() * m.hamiltonian(s)).exp();
            assert_abs_diff_eq!(d.probs()[s] * z / w, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn masses_stay_normalized_at_large_beta() {
        let m = IsingModel::hexagon(50.0).unwrap();
        let d = m.boltzmann_distribution().unwrap();
        let sum: f64 = d.probs().iter().sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
        assert!(d.probs().iter().all(|p| p.is_finite()));
    }

    #[test]
    fn asymmetric_couplings_are_rejected() {
        let mut j = vec![vec![0.0; 3]; 3];
        j[0][1] = 1.0;
        j[1][0] = -1.0;
        assert!(matches!(
            IsingModel::new(j, 0.1),
            Err(Error::AsymmetricCouplings { i: 0, j: 1 })
        ));
        assert!(matches!(
            IsingModel::hexagon(-0.1),
            Err(Error::NegativeBeta(_))
        ));
    }

    #[test]
    fn sweep_orders_results_by_grid_index() {
        let betas = linear_grid(0.0, 1.0, 5);
        let result = sweep(
            IsingModel::hexagon,
            &betas,
            &[SweepQuantity::OInformation, SweepQuantity::GradientFirst(0)],
        )
        .unwrap();
        assert_eq!(result.betas, betas);
        assert_eq!(result.curves.len(), 2);
        assert!(result.curves.iter().all(|c| c.values.len() == 5));
        // β = 0: independent spins, everything null.
        assert_abs_diff_eq!(result.curves[0].values[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(result.curves[1].values[0], 0.0, epsilon = 1e-9);
        assert_eq!(
            result.curve(SweepQuantity::GradientFirst(0)).unwrap().label,
            "grad1_0"
        );
    }
}
