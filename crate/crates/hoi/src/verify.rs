//! Built-in invariant suite.
//!
//! Runs the identities that must hold for any correct build — gate tightness,
//! gradient bounds, the Ω = TC − DTC split, the chain rule, pair symmetry,
//! independent-block nullity, Ising null points — on the canonical gates and
//! on freshly generated random systems. The CLI exposes this as `hoi verify`;
//! a clean build exits 0 with every check passing.

use crate::discrete::{copy_gate, xor_gate, DiscreteJointDistribution};
use crate::error::Result;
use crate::ising::{linear_grid, sweep, IsingModel, SweepQuantity};
use crate::measures::EntropyCache;
use crate::subset::SubsetMask;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one invariant check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Suite parameters: the RNG seed and the number of random systems.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub systems: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            systems: 200,
        }
    }
}

/// A random dense pmf over `n` variables with the given per-variable
/// alphabet sizes: exponential weights, normalized.
pub fn random_distribution(
    rng: &mut impl Rng,
    alphabet_sizes: Vec<usize>,
) -> DiscreteJointDistribution {
    let states: usize = alphabet_sizes.iter().product();
    let weights: Vec<f64> = (0..states)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    let probs = weights.into_iter().map(|w| w / total).collect();
    DiscreteJointDistribution::new(alphabet_sizes, probs).expect("normalized by construction")
}

fn random_alphabets(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(2..=3)).collect()
}

/// Runs every check and returns the outcomes in order.
pub fn run_all(options: VerifyOptions) -> Vec<Check> {
    vec![
        gate_tightness(),
        gate_marginal_uniformity(),
        random_system_bounds(options),
        chain_rule(options),
        pair_symmetry(options),
        triple_coincidence(options),
        quadruple_divergence_witness(),
        independent_block_nullity(options),
        ising_null_point(),
        ising_peripheral_symmetry(),
        cache_determinism(),
    ]
}

fn gate_tightness() -> Check {
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let sys = SubsetMask::full(n);
        let copy = EntropyCache::new(copy_gate(n).unwrap());
        let xor = EntropyCache::new(xor_gate(n).unwrap());
        for i in 0..n {
            worst = worst.max((copy.gradient_first(sys, i).unwrap() - 1.0).abs());
            worst = worst.max((xor.gradient_first(sys, i).unwrap() - (2.0 - n as f64)).abs());
        }
    }
    Check::new(
        "gate tightness: copy = +1, xor = 2-n, n = 3..8",
        worst < 1e-12,
        format!("max |error| = {worst:.2e}"),
    )
}

fn gate_marginal_uniformity() -> Check {
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let xor = xor_gate(n).unwrap();
        let full = SubsetMask::full(n);
        worst = worst.max((xor.entropy(full).unwrap() - (n - 1) as f64).abs());
        for i in 0..n {
            let h = xor.entropy(full.without(i)).unwrap();
            worst = worst.max((h - (n - 1) as f64).abs());
        }
    }
    Check::new(
        "xor marginals: every (n-1)-subset is uniform",
        worst < 1e-12,
        format!("max |H - (n-1)| = {worst:.2e}"),
    )
}

fn random_system_bounds(options: VerifyOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut worst_bound: f64 = f64::NEG_INFINITY;
    let mut worst_split: f64 = 0.0;
    let mut worst_sign: f64 = 0.0;
    for _ in 0..options.systems {
        let n = rng.gen_range(3..=6);
        let alphabets = random_alphabets(&mut rng, n);
        let dist = random_distribution(&mut rng, alphabets);
        let log_alpha = dist
            .alphabet_sizes()
            .iter()
            .map(|&a| (a as f64).log2())
            .fold(f64::NEG_INFINITY, f64::max);
        let cache = EntropyCache::new(dist);
        let sys = cache.full_system();
        let tc = cache.total_correlation(sys).unwrap();
        let dtc = cache.dual_total_correlation(sys).unwrap();
        let omega = cache.o_information(sys).unwrap();
        worst_sign = worst_sign.min(tc).min(dtc);
        worst_split = worst_split.max((omega - (tc - dtc)).abs());
        let lower = -((n - 2) as f64) * log_alpha;
        for i in 0..n {
            let g = cache.gradient_first(sys, i).unwrap();
            worst_bound = worst_bound.max(g - log_alpha).max(lower - g);
        }
    }
    Check::new(
        "random systems: gradient bounds, TC/DTC >= 0, omega = TC - DTC",
        worst_bound <= 1e-9 && worst_sign >= -1e-9 && worst_split <= 1e-9,
        format!(
            "max bound excess = {worst_bound:.2e}, min TC/DTC = {worst_sign:.2e}, max |split error| = {worst_split:.2e}"
        ),
    )
}

/// Recursive gradient definition used as the chain-rule cross-check.
fn gradient_recursive(
    cache: &EntropyCache<DiscreteJointDistribution>,
    system: SubsetMask,
    gamma: SubsetMask,
) -> Result<f64> {
    let m = gamma.iter().next().expect("gamma non-empty");
    if gamma.len() == 1 {
        return Ok(cache.o_information(system)? - cache.o_information(system.without(m))?);
    }
    let rest = gamma.without(m);
    Ok(gradient_recursive(cache, system, rest)?
        - gradient_recursive(cache, system.without(m), rest)?)
}

fn chain_rule(options: VerifyOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..options.systems.min(100) {
        let n = rng.gen_range(4..=6);
        let alphabets = random_alphabets(&mut rng, n);
        let dist = random_distribution(&mut rng, alphabets);
        let cache = EntropyCache::new(dist);
        let sys = cache.full_system();
        let max_gamma = (n - 3).min(3);
        for size in 1..=max_gamma {
            for members in crate::inference::combinations(n, size) {
                let gamma = SubsetMask::from_iter(members.iter().copied());
                let via_ie = cache.gradient_k(sys, gamma).unwrap();
                let via_rec = gradient_recursive(&cache, sys, gamma).unwrap();
                worst = worst.max((via_ie - via_rec).abs());
            }
        }
    }
    Check::new(
        "chain rule: inclusion-exclusion = recursive difference, |gamma| <= 3",
        worst <= 1e-9,
        format!("max |difference| = {worst:.2e}"),
    )
}

fn pair_symmetry(options: VerifyOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x9a17);
    let mut identical = true;
    for _ in 0..options.systems.min(50) {
        let n = rng.gen_range(3..=6);
        let alphabets = random_alphabets(&mut rng, n);
        let dist = random_distribution(&mut rng, alphabets);
        let cache = EntropyCache::new(dist);
        let sys = cache.full_system();
        for i in 0..n {
            for j in (i + 1)..n {
                let ij = cache.gradient_second(sys, i, j).unwrap();
                let ji = cache.gradient_second(sys, j, i).unwrap();
                identical &= ij.to_bits() == ji.to_bits();
            }
        }
    }
    Check::new(
        "pair gradient symmetry is bit-for-bit",
        identical,
        String::from(if identical {
            "all pairs identical"
        } else {
            "asymmetry found"
        }),
    )
}

fn triple_coincidence(options: VerifyOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x3333);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let alphabets = random_alphabets(&mut rng, 3);
        let dist = random_distribution(&mut rng, alphabets);
        let cache = EntropyCache::new(dist);
        let sys = cache.full_system();
        let g = cache.gradient_second(sys, 0, 1).unwrap();
        let l = cache.local_o_information(sys, 0, 1).unwrap();
        worst = worst.max((g - l).abs());
    }
    Check::new(
        "n = 3: pair gradient coincides with local O-information",
        worst <= 1e-9,
        format!("max |difference| = {worst:.2e} over 100 random triples"),
    )
}

fn quadruple_divergence_witness() -> Check {
    let cache = EntropyCache::new(xor_gate(4).unwrap());
    let sys = cache.full_system();
    let g = cache.gradient_second(sys, 0, 1).unwrap();
    let l = cache.local_o_information(sys, 0, 1).unwrap();
    let gap = (g - l).abs();
    Check::new(
        "n = 4 witness: pair gradient and local O-information differ",
        gap > 0.1,
        format!("xor_gate(4): grad2 = {g:.6}, local = {l:.6}, gap = {gap:.6}"),
    )
}

fn independent_block_nullity(options: VerifyOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0xb10c);
    let mut worst: f64 = 0.0;
    for _ in 0..options.systems.min(50) {
        let la = random_alphabets(&mut rng, 3);
        let left = random_distribution(&mut rng, la);
        let ra = random_alphabets(&mut rng, 3);
        let right = random_distribution(&mut rng, ra);
        let nl = left.n_vars();
        let product = left.product(&right).unwrap();
        let cache = EntropyCache::new(product);
        let sys = cache.full_system();
        for i in 0..nl {
            for j in nl..cache.n_vars() {
                worst = worst.max(cache.gradient_second(sys, i, j).unwrap().abs());
            }
        }
    }
    Check::new(
        "independent blocks: cross-pair gradient vanishes",
        worst <= 1e-9,
        format!("max |grad2| across blocks = {worst:.2e}"),
    )
}

fn ising_null_point() -> Check {
    let model = IsingModel::hexagon(0.0).unwrap();
    let cache = EntropyCache::new(model.boltzmann_distribution().unwrap());
    let sys = cache.full_system();
    let mut worst: f64 = cache.o_information(sys).unwrap().abs();
    for i in 0..7 {
        worst = worst.max(cache.gradient_first(sys, i).unwrap().abs());
        for j in (i + 1)..7 {
            worst = worst.max(cache.gradient_second(sys, i, j).unwrap().abs());
            worst = worst.max(cache.local_o_information(sys, i, j).unwrap().abs());
        }
    }
    Check::new(
        "ising at beta = 0: every quantity is null",
        worst <= 1e-9,
        format!("max |value| = {worst:.2e}"),
    )
}

fn ising_peripheral_symmetry() -> Check {
    let betas = linear_grid(0.0, 2.0, 16);
    let first = sweep(
        IsingModel::hexagon,
        &betas,
        &SweepQuantity::all_first_order(7),
    )
    .unwrap();
    let reference = &first.curves[1].values;
    let mut spread: f64 = 0.0;
    for curve in &first.curves[2..] {
        for (a, b) in reference.iter().zip(&curve.values) {
            spread = spread.max((a - b).abs());
        }
    }
    let second = sweep(
        IsingModel::hexagon,
        &betas,
        &SweepQuantity::all_second_order(7),
    )
    .unwrap();
    let mut classes: Vec<&Vec<f64>> = Vec::new();
    for curve in &second.curves {
        let known = classes.iter().any(|rep| {
            rep.iter()
                .zip(&curve.values)
                .all(|(a, b)| (a - b).abs() <= 1e-9)
        });
        if !known {
            classes.push(&curve.values);
        }
    }
    Check::new(
        "ising hexagon: six equal peripheral curves, <= 5 pair classes",
        spread <= 1e-9 && classes.len() <= 5,
        format!(
            "peripheral spread = {spread:.2e}, pair classes = {}",
            classes.len()
        ),
    )
}

fn cache_determinism() -> Check {
    let dist = xor_gate(5).unwrap();
    let sys = SubsetMask::full(5);
    let first = EntropyCache::new(&dist);
    let cold = first
        .gradient_k(sys, SubsetMask::from_iter([0, 1]))
        .unwrap();
    let warm = first
        .gradient_k(sys, SubsetMask::from_iter([0, 1]))
        .unwrap();
    let fresh = EntropyCache::new(&dist)
        .gradient_k(sys, SubsetMask::from_iter([0, 1]))
        .unwrap();
    let ok = cold.to_bits() == warm.to_bits() && cold.to_bits() == fresh.to_bits();
    Check::new(
        "cache: cold and warm evaluations are bit-identical",
        ok,
        format!("value = {cold}"),
    )
}
