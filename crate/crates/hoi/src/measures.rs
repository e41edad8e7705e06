//! O-information and its gradients.
//!
//! Everything here is an algebraic combination of subset entropies, evaluated
//! against an [`EntropySource`] through a memoized [`EntropyCache`]. Working
//! in a single numerical path — every mutual information is expanded to
//! entropies drawn from the same cache — makes the internal identities
//! (Ω = TC − DTC, the chain rule, pair symmetry) hold to within rounding.
//!
//! For a system S of k variables with joint entropy H(S):
//!
//! * total correlation: TC(S) = Σ_i H(X_i) − H(S)
//! * dual total correlation: DTC(S) = H(S) − Σ_i [H(S) − H(S−i)]
//! * O-information: Ω(S) = TC(S) − DTC(S) = (k−2) H(S) + Σ_i [H(X_i) − H(S−i)]
//!
//! A positive Ω means redundancy dominates the multiplet, a negative Ω means
//! synergy dominates. The gradients localise that balance:
//!
//! * first order: ∂_i Ω = Ω(S) − Ω(S−i) = I(X_i; S−i) − Σ_{j≠i} I(X_j; X_i | S−ij)
//! * second order: ∂²_ij Ω = ∂_i Ω(S) − ∂_i Ω(S−j), symmetric in (i, j)
//! * order |γ|: ∂_γ Ω = Σ_{α ⊆ γ} (−1)^|α| Ω(S−α)
//!
//! For discrete sources the first-order gradient is bounded by
//! −(k−2)·log2|X| ≤ ∂_i Ω ≤ log2|X| where |X| is the largest alphabet; both
//! bounds are tight (COPY and XOR gates respectively).

use crate::error::{Error, Result};
use crate::subset::SubsetMask;
use std::collections::HashMap;
use std::sync::RwLock;

/// A deterministic supplier of subset entropies, in bits.
///
/// Implementations must be pure: repeated calls with the same subset return
/// the same value. [`crate::discrete::DiscreteJointDistribution`] is the
/// exact backend; [`crate::copula::GaussianModel`] the closed-form Gaussian
/// one (whose differential entropies may be negative — only entropy
/// differences enter the measures above, so the algebra is unaffected).
pub trait EntropySource {
    fn n_vars(&self) -> usize;

    /// Entropy of the marginal on `subset`, in bits.
    fn subset_entropy(&self, subset: SubsetMask) -> Result<f64>;

    /// log2 of the largest alphabet cardinality, when one exists.
    ///
    /// Finite for discrete sources; `None` for differential-entropy sources,
    /// where the gradient bounds do not apply.
    fn max_alphabet_log2(&self) -> Option<f64> {
        None
    }
}

impl<T: EntropySource + ?Sized> EntropySource for &T {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn subset_entropy(&self, subset: SubsetMask) -> Result<f64> {
        (**self).subset_entropy(subset)
    }
    fn max_alphabet_log2(&self) -> Option<f64> {
        (**self).max_alphabet_log2()
    }
}

impl EntropySource for Box<dyn EntropySource + Send + Sync> {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn subset_entropy(&self, subset: SubsetMask) -> Result<f64> {
        (**self).subset_entropy(subset)
    }
    fn max_alphabet_log2(&self) -> Option<f64> {
        (**self).max_alphabet_log2()
    }
}

/// Memoized subset entropies over one immutable source.
///
/// The chain rule touches 2^|γ| subsystems and every Ω term re-reads the same
/// marginals; the cache is what makes that affordable. One cache is bound to
/// one source for its whole life, so invalidation never arises. Lookups are
/// synchronized: concurrent callers may duplicate a computation, but the
/// source is deterministic, so they observe identical values.
pub struct EntropyCache<S> {
    source: S,
    memo: RwLock<HashMap<SubsetMask, f64>>,
}

impl<S: EntropySource> EntropyCache<S> {
    pub fn new(source: S) -> Self {
        Self {
            source,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn n_vars(&self) -> usize {
        self.source.n_vars()
    }

    /// The mask {0, ..., n_vars−1}.
    pub fn full_system(&self) -> SubsetMask {
        SubsetMask::full(self.n_vars())
    }

    /// Number of memoized subsets.
    pub fn cached_subsets(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// Memoized entropy of `subset`, in bits.
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
        if let Some(&h) = self.memo.read().unwrap().get(&subset) {
            return Ok(h);
        }
        let h = self.source.subset_entropy(subset)?;
        self.memo.write().unwrap().insert(subset, h);
        Ok(h)
    }

    /// I(X_a; X_rest) expanded to entropies: H(a) + H(rest) − H(a ∪ rest).
    fn mutual_information(&self, a: usize, rest: SubsetMask) -> Result<f64> {
        Ok(self.entropy(SubsetMask::single(a))? + self.entropy(rest)?
            - self.entropy(rest.with(a))?)
    }

    /// Total correlation of the subsystem `system`: Σ H(X_i) − H(system).
    pub fn total_correlation(&self, system: SubsetMask) -> Result<f64> {
        self.check_system(system, 2)?;
        let mut sum = 0.0;
        for i in system.iter() {
            sum += self.entropy(SubsetMask::single(i))?;
        }
        Ok(sum - self.entropy(system)?)
    }

    /// Dual total correlation: H(system) − Σ [H(system) − H(system−i)].
    pub fn dual_total_correlation(&self, system: SubsetMask) -> Result<f64> {
        self.check_system(system, 2)?;
        let h_all = self.entropy(system)?;
        let mut residual = 0.0;
        for i in system.iter() {
            residual += h_all - self.entropy(system.without(i))?;
        }
        Ok(h_all - residual)
    }

    /// O-information of the subsystem: (k−2) H(system) + Σ [H(X_i) − H(system−i)].
    ///
    /// Requires at least 3 variables; Ω is a high-order measure.
    pub fn o_information(&self, system: SubsetMask) -> Result<f64> {
        self.check_system(system, 3)?;
        let k = system.len();
        let mut omega = (k as f64 - 2.0) * self.entropy(system)?;
        for i in system.iter() {
            omega += self.entropy(SubsetMask::single(i))? - self.entropy(system.without(i))?;
        }
        Ok(omega)
    }

    /// First-order gradient ∂_i Ω: the change in O-information when variable
    /// `i` is added to the rest of the system.
    ///
    /// Evaluated as ∂_i TC − ∂_i DTC expanded to entropies,
    /// I(X_i; S−i) − Σ_{j≠i} I(X_j; X_i | S−ij), which is defined from k = 3
    /// upward and agrees with Ω(S) − Ω(S−i) whenever k ≥ 4. Positive values
    /// mean `i` brings mostly redundant information, negative values mean it
    /// fosters synergy.
    pub fn gradient_first(&self, system: SubsetMask, i: usize) -> Result<f64> {
        self.check_system(system, 3)?;
        self.check_member(system, i)?;
        let rest = system.without(i);
        let h_all = self.entropy(system)?;
        let h_rest = self.entropy(rest)?;
        let mut grad = self.entropy(SubsetMask::single(i))? + h_rest - h_all;
        for j in rest.iter() {
            grad -=
                h_rest + self.entropy(system.without(j))? - self.entropy(rest.without(j))? - h_all;
        }
        Ok(grad)
    }

    /// Gradient of the total correlation, ∂_i TC = I(X_i; S−i). Non-negative.
    pub fn gradient_tc(&self, system: SubsetMask, i: usize) -> Result<f64> {
        self.check_system(system, 3)?;
        self.check_member(system, i)?;
        self.mutual_information(i, system.without(i))
    }

    /// Gradient of the dual total correlation,
    /// ∂_i DTC = Σ_{j≠i} I(X_j; X_i | S−ij). Non-negative, and
    /// ∂_i Ω = ∂_i TC − ∂_i DTC.
    pub fn gradient_dtc(&self, system: SubsetMask, i: usize) -> Result<f64> {
        self.check_system(system, 3)?;
        self.check_member(system, i)?;
        let h_all = self.entropy(system)?;
        let h_rest = self.entropy(system.without(i))?;
        let mut grad = 0.0;
        for j in system.iter().filter(|&j| j != i) {
            grad += h_rest + self.entropy(system.without(j))?
                - self.entropy(system.without(i).without(j))?
                - h_all;
        }
        Ok(grad)
    }

    /// Second-order gradient ∂²_ij Ω = ∂_i Ω(S) − ∂_i Ω(S−j).
    ///
    /// Measures how much the joint inclusion of the pair beats the sum of
    /// their separate inclusions; it vanishes when `i` and `j` sit in
    /// statistically independent circuits. Symmetric in (i, j) bit-for-bit:
    /// the evaluation is canonicalized on the sorted pair. For k = 3 the
    /// difference form is undefined and the pair gradient coincides with the
    /// local O-information, which is used directly.
    pub fn gradient_second(&self, system: SubsetMask, i: usize, j: usize) -> Result<f64> {
        self.check_system(system, 3)?;
        self.check_member(system, i)?;
        self.check_member(system, j)?;
        if i == j {
            return Err(Error::DuplicateIndex(i));
        }
        if system.len() == 3 {
            return self.local_o_information(system, i, j);
        }
        let (a, b) = (i.min(j), i.max(j));
        Ok(self.gradient_first(system, a)? - self.gradient_first(system.without(b), a)?)
    }

    /// Gradient of order |γ| by inclusion–exclusion over the subset lattice:
    /// ∂_γ Ω = Σ_{α ⊆ γ} (−1)^|α| Ω(S−α).
    ///
    /// Every term must involve at least 3 variables, so |S| − |γ| ≥ 3 is
    /// required. For |γ| = 1 this is the plain difference Ω(S) − Ω(S−i), and
    /// for |γ| = 2 it reproduces the pair gradient.
    pub fn gradient_k(&self, system: SubsetMask, gamma: SubsetMask) -> Result<f64> {
        self.check_system(system, 3)?;
        if gamma.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !gamma.is_subset_of(system) {
            let index = gamma.difference(system).iter().next().unwrap();
            return Err(Error::NotInSystem { index, system });
        }
        let remaining = system.len() - gamma.len();
        if remaining < 3 {
            return Err(Error::GradientOrderTooHigh { gamma, remaining });
        }
        let mut grad = 0.0;
        for alpha in gamma.subsets() {
            let sign = if alpha.len() % 2 == 0 { 1.0 } else { -1.0 };
            grad += sign * self.o_information(system.difference(alpha))?;
        }
        Ok(grad)
    }

    /// Local O-information of the pair: the interaction information
    /// I(X_i; X_j; S−ij), with the rest of the system treated as one block.
    ///
    /// Expanded symmetrically to entropies:
    /// H(i) + H(j) + H(S−ij) − H(ij) − H(S−j) − H(S−i) + H(S).
    /// Positive values indicate redundancy, negative synergy. Coincides with
    /// [`Self::gradient_second`] for k = 3 and generally differs for k ≥ 4.
    pub fn local_o_information(&self, system: SubsetMask, i: usize, j: usize) -> Result<f64> {
        self.check_system(system, 3)?;
        self.check_member(system, i)?;
        self.check_member(system, j)?;
        if i == j {
            return Err(Error::DuplicateIndex(i));
        }
        let pair = SubsetMask::single(i).with(j);
        let rest = system.difference(pair);
        Ok(self.entropy(SubsetMask::single(i))?
            + self.entropy(SubsetMask::single(j))?
            + self.entropy(rest)?
            - self.entropy(pair)?
            - self.entropy(system.without(i))?
            - self.entropy(system.without(j))?
            + self.entropy(system)?)
    }

    fn check_system(&self, system: SubsetMask, min_size: usize) -> Result<()> {
        if !system.valid_for(self.n_vars()) {
            return Err(Error::InvalidSubset {
                subset: system,
                n_vars: self.n_vars(),
            });
        }
        if system.len() < min_size {
            return Err(Error::SystemTooSmall {
                required: min_size,
                actual: system.len(),
            });
        }
        Ok(())
    }

    fn check_member(&self, system: SubsetMask, i: usize) -> Result<()> {
        if system.contains(i) {
            Ok(())
        } else {
            Err(Error::NotInSystem { index: i, system })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{copy_gate, xor_gate, DiscreteJointDistribution};
    use approx::assert_abs_diff_eq;

    fn cache_of(d: DiscreteJointDistribution) -> EntropyCache<DiscreteJointDistribution> {
        EntropyCache::new(d)
    }

    fn independent_coins(n: usize) -> DiscreteJointDistribution {
        DiscreteJointDistribution::uniform(vec![2; n]).unwrap()
    }

    #[test]
    fn gate_reference_values() {
        // copy_gate(3): TC = 3·1 − 1 = 2, DTC = 1 − 0 = 1, Ω = +1.
        let copy = cache_of(copy_gate(3).unwrap());
        let sys = copy.full_system();
        assert_abs_diff_eq!(copy.total_correlation(sys).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            copy.dual_total_correlation(sys).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(copy.o_information(sys).unwrap(), 1.0, epsilon = 1e-12);

        // xor_gate(3): TC = 3·1 − 2 = 1, DTC = 2 − 0 = 2, Ω = −1.
        let xor = cache_of(xor_gate(3).unwrap());
        assert_abs_diff_eq!(xor.total_correlation(sys).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            xor.dual_total_correlation(sys).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(xor.o_information(sys).unwrap(), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn independent_variables_have_null_measures() {
        let c = cache_of(independent_coins(5));
        let sys = c.full_system();
        assert_abs_diff_eq!(c.total_correlation(sys).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.dual_total_correlation(sys).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.o_information(sys).unwrap(), 0.0, epsilon = 1e-12);
        for i in 0..5 {
            assert_abs_diff_eq!(c.gradient_first(sys, i).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c.gradient_tc(sys, i).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c.gradient_dtc(sys, i).unwrap(), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(c.gradient_second(sys, 0, 3).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            c.local_o_information(sys, 0, 3).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gradient_first_is_tight_on_the_gates() {
        for n in 3..=7 {
            let copy = cache_of(copy_gate(n).unwrap());
            let xor = cache_of(xor_gate(n).unwrap());
            let sys = SubsetMask::full(n);
            for i in 0..n {
                assert_abs_diff_eq!(copy.gradient_first(sys, i).unwrap(), 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(
                    xor.gradient_first(sys, i).unwrap(),
                    2.0 - n as f64,
                    epsilon = 1e-12
                );
            }
            // COPY: every variable carries the single shared bit.
            assert_abs_diff_eq!(copy.gradient_tc(sys, 0).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gradient_first_agrees_with_omega_difference() {
        let c = cache_of(
            copy_gate(5)
                .unwrap()
                .product(&xor_gate(3).unwrap())
                .unwrap(),
        );
        let sys = c.full_system();
        for i in 0..8 {
            let via_mi = c.gradient_first(sys, i).unwrap();
            let via_diff = c.o_information(sys).unwrap() - c.o_information(sys.without(i)).unwrap();
            assert_abs_diff_eq!(via_mi, via_diff, epsilon = 1e-9);
            let split = c.gradient_tc(sys, i).unwrap() - c.gradient_dtc(sys, i).unwrap();
            assert_abs_diff_eq!(via_mi, split, epsilon = 1e-9);
        }
    }

    #[test]
    fn pair_gradient_is_bit_for_bit_symmetric() {
        let c = cache_of(xor_gate(5).unwrap());
        let sys = c.full_system();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let ij = c.gradient_second(sys, i, j).unwrap();
                    let ji = c.gradient_second(sys, j, i).unwrap();
                    assert_eq!(ij.to_bits(), ji.to_bits());
                }
            }
        }
    }

    #[test]
    fn triple_coincidence_and_quadruple_divergence() {
        // k = 3: pair gradient and local O-information coincide.
        let c3 = cache_of(xor_gate(3).unwrap());
        let s3 = c3.full_system();
        let g = c3.gradient_second(s3, 0, 1).unwrap();
        let l = c3.local_o_information(s3, 0, 1).unwrap();
        assert_abs_diff_eq!(g, l, epsilon = 1e-12);
        assert_abs_diff_eq!(l, -1.0, epsilon = 1e-12);

        // k = 4 (XOR): ∂²Ω = −2 while the local O-information stays at −1.
        let c4 = cache_of(xor_gate(4).unwrap());
        let s4 = c4.full_system();
        assert_abs_diff_eq!(c4.gradient_second(s4, 0, 1).unwrap(), -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            c4.local_o_information(s4, 0, 1).unwrap(),
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn chain_rule_reduces_to_low_orders() {
        let c = cache_of(
            copy_gate(4)
                .unwrap()
                .product(&xor_gate(3).unwrap())
                .unwrap(),
        );
        let sys = c.full_system();
        for i in 0..7 {
            let via_k = c.gradient_k(sys, SubsetMask::single(i)).unwrap();
            let via_first = c.gradient_first(sys, i).unwrap();
            assert_abs_diff_eq!(via_k, via_first, epsilon = 1e-9);
        }
        for i in 0..7 {
            for j in (i + 1)..7 {
                let gamma = SubsetMask::single(i).with(j);
                let via_k = c.gradient_k(sys, gamma).unwrap();
                let via_second = c.gradient_second(sys, i, j).unwrap();
                assert_abs_diff_eq!(via_k, via_second, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        let c = cache_of(independent_coins(4));
        let sys = c.full_system();
        assert!(matches!(
            c.o_information(SubsetMask::from_iter([0, 1])),
            Err(Error::SystemTooSmall { .. })
        ));
        assert!(matches!(
            c.gradient_first(sys, 9),
            Err(Error::NotInSystem { .. })
        ));
        assert!(matches!(
            c.gradient_second(sys, 2, 2),
            Err(Error::DuplicateIndex(2))
        ));
        assert!(matches!(
            c.gradient_k(sys, SubsetMask::from_iter([0, 1])),
            Err(Error::GradientOrderTooHigh { .. })
        ));
        assert!(matches!(
            c.entropy(SubsetMask::EMPTY),
            Err(Error::EmptySubset)
        ));
        assert!(matches!(
            c.entropy(SubsetMask::single(63)),
            Err(Error::InvalidSubset { .. })
        ));
    }

    #[test]
    fn cold_and_warm_caches_agree_bit_for_bit() {
        let dist = xor_gate(4).unwrap();
        let sys = SubsetMask::full(4);

        let cold = EntropyCache::new(&dist);
        let first = cold.gradient_first(sys, 0).unwrap();
        let warm = cold.gradient_first(sys, 0).unwrap();
        assert_eq!(first.to_bits(), warm.to_bits());

        let fresh = EntropyCache::new(&dist);
        assert_eq!(
            fresh.gradient_first(sys, 0).unwrap().to_bits(),
            first.to_bits()
        );
        assert!(cold.cached_subsets() > 0);
    }
}
