//! Exact finite discrete joint distributions.
//!
//! A [`DiscreteJointDistribution`] is a normalized probability table over a
//! finite product alphabet. It is the exact entropy backend: marginals are
//! computed by summing the table, entropies by the plug-in formula in bits.
//!
//! States are encoded in mixed radix, row-major, with variable 0 most
//! significant: for alphabet sizes `(a_0, ..., a_{n-1})` the state
//! `(s_0, ..., s_{n-1})` has index `((s_0 * a_1 + s_1) * a_2 + s_2) * ...`.
//! Table dumps are therefore reproducible bit-exactly.

use crate::error::{Error, Result};
use crate::measures::EntropySource;
use crate::subset::SubsetMask;
use std::io::{BufRead, Write};

/// Default cap on table size; larger tables are an error, not a truncation.
pub const DEFAULT_MAX_STATES: usize = 1 << 24;

/// A normalized probability table over a finite product alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteJointDistribution {
    alphabet_sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl DiscreteJointDistribution {
    /// Builds a distribution from per-variable alphabet sizes and a flat
    /// probability table of length `prod(alphabet_sizes)`.
    ///
    /// Masses must be non-negative and sum to 1 within 1e-12. Tables larger
    /// than [`DEFAULT_MAX_STATES`] are rejected; use [`Self::with_max_states`]
    /// to raise the cap deliberately.
    pub fn new(alphabet_sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        Self::with_max_states(alphabet_sizes, probs, DEFAULT_MAX_STATES)
    }

    /// As [`Self::new`] with an explicit cap on the number of states.
    pub fn with_max_states(
        alphabet_sizes: Vec<usize>,
        probs: Vec<f64>,
        max_states: usize,
    ) -> Result<Self> {
        if alphabet_sizes.is_empty() || alphabet_sizes.contains(&0) {
            return Err(Error::EmptyAlphabet);
        }
        if alphabet_sizes.len() > SubsetMask::MAX_VARS {
            return Err(Error::SystemTooSmall {
                required: SubsetMask::MAX_VARS,
                actual: alphabet_sizes.len(),
            });
        }
        let mut states: usize = 1;
        for &a in &alphabet_sizes {
            states = states.checked_mul(a).ok_or(Error::TableTooLarge {
                states: usize::MAX,
                cap: max_states,
            })?;
        }
        if states > max_states {
            return Err(Error::TableTooLarge {
                states,
                cap: max_states,
            });
        }
        if probs.len() != states {
            return Err(Error::TableShape {
                len: probs.len(),
                expected: states,
            });
        }
        for (index, &mass) in probs.iter().enumerate() {
            if mass < 0.0 || mass.is_nan() {
                return Err(Error::NegativeMass { index, mass });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self {
            alphabet_sizes,
            probs,
        })
    }

    /// Uniform distribution over the given product alphabet.
    pub fn uniform(alphabet_sizes: Vec<usize>) -> Result<Self> {
        let states: usize = alphabet_sizes.iter().product();
        if states == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let p = 1.0 / states as f64;
        Self::new(alphabet_sizes, vec![p; states])
    }

    /// Plug-in (maximum-likelihood) distribution from integer-coded rows.
    ///
    /// `codes` is row-major with `n_obs * n_vars` entries; each column's
    /// alphabet size is its largest observed code plus one. No bias
    /// correction is applied.
    pub fn from_observations(codes: &[usize], n_obs: usize, n_vars: usize) -> Result<Self> {
        if n_obs == 0 || n_vars == 0 || codes.len() != n_obs * n_vars {
            return Err(Error::Parse(format!(
                "observation table must be {n_obs} x {n_vars}, got {} entries",
                codes.len()
            )));
        }
        let mut alphabet_sizes = vec![1usize; n_vars];
        for row in codes.chunks_exact(n_vars) {
            for (j, &c) in row.iter().enumerate() {
                alphabet_sizes[j] = alphabet_sizes[j].max(c + 1);
            }
        }
        let states: usize = alphabet_sizes.iter().product();
        if states > DEFAULT_MAX_STATES {
            return Err(Error::TableTooLarge {
                states,
                cap: DEFAULT_MAX_STATES,
            });
        }
        let mut probs = vec![0.0; states];
        let weight = 1.0 / n_obs as f64;
        for row in codes.chunks_exact(n_vars) {
            let mut idx = 0usize;
            for (j, &c) in row.iter().enumerate() {
                idx = idx * alphabet_sizes[j] + c;
            }
            probs[idx] += weight;
        }
        Self::new(alphabet_sizes, probs)
    }

    pub fn n_vars(&self) -> usize {
        self.alphabet_sizes.len()
    }

    pub fn alphabet_sizes(&self) -> &[usize] {
        &self.alphabet_sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Index of a state given its per-variable digits.
    pub fn state_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.n_vars() {
            return Err(Error::TableShape {
                len: digits.len(),
                expected: self.n_vars(),
            });
        }
        let mut idx = 0usize;
        for (j, (&d, &a)) in digits.iter().zip(&self.alphabet_sizes).enumerate() {
            let _ = j;
            if d >= a {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    alphabet: a,
                });
            }
            idx = idx * a + d;
        }
        Ok(idx)
    }

    /// Per-variable digits of the state at `index`.
    pub fn state_digits(&self, mut index: usize) -> Vec<usize> {
        let n = self.n_vars();
        let mut digits = vec![0usize; n];
        for j in (0..n).rev() {
            digits[j] = index % self.alphabet_sizes[j];
            index /= self.alphabet_sizes[j];
        }
        digits
    }

    /// Sums the table over all variables outside `keep`, returning the
    /// marginal probabilities indexed over the kept variables (ascending
    /// original order, same mixed-radix convention).
    fn marginal_probs(&self, keep: SubsetMask) -> Vec<f64> {
        let n = self.n_vars();
        let kept: Vec<usize> = keep.iter().collect();
        // Reduced-table stride of each original variable; 0 for dropped vars.
        let mut strides = vec![0usize; n];
        let mut acc = 1usize;
        for &v in kept.iter().rev() {
            strides[v] = acc;
            acc *= self.alphabet_sizes[v];
        }
        let mut marginal = vec![0.0; acc];
        let mut digits = vec![0usize; n];
        let mut reduced = 0usize;
        for &mass in &self.probs {
            marginal[reduced] += mass;
            // Odometer increment, maintaining the reduced index.
            for v in (0..n).rev() {
                digits[v] += 1;
                if digits[v] < self.alphabet_sizes[v] {
                    reduced += strides[v];
                    break;
                }
                digits[v] = 0;
                reduced -= (self.alphabet_sizes[v] - 1) * strides[v];
            }
        }
        marginal
    }

    /// Marginal distribution over the variables in `keep`.
    ///
    /// Kept variables are reindexed `0..keep.len()` in ascending original
    /// order. An empty mask is a degenerate request and an error.
    pub fn marginalize(&self, keep: SubsetMask) -> Result<Self> {
        self.check_subset(keep)?;
        let alphabet_sizes: Vec<usize> = keep.iter().map(|v| self.alphabet_sizes[v]).collect();
        let probs = self.marginal_probs(keep);
        Self::with_max_states(alphabet_sizes, probs, usize::MAX)
    }

    /// Plug-in Shannon entropy of the marginal on `subset`, in bits.
    ///
    /// Zero-mass states contribute nothing (0·log 0 = 0).
    pub fn entropy(&self, subset: SubsetMask) -> Result<f64> {
        self.check_subset(subset)?;
        if subset == SubsetMask::full(self.n_vars()) {
            return Ok(plug_in_entropy(&self.probs));
        }
        Ok(plug_in_entropy(&self.marginal_probs(subset)))
    }

    /// Product of two independent systems: `self`'s variables first, then
    /// `other`'s.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut alphabet_sizes = self.alphabet_sizes.clone();
        alphabet_sizes.extend_from_slice(&other.alphabet_sizes);
        let mut probs = Vec::with_capacity(self.probs.len() * other.probs.len());
        for &p in &self.probs {
            for &q in &other.probs {
                probs.push(p * q);
            }
        }
        Self::with_max_states(alphabet_sizes, probs, usize::MAX)
    }

    fn check_subset(&self, subset: SubsetMask) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !subset.valid_for(self.n_vars()) {
            return Err(Error::InvalidSubset {
                subset,
                n_vars: self.n_vars(),
            });
        }
        Ok(())
    }

    /// Writes the table in the two-column fixture format: a `# alphabet ...`
    /// header, then one `state mass` line per state in index order, with
    /// shortest round-trip decimals.
    pub fn dump<W: Write>(&self, mut w: W) -> Result<()> {
        if self.alphabet_sizes.iter().any(|&a| a > 36) {
            return Err(Error::Parse(
                "dump format supports alphabets up to 36 symbols".into(),
            ));
        }
        write!(w, "# alphabet")?;
        for &a in &self.alphabet_sizes {
            write!(w, " {a}")?;
        }
        writeln!(w)?;
        for (idx, &mass) in self.probs.iter().enumerate() {
            let digits = self.state_digits(idx);
            let state: String = digits.iter().map(|&d| digit_char(d)).collect();
            writeln!(w, "{state} {mass}")?;
        }
        Ok(())
    }

    /// Reads the format written by [`Self::dump`]. States missing from the
    /// file get zero mass; without an alphabet header, each variable's
    /// alphabet is its largest digit plus one.
    pub fn load<R: BufRead>(r: R) -> Result<Self> {
        let mut alphabet_sizes: Option<Vec<usize>> = None;
        let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(spec) = rest.strip_prefix("alphabet") {
                    let sizes: Vec<usize> = spec
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
                        })
                        .collect::<Result<_>>()?;
                    alphabet_sizes = Some(sizes);
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (state, mass) = match (parts.next(), parts.next(), parts.next()) {
                (Some(s), Some(m), None) => (s, m),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'state mass'",
                        lineno + 1
                    )))
                }
            };
            let digits: Vec<usize> = state
                .chars()
                .map(|c| {
                    digit_value(c).ok_or_else(|| {
                        Error::Parse(format!("line {}: bad state digit '{c}'", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?;
            let mass: f64 = mass
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            entries.push((digits, mass));
        }
        let first = entries
            .first()
            .ok_or_else(|| Error::Parse("empty table".into()))?;
        let n_vars = first.0.len();
        let alphabet_sizes = alphabet_sizes.unwrap_or_else(|| {
            let mut sizes = vec![1usize; n_vars];
            for (digits, _) in &entries {
                for (j, &d) in digits.iter().enumerate().take(n_vars) {
                    sizes[j] = sizes[j].max(d + 1);
                }
            }
            sizes
        });
        let states: usize = alphabet_sizes.iter().product();
        let mut probs = vec![0.0; states];
        for (digits, mass) in entries {
            if digits.len() != n_vars {
                return Err(Error::Parse("inconsistent state lengths".into()));
            }
            let mut idx = 0usize;
            for (j, &d) in digits.iter().enumerate() {
                if d >= alphabet_sizes[j] {
                    return Err(Error::DigitOutOfRange {
                        digit: d,
                        alphabet: alphabet_sizes[j],
                    });
                }
                idx = idx * alphabet_sizes[j] + d;
            }
            probs[idx] = mass;
        }
        Self::new(alphabet_sizes, probs)
    }
}

impl EntropySource for DiscreteJointDistribution {
    fn n_vars(&self) -> usize {
        self.alphabet_sizes.len()
    }

    fn subset_entropy(&self, subset: SubsetMask) -> Result<f64> {
        self.entropy(subset)
    }

    fn max_alphabet_log2(&self) -> Option<f64> {
        self.alphabet_sizes.iter().max().map(|&a| (a as f64).log2())
    }
}

/// −Σ p log2 p with the 0·log 0 = 0 convention.
fn plug_in_entropy(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

fn digit_char(d: usize) -> char {
    debug_assert!(d < 36);
    char::from_digit(d as u32, 36).unwrap()
}

fn digit_value(c: char) -> Option<usize> {
    c.to_digit(36).map(|d| d as usize)
}

/// The n-COPY gate: one fair bit copied to all n variables.
///
/// Exactly two states carry mass 1/2 each. Requires `n >= 3`; gradients of
/// the O-information are undefined below three variables.
pub fn copy_gate(n: usize) -> Result<DiscreteJointDistribution> {
    if n < 3 {
        return Err(Error::SystemTooSmall {
            required: 3,
            actual: n,
        });
    }
    let states = 1usize << n;
    let mut probs = vec![0.0; states];
    probs[0] = 0.5;
    probs[states - 1] = 0.5;
    DiscreteJointDistribution::new(vec![2; n], probs)
}

/// The n-XOR gate: n−1 fair bits plus their parity.
///
/// Uniform mass 2^−(n−1) on every even-parity state. Requires `n >= 3`.
pub fn xor_gate(n: usize) -> Result<DiscreteJointDistribution> {
    if n < 3 {
        return Err(Error::SystemTooSmall {
            required: 3,
            actual: n,
        });
    }
    let states = 1usize << n;
    let mass = 1.0 / (states / 2) as f64;
    let probs: Vec<f64> = (0..states)
        .map(|s| {
            if (s as u64).count_ones() & 1 == 0 {
                mass
            } else {
                0.0
            }
        })
        .collect();
    DiscreteJointDistribution::new(vec![2; n], probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fair_coin_pair() -> DiscreteJointDistribution {
        DiscreteJointDistribution::uniform(vec![2, 2]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_tables() {
        assert!(matches!(
            DiscreteJointDistribution::new(vec![2, 2], vec![0.5, 0.5]),
            Err(Error::TableShape { .. })
        ));
        assert!(matches!(
            DiscreteJointDistribution::new(vec![2], vec![1.1, -0.1]),
            Err(Error::NegativeMass { .. })
        ));
        assert!(matches!(
            DiscreteJointDistribution::new(vec![2], vec![0.6, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            DiscreteJointDistribution::with_max_states(vec![2; 5], vec![0.0; 32], 16),
            Err(Error::TableTooLarge { .. })
        ));
    }

    #[test]
    fn marginal_of_independent_pair_is_fair_coin() {
        let m = fair_coin_pair().marginalize(SubsetMask::single(0)).unwrap();
        assert_eq!(m.alphabet_sizes(), &[2]);
        assert_abs_diff_eq!(m.probs()[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.probs()[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn marginal_of_xor3_pair_is_uniform() {
        // Oracle: brute-force sum over the 8-state table.
        let xor = xor_gate(3).unwrap();
        let mut expected = [0.0f64; 4];
        for idx in 0..8 {
            let d = xor.state_digits(idx);
            expected[d[0] * 2 + d[1]] += xor.probs()[idx];
        }
        let m = xor.marginalize(SubsetMask::from_iter([0, 1])).unwrap();
        for (got, want) in m.probs().iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
            assert_abs_diff_eq!(*got, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn marginal_on_all_variables_is_identity() {
        let xor = xor_gate(4).unwrap();
        let m = xor.marginalize(SubsetMask::full(4)).unwrap();
        assert_eq!(m.probs(), xor.probs());
    }

    #[test]
    fn empty_marginal_request_is_an_error() {
        assert!(matches!(
            fair_coin_pair().marginalize(SubsetMask::EMPTY),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn entropy_reference_values() {
        let coin = DiscreteJointDistribution::uniform(vec![2]).unwrap();
        assert_abs_diff_eq!(coin.entropy(SubsetMask::single(0)).unwrap(), 1.0);

        let four = DiscreteJointDistribution::uniform(vec![4]).unwrap();
        assert_abs_diff_eq!(four.entropy(SubsetMask::single(0)).unwrap(), 2.0);

        // −0.25 log2 0.25 − 0.75 log2 0.75
        let skew = DiscreteJointDistribution::new(vec![2], vec![0.25, 0.75]).unwrap();
        assert_abs_diff_eq!(
            skew.entropy(SubsetMask::single(0)).unwrap(),
            0.8112781244591328,
            epsilon = 1e-15
        );
    }

    #[test]
    fn gates_match_their_definitions() {
        let copy = copy_gate(3).unwrap();
        assert_abs_diff_eq!(copy.probs()[0], 0.5);
        assert_abs_diff_eq!(copy.probs()[7], 0.5);
        assert_eq!(copy.probs().iter().filter(|&&p| p > 0.0).count(), 2);

        let copy4 = copy_gate(4).unwrap();
        assert_abs_diff_eq!(copy4.probs()[0], 0.5);
        assert_abs_diff_eq!(copy4.probs()[15], 0.5);

        assert_abs_diff_eq!(
            copy_gate(5).unwrap().entropy(SubsetMask::full(5)).unwrap(),
            1.0
        );

        let xor = xor_gate(3).unwrap();
        for idx in [0usize, 3, 5, 6] {
            assert_abs_diff_eq!(xor.probs()[idx], 0.25);
        }
        for idx in [1usize, 2, 4, 7] {
            assert_abs_diff_eq!(xor.probs()[idx], 0.0);
        }
        assert_abs_diff_eq!(xor.entropy(SubsetMask::full(3)).unwrap(), 2.0);

        assert!(matches!(copy_gate(2), Err(Error::SystemTooSmall { .. })));
        assert!(matches!(xor_gate(2), Err(Error::SystemTooSmall { .. })));
    }

    #[test]
    fn xor_marginals_are_uniform_on_proper_subsets() {
        for n in 3..=6 {
            let xor = xor_gate(n).unwrap();
            let full = SubsetMask::full(n);
            for drop in 0..n {
                let keep = full.without(drop);
                let h = xor.entropy(keep).unwrap();
                assert_abs_diff_eq!(h, (n - 1) as f64, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(xor.entropy(full).unwrap(), (n - 1) as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_is_independent_concatenation() {
        let p = copy_gate(3)
            .unwrap()
            .product(&xor_gate(3).unwrap())
            .unwrap();
        assert_eq!(p.n_vars(), 6);
        let h_left = p.entropy(SubsetMask::from_iter(0..3)).unwrap();
        let h_right = p.entropy(SubsetMask::from_iter(3..6)).unwrap();
        let h_all = p.entropy(SubsetMask::full(6)).unwrap();
        assert_abs_diff_eq!(h_all, h_left + h_right, epsilon = 1e-12);
    }

    #[test]
    fn observations_give_plug_in_counts() {
        // Rows: (0,0) x2, (1,1) x1, (1,0) x1.
        let codes = [0, 0, 0, 0, 1, 1, 1, 0];
        let d = DiscreteJointDistribution::from_observations(&codes, 4, 2).unwrap();
        assert_eq!(d.alphabet_sizes(), &[2, 2]);
        assert_abs_diff_eq!(d.probs()[0], 0.5);
        assert_abs_diff_eq!(d.probs()[2], 0.25);
        assert_abs_diff_eq!(d.probs()[3], 0.25);
    }

    #[test]
    fn dump_load_round_trip_is_bit_exact() {
        let d = DiscreteJointDistribution::new(vec![2, 3], vec![0.1, 0.2, 0.05, 0.15, 0.3, 0.2])
            .unwrap();
        let mut buf = Vec::new();
        d.dump(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# alphabet 2 3\n"));
        assert!(text.contains("00 0.1\n"));
        let loaded = DiscreteJointDistribution::load(&buf[..]).unwrap();
        assert_eq!(loaded, d);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random small pmf: 2–4 variables, alphabets of 2–3 symbols.
        fn arb_distribution() -> impl Strategy<Value = DiscreteJointDistribution> {
            (2usize..=4)
                .prop_flat_map(|n| proptest::collection::vec(2usize..=3, n))
                .prop_flat_map(|alphabets| {
                    let states: usize = alphabets.iter().product();
                    proptest::collection::vec(0.01f64..1.0, states).prop_map(move |weights| {
                        let total: f64 = weights.iter().sum();
                        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
                        DiscreteJointDistribution::new(alphabets.clone(), probs).unwrap()
                    })
                })
        }

        proptest! {
            #[test]
            fn entropy_is_monotone_on_subset_chains(d in arb_distribution()) {
                let n = d.n_vars();
                let full = SubsetMask::full(n);
                for a in full.subsets().filter(|s| !s.is_empty()) {
                    for b in full.subsets().filter(|s| !s.is_empty() && a.is_subset_of(*s)) {
                        let ha = d.entropy(a).unwrap();
                        let hb = d.entropy(b).unwrap();
                        prop_assert!(ha <= hb + 1e-12, "H({a}) = {ha} > H({b}) = {hb}");
                    }
                }
            }

            #[test]
            fn marginalize_is_idempotent(d in arb_distribution()) {
                let keep = SubsetMask::from_iter([0, d.n_vars() - 1]);
                let once = d.marginalize(keep).unwrap();
                let twice = once.marginalize(SubsetMask::full(once.n_vars())).unwrap();
                prop_assert_eq!(once, twice);
            }

            #[test]
            fn entropy_is_label_permutation_invariant(d in arb_distribution()) {
                // Reverse the variable order and permute the table to match.
                let n = d.n_vars();
                let rev_alphabets: Vec<usize> =
                    d.alphabet_sizes().iter().rev().copied().collect();
                let mut rev_probs = vec![0.0; d.probs().len()];
                for idx in 0..d.probs().len() {
                    let digits = d.state_digits(idx);
                    let mut ridx = 0usize;
                    for j in (0..n).rev() {
                        ridx = ridx * d.alphabet_sizes()[j] + digits[j];
                    }
                    rev_probs[ridx] = d.probs()[idx];
                }
                let rev = DiscreteJointDistribution::new(rev_alphabets, rev_probs).unwrap();
                let h = d.entropy(SubsetMask::full(n)).unwrap();
                let hr = rev.entropy(SubsetMask::full(n)).unwrap();
                prop_assert!((h - hr).abs() < 1e-12);
                // Marginal entropies map through the permutation too.
                for i in 0..n {
                    let hi = d.entropy(SubsetMask::single(i)).unwrap();
                    let hri = rev.entropy(SubsetMask::single(n - 1 - i)).unwrap();
                    prop_assert!((hi - hri).abs() < 1e-12);
                }
            }

            #[test]
            fn marginal_masses_stay_normalized(d in arb_distribution()) {
                let full = SubsetMask::full(d.n_vars());
                for keep in full.subsets().filter(|s| !s.is_empty()) {
                    let m = d.marginalize(keep).unwrap();
                    let sum: f64 = m.probs().iter().sum();
                    prop_assert!((sum - 1.0).abs() <= 1e-12);
                    // 0 <= H <= Σ log2(alphabet) over the kept variables.
                    let h = d.entropy(keep).unwrap();
                    let cap: f64 = keep.iter()
                        .map(|v| (d.alphabet_sizes()[v] as f64).log2())
                        .sum();
                    prop_assert!(h >= -1e-12 && h <= cap + 1e-12);
                }
            }
        }
    }
}
