//! Cofinite `Γ`-subsemimodules `Δ ⊆ Γ`, encoded by their finite gap set.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// A `Γ`-subsemimodule `Δ ⊆ Γ` with finite complement, stored as the gap set
/// `Γ ∖ Δ`. The colength of `Δ` is the size of that set.
///
/// Invariant: the gap set is closed under subtracting semigroup generators —
/// for a gap `g` and generator `a`, if `g - a ∈ Γ` then `g - a` is a gap.
/// [`from_gaps`](Self::from_gaps) rejects inputs violating this.
#[derive(Debug, Clone)]
pub struct GammaSemimodule {
    semigroup: Arc<NumericalSemigroup>,
    /// `Γ ∖ Δ`, ascending.
    gap_set: Vec<u64>,
    /// Minimal generating set `T_Δ`, ascending: elements of `Δ` not of the
    /// form `x + a` with `x ∈ Δ` and `a` a nonzero generator of `Γ`.
    min_generators: Vec<u64>,
    /// `c(Δ) = max(c(Γ), γ_Δ + 1)` where `γ_Δ` is the largest gap.
    conductor: u64,
}

impl PartialEq for GammaSemimodule {
    fn eq(&self, other: &Self) -> bool {
        self.semigroup.generators() == other.semigroup.generators()
            && self.gap_set == other.gap_set
    }
}
impl Eq for GammaSemimodule {}

impl std::hash::Hash for GammaSemimodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.semigroup.generators().hash(state);
        self.gap_set.hash(state);
    }
}

impl Ord for GammaSemimodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.semigroup.generators(), &self.gap_set)
            .cmp(&(other.semigroup.generators(), &other.gap_set))
    }
}
impl PartialOrd for GammaSemimodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GammaSemimodule {
    /// Prints the generator tuple, e.g. `(6,10)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.min_generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl GammaSemimodule {
    /// The full module `Δ = Γ`.
    pub fn full(semigroup: &Arc<NumericalSemigroup>) -> Self {
        Self::from_valid_gaps(semigroup.clone(), Vec::new())
    }

    /// Builds `Δ` from its gap set. Fails with [`Error::NotMember`] if a gap
    /// is not in `Γ` and with [`Error::InvalidGapSet`] if the complement is
    /// not a module.
    pub fn from_gaps(semigroup: &Arc<NumericalSemigroup>, gaps: &[u64]) -> Result<Self> {
        let mut gap_set = gaps.to_vec();
        gap_set.sort_unstable();
        gap_set.dedup();
        for &g in &gap_set {
            if !semigroup.contains(g) {
                return Err(Error::NotMember { value: g });
            }
        }
        for &g in &gap_set {
            for &a in semigroup.generators() {
                if g >= a && semigroup.contains(g - a) && gap_set.binary_search(&(g - a)).is_err()
                {
                    return Err(Error::InvalidGapSet {
                        gap: g,
                        generator: a,
                        witness: g - a,
                    });
                }
            }
        }
        Ok(Self::from_valid_gaps(semigroup.clone(), gap_set))
    }

    /// Builds the module generated by the given elements of `Γ`, i.e. the
    /// union of the translates `g + Γ`.
    pub fn from_generators(semigroup: &Arc<NumericalSemigroup>, generators: &[u64]) -> Result<Self> {
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for &g in &gens {
            if !semigroup.contains(g) {
                return Err(Error::NotMember { value: g });
            }
        }
        // Everything at or beyond min(gens) + c(Γ) lies in the module, so the
        // gap set is contained in [0, bound).
        let bound = gens[0] + semigroup.conductor();
        let gap_set: Vec<u64> = (0..bound)
            .filter(|&x| semigroup.contains(x))
            .filter(|&x| !gens.iter().any(|&g| x >= g && semigroup.contains(x - g)))
            .collect();
        Ok(Self::from_valid_gaps(semigroup.clone(), gap_set))
    }

    /// Internal constructor; `gap_set` must be sorted, deduplicated, inside
    /// `Γ` and closed under the module condition.
    fn from_valid_gaps(semigroup: Arc<NumericalSemigroup>, gap_set: Vec<u64>) -> Self {
        let conductor = gap_set
            .last()
            .map_or(semigroup.conductor(), |&g| semigroup.conductor().max(g + 1));
        let mut module = Self {
            semigroup,
            gap_set,
            min_generators: Vec::new(),
            conductor,
        };
        // Minimal generators all lie below c(Δ) + multiplicity: anything
        // further can be reduced by the multiplicity into [c(Δ), ∞) ⊆ Δ.
        let mult = module.semigroup.multiplicity();
        module.min_generators = (0..module.conductor + mult)
            .filter(|&x| module.contains(x))
            .filter(|&x| {
                module
                    .semigroup
                    .generators()
                    .iter()
                    .all(|&a| x < a || !module.contains(x - a))
            })
            .collect();
        module
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    /// The gap set `Γ ∖ Δ`, ascending.
    pub fn gap_set(&self) -> &[u64] {
        &self.gap_set
    }

    /// The colength `ℓ(Δ) = #(Γ ∖ Δ)`.
    pub fn colength(&self) -> u64 {
        self.gap_set.len() as u64
    }

    /// Largest gap `γ_Δ`, absent for the full module.
    pub fn frobenius(&self) -> Option<u64> {
        self.gap_set.last().copied()
    }

    /// `c(Δ) = max(c(Γ), γ_Δ + 1)`: everything at or beyond it lies in `Δ`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, x: u64) -> bool {
        self.semigroup.contains(x) && self.gap_set.binary_search(&x).is_err()
    }

    /// Minimal generating set `T_Δ`, ascending.
    pub fn min_generators(&self) -> &[u64] {
        &self.min_generators
    }

    /// `n(Δ) = #T_Δ`.
    pub fn generator_count(&self) -> usize {
        self.min_generators.len()
    }

    /// Number of gaps strictly above `x`.
    pub fn gaps_above(&self, x: u64) -> u64 {
        (self.gap_set.len() - self.gap_set.partition_point(|&g| g <= x)) as u64
    }

    /// Removes the `index`-th minimal generator (1-based), producing the
    /// colength `ℓ + 1` module `Δ ∖ {γ_index}`.
    pub fn delete_generator(&self, index: usize) -> Result<Self> {
        let count = self.min_generators.len();
        if index == 0 || index > count {
            return Err(Error::IndexOutOfRange { index, count });
        }
        let g = self.min_generators[index - 1];
        let mut gaps = self.gap_set.clone();
        let pos = gaps
            .binary_search(&g)
            .expect_err("a minimal generator lies in the module");
        gaps.insert(pos, g);
        Ok(Self::from_valid_gaps(self.semigroup.clone(), gaps))
    }

    /// Adjoins the largest gap, producing the colength `ℓ - 1` module
    /// `Δ ∪ {γ_Δ}`. Inverse to the deletion that removed `γ_Δ`.
    pub fn merge(&self) -> Result<Self> {
        if self.gap_set.is_empty() {
            return Err(Error::FullModule);
        }
        let mut gaps = self.gap_set.clone();
        gaps.pop();
        Ok(Self::from_valid_gaps(self.semigroup.clone(), gaps))
    }
}
