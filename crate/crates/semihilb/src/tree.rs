//! The rooted tree of subsemimodules ordered by colength, level enumeration
//! and the φ-sequence parametrisation for two-generator semigroups.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::GammaSemimodule;

/// The tree on `⋃_{1 ≤ ℓ ≤ lmax} D_ℓ` whose root is `Γ ∖ {0}` and whose
/// edges delete one minimal generator per step. A module `Δ'` has children
/// `Δ' ∖ {γ_i}` exactly for the generators `γ_i > γ_{Δ'}`, which makes the
/// parent unique: merging the largest gap undoes the deletion.
#[derive(Debug, Clone)]
pub struct SemimoduleTree {
    /// `levels[k]` lists `D_{k+1}` in ascending gap-set order.
    levels: Vec<Vec<GammaSemimodule>>,
    /// `parents[k][i]` is the index into `levels[k-1]` of the parent of
    /// `levels[k][i]`; `parents[0]` is empty.
    parents: Vec<Vec<usize>>,
    /// 1-based index of the minimal generator deleted from the parent to
    /// reach this node; `deleted_indices[0]` is empty.
    deleted_indices: Vec<Vec<usize>>,
}

impl SemimoduleTree {
    pub fn levels(&self) -> &[Vec<GammaSemimodule>] {
        &self.levels
    }

    pub fn parents(&self) -> &[Vec<usize>] {
        &self.parents
    }

    pub fn deleted_indices(&self) -> &[Vec<usize>] {
        &self.deleted_indices
    }
}

/// Builds the subsemimodule tree down to colength `lmax`.
pub fn build_tree(semigroup: &Arc<NumericalSemigroup>, lmax: u64) -> Result<SemimoduleTree> {
    if lmax > semigroup.colength_budget() {
        return Err(Error::BudgetExceeded {
            requested: lmax as u128,
            budget: semigroup.colength_budget() as u128,
        });
    }
    let mut tree = SemimoduleTree {
        levels: Vec::new(),
        parents: Vec::new(),
        deleted_indices: Vec::new(),
    };
    if lmax == 0 {
        return Ok(tree);
    }
    tree.levels
        .push(vec![GammaSemimodule::from_gaps(semigroup, &[0])?]);
    tree.parents.push(Vec::new());
    tree.deleted_indices.push(Vec::new());

    for _ in 1..lmax {
        let prev = tree.levels.last().unwrap();
        let mut entries: Vec<(GammaSemimodule, usize, usize)> = Vec::new();
        for (parent_idx, module) in prev.iter().enumerate() {
            let frobenius = module.frobenius().expect("tree levels start at colength 1");
            for (k, &g) in module.min_generators().iter().enumerate() {
                if g > frobenius {
                    entries.push((module.delete_generator(k + 1)?, parent_idx, k + 1));
                }
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut level = Vec::with_capacity(entries.len());
        let mut parents = Vec::with_capacity(entries.len());
        let mut deleted = Vec::with_capacity(entries.len());
        for (module, parent_idx, gen_idx) in entries {
            level.push(module);
            parents.push(parent_idx);
            deleted.push(gen_idx);
        }
        tree.levels.push(level);
        tree.parents.push(parents);
        tree.deleted_indices.push(deleted);
    }
    Ok(tree)
}

/// Enumerates `D_ℓ`, the set of all colength-`ℓ` subsemimodules, in
/// ascending gap-set order. `D_0 = {Γ}`.
pub fn enumerate_level(
    semigroup: &Arc<NumericalSemigroup>,
    colength: u64,
) -> Result<Vec<GammaSemimodule>> {
    if colength > semigroup.colength_budget() {
        return Err(Error::BudgetExceeded {
            requested: colength as u128,
            budget: semigroup.colength_budget() as u128,
        });
    }
    let mut current = vec![GammaSemimodule::full(semigroup)];
    for _ in 0..colength {
        let mut next = BTreeSet::new();
        for module in &current {
            for i in 1..=module.generator_count() {
                next.insert(module.delete_generator(i)?);
            }
        }
        current = next.into_iter().collect();
    }
    Ok(current)
}

/// The `ℓ`-level root: the module reached from `Γ ∖ {0}` by deleting the
/// minimal generator `ℓ - 1` times. Its largest gap lies below `min(Δ)`.
pub fn level_root(semigroup: &Arc<NumericalSemigroup>, colength: u64) -> Result<GammaSemimodule> {
    if colength == 0 {
        return Ok(GammaSemimodule::full(semigroup));
    }
    let mut module = GammaSemimodule::from_gaps(semigroup, &[0])?;
    for _ in 1..colength {
        module = module.delete_generator(1)?;
    }
    Ok(module)
}

/// A φ-sequence for `Γ = ⟨k, n⟩`: integers `φ_0 ≥ φ_1 ≥ … ≥ φ_{k-1} ≥ 0`
/// with `φ_0 ≤ φ_{k-1} + n`, recorded as `(φ_0, …, φ_{k-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSequence {
    values: Vec<u64>,
}

impl PhiSequence {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of strict inequalities in the cyclic chain
    /// `φ_{k-1} ≤ … ≤ φ_0 ≤ φ_{k-1} + n`; this equals `n(Δ)` for the module
    /// the sequence encodes.
    pub fn strict_inequality_count(&self, n: u64) -> usize {
        let k = self.values.len();
        let mut count = (1..k).filter(|&j| self.values[j] < self.values[j - 1]).count();
        if self.values[0] < self.values[k - 1] + n {
            count += 1;
        }
        count
    }
}

/// Enumerates all φ-sequences of weight `ℓ` for a two-generator semigroup
/// `Γ = ⟨k, n⟩`, in descending lexicographic order, each paired with the
/// module generated by `{φ_j·k + j·n : 0 ≤ j ≤ k-1}`. The map is a bijection
/// onto `D_ℓ`.
pub fn phi_sequences(
    semigroup: &Arc<NumericalSemigroup>,
    colength: u64,
) -> Result<Vec<(PhiSequence, GammaSemimodule)>> {
    let (k, n) = semigroup.pq()?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k as usize);
    enumerate_parts(colength, k as usize, u64::MAX, &mut prefix, &mut out);
    out.retain(|phi: &PhiSequence| phi.values[0] <= phi.values[k as usize - 1] + n);
    out.into_iter()
        .map(|phi| {
            let gens: Vec<u64> = phi
                .values
                .iter()
                .enumerate()
                .map(|(j, &v)| v * k + j as u64 * n)
                .collect();
            let module = GammaSemimodule::from_generators(semigroup, &gens)?;
            Ok((phi, module))
        })
        .collect()
}

/// Emits all weakly decreasing vectors of the given length summing to
/// `remaining`, descending-lexicographically.
fn enumerate_parts(
    remaining: u64,
    slots: usize,
    bound: u64,
    prefix: &mut Vec<u64>,
    out: &mut Vec<PhiSequence>,
) {
    if slots == 1 {
        if remaining <= bound {
            prefix.push(remaining);
            out.push(PhiSequence {
                values: prefix.clone(),
            });
            prefix.pop();
        }
        return;
    }
    let hi = remaining.min(bound);
    // The largest remaining part must cover its share: hi·slots ≥ remaining.
    let lo = remaining.div_ceil(slots as u64);
    if lo > hi {
        return;
    }
    for v in (lo..=hi).rev() {
        prefix.push(v);
        enumerate_parts(remaining - v, slots - 1, v, prefix, out);
        prefix.pop();
    }
}
