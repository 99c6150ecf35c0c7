//! Independent finite-field oracle: ideals of the truncated semigroup ring
//! with prescribed value set are enumerated point by point over `F_p` and
//! tallied by their number of minimal generators. Nothing here reuses the
//! symbolic dimension formulas, so agreement is meaningful evidence.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::motivic::{hilbert_class, n_delta, semigroup_mode, NDeltaMode};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::GammaSemimodule;
use crate::strata::{motivic_gen_classes_pq, ClassMethod};
use crate::tree::enumerate_level;

/// Cap on `p^M` tuple enumerations per [`count_points`] call.
pub const DEFAULT_POINT_BUDGET: u64 = 2_000_000;

/// The quotient `F_p[Γ] / (t^T)` of the semigroup algebra, with monomial
/// basis `t^γ` for `γ ∈ Γ ∩ [0, T)` and `T = c(Γ) + lmax + max(generator)`.
#[derive(Debug, Clone)]
pub struct TruncatedRing {
    semigroup: Arc<NumericalSemigroup>,
    prime: u64,
    truncation: u64,
    /// Basis exponents, ascending.
    basis: Vec<u64>,
    /// Exponent → basis index.
    position: Vec<Option<usize>>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl TruncatedRing {
    /// Builds the truncated ring over `F_prime` sized for modules of
    /// colength up to `lmax`.
    ///
    /// # Panics
    /// If `prime` is not prime.
    pub fn new(semigroup: &Arc<NumericalSemigroup>, prime: u64, lmax: u64) -> Self {
        assert!(is_prime(prime), "field order {prime} is not prime");
        let max_gen = *semigroup.generators().last().unwrap();
        let truncation = semigroup.conductor() + lmax + max_gen;
        let basis: Vec<u64> = (0..truncation).filter(|&x| semigroup.contains(x)).collect();
        let mut position = vec![None; truncation as usize];
        for (i, &b) in basis.iter().enumerate() {
            position[b as usize] = Some(i);
        }
        Self {
            semigroup: semigroup.clone(),
            prime,
            truncation,
            basis,
            position,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// The vector of `t^a · v`, truncating exponents at `T`.
    fn shift(&self, v: &[u64], a: u64) -> Vec<u64> {
        let mut out = vec![0; self.basis.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.basis[i] + a;
            if e < self.truncation {
                let j = self.position[e as usize].expect("Γ is closed under addition");
                out[j] = c;
            }
        }
        out
    }

    fn inverse(&self, x: u64) -> u64 {
        // Fermat: x^(p-2) mod p.
        let mut base = x % self.prime;
        let mut exp = self.prime - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.prime;
            }
            base = base * base % self.prime;
            exp >>= 1;
        }
        acc
    }
}

/// A subspace of the truncated ring in reduced row echelon form, rows sorted
/// by leading (lowest-exponent) basis position.
#[derive(Debug, Clone)]
pub struct IdealSubspace {
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
}

impl IdealSubspace {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Pivot basis positions, strictly ascending.
    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    fn new() -> Self {
        Self {
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    /// Reduces `v` against the current rows; if a nonzero remainder is left,
    /// normalizes it, clears its pivot column from the other rows and inserts
    /// it. Returns the new pivot position, or `None` if `v` was dependent.
    fn insert(&mut self, ring: &TruncatedRing, mut v: Vec<u64>) -> Option<usize> {
        let p = ring.prime;
        loop {
            let lead = match v.iter().position(|&c| c != 0) {
                Some(l) => l,
                None => return None,
            };
            match self.leads.binary_search(&lead) {
                Ok(k) => {
                    let factor = v[lead];
                    let row = &self.rows[k];
                    for (a, &b) in v.iter_mut().zip(row) {
                        *a = (*a + (p - factor) * b) % p;
                    }
                }
                Err(k) => {
                    let inv = ring.inverse(v[lead]);
                    for a in v.iter_mut() {
                        *a = *a * inv % p;
                    }
                    for row in self.rows.iter_mut() {
                        let factor = row[lead];
                        if factor != 0 {
                            for (a, &b) in row.iter_mut().zip(&v) {
                                *a = (*a + (p - factor) * b) % p;
                            }
                        }
                    }
                    self.rows.insert(k, v);
                    self.leads.insert(k, lead);
                    return Some(lead);
                }
            }
        }
    }

    /// Reduces `v` against the rows without modifying the subspace; returns
    /// whether the remainder is zero.
    fn reduces_to_zero(&self, ring: &TruncatedRing, mut v: Vec<u64>) -> bool {
        let p = ring.prime;
        loop {
            let lead = match v.iter().position(|&c| c != 0) {
                Some(l) => l,
                None => return true,
            };
            match self.leads.binary_search(&lead) {
                Ok(k) => {
                    let factor = v[lead];
                    let row = &self.rows[k];
                    for (a, &b) in v.iter_mut().zip(row) {
                        *a = (*a + (p - factor) * b) % p;
                    }
                }
                Err(_) => return false,
            }
        }
    }

    fn canonical_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.leads.hash(&mut h);
        self.rows.hash(&mut h);
        h.finish()
    }
}

/// Per generator `γ_j` of the module, the exponents `k > γ_j` of its gap set:
/// the slots of the parameter matrix `λ` accepted by [`ideal_from_params`].
pub fn lambda_layout(module: &GammaSemimodule) -> Vec<Vec<u64>> {
    module
        .min_generators()
        .iter()
        .map(|&g| module.gap_set().iter().copied().filter(|&k| k > g).collect())
        .collect()
}

/// Spans the ideal generated by `f_j = t^{γ_j} + Σ_k λ_j[k] t^k`, where `k`
/// runs over [`lambda_layout`] in order.
pub fn ideal_from_params(
    ring: &TruncatedRing,
    module: &GammaSemimodule,
    lambdas: &[Vec<u64>],
) -> Result<IdealSubspace> {
    Ok(build_ideal(ring, module, lambdas, None)?.expect("no value guard installed"))
}

/// Like [`ideal_from_params`], but aborts with `Ok(None)` as soon as a pivot
/// exponent falls outside `value_guard`.
fn build_ideal(
    ring: &TruncatedRing,
    module: &GammaSemimodule,
    lambdas: &[Vec<u64>],
    value_guard: Option<&GammaSemimodule>,
) -> Result<Option<IdealSubspace>> {
    let layout = lambda_layout(module);
    assert_eq!(lambdas.len(), layout.len(), "one λ-row per generator");
    let mut ideal = IdealSubspace::new();
    for ((&g, slots), params) in module.min_generators().iter().zip(&layout).zip(lambdas) {
        assert_eq!(params.len(), slots.len(), "λ-row length matches the layout");
        if g >= ring.truncation {
            return Err(Error::TruncationTooSmall);
        }
        let mut f = vec![0; ring.basis.len()];
        f[ring.position[g as usize].expect("generators lie in Γ")] = 1;
        for (&k, &lam) in slots.iter().zip(params) {
            f[ring.position[k as usize].expect("gaps lie in Γ")] = lam % ring.prime;
        }
        for bi in 0..ring.basis.len() {
            let b = ring.basis[bi];
            if g + b >= ring.truncation {
                break;
            }
            if let Some(lead) = ideal.insert(ring, ring.shift(&f, b)) {
                if let Some(target) = value_guard {
                    if !target.contains(ring.basis[lead]) {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(ideal))
}

/// Reads off the value set `v(I) = {lowest exponents of elements of I}` as a
/// `Γ`-semimodule. Fails with [`Error::TruncationTooSmall`] when the window
/// cannot certify the result (violated closure near the boundary, or gaps too
/// close to the truncation).
pub fn value_set(ring: &TruncatedRing, ideal: &IdealSubspace) -> Result<GammaSemimodule> {
    let max_gen = *ring.semigroup.generators().last().unwrap();
    let in_value_set: HashSet<u64> = ideal.leads.iter().map(|&l| ring.basis[l]).collect();
    for &v in &in_value_set {
        for &a in ring.semigroup.generators() {
            if v + a < ring.truncation && !in_value_set.contains(&(v + a)) {
                return Err(Error::TruncationTooSmall);
            }
        }
    }
    let gaps: Vec<u64> = ring
        .basis
        .iter()
        .copied()
        .filter(|e| !in_value_set.contains(e))
        .collect();
    if let Some(&top) = gaps.last() {
        if top + max_gen >= ring.truncation {
            return Err(Error::TruncationTooSmall);
        }
    }
    Ok(GammaSemimodule::from_gaps(&ring.semigroup, &gaps)
        .expect("closure was checked inside the window"))
}

/// Number of minimal generators of an ideal, `dim I - dim mI`. Fails with
/// [`Error::NotAnIdeal`] if the subspace is not closed under the ring action.
pub fn min_generators_count(ring: &TruncatedRing, ideal: &IdealSubspace) -> Result<usize> {
    for row in &ideal.rows {
        for &a in ring.semigroup.generators() {
            if !ideal.reduces_to_zero(ring, ring.shift(row, a)) {
                return Err(Error::NotAnIdeal);
            }
        }
    }
    Ok(ideal.dimension() - radical_shift_dimension(ring, ideal))
}

/// Dimension of `m·I`, spanned by the generator shifts of the rows.
fn radical_shift_dimension(ring: &TruncatedRing, ideal: &IdealSubspace) -> usize {
    let mut shifted = IdealSubspace::new();
    for row in &ideal.rows {
        for &a in ring.semigroup.generators() {
            shifted.insert(ring, ring.shift(row, a));
        }
    }
    shifted.dimension()
}

/// Counts, over `F_prime`, the ideals of the truncated ring with value set
/// exactly `Δ`, tallied by number of minimal generators. Iterates over all
/// `p^M` parameter tuples (`M = Σ_j #{gaps above γ_j}`) with the default
/// budget as cap.
pub fn count_points(
    semigroup: &Arc<NumericalSemigroup>,
    module: &GammaSemimodule,
    prime: u64,
) -> Result<BTreeMap<usize, u64>> {
    count_points_with_budget(semigroup, module, prime, DEFAULT_POINT_BUDGET)
}

pub fn count_points_with_budget(
    semigroup: &Arc<NumericalSemigroup>,
    module: &GammaSemimodule,
    prime: u64,
    budget: u64,
) -> Result<BTreeMap<usize, u64>> {
    assert_eq!(
        semigroup.generators(),
        module.semigroup().generators(),
        "module must live over the given semigroup"
    );
    let layout = lambda_layout(module);
    let m_total: u32 = layout.iter().map(|s| s.len() as u32).sum();
    let tuples = (prime as u128).saturating_pow(m_total);
    if tuples > budget as u128 {
        return Err(Error::BudgetExceeded {
            requested: tuples,
            budget: budget as u128,
        });
    }

    let ring = TruncatedRing::new(semigroup, prime, module.colength());
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut flat = vec![0u64; m_total as usize];
    loop {
        let mut lambdas = Vec::with_capacity(layout.len());
        let mut offset = 0;
        for slots in &layout {
            lambdas.push(flat[offset..offset + slots.len()].to_vec());
            offset += slots.len();
        }
        match build_ideal(&ring, module, &lambdas, Some(module))? {
            Some(ideal) => {
                // Every basis exponent of Δ is a lead (the generator shifts
                // realize all of Δ), and the guard kept leads inside Δ, so
                // the value set is exactly Δ.
                debug_assert_eq!(
                    ideal.leads().len(),
                    ring.basis.iter().filter(|&&e| module.contains(e)).count()
                );
                // Distinct parameter tuples can give the same ideal only
                // through a normalization bug: echelon forms are unique.
                assert!(
                    seen.insert(ideal.canonical_hash()),
                    "duplicate reduced echelon form while counting points"
                );
                let m = ideal.dimension() - radical_shift_dimension(&ring, &ideal);
                *tally.entry(m).or_insert(0) += 1;
            }
            None => {}
        }
        // Next tuple in mixed radix.
        let mut i = flat.len();
        loop {
            if i == 0 {
                return Ok(tally);
            }
            i -= 1;
            flat[i] += 1;
            if flat[i] < prime {
                break;
            }
            flat[i] = 0;
        }
    }
}

/// One comparison row of [`verify_classes`]: a symbolic prediction evaluated
/// at `q = field` against an oracle count. `gaps`/`m` distinguish the row
/// kind: level rows (both absent), per-module totals (`m` absent) and
/// per-`(Δ, m)` strata rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub semigroup: Vec<u64>,
    pub level: u64,
    pub gaps: Option<Vec<u64>>,
    pub m: Option<usize>,
    pub field: u64,
    pub symbolic: i128,
    pub count: i128,
    pub matches: bool,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.matches).count()
    }
}

/// Cross-checks the symbolic class tables against oracle point counts over
/// the given prime fields, for every module of colength `≤ lmax`: per-level
/// class evaluations, per-module totals `q^{N(Δ)}`, and (over two-generator
/// semigroups) the per-`(Δ, m)` strata classes. Mismatching rows are data,
/// not errors.
pub fn verify_classes(
    semigroup: &Arc<NumericalSemigroup>,
    lmax: u64,
    fields: &[u64],
    budget: u64,
) -> Result<VerifyReport> {
    let mode = semigroup_mode(semigroup)?;
    let gens = semigroup.generators().to_vec();
    let mut report = VerifyReport::default();
    for level in 0..=lmax {
        let modules = enumerate_level(semigroup, level)?;
        let counts: Vec<Vec<BTreeMap<usize, u64>>> = modules
            .iter()
            .map(|module| {
                fields
                    .iter()
                    .map(|&p| count_points_with_budget(semigroup, module, p, budget))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;

        let class = hilbert_class(semigroup, level)?;
        for (pi, &p) in fields.iter().enumerate() {
            let symbolic = class.eval(p as i128);
            let count: i128 = counts
                .iter()
                .map(|per_field| per_field[pi].values().map(|&c| c as i128).sum::<i128>())
                .sum();
            report.rows.push(VerifyRow {
                semigroup: gens.clone(),
                level,
                gaps: None,
                m: None,
                field: p,
                symbolic,
                count,
                matches: symbolic == count,
            });
        }

        for (di, module) in modules.iter().enumerate() {
            let dim = n_delta(module, mode)?.n;
            let strata = match mode {
                NDeltaMode::PQ => Some(motivic_gen_classes_pq(module, ClassMethod::Structural)?),
                NDeltaMode::Monomial => None,
            };
            for (pi, &p) in fields.iter().enumerate() {
                let total: i128 = counts[di][pi].values().map(|&c| c as i128).sum();
                let symbolic = (p as i128).pow(dim as u32);
                report.rows.push(VerifyRow {
                    semigroup: gens.clone(),
                    level,
                    gaps: Some(module.gap_set().to_vec()),
                    m: None,
                    field: p,
                    symbolic,
                    count: total,
                    matches: symbolic == total,
                });
                if let Some(table) = &strata {
                    for (&m, poly) in table {
                        let symbolic = poly.eval(p as i128);
                        let count =
                            counts[di][pi].get(&m).copied().unwrap_or(0) as i128;
                        report.rows.push(VerifyRow {
                            semigroup: gens.clone(),
                            level,
                            gaps: Some(module.gap_set().to_vec()),
                            m: Some(m),
                            field: p,
                            symbolic,
                            count,
                            matches: symbolic == count,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
