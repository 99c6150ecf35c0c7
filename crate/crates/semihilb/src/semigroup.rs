//! Numerical semigroups: cofinite additive submonoids of ℕ.

use crate::error::{Error, Result};

/// Colength budget used by [`NumericalSemigroup::new`]. The membership window
/// is sized as `conductor + max(generator) + budget`, so every module-level
/// enumeration up to this colength stays inside exact table lookups.
pub const DEFAULT_COLENGTH_BUDGET: u64 = 512;

/// A numerical semigroup `Γ ⊆ ℕ`: finitely many positive generators with
/// `gcd = 1`, closed under addition and containing `0`.
///
/// Membership is exact for every `x`: below the conductor it is a table
/// lookup, at or above the conductor it is always true.
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    /// Canonical minimal generating set, ascending.
    generators: Vec<u64>,
    /// Gaps `ℕ ∖ Γ`, ascending. All gaps are `< conductor`.
    gaps: Vec<u64>,
    /// Smallest `c` with `[c, ∞) ⊆ Γ`; `0` iff `Γ = ℕ`.
    conductor: u64,
    /// Membership table over `[0, conductor + max(generator) + budget)`.
    membership: Vec<bool>,
    colength_budget: u64,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}
impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Fill a membership table of the given length from a generating set.
fn fill_membership(gens: &[u64], len: usize) -> Vec<bool> {
    let mut table = vec![false; len];
    if len > 0 {
        table[0] = true;
        for x in 1..len {
            table[x] = gens
                .iter()
                .take_while(|&&g| g as usize <= x)
                .any(|&g| table[x - g as usize]);
        }
    }
    table
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `generators` with the default
    /// colength budget. Zeros are ignored; duplicates are merged.
    pub fn new(generators: &[u64]) -> Result<Self> {
        Self::with_budget(generators, DEFAULT_COLENGTH_BUDGET)
    }

    /// Same as [`new`](Self::new) with an explicit colength budget, which
    /// bounds the module colengths later enumerations may request.
    pub fn with_budget(generators: &[u64], colength_budget: u64) -> Result<Self> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::NonCoprime {
                generators: gens,
                gcd: g,
            });
        }

        // Grow the table until a run of `multiplicity` consecutive members
        // appears; everything past such a run lies in the semigroup.
        let mult = gens[0] as usize;
        let max_gen = *gens.last().unwrap();
        let mut len = (2 * max_gen as usize + 2).max(mult + 2);
        let conductor = loop {
            let table = fill_membership(&gens, len);
            let mut run = 0usize;
            let mut found = None;
            for (x, &m) in table.iter().enumerate() {
                run = if m { run + 1 } else { 0 };
                if run == mult {
                    found = Some(x + 1 - mult);
                    break;
                }
            }
            if let Some(start) = found {
                let last_gap = table[..start].iter().rposition(|&m| !m);
                break last_gap.map_or(0, |x| x as u64 + 1);
            }
            len *= 2;
        };

        let membership =
            fill_membership(&gens, (conductor + max_gen + colength_budget) as usize);
        let gaps: Vec<u64> = (0..conductor).filter(|&x| !membership[x as usize]).collect();

        // A generator is minimal iff it admits no decomposition into two
        // nonzero members.
        let minimal: Vec<u64> = gens
            .iter()
            .copied()
            .filter(|&g| {
                !(mult as u64..=g.saturating_sub(mult as u64))
                    .any(|y| membership[y as usize] && membership[(g - y) as usize])
            })
            .collect();

        Ok(Self {
            generators: minimal,
            gaps,
            conductor,
            membership,
            colength_budget,
        })
    }

    /// Canonical minimal generating set, ascending.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Gaps `ℕ ∖ Γ`, ascending.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Number of gaps (the δ-invariant / genus).
    pub fn delta(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Smallest `c` with `[c, ∞) ⊆ Γ`; `0` iff the semigroup is all of ℕ.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Smallest nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn colength_budget(&self) -> u64 {
        self.colength_budget
    }

    /// Exact membership test, valid for every `x`.
    pub fn contains(&self, x: u64) -> bool {
        x >= self.conductor || self.membership[x as usize]
    }

    /// The two minimal generators `(p, q)` with `p < q`, if the semigroup is
    /// two-generated.
    pub fn pq(&self) -> Result<(u64, u64)> {
        match self.generators[..] {
            [p, q] => Ok((p, q)),
            _ => Err(Error::NotTwoGenerator {
                generators: self.generators.clone(),
            }),
        }
    }

    /// Normal form of a member of a two-generator semigroup `⟨p, q⟩`: the
    /// unique `(a, b)` with `m = a·q + b·p`, `0 ≤ a < p` and `b ≥ 0`.
    pub fn pq_normal_form(&self, m: u64) -> Result<PQCoordinates> {
        let (p, q) = self.pq()?;
        if !self.contains(m) {
            return Err(Error::NotMember { value: m });
        }
        for a in 0..p {
            if m >= a * q && (m - a * q) % p == 0 {
                return Ok(PQCoordinates {
                    a,
                    b: (m - a * q) / p,
                });
            }
        }
        unreachable!("members of <p,q> always have a normal form")
    }

    /// For a gap `x`, the smallest `n` with `[n, ∞) ⊆ Γ ∪ (x + Γ)`.
    pub fn gap_conductor(&self, x: u64) -> Result<u64> {
        if self.contains(x) {
            return Err(Error::NotAGap { value: x });
        }
        let bound = self.conductor + x;
        let mut last_missing = None;
        for y in 0..bound {
            let in_union = self.contains(y) || (y >= x && self.contains(y - x));
            if !in_union {
                last_missing = Some(y);
            }
        }
        Ok(last_missing.map_or(0, |y| y + 1))
    }

    /// Tests the gap condition characterising monomial semigroups: for every
    /// gap `x`, the set `Γ ∩ (x + Γ)` starts at or after the gap conductor
    /// of `x`.
    pub fn satisfies_monomial_gap_condition(&self) -> bool {
        self.gaps.iter().all(|&x| {
            let cx = self.gap_conductor(x).expect("gap list is exact");
            !(x..cx).any(|y| self.contains(y) && self.contains(y - x))
        })
    }

    /// Matches the semigroup against the classification of monomial
    /// semigroups. The three parametric families are tried in order; a
    /// semigroup fits at most one of them.
    pub fn classify_monomial(&self) -> MonomialForm {
        if self.gaps.is_empty() {
            return MonomialForm::Smooth;
        }
        let m = self.multiplicity();
        let c = self.conductor;

        // Family (i): {0, m, 2m, …, sm} ∪ [sm+b, ∞) with 1 ≤ b < m, s ≥ 1.
        // The conductor pins down (s, b): b = 1 when m | c, else b = c mod m.
        let candidate = match c % m {
            0 => Some((c / m, 1)),
            1 => None,
            b => Some((c / m, b)),
        };
        if let Some((s, b)) = candidate {
            if s >= 1 {
                let expected: Vec<u64> = (1..s * m + b)
                    .filter(|&x| !(x % m == 0 && x / m <= s))
                    .collect();
                if expected == self.gaps {
                    return MonomialForm::GammaMSB { m, s, b };
                }
            }
        }

        // Family (ii): gaps [1, m-1] ∪ {m+r} with 2 ≤ r ≤ m-1.
        if self.gaps.len() == m as usize
            && self.gaps[..m as usize - 1].iter().copied().eq(1..m)
        {
            let r = self.gaps[m as usize - 1].wrapping_sub(m);
            if (2..m).contains(&r) {
                return MonomialForm::GammaMR { m, r };
            }
        }

        // Family (iii): gaps [1, m-1] ∪ {m+1} ∪ {2m+1} with m ≥ 3.
        if m >= 3
            && self.gaps.len() == m as usize + 1
            && self.gaps[..m as usize - 1].iter().copied().eq(1..m)
            && self.gaps[m as usize - 1] == m + 1
            && self.gaps[m as usize] == 2 * m + 1
        {
            return MonomialForm::GammaM { m };
        }

        MonomialForm::NotMonomial
    }
}

/// `(a, b)` normal form of an element of `⟨p, q⟩`: `m = a·q + b·p` with
/// `0 ≤ a < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PQCoordinates {
    pub a: u64,
    pub b: u64,
}

/// Result of matching a semigroup against the monomial classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialForm {
    /// `Γ = ℕ` (the smooth branch).
    Smooth,
    /// `{im : 0 ≤ i ≤ s} ∪ [sm+b, ∞)` with `1 ≤ b < m`, `s ≥ 1`.
    GammaMSB { m: u64, s: u64, b: u64 },
    /// Gaps `[1, m-1] ∪ {m+r}` with `2 ≤ r ≤ m-1`.
    GammaMR { m: u64, r: u64 },
    /// Gaps `[1, m-1] ∪ {m+1} ∪ {2m+1}` with `m ≥ 3`.
    GammaM { m: u64 },
    NotMonomial,
}

impl MonomialForm {
    pub fn is_monomial(&self) -> bool {
        !matches!(self, MonomialForm::NotMonomial)
    }
}
