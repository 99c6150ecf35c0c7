//! Generator-count refinements: the classes `[C^{Δ,m}]` of the strata of
//! ideals with exactly `m` minimal generators, their generating series, the
//! Euler-characteristic specialisation and torus-knot HOMFLY polynomials.
//!
//! Two independent computations of `[C^{Δ,m}]` are provided: a structural
//! one from the cell decomposition of two-generator semigroup strata, and an
//! interpolation one that fits a polynomial in `L` through finite-field
//! point counts. They must agree; any discrepancy is surfaced as
//! [`Error::MethodDisagreement`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::motivic::{n_delta, LPolynomial, NDeltaMode};
use crate::oracle::count_points_with_budget;
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::GammaSemimodule;
use crate::syzygy::augmented_syzygies;
use crate::tree::enumerate_level;

/// Cap on the total number of finite-field point evaluations one
/// interpolation run may spend.
pub const DEFAULT_INTERPOLATION_BUDGET: u128 = 50_000;

/// Class table of a module: `m ↦ [C^{Δ,m}]` for `1 ≤ m ≤ n(Δ)`, zero entries
/// included.
pub type GenClassTable = BTreeMap<usize, LPolynomial>;

/// How to compute a [`GenClassTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassMethod {
    /// Cell decomposition of the closed strata plus Möbius inversion.
    Structural,
    /// Lagrange fit through finite-field point counts at small primes.
    Interpolation,
}

/// Computes `m ↦ [C^{Δ,m}]` for a module over a two-generator semigroup.
pub fn motivic_gen_classes_pq(
    module: &GammaSemimodule,
    method: ClassMethod,
) -> Result<GenClassTable> {
    motivic_gen_classes_pq_with_budget(module, method, DEFAULT_INTERPOLATION_BUDGET)
}

/// Same with an explicit interpolation budget (ignored by the structural
/// method).
pub fn motivic_gen_classes_pq_with_budget(
    module: &GammaSemimodule,
    method: ClassMethod,
    budget: u128,
) -> Result<GenClassTable> {
    match method {
        ClassMethod::Structural => structural_classes(module),
        ClassMethod::Interpolation => interpolation_classes(module, budget),
    }
}

/// The class `[C^{Δ,u}]` of the closed stratum of ideals whose minimal
/// generator positions are contained in the subset `u` (as a bitmask over
/// the generators of `Δ`): writing `i'_1 < … < i'_{n-m}` for the complement,
/// the stratum fibers into tori, one factor per complement position `e`
/// whose fiber coordinates are the candidate syzygies
/// `C_e = {σ ∈ ASyz(⟨u-generators, γ_{i'_1}, …, γ_{i'_{e-1}}⟩) : σ < γ_{i'_e}}`,
/// giving `L^{N - Σ_e #C_e} · Π_e (L^{#C_e} - 1)` — and `0` whenever some
/// `C_e` is empty.
fn closed_stratum_class(module: &GammaSemimodule, dim: u64, mask: usize) -> Result<LPolynomial> {
    let gens = module.min_generators();
    let complement: Vec<usize> = (0..gens.len()).filter(|i| mask & (1 << i) == 0).collect();
    if complement.is_empty() {
        return Ok(LPolynomial::lefschetz_power(dim as usize));
    }
    let mut subset_gens: Vec<u64> = (0..gens.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| gens[i])
        .collect();
    let mut candidate_counts: Vec<u64> = Vec::with_capacity(complement.len());
    for &position in &complement {
        let sub = GammaSemimodule::from_generators(module.semigroup(), &subset_gens)?;
        let cutoff = gens[position];
        let count = if sub.generator_count() < 2 {
            0
        } else {
            let mut sigmas: Vec<u64> = augmented_syzygies(&sub)?
                .iter()
                .map(|t| t.sigma)
                .filter(|&sigma| sigma < cutoff)
                .collect();
            sigmas.sort_unstable();
            sigmas.dedup();
            sigmas.len() as u64
        };
        if count == 0 {
            return Ok(LPolynomial::zero());
        }
        candidate_counts.push(count);
        subset_gens.push(cutoff);
    }
    let spent: u64 = candidate_counts.iter().sum();
    let mut class = LPolynomial::lefschetz_power(
        dim.checked_sub(spent).expect("torus factors fit in the cell") as usize,
    );
    for &c in &candidate_counts {
        let factor = &LPolynomial::lefschetz_power(c as usize) - &LPolynomial::one();
        class = &class * &factor;
    }
    Ok(class)
}

fn structural_classes(module: &GammaSemimodule) -> Result<GenClassTable> {
    module.semigroup().pq()?;
    let n = module.generator_count();
    let dim = n_delta(module, NDeltaMode::PQ)?.n;
    let mut table = GenClassTable::new();
    if n == 1 {
        table.insert(1, LPolynomial::lefschetz_power(dim as usize));
        return Ok(table);
    }
    let size = 1usize << n;
    let mut closed = vec![LPolynomial::zero(); size];
    for mask in 1..size {
        closed[mask] = closed_stratum_class(module, dim, mask)?;
    }
    for m in 1..=n {
        table.insert(m, LPolynomial::zero());
    }
    // Möbius inversion over the subset lattice recovers the locally closed
    // strata: [C^{Δ,u}]_exact = Σ_{v ⊆ u} (-1)^{|u∖v|} [C^{Δ,v}].
    for mask in 1..size {
        let mut exact = LPolynomial::zero();
        let mut sub = mask;
        loop {
            let term = &closed[sub];
            if (mask.count_ones() - sub.count_ones()) % 2 == 0 {
                exact += term;
            } else {
                exact = &exact - term;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        let slot = table.get_mut(&(mask.count_ones() as usize)).unwrap();
        *slot += &exact;
    }
    debug_assert_eq!(
        table.values().fold(LPolynomial::zero(), |mut acc, p| {
            acc += p;
            acc
        }),
        LPolynomial::lefschetz_power(dim as usize),
        "strata classes must sum to the cell class"
    );
    Ok(table)
}

struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 += 1;
            let p = self.0;
            if p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                return Some(p);
            }
        }
    }
}

/// Fits the unique polynomial of degree `< points.len()` through the given
/// `(x, y)` pairs, returning its coefficients by ascending power.
fn lagrange_fit(points: &[(u64, u64)]) -> Vec<Ratio<i128>> {
    let k = points.len();
    let mut coeffs = vec![Ratio::from_integer(0i128); k];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x - x_j) / (x_i - x_j), scaled by y_i
        let mut basis = vec![Ratio::from_integer(0i128); k];
        basis[0] = Ratio::from_integer(1);
        let mut deg = 0;
        let mut denom = Ratio::from_integer(1i128);
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            for d in (0..=deg).rev() {
                let c = basis[d];
                basis[d + 1] = basis[d + 1] + c;
                basis[d] = -c * Ratio::from_integer(xj as i128);
            }
            deg += 1;
            denom *= Ratio::from_integer(xi as i128 - xj as i128);
        }
        let scale = Ratio::from_integer(yi as i128) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c = *c + *b * scale;
        }
    }
    coeffs
}

fn eval_ratio_poly(coeffs: &[Ratio<i128>], x: i128) -> Ratio<i128> {
    coeffs
        .iter()
        .rev()
        .fold(Ratio::from_integer(0), |acc, &c| {
            acc * Ratio::from_integer(x) + c
        })
}

fn interpolation_classes(module: &GammaSemimodule, budget: u128) -> Result<GenClassTable> {
    module.semigroup().pq()?;
    let data = n_delta(module, NDeltaMode::PQ)?;
    let degree_bound = data.n as usize;
    let m_exp: u32 = data.gen_gap_counts.iter().map(|&c| c as u32).sum();
    let needed = degree_bound + 2; // fit through N+1 points, check at one more

    let mut primes = Primes(1);
    let mut used: Vec<u64> = Vec::new();
    let mut counts: Vec<BTreeMap<usize, u64>> = Vec::new();
    let mut spent: u128 = 0;
    let mut start = 0;

    loop {
        while used.len() < start + needed {
            let p = primes.next().unwrap();
            let cost = (p as u128).saturating_pow(m_exp);
            if spent + cost > budget {
                return Err(Error::InterpolationBudgetExceeded {
                    requested: spent + cost,
                    budget,
                });
            }
            spent += cost;
            counts.push(count_points_with_budget(
                module.semigroup(),
                module,
                p,
                u64::MAX,
            )?);
            used.push(p);
        }
        let window = &used[start..start + needed];
        let window_counts = &counts[start..start + needed];
        let check_prime = window[needed - 1];
        let check_counts = &window_counts[needed - 1];

        let mut table = GenClassTable::new();
        let mut ok = true;
        for m in 1..=module.generator_count() {
            let points: Vec<(u64, u64)> = window[..needed - 1]
                .iter()
                .zip(window_counts)
                .map(|(&p, c)| (p, c.get(&m).copied().unwrap_or(0)))
                .collect();
            let coeffs = lagrange_fit(&points);
            let integral = coeffs.iter().all(|c| c.is_integer());
            let checked = eval_ratio_poly(&coeffs, check_prime as i128)
                == Ratio::from_integer(check_counts.get(&m).copied().unwrap_or(0) as i128);
            if !(integral && checked) {
                ok = false;
                break;
            }
            table.insert(
                m,
                LPolynomial::from_coeffs(
                    coeffs.iter().map(|c| c.to_integer() as i64).collect(),
                ),
            );
        }
        if ok {
            return Ok(table);
        }
        // An unlucky prime (e.g. degenerate counts at p = 2): slide the
        // window past it and pay for one more prime.
        start += 1;
    }
}

fn format_table(table: &GenClassTable) -> String {
    let entries: Vec<String> = table.iter().map(|(m, p)| format!("{m}: {p}")).collect();
    format!("{{{}}}", entries.join(", "))
}

/// The generating series of the generator-count refined classes: row `ℓ`
/// lists the coefficients of `Σ_{Δ ∈ D_ℓ} Σ_m [C^{Δ,m}] s^{m - offset}` by
/// ascending power of `s` (the formal marker for `1 - a²`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSeries {
    pub rows: Vec<Vec<LPolynomial>>,
    pub exponent_offset: u8,
}

/// Computes the refined series over a two-generator semigroup through
/// colength `lmax`, cross-checking every structural class table against the
/// interpolation method whenever the latter fits its default budget.
pub fn motivic_gen_zeta(
    semigroup: &Arc<NumericalSemigroup>,
    lmax: u64,
    exponent_offset: u8,
) -> Result<GenSeries> {
    debug_assert!(exponent_offset <= 1);
    semigroup.pq()?;
    let mut rows = Vec::with_capacity(lmax as usize + 1);
    for level in 0..=lmax {
        let mut row: Vec<LPolynomial> = Vec::new();
        for module in enumerate_level(semigroup, level)? {
            let table = motivic_gen_classes_pq(&module, ClassMethod::Structural)?;
            match motivic_gen_classes_pq(&module, ClassMethod::Interpolation) {
                Ok(check) => {
                    if check != table {
                        return Err(Error::MethodDisagreement {
                            structural: format_table(&table),
                            interpolation: format_table(&check),
                        });
                    }
                }
                Err(Error::InterpolationBudgetExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
            for (m, poly) in table {
                let slot = m - exponent_offset as usize;
                if row.len() <= slot {
                    row.resize(slot + 1, LPolynomial::zero());
                }
                row[slot] += &poly;
            }
        }
        rows.push(row);
    }
    Ok(GenSeries {
        rows,
        exponent_offset,
    })
}

/// Euler characteristics of the strata: `χ(C^{Δ,m}) = 1` for `m = n(Δ)` and
/// `0` otherwise (two-generator semigroups).
pub fn euler_strata(module: &GammaSemimodule) -> Result<BTreeMap<usize, i64>> {
    module.semigroup().pq()?;
    let n = module.generator_count();
    Ok((1..=n).map(|m| (m, i64::from(m == n))).collect())
}

/// The Euler-characteristic specialisation of [`motivic_gen_zeta`]: row `ℓ`
/// counts modules of `D_ℓ` by generator count, index `n(Δ) - offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerGenSeries {
    pub rows: Vec<Vec<i64>>,
    pub exponent_offset: u8,
}

pub fn euler_gen_zeta(
    semigroup: &Arc<NumericalSemigroup>,
    lmax: u64,
    exponent_offset: u8,
) -> Result<EulerGenSeries> {
    debug_assert!(exponent_offset <= 1);
    semigroup.pq()?;
    let mut rows = Vec::with_capacity(lmax as usize + 1);
    for level in 0..=lmax {
        let mut row: Vec<i64> = Vec::new();
        for module in enumerate_level(semigroup, level)? {
            let slot = module.generator_count() - exponent_offset as usize;
            if row.len() <= slot {
                row.resize(slot + 1, 0);
            }
            row[slot] += 1;
        }
        rows.push(row);
    }
    Ok(EulerGenSeries {
        rows,
        exponent_offset,
    })
}

/// A HOMFLY polynomial in the variables `a` and `q`, stored sparsely as
/// `(a-exponent, q-exponent) ↦ coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomflyPolynomial {
    terms: BTreeMap<(i64, i64), i64>,
}

impl HomflyPolynomial {
    pub fn terms(&self) -> &BTreeMap<(i64, i64), i64> {
        &self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(terms: I) -> Self {
        let mut out = Self::default();
        for ((a, q), c) in terms {
            out.add_term(a, q, c);
        }
        out
    }

    pub fn add_term(&mut self, a_exp: i64, q_exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((a_exp, q_exp)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(a_exp, q_exp));
        }
    }
}

impl fmt::Display for HomflyPolynomial {
    /// Terms by ascending `(a, q)` exponent, e.g. `a^2 q^-2 + a^2 q^2 - a^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, q), &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if a != 0 {
                factors.push(format!("a^{a}"));
            }
            if q != 0 {
                factors.push(format!("q^{q}"));
            }
            let abs = c.unsigned_abs();
            if abs != 1 || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join(" "))?;
        }
        Ok(())
    }
}

/// The HOMFLY polynomial of the `(p, q)` torus knot, computed from the
/// stabilized Euler series of `Γ = ⟨p, q⟩`:
/// `P = a^μ q^{-μ} [ (1 - q²) Σ_{ℓ < ℓ_s} E_ℓ q^{2ℓ} + E_{ℓ_s} q^{2ℓ_s} ]`
/// with `μ = 2δ = (p-1)(q-1)`, where `E_ℓ` is row `ℓ` evaluated in
/// `s = 1 - a²`. `tail_bound` caps the colength scanned for stabilization.
pub fn homfly_pq(p: u64, q: u64, tail_bound: u64) -> Result<HomflyPolynomial> {
    if p < 2 || q < 2 {
        return Err(Error::UnsupportedSemigroup {
            generators: vec![p, q],
        });
    }
    let semigroup = Arc::new(NumericalSemigroup::with_budget(&[p, q], tail_bound + 1)?);
    semigroup.pq()?;
    let series = euler_gen_zeta(&semigroup, tail_bound, 1)?;

    let rows = &series.rows;
    let last = rows.last().unwrap();
    let mut ls = rows.len() - 1;
    while ls > 0 && rows[ls - 1] == *last {
        ls -= 1;
    }
    let buffer = p.max(q);
    if ((rows.len() - 1 - ls) as u64) < buffer {
        return Err(Error::NoStabilization {
            lmax: tail_bound,
            buffer,
        });
    }

    let mu = ((p - 1) * (q - 1)) as i64;
    let mut out = HomflyPolynomial::default();
    for (level, row) in rows.iter().enumerate().take(ls + 1) {
        for (a_exp, coeff) in expand_in_a(row) {
            let base_q = 2 * level as i64 - mu;
            if level < ls {
                out.add_term(mu + a_exp, base_q, coeff);
                out.add_term(mu + a_exp, base_q + 2, -coeff);
            } else {
                out.add_term(mu + a_exp, base_q, coeff);
            }
        }
    }
    Ok(out)
}

/// Expands `Σ_k row[k] (1 - a²)^k` into `a`-exponent/coefficient pairs.
fn expand_in_a(row: &[i64]) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (k, &c) in row.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // (1 - a²)^k = Σ_j (-1)^j C(k, j) a^{2j}
        let mut binom: i64 = 1;
        for j in 0..=k {
            let signed = if j % 2 == 0 { binom } else { -binom };
            *out.entry(2 * j as i64).or_insert(0) += c * signed;
            binom = binom * (k as i64 - j as i64) / (j as i64 + 1);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
