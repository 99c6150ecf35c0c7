//! Motivic Hilbert zeta functions: classes of the punctual Hilbert schemes
//! `[C^[ℓ]]` as polynomials in the Lefschetz class `L`, their generating
//! series, and the cell-dimension data behind them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::semimodule::GammaSemimodule;
use crate::syzygy::{augmented_syzygies, b_delta, shared_syzygies_below};
use crate::tree::enumerate_level;

/// A polynomial in the Lefschetz class `L` with integer coefficients,
/// stored densely by ascending power with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LPolynomial {
    coeffs: Vec<i64>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial `L^k`.
    pub fn lefschetz_power(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    /// Builds a polynomial from coefficients by ascending power.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Coefficients by ascending power, with no trailing zeros.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluates at an integer value of `L`.
    pub fn eval(&self, l: i128) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * l + c as i128)
    }
}

impl AddAssign<&LPolynomial> for LPolynomial {
    fn add_assign(&mut self, rhs: &LPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Add for &LPolynomial {
    type Output = LPolynomial;
    fn add(self, rhs: &LPolynomial) -> LPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LPolynomial {
    type Output = LPolynomial;
    fn sub(self, rhs: &LPolynomial) -> LPolynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        LPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &LPolynomial {
    type Output = LPolynomial;
    fn mul(self, rhs: &LPolynomial) -> LPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for LPolynomial {
    /// Ascending powers, e.g. `1 + L + 2L^2 - L^3`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let abs = c.unsigned_abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "L")?;
                    } else {
                        write!(f, "L^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which dimension formula applies to a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NDeltaMode {
    /// Two-generator semigroups `⟨p, q⟩`: syzygy correction via the
    /// augmented syzygies.
    PQ,
    /// Monomial semigroups: minimal syzygies sit above every gap, so the
    /// correction term vanishes.
    Monomial,
}

/// Picks the dimension formula for a semigroup: two-generator semigroups use
/// [`NDeltaMode::PQ`] (even when they are also monomial), monomial
/// semigroups use [`NDeltaMode::Monomial`], anything else is unsupported.
pub fn semigroup_mode(semigroup: &NumericalSemigroup) -> Result<NDeltaMode> {
    if semigroup.generators().len() == 2 {
        return Ok(NDeltaMode::PQ);
    }
    if semigroup.classify_monomial().is_monomial() {
        return Ok(NDeltaMode::Monomial);
    }
    Err(Error::UnsupportedSemigroup {
        generators: semigroup.generators().to_vec(),
    })
}

/// The data entering the dimension formula for the cell of `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionData {
    /// Cell dimension `N(Δ)`.
    pub n: u64,
    /// `B(Δ)`: generators below the largest gap (0 for the full module).
    pub b: u64,
    /// Per minimal generator `γ_i`, the number of gaps above `γ_i`.
    pub gen_gap_counts: Vec<u64>,
    /// Per augmented syzygy `σ_i`, the number of gaps above `σ_i`; empty in
    /// monomial mode and for single-generator modules.
    pub syz_gap_counts: Vec<u64>,
}

/// Computes `N(Δ) = Σ_i #{gaps > γ_i} - Σ_i #{gaps > σ_i}` together with its
/// ingredients. In monomial mode the syzygy sum is identically zero.
pub fn n_delta(module: &GammaSemimodule, mode: NDeltaMode) -> Result<DimensionData> {
    let gen_gap_counts: Vec<u64> = module
        .min_generators()
        .iter()
        .map(|&g| module.gaps_above(g))
        .collect();
    let syz_gap_counts: Vec<u64> = match mode {
        NDeltaMode::PQ => {
            module.semigroup().pq()?;
            if module.generator_count() >= 2 {
                augmented_syzygies(module)?
                    .iter()
                    .map(|t| module.gaps_above(t.sigma))
                    .collect()
            } else {
                Vec::new()
            }
        }
        NDeltaMode::Monomial => {
            if !module.semigroup().classify_monomial().is_monomial() {
                return Err(Error::UnsupportedSemigroup {
                    generators: module.semigroup().generators().to_vec(),
                });
            }
            Vec::new()
        }
    };
    let gen_total: u64 = gen_gap_counts.iter().sum();
    let syz_total: u64 = syz_gap_counts.iter().sum();
    let n = gen_total
        .checked_sub(syz_total)
        .expect("cell dimension is nonnegative");
    let b = if module.colength() == 0 {
        0
    } else {
        b_delta(module)?
    };
    Ok(DimensionData {
        n,
        b,
        gen_gap_counts,
        syz_gap_counts,
    })
}

/// Computes `N(Δ)` by the merge recursion
/// `N(Δ) = N(merge(Δ)) + B(Δ) - #{shared syzygies below γ_Δ}`
/// (the correction vanishing in monomial mode), anchored at `N(Γ) = 0`.
pub fn n_delta_recursive(module: &GammaSemimodule) -> Result<u64> {
    let mode = semigroup_mode(module.semigroup())?;
    let mut acc: i64 = 0;
    let mut current = module.clone();
    while current.colength() > 0 {
        let step = b_delta(&current)? as i64
            - match mode {
                NDeltaMode::PQ => shared_syzygies_below(&current)? as i64,
                NDeltaMode::Monomial => 0,
            };
        acc += step;
        current = current.merge()?;
    }
    debug_assert!(acc >= 0);
    Ok(acc as u64)
}

/// The class `[C^[ℓ]] = Σ_{Δ ∈ D_ℓ} L^{N(Δ)}` of the punctual Hilbert scheme.
pub fn hilbert_class(semigroup: &Arc<NumericalSemigroup>, colength: u64) -> Result<LPolynomial> {
    let mode = semigroup_mode(semigroup)?;
    let mut sum = LPolynomial::zero();
    for module in enumerate_level(semigroup, colength)? {
        sum += &LPolynomial::lefschetz_power(n_delta(&module, mode)?.n as usize);
    }
    Ok(sum)
}

/// The motivic Hilbert zeta series `Σ_ℓ [C^[ℓ]] q^ℓ` up to `q^lmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    /// `coefficients[ℓ] = [C^[ℓ]]` for `0 ≤ ℓ ≤ lmax`.
    pub coefficients: Vec<LPolynomial>,
    /// Smallest `ℓ_s` from which the coefficients are constant, reported
    /// only when the constant tail extends at least `max(generators)` levels
    /// beyond `ℓ_s`.
    pub stabilization_level: Option<u64>,
    /// Numerator of `Z(q) = n(q) / (1 - q)`: `n_j = [C^[j]] - [C^[j-1]]`
    /// for `1 ≤ j ≤ ℓ_s`, with `n_0 = 1`. Present iff stabilized.
    pub numerator: Option<Vec<LPolynomial>>,
}

/// Computes the zeta series of a semigroup up to `q^lmax`, detecting
/// stabilization empirically.
pub fn zeta_series(semigroup: &Arc<NumericalSemigroup>, lmax: u64) -> Result<ZetaSeries> {
    semigroup_mode(semigroup)?;
    let coefficients: Vec<LPolynomial> = (0..=lmax)
        .map(|l| hilbert_class(semigroup, l))
        .collect::<Result<_>>()?;
    let buffer = *semigroup.generators().last().unwrap();
    let stabilization_level = detect_stabilization(&coefficients, buffer);
    let numerator = stabilization_level.map(|ls| {
        (0..=ls as usize)
            .map(|j| {
                if j == 0 {
                    coefficients[0].clone()
                } else {
                    &coefficients[j] - &coefficients[j - 1]
                }
            })
            .collect()
    });
    Ok(ZetaSeries {
        coefficients,
        stabilization_level,
        numerator,
    })
}

/// Smallest index from which the tail is constant, provided the tail is at
/// least `buffer` entries longer than that index; `None` otherwise.
fn detect_stabilization(coefficients: &[LPolynomial], buffer: u64) -> Option<u64> {
    let last = coefficients.last()?;
    let mut ls = coefficients.len() - 1;
    while ls > 0 && coefficients[ls - 1] == *last {
        ls -= 1;
    }
    ((coefficients.len() - 1 - ls) as u64 >= buffer).then_some(ls as u64)
}

/// Closed form of the zeta series of `A_{2d}` (i.e. `Γ = ⟨2, 2d+1⟩`):
/// `Z(q) = (1 - (Lq²)^{d+1}) / ((1 - q)(1 - Lq²))`, whose `q^ℓ` coefficient
/// is `Σ_{k ≤ min(d, ℓ/2)} L^k`, with numerator `Σ_{k ≤ d} L^k q^{2k}` over
/// `1 - q` and stabilization level `2d`.
pub fn a2d_closed_form(d: u64, lmax: u64) -> ZetaSeries {
    let coefficients: Vec<LPolynomial> = (0..=lmax)
        .map(|l| LPolynomial::from_coeffs(vec![1; (d.min(l / 2) + 1) as usize]))
        .collect();
    let stabilization_level = (lmax >= 2 * d).then_some(2 * d);
    let numerator = stabilization_level.map(|_| {
        (0..=2 * d)
            .map(|j| {
                if j % 2 == 0 {
                    LPolynomial::lefschetz_power((j / 2) as usize)
                } else {
                    LPolynomial::zero()
                }
            })
            .collect()
    });
    ZetaSeries {
        coefficients,
        stabilization_level,
        numerator,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(gens).unwrap())
    }

    fn lp(coeffs: &[i64]) -> LPolynomial {
        LPolynomial::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn polynomial_arithmetic_and_display() {
        let p = lp(&[1, 1, 2]);
        let q = lp(&[0, 1]);
        assert_eq!((&p + &q).coeffs(), &[1, 2, 2]);
        assert_eq!((&p - &p), LPolynomial::zero());
        assert_eq!((&q * &q).coeffs(), &[0, 0, 1]);
        assert_eq!(p.eval(2), 1 + 2 + 8);
        assert_eq!(p.to_string(), "1 + L + 2L^2");
        assert_eq!(lp(&[0, 0, -1, 3]).to_string(), "-L^2 + 3L^3");
        assert_eq!(LPolynomial::zero().to_string(), "0");
        assert_eq!(LPolynomial::lefschetz_power(0), LPolynomial::one());
    }

    #[test]
    fn dimension_of_known_cells() {
        let s47 = sg(&[4, 7]);
        let m = GammaSemimodule::from_generators(&s47, &[8, 11]).unwrap();
        let data = n_delta(&m, NDeltaMode::PQ).unwrap();
        assert_eq!(data.gen_gap_counts, vec![2, 2]);
        assert_eq!(data.syz_gap_counts, vec![1, 0]);
        assert_eq!(data.n, 3);
        assert_eq!(data.b, 2);

        let s34 = sg(&[3, 4]);
        let m = GammaSemimodule::from_gaps(&s34, &[0, 4]).unwrap();
        assert_eq!(m.min_generators(), &[3, 8]);
        assert_eq!(n_delta(&m, NDeltaMode::PQ).unwrap().n, 1);
    }

    #[test]
    fn recursion_agrees_with_direct_formula() {
        for gens in [vec![3, 4], vec![4, 6, 7]] {
            let s = sg(&gens);
            let mode = semigroup_mode(&s).unwrap();
            for l in 0..=7 {
                for m in enumerate_level(&s, l).unwrap() {
                    assert_eq!(
                        n_delta(&m, mode).unwrap().n,
                        n_delta_recursive(&m).unwrap(),
                        "{gens:?} {:?}",
                        m.gap_set()
                    );
                }
            }
        }
    }

    #[test]
    fn hilbert_classes_match_known_tables() {
        assert_eq!(hilbert_class(&sg(&[3, 4]), 4).unwrap(), lp(&[1, 1, 2]));
        assert_eq!(
            hilbert_class(&sg(&[3, 5]), 8).unwrap(),
            lp(&[1, 1, 2, 2, 1])
        );
        // A three-generator monomial semigroup.
        assert_eq!(
            hilbert_class(&sg(&[4, 6, 7]), 10).unwrap(),
            lp(&[1, 1, 2, 3, 4, 2])
        );
    }

    #[test]
    fn zeta_of_the_cusp() {
        let z = zeta_series(&sg(&[2, 3]), 8).unwrap();
        assert_eq!(z.stabilization_level, Some(2));
        assert_eq!(
            z.numerator.unwrap(),
            vec![LPolynomial::one(), LPolynomial::zero(), lp(&[0, 1])]
        );
        // Too short a tail: series still returned, no rational form.
        let z = zeta_series(&sg(&[2, 3]), 3).unwrap();
        assert_eq!(z.stabilization_level, None);
        assert!(z.numerator.is_none());
        assert_eq!(z.coefficients.len(), 4);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let z = a2d_closed_form(3, 5);
        assert_eq!(z.coefficients[5], hilbert_class(&sg(&[2, 7]), 5).unwrap());
        assert_eq!(z.coefficients[5], lp(&[1, 1, 1]));
        assert_eq!(z.stabilization_level, None);
        assert!(a2d_closed_form(3, 11).stabilization_level == Some(6));
    }

    #[test]
    fn unsupported_semigroups_are_rejected() {
        let s = sg(&[5, 6, 7]);
        assert!(matches!(
            semigroup_mode(&s),
            Err(Error::UnsupportedSemigroup { .. })
        ));
        assert!(matches!(
            hilbert_class(&s, 2),
            Err(Error::UnsupportedSemigroup { .. })
        ));
    }
}
