//! Syzygies of subsemimodule generators: the syzygy module, its minimal
//! generators, and the augmented syzygies of two-generator semigroups.

use crate::error::{Error, Result};
use crate::semimodule::GammaSemimodule;

/// One augmented syzygy of a module over `Γ = ⟨p, q⟩`: generators are listed
/// by ascending `a`-coordinate of their `(a, b)` normal form, and the syzygy
/// between consecutive generators `γ_i = a_i q + b_i p`, `γ_{i+1}` is
/// `σ_i = a_{i+1} q + b_i p`. The last triple wraps around with
/// `σ_n = (a_1 + p) q + b_n p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyzygyTriple {
    pub gen: u64,
    pub next_gen: u64,
    pub sigma: u64,
}

/// Augmented syzygies of a module over a two-generator semigroup, in
/// `a`-coordinate order (with the wraparound triple last).
pub fn augmented_syzygies(module: &GammaSemimodule) -> Result<Vec<SyzygyTriple>> {
    let (p, q) = module.semigroup().pq()?;
    if module.generator_count() < 2 {
        return Err(Error::SingleGenerator);
    }
    let mut coords: Vec<(u64, u64, u64)> = module
        .min_generators()
        .iter()
        .map(|&g| {
            let c = module
                .semigroup()
                .pq_normal_form(g)
                .expect("module generators lie in the semigroup");
            (g, c.a, c.b)
        })
        .collect();
    coords.sort_by_key(|&(_, a, _)| a);
    // Minimal generators of a module over ⟨p, q⟩ have pairwise distinct
    // a-coordinates.
    debug_assert!(coords.windows(2).all(|w| w[0].1 < w[1].1));

    let n = coords.len();
    let mut triples = Vec::with_capacity(n);
    for i in 0..n {
        let (g_i, _, b_i) = coords[i];
        let (g_next, a_next, _) = coords[(i + 1) % n];
        let sigma = if i + 1 < n {
            a_next * q + b_i * p
        } else {
            (a_next + p) * q + b_i * p
        };
        triples.push(SyzygyTriple {
            gen: g_i,
            next_gen: g_next,
            sigma,
        });
    }
    Ok(triples)
}

/// The syzygy module `Syz(Δ) = ⋃_{i<j} (γ_i + Γ) ∩ (γ_j + Γ)`, itself a
/// cofinite `Γ`-subsemimodule. Requires at least two generators.
pub fn syzygy_module(module: &GammaSemimodule) -> Result<GammaSemimodule> {
    let gens = module.min_generators();
    if gens.len() < 2 {
        return Err(Error::SingleGenerator);
    }
    let s = module.semigroup();
    // Anything at or beyond γ_n + γ_{n-1} + c(Γ) lies in the two largest
    // translates simultaneously, so the gap set of Syz sits below it.
    let bound = gens[gens.len() - 1] + gens[gens.len() - 2] + s.conductor();
    let gaps: Vec<u64> = (0..bound)
        .filter(|&x| s.contains(x))
        .filter(|&x| {
            gens.iter()
                .filter(|&&g| x >= g && s.contains(x - g))
                .count()
                < 2
        })
        .collect();
    GammaSemimodule::from_gaps(s, &gaps)
}

/// Minimal generators `t_syz` of the syzygy module; empty for modules with a
/// single generator.
pub fn minimal_syzygies(module: &GammaSemimodule) -> Result<Vec<u64>> {
    if module.generator_count() < 2 {
        return Ok(Vec::new());
    }
    Ok(syzygy_module(module)?.min_generators().to_vec())
}

/// `B(Δ)`: the number of minimal generators below the largest gap `γ_Δ`.
pub fn b_delta(module: &GammaSemimodule) -> Result<u64> {
    let frobenius = module.frobenius().ok_or(Error::FullModule)?;
    Ok(module
        .min_generators()
        .iter()
        .filter(|&&g| g < frobenius)
        .count() as u64)
}

/// Number of minimal syzygies shared by `Δ` and `merge(Δ)` lying strictly
/// below `γ_Δ`. Defined for modules over two-generator semigroups.
pub fn shared_syzygies_below(module: &GammaSemimodule) -> Result<u64> {
    module.semigroup().pq()?;
    let frobenius = module.frobenius().ok_or(Error::FullModule)?;
    let ours = minimal_syzygies(module)?;
    let merged = minimal_syzygies(&module.merge()?)?;
    Ok(ours
        .iter()
        .filter(|&&s| s < frobenius && merged.contains(&s))
        .count() as u64)
}
