//! Truncated verification for products of a finite set with a normalized
//! subsemigroup: normalizer certificates, the power identity
//! `(FM)^h = F^h M` checked on explicit finite windows, cover lifting, and
//! bounded enlargement.
//!
//! The subsemigroup `M` is infinite in general; every check here states the
//! truncation radii it used, and all reported inclusions are exact inclusions
//! of the computed finite sets, monotone under window enlargement.

use std::ops::RangeInclusive;

use crate::asymptotic::positive_length;
use crate::cover::{min_cover, verify_cover, CoverResult, ExactLimits};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::product::power;
use crate::set::ElementSet;
use crate::Budget;

/// A finitely generated subsemigroup, always taken to contain the identity.
#[derive(Debug, Clone)]
pub struct SemigroupDesc {
    generators: ElementSet,
}

impl SemigroupDesc {
    pub fn new(generators: ElementSet) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(SemigroupDesc { generators })
    }

    pub fn generators(&self) -> &ElementSet {
        &self.generators
    }
}

/// The elements of `M` expressible as positive words of length at most `L`,
/// together with the identity.
#[derive(Debug, Clone)]
pub struct TruncatedSet {
    pub elements: ElementSet,
    pub radius: u32,
}

/// Enumerates `{e} ∪ gens ∪ gens² ∪ ... ∪ gens^L`.
pub fn truncate_semigroup(m: &SemigroupDesc, l: u32, budget: Budget) -> Result<TruncatedSet> {
    let group = m.generators.group().clone();
    let mut acc: Vec<Element> = vec![group.identity()];
    let mut level: Option<ElementSet> = None;
    for _ in 1..=l {
        let next = match level {
            None => m.generators.clone(),
            Some(ref prev) => prev.minkowski(&m.generators, budget)?,
        };
        acc.extend(next.iter().cloned());
        if acc.len() > budget.limit {
            return Err(Error::BudgetExceeded {
                needed: acc.len(),
                limit: budget.limit,
            });
        }
        level = Some(next);
    }
    Ok(TruncatedSet {
        elements: ElementSet::from_elements(&group, acc)?,
        radius: l,
    })
}

/// Outcome of the bounded normalizer check for a single element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormStatus {
    /// Both conjugates of every generator were found in `M`;
    /// `max_conjugate_length` is the largest positive word length needed.
    Proven { max_conjugate_length: u32 },
    /// Some conjugate of a generator is provably outside `M`.
    Refuted {
        generator: Element,
        conjugate: Element,
        reason: String,
    },
    /// Neither proven nor refutable within the search depth.
    Unknown,
}

impl NormStatus {
    pub fn is_proven(&self) -> bool {
        matches!(self, NormStatus::Proven { .. })
    }
}

/// Coordinate positions that add under the group law (group homomorphisms to
/// the integers given by a single coordinate).  Used for provable exclusion
/// from a subsemigroup.
fn additive_characters(spec: &GroupSpec) -> Vec<usize> {
    match spec {
        GroupSpec::FreeAbelian { rank } => (0..*rank).collect(),
        GroupSpec::CyclicFinite { .. } => Vec::new(),
        GroupSpec::Heisenberg3 => vec![0, 1],
        GroupSpec::Unitriangular { n } => {
            // The first superdiagonal entries of a product add componentwise.
            let mut idx = Vec::new();
            let mut offset = 0;
            for i in 0..(n - 1) {
                idx.push(offset);
                offset += n - 1 - i;
            }
            idx
        }
        GroupSpec::ProductWithFinite { base, .. } => additive_characters(base),
    }
}

/// Sound proof that `g` lies outside `M = ⟨gens⟩₊ ∪ {e}`, or `None` when no
/// obstruction applies.  `searched_depth` is the length up to which positive
/// words have already been enumerated without finding `g`.
fn exclusion_proof(
    gens: &ElementSet,
    g: &Element,
    searched_depth: u32,
) -> Option<String> {
    if g.is_identity() {
        return None;
    }
    let chars = additive_characters(gens.group().spec());
    for &j in &chars {
        let vals: Vec<i64> = gens.iter().map(|u| u.coords()[j]).collect();
        let v = g.coords()[j];
        if vals.iter().all(|&x| x >= 0) && v < 0 {
            return Some(format!(
                "coordinate {j} is non-negative on every generator but {v} on the conjugate"
            ));
        }
        if vals.iter().all(|&x| x <= 0) && v > 0 {
            return Some(format!(
                "coordinate {j} is non-positive on every generator but {v} on the conjugate"
            ));
        }
        // Strictly monotone coordinate: a product of n generators has value
        // >= n, so membership is decided by the words of length <= value.
        for sign in [1i64, -1] {
            if vals.iter().all(|&x| sign * x >= 1) {
                let sv = sign * v;
                if sv < 1 {
                    return Some(format!(
                        "coordinate {j} grows with every factor but is {v} on the conjugate"
                    ));
                }
                if sv <= searched_depth as i64 {
                    return Some(format!(
                        "all positive words of length <= {sv} (forced by coordinate {j}) \
                         were enumerated without finding the conjugate"
                    ));
                }
            }
        }
    }
    None
}

/// Bounded decision of `f ∈ N_G(M)`: both conjugates of every generator are
/// searched for in the truncated semigroup; failures are refuted when a
/// coordinate obstruction proves exclusion, and reported `Unknown` otherwise.
pub fn normalizes(
    f: &Element,
    m: &SemigroupDesc,
    depth: u32,
    budget: Budget,
) -> Result<NormStatus> {
    let f_inv = f.inv()?;
    let mut max_len = 0u32;
    for u in m.generators.iter() {
        for (left, right) in [(f, &f_inv), (&f_inv, f)] {
            let conj = left.mul(u)?.mul(right)?;
            if conj.is_identity() {
                continue;
            }
            match positive_length(&m.generators, &conj, depth, budget)? {
                Some(len) => max_len = max_len.max(len),
                None => {
                    if let Some(reason) = exclusion_proof(&m.generators, &conj, depth) {
                        return Ok(NormStatus::Refuted {
                            generator: u.clone(),
                            conjugate: conj,
                            reason,
                        });
                    }
                    return Ok(NormStatus::Unknown);
                }
            }
        }
    }
    Ok(NormStatus::Proven {
        max_conjugate_length: max_len.max(1),
    })
}

/// Window parameters and outcome of one `(FM)^h = F^h M` check.
#[derive(Debug, Clone)]
pub struct FmCheckReport {
    pub holds: bool,
    /// `L`: truncation radius of `M` on the left-hand side.
    pub truncation: u32,
    /// `L'`: enlarged truncation radius making the right-hand side complete.
    pub rhs_truncation: u32,
    /// Largest positive word length of any conjugate recorded during
    /// normalization.
    pub sigma: u32,
    /// `(F·M_L)^h ⊆ F^h · M_{L'}`.
    pub forward_included: bool,
    /// `F^h · M_L ⊆ (F·M_L)^h`.
    pub backward_included: bool,
    pub lhs_size: usize,
}

/// Word-length slack: conjugating a generator by up to `k - 1` elements of
/// `F` multiplies its positive length by at most `sigma` each time, so the
/// rewritten `M`-part of a `k`-fold product has length at most
/// `L * (sigma^{k-1} + ... + sigma + 1)`.
fn rewrite_slack(sigma: u32, k: u32, l: u32) -> Result<u32> {
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..k {
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow)?;
        term = term.checked_mul(sigma as u64).ok_or(Error::Overflow)?;
    }
    let out = total.checked_mul(l as u64).ok_or(Error::Overflow)?;
    u32::try_from(out).map_err(|_| Error::Overflow)
}

/// Requires every element of `F` to normalize `M` and returns the largest
/// recorded conjugate length.
fn normalization_sigma(
    f: &ElementSet,
    m: &SemigroupDesc,
    depth: u32,
    budget: Budget,
) -> Result<u32> {
    let mut sigma = 1u32;
    for g in f.iter() {
        match normalizes(g, m, depth, budget)? {
            NormStatus::Proven {
                max_conjugate_length,
            } => sigma = sigma.max(max_conjugate_length),
            NormStatus::Refuted { reason, .. } => {
                return Err(Error::precondition(format!(
                    "an element of F does not normalize M: {reason}"
                )));
            }
            NormStatus::Unknown => {
                return Err(Error::precondition(
                    "normalization of F could not be proven within the search depth",
                ));
            }
        }
    }
    Ok(sigma)
}

/// Verifies the power identity `(FM)^h = F^h M` at truncation radius `L`:
/// both directions are checked as exact inclusions of computed sets, with
/// the right-hand truncation enlarged by the conjugation slack so it is
/// complete for everything the left-hand side can produce.
pub fn fm_power_check(
    f: &ElementSet,
    m: &SemigroupDesc,
    h: u32,
    l: u32,
    depth: u32,
    budget: Budget,
) -> Result<FmCheckReport> {
    if f.is_empty() {
        return Err(Error::EmptySet);
    }
    if h == 0 {
        return Err(Error::precondition("fm power check requires h >= 1"));
    }
    let sigma = normalization_sigma(f, m, depth, budget)?;
    let l_prime = rewrite_slack(sigma, h, l)?;

    let m_l = truncate_semigroup(m, l, budget)?.elements;
    let m_lp = truncate_semigroup(m, l_prime, budget)?.elements;
    let fm = f.minkowski(&m_l, budget)?;
    let lhs = power(&fm, h, budget)?;
    let f_h = power(f, h, budget)?;
    let rhs_small = f_h.minkowski(&m_l, budget)?;
    let rhs_big = f_h.minkowski(&m_lp, budget)?;

    let forward = lhs.is_subset_of(&rhs_big);
    let backward = rhs_small.is_subset_of(&lhs);
    Ok(FmCheckReport {
        holds: forward && backward,
        truncation: l,
        rhs_truncation: l_prime,
        sigma,
        forward_included: forward,
        backward_included: backward,
        lhs_size: lhs.len(),
    })
}

/// Outcome of lifting a cover of `F`-powers to the truncated `FM`-powers.
#[derive(Debug, Clone)]
pub struct FmLiftReport {
    /// The cover of `F^{rh}` by translates of `F^h`; the identical translate
    /// set is reused for `FM`, so its size is unchanged by construction.
    pub cover: CoverResult,
    /// Truncation radius of `M` on the covered side.
    pub truncation: u32,
    /// Enlarged truncation on the covering side.
    pub rhs_truncation: u32,
    pub verified: bool,
}

/// Lifts a cover `F^{rh} ⊆ X_h F^h` to the truncated set `F·M_L`, verifying
/// `(F·M_L)^{rh} ⊆ X_h · (F·M_{L'})^h` by exhaustive membership.
pub fn lift_cover_fm(
    f: &ElementSet,
    m: &SemigroupDesc,
    r: u32,
    h: u32,
    l: u32,
    depth: u32,
    limits: ExactLimits,
    budget: Budget,
) -> Result<FmLiftReport> {
    if r < 2 || h < 1 {
        return Err(Error::precondition("lift requires r >= 2 and h >= 1"));
    }
    let sigma = normalization_sigma(f, m, depth, budget)?;
    let big = power(f, r * h, budget)?;
    let small = power(f, h, budget)?;
    let cover = min_cover(&big, &small, limits, budget)?;

    let l_prime = rewrite_slack(sigma, r * h, l)?;
    let m_l = truncate_semigroup(m, l, budget)?.elements;
    let m_lp = truncate_semigroup(m, l_prime, budget)?.elements;
    let fm = f.minkowski(&m_l, budget)?;
    let lhs = power(&fm, r * h, budget)?;
    let fm_big = f.minkowski(&m_lp, budget)?;
    let rhs = power(&fm_big, h, budget)?;

    let verified = verify_cover(&lhs, &cover.translates, &rhs)?;
    if !verified {
        return Err(Error::VerificationFailed(
            "lifted cover failed exhaustive membership on the truncated sets".into(),
        ));
    }
    Ok(FmLiftReport {
        cover,
        truncation: l,
        rhs_truncation: l_prime,
        verified,
    })
}

/// Bounded-enlargement check: with `B ⊆ A ⊆ B^m`, a cover of `B^{mrh}` by
/// `B^h` must also cover `A^{rh}` by `A^h`.  Returns the per-`h` outcomes.
pub fn thicken_check(
    b: &ElementSet,
    a: &ElementSet,
    m: u32,
    r: u32,
    h_range: RangeInclusive<u32>,
    limits: ExactLimits,
    budget: Budget,
) -> Result<Vec<(u32, bool)>> {
    if !b.is_subset_of(a) {
        return Err(Error::precondition("B must be a subset of A"));
    }
    let b_m = power(b, m, budget)?;
    if !a.is_subset_of(&b_m) {
        return Err(Error::precondition("A must be contained in B^m"));
    }
    let mut out = Vec::new();
    for h in h_range {
        let big_b = power(b, m * r * h, budget)?;
        let small_b = power(b, h, budget)?;
        let cover = min_cover(&big_b, &small_b, limits, budget)?;
        let big_a = power(a, r * h, budget)?;
        let small_a = power(a, h, budget)?;
        let ok = verify_cover(&big_a, &cover.translates, &small_a)?;
        out.push((h, ok));
    }
    Ok(out)
}
