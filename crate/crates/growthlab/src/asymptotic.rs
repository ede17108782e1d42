//! Asymptotic approximate-group profiles and the supporting machinery:
//! positive word lengths, semigroup-generation certificates, identity
//! padding, the inner-ball criterion, and the constructive cover it yields.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_rational::Ratio;

use crate::cover::{floor_ratio_times, min_cover, polynomial_growth_cover, verify_cover, CoverResult, ExactLimits};
use crate::error::{Error, Result};
use crate::group::{Coords, Element};
use crate::product::{ball, power};
use crate::set::ElementSet;
use crate::Budget;

/// One measured covering number: `l_h = cov(A^{rh}, A^h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileEntry {
    pub h: u32,
    pub l: usize,
    /// True when the exhaustive solver proved `l` minimum.
    pub exact: bool,
}

/// The sequence `h -> cov(A^{rh}, A^h)` for a fixed dilation factor `r`.
/// Every entry's cover was verified by exhaustive membership.
#[derive(Debug, Clone)]
pub struct ApproxProfile {
    pub r: u32,
    pub entries: Vec<ProfileEntry>,
    /// Set when the budget ran out mid-range; the entries up to that point
    /// are still valid.
    pub truncated: Option<String>,
}

impl ApproxProfile {
    /// Largest `l_h` over all entries.
    pub fn max_l(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.l).max()
    }
}

/// Measures `l_h = cov(A^{rh}, A^h)` for every `h` in the range, using the
/// exhaustive solver when the instance fits within `limits`.
///
/// A budget exhaustion mid-range returns the partial profile with a marker
/// instead of failing outright.
pub fn approx_profile(
    a: &ElementSet,
    r: u32,
    h_range: RangeInclusive<u32>,
    limits: ExactLimits,
    budget: Budget,
) -> Result<ApproxProfile> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if r < 2 {
        return Err(Error::precondition("dilation factor r must be >= 2"));
    }
    let mut entries = Vec::new();
    let mut truncated = None;
    for h in h_range {
        if h == 0 {
            return Err(Error::precondition("profile range must start at h >= 1"));
        }
        let step = (|| -> Result<ProfileEntry> {
            let big = power(a, r * h, budget)?;
            let small = power(a, h, budget)?;
            let cover = min_cover(&big, &small, limits, budget)?;
            Ok(ProfileEntry {
                h,
                l: cover.size(),
                exact: cover.exact,
            })
        })();
        match step {
            Ok(entry) => entries.push(entry),
            Err(Error::BudgetExceeded { needed, limit }) => {
                truncated = Some(format!(
                    "budget exceeded at h = {h}: needed {needed}, limit {limit}"
                ));
                break;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(ApproxProfile {
        r,
        entries,
        truncated,
    })
}

/// Positive `A`-length: the least `n >= 1` with `g ∈ A^n`, searched
/// incrementally up to `cutoff`.  `None` means the cutoff was reached
/// without finding `g` — never a negative claim.
pub fn positive_length(
    a: &ElementSet,
    g: &Element,
    cutoff: u32,
    budget: Budget,
) -> Result<Option<u32>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut cur = a.clone();
    for n in 1..=cutoff {
        if cur.contains(g) {
            return Ok(Some(n));
        }
        if n < cutoff {
            cur = cur.minkowski(a, budget)?;
        }
    }
    Ok(None)
}

/// Search status of a bounded certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    Proven,
    Unknown { cutoff: u32 },
}

/// Evidence that `A` semigroup-generates its subgroup: the identity is a
/// positive word, and so is the inverse of every element of `A`.
#[derive(Debug, Clone)]
pub struct SemigroupCert {
    /// Least `n` with `e ∈ A^n`, when found.
    pub p: Option<u32>,
    /// For each `a ∈ A` (in lexicographic order), the positive length of
    /// `a⁻¹` when found within the cutoff.
    pub inverse_lengths: Vec<(Element, Option<u32>)>,
    pub status: CertStatus,
}

/// Bounded search for semigroup generation: scans `A^n` for `n = 1..cutoff`
/// until the identity and the inverse of every generator have appeared.
///
/// Every inverse of a generator being a positive word makes every element of
/// `⟨A⟩` one, so a fully successful search proves semigroup generation.
pub fn semigroup_certificate(
    a: &ElementSet,
    cutoff: u32,
    budget: Budget,
) -> Result<SemigroupCert> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let identity = a.group().identity();
    let targets: Vec<Element> = std::iter::once(identity.clone())
        .chain(a.iter().map(|x| x.inv()).collect::<Result<Vec<_>>>()?)
        .collect();
    // Several targets may share coordinates (the identity is its own inverse).
    let mut wanted: HashMap<Coords, Vec<usize>> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        wanted
            .entry(Coords::from_slice(t.coords()))
            .or_default()
            .push(i);
    }
    let mut found: Vec<Option<u32>> = vec![None; targets.len()];
    let mut outstanding = targets.len();
    let mut cur = a.clone();
    for n in 1..=cutoff {
        for e in cur.iter() {
            if let Some(indices) = wanted.get(e.coords()) {
                for &i in indices {
                    if found[i].is_none() {
                        found[i] = Some(n);
                        outstanding -= 1;
                    }
                }
            }
        }
        if outstanding == 0 {
            break;
        }
        if n < cutoff {
            cur = cur.minkowski(a, budget)?;
        }
    }
    let p = found[0];
    let inverse_lengths: Vec<(Element, Option<u32>)> = a
        .iter()
        .cloned()
        .zip(found[1..].iter().copied())
        .collect();
    let status = if p.is_some() && inverse_lengths.iter().all(|(_, l)| l.is_some()) {
        CertStatus::Proven
    } else {
        CertStatus::Unknown { cutoff }
    };
    Ok(SemigroupCert {
        p,
        inverse_lengths,
        status,
    })
}

/// A verified uniform positive-word bound for inverses:
/// `S = A ∪ A⁻¹ ⊆ A^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InverseBoundCert {
    pub q: u32,
}

/// Computes `q = max(1, max over a of the positive length of a⁻¹)` from a
/// proven certificate and verifies `A ∪ A⁻¹ ⊆ A^q`.
///
/// Requires `e ∈ A`, which pads shorter positive words to length exactly `q`.
pub fn inverse_bound(
    a: &ElementSet,
    cert: &SemigroupCert,
    budget: Budget,
) -> Result<InverseBoundCert> {
    if !a.contains_identity() {
        return Err(Error::MissingIdentity);
    }
    if cert.status != CertStatus::Proven {
        return Err(Error::CertificateNotProven);
    }
    let q = cert
        .inverse_lengths
        .iter()
        .filter_map(|(_, l)| *l)
        .max()
        .unwrap_or(1)
        .max(1);
    let s = a.union(&a.inverse_set()?)?;
    let a_q = power(a, q, budget)?;
    if !s.is_subset_of(&a_q) {
        return Err(Error::VerificationFailed(
            "A ∪ A⁻¹ is not contained in A^q".into(),
        ));
    }
    Ok(InverseBoundCert { q })
}

/// A verified padding certificate: `E = {w_j⁻¹}` with `w_j ∈ A^j` satisfies
/// `(A ∪ {e})^h ⊆ E · A^h` for every checked `h`.
#[derive(Debug, Clone)]
pub struct PaddingCert {
    pub p: u32,
    /// `w_0 = e` and, for `0 < j < p`, the lexicographically least element
    /// of `A^j`.
    pub reps: Vec<Element>,
    /// The translate set `E = { w_j⁻¹ : 0 <= j < p }`.
    pub translates: ElementSet,
    /// The `h` values whose inclusions were verified.
    pub checked: Vec<u32>,
}

/// Builds and verifies the padding certificate for a set with `e ∈ A^p`.
pub fn padding_cert(
    a: &ElementSet,
    p: u32,
    h_check: RangeInclusive<u32>,
    budget: Budget,
) -> Result<PaddingCert> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if p == 0 {
        return Err(Error::precondition("padding exponent p must be >= 1"));
    }
    let identity = a.group().identity();
    if !power(a, p, budget)?.contains(&identity) {
        return Err(Error::precondition(
            "identity does not lie in A^p for the given p",
        ));
    }
    let mut reps = vec![identity];
    for j in 1..p {
        let a_j = power(a, j, budget)?;
        reps.push(a_j.lex_min().expect("powers of a non-empty set are non-empty").clone());
    }
    let translates = ElementSet::from_elements(
        a.group(),
        reps.iter().map(|w| w.inv()).collect::<Result<Vec<_>>>()?,
    )?;
    assert!(translates.len() <= p as usize);

    let padded = a.with_identity();
    let mut checked = Vec::new();
    for h in h_check {
        let lhs = power(&padded, h, budget)?;
        let rhs = power(a, h, budget)?;
        if !verify_cover(&lhs, &translates, &rhs)? {
            return Err(Error::VerificationFailed(format!(
                "padding inclusion (A ∪ {{e}})^h ⊆ E A^h failed at h = {h}"
            )));
        }
        checked.push(h);
    }
    Ok(PaddingCert {
        p,
        reps,
        translates,
        checked,
    })
}

/// For each `h` in the range, decides `B_S(⌊θh⌋) ⊆ A^h` by exhaustive
/// membership.
pub fn inner_ball_check(
    a: &ElementSet,
    s: &ElementSet,
    theta: Ratio<i64>,
    h_range: RangeInclusive<u32>,
    budget: Budget,
) -> Result<Vec<(u32, bool)>> {
    if theta <= Ratio::new(0, 1) {
        return Err(Error::precondition("theta must be positive"));
    }
    let mut out = Vec::new();
    for h in h_range {
        let radius = floor_ratio_times(theta, h as i64)?;
        let b = ball(s, radius as u32, budget)?;
        let a_h = power(a, h, budget)?;
        out.push((h, b.is_subset_of(&a_h)));
    }
    Ok(out)
}

/// Largest `S`-word length among the elements of `targets`: the least ball
/// radius containing all of them.  Fails if ball expansion saturates (or
/// exhausts the budget) before every target appears.
fn max_word_length(targets: &ElementSet, s: &ElementSet, budget: Budget) -> Result<u32> {
    let mut radius = 0u32;
    loop {
        let b = ball(s, radius, budget)?;
        if targets.is_subset_of(&b) {
            return Ok(radius);
        }
        let next = ball(s, radius + 1, budget)?;
        if next.len() == b.len() {
            return Err(Error::precondition(
                "S does not generate a subgroup containing all targets",
            ));
        }
        radius += 1;
    }
}

/// The constructive cover behind the inner-ball criterion: with
/// `B_S(⌊θh⌋) ⊆ A^h` verified at `h`, covers `A^{rh}` by translates of
/// `A^h` through the ball-covering pipeline.
pub fn criterion_cover(
    a: &ElementSet,
    s: &ElementSet,
    theta: Ratio<i64>,
    r: u32,
    h: u32,
    budget: Budget,
) -> Result<CoverResult> {
    if !a.contains_identity() {
        return Err(Error::MissingIdentity);
    }
    if r < 1 || h < 1 {
        return Err(Error::precondition("criterion cover requires r, h >= 1"));
    }
    let holds = inner_ball_check(a, s, theta, h..=h, budget)?;
    if !holds[0].1 {
        return Err(Error::CriterionFailed { h });
    }
    // Uniform S-length bound on the factors of A.
    let c = max_word_length(a, s, budget)?.max(1);
    let r0 = Ratio::from_integer((c as i64) * (r as i64));
    let theta0 = theta.min(Ratio::new(1, 1));
    let pgc = polynomial_growth_cover(s, r0, theta0, h, budget)?;

    let big = power(a, r * h, budget)?;
    let small = power(a, h, budget)?;
    if !verify_cover(&big, &pgc.translates, &small)? {
        return Err(Error::VerificationFailed(
            "criterion cover failed exhaustive membership against A^{rh}, A^h".into(),
        ));
    }
    Ok(CoverResult {
        translates: pgc.translates,
        multiplier: small,
        exact: false,
        bound: pgc.bound,
    })
}
