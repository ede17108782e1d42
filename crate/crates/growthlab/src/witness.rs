//! The one-sided Heisenberg family `A = {e} ∪ {x yⁿ : n ≥ 0}` with an exact
//! membership test for its powers and a witness search showing that no
//! finite translate set can cover `A^{rh}` by `A^h`.
//!
//! The set is represented symbolically; membership is decided by a closed
//! characterization, never by enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::set::ElementSet;

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// The family `A = {e} ∪ {x yⁿ : n ≥ 0}` inside the Heisenberg group, where
/// `x = (1,0,0)` and `y = (0,1,0)`.
#[derive(Debug, Clone)]
pub struct OneSidedFamily {
    group: Group,
}

impl Default for OneSidedFamily {
    fn default() -> Self {
        Self::new()
    }
}

/// Why a translate fails to cover the witness element.
#[derive(Debug, Clone, Serialize)]
pub struct TranslateFailure {
    pub translate: Vec<i64>,
    pub reduced: Vec<i64>,
    pub reason: String,
}

/// Outcome of a witness search.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub r: u32,
    pub h: u32,
    pub n_max: u64,
    /// Least `n` with `g_n = (xyⁿ)x^{rh-1} ∉ X·A^h`, when found.
    pub witness: Option<u64>,
    /// Coordinates of the witness element `g_n`.
    pub element: Option<Vec<i64>>,
    /// For the witness, why each translate fails to absorb it.
    pub failures: Vec<TranslateFailure>,
}

impl OneSidedFamily {
    pub fn new() -> Self {
        OneSidedFamily {
            group: Group::heisenberg(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// The generator `x yⁿ = (1, n, 0)`.
    pub fn factor(&self, n: u64) -> Result<Element> {
        let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
        self.group.element(&[1, n, 0])
    }

    /// Product of the factors `x y^{n_1} ⋯ x y^{n_k}` by the closed form
    /// `(k, Σ n_i, −Σ (k−i) n_i)`, cross-checked against the iterated group
    /// product of the same factors.
    pub fn product(&self, ns: &[u64]) -> Result<Element> {
        if ns.is_empty() {
            return Err(Error::precondition("factor list must be non-empty"));
        }
        let k = i64::try_from(ns.len()).map_err(|_| Error::Overflow)?;
        let mut sum = 0i64;
        let mut twist = 0i64;
        for (i, &n) in ns.iter().enumerate() {
            let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
            sum = checked_add(sum, n)?;
            let weight = k - 1 - i as i64;
            twist = checked_add(twist, checked_mul(weight, n)?)?;
        }
        let closed = self.group.element(&[k, sum, -twist])?;

        let mut folded = self.factor(ns[0])?;
        for &n in &ns[1..] {
            folded = folded.mul(&self.factor(n)?)?;
        }
        if closed != folded {
            return Err(Error::VerificationFailed(
                "closed-form product disagrees with the group law".into(),
            ));
        }
        Ok(closed)
    }

    /// Exact membership test for `A^h`: `u` is either the identity, or
    /// `(k, B, C)` with `1 ≤ k ≤ h`, `B ≥ 0`, and `C = 0` when `k = 1`,
    /// `0 ≤ −C ≤ (k−1)B` when `k ≥ 2`.
    ///
    /// The first coordinate of a product counts its non-identity factors, so
    /// `k` is well-defined; with weights `0..k−1` distributing total mass `B`,
    /// every defect in `[0, (k−1)B]` is attainable, which makes the bound
    /// sufficient as well as necessary.
    pub fn contains_power(&self, u: &Element, h: u32) -> Result<bool> {
        if u.group() != &self.group {
            return Err(Error::SpecMismatch);
        }
        if u.is_identity() {
            return Ok(true);
        }
        let (k, b, c) = (u.coords()[0], u.coords()[1], u.coords()[2]);
        if k < 1 || k > h as i64 || b < 0 {
            return Ok(false);
        }
        if k == 1 {
            return Ok(c == 0);
        }
        Ok(c <= 0 && -c <= checked_mul(k - 1, b)?)
    }

    /// Diagnostic explanation of a failed membership test for `u ∉ A^h`.
    fn failure_reason(&self, u: &Element, h: u32) -> Result<Option<String>> {
        if self.contains_power(u, h)? {
            return Ok(None);
        }
        let (k, b, c) = (u.coords()[0], u.coords()[1], u.coords()[2]);
        let reason = if k < 1 || k > h as i64 {
            format!("factor count k = {k} lies outside [1, {h}]")
        } else if b < 0 {
            format!("second coordinate {b} is negative")
        } else if k == 1 {
            format!("a single factor forces central coordinate 0, found {c}")
        } else if c > 0 {
            format!("central coordinate {c} is positive")
        } else {
            format!(
                "central defect {} exceeds (k-1)*B = {}",
                -c,
                checked_mul(k - 1, b)?
            )
        };
        Ok(Some(reason))
    }

    /// The element `g_n = (x yⁿ) x^{rh−1} = (rh, n, −(rh−1) n)`.
    pub fn escape_element(&self, r: u32, h: u32, n: u64) -> Result<Element> {
        let rh = checked_mul(r as i64, h as i64)?;
        let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
        self.group
            .element(&[rh, n, -checked_mul(rh - 1, n)?])
    }

    /// Default search ceiling: `4 · (1 + max over t of max(0, b_t − c_t))`,
    /// a generous cover of the threshold past which every translate fails.
    pub fn default_n_max(&self, x: &ElementSet) -> u64 {
        let worst = x
            .iter()
            .map(|t| (t.coords()[1].saturating_sub(t.coords()[2])).max(0))
            .max()
            .unwrap_or(0);
        4 * (1 + worst as u64)
    }

    /// Least `n ≤ n_max` with `g_n ∉ X · A^h`, decided exactly through the
    /// membership test; each `g_n` is confirmed to lie in `A^{rh}` first.
    pub fn find_witness(
        &self,
        r: u32,
        h: u32,
        x: &ElementSet,
        n_max: u64,
    ) -> Result<WitnessReport> {
        if r < 2 || h < 1 {
            return Err(Error::precondition("witness search requires r >= 2, h >= 1"));
        }
        if x.group() != &self.group {
            return Err(Error::SpecMismatch);
        }
        for n in 0..=n_max {
            let g_n = self.escape_element(r, h, n)?;
            if !self.contains_power(&g_n, r * h)? {
                return Err(Error::VerificationFailed(
                    "escape element unexpectedly outside A^{rh}".into(),
                ));
            }
            let mut failures = Vec::with_capacity(x.len());
            let mut covered = false;
            for t in x.iter() {
                let reduced = t.inv()?.mul(&g_n)?;
                match self.failure_reason(&reduced, h)? {
                    None => {
                        covered = true;
                        break;
                    }
                    Some(reason) => failures.push(TranslateFailure {
                        translate: t.coords().to_vec(),
                        reduced: reduced.coords().to_vec(),
                        reason,
                    }),
                }
            }
            if !covered {
                return Ok(WitnessReport {
                    r,
                    h,
                    n_max,
                    witness: Some(n),
                    element: Some(g_n.coords().to_vec()),
                    failures,
                });
            }
        }
        Ok(WitnessReport {
            r,
            h,
            n_max,
            witness: None,
            element: None,
            failures: Vec::new(),
        })
    }
}

/// The inequality `(rh − k) n ≤ b − c` that any covering translate
/// `t = (a, b, c)` and factor count `k` must satisfy; once it fails for every
/// feasible pair, membership fails too.
pub fn slope_inequality(r: u32, h: u32, k: u32, n: u64, b: i64, c: i64) -> Result<bool> {
    if k < 1 || k > h {
        return Err(Error::precondition("slope inequality requires 1 <= k <= h"));
    }
    let rh = checked_mul(r as i64, h as i64)?;
    let n = i64::try_from(n).map_err(|_| Error::Overflow)?;
    let lhs = checked_mul(rh - k as i64, n)?;
    Ok(lhs <= b.saturating_sub(c))
}
