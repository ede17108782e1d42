//! Exact enumeration of h-fold product sets and word balls, growth
//! sequences, and empirical growth-degree estimation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::set::ElementSet;
use crate::Budget;

/// `A^h`: products of exactly `h` factors from `A`, computed iteratively as
/// `A^k = A^(k-1) · A` with deduplication at every step.
///
/// When `A` contains the identity the powers are increasing, and only the
/// frontier of new elements needs multiplying; the result is identical to the
/// naive iteration.
pub fn power(a: &ElementSet, h: u32, budget: Budget) -> Result<ElementSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if h == 0 {
        return Err(Error::precondition("power requires h >= 1"));
    }
    if a.contains_identity() {
        let (set, _) = expand_increasing(a, h, budget)?;
        Ok(set)
    } else {
        let mut cur = a.clone();
        for _ in 1..h {
            cur = cur.minkowski(a, budget)?;
        }
        Ok(cur)
    }
}

/// Expands `A^1 ⊆ A^2 ⊆ ... ⊆ A^n` for a set containing the identity,
/// multiplying only the frontier at each step.  Returns the final set and
/// the size of every intermediate power (index `k` holds `|A^k|`, with
/// `|A^0| = 1`).
fn expand_increasing(a: &ElementSet, n: u32, budget: Budget) -> Result<(ElementSet, Vec<usize>)> {
    use std::collections::HashSet;

    let group = a.group().clone();
    let mut sizes = vec![1usize];
    if n == 0 {
        return Ok((ElementSet::singleton_identity(&group), sizes));
    }
    let mut members: Vec<Element> = a.iter().cloned().collect();
    let mut seen: HashSet<crate::group::Coords> = members
        .iter()
        .map(|e| crate::group::Coords::from_slice(e.coords()))
        .collect();
    let mut frontier: Vec<Element> = members.clone();
    sizes.push(members.len());
    check_budget(members.len(), budget)?;
    for _ in 1..n {
        let mut new_elems: Vec<Element> = Vec::new();
        for f in &frontier {
            for b in a.iter() {
                let p = f.mul(b)?;
                if seen.insert(crate::group::Coords::from_slice(p.coords())) {
                    new_elems.push(p);
                }
            }
        }
        new_elems.sort_unstable();
        check_budget(members.len() + new_elems.len(), budget)?;
        members.extend(new_elems.iter().cloned());
        sizes.push(members.len());
        frontier = new_elems;
        if frontier.is_empty() {
            // Saturated: all later powers coincide.
            while sizes.len() <= n as usize {
                sizes.push(members.len());
            }
            break;
        }
    }
    Ok((ElementSet::from_elements(&group, members)?, sizes))
}

fn check_budget(needed: usize, budget: Budget) -> Result<()> {
    if needed > budget.limit {
        return Err(Error::BudgetExceeded {
            needed,
            limit: budget.limit,
        });
    }
    Ok(())
}

/// Checks the word-ball preconditions: `S` finite and symmetric with the
/// identity.
pub fn check_ball_preconditions(s: &ElementSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if !s.contains_identity() {
        return Err(Error::MissingIdentity);
    }
    if !s.is_symmetric()? {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// The word ball `B_S(n) = S^n` for a finite symmetric generating set `S`
/// containing the identity; `B_S(0) = {e}`.
pub fn ball(s: &ElementSet, n: u32, budget: Budget) -> Result<ElementSet> {
    check_ball_preconditions(s)?;
    let (set, _) = expand_increasing(s, n, budget)?;
    Ok(set)
}

/// One row of a growth table: the radius and the ball size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRecord {
    pub n: u32,
    pub size: usize,
}

/// Ball sizes for `n = 0 ..= n_max`.
pub fn growth_sequence(s: &ElementSet, n_max: u32, budget: Budget) -> Result<Vec<GrowthRecord>> {
    check_ball_preconditions(s)?;
    let (_, sizes) = expand_increasing(s, n_max, budget)?;
    Ok(sizes
        .into_iter()
        .enumerate()
        .map(|(n, size)| GrowthRecord { n: n as u32, size })
        .collect())
}

/// Least-squares fit of `log |B(n)|` against `log n` over a radius window,
/// with the empirical constants observed on that window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub d_hat: f64,
    pub c1_hat: f64,
    pub c2_hat: f64,
    pub window: (u32, u32),
}

/// Default fit window: discard `n < 4` and keep the top half of the radii.
pub fn default_fit_window(n_max: u32) -> (u32, u32) {
    ((n_max / 2).max(4), n_max)
}

/// Fits the growth degree over `window = (n_lo, n_hi)` (inclusive).
///
/// Requires at least three records with `n >= 2` inside the window.  The
/// degree is the least-squares slope in log-log coordinates; `c1_hat` and
/// `c2_hat` are the extremes of `size / n^d_hat` over the window.
pub fn estimate_degree(records: &[GrowthRecord], window: (u32, u32)) -> Result<GrowthEstimate> {
    let (lo, hi) = window;
    let pts: Vec<&GrowthRecord> = records
        .iter()
        .filter(|r| r.n >= 1 && r.n >= lo && r.n <= hi)
        .collect();
    if pts.iter().filter(|r| r.n >= 2).count() < 3 {
        return Err(Error::precondition(
            "degree fit window must contain at least 3 records with n >= 2",
        ));
    }
    let xs: Vec<f64> = pts.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|r| (r.size as f64).ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    // Ball sizes are non-decreasing, so the slope is non-negative up to
    // floating-point noise.
    let d_hat = (num / den).max(0.0);
    let mut c1 = f64::INFINITY;
    let mut c2 = f64::NEG_INFINITY;
    for r in &pts {
        let ratio = r.size as f64 / (r.n as f64).powf(d_hat);
        c1 = c1.min(ratio);
        c2 = c2.max(ratio);
    }
    Ok(GrowthEstimate {
        d_hat,
        c1_hat: c1,
        c2_hat: c2,
        window,
    })
}

/// Exact growth degree of a backend from the ranks of its lower central
/// series: `sum of i * rank(Γ_i / Γ_{i+1})`.  Finite groups have degree 0;
/// a direct product with a finite group keeps the degree of its base.
pub fn bass_guivarch_degree(spec: &GroupSpec) -> u64 {
    match spec {
        GroupSpec::FreeAbelian { rank } => *rank as u64,
        GroupSpec::CyclicFinite { .. } => 0,
        GroupSpec::Heisenberg3 => 4,
        GroupSpec::Unitriangular { n } => {
            let n = *n as u64;
            // The i-th superdiagonal contributes rank n - i in weight i.
            (1..n).map(|i| i * (n - i)).sum()
        }
        GroupSpec::ProductWithFinite { base, .. } => bass_guivarch_degree(base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    /// Brute-force oracle: all `|A|^h` ordered words, deduplicated.
    fn brute_power(a: &ElementSet, h: u32) -> ElementSet {
        let mut words: Vec<Element> = a.iter().cloned().collect();
        for _ in 1..h {
            let mut next = Vec::new();
            for w in &words {
                for x in a.iter() {
                    next.push(w.mul(x).unwrap());
                }
            }
            words = next;
        }
        ElementSet::from_elements(a.group(), words).unwrap()
    }

    /// Independent breadth-first ball oracle over words of length <= n.
    fn bfs_ball(s: &ElementSet, n: u32) -> ElementSet {
        use std::collections::VecDeque;
        let g = s.group().clone();
        let mut seen = vec![g.identity()];
        let mut dist = std::collections::HashMap::new();
        dist.insert(g.identity(), 0u32);
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            if d == n {
                continue;
            }
            for x in s.iter() {
                let v = u.mul(x).unwrap();
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), d + 1);
                    seen.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        ElementSet::from_elements(&g, seen).unwrap()
    }

    fn interval(group: &Group, lo: i64, hi: i64) -> ElementSet {
        ElementSet::from_coords(group, &(lo..=hi).map(|v| vec![v]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn power_matches_brute_force_oracle() {
        let z = Group::free_abelian(1).unwrap();
        let heis = Group::heisenberg();
        let sets = vec![
            ElementSet::from_coords(&z, &[vec![0], vec![1]]).unwrap(),
            ElementSet::from_coords(&z, &[vec![-1], vec![2]]).unwrap(),
            ElementSet::from_coords(&heis, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
            ElementSet::from_coords(&heis, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]])
                .unwrap(),
        ];
        for a in &sets {
            for h in 1..=5 {
                assert_eq!(
                    power(a, h, Budget::default()).unwrap(),
                    brute_power(a, h),
                    "power mismatch at h = {h}"
                );
            }
        }
    }

    #[test]
    fn binary_digits_power() {
        let z = Group::free_abelian(1).unwrap();
        let a = ElementSet::from_coords(&z, &[vec![0], vec![1]]).unwrap();
        assert_eq!(power(&a, 3, Budget::default()).unwrap(), interval(&z, 0, 3));
    }

    #[test]
    fn identity_singleton_powers() {
        let g = Group::heisenberg();
        let a = ElementSet::singleton_identity(&g);
        for h in [1, 2, 7] {
            assert_eq!(power(&a, h, Budget::default()).unwrap(), a);
        }
    }

    #[test]
    fn heisenberg_two_generator_square() {
        let g = Group::heisenberg();
        let a = ElementSet::from_coords(&g, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let sq = power(&a, 2, Budget::default()).unwrap();
        let expected = ElementSet::from_coords(
            &g,
            &[vec![2, 0, 0], vec![1, 1, 0], vec![1, 1, -1], vec![0, 2, 0]],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn ball_requires_symmetry_and_identity() {
        let z = Group::free_abelian(1).unwrap();
        let no_id = ElementSet::from_coords(&z, &[vec![-1], vec![1]]).unwrap();
        assert_eq!(ball(&no_id, 2, Budget::default()), Err(Error::MissingIdentity));
        let asym = ElementSet::from_coords(&z, &[vec![0], vec![1]]).unwrap();
        assert_eq!(ball(&asym, 2, Budget::default()), Err(Error::NotSymmetric));
    }

    #[test]
    fn ball_matches_bfs_oracle() {
        let z = Group::free_abelian(1).unwrap();
        let s1 = interval(&z, -1, 1);
        let heis = Group::heisenberg();
        let s2 = ElementSet::from_coords(
            &heis,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
            ],
        )
        .unwrap();
        for n in 0..=4 {
            assert_eq!(ball(&s1, n, Budget::default()).unwrap(), bfs_ball(&s1, n));
            assert_eq!(ball(&s2, n, Budget::default()).unwrap(), bfs_ball(&s2, n));
        }
        assert_eq!(ball(&s2, 2, Budget::default()).unwrap().len(), 17);
        assert_eq!(ball(&s1, 2, Budget::default()).unwrap(), interval(&z, -2, 2));
    }

    #[test]
    fn ball_zero_is_identity() {
        let z = Group::free_abelian(1).unwrap();
        let s = interval(&z, -1, 1);
        assert_eq!(
            ball(&s, 0, Budget::default()).unwrap(),
            ElementSet::singleton_identity(&z)
        );
    }

    #[test]
    fn ball_equals_power_and_stays_symmetric() {
        let heis = Group::heisenberg();
        let s = ElementSet::from_coords(
            &heis,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
            ],
        )
        .unwrap();
        for n in 1..=4 {
            let b = ball(&s, n, Budget::default()).unwrap();
            assert_eq!(b, power(&s, n, Budget::default()).unwrap());
            assert!(b.is_symmetric().unwrap());
        }
    }

    #[test]
    fn powers_increase_when_identity_present() {
        let z = Group::free_abelian(1).unwrap();
        let a = ElementSet::from_coords(&z, &[vec![0], vec![1], vec![3]]).unwrap();
        for h in 1..6 {
            let small = power(&a, h, Budget::default()).unwrap();
            let big = power(&a, h + 1, Budget::default()).unwrap();
            assert!(small.is_subset_of(&big));
        }
    }

    #[test]
    fn growth_sequences() {
        let z = Group::free_abelian(1).unwrap();
        let s = interval(&z, -1, 1);
        let records = growth_sequence(&s, 3, Budget::default()).unwrap();
        let sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
        assert_eq!(sizes, vec![1, 3, 5, 7]);

        let c5 = Group::cyclic(5).unwrap();
        let gens = ElementSet::from_coords(&c5, &[vec![0], vec![1], vec![4]]).unwrap();
        let records = growth_sequence(&gens, 10, Budget::default()).unwrap();
        assert_eq!(records.last().unwrap().size, 5);
        assert!(records.windows(2).all(|w| w[0].size <= w[1].size));

        let heis = Group::heisenberg();
        let s = ElementSet::from_coords(
            &heis,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
            ],
        )
        .unwrap();
        let records = growth_sequence(&s, 2, Budget::default()).unwrap();
        let sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
        assert_eq!(sizes, vec![1, 5, 17]);
    }

    #[test]
    fn degree_fit_on_exact_line_growth() {
        let records: Vec<GrowthRecord> = (0..=200)
            .map(|n| GrowthRecord {
                n,
                size: (2 * n + 1) as usize,
            })
            .collect();
        let est = estimate_degree(&records, (50, 200)).unwrap();
        assert!((est.d_hat - 1.0).abs() <= 0.1, "d_hat = {}", est.d_hat);
        assert!(est.c1_hat <= est.c2_hat);
    }

    #[test]
    fn degree_fit_on_saturated_sequence_is_flat() {
        let records: Vec<GrowthRecord> =
            (0..=40).map(|n| GrowthRecord { n, size: 6 }).collect();
        let est = estimate_degree(&records, (10, 40)).unwrap();
        assert!(est.d_hat.abs() <= 0.05);
    }

    #[test]
    fn degree_fit_window_too_small() {
        let records = vec![
            GrowthRecord { n: 0, size: 1 },
            GrowthRecord { n: 1, size: 3 },
            GrowthRecord { n: 2, size: 5 },
            GrowthRecord { n: 3, size: 7 },
        ];
        assert!(estimate_degree(&records, (2, 3)).is_err());
    }

    #[test]
    fn formula_degrees() {
        assert_eq!(bass_guivarch_degree(&GroupSpec::FreeAbelian { rank: 1 }), 1);
        assert_eq!(bass_guivarch_degree(&GroupSpec::FreeAbelian { rank: 2 }), 2);
        assert_eq!(bass_guivarch_degree(&GroupSpec::Heisenberg3), 4);
        assert_eq!(bass_guivarch_degree(&GroupSpec::Unitriangular { n: 3 }), 4);
        assert_eq!(bass_guivarch_degree(&GroupSpec::Unitriangular { n: 4 }), 10);
        assert_eq!(bass_guivarch_degree(&GroupSpec::CyclicFinite { modulus: 9 }), 0);
        assert_eq!(
            bass_guivarch_degree(&GroupSpec::ProductWithFinite {
                base: Box::new(GroupSpec::Heisenberg3),
                table: vec![vec![0, 1], vec![1, 0]],
            }),
            4
        );
    }

    #[test]
    fn budget_exhaustion_reports_error() {
        let z = Group::free_abelian(1).unwrap();
        let s = interval(&z, -1, 1);
        assert!(matches!(
            ball(&s, 100, Budget::new(50)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
