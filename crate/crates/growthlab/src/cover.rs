//! Constructive translate covers: the Ruzsa maximal-disjoint-translates
//! construction, greedy and exact minimum covers, and the ball-covering
//! pipeline built on top of them.
//!
//! Every cover returned by this module has been verified by exhaustive
//! membership before it reaches the caller; scan orders and tie-breaks are
//! lexicographic on canonical coordinates so the chosen translate sets are
//! reproducible bit for bit.

use std::collections::HashSet;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Coords, Element};
use crate::product::{ball, check_ball_preconditions};
use crate::set::ElementSet;
use crate::Budget;

/// A translate set `X` together with the verification evidence for the
/// inclusion `E ⊆ X · multiplier`.
#[derive(Debug, Clone)]
pub struct CoverResult {
    /// The translate set `X`.
    pub translates: ElementSet,
    /// The right-hand set actually used for the verified inclusion
    /// (`F`, `F F⁻¹`, or a ball, depending on the route).
    pub multiplier: ElementSet,
    /// True only when the exhaustive solver proved `|X|` minimum.
    pub exact: bool,
    /// The `|EF| / |F|` guarantee when produced by the Ruzsa route.
    pub bound: Option<Ratio<i64>>,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.translates.len()
    }
}

/// Caps deciding when the exhaustive minimum-cover search is attempted.
///
/// `max_nodes` bounds the branch-and-bound tree deterministically; if the
/// search does not complete within it, the best cover found so far is
/// returned unmarked (`exact = false`).
#[derive(Debug, Clone, Copy)]
pub struct ExactLimits {
    pub max_candidates: usize,
    pub max_universe: usize,
    pub max_nodes: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_candidates: 20_000,
            max_universe: 50_000,
            max_nodes: 5_000_000,
        }
    }
}

/// Decides `E ⊆ X · F` by exhaustive membership: for every `e ∈ E` some
/// `x ∈ X` must satisfy `x⁻¹ e ∈ F`.
pub fn verify_cover(e: &ElementSet, x: &ElementSet, f: &ElementSet) -> Result<bool> {
    if e.group() != x.group() || e.group() != f.group() {
        return Err(Error::SpecMismatch);
    }
    let x_inverses: Vec<Element> = x
        .iter()
        .map(|t| t.inv())
        .collect::<Result<Vec<_>>>()?;
    e.members()
        .par_iter()
        .map(|g| {
            for xi in &x_inverses {
                if f.contains(&xi.mul(g)?) {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .try_reduce(|| true, |a, b| Ok(a && b))
}

/// Ruzsa covering: greedily selects a maximal family of pairwise-disjoint
/// left translates `{x F : x ∈ E}`, scanning `E` in lexicographic order.
///
/// The returned `X ⊆ E` satisfies `|X| ≤ |EF| / |F|` and the verified
/// inclusion `E ⊆ X F F⁻¹`.
pub fn ruzsa_cover(e: &ElementSet, f: &ElementSet, budget: Budget) -> Result<CoverResult> {
    if e.is_empty() || f.is_empty() {
        return Err(Error::EmptySet);
    }
    if e.group() != f.group() {
        return Err(Error::SpecMismatch);
    }
    let ef = e.minkowski(f, budget)?;
    let bound = Ratio::new(ef.len() as i64, f.len() as i64);

    let mut chosen: Vec<Element> = Vec::new();
    let mut covered: HashSet<Coords> = HashSet::new();
    for cand in e.iter() {
        let translate: Vec<Element> = f
            .iter()
            .map(|t| cand.mul(t))
            .collect::<Result<Vec<_>>>()?;
        if translate
            .iter()
            .all(|p| !covered.contains(p.coords()))
        {
            for p in translate {
                covered.insert(Coords::from_slice(p.coords()));
            }
            chosen.push(cand.clone());
        }
    }
    let translates = ElementSet::from_elements(e.group(), chosen)?;

    // |X| * |F| <= |EF| because the chosen translates are disjoint inside EF.
    assert!(
        translates.len() as i64 * f.len() as i64 <= ef.len() as i64,
        "ruzsa bound violated: |X| = {}, |EF|/|F| = {}",
        translates.len(),
        bound
    );

    let multiplier = f.minkowski(&f.inverse_set()?, budget)?;
    if !verify_cover(e, &translates, &multiplier)? {
        return Err(Error::VerificationFailed(
            "ruzsa cover failed exhaustive membership".into(),
        ));
    }
    Ok(CoverResult {
        translates,
        multiplier,
        exact: false,
        bound: Some(bound),
    })
}

/// Minimum translate cover `E ⊆ X F` over the complete candidate space
/// `E F⁻¹`.
///
/// Small instances (within `limits`) are solved exactly by branch-and-bound
/// seeded with the greedy solution; larger ones return the greedy cover
/// (largest uncovered gain, lexicographic tie-breaks) with `exact = false`.
pub fn min_cover(
    e: &ElementSet,
    f: &ElementSet,
    limits: ExactLimits,
    budget: Budget,
) -> Result<CoverResult> {
    if e.is_empty() || f.is_empty() {
        return Err(Error::EmptySet);
    }
    if e.group() != f.group() {
        return Err(Error::SpecMismatch);
    }
    let candidates = e.minkowski(&f.inverse_set()?, budget)?;

    // coverage[c] = indices of elements of E covered by translate candidate c.
    let mut coverage: Vec<Vec<u32>> = vec![Vec::new(); candidates.len()];
    {
        let mut cand_index: std::collections::HashMap<Coords, u32> =
            std::collections::HashMap::with_capacity(candidates.len());
        for (i, c) in candidates.iter().enumerate() {
            cand_index.insert(Coords::from_slice(c.coords()), i as u32);
        }
        let f_inverses: Vec<Element> = f
            .iter()
            .map(|t| t.inv())
            .collect::<Result<Vec<_>>>()?;
        for (ei, g) in e.iter().enumerate() {
            for fi in &f_inverses {
                let x = g.mul(fi)?;
                if let Some(&ci) = cand_index.get(x.coords()) {
                    coverage[ci as usize].push(ei as u32);
                }
            }
        }
        for cov in &mut coverage {
            cov.sort_unstable();
            cov.dedup();
        }
    }

    let universe = e.len();
    let greedy = greedy_cover(universe, &coverage);

    let mut solution = greedy.clone();
    let mut exact = false;
    if candidates.len() <= limits.max_candidates && universe <= limits.max_universe {
        let mut solver = BranchBound::new(universe, &coverage, greedy, limits.max_nodes);
        solver.run();
        solution = solver.best;
        exact = !solver.aborted;
    }
    solution.sort_unstable();

    let translates = ElementSet::from_elements(
        e.group(),
        solution
            .iter()
            .map(|&c| candidates.members()[c as usize].clone()),
    )?;
    if !verify_cover(e, &translates, f)? {
        return Err(Error::VerificationFailed(
            "minimum cover failed exhaustive membership".into(),
        ));
    }
    // Counting bound: |X| >= ceil(|E| / |F|) always.
    assert!(
        translates.len() >= universe.div_ceil(f.len()),
        "cover beats the counting bound"
    );
    Ok(CoverResult {
        translates,
        multiplier: f.clone(),
        exact,
        bound: None,
    })
}

/// Greedy set cover on index sets: pick the candidate covering the most
/// uncovered elements, breaking ties by candidate index (= lexicographic
/// order of the translate coordinates).
fn greedy_cover(universe: usize, coverage: &[Vec<u32>]) -> Vec<u32> {
    let mut covered = vec![false; universe];
    let mut remaining = universe;
    let mut chosen: Vec<u32> = Vec::new();
    while remaining > 0 {
        let mut best_gain = 0usize;
        let mut best_cand = usize::MAX;
        for (ci, cov) in coverage.iter().enumerate() {
            let gain = cov.iter().filter(|&&ei| !covered[ei as usize]).count();
            if gain > best_gain {
                best_gain = gain;
                best_cand = ci;
            }
        }
        assert!(best_cand != usize::MAX, "uncoverable element in greedy cover");
        for &ei in &coverage[best_cand] {
            if !covered[ei as usize] {
                covered[ei as usize] = true;
                remaining -= 1;
            }
        }
        chosen.push(best_cand as u32);
    }
    chosen.sort_unstable();
    chosen
}

/// Fixed-width bitset over the element universe.
#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn full(len: usize) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if len % 64 != 0 {
            *words.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
        }
        BitSet { words }
    }

    fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: u32) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn overlap(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn subtract(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn first_set(&self) -> Option<u32> {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(wi as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    fn get(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }
}

enum SearchOutcome {
    Found,
    Exhausted,
    Aborted,
}

/// Exhaustive minimum set cover by iterative-deepening branch-and-bound with
/// the greedy solution as the incumbent.
///
/// Elements with a single covering candidate force that candidate up front.
/// Targets are tried from the counting lower bound upward: a depth-bounded
/// search either finds a cover of the target size (which is then provably
/// minimum, every smaller target having been exhausted) or refutes it.
/// Branching picks an uncovered element with the fewest covering candidates;
/// children are explored in decreasing-gain order with index (lexicographic)
/// tie-breaks, so the search is deterministic.
struct BranchBound {
    cand_bits: Vec<BitSet>,
    covers_elem: Vec<Vec<u32>>,
    /// Candidate indices sorted by static coverage size, largest first;
    /// lets the per-node max-gain scan stop early.
    by_static_size: Vec<u32>,
    static_size: Vec<usize>,
    best: Vec<u32>,
    current: Vec<u32>,
    aborted: bool,
    nodes: u64,
    max_nodes: u64,
    universe: usize,
}

impl BranchBound {
    fn new(universe: usize, coverage: &[Vec<u32>], incumbent: Vec<u32>, max_nodes: u64) -> Self {
        let mut cand_bits = Vec::with_capacity(coverage.len());
        let mut covers_elem: Vec<Vec<u32>> = vec![Vec::new(); universe];
        let mut static_size = Vec::with_capacity(coverage.len());
        for (ci, cov) in coverage.iter().enumerate() {
            let mut bits = BitSet::empty(universe);
            for &ei in cov {
                bits.set(ei);
                covers_elem[ei as usize].push(ci as u32);
            }
            cand_bits.push(bits);
            static_size.push(cov.len());
        }
        let mut by_static_size: Vec<u32> = (0..coverage.len() as u32).collect();
        by_static_size.sort_unstable_by(|&a, &b| {
            static_size[b as usize]
                .cmp(&static_size[a as usize])
                .then(a.cmp(&b))
        });
        BranchBound {
            cand_bits,
            covers_elem,
            by_static_size,
            static_size,
            best: incumbent,
            current: Vec::new(),
            aborted: false,
            nodes: 0,
            max_nodes,
            universe,
        }
    }

    fn run(&mut self) {
        let mut uncovered = BitSet::full(self.universe);
        // Elements with exactly one coverer force it in every solution.
        let mut forced: Vec<u32> = Vec::new();
        for ei in 0..self.universe as u32 {
            if uncovered.get(ei) && self.covers_elem[ei as usize].len() == 1 {
                let ci = self.covers_elem[ei as usize][0];
                if !forced.contains(&ci) {
                    forced.push(ci);
                    uncovered.subtract(&self.cand_bits[ci as usize]);
                }
            }
        }
        let root_lb = forced.len()
            + self
                .ceil_bound(&uncovered)
                .max(self.disjoint_bound(&uncovered));
        for target in root_lb..self.best.len() {
            self.current = forced.clone();
            match self.dfs(&uncovered, target) {
                SearchOutcome::Found => {
                    self.best = self.current.clone();
                    return;
                }
                SearchOutcome::Exhausted => continue,
                SearchOutcome::Aborted => {
                    self.aborted = true;
                    return;
                }
            }
        }
        // All smaller targets refuted: the incumbent is minimum.
    }

    /// `ceil(|uncovered| / g_max)` where `g_max` is the best possible gain of
    /// any single candidate against the uncovered set.
    fn ceil_bound(&self, uncovered: &BitSet) -> usize {
        let remaining = uncovered.count();
        if remaining == 0 {
            return 0;
        }
        let mut g_max = 0usize;
        for &ci in &self.by_static_size {
            if self.static_size[ci as usize] <= g_max {
                break;
            }
            g_max = g_max.max(self.cand_bits[ci as usize].overlap(uncovered));
        }
        if g_max == 0 {
            usize::MAX
        } else {
            remaining.div_ceil(g_max)
        }
    }

    /// Disjoint-representatives lower bound: greedily collect uncovered
    /// elements such that no single candidate covers two of them.  Any cover
    /// needs one candidate per collected element.
    fn disjoint_bound(&self, uncovered: &BitSet) -> usize {
        let mut open = uncovered.clone();
        let mut lb = 0;
        while let Some(ei) = open.first_set() {
            lb += 1;
            for &ci in &self.covers_elem[ei as usize] {
                open.subtract(&self.cand_bits[ci as usize]);
            }
        }
        lb
    }

    /// Searches for any cover of size `<= target` extending `self.current`.
    fn dfs(&mut self, uncovered: &BitSet, target: usize) -> SearchOutcome {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return SearchOutcome::Aborted;
        }
        if uncovered.count() == 0 {
            return SearchOutcome::Found;
        }
        let slots_left = target - self.current.len();
        if slots_left == 0 {
            return SearchOutcome::Exhausted;
        }
        let ceil_lb = self.ceil_bound(uncovered);
        if ceil_lb > slots_left {
            return SearchOutcome::Exhausted;
        }
        if ceil_lb > 1 && self.disjoint_bound(uncovered) > slots_left {
            return SearchOutcome::Exhausted;
        }
        // Branch on the uncovered element with the fewest covering candidates.
        let mut branch_elem = uncovered.first_set().expect("non-empty uncovered set");
        let mut fewest = usize::MAX;
        for ei in 0..self.universe as u32 {
            if uncovered.get(ei) {
                let n = self.covers_elem[ei as usize].len();
                if n < fewest {
                    fewest = n;
                    branch_elem = ei;
                }
            }
        }
        let mut options: Vec<(usize, u32)> = self.covers_elem[branch_elem as usize]
            .iter()
            .map(|&ci| (self.cand_bits[ci as usize].overlap(uncovered), ci))
            .collect();
        options.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, ci) in options {
            let mut next = uncovered.clone();
            next.subtract(&self.cand_bits[ci as usize]);
            self.current.push(ci);
            match self.dfs(&next, target) {
                SearchOutcome::Found => return SearchOutcome::Found,
                SearchOutcome::Aborted => return SearchOutcome::Aborted,
                SearchOutcome::Exhausted => {
                    self.current.pop();
                }
            }
        }
        SearchOutcome::Exhausted
    }
}

/// Covers a large ball by translates of a small one:
/// `B_S(⌊R₀h⌋) ⊆ Y · B_S(⌊θh⌋)` via the Ruzsa construction applied to
/// `E = B_S(R_h)` and `F = B_S(q_h)` with `q_h = ⌊M_h / 2⌋`.
pub fn polynomial_growth_cover(
    s: &ElementSet,
    r0: Ratio<i64>,
    theta: Ratio<i64>,
    h: u32,
    budget: Budget,
) -> Result<CoverResult> {
    check_ball_preconditions(s)?;
    if r0 < Ratio::new(1, 1) {
        return Err(Error::precondition("R0 must be >= 1"));
    }
    if theta <= Ratio::new(0, 1) || theta > Ratio::new(1, 1) {
        return Err(Error::precondition("theta must lie in (0, 1]"));
    }
    let r_h = floor_ratio_times(r0, h as i64)?;
    let m_h = floor_ratio_times(theta, h as i64)?;
    let q_h = m_h / 2;
    if q_h < 1 {
        return Err(Error::precondition(
            "h too small: floor(theta * h / 2) must be >= 1",
        ));
    }
    let e = ball(s, r_h as u32, budget)?;
    let f = ball(s, q_h as u32, budget)?;
    let ruzsa = ruzsa_cover(&e, &f, budget)?;
    let multiplier = ball(s, m_h as u32, budget)?;
    if !verify_cover(&e, &ruzsa.translates, &multiplier)? {
        return Err(Error::VerificationFailed(
            "ball cover failed exhaustive membership".into(),
        ));
    }
    Ok(CoverResult {
        translates: ruzsa.translates,
        multiplier,
        exact: false,
        bound: ruzsa.bound,
    })
}

/// Exact `⌊ratio · k⌋` without leaving integer arithmetic.
pub fn floor_ratio_times(ratio: Ratio<i64>, k: i64) -> Result<i64> {
    let num = ratio
        .numer()
        .checked_mul(k)
        .ok_or(Error::Overflow)?;
    Ok(num.div_euclid(*ratio.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn interval(group: &Group, lo: i64, hi: i64) -> ElementSet {
        ElementSet::from_coords(group, &(lo..=hi).map(|v| vec![v]).collect::<Vec<_>>()).unwrap()
    }

    fn heis_standard() -> (Group, ElementSet) {
        let g = Group::heisenberg();
        let s = ElementSet::from_coords(
            &g,
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, -1, 0],
            ],
        )
        .unwrap();
        (g, s)
    }

    #[test]
    fn verify_cover_examples() {
        let z = Group::free_abelian(1).unwrap();
        let e = interval(&z, 0, 9);
        let f = interval(&z, 0, 4);
        let x = ElementSet::from_coords(&z, &[vec![0], vec![5]]).unwrap();
        assert!(verify_cover(&e, &x, &f).unwrap());
        let x0 = ElementSet::from_coords(&z, &[vec![0]]).unwrap();
        assert!(!verify_cover(&e, &x0, &f).unwrap());
        let id = ElementSet::singleton_identity(&z);
        assert!(verify_cover(&e, &id, &e).unwrap());
    }

    #[test]
    fn ruzsa_interval_example() {
        let z = Group::free_abelian(1).unwrap();
        let e = interval(&z, 0, 9);
        let f = interval(&z, 0, 4);
        let res = ruzsa_cover(&e, &f, Budget::default()).unwrap();
        assert_eq!(res.translates.coord_rows(), vec![vec![0], vec![5]]);
        assert_eq!(res.bound.unwrap(), Ratio::new(14, 5));
        assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());
    }

    #[test]
    fn ruzsa_identity_singletons() {
        let z = Group::free_abelian(1).unwrap();
        let id = ElementSet::singleton_identity(&z);
        let res = ruzsa_cover(&id, &id, Budget::default()).unwrap();
        assert_eq!(res.translates.coord_rows(), vec![vec![0]]);
    }

    #[test]
    fn ruzsa_translates_are_disjoint() {
        let (_, s) = heis_standard();
        let e = ball(&s, 4, Budget::default()).unwrap();
        let f = ball(&s, 1, Budget::default()).unwrap();
        let res = ruzsa_cover(&e, &f, Budget::default()).unwrap();
        // Recheck pairwise disjointness of the translates xF.
        let translate_sets: Vec<ElementSet> = res
            .translates
            .iter()
            .map(|x| {
                ElementSet::from_elements(
                    e.group(),
                    f.iter().map(|t| x.mul(t).unwrap()),
                )
                .unwrap()
            })
            .collect();
        for i in 0..translate_sets.len() {
            for j in (i + 1)..translate_sets.len() {
                for p in translate_sets[i].iter() {
                    assert!(!translate_sets[j].contains(p), "translates overlap");
                }
            }
        }
        assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());
    }

    #[test]
    fn min_cover_interval_exact() {
        let z = Group::free_abelian(1).unwrap();
        let e = interval(&z, 0, 10);
        let f = interval(&z, 0, 5);
        let res = min_cover(&e, &f, ExactLimits::default(), Budget::default()).unwrap();
        assert_eq!(res.size(), 2);
        assert!(res.exact);
    }

    #[test]
    fn min_cover_self_is_identity() {
        let z = Group::free_abelian(1).unwrap();
        let e = interval(&z, -3, 3);
        let res = min_cover(&e, &e, ExactLimits::default(), Budget::default()).unwrap();
        assert_eq!(res.size(), 1);
        assert!(res.exact);
        assert_eq!(res.translates.coord_rows(), vec![vec![0]]);
    }

    #[test]
    fn min_cover_cyclic_whole_group() {
        let c5 = Group::cyclic(5).unwrap();
        let e = ElementSet::from_coords(
            &c5,
            &[vec![0], vec![1], vec![2], vec![3], vec![4]],
        )
        .unwrap();
        let f = ElementSet::from_coords(&c5, &[vec![0], vec![1]]).unwrap();
        let res = min_cover(&e, &f, ExactLimits::default(), Budget::default()).unwrap();
        assert_eq!(res.size(), 3);
        assert!(res.exact);
    }

    #[test]
    fn exact_never_beaten_by_greedy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z2 = Group::free_abelian(2).unwrap();
        for _ in 0..30 {
            let e = ElementSet::from_elements(
                &z2,
                (0..rng.gen_range(5..40)).map(|_| z2.sample(&mut rng, 4)),
            )
            .unwrap();
            let f = ElementSet::from_elements(
                &z2,
                (0..rng.gen_range(2..10)).map(|_| z2.sample(&mut rng, 2)),
            )
            .unwrap();
            let exact = min_cover(&e, &f, ExactLimits::default(), Budget::default()).unwrap();
            let greedy_only = min_cover(
                &e,
                &f,
                ExactLimits {
                    max_candidates: 0,
                    max_universe: 0,
                    max_nodes: 0,
                },
                Budget::default(),
            )
            .unwrap();
            assert!(exact.exact);
            assert!(!greedy_only.exact);
            assert!(greedy_only.size() >= exact.size());
            assert!(exact.size() >= e.len().div_ceil(f.len()));
        }
    }

    #[test]
    fn polynomial_growth_cover_interval() {
        let z = Group::free_abelian(1).unwrap();
        let s = interval(&z, -1, 1);
        // R0 = 1: E = B(10), F = B(5), EF = B(15), bound = 31/11 < 3.
        let res = polynomial_growth_cover(
            &s,
            Ratio::new(1, 1),
            Ratio::new(1, 1),
            10,
            Budget::default(),
        )
        .unwrap();
        assert_eq!(res.bound.unwrap(), Ratio::new(31, 11));
        assert!(res.size() <= 3, "|Y| = {}", res.size());
        let e = ball(&s, 10, Budget::default()).unwrap();
        assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());

        // R0 = 2: E = B(20), F = B(5), EF = B(25), bound = 51/11 < 5.
        let res = polynomial_growth_cover(
            &s,
            Ratio::new(2, 1),
            Ratio::new(1, 1),
            10,
            Budget::default(),
        )
        .unwrap();
        assert!(res.size() as i64 <= res.bound.unwrap().ceil().to_integer());
        let e = ball(&s, 20, Budget::default()).unwrap();
        assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());
    }

    #[test]
    fn polynomial_growth_cover_heisenberg() {
        let (_, s) = heis_standard();
        let res = polynomial_growth_cover(
            &s,
            Ratio::new(2, 1),
            Ratio::new(1, 1),
            4,
            Budget::default(),
        )
        .unwrap();
        let e = ball(&s, 8, Budget::default()).unwrap();
        assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());
        assert!(res.bound.is_some());
    }

    #[test]
    fn polynomial_growth_cover_h_too_small() {
        let z = Group::free_abelian(1).unwrap();
        let s = interval(&z, -1, 1);
        let err = polynomial_growth_cover(
            &s,
            Ratio::new(1, 1),
            Ratio::new(1, 2),
            2,
            Budget::default(),
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn ruzsa_random_suite_small() {
        // Smaller cousin of the acceptance-scale suite: bound, disjointness,
        // and the FF^{-1} covering on random pairs.
        let mut rng = ChaCha8Rng::seed_from_u64(271);
        let z2 = Group::free_abelian(2).unwrap();
        for _ in 0..40 {
            let e = ElementSet::from_elements(
                &z2,
                (0..rng.gen_range(1..60)).map(|_| z2.sample(&mut rng, 5)),
            )
            .unwrap();
            let f = ElementSet::from_elements(
                &z2,
                (0..rng.gen_range(1..30)).map(|_| z2.sample(&mut rng, 3)),
            )
            .unwrap();
            let res = ruzsa_cover(&e, &f, Budget::default()).unwrap();
            let bound = res.bound.unwrap();
            assert!(Ratio::new(res.size() as i64, 1) <= bound);
            assert!(verify_cover(&e, &res.translates, &res.multiplier).unwrap());
        }
    }
}
