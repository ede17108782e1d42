//! Exact group arithmetic with canonical element coordinates.
//!
//! Every supported backend admits a global integer coordinate system in which
//! equality is coordinate equality, so no rewriting or collection is needed.
//! All arithmetic is checked: a product whose coordinates leave `i64` range
//! fails with [`Error::Overflow`] rather than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Canonical coordinate vector of a group element.
///
/// Inline capacity 6 covers the Heisenberg group (3), `Unitriangular { n: 4 }`
/// (6) and free-abelian ranks up to 6 without heap traffic.
pub type Coords = SmallVec<[i64; 6]>;

/// Declarative description of a concrete group backend.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Free abelian group of the given rank; coordinates add componentwise.
    FreeAbelian { rank: usize },
    /// Cyclic group of order `modulus`; the single coordinate lives in `[0, modulus)`.
    CyclicFinite { modulus: i64 },
    /// Integer triples `(a, b, c)` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'-a'b)`.
    Heisenberg3,
    /// `n x n` upper-triangular integer matrices with unit diagonal;
    /// coordinates are the strictly-upper entries in row-major order.
    Unitriangular { n: usize },
    /// Direct product of a base group with an explicitly tabulated finite group.
    /// Coordinates are the base coordinates followed by the finite index.
    ProductWithFinite {
        base: Box<GroupSpec>,
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    /// Number of coordinates of a canonical element.
    pub fn coord_len(&self) -> usize {
        match self {
            GroupSpec::FreeAbelian { rank } => *rank,
            GroupSpec::CyclicFinite { .. } => 1,
            GroupSpec::Heisenberg3 => 3,
            GroupSpec::Unitriangular { n } => n * (n - 1) / 2,
            GroupSpec::ProductWithFinite { base, .. } => base.coord_len() + 1,
        }
    }

    /// Validates the structural invariants of the spec.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::FreeAbelian { rank } => {
                if *rank == 0 {
                    return Err(Error::InvalidSpec("free abelian rank must be >= 1".into()));
                }
            }
            GroupSpec::CyclicFinite { modulus } => {
                if *modulus < 1 {
                    return Err(Error::InvalidSpec("cyclic modulus must be >= 1".into()));
                }
            }
            GroupSpec::Heisenberg3 => {}
            GroupSpec::Unitriangular { n } => {
                if *n < 2 {
                    return Err(Error::InvalidSpec("unitriangular size must be >= 2".into()));
                }
            }
            GroupSpec::ProductWithFinite { base, table } => {
                base.validate()?;
                FiniteTable::from_table(table.clone())?;
            }
        }
        Ok(())
    }
}

/// A finite group given by its multiplication table, with the identity and
/// inverse indices resolved during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteTable {
    /// Builds and fully validates a group table: squareness, closure,
    /// a two-sided identity, associativity, and two-sided inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let k = table.len();
        if k == 0 {
            return Err(Error::InvalidSpec("finite table must be non-empty".into()));
        }
        for row in &table {
            if row.len() != k {
                return Err(Error::InvalidSpec("finite table must be square".into()));
            }
            if row.iter().any(|&v| v >= k) {
                return Err(Error::InvalidSpec("finite table entry out of range".into()));
            }
        }
        let identity = (0..k)
            .find(|&e| (0..k).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or_else(|| Error::InvalidSpec("finite table has no identity".into()))?;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidSpec(format!(
                            "finite table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0usize; k];
        for a in 0..k {
            inverses[a] = (0..k)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    Error::InvalidSpec(format!("finite table element {a} has no inverse"))
                })?;
        }
        Ok(FiniteTable {
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

#[derive(Debug)]
struct GroupInner {
    spec: GroupSpec,
    /// Resolved table for the finite factor of `ProductWithFinite`.
    finite: Option<FiniteTable>,
    /// Base factor of `ProductWithFinite`, validated once at construction.
    base: Option<Group>,
    /// Matrix size for `Unitriangular`.
    ut_n: usize,
}

/// A validated group backend.  Cheap to clone; all element operations are
/// pure functions with no interior mutation, so groups and elements can be
/// shared freely across threads.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({:?})", self.inner.spec)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Group {}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn checked_neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow)
}

impl Group {
    /// Validates the spec and builds the backend.
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let (finite, base) = match &spec {
            GroupSpec::ProductWithFinite { base, table } => (
                Some(FiniteTable::from_table(table.clone())?),
                Some(Group::new((**base).clone())?),
            ),
            _ => (None, None),
        };
        let ut_n = match &spec {
            GroupSpec::Unitriangular { n } => *n,
            _ => 0,
        };
        Ok(Group {
            inner: Arc::new(GroupInner {
                spec,
                finite,
                base,
                ut_n,
            }),
        })
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        Group::new(GroupSpec::FreeAbelian { rank })
    }

    pub fn cyclic(modulus: i64) -> Result<Self> {
        Group::new(GroupSpec::CyclicFinite { modulus })
    }

    pub fn heisenberg() -> Self {
        Group::new(GroupSpec::Heisenberg3).expect("heisenberg spec is always valid")
    }

    pub fn unitriangular(n: usize) -> Result<Self> {
        Group::new(GroupSpec::Unitriangular { n })
    }

    pub fn product_with_finite(base: GroupSpec, table: Vec<Vec<usize>>) -> Result<Self> {
        Group::new(GroupSpec::ProductWithFinite {
            base: Box::new(base),
            table,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    pub fn coord_len(&self) -> usize {
        self.inner.spec.coord_len()
    }

    /// True if the group is finite (cyclic, or a product of a finite base with
    /// a finite table).
    pub fn is_finite(&self) -> bool {
        match self.spec() {
            GroupSpec::CyclicFinite { .. } => true,
            GroupSpec::FreeAbelian { .. }
            | GroupSpec::Heisenberg3
            | GroupSpec::Unitriangular { .. } => false,
            GroupSpec::ProductWithFinite { .. } => self.inner.base.as_ref().unwrap().is_finite(),
        }
    }

    /// The neutral element in canonical form.
    pub fn identity(&self) -> Element {
        let coords = match self.spec() {
            GroupSpec::ProductWithFinite { base, .. } => {
                let mut c: Coords = SmallVec::from_elem(0, base.coord_len());
                c.push(self.inner.finite.as_ref().unwrap().identity() as i64);
                c
            }
            spec => SmallVec::from_elem(0, spec.coord_len()),
        };
        Element {
            group: self.clone(),
            coords,
        }
    }

    /// Builds an element from raw coordinates, canonicalizing where needed
    /// (cyclic entries are reduced into `[0, modulus)`).
    pub fn element(&self, raw: &[i64]) -> Result<Element> {
        if raw.len() != self.coord_len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.coord_len(),
                raw.len()
            )));
        }
        let coords = self.canonicalize(raw)?;
        Ok(Element {
            group: self.clone(),
            coords,
        })
    }

    fn canonicalize(&self, raw: &[i64]) -> Result<Coords> {
        match self.spec() {
            GroupSpec::CyclicFinite { modulus } => {
                Ok(SmallVec::from_slice(&[raw[0].rem_euclid(*modulus)]))
            }
            GroupSpec::ProductWithFinite { .. } => {
                let base_group = self.inner.base.as_ref().unwrap();
                let mut coords = base_group.canonicalize(&raw[..raw.len() - 1])?;
                let idx = raw[raw.len() - 1];
                let order = self.inner.finite.as_ref().unwrap().order() as i64;
                if idx < 0 || idx >= order {
                    return Err(Error::InvalidElement(format!(
                        "finite factor index {idx} out of range [0, {order})"
                    )));
                }
                coords.push(idx);
                Ok(coords)
            }
            _ => Ok(SmallVec::from_slice(raw)),
        }
    }

    /// Canonical product of two elements of this group.
    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element> {
        if g.group != *self || h.group != *self {
            return Err(Error::SpecMismatch);
        }
        let coords = self.mul_coords(&g.coords, &h.coords)?;
        Ok(Element {
            group: self.clone(),
            coords,
        })
    }

    fn mul_coords(&self, a: &[i64], b: &[i64]) -> Result<Coords> {
        match self.spec() {
            GroupSpec::FreeAbelian { .. } => a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| checked_add(x, y))
                .collect(),
            GroupSpec::CyclicFinite { modulus } => {
                Ok(SmallVec::from_slice(&[checked_add(a[0], b[0])?
                    .rem_euclid(*modulus)]))
            }
            GroupSpec::Heisenberg3 => {
                let (a1, b1, c1) = (a[0], a[1], a[2]);
                let (a2, b2, c2) = (b[0], b[1], b[2]);
                let third = checked_sub(checked_add(c1, c2)?, checked_mul(a2, b1)?)?;
                Ok(SmallVec::from_slice(&[
                    checked_add(a1, a2)?,
                    checked_add(b1, b2)?,
                    third,
                ]))
            }
            GroupSpec::Unitriangular { .. } => {
                let n = self.inner.ut_n;
                let ma = unpack_ut(a, n);
                let mb = unpack_ut(b, n);
                let mut mc = vec![vec![0i64; n]; n];
                for i in 0..n {
                    mc[i][i] = 1;
                    for j in (i + 1)..n {
                        let mut acc = 0i64;
                        for k in i..=j {
                            acc = checked_add(acc, checked_mul(ma[i][k], mb[k][j])?)?;
                        }
                        mc[i][j] = acc;
                    }
                }
                Ok(pack_ut(&mc, n))
            }
            GroupSpec::ProductWithFinite { .. } => {
                let base_group = self.inner.base.as_ref().unwrap();
                let split = a.len() - 1;
                let mut coords = base_group.mul_coords(&a[..split], &b[..split])?;
                let ft = self.inner.finite.as_ref().unwrap();
                coords.push(ft.mul(a[split] as usize, b[split] as usize) as i64);
                Ok(coords)
            }
        }
    }

    /// Two-sided inverse.
    pub fn inv(&self, g: &Element) -> Result<Element> {
        if g.group != *self {
            return Err(Error::SpecMismatch);
        }
        let coords = self.inv_coords(&g.coords)?;
        Ok(Element {
            group: self.clone(),
            coords,
        })
    }

    fn inv_coords(&self, a: &[i64]) -> Result<Coords> {
        match self.spec() {
            GroupSpec::FreeAbelian { .. } => a.iter().map(|&x| checked_neg(x)).collect(),
            GroupSpec::CyclicFinite { modulus } => {
                Ok(SmallVec::from_slice(&[(-a[0]).rem_euclid(*modulus)]))
            }
            GroupSpec::Heisenberg3 => {
                // (a,b,c)(-a,-b,c') = e forces c' = -c - ab.
                let third = checked_sub(checked_neg(a[2])?, checked_mul(a[0], a[1])?)?;
                Ok(SmallVec::from_slice(&[
                    checked_neg(a[0])?,
                    checked_neg(a[1])?,
                    third,
                ]))
            }
            GroupSpec::Unitriangular { .. } => {
                let n = self.inner.ut_n;
                let m = unpack_ut(a, n);
                // Back-substitution on U X = I; pivots are all 1 so X stays integral.
                let mut x = vec![vec![0i64; n]; n];
                for i in 0..n {
                    x[i][i] = 1;
                }
                for j in 0..n {
                    for i in (0..j).rev() {
                        let mut acc = 0i64;
                        for k in (i + 1)..=j {
                            acc = checked_add(acc, checked_mul(m[i][k], x[k][j])?)?;
                        }
                        x[i][j] = checked_neg(acc)?;
                    }
                }
                Ok(pack_ut(&x, n))
            }
            GroupSpec::ProductWithFinite { .. } => {
                let base_group = self.inner.base.as_ref().unwrap();
                let split = a.len() - 1;
                let mut coords = base_group.inv_coords(&a[..split])?;
                let ft = self.inner.finite.as_ref().unwrap();
                coords.push(ft.inverse(a[split] as usize) as i64);
                Ok(coords)
            }
        }
    }

    /// Samples an element with coordinates bounded by `radius`; used by the
    /// randomized law checks.  Cyclic coordinates and finite indices are drawn
    /// from their full range.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, radius: i64) -> Element {
        let coords: Coords = match self.spec() {
            GroupSpec::CyclicFinite { modulus } => {
                SmallVec::from_slice(&[rng.gen_range(0..*modulus)])
            }
            GroupSpec::ProductWithFinite { .. } => {
                let base_group = self.inner.base.as_ref().unwrap();
                let mut c = base_group.sample(rng, radius).coords;
                let order = self.inner.finite.as_ref().unwrap().order() as i64;
                c.push(rng.gen_range(0..order));
                c
            }
            spec => (0..spec.coord_len())
                .map(|_| rng.gen_range(-radius..=radius))
                .collect(),
        };
        Element {
            group: self.clone(),
            coords,
        }
    }
}

fn unpack_ut(coords: &[i64], n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    let mut idx = 0;
    for i in 0..n {
        m[i][i] = 1;
        for j in (i + 1)..n {
            m[i][j] = coords[idx];
            idx += 1;
        }
    }
    m
}

fn pack_ut(m: &[Vec<i64>], n: usize) -> Coords {
    let mut coords = Coords::new();
    for i in 0..n {
        for j in (i + 1)..n {
            coords.push(m[i][j]);
        }
    }
    coords
}

/// A group element in canonical coordinates.
///
/// Equality requires both the coordinates and the owning group to agree.
/// Ordering is lexicographic on coordinates (elements compared in practice
/// always share a group), which is the tie-break order used everywhere a
/// deterministic scan is required.
#[derive(Clone)]
pub struct Element {
    group: Group,
    coords: Coords,
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        *self == self.group.identity()
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        if self.group != other.group {
            return Err(Error::SpecMismatch);
        }
        self.group.mul(self, other)
    }

    pub fn inv(&self) -> Result<Element> {
        self.group.inv(self)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.group == other.group
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.group.spec().cmp(other.group.spec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn backends() -> Vec<Group> {
        vec![
            Group::free_abelian(2).unwrap(),
            Group::cyclic(5).unwrap(),
            Group::heisenberg(),
            Group::unitriangular(3).unwrap(),
            Group::product_with_finite(
                GroupSpec::FreeAbelian { rank: 1 },
                vec![vec![0, 1], vec![1, 0]],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn heisenberg_products_match_displayed_law() {
        let g = Group::heisenberg();
        let x = g.element(&[1, 0, 0]).unwrap();
        let y = g.element(&[0, 1, 0]).unwrap();
        assert_eq!(x.mul(&y).unwrap().coords(), &[1, 1, 0]);
        assert_eq!(y.mul(&x).unwrap().coords(), &[1, 1, -1]);
    }

    #[test]
    fn heisenberg_inverse() {
        let g = Group::heisenberg();
        let u = g.element(&[1, 1, 0]).unwrap();
        assert_eq!(u.inv().unwrap().coords(), &[-1, -1, -1]);
        assert!(g.identity().inv().unwrap().is_identity());
    }

    #[test]
    fn free_abelian_inverse_negates() {
        let g = Group::free_abelian(1).unwrap();
        let u = g.element(&[3]).unwrap();
        assert_eq!(u.inv().unwrap().coords(), &[-3]);
    }

    #[test]
    fn identities_are_canonical() {
        assert_eq!(Group::heisenberg().identity().coords(), &[0, 0, 0]);
        assert_eq!(Group::cyclic(5).unwrap().identity().coords(), &[0]);
        assert_eq!(
            Group::unitriangular(3).unwrap().identity().coords(),
            &[0, 0, 0]
        );
    }

    #[test]
    fn group_laws_hold_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for group in backends() {
            let e = group.identity();
            for _ in 0..200 {
                let g = group.sample(&mut rng, 6);
                let h = group.sample(&mut rng, 6);
                let k = group.sample(&mut rng, 6);
                let left = g.mul(&h).unwrap().mul(&k).unwrap();
                let right = g.mul(&h.mul(&k).unwrap()).unwrap();
                assert_eq!(left, right, "associativity failed in {:?}", group);
                assert_eq!(e.mul(&g).unwrap(), g);
                assert_eq!(g.mul(&e).unwrap(), g);
                assert!(g.mul(&g.inv().unwrap()).unwrap().is_identity());
                assert!(g.inv().unwrap().mul(&g).unwrap().is_identity());
            }
        }
    }

    /// The Heisenberg coordinates embed into 3x3 unitriangular matrices via
    /// (a,b,c) -> [[1, a, c+ab], [0, 1, b], [0, 0, 1]]; products must agree.
    #[test]
    fn heisenberg_matches_matrix_realization() {
        let heis = Group::heisenberg();
        let ut = Group::unitriangular(3).unwrap();
        let embed = |e: &Element| {
            let (a, b, c) = (e.coords()[0], e.coords()[1], e.coords()[2]);
            ut.element(&[a, c + a * b, b]).unwrap()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let g = heis.sample(&mut rng, 12);
            let h = heis.sample(&mut rng, 12);
            let prod = g.mul(&h).unwrap();
            assert_eq!(embed(&g).mul(&embed(&h)).unwrap(), embed(&prod));
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let g = Group::cyclic(5).unwrap();
        let u = g.element(&[-3]).unwrap();
        assert_eq!(u.coords(), &[2]);
        let again = g.element(u.coords()).unwrap();
        assert_eq!(u, again);
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let a = Group::free_abelian(1).unwrap().element(&[1]).unwrap();
        let b = Group::cyclic(5).unwrap().element(&[1]).unwrap();
        assert_eq!(a.mul(&b), Err(Error::SpecMismatch));
    }

    #[test]
    fn overflow_fails_instead_of_wrapping() {
        let g = Group::free_abelian(1).unwrap();
        let u = g.element(&[i64::MAX]).unwrap();
        assert_eq!(u.mul(&u), Err(Error::Overflow));
        let h = Group::heisenberg();
        let v = h.element(&[i64::MAX / 2, i64::MAX / 2, 0]).unwrap();
        assert_eq!(v.mul(&v), Err(Error::Overflow));
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(Group::cyclic(0).is_err());
        assert!(Group::unitriangular(1).is_err());
        assert!(Group::free_abelian(0).is_err());
        // Non-associative table: rock-paper-scissors style.
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(Group::product_with_finite(GroupSpec::FreeAbelian { rank: 1 }, bad).is_err());
    }

    #[test]
    fn unitriangular_inverse_by_matrix_product() {
        let g = Group::unitriangular(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let u = g.sample(&mut rng, 5);
            assert!(u.mul(&u.inv().unwrap()).unwrap().is_identity());
        }
    }
}
