//! Structure-preserving coordinate homomorphisms between backends, and the
//! two permanence operations for covers: push-forward along a homomorphism
//! and lifting through a finite kernel.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{verify_cover, CoverResult};
use crate::error::{Error, Result};
use crate::group::{Coords, Element, Group, GroupSpec};
use crate::product::power;
use crate::set::ElementSet;
use crate::Budget;

const LAW_CHECK_PAIRS: usize = 500;
const LAW_CHECK_SEED: u64 = 0x67726f77;

/// The supported coordinate transformations.
#[derive(Debug, Clone, PartialEq, Eq)]
enum HomKind {
    Identity,
    /// Heisenberg `(a, b, c) -> (a, b)` onto the free abelian group of rank 2.
    AbelianizeHeisenberg,
    /// Rank-1 free abelian onto a cyclic group, reducing mod `m`.
    ReduceMod,
    /// Cyclic `C_m` onto `C_d` for a divisor `d` of `m`.
    CyclicReduce,
    /// Product-with-finite onto its base factor.
    ProjectBase,
    /// Product-with-finite onto its finite factor (realized as a product
    /// with the trivial base `C_1`).
    ProjectFinite,
}

/// A validated group homomorphism between two backends.  The homomorphism
/// law is property-tested on random pairs when the map is constructed.
#[derive(Debug, Clone)]
pub struct Hom {
    source: Group,
    target: Group,
    kind: HomKind,
}

impl Hom {
    pub fn identity(group: &Group) -> Result<Hom> {
        Hom::build(group.clone(), group.clone(), HomKind::Identity)
    }

    pub fn abelianize_heisenberg() -> Result<Hom> {
        Hom::build(
            Group::heisenberg(),
            Group::free_abelian(2)?,
            HomKind::AbelianizeHeisenberg,
        )
    }

    /// `Z -> C_m`, `x -> x mod m`.
    pub fn reduce_mod(modulus: i64) -> Result<Hom> {
        Hom::build(
            Group::free_abelian(1)?,
            Group::cyclic(modulus)?,
            HomKind::ReduceMod,
        )
    }

    /// `C_m -> C_d` for `d` dividing `m`.
    pub fn cyclic_reduce(modulus: i64, divisor: i64) -> Result<Hom> {
        if divisor < 1 || modulus % divisor != 0 {
            return Err(Error::InvalidSpec(format!(
                "{divisor} does not divide the source modulus {modulus}"
            )));
        }
        Hom::build(
            Group::cyclic(modulus)?,
            Group::cyclic(divisor)?,
            HomKind::CyclicReduce,
        )
    }

    pub fn project_base(product: &Group) -> Result<Hom> {
        let GroupSpec::ProductWithFinite { base, .. } = product.spec() else {
            return Err(Error::InvalidSpec(
                "base projection requires a product-with-finite source".into(),
            ));
        };
        Hom::build(
            product.clone(),
            Group::new((**base).clone())?,
            HomKind::ProjectBase,
        )
    }

    pub fn project_finite(product: &Group) -> Result<Hom> {
        let GroupSpec::ProductWithFinite { table, .. } = product.spec() else {
            return Err(Error::InvalidSpec(
                "finite projection requires a product-with-finite source".into(),
            ));
        };
        let target = Group::product_with_finite(
            GroupSpec::CyclicFinite { modulus: 1 },
            table.clone(),
        )?;
        Hom::build(product.clone(), target, HomKind::ProjectFinite)
    }

    fn build(source: Group, target: Group, kind: HomKind) -> Result<Hom> {
        let hom = Hom {
            source,
            target,
            kind,
        };
        hom.law_check(LAW_CHECK_SEED, LAW_CHECK_PAIRS)?;
        Ok(hom)
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    /// Property-tests `π(gh) = π(g)π(h)` on random pairs.
    pub fn law_check(&self, seed: u64, pairs: usize) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let g = self.source.sample(&mut rng, 10);
            let h = self.source.sample(&mut rng, 10);
            let lhs = self.apply(&g.mul(&h)?)?;
            let rhs = self.apply(&g)?.mul(&self.apply(&h)?)?;
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!(
                    "homomorphism law fails at {g:?}, {h:?}"
                )));
            }
        }
        Ok(())
    }

    /// Image of a single element.
    pub fn apply(&self, g: &Element) -> Result<Element> {
        if g.group() != &self.source {
            return Err(Error::SpecMismatch);
        }
        let c = g.coords();
        match self.kind {
            HomKind::Identity => Ok(g.clone()),
            HomKind::AbelianizeHeisenberg => self.target.element(&[c[0], c[1]]),
            HomKind::ReduceMod | HomKind::CyclicReduce => self.target.element(&[c[0]]),
            HomKind::ProjectBase => self.target.element(&c[..c.len() - 1]),
            HomKind::ProjectFinite => self.target.element(&[0, c[c.len() - 1]]),
        }
    }

    /// Image of a set, deduplicated.
    pub fn apply_set(&self, s: &ElementSet) -> Result<ElementSet> {
        let images = s
            .iter()
            .map(|e| self.apply(e))
            .collect::<Result<Vec<_>>>()?;
        ElementSet::from_elements(&self.target, images)
    }
}

/// An explicitly listed finite kernel, validated to be a subgroup mapping to
/// the target identity.
#[derive(Debug, Clone)]
pub struct FiniteKernel {
    elements: ElementSet,
}

impl FiniteKernel {
    pub fn new(hom: &Hom, elements: ElementSet) -> Result<FiniteKernel> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        if elements.group() != hom.source() {
            return Err(Error::SpecMismatch);
        }
        let target_id = hom.target().identity();
        if !elements.contains(&elements.group().identity()) {
            return Err(Error::InvalidSpec("kernel must contain the identity".into()));
        }
        for k in elements.iter() {
            if hom.apply(k)? != target_id {
                return Err(Error::InvalidSpec(format!(
                    "kernel element {k:?} does not map to the identity"
                )));
            }
            if !elements.contains(&k.inv()?) {
                return Err(Error::InvalidSpec(
                    "kernel is not closed under inverses".into(),
                ));
            }
            for l in elements.iter() {
                if !elements.contains(&k.mul(l)?) {
                    return Err(Error::InvalidSpec(
                        "kernel is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(FiniteKernel { elements })
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Pushes a verified cover `A^{rh} ⊆ X A^h` forward along `π`, verifying
/// `π(A)^{rh} ⊆ π(X) π(A)^h` downstairs.  The image translate set can only
/// shrink.
pub fn push_cover(
    pi: &Hom,
    a: &ElementSet,
    x: &ElementSet,
    r: u32,
    h: u32,
    budget: Budget,
) -> Result<CoverResult> {
    let big = power(a, r * h, budget)?;
    let small = power(a, h, budget)?;
    if !verify_cover(&big, x, &small)? {
        return Err(Error::precondition(
            "the given translate set does not cover A^{rh} by A^h upstairs",
        ));
    }
    let pa = pi.apply_set(a)?;
    let px = pi.apply_set(x)?;
    assert!(px.len() <= x.len());
    let big_down = power(&pa, r * h, budget)?;
    let small_down = power(&pa, h, budget)?;
    if !verify_cover(&big_down, &px, &small_down)? {
        return Err(Error::VerificationFailed(
            "pushed cover failed exhaustive membership downstairs".into(),
        ));
    }
    Ok(CoverResult {
        translates: px,
        multiplier: small_down,
        exact: false,
        bound: None,
    })
}

/// Lifts a verified downstairs cover `π(A)^{rh} ⊆ Y π(A)^h` through a finite
/// kernel: translates of `Y` with reachable preimages are lifted (one
/// preimage each, lexicographically least) and multiplied by the kernel,
/// giving a verified cover of `A^{rh}` by `A^h` of size at most `|K| |Y|`.
pub fn lift_cover(
    pi: &Hom,
    kernel: &FiniteKernel,
    a: &ElementSet,
    y: &ElementSet,
    r: u32,
    h: u32,
    budget: Budget,
) -> Result<CoverResult> {
    let pa = pi.apply_set(a)?;
    let big_down = power(&pa, r * h, budget)?;
    let small_down = power(&pa, h, budget)?;
    if !verify_cover(&big_down, y, &small_down)? {
        return Err(Error::precondition(
            "the given translate set does not cover the image powers downstairs",
        ));
    }

    let big = power(a, r * h, budget)?;
    let small = power(a, h, budget)?;
    // Any needed translate appears in the image of A^{rh} (A^h)^{-1}, so
    // preimages are found among enumerated products.
    let reachable = big.minkowski(&small.inverse_set()?, budget)?;
    let mut preimage: HashMap<Coords, Element> = HashMap::new();
    for z in reachable.iter() {
        let key = Coords::from_slice(pi.apply(z)?.coords());
        preimage.entry(key).or_insert_with(|| z.clone());
    }
    let mut lifted: Vec<Element> = Vec::new();
    for t in y.iter() {
        if let Some(z) = preimage.get(t.coords()) {
            lifted.push(z.clone());
        }
    }
    let mut translates: Vec<Element> = Vec::new();
    for z in &lifted {
        for k in kernel.elements().iter() {
            translates.push(z.mul(k)?);
        }
    }
    let x = ElementSet::from_elements(a.group(), translates)?;
    assert!(x.len() <= kernel.len() * y.len());
    if !verify_cover(&big, &x, &small)? {
        return Err(Error::VerificationFailed(
            "lifted cover failed exhaustive membership upstairs".into(),
        ));
    }
    Ok(CoverResult {
        translates: x,
        multiplier: small,
        exact: false,
        bound: None,
    })
}
