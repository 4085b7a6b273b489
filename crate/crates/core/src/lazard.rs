//! The Lie correspondence for class-two groups with 2-divisible center.
//!
//! On cocycles, `ψ ↦ (φ, η)` with `φ = (ψ + ψᵀ)/2` and `η = ψ − ψᵀ`, and
//! back via `ψ = φ + η/2`. On objects, a group `B = A × C` and its Lie ring
//! `L(B)` share the same set of pairs `(a, c)`; the ring has addition
//! `(a1 + a2 + φ(c1,c2), c1 + c2)` and bracket `(η(c1,c2) − φ(0,0), 0)`.
//!
//! The ring is built from the group's centered cocycle. Centering alone is
//! enough for the identities `b⁻¹ = −b` and `b1·b2 = b1 + b2 + [b1,b2]/2` to
//! hold on the nose, because `ψ(c,−c) = ψ(−c,c)` for every cocycle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AbElement, FinAbGroup};
use crate::cocycle::{Cocycle, CocycleViolation, OneChain, SkewBihom};
use crate::nilgroup::{first_hom_violation, Class2Group, GroupElement, GroupError};

/// Lie ring elements are the same pairs `(a, c)` as group elements.
pub type LieElement = GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LazardError {
    #[error("A has even order {0}; it is not 2-divisible")]
    NotTwoDivisible(u64),
    #[error("φ is not symmetric at ({c1}, {c2})")]
    AsymmetricPhi { c1: AbElement, c2: AbElement },
    #[error("φ(0,0) ≠ 0")]
    UncenteredPhi,
    #[error("φ is not a cocycle: {0}")]
    InvalidPhi(CocycleViolation),
    #[error("η is not a skew bihomomorphism: {0}")]
    InvalidEta(CocycleViolation),
    #[error("map is not a homomorphism: fails at ({x}, {y})")]
    NotAHomomorphism { x: GroupElement, y: GroupElement },
    #[error("{identity} fails at ({x}, {y})")]
    IdentityViolation { identity: &'static str, x: GroupElement, y: GroupElement },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `ψ ↦ (φ, η)`.
pub fn lie_cocycles(psi: &Cocycle) -> Result<(Cocycle, SkewBihom), LazardError> {
    let (a, c) = (psi.a(), psi.c());
    if !a.is_two_divisible() {
        return Err(LazardError::NotTwoDivisible(a.order()));
    }
    let phi = psi.map(|i, j| a.halve(&a.add(&psi.at(i, j), &psi.at(j, i))).expect("odd order"));
    let eta = SkewBihom::from_fn_unchecked(c, a, |i, j| a.sub(&psi.at(i, j), &psi.at(j, i)));
    Ok((phi, eta))
}

/// `(φ, η) ↦ φ + η/2`.
pub fn group_cocycle(phi: &Cocycle, eta: &SkewBihom) -> Result<Cocycle, LazardError> {
    let (a, c) = (phi.a(), phi.c());
    if !a.is_two_divisible() {
        return Err(LazardError::NotTwoDivisible(a.order()));
    }
    check_symmetric(phi)?;
    Ok(Cocycle::from_fn_unchecked(c, a, |i, j| {
        a.add(&phi.at(i, j), &a.halve(&eta.at(i, j)).expect("odd order"))
    }))
}

fn check_symmetric(phi: &Cocycle) -> Result<(), LazardError> {
    let n = phi.c().size();
    for i in 0..n {
        for j in i + 1..n {
            if phi.at(i, j) != phi.at(j, i) {
                return Err(LazardError::AsymmetricPhi { c1: phi.c().element_at(i), c2: phi.c().element_at(j) });
            }
        }
    }
    Ok(())
}

/// A Lie ring of nilpotency class two on `A × C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRing {
    a: FinAbGroup,
    c: FinAbGroup,
    phi: Cocycle,
    eta: SkewBihom,
}

impl LieRing {
    /// Checks that `φ` is a centered symmetric cocycle and `η` a skew
    /// bihomomorphism.
    pub fn new(phi: Cocycle, eta: SkewBihom) -> Result<Self, LazardError> {
        phi.validate().map_err(LazardError::InvalidPhi)?;
        eta.validate().map_err(LazardError::InvalidEta)?;
        Self::checked_shape(phi, eta)
    }

    fn checked_shape(phi: Cocycle, eta: SkewBihom) -> Result<Self, LazardError> {
        check_symmetric(&phi)?;
        if !phi.is_centered() {
            return Err(LazardError::UncenteredPhi);
        }
        Ok(LieRing { a: phi.a().clone(), c: phi.c().clone(), phi, eta })
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn c(&self) -> &FinAbGroup {
        &self.c
    }

    pub fn phi(&self) -> &Cocycle {
        &self.phi
    }

    pub fn eta(&self) -> &SkewBihom {
        &self.eta
    }

    pub fn order(&self) -> u64 {
        self.a.order() * self.c.order()
    }

    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn zero(&self) -> LieElement {
        GroupElement::new(self.a.zero(), self.c.zero())
    }

    pub fn index(&self, x: &LieElement) -> usize {
        self.a.index(&x.a) + self.a.size() * self.c.index(&x.c)
    }

    pub fn element(&self, idx: usize) -> LieElement {
        let na = self.a.size();
        GroupElement::new(self.a.element_at(idx % na), self.c.element_at(idx / na))
    }

    pub fn elements(&self) -> impl Iterator<Item = LieElement> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn add(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let twist = self.phi.get(&x.c, &y.c);
        GroupElement::new(self.a.add(&self.a.add(&x.a, &y.a), &twist), self.c.add(&x.c, &y.c))
    }

    /// `(−a − φ(c,−c), −c)`.
    pub fn neg(&self, x: &LieElement) -> LieElement {
        let neg_c = self.c.neg(&x.c);
        let t = self.phi.get(&x.c, &neg_c);
        GroupElement::new(self.a.sub(&self.a.neg(&x.a), &t), neg_c)
    }

    pub fn sub(&self, x: &LieElement, y: &LieElement) -> LieElement {
        self.add(x, &self.neg(y))
    }

    /// `[(a1,c1),(a2,c2)] = (η(c1,c2) − φ(0,0), 0)`.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let v = self.a.sub(&self.eta.get(&x.c, &y.c), &self.phi.at(0, 0));
        GroupElement::new(v, self.c.zero())
    }

    /// `k · x` for any integer `k`.
    pub fn scale(&self, x: &LieElement, k: i64) -> LieElement {
        let (mut base, mut k) = if k < 0 { (self.neg(x), k.unsigned_abs()) } else { (x.clone(), k as u64) };
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `x/2`, the unique `y` with `y + y = x`, for rings of odd order.
    pub fn halve(&self, x: &LieElement) -> Result<LieElement, LazardError> {
        if self.order() % 2 == 0 {
            return Err(LazardError::NotTwoDivisible(self.order()));
        }
        Ok(self.scale(x, ((self.order() + 1) / 2) as i64))
    }

    /// Halves a central element `(a, 0)` inside `A`.
    fn halve_central(&self, x: &LieElement) -> LieElement {
        debug_assert!(x.c.is_zero());
        GroupElement::new(self.a.halve(&x.a).expect("odd order"), x.c.clone())
    }
}

/// The Lie ring `L(B)` on the underlying set of `B`.
pub fn lie_ring_of(group: &Class2Group) -> Result<LieRing, LazardError> {
    let (phi, eta) = lie_cocycles(group.psi())?;
    LieRing::checked_shape(phi, eta)
}

/// The group `E(𝔟)` on the underlying set of `𝔟`.
pub fn group_of(ring: &LieRing) -> Result<Class2Group, LazardError> {
    let psi = group_cocycle(ring.phi(), ring.eta())?;
    if psi.c().size() <= crate::cocycle::FAST_VALIDATION_THRESHOLD {
        Ok(Class2Group::new(psi)?)
    } else {
        Ok(Class2Group::from_trusted(psi))
    }
}

/// Renames `(a, c) ↦ (a − q(c), c)`: an isomorphism from the group of `ψ` to
/// the group of `ψ + δq`, and likewise for Lie rings.
pub fn rename(a: &FinAbGroup, q: &OneChain, x: &GroupElement) -> GroupElement {
    GroupElement::new(a.sub(&x.a, q.get(&x.c)), x.c.clone())
}

/// Outcome of transporting a homomorphism across the correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismCheck {
    /// The same set map is a homomorphism on the other side.
    Verified(Vec<usize>),
    /// First pair (by index) where it fails.
    Violated { x: GroupElement, y: GroupElement },
}

/// `L(f)`: given a group homomorphism `f: B1 → B2` as a dense index map,
/// checks that the same map preserves addition and bracket of the Lie rings.
pub fn lie_functor(source: &Class2Group, target: &Class2Group, f: &[usize]) -> Result<MorphismCheck, LazardError> {
    if let Some((i, j)) = first_hom_violation(source, target, f) {
        return Err(LazardError::NotAHomomorphism { x: source.element(i), y: source.element(j) });
    }
    let (l1, l2) = (lie_ring_of(source)?, lie_ring_of(target)?);
    Ok(match first_lie_violation(&l1, &l2, f) {
        Some((i, j)) => MorphismCheck::Violated { x: l1.element(i), y: l1.element(j) },
        None => MorphismCheck::Verified(f.to_vec()),
    })
}

/// `E(f)`: given a Lie ring homomorphism `f: 𝔟1 → 𝔟2`, checks that the
/// same map is a group homomorphism `E(𝔟1) → E(𝔟2)`.
pub fn group_functor(source: &LieRing, target: &LieRing, f: &[usize]) -> Result<MorphismCheck, LazardError> {
    if let Some((i, j)) = first_lie_violation(source, target, f) {
        return Err(LazardError::NotAHomomorphism { x: source.element(i), y: source.element(j) });
    }
    let (g1, g2) = (group_of(source)?, group_of(target)?);
    Ok(match first_hom_violation(&g1, &g2, f) {
        Some((i, j)) => MorphismCheck::Violated { x: g1.element(i), y: g1.element(j) },
        None => MorphismCheck::Verified(f.to_vec()),
    })
}

fn first_lie_violation(source: &LieRing, target: &LieRing, f: &[usize]) -> Option<(usize, usize)> {
    let n = source.size();
    if f.len() != n || f.iter().any(|&y| y >= target.size()) {
        return Some((0, 0));
    }
    let elems: Vec<LieElement> = source.elements().collect();
    let images: Vec<LieElement> = f.iter().map(|&i| target.element(i)).collect();
    (0..n).into_par_iter().find_map_first(|i| {
        (0..n)
            .find(|&j| {
                let sum = f[source.index(&source.add(&elems[i], &elems[j]))];
                let br = f[source.index(&source.bracket(&elems[i], &elems[j]))];
                sum != target.index(&target.add(&images[i], &images[j]))
                    || br != target.index(&target.bracket(&images[i], &images[j]))
            })
            .map(|j| (i, j))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub pairs_checked: usize,
    pub exhaustive: bool,
}

/// Checks, for pairs of elements of `B` and its Lie ring:
/// `b⁻¹ = −b`, `b1·b2 = b1 + b2 + [b1,b2]/2`, `b1·b2·b1⁻¹ = b2 + [b1,b2]`,
/// `b1·b2·b1⁻¹·b2⁻¹ = [b1,b2]`, and `b1·b2 = b1 + b2` for commuting pairs.
///
/// All pairs when `|B| ≤ exhaustive_limit`, otherwise `samples` random pairs.
pub fn lemma_identities(
    group: &Class2Group,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport, LazardError> {
    let ring = lie_ring_of(group)?;
    let n = group.size();
    let elems: Vec<GroupElement> = group.elements().collect();
    let fail = |identity, x: &GroupElement, y: &GroupElement| LazardError::IdentityViolation {
        identity,
        x: x.clone(),
        y: y.clone(),
    };

    for x in &elems {
        if group.inv(x) != ring.neg(x) {
            return Err(fail("b⁻¹ = −b", x, x));
        }
    }

    let check = |x: &GroupElement, y: &GroupElement| -> Result<(), LazardError> {
        let prod = group.mul(x, y);
        let br = ring.bracket(x, y);
        let sum = ring.add(x, y);
        if prod != ring.add(&sum, &ring.halve_central(&br)) {
            return Err(fail("b1·b2 = b1 + b2 + [b1,b2]/2", x, y));
        }
        if group.mul(&prod, &group.inv(x)) != ring.add(y, &br) {
            return Err(fail("b1·b2·b1⁻¹ = b2 + [b1,b2]", x, y));
        }
        if group.commutator(x, y) != br {
            return Err(fail("b1·b2·b1⁻¹·b2⁻¹ = [b1,b2]", x, y));
        }
        if group.commutes(x, y) && prod != sum {
            return Err(fail("b1·b2 = b1 + b2 for commuting pairs", x, y));
        }
        Ok(())
    };

    if n <= exhaustive_limit {
        (0..n)
            .into_par_iter()
            .map(|i| elems.iter().try_for_each(|y| check(&elems[i], y)))
            .collect::<Result<Vec<()>, _>>()?;
        Ok(IdentityReport { pairs_checked: n * n, exhaustive: true })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> = (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        pairs
            .par_iter()
            .map(|&(i, j)| check(&elems[i], &elems[j]))
            .collect::<Result<Vec<()>, _>>()?;
        Ok(IdentityReport { pairs_checked: samples, exhaustive: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::Catalog;

    fn g(m: &[u64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    #[test]
    fn lie_cocycles_examples() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let (phi, eta) = lie_cocycles(&Cocycle::zero(&c, &a)).unwrap();
        assert_eq!(phi, Cocycle::zero(&c, &a));
        assert_eq!(eta, SkewBihom::zero(&c, &a));

        let sym = Cocycle::from_bilinear(&c, &a, &[vec![vec![1], vec![2]], vec![vec![2], vec![0]]]).unwrap();
        let (phi, eta) = lie_cocycles(&sym).unwrap();
        assert_eq!(phi, sym);
        assert_eq!(eta, SkewBihom::zero(&c, &a));

        let psi = Catalog::Heisenberg(3).cocycle().unwrap();
        let (phi, eta) = lie_cocycles(&psi).unwrap();
        for x in c.elements() {
            for y in c.elements() {
                let (x1, x2, y1, y2) = (x.coords()[0] as i64, x.coords()[1] as i64, y.coords()[0] as i64, y.coords()[1] as i64);
                // (x1 y2 + x2 y1)/2 with 1/2 ≡ 2 (mod 3)
                assert_eq!(phi.get(&x, &y), a.reduce(&[2 * (x1 * y2 + x2 * y1)]));
                assert_eq!(eta.get(&x, &y), a.reduce(&[x1 * y2 - x2 * y1]));
            }
        }
        assert!(phi.is_valid() && phi.is_symmetric());
        assert!(eta.is_valid());
    }

    #[test]
    fn even_center_rejected() {
        let d8 = Cocycle::from_bilinear(&g(&[2, 2]), &g(&[2]), &[vec![vec![1], vec![1]], vec![vec![0], vec![0]]]).unwrap();
        assert!(matches!(lie_cocycles(&d8), Err(LazardError::NotTwoDivisible(2))));
        let b = Class2Group::new(d8).unwrap();
        assert!(matches!(lie_ring_of(&b), Err(LazardError::NotTwoDivisible(2))));
    }

    #[test]
    fn group_cocycle_examples() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        assert_eq!(group_cocycle(&Cocycle::zero(&c, &a), &SkewBihom::zero(&c, &a)).unwrap(), Cocycle::zero(&c, &a));
        let psi = Catalog::Heisenberg(3).cocycle().unwrap();
        let (phi, eta) = lie_cocycles(&psi).unwrap();
        assert_eq!(group_cocycle(&phi, &eta).unwrap(), psi);

        let half = group_cocycle(&Cocycle::zero(&c, &a), &eta).unwrap();
        assert!(half.is_valid());
        assert_eq!(lie_cocycles(&half).unwrap().1, eta);

        assert!(matches!(group_cocycle(&psi, &eta), Err(LazardError::AsymmetricPhi { .. })));
    }

    #[test]
    fn ring_axioms_on_heisenberg() {
        let b = Catalog::heisenberg(3).unwrap();
        let ring = lie_ring_of(&b).unwrap();
        let elems: Vec<_> = ring.elements().collect();
        for x in &elems {
            assert_eq!(ring.add(x, &ring.zero()), *x);
            assert!(ring.bracket(x, x).a.is_zero());
            assert_eq!(ring.add(x, &ring.neg(x)), ring.zero());
            for y in &elems {
                assert_eq!(ring.add(x, y), ring.add(y, x));
                assert!(ring.bracket(x, y).c.is_zero());
                assert_eq!(ring.bracket(x, y), b.commutator(x, y));
                for z in elems.iter().step_by(4) {
                    assert_eq!(ring.add(&ring.add(x, y), z), ring.add(x, &ring.add(y, z)));
                    assert_eq!(ring.bracket(&ring.add(x, y), z), ring.add(&ring.bracket(x, z), &ring.bracket(y, z)));
                }
            }
        }
    }

    #[test]
    fn abelian_ring_has_zero_bracket() {
        let b = Catalog::abelian(&[3, 9]).unwrap();
        let ring = lie_ring_of(&b).unwrap();
        assert_eq!(ring.size(), b.size());
        assert!(ring.elements().all(|x| ring.elements().all(|y| ring.bracket(&x, &y) == ring.zero())));
        assert!(group_of(&ring).unwrap().is_abelian());
    }

    #[test]
    fn functor_round_trip_tables() {
        for b in [Catalog::heisenberg(5).unwrap(), Catalog::extraspecial(3, 2).unwrap()] {
            let ring = lie_ring_of(&b).unwrap();
            let back = group_of(&ring).unwrap();
            assert_eq!(back.mul_table().unwrap(), b.mul_table().unwrap());
            assert_eq!(lie_ring_of(&back).unwrap(), ring);
        }
    }

    #[test]
    fn ring_is_independent_of_representative() {
        let b = Catalog::heisenberg(3).unwrap();
        let (c, a) = (b.c().clone(), b.a().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ring = lie_ring_of(&b).unwrap();
        for _ in 0..5 {
            let q = OneChain::random(&c, &a, &mut rng, true);
            let shifted = Class2Group::new(b.psi().add_coboundary(&q)).unwrap();
            let ring2 = lie_ring_of(&shifted).unwrap();
            for x in ring.elements() {
                for y in ring.elements().step_by(3) {
                    let (rx, ry) = (rename(&a, &q, &x), rename(&a, &q, &y));
                    assert_eq!(shifted.mul(&rx, &ry), rename(&a, &q, &b.mul(&x, &y)));
                    assert_eq!(ring2.add(&rx, &ry), rename(&a, &q, &ring.add(&x, &y)));
                    assert_eq!(ring2.bracket(&rx, &ry), rename(&a, &q, &ring.bracket(&x, &y)));
                }
            }
        }
    }

    #[test]
    fn halving_agrees_with_square_roots() {
        let b = Catalog::extraspecial(3, 2).unwrap();
        let ring = lie_ring_of(&b).unwrap();
        for x in b.elements() {
            assert_eq!(b.half_element(&x).unwrap(), ring.halve(&x).unwrap());
        }
    }

    #[test]
    fn lemma_identity_suite() {
        lemma_identities(&Catalog::abelian(&[3, 9]).unwrap(), 729, 0, 0).unwrap();
        let r = lemma_identities(&Catalog::heisenberg(3).unwrap(), 729, 0, 0).unwrap();
        assert_eq!(r, IdentityReport { pairs_checked: 729, exhaustive: true });
        let r = lemma_identities(&Catalog::heisenberg(7).unwrap(), 0, 20_000, 5).unwrap();
        assert!(!r.exhaustive);
        // a non-equalized, uncentered representative of the nonsplit Z/9 ⊕ Z/3
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let q = OneChain::from_fn(&c, &a, |x| a.reduce(&[x.coords()[1] as i64 + 1]));
        let psi = Cocycle::carry(&c, &a, 0, &a.unit(0))
            .add(&Catalog::Heisenberg(3).cocycle().unwrap())
            .add_coboundary(&q);
        lemma_identities(&Class2Group::new(psi).unwrap(), 729, 0, 0).unwrap();
    }

    #[test]
    fn morphisms() {
        let b = Catalog::heisenberg(3).unwrap();
        let ring = lie_ring_of(&b).unwrap();
        let id: Vec<usize> = (0..b.size()).collect();
        assert_eq!(lie_functor(&b, &b, &id).unwrap(), MorphismCheck::Verified(id.clone()));
        assert_eq!(group_functor(&ring, &ring, &id).unwrap(), MorphismCheck::Verified(id.clone()));

        // (a, c) ↦ (a + λ(c), 2c) with λ(c) = c_1 + 2c_2; ψ(2c, 2c') = 4ψ = ψ mod 3
        let (a, c) = (b.a().clone(), b.c().clone());
        let f: Vec<usize> = b
            .elements()
            .map(|x| {
                let lam = a.reduce(&[x.c.coords()[0] as i64 + 2 * x.c.coords()[1] as i64]);
                b.index(&GroupElement::new(a.add(&x.a, &lam), c.scale(&x.c, 2)))
            })
            .collect();
        assert!(crate::nilgroup::hom_check(&b, &b, &f));
        assert_eq!(lie_functor(&b, &b, &f).unwrap(), MorphismCheck::Verified(f.clone()));
        assert_eq!(group_functor(&ring, &ring, &f).unwrap(), MorphismCheck::Verified(f));

        let mut bad = id;
        bad.swap(3, 4);
        assert!(matches!(lie_functor(&b, &b, &bad), Err(LazardError::NotAHomomorphism { .. })));
        assert!(matches!(group_functor(&ring, &ring, &bad), Err(LazardError::NotAHomomorphism { .. })));
    }

    #[test]
    fn ring_constructor_checks() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let psi = Catalog::Heisenberg(3).cocycle().unwrap();
        let (phi, eta) = lie_cocycles(&psi).unwrap();
        assert!(LieRing::new(phi.clone(), eta.clone()).is_ok());
        assert!(matches!(LieRing::new(psi.clone(), eta.clone()), Err(LazardError::AsymmetricPhi { .. })));
        let shifted = Cocycle::from_fn_unchecked(&c, &a, |_, _| a.unit(0));
        assert!(matches!(LieRing::new(shifted, eta), Err(LazardError::UncenteredPhi)));
        let sym = Cocycle::from_bilinear(&c, &a, &[vec![vec![1], vec![0]], vec![vec![0], vec![1]]]).unwrap();
        let bad_eta = SkewBihom::from_entries_unchecked(c, a, sym.entries()).unwrap();
        assert!(matches!(LieRing::new(phi, bad_eta), Err(LazardError::InvalidEta(_))));
    }

    #[test]
    fn normal_forms_transfer() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = Catalog::Heisenberg(3).cocycle().unwrap().add(&Cocycle::carry(&c, &a, 1, &a.unit(0)));
        for _ in 0..6 {
            let q = OneChain::random(&c, &a, &mut rng, false);
            for psi in [base.add_coboundary(&q), base.add_coboundary(&q).equalize().unwrap().cocycle] {
                let (phi, eta) = lie_cocycles(&psi).unwrap();
                assert_eq!(phi.is_centered(), psi.is_centered());
                assert_eq!(phi.is_equalized(), psi.is_equalized());
                assert_eq!(eta.is_nondegenerate(), psi.is_nondegenerate());
            }
        }
    }
}
