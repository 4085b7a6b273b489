//! Dense 2-cocycles `ψ: C × C → A` with trivial action, their normal forms,
//! and skew-symmetric bihomomorphisms.
//!
//! Tables are indexed by the canonical enumeration of `C`: the value at
//! `(c1, c2)` lives at row `index(c1)`, column `index(c2)`.
//!
//! Adding the coboundary of a 1-chain `q` corresponds to renaming group
//! elements `(a, c) ↦ (a − q(c), c)`; see [`OneChain`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::abelian::{AbElement, AbelianError, FinAbGroup};

/// Triples above this size are checked by sampling in `--fast` mode only.
pub const FAST_VALIDATION_THRESHOLD: usize = 300;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error("table has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("bilinear coefficient {coefficient} at ({i},{j},{t}) is not well defined modulo {target}")]
    IncompatibleModuli { i: usize, j: usize, t: usize, coefficient: i64, target: u64 },
    #[error("A has even order {0}; it is not 2-divisible")]
    NotTwoDivisible(u64),
    #[error("{0}")]
    Violation(CocycleViolation),
}

/// First triple (in lexicographic index order) breaking an identity.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{identity} fails at c1={c1}, c2={c2}, c3={c3}")]
pub struct CocycleViolation {
    pub identity: &'static str,
    pub c1: AbElement,
    pub c2: AbElement,
    pub c3: AbElement,
}

/// A function `q: C → A`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneChain {
    c: FinAbGroup,
    a: FinAbGroup,
    values: Vec<AbElement>,
}

impl OneChain {
    pub fn zero(c: &FinAbGroup, a: &FinAbGroup) -> Self {
        OneChain { c: c.clone(), a: a.clone(), values: vec![a.zero(); c.size()] }
    }

    pub fn from_fn(c: &FinAbGroup, a: &FinAbGroup, mut f: impl FnMut(&AbElement) -> AbElement) -> Self {
        OneChain { c: c.clone(), a: a.clone(), values: c.elements().map(|x| f(&x)).collect() }
    }

    pub fn random(c: &FinAbGroup, a: &FinAbGroup, rng: &mut impl Rng, fix_zero: bool) -> Self {
        let mut q = OneChain::from_fn(c, a, |_| a.element_at(rng.gen_range(0..a.size())));
        if fix_zero {
            q.values[0] = a.zero();
        }
        q
    }

    pub fn at(&self, i: usize) -> &AbElement {
        &self.values[i]
    }

    pub fn get(&self, c: &AbElement) -> &AbElement {
        &self.values[self.c.index(c)]
    }

    pub fn add(&self, other: &OneChain) -> OneChain {
        OneChain {
            c: self.c.clone(),
            a: self.a.clone(),
            values: self.values.iter().zip(&other.values).map(|(x, y)| self.a.add(x, y)).collect(),
        }
    }

    pub fn neg(&self) -> OneChain {
        OneChain {
            c: self.c.clone(),
            a: self.a.clone(),
            values: self.values.iter().map(|x| self.a.neg(x)).collect(),
        }
    }
}

/// A cocycle that has been moved within its class, with the chain used.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub cocycle: Cocycle,
    pub chain: OneChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocycle {
    c: FinAbGroup,
    a: FinAbGroup,
    table: Vec<u64>,
}

impl Cocycle {
    /// Builds and exhaustively validates a cocycle from entries in row-major
    /// `C × C` order.
    pub fn new(c: FinAbGroup, a: FinAbGroup, entries: Vec<AbElement>) -> Result<Self, CocycleError> {
        let psi = Cocycle::from_entries_unchecked(c, a, entries)?;
        psi.validate().map_err(CocycleError::Violation)?;
        Ok(psi)
    }

    /// Builds a table without checking the cocycle identity. Shape and
    /// residues are still checked.
    pub fn from_entries_unchecked(
        c: FinAbGroup,
        a: FinAbGroup,
        entries: Vec<AbElement>,
    ) -> Result<Self, CocycleError> {
        let expected = c.size() * c.size();
        if entries.len() != expected {
            return Err(CocycleError::Shape { expected, got: entries.len() });
        }
        let mut table = Vec::with_capacity(expected * a.rank());
        for e in &entries {
            let e = a.element(e.coords())?;
            table.extend_from_slice(e.coords());
        }
        Ok(Cocycle { c, a, table })
    }

    pub(crate) fn from_fn_unchecked(
        c: &FinAbGroup,
        a: &FinAbGroup,
        f: impl Fn(usize, usize) -> AbElement,
    ) -> Self {
        let n = c.size();
        let mut table = Vec::with_capacity(n * n * a.rank());
        for i in 0..n {
            for j in 0..n {
                table.extend_from_slice(f(i, j).coords());
            }
        }
        Cocycle { c: c.clone(), a: a.clone(), table }
    }

    pub fn zero(c: &FinAbGroup, a: &FinAbGroup) -> Self {
        Cocycle { c: c.clone(), a: a.clone(), table: vec![0; c.size() * c.size() * a.rank()] }
    }

    /// `ψ(c, c')_t = Σ_{i,j} M[i][j][t] · c_i · c'_j  (mod a_t)`.
    ///
    /// Each term must be well defined on residues, which holds iff
    /// `a_t | M[i][j][t] · gcd(m_i, m_j)`.
    pub fn from_bilinear(c: &FinAbGroup, a: &FinAbGroup, m: &[Vec<Vec<i64>>]) -> Result<Self, CocycleError> {
        let (kc, ka) = (c.rank(), a.rank());
        let shape_err = || CocycleError::Shape { expected: kc * kc * ka, got: m.iter().flatten().flatten().count() };
        if m.len() != kc || m.iter().any(|row| row.len() != kc || row.iter().any(|v| v.len() != ka)) {
            return Err(shape_err());
        }
        for i in 0..kc {
            for j in 0..kc {
                for t in 0..ka {
                    let coefficient = m[i][j][t];
                    let g = num_integer::gcd(c.moduli()[i], c.moduli()[j]) as i128;
                    let target = a.moduli()[t];
                    if (coefficient as i128 * g).rem_euclid(target as i128) != 0 {
                        return Err(CocycleError::IncompatibleModuli { i, j, t, coefficient, target });
                    }
                }
            }
        }
        let elems: Vec<AbElement> = c.elements().collect();
        Ok(Cocycle::from_fn_unchecked(c, a, |x, y| {
            let (x, y) = (elems[x].coords(), elems[y].coords());
            let v: Vec<i64> = (0..ka)
                .map(|t| {
                    let modulus = a.moduli()[t] as i128;
                    let mut acc: i128 = 0;
                    for i in 0..kc {
                        for j in 0..kc {
                            acc += m[i][j][t] as i128 * x[i] as i128 * y[j] as i128;
                        }
                    }
                    acc.rem_euclid(modulus) as i64
                })
                .collect();
            a.reduce(&v)
        }))
    }

    /// The carry cocycle of coordinate `axis` of `C`, scaled by `value`:
    /// `value` when `c_axis + c'_axis` wraps around, else zero.
    pub fn carry(c: &FinAbGroup, a: &FinAbGroup, axis: usize, value: &AbElement) -> Self {
        let m = c.moduli()[axis];
        let elems: Vec<AbElement> = c.elements().collect();
        Cocycle::from_fn_unchecked(c, a, |x, y| {
            if elems[x].coords()[axis] + elems[y].coords()[axis] >= m {
                value.clone()
            } else {
                a.zero()
            }
        })
    }

    pub fn c(&self) -> &FinAbGroup {
        &self.c
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    fn slot(&self, i: usize, j: usize) -> &[u64] {
        let k = self.a.rank();
        let off = (i * self.c.size() + j) * k;
        &self.table[off..off + k]
    }

    /// `ψ` at element indices.
    pub fn at(&self, i: usize, j: usize) -> AbElement {
        AbElement(self.slot(i, j).to_vec())
    }

    pub fn get(&self, c1: &AbElement, c2: &AbElement) -> AbElement {
        self.at(self.c.index(c1), self.c.index(c2))
    }

    /// Entries in row-major `C × C` order.
    pub fn entries(&self) -> Vec<AbElement> {
        let n = self.c.size();
        (0..n * n).map(|k| self.at(k / n, k % n)).collect()
    }

    pub fn map(&self, f: impl Fn(usize, usize) -> AbElement) -> Cocycle {
        Cocycle::from_fn_unchecked(&self.c, &self.a, f)
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        self.map(|i, j| self.a.add(&self.at(i, j), &other.at(i, j)))
    }

    /// Exhaustive check of `ψ(c1,c2) + ψ(c1+c2,c3) = ψ(c1,c2+c3) + ψ(c2,c3)`.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        let n = self.c.size();
        let add = self.c.add_table();
        let k = self.a.rank();
        let hit = (0..n).into_par_iter().find_map_first(|i| {
            let mut lhs = vec![0u64; k];
            let mut rhs = vec![0u64; k];
            for j in 0..n {
                let ij = add[i * n + j] as usize;
                for l in 0..n {
                    let jl = add[j * n + l] as usize;
                    self.a.add_into(self.slot(i, j), self.slot(ij, l), &mut lhs);
                    self.a.add_into(self.slot(i, jl), self.slot(j, l), &mut rhs);
                    if lhs != rhs {
                        return Some((i, j, l));
                    }
                }
            }
            None
        });
        match hit {
            Some((i, j, l)) => Err(self.violation("cocycle identity", i, j, l)),
            None => Ok(()),
        }
    }

    /// Checks `10·|C|` random triples; for large `C` where the cubic sweep
    /// is too slow. Never a substitute for [`Cocycle::validate`] in tests.
    pub fn validate_sampled(&self, seed: u64) -> Result<(), CocycleViolation> {
        let n = self.c.size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elems: Vec<AbElement> = self.c.elements().collect();
        for _ in 0..10 * n {
            let (i, j, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let ij = self.c.index(&self.c.add(&elems[i], &elems[j]));
            let jl = self.c.index(&self.c.add(&elems[j], &elems[l]));
            let lhs = self.a.add(&self.at(i, j), &self.at(ij, l));
            let rhs = self.a.add(&self.at(i, jl), &self.at(j, l));
            if lhs != rhs {
                return Err(self.violation("cocycle identity", i, j, l));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn violation(&self, identity: &'static str, i: usize, j: usize, l: usize) -> CocycleViolation {
        CocycleViolation {
            identity,
            c1: self.c.element_at(i),
            c2: self.c.element_at(j),
            c3: self.c.element_at(l),
        }
    }

    /// `ψ(c1,c2) + q(c1) + q(c2) − q(c1+c2)`.
    pub fn add_coboundary(&self, q: &OneChain) -> Cocycle {
        let n = self.c.size();
        let add = self.c.add_table();
        self.map(|i, j| {
            let v = self.a.add(&self.at(i, j), &self.a.add(q.at(i), q.at(j)));
            self.a.sub(&v, q.at(add[i * n + j] as usize))
        })
    }

    pub fn is_centered(&self) -> bool {
        self.slot(0, 0).iter().all(|&x| x == 0)
    }

    /// `ψ(c, −c) = 0` for all `c`.
    pub fn is_equalized(&self) -> bool {
        let neg = self.c.neg_table();
        (0..self.c.size()).all(|i| self.slot(i, neg[i] as usize).iter().all(|&x| x == 0))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.c.size();
        (0..n).all(|i| (i + 1..n).all(|j| self.slot(i, j) == self.slot(j, i)))
    }

    /// Cohomologous cocycle with `ψ(0,0) = 0`, via `q(0) = −ψ(0,0)`.
    pub fn center(&self) -> Normalized {
        let psi00 = self.at(0, 0);
        let mut chain = OneChain::zero(&self.c, &self.a);
        chain.values[0] = self.a.neg(&psi00);
        Normalized { cocycle: self.add_coboundary(&chain), chain }
    }

    /// Cohomologous cocycle with `ψ(c, −c) = 0` for all `c`: centers first,
    /// then shifts by `q(c) = −ψ(c, −c)/2`. Requires `A` of odd order.
    pub fn equalize(&self) -> Result<Normalized, CocycleError> {
        if !self.a.is_two_divisible() {
            return Err(CocycleError::NotTwoDivisible(self.a.order()));
        }
        let centered = self.center();
        let psi = &centered.cocycle;
        let neg = self.c.neg_table();
        let mut q = OneChain::zero(&self.c, &self.a);
        for i in 0..self.c.size() {
            let v = psi.at(i, neg[i] as usize);
            q.values[i] = self.a.neg(&self.a.halve(&v)?);
        }
        Ok(Normalized { cocycle: psi.add_coboundary(&q), chain: centered.chain.add(&q) })
    }

    /// For every `c1 ≠ 0` some `c2` has `ψ(c1,c2) ≠ ψ(c2,c1)`.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.c.size();
        (1..n).all(|i| (0..n).any(|j| self.slot(i, j) != self.slot(j, i)))
    }
}

/// A skew-symmetric bihomomorphism `η: C × C → A` (`η(c,c) = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewBihom {
    c: FinAbGroup,
    a: FinAbGroup,
    table: Vec<u64>,
}

impl SkewBihom {
    pub fn from_entries_unchecked(
        c: FinAbGroup,
        a: FinAbGroup,
        entries: Vec<AbElement>,
    ) -> Result<Self, CocycleError> {
        let inner = Cocycle::from_entries_unchecked(c, a, entries)?;
        Ok(SkewBihom { c: inner.c, a: inner.a, table: inner.table })
    }

    pub(crate) fn from_fn_unchecked(
        c: &FinAbGroup,
        a: &FinAbGroup,
        f: impl Fn(usize, usize) -> AbElement,
    ) -> Self {
        let inner = Cocycle::from_fn_unchecked(c, a, f);
        SkewBihom { c: inner.c, a: inner.a, table: inner.table }
    }

    /// Skew form of a bilinear matrix: `η(c,c') = B(c,c') − B(c',c)`.
    pub fn from_bilinear(c: &FinAbGroup, a: &FinAbGroup, m: &[Vec<Vec<i64>>]) -> Result<Self, CocycleError> {
        let b = Cocycle::from_bilinear(c, a, m)?;
        Ok(SkewBihom::from_fn_unchecked(c, a, |i, j| a.sub(&b.at(i, j), &b.at(j, i))))
    }

    pub fn zero(c: &FinAbGroup, a: &FinAbGroup) -> Self {
        SkewBihom::from_fn_unchecked(c, a, |_, _| a.zero())
    }

    pub fn c(&self) -> &FinAbGroup {
        &self.c
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn at(&self, i: usize, j: usize) -> AbElement {
        let k = self.a.rank();
        let off = (i * self.c.size() + j) * k;
        AbElement(self.table[off..off + k].to_vec())
    }

    pub fn get(&self, c1: &AbElement, c2: &AbElement) -> AbElement {
        self.at(self.c.index(c1), self.c.index(c2))
    }

    pub fn entries(&self) -> Vec<AbElement> {
        let n = self.c.size();
        (0..n * n).map(|k| self.at(k / n, k % n)).collect()
    }

    /// The same table viewed as a 2-cochain.
    pub fn as_cocycle(&self) -> Cocycle {
        Cocycle { c: self.c.clone(), a: self.a.clone(), table: self.table.clone() }
    }

    /// `η(c,c) = 0` for all `c` and `η(c1+c2,c3) = η(c1,c3) + η(c2,c3)`
    /// for all triples.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        let n = self.c.size();
        let z = self.c.zero();
        if let Some(i) = (0..n).find(|&i| !self.at(i, i).is_zero()) {
            let ci = self.c.element_at(i);
            return Err(CocycleViolation { identity: "η(c,c) = 0", c1: ci.clone(), c2: ci, c3: z });
        }
        let add = self.c.add_table();
        let psi = self.as_cocycle();
        let k = self.a.rank();
        let hit = (0..n).into_par_iter().find_map_first(|i| {
            let mut rhs = vec![0u64; k];
            for j in 0..n {
                let ij = add[i * n + j] as usize;
                for l in 0..n {
                    self.a.add_into(psi.slot(i, l), psi.slot(j, l), &mut rhs);
                    if psi.slot(ij, l) != rhs.as_slice() {
                        return Some((i, j, l));
                    }
                }
            }
            None
        });
        match hit {
            Some((i, j, l)) => Err(psi.violation("η(c1+c2,c3) = η(c1,c3) + η(c2,c3)", i, j, l)),
            None => Ok(()),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Every `c1 ≠ 0` pairs nontrivially with some `c2`.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.c.size();
        (1..n).all(|i| (0..n).any(|j| !self.at(i, j).is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    fn heisenberg_psi(p: u64) -> Cocycle {
        Cocycle::from_bilinear(&g(&[p, p]), &g(&[p]), &[vec![vec![0], vec![1]], vec![vec![0], vec![0]]]).unwrap()
    }

    /// Brute-force independent check of the cocycle identity via `get`.
    fn brute_force_is_cocycle(psi: &Cocycle) -> bool {
        let (c, a) = (psi.c(), psi.a());
        let elems: Vec<_> = c.elements().collect();
        elems.iter().all(|x| {
            elems.iter().all(|y| {
                elems.iter().all(|z| {
                    a.add(&psi.get(x, y), &psi.get(&c.add(x, y), z))
                        == a.add(&psi.get(x, &c.add(y, z)), &psi.get(y, z))
                })
            })
        })
    }

    #[test]
    fn zero_and_bilinear_are_cocycles() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        assert!(Cocycle::zero(&c, &a).is_valid());
        let psi = heisenberg_psi(3);
        assert!(brute_force_is_cocycle(&psi));
        assert!(psi.is_valid());
        // ψ(c, c') = c_1 c'_2
        let x = c.element(&[1, 2]).unwrap();
        let y = c.element(&[2, 2]).unwrap();
        assert_eq!(psi.get(&x, &y).coords(), &[2]);
        let mixed = Cocycle::from_bilinear(
            &g(&[9, 3]),
            &g(&[3, 9]),
            &[vec![vec![1, 3], vec![2, 0]], vec![vec![0, 6], vec![1, 3]]],
        )
        .unwrap();
        assert!(brute_force_is_cocycle(&mixed));
        assert!(mixed.is_valid());
    }

    #[test]
    fn corrupted_entry_detected() {
        let psi = heisenberg_psi(3);
        let mut entries = psi.entries();
        entries[4 * 9 + 5] = g(&[3]).add(&entries[4 * 9 + 5], &g(&[3]).unit(0));
        let bad = Cocycle::from_entries_unchecked(g(&[3, 3]), g(&[3]), entries).unwrap();
        assert!(!brute_force_is_cocycle(&bad));
        let v = bad.validate().unwrap_err();
        assert_eq!(v.identity, "cocycle identity");
        assert!(matches!(
            Cocycle::new(g(&[3, 3]), g(&[3]), bad.entries()),
            Err(CocycleError::Violation(_))
        ));
    }

    #[test]
    fn violation_is_lowest_triple() {
        // ψ ≡ 0 except ψ(0,1) = 1
        let (c, a) = (g(&[3]), g(&[3]));
        let mut entries = vec![a.zero(); 9];
        entries[1] = a.element(&[1]).unwrap();
        let bad = Cocycle::from_entries_unchecked(c, a, entries).unwrap();
        let v = bad.validate().unwrap_err();
        assert_eq!((v.c1.coords(), v.c2.coords()), (&[0u64][..], &[0u64][..]));
    }

    #[test]
    fn coboundary_examples() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let psi = heisenberg_psi(3);
        assert_eq!(psi.add_coboundary(&OneChain::zero(&c, &a)), psi);

        let q = OneChain::from_fn(&c, &a, |x| a.reduce(&[(x.coords()[0] * x.coords()[0] + 2 * x.coords()[1]) as i64 + 1]));
        let cob = Cocycle::zero(&c, &a).add_coboundary(&q);
        assert!(cob.is_symmetric());
        assert!(cob.is_valid());
        assert!(psi.add_coboundary(&q).is_valid());

        let shifted = Cocycle::from_fn_unchecked(&c, &a, |_, _| a.element(&[2]).unwrap());
        let mut q0 = OneChain::zero(&c, &a);
        q0.values[0] = a.neg(&shifted.at(0, 0));
        assert!(shifted.add_coboundary(&q0).is_centered());
    }

    #[test]
    fn centering() {
        let psi = heisenberg_psi(3);
        assert_eq!(psi.center().cocycle, psi);
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let constant = Cocycle::from_fn_unchecked(&c, &a, |_, _| a.element(&[1]).unwrap());
        assert!(constant.is_valid());
        let centered = constant.center();
        assert!(centered.cocycle.is_centered());
        for x in c.elements() {
            assert!(centered.cocycle.get(&c.zero(), &x).is_zero());
            assert!(centered.cocycle.get(&x, &c.zero()).is_zero());
        }
        assert_eq!(constant.add_coboundary(&centered.chain), centered.cocycle);
    }

    #[test]
    fn equalizing() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        assert_eq!(Cocycle::zero(&c, &a).equalize().unwrap().cocycle, Cocycle::zero(&c, &a));
        let psi = heisenberg_psi(3);
        let q = OneChain::from_fn(&c, &a, |x| a.reduce(&[x.coords()[1] as i64 * 2 + 1]));
        let raw = psi.add_coboundary(&q);
        let eq = raw.equalize().unwrap();
        assert!(eq.cocycle.is_equalized() && eq.cocycle.is_centered() && eq.cocycle.is_valid());
        assert_eq!(raw.add_coboundary(&eq.chain), eq.cocycle);
        // idempotent
        assert_eq!(eq.cocycle.equalize().unwrap().cocycle, eq.cocycle);
        // −ψ(c1,c2) = ψ(−c2,−c1)
        for x in c.elements() {
            for y in c.elements() {
                assert_eq!(a.neg(&eq.cocycle.get(&x, &y)), eq.cocycle.get(&c.neg(&y), &c.neg(&x)));
            }
        }
        // nonsplit Z/9 extension
        let carry = Cocycle::carry(&g(&[3]), &g(&[3]), 0, &g(&[3]).element(&[1]).unwrap());
        let eq = carry.equalize().unwrap();
        assert!(eq.cocycle.is_equalized() && eq.cocycle.is_valid());
    }

    #[test]
    fn equalize_needs_odd_center() {
        // D8: A = Z/2, C = Z/2 ⊕ Z/2, ψ = c1 c1' + c1 c2'
        let d8 = Cocycle::from_bilinear(&g(&[2, 2]), &g(&[2]), &[vec![vec![1], vec![1]], vec![vec![0], vec![0]]]).unwrap();
        assert!(d8.is_valid());
        assert!(matches!(d8.equalize(), Err(CocycleError::NotTwoDivisible(2))));
    }

    #[test]
    fn eq5_holds_for_valid_cocycles() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let q = OneChain::from_fn(&c, &a, |x| a.reduce(&[x.coords()[0] as i64 + 2]));
        for psi in [heisenberg_psi(3), heisenberg_psi(3).add_coboundary(&q)] {
            for x in c.elements() {
                assert_eq!(psi.get(&x, &c.neg(&x)), psi.get(&c.neg(&x), &x));
            }
        }
    }

    #[test]
    fn nondegeneracy() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let sym = Cocycle::from_bilinear(&c, &a, &[vec![vec![1], vec![1]], vec![vec![1], vec![0]]]).unwrap();
        assert!(!sym.is_nondegenerate());
        assert!(heisenberg_psi(3).is_nondegenerate());
        assert!(Cocycle::zero(&FinAbGroup::trivial(), &a).is_nondegenerate());
        // coboundary-invariant
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let q = OneChain::random(&c, &a, &mut rng, false);
            assert!(heisenberg_psi(3).add_coboundary(&q).is_nondegenerate());
            assert!(!sym.add_coboundary(&q).is_nondegenerate());
        }
    }

    #[test]
    fn skew_bihoms() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        assert!(SkewBihom::zero(&c, &a).is_valid());
        assert!(!SkewBihom::zero(&c, &a).is_nondegenerate());
        assert!(SkewBihom::zero(&FinAbGroup::trivial(), &a).is_nondegenerate());
        let sympl = SkewBihom::from_bilinear(&c, &a, &[vec![vec![0], vec![1]], vec![vec![0], vec![0]]]).unwrap();
        // matrix [[0,1],[−1,0]]
        assert_eq!(sympl.get(&c.unit(1), &c.unit(0)).coords(), &[2]);
        assert!(sympl.is_valid());
        assert!(sympl.is_nondegenerate());
        let sym = Cocycle::from_bilinear(&c, &a, &[vec![vec![1], vec![0]], vec![vec![0], vec![1]]]).unwrap();
        let bad = SkewBihom::from_entries_unchecked(c.clone(), a.clone(), sym.entries()).unwrap();
        assert!(!bad.is_valid());
        // skew but not additive
        let mut entries = sympl.entries();
        let (i, j) = (c.index(&c.element(&[1, 1]).unwrap()), c.index(&c.element(&[2, 0]).unwrap()));
        entries[i * 9 + j] = a.add(&entries[i * 9 + j], &a.unit(0));
        entries[j * 9 + i] = a.sub(&entries[j * 9 + i], &a.unit(0));
        let bad = SkewBihom::from_entries_unchecked(c, a, entries).unwrap();
        assert!(!bad.is_valid());
    }

    #[test]
    fn bilinear_constructor() {
        let (c, a) = (g(&[3, 3]), g(&[3]));
        let zero = Cocycle::from_bilinear(&c, &a, &[vec![vec![0], vec![0]], vec![vec![0], vec![0]]]).unwrap();
        assert_eq!(zero, Cocycle::zero(&c, &a));
        assert!(matches!(
            Cocycle::from_bilinear(&g(&[3]), &g(&[5]), &[vec![vec![1]]]),
            Err(CocycleError::IncompatibleModuli { .. })
        ));
        assert!(matches!(Cocycle::from_bilinear(&c, &a, &[vec![vec![1]]]), Err(CocycleError::Shape { .. })));
    }

    #[test]
    fn sampled_validation() {
        let psi = heisenberg_psi(3);
        assert!(psi.validate_sampled(1).is_ok());
        let mut entries = psi.entries();
        for e in entries.iter_mut().skip(10).step_by(3) {
            *e = g(&[3]).element(&[1]).unwrap();
        }
        let bad = Cocycle::from_entries_unchecked(g(&[3, 3]), g(&[3]), entries).unwrap();
        assert!(bad.validate_sampled(1).is_err());
    }
}
