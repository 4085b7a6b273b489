//! Groups `B = A × C` of nilpotency class two, multiplied by
//! `(a1,c1)·(a2,c2) = (a1 + a2 + ψ(c1,c2), c1 + c2)`.
//!
//! The stored cocycle is always centered so the identity is `(0,0)`. The
//! cocycle the group was built from is kept alongside, together with the
//! renaming chain, so the general inverse formula can still be exercised.
//!
//! Elements are indexed by `index_A(a) + |A| · index_C(c)`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbElement, FinAbGroup};
use crate::cocycle::{Cocycle, CocycleError, OneChain};

/// Largest group for which a dense multiplication table is cached.
pub const MUL_TABLE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("center mismatch: {witness} is central but lies outside A")]
    CenterMismatch { witness: GroupElement },
    #[error("group of order {0} is not 2-rootable")]
    NotTwoRootable(u64),
    #[error("catalog groups need an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("catalog parameter {0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse catalog name {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: AbElement,
    pub c: AbElement,
}

impl GroupElement {
    pub fn new(a: AbElement, c: AbElement) -> Self {
        GroupElement { a, c }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.a, self.c)
    }
}

/// Partition of a group into conjugacy classes. Each class is sorted and
/// classes are ordered by their least element index (the representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|k| k[0]).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Class2Group {
    a: FinAbGroup,
    c: FinAbGroup,
    psi: Cocycle,
    raw_psi: Cocycle,
    centering: OneChain,
    strict_center: bool,
    mul_table: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u64>>,
}

impl Class2Group {
    /// Validates `ψ` exhaustively, then centers it.
    pub fn new(psi: Cocycle) -> Result<Self, GroupError> {
        psi.validate().map_err(CocycleError::Violation)?;
        Ok(Class2Group::assemble(psi, false))
    }

    /// Like [`Class2Group::new`] but samples `10·|C|` triples instead of the
    /// full cubic sweep.
    pub fn new_sampled(psi: Cocycle, seed: u64) -> Result<Self, GroupError> {
        psi.validate_sampled(seed).map_err(CocycleError::Violation)?;
        Ok(Class2Group::assemble(psi, false))
    }

    /// Additionally requires `A` to be exactly the center, i.e. `ψ`
    /// non-degenerate.
    pub fn new_strict(psi: Cocycle) -> Result<Self, GroupError> {
        let g = Class2Group::new(psi)?;
        g.check_strict_center()?;
        Ok(Class2Group { strict_center: true, ..g })
    }

    /// For cocycles that are valid by construction (bilinear forms, products
    /// of valid cocycles).
    pub(crate) fn from_trusted(psi: Cocycle) -> Self {
        debug_assert!(psi.c().size() > 300 || psi.is_valid());
        Class2Group::assemble(psi, false)
    }

    fn assemble(raw_psi: Cocycle, strict_center: bool) -> Self {
        let centered = raw_psi.center();
        Class2Group {
            a: raw_psi.a().clone(),
            c: raw_psi.c().clone(),
            psi: centered.cocycle,
            raw_psi,
            centering: centered.chain,
            strict_center,
            mul_table: OnceLock::new(),
            orders: OnceLock::new(),
        }
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn c(&self) -> &FinAbGroup {
        &self.c
    }

    /// The centered cocycle defining the multiplication.
    pub fn psi(&self) -> &Cocycle {
        &self.psi
    }

    /// The cocycle as supplied, before centering.
    pub fn raw_psi(&self) -> &Cocycle {
        &self.raw_psi
    }

    pub fn strict_center(&self) -> bool {
        self.strict_center
    }

    pub fn order(&self) -> u64 {
        self.a.order() * self.c.order()
    }

    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn is_odd(&self) -> bool {
        self.order() % 2 == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(self.a.zero(), self.c.zero())
    }

    pub fn index(&self, x: &GroupElement) -> usize {
        self.a.index(&x.a) + self.a.size() * self.c.index(&x.c)
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        let na = self.a.size();
        GroupElement::new(self.a.element_at(idx % na), self.c.element_at(idx / na))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.a.contains(&x.a) && self.c.contains(&x.c)
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let twist = self.psi.get(&x.c, &y.c);
        GroupElement::new(self.a.add(&self.a.add(&x.a, &y.a), &twist), self.c.add(&x.c, &y.c))
    }

    /// `(−a − ψ(c,−c) − ψ(0,0), −c)`; the last term vanishes for the stored
    /// centered cocycle.
    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        inverse_formula(&self.psi, x)
    }

    pub fn pow(&self, x: &GroupElement, k: u64) -> GroupElement {
        let mut result = self.identity();
        let mut base = x.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        result
    }

    /// `x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.mul(x, y);
        self.mul(&self.mul(&xy, &self.inv(x)), &self.inv(y))
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Product by element index, through the multiplication table when the
    /// group is small enough to have one.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.mul_table() {
            return t[i * self.size() + j] as usize;
        }
        self.index(&self.mul(&self.element(i), &self.element(j)))
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.index(&self.inv(&self.element(i)))
    }

    /// Dense multiplication table, built once. `None` above
    /// [`MUL_TABLE_LIMIT`] elements.
    pub fn mul_table(&self) -> Option<&[u32]> {
        if self.size() > MUL_TABLE_LIMIT {
            return None;
        }
        Some(self.mul_table.get_or_init(|| {
            use rayon::prelude::*;
            let n = self.size();
            let elems: Vec<GroupElement> = self.elements().collect();
            (0..n * n)
                .into_par_iter()
                .map(|k| self.index(&self.mul(&elems[k / n], &elems[k % n])) as u32)
                .collect()
        }))
    }

    /// `(−ψ(0,0), 0)`: the identity for the multiplication by the raw cocycle.
    pub fn raw_identity(&self) -> GroupElement {
        GroupElement::new(self.a.neg(&self.raw_psi.at(0, 0)), self.c.zero())
    }

    /// Multiplication by the raw (uncentered) cocycle.
    pub fn raw_mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let twist = self.raw_psi.get(&x.c, &y.c);
        GroupElement::new(self.a.add(&self.a.add(&x.a, &y.a), &twist), self.c.add(&x.c, &y.c))
    }

    /// The general inverse formula evaluated on the raw cocycle.
    pub fn raw_inv(&self, x: &GroupElement) -> GroupElement {
        inverse_formula(&self.raw_psi, x)
    }

    /// Raw coordinates → stored (centered) coordinates: `(a − q(c), c)`.
    pub fn from_raw(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(self.a.sub(&x.a, self.centering.get(&x.c)), x.c.clone())
    }

    pub fn to_raw(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(self.a.add(&x.a, self.centering.get(&x.c)), x.c.clone())
    }

    /// Standard generators of `A` followed by lifts `(0, f_j)` of the
    /// generators of `C`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut g: Vec<GroupElement> =
            self.a.basis().into_iter().map(|e| GroupElement::new(e, self.c.zero())).collect();
        g.extend(self.c.basis().into_iter().map(|f| GroupElement::new(self.a.zero(), f)));
        g
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        self.orders()[self.index(x)]
    }

    /// Order of every element, in index order.
    pub fn orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            let n = self.size();
            let mut orders = vec![0u64; n];
            orders[0] = 1;
            for i in 1..n {
                if orders[i] != 0 {
                    continue;
                }
                // walk the cyclic subgroup once; x^k has order ord/gcd(ord,k)
                let x = self.element(i);
                let mut powers = vec![i];
                let mut y = x.clone();
                loop {
                    y = self.mul(&y, &x);
                    let j = self.index(&y);
                    if j == 0 {
                        break;
                    }
                    powers.push(j);
                }
                let ord = powers.len() as u64 + 1;
                for (k, &j) in powers.iter().enumerate() {
                    if orders[j] == 0 {
                        orders[j] = ord / num_integer::gcd(ord, k as u64 + 1);
                    }
                }
            }
            orders
        })
    }

    /// The unique square root `x^((ord x + 1)/2)` in an odd-order group.
    pub fn half_element(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        if !self.is_odd() {
            return Err(GroupError::NotTwoRootable(self.order()));
        }
        let ord = self.element_order(x);
        Ok(self.pow(x, (ord + 1) / 2))
    }

    pub fn commutes(&self, x: &GroupElement, y: &GroupElement) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Elements commuting with every generator, hence with everything.
    pub fn center_of(&self) -> Vec<GroupElement> {
        let gens = self.generators();
        self.elements().filter(|x| gens.iter().all(|g| self.commutes(x, g))).collect()
    }

    /// Confirms the center is exactly `A × {0}`.
    pub fn check_strict_center(&self) -> Result<(), GroupError> {
        match self.center_of().into_iter().find(|x| !x.c.is_zero()) {
            Some(witness) => Err(GroupError::CenterMismatch { witness }),
            None => Ok(()),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|x| gens.iter().all(|y| self.commutes(x, y)))
    }

    /// Every commutator is central. Checking `[x, g]` for all `x` and
    /// generators `g` suffices, since `[x, gh] = [x,g]·g[x,h]g⁻¹`.
    pub fn class_at_most_two(&self) -> bool {
        let gens = self.generators();
        self.elements()
            .all(|x| gens.iter().all(|g| {
                let k = self.commutator(&x, g);
                gens.iter().all(|h| self.commutes(&k, h))
            }))
    }

    /// Conjugacy classes by closure under conjugation by generators.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.size();
        let gens = self.generators();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for seed in 0..n {
            if class_of[seed] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![seed];
            class_of[seed] = id;
            let mut queue = VecDeque::from([seed]);
            while let Some(i) = queue.pop_front() {
                let x = self.element(i);
                for g in &gens {
                    let j = self.index(&self.conjugate(g, &x));
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    /// Exhaustive associativity for small groups, `samples` random triples
    /// otherwise. Returns the first failing triple.
    pub fn check_associativity(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> Option<[usize; 3]> {
        use rayon::prelude::*;
        let n = self.size();
        if n <= exhaustive_limit {
            let table = self.mul_table();
            let m = |i: usize, j: usize| match table {
                Some(t) => t[i * n + j] as usize,
                None => self.mul_idx(i, j),
            };
            (0..n).into_par_iter().find_map_first(|i| {
                for j in 0..n {
                    let ij = m(i, j);
                    for k in 0..n {
                        if m(ij, k) != m(i, m(j, k)) {
                            return Some([i, j, k]);
                        }
                    }
                }
                None
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).find_map(|_| {
                let t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                (self.mul_idx(self.mul_idx(t[0], t[1]), t[2]) != self.mul_idx(t[0], self.mul_idx(t[1], t[2])))
                    .then_some(t)
            })
        }
    }
}

fn inverse_formula(psi: &Cocycle, x: &GroupElement) -> GroupElement {
    let (a, c) = (psi.a(), psi.c());
    let neg_c = c.neg(&x.c);
    let t = a.add(&psi.get(&x.c, &neg_c), &psi.at(0, 0));
    GroupElement::new(a.sub(&a.neg(&x.a), &t), neg_c)
}

/// Whether the dense element map `f` is a homomorphism `source → target`.
pub fn hom_check(source: &Class2Group, target: &Class2Group, f: &[usize]) -> bool {
    first_hom_violation(source, target, f).is_none()
}

pub(crate) fn first_hom_violation(source: &Class2Group, target: &Class2Group, f: &[usize]) -> Option<(usize, usize)> {
    use rayon::prelude::*;
    let n = source.size();
    if f.len() != n || f.iter().any(|&y| y >= target.size()) {
        return Some((0, 0));
    }
    source.mul_table();
    target.mul_table();
    (0..n).into_par_iter().find_map_first(|i| {
        (0..n)
            .find(|&j| f[source.mul_idx(i, j)] != target.mul_idx(f[i], f[j]))
            .map(|j| (i, j))
    })
}

/// Named example groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Catalog {
    /// `A = Z/p`, `C = (Z/p)²`, `ψ(c,c') = c_1·c'_2`; order `p³`.
    Heisenberg(u64),
    /// `A = Z/p`, `C = (Z/p)^{2n}`, `ψ(c,c') = Σ_{i<n} c_i·c'_{n+i}`;
    /// order `p^{2n+1}`, exponent `p`.
    Extraspecial { p: u64, n: usize },
    /// `ψ ≡ 0`, with the whole group as `A`.
    Abelian(Vec<u64>),
    DirectProduct(Box<Catalog>, Box<Catalog>),
}

fn check_odd_prime(p: u64) -> Result<(), GroupError> {
    if p % 2 == 0 {
        return Err(GroupError::EvenPrime(p));
    }
    if p < 3 || (3..).step_by(2).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(GroupError::NotPrime(p));
    }
    Ok(())
}

impl Catalog {
    pub fn heisenberg(p: u64) -> Result<Class2Group, GroupError> {
        Catalog::Heisenberg(p).build()
    }

    pub fn extraspecial(p: u64, n: usize) -> Result<Class2Group, GroupError> {
        Catalog::Extraspecial { p, n }.build()
    }

    pub fn abelian(moduli: &[u64]) -> Result<Class2Group, GroupError> {
        Catalog::Abelian(moduli.to_vec()).build()
    }

    pub fn build(&self) -> Result<Class2Group, GroupError> {
        Ok(Class2Group::from_trusted(self.cocycle()?))
    }

    pub fn cocycle(&self) -> Result<Cocycle, GroupError> {
        match self {
            Catalog::Heisenberg(p) => Catalog::Extraspecial { p: *p, n: 1 }.cocycle(),
            Catalog::Extraspecial { p, n } => {
                check_odd_prime(*p)?;
                let a = FinAbGroup::new(vec![*p]).map_err(CocycleError::from)?;
                let c = FinAbGroup::new(vec![*p; 2 * n]).map_err(CocycleError::from)?;
                let mut m = vec![vec![vec![0i64]; 2 * n]; 2 * n];
                for (i, row) in m.iter_mut().enumerate().take(*n) {
                    row[n + i] = vec![1];
                }
                Ok(Cocycle::from_bilinear(&c, &a, &m)?)
            }
            Catalog::Abelian(moduli) => {
                let a = FinAbGroup::new(moduli.clone()).map_err(CocycleError::from)?;
                Ok(Cocycle::zero(&FinAbGroup::trivial(), &a))
            }
            Catalog::DirectProduct(x, y) => Ok(direct_product_cocycle(&x.cocycle()?, &y.cocycle()?)),
        }
    }

    /// Parses `heisenberg:p`, `extraspecial:p:n`, `abelian:[m1,m2,…]` and
    /// `product(<name>,<name>)`.
    pub fn parse(s: &str) -> Result<Catalog, GroupError> {
        let s = s.trim();
        let bad = || GroupError::Parse(s.to_string());
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0i32;
            let split = inner.char_indices().find(|&(_, ch)| {
                match ch {
                    '(' | '[' => depth += 1,
                    ')' | ']' => depth -= 1,
                    _ => {}
                }
                ch == ',' && depth == 0
            });
            let (i, _) = split.ok_or_else(bad)?;
            return Ok(Catalog::DirectProduct(
                Box::new(Catalog::parse(&inner[..i])?),
                Box::new(Catalog::parse(&inner[i + 1..])?),
            ));
        }
        let (name, rest) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "heisenberg" => Ok(Catalog::Heisenberg(num(rest)?)),
            "extraspecial" => {
                let (p, n) = rest.split_once(':').ok_or_else(bad)?;
                Ok(Catalog::Extraspecial { p: num(p)?, n: num(n)? as usize })
            }
            "abelian" => {
                let list = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
                let moduli = list.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
                Ok(Catalog::Abelian(moduli))
            }
            _ => Err(bad()),
        }
    }

    /// The built-in listing, ordered by group order then name.
    pub fn listing() -> Vec<Catalog> {
        let mut all = vec![
            Catalog::Abelian(vec![3]),
            Catalog::Abelian(vec![5]),
            Catalog::Abelian(vec![9]),
            Catalog::Abelian(vec![3, 3]),
            Catalog::Abelian(vec![3, 9]),
            Catalog::Abelian(vec![5, 5]),
            Catalog::Heisenberg(3),
            Catalog::Heisenberg(5),
            Catalog::Heisenberg(7),
            Catalog::Extraspecial { p: 3, n: 2 },
            Catalog::DirectProduct(Box::new(Catalog::Heisenberg(3)), Box::new(Catalog::Abelian(vec![3]))),
        ];
        all.sort_by_key(|g| (g.order(), g.to_string()));
        all
    }

    pub fn order(&self) -> u64 {
        match self {
            Catalog::Heisenberg(p) => p.pow(3),
            Catalog::Extraspecial { p, n } => p.pow(2 * *n as u32 + 1),
            Catalog::Abelian(m) => m.iter().product(),
            Catalog::DirectProduct(x, y) => x.order() * y.order(),
        }
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Catalog::Extraspecial { p, n } => write!(f, "extraspecial:{p}:{n}"),
            Catalog::Abelian(m) => {
                write!(f, "abelian:[")?;
                for (i, x) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Catalog::DirectProduct(x, y) => write!(f, "product({x},{y})"),
        }
    }
}

/// `ψ((c1,c2),(c1',c2')) = (ψ1(c1,c1'), ψ2(c2,c2'))` on `C1 ⊕ C2 → A1 ⊕ A2`.
pub fn direct_product_cocycle(x: &Cocycle, y: &Cocycle) -> Cocycle {
    let c = x.c().direct_sum(y.c()).expect("direct sum of valid groups");
    let a = x.a().direct_sum(y.a()).expect("direct sum of valid groups");
    let n1 = x.c().size();
    Cocycle::from_fn_unchecked(&c, &a, |i, j| {
        let mut v = x.at(i % n1, j % n1).into_coords();
        v.extend(y.at(i / n1, j / n1).into_coords());
        a.element(&v).expect("reduced")
    })
}
