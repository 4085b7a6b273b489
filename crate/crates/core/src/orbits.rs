//! Coadjoint orbits and the character formula.
//!
//! Characters of the additive group of `L(B)` are exponent vectors on its
//! invariant-factor decomposition `G`. The group acts by
//! `Ad*(b)(χ)(l) = χ(l − [b,l])`; each orbit `Ω` of size `n²` gives the
//! irreducible character `b ↦ n·χ(b)` on `Stab χ` and `0` elsewhere.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::smith::{smith_decompose, Presentation, SmithDecomposition};
use crate::abelian::{AbElement, AbelianError, FinAbGroup};
use crate::cyclo::{CycloSum, RootValue};
use crate::lazard::{lie_ring_of, LazardError, LieElement, LieRing};
use crate::nilgroup::{Class2Group, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("group of order {0} is not of odd order")]
    EvenOrder(u64),
    #[error("internal presentation error: {0}")]
    InternalPresentation(String),
    #[error("orbit size {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("orbit counts disagree: {ad} Ad-orbits, {coad} Ad*-orbits, {classes} conjugacy classes")]
    CountMismatch { ad: usize, coad: usize, classes: usize },
    #[error(transparent)]
    Lazard(#[from] LazardError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// The additive group of a Lie ring in invariant-factor form.
#[derive(Debug, Clone)]
pub struct AdditiveStructure {
    source: LieRing,
    group: FinAbGroup,
    smith: SmithDecomposition,
    to_table: Vec<u32>,
    from_table: Vec<u32>,
}

impl AdditiveStructure {
    /// Presents the additive group as `⟨x_i, y_j | d_i x_i = 0, m_j y_j = σ_j⟩`
    /// with `x_i = (e_i, 0)`, `y_j = (0, f_j)` and
    /// `σ_j = Σ_{t=1}^{m_j−1} φ(t f_j, f_j)`, reduces it to Smith form, and
    /// verifies the resulting coordinate map is an additive bijection.
    pub fn new(ring: &LieRing) -> Result<Self, OrbitError> {
        let (a, c) = (ring.a(), ring.c());
        let (ra, rc) = (a.rank(), c.rank());
        let mut relations = Vec::with_capacity(ra + rc);
        for (i, &d) in a.moduli().iter().enumerate() {
            let mut row = vec![0i64; ra + rc];
            row[i] = d as i64;
            relations.push(row);
        }
        for (j, &m) in c.moduli().iter().enumerate() {
            let f = c.unit(j);
            let mut sigma = a.zero();
            let mut tf = f.clone();
            for _ in 1..m {
                sigma = a.add(&sigma, &ring.phi().get(&tf, &f));
                tf = c.add(&tf, &f);
            }
            let mut row = vec![0i64; ra + rc];
            for (k, &s) in sigma.coords().iter().enumerate() {
                row[k] = -(s as i64);
            }
            row[ra + j] = m as i64;
            relations.push(row);
        }
        let smith = smith_decompose(&Presentation::new(ra + rc, relations))?;
        let group = smith.group.clone();
        if group.order() != ring.order() {
            return Err(OrbitError::InternalPresentation(format!(
                "presented order {} differs from ring order {}",
                group.order(),
                ring.order()
            )));
        }

        // α = a − s(c) where (s(c), c) = Σ c_j·y_j in the ring.
        let na = a.size();
        let y: Vec<LieElement> = c.basis().into_iter().map(|f| GroupElement::new(a.zero(), f)).collect();
        let mut to_table = vec![0u32; ring.size()];
        for ci in 0..c.size() {
            let cc = c.element_at(ci);
            let mut s = ring.zero();
            for (j, &k) in cc.coords().iter().enumerate() {
                s = ring.add(&s, &ring.scale(&y[j], k as i64));
            }
            for ai in 0..na {
                let alpha = a.sub(&a.element_at(ai), &s.a);
                let pres: Vec<i64> =
                    alpha.coords().iter().chain(cc.coords()).map(|&v| v as i64).collect();
                to_table[ai + na * ci] = group.index(&smith.forward(&pres)) as u32;
            }
        }
        let mut from_table = vec![u32::MAX; ring.size()];
        for (l, &g) in to_table.iter().enumerate() {
            if from_table[g as usize] != u32::MAX {
                return Err(OrbitError::InternalPresentation(format!("coordinate map is not injective at {l}")));
            }
            from_table[g as usize] = l as u32;
        }

        let structure = AdditiveStructure { source: ring.clone(), group, smith, to_table, from_table };
        structure.verify_additive()?;
        Ok(structure)
    }

    /// `to(x + g) = to(x) + to(g)` for all `x` and every additive generator
    /// `g`; with bijectivity this makes `to` an isomorphism.
    fn verify_additive(&self) -> Result<(), OrbitError> {
        let ring = &self.source;
        let gens: Vec<LieElement> = generators(ring.a(), ring.c());
        let bad = (0..ring.size()).into_par_iter().find_first(|&i| {
            let x = ring.element(i);
            let tx = self.to_coords(&x);
            gens.iter().any(|g| {
                self.to_coords(&ring.add(&x, g)) != self.group.add(&tx, &self.to_coords(g))
            })
        });
        match bad {
            Some(i) => Err(OrbitError::InternalPresentation(format!("coordinate map not additive at {}", ring.element(i)))),
            None => Ok(()),
        }
    }

    pub fn source(&self) -> &LieRing {
        &self.source
    }

    /// The invariant-factor group `G`.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    pub fn to_coords(&self, l: &LieElement) -> AbElement {
        self.group.element_at(self.to_index(self.source.index(l)))
    }

    pub fn from_coords(&self, g: &AbElement) -> LieElement {
        self.source.element(self.from_table[self.group.index(g)] as usize)
    }

    pub(crate) fn to_index(&self, ring_index: usize) -> usize {
        self.to_table[ring_index] as usize
    }
}

fn generators(a: &FinAbGroup, c: &FinAbGroup) -> Vec<GroupElement> {
    let mut g: Vec<GroupElement> = a.basis().into_iter().map(|e| GroupElement::new(e, c.zero())).collect();
    g.extend(c.basis().into_iter().map(|f| GroupElement::new(a.zero(), f)));
    g
}

/// A character `χ_t` of `G`, given by its exponent vector `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Character(pub AbElement);

impl Character {
    pub fn exponents(&self) -> &[u64] {
        self.0.coords()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.coords().iter().map(u64::to_string).collect();
        write!(f, "t={}", parts.join("."))
    }
}

/// A coadjoint orbit, members sorted in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Orbit {
    members: Vec<Character>,
}

impl Orbit {
    pub fn new(mut members: Vec<Character>) -> Self {
        members.sort();
        members.dedup();
        Orbit { members }
    }

    pub fn members(&self) -> &[Character] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// The least member.
    pub fn representative(&self) -> &Character {
        &self.members[0]
    }

    pub fn contains(&self, chi: &Character) -> bool {
        self.members.binary_search(chi).is_ok()
    }

    /// `n` with `n² = #Ω`.
    pub fn dimension(&self) -> Result<u64, OrbitError> {
        let s = self.size() as u64;
        let n = s.isqrt();
        if n * n == s {
            Ok(n)
        } else {
            Err(OrbitError::NotPerfectSquare(self.size()))
        }
    }

    /// Canonical row order: ascending size, then representative.
    fn sort_key(&self) -> (usize, &Character) {
        (self.size(), self.representative())
    }
}

/// Counts compared by [`OrbitMethod::duality_count_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ad_orbits: usize,
    pub coad_orbits: usize,
    pub conjugacy_classes: usize,
}

/// Orbit-method data for a class-two group of odd order.
#[derive(Debug, Clone)]
pub struct OrbitMethod {
    group: Class2Group,
    additive: AdditiveStructure,
    generators: Vec<GroupElement>,
    /// Lie elements corresponding to the unit vectors of `G`.
    basis_lie: Vec<LieElement>,
}

impl OrbitMethod {
    pub fn new(group: &Class2Group) -> Result<Self, OrbitError> {
        if !group.is_odd() {
            return Err(OrbitError::EvenOrder(group.order()));
        }
        let ring = lie_ring_of(group)?;
        let additive = AdditiveStructure::new(&ring)?;
        let basis_lie = additive.group().basis().iter().map(|u| additive.from_coords(u)).collect();
        Ok(OrbitMethod { group: group.clone(), generators: group.generators(), additive, basis_lie })
    }

    pub fn group(&self) -> &Class2Group {
        &self.group
    }

    pub fn ring(&self) -> &LieRing {
        self.additive.source()
    }

    pub fn additive(&self) -> &AdditiveStructure {
        &self.additive
    }

    /// `e`, the exponent of `G`; character values are powers of `ζ_e`.
    pub fn root_order(&self) -> u64 {
        self.additive.group().exponent()
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.additive.group().elements().map(Character)
    }

    pub fn character_index(&self, chi: &Character) -> usize {
        self.additive.group().index(&chi.0)
    }

    pub fn trivial_character(&self) -> Character {
        Character(self.additive.group().zero())
    }

    /// `k` with `χ(l) = ζ_e^k`.
    pub fn eval(&self, chi: &Character, l: &LieElement) -> u64 {
        let g = self.additive.group();
        g.pairing(&chi.0, &self.additive.to_coords(l))
    }

    /// `−χ`.
    pub fn negate(&self, chi: &Character) -> Character {
        Character(self.additive.group().neg(&chi.0))
    }

    /// `Ad(b)(l) = l + [b,l]`.
    pub fn ad(&self, b: &GroupElement, l: &LieElement) -> LieElement {
        let ring = self.ring();
        ring.add(l, &ring.bracket(b, l))
    }

    /// `Ad(b)(l) = b·l·b⁻¹`, read in the Lie ring on the same set.
    pub fn ad_by_conjugation(&self, b: &GroupElement, l: &LieElement) -> LieElement {
        self.group.conjugate(b, l)
    }

    /// `Ad*(b)(χ)(l) = χ(l − [b,l])`, recovered from values on `G`'s basis.
    pub fn coad(&self, b: &GroupElement, chi: &Character) -> Character {
        let ring = self.ring();
        let values: Vec<u64> = self
            .basis_lie
            .iter()
            .map(|l| self.eval(chi, &ring.sub(l, &ring.bracket(b, l))))
            .collect();
        Character(self.additive.group().character_from_basis_values(&values))
    }

    /// `Ad*(b⁻¹)(χ)(l) = χ(Ad(b)(l))`: the definition, evaluated on all `l`.
    pub fn coad_by_definition_matches(&self, b: &GroupElement, chi: &Character) -> bool {
        let image = self.coad(b, chi);
        let b_inv = self.group.inv(b);
        self.ring().elements().all(|l| self.eval(&image, &l) == self.eval(chi, &self.ad(&b_inv, &l)))
    }

    /// Permutation of character indices induced by `coad(b)`.
    pub fn coad_permutation(&self, b: &GroupElement) -> Vec<u32> {
        let g = self.additive.group();
        (0..g.size())
            .into_par_iter()
            .map(|i| g.index(&self.coad(b, &Character(g.element_at(i))).0) as u32)
            .collect()
    }

    /// Permutation of ring indices induced by `Ad(b)`.
    pub fn ad_permutation(&self, b: &GroupElement) -> Vec<u32> {
        let ring = self.ring();
        (0..ring.size())
            .into_par_iter()
            .map(|i| ring.index(&self.ad(b, &ring.element(i))) as u32)
            .collect()
    }

    /// All coadjoint orbits in canonical order: ascending size, then least
    /// member.
    pub fn enumerate_orbits(&self) -> Vec<Orbit> {
        let perms: Vec<Vec<u32>> = self.generators.par_iter().map(|b| self.coad_permutation(b)).collect();
        let g = self.additive.group();
        let mut orbits: Vec<Orbit> = closure_classes(g.size(), &perms)
            .into_iter()
            .map(|idx| Orbit::new(idx.into_iter().map(|i| Character(g.element_at(i))).collect()))
            .collect();
        orbits.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        orbits
    }

    /// Number of adjoint orbits on `L(B)`.
    pub fn count_ad_orbits(&self) -> usize {
        let perms: Vec<Vec<u32>> = self.generators.par_iter().map(|b| self.ad_permutation(b)).collect();
        closure_classes(self.ring().size(), &perms).len()
    }

    /// `#Ad-orbits = #Ad*-orbits = #conjugacy classes`.
    pub fn duality_count_check(&self) -> Result<DualityReport, OrbitError> {
        let report = DualityReport {
            ad_orbits: self.count_ad_orbits(),
            coad_orbits: self.enumerate_orbits().len(),
            conjugacy_classes: self.group.conjugacy_classes().len(),
        };
        if report.ad_orbits != report.coad_orbits || report.coad_orbits != report.conjugacy_classes {
            return Err(OrbitError::CountMismatch {
                ad: report.ad_orbits,
                coad: report.coad_orbits,
                classes: report.conjugacy_classes,
            });
        }
        Ok(report)
    }

    /// `−Ω`.
    pub fn dual_orbit(&self, orbit: &Orbit) -> Orbit {
        Orbit::new(orbit.members().iter().map(|chi| self.negate(chi)).collect())
    }

    /// `b ∈ Stab χ` iff `χ([b,l]) = 1` for every additive generator `l`.
    pub fn in_stabilizer(&self, chi: &Character, b: &GroupElement) -> bool {
        let ring = self.ring();
        self.generators.iter().all(|l| self.eval(chi, &ring.bracket(b, l)) == 0)
    }

    /// `{b : χ([b,l]) = 1 ∀l}`, in element order.
    pub fn stabilizer(&self, chi: &Character) -> Vec<GroupElement> {
        self.group.elements().filter(|b| self.in_stabilizer(chi, b)).collect()
    }

    /// `{b : Ad*(b)(χ) = χ}`, in element order.
    pub fn naive_stabilizer(&self, chi: &Character) -> Vec<GroupElement> {
        self.group.elements().filter(|b| self.coad(b, chi) == *chi).collect()
    }

    /// Every member of `Ω` has the same stabilizer, and all members agree on it.
    pub fn stabilizer_lemma_holds(&self, orbit: &Orbit) -> bool {
        let first = orbit.representative();
        let stab = self.stabilizer(first);
        let values: Vec<u64> = stab.iter().map(|b| self.eval(first, b)).collect();
        orbit.members().par_iter().all(|chi| {
            self.stabilizer(chi) == stab && stab.iter().zip(&values).all(|(b, &v)| self.eval(chi, b) == v)
        })
    }

    /// `n·χ(b)` if `b ∈ Stab χ`, else `0`, for any `χ ∈ Ω` (the least is used).
    pub fn orbit_character(&self, orbit: &Orbit, b: &GroupElement) -> Result<RootValue, OrbitError> {
        let n = orbit.dimension()?;
        let chi = orbit.representative();
        Ok(if self.in_stabilizer(chi, b) {
            RootValue::new(n as i64, self.root_order(), self.eval(chi, b))
        } else {
            RootValue::zero()
        })
    }

    /// Orbit-method character table on conjugacy class representatives.
    pub fn character_table(&self) -> Result<OrbitCharacterTable, OrbitError> {
        let classes = self.group.conjugacy_classes();
        let class_reps: Vec<GroupElement> = classes.representatives().iter().map(|&i| self.group.element(i)).collect();
        let orbits = self.enumerate_orbits();
        let degrees = orbits.iter().map(Orbit::dimension).collect::<Result<Vec<_>, _>>()?;
        let values = orbits
            .par_iter()
            .map(|o| class_reps.iter().map(|b| self.orbit_character(o, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OrbitCharacterTable {
            order: self.group.order(),
            root_order: self.root_order(),
            class_reps,
            class_sizes: classes.sizes(),
            orbits,
            degrees,
            values,
        })
    }
}

/// Orbits of the group generated by the given permutations, each as a
/// sorted index list, ordered by least element.
fn closure_classes(n: usize, perms: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for p in perms {
                let y = p[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Rows are orbits (ascending size, then representative); columns are
/// conjugacy class representatives (ordered by least element index).
#[derive(Debug, Clone, Serialize)]
pub struct OrbitCharacterTable {
    pub order: u64,
    pub root_order: u64,
    pub class_reps: Vec<GroupElement>,
    pub class_sizes: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<RootValue>>,
}

impl OrbitCharacterTable {
    /// Checks `Σ_K |K|·χ_i(K)·conj(χ_j(K)) = |B|·δ_ij` in exact cyclotomic
    /// arithmetic; returns the first failing pair.
    pub fn first_orthogonality_violation(&self) -> Option<(usize, usize)> {
        let e = self.root_order;
        let sums: Vec<Vec<CycloSum>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.to_sum(e)).collect())
            .collect();
        let n = self.values.len();
        (0..n).into_par_iter().find_map_first(|i| {
            (0..n)
                .find(|&j| {
                    let mut total = CycloSum::zero(e);
                    for k in 0..self.class_reps.len() {
                        total = total.add(&sums[i][k].mul(&sums[j][k].conj()).scale(self.class_sizes[k] as i64));
                    }
                    let mut expected = CycloSum::zero(e);
                    if i == j {
                        expected.add_root(self.order as i64, 0);
                    }
                    total != expected
                })
                .map(|j| (i, j))
        })
    }

    /// `Σ n² = |B|`.
    pub fn degree_sum_matches(&self) -> bool {
        self.degrees.iter().map(|d| d * d).sum::<u64>() == self.order
    }

    /// Distinct row signatures (no two orbits give the same character).
    pub fn rows_distinct(&self) -> bool {
        let rows: BTreeSet<Vec<(i64, u64)>> = self
            .values
            .iter()
            .map(|r| r.iter().map(|v| (v.normalized().scale, v.normalized().exponent_in(self.root_order * 2))).collect())
            .collect();
        rows.len() == self.values.len()
    }
}
