//! The group algebra `ℂ[B]` in the basis `X_χ = Σ_l χ(l)·l`.
//!
//! The closed forms `b·X_χ = χ(−b)·X_{Ad*(b/2)χ}` and
//! `X_χ·b = χ(−b)·X_{Ad*(−b/2)χ}` are checked against direct products in the
//! algebra, so each `V_Ω = span{X_χ : χ ∈ Ω}` is a two-sided ideal and the
//! right regular representation restricted to it has trace `n²·χ(g)` on
//! `Stab χ` and `0` elsewhere.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::CycloSum;
use crate::nilgroup::{Class2Group, GroupElement, GroupError};
use crate::orbits::{Character, Orbit, OrbitError, OrbitMethod};

/// Largest group for dense algebra work.
pub const ALGEBRA_BUDGET: u64 = 243;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupAlgebraError {
    #[error("group of order {order} exceeds the dense algebra budget {limit}")]
    BudgetExceeded { order: u64, limit: u64 },
    #[error("⟨X_{i}, X_{j}⟩ differs from δ_ij")]
    GramViolation { i: Character, j: Character },
    #[error("{side:?} action of {b} on X_{chi} differs from the closed form at coefficient {at}")]
    FormulaMismatch { side: Side, b: GroupElement, chi: Character, at: GroupElement },
    #[error("ideal property fails for {b} and X_{chi}: {detail}")]
    IdealViolation { b: GroupElement, chi: Character, detail: String },
    #[error("trace of R({g}) on V_Ω with Ω ∋ {chi} differs from n²·χ(g) or 0")]
    TraceMismatch { g: GroupElement, chi: Character },
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An element `Σ_g x_g·g` of `ℂ[B]`, indexed by element index.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coeffs: Vec<Complex64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { coeffs: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// The basis element `g`.
    pub fn basis(n: usize, g: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[g] = Complex64::new(1.0, 0.0);
        x
    }

    /// Convolution `(x·y)_g = Σ_{h k = g} x_h·y_k`.
    pub fn mul(&self, other: &AlgebraElement, group: &Class2Group) -> AlgebraElement {
        let n = self.coeffs.len();
        let mut out = Self::zero(n);
        for (h, &xh) in self.coeffs.iter().enumerate() {
            if xh == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (k, &yk) in other.coeffs.iter().enumerate() {
                out.coeffs[group.mul_idx(h, k)] += xh * yk;
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> AlgebraElement {
        AlgebraElement { coeffs: self.coeffs.iter().map(|&x| x * s).collect() }
    }

    /// `⟨x, y⟩ = (1/|B|)·Σ_g x_g·conj(y_g)`.
    pub fn inner(&self, other: &AlgebraElement) -> Complex64 {
        let s: Complex64 = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * y.conj()).sum();
        s / self.coeffs.len() as f64
    }

    pub fn max_abs_diff(&self, other: &AlgebraElement) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

/// An exact element whose every coefficient is a power `ζ_e^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseVector {
    pub root_order: u64,
    pub exponents: Vec<u64>,
}

impl PhaseVector {
    pub fn to_algebra(&self) -> AlgebraElement {
        let e = self.root_order as f64;
        AlgebraElement {
            coeffs: self
                .exponents
                .iter()
                .map(|&k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / e))
                .collect(),
        }
    }

    /// `|B|·⟨x, y⟩` as an exact cyclotomic sum.
    pub fn scaled_inner(&self, other: &PhaseVector) -> CycloSum {
        let e = self.root_order;
        let mut hist = vec![0i64; e as usize];
        for (&k, &l) in self.exponents.iter().zip(&other.exponents) {
            hist[((k + e - l) % e) as usize] += 1;
        }
        CycloSum::from_histogram(e, &hist)
    }
}

/// Image of `X_χ` under a one-sided action: `ζ_e^phase·X_image`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionImage {
    pub phase: u64,
    pub image: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub actions_checked: usize,
    pub products_checked: usize,
}

/// Group algebra machinery over an [`OrbitMethod`].
#[derive(Debug, Clone)]
pub struct GroupAlgebra<'a> {
    method: &'a OrbitMethod,
    /// `xs[i][g]`: exponent of `χ_i(g)`, with `χ_i` the character of index `i`.
    xs: Vec<Vec<u32>>,
}

impl<'a> GroupAlgebra<'a> {
    pub fn new(method: &'a OrbitMethod) -> Result<Self, GroupAlgebraError> {
        let order = method.group().order();
        if order > ALGEBRA_BUDGET {
            return Err(GroupAlgebraError::BudgetExceeded { order, limit: ALGEBRA_BUDGET });
        }
        let elems: Vec<GroupElement> = method.group().elements().collect();
        let chars: Vec<Character> = method.characters().collect();
        let xs = chars
            .par_iter()
            .map(|chi| elems.iter().map(|l| method.eval(chi, l) as u32).collect())
            .collect();
        Ok(GroupAlgebra { method, xs })
    }

    fn group(&self) -> &Class2Group {
        self.method.group()
    }

    /// `X_χ` with exact coefficients `χ(l)` at each `l`.
    pub fn x_vector(&self, chi: &Character) -> PhaseVector {
        PhaseVector {
            root_order: self.method.root_order(),
            exponents: self.exponents(chi).iter().map(|&k| k as u64).collect(),
        }
    }

    fn exponents(&self, chi: &Character) -> &[u32] {
        &self.xs[self.method.character_index(chi)]
    }

    /// All `X_χ`, checking the Gram matrix is the identity exactly.
    pub fn build_xbasis(&self) -> Result<Vec<(Character, PhaseVector)>, GroupAlgebraError> {
        let basis: Vec<(Character, PhaseVector)> =
            self.method.characters().map(|chi| (chi.clone(), self.x_vector(&chi))).collect();
        let n = self.group().order() as i64;
        let e = self.method.root_order();
        let bad = (0..basis.len()).into_par_iter().find_map_first(|i| {
            (0..basis.len())
                .find(|&j| {
                    let mut expected = CycloSum::zero(e);
                    if i == j {
                        expected.add_root(n, 0);
                    }
                    basis[i].1.scaled_inner(&basis[j].1) != expected
                })
                .map(|j| (i, j))
        });
        match bad {
            Some((i, j)) => Err(GroupAlgebraError::GramViolation { i: basis[i].0.clone(), j: basis[j].0.clone() }),
            None => Ok(basis),
        }
    }

    /// `b·X_χ`, computed directly as `(b·X)_g = X_{b⁻¹g}` and compared with
    /// `χ(−b)·X_{Ad*(b/2)χ}` coefficientwise.
    pub fn left_action(&self, b: &GroupElement, chi: &Character) -> Result<ActionImage, GroupAlgebraError> {
        let half = self.group().half_element(b)?;
        let closed = ActionImage { phase: self.phase_of_neg(chi, b), image: self.method.coad(&half, chi) };
        let b_inv = self.group().index(&self.group().inv(b));
        self.compare(Side::Left, b, chi, &closed, |g| self.group().mul_idx(b_inv, g))?;
        Ok(closed)
    }

    /// `X_χ·b`, computed directly as `(X·b)_g = X_{g b⁻¹}` and compared with
    /// `χ(−b)·X_{Ad*(−b/2)χ}` coefficientwise.
    pub fn right_action(&self, chi: &Character, b: &GroupElement) -> Result<ActionImage, GroupAlgebraError> {
        let half = self.group().half_element(b)?;
        let closed =
            ActionImage { phase: self.phase_of_neg(chi, b), image: self.method.coad(&self.group().inv(&half), chi) };
        let b_inv = self.group().index(&self.group().inv(b));
        self.compare(Side::Right, b, chi, &closed, |g| self.group().mul_idx(g, b_inv))?;
        Ok(closed)
    }

    /// Exponent of `χ(−b)`.
    fn phase_of_neg(&self, chi: &Character, b: &GroupElement) -> u64 {
        self.method.eval(chi, &self.method.ring().neg(b))
    }

    fn compare(
        &self,
        side: Side,
        b: &GroupElement,
        chi: &Character,
        closed: &ActionImage,
        source_of: impl Fn(usize) -> usize,
    ) -> Result<(), GroupAlgebraError> {
        let e = self.method.root_order();
        let (x, image) = (self.exponents(chi), self.exponents(&closed.image));
        for g in 0..self.group().size() {
            let direct = x[source_of(g)] as u64;
            let formula = (closed.phase + image[g] as u64) % e;
            if direct != formula {
                let at = self.group().element(g);
                return Err(GroupAlgebraError::FormulaMismatch { side, b: b.clone(), chi: chi.clone(), at });
            }
        }
        Ok(())
    }

    /// Both actions of every `b` on every `X_χ` with `χ ∈ Ω` stay in `V_Ω`,
    /// and sampled products `X_χ·X_χ'` with `χ' ∉ Ω` vanish.
    pub fn verify_ideal(
        &self,
        orbit: &Orbit,
        all_orbits: &[Orbit],
        samples: usize,
        seed: u64,
    ) -> Result<IdealReport, GroupAlgebraError> {
        let elems: Vec<GroupElement> = self.group().elements().collect();
        let pairs: Vec<(&GroupElement, &Character)> =
            elems.iter().flat_map(|b| orbit.members().iter().map(move |chi| (b, chi))).collect();
        pairs.par_iter().try_for_each(|&(b, chi)| {
            let left = self.left_action(b, chi)?;
            let right = self.right_action(chi, b)?;
            for (img, side) in [(left, "left"), (right, "right")] {
                if !orbit.contains(&img.image) {
                    return Err(GroupAlgebraError::IdealViolation {
                        b: b.clone(),
                        chi: chi.clone(),
                        detail: format!("{side} image {} leaves the orbit", img.image),
                    });
                }
            }
            Ok(())
        })?;

        let others: Vec<&Orbit> = all_orbits.iter().filter(|o| *o != orbit).collect();
        let mut products = 0;
        if !others.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks: Vec<(Character, Character)> = (0..samples)
                .map(|_| {
                    let chi = orbit.members()[rng.gen_range(0..orbit.size())].clone();
                    let o = others[rng.gen_range(0..others.len())];
                    (chi, o.members()[rng.gen_range(0..o.size())].clone())
                })
                .collect();
            picks.par_iter().try_for_each(|(chi, psi)| {
                let x = self.x_vector(chi).to_algebra();
                let y = self.x_vector(psi).to_algebra();
                for (p, order) in [(x.mul(&y, self.group()), "X·X'"), (y.mul(&x, self.group()), "X'·X")] {
                    let size = p.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    if size > 1e-9 * self.group().order() as f64 {
                        return Err(GroupAlgebraError::IdealViolation {
                            b: self.group().identity(),
                            chi: chi.clone(),
                            detail: format!("{order} with X' = X_{psi} is nonzero"),
                        });
                    }
                }
                Ok(())
            })?;
            products = samples;
        }
        Ok(IdealReport { actions_checked: pairs.len(), products_checked: products })
    }

    /// Trace of `R(g): x ↦ x·g⁻¹` on `V_Ω` in the `X` basis, checked against
    /// `n²·χ(g)` on `Stab χ` and `0` elsewhere.
    pub fn regular_trace(&self, orbit: &Orbit, g: &GroupElement) -> Result<CycloSum, GroupAlgebraError> {
        let e = self.method.root_order();
        let g_inv = self.group().inv(g);
        let mut trace = CycloSum::zero(e);
        for chi in orbit.members() {
            let img = self.right_action(chi, &g_inv)?;
            if img.image == *chi {
                trace.add_root(1, img.phase);
            }
        }
        let rep = orbit.representative();
        let mut expected = CycloSum::zero(e);
        if self.method.in_stabilizer(rep, g) {
            expected.add_root(orbit.size() as i64, self.method.eval(rep, g));
        }
        if trace != expected {
            return Err(GroupAlgebraError::TraceMismatch { g: g.clone(), chi: rep.clone() });
        }
        Ok(trace)
    }

    /// `trace(R(g)|V_Ω)/n = orbit_character(Ω, g)` for every `g`.
    pub fn trace_matches_character(&self, orbit: &Orbit) -> Result<bool, GroupAlgebraError> {
        let n = orbit.dimension()? as i64;
        let e = self.method.root_order();
        for g in self.group().elements() {
            let t = self.regular_trace(orbit, &g)?;
            let per_copy = match t.div_exact(n) {
                Some(v) => v,
                None => return Ok(false),
            };
            if per_copy != self.method.orbit_character(orbit, &g)?.to_sum(e) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
