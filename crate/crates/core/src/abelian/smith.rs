//! Smith normal form of relation matrices, used to put a finitely presented
//! abelian group into invariant-factor form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AbElement, AbelianError, FinAbGroup};

/// `⟨g_1 … g_n | Σ_j r_ij g_j = 0⟩`, one relation per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n_gens: usize,
    pub relations: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(n_gens: usize, relations: Vec<Vec<i64>>) -> Self {
        Presentation { n_gens, relations }
    }
}

/// Invariant-factor form of a presented group together with the coordinate
/// change in both directions.
///
/// With `U·R·V = D`, the new coordinates are `z = Vᵀx`; `forward` holds the
/// rows of `Vᵀ` reduced modulo each invariant factor and `backward` holds
/// `V⁻ᵀ` restricted to the nontrivial factors.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub group: FinAbGroup,
    forward: Vec<Vec<i64>>,
    backward: Vec<Vec<i64>>,
    n_gens: usize,
}

impl SmithDecomposition {
    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    /// Presentation coordinates → element of `group`.
    pub fn forward(&self, x: &[i64]) -> AbElement {
        assert_eq!(x.len(), self.n_gens, "dimension mismatch");
        let coords: Vec<i64> = self
            .forward
            .iter()
            .zip(self.group.moduli())
            .map(|(row, &m)| {
                let m = m as i128;
                row.iter()
                    .zip(x)
                    .fold(0i128, |acc, (&r, &xi)| (acc + r as i128 * xi as i128).rem_euclid(m))
                    as i64
            })
            .collect();
        self.group.reduce(&coords)
    }

    /// Element of `group` → a presentation coset representative.
    pub fn backward(&self, z: &AbElement) -> Vec<i64> {
        (0..self.n_gens)
            .map(|j| {
                self.backward
                    .iter()
                    .zip(z.coords())
                    .map(|(row, &zk)| row[j] * zk as i64)
                    .sum()
            })
            .collect()
    }
}

struct Snf {
    a: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Snf {
    fn new(relations: &[Vec<i64>], n: usize) -> Self {
        let a = relations
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let id = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect()
        };
        Snf { a, v: id(n), v_inv: id(n) }
    }

    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.v.len()
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn negate_col(&mut self, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row[j] = -&row[j];
        }
        for x in self.v_inv[j].iter_mut() {
            *x = -&*x;
        }
    }

    /// col_j ← col_j − q·col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[k] * q;
            row[j] -= t;
        }
        // V ← V·E with E = I − q e_k e_jᵀ, so V⁻¹ ← (I + q e_k e_jᵀ) V⁻¹
        let row_j = self.v_inv[j].clone();
        for (x, y) in self.v_inv[k].iter_mut().zip(&row_j) {
            *x += q * y;
        }
    }

    /// row_i ← row_i − q·row_k (V is unaffected by row operations)
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        let row_k = self.a[k].clone();
        for (x, y) in self.a[i].iter_mut().zip(&row_k) {
            *x -= q * y;
        }
    }

    fn row_add(&mut self, i: usize, k: usize) {
        let row_i = self.a[i].clone();
        for (x, y) in self.a[k].iter_mut().zip(&row_i) {
            *x += y;
        }
    }

    /// Reduces to diagonal form with each diagonal entry dividing the next.
    /// Returns the nonnegative diagonal.
    fn run(&mut self) -> Vec<BigInt> {
        let (r, n) = (self.rows(), self.cols());
        let mut diag = Vec::new();
        for k in 0..r.min(n) {
            loop {
                // smallest nonzero entry of the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in k..r {
                    for j in k..n {
                        if self.a[i][j].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return diag;
                };
                self.a.swap(k, bi);
                self.swap_cols(k, bj);
                if self.a[k][k].is_negative() {
                    self.negate_col(k);
                }

                let pivot = self.a[k][k].clone();
                let mut clean = true;
                for i in k + 1..r {
                    if !self.a[i][k].is_zero() {
                        let q = self.a[i][k].div_floor(&pivot);
                        self.row_sub(i, k, &q);
                        clean &= self.a[i][k].is_zero();
                    }
                }
                for j in k + 1..n {
                    if !self.a[k][j].is_zero() {
                        let q = self.a[k][j].div_floor(&pivot);
                        self.col_sub(j, k, &q);
                        clean &= self.a[k][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility of the trailing block by the pivot
                let offender = (k + 1..r).find(|&i| (k + 1..n).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.row_add(i, k),
                    None => break,
                }
            }
            diag.push(self.a[k][k].clone());
        }
        diag
    }
}

/// Invariant-factor decomposition of a finite presented abelian group.
pub fn smith_decompose(p: &Presentation) -> Result<SmithDecomposition, AbelianError> {
    let n = p.n_gens;
    for row in &p.relations {
        if row.len() != n {
            return Err(AbelianError::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    let mut snf = Snf::new(&p.relations, n);
    let diag = snf.run();
    if diag.len() < n {
        return Err(AbelianError::InfiniteGroup { rank: diag.len(), gens: n });
    }

    let mut moduli = Vec::new();
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (k, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let m = d.to_u64().ok_or(AbelianError::Overflow)?;
        let md = BigInt::from(m);
        let reduce = |x: &BigInt| x.mod_floor(&md).to_i64().expect("reduced entry fits i64");
        // column k of V is row k of Vᵀ
        forward.push((0..n).map(|j| reduce(&snf.v[j][k])).collect());
        backward.push(snf.v_inv[k].iter().map(reduce).collect());
        moduli.push(m);
    }
    let group = FinAbGroup::new(moduli)?;
    Ok(SmithDecomposition { group, forward, backward, n_gens: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force order of a presented group: count residue vectors in a box
    /// `[0, bound)^n` modulo the relation lattice by closure under relations.
    fn brute_force_order(p: &Presentation, bound: i64) -> usize {
        use std::collections::{HashSet, VecDeque};
        let n = p.n_gens;
        let mut lattice: HashSet<Vec<i64>> = HashSet::new();
        // Enumerate small lattice vectors Σ y_i r_i with |y_i| ≤ bound.
        let rows = &p.relations;
        let mut coeffs = vec![-bound; rows.len()];
        loop {
            let v: Vec<i64> = (0..n).map(|j| rows.iter().zip(&coeffs).map(|(r, c)| r[j] * c).sum()).collect();
            lattice.insert(v);
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    break;
                }
                coeffs[i] += 1;
                if coeffs[i] > bound {
                    coeffs[i] = -bound;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == coeffs.len() {
                break;
            }
        }
        // Count box points modulo the lattice (box large enough to contain a
        // fundamental domain).
        let mut reps: Vec<Vec<i64>> = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(vec![0i64; n]);
        let mut seen = HashSet::new();
        while let Some(x) = queue.pop_front() {
            if x.iter().any(|v| v.abs() > bound) || !seen.insert(x.clone()) {
                continue;
            }
            let dup = reps.iter().any(|r| {
                let d: Vec<i64> = x.iter().zip(r).map(|(a, b)| a - b).collect();
                lattice.contains(&d)
            });
            if !dup {
                reps.push(x.clone());
            }
            for j in 0..n {
                let mut y = x.clone();
                y[j] += 1;
                queue.push_back(y);
            }
        }
        reps.len()
    }

    #[test]
    fn nine_from_two_generators() {
        // ⟨x,y | 3x = 0, 3y = x⟩
        let p = Presentation::new(2, vec![vec![3, 0], vec![-1, 3]]);
        assert_eq!(brute_force_order(&p, 10), 9);
        let d = smith_decompose(&p).unwrap();
        assert_eq!(d.group.moduli(), &[9]);
        let x = d.forward(&[1, 0]);
        let y = d.forward(&[0, 1]);
        assert_eq!(d.group.element_order(&y), 9);
        assert_eq!(d.group.scale(&y, 3), x);
        // x ↦ 3·gen and y ↦ gen up to an automorphism of Z/9
        assert_eq!(d.group.element_order(&x), 3);
    }

    #[test]
    fn trivial_and_diagonal() {
        let d = smith_decompose(&Presentation::new(1, vec![vec![5]])).unwrap();
        assert_eq!(d.group.moduli(), &[5]);
        assert_eq!(d.forward(&[1]).coords(), &[1]);
        let d = smith_decompose(&Presentation::new(2, vec![vec![3, 0], vec![0, 3]])).unwrap();
        assert_eq!(d.group.moduli(), &[3, 3]);
    }

    #[test]
    fn infinite_group_rejected() {
        let p = Presentation::new(2, vec![vec![3, 0]]);
        assert!(matches!(smith_decompose(&p), Err(AbelianError::InfiniteGroup { .. })));
        let p = Presentation::new(2, vec![vec![2, 4], vec![1, 2]]);
        assert!(matches!(smith_decompose(&p), Err(AbelianError::InfiniteGroup { .. })));
    }

    #[test]
    fn maps_are_mutually_inverse() {
        let presentations = [
            Presentation::new(2, vec![vec![3, 0], vec![-1, 3]]),
            Presentation::new(3, vec![vec![6, 4, 2], vec![0, 9, 3], vec![1, 1, 5]]),
            Presentation::new(3, vec![vec![3, 0, 0], vec![0, 3, -1], vec![0, 0, 9], vec![1, 1, 1]]),
            Presentation::new(
                6,
                (0..6).map(|i| (0..6).map(|j| if i == j { 3 } else { 0 }).collect()).collect(),
            ),
        ];
        for p in &presentations {
            let d = smith_decompose(p).unwrap();
            for z in d.group.elements() {
                let x = d.backward(&z);
                assert_eq!(d.forward(&x), z);
            }
            // relations map to zero, and forward is additive on generators
            for rel in &p.relations {
                assert!(d.forward(rel).is_zero());
            }
            let n = p.n_gens;
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                let fi = d.forward(&e);
                let back = d.forward(&d.backward(&fi));
                assert_eq!(back, fi);
            }
        }
    }

    #[test]
    fn order_matches_determinant() {
        let p = Presentation::new(3, vec![vec![6, 4, 2], vec![0, 9, 3], vec![1, 1, 5]]);
        // |det| = 6·42 − 4·(−3) + 2·(−9) = 246
        let d = smith_decompose(&p).unwrap();
        assert_eq!(d.group.order(), 246);
    }
}
