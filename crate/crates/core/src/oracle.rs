//! Character tables by the class-sum method, independent of orbits.
//!
//! With class sums `K_i K_j = Σ_k c_ijk K_k`, the central characters
//! `ω(K_i) = |K_i|·χ(g_i)/χ(1)` are the common eigenvectors of the matrices
//! `(M_j)_{ik} = c_jik`. After the similarity `S = diag(1/√|K_i|)` they are
//! commuting normal matrices, so a random Hermitian combination
//! `P + P†`, `P = Σ_j ((r_j + i s_j)/|K_j|)·S M_j S⁻¹`, has the irreducible
//! characters as its eigenvectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::nilgroup::{Class2Group, GroupElement};
use crate::orbits::OrbitCharacterTable;

/// Attempts with fresh random combinations before giving up.
pub const MAX_ATTEMPTS: usize = 9;
/// Relative eigenvalue gap below which the spectrum counts as degenerate.
pub const GAP_TOLERANCE: f64 = 1e-9;
/// Tolerance for table matching.
pub const MATCH_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("degenerate spectrum after {attempts} random combinations")]
    DegenerateSpectrum { attempts: usize },
    #[error("oracle self-check failed: {0}")]
    SelfCheck(String),
    #[error("tables are over different class representatives")]
    ClassMismatch,
    #[error("no oracle character matches orbit row {row} within {tolerance}")]
    NoBijection { row: usize, tolerance: f64 },
}

/// Rows are irreducible characters in canonical order; columns are the
/// group's conjugacy classes ordered by least element index.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleTable {
    pub class_reps: Vec<GroupElement>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<Vec<Complex64>>,
    pub degrees: Vec<u64>,
}

pub fn burnside_table(group: &Class2Group, seed: u64) -> Result<OracleTable, OracleError> {
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let sizes = classes.sizes();
    let reps: Vec<usize> = classes.representatives();
    let order = group.order() as f64;
    let sqrt_sizes: Vec<f64> = sizes.iter().map(|&s| (s as f64).sqrt()).collect();
    let inverses: Vec<usize> = (0..group.size()).map(|x| group.inv_idx(x)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..MAX_ATTEMPTS {
        let alpha: Vec<Complex64> = (0..r)
            .map(|j| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / sizes[j] as f64)
            .collect();
        // P_{ik} = Σ_j α_j c_jik √|K_k|/√|K_i|, where c_jik counts x ∈ K_j
        // with x⁻¹ z_k ∈ K_i.
        let columns: Vec<Vec<Complex64>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let mut col = vec![Complex64::new(0.0, 0.0); r];
                let z = reps[k];
                for x in 0..group.size() {
                    let i = classes.class_of[group.mul_idx(inverses[x], z)];
                    col[i] += alpha[classes.class_of[x]];
                }
                for (i, v) in col.iter_mut().enumerate() {
                    *v *= sqrt_sizes[k] / sqrt_sizes[i];
                }
                col
            })
            .collect();
        let p = DMatrix::from_fn(r, r, |i, k| columns[k][i]);
        let h = &p + p.adjoint();
        let eig = h.symmetric_eigen();

        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        let scale = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
        if vals.windows(2).any(|w| w[1] - w[0] < GAP_TOLERANCE * scale) {
            continue;
        }

        let mut characters = Vec::with_capacity(r);
        let mut degrees = Vec::with_capacity(r);
        for col in eig.eigenvectors.column_iter() {
            let u: Vec<Complex64> = col.iter().copied().collect();
            let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let d = (order.sqrt() * u[0].norm() / norm).round();
            let chi: Vec<Complex64> = (0..r).map(|i| u[i] * d / (u[0] * sqrt_sizes[i])).collect();
            degrees.push(d as u64);
            characters.push(chi);
        }
        let mut table = OracleTable {
            class_reps: reps.iter().map(|&i| group.element(i)).collect(),
            class_sizes: sizes.clone(),
            characters,
            degrees,
        };
        table.canonicalize();
        table.self_check(group.order())?;
        return Ok(table);
    }
    Err(OracleError::DegenerateSpectrum { attempts: MAX_ATTEMPTS })
}

impl OracleTable {
    /// Ascending degree, then values rounded to `1e-6` read over the classes
    /// ordered by size and then representative index.
    fn canonicalize(&mut self) {
        let mut cols: Vec<usize> = (0..self.class_reps.len()).collect();
        cols.sort_by_key(|&k| (self.class_sizes[k], k));
        let key = |row: &[Complex64]| -> Vec<(i64, i64)> {
            cols.iter().map(|&k| ((row[k].re * 1e6).round() as i64, (row[k].im * 1e6).round() as i64)).collect()
        };
        let mut rows: Vec<(u64, Vec<(i64, i64)>, Vec<Complex64>)> = self
            .degrees
            .iter()
            .zip(&self.characters)
            .map(|(&d, chi)| (d, key(chi), chi.clone()))
            .collect();
        rows.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        self.degrees = rows.iter().map(|r| r.0).collect();
        self.characters = rows.into_iter().map(|r| r.2).collect();
    }

    /// Row and column orthogonality to `1e-9`, `Σ d² = |B|`, `d | |B|`.
    pub fn self_check(&self, order: u64) -> Result<(), OracleError> {
        let n = self.characters.len();
        let tol = 1e-9 * order as f64;
        let fail = |m: String| Err(OracleError::SelfCheck(m));
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != order {
            return fail("Σ d² ≠ |B|".into());
        }
        if let Some(d) = self.degrees.iter().find(|&&d| d == 0 || order % d != 0) {
            return fail(format!("degree {d} does not divide |B|"));
        }
        for a in 0..n {
            for b in 0..n {
                let s: Complex64 = (0..n)
                    .map(|k| self.characters[a][k] * self.characters[b][k].conj() * self.class_sizes[k] as f64)
                    .sum();
                let expected = if a == b { order as f64 } else { 0.0 };
                if (s - expected).norm() > tol {
                    return fail(format!("rows {a}, {b} are not orthonormal"));
                }
                let s: Complex64 = (0..n).map(|x| self.characters[x][a] * self.characters[x][b].conj()).sum();
                let expected = if a == b { order as f64 / self.class_sizes[a] as f64 } else { 0.0 };
                if (s - expected).norm() > tol {
                    return fail(format!("columns {a}, {b} are not orthogonal"));
                }
            }
        }
        Ok(())
    }

    /// Largest entrywise difference after the rows are aligned by position.
    pub fn max_difference(&self, other: &OracleTable) -> f64 {
        self.characters
            .iter()
            .zip(&other.characters)
            .flat_map(|(x, y)| x.iter().zip(y).map(|(a, b)| (a - b).norm()))
            .fold(0.0, f64::max)
    }
}

/// A bijection orbit row → oracle row.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub pairs: Vec<(usize, usize)>,
    pub max_deviation: f64,
}

/// Pairs each orbit-method row with the unique oracle row agreeing with it
/// within [`MATCH_TOLERANCE`] on every class.
pub fn match_tables(orbit_table: &OrbitCharacterTable, oracle: &OracleTable) -> Result<MatchReport, OracleError> {
    if orbit_table.class_reps != oracle.class_reps || orbit_table.values.len() != oracle.characters.len() {
        return Err(OracleError::ClassMismatch);
    }
    let mut used = vec![false; oracle.characters.len()];
    let mut pairs = Vec::with_capacity(used.len());
    let mut max_deviation: f64 = 0.0;
    for (row, values) in orbit_table.values.iter().enumerate() {
        let exact: Vec<Complex64> = values.iter().map(|v| v.to_complex()).collect();
        let found = oracle.characters.iter().enumerate().find_map(|(j, chi)| {
            let dev = exact.iter().zip(chi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            (!used[j] && dev < MATCH_TOLERANCE).then_some((j, dev))
        });
        match found {
            Some((j, dev)) => {
                used[j] = true;
                pairs.push((row, j));
                max_deviation = max_deviation.max(dev);
            }
            None => return Err(OracleError::NoBijection { row, tolerance: MATCH_TOLERANCE }),
        }
    }
    Ok(MatchReport { pairs, max_deviation })
}
