//! Seifert invariant data and first-homology bookkeeping.
//!
//! A closed orientable Seifert fibered 3-manifold over an orientable
//! genus-g base is described here by the tuple
//! `MO(g; (a_1,b_1), ..., (a_r,b_r))`. Abelianizing the fundamental
//! group gives generators `x_1, ..., x_r, w` plus `2g` free generators,
//! subject to
//!
//! ```text
//!   a_j * x_j + b_j * w = 0   (j = 1..r)
//!   x_1 + ... + x_r     = 0
//! ```
//!
//! The integer relation matrix of this presentation, via Smith normal
//! form, yields the number of homomorphisms from the fundamental group
//! to the cyclic group of order m in closed form:
//!
//! ```text
//!   #hom = m^(2g) * prod_i gcd(d_i, m)
//! ```
//!
//! where the `d_i` are the invariant factors and `gcd(0, m) = m` (a zero
//! invariant factor is a free summand, contributing all m residues).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

use crate::error::{Error, Result};

/// One `(a, b)` pair of the Seifert tuple: fiber multiplicity `a >= 1`
/// and integer twist `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiberPair {
    pub multiplicity: i64,
    pub twist: i64,
}

/// The manifold descriptor `MO(g; (a_1,b_1), ..., (a_r,b_r))`.
///
/// Equality is structural and the pair sequence is kept in the order
/// given; no normalization or reordering is performed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    genus: u64,
    fibers: Vec<FiberPair>,
}

impl SeifertData {
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn fibers(&self) -> &[FiberPair] {
        &self.fibers
    }

    /// Indices (0-based) of pairs with `gcd(a_j, b_j) != 1`.
    ///
    /// Standard Seifert data has coprime pairs; the evaluation consumes
    /// arbitrary integer pairs, so non-coprime input is accepted and
    /// merely flagged so frontends can warn.
    pub fn non_coprime_pairs(&self) -> Vec<usize> {
        self.fibers
            .iter()
            .enumerate()
            .filter(|(_, p)| p.multiplicity.gcd(&p.twist) != 1)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MO({};", self.genus)?;
        for (i, p) in self.fibers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", p.multiplicity, p.twist)?;
        }
        write!(f, ")")
    }
}

/// Validates raw Seifert input: `genus >= 0` and every `a_j >= 1`.
///
/// Pairs with `gcd(a_j, b_j) != 1` are accepted; callers can inspect
/// [`SeifertData::non_coprime_pairs`] for the warning marker.
pub fn validate_seifert(genus: i64, pairs: &[(i64, i64)]) -> Result<SeifertData> {
    if genus < 0 {
        return Err(Error::NegativeGenus(genus));
    }
    for (idx, &(a, _)) in pairs.iter().enumerate() {
        if a <= 0 {
            return Err(Error::NonpositiveMultiplicity(a, idx));
        }
    }
    Ok(SeifertData {
        genus: genus as u64,
        fibers: pairs
            .iter()
            .map(|&(a, b)| FiberPair {
                multiplicity: a,
                twist: b,
            })
            .collect(),
    })
}

/// Relation matrix of the abelianized fundamental group, together with
/// the rank of the free part contributed by the base surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub entries: Vec<Vec<BigInt>>,
    pub free_rank: u64,
}

/// Builds the `(r+1) x (r+1)` relation matrix: row `j` has `a_j` in
/// column `j` and `b_j` in the last column; the final row has 1 in each
/// of the first `r` columns. For `r = 0` this degenerates to the 1x1
/// zero matrix (the fiber class generates a free summand).
pub fn presentation_matrix(manifold: &SeifertData) -> PresentationMatrix {
    let r = manifold.fibers.len();
    let n = r + 1;
    let mut entries = vec![vec![BigInt::zero(); n]; n];
    for (j, p) in manifold.fibers.iter().enumerate() {
        entries[j][j] = BigInt::from(p.multiplicity);
        entries[j][r] = BigInt::from(p.twist);
    }
    for cell in entries[r][..r].iter_mut() {
        *cell = BigInt::from(1);
    }
    PresentationMatrix {
        entries,
        free_rank: 2 * manifold.genus,
    }
}

/// Invariant factors of an integer matrix: the nonzero factors come
/// first, each dividing the next, followed by zeros for the rank
/// deficiency. Length is `min(rows, cols)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
}

/// Smith normal form over the integers.
///
/// Exact arbitrary-precision arithmetic with pivoting by minimal
/// absolute value to control entry growth. Only the diagonal is
/// returned; the unimodular transforms are not tracked.
#[allow(clippy::needless_range_loop)] // row/column ops index two rows at once
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> SnfResult {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let n = rows.min(cols);
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut diag = vec![BigInt::zero(); n];

    for k in 0..n {
        // when the remaining block is all zero, trailing diag entries stay 0
        'pivot: while let Some((pi, pj)) = min_abs_nonzero(&a, k) {
            a.swap(k, pi);
            swap_cols(&mut a, k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if !a[i][k].is_zero() {
                    let q = &a[i][k] / &a[k][k];
                    if !q.is_zero() {
                        for j in k..cols {
                            let t = &q * &a[k][j];
                            a[i][j] -= t;
                        }
                    }
                    dirty |= !a[i][k].is_zero();
                }
            }
            for j in k + 1..cols {
                if !a[k][j].is_zero() {
                    let q = &a[k][j] / &a[k][k];
                    if !q.is_zero() {
                        for i in k..rows {
                            let t = &q * &a[i][k];
                            a[i][j] -= t;
                        }
                    }
                    dirty |= !a[k][j].is_zero();
                }
            }
            if dirty {
                // leftover remainders are smaller than the pivot; re-pick
                continue 'pivot;
            }

            // enforce the divisibility chain: the pivot must divide every
            // entry of the trailing block
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[i][j] % &a[k][k]).is_zero() {
                        for col in k..cols {
                            let t = a[i][col].clone();
                            a[k][col] += t;
                        }
                        continue 'pivot;
                    }
                }
            }

            diag[k] = a[k][k].abs();
            break;
        }
    }

    SnfResult { diag }
}

fn min_abs_nonzero(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], c0: usize, c1: usize) {
    if c0 == c1 {
        return;
    }
    for row in a.iter_mut() {
        row.swap(c0, c1);
    }
}

/// Number of homomorphisms from the fundamental group to the cyclic
/// group of order `m`, in closed form from the invariant factors:
/// `m^(2g) * prod_i gcd(d_i, m)` with `gcd(0, m) = m`.
pub fn count_homs(manifold: &SeifertData, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidGroupOrder(0));
    }
    let snf = smith_normal_form(&presentation_matrix(manifold).entries);
    let mb = BigInt::from(m);
    let mut count: BigUint = BigUint::from(m).pow(2 * manifold.genus);
    for d in &snf.diag {
        // num's gcd already maps gcd(0, m) to m, matching the free-summand
        // convention
        let g = d.gcd(&mb);
        count *= g.to_biguint().expect("gcd of nonneg args is nonneg");
    }
    Ok(count)
}
