//! Abelianization of finite presentations via Smith normal form.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::presentation::{InstantiateError, InstantiateOptions, Presentation};
use crate::word::Alphabet;

/// Invariant factors `d₁ | d₂ | …`, one per generator; `0` is a free cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants(Vec<BigUint>);

impl AbelianInvariants {
    pub fn from_u64s(factors: &[u64]) -> Self {
        AbelianInvariants(factors.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.0
    }

    /// Number of infinite cyclic factors.
    pub fn free_rank(&self) -> usize {
        self.0.iter().filter(|d| d.is_zero()).count()
    }
}

impl fmt::Display for AbelianInvariants {
    /// `1, 0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("abelianization needs a finite generator list")]
    IndexedAlphabet,
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
}

/// Diagonal of the Smith normal form of a `rows × cols` integer matrix, padded
/// with zeros to length `cols`. Entries are nonnegative and form a divisibility
/// chain with zeros last.
pub fn smith_diagonal(matrix: &[Vec<BigInt>], cols: usize) -> Vec<BigUint> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let mut diag: Vec<BigUint> = Vec::with_capacity(cols);
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry of the remaining block
        let Some((pr, pc)) = min_nonzero(&m, t, cols) else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if m[r][t].is_zero() {
                    continue;
                }
                let q = m[r][t].div_floor(&m[t][t]);
                for c in t..cols {
                    let v = &m[t][c] * &q;
                    m[r][c] -= v;
                }
                if !m[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if m[t][c].is_zero() {
                    continue;
                }
                let q = m[t][c].div_floor(&m[t][t]);
                for r in t..rows {
                    let v = &m[r][t] * &q;
                    m[r][c] -= v;
                }
                if !m[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // every remaining entry must be divisible by the pivot
                let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !m[r][c].is_multiple_of(&m[t][t])));
                match bad {
                    None => break,
                    Some(r) => {
                        for c in t..cols {
                            let v = m[r][c].clone();
                            m[t][c] += v;
                        }
                        continue;
                    }
                }
            }
            // a remainder is smaller than the pivot: move it to the pivot slot
            if let Some((pr, pc)) = min_nonzero_in_cross(&m, t, cols) {
                m.swap(t, pr);
                for row in m.iter_mut() {
                    row.swap(t, pc);
                }
            }
        }
        diag.push(m[t][t].abs().to_biguint().expect("nonnegative"));
    }
    diag.resize(cols, BigUint::zero());
    diag
}

fn min_nonzero(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in m.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().take(cols).skip(t) {
            if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < m[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` of the remaining block.
fn min_nonzero_in_cross(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let cells = (t..m.len()).map(|r| (r, t)).chain((t + 1..cols).map(|c| (t, c)));
    cells
        .filter(|&(r, c)| !m[r][c].is_zero())
        .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
}

/// Exponent-sum matrix of the relators (instantiated up to `bound` when schemas
/// are present) reduced to invariant factors.
pub fn abelianization(p: &Presentation, bound: i64) -> Result<AbelianInvariants, AbelianError> {
    let n = match p.alphabet() {
        Alphabet::Finite(names) => names.len(),
        Alphabet::Indexed(_) => return Err(AbelianError::IndexedAlphabet),
    };
    let inst;
    let p = if p.has_schemas() {
        inst = p.instantiate(bound, &InstantiateOptions::default())?;
        &inst.presentation
    } else {
        p
    };
    let rows: Vec<Vec<BigInt>> = p
        .explicit_relators()
        .expect("explicit after instantiation")
        .iter()
        .map(|w| w.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    Ok(AbelianInvariants(smith_diagonal(&rows, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::embed::{embed, EmbedOptions, EmbeddingMode};
    use alloc::vec;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn diag(rows: &[&[i64]], cols: usize) -> Vec<u64> {
        smith_diagonal(&mat(rows), cols)
            .into_iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(diag(&[], 2), vec![0, 0]);
        assert_eq!(diag(&[&[2, 0], &[0, 3]], 2), vec![1, 6]);
        assert_eq!(diag(&[&[0, 1], &[0, 2]], 2), vec![1, 0]);
        assert_eq!(diag(&[&[4, 6]], 2), vec![2, 0]);
        assert_eq!(diag(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]], 3), vec![2, 6, 12]);
        assert_eq!(diag(&[&[0, 0], &[0, 0]], 2), vec![0, 0]);
    }

    #[test]
    fn no_relators_is_free_abelian_rank_two() {
        let p = Presentation::new("F2", Alphabet::f2()).unwrap();
        let inv = abelianization(&p, 1).unwrap();
        assert_eq!(inv, AbelianInvariants::from_u64s(&[0, 0]));
        assert_eq!(inv.free_rank(), 2);
        assert_eq!(inv.to_string(), "0, 0");
    }

    #[test]
    fn embedded_examples() {
        for bound in 1..=4 {
            let t = embed(&builtin::free_abelian(), &EmbedOptions::new(EmbeddingMode::TorsionFree, bound)).unwrap();
            assert_eq!(abelianization(&t.presentation, bound).unwrap().to_string(), "0, 0");
        }
        for bound in 3..=6 {
            let t = embed(&builtin::rationals(), &EmbedOptions::new(EmbeddingMode::TorsionFree, bound)).unwrap();
            assert_eq!(abelianization(&t.presentation, bound).unwrap().to_string(), "1, 0");
        }
    }

    #[test]
    fn indexed_rejected() {
        assert_eq!(
            abelianization(&builtin::rationals(), 3),
            Err(AbelianError::IndexedAlphabet)
        );
    }
}
