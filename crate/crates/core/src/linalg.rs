//! Exact Gaussian elimination over ℚ(i, √2): reduced row echelon form,
//! nullspaces, spans with coordinate recovery, and dense inverses.

use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

pub type Vector = Vec<FieldScalar>;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. `companion` rows receive the same row operations.
fn reduce(
    rows: &mut Vec<Vector>,
    companion: &mut Option<&mut Vec<Vector>>,
    ncols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(c) = companion.as_deref_mut() {
            c.swap(r, p);
        }
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            if let Some(c) = companion.as_deref_mut() {
                for x in c[r].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
        }
        let pivot_row = rows[r].clone();
        let pivot_comp = companion.as_deref().map(|c| c[r].clone());
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            if let (Some(c), Some(pc)) = (companion.as_deref_mut(), pivot_comp.as_ref()) {
                for (x, y) in c[i].iter_mut().zip(pc) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of a matrix given as rows.
pub fn rank(rows: &[Vector]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    reduce(&mut m, &mut None, ncols).len()
}

/// A basis of `{x : A x = 0}` for `A` given as rows with `ncols` columns.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = reduce(&mut m, &mut None, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![FieldScalar::zero(); ncols];
            x[f] = FieldScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -&m[r][f];
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix given as rows.
pub fn inverse(rows: &[Vector]) -> Result<Vec<Vector>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    let mut m = rows.to_vec();
    let mut id: Vec<Vector> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        FieldScalar::one()
                    } else {
                        FieldScalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pivots = reduce(&mut m, &mut Some(&mut id), n);
    if pivots.len() != n {
        return Err(Error::SingularBody);
    }
    Ok(id)
}

/// The span of a list of vectors, prepared for exact membership tests and
/// coordinate recovery.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    count: usize,
    echelon: Vec<Vector>,
    transform: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(vectors: &[Vector]) -> Self {
        let len = vectors.first().map_or(0, Vec::len);
        let count = vectors.len();
        let mut echelon = vectors.to_vec();
        let mut transform: Vec<Vector> = (0..count)
            .map(|i| {
                (0..count)
                    .map(|j| {
                        if i == j {
                            FieldScalar::one()
                        } else {
                            FieldScalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let pivots = reduce(&mut echelon, &mut Some(&mut transform), len);
        echelon.truncate(pivots.len());
        transform.truncate(pivots.len());
        Span {
            len,
            count,
            echelon,
            transform,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// True when the spanning vectors are linearly independent.
    pub fn is_independent(&self) -> bool {
        self.dim() == self.count
    }

    /// Coefficients `c` with `Σ c_k v_k = target`, or `None` when the target
    /// lies outside the span.
    pub fn coordinates(&self, target: &[FieldScalar]) -> Option<Vector> {
        assert_eq!(target.len(), self.len, "vector length mismatch");
        let mut residual = target.to_vec();
        let mut coords = vec![FieldScalar::zero(); self.count];
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = residual[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(&self.echelon[k]) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
            for (x, y) in coords.iter_mut().zip(&self.transform[k]) {
                if !y.is_zero() {
                    *x += &(&c * y);
                }
            }
        }
        residual.iter().all(FieldScalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, target: &[FieldScalar]) -> bool {
        self.coordinates(target).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| FieldScalar::from_i64(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let dot = rows[0]
                .iter()
                .zip(x)
                .fold(FieldScalar::zero(), |a, (p, q)| a + p * q);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inverse_over_gaussian_rationals() {
        let h = FieldScalar::frac(1, 2) * FieldScalar::sqrt2();
        let ih = &h * &FieldScalar::i();
        let s = vec![vec![h.clone(), ih.clone()], vec![h.clone(), -&ih]];
        let inv = inverse(&s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = (0..2).fold(FieldScalar::zero(), |a, k| a + &s[i][k] * &inv[k][j]);
                assert_eq!(e, FieldScalar::from_i64((i == j) as i64));
            }
        }
        assert_eq!(inverse(&[v(&[1, 2]), v(&[2, 4])]), Err(Error::SingularBody));
    }

    #[test]
    fn span_recovers_coordinates() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let span = Span::new(&basis);
        assert!(span.is_independent());
        let c = span.coordinates(&v(&[2, 5, 3])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(span.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
