//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut echelon = Echelon::new(rows.first().map_or(0, Vec::len));
    rows.iter().filter(|r| echelon.insert(r.to_vec())).count()
}

/// Determinant of a square matrix.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let pivot_row = m[col].clone();
            for (v, pv) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * pv;
            }
        }
    }
    det
}

/// Coordinates of `target` in the span of the linearly independent
/// `basis` vectors, or `None` if it lies outside their span.
pub fn coordinates(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let d = target.len();
    // augmented system: columns are the basis vectors, last column the target
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            basis
                .iter()
                .map(|b| b[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(p, pivot_row);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * pv;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k].clone()).collect())
}

/// Incrementally built reduced row echelon form. The pivot of a row is its
/// first nonzero column, so callers order columns by priority.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, increasing.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains(&col)
    }

    /// Reduces `row` against the stored rows; the result vanishes on every
    /// pivot column.
    pub fn reduce(&self, mut row: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(row.len(), self.width);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        row
    }

    /// Adds a row; returns `false` if it was already in the span.
    pub fn insert(&mut self, row: Vec<Rational>) -> bool {
        let mut row = self.reduce(row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for r in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, row: Vec<Rational>) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        assert_eq!(determinant(&[]), int(1));
        assert_eq!(
            determinant(&m(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]])),
            int(1)
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]])), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(
            coordinates(&basis, &[int(2), int(3), int(5)]),
            Some(vec![int(2), int(3)])
        );
        assert_eq!(coordinates(&basis, &[int(1), int(1), int(1)]), None);
        assert_eq!(coordinates(&m(&[&[2]]), &[int(1)]), Some(vec![frac(1, 2)]));
    }

    #[test]
    fn echelon_reduces_to_normal_form() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![int(1), int(1), int(0)]));
        assert!(!e.insert(vec![int(2), int(2), int(0)]));
        assert!(e.insert(vec![int(0), int(1), int(1)]));
        assert_eq!(e.pivots(), vec![0, 1]);
        let r = e.reduce(vec![int(1), int(0), int(0)]);
        assert_eq!(r, vec![int(0), int(0), int(1)]);
        assert!(e.contains(vec![int(1), int(2), int(1)]));
    }
}
