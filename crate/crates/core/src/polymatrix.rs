//! Small dense matrices of forms, with determinants, minors and pfaffians.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(ring: Ring, entries: Vec<Vec<MultiPoly>>) -> PolyMatrix {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols, "ragged matrix");
            for e in row {
                assert_eq!(e.ring(), ring, "entry from a different ring");
                data.push(e);
            }
        }
        PolyMatrix { ring, rows, cols, data }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let t = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).clone()).collect())
            .collect();
        PolyMatrix::new(self.ring, t)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j).add(self.get(j, i)).is_zero()))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let e = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        PolyMatrix::new(self.ring, e)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let e = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        let mut acc: Option<MultiPoly> = None;
                        for k in 0..self.cols {
                            let t = self.get(i, k).mul(other.get(k, j));
                            if t.is_zero() {
                                continue;
                            }
                            acc = Some(match acc {
                                Some(a) => a.add(&t),
                                None => t,
                            });
                        }
                        acc.unwrap_or_else(|| MultiPoly::zero(self.ring, 0))
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(self.ring, e)
    }

    pub fn determinant(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(determinant(&self.entries(), &MultiPoly::one(self.ring)))
    }

    /// All `k x k` minors, rows and columns in lexicographic subset order.
    pub fn minors(&self, k: usize) -> Vec<MultiPoly> {
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                out.push(self.submatrix(&rs, &cs).determinant().unwrap());
            }
        }
        out
    }

    pub fn pfaffian(&self) -> Result<MultiPoly> {
        if !self.is_skew() {
            return Err(Error::NotSkew);
        }
        if self.rows % 2 == 1 {
            return Err(Error::OddPfaffian(self.rows));
        }
        Ok(pfaffian(&self.entries(), &MultiPoly::one(self.ring)))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Laplace expansion along the first row. Fine for the sizes used here (at most 7).
pub fn determinant<T: RingElement>(m: &[Vec<T>], one: &T) -> T {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<T> = None;
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = m[0][j].mul(&determinant(&minor, one));
        let t = if j % 2 == 1 { t.neg() } else { t };
        acc = Some(match acc {
            Some(a) => a.add(&t),
            None => t,
        });
    }
    acc.unwrap_or_else(|| one.sub(one))
}

/// Pfaffian of an even skew matrix, expanding along the first row:
/// `pf = sum_j (-1)^(j+1) a_{0j} pf(minor_{0j})` with `pf([[0,a],[-a,0]]) = a`.
pub fn pfaffian<T: RingElement>(m: &[Vec<T>], one: &T) -> T {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    let mut acc: Option<T> = None;
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<T>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let t = m[0][j].mul(&pfaffian(&minor, one));
        let t = if j % 2 == 0 { t.neg() } else { t };
        acc = Some(match acc {
            Some(a) => a.add(&t),
            None => t,
        });
    }
    acc.unwrap_or_else(|| one.sub(one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Scalar};

    fn q(n: i64) -> Scalar {
        Field::Rational.int(n)
    }

    #[test]
    fn pfaffian_small_cases() {
        let one = q(1);
        let m2 = vec![vec![q(0), q(5)], vec![q(-5), q(0)]];
        assert_eq!(pfaffian(&m2, &one), q(5));
        // a12 a34 - a13 a24 + a14 a23 with a12..a34 = 2,3,5,7,11,13
        let (a12, a13, a14, a23, a24, a34) = (2, 3, 5, 7, 11, 13);
        let m4 = vec![
            vec![q(0), q(a12), q(a13), q(a14)],
            vec![q(-a12), q(0), q(a23), q(a24)],
            vec![q(-a13), q(-a23), q(0), q(a34)],
            vec![q(-a14), q(-a24), q(-a34), q(0)],
        ];
        assert_eq!(pfaffian(&m4, &one), q(a12 * a34 - a13 * a24 + a14 * a23));
        assert_eq!(determinant(&m4, &one), q((a12 * a34 - a13 * a24 + a14 * a23).pow(2)));
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(7, 6).len(), 7);
        assert_eq!(subsets(4, 3)[0], vec![0, 1, 2]);
    }
}
