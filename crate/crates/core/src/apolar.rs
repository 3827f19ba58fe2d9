//! Perpendicular ideals, apolar algebras and the inverse-system correspondence.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::poly::{apply, Monomial, MultiPoly, Ring};
use crate::scalar::Scalar;

pub const DEFAULT_CAP: u32 = 8;

/// A homogeneous ideal stored degree by degree, up to `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    ring: Ring,
    cap: u32,
    pieces: BTreeMap<u32, RowSpace>,
}

impl GradedIdeal {
    /// Wraps explicit graded pieces. Degrees `0..=cap` missing from `pieces`
    /// are taken to be zero.
    pub fn from_pieces(ring: Ring, cap: u32, pieces: BTreeMap<u32, RowSpace>) -> GradedIdeal {
        let mut pieces = pieces;
        for d in 0..=cap {
            pieces
                .entry(d)
                .or_insert_with(|| RowSpace::zero(ring.field, ring.dim(d)));
        }
        pieces.retain(|d, _| *d <= cap);
        GradedIdeal { ring, cap, pieces }
    }

    /// The ideal generated by homogeneous `gens`, computed through `cap`.
    pub fn from_generators(ring: Ring, gens: &[MultiPoly], cap: u32) -> GradedIdeal {
        let mut pieces = BTreeMap::new();
        for d in 0..=cap {
            let mut rows = Vec::new();
            for g in gens.iter().filter(|g| !g.is_zero() && g.degree() <= d) {
                assert_eq!(g.ring(), ring, "generator from a different ring");
                rows.extend(multiples(g, d - g.degree()));
            }
            pieces.insert(d, RowSpace::from_vectors(ring.field, ring.dim(d), rows));
        }
        GradedIdeal { ring, cap, pieces }
    }

    /// The unit ideal.
    pub fn unit(ring: Ring, cap: u32) -> GradedIdeal {
        let pieces = (0..=cap)
            .map(|d| (d, RowSpace::full(ring.field, ring.dim(d))))
            .collect();
        GradedIdeal { ring, cap, pieces }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The degree-`d` piece; the zero space above the cap is never returned,
    /// callers must stay within `0..=cap`.
    pub fn piece(&self, d: u32) -> &RowSpace {
        &self.pieces[&d]
    }

    pub fn piece_polys(&self, d: u32) -> Vec<MultiPoly> {
        let basis = self.ring.monomials(d);
        let b = &self.piece(d).basis;
        (0..b.rows())
            .map(|i| MultiPoly::from_vector(self.ring, &basis, b.row(i)))
            .collect()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.piece(d).dim()
    }

    /// `dim (R/I)_d` for `d = 0..=cap`.
    pub fn quotient_hilbert_function(&self) -> Vec<usize> {
        (0..=self.cap).map(|d| self.ring.dim(d) - self.dim(d)).collect()
    }

    /// Whether every stored piece of `self` lies inside the matching piece of `other`.
    pub fn is_contained_in(&self, other: &GradedIdeal) -> bool {
        (0..=self.cap.min(other.cap)).all(|d| other.piece(d).contains_space(self.piece(d)))
    }

    /// Checks `R_1 * I_d ⊆ I_{d+1}` for all stored consecutive degrees.
    pub fn is_closed(&self) -> bool {
        (0..self.cap).all(|d| {
            let next = self.piece(d + 1);
            self.piece_polys(d)
                .iter()
                .all(|g| multiples(g, 1).iter().all(|v| next.contains(v)))
        })
    }

    /// The lowest-degree minimal generators: a canonical complement of
    /// `R_1 * I_{d-1}` in `I_d` for each degree.
    pub fn minimal_generators(&self) -> Vec<MultiPoly> {
        let mut out = Vec::new();
        for d in 0..=self.cap {
            let lower = if d == 0 {
                RowSpace::zero(self.ring.field, 1)
            } else {
                let rows: Vec<_> = self.piece_polys(d - 1).iter().flat_map(|g| multiples(g, 1)).collect();
                RowSpace::from_vectors(self.ring.field, self.ring.dim(d), rows)
            };
            let comp = self.piece(d).complement_of(&lower);
            let basis = self.ring.monomials(d);
            for i in 0..comp.rows() {
                out.push(MultiPoly::from_vector(self.ring, &basis, comp.row(i)));
            }
        }
        out
    }
}

/// Coefficient vectors of `m * g` for every monomial `m` of degree `e`.
pub(crate) fn multiples(g: &MultiPoly, e: u32) -> Vec<Vec<Scalar>> {
    let ring = g.ring();
    let target = ring.monomials(g.degree() + e);
    ring.monomials(e)
        .monomials
        .iter()
        .map(|m| g.mul_monomial(m).to_vector(&target))
        .collect()
}

/// Matrix of `D -> D(f)` on `T_d`: row `i` is the image of the `i`-th monomial.
fn pairing_matrix(f: &MultiPoly, d: u32) -> Matrix {
    let ops = f.ring().dual();
    let field = f.field();
    let target = f.ring().monomials(f.degree() - d);
    let rows = ops
        .monomials(d)
        .monomials
        .iter()
        .map(|m| {
            let op = MultiPoly::term(ops, *m, field.one());
            apply(&op, f).expect("ring checked").to_vector(&target)
        })
        .collect();
    Matrix::from_rows(field, target.len(), rows)
}

/// RREF basis of `(f^perp)_d` in the operator ring.
pub fn perp(f: &MultiPoly, d: u32) -> Matrix {
    let ops = f.ring().dual();
    if d > f.degree() || f.is_zero() {
        return Matrix::identity(f.field(), ops.dim(d));
    }
    pairing_matrix(f, d).left_kernel()
}

pub fn perp_space(f: &MultiPoly, d: u32) -> RowSpace {
    RowSpace::new(&perp(f, d))
}

/// `f^perp` stored through `cap`.
pub fn perp_ideal(f: &MultiPoly, cap: u32) -> GradedIdeal {
    let pieces = (0..=cap).map(|d| (d, perp_space(f, d))).collect();
    GradedIdeal::from_pieces(f.ring().dual(), cap, pieces)
}

/// `HF(A^f)(d)` for `d = 0..=deg f`.
pub fn hilbert_function(f: &MultiPoly) -> Vec<usize> {
    if f.is_zero() {
        return vec![];
    }
    (0..=f.degree()).map(|d| pairing_matrix(f, d).rank()).collect()
}

/// The middle catalecticant of a quartic: entry `(i, j) = (D_i D_j)(f)` over
/// the degree-2 operator monomials in grevlex order.
pub fn catalecticant(f: &MultiPoly) -> Result<Matrix> {
    if f.degree() != 4 {
        return Err(Error::Shape {
            expected: "quartic".into(),
            got: format!("degree {}", f.degree()),
        });
    }
    let ops = f.ring().dual();
    let field = f.field();
    let quad = ops.monomials(2);
    let n = quad.len();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..=i {
            let op = MultiPoly::term(ops, quad.monomials[i].mul(&quad.monomials[j]), field.one());
            let v = apply(&op, f)?.coefficient(&Monomial::one());
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    Ok(m)
}

/// The form whose perp contains the given operators in degree `n - 1` (and
/// degree `n` when `strict`), normalized to leading coefficient 1.
pub fn dual_socle(ideal: &GradedIdeal, socle_degree: u32, strict: bool) -> Result<MultiPoly> {
    let mut ops = ideal.piece_polys(socle_degree - 1);
    if strict {
        ops.extend(ideal.piece_polys(socle_degree));
    }
    dual_socle_of(ideal.ring(), &ops, socle_degree)
}

/// Joint kernel in degree `n` of a list of operators (of degree at most `n`).
pub fn dual_socle_of(ops_ring: Ring, ops: &[MultiPoly], n: u32) -> Result<MultiPoly> {
    let forms = ops_ring.dual();
    let field = ops_ring.field;
    let basis = forms.monomials(n);
    // Column k: the images of the k-th monomial under every operator, stacked.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for op in ops {
        let tgt = forms.monomials(n - op.degree());
        let images: Vec<Vec<Scalar>> = basis
            .monomials
            .iter()
            .map(|m| apply(op, &MultiPoly::term(forms, *m, field.one())).map(|p| p.to_vector(&tgt)))
            .collect::<Result<_>>()?;
        for r in 0..tgt.len() {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
        }
    }
    let kernel = Matrix::from_rows(field, basis.len(), rows).kernel();
    if kernel.rows() != 1 {
        return Err(Error::DualSocleKernel(kernel.rows()));
    }
    Ok(MultiPoly::from_vector(forms, &basis, kernel.row(0)).normalized())
}

/// Compares `(f^perp : D)` with `D(f)^perp` degree by degree. The colon is
/// built from `f^perp` alone: `E` lies in it iff `E*D` reduces to zero
/// modulo `(f^perp)_{d+e}`.
pub fn colon_perp_check(f: &MultiPoly, op: &MultiPoly) -> Result<bool> {
    if op.degree() > f.degree() {
        return Err(Error::Shape {
            expected: format!("operator of degree at most {}", f.degree()),
            got: format!("degree {}", op.degree()),
        });
    }
    let g = apply(op, f)?;
    let ops = op.ring();
    let e = op.degree();
    for d in 0..=(f.degree() - e) {
        let big = perp_space(f, d + e);
        let rems: Vec<Vec<Scalar>> = multiples(op, d).iter().map(|v| big.reduce(v)).collect();
        let lhs = RowSpace::new(&Matrix::from_rows(ops.field, ops.dim(d + e), rems).left_kernel());
        let rhs = if g.is_zero() {
            RowSpace::full(ops.field, ops.dim(d))
        } else {
            perp_space(&g, d)
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn x(s: &str) -> MultiPoly {
        parse_poly(s, Ring::plane(Q)).unwrap()
    }

    fn d(s: &str) -> MultiPoly {
        parse_poly(s, Ring::plane_ops(Q)).unwrap()
    }

    #[test]
    fn perp_of_power() {
        let p = perp(&x("x0^4"), 1);
        let expect = Matrix::from_ints(Q, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(p, expect);
    }

    #[test]
    fn klein_hilbert_function() {
        let k = x("x0^3*x1 + x1^3*x2 + x2^3*x0");
        assert_eq!(hilbert_function(&k), vec![1, 3, 6, 3, 1]);
        assert_eq!(perp(&k, 3).rows(), 7);
        assert_eq!(perp(&k, 2).rows(), 0);
        assert_eq!(catalecticant(&k).unwrap().rank(), 6);
    }

    #[test]
    fn small_rank_hilbert_functions() {
        assert_eq!(hilbert_function(&x("x0^4")), vec![1, 1, 1, 1, 1]);
        assert_eq!(hilbert_function(&x("x0^4 + x1^4")), vec![1, 2, 2, 2, 1]);
        assert_eq!(catalecticant(&x("x0^4")).unwrap().rank(), 1);
    }

    #[test]
    fn dual_socle_roundtrip() {
        let k = x("x0^3*x1 + x1^3*x2 + x2^3*x0");
        let i = perp_ideal(&k, 4);
        assert_eq!(dual_socle(&i, 4, false).unwrap(), k);
        assert_eq!(dual_socle(&i, 4, true).unwrap(), k);
        let mono = GradedIdeal::from_generators(Ring::plane_ops(Q), &[d("d1"), d("d2")], 4);
        assert_eq!(dual_socle(&mono, 4, false).unwrap(), x("x0^4"));
    }

    #[test]
    fn dual_socle_rejects_small_ideal() {
        let i = GradedIdeal::from_generators(Ring::plane_ops(Q), &[d("d2")], 4);
        assert!(matches!(dual_socle(&i, 4, false), Err(Error::DualSocleKernel(5))));
    }

    #[test]
    fn colon_trivial_cases() {
        let k = x("x0^3*x1 + x1^3*x2 + x2^3*x0");
        assert!(colon_perp_check(&k, &MultiPoly::one(Ring::plane_ops(Q))).unwrap());
        let kill = perp(&k, 3);
        let op = MultiPoly::from_vector(Ring::plane_ops(Q), &Ring::plane_ops(Q).monomials(3), kill.row(0));
        assert!(colon_perp_check(&k, &op).unwrap());
        assert!(colon_perp_check(&k, &d("d0 + 2*d1 - d2")).unwrap());
    }

    #[test]
    fn generated_ideal_is_closed() {
        let i = GradedIdeal::from_generators(Ring::plane_ops(Q), &[d("d0^2"), d("d1*d2")], 5);
        assert!(i.is_closed());
        assert_eq!(i.minimal_generators().len(), 2);
        assert!(perp_ideal(&x("x0^3*x1 + x1^3*x2 + x2^3*x0"), 6).is_closed());
    }
}
