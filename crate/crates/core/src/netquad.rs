//! Nets of quadrics in four variables: the symmetric matrix, its determinant,
//! the vertex locus of singular members, and the apolar algebra `A^q`.

use std::collections::BTreeMap;

use crate::apolar::GradedIdeal;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::poly::{apply, Monomial, MultiPoly, Ring, Side};
use crate::polymatrix::PolyMatrix;
use crate::scalar::{Field, Scalar};

/// Three quadrics `Q_i = z^T M_i z`; `M_i` symmetric with off-diagonal entries
/// half the mixed coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetOfQuadrics {
    mats: [Matrix; 3],
}

impl NetOfQuadrics {
    pub fn new(mats: [Matrix; 3]) -> Result<NetOfQuadrics> {
        let field = mats[0].field();
        for m in &mats {
            if (m.rows(), m.cols()) != (4, 4) {
                return Err(Error::Shape {
                    expected: "4x4 matrix".into(),
                    got: format!("{}x{}", m.rows(), m.cols()),
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !m.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(NetOfQuadrics { mats })
    }

    /// From three quadratic forms in `z0..z3`.
    pub fn from_quadrics(qs: &[MultiPoly]) -> Result<NetOfQuadrics> {
        if qs.len() != 3 {
            return Err(Error::Shape {
                expected: "three quadrics".into(),
                got: format!("{} forms", qs.len()),
            });
        }
        let ring = qs[0].ring();
        let field = ring.field;
        let half = field.ratio(1, 2);
        let mut mats = Vec::new();
        for q in qs {
            if q.ring() != ring || ring.nvars != 4 || ring.side != Side::Symbol {
                return Err(Error::RingMismatch("net quadrics live in z0..z3".into()));
            }
            if !q.is_zero() && q.degree() != 2 {
                return Err(Error::Shape {
                    expected: "quadric".into(),
                    got: format!("degree {}", q.degree()),
                });
            }
            let mut m = Matrix::zeros(field, 4, 4);
            for (mono, c) in q.terms() {
                let vars: Vec<usize> = (0..4)
                    .flat_map(|i| std::iter::repeat_n(i, mono.0[i] as usize))
                    .collect();
                let (i, j) = (vars[0], vars[1]);
                if i == j {
                    m.set(i, i, c.clone());
                } else {
                    let h = c * &half;
                    m.set(i, j, h.clone());
                    m.set(j, i, h);
                }
            }
            mats.push(m);
        }
        NetOfQuadrics::new(mats.try_into().unwrap())
    }

    pub fn field(&self) -> Field {
        self.mats[0].field()
    }

    pub fn matrices(&self) -> &[Matrix; 3] {
        &self.mats
    }

    pub fn quadric_ring(&self) -> Ring {
        Ring::space(self.field())
    }

    pub fn quadrics(&self) -> [MultiPoly; 3] {
        let ring = self.quadric_ring();
        self.mats.clone().map(|m| {
            let mut terms = Vec::new();
            for i in 0..4 {
                for j in i..4 {
                    let mut e = [0u8; 4];
                    e[i] += 1;
                    e[j] += 1;
                    let c = if i == j {
                        m.get(i, i).clone()
                    } else {
                        m.get(i, j) * &self.field().int(2)
                    };
                    terms.push((Monomial(e), c));
                }
            }
            MultiPoly::from_terms(ring, 2, terms)
        })
    }

    /// Linear independence of the three quadrics.
    pub fn is_nondegenerate(&self) -> bool {
        let rows: Vec<Vec<Scalar>> = self.quadrics().iter().map(|q| q.coefficient_vector()).collect();
        Matrix::from_rows(self.field(), 10, rows).rank() == 3
    }

    pub fn reduce_mod(&self, p: u64) -> Result<NetOfQuadrics> {
        let mut out = Vec::new();
        for (k, m) in self.mats.iter().enumerate() {
            out.push(m.reduce_mod(p).map_err(|e| match e {
                Error::Reduction { entry, source } => Error::Reduction {
                    entry: format!("M{k}{entry}"),
                    source,
                },
                e => e,
            })?);
        }
        NetOfQuadrics::new(out.try_into().unwrap())
    }

    /// The net transformed by a change of coordinates `z -> g z`.
    pub fn compose_linear(&self, g: &Matrix) -> Result<NetOfQuadrics> {
        let mats = self.mats.clone().map(|m| g.transpose().mul(&m).mul(g));
        NetOfQuadrics::new(mats)
    }
}

/// The ring of the parameter `u` (coordinates on `U`), printed as `x0..x2`.
pub fn u_ring(field: Field) -> Ring {
    Ring::plane(field)
}

/// `M(u) = u0 M0 + u1 M1 + u2 M2`.
pub fn net_matrix(q: &NetOfQuadrics) -> PolyMatrix {
    let field = q.field();
    let ring = u_ring(field);
    let entries = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let cs: Vec<Scalar> = q.mats.iter().map(|m| m.get(i, j).clone()).collect();
                    MultiPoly::linear_form(ring, &cs)
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(ring, entries)
}

pub fn discriminant(q: &NetOfQuadrics) -> Result<MultiPoly> {
    let d = net_matrix(q).determinant()?;
    if d.is_zero() {
        return Err(Error::degenerate("discriminant", "det M(u) vanishes identically"));
    }
    Ok(d)
}

/// The vertex locus: 3x3 minors of the 4x3 matrix with columns `M_i z`.
#[derive(Clone, Debug)]
pub struct JacobianLocus {
    pub minors: Vec<MultiPoly>,
    pub ideal: GradedIdeal,
    /// Set when the minors are dependent or cut out more than a curve
    /// (their quotient grows faster than linearly, i.e. a common factor).
    pub degenerate: bool,
}

pub fn jacobian_minors(q: &NetOfQuadrics) -> Result<JacobianLocus> {
    let ring = q.quadric_ring();
    let entries = (0..4)
        .map(|r| (0..3).map(|i| MultiPoly::linear_form(ring, q.mats[i].row(r))).collect())
        .collect();
    let m = PolyMatrix::new(ring, entries);
    let minors = m.minors(3);
    let ideal = GradedIdeal::from_generators(ring, &minors, 6);
    let hf = ideal.quotient_hilbert_function();
    let independent = ideal.dim(3) == 4;
    let linear_growth = hf[6] - hf[5] <= hf[5] - hf[4];
    Ok(JacobianLocus {
        minors,
        ideal,
        degenerate: !(independent && linear_growth),
    })
}

/// `q^perp` in `w0..w3`: operators killing all three quadrics.
pub fn q_perp(q: &NetOfQuadrics, cap: u32) -> Result<GradedIdeal> {
    let ring = q.quadric_ring();
    let ops = ring.dual();
    let field = q.field();
    if !field.supports_factorials_up_to(2) {
        return Err(Error::Characteristic(field.characteristic(), 2));
    }
    let quads = q.quadrics();
    let mut pieces = BTreeMap::new();
    for d in 0..=cap {
        let piece = if d > 2 {
            RowSpace::full(field, ops.dim(d))
        } else {
            let basis = ops.monomials(d);
            let tgt = ring.monomials(2 - d);
            let rows: Vec<Vec<Scalar>> = basis
                .monomials
                .iter()
                .map(|m| {
                    let op = MultiPoly::term(ops, *m, field.one());
                    quads
                        .iter()
                        .flat_map(|qq| apply(&op, qq).unwrap().to_vector(&tgt))
                        .collect()
                })
                .collect();
            let cols = 3 * tgt.len();
            RowSpace::new(&Matrix::from_rows(field, cols, rows).left_kernel())
        };
        pieces.insert(d, piece);
    }
    let ideal = GradedIdeal::from_pieces(ops, cap, pieces);
    let hf = ideal.quotient_hilbert_function();
    if hf[..4] != [1, 4, 3, 0] {
        return Err(Error::non_general(
            "q_perp",
            format!("A^q has Hilbert function {:?}", &hf[..4.min(hf.len())]),
        ));
    }
    Ok(ideal)
}

/// The pairing `<D, Q_i>` of a quadratic operator with the net, as a vector in `k^3`.
pub fn pair_with_net(q: &NetOfQuadrics, op: &MultiPoly) -> Result<Vec<Scalar>> {
    q.quadrics()
        .iter()
        .map(|qq| Ok(apply(op, qq)?.coefficient(&Monomial::one())))
        .collect()
}

/// Rank of `mu_r: W -> U`, `w -> (<r w, Q_i>)_i`, is below 3.
pub fn unstable_plane(q: &NetOfQuadrics, r: &MultiPoly) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::ZeroInput("linear form r"));
    }
    let ops = q.quadric_ring().dual();
    if r.ring() != ops || r.degree() != 1 {
        return Err(Error::RingMismatch("r must be a linear form in w0..w3".into()));
    }
    let rows = (0..4)
        .map(|k| pair_with_net(q, &r.mul(&MultiPoly::var(ops, k))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(q.field(), 3, rows).rank() < 3)
}

/// The Kleinian net `(1/2 z1^2 - z0 z2, 1/2 z2^2 - z0 z3, 1/2 z3^2 - z0 z1)`.
pub fn klein_net(field: Field) -> NetOfQuadrics {
    let ring = Ring::space(field);
    let qs: Vec<MultiPoly> = ["1/2*z1^2 - z0*z2", "1/2*z2^2 - z0*z3", "1/2*z3^2 - z0*z1"]
        .iter()
        .map(|s| crate::parse::parse_poly(s, ring).unwrap())
        .collect();
    NetOfQuadrics::from_quadrics(&qs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    const Q: Field = Field::Rational;

    fn z(s: &str) -> MultiPoly {
        parse_poly(s, Ring::space(Q)).unwrap()
    }

    fn u(s: &str) -> MultiPoly {
        parse_poly(s, u_ring(Q)).unwrap()
    }

    #[test]
    fn klein_net_matrix() {
        let m = net_matrix(&klein_net(Q));
        let expect = [
            ["0", "-1/2*x2", "-1/2*x0", "-1/2*x1"],
            ["-1/2*x2", "1/2*x0", "0", "0"],
            ["-1/2*x0", "0", "1/2*x1", "0"],
            ["-1/2*x1", "0", "0", "1/2*x2"],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!(m.get(i, j).sub(&u(expect[i][j])).is_zero(), "({i},{j})");
            }
        }
    }

    #[test]
    fn klein_discriminant() {
        let d = discriminant(&klein_net(Q)).unwrap();
        let expect = u("x0^3*x2 + x1^3*x0 + x2^3*x1").scale(&Q.ratio(-1, 16));
        assert_eq!(d, expect);
    }

    #[test]
    fn rank_three_net_is_degenerate() {
        let q = NetOfQuadrics::from_quadrics(&[z("z0^2"), z("z1^2"), z("z2^2")]).unwrap();
        assert!(matches!(discriminant(&q), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn klein_apolar_algebra() {
        let i = q_perp(&klein_net(Q), 4).unwrap();
        assert_eq!(i.quotient_hilbert_function(), vec![1, 4, 3, 0, 0]);
        assert_eq!(i.dim(2), 7);
        assert_eq!(i.dim(3), 20);
    }

    #[test]
    fn jacobian_locus() {
        let j = jacobian_minors(&klein_net(Q)).unwrap();
        assert_eq!(j.minors.len(), 4);
        assert!(!j.degenerate);
        let bad = NetOfQuadrics::from_quadrics(&[z("z0^2"), z("z0*z1"), z("z0*z2")]).unwrap();
        assert!(jacobian_minors(&bad).unwrap().degenerate);
    }

    #[test]
    fn unstable_plane_basics() {
        let q = klein_net(Q);
        let w = Ring::space_ops(Q);
        assert!(!unstable_plane(&q, &MultiPoly::var(w, 0)).unwrap());
        assert!(unstable_plane(&q, &MultiPoly::zero(w, 1)).is_err());
    }

    #[test]
    fn reduction_mod_11_and_2() {
        let q = klein_net(Q).reduce_mod(11).unwrap();
        assert_eq!(q.matrices()[0].get(1, 1), &Field::prime(11).unwrap().int(6));
        assert!(klein_net(Q).reduce_mod(2).is_err());
    }
}
