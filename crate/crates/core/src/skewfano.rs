//! Skew nets on a 7-dimensional space: construction from the syzygies of
//! `A^q`, pfaffians, isotropic 3-planes and their twisted cubics, and lines.

use crate::apolar::GradedIdeal;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::poly::{Monomial, MultiPoly, Point, Ring};
use crate::polymatrix::{pfaffian as pf_generic, PolyMatrix};
use crate::resolve::{linear_syzygies, net_blocks, Resolution};
use crate::scalar::{Field, Scalar};

/// `eta: Lambda^2 V -> N` as three skew 7x7 matrices, one per basis vector of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNet {
    forms: [Matrix; 3],
    /// The quadrics in `w0..w3` that the basis of `V` stands for, if known.
    v_basis: Option<Vec<MultiPoly>>,
    /// Linear map from `N`-coordinates to coordinates on the parameter space
    /// of the net, when attached.
    n_to_udual: Option<Matrix>,
}

impl SkewNet {
    pub fn new(forms: [Matrix; 3]) -> Result<SkewNet> {
        let field = forms[0].field();
        for m in &forms {
            if (m.rows(), m.cols()) != (7, 7) {
                return Err(Error::Shape {
                    expected: "7x7 matrix".into(),
                    got: format!("{}x{}", m.rows(), m.cols()),
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !m.is_skew() {
                return Err(Error::NotSkew);
            }
        }
        Ok(SkewNet {
            forms,
            v_basis: None,
            n_to_udual: None,
        })
    }

    pub fn zero(field: Field) -> SkewNet {
        let z = Matrix::zeros(field, 7, 7);
        SkewNet::new([z.clone(), z.clone(), z]).unwrap()
    }

    pub fn with_v_basis(mut self, basis: Vec<MultiPoly>) -> SkewNet {
        assert_eq!(basis.len(), 7);
        self.v_basis = Some(basis);
        self
    }

    pub fn with_n_to_udual(mut self, m: Matrix) -> SkewNet {
        self.n_to_udual = Some(m);
        self
    }

    pub fn field(&self) -> Field {
        self.forms[0].field()
    }

    pub fn forms(&self) -> &[Matrix; 3] {
        &self.forms
    }

    pub fn v_basis(&self) -> Option<&[MultiPoly]> {
        self.v_basis.as_deref()
    }

    pub fn n_to_udual(&self) -> Option<&Matrix> {
        self.n_to_udual.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(Matrix::is_zero)
    }

    /// `eta(u ^ v)` for coordinate vectors `u, v` in `V`.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> [Scalar; 3] {
        let field = self.field();
        self.forms.clone().map(|m| {
            let mv = m.mul_vec(v);
            crate::matrix::dot(u, &mv, field)
        })
    }

    /// The net in the basis given by the rows of `g`: forms become `g M g^T`.
    pub fn congruence(&self, g: &Matrix) -> Result<SkewNet> {
        let forms = self.forms.clone().map(|m| g.mul(&m).mul(&g.transpose()));
        let mut out = SkewNet::new(forms)?;
        if let Some(vb) = &self.v_basis {
            let ring = vb[0].ring();
            let nb = (0..7)
                .map(|i| {
                    g.row(i)
                        .iter()
                        .zip(vb)
                        .fold(MultiPoly::zero(ring, 2), |acc, (c, p)| acc.add(&p.scale(c)))
                })
                .collect();
            out.v_basis = Some(nb);
        }
        out.n_to_udual = self.n_to_udual.clone();
        Ok(out)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<SkewNet> {
        let mut forms = Vec::new();
        for (k, m) in self.forms.iter().enumerate() {
            forms.push(m.reduce_mod(p).map_err(|e| match e {
                Error::Reduction { entry, source } => Error::Reduction {
                    entry: format!("eta_{k}{entry}"),
                    source,
                },
                e => e,
            })?);
        }
        let mut out = SkewNet::new(forms.try_into().unwrap())?;
        if let Some(vb) = &self.v_basis {
            out.v_basis = Some(vb.iter().map(|q| q.reduce_mod(p)).collect::<Result<_>>()?);
        }
        if let Some(m) = &self.n_to_udual {
            out.n_to_udual = Some(m.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Quadric `sum c_a v_a` for a coordinate vector in `V`.
    pub fn quadric(&self, coords: &[Scalar]) -> Result<MultiPoly> {
        let vb = self
            .v_basis
            .as_ref()
            .ok_or_else(|| Error::degenerate("skew net", "no quadric basis attached to V"))?;
        let ring = vb[0].ring();
        Ok(coords
            .iter()
            .zip(vb)
            .fold(MultiPoly::zero(ring, 2), |acc, (c, p)| acc.add(&p.scale(c))))
    }
}

/// Expresses Koszul syzygies of `V_q` through the minimal syzygies of `A^q`.
struct TorProduct {
    /// Rows: `R_1 * (linear syzygies)` then the three quadratic syzygies,
    /// as vectors in `(F_1)_4`; transposed for solving.
    system: Matrix,
    quad_basis: crate::poly::MonomialBasis,
    v_basis: Vec<MultiPoly>,
}

impl TorProduct {
    fn new(res: &Resolution) -> Result<TorProduct> {
        net_blocks(res)?;
        let ring = res.ring();
        let field = ring.field;
        let d1 = res.map(1);
        let d2 = res.map(2);
        let v_basis: Vec<MultiPoly> = (0..7).map(|c| d1.get(0, c).clone()).collect();
        let quad = ring.monomials(2);
        let lin = ring.monomials(1);
        let to_vec = |elem: &[MultiPoly]| -> Vec<Scalar> {
            elem.iter()
                .flat_map(|p| {
                    if p.is_zero() {
                        vec![field.zero(); quad.len()]
                    } else {
                        p.to_vector(&quad)
                    }
                })
                .collect()
        };
        let mut rows = Vec::new();
        for c in 0..8 {
            for l in &lin.monomials {
                let elem: Vec<MultiPoly> = (0..7).map(|r| d2.get(r, c).mul_monomial(l)).collect();
                rows.push(to_vec(&elem));
            }
        }
        for c in 8..11 {
            let elem: Vec<MultiPoly> = (0..7).map(|r| d2.get(r, c).clone()).collect();
            rows.push(to_vec(&elem));
        }
        let a = Matrix::from_rows(field, 70, rows);
        if a.rank() != 35 {
            return Err(Error::NonMinimalResolution(
                "degree-4 syzygies are not independent".into(),
            ));
        }
        Ok(TorProduct {
            system: a.transpose(),
            quad_basis: quad,
            v_basis,
        })
    }

    /// `eta(u ^ v)` for coordinate vectors in the basis `v_basis`.
    fn eta(&self, u: &[Scalar], v: &[Scalar]) -> Result<[Scalar; 3]> {
        let ring = self.v_basis[0].ring();
        let comb = |c: &[Scalar]| {
            c.iter()
                .zip(&self.v_basis)
                .fold(MultiPoly::zero(ring, 2), |acc, (x, p)| acc.add(&p.scale(x)))
        };
        let (pu, pv) = (comb(u), comb(v));
        // Koszul syzygy of (pu, pv): component a is u_a pv - v_a pu.
        let mut vec = Vec::with_capacity(70);
        for a in 0..7 {
            let e = pv.scale(&u[a]).sub(&pu.scale(&v[a]));
            if e.is_zero() {
                vec.extend(std::iter::repeat_n(ring.field.zero(), self.quad_basis.len()));
            } else {
                vec.extend(e.to_vector(&self.quad_basis));
            }
        }
        let x = self
            .system
            .solve(&vec)
            .ok_or_else(|| Error::NonMinimalResolution("Koszul syzygy is not in the syzygy module".into()))?;
        Ok([x[32].clone(), x[33].clone(), x[34].clone()])
    }
}

/// The skew net of `A^q`: `eta(p_i ^ p_j)` is the coefficient vector of the
/// Koszul syzygy on the three minimal degree-4 syzygies, modulo `R_1` times
/// the linear ones.
pub fn eta_from_tor(res: &Resolution) -> Result<SkewNet> {
    let tp = TorProduct::new(res)?;
    let field = res.ring().field;
    let id = Matrix::identity(field, 7);
    eta_in_basis(&tp, &id)
}

/// Same as [`eta_from_tor`] but in the basis of `V_q` given by the rows of
/// `g` (coordinates with respect to the canonical basis).
pub fn eta_from_tor_in_basis(res: &Resolution, g: &Matrix) -> Result<SkewNet> {
    let tp = TorProduct::new(res)?;
    eta_in_basis(&tp, g)
}

fn eta_in_basis(tp: &TorProduct, g: &Matrix) -> Result<SkewNet> {
    let field = g.field();
    let mut forms = [
        Matrix::zeros(field, 7, 7),
        Matrix::zeros(field, 7, 7),
        Matrix::zeros(field, 7, 7),
    ];
    for i in 0..7 {
        for j in (i + 1)..7 {
            let e = tp.eta(g.row(i), g.row(j))?;
            for k in 0..3 {
                forms[k].set(i, j, e[k].clone());
                forms[k].set(j, i, -&e[k]);
            }
        }
    }
    let ring = tp.v_basis[0].ring();
    let basis = (0..7)
        .map(|i| {
            g.row(i)
                .iter()
                .zip(&tp.v_basis)
                .fold(MultiPoly::zero(ring, 2), |acc, (c, p)| acc.add(&p.scale(c)))
        })
        .collect();
    Ok(SkewNet::new(forms)?.with_v_basis(basis))
}

/// The canonical basis of `V_q` with the net, for callers that want it
/// without a resolution.
pub fn v_basis(q_perp: &GradedIdeal) -> Vec<MultiPoly> {
    q_perp.piece_polys(2)
}

/// Pfaffian of an even skew matrix of forms.
pub fn pfaffian(m: &PolyMatrix) -> Result<MultiPoly> {
    m.pfaffian()
}

/// `Phi = sum_k eta_k d_k` as a 7x7 matrix of linear forms in `d0..d2`.
pub fn phi_matrix(eta: &SkewNet) -> PolyMatrix {
    let ring = Ring::plane_ops(eta.field());
    let entries = (0..7)
        .map(|i| {
            (0..7)
                .map(|j| {
                    let cs: Vec<Scalar> = eta.forms.iter().map(|m| m.get(i, j).clone()).collect();
                    MultiPoly::linear_form(ring, &cs)
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(ring, entries)
}

/// The seven principal 6x6 pfaffians of `Phi`; the `i`-th omits row and column `i`.
pub fn pfaffian_ideal(eta: &SkewNet) -> Vec<MultiPoly> {
    let phi = phi_matrix(eta);
    let ring = phi.ring();
    let one = MultiPoly::one(ring);
    (0..7)
        .map(|i| {
            let keep: Vec<usize> = (0..7).filter(|&k| k != i).collect();
            let sub = phi.submatrix(&keep, &keep).entries();
            let p = pf_generic(&sub, &one);
            if p.is_zero() {
                MultiPoly::zero(ring, 3)
            } else {
                p
            }
        })
        .collect()
}

/// A 3-dimensional subspace of `V`, held in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceE {
    rows: Matrix,
}

impl SubspaceE {
    pub fn new(m: &Matrix) -> Result<SubspaceE> {
        if m.cols() != 7 {
            return Err(Error::Shape {
                expected: "vectors in a 7-dimensional space".into(),
                got: format!("{} columns", m.cols()),
            });
        }
        let rows = m.row_basis();
        if rows.rows() != 3 {
            return Err(Error::Shape {
                expected: "rank 3".into(),
                got: format!("rank {}", rows.rows()),
            });
        }
        Ok(SubspaceE { rows })
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn space(&self) -> RowSpace {
        RowSpace::new(&self.rows)
    }
}

/// All three restrictions `E eta_k E^T` vanish.
pub fn isotropic(eta: &SkewNet, e: &SubspaceE) -> bool {
    let r = e.rows();
    eta.forms.iter().all(|m| r.mul(m).mul(&r.transpose()).is_zero())
}

/// Hilbert-Burch data of the curve cut out by the three quadrics of `E`.
#[derive(Clone, Debug)]
pub struct TwistedCubic {
    pub quadrics: Vec<MultiPoly>,
    /// Rows are the two linear syzygies.
    pub tau2: PolyMatrix,
    /// The 2x2 minors span the same space as the quadrics.
    pub minors_regenerate: bool,
    /// Quotient Hilbert function in degrees 0..=4.
    pub hilbert: Vec<usize>,
}

impl TwistedCubic {
    pub fn is_valid(&self) -> bool {
        self.minors_regenerate && self.hilbert == [1, 4, 7, 10, 13]
    }
}

pub fn twisted_cubic(eta: &SkewNet, e: &SubspaceE) -> Result<TwistedCubic> {
    if !isotropic(eta, e) {
        return Err(Error::NotTwistedCubic("subspace is not isotropic".into()));
    }
    let quadrics: Vec<MultiPoly> = (0..3).map(|i| eta.quadric(e.rows().row(i))).collect::<Result<_>>()?;
    let ring = quadrics[0].ring();
    let ideal = GradedIdeal::from_generators(ring, &quadrics, 4);
    let hilbert = ideal.quotient_hilbert_function();
    let syz = linear_syzygies(&quadrics);
    if syz.len() != 2 {
        // A common linear factor makes the quotient grow like a surface.
        if hilbert[4] - hilbert[3] > hilbert[3] - hilbert[2] {
            return Err(Error::degenerate("twisted_cubic", "quadrics share a common factor"));
        }
        return Err(Error::NotTwistedCubic(format!(
            "{} linear syzygies instead of 2",
            syz.len()
        )));
    }
    let tau2 = PolyMatrix::new(ring, syz);
    let minors = tau2.minors(2);
    let quad = ring.monomials(2);
    let span = |ps: &[MultiPoly]| {
        RowSpace::from_vectors(
            ring.field,
            quad.len(),
            ps.iter()
                .map(|p| {
                    if p.is_zero() {
                        vec![ring.field.zero(); quad.len()]
                    } else {
                        p.to_vector(&quad)
                    }
                })
                .collect(),
        )
    };
    let minors_span = span(&minors);
    if minors_span.dim() < 3 {
        return Err(Error::degenerate("twisted_cubic", "minors share a common factor"));
    }
    let minors_regenerate = minors_span == span(&quadrics);
    Ok(TwistedCubic {
        quadrics,
        tau2,
        minors_regenerate,
        hilbert,
    })
}

/// A line on the variety of isotropic 3-planes: a pencil
/// `<p1, p2, a p3 + b p4>` with `p1 = r r1`, `p2 = r r2`.
#[derive(Clone, Debug)]
pub struct LineInX {
    pub e1: SubspaceE,
    pub e2: SubspaceE,
    pub r: MultiPoly,
    pub r1: MultiPoly,
    pub r2: MultiPoly,
    /// Coordinates of `p1..p4` in `V`.
    pub pencil: [Vec<Scalar>; 4],
}

impl LineInX {
    /// The span of `p1, p2, p3, p4`; identifies the line.
    pub fn span(&self) -> RowSpace {
        RowSpace::from_vectors(self.e1.rows().field(), 7, self.pencil.to_vec())
    }
}

/// Detects whether two isotropic 3-planes meet in a plane whose quadrics share
/// a linear factor. `Ok(None)` when they meet in less than a plane.
pub fn line_detect(eta: &SkewNet, e1: &SubspaceE, e2: &SubspaceE) -> Result<Option<LineInX>> {
    if e1 == e2 {
        return Err(Error::degenerate("line_detect", "the two subspaces coincide"));
    }
    let s1 = e1.space();
    let s2 = e2.space();
    let common = s1.intersection(&s2);
    if common.dim() != 2 {
        return Ok(None);
    }
    let c1 = common.basis.row(0).to_vec();
    let c2 = common.basis.row(1).to_vec();
    let p1 = eta.quadric(&c1)?;
    let p2 = eta.quadric(&c2)?;
    // r2 p1 - r1 p2 = 0 when p1 = r r1, p2 = r r2.
    let syz = linear_syzygies(&[p1.clone(), p2.clone()]);
    if syz.len() != 1 {
        return Ok(None);
    }
    let r2 = syz[0][0].clone();
    let r1 = syz[0][1].neg();
    let r = match divide_linear(&p1, &r1) {
        Some(r) => r,
        None => return Ok(None),
    };
    if r.mul(&r2) != p2 {
        return Ok(None);
    }
    let p3 = s1.complement_of(&common).row(0).to_vec();
    let p4 = s2.complement_of(&common).row(0).to_vec();
    let line = LineInX {
        e1: e1.clone(),
        e2: e2.clone(),
        r,
        r1,
        r2,
        pencil: [c1, c2, p3, p4],
    };
    let field = eta.field();
    for (a, b) in [(1, 0), (0, 1), (1, 1)] {
        let mix: Vec<Scalar> = (0..7)
            .map(|k| &(&field.int(a) * &line.pencil[2][k]) + &(&field.int(b) * &line.pencil[3][k]))
            .collect();
        let m = Matrix::from_rows(field, 7, vec![line.pencil[0].clone(), line.pencil[1].clone(), mix]);
        if !isotropic(eta, &SubspaceE::new(&m)?) {
            return Err(Error::degenerate("line_detect", "pencil member is not isotropic"));
        }
    }
    Ok(Some(line))
}

/// The linear form `r` with `r * l = p`, if any.
fn divide_linear(p: &MultiPoly, l: &MultiPoly) -> Option<MultiPoly> {
    if l.is_zero() || p.degree() != 2 || l.degree() != 1 {
        return None;
    }
    let ring = p.ring();
    let quad = ring.monomials(2);
    let rows: Vec<Vec<Scalar>> = (0..ring.nvars)
        .map(|v| l.mul_monomial(&Monomial::var(v)).to_vector(&quad))
        .collect();
    let m = Matrix::from_rows(ring.field, quad.len(), rows).transpose();
    let x = m.solve(&p.to_vector(&quad))?;
    Some(MultiPoly::linear_form(ring, &x))
}

/// `eta(p3 ^ p4)`, the point of `P(N)` attached to a line.
pub fn line_to_point(line: &LineInX, eta: &SkewNet) -> Result<Point> {
    let a = eta.eval(&line.pencil[2], &line.pencil[3]);
    Point::new(a.to_vec()).map_err(|_| Error::degenerate("line_to_point", "eta(p3 ^ p4) vanishes"))
}
