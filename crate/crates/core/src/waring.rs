//! Waring rank of plane quartics: catalecticant bounds, the apolar
//! classification table, power-sum weights and hexagons from 4x3 blocks.

use crate::apolar::{catalecticant, hilbert_function, perp_ideal, GradedIdeal};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{MultiPoly, Ring, Side};
use crate::polymatrix::PolyMatrix;
use crate::resolve::min_res;
use crate::scalar::{Field, Scalar};
use crate::skewfano::{isotropic, SkewNet, SubspaceE};

fn check_quartic(f: &MultiPoly) -> Result<()> {
    let r = f.ring();
    if r.nvars != 3 || r.side != Side::Symbol || f.degree() != 4 {
        return Err(Error::Shape {
            expected: "plane quartic".into(),
            got: format!("degree {} form in {} variables", f.degree(), r.nvars),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroInput("quartic"));
    }
    Ok(())
}

/// Rank of the middle catalecticant.
pub fn rank_lower(f: &MultiPoly) -> Result<usize> {
    check_quartic(f)?;
    Ok(catalecticant(f)?.rank())
}

/// Hilbert function of the apolar algebra and degrees of minimal generators
/// of `f^perp`, one row per possible shape.
pub const TABLE: [(&[usize], &[u32]); 8] = [
    (&[1, 3, 6, 3, 1], &[3, 3, 3, 3, 3, 3, 3]),
    (&[1, 3, 5, 3, 1], &[2, 3, 3, 3, 3]),
    (&[1, 3, 4, 3, 1], &[2, 2, 3]),
    (&[1, 3, 4, 3, 1], &[2, 2, 3, 3, 4]),
    (&[1, 3, 3, 3, 1], &[2, 2, 2, 4, 4]),
    (&[1, 2, 3, 2, 1], &[1, 3, 3]),
    (&[1, 2, 2, 2, 1], &[1, 2, 4]),
    (&[1, 1, 1, 1, 1], &[1, 1, 5]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub hilbert: Vec<usize>,
    pub generator_degrees: Vec<u32>,
    /// Index into [`TABLE`], `None` when the pair is not listed.
    pub row: Option<usize>,
}

pub fn classify(f: &MultiPoly) -> Result<Classification> {
    check_quartic(f)?;
    let hilbert = hilbert_function(f);
    // Generators of a Gorenstein ideal with socle degree 4 live in degrees <= 5.
    let ideal = perp_ideal(f, 6);
    let res = min_res(&ideal, 6);
    let mut generator_degrees = res.degrees(1).to_vec();
    generator_degrees.sort_unstable();
    let row = TABLE
        .iter()
        .position(|(h, g)| *h == hilbert.as_slice() && *g == generator_degrees.as_slice());
    Ok(Classification {
        hilbert,
        generator_degrees,
        row,
    })
}

/// `sum lambda_i l_i^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSum {
    pub lines: Vec<MultiPoly>,
    pub weights: Vec<Scalar>,
}

impl PowerSum {
    pub fn new(lines: Vec<MultiPoly>, weights: Vec<Scalar>) -> Result<PowerSum> {
        if lines.len() != weights.len() {
            return Err(Error::Shape {
                expected: format!("{} weights", lines.len()),
                got: format!("{}", weights.len()),
            });
        }
        check_lines(&lines)?;
        Ok(PowerSum { lines, weights })
    }

    pub fn quartic(&self) -> MultiPoly {
        let ring = self.lines[0].ring();
        self.lines
            .iter()
            .zip(&self.weights)
            .fold(MultiPoly::zero(ring, 4), |acc, (l, w)| acc.add(&l.pow(4).scale(w)))
    }
}

fn check_lines(lines: &[MultiPoly]) -> Result<()> {
    if lines.is_empty() {
        return Err(Error::ZeroInput("line list"));
    }
    let ring = lines[0].ring();
    for (i, l) in lines.iter().enumerate() {
        if l.ring() != ring || l.degree() != 1 {
            return Err(Error::Shape {
                expected: "linear forms in one ring".into(),
                got: format!("entry {i} of degree {}", l.degree()),
            });
        }
        if l.is_zero() {
            return Err(Error::ZeroInput("linear form"));
        }
        if lines[..i].iter().any(|m| l.proportionality(m).is_some()) {
            return Err(Error::degenerate(
                "power_sum",
                format!("line {i} repeats an earlier line"),
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightOutcome {
    Solved(PowerSum),
    /// `f` is not a combination of the given fourth powers.
    NotInSpan,
    /// Consistent, with a solution space of the given positive dimension.
    Underdetermined {
        dim: usize,
        particular: Vec<Scalar>,
    },
}

pub fn solve_weights(f: &MultiPoly, lines: &[MultiPoly]) -> Result<WeightOutcome> {
    check_quartic(f)?;
    check_lines(lines)?;
    if lines[0].ring() != f.ring() {
        return Err(Error::RingMismatch(format!("{:?} vs {:?}", lines[0].ring(), f.ring())));
    }
    let basis = f.ring().monomials(4);
    let cols: Vec<Vec<Scalar>> = lines.iter().map(|l| l.pow(4).to_vector(&basis)).collect();
    let rows = (0..basis.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let m = Matrix::from_rows(f.field(), lines.len(), rows);
    let Some(sol) = m.solve(&f.to_vector(&basis)) else {
        return Ok(WeightOutcome::NotInSpan);
    };
    let dim = lines.len() - m.rank();
    if dim > 0 {
        return Ok(WeightOutcome::Underdetermined { dim, particular: sol });
    }
    Ok(WeightOutcome::Solved(PowerSum {
        lines: lines.to_vec(),
        weights: sol,
    }))
}

/// Whether every stored piece of `ideal` annihilates `f`.
pub fn is_apolar(ideal: &GradedIdeal, f: &MultiPoly) -> Result<bool> {
    let r = ideal.ring();
    if r != f.ring().dual() {
        return Err(Error::RingMismatch(format!("{r:?} does not act on {:?}", f.ring())));
    }
    if f.is_zero() {
        return Ok(true);
    }
    Ok(ideal.is_contained_in(&perp_ideal(f, ideal.cap())))
}

/// Operators vanishing at the coefficient vectors of the given linear forms,
/// stored through `cap`.
pub fn point_ideal(lines: &[MultiPoly], cap: u32) -> Result<GradedIdeal> {
    check_lines(lines)?;
    let ops = lines[0].ring().dual();
    let field = ops.field;
    let points: Vec<Vec<Scalar>> = lines
        .iter()
        .map(|l| {
            (0..ops.nvars)
                .map(|i| l.coefficient(&crate::poly::Monomial::var(i)))
                .collect()
        })
        .collect();
    let pieces = (0..=cap)
        .map(|d| {
            let basis = ops.monomials(d);
            // Row per monomial, column per point.
            let rows = basis
                .monomials
                .iter()
                .map(|m| {
                    let mono = MultiPoly::term(ops, *m, field.one());
                    points.iter().map(|pt| mono.eval(pt)).collect()
                })
                .collect();
            let eval = Matrix::from_rows(field, points.len(), rows);
            (d, crate::matrix::RowSpace::new(&eval.left_kernel()))
        })
        .collect();
    Ok(GradedIdeal::from_pieces(ops, cap, pieces))
}

pub const HEXAGON_HILBERT: [usize; 6] = [1, 3, 6, 6, 6, 6];

/// The ideal of maximal minors of a 4x3 matrix of linear operators.
#[derive(Clone, Debug)]
pub struct HexagonIdeal {
    pub generators: Vec<MultiPoly>,
    pub source: PolyMatrix,
    pub ideal: GradedIdeal,
}

impl HexagonIdeal {
    pub fn hilbert(&self) -> Vec<usize> {
        self.ideal.quotient_hilbert_function()
    }
}

/// The off-diagonal block `C Phi E^T` of `Phi` in a basis adapted to an
/// isotropic `E`, where `C` is the standard complement of the pivots of `E`.
pub fn isotropic_block(eta: &SkewNet, e: &SubspaceE) -> Result<PolyMatrix> {
    if !isotropic(eta, e) {
        return Err(Error::degenerate("isotropic_block", "subspace is not isotropic"));
    }
    let field = eta.field();
    let rows = e.rows();
    let pivots: Vec<usize> = (0..3)
        .map(|r| (0..7).find(|&c| !rows.get(r, c).is_zero()).expect("rank 3"))
        .collect();
    let comp: Vec<Vec<Scalar>> = (0..7)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            (0..7)
                .map(|k| if k == c { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    let c = Matrix::from_rows(field, 7, comp);
    let ring = Ring::plane_ops(field);
    let blocks: Vec<Matrix> = eta.forms().iter().map(|m| c.mul(m).mul(&rows.transpose())).collect();
    let entries = (0..4)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let cs: Vec<Scalar> = blocks.iter().map(|b| b.get(i, j).clone()).collect();
                    MultiPoly::linear_form(ring, &cs)
                })
                .collect()
        })
        .collect();
    Ok(PolyMatrix::new(ring, entries))
}

pub fn hexagon_from_block(psi: &PolyMatrix) -> Result<HexagonIdeal> {
    if psi.rows() != 4 || psi.cols() != 3 {
        return Err(Error::Shape {
            expected: "4x3 matrix".into(),
            got: format!("{}x{}", psi.rows(), psi.cols()),
        });
    }
    let ring = psi.ring();
    for r in 0..4 {
        for c in 0..3 {
            let e = psi.get(r, c);
            if !e.is_zero() && e.degree() != 1 {
                return Err(Error::Shape {
                    expected: "linear entries".into(),
                    got: format!("degree {} at ({r}, {c})", e.degree()),
                });
            }
        }
    }
    // Row k of the minors omits row k of psi, with alternating sign so the
    // generators form the Hilbert-Burch vector.
    let generators: Vec<MultiPoly> = (0..4)
        .map(|k| {
            let keep: Vec<usize> = (0..4).filter(|&i| i != k).collect();
            let m = psi.submatrix(&keep, &[0, 1, 2]).determinant()?;
            let m = if m.is_zero() { MultiPoly::zero(ring, 3) } else { m };
            Ok(if k % 2 == 1 { m.neg() } else { m })
        })
        .collect::<Result<_>>()?;
    if generators.iter().all(MultiPoly::is_zero) {
        return Err(Error::degenerate("hexagon_from_block", "all maximal minors vanish"));
    }
    let ideal = GradedIdeal::from_generators(ring, &generators, 5);
    let hf = ideal.quotient_hilbert_function();
    if hf != HEXAGON_HILBERT {
        return Err(Error::degenerate(
            "hexagon_from_block",
            format!("minors share a common factor: quotient Hilbert function {hf:?}"),
        ));
    }
    Ok(HexagonIdeal {
        generators,
        source: psi.clone(),
        ideal,
    })
}

/// The one-parameter family
/// `(1-1/t^2) x1^4 + x1^3 (x0 - 4/t x2) + 1/t^2 (x1 + t x2)^4 + x2^3 (x0 - 4t x1) + (1-t^2) x2^4`.
pub fn remark_family(t: &Scalar) -> Result<MultiPoly> {
    if t.is_zero() {
        return Err(Error::ZeroInput("parameter t"));
    }
    let field: Field = t.field();
    let ring = Ring::plane(field);
    let x = |i| MultiPoly::var(ring, i);
    let one = field.one();
    let tinv = t.inv();
    let tinv2 = &tinv * &tinv;
    let four = field.int(4);
    let x0 = x(0);
    let x1 = x(1);
    let x2 = x(2);
    let terms = [
        x1.pow(4).scale(&(&one - &tinv2)),
        x1.pow(3).mul(&x0.sub(&x2.scale(&(&four * &tinv)))),
        x1.add(&x2.scale(t)).pow(4).scale(&tinv2),
        x2.pow(3).mul(&x0.sub(&x1.scale(&(&four * t)))),
        x2.pow(4).scale(&(&one - &(t * t))),
    ];
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, p| acc.add(p)))
}
