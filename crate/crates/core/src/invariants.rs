//! The degree-4 invariant of plane cubics, the covariant quartic of a plane
//! quartic, Hessians and fibers of the rank-one polar correspondence.

use crate::apolar::{hilbert_function, perp, GradedIdeal};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{mixed_polar_matrix, Monomial, MultiPoly, Point, RingElement, Side};
use crate::polymatrix::PolyMatrix;
use crate::resolve::linear_syzygies;
use crate::scalar::Scalar;

/// Coordinates `(a, ..., j)` of a plane cubic
/// `a x0^3 + b x1^3 + c x2^3 + 3d x0^2x1 + 3e x0^2x2 + 3f x1^2x0 + 3g x1^2x2
///  + 3h x2^2x0 + 3i x2^2x1 + 6j x0x1x2`.
pub const CUBIC_MONOMIALS: [([u8; 3], i64); 10] = [
    ([3, 0, 0], 1),
    ([0, 3, 0], 1),
    ([0, 0, 3], 1),
    ([2, 1, 0], 3),
    ([2, 0, 1], 3),
    ([1, 2, 0], 3),
    ([0, 2, 1], 3),
    ([1, 0, 2], 3),
    ([0, 1, 2], 3),
    ([1, 1, 1], 6),
];

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;
const G: usize = 6;
const H: usize = 7;
const I: usize = 8;
const J: usize = 9;

/// The invariant as a list of signed monomials in `(a, ..., j)`.
const I4_TERMS: [(i64, [usize; 4]); 25] = [
    (1, [A, B, C, J]),
    (-1, [B, C, D, E]),
    (-1, [C, A, F, G]),
    (-1, [A, B, H, I]),
    (-1, [J, A, G, I]),
    (-1, [J, B, H, E]),
    (-1, [J, C, D, F]),
    (1, [A, F, I, I]),
    (1, [A, H, G, G]),
    (1, [B, D, H, H]),
    (1, [B, I, E, E]),
    (1, [C, G, D, D]),
    (1, [C, E, F, F]),
    (-1, [J, J, J, J]),
    (2, [J, J, F, H]),
    (2, [J, J, I, D]),
    (2, [J, J, E, G]),
    (-3, [J, D, G, H]),
    (-3, [J, E, F, I]),
    (-1, [F, F, H, H]),
    (-1, [I, I, D, D]),
    (-1, [E, E, G, G]),
    (1, [I, D, E, G]),
    (1, [E, G, F, H]),
    (1, [F, H, I, D]),
];

/// Evaluates the invariant on cubic coordinates in any commutative ring.
pub fn i4<T: RingElement>(c: &[T; 10]) -> T {
    let mut acc: Option<T> = None;
    for (k, idx) in I4_TERMS.iter() {
        let mut t = c[idx[0]].clone();
        for &i in &idx[1..] {
            t = t.mul(&c[i]);
        }
        if t.is_zero() {
            continue;
        }
        let t = t.scale_int(*k);
        acc = Some(match acc {
            Some(a) => a.add(&t),
            None => t,
        });
    }
    acc.unwrap_or_else(|| c[0].sub(&c[0]))
}

fn check_plane(g: &MultiPoly, degree: u32, what: &str) -> Result<()> {
    let r = g.ring();
    if r.nvars != 3 || r.side != Side::Symbol || g.degree() != degree {
        return Err(Error::Shape {
            expected: what.into(),
            got: format!("degree {} form in {} variables", g.degree(), r.nvars),
        });
    }
    Ok(())
}

/// Coordinates `(a, ..., j)` of a plane cubic.
pub fn cubic_coeffs(g: &MultiPoly) -> Result<[Scalar; 10]> {
    check_plane(g, 3, "plane cubic")?;
    let field = g.field();
    if !field.supports_factorials_up_to(3) {
        return Err(Error::Characteristic(field.characteristic(), 3));
    }
    Ok(CUBIC_MONOMIALS.map(|(e, mult)| {
        let m = Monomial([e[0], e[1], e[2], 0]);
        &g.coefficient(&m) / &field.int(mult)
    }))
}

pub fn aronhold(g: &MultiPoly) -> Result<Scalar> {
    Ok(i4(&cubic_coeffs(g)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CiOutcome {
    /// `(g^perp)_2` is spanned by three quadrics without linear syzygy.
    CompleteIntersection,
    /// The quadrics have linear syzygies; the count is attached.
    LinearSyzygies(usize),
    /// `g` depends on fewer than three variables.
    Cone,
}

pub fn is_complete_intersection_perp(g: &MultiPoly) -> Result<CiOutcome> {
    check_plane(g, 3, "plane cubic")?;
    if g.is_zero() {
        return Err(Error::ZeroInput("cubic"));
    }
    if hilbert_function(g)[1] < 3 {
        return Ok(CiOutcome::Cone);
    }
    let ops = g.ring().dual();
    let basis = ops.monomials(2);
    let p = perp(g, 2);
    let quads: Vec<MultiPoly> = (0..p.rows())
        .map(|i| MultiPoly::from_vector(ops, &basis, p.row(i)))
        .collect();
    match linear_syzygies(&quads).len() {
        0 => Ok(CiOutcome::CompleteIntersection),
        n => Ok(CiOutcome::LinearSyzygies(n)),
    }
}

/// The quartic `a -> I4(P_a f)`, written in the same variables as `f`.
pub fn covariant_quartic(f: &MultiPoly) -> Result<MultiPoly> {
    check_plane(f, 4, "plane quartic")?;
    let ring = f.ring();
    let field = f.field();
    if !field.supports_factorials_up_to(4) {
        return Err(Error::Characteristic(field.characteristic(), 4));
    }
    let partials: Vec<MultiPoly> = (0..3).map(|k| f.partial(k)).collect();
    // Each coordinate of P_a f is a linear form in a.
    let coords: [MultiPoly; 10] = CUBIC_MONOMIALS.map(|(e, mult)| {
        let m = Monomial([e[0], e[1], e[2], 0]);
        let inv = field.int(mult).inv();
        let cs: Vec<Scalar> = partials.iter().map(|p| &p.coefficient(&m) * &inv).collect();
        MultiPoly::linear_form(ring, &cs)
    });
    let s = i4(&coords);
    if s.is_zero() {
        return Err(Error::degenerate("covariant_quartic", "covariant vanishes identically"));
    }
    Ok(s)
}

/// Determinant of the matrix of second partials.
pub fn hessian(f: &MultiPoly) -> Result<MultiPoly> {
    let ring = f.ring();
    if ring.nvars != 3 || f.degree() < 2 {
        return Err(Error::Shape {
            expected: "plane form of degree at least 2".into(),
            got: format!("degree {} in {} variables", f.degree(), ring.nvars),
        });
    }
    let entries = (0..3)
        .map(|i| (0..3).map(|j| f.partial(i).partial(j)).collect())
        .collect();
    let det = PolyMatrix::new(ring, entries).determinant()?;
    if det.is_zero() {
        return Ok(MultiPoly::zero(ring, 3 * (f.degree() - 2)));
    }
    Ok(det)
}

/// The scheme `{b : rank P_{a,b} f <= 1}` as the ideal of 2x2 minors.
#[derive(Clone, Debug)]
pub struct TfFiber {
    pub minors: Vec<MultiPoly>,
    pub ideal: GradedIdeal,
    /// Quotient Hilbert function in degrees `0..=6`.
    pub hilbert: Vec<usize>,
    /// Common value of the quotient Hilbert function on degrees 2..=6, if constant.
    pub colength: Option<usize>,
}

pub fn tf_fiber_ideal(f: &MultiPoly, a: &Point) -> Result<TfFiber> {
    let m = mixed_polar_matrix(f, a)?;
    let minors: Vec<MultiPoly> = m.minors(2).into_iter().filter(|p| !p.is_zero()).collect();
    let ideal = GradedIdeal::from_generators(f.ring(), &minors, 6);
    let hilbert = ideal.quotient_hilbert_function();
    let colength = if hilbert[2..].windows(2).all(|w| w[0] == w[1]) {
        Some(hilbert[2])
    } else {
        None
    };
    Ok(TfFiber {
        minors,
        ideal,
        hilbert,
        colength,
    })
}

/// The scalar matrix of `x -> P_b P_a f` at a concrete `b`.
pub fn mixed_polar_at(f: &MultiPoly, a: &Point, b: &Point) -> Result<Matrix> {
    let m = mixed_polar_matrix(f, a)?;
    let field = f.field();
    let rows = (0..3)
        .map(|i| (0..3).map(|j| m.get(i, j).eval(b.coords())).collect())
        .collect();
    Ok(Matrix::from_rows(field, 3, rows))
}

/// Whether `(a, b)` satisfies the rank condition `rank P_{a,b} f <= 1`.
pub fn in_tf(f: &MultiPoly, a: &Point, b: &Point) -> Result<bool> {
    Ok(mixed_polar_at(f, a, b)?.rank() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Ring;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn x(s: &str) -> MultiPoly {
        parse_poly(s, Ring::plane(Q)).unwrap()
    }

    #[test]
    fn aronhold_examples() {
        assert!(aronhold(&x("x0^3 + x1^3 + x2^3")).unwrap().is_zero());
        assert!(aronhold(&x("x0^3")).unwrap().is_zero());
        assert_eq!(aronhold(&x("x0*x1*x2")).unwrap(), Q.ratio(-1, 1296));
    }

    #[test]
    fn complete_intersection_outcomes() {
        assert_eq!(is_complete_intersection_perp(&x("x0^3")).unwrap(), CiOutcome::Cone);
        assert!(matches!(
            is_complete_intersection_perp(&x("x0^3 + x1^3 + x2^3")).unwrap(),
            CiOutcome::LinearSyzygies(_)
        ));
        assert_eq!(
            is_complete_intersection_perp(&x("x0*x1*x2")).unwrap(),
            CiOutcome::CompleteIntersection
        );
    }

    #[test]
    fn hessian_of_fermat() {
        assert_eq!(hessian(&x("x0^3 + x1^3 + x2^3")).unwrap(), x("216*x0*x1*x2"));
        assert!(hessian(&x("x0^3")).unwrap().is_zero());
        assert_eq!(hessian(&x("x0^3*x1 + x1^3*x2 + x2^3*x0")).unwrap().degree(), 6);
    }

    #[test]
    fn klein_is_self_covariant() {
        let k = x("x0^3*x1 + x1^3*x2 + x2^3*x0");
        let s = covariant_quartic(&k).unwrap();
        assert!(s.proportionality(&k).is_some(), "{s}");
    }

    #[test]
    fn klein_fiber_at_vertex() {
        let k = x("x0^3*x1 + x1^3*x2 + x2^3*x0");
        let a = Point::from_ints(Q, &[1, 0, 0]).unwrap();
        let fib = tf_fiber_ideal(&k, &a).unwrap();
        assert_eq!(fib.colength, Some(3));
        let expect = GradedIdeal::from_generators(Ring::plane(Q), &[x("x0^2"), x("x0*x2"), x("x1*x2")], 6);
        assert_eq!(fib.ideal, expect);
        assert!(!in_tf(&k, &a, &a).unwrap());
    }
}
