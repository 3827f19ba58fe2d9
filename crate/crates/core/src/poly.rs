//! Homogeneous polynomials over the symbol side (forms) and the operator side
//! (constant-coefficient differential operators), and the apolarity action.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

pub const MAX_VARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Forms being differentiated (`x` in the plane, `z` in space).
    Symbol,
    /// Operators acting on them (`d` in the plane, `w` in space).
    Operator,
}

/// A graded polynomial ring: which side, how many variables, over which field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub side: Side,
    pub nvars: usize,
    pub field: Field,
}

impl Ring {
    pub fn new(side: Side, nvars: usize, field: Field) -> Ring {
        assert!(nvars == 3 || nvars == 4, "only 3 or 4 variables are supported");
        Ring { side, nvars, field }
    }

    /// `k[x0,x1,x2]`
    pub fn plane(field: Field) -> Ring {
        Ring::new(Side::Symbol, 3, field)
    }

    /// `k[d0,d1,d2]`
    pub fn plane_ops(field: Field) -> Ring {
        Ring::new(Side::Operator, 3, field)
    }

    /// `k[z0..z3]`, where nets of quadrics live.
    pub fn space(field: Field) -> Ring {
        Ring::new(Side::Symbol, 4, field)
    }

    /// `k[w0..w3]`, the operators acting on `z`-forms.
    pub fn space_ops(field: Field) -> Ring {
        Ring::new(Side::Operator, 4, field)
    }

    pub fn prefix(&self) -> char {
        match (self.side, self.nvars) {
            (Side::Symbol, 3) => 'x',
            (Side::Operator, 3) => 'd',
            (Side::Symbol, _) => 'z',
            (Side::Operator, _) => 'w',
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("{}{}", self.prefix(), i)
    }

    pub fn dual(&self) -> Ring {
        Ring {
            side: match self.side {
                Side::Symbol => Side::Operator,
                Side::Operator => Side::Symbol,
            },
            ..*self
        }
    }

    pub fn with_field(&self, field: Field) -> Ring {
        Ring { field, ..*self }
    }

    pub fn monomials(&self, degree: u32) -> MonomialBasis {
        MonomialBasis::new(self.nvars, degree)
    }

    /// `dim_k` of the degree-`d` piece.
    pub fn dim(&self, degree: u32) -> usize {
        binomial(degree as usize + self.nvars - 1, self.nvars - 1)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a -= b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic with `v0 > v1 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomials of one degree in descending grevlex order, with an index map.
/// This order fixes the coordinates of every coefficient vector.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> MonomialBasis {
        let mut monomials = Vec::new();
        let mut e = [0u8; MAX_VARS];
        fill(&mut monomials, &mut e, 0, nvars, degree);
        monomials.sort_by(|a, b| b.cmp(a));
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self, m: &Monomial) -> usize {
        self.index[m]
    }
}

fn fill(out: &mut Vec<Monomial>, e: &mut [u8; MAX_VARS], i: usize, n: usize, left: u32) {
    if i == n - 1 {
        e[i] = left as u8;
        out.push(Monomial(*e));
        e[i] = 0;
        return;
    }
    for k in 0..=left {
        e[i] = k as u8;
        fill(out, e, i + 1, n, left - k);
    }
    e[i] = 0;
}

/// A homogeneous polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Ring,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(ring: Ring, degree: u32) -> MultiPoly {
        MultiPoly {
            ring,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: Scalar) -> MultiPoly {
        MultiPoly::term(ring, Monomial::one(), c)
    }

    pub fn one(ring: Ring) -> MultiPoly {
        MultiPoly::constant(ring, ring.field.one())
    }

    pub fn var(ring: Ring, i: usize) -> MultiPoly {
        assert!(i < ring.nvars);
        MultiPoly::term(ring, Monomial::var(i), ring.field.one())
    }

    pub fn term(ring: Ring, m: Monomial, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(ring, m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, rejecting mixed degrees.
    pub fn from_terms(ring: Ring, degree: u32, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> MultiPoly {
        let mut p = MultiPoly::zero(ring, degree);
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "inhomogeneous term");
            p.add_term(m, &c);
        }
        p
    }

    /// `sum_i coeffs[i] * v_i`.
    pub fn linear_form(ring: Ring, coeffs: &[Scalar]) -> MultiPoly {
        assert_eq!(coeffs.len(), ring.nvars);
        MultiPoly::from_terms(
            ring,
            1,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())),
        )
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Greatest monomial and its coefficient in grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading grevlex coefficient is 1 (zero stays zero).
    pub fn normalized(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Same coefficients in another ring with the same number of variables.
    pub fn relabel(&self, ring: Ring) -> MultiPoly {
        assert_eq!(ring.nvars, self.ring.nvars);
        assert_eq!(ring.field, self.ring.field);
        MultiPoly { ring, ..self.clone() }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.ring, self.degree);
        }
        MultiPoly {
            ring: self.ring,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let mut out = MultiPoly::zero(self.ring, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert_eq!(self.ring, other.ring, "mixing polynomials from different rings");
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars);
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                if m.0[i] > 0 {
                    t = &t * &x.pow(m.0[i] as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Ordinary partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut nm = *m;
                nm.0[i] -= 1;
                out.add_term(nm, &(c * &self.ring.field.int(e as i64)));
            }
        }
        out
    }

    /// Coefficients in the descending grevlex monomial basis of its degree.
    pub fn to_vector(&self, basis: &MonomialBasis) -> Vec<Scalar> {
        let mut v = vec![self.ring.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            v[basis.index(m)] = c.clone();
        }
        v
    }

    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        self.to_vector(&self.ring.monomials(self.degree))
    }

    pub fn from_vector(ring: Ring, basis: &MonomialBasis, v: &[Scalar]) -> MultiPoly {
        let degree = basis.monomials.first().map_or(0, Monomial::degree);
        MultiPoly::from_terms(
            ring,
            degree,
            basis
                .monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Substitutes `v_i -> images[i]`; all images are forms of one degree in
    /// a common target ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars);
        let target = images[0].ring;
        let img_deg = images[0].degree;
        let mut out = MultiPoly::zero(target, self.degree * img_deg);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|g| vec![MultiPoly::one(target), g.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.0[i] as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Composes with the linear map `v -> m v`: returns `x -> self(m x)`.
    pub fn compose_linear(&self, m: &Matrix) -> MultiPoly {
        let n = self.ring.nvars;
        assert_eq!((m.rows(), m.cols()), (n, n));
        let images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::linear_form(self.ring, m.row(i))).collect();
        self.substitute(&images)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<MultiPoly> {
        let ring = self.ring.with_field(Field::prime(p)?);
        let mut out = MultiPoly::zero(ring, self.degree);
        for (m, c) in &self.terms {
            let r = c.reduce_mod(p).map_err(|e| Error::Reduction {
                entry: format!("coefficient of {}", fmt_monomial(&ring, m)),
                source: Box::new(e),
            })?;
            out.add_term(*m, &r);
        }
        Ok(out)
    }

    /// `lambda` with `self == lambda * other`, if one exists. Two zero
    /// polynomials give `Some(1)`; a zero and a nonzero one give `None`.
    pub fn proportionality(&self, other: &MultiPoly) -> Option<Scalar> {
        if self.ring.nvars != other.ring.nvars || self.ring.field != other.ring.field {
            return None;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(self.ring.field.one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c) = other.leading_term().unwrap();
        let lambda = &self.coefficient(m) / c;
        let ok = other.terms.iter().all(|(m, c)| self.coefficient(m) == &lambda * c)
            && self.terms.keys().all(|m| other.terms.contains_key(m));
        if ok && !lambda.is_zero() {
            Some(lambda)
        } else {
            None
        }
    }

    /// First monomial (grevlex-descending) where `self - lambda*other` is nonzero.
    pub fn proportionality_witness(&self, other: &MultiPoly, lambda: &Scalar) -> Option<Monomial> {
        let diff = self.relabel(other.ring).sub(&other.scale(lambda));
        diff.leading_term().map(|(m, _)| *m)
    }
}

pub(crate) fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..ring.nvars {
        match m.0[i] {
            0 => {}
            1 => parts.push(ring.var_name(i)),
            e => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in descending grevlex order, `c*monomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = match c {
                Scalar::Rational(r) if r < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// A projective point: coordinates, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Point> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroInput("projective point"));
        }
        Ok(Point(coords))
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Result<Point> {
        Point::new(coords.iter().map(|&c| field.int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    /// The linear operator `P_a = sum a_i d_i` in the given operator ring.
    pub fn operator(&self, ring: Ring) -> MultiPoly {
        MultiPoly::linear_form(ring, &self.0)
    }
}

fn falling_factorial(field: Field, n: u8, k: u8) -> Scalar {
    let mut acc = 1i64;
    for i in 0..k {
        acc *= (n - i) as i64;
    }
    field.int(acc)
}

/// The apolarity action `d^a (x^b) = a! binom(b, a) x^(b - a)`, in either
/// direction: `op` and `f` must come from opposite sides of the same
/// variable count. Operators of degree above `deg f` give zero.
pub fn apply(op: &MultiPoly, f: &MultiPoly) -> Result<MultiPoly> {
    let (r1, r2) = (op.ring(), f.ring());
    if r1.nvars != r2.nvars {
        return Err(Error::RingMismatch(format!(
            "operator has {} variables, form has {}",
            r1.nvars, r2.nvars
        )));
    }
    if r1.side == r2.side {
        return Err(Error::RingMismatch("apolarity pairs opposite sides".into()));
    }
    if r1.field != r2.field {
        return Err(Error::FieldMismatch);
    }
    if !r2.field.supports_factorials_up_to(f.degree() as u64) {
        return Err(Error::Characteristic(r2.field.characteristic(), f.degree()));
    }
    if op.degree() > f.degree() {
        return Ok(MultiPoly::zero(r2, 0));
    }
    let field = r2.field;
    let mut out = MultiPoly::zero(r2, f.degree() - op.degree());
    for (a, c) in op.terms() {
        for (b, d) in f.terms() {
            if !a.divides(b) {
                continue;
            }
            let mut coef = c * d;
            for i in 0..r1.nvars {
                if a.0[i] > 0 {
                    coef = &coef * &falling_factorial(field, b.0[i], a.0[i]);
                }
            }
            out.add_term(b.div(a), &coef);
        }
    }
    Ok(out)
}

/// `P_a^k (f)`.
pub fn polar(f: &MultiPoly, a: &Point, k: u32) -> Result<MultiPoly> {
    if a.coords().len() != f.ring().nvars {
        return Err(Error::RingMismatch("point dimension".into()));
    }
    let op = a.operator(f.ring().dual()).pow(k);
    apply(&op, f)
}

/// Matrix of the quadratic form `x -> P_b(P_a f)`, entries linear in `b`
/// (written in the symbol ring of `f`): entry `(i, j)` is
/// `1/2 * d_i d_j P_b P_a f`.
pub fn mixed_polar_matrix(f: &MultiPoly, a: &Point) -> Result<crate::polymatrix::PolyMatrix> {
    let ring = f.ring();
    if ring.nvars != 3 || f.degree() != 4 || ring.side != Side::Symbol {
        return Err(Error::Shape {
            expected: "plane quartic".into(),
            got: format!("degree {} in {} variables", f.degree(), ring.nvars),
        });
    }
    let cubic = polar(f, a, 1)?;
    let ops = ring.dual();
    let half = ring.field.ratio(1, 2);
    let mut entries = vec![vec![MultiPoly::zero(ring, 1); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let dij = MultiPoly::var(ops, i).mul(&MultiPoly::var(ops, j));
            // d_i d_j (cubic) is linear in x; as a form in b it is P_b of that.
            let lin = apply(&dij, &cubic)?;
            entries[i][j] = lin.scale(&half);
        }
    }
    Ok(crate::polymatrix::PolyMatrix::new(ring, entries))
}

/// Minimal ring interface used by generic determinant/pfaffian/invariant code.
pub trait RingElement: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_int(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
}

impl RingElement for Scalar {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_int(&self, n: i64) -> Self {
        self * &self.field().int(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl RingElement for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MultiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.field().int(n))
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}
