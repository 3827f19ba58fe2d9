//! Seeded random inputs with small integer coefficients.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::netquad::NetOfQuadrics;
use crate::poly::{MultiPoly, Point, Ring};
use crate::scalar::{Field, Scalar};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalar(rng: &mut Rand, field: Field, bound: i64) -> Scalar {
    field.int(rng.gen_range(-bound..=bound))
}

pub fn form(rng: &mut Rand, ring: Ring, degree: u32, bound: i64) -> MultiPoly {
    let basis = ring.monomials(degree);
    let v: Vec<Scalar> = (0..basis.len()).map(|_| scalar(rng, ring.field, bound)).collect();
    MultiPoly::from_vector(ring, &basis, &v)
}

/// A nonzero form.
pub fn nonzero_form(rng: &mut Rand, ring: Ring, degree: u32, bound: i64) -> MultiPoly {
    loop {
        let f = form(rng, ring, degree, bound);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn point(rng: &mut Rand, field: Field, n: usize, bound: i64) -> Point {
    loop {
        let c: Vec<Scalar> = (0..n).map(|_| scalar(rng, field, bound)).collect();
        if let Ok(p) = Point::new(c) {
            return p;
        }
    }
}

pub fn matrix(rng: &mut Rand, field: Field, rows: usize, cols: usize, bound: i64) -> Matrix {
    let r = (0..rows)
        .map(|_| (0..cols).map(|_| scalar(rng, field, bound)).collect())
        .collect();
    Matrix::from_rows(field, cols, r)
}

pub fn invertible(rng: &mut Rand, field: Field, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, field, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn skew(rng: &mut Rand, field: Field, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = scalar(rng, field, bound);
            m.set(j, i, -&v);
            m.set(i, j, v);
        }
    }
    m
}

pub fn symmetric(rng: &mut Rand, field: Field, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let v = scalar(rng, field, bound);
            m.set(j, i, v.clone());
            m.set(i, j, v);
        }
    }
    m
}

/// A net of quadrics with independent members (not checked for generality).
pub fn net(rng: &mut Rand, field: Field, bound: i64) -> NetOfQuadrics {
    loop {
        let mats = [
            symmetric(rng, field, 4, bound),
            symmetric(rng, field, 4, bound),
            symmetric(rng, field, 4, bound),
        ];
        let q = NetOfQuadrics::new(mats).unwrap();
        if q.is_nondegenerate() {
            return q;
        }
    }
}

/// `s` pairwise non-proportional linear forms.
pub fn lines(rng: &mut Rand, ring: Ring, s: usize, bound: i64) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    while out.len() < s {
        let l = nonzero_form(rng, ring, 1, bound);
        if out.iter().all(|m| l.proportionality(m).is_none()) {
            out.push(l);
        }
    }
    out
}
