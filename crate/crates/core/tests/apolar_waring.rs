use proptest::prelude::*;
use v22::apolar::{catalecticant, colon_perp_check, dual_socle, hilbert_function, perp, perp_ideal, GradedIdeal};
use v22::parse::parse_poly;
use v22::polymatrix::PolyMatrix;
use v22::random;
use v22::waring::*;
use v22::{apply, Field, Matrix, MultiPoly, Ring};

const Q: Field = Field::Rational;

fn x(s: &str) -> MultiPoly {
    parse_poly(s, Ring::plane(Q)).unwrap()
}

fn klein() -> MultiPoly {
    x("x0^3*x1 + x1^3*x2 + x2^3*x0")
}

fn power_sum(lines: &[MultiPoly]) -> MultiPoly {
    lines
        .iter()
        .fold(MultiPoly::zero(lines[0].ring(), 4), |a, l| a.add(&l.pow(4)))
}

#[test]
fn perp_examples() {
    assert_eq!(perp(&x("x0^4"), 1).rows(), 2);
    assert_eq!(perp(&klein(), 3).rows(), 7);
    assert_eq!(perp(&klein(), 2).rows(), 0);
    assert_eq!(hilbert_function(&klein()), vec![1, 3, 6, 3, 1]);
    assert_eq!(hilbert_function(&x("x0^4")), vec![1, 1, 1, 1, 1]);
    assert_eq!(hilbert_function(&x("x0^4 + x1^4")), vec![1, 2, 2, 2, 1]);
}

#[test]
fn dual_socle_roundtrip() {
    let ideal = perp_ideal(&klein(), 5);
    assert_eq!(dual_socle(&ideal, 4, false).unwrap(), klein().normalized());
    let ops = Ring::plane_ops(Q);
    let lin = GradedIdeal::from_generators(ops, &[MultiPoly::var(ops, 1), MultiPoly::var(ops, 2)], 5);
    assert_eq!(dual_socle(&lin, 4, true).unwrap(), x("x0^4"));
}

#[test]
fn colon_examples() {
    let ops = Ring::plane_ops(Q);
    let f = klein();
    assert!(colon_perp_check(&f, &MultiPoly::one(ops)).unwrap());
    let killer = MultiPoly::from_vector(ops, &ops.monomials(3), perp(&f, 3).row(0));
    assert!(colon_perp_check(&f, &killer).unwrap());
}

#[test]
fn ranks_of_power_sums() {
    let mut rng = random::rng(11);
    for s in 1..=6 {
        for _ in 0..10 {
            let ls = random::lines(&mut rng, Ring::plane(Q), s, 5);
            assert_eq!(rank_lower(&power_sum(&ls)).unwrap(), s);
        }
    }
}

#[test]
fn table_recipes_stay_on_their_rows() {
    let mut rng = random::rng(5);
    for _ in 0..2 {
        let l = random::lines(&mut rng, Ring::plane(Q), 6, 30);
        // General binary: three lines through one point.
        let binary: Vec<MultiPoly> = vec![l[0].clone(), l[1].clone(), l[0].add(&l[1])];
        let cases = [
            (power_sum(&l[..5]), 1),
            (power_sum(&l[..3]), 4),
            (power_sum(&l[..3]).add(&l[1].add(&l[2]).pow(4)), 3),
            (power_sum(&binary), 5),
            (power_sum(&l[..2]), 6),
            (power_sum(&l[..1]), 7),
            // Complete intersection of two quadrics and a cubic, moved generically.
            (
                x("x0*x1*x2^2").compose_linear(&random::invertible(&mut rng, Q, 3, 3)),
                2,
            ),
            (klein().compose_linear(&random::invertible(&mut rng, Q, 3, 3)), 0),
        ];
        for (f, row) in cases {
            assert_eq!(classify(&f).unwrap().row, Some(row), "{f}");
        }
    }
}

#[test]
fn point_ideals_and_apolarity() {
    let mut rng = random::rng(3);
    let ls = random::lines(&mut rng, Ring::plane(Q), 6, 4);
    let f = power_sum(&ls);
    let i = point_ideal(&ls, 5).unwrap();
    assert_eq!(i.quotient_hilbert_function(), vec![1, 3, 6, 6, 6, 6]);
    assert!(is_apolar(&i, &f).unwrap());
    // Six unrelated points are almost never apolar to a random quartic.
    let other = random::lines(&mut rng, Ring::plane(Q), 6, 4);
    assert!(!is_apolar(
        &point_ideal(&other, 5).unwrap(),
        &random::form(&mut rng, Ring::plane(Q), 4, 4)
    )
    .unwrap());
    assert!(!is_apolar(&GradedIdeal::unit(Ring::plane_ops(Q), 4), &f).unwrap());
    assert!(is_apolar(&GradedIdeal::unit(Ring::space_ops(Q), 4), &f).is_err());
}

#[test]
fn random_block_gives_a_hexagon() {
    let mut rng = random::rng(8);
    let ops = Ring::plane_ops(Q);
    let entries = (0..4)
        .map(|_| (0..3).map(|_| random::form(&mut rng, ops, 1, 3)).collect())
        .collect();
    let h = hexagon_from_block(&PolyMatrix::new(ops, entries)).unwrap();
    assert_eq!(h.hilbert(), HEXAGON_HILBERT.to_vec());
    assert_eq!(h.generators.len(), 4);
}

#[test]
fn weights_roundtrip_random() {
    let mut rng = random::rng(21);
    for s in 1..=6 {
        let ls = random::lines(&mut rng, Ring::plane(Q), s, 4);
        let w: Vec<_> = (0..s).map(|i| Q.int(i as i64 + 2)).collect();
        let f = PowerSum::new(ls.clone(), w.clone()).unwrap().quartic();
        assert_eq!(
            solve_weights(&f, &ls).unwrap(),
            WeightOutcome::Solved(PowerSum { lines: ls, weights: w })
        );
    }
    let ls = random::lines(&mut rng, Ring::plane(Q), 16, 4);
    let f = power_sum(&ls[..3]);
    assert!(matches!(
        solve_weights(&f, &ls).unwrap(),
        WeightOutcome::Underdetermined { dim: 1, .. }
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hilbert_function_is_symmetric(seed in any::<u64>(), deg in 2u32..=5) {
        let mut rng = random::rng(seed);
        let f = random::nonzero_form(&mut rng, Ring::plane(Q), deg, 3);
        let hf = hilbert_function(&f);
        let mut rev = hf.clone();
        rev.reverse();
        prop_assert_eq!(hf, rev);
    }

    #[test]
    fn catalecticant_rank_is_middle_hilbert(seed in any::<u64>(), s in 1usize..=6) {
        let mut rng = random::rng(seed);
        let ls = random::lines(&mut rng, Ring::plane(Q), s, 3);
        let f = power_sum(&ls).add(&random::form(&mut rng, Ring::plane(Q), 4, 1));
        prop_assume!(!f.is_zero());
        prop_assert_eq!(catalecticant(&f).unwrap().rank(), hilbert_function(&f)[2]);
    }

    #[test]
    fn middle_pairing_is_perfect(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::nonzero_form(&mut rng, Ring::plane(Q), 4, 2);
        // A_1 x A_3 -> A_4: pair complements of the perp pieces.
        let a1: Vec<MultiPoly> = complement(&f, 1);
        let a3: Vec<MultiPoly> = complement(&f, 3);
        let rows = a1
            .iter()
            .map(|p| a3.iter().map(|q| apply(&p.mul(q), &f).unwrap().coefficient(&v22::Monomial::one())).collect())
            .collect();
        let g = Matrix::from_rows(Q, a3.len(), rows);
        prop_assert_eq!(g.rank(), a1.len());
        prop_assert_eq!(a1.len(), a3.len());
    }

    #[test]
    fn colon_identity_holds(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::nonzero_form(&mut rng, Ring::plane(Q), 4, 3);
        let op = random::nonzero_form(&mut rng, Ring::plane_ops(Q), 1, 3);
        prop_assert!(colon_perp_check(&f, &op).unwrap());
    }
}

/// Monomials of degree `d` outside the span of `(f^perp)_d`, as a basis of `A_d`.
fn complement(f: &MultiPoly, d: u32) -> Vec<MultiPoly> {
    let ops = f.ring().dual();
    let space = v22::RowSpace::new(&perp(f, d));
    let full = v22::RowSpace::full(Q, ops.dim(d));
    let comp = full.complement_of(&space);
    (0..comp.rows())
        .map(|i| MultiPoly::from_vector(ops, &ops.monomials(d), comp.row(i)))
        .collect()
}
