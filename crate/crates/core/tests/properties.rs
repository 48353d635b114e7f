#![allow(clippy::needless_range_loop)]

use chartan::homology::Lambda3Form;
use chartan::jets::Series;
use chartan::magnus::{lambda2_class, Lambda2Vector};
use chartan::parallelogram::{verify_identity, Identity, ParallelogramFunction, QuadraticForm, WordFunction};
use chartan::perm::Permutation;
use chartan::pseudochar::{frobenius_sum, MatrixTrace};
use chartan::words::{default_names, print_word, random_word, Word};
use chartan::{linalg::Matrix, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank as i64, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::from_signed(&v.into_iter().map(|(g, s)| if s { g } else { -g }).collect::<Vec<_>>()))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn qphi(n: usize) -> impl Strategy<Value = ParallelogramFunction> {
    let triples = n * (n - 1) * (n - 2) / 6;
    (prop::collection::vec(rational(), n * (n + 1) / 2), prop::collection::vec(rational(), triples)).prop_map(
        move |(upper, phi)| {
            let mut rows = vec![vec![Rational::from_integer(0.into()); n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().expect("enough entries");
                    rows[i][j] = x.clone();
                    rows[j][i] = x;
                }
            }
            let q = QuadraticForm::from_rows(rows).expect("symmetric");
            ParallelogramFunction::free(q, Lambda3Form::from_coordinates(n, &phi)).expect("rank matches")
        },
    )
}

fn series(order: usize) -> impl Strategy<Value = Series<Rational>> {
    prop::collection::vec(rational(), order + 1).prop_map(move |c| Series::from_coeffs(c, order))
}

#[test]
fn random_word_golden() {
    let expected = include_str!("golden/random_word_2_5_7.txt").trim();
    let w = random_word(2, 5, 7);
    assert_eq!(w.len(), 5);
    assert_eq!(print_word(&w, &default_names(2)), expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_form_a_group(u in word(3, 8), v in word(3, 8), w in word(3, 8)) {
        prop_assert_eq!(u.product(&v).product(&w), u.product(&v.product(&w)));
        prop_assert!(u.product(&u.inverse()).is_identity());
        prop_assert_eq!(u.product(&v).inverse(), v.inverse().product(&u.inverse()));
    }

    #[test]
    fn random_words_have_exact_length(rank in 1usize..5, len in 0usize..30, seed in any::<u64>()) {
        let w = random_word(rank, len, seed);
        prop_assert_eq!(w.len(), len);
        prop_assert!(w.max_generator() <= rank);
    }

    #[test]
    fn parallelogram_identity_holds(f in qphi(3), x in word(3, 7), y in word(3, 7)) {
        let lhs = f.eval(&x.product(&y)) + f.eval(&x.product(&y.inverse()));
        let two = Rational::from_integer(2.into());
        prop_assert_eq!(lhs, two.clone() * f.eval(&x) + two * f.eval(&y));
    }

    #[test]
    fn catalog_identities_hold(f in qphi(4), ws in prop::collection::vec(word(4, 5), 6)) {
        for id in [Identity::Elem, Identity::Cubic, Identity::Alter3, Identity::VersGgg] {
            let check = verify_identity(id, &f, &ws[..id.arity()]).unwrap();
            prop_assert!(check.holds, "{} residual {}", id.name(), check.residual);
        }
    }

    #[test]
    fn functions_are_central(f in qphi(3), x in word(3, 6), g in word(3, 6)) {
        prop_assert_eq!(f.eval(&x.conjugate_by(&g)), f.eval(&x));
    }

    #[test]
    fn commutator_classes_are_wedges(u in word(3, 6), v in word(3, 6)) {
        let ab = |w: &Word| w.abelianize(3).into_iter().map(|x| Rational::from_integer(x.into())).collect::<Vec<_>>();
        let class = lambda2_class(&u.commutator(&v), 3).unwrap();
        prop_assert_eq!(class, Lambda2Vector::wedge(&ab(&u), &ab(&v)));
    }

    #[test]
    fn series_inverse(s in series(6)) {
        prop_assume!(!s.coefficient(0).is_zero());
        let one = Series::from_coeffs(vec![Rational::one()], 6);
        prop_assert!((s.clone() * s.inv().unwrap()).agrees_with(&one, 6));
    }

    #[test]
    fn series_square_root(tail in prop::collection::vec(rational(), 6), c in 1i64..4) {
        let mut coeffs = vec![Rational::from_integer((c * c).into())];
        coeffs.extend(tail);
        let s = Series::from_coeffs(coeffs, 6);
        let r = s.sqrt().unwrap();
        prop_assert!((r.clone() * r).agrees_with(&s, 6));
    }

    #[test]
    fn permutations_form_a_group(a in 0..720usize,
                                 b in 0..720usize) {
        let all = Permutation::all(6);
        let (p, q) = (&all[a], &all[b]);
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
    }

    #[test]
    fn frobenius_kills_traces(entries in prop::collection::vec(-3i64..=3, 12)) {
        let mats: Vec<Matrix<Rational>> = entries
            .chunks(4)
            .map(|c| Matrix::from_rows(vec![
                vec![Rational::from_integer(c[0].into()), Rational::from_integer(c[1].into())],
                vec![Rational::from_integer(c[2].into()), Rational::from_integer(c[3].into())],
            ], 2))
            .collect();
        prop_assume!(mats.iter().all(|m| !m.determinant().is_zero()));
        let t = MatrixTrace::new(2, mats).unwrap();
        let words: Vec<Word> = (1..=3).map(Word::generator).collect();
        prop_assert!(frobenius_sum(&t, &words).unwrap().is_zero());
    }
}

#[test]
fn word_function_objects() {
    // evaluation through the trait object matches the inherent method
    let f = ParallelogramFunction::free(QuadraticForm::zero(3), Lambda3Form::basis(0, 1, 2)).unwrap();
    let w = Word::from_signed(&[1, 2, 3]);
    assert_eq!((&f as &dyn WordFunction).eval(&w), Rational::one());
}
