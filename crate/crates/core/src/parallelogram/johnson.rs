use num_traits::Zero;

use super::{free_eval, Ambient, ParallelogramError, ParallelogramFunction, QuadraticForm};
use crate::magnus::lambda2_class;
use crate::words::{evaluate_hom, random_word_up_to, trial_rng, FreeGroup, GroupHom, Word};
use crate::Rational;

const SAMPLE_WORDS: u64 = 40;

/// For `φ` acting trivially on `H₁`, the quadratic form `x ↦ 2Φ(x ∧ τ(x))`
/// with `τ(a_i) = λ(φ(a_i) a_i⁻¹)`; also checks `f∘φ − f` against it on sample words.
pub fn johnson_action(
    phi_map: &GroupHom<FreeGroup>,
    f: &ParallelogramFunction,
) -> Result<QuadraticForm, ParallelogramError> {
    let n = phi_map.source_rank();
    match f.ambient() {
        Ambient::Free { rank } if *rank == n => {}
        other => {
            return Err(ParallelogramError::DimensionMismatch { expected: n, found: other.generator_count() });
        }
    }
    let mut taus = Vec::with_capacity(n);
    for (i, img) in phi_map.images.iter().enumerate() {
        let mut expected = vec![0; n];
        expected[i] = 1;
        if img.max_generator() > n || img.abelianize(n) != expected {
            return Err(ParallelogramError::NotTorelli(i + 1));
        }
        let t = lambda2_class(&img.product(&Word::generator(i + 1).inverse()), n)
            .expect("Torelli images differ from generators by commutators");
        taus.push(t);
    }
    let phi = f.phi();
    let unit = |i: usize| -> Vec<Rational> {
        (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect()
    };
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| phi.eval_wedge(&unit(i), &taus[j]) + phi.eval_wedge(&unit(j), &taus[i])).collect())
        .collect();
    let form = QuadraticForm::from_rows(rows).expect("symmetric by construction");

    let (lq, lphi) = f.lifted();
    for trial in 0..SAMPLE_WORDS {
        let w = if trial < n as u64 {
            Word::generator(trial as usize + 1)
        } else {
            random_word_up_to(&mut trial_rng(0x70_4E50, trial), n, 10)
        };
        let image = evaluate_hom(&w, phi_map).expect("images cover every generator");
        let diff = free_eval(lq, lphi, &image, n) - free_eval(lq, lphi, &w, n);
        let e: Vec<Rational> = w.abelianize(n).into_iter().map(|x| Rational::from_integer(x.into())).collect();
        if diff != form.eval(&e) {
            return Err(ParallelogramError::JohnsonMismatch(w.to_string()));
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Lambda3Form;
    use crate::scalar::int;

    fn f3(phi: Lambda3Form) -> ParallelogramFunction {
        ParallelogramFunction::free(QuadraticForm::zero(3), phi).unwrap()
    }

    fn hom(images: Vec<Word>) -> GroupHom<FreeGroup> {
        GroupHom::new(FreeGroup { rank: 3 }, images)
    }

    #[test]
    fn commutator_twist() {
        let a = Word::generator(1);
        let (b, c) = (Word::generator(2), Word::generator(3));
        let phi = hom(vec![a.product(&b.commutator(&c)), b, c]);
        let q = johnson_action(&phi, &f3(Lambda3Form::basis(0, 1, 2))).unwrap();
        let expected = QuadraticForm::from_rows(vec![
            vec![int(2), int(0), int(0)],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ])
        .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn identity_and_inner() {
        let gens: Vec<Word> = (1..=3).map(Word::generator).collect();
        let f = f3(Lambda3Form::basis(0, 1, 2).scale(&int(3)));
        assert!(johnson_action(&hom(gens.clone()), &f).unwrap().is_zero());
        let g = Word::from_signed(&[2, -1, 3, 3]);
        let inner = hom(gens.iter().map(|x| x.conjugate_by(&g)).collect());
        assert!(johnson_action(&inner, &f).unwrap().is_zero());
    }

    #[test]
    fn torelli_required() {
        let f = f3(Lambda3Form::basis(0, 1, 2));
        let bad = hom(vec![Word::from_signed(&[1, 2]), Word::generator(2), Word::generator(3)]);
        assert_eq!(johnson_action(&bad, &f).unwrap_err(), ParallelogramError::NotTorelli(1));
    }
}
