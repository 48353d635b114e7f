use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::group_ring::{epsilon, epsilon_eval, p_map, GroupRingElement, Tensor2};
use super::{ParallelogramError, WordFunction};
use crate::words::Word;
use crate::Rational;

/// The identity catalog. `Formule4` and `NoyauP` hold on all of `C(Γ)`,
/// `Order5` on second jet coefficients, the rest on `P(Γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `f(xy) + f(xy⁻¹) = 2f(x) + 2f(y)`.
    Parallelogram,
    /// `f(γⁿ) = n²f(γ)` for `|n| ≤ 3`, `f(γδ) = f(δγ)`, `f([γ,δ]) = 0`.
    Elem,
    /// `f ∘ ε₄ = 0`.
    Cubic,
    /// `f∘ε₃(a,b,c) + f∘ε₃(a,c,b) = f∘p(ε₂(a,b)⊗c + ε₂(a,c)⊗b − ε₂(b,c⁻¹)⊗a)`.
    Alter3,
    /// `f(a[b,c]) − f(a) = 2 f∘ε₃(a,b,c)`.
    VersGgg,
    /// `2 f∘ε₄(a,b,c,d) = f∘p(…)` with the seven-term right-hand side.
    Formule4,
    /// `f∘p` vanishes on the two kernel combinations.
    NoyauP,
    /// `f ∘ ε₅ = 0`.
    Order5,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Parallelogram,
        Identity::Elem,
        Identity::Cubic,
        Identity::Alter3,
        Identity::VersGgg,
        Identity::Formule4,
        Identity::NoyauP,
        Identity::Order5,
    ];

    pub fn arity(self) -> usize {
        match self {
            Identity::Parallelogram | Identity::Elem => 2,
            Identity::Alter3 | Identity::VersGgg | Identity::NoyauP => 3,
            Identity::Cubic | Identity::Formule4 => 4,
            Identity::Order5 => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::Parallelogram => "PARALLELOGRAM",
            Identity::Elem => "ELEM",
            Identity::Cubic => "CUBIC",
            Identity::Alter3 => "ALTER3",
            Identity::VersGgg => "VERSGGG",
            Identity::Formule4 => "FORMULE4",
            Identity::NoyauP => "NOYAUP",
            Identity::Order5 => "ORDER5",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Largest absolute residual over the sub-checks.
    pub residual: Rational,
}

fn e(words: &[&Word]) -> GroupRingElement {
    epsilon(&words.iter().map(|w| (*w).clone()).collect::<Vec<_>>())
}

fn gr(w: &Word) -> GroupRingElement {
    GroupRingElement::from_word(w.clone())
}

fn fp<F: WordFunction + ?Sized>(f: &F, t: &Tensor2) -> Rational {
    p_map(t).apply(f)
}

/// Evaluates both sides of `id` exactly on `inputs`.
pub fn verify_identity<F: WordFunction + ?Sized>(
    id: Identity,
    f: &F,
    inputs: &[Word],
) -> Result<IdentityCheck, ParallelogramError> {
    if inputs.len() != id.arity() {
        return Err(ParallelogramError::Arity { identity: id, expected: id.arity(), found: inputs.len() });
    }
    let two = Rational::from_integer(2.into());
    let residuals: Vec<Rational> = match id {
        Identity::Parallelogram => {
            let (x, y) = (&inputs[0], &inputs[1]);
            vec![f.eval(&x.product(y)) + f.eval(&x.product(&y.inverse())) - &two * f.eval(x) - &two * f.eval(y)]
        }
        Identity::Elem => {
            let (g, d) = (&inputs[0], &inputs[1]);
            let fg = f.eval(g);
            let mut r: Vec<Rational> =
                (-3i64..=3).map(|n| f.eval(&g.power(n)) - Rational::from_integer((n * n).into()) * &fg).collect();
            r.push(f.eval(&g.product(d)) - f.eval(&d.product(g)));
            r.push(f.eval(&g.commutator(d)));
            r
        }
        Identity::Cubic => vec![epsilon_eval(f, inputs)],
        Identity::Order5 => vec![epsilon_eval(f, inputs)],
        Identity::Alter3 => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let lhs = epsilon_eval(f, &[a.clone(), b.clone(), c.clone()])
                + epsilon_eval(f, &[a.clone(), c.clone(), b.clone()]);
            let t = Tensor2::tensor(&e(&[a, b]), &gr(c))
                .add(&Tensor2::tensor(&e(&[a, c]), &gr(b)))
                .sub(&Tensor2::tensor(&e(&[b, &c.inverse()]), &gr(a)));
            vec![lhs - fp(f, &t)]
        }
        Identity::VersGgg => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            vec![f.eval(&a.product(&b.commutator(c))) - f.eval(a) - &two * epsilon_eval(f, inputs)]
        }
        Identity::Formule4 => {
            let (a, b, c, d) = (&inputs[0], &inputs[1], &inputs[2], &inputs[3]);
            let (ci, di) = (c.inverse(), d.inverse());
            let t = Tensor2::tensor(&e(&[a, b, c]), &gr(d))
                .add(&Tensor2::tensor(&e(&[b, c, d]), &gr(a)))
                .add(&Tensor2::tensor(&e(&[a, b, d]), &gr(c)))
                .add(&Tensor2::tensor(&e(&[c, a, &di]), &gr(b)))
                .sub(&Tensor2::tensor(&e(&[a, &di]), &e(&[b, c])))
                .sub(&Tensor2::tensor(&e(&[b, d]), &e(&[c, a])))
                .sub(&Tensor2::tensor(&e(&[d, &ci]), &e(&[a, b])));
            vec![&two * epsilon_eval(f, inputs) - fp(f, &t)]
        }
        Identity::NoyauP => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let (bi, ci) = (b.inverse(), c.inverse());
            let k1 = Tensor2::tensor(&e(&[a, b]), &gr(c))
                .add(&Tensor2::tensor(&e(&[a, &bi]), &gr(c)))
                .sub(&Tensor2::tensor(&e(&[c, a]), &gr(b)))
                .sub(&Tensor2::tensor(&e(&[&ci, a]), &gr(b)));
            let k2 = Tensor2::tensor(&e(&[b, c]), &gr(a))
                .sub(&Tensor2::tensor(&e(&[c, b]), &gr(a)))
                .add(&Tensor2::tensor(&e(&[b, a]), &gr(c)))
                .sub(&Tensor2::tensor(&e(&[a, b]), &gr(c)))
                .sub(&Tensor2::tensor(&e(&[a, &ci]), &gr(b)))
                .add(&Tensor2::tensor(&e(&[&ci, a]), &gr(b)));
            vec![fp(f, &k1), fp(f, &k2)]
        }
    };
    let residual = residuals.iter().map(|r| r.abs()).max().unwrap_or_else(Rational::zero);
    Ok(IdentityCheck { holds: residual.is_zero(), residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Lambda3Form;
    use crate::linalg::Mat2;
    use crate::parallelogram::{trace_central_function, ParallelogramFunction, QuadraticForm};
    use crate::scalar::int;
    use crate::words::random_word;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn arity_checked() {
        let f = |_: &Word| int(0);
        assert!(matches!(verify_identity(Identity::Cubic, &f, &[]), Err(ParallelogramError::Arity { .. })));
    }

    #[test]
    fn catalog_on_counting_function() {
        let f = ParallelogramFunction::free(QuadraticForm::zero(3), Lambda3Form::basis(0, 1, 2)).unwrap();
        for id in [Identity::Parallelogram, Identity::Elem, Identity::Cubic, Identity::Alter3, Identity::VersGgg] {
            let inputs: Vec<Word> = (0..id.arity()).map(|i| random_word(3, 4 + i, 10 + i as u64)).collect();
            let c = verify_identity(id, &f, &inputs).unwrap();
            assert!(c.holds, "{id}: residual {}", c.residual);
        }
    }

    #[test]
    fn central_identities_on_a_trace() {
        let m = |a, b, c, d| Mat2::new(int(a), int(b), int(c), int(d));
        let rep = [m(2, 1, 1, 1), m(1, 3, 0, 1), m(0, -1, 1, 4), m(5, 2, 2, 1)];
        let f = trace_central_function(&rep).unwrap();
        let words: Vec<Word> = (0..4).map(|i| random_word(4, 3, 40 + i)).collect();
        assert!(verify_identity(Identity::Formule4, &f, &words).unwrap().holds);
        assert!(verify_identity(Identity::NoyauP, &f, &words[..3]).unwrap().holds);
        assert!(verify_identity(Identity::Alter3, &f, &words[..3]).unwrap().holds);
        // a trace function is not a parallelogram function in general
        let ac = [Word::generator(1), Word::generator(3)];
        assert!(!verify_identity(Identity::Parallelogram, &f, &ac).unwrap().holds);
    }
}
