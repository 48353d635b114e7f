use super::Word;
use crate::perm::Permutation;

/// A target group supplied as identity, product and inverse.
pub trait Group {
    type Element: Clone;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;
}

/// `S_m` acting on `{0, .., m-1}`; products apply the right factor first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricGroup {
    pub degree: usize,
}

impl Group for SymmetricGroup {
    type Element = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

/// The free group itself, used for homomorphisms between free groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.product(b)
    }

    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("generator {gen} has no image (only {count} given)")]
    IndexOutOfRange { gen: usize, count: usize },
}

/// A homomorphism from a free group, given by generator images.
#[derive(Debug, Clone)]
pub struct GroupHom<G: Group> {
    pub target: G,
    pub images: Vec<G::Element>,
}

impl<G: Group> GroupHom<G> {
    pub fn new(target: G, images: Vec<G::Element>) -> Self {
        GroupHom { target, images }
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn evaluate(&self, w: &Word) -> Result<G::Element, HomError> {
        evaluate_hom(w, self)
    }
}

/// Image of `w` under the homomorphism extending the generator images.
pub fn evaluate_hom<G: Group>(w: &Word, h: &GroupHom<G>) -> Result<G::Element, HomError> {
    let mut inverses: Vec<Option<G::Element>> = vec![None; h.images.len()];
    let mut acc = h.target.identity();
    for l in w.letters() {
        let img = h.images.get(l.gen - 1).ok_or(HomError::IndexOutOfRange { gen: l.gen, count: h.images.len() })?;
        acc = if l.inverse {
            let inv = inverses[l.gen - 1].get_or_insert_with(|| h.target.inv(img));
            h.target.mul(&acc, inv)
        } else {
            h.target.mul(&acc, img)
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{default_names, parse_word};

    fn remark_hom() -> GroupHom<SymmetricGroup> {
        let images = ["(1 2 3)", "(1 4)(2 5)(3 6)", "(1 6 3 5 2 4)", "(2 3 4)"]
            .iter()
            .map(|c| Permutation::from_cycles(c, 6).unwrap())
            .collect();
        GroupHom::new(SymmetricGroup { degree: 6 }, images)
    }

    #[test]
    fn s6_images() {
        let h = remark_hom();
        let names = default_names(4);
        let eval = |s: &str| evaluate_hom(&parse_word(s, &names).unwrap(), &h).unwrap();
        assert!(eval("d^3 [a,b]^3").is_identity());
        assert!(!eval("[[c,[a,b]],[d,[a,b]]]").is_identity());
        // c^4 = (1 2 3)(4 5 6) while [a,b] = (1 2 3)(4 6 5): the two 3-cycles
        // turn in opposite senses, so c^4 [a,b]^2 survives as (4 6 5).
        assert_eq!(eval("c^4").to_string(), "(1 2 3)(4 5 6)");
        assert_eq!(eval("[a,b]").to_string(), "(1 2 3)(4 6 5)");
        assert_eq!(eval("c^4 [a,b]^2").to_string(), "(4 6 5)");
    }

    #[test]
    fn out_of_range() {
        let h = GroupHom::new(FreeGroup { rank: 1 }, vec![Word::generator(1)]);
        assert_eq!(evaluate_hom(&Word::generator(2), &h), Err(HomError::IndexOutOfRange { gen: 2, count: 1 }));
    }

    #[test]
    fn free_group_target() {
        let h = GroupHom::new(FreeGroup { rank: 2 }, vec![Word::from_signed(&[1, 2]), Word::generator(2)]);
        let img = evaluate_hom(&Word::from_signed(&[1, -2]), &h).unwrap();
        assert_eq!(img, Word::generator(1));
    }
}
