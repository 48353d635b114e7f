use crate::words::{Presentation, Word};

/// A relator after reduction together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedRelator {
    pub word: Word,
    /// `word = Π r_{idx}^{exp}` over original relators, read left to right.
    pub log: Vec<(usize, i64)>,
}

impl ReducedRelator {
    /// Replays the log on the original relators.
    pub fn replay(&self, originals: &[Word]) -> Word {
        self.log.iter().fold(Word::identity(), |acc, &(i, e)| acc.product(&originals[i].power(e)))
    }

    fn times_power_of(&mut self, other: &ReducedRelator, k: i64) {
        self.word = self.word.product(&other.word.power(k));
        let step: Vec<(usize, i64)> =
            if k >= 0 { other.log.clone() } else { other.log.iter().rev().map(|&(i, e)| (i, -e)).collect() };
        for _ in 0..k.unsigned_abs() {
            push_log(&mut self.log, &step);
        }
    }

    fn invert(&mut self) {
        self.word = self.word.inverse();
        self.log = self.log.iter().rev().map(|&(i, e)| (i, -e)).collect();
    }
}

fn push_log(log: &mut Vec<(usize, i64)>, step: &[(usize, i64)]) {
    for &(i, e) in step {
        match log.last_mut() {
            Some((j, f)) if *j == i => {
                *f += e;
                if *f == 0 {
                    log.pop();
                }
            }
            _ => log.push((i, e)),
        }
    }
}

/// Relators in echelon form: the first `ell` have independent abelianizations,
/// the rest have zero abelianization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorReduction {
    pub relators: Vec<ReducedRelator>,
    pub ell: usize,
}

impl RelatorReduction {
    /// Relators with trivial abelianization (the `H₂` generator candidates).
    pub fn trivial(&self) -> &[ReducedRelator] {
        &self.relators[self.ell..]
    }
}

/// Integer row reduction of the abelianized relators, mirrored on the words
/// as `r_i ← r_i·r_p^{-q}`, swaps and inversions. Generators are never changed.
pub fn reduce_relators(p: &Presentation) -> RelatorReduction {
    let n = p.generator_count();
    let mut rels: Vec<ReducedRelator> =
        p.relators().iter().enumerate().map(|(i, w)| ReducedRelator { word: w.clone(), log: vec![(i, 1)] }).collect();
    let mut ab: Vec<Vec<i64>> = rels.iter().map(|r| r.word.abelianize(n)).collect();
    let mut pivot_row = 0;
    for c in 0..n {
        if pivot_row == rels.len() {
            break;
        }
        loop {
            let best = (pivot_row..rels.len()).filter(|&i| ab[i][c] != 0).min_by_key(|&i| (ab[i][c].unsigned_abs(), i));
            let Some(best) = best else { break };
            rels.swap(pivot_row, best);
            ab.swap(pivot_row, best);
            let mut cleared = true;
            for i in pivot_row + 1..rels.len() {
                if ab[i][c] == 0 {
                    continue;
                }
                let q = ab[i][c].div_euclid(ab[pivot_row][c]);
                let pivot = rels[pivot_row].clone();
                rels[i].times_power_of(&pivot, -q);
                let pr = ab[pivot_row].clone();
                for (x, y) in ab[i].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
                cleared &= ab[i][c] == 0;
            }
            if cleared {
                break;
            }
        }
        if ab[pivot_row][c] != 0 {
            if ab[pivot_row][c] < 0 {
                rels[pivot_row].invert();
                ab[pivot_row].iter_mut().for_each(|x| *x = -*x);
            }
            pivot_row += 1;
        }
    }
    debug_assert!(rels[pivot_row..].iter().all(|r| r.word.abelianize(n).iter().all(|&x| x == 0)));
    RelatorReduction { relators: rels, ell: pivot_row }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_only() {
        let p = Presentation::parse("gens: a b\nrel: [a,b]").unwrap();
        let r = reduce_relators(&p);
        assert_eq!(r.ell, 0);
        assert_eq!(r.trivial().len(), 1);
        assert_eq!(r.trivial()[0].word, p.relators()[0]);
    }

    #[test]
    fn triangle_free_product() {
        let p = Presentation::parse("gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3").unwrap();
        let r = reduce_relators(&p);
        assert_eq!(r.ell, 2);
        assert_eq!(r.trivial().len(), 1);
        for rel in &r.relators {
            assert_eq!(rel.replay(p.relators()), rel.word);
        }
        let t = &r.trivial()[0];
        assert_eq!(t.word.abelianize(4), vec![0; 4]);
        assert_eq!(t.log.iter().map(|&(i, e)| (i, e)).filter(|&(i, _)| i == 2).count(), 1);
    }

    #[test]
    fn free_group() {
        let r = reduce_relators(&Presentation::free(&["a", "b", "c"]));
        assert_eq!(r.ell, 0);
        assert!(r.relators.is_empty());
    }
}
