use crate::words::{Letter, Word};

/// Orders of `(a, b, c)` that count positively; their reversals count negatively.
const POSITIVE: [[usize; 3]; 3] = [[1, 2, 3], [2, 3, 1], [3, 1, 2]];
const NEGATIVE: [[usize; 3]; 3] = [[1, 3, 2], [3, 2, 1], [2, 1, 3]];

/// Signed count of subsequences `a^±1 b^±1 c^±1` up to cyclic order in a word on `F₃`.
pub fn counting_f3(w: &Word) -> i64 {
    counting_f3_letters(w.letters())
}

/// Same as [`counting_f3`] on a letter sequence that need not be reduced.
pub fn counting_f3_letters(letters: &[Letter]) -> i64 {
    assert!(letters.iter().all(|l| l.gen <= 3), "counting function lives on three generators");
    let count = |pat: &[usize; 3]| -> i64 {
        let (mut s1, mut s2, mut s3) = (0i64, 0i64, 0i64);
        for l in letters {
            let e = l.sign();
            if l.gen == pat[2] {
                s3 += s2 * e;
            } else if l.gen == pat[1] {
                s2 += s1 * e;
            } else if l.gen == pat[0] {
                s1 += e;
            }
        }
        s3
    };
    POSITIVE.iter().map(count).sum::<i64>() - NEGATIVE.iter().map(count).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(counting_f3(&Word::from_signed(&[1, 2, 3])), 1);
        assert_eq!(counting_f3(&Word::from_signed(&[3, 2, 1])), -1);
        assert_eq!(counting_f3(&Word::from_signed(&[-1, 2, 3])), -1);
        assert_eq!(counting_f3(&Word::identity()), 0);
    }

    #[test]
    fn unreduced_insertions_do_not_matter() {
        let base = [Letter::pos(1), Letter::pos(2), Letter::pos(3)];
        let padded = [Letter::pos(1), Letter::pos(3), Letter::neg(3), Letter::pos(2), Letter::pos(3)];
        assert_eq!(counting_f3_letters(&base), counting_f3_letters(&padded));
    }
}
