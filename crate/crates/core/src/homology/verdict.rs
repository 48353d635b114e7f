use std::fmt;

use serde::Serialize;

use super::compute_h1;
use crate::words::{evaluate_hom, parse_word, subgroup_is_whole_free_group, FreeGroup, GroupHom, Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Smooth,
    NotSmooth,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Smooth => "SMOOTH",
            Verdict::NotSmooth => "NOT_SMOOTH",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessVerdict {
    pub verdict: Verdict,
    pub reason: String,
    /// Rank of `H₁(Γ, ℤ)`.
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("witness line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("witness gives no image for generator {0}")]
    Missing(String),
}

/// A proposed surjection `Γ → F₂`, as generator images in `F₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Witness {
    pub target_names: Vec<String>,
    pub images: Vec<Word>,
}

impl F2Witness {
    /// Parses `target: x y` followed by one `gen = WORD` line per generator.
    pub fn parse(text: &str, p: &Presentation) -> Result<Self, WitnessError> {
        let mut target: Option<Vec<String>> = None;
        let mut images: Vec<Option<Word>> = vec![None; p.generator_count()];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| WitnessError::Syntax { line: line_no, msg };
            if let Some(rest) = line.strip_prefix("target:") {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.len() != 2 {
                    return Err(err("target must name exactly two generators".into()));
                }
                target = Some(names);
                continue;
            }
            let Some(names) = &target else {
                return Err(err("expected 'target:' first".into()));
            };
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("expected 'gen = WORD'".into()))?;
            let gen = p
                .generator_names()
                .iter()
                .position(|g| g == lhs.trim())
                .ok_or_else(|| err(format!("unknown generator {:?}", lhs.trim())))?;
            let w = parse_word(rhs.trim(), names).map_err(|e| err(e.to_string()))?;
            images[gen] = Some(w);
        }
        let target_names = target.ok_or(WitnessError::Syntax { line: 0, msg: "missing 'target:' line".into() })?;
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| WitnessError::Missing(p.generator_names()[i].clone())))
            .collect::<Result<_, _>>()?;
        Ok(F2Witness { target_names, images })
    }

    /// Relators that do not die under the witness, and whether it is onto.
    pub fn check(&self, p: &Presentation) -> (Vec<usize>, bool) {
        let h = GroupHom::new(FreeGroup { rank: 2 }, self.images.clone());
        let surviving = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| !evaluate_hom(r, &h).expect("one image per generator").is_identity())
            .map(|(i, _)| i)
            .collect();
        (surviving, subgroup_is_whole_free_group(&self.images, 2))
    }
}

/// Smoothness of `X(Γ)` at the trivial character from `n = rank H₁`:
/// `n < 2` smooth, `n > 2` not smooth; for `n = 2` smooth when `H₂` has no
/// generators, the deficiency is at least 2, or a surjection onto `F₂` is supplied.
pub fn smoothness_verdict(p: &Presentation, witness: Option<&F2Witness>) -> SmoothnessVerdict {
    let h = compute_h1(p);
    let n = h.h1_rank;
    let (verdict, reason) = if n < 2 {
        (Verdict::Smooth, format!("n = {n} < 2"))
    } else if n > 2 {
        (Verdict::NotSmooth, format!("n = {n} > 2"))
    } else if h.h2_generator_bound() == 0 {
        (Verdict::Smooth, "n = 2 and no relator has trivial abelianization, so H2(Γ,Z) = 0".into())
    } else if p.deficiency() >= 2 {
        (Verdict::Smooth, format!("n = 2 and the presentation has deficiency {}", p.deficiency()))
    } else {
        match witness.map(|w| w.check(p)) {
            Some((surviving, true)) if surviving.is_empty() => {
                (Verdict::Smooth, "n = 2 and the supplied map onto F2 is a verified surjection".into())
            }
            Some((surviving, onto)) => {
                let mut why = Vec::new();
                if !surviving.is_empty() {
                    why.push(format!("relators {surviving:?} do not map to 1"));
                }
                if !onto {
                    why.push("the images do not generate F2".to_string());
                }
                (Verdict::Unknown, format!("n = 2 and the supplied witness fails: {}", why.join("; ")))
            }
            None => (
                Verdict::Unknown,
                format!(
                    "n = 2 with {} possible H2 generator(s) and deficiency {}; no surjection onto F2 supplied",
                    h.h2_generator_bound(),
                    p.deficiency()
                ),
            ),
        }
    };
    SmoothnessVerdict { verdict, reason, n }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    #[test]
    fn decision_table() {
        assert_eq!(smoothness_verdict(&pres("gens: a b\nrel: a b a b^-1 a^-1 b^-1"), None).verdict, Verdict::Smooth);
        let f3 = smoothness_verdict(&Presentation::free(&["a", "b", "c"]), None);
        assert_eq!((f3.verdict, f3.n), (Verdict::NotSmooth, 3));
        assert_eq!(smoothness_verdict(&Presentation::free(&["a", "b"]), None).verdict, Verdict::Smooth);
        let t = pres("gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3");
        assert_eq!(smoothness_verdict(&t, None).verdict, Verdict::Unknown);
        assert_eq!(smoothness_verdict(&pres("gens: a b\nrel: [a,b]"), None).verdict, Verdict::Unknown);
    }

    #[test]
    fn witness() {
        let t = pres("gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3");
        let good = F2Witness::parse("target: x y\na = x\nb = y\nc = 1\nd = 1\n", &t).unwrap();
        assert_eq!(smoothness_verdict(&t, Some(&good)).verdict, Verdict::Smooth);
        let bad = F2Witness::parse("target: x y\na = x\nb = x\nc = 1\nd = 1\n", &t).unwrap();
        assert_eq!(smoothness_verdict(&t, Some(&bad)).verdict, Verdict::Unknown);
        let killing = F2Witness::parse("target: x y\na = x\nb = y\nc = x\nd = 1\n", &t).unwrap();
        assert_eq!(killing.check(&t).0, vec![0, 2]);
        assert!(matches!(F2Witness::parse("target: x y\na = x", &t), Err(WitnessError::Missing(_))));
        assert!(F2Witness::parse("a = x", &t).is_err());
    }
}
