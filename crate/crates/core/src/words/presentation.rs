use std::fmt;

use super::{parse_word, print_word, ParseError, Word};

/// A finite presentation `⟨ generators | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, ParseError> {
        for (i, name) in generator_names.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(ParseError::Syntax { pos: 0, msg: format!("invalid generator name {name:?}") });
            }
            if generator_names[..i].contains(name) {
                return Err(ParseError::Syntax { pos: 0, msg: format!("duplicate generator {name:?}") });
            }
        }
        let n = generator_names.len();
        if let Some(r) = relators.iter().find(|r| r.max_generator() > n) {
            return Err(ParseError::Syntax {
                pos: 0,
                msg: format!("relator uses generator {} but only {n} exist", r.max_generator()),
            });
        }
        Ok(Presentation { generator_names, relators })
    }

    /// Free group on the given names.
    pub fn free(names: &[&str]) -> Self {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new()).expect("valid generator names")
    }

    /// Parses the line format: one `gens: a b c` line, any number of
    /// `rel: WORD` lines, `#` comments.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut gens: Option<Vec<String>> = None;
        let mut rel_lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| ParseError::Syntax { pos: lineno + 1, msg: format!("line {}: {msg}", lineno + 1) };
            if let Some(rest) = line.strip_prefix("gens:") {
                if gens.is_some() {
                    return Err(err("second gens line"));
                }
                gens = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("rel:") {
                rel_lines.push((lineno + 1, rest.trim().to_string()));
            } else {
                return Err(err("expected 'gens:' or 'rel:'"));
            }
        }
        let names = gens.ok_or(ParseError::Syntax { pos: 0, msg: "missing gens line".into() })?;
        let relators = rel_lines
            .into_iter()
            .map(|(line, r)| {
                parse_word(&r, &names).map_err(|e| match e {
                    ParseError::UnknownName { text, .. } => ParseError::UnknownName { pos: line, text },
                    ParseError::Syntax { msg, .. } => {
                        ParseError::Syntax { pos: line, msg: format!("line {line}: {msg}") }
                    }
                    ParseError::ExponentOverflow { .. } => ParseError::ExponentOverflow { pos: line },
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(names, relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generator_count() as i64 - self.relators.len() as i64
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        parse_word(text, &self.generator_names)
    }

    pub fn print_word(&self, w: &Word) -> String {
        print_word(w, &self.generator_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generator_names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.print_word(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file_format() {
        let p =
            Presentation::parse("# (3,3,3) * F2\ngens: a b c d\nrel: c^3\nrel: d^3  # cube\n\nrel: (c d)^3\n").unwrap();
        assert_eq!(p.generator_count(), 4);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].len(), 6);
        assert_eq!(p.deficiency(), 1);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(Presentation::parse("rel: a").is_err());
        assert!(Presentation::parse("gens: a a").is_err());
        assert!(Presentation::parse("gens: a b\nrel: c").is_err());
        assert!(Presentation::parse("gens: a\nfoo").is_err());
        assert!(Presentation::parse("gens: a\ngens: b").is_err());
    }
}
