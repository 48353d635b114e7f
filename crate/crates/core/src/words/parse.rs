use super::{Letter, Word};

/// Words longer than this after exponent expansion are rejected.
const MAX_EXPANDED_LEN: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown generator name at {pos}: {text:?}")]
    UnknownName { pos: usize, text: String },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent overflow at {pos}")]
    ExponentOverflow { pos: usize },
}

/// Parses `WORD := TERM+`, `TERM := ATOM ("^" INT)?`,
/// `ATOM := NAME | "1" | "(" WORD ")" | "[" WORD "," WORD "]"`.
///
/// Names may be juxtaposed without spaces (`abAB` style is not supported,
/// but `ab` over names `a, b` is); the longest matching name wins.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let mut p = Parser { src: text.as_bytes(), text, pos: 0, names };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(w)
}

/// Prints with the given names, collapsing runs into powers: `a^2 b^-1`.
/// The identity prints as `1`.
pub fn print_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let name = &names[l.gen - 1];
        let exp = run as i64 * l.sign();
        parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
        i += run;
    }
    parts.join(" ")
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        let mut terms = 0;
        while let Some(c) = self.peek() {
            if matches!(c, b')' | b']' | b',') {
                break;
            }
            let t = self.term()?;
            w = w.product(&t);
            terms += 1;
        }
        if terms == 0 {
            return Err(self.syntax("expected a word"));
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = &self.text[start..self.pos];
        if digits.trim_start_matches(['-', '+']).is_empty() {
            return Err(ParseError::Syntax { pos: start, msg: "expected an integer exponent".into() });
        }
        let exp: i32 = digits.parse().map_err(|_| ParseError::ExponentOverflow { pos: start })?;
        if base.len().saturating_mul(exp.unsigned_abs() as usize) > MAX_EXPANDED_LEN {
            return Err(ParseError::ExponentOverflow { pos: start });
        }
        Ok(base.power(exp as i64))
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(u.commutator(&v))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.name(),
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn name(&mut self) -> Result<Word, ParseError> {
        let rest = &self.text[self.pos..];
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_empty() && rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((i, n)) => {
                self.pos += n.len();
                Ok(Word::from_letters([Letter::pos(i + 1)]))
            }
            None => {
                let end = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
                Err(ParseError::UnknownName { pos: self.pos, text: rest[..end].into() })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::default_names;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn commutator_syntax() {
        let w = parse_word("[a,b]", &names(&["a", "b"])).unwrap();
        assert_eq!(w, Word::from_signed(&[1, 2, -1, -2]));
    }

    #[test]
    fn free_reduction() {
        assert_eq!(parse_word("a^-1 a b", &names(&["a", "b"])).unwrap(), Word::from_signed(&[2]));
    }

    #[test]
    fn exponent_expansion() {
        let w = parse_word("(c d)^3", &default_names(4)).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w, Word::from_signed(&[3, 4, 3, 4, 3, 4]));
    }

    #[test]
    fn juxtaposed_and_multichar_names() {
        let n = names(&["a1", "b1", "a2", "b2"]);
        let w = parse_word("[a1,b1][a2,b2]", &n).unwrap();
        assert_eq!(w, Word::from_signed(&[1, 2, -1, -2, 3, 4, -3, -4]));
        assert_eq!(parse_word("abab^-1", &names(&["a", "b"])).unwrap().len(), 4);
        assert_eq!(parse_word("1", &n).unwrap(), Word::identity());
    }

    #[test]
    fn errors() {
        let n = names(&["a", "b"]);
        assert!(matches!(parse_word("a c", &n), Err(ParseError::UnknownName { .. })));
        assert!(matches!(parse_word("(a b", &n), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_word("[a b]", &n), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_word("a^", &n), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_word("", &n), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_word("a^99999999999", &n), Err(ParseError::ExponentOverflow { .. })));
        assert!(matches!(parse_word("(a b)^2000000000", &n), Err(ParseError::ExponentOverflow { .. })));
    }

    #[test]
    fn printing() {
        let n = default_names(3);
        assert_eq!(print_word(&Word::from_signed(&[1, 1, -2, 3]), &n), "a^2 b^-1 c");
        assert_eq!(print_word(&Word::identity(), &n), "1");
    }
}
