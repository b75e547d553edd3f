//! Words in a free group and their compact string syntax.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! word    := factor (["*"] factor)*
//! factor  := atom ("'" | "^" ["-"] digits)*
//! atom    := "x" digits | "(" word ")" | "(" word "," word ")"
//! ```
//!
//! `x1, x2, ...` are the variables, `'` inverts, `^n` is a power and
//! `(a,b)` is the group commutator `a^-1 b^-1 a b`. Nested commutators
//! associate to the left when written out, e.g. `((x1,x2),x2)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word reduces to the identity")]
    EmptyWord,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A freely reduced, nonempty word. Letters are `(variable, exponent)` with
/// exponent `+1` or `-1` and 0-based variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    arity: usize,
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Result<Self, WordError> {
        let letters = reduce(letters);
        if letters.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let arity = letters.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        Ok(GroupWord { arity, letters })
    }

    pub fn var(i: usize) -> Self {
        GroupWord { arity: i + 1, letters: vec![(i, 1)] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(v, e)| (v, -e)).collect();
        GroupWord { arity: self.arity, letters }
    }

    pub fn product(&self, other: &Self) -> Result<Self, WordError> {
        Self::new(self.letters.iter().chain(&other.letters).copied().collect())
    }

    pub fn power(&self, n: i64) -> Result<Self, WordError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let letters = (0..n.unsigned_abs()).flat_map(|_| base.letters.iter().copied()).collect();
        Self::new(letters)
    }

    /// `(a, b) = a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, WordError> {
        let letters = a
            .inverse()
            .letters
            .into_iter()
            .chain(b.inverse().letters)
            .chain(a.letters.iter().copied())
            .chain(b.letters.iter().copied())
            .collect();
        Self::new(letters)
    }

    /// Engel word `(x1, x2, ..., x2)` with `n >= 1` copies of `x2`.
    pub fn engel(n: usize) -> Self {
        assert!(n >= 1, "Engel words need at least one repetition");
        let y = Self::var(1);
        let mut w = Self::var(0);
        for _ in 0..n {
            w = Self::commutator(&w, &y).expect("Engel words are nontrivial in the free group");
        }
        w
    }

    /// `(x1, x2)^(p^t)`.
    pub fn commutator_power(p: u64, t: u32) -> Self {
        let c = Self::commutator(&Self::var(0), &Self::var(1)).unwrap();
        c.power(p.pow(t) as i64).unwrap()
    }

    /// Left-normed commutator of depth `d`: `(x1,x2)` for 1, then
    /// `((x1,x2),(x3,x4))`, doubling the variables at each level. The
    /// identity holds on a group iff its derived length is at most `d`.
    pub fn derived_word(d: usize) -> Self {
        assert!(d >= 1, "derived words have depth at least 1");
        let mut level: Vec<GroupWord> = (0..1usize << d).map(Self::var).collect();
        while level.len() > 1 {
            level = level.chunks(2).map(|pair| Self::commutator(&pair[0], &pair[1]).unwrap()).collect();
        }
        level.pop().unwrap()
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let letters = p.word()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Self::new(letters)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(v, e)| if e > 0 { format!("x{}", v + 1) } else { format!("x{}'", v + 1) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn reduce(letters: Vec<(usize, i8)>) -> Vec<(usize, i8)> {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&(v, e)) if v == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type Letters = Vec<(usize, i8)>;

impl Parser<'_> {
    fn error(&self, msg: &str) -> WordError {
        WordError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, WordError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn word(&mut self) -> Result<Letters, WordError> {
        let mut out = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    out.extend(self.factor()?);
                }
                Some(b'x') | Some(b'(') => out.extend(self.factor()?),
                _ => return Ok(out),
            }
        }
    }

    fn factor(&mut self) -> Result<Letters, WordError> {
        let mut w = self.atom()?;
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    w = invert(&w);
                }
                Some(b'^') => {
                    self.pos += 1;
                    let neg = self.peek() == Some(b'-');
                    if neg {
                        self.pos += 1;
                    }
                    let n = self.number()?;
                    let base = if neg { invert(&w) } else { w };
                    w = (0..n).flat_map(|_| base.iter().copied()).collect();
                }
                _ => return Ok(w),
            }
        }
    }

    fn atom(&mut self) -> Result<Letters, WordError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let i = self.number()?;
                if i == 0 {
                    return Err(self.error("variables are numbered from x1"));
                }
                Ok(vec![(i as usize - 1, 1)])
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.word()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(a)
                    }
                    Some(b',') => {
                        self.pos += 1;
                        let b = self.word()?;
                        if self.peek() != Some(b')') {
                            return Err(self.error("expected ')'"));
                        }
                        self.pos += 1;
                        let mut out = invert(&a);
                        out.extend(invert(&b));
                        out.extend(a);
                        out.extend(b);
                        Ok(out)
                    }
                    _ => Err(self.error("expected ',' or ')'")),
                }
            }
            _ => Err(self.error("expected a variable or '('")),
        }
    }
}

fn invert(w: &[(usize, i8)]) -> Letters {
    w.iter().rev().map(|&(v, e)| (v, -e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commutators_and_powers() {
        let c = GroupWord::parse("(x1,x2)").unwrap();
        assert_eq!(c.letters(), &[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(c.arity(), 2);
        let p = GroupWord::parse("(x1,x2)^4").unwrap();
        assert_eq!(p.letters().len(), 16);
        assert_eq!(p, GroupWord::commutator_power(2, 2));
        let e = GroupWord::parse("((x1,x2),x2)").unwrap();
        assert_eq!(e, GroupWord::engel(2));
        let inv = GroupWord::parse("x1' x2").unwrap();
        assert_eq!(inv.letters(), &[(0, -1), (1, 1)]);
        assert_eq!(GroupWord::parse("x1^-2").unwrap().letters(), &[(0, -1), (0, -1)]);
        assert_eq!(GroupWord::parse("x3").unwrap().arity(), 3);
    }

    #[test]
    fn rejects_empty_and_malformed_words() {
        assert_eq!(GroupWord::parse("x1 x1'"), Err(WordError::EmptyWord));
        assert_eq!(GroupWord::parse("(x1,x1)"), Err(WordError::EmptyWord));
        assert_eq!(GroupWord::parse("x1^0"), Err(WordError::EmptyWord));
        assert!(matches!(GroupWord::parse(""), Err(WordError::Parse { .. })));
        assert!(matches!(GroupWord::parse("(x1,x2"), Err(WordError::Parse { .. })));
        assert!(matches!(GroupWord::parse("x0"), Err(WordError::Parse { .. })));
        assert!(matches!(GroupWord::parse("x1 y"), Err(WordError::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        let w = GroupWord::engel(3);
        assert_eq!(GroupWord::parse(&w.to_string()).unwrap(), w);
        let d = GroupWord::derived_word(2);
        assert_eq!(d.arity(), 4);
    }
}
