//! Words over a doubled alphabet.
//!
//! A [`Letter`] is a lowercase base symbol `a..=z` with an optional star; a
//! [`Word`] is a finite sequence of letters. The star operation on words
//! reverses the sequence and toggles every star, so `(uv)* = v*u*` and
//! `w** = w` hold by construction.
//!
//! Text form: letters with `*` suffixes, with optional `^k` run compression,
//! e.g. `x*xy*x^2yz*x*y`. Whitespace is ignored. Parentheses belong to the
//! term grammar (see [`crate::term`]) and are rejected here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling on the expanded length of a parsed word, so `a^999999999`
/// cannot allocate unbounded memory.
pub const MAX_WORD_LEN: usize = 1 << 20;

/// One symbol of the doubled alphabet: a lowercase base plus a star flag.
///
/// Ordering is by base first, unstarred before starred (`a < a* < b < b*`);
/// this is the order behind every "alphabetical"/"lexicographically least"
/// promise in the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    base: u8,
    starred: bool,
}

impl Letter {
    /// A new letter; `base` must be ASCII lowercase.
    pub fn new(base: u8, starred: bool) -> Result<Self> {
        if base.is_ascii_lowercase() {
            Ok(Letter { base, starred })
        } else {
            Err(Error::Domain(format!(
                "letter base must be a..=z, got {:?}",
                base as char
            )))
        }
    }

    /// Unchecked constructor for internal call sites with known-good bases.
    pub(crate) fn raw(base: u8, starred: bool) -> Self {
        debug_assert!(base.is_ascii_lowercase());
        Letter { base, starred }
    }

    pub fn base(self) -> u8 {
        self.base
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    /// The star partner: same base, opposite flag.
    pub fn star(self) -> Self {
        Letter {
            base: self.base,
            starred: !self.starred,
        }
    }

    /// The unstarred letter with the same base.
    pub fn unstarred(self) -> Self {
        Letter {
            base: self.base,
            starred: false,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base as char)?;
        if self.starred {
            write!(f, "*")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A (possibly empty) word over the doubled alphabet.
///
/// The empty word is a legal value (identity for concatenation); parsers
/// reject empty input because the surrounding algebra works with nonempty
/// words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First letter (`h(w)`), if any.
    pub fn head(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// Last letter (`t(w)`), if any.
    pub fn tail(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenate a sequence of words.
    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    /// The starred word: reverse the sequence and toggle every star.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.star()).collect())
    }

    /// The plain projection: erase all stars, keep positions.
    pub fn plain(&self) -> Word {
        Word(self.0.iter().map(|l| l.unstarred()).collect())
    }

    /// Subword by letter range (half-open).
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Content `con(w)`: the set of letters occurring in `w`.
    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// The set of bases occurring in `w` (content of the plain projection).
    pub fn bases(&self) -> BTreeSet<u8> {
        self.0.iter().map(|l| l.base()).collect()
    }

    /// Number of occurrences of an exact letter (star flag counts).
    pub fn occ(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// Number of occurrences of a base letter in the plain projection.
    pub fn occ_base(&self, base: u8) -> usize {
        self.0.iter().filter(|x| x.base() == base).count()
    }

    /// Bases `x` with both `x` and `x*` occurring (the mixed pairs of `w`).
    pub fn mixed_bases(&self) -> BTreeSet<u8> {
        let content = self.content();
        content
            .iter()
            .filter(|l| !l.is_starred() && content.contains(&l.star()))
            .map(|l| l.base())
            .collect()
    }

    /// A word is mixed when some base occurs both starred and unstarred.
    pub fn is_mixed(&self) -> bool {
        !self.mixed_bases().is_empty()
    }

    /// Bipartite = not mixed: each base occurs in only one of the two forms.
    pub fn is_bipartite(&self) -> bool {
        !self.is_mixed()
    }

    /// A base is simple in `w` when it occurs exactly once in the plain
    /// projection. Returns the letters (with their actual star flag) whose
    /// base is simple.
    pub fn simple_letters(&self) -> BTreeSet<Letter> {
        self.0
            .iter()
            .copied()
            .filter(|l| self.occ_base(l.base()) == 1)
            .collect()
    }

    /// Every base occurs exactly once.
    pub fn is_simple(&self) -> bool {
        self.0.len() == self.bases().len()
    }

    /// Two words are disjoint when their plain contents share no base.
    pub fn is_disjoint_from(&self, other: &Word) -> bool {
        self.bases().is_disjoint(&other.bases())
    }

    /// A word is connected when it cannot be split into two nonempty factors
    /// with disjoint plain contents. Words of length ≤ 1 are connected.
    pub fn is_connected(&self) -> bool {
        if self.len() <= 1 {
            return true;
        }
        // Interval-cover scan: a split at k exists iff no base interval
        // (first occurrence .. last occurrence) crosses k.
        let mut last: BTreeMap<u8, usize> = BTreeMap::new();
        for (i, l) in self.0.iter().enumerate() {
            last.insert(l.base(), i);
        }
        let mut reach = 0usize;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 && reach < i {
                return false; // nothing crosses the boundary before position i
            }
            reach = reach.max(last[&l.base()]);
        }
        true
    }

    /// Greedy scattered-subword test: is `pattern` a subsequence of `self`
    /// with exact letters (stars must match)? Returns the lexicographically
    /// least witness positions (0-based), which the left-to-right greedy
    /// scan produces.
    pub fn scattered_positions(&self, pattern: &Word) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(pattern.len());
        let mut from = 0usize;
        for &p in pattern.letters() {
            let found = self.0[from..].iter().position(|&l| l == p)? + from;
            out.push(found);
            from = found + 1;
        }
        Some(out)
    }

    /// Occurrence summary of the word.
    pub fn stats(&self) -> WordStats {
        let mut occ = BTreeMap::new();
        for &l in &self.0 {
            *occ.entry(l).or_insert(0usize) += 1;
        }
        WordStats {
            content: self.content(),
            occ,
            mixed_bases: self.mixed_bases(),
            simple_letters: self.simple_letters(),
            head: self.head(),
            tail: self.tail(),
            length: self.len(),
        }
    }

    /// Structural classification of the word.
    pub fn structure(&self) -> WordStructure {
        WordStructure {
            mixed: self.is_mixed(),
            bipartite: self.is_bipartite(),
            connected: self.is_connected(),
            simple: self.is_simple(),
        }
    }

    /// Parse the flat word grammar (no parentheses).
    pub fn parse(input: &str) -> Result<Word> {
        let bytes = input.as_bytes();
        let mut letters: Vec<Letter> = Vec::new();
        let mut i = 0usize;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if c == b'(' || c == b')' {
                return Err(Error::syntax(
                    i,
                    "parentheses are only valid in terms, not words",
                ));
            }
            if !c.is_ascii_lowercase() {
                return Err(Error::syntax(i, format!("expected letter, got {:?}", c as char)));
            }
            let mut l = Letter::raw(c, false);
            i += 1;
            if i < bytes.len() && bytes[i] == b'*' {
                l = l.star();
                i += 1;
            }
            let mut count = 1usize;
            if i < bytes.len() && bytes[i] == b'^' {
                let (k, next) = parse_exponent(bytes, i + 1)?;
                count = k;
                i = next;
            }
            if letters.len() + count > MAX_WORD_LEN {
                return Err(Error::Capability(format!(
                    "word longer than {MAX_WORD_LEN} letters"
                )));
            }
            letters.extend(std::iter::repeat(l).take(count));
        }
        if letters.is_empty() {
            return Err(Error::syntax(0, "empty word"));
        }
        Ok(Word(letters))
    }

    /// Canonical rendering: one symbol per letter, no compression.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for l in &self.0 {
            s.push(l.base() as char);
            if l.is_starred() {
                s.push('*');
            }
        }
        s
    }

    /// Rendering with runs of equal letters compressed to `^k`.
    pub fn render_compact(&self) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            s.push(l.base() as char);
            if l.is_starred() {
                s.push('*');
            }
            if j - i > 1 {
                s.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        s
    }
}

/// Parse the digits of an exponent starting at `pos`; returns (value, next).
fn parse_exponent(bytes: &[u8], pos: usize) -> Result<(usize, usize)> {
    let mut i = pos;
    let mut val: usize = 0;
    let mut any = false;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        any = true;
        val = val
            .saturating_mul(10)
            .saturating_add((bytes[i] - b'0') as usize);
        if val > MAX_WORD_LEN {
            return Err(Error::Capability(format!(
                "exponent larger than {MAX_WORD_LEN}"
            )));
        }
        i += 1;
    }
    if !any {
        return Err(Error::syntax(pos, "expected digits after '^'"));
    }
    if val == 0 {
        return Err(Error::syntax(pos, "exponent 0 is not allowed"));
    }
    Ok((val, i))
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.render())
        }
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.render())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Occurrence summary returned by [`Word::stats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStats {
    pub content: BTreeSet<Letter>,
    pub occ: BTreeMap<Letter, usize>,
    pub mixed_bases: BTreeSet<u8>,
    pub simple_letters: BTreeSet<Letter>,
    pub head: Option<Letter>,
    pub tail: Option<Letter>,
    pub length: usize,
}

/// Structural flags returned by [`Word::structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordStructure {
    pub mixed: bool,
    pub bipartite: bool,
    pub connected: bool,
    pub simple: bool,
}

/// Convenience constructor used throughout tests: `w("x*xy")`.
pub fn w(s: &str) -> Word {
    Word::parse(s).expect("test word must parse")
}

/// Letters `x₁ < x₂ < …` strictly increasing by base (star flags free)?
pub fn strictly_alphabetical(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0].base() < p[1].base())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_round_trip() {
        let word = w("x*xy*x^2yz*x*y");
        assert_eq!(word.render(), "x*xy*xxyz*x*y");
        assert_eq!(word.render_compact(), "x*xy*x^2yz*x*y");
        assert_eq!(Word::parse(&word.render()).unwrap(), word);
        assert_eq!(Word::parse(&word.render_compact()).unwrap(), word);
    }

    #[test]
    fn occurrence_summary() {
        // Running example: w = x*xy*x²yz*x*y.
        let word = w("x*xy*x^2yz*x*y");
        let st = word.stats();
        assert_eq!(st.length, 9);
        assert_eq!(st.head, Some(Letter::raw(b'x', true)));
        assert_eq!(st.tail, Some(Letter::raw(b'y', false)));
        assert_eq!(
            st.content,
            ["x", "x*", "y", "y*", "z*"]
                .iter()
                .map(|s| w(s)[0])
                .collect()
        );
        assert_eq!(st.occ[&w("x")[0]], 3);
        assert_eq!(st.occ[&w("x*")[0]], 2);
        assert_eq!(st.occ[&w("y")[0]], 2);
        assert_eq!(st.occ[&w("y*")[0]], 1);
        assert_eq!(st.occ[&w("z*")[0]], 1);
        assert_eq!(word.plain().render(), "xxyxxyzxy");
        assert_eq!(
            st.mixed_bases.into_iter().collect::<Vec<_>>(),
            vec![b'x', b'y']
        );
        assert_eq!(st.simple_letters, [w("z*")[0]].into_iter().collect());
        assert!(word.is_mixed());
    }

    #[test]
    fn star_involution_and_antimorphism() {
        let u = w("xy*z");
        let v = w("zx*");
        assert_eq!(u.star().star(), u);
        assert_eq!(u.concat(&v).star(), v.star().concat(&u.star()));
        assert_eq!(w("xy").star().render(), "y*x*");
    }

    #[test]
    fn scattered_subword_greedy_is_least() {
        let word = w("yxzx*x");
        let positions = word.scattered_positions(&w("xx*x"));
        assert_eq!(positions, Some(vec![1, 3, 4]));
        assert_eq!(word.scattered_positions(&w("xx*x*")), None);
        // Stars must match exactly.
        assert_eq!(w("xxx").scattered_positions(&w("xx*")), None);
    }

    #[test]
    fn structure_flags() {
        assert!(w("xyx").is_connected());
        assert!(!w("xyzw").is_connected()); // splits as xy·zw (and more)
        assert!(w("xyx*").is_mixed());
        assert!(!w("xy*x").is_mixed()); // no base occurs in both forms
        assert!(w("xy*z").is_bipartite());
        assert!(w("xyz").is_simple());
        assert!(!w("xyx").is_simple());
        assert!(!w("xy*x").is_disjoint_from(&w("yz")));
        assert!(w("xy").is_disjoint_from(&w("zw")));
        // Connectivity looks only at bases: x…x* intervals count.
        assert!(w("xzx*").is_connected());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match Word::parse("x^0") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match Word::parse("(xy)*") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(Word::parse("").is_err());
        assert!(Word::parse("xA").is_err());
        assert!(Word::parse("x^").is_err());
    }

    #[test]
    fn empty_word_is_a_value() {
        let e = Word::empty();
        assert!(e.is_empty());
        assert_eq!(e.concat(&w("x")), w("x"));
        assert_eq!(e.star(), e);
        assert!(e.is_connected());
    }
}
