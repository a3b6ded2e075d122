//! Terms: bracketed star expressions over the letter alphabet.
//!
//! A term may apply the star to an arbitrary subexpression, e.g.
//! `x(x^2(yx*)*)*zy*`. Flattening pushes every star down to the leaves using
//! `(uv)* = v*u*` and `t** = t`, producing the unique [`Word`] the term
//! denotes. All identities elsewhere in the crate are stated over flat
//! words; this module exists so input may use arbitrary bracketing.

use crate::error::{Error, Result};
use crate::word::{Letter, Word, MAX_WORD_LEN};

/// A star-semigroup term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// A single base letter (`Leaf(b'x')` is the term `x`).
    Leaf(u8),
    /// Concatenation of two or more factors.
    Concat(Vec<Term>),
    /// Star applied to a subterm.
    Star(Box<Term>),
}

impl Term {
    /// Flatten to a word: stars pushed to the leaves, bracketing erased.
    pub fn flatten(&self) -> Word {
        let mut out = Vec::new();
        self.flatten_into(false, &mut out);
        Word::from_letters(out)
    }

    /// Append the flattening of `self` (starred if `starred`) to `out`.
    fn flatten_into(&self, starred: bool, out: &mut Vec<Letter>) {
        match self {
            Term::Leaf(base) => out.push(Letter::raw(*base, starred)),
            Term::Star(inner) => inner.flatten_into(!starred, out),
            Term::Concat(parts) => {
                if starred {
                    for p in parts.iter().rev() {
                        p.flatten_into(true, out);
                    }
                } else {
                    for p in parts {
                        p.flatten_into(false, out);
                    }
                }
            }
        }
    }

    /// Parse the term grammar:
    /// `term := factor+`,
    /// `factor := (letter | '(' term ')') '*'? ('^' int)?`.
    pub fn parse(input: &str) -> Result<Term> {
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let t = parse_seq(bytes, &mut pos, 0)?;
        skip_ws(bytes, &mut pos);
        if pos < bytes.len() {
            return Err(Error::syntax(
                pos,
                format!("unexpected {:?}", bytes[pos] as char),
            ));
        }
        Ok(t)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

/// Parse one or more factors; `depth` guards runaway nesting.
fn parse_seq(bytes: &[u8], pos: &mut usize, depth: usize) -> Result<Term> {
    let mut factors = Vec::new();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() || bytes[*pos] == b')' {
            break;
        }
        factors.push(parse_factor(bytes, pos, depth)?);
    }
    match factors.len() {
        0 => Err(Error::syntax(*pos, "empty term")),
        1 => Ok(factors.pop().unwrap()),
        _ => Ok(Term::Concat(factors)),
    }
}

fn parse_factor(bytes: &[u8], pos: &mut usize, depth: usize) -> Result<Term> {
    if depth > 256 {
        return Err(Error::Capability("term nesting deeper than 256".into()));
    }
    let c = bytes[*pos];
    let mut t = if c == b'(' {
        let open = *pos;
        *pos += 1;
        let inner = parse_seq(bytes, pos, depth + 1)?;
        skip_ws(bytes, pos);
        if *pos >= bytes.len() || bytes[*pos] != b')' {
            return Err(Error::syntax(open, "unclosed '('"));
        }
        *pos += 1;
        inner
    } else if c.is_ascii_lowercase() {
        *pos += 1;
        Term::Leaf(c)
    } else {
        return Err(Error::syntax(
            *pos,
            format!("expected letter or '(', got {:?}", c as char),
        ));
    };
    if *pos < bytes.len() && bytes[*pos] == b'*' {
        *pos += 1;
        t = Term::Star(Box::new(t));
    }
    if *pos < bytes.len() && bytes[*pos] == b'^' {
        let expo_at = *pos + 1;
        let mut val = 0usize;
        let mut any = false;
        *pos += 1;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            any = true;
            val = val.saturating_mul(10).saturating_add((bytes[*pos] - b'0') as usize);
            if val > MAX_WORD_LEN {
                return Err(Error::Capability(format!(
                    "exponent larger than {MAX_WORD_LEN}"
                )));
            }
            *pos += 1;
        }
        if !any {
            return Err(Error::syntax(expo_at, "expected digits after '^'"));
        }
        if val == 0 {
            return Err(Error::syntax(expo_at, "exponent 0 is not allowed"));
        }
        if val > 1 {
            t = Term::Concat(vec![t; val]);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn flatten_pushes_stars_to_leaves() {
        // x(x²(yx*)*)*zy*  ⇒  xy(x*)³zy*
        let t = Term::parse("x(x^2(yx*)*)*zy*").unwrap();
        assert_eq!(t.flatten(), w("xyx*x*x*zy*"));
        assert_eq!(t.flatten().render_compact(), "xyx*^3zy*");
    }

    #[test]
    fn flat_terms_agree_with_word_parser() {
        for s in ["x", "x*", "x*xy*x^2yz*x*y", "abc*ba*"] {
            assert_eq!(Term::parse(s).unwrap().flatten(), w(s));
        }
    }

    #[test]
    fn double_star_cancels() {
        let t = Term::parse("((xy)*)*").unwrap();
        assert_eq!(t.flatten(), w("xy"));
        let t = Term::parse("(x*)*").unwrap();
        assert_eq!(t.flatten(), w("x"));
    }

    #[test]
    fn star_reverses_groups() {
        assert_eq!(Term::parse("(xy)*").unwrap().flatten(), w("y*x*"));
        assert_eq!(Term::parse("(xy*z)*").unwrap().flatten(), w("z*yx*"));
    }

    #[test]
    fn parse_errors() {
        assert!(Term::parse("(xy").is_err());
        assert!(Term::parse("xy)").is_err());
        assert!(Term::parse("").is_err());
        assert!(Term::parse("()").is_err());
        assert!(Term::parse("x^0").is_err());
    }
}
