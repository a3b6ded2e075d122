//! The identity systems of `a0` and `b0` as applicable rewrite rules.
//!
//! A rule is a pair of patterns over word-valued variables (`xTx* ≈ y*xTx*`
//! style). Variables always bind **nonempty** words; the starred atom `x*`
//! instantiates to the star of whatever `x` is bound to. Rules whose right
//! side is the formal zero have no pattern there: applying one collapses
//! the whole word to the matched factor — sound because a word with an
//! always-zero factor is itself always zero, so any two such words are
//! equal in the model.
//!
//! Every rule can be applied in four directions: as written, reversed, and
//! the star-mirror of both (star both sides of a valid identity and it
//! stays valid; on patterns that is "reverse the atoms and flip every
//! star").
//!
//! Rules marked `-short` are the companions of the rules with a context
//! variable `T` for the case where that context is empty; they are separate
//! rules precisely because variables never bind the empty word.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// One variable occurrence in a rule pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternAtom {
    pub var: char,
    pub starred: bool,
}

/// Parse a compact pattern literal like `"xTx*y"`.
fn atoms(s: &str) -> Vec<PatternAtom> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        assert!(c.is_ascii_alphabetic(), "bad pattern literal {s:?}");
        i += 1;
        let starred = i < bytes.len() && bytes[i] == b'*';
        if starred {
            i += 1;
        }
        out.push(PatternAtom { var: c, starred });
    }
    out
}

fn atoms_to_string(a: &[PatternAtom]) -> String {
    let mut s = String::new();
    for p in a {
        s.push(p.var);
        if p.starred {
            s.push('*');
        }
    }
    s
}

/// An identity usable as a rewrite rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub tag: &'static str,
    pub lhs: Vec<PatternAtom>,
    /// `None` means the left side equals the formal zero.
    pub rhs: Option<Vec<PatternAtom>>,
}

impl Rule {
    fn eq(tag: &'static str, lhs: &str, rhs: &str) -> Rule {
        Rule {
            tag,
            lhs: atoms(lhs),
            rhs: Some(atoms(rhs)),
        }
    }

    fn zero(tag: &'static str, lhs: &str) -> Rule {
        Rule {
            tag,
            lhs: atoms(lhs),
            rhs: None,
        }
    }

    pub fn is_zero_rule(&self) -> bool {
        self.rhs.is_none()
    }

    /// Human-readable statement, e.g. `xyx* ≈ xy*x*`.
    pub fn statement(&self) -> String {
        match &self.rhs {
            Some(r) => format!("{} ≈ {}", atoms_to_string(&self.lhs), atoms_to_string(r)),
            None => format!("{} ≈ 0", atoms_to_string(&self.lhs)),
        }
    }

    /// Variables of the left side in a given direction that do not occur on
    /// the from-side, so a substitution must supply them explicitly.
    pub fn unbound_to_vars(&self, dir: Dir) -> Vec<char> {
        let (from, to) = match self.sides(dir) {
            Ok(s) => s,
            Err(_) => return Vec::new(),
        };
        let to = match to {
            Some(t) => t,
            None => return Vec::new(),
        };
        let mut out: Vec<char> = to
            .iter()
            .map(|a| a.var)
            .filter(|v| !from.iter().any(|a| a.var == *v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Check the rule as an identity of a concrete model, reading each
    /// variable as a one-letter word. That is equivalent to quantifying
    /// over arbitrary word bindings, since a bound word's value is just
    /// another element of the model.
    pub fn holds_in(&self, model: &crate::model::InvolutionSemigroup) -> bool {
        let to_word = |p: &[PatternAtom]| -> Word {
            p.iter()
                .map(|a| {
                    let base = a.var.to_ascii_lowercase() as u8;
                    Letter::new(base, a.starred).unwrap()
                })
                .collect()
        };
        match &self.rhs {
            Some(rhs) => model.satisfies(&to_word(&self.lhs), &to_word(rhs)),
            None => model.satisfies_zero(&to_word(&self.lhs)),
        }
    }

    /// The (from, to) patterns for a direction. Zero rules are only
    /// applicable forward (plain or starred): their collapse cannot be
    /// undone by a rewrite step.
    pub fn sides(&self, dir: Dir) -> Result<(Vec<PatternAtom>, Option<Vec<PatternAtom>>)> {
        let plain = |a: &Vec<PatternAtom>| a.clone();
        match (dir, &self.rhs) {
            (Dir::Fwd, Some(r)) => Ok((plain(&self.lhs), Some(plain(r)))),
            (Dir::Bwd, Some(r)) => Ok((plain(r), Some(plain(&self.lhs)))),
            (Dir::FwdStar, Some(r)) => Ok((mirror(&self.lhs), Some(mirror(r)))),
            (Dir::BwdStar, Some(r)) => Ok((mirror(r), Some(mirror(&self.lhs)))),
            (Dir::Fwd, None) => Ok((plain(&self.lhs), None)),
            (Dir::FwdStar, None) => Ok((mirror(&self.lhs), None)),
            (Dir::Bwd | Dir::BwdStar, None) => Err(Error::Rule(format!(
                "rule {} rewrites to zero and cannot run backward",
                self.tag
            ))),
        }
    }
}

/// Star-mirror of a pattern: reverse the atoms, toggle every star. If `p`
/// matches `w` under `σ` then the mirror matches `w*` under the same `σ`.
pub fn mirror(a: &[PatternAtom]) -> Vec<PatternAtom> {
    a.iter()
        .rev()
        .map(|p| PatternAtom {
            var: p.var,
            starred: !p.starred,
        })
        .collect()
}

/// Application direction of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Fwd,
    Bwd,
    FwdStar,
    BwdStar,
}

impl Dir {
    pub fn tag(self) -> &'static str {
        match self {
            Dir::Fwd => "fwd",
            Dir::Bwd => "bwd",
            Dir::FwdStar => "fwd*",
            Dir::BwdStar => "bwd*",
        }
    }

    pub fn from_tag(s: &str) -> Result<Dir> {
        match s {
            "fwd" => Ok(Dir::Fwd),
            "bwd" => Ok(Dir::Bwd),
            "fwd*" => Ok(Dir::FwdStar),
            "bwd*" => Ok(Dir::BwdStar),
            other => Err(Error::Rule(format!("unknown direction {other:?}"))),
        }
    }
}

/// A binding of rule variables to nonempty words.
pub type Subst = BTreeMap<char, Word>;

/// Instantiate a pattern under a substitution.
pub fn instantiate(pattern: &[PatternAtom], subst: &Subst) -> Result<Word> {
    let mut out = Vec::new();
    for atom in pattern {
        let bound = subst
            .get(&atom.var)
            .ok_or_else(|| Error::Rule(format!("variable {:?} is unbound", atom.var)))?;
        if bound.is_empty() {
            return Err(Error::Rule(format!(
                "variable {:?} is bound to the empty word",
                atom.var
            )));
        }
        let w = if atom.starred { bound.star() } else { bound.clone() };
        out.extend_from_slice(w.letters());
    }
    Ok(Word::from_letters(out))
}

/// Apply `rule` at byte-free letter position `pos` under `subst`.
///
/// For ordinary rules the matched factor is replaced in place. For zero
/// rules the result is the matched factor alone: both the input and the
/// factor are always-zero words, so the step is an equality in the model.
pub fn apply(word: &Word, rule: &Rule, dir: Dir, pos: usize, subst: &Subst) -> Result<Word> {
    let (from, to) = rule.sides(dir)?;
    let inst = instantiate(&from, subst)?;
    let end = pos + inst.len();
    if end > word.len() || word.slice(pos..end) != inst {
        return Err(Error::Rule(format!(
            "rule {} ({}) does not match {} at position {pos}",
            rule.tag,
            dir.tag(),
            word
        )));
    }
    match to {
        None => Ok(inst),
        Some(to) => {
            let replacement = instantiate(&to, subst)?;
            let mut out = word.slice(0..pos);
            out = out.concat(&replacement);
            out = out.concat(&word.slice(end..word.len()));
            Ok(out)
        }
    }
}

/// Find the leftmost match of `pattern` in `word` at or after `from`,
/// binding fresh variables shortest-first. Pre-seeded bindings in `seed`
/// are respected.
pub fn find_match(word: &Word, pattern: &[PatternAtom], from: usize, seed: &Subst) -> Option<(usize, Subst)> {
    for pos in from..word.len() {
        let mut subst = seed.clone();
        if match_at(word, pattern, pos, &mut subst) {
            return Some((pos, subst));
        }
    }
    None
}

fn match_at(word: &Word, pattern: &[PatternAtom], pos: usize, subst: &mut Subst) -> bool {
    let Some(atom) = pattern.first() else {
        return true; // all atoms consumed; factors need not reach the end
    };
    if let Some(bound) = subst.get(&atom.var) {
        let inst = if atom.starred { bound.star() } else { bound.clone() };
        let end = pos + inst.len();
        if end <= word.len() && word.slice(pos..end) == inst {
            return match_at(word, &pattern[1..], end, subst);
        }
        return false;
    }
    // Shortest-first choice for a fresh variable. Leave room for the
    // remaining atoms (each needs at least one letter).
    let remaining = pattern.len() - 1;
    if word.len() < pos + 1 + remaining {
        return false;
    }
    let max_len = word.len() - pos - remaining;
    for len in 1..=max_len {
        let piece = word.slice(pos..pos + len);
        let binding = if atom.starred { piece.star() } else { piece };
        subst.insert(atom.var, binding);
        if match_at(word, &pattern[1..], pos + len, subst) {
            return true;
        }
        subst.remove(&atom.var);
    }
    false
}

/// A named set of rules.
#[derive(Debug, Clone)]
pub struct RuleSystem {
    pub name: &'static str,
    pub rules: Vec<Rule>,
}

impl RuleSystem {
    pub fn get(&self, tag: &str) -> Result<&Rule> {
        self.rules
            .iter()
            .find(|r| r.tag == tag)
            .ok_or_else(|| Error::Rule(format!("system {} has no rule {tag:?}", self.name)))
    }

    /// The identity system of `a0`: its basis plus the derived consequences
    /// the normalizer uses.
    pub fn a0() -> RuleSystem {
        let mut rules = basis_a0();
        rules.extend(derived_a0());
        RuleSystem { name: "a0", rules }
    }

    /// The identity system of `b0`: everything valid in `a0`, the square
    /// commutation law, and the pair-collapse consequences.
    pub fn b0() -> RuleSystem {
        let mut rules = basis_b0();
        rules.extend(derived_b0());
        RuleSystem { name: "b0", rules }
    }

    pub fn for_model(name: &str) -> Result<RuleSystem> {
        match name {
            "a0" => Ok(RuleSystem::a0()),
            "b0" => Ok(RuleSystem::b0()),
            other => Err(Error::Rule(format!(
                "no rule system for {other:?}; available: a0, b0"
            ))),
        }
    }
}

/// The identity basis of `a0`.
pub fn basis_a0() -> Vec<Rule> {
    vec![
        Rule::zero("zero-triple", "xx*x"),
        Rule::eq("mid-flip", "xyx*", "xy*x*"),
        Rule::eq("tail-rotate", "xTx*y", "y*xTx*"),
        Rule::eq("tail-rotate-short", "xx*y", "y*xx*"),
        Rule::eq("pivot-dup-left", "xxTx*", "xTx*"),
        Rule::eq("pivot-dup-left-short", "xxx*", "xx*"),
        Rule::eq("pivot-dup-right", "xTx*", "xTx*x*"),
        Rule::eq("pivot-dup-right-short", "xx*", "xx*x*"),
        Rule::eq("square-cube", "xx", "xxx"),
        Rule::eq("overlap-shift", "xyx", "yxy"),
        Rule::eq("overlap-extend", "xyx", "xyxy"),
    ]
}

/// Consequences of the `a0` basis used by the normalizer.
pub fn derived_a0() -> Vec<Rule> {
    vec![
        Rule::eq("inner-dup-left", "xyx", "xxyx"),
        Rule::eq("inner-dup-mid", "xyx", "xyyx"),
        Rule::eq("inner-dup-right", "xyx", "xyxx"),
        Rule::eq("bracket-swap", "xyzx", "xzyx"),
        Rule::eq("prefix-swap", "yzxTx*", "zyxTx*"),
        Rule::eq("prefix-swap-short", "yzxx*", "zyxx*"),
        Rule::eq("suffix-swap", "xTx*yz", "xTx*zy"),
        Rule::eq("suffix-swap-short", "xx*yz", "xx*zy"),
        Rule::eq("prefix-desquare", "yyxTx*", "yxTx*"),
        Rule::eq("prefix-desquare-short", "yyxx*", "yxx*"),
        Rule::eq("suffix-desquare", "xTx*yy", "xTx*y"),
        Rule::eq("suffix-desquare-short", "xx*yy", "xx*y"),
        Rule::eq("pivot-trade", "xyTy*", "yxTx*"),
        Rule::eq("pivot-trade-short", "xyy*", "yxx*"),
        Rule::eq("zero-pad", "yxx*y", "yy*zz*"),
        Rule::eq("zero-join", "yy*zz*", "x*xx*"),
        Rule::eq("zero-shift", "x*xx*", "xx*x"),
    ]
}

/// The identity basis of `b0`: the `a0` basis plus square commutation.
pub fn basis_b0() -> Vec<Rule> {
    let mut rules = basis_a0();
    rules.push(Rule::eq("square-commute", "xxyy", "yyxx"));
    rules
}

/// Consequences available in `b0` beyond the shared ones.
pub fn derived_b0() -> Vec<Rule> {
    let mut rules = derived_a0();
    rules.push(Rule::eq("pair-extend", "xx*", "xx*x"));
    rules.push(Rule::eq("pair-reverse", "xx*", "x*x"));
    rules.push(Rule::zero("zero-pair", "xx*"));
    rules
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag, self.statement())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::w;

    fn subst(pairs: &[(char, &str)]) -> Subst {
        pairs.iter().map(|&(v, s)| (v, w(s))).collect()
    }

    #[test]
    fn a0_rules_hold_in_a0() {
        let model = catalog::a0();
        for rule in RuleSystem::a0().rules {
            assert!(rule.holds_in(&model), "a0 fails {rule}");
        }
    }

    #[test]
    fn b0_rules_hold_in_b0() {
        let model = catalog::b0();
        for rule in RuleSystem::b0().rules {
            assert!(rule.holds_in(&model), "b0 fails {rule}");
        }
    }

    #[test]
    fn b0_extras_fail_in_a0() {
        let model = catalog::a0();
        for tag in ["square-commute", "pair-extend", "pair-reverse", "zero-pair"] {
            let rule = RuleSystem::b0().get(tag).unwrap().clone();
            assert!(!rule.holds_in(&model), "{tag} should not hold in a0");
        }
    }

    #[test]
    fn apply_replaces_the_matched_factor() {
        let rule = Rule::eq("mid-flip", "xyx*", "xy*x*");
        // Bind y to the whole middle: one application flips it.
        let word = w("axbcx*d");
        let s = subst(&[('x', "x"), ('y', "bc")]);
        let out = apply(&word, &rule, Dir::Fwd, 1, &s).unwrap();
        assert_eq!(out, w("axc*b*x*d"));
        // And backward undoes it.
        let back = apply(&out, &rule, Dir::Bwd, 1, &subst(&[('x', "x"), ('y', "bc")])).unwrap();
        assert_eq!(back, word);
    }

    #[test]
    fn starred_directions_mirror_the_pattern() {
        let rule = Rule::eq("tail-rotate-short", "xx*y", "y*xx*");
        // The star-mirror of xx*y is y*xx*, and vice versa, so fwd* rewrites
        // an instance of y*xx* to the matching instance of xx*y.
        assert_eq!(atoms_to_string(&mirror(&rule.lhs)), "y*xx*");
        let s = subst(&[('x', "a"), ('y', "b")]);
        let out = apply(&w("b*aa*"), &rule, Dir::FwdStar, 0, &s).unwrap();
        assert_eq!(out, w("aa*b"));
        // bwd* sends it back.
        let back = apply(&out, &rule, Dir::BwdStar, 0, &s).unwrap();
        assert_eq!(back, w("b*aa*"));
    }

    #[test]
    fn zero_rule_collapses_to_the_match() {
        let rule = Rule::zero("zero-triple", "xx*x");
        let word = w("baa*ac");
        let s = subst(&[('x', "a")]);
        let out = apply(&word, &rule, Dir::Fwd, 1, &s).unwrap();
        assert_eq!(out, w("aa*a"));
        assert!(apply(&word, &rule, Dir::Bwd, 1, &s).is_err());
    }

    #[test]
    fn apply_rejects_mismatch_and_empty_bindings() {
        let rule = Rule::eq("square-cube", "xx", "xxx");
        assert!(apply(&w("ab"), &rule, Dir::Fwd, 0, &subst(&[('x', "a")])).is_err());
        let mut s = Subst::new();
        s.insert('x', Word::empty());
        assert!(apply(&w("ab"), &rule, Dir::Fwd, 0, &s).is_err());
    }

    #[test]
    fn find_match_is_leftmost_shortest() {
        let rule = Rule::eq("overlap-shift", "xyx", "yxy");
        let word = w("abab");
        let (pos, s) = find_match(&word, &rule.lhs, 0, &Subst::new()).unwrap();
        assert_eq!(pos, 0);
        assert_eq!(s[&'x'], w("a"));
        assert_eq!(s[&'y'], w("b"));
        // Stars must line up for starred atoms.
        let pat = atoms("xx*");
        assert!(find_match(&w("aa"), &pat, 0, &Subst::new()).is_none());
        let (pos, s) = find_match(&w("caa*"), &pat, 0, &Subst::new()).unwrap();
        assert_eq!((pos, s[&'x'].clone()), (1, w("a")));
    }

    #[test]
    fn unbound_to_vars_reports_fresh_rhs_variables() {
        let sys = RuleSystem::a0();
        let rule = sys.get("zero-pad").unwrap();
        assert_eq!(rule.unbound_to_vars(Dir::Fwd), vec!['z']);
        assert_eq!(rule.unbound_to_vars(Dir::Bwd), vec!['x']);
        let flip = sys.get("mid-flip").unwrap();
        assert!(flip.unbound_to_vars(Dir::Fwd).is_empty());
    }

    #[test]
    fn systems_have_distinct_tags() {
        for sys in [RuleSystem::a0(), RuleSystem::b0()] {
            let mut tags: Vec<_> = sys.rules.iter().map(|r| r.tag).collect();
            let n = tags.len();
            tags.sort_unstable();
            tags.dedup();
            assert_eq!(tags.len(), n, "duplicate tags in {}", sys.name);
        }
    }
}
