//! Witnesses that a word takes the zero value under every assignment.
//!
//! In `a0` three scattered shapes force the zero value: a base alternating
//! with its star three times (`f…f*…f`), two star pairs in a row
//! (`f…f*…g…g*`), and a star pair nested inside a repeated letter
//! (`f…g…g*…f`). The shapes are sufficient but not exhaustive: a word such
//! as `abcab*c` avoids all three yet is still always zero, because
//! rewriting it uncovers a shape that the original letter order hides.
//! [`a_zero_witness`] is the quick shape scan; [`a_zero_evidence`] is the
//! complete test, which runs the normalizer when the scan comes up empty
//! and either reaches a standard form (never zero) or returns the
//! derivation to a word where a shape has surfaced.
//!
//! In `b0` a star pair already multiplies to zero on its own, so the
//! always-zero words additionally include every word with a contiguous
//! `xx*` factor and every mixed word whose normal middle consists of
//! doubled letters only: with no letter of single occurrence in the middle,
//! every assignment drives the product to zero.
//!
//! All predicates return *witnesses* — positions or derivations that a
//! caller can re-check — rather than bare booleans.

use serde::Serialize;

use crate::error::Result;
use crate::rules::RuleSystem;
use crate::standard;
use crate::trace::DerivationTrace;
use crate::word::{Letter, Word};

/// The three scattered shapes that force the zero value in `a0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroPattern {
    /// `f f* f` as a scattered subword.
    Triple,
    /// `f f* g g*` as a scattered subword.
    PairPair,
    /// `f g g* f` as a scattered subword.
    Nested,
}

impl ZeroPattern {
    fn instance(self, f: Letter, g: Letter) -> Word {
        let letters = match self {
            ZeroPattern::Triple => vec![f, f.star(), f],
            ZeroPattern::PairPair => vec![f, f.star(), g, g.star()],
            ZeroPattern::Nested => vec![f, g, g.star(), f],
        };
        Word::from_letters(letters)
    }
}

/// A scattered occurrence of a zero-forcing shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroWitnessA {
    pub pattern: ZeroPattern,
    /// The letters substituted for the shape's variables.
    pub letters: Vec<Letter>,
    /// Increasing positions in the word realizing the shape.
    pub positions: Vec<usize>,
}

impl ZeroWitnessA {
    pub fn describe(&self) -> String {
        format!("scattered {} at positions {:?}", self.shape(), self.positions)
    }

    fn shape(&self) -> Word {
        match self.pattern {
            ZeroPattern::Triple => ZeroPattern::Triple.instance(self.letters[0], self.letters[0]),
            p => p.instance(self.letters[0], self.letters[1]),
        }
    }

    /// Re-check the witness against a word.
    pub fn check(&self, word: &Word) -> bool {
        let inst = self.shape();
        if self.positions.len() != inst.len() {
            return false;
        }
        self.positions.windows(2).all(|ab| ab[0] < ab[1])
            && self
                .positions
                .iter()
                .enumerate()
                .all(|(k, &i)| i < word.len() && word[i] == inst[k])
    }
}

/// Find the first zero-forcing shape in deterministic order: by shape, then
/// by the letters' order, taking the greedy leftmost scattered occurrence.
pub fn a_zero_witness(word: &Word) -> Option<ZeroWitnessA> {
    let content: Vec<Letter> = word.content().into_iter().collect();
    for &f in &content {
        let pat = ZeroPattern::Triple.instance(f, f);
        if let Some(positions) = word.scattered_positions(&pat) {
            return Some(ZeroWitnessA {
                pattern: ZeroPattern::Triple,
                letters: vec![f],
                positions,
            });
        }
    }
    for pattern in [ZeroPattern::PairPair, ZeroPattern::Nested] {
        for &f in &content {
            for &g in &content {
                if g.base() == f.base() {
                    // Same-base instances are subsumed by the triple shape.
                    continue;
                }
                let pat = pattern.instance(f, g);
                if let Some(positions) = word.scattered_positions(&pat) {
                    return Some(ZeroWitnessA {
                        pattern,
                        letters: vec![f, g],
                        positions,
                    });
                }
            }
        }
    }
    None
}

/// Complete, checkable evidence that a word is always zero in `a0`: either
/// a shape sits in the word itself, or a derivation rewrites the word into
/// one where a shape has surfaced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZeroCertA {
    /// A shape occurs in the word as given.
    Shape(ZeroWitnessA),
    /// The word hides its zeroness: the trace ends in a word where the
    /// witness finds a shape.
    Uncovered {
        trace: DerivationTrace,
        witness: ZeroWitnessA,
    },
}

impl ZeroCertA {
    pub fn describe(&self) -> String {
        match self {
            ZeroCertA::Shape(wit) => wit.describe(),
            ZeroCertA::Uncovered { trace, witness } => format!(
                "rewriting to {} uncovers {}",
                trace.end,
                witness.describe()
            ),
        }
    }

    /// Re-check the evidence against a word: the shape must sit where
    /// claimed, and an uncovering derivation must replay from the word.
    pub fn check(&self, word: &Word) -> bool {
        match self {
            ZeroCertA::Shape(wit) => wit.check(word),
            ZeroCertA::Uncovered { trace, witness } => {
                trace.start == word.render()
                    && trace
                        .verify(&RuleSystem::a0())
                        .map(|end| witness.check(&end))
                        .unwrap_or(false)
            }
        }
    }
}

/// Decide zeroness in `a0` completely. Shape-free mixed words go through
/// the normalizer: rewriting preserves the value under every assignment and
/// standard forms are never zero, so a word is always zero exactly when the
/// rewriting runs into a surfaced shape instead of a standard form.
pub fn a_zero_evidence(word: &Word) -> Result<Option<ZeroCertA>> {
    if let Some(wit) = a_zero_witness(word) {
        return Ok(Some(ZeroCertA::Shape(wit)));
    }
    if !word.is_mixed() {
        // Valuing every base with unstarred occurrences by the plain
        // generator and the rest by its star keeps each letter, hence the
        // product, away from zero.
        return Ok(None);
    }
    match standard::normalize_a_core(word)? {
        standard::NormACore::Form(..) => Ok(None),
        standard::NormACore::Zero(trace, witness) => {
            Ok(Some(ZeroCertA::Uncovered { trace, witness }))
        }
    }
}

/// Why a word is always zero in `b0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZeroWitnessB {
    /// Already zero in `a0`.
    Scattered(ZeroWitnessA),
    /// A base directly followed by its star: that factor is zero by itself.
    PairFactor { pos: usize, letter: Letter },
    /// Rewriting in the `a0` system uncovers a scattered shape the word
    /// itself hides.
    Uncovered {
        trace: DerivationTrace,
        witness: ZeroWitnessA,
    },
    /// Mixed and nonzero in `a0`, but the middle of the normal form the
    /// trace derives has no letter of single occurrence, so every
    /// assignment still reaches zero.
    SquaresOnlyMiddle { trace: DerivationTrace },
}

impl ZeroWitnessB {
    pub fn describe(&self) -> String {
        match self {
            ZeroWitnessB::Scattered(a) => a.describe(),
            ZeroWitnessB::PairFactor { pos, letter } => {
                format!("factor {}{} at position {pos}", letter, letter.star())
            }
            ZeroWitnessB::Uncovered { trace, witness } => format!(
                "rewriting to {} uncovers {}",
                trace.end,
                witness.describe()
            ),
            ZeroWitnessB::SquaresOnlyMiddle { trace } => {
                format!("normal form {} has no single letter in its middle", trace.end)
            }
        }
    }

    /// Re-check the witness against a word. Derivation-backed witnesses
    /// replay their trace; it uses `a0` rules only, which also hold in `b0`.
    pub fn check(&self, word: &Word) -> bool {
        match self {
            ZeroWitnessB::Scattered(a) => a.check(word),
            ZeroWitnessB::PairFactor { pos, letter } => {
                pos + 1 < word.len() && word[*pos] == *letter && word[pos + 1] == letter.star()
            }
            ZeroWitnessB::Uncovered { trace, witness } => {
                trace.start == word.render()
                    && trace
                        .verify(&RuleSystem::a0())
                        .map(|end| witness.check(&end))
                        .unwrap_or(false)
            }
            ZeroWitnessB::SquaresOnlyMiddle { trace } => {
                trace.start == word.render()
                    && trace
                        .verify(&RuleSystem::a0())
                        .ok()
                        .and_then(|end| standard::parse_a_standard(&end))
                        .is_some_and(|form| !form.middle_has_simple())
            }
        }
    }
}

/// Find a witness that `word` is always zero in `b0`. Needs to normalize in
/// the hard cases, hence the `Result`.
pub fn b_zero_witness(word: &Word) -> Result<Option<ZeroWitnessB>> {
    if let Some(a) = a_zero_witness(word) {
        return Ok(Some(ZeroWitnessB::Scattered(a)));
    }
    for pos in 0..word.len().saturating_sub(1) {
        if word[pos + 1] == word[pos].star() {
            return Ok(Some(ZeroWitnessB::PairFactor {
                pos,
                letter: word[pos],
            }));
        }
    }
    if !word.is_mixed() {
        return Ok(None);
    }
    match standard::normalize_a_core(word)? {
        standard::NormACore::Zero(trace, witness) => {
            Ok(Some(ZeroWitnessB::Uncovered { trace, witness }))
        }
        standard::NormACore::Form(form, trace) => {
            if form.middle_has_simple() {
                Ok(None)
            } else {
                Ok(Some(ZeroWitnessB::SquaresOnlyMiddle { trace }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::w;

    #[test]
    fn triple_shape_is_found_greedily() {
        let word = w("yxzx*x");
        let wit = a_zero_witness(&word).unwrap();
        assert_eq!(wit.pattern, ZeroPattern::Triple);
        assert_eq!(wit.positions, vec![1, 3, 4]);
        assert!(wit.check(&word));
    }

    #[test]
    fn pair_pair_and_nested_shapes() {
        let wit = a_zero_witness(&w("agg*a")).unwrap();
        assert_eq!(wit.pattern, ZeroPattern::Nested);
        let wit = a_zero_witness(&w("bb*cc*")).unwrap();
        assert_eq!(wit.pattern, ZeroPattern::PairPair);
        // Interleaving does not matter, only scattered order.
        assert!(a_zero_witness(&w("bzb*ycyc*")).is_some());
    }

    #[test]
    fn witness_freedom_of_small_mixed_words() {
        for text in ["xx*", "x*x", "xyx*y*", "yxx*z", "xyx*"] {
            assert!(a_zero_witness(&w(text)).is_none(), "{text}");
        }
    }

    #[test]
    fn evidence_agrees_with_the_model_on_a_sample() {
        let model = catalog::a0();
        for text in [
            "xx*x", "xx*yy*", "xyy*x", "xx*", "x*x", "xyx*y*", "abc", "aa",
            "xax*a", "xaax*", "ax*xa", "x*xx*", "yxx*y", "xyxy*", "abcab*c",
            "ybxy*bx*", "abacb*", "aabbcc*",
        ] {
            let word = w(text);
            let evidence = a_zero_evidence(&word).unwrap();
            assert_eq!(
                evidence.is_some(),
                model.satisfies_zero(&word),
                "disagreement on {text}"
            );
            if let Some(cert) = evidence {
                assert!(cert.check(&word), "stale evidence on {text}");
            }
        }
    }

    #[test]
    fn shapes_can_hide_until_rewriting_uncovers_them() {
        // Always zero in `a0`, yet no shape matches the word as written:
        // only the derivation makes the zeroness visible.
        let word = w("abcab*c");
        assert!(a_zero_witness(&word).is_none());
        let cert = a_zero_evidence(&word).unwrap().unwrap();
        match &cert {
            ZeroCertA::Uncovered { trace, .. } => assert!(!trace.is_empty()),
            other => panic!("expected an uncovering derivation, got {other:?}"),
        }
        assert!(cert.check(&word));
        // The same evidence does not check against a different word.
        assert!(!cert.check(&w("abcab*")));
    }

    #[test]
    fn pair_factor_is_a_b_zero_witness() {
        let wit = b_zero_witness(&w("yxx*z")).unwrap().unwrap();
        assert!(matches!(wit, ZeroWitnessB::PairFactor { pos: 1, .. }), "{wit:?}");
        // x*x counts too.
        let wit = b_zero_witness(&w("x*x")).unwrap().unwrap();
        assert!(matches!(wit, ZeroWitnessB::PairFactor { pos: 0, .. }));
    }

    #[test]
    fn squares_only_middle_is_b_zero() {
        let wit = b_zero_witness(&w("xyyx*")).unwrap().unwrap();
        match wit {
            ZeroWitnessB::SquaresOnlyMiddle { trace } => {
                assert_eq!(trace.end, "xyyx*");
            }
            other => panic!("expected squares-only middle, got {other:?}"),
        }
        // A middle with a single letter is not zero in b0.
        assert!(b_zero_witness(&w("xyx*")).unwrap().is_none());
    }

    #[test]
    fn b_witness_agrees_with_the_model_on_a_sample() {
        let model = catalog::b0();
        for text in [
            "xx*", "x*x", "xyx*", "xyyx*", "xyx*y*", "abc", "xabbax*",
            "axbbx*", "xx*x", "ayya", "xyzx*",
        ] {
            let word = w(text);
            assert_eq!(
                b_zero_witness(&word).unwrap().is_some(),
                model.satisfies_zero(&word),
                "disagreement on {text}"
            );
        }
    }
}
