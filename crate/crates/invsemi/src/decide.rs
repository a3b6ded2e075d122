//! Deciding word identities `u ≈ v` in the `a0` and `b0` systems.
//!
//! The decision runs on structure, never on the oracle: both words are
//! sorted into bipartite / always-zero / mixed-nonzero, and each case has
//! its own argument —
//!
//!  * two bipartite words are compared through their plain projections
//!    (every letter, starred or not, becomes an independent plain variable),
//!    checked exhaustively against the model's multiplication table;
//!  * a mixed word can never equal a bipartite one: the three-element
//!    quotient that sends both generators' images to the two idempotents of
//!    a semilattice separates them, and the certificate carries the
//!    separating assignment;
//!  * two always-zero words are equal, with a zero witness for each side;
//!  * two mixed non-zero words are equal exactly when their canonical
//!    standard forms coincide.
//!
//! Every verdict is then cross-checked against exhaustive evaluation in the
//! model; a disagreement would mean a broken invariant and panics. All
//! certificates are self-contained and re-checkable via
//! [`Certificate::check`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::model::{Assignment, InvolutionSemigroup};
use crate::standard;
use crate::trace::DerivationTrace;
use crate::word::{Letter, Word};
use crate::zero::{self, ZeroCertA, ZeroWitnessB};

/// Variable cap used by [`decide`]; enough for every bundled sweep while
/// keeping the exhaustive cross-check at ≤ 4⁸ evaluations.
pub const DEFAULT_VAR_CAP: usize = 8;

/// Which identity system a question is asked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    A0,
    B0,
}

impl System {
    /// The four-element model whose identities the system axiomatizes.
    pub fn model(self) -> InvolutionSemigroup {
        match self {
            System::A0 => catalog::a0(),
            System::B0 => catalog::b0(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            System::A0 => "a0",
            System::B0 => "b0",
        }
    }
}

impl std::str::FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a0" => Ok(System::A0),
            "b0" => Ok(System::B0),
            other => Err(Error::Domain(format!(
                "unknown system {other:?}; expected a0 or b0"
            ))),
        }
    }
}

/// Which of the two input words a certificate detail refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A zero witness in whichever system the question was asked.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "system", content = "witness", rename_all = "lowercase")]
pub enum ZeroProof {
    A0(ZeroCertA),
    B0(ZeroWitnessB),
}

impl ZeroProof {
    pub fn describe(&self) -> String {
        match self {
            ZeroProof::A0(c) => c.describe(),
            ZeroProof::B0(w) => w.describe(),
        }
    }

    /// Re-check the witness against the word it was issued for.
    pub fn check(&self, word: &Word) -> bool {
        match self {
            ZeroProof::A0(c) => c.check(word),
            ZeroProof::B0(w) => w.check(word),
        }
    }
}

/// A falsifying assignment of model elements to bases, together with the
/// two values it produces. Starred letters evaluate through the model's
/// involution, so the map's keys are bases only.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub assignment: BTreeMap<char, u8>,
    pub lhs_value: u8,
    pub rhs_value: u8,
}

impl Counterexample {
    fn from_assignment(model: &InvolutionSemigroup, u: &Word, v: &Word, asgn: &Assignment) -> Self {
        Counterexample {
            assignment: asgn.entries().collect(),
            lhs_value: model.eval(u, asgn),
            rhs_value: model.eval(v, asgn),
        }
    }

    /// Does this assignment still separate the two words in `model`?
    pub fn separates(&self, model: &InvolutionSemigroup, u: &Word, v: &Word) -> bool {
        let asgn = Assignment::from_pairs(self.assignment.iter().map(|(c, e)| (*c as u8, *e)));
        let covered = |w: &Word| w.bases().iter().all(|b| self.assignment.contains_key(&(*b as char)));
        covered(u)
            && covered(v)
            && model.eval(u, &asgn) == self.lhs_value
            && model.eval(v, &asgn) == self.rhs_value
            && self.lhs_value != self.rhs_value
    }
}

/// A falsifying assignment for the plain projections of two bipartite
/// words: every letter as written (star included) is its own variable, and
/// evaluation uses the multiplication table only.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionCounterexample {
    pub assignment: BTreeMap<String, u8>,
    pub lhs_value: u8,
    pub rhs_value: u8,
}

impl ProjectionCounterexample {
    /// Does this assignment still separate the two projections in `model`?
    pub fn separates(&self, model: &InvolutionSemigroup, u: &Word, v: &Word) -> bool {
        let value = |w: &Word| -> Option<u8> {
            let mut acc: Option<u8> = None;
            for &l in w.letters() {
                let x = *self.assignment.get(&l.to_string())?;
                acc = Some(match acc {
                    None => x,
                    Some(a) => model.mul(a, x),
                });
            }
            acc
        };
        value(u) == Some(self.lhs_value)
            && value(v) == Some(self.rhs_value)
            && self.lhs_value != self.rhs_value
    }
}

/// How one side's canonical representative was derived: the trace rewrites
/// the input to `normal`, and `canonical` is `normal` or its flip inside
/// the pivot pair, whichever renders smaller.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalDerivation {
    pub trace: DerivationTrace,
    pub normal: String,
    pub canonical: String,
    pub flipped: bool,
}

impl CanonicalDerivation {
    /// Replay the derivation from `word` and re-derive the canonical
    /// representative recorded here.
    pub fn check(&self, system: System, word: &Word) -> bool {
        if self.trace.start != word.render() {
            return false;
        }
        let rules = match system {
            System::A0 => crate::rules::RuleSystem::a0(),
            System::B0 => crate::rules::RuleSystem::b0(),
        };
        let Ok(end) = self.trace.verify(&rules) else {
            return false;
        };
        if end.render() != self.normal {
            return false;
        }
        match canonical_of_normal(system, &end) {
            Some((canonical, flipped)) => {
                canonical.render() == self.canonical && flipped == self.flipped
            }
            None => false,
        }
    }
}

/// Why [`decide`] answered the way it did. Each variant carries enough to
/// re-check the verdict without rerunning the decision.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Neither word has a mixed base; the plain projections settle it
    /// against the multiplication table.
    BothBipartite {
        holds: bool,
        counterexample: Option<ProjectionCounterexample>,
    },
    /// One word mixed, one bipartite: the three-element semilattice
    /// quotient separates them, so the identity fails.
    MixedBipartiteMismatch {
        mixed_side: Side,
        quotient: Counterexample,
    },
    /// Both words are always zero, hence equal.
    BothZero { left: ZeroProof, right: ZeroProof },
    /// Exactly one word is always zero, so the identity fails.
    ZeroNonzeroMismatch {
        zero_side: Side,
        zero: ZeroProof,
        counterexample: Counterexample,
    },
    /// Both mixed and non-zero with the same canonical standard form.
    CanonicalMatch {
        canonical: String,
        left: CanonicalDerivation,
        right: CanonicalDerivation,
    },
    /// Both mixed and non-zero with different canonical standard forms.
    CanonicalMismatch {
        left: CanonicalDerivation,
        right: CanonicalDerivation,
        counterexample: Counterexample,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::BothBipartite { .. } => "both-bipartite",
            Certificate::MixedBipartiteMismatch { .. } => "mixed-bipartite-mismatch",
            Certificate::BothZero { .. } => "both-zero",
            Certificate::ZeroNonzeroMismatch { .. } => "zero-nonzero-mismatch",
            Certificate::CanonicalMatch { .. } => "canonical-match",
            Certificate::CanonicalMismatch { .. } => "canonical-mismatch",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Certificate::BothBipartite { holds: true, .. } => {
                "both sides bipartite; plain projections agree everywhere".into()
            }
            Certificate::BothBipartite { counterexample: Some(cx), .. } => format!(
                "both sides bipartite; projections differ ({} vs {}) under {:?}",
                cx.lhs_value, cx.rhs_value, cx.assignment
            ),
            Certificate::BothBipartite { .. } => "both sides bipartite".into(),
            Certificate::MixedBipartiteMismatch { mixed_side, quotient } => format!(
                "{:?} side is mixed, the other is not; semilattice quotient values {} vs {}",
                mixed_side, quotient.lhs_value, quotient.rhs_value
            ),
            Certificate::BothZero { left, right } => {
                format!("both always zero: {}; {}", left.describe(), right.describe())
            }
            Certificate::ZeroNonzeroMismatch { zero_side, zero, .. } => {
                format!("only the {zero_side:?} side is always zero: {}", zero.describe())
            }
            Certificate::CanonicalMatch { canonical, .. } => {
                format!("canonical forms coincide at {canonical}")
            }
            Certificate::CanonicalMismatch { left, right, .. } => format!(
                "canonical forms differ: {} vs {}",
                left.canonical, right.canonical
            ),
        }
    }

    /// Re-check the certificate against the words and system it was issued
    /// for, replaying traces and witnesses rather than re-deciding.
    pub fn check(&self, system: System, u: &Word, v: &Word) -> bool {
        let model = system.model();
        match self {
            Certificate::BothBipartite { holds, counterexample } => {
                if u.is_mixed() || v.is_mixed() {
                    return false;
                }
                match (holds, counterexample) {
                    (false, Some(cx)) => cx.separates(&model, u, v),
                    // A positive projection sweep can only be re-checked by
                    // re-running it; it is bounded by the word contents.
                    (true, None) => matches!(
                        projection_counterexample(&model, u, v, usize::MAX),
                        Ok(None)
                    ),
                    _ => false,
                }
            }
            Certificate::MixedBipartiteMismatch { mixed_side, quotient } => {
                let (m, b) = match mixed_side {
                    Side::Left => (u, v),
                    Side::Right => (v, u),
                };
                m.is_mixed() && !b.is_mixed() && quotient.separates(&catalog::sl3(), u, v)
            }
            Certificate::BothZero { left, right } => left.check(u) && right.check(v),
            Certificate::ZeroNonzeroMismatch { zero_side, zero, counterexample } => {
                let zero_word = match zero_side {
                    Side::Left => u,
                    Side::Right => v,
                };
                zero.check(zero_word) && counterexample.separates(&model, u, v)
            }
            Certificate::CanonicalMatch { canonical, left, right } => {
                left.canonical == *canonical
                    && right.canonical == *canonical
                    && left.check(system, u)
                    && right.check(system, v)
            }
            Certificate::CanonicalMismatch { left, right, counterexample } => {
                left.canonical != right.canonical
                    && left.check(system, u)
                    && right.check(system, v)
                    && counterexample.separates(&model, u, v)
            }
        }
    }
}

/// The outcome of [`decide`]: the verdict plus a re-checkable reason.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Certificate,
}

/// Decide whether `u ≈ v` holds in the given system, with the default
/// variable cap.
pub fn decide(system: System, u: &Word, v: &Word) -> Result<Verdict> {
    decide_with_cap(system, u, v, DEFAULT_VAR_CAP)
}

/// Decide whether `u ≈ v` holds in the given system. `var_cap` bounds the
/// number of variables the exhaustive cross-check may sweep.
pub fn decide_with_cap(system: System, u: &Word, v: &Word, var_cap: usize) -> Result<Verdict> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::Domain(
            "an identity needs a nonempty word on each side".into(),
        ));
    }
    let model = system.model();
    // The oracle run doubles as the source for counterexample certificates.
    let oracle = model.counterexample_with_cap(u, v, var_cap)?;

    let verdict = match (u.is_mixed(), v.is_mixed()) {
        (false, false) => {
            let cx = projection_counterexample(&model, u, v, var_cap)?;
            Verdict {
                holds: cx.is_none(),
                certificate: Certificate::BothBipartite {
                    holds: cx.is_none(),
                    counterexample: cx,
                },
            }
        }
        (u_mixed, _) => {
            let mixed_side = if u_mixed { Side::Left } else { Side::Right };
            if u_mixed != v.is_mixed() {
                let quotient = quotient_witness(u, v, mixed_side);
                assert_ne!(
                    quotient.lhs_value, quotient.rhs_value,
                    "semilattice quotient failed to separate {u} from {v}"
                );
                Verdict {
                    holds: false,
                    certificate: Certificate::MixedBipartiteMismatch { mixed_side, quotient },
                }
            } else {
                decide_both_mixed(system, &model, u, v, &oracle)?
            }
        }
    };

    // Hard cross-check: the structural decision and the exhaustive model
    // oracle must agree; a mismatch is a broken invariant, not an error a
    // caller could handle.
    assert_eq!(
        verdict.holds,
        oracle.is_none(),
        "decision for {u} ≈ {v} in {} disagrees with the exhaustive model oracle",
        system.name()
    );
    Ok(verdict)
}

fn decide_both_mixed(
    system: System,
    model: &InvolutionSemigroup,
    u: &Word,
    v: &Word,
    oracle: &Option<Assignment>,
) -> Result<Verdict> {
    let zu = zero_proof(system, u)?;
    let zv = zero_proof(system, v)?;
    let counterexample = |asgn: &Option<Assignment>| {
        let asgn = asgn
            .as_ref()
            .expect("a failing identity must have a model counterexample");
        Counterexample::from_assignment(model, u, v, asgn)
    };
    Ok(match (zu, zv) {
        (Some(left), Some(right)) => Verdict {
            holds: true,
            certificate: Certificate::BothZero { left, right },
        },
        (Some(zero), None) => Verdict {
            holds: false,
            certificate: Certificate::ZeroNonzeroMismatch {
                zero_side: Side::Left,
                zero,
                counterexample: counterexample(oracle),
            },
        },
        (None, Some(zero)) => Verdict {
            holds: false,
            certificate: Certificate::ZeroNonzeroMismatch {
                zero_side: Side::Right,
                zero,
                counterexample: counterexample(oracle),
            },
        },
        (None, None) => {
            let (cu, left) = canonical_derivation(system, u)?;
            let (cv, right) = canonical_derivation(system, v)?;
            if cu == cv {
                Verdict {
                    holds: true,
                    certificate: Certificate::CanonicalMatch {
                        canonical: left.canonical.clone(),
                        left,
                        right,
                    },
                }
            } else {
                Verdict {
                    holds: false,
                    certificate: Certificate::CanonicalMismatch {
                        left,
                        right,
                        counterexample: counterexample(oracle),
                    },
                }
            }
        }
    })
}

/// Complete zero test for the system in question.
fn zero_proof(system: System, w: &Word) -> Result<Option<ZeroProof>> {
    match system {
        System::A0 => Ok(zero::a_zero_evidence(w)?.map(ZeroProof::A0)),
        System::B0 => Ok(zero::b_zero_witness(w)?.map(ZeroProof::B0)),
    }
}

/// The canonical representative of a mixed non-zero word's class: the
/// normal form or its flip inside the pivot pair, whichever renders
/// lexicographically smaller.
pub fn canonical_mixed(system: System, w: &Word) -> Result<Word> {
    Ok(canonical_derivation(system, w)?.0)
}

fn canonical_derivation(system: System, w: &Word) -> Result<(Word, CanonicalDerivation)> {
    let (normal, trace) = match system {
        System::A0 => {
            let (form, trace) = standard::normalize_a(w)?;
            (form.word(), trace)
        }
        System::B0 => {
            let (form, trace) = standard::normalize_b(w)?;
            (form.word(), trace)
        }
    };
    let (canonical, flipped) = canonical_of_normal(system, &normal)
        .expect("normalization output must be in standard form");
    let meta = CanonicalDerivation {
        trace,
        normal: normal.render(),
        canonical: canonical.render(),
        flipped,
    };
    Ok((canonical, meta))
}

/// Pick between a standard word and its flip; `None` if the word does not
/// parse as a standard form of the system.
fn canonical_of_normal(system: System, normal: &Word) -> Option<(Word, bool)> {
    let flip = match system {
        System::A0 => standard::parse_a_standard(normal)?.flip().word(),
        System::B0 => standard::parse_b_standard(normal)?.flip().word(),
    };
    debug_assert!(match system {
        System::A0 => standard::is_a_standard(&flip),
        System::B0 => standard::is_b_standard(&flip),
    });
    if flip.render() < normal.render() {
        Some((flip, true))
    } else {
        Some((normal.clone(), false))
    }
}

/// Exhaustively test the plain projections of two bipartite words: every
/// distinct letter (star shapes included) ranges over all elements
/// independently, and only the multiplication table is consulted.
fn projection_counterexample(
    model: &InvolutionSemigroup,
    u: &Word,
    v: &Word,
    var_cap: usize,
) -> Result<Option<ProjectionCounterexample>> {
    let vars: Vec<Letter> = u.content().union(&v.content()).copied().collect();
    if vars.len() > var_cap {
        return Err(Error::Capability(format!(
            "plain projection has {} variables, cap is {var_cap}",
            vars.len()
        )));
    }
    let value = |map: &BTreeMap<Letter, u8>, w: &Word| -> u8 {
        w.letters()
            .iter()
            .map(|l| map[l])
            .reduce(|a, b| model.mul(a, b))
            .expect("projection of a nonempty word")
    };
    let n = model.order();
    let mut choice = vec![1u8; vars.len()];
    loop {
        let map: BTreeMap<Letter, u8> = vars.iter().copied().zip(choice.iter().copied()).collect();
        let lhs = value(&map, u);
        let rhs = value(&map, v);
        if lhs != rhs {
            return Ok(Some(ProjectionCounterexample {
                assignment: map.iter().map(|(l, e)| (l.to_string(), *e)).collect(),
                lhs_value: lhs,
                rhs_value: rhs,
            }));
        }
        // Odometer over 1..=n per variable.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            if choice[k] < n {
                choice[k] += 1;
                break;
            }
            choice[k] = 1;
            k += 1;
        }
    }
}

/// Separate a mixed word from a bipartite one in the three-element
/// semilattice quotient: bases starred on the bipartite side go to the
/// starred idempotent, every other base to the plain one. All letters of
/// the bipartite word then evaluate to the plain idempotent, while the
/// mixed side meets both idempotents and falls to their product.
fn quotient_witness(u: &Word, v: &Word, mixed_side: Side) -> Counterexample {
    let sl3 = catalog::sl3();
    let bipartite = match mixed_side {
        Side::Left => v,
        Side::Right => u,
    };
    let starred: std::collections::BTreeSet<u8> = bipartite
        .content()
        .into_iter()
        .filter(|l| l.is_starred())
        .map(|l| l.base())
        .collect();
    let (ub, vb) = (u.bases(), v.bases());
    let pairs = ub
        .union(&vb)
        .map(|&b| (b, if starred.contains(&b) { 3 } else { 2 }));
    let asgn = Assignment::from_pairs(pairs);
    Counterexample::from_assignment(&sl3, u, v, &asgn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn decide_ok(system: System, a: &str, b: &str) -> Verdict {
        let (u, v) = (w(a), w(b));
        let verdict = decide(system, &u, &v).unwrap();
        assert!(
            verdict.certificate.check(system, &u, &v),
            "certificate for {a} ≈ {b} does not re-check: {:?}",
            verdict.certificate
        );
        verdict
    }

    #[test]
    fn flipped_middle_letters_coincide() {
        // xyx* and xy*x* share a canonical representative.
        let verdict = decide_ok(System::A0, "xyx*", "xy*x*");
        assert!(verdict.holds);
        match &verdict.certificate {
            Certificate::CanonicalMatch { canonical, .. } => assert_eq!(canonical, "xy*x*"),
            other => panic!("expected a canonical match, got {other:?}"),
        }
    }

    #[test]
    fn star_pair_order_matters_in_a0_but_not_b0() {
        let verdict = decide_ok(System::A0, "xx*", "x*x");
        assert!(!verdict.holds);
        assert!(matches!(
            verdict.certificate,
            Certificate::CanonicalMismatch { .. }
        ));

        let verdict = decide_ok(System::B0, "xx*", "x*x");
        assert!(verdict.holds);
        assert!(matches!(verdict.certificate, Certificate::BothZero { .. }));
    }

    #[test]
    fn bipartite_sides_go_through_the_plain_projection() {
        // Squares are idempotent-ish: xx ≈ xxx holds in both systems.
        for system in [System::A0, System::B0] {
            let verdict = decide_ok(system, "xx", "xxx");
            assert!(verdict.holds, "{}", system.name());
            assert!(matches!(
                verdict.certificate,
                Certificate::BothBipartite { holds: true, .. }
            ));
        }
        // Multiplication is not commutative.
        let verdict = decide_ok(System::A0, "xy", "yx");
        assert!(!verdict.holds);
        match verdict.certificate {
            Certificate::BothBipartite { holds: false, counterexample: Some(_) } => {}
            other => panic!("expected a projection counterexample, got {other:?}"),
        }
    }

    #[test]
    fn mixedness_is_an_invariant_of_the_class() {
        let verdict = decide_ok(System::A0, "xx*", "xx");
        assert!(!verdict.holds);
        match &verdict.certificate {
            Certificate::MixedBipartiteMismatch { mixed_side, quotient } => {
                assert_eq!(*mixed_side, Side::Left);
                assert_ne!(quotient.lhs_value, quotient.rhs_value);
            }
            other => panic!("expected a mixed/bipartite mismatch, got {other:?}"),
        }
    }

    #[test]
    fn zero_words_are_identified() {
        let verdict = decide_ok(System::A0, "xx*x", "yy*zz*");
        assert!(verdict.holds);
        assert!(matches!(verdict.certificate, Certificate::BothZero { .. }));

        let verdict = decide_ok(System::A0, "xx*x", "xyx*");
        assert!(!verdict.holds);
        assert!(matches!(
            verdict.certificate,
            Certificate::ZeroNonzeroMismatch { zero_side: Side::Left, .. }
        ));
    }

    #[test]
    fn canonical_mixed_is_flip_invariant() {
        let c1 = canonical_mixed(System::A0, &w("xyx*")).unwrap();
        let c2 = canonical_mixed(System::A0, &w("xy*x*")).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.render(), "xy*x*");
    }

    #[test]
    fn star_symmetry_of_verdicts() {
        let pairs = [
            ("xyx*", "xy*x*"),
            ("xx*", "x*x"),
            ("xx", "xxx"),
            ("xx*", "xx"),
            ("xx*x", "xyx*"),
            ("xabbax*", "xbbaax*"),
        ];
        for system in [System::A0, System::B0] {
            for (a, b) in pairs {
                let (u, v) = (w(a), w(b));
                let plain = decide(system, &u, &v).unwrap();
                let starred = decide(system, &u.star(), &v.star()).unwrap();
                assert_eq!(plain.holds, starred.holds, "{} {a} {b}", system.name());
                assert_eq!(
                    plain.certificate.kind(),
                    starred.certificate.kind(),
                    "{} {a} {b}",
                    system.name()
                );
            }
        }
    }

    #[test]
    fn empty_words_are_rejected() {
        let empty = Word::from_letters(vec![]);
        assert!(decide(System::A0, &empty, &w("x")).is_err());
        assert!(decide(System::B0, &w("x"), &empty).is_err());
    }

    #[test]
    fn certificates_do_not_check_against_other_words() {
        let (u, v) = (w("xx*x"), w("yy*zz*"));
        let verdict = decide(System::A0, &u, &v).unwrap();
        assert!(verdict.certificate.check(System::A0, &u, &v));
        assert!(!verdict.certificate.check(System::A0, &u, &w("yzy*z*")));
    }
}
