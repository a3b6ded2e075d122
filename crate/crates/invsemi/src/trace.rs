//! Derivation traces: checkable certificates that one word rewrites to
//! another inside a given identity system.
//!
//! A trace records the start word, the claimed end word, and every rewrite
//! step with enough detail (rule tag, direction, position, substitution)
//! that a verifier can replay it without any search. Traces serialize to
//! JSON so they can be shipped across the CLI boundary and re-checked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{apply, Dir, RuleSystem, Subst};
use crate::word::Word;

/// One replayable rewrite step. `pos` is the 0-based letter position of the
/// matched factor; `subst` binds each rule variable to a word, written in
/// the ordinary word syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: String,
    pub dir: String,
    pub pos: usize,
    pub subst: BTreeMap<String, String>,
}

impl DerivationStep {
    pub fn decode(&self) -> Result<(Dir, Subst)> {
        let dir = Dir::from_tag(&self.dir)?;
        let mut subst = Subst::new();
        for (var, text) in &self.subst {
            let mut chars = var.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Rule(format!(
                    "substitution key {var:?} is not a single variable"
                )));
            };
            subst.insert(c, Word::parse(text)?);
        }
        Ok((dir, subst))
    }
}

/// A full derivation from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub start: String,
    pub end: String,
    pub steps: Vec<DerivationStep>,
}

impl DerivationTrace {
    /// Replay the trace under `system`, checking every step. Returns the
    /// final word, which is guaranteed to render as `end`.
    pub fn verify(&self, system: &RuleSystem) -> Result<Word> {
        let mut cur = Word::parse(&self.start)?;
        let expected_end = Word::parse(&self.end)?;
        for (i, step) in self.steps.iter().enumerate() {
            let rule = system.get(&step.rule)?;
            let (dir, subst) = step.decode()?;
            cur = apply(&cur, rule, dir, step.pos, &subst).map_err(|e| {
                Error::Rule(format!("step {i} of trace {} -> {}: {e}", self.start, self.end))
            })?;
        }
        if cur != expected_end {
            return Err(Error::Rule(format!(
                "trace ends at {cur} but claims {}",
                self.end
            )));
        }
        Ok(cur)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<DerivationTrace> {
        serde_json::from_str(text).map_err(|e| Error::Rule(format!("bad trace JSON: {e}")))
    }
}

/// Applies rules to a working word while recording each step, so the
/// normalizers produce their traces as a side effect of rewriting.
pub struct Rewriter {
    system: RuleSystem,
    start: Word,
    cur: Word,
    steps: Vec<DerivationStep>,
}

impl Rewriter {
    pub fn new(system: RuleSystem, start: Word) -> Rewriter {
        Rewriter {
            system,
            cur: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    pub fn word(&self) -> &Word {
        &self.cur
    }

    pub fn system(&self) -> &RuleSystem {
        &self.system
    }

    /// Apply one step and record it. Errors indicate a bug in the caller's
    /// bookkeeping, never in the input word.
    pub fn step(&mut self, tag: &str, dir: Dir, pos: usize, subst: Subst) -> Result<()> {
        let rule = self.system.get(tag)?;
        let next = apply(&self.cur, rule, dir, pos, &subst)?;
        self.steps.push(DerivationStep {
            rule: tag.to_string(),
            dir: dir.tag().to_string(),
            pos,
            subst: subst
                .iter()
                .map(|(v, word)| (v.to_string(), word.render()))
                .collect(),
        });
        self.cur = next;
        Ok(())
    }

    pub fn finish(self) -> (Word, DerivationTrace) {
        let trace = DerivationTrace {
            start: self.start.render(),
            end: self.cur.render(),
            steps: self.steps,
        };
        (self.cur, trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn subst(pairs: &[(char, &str)]) -> Subst {
        pairs.iter().map(|&(v, s)| (v, w(s))).collect()
    }

    #[test]
    fn rewriter_records_verifiable_steps() {
        let mut rw = Rewriter::new(RuleSystem::a0(), w("aa*b"));
        rw.step("tail-rotate-short", Dir::Fwd, 0, subst(&[('x', "a"), ('y', "b")]))
            .unwrap();
        assert_eq!(rw.word(), &w("b*aa*"));
        let (end, trace) = rw.finish();
        assert_eq!(end, w("b*aa*"));
        assert_eq!(trace.verify(&RuleSystem::a0()).unwrap(), end);
    }

    #[test]
    fn verify_rejects_tampered_traces() {
        let mut rw = Rewriter::new(RuleSystem::a0(), w("aa*b"));
        rw.step("tail-rotate-short", Dir::Fwd, 0, subst(&[('x', "a"), ('y', "b")]))
            .unwrap();
        let (_, trace) = rw.finish();

        let mut wrong_end = trace.clone();
        wrong_end.end = "aa*b".into();
        assert!(wrong_end.verify(&RuleSystem::a0()).is_err());

        let mut wrong_pos = trace.clone();
        wrong_pos.steps[0].pos = 1;
        assert!(wrong_pos.verify(&RuleSystem::a0()).is_err());

        let mut wrong_rule = trace.clone();
        wrong_rule.steps[0].rule = "no-such-rule".into();
        assert!(wrong_rule.verify(&RuleSystem::a0()).is_err());

        let mut wrong_subst = trace;
        wrong_subst.steps[0].subst.insert("y".into(), "c".into());
        assert!(wrong_subst.verify(&RuleSystem::a0()).is_err());
    }

    #[test]
    fn traces_round_trip_through_json() {
        let mut rw = Rewriter::new(RuleSystem::b0(), w("caa*d"));
        rw.step("zero-pair", Dir::Fwd, 1, subst(&[('x', "a")])).unwrap();
        let (end, trace) = rw.finish();
        assert_eq!(end, w("aa*"));
        let json = trace.to_json();
        let back = DerivationTrace::from_json(&json).unwrap();
        assert_eq!(back, trace);
        assert_eq!(back.verify(&RuleSystem::b0()).unwrap(), w("aa*"));
        // The same trace must fail under the smaller system.
        assert!(back.verify(&RuleSystem::a0()).is_err());
    }

    #[test]
    fn empty_trace_verifies_when_start_equals_end() {
        let trace = DerivationTrace {
            start: "ab".into(),
            end: "ab".into(),
            steps: vec![],
        };
        assert_eq!(trace.verify(&RuleSystem::a0()).unwrap(), w("ab"));
    }
}
