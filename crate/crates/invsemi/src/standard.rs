//! Standard forms for mixed words and the normalizers that reach them.
//!
//! A mixed word that is not always zero rewrites, in the `a0` system, to a
//! unique shape `prefix · pivot · middle · pivot*` where
//!
//!  * the prefix letters have strictly increasing bases, all smaller than
//!    the pivot's base, and share no base with the middle;
//!  * the pivot's base is the word's only mixed base and occurs exactly
//!    twice — once in an inner form, once starred at the very end;
//!  * the middle splits into letters that occur once, squares `gg`, and
//!    brackets `g·h₁h₁⋯h_kh_k·g` whose outer base is the smallest of the
//!    group and whose interior squares have strictly increasing bases.
//!
//! The `b0` system additionally commutes squares. That dissolves brackets
//! into flat square runs and lets runs touching the pivot pair escape into
//! the prefix, so a `b0` normal middle is an alternation of single letters
//! and sorted square runs that starts and ends with a single letter.
//!
//! Both normalizers return the parsed form together with a replayable
//! derivation trace; every step is applied through the rule engine, so a
//! successful run is itself a proof that the input and output coincide in
//! the respective system.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rules::{Dir, RuleSystem, Subst};
use crate::trace::{DerivationTrace, Rewriter};
use crate::word::{Letter, Word};
use crate::zero;

/// Bail out if intermediate cluster rewriting ever exceeds this many
/// letters; reachable only with adversarial inputs far beyond the sizes the
/// census and decision procedures produce.
const CLUSTER_LIMIT: usize = 1 << 14;

/// One group of a normal middle in the `a0` system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    /// A letter occurring exactly once.
    Simple(Letter),
    /// A doubled letter `gg`.
    Square(Letter),
    /// `g · h₁h₁⋯h_kh_k · g` with `g` the smallest base of the group.
    Bracket { outer: Letter, inner: Vec<Letter> },
}

impl Segment {
    pub fn letters(&self) -> Vec<Letter> {
        match self {
            Segment::Simple(l) => vec![*l],
            Segment::Square(l) => vec![*l, *l],
            Segment::Bracket { outer, inner } => {
                let mut out = vec![*outer];
                for h in inner {
                    out.push(*h);
                    out.push(*h);
                }
                out.push(*outer);
                out
            }
        }
    }

    fn star(&self) -> Segment {
        match self {
            Segment::Simple(l) => Segment::Simple(l.star()),
            Segment::Square(l) => Segment::Square(l.star()),
            // Starring reverses the interior, and re-sorting restores it;
            // bases are untouched, so the stored order stays sorted.
            Segment::Bracket { outer, inner } => Segment::Bracket {
                outer: outer.star(),
                inner: inner.iter().map(|l| l.star()).collect(),
            },
        }
    }
}

/// Parsed `a0` standard form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormA {
    pub prefix: Vec<Letter>,
    /// The inner occurrence of the pivot; the word ends with its star.
    pub pivot: Letter,
    pub middle: Vec<Segment>,
}

impl StandardFormA {
    pub fn word(&self) -> Word {
        let mut letters = self.prefix.clone();
        letters.push(self.pivot);
        for seg in &self.middle {
            letters.extend(seg.letters());
        }
        letters.push(self.pivot.star());
        Word::from_letters(letters)
    }

    /// The equivalent standard word with the middle reversed and starred.
    /// Prefix and pivot stay put; flipping inside the pivot pair is sound.
    pub fn flip(&self) -> StandardFormA {
        StandardFormA {
            prefix: self.prefix.clone(),
            pivot: self.pivot,
            middle: self.middle.iter().rev().map(Segment::star).collect(),
        }
    }

    /// Whether some middle letter occurs exactly once.
    pub fn middle_has_simple(&self) -> bool {
        self.middle.iter().any(|s| matches!(s, Segment::Simple(_)))
    }
}

/// One group of a normal middle in the `b0` system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BSegment {
    /// A letter occurring exactly once.
    Simple(Letter),
    /// A run of squares with strictly increasing bases.
    Squares(Vec<Letter>),
}

impl BSegment {
    pub fn letters(&self) -> Vec<Letter> {
        match self {
            BSegment::Simple(l) => vec![*l],
            BSegment::Squares(run) => run.iter().flat_map(|l| [*l, *l]).collect(),
        }
    }

    fn star(&self) -> BSegment {
        match self {
            BSegment::Simple(l) => BSegment::Simple(l.star()),
            BSegment::Squares(run) => BSegment::Squares(run.iter().map(|l| l.star()).collect()),
        }
    }
}

/// Parsed `b0` standard form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormB {
    pub prefix: Vec<Letter>,
    pub pivot: Letter,
    /// Alternating simples and square runs; first and last are simple.
    pub middle: Vec<BSegment>,
}

impl StandardFormB {
    pub fn word(&self) -> Word {
        let mut letters = self.prefix.clone();
        letters.push(self.pivot);
        for seg in &self.middle {
            letters.extend(seg.letters());
        }
        letters.push(self.pivot.star());
        Word::from_letters(letters)
    }

    /// The equivalent standard word with the middle reversed and starred.
    pub fn flip(&self) -> StandardFormB {
        StandardFormB {
            prefix: self.prefix.clone(),
            pivot: self.pivot,
            middle: self.middle.iter().rev().map(BSegment::star).collect(),
        }
    }
}

/// Shared skeleton checks: trailing starred pivot, its inner partner, a
/// strictly increasing prefix below the pivot base and disjoint from the
/// middle. Returns (prefix, pivot, middle slice).
fn parse_skeleton(w: &Word) -> Option<(Vec<Letter>, Letter, Word)> {
    if w.len() < 2 {
        return None;
    }
    let trailing = w[w.len() - 1];
    let pivot = trailing.star();
    let beta = pivot.base();
    let mixed: Vec<u8> = w.mixed_bases().into_iter().collect();
    if mixed != [beta] || w.occ_base(beta) != 2 {
        return None;
    }
    let p = (0..w.len() - 1).find(|&i| w[i].base() == beta)?;
    if w[p] != pivot {
        return None;
    }
    let prefix: Vec<Letter> = (0..p).map(|i| w[i]).collect();
    if !prefix.windows(2).all(|ab| ab[0].base() < ab[1].base()) {
        return None;
    }
    if prefix.last().is_some_and(|l| l.base() >= beta) {
        return None;
    }
    let mid = w.slice(p + 1..w.len() - 1);
    let pre_bases: BTreeSet<u8> = prefix.iter().map(|l| l.base()).collect();
    if mid.bases().intersection(&pre_bases).next().is_some() {
        return None;
    }
    Some((prefix, pivot, mid))
}

/// Split a middle into `a0` segments, or `None` if it has none of the
/// allowed shapes. Assumes every base occurs in a single form.
fn parse_middle_segments(mid: &Word) -> Option<Vec<Segment>> {
    let mut segs = Vec::new();
    let mut i = 0;
    while i < mid.len() {
        let l = mid[i];
        match mid.occ(l) {
            1 => {
                segs.push(Segment::Simple(l));
                i += 1;
            }
            2 => {
                let j = (i + 1..mid.len()).find(|&j| mid[j] == l)?;
                if j == i + 1 {
                    segs.push(Segment::Square(l));
                    i += 2;
                } else {
                    let mut inner = Vec::new();
                    let mut k = i + 1;
                    while k < j {
                        if k + 1 >= j || mid[k + 1] != mid[k] || mid.occ(mid[k]) != 2 {
                            return None;
                        }
                        inner.push(mid[k]);
                        k += 2;
                    }
                    if !inner.windows(2).all(|ab| ab[0].base() < ab[1].base()) {
                        return None;
                    }
                    if inner.first()?.base() <= l.base() {
                        return None;
                    }
                    segs.push(Segment::Bracket { outer: l, inner });
                    i = j + 1;
                }
            }
            _ => return None,
        }
    }
    Some(segs)
}

pub fn parse_a_standard(w: &Word) -> Option<StandardFormA> {
    let (prefix, pivot, mid) = parse_skeleton(w)?;
    let middle = parse_middle_segments(&mid)?;
    Some(StandardFormA { prefix, pivot, middle })
}

pub fn is_a_standard(w: &Word) -> bool {
    parse_a_standard(w).is_some()
}

pub fn parse_b_standard(w: &Word) -> Option<StandardFormB> {
    let (prefix, pivot, mid) = parse_skeleton(w)?;
    if mid.is_empty() {
        return None;
    }
    let mut segs: Vec<BSegment> = Vec::new();
    let mut i = 0;
    while i < mid.len() {
        let l = mid[i];
        if i + 1 < mid.len() && mid[i + 1] == l {
            let mut run = Vec::new();
            while i + 1 < mid.len() && mid[i + 1] == mid[i] {
                if mid.occ(mid[i]) != 2 {
                    return None;
                }
                run.push(mid[i]);
                i += 2;
            }
            if !run.windows(2).all(|ab| ab[0].base() < ab[1].base()) {
                return None;
            }
            segs.push(BSegment::Squares(run));
        } else {
            if mid.occ(l) != 1 {
                return None;
            }
            segs.push(BSegment::Simple(l));
            i += 1;
        }
    }
    if !matches!(segs.first()?, BSegment::Simple(_)) || !matches!(segs.last()?, BSegment::Simple(_)) {
        return None;
    }
    Some(StandardFormB { prefix, pivot, middle: segs })
}

pub fn is_b_standard(w: &Word) -> bool {
    parse_b_standard(w).is_some()
}

fn sb(pairs: &[(char, Word)]) -> Subst {
    pairs.iter().cloned().collect()
}

fn empty_trace(word: &Word) -> DerivationTrace {
    DerivationTrace {
        start: word.render(),
        end: word.render(),
        steps: Vec::new(),
    }
}

/// The inner pivot position: the last letter before the end that is the
/// star of the trailing letter. Valid once the word is anchored.
fn inner_pivot(w: &Word) -> usize {
    let f = w[w.len() - 1].star();
    (0..w.len() - 1)
        .rev()
        .find(|&k| w[k] == f)
        .expect("anchored word has an inner pivot")
}

/// What `a0` rewriting does to a mixed word: either it reaches the standard
/// form, or some intermediate word exhibits a zero shape that the input hid
/// — the three scattered shapes are sufficient but not exhaustive, so a
/// shape-free word may still be always zero, and the rewriting uncovers it.
pub(crate) enum NormACore {
    Form(StandardFormA, DerivationTrace),
    Zero(DerivationTrace, zero::ZeroWitnessA),
}

pub(crate) fn normalize_a_core(word: &Word) -> Result<NormACore> {
    if !word.is_mixed() {
        return Err(Error::Domain(format!(
            "{word} has no base occurring both plain and starred, so no mixed standard form"
        )));
    }
    if let Some(wit) = zero::a_zero_witness(word) {
        return Ok(NormACore::Zero(empty_trace(word), wit));
    }
    if let Some(form) = parse_a_standard(word) {
        return Ok(NormACore::Form(form, empty_trace(word)));
    }
    let mut rw = Rewriter::new(RuleSystem::a0(), word.clone());
    phase_anchor(&mut rw)?;
    phase_clean_middle(&mut rw)?;
    if phase_prefix(&mut rw)? {
        let (end, trace) = rw.finish();
        let wit = zero::a_zero_witness(&end).ok_or_else(|| {
            Error::Rule(format!(
                "prefix pass on {word} stalled at {end} without a zero shape"
            ))
        })?;
        return Ok(NormACore::Zero(trace, wit));
    }
    phase_clusters(&mut rw)?;
    let (end, trace) = rw.finish();
    match parse_a_standard(&end) {
        Some(form) => Ok(NormACore::Form(form, trace)),
        None => Err(Error::Rule(format!(
            "normalization of {word} stopped at non-standard {end}"
        ))),
    }
}

/// Rewrite a mixed, nonzero word to its `a0` standard form, returning the
/// parsed form and the full derivation.
pub fn normalize_a(word: &Word) -> Result<(StandardFormA, DerivationTrace)> {
    match normalize_a_core(word)? {
        NormACore::Form(form, trace) => Ok((form, trace)),
        NormACore::Zero(trace, wit) => Err(Error::Domain(if trace.is_empty() {
            format!("{word} is always zero: {}", wit.describe())
        } else {
            format!(
                "{word} is always zero: rewriting to {} uncovers {}",
                trace.end,
                wit.describe()
            )
        })),
    }
}

/// Rewrite a mixed word that is nonzero in `b0` to its `b0` standard form.
pub fn normalize_b(word: &Word) -> Result<(StandardFormB, DerivationTrace)> {
    if !word.is_mixed() {
        return Err(Error::Domain(format!(
            "{word} has no base occurring both plain and starred, so no mixed standard form"
        )));
    }
    if let Some(wit) = zero::b_zero_witness(word)? {
        return Err(Error::Domain(format!(
            "{word} is always zero: {}",
            wit.describe()
        )));
    }
    if let Some(form) = parse_b_standard(word) {
        return Ok((form, empty_trace(word)));
    }
    // Start from the a0 normal form: every a0 rule is also a b0 rule, so
    // the same steps replay verbatim in the larger system.
    let (_, a_trace) = normalize_a(word)?;
    let mut rw = Rewriter::new(RuleSystem::b0(), word.clone());
    for step in &a_trace.steps {
        let (dir, subst) = step.decode()?;
        rw.step(&step.rule, dir, step.pos, subst)?;
    }
    phase_fuse(&mut rw)?;
    phase_square_sort(&mut rw)?;
    phase_boundary(&mut rw)?;
    let (end, trace) = rw.finish();
    match parse_b_standard(&end) {
        Some(form) => Ok((form, trace)),
        None => Err(Error::Rule(format!(
            "normalization of {word} stopped at non-standard {end}"
        ))),
    }
}

/// Phase 1: rotate everything after the first star pair of the smallest
/// mixed base in front, so the word ends with a starred pivot.
fn phase_anchor(rw: &mut Rewriter) -> Result<()> {
    let w = rw.word().clone();
    let beta = *w.mixed_bases().iter().next().expect("checked mixed");
    let first = (0..w.len()).find(|&i| w[i].base() == beta).unwrap();
    let f = w[first];
    let i = (0..w.len()).rev().find(|&k| w[k] == f).unwrap();
    let j = (0..w.len()).find(|&k| w[k] == f.star()).expect("both forms occur");
    debug_assert!(i < j, "zero words were rejected before anchoring");
    let b = w.slice(i + 1..j);
    let c = w.slice(j + 1..w.len());
    if c.is_empty() {
        return Ok(());
    }
    let fx = Word::single(f);
    if b.is_empty() {
        rw.step("tail-rotate-short", Dir::Fwd, i, sb(&[('x', fx), ('y', c)]))
    } else {
        rw.step("tail-rotate", Dir::Fwd, i, sb(&[('x', fx), ('T', b), ('y', c)]))
    }
}

/// Phase 2: empty the middle of every base that also occurs elsewhere or in
/// both forms, so only the pivot's base is mixed and prefix and middle
/// become base-disjoint.
fn phase_clean_middle(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let f = w[n - 1].star();
        let p = inner_pivot(&w);
        let fx = Word::single(f);

        // (a) A base with both forms inside the middle: the scan finds the
        // earlier form first, since the later form's partner check would
        // already have fired on it.
        let both = (p + 1..n - 1)
            .map(|k| w[k])
            .find(|l| (p + 1..n - 1).any(|m| w[m] == l.star()));
        if let Some(g) = both {
            let gi = (p + 1..n - 1).find(|&k| w[k] == g).unwrap();
            let gj = (gi + 1..n - 1).find(|&k| w[k] == g.star()).unwrap();
            delete_middle_pair(rw, p, gi, gj)?;
            continue;
        }
        // (b) A prefix letter whose partner sits in the middle.
        let split = (0..p)
            .rev()
            .find(|&k| (p + 1..n - 1).any(|m| w[m] == w[k].star()));
        if let Some(i) = split {
            delete_split_pair(rw, i, p)?;
            continue;
        }
        // (c) A base occurring with the same form on both sides: one flip
        // inside the pivot pair turns it into case (b).
        let shared = (0..p).any(|k| (p + 1..n - 1).any(|m| w[m] == w[k]));
        if shared {
            let mid = w.slice(p + 1..n - 1);
            rw.step("mid-flip", Dir::Fwd, p, sb(&[('x', fx), ('y', mid)]))?;
            continue;
        }
        return Ok(());
    }
}

/// Delete the later half of a star pair `g…g*` lying inside the middle.
/// Layout: `pre · f@p · b1 · g@gi · b2 · g*@gj · b3 · f*`.
fn delete_middle_pair(rw: &mut Rewriter, p: usize, gi: usize, gj: usize) -> Result<()> {
    let w = rw.word().clone();
    let n = w.len();
    let f = w[n - 1].star();
    let g = w[gi];
    let fx = Word::single(f);
    let gx = Word::single(g);
    let l1 = gi - (p + 1);
    let l2 = gj - gi - 1;
    let l3 = (n - 1) - gj - 1;
    let b1 = w.slice(p + 1..gi);
    let b2 = w.slice(gi + 1..gj);
    let b3 = w.slice(gj + 1..n - 1);

    // Move the pivot letter past b1, against the pair.
    if l1 > 0 {
        if l2 > 0 {
            rw.step(
                "prefix-swap",
                Dir::Fwd,
                p,
                sb(&[('y', fx.clone()), ('z', b1), ('x', gx.clone()), ('T', b2.clone())]),
            )?;
        } else {
            rw.step(
                "prefix-swap-short",
                Dir::Fwd,
                p,
                sb(&[('y', fx.clone()), ('z', b1), ('x', gx.clone())]),
            )?;
        }
    }
    let p1 = p + l1;
    // Move b3 behind the trailing pivot, then fold it into the prefix.
    if l3 > 0 {
        let fs = Word::single(f.star());
        if l2 > 0 {
            rw.step(
                "suffix-swap",
                Dir::Fwd,
                p1 + 1,
                sb(&[('x', gx.clone()), ('T', b2.clone()), ('y', b3.clone()), ('z', fs)]),
            )?;
        } else {
            rw.step(
                "suffix-swap-short",
                Dir::Fwd,
                p1 + 1,
                sb(&[('x', gx.clone()), ('y', b3.clone()), ('z', fs)]),
            )?;
        }
        let t = rw.word().slice(p1 + 1..p1 + 3 + l2);
        rw.step(
            "tail-rotate",
            Dir::Fwd,
            p1,
            sb(&[('x', fx.clone()), ('T', t), ('y', b3)]),
        )?;
    }
    let p2 = p1 + l3;
    // Trade the pair's opener with the pivot, doubling the trailing star…
    if l2 > 0 {
        rw.step(
            "pivot-trade",
            Dir::Fwd,
            p2,
            sb(&[('x', fx.clone()), ('y', gx.clone()), ('T', b2.clone())]),
        )?;
        // …and collapse the doubled star.
        rw.step("pivot-dup-right", Dir::Bwd, p2 + 1, sb(&[('x', fx), ('T', b2)]))
    } else {
        rw.step(
            "pivot-trade-short",
            Dir::Fwd,
            p2,
            sb(&[('x', fx.clone()), ('y', gx)]),
        )?;
        rw.step("pivot-dup-right-short", Dir::Bwd, p2 + 1, sb(&[('x', fx)]))
    }
}

/// Delete the middle half of a star pair split across prefix and middle.
/// Layout: `a1 · g@i · a2 · f@p · b1 · g*@jj · b2 · f*`.
fn delete_split_pair(rw: &mut Rewriter, i: usize, p: usize) -> Result<()> {
    let w = rw.word().clone();
    let n = w.len();
    let f = w[n - 1].star();
    let g = w[i];
    let fx = Word::single(f);
    let gx = Word::single(g);
    let la2 = p - i - 1;
    let jj = (p + 1..n - 1).find(|&m| w[m] == g.star()).unwrap();
    let l1 = jj - p - 1;
    let l2 = (n - 1) - jj - 1;
    let a2 = w.slice(i + 1..p);
    let b2 = w.slice(jj + 1..n - 1);
    let mid_all = w.slice(p + 1..n - 1);

    // Bring g against the pivot; the middle is nonempty (it holds g*).
    if la2 > 0 {
        rw.step(
            "prefix-swap",
            Dir::Fwd,
            i,
            sb(&[('y', gx.clone()), ('z', a2), ('x', fx.clone()), ('T', mid_all)]),
        )?;
    }
    let pg = p - 1;
    // Move b2 out of the pair's span.
    if l2 > 0 {
        let t = rw.word().slice(pg + 1..jj);
        let fs = Word::single(f.star());
        rw.step(
            "suffix-swap",
            Dir::Fwd,
            pg,
            sb(&[('x', gx.clone()), ('T', t), ('y', b2.clone()), ('z', fs)]),
        )?;
    }
    // Flip inside the pivot pair: b1·g* becomes g·b1*.
    let y3 = rw.word().slice(p + 1..p + l1 + 2);
    rw.step("mid-flip", Dir::Fwd, p, sb(&[('x', fx.clone()), ('y', y3)]))?;
    // Rotate the overlap g·f·g into f·g·f.
    rw.step(
        "overlap-shift",
        Dir::Bwd,
        pg,
        sb(&[('x', fx.clone()), ('y', gx.clone())]),
    )?;
    // Swap the doubled pivot's left neighbors, then halve the pivot.
    // The word now reads `a1 · f@pg · g · f · b1* · f*`, so the flipped
    // block starts two past the overlap, no longer at `p + 1`.
    let b1f = rw.word().slice(pg + 3..pg + 3 + l1);
    if l1 > 0 {
        rw.step(
            "prefix-swap",
            Dir::Fwd,
            pg,
            sb(&[('y', fx.clone()), ('z', gx), ('x', fx.clone()), ('T', b1f.clone())]),
        )?;
        rw.step(
            "pivot-dup-left",
            Dir::Fwd,
            p,
            sb(&[('x', fx.clone()), ('T', b1f.clone())]),
        )?;
    } else {
        rw.step(
            "prefix-swap-short",
            Dir::Fwd,
            pg,
            sb(&[('y', fx.clone()), ('z', gx), ('x', fx.clone())]),
        )?;
        rw.step("pivot-dup-left-short", Dir::Fwd, p, sb(&[('x', fx.clone())]))?;
    }
    // Now: a1·a2·g·f·b1*·f*·b2 with one letter fewer. Fold b2, unflip b1.
    if l2 > 0 {
        if l1 > 0 {
            rw.step(
                "tail-rotate",
                Dir::Fwd,
                p,
                sb(&[('x', fx.clone()), ('T', b1f.clone()), ('y', b2.clone())]),
            )?;
        } else {
            rw.step(
                "tail-rotate-short",
                Dir::Fwd,
                p,
                sb(&[('x', fx.clone()), ('y', b2)]),
            )?;
        }
    }
    if l1 > 0 {
        let pf = p + l2;
        let b1s = rw.word().slice(pf + 1..pf + 1 + l1);
        rw.step("mid-flip", Dir::Fwd, pf, sb(&[('x', fx), ('y', b1s)]))?;
    }
    Ok(())
}

/// Phase 3: collapse pivot copies in the prefix, halve duplicate prefix
/// letters, sort the prefix by base, and hand the pivot role to the largest
/// base when the prefix outgrows it. Also reused after `b0` absorption.
///
/// Returns `true` when the current word turns out to carry a zero shape
/// that blocks the pass: a star pair completed to the left of the pivot
/// pair. Rewriting can uncover such a pair even when the original word had
/// no visible shape, and no standard form exists in that case.
fn phase_prefix(rw: &mut Rewriter) -> Result<bool> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let f = w[n - 1].star();
        let p = inner_pivot(&w);
        let fx = Word::single(f);
        let m = w.slice(p + 1..n - 1);
        let beta = f.base();

        // (a) Pivot-base copies in the prefix merge into the pivot.
        if let Some(i) = (0..p).rev().find(|&k| w[k].base() == beta) {
            if w[i] != f {
                // `f* … f … f*`: a triple shape.
                return Ok(true);
            }
            if i + 1 == p {
                if m.is_empty() {
                    rw.step("pivot-dup-left-short", Dir::Fwd, i, sb(&[('x', fx)]))?;
                } else {
                    rw.step("pivot-dup-left", Dir::Fwd, i, sb(&[('x', fx), ('T', m)]))?;
                }
            } else {
                let z = w.slice(i + 1..p);
                prefix_rotate(rw, i, &fx, &Word::single(w[i]), &z, &m)?;
            }
            continue;
        }
        // (b) A duplicated prefix base: walk its last two copies to the
        // pivot's shoulder, then halve them. Taking the last two copies of
        // the base with the rightmost occurrence keeps each rotation block
        // free of further copies and keeps the focus on one base until it
        // shrinks, so the loop cannot revisit a word.
        let mut dup: Option<(usize, usize)> = None;
        for k in 0..p {
            let occs: Vec<usize> = (0..p).filter(|&a| w[a].base() == w[k].base()).collect();
            if occs.len() > 1 {
                let pair = (occs[occs.len() - 2], occs[occs.len() - 1]);
                if dup.is_none_or(|(_, j)| pair.1 > j) {
                    dup = Some(pair);
                }
            }
        }
        if let Some((i, j)) = dup {
            if w[i] != w[j] {
                // A full star pair before the pivot pair: two pairs in a row.
                return Ok(true);
            }
            let g = Word::single(w[i]);
            if j < p - 1 {
                let z = w.slice(j + 1..p);
                prefix_rotate(rw, j, &fx, &g, &z, &m)?;
            } else if i + 2 < p {
                let z = w.slice(i + 1..p);
                prefix_rotate(rw, i, &fx, &g, &z, &m)?;
            } else if m.is_empty() {
                rw.step(
                    "prefix-desquare-short",
                    Dir::Fwd,
                    i,
                    sb(&[('y', g), ('x', fx)]),
                )?;
            } else {
                rw.step(
                    "prefix-desquare",
                    Dir::Fwd,
                    i,
                    sb(&[('y', g), ('x', fx), ('T', m)]),
                )?;
            }
            continue;
        }
        // (c) Sort the prefix in one extraction pass.
        let prefix: Vec<Letter> = (0..p).map(|k| w[k]).collect();
        let mut sorted = prefix.clone();
        sorted.sort_by_key(|l| l.base());
        if prefix != sorted {
            for &target in &sorted {
                let w = rw.word().clone();
                let p = inner_pivot(&w);
                let q = (0..p).find(|&k| w[k] == target).unwrap();
                if q + 1 == p {
                    continue;
                }
                let z = w.slice(q + 1..p);
                let m = w.slice(p + 1..w.len() - 1);
                prefix_rotate(rw, q, &fx, &Word::single(target), &z, &m)?;
            }
            continue;
        }
        // (d) A prefix base above the pivot's becomes the new pivot.
        if p > 0 && w[p - 1].base() > beta {
            let z = Word::single(w[p - 1]);
            if m.is_empty() {
                rw.step(
                    "pivot-trade-short",
                    Dir::Bwd,
                    p - 1,
                    sb(&[('y', z), ('x', fx)]),
                )?;
            } else {
                rw.step(
                    "pivot-trade",
                    Dir::Bwd,
                    p - 1,
                    sb(&[('y', z), ('x', fx), ('T', m)]),
                )?;
            }
            continue;
        }
        return Ok(false);
    }
}

/// Rotate the prefix block starting at `pos` (bound to `y`) past the rest
/// of the prefix (`z`), using the pivot pair as the anchor.
fn prefix_rotate(rw: &mut Rewriter, pos: usize, fx: &Word, y: &Word, z: &Word, m: &Word) -> Result<()> {
    if m.is_empty() {
        rw.step(
            "prefix-swap-short",
            Dir::Fwd,
            pos,
            sb(&[('y', y.clone()), ('z', z.clone()), ('x', fx.clone())]),
        )
    } else {
        rw.step(
            "prefix-swap",
            Dir::Fwd,
            pos,
            sb(&[('y', y.clone()), ('z', z.clone()), ('x', fx.clone()), ('T', m.clone())]),
        )
    }
}

/// Phase 4: normalize each connected group of repeated middle bases into a
/// square or a minimal-base bracket of sorted squares.
fn phase_clusters(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let p = inner_pivot(&w);
        // Spans of bases occurring more than once, merged when they overlap.
        let mut spans: Vec<(usize, usize)> = Vec::new();
        {
            let mut first_last: Vec<(usize, usize)> = Vec::new();
            let mid = w.slice(p + 1..n - 1);
            for &l in &mid.content() {
                let occs: Vec<usize> = (p + 1..n - 1).filter(|&k| w[k] == l).collect();
                if occs.len() > 1 {
                    first_last.push((occs[0], *occs.last().unwrap()));
                }
            }
            first_last.sort();
            for (a, b) in first_last {
                match spans.last_mut() {
                    Some(last) if a <= last.1 => last.1 = last.1.max(b),
                    _ => spans.push((a, b)),
                }
            }
        }
        let target = spans.into_iter().find(|&(a, b)| {
            !matches!(
                parse_middle_segments(&w.slice(a..b + 1)).as_deref(),
                Some([Segment::Square(_)]) | Some([Segment::Bracket { .. }])
            )
        });
        let Some((lo, hi)) = target else { return Ok(()) };
        cluster_normalize(rw, lo, hi + 1)?;
    }
}

/// Turn the cluster `[start, end)` into a square or a bracket of sorted
/// squares around the smallest base.
fn cluster_normalize(rw: &mut Rewriter, start: usize, mut end: usize) -> Result<()> {
    let w = rw.word().clone();
    let r = w[start];
    let rx = Word::single(r);
    if (start..end).all(|k| w[k] == r) {
        while end - start > 2 {
            rw.step("square-cube", Dir::Bwd, start, sb(&[('x', rx.clone())]))?;
            end -= 1;
        }
        return Ok(());
    }
    // Absorb the tail after the last occurrence of the head letter, one
    // letter per round, so the cluster starts and ends with `r`.
    loop {
        let w = rw.word().clone();
        let last_r = (start..end).rev().find(|&k| w[k] == r).expect("head letter recurs");
        if last_r == end - 1 {
            break;
        }
        // Some letter spans last_r: clusters are connected by construction.
        let z = (start..last_r)
            .filter(|&k| (last_r + 1..end).any(|m| w[m] == w[k]))
            .map(|k| w[k])
            .min()
            .expect("cluster stays connected");
        let z1 = (start..last_r).rev().find(|&k| w[k] == z).unwrap();
        let z2 = (last_r + 1..end).find(|&k| w[k] == z).unwrap();
        let dup = w.slice(z1 + 1..z2);
        rw.step(
            "overlap-shift",
            Dir::Fwd,
            z1,
            sb(&[('x', Word::single(z)), ('y', dup)]),
        )?;
        end += z2 - z1 - 2;
        if end - start > CLUSTER_LIMIT {
            return Err(Error::Capability(
                "cluster rewriting exceeded the size limit".into(),
            ));
        }
    }
    end = square_chain(rw, start, end)?;
    // Rebracket onto the smallest base when the head is not minimal.
    let w = rw.word().clone();
    let m = (start..end).map(|k| w[k]).min_by_key(|l| l.base()).unwrap();
    if m.base() != r.base() {
        // Interior is m·m·rest; rotate one m to the far end…
        let z = w.slice(start + 2..end - 1);
        rw.step(
            "bracket-swap",
            Dir::Fwd,
            start,
            sb(&[('x', rx.clone()), ('y', Word::single(m)), ('z', z)]),
        )?;
        // …then shift the whole bracket onto m.
        let y = rw.word().slice(start + 1..end - 1);
        let ylen = y.len();
        rw.step("overlap-shift", Dir::Fwd, start, sb(&[('x', rx), ('y', y)]))?;
        square_chain(rw, start, start + 2 * ylen + 1)?;
    }
    Ok(())
}

/// Turn a bracket factor `l · interior · l` at `[bs, be)` into `l·l` (if
/// the interior repeats `l`) or `l · sorted squares · l`. Returns the new
/// end position. Counts: each recursion level shortens the interior, so the
/// factor shrinks overall even though single steps double parts of it.
fn square_chain(rw: &mut Rewriter, bs: usize, be: usize) -> Result<usize> {
    let w = rw.word().clone();
    let l = w[bs];
    debug_assert_eq!(w[be - 1], l, "square_chain needs a bracket pair");
    let lx = Word::single(l);
    let ilen = be - bs - 2;
    if ilen == 0 {
        return Ok(be);
    }
    if (bs + 1..be - 1).all(|k| w[k] == w[bs + 1]) {
        let c = w[bs + 1];
        if c == l {
            // l^(ilen+2) collapses to l·l.
            let mut cur = be;
            while cur - bs > 2 {
                rw.step("square-cube", Dir::Bwd, bs, sb(&[('x', lx.clone())]))?;
                cur -= 1;
            }
            return Ok(bs + 2);
        }
        // c^ilen becomes c·c by collapsing or doubling.
        let cx = Word::single(c);
        let mut cur = ilen;
        while cur > 2 {
            rw.step("square-cube", Dir::Bwd, bs + 1, sb(&[('x', cx.clone())]))?;
            cur -= 1;
        }
        if cur == 1 {
            rw.step("inner-dup-mid", Dir::Fwd, bs, sb(&[('x', lx), ('y', cx)]))?;
            cur = 2;
        }
        return Ok(bs + cur + 2);
    }
    // Mixed interior. Rotate the smallest base to the front…
    let m = (bs + 1..be - 1).map(|k| w[k]).min_by_key(|lt| lt.base()).unwrap();
    let q = (bs + 1..be - 1).find(|&k| w[k] == m).unwrap();
    if q > bs + 1 {
        let y = w.slice(bs + 1..q);
        let z = w.slice(q..be - 1);
        rw.step(
            "bracket-swap",
            Dir::Fwd,
            bs,
            sb(&[('x', lx.clone()), ('y', y), ('z', z)]),
        )?;
    }
    // …double the interior, and cut the copy down to its first letter,
    // leaving m · 𝑌 · m inside the brackets.
    let i_word = rw.word().slice(bs + 1..be - 1);
    rw.step(
        "inner-dup-mid",
        Dir::Fwd,
        bs,
        sb(&[('x', lx.clone()), ('y', i_word.clone())]),
    )?;
    let mx = Word::single(m);
    let yword = i_word.slice(1..i_word.len());
    rw.step(
        "overlap-extend",
        Dir::Bwd,
        bs + 1,
        sb(&[('x', mx.clone()), ('y', yword.clone())]),
    )?;
    // Recurse on the inner bracket m · 𝑌 · m.
    let inner_end = square_chain(rw, bs + 1, bs + 1 + yword.len() + 2)?;
    // Join the m pair: rotate the far m to the front of the interior.
    let w2 = rw.word().clone();
    let mut be2 = inner_end + 1;
    if inner_end - (bs + 1) > 2 {
        let y = w2.slice(bs + 1..inner_end - 1);
        let z = w2.slice(inner_end - 1..inner_end);
        rw.step(
            "bracket-swap",
            Dir::Fwd,
            bs,
            sb(&[('x', lx.clone()), ('y', y), ('z', z)]),
        )?;
    }
    // Collapse any overlong head run of m (defensive; the recursion already
    // keeps m out of its own squares).
    loop {
        let w3 = rw.word().clone();
        let run = (bs + 1..be2 - 1).take_while(|&k| w3[k] == m).count();
        if run <= 2 {
            break;
        }
        rw.step("square-cube", Dir::Bwd, bs + 1, sb(&[('x', mx.clone())]))?;
        be2 -= 1;
    }
    // Merge an interior square of the bracket base into the bracket pair.
    let w4 = rw.word().clone();
    if let Some(k) = (bs + 1..be2 - 1).find(|&k| w4[k].base() == l.base()) {
        debug_assert_eq!(w4[k], l);
        debug_assert_eq!(w4[k + 1], l);
        if k > bs + 1 {
            // Rotate the l² to the front of the interior.
            let y = w4.slice(bs + 1..k);
            let z = w4.slice(k..be2 - 1);
            rw.step(
                "bracket-swap",
                Dir::Fwd,
                bs,
                sb(&[('x', lx.clone()), ('y', y), ('z', z)]),
            )?;
        }
        // l·l·l at the head collapses, then the stray l folds inward.
        rw.step("square-cube", Dir::Bwd, bs, sb(&[('x', lx.clone())]))?;
        be2 -= 1;
        let rest = rw.word().slice(bs + 2..be2 - 1);
        debug_assert!(!rest.is_empty(), "all-l interiors take the uniform path");
        rw.step(
            "inner-dup-left",
            Dir::Bwd,
            bs,
            sb(&[('x', lx.clone()), ('y', rest)]),
        )?;
        be2 -= 1;
        // Restore sortedness: the rotation may have cycled the squares.
        let w5 = rw.word().clone();
        let split = (bs + 2..be2 - 1)
            .step_by(2)
            .find(|&k| w5[k].base() < w5[k - 1].base());
        if let Some(k) = split {
            let y = w5.slice(bs + 1..k);
            let z = w5.slice(k..be2 - 1);
            rw.step(
                "bracket-swap",
                Dir::Fwd,
                bs,
                sb(&[('x', lx.clone()), ('y', y), ('z', z)]),
            )?;
        }
    }
    // Postcondition: a square `l·l` or a bracket of strictly increasing
    // squares avoiding `l`'s base. The head may still be a non-minimal
    // base; the caller rebrackets in that case.
    debug_assert!(
        {
            let s = rw.word().slice(bs..be2);
            let n = s.len();
            n >= 2
                && s[0] == s[n - 1]
                && (n == 2
                    || (n % 2 == 0
                        && (1..n - 1).step_by(2).all(|k| s[k] == s[k + 1])
                        && (1..n - 1).all(|k| s[k].base() != s[0].base())
                        && (3..n - 1).step_by(2).all(|k| s[k].base() > s[k - 2].base())))
        },
        "square_chain postcondition failed on {}",
        rw.word().slice(bs..be2)
    );
    Ok(be2)
}

/// b0 phase 1: dissolve every bracket into a flat square run headed by the
/// doubled bracket base.
fn phase_fuse(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let p = inner_pivot(&w);
        // Find the first bracket: a letter whose partner sits further than
        // one step away.
        let mut target = None;
        let mut k = p + 1;
        while k < n - 1 {
            let l = w[k];
            match (k + 1..n - 1).find(|&j| w[j] == l) {
                Some(j) if j > k + 1 => {
                    target = Some((k, j));
                    break;
                }
                Some(j) => k = j + 1,
                None => k += 1,
            }
        }
        let Some((k, j)) = target else { return Ok(()) };
        let r = w[k];
        let rx = Word::single(r);
        let s = w.slice(k + 1..j);
        // Double the bracket letter on both ends: r·S·r → r·r·S·r·r.
        rw.step(
            "inner-dup-left",
            Dir::Fwd,
            k,
            sb(&[('x', rx.clone()), ('y', s.clone())]),
        )?;
        rw.step(
            "inner-dup-right",
            Dir::Fwd,
            k + 1,
            sb(&[('x', rx.clone()), ('y', s.clone())]),
        )?;
        // Bubble the inner r² leftward across each square of S.
        for step_i in 0..s.len() / 2 {
            let pos = k + s.len() - 2 * step_i;
            let sq = rw.word()[pos];
            rw.step(
                "square-commute",
                Dir::Fwd,
                pos,
                sb(&[('x', Word::single(sq)), ('y', rx.clone())]),
            )?;
        }
        // r⁴ → r².
        rw.step("square-cube", Dir::Bwd, k, sb(&[('x', rx.clone())]))?;
        rw.step("square-cube", Dir::Bwd, k, sb(&[('x', rx)]))?;
    }
}

/// b0 phase 2: bubble-sort adjacent squares by base.
fn phase_square_sort(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let p = inner_pivot(&w);
        let swap = (p + 1..n.saturating_sub(4)).find(|&k| {
            w[k] == w[k + 1]
                && w[k + 2] == w[k + 3]
                && w[k].base() > w[k + 2].base()
        });
        let Some(k) = swap else { return Ok(()) };
        rw.step(
            "square-commute",
            Dir::Fwd,
            k,
            sb(&[('x', Word::single(w[k])), ('y', Word::single(w[k + 2]))]),
        )?;
    }
}

/// b0 phase 3: absorb square runs touching either end of the middle into
/// the prefix, then restore the prefix invariants.
fn phase_boundary(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let f = w[n - 1].star();
        let p = inner_pivot(&w);
        let fx = Word::single(f);
        let mid = w.slice(p + 1..n - 1);
        debug_assert!(!mid.is_empty(), "zero middles are rejected up front");

        if mid.len() >= 2 && mid[0] == mid[1] {
            // Leading run: measure it, then walk the doubled pivot across.
            let mut tlen = 2;
            while tlen + 1 < mid.len() && mid[tlen] == mid[tlen + 1] {
                tlen += 2;
            }
            let rest = w.slice(p + 1 + tlen..n - 1);
            debug_assert!(!rest.is_empty(), "a middle of bare squares is zero");
            rw.step(
                "pivot-dup-left",
                Dir::Bwd,
                p,
                sb(&[('x', fx.clone()), ('T', mid.clone())]),
            )?;
            for i in 0..tlen / 2 {
                let pos = p + 2 * i;
                let sq = rw.word()[pos + 2];
                rw.step(
                    "square-commute",
                    Dir::Fwd,
                    pos,
                    sb(&[('x', fx.clone()), ('y', Word::single(sq))]),
                )?;
            }
            rw.step(
                "pivot-dup-left",
                Dir::Fwd,
                p + tlen,
                sb(&[('x', fx.clone()), ('T', rest)]),
            )?;
            desquare_prefix(rw)?;
            if phase_prefix(rw)? {
                return Err(Error::Rule(format!(
                    "zero shape surfaced at {} on a word gated nonzero",
                    rw.word()
                )));
            }
            continue;
        }
        if mid.len() >= 2 && mid[mid.len() - 1] == mid[mid.len() - 2] {
            // Trailing run.
            let mut tlen = 2;
            while tlen + 1 < mid.len()
                && mid[mid.len() - 1 - tlen] == mid[mid.len() - 2 - tlen]
            {
                tlen += 2;
            }
            let rest = w.slice(p + 1..n - 1 - tlen);
            debug_assert!(!rest.is_empty(), "a middle of bare squares is zero");
            let fs = Word::single(f.star());
            rw.step(
                "pivot-dup-right",
                Dir::Fwd,
                p,
                sb(&[('x', fx.clone()), ('T', mid.clone())]),
            )?;
            for i in 0..tlen / 2 {
                let pos = n - 3 - 2 * i;
                let sq = rw.word()[pos];
                rw.step(
                    "square-commute",
                    Dir::Fwd,
                    pos,
                    sb(&[('x', Word::single(sq)), ('y', fs.clone())]),
                )?;
            }
            rw.step(
                "pivot-dup-right",
                Dir::Bwd,
                p,
                sb(&[('x', fx.clone()), ('T', rest.clone())]),
            )?;
            let tn = rw.word().slice(p + 2 + rest.len()..rw.word().len());
            rw.step(
                "tail-rotate",
                Dir::Fwd,
                p,
                sb(&[('x', fx.clone()), ('T', rest), ('y', tn)]),
            )?;
            desquare_prefix(rw)?;
            if phase_prefix(rw)? {
                return Err(Error::Rule(format!(
                    "zero shape surfaced at {} on a word gated nonzero",
                    rw.word()
                )));
            }
            continue;
        }
        return Ok(());
    }
}

/// Halve every doubled letter in the prefix: desquare at the pivot's
/// shoulder, otherwise rotate the pair onto the shoulder first.
fn desquare_prefix(rw: &mut Rewriter) -> Result<()> {
    loop {
        let w = rw.word().clone();
        let n = w.len();
        let f = w[n - 1].star();
        let p = inner_pivot(&w);
        let fx = Word::single(f);
        let m = w.slice(p + 1..n - 1);
        if p >= 2 && w[p - 2] == w[p - 1] {
            let y = Word::single(w[p - 2]);
            if m.is_empty() {
                rw.step(
                    "prefix-desquare-short",
                    Dir::Fwd,
                    p - 2,
                    sb(&[('y', y), ('x', fx)]),
                )?;
            } else {
                rw.step(
                    "prefix-desquare",
                    Dir::Fwd,
                    p - 2,
                    sb(&[('y', y), ('x', fx), ('T', m)]),
                )?;
            }
            continue;
        }
        let Some(i) = (0..p.saturating_sub(1)).find(|&k| w[k] == w[k + 1]) else {
            return Ok(());
        };
        let y = w.slice(i..i + 2);
        let z = w.slice(i + 2..p);
        prefix_rotate(rw, i, &fx, &y, &z, &m)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::model::Assignment;
    use crate::word::w;

    fn a_norm(text: &str) -> (Word, DerivationTrace) {
        let (form, trace) = normalize_a(&w(text)).unwrap();
        (form.word(), trace)
    }

    fn b_norm(text: &str) -> (Word, DerivationTrace) {
        let (form, trace) = normalize_b(&w(text)).unwrap();
        (form.word(), trace)
    }

    /// Both words take the same value under every assignment into the model.
    fn model_equal(model: &crate::model::InvolutionSemigroup, u: &Word, v: &Word) -> bool {
        let mut bases = u.bases();
        bases.extend(v.bases());
        let bases: Vec<u8> = bases.into_iter().collect();
        Assignment::all(&bases, model.order()).all(|asg| model.eval(u, &asg) == model.eval(v, &asg))
    }

    #[test]
    fn standard_parser_accepts_and_rejects() {
        for text in ["xx*", "x*x", "axx*", "abxccx*", "xabbax*", "xaax*", "axbccddbx*"] {
            assert!(is_a_standard(&w(text)), "{text} should be standard");
        }
        for text in [
            "x", "xx", "xx*a", "baxx*", "xaaax*", "xabax*", "cxcx*", "xxx*",
            "xcbbcx*", // bracket base not minimal
            "xaccax*b", // trailing letter not the pivot star
        ] {
            assert!(!is_a_standard(&w(text)), "{text} should not be standard");
        }
    }

    #[test]
    fn b_standard_parser_accepts_and_rejects() {
        for text in ["xax*", "xayybzzcx*", "axbyycx*"] {
            assert!(is_b_standard(&w(text)), "{text} should be b-standard");
        }
        for text in [
            "xx*",      // empty middle
            "xaax*",    // middle starts (and ends) with a square
            "xayyx*",   // ends with a square
            "xabbax*",  // bracket survives
            "xbyyax*c", // bad tail
        ] {
            assert!(!is_b_standard(&w(text)), "{text} should not be b-standard");
        }
    }

    #[test]
    fn flip_preserves_standardness() {
        let form = parse_a_standard(&w("abxcddcefx*")).unwrap();
        let flipped = form.flip();
        assert!(is_a_standard(&flipped.word()));
        assert_eq!(flipped.flip().word(), form.word());
        let form = parse_b_standard(&w("xayybzzcx*")).unwrap();
        let flipped = form.flip();
        assert!(is_b_standard(&flipped.word()), "{}", flipped.word());
        assert_eq!(flipped.word().render(), "xc*z*z*b*y*y*a*x*");
    }

    #[test]
    fn already_standard_words_return_empty_traces() {
        let (nf, trace) = a_norm("abxccx*");
        assert_eq!(nf.render(), "abxccx*");
        assert!(trace.is_empty());
    }

    #[test]
    fn normalization_fixtures() {
        for (input, expected) in [
            ("xxx*x*", "xx*"),
            ("xyx*y*", "xyy*"),
            ("yxx*z", "xyz*z"),
            ("xabax*", "xabbax*"),
            ("xbabx*", "xabbax*"),
            ("x^2yx*", "xyx*"),
            ("zyxx*", "xyzz*"),
            ("xyzyx*", "xyzzyx*"),
        ] {
            let (nf, _) = a_norm(input);
            assert_eq!(nf.render(), expected, "normal form of {input}");
        }
    }

    #[test]
    fn traces_replay_and_preserve_model_value() {
        let model = catalog::a0();
        let system = RuleSystem::a0();
        for input in [
            "xxx*x*", "xyx*y*", "yxx*z", "xabax*", "xbabx*", "xyzyx*",
            "ayxya", "x*yx", "zxyx*y", "xyxzx*", "bax*xa", "x*x*x",
            "xaabx*", "xybay*", "cbax^2x*",
        ] {
            let word = w(input);
            match normalize_a(&word) {
                Ok((form, trace)) => {
                    let end = trace.verify(&system).unwrap();
                    assert_eq!(end, form.word(), "{input}");
                    assert_eq!(trace.start, word.render(), "{input}");
                    assert!(is_a_standard(&end), "{input} → {end}");
                    assert!(model_equal(&model, &word, &end), "{input} vs {end}");
                }
                Err(Error::Domain(_)) => {
                    // Zero or unmixed inputs are fine to reject, but only if
                    // the model agrees there is nothing to normalize.
                    assert!(
                        !word.is_mixed() || model.satisfies_zero(&word),
                        "{input} rejected although mixed and nonzero"
                    );
                }
                Err(e) => panic!("{input}: {e}"),
            }
        }
    }

    #[test]
    fn b_normalization_fixtures() {
        for (input, expected) in [
            ("xyx*", "xyx*"),
            ("xaybbzx*", "xaybbzx*"),
            ("xbbayx*", "bxayx*"),
            ("xabbacx*", "abxcx*"), // the bracket dissolves and its run escapes
        ] {
            let (nf, _) = b_norm(input);
            assert_eq!(nf.render(), expected, "b-normal form of {input}");
        }
    }

    #[test]
    fn b_traces_replay_and_preserve_model_value() {
        let model = catalog::b0();
        let system = RuleSystem::b0();
        for input in [
            "xyx*", "xabax*", "xbabx*", "xaybbzx*", "xbbayx*", "ayxya",
            "zxyx*y", "xyxzx*", "xybay*", "xaabbyx*", "yxabay",
        ] {
            let word = w(input);
            match normalize_b(&word) {
                Ok((form, trace)) => {
                    let end = trace.verify(&system).unwrap();
                    assert_eq!(end, form.word(), "{input}");
                    assert!(is_b_standard(&end), "{input} → {end}");
                    assert!(model_equal(&model, &word, &end), "{input} vs {end}");
                }
                Err(Error::Domain(_)) => {
                    assert!(
                        !word.is_mixed() || model.satisfies_zero(&word),
                        "{input} rejected although mixed and b0-nonzero"
                    );
                }
                Err(e) => panic!("{input}: {e}"),
            }
        }
    }

    #[test]
    fn zero_and_unmixed_words_are_rejected() {
        assert!(matches!(normalize_a(&w("abc")), Err(Error::Domain(_))));
        assert!(matches!(normalize_a(&w("xx*x")), Err(Error::Domain(_))));
        assert!(matches!(normalize_b(&w("yxx*z")), Err(Error::Domain(_))));
        assert!(matches!(normalize_b(&w("xyyx*")), Err(Error::Domain(_))));
    }
}
