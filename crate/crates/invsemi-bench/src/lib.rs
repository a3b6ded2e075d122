//! Shared fixtures for the workbench benchmarks.

use invsemi::word::Word;

/// A deterministic batch of mixed words that are nonzero in the a0 system,
/// spanning short pivot patterns up to longer multi-base shapes.
pub fn mixed_nonzero_words() -> Vec<Word> {
    [
        "xyx*",
        "xy*x*",
        "x*yx",
        "abca*",
        "ab*ca*",
        "aabca*",
        "abcb*a*",
        "cbab*a*",
        "aabbca*",
        "abacb*c*",
        "xaayx*",
        "babab*",
    ]
    .iter()
    .map(|s| Word::parse(s).expect("fixture words parse"))
    .collect()
}

/// Identity pairs that exercise every branch of the decision procedure:
/// projection, zero certificates, and canonical comparison.
pub fn decision_pairs() -> Vec<(Word, Word)> {
    [
        ("xx", "xxx"),
        ("xy", "yx"),
        ("xyx*", "xy*x*"),
        ("xx*", "x*x"),
        ("xx*x", "xyx*"),
        ("abcab*c", "aa*a"),
        ("xx*", "yy"),
    ]
    .iter()
    .map(|(l, r)| {
        (
            Word::parse(l).expect("fixture words parse"),
            Word::parse(r).expect("fixture words parse"),
        )
    })
    .collect()
}
