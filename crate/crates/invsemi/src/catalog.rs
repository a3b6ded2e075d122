//! Named models and the published classification table for order 4.
//!
//! The two central models are `a0` and `b0`: order-4 involution semigroups
//! that differ in a single table entry (`4·3`). Their star-free quotient
//! `sl3` (the three-element semilattice whose two atoms are swapped by `*`)
//! is what separates mixed words from bipartite words in the decision
//! procedures.
//!
//! [`table1`] lists one representative per star-isomorphism class of
//! order-4 involution semigroups with nontrivial involution, 25 in all,
//! each tagged with its finite-basis label.

use std::sync::LazyLock;

use crate::model::InvolutionSemigroup;

/// One row of the order-4 classification.
pub struct Table1Entry {
    /// Published row name, `A1`–`A9`, `B1`–`B9`, `C1`–`C7`.
    pub name: &'static str,
    /// `n=4 mul=… inv=…` text of the representative.
    pub text: &'static str,
    /// Finite-basis label: `C1`–`C4` for the four sufficient conditions,
    /// `A0`/`B0` for the two rows that are the models themselves.
    pub label: &'static str,
    pub model: InvolutionSemigroup,
}

const TABLE1_ROWS: [(&str, &str, &str); 25] = [
    ("A1", "n=4 mul=1111121111311114 inv=1243", "C1"),
    ("A2", "n=4 mul=1111121211331234 inv=1324", "C1"),
    ("A3", "n=4 mul=1111122212321224 inv=1243", "C1"),
    ("A4", "n=4 mul=1133224411332244 inv=4231", "C3"),
    ("A5", "n=4 mul=2111122212221222 inv=1243", "C1"),
    ("A6", "n=4 mul=2111122212321224 inv=1243", "C1"),
    ("A7", "n=4 mul=2122121121222122 inv=1243", "C1"),
    ("A8", "n=4 mul=2143123443123421 inv=1243", "C1"),
    ("A9", "n=4 mul=2143123443213412 inv=1243", "C1"),
    ("B1", "n=4 mul=2212222212342242 inv=4231", "C1"),
    ("B2", "n=4 mul=2212222222342222 inv=4231", "C4"),
    ("B3", "n=4 mul=2222222222112211 inv=1243", "C1"),
    ("B4", "n=4 mul=2222222222112221 inv=1243", "C2"),
    ("B5", "n=4 mul=2222222222122221 inv=1243", "C1"),
    ("B6", "n=4 mul=2222222222212212 inv=1243", "C1"),
    ("B7", "n=4 mul=2222222222212222 inv=1243", "C2"),
    ("B8", "n=4 mul=2222222222222222 inv=3214", "C1"),
    ("B9", "n=4 mul=2222222222222224 inv=3214", "C1"),
    ("C1", "n=4 mul=2222222222322224 inv=1243", "C1"),
    ("C2", "n=4 mul=2224222422244444 inv=3214", "C1"),
    ("C3", "n=4 mul=2234223433424423 inv=1243", "C1"),
    ("C4", "n=4 mul=2311312212331234 inv=2134", "C1"),
    ("C5", "n=4 mul=2314312412344444 inv=2134", "C1"),
    ("C6", "n=4 mul=2212222222321214 inv=1243", "A0"),
    ("C7", "n=4 mul=2212222222321224 inv=1243", "B0"),
];

static TABLE1: LazyLock<Vec<Table1Entry>> = LazyLock::new(|| {
    TABLE1_ROWS
        .iter()
        .map(|&(name, text, label)| Table1Entry {
            name,
            text,
            label,
            model: InvolutionSemigroup::parse_text(text)
                .unwrap_or_else(|e| panic!("catalog row {name} is invalid: {e}")),
        })
        .collect()
});

/// The 25 order-4 representatives with nontrivial involution.
pub fn table1() -> &'static [Table1Entry] {
    &TABLE1
}

/// Find the classification row star-isomorphic to `s`, if any.
pub fn match_table1(s: &InvolutionSemigroup) -> Option<&'static Table1Entry> {
    if s.order() != 4 {
        return None;
    }
    let key = s.canonical_key_star();
    table1().iter().find(|e| e.model.canonical_key_star() == key)
}

const NAMED: [(&str, &str); 8] = [
    // The two four-element models whose identities this crate rewrites with.
    ("a0", "n=4 mul=2212222222321214 inv=1243"),
    ("b0", "n=4 mul=2212222222321224 inv=1243"),
    // Their common quotient: semilattice 1 < {2, 3} with the atoms swapped.
    ("sl3", "n=3 mul=111121113 inv=132"),
    // Order 2: semilattice, null semigroup, two-element group.
    ("y2", "n=2 mul=1112 inv=12"),
    ("n2", "n=2 mul=2222 inv=12"),
    ("z2", "n=2 mul=1221 inv=12"),
    // Order 3 with a nontrivial star: zero multiplication and the cyclic
    // group under inversion (sl3 above is the third).
    ("s3", "n=3 mul=111111111 inv=132"),
    ("z3", "n=3 mul=123231312 inv=132"),
];

static NAMED_MODELS: LazyLock<Vec<(&'static str, InvolutionSemigroup)>> = LazyLock::new(|| {
    NAMED
        .iter()
        .map(|&(name, text)| {
            (
                name,
                InvolutionSemigroup::parse_text(text)
                    .unwrap_or_else(|e| panic!("named model {name} is invalid: {e}")),
            )
        })
        .collect()
});

/// Look up a model by name: `a0`, `b0`, `sl3`, `y2`, `n2`, `z2`, `s3`,
/// `z3`, or a classification row name (`a1`…`c7`, case-insensitive).
pub fn lookup(name: &str) -> Option<InvolutionSemigroup> {
    let lower = name.to_ascii_lowercase();
    if let Some((_, m)) = NAMED_MODELS.iter().find(|(n, _)| *n == lower) {
        return Some(m.clone());
    }
    table1()
        .iter()
        .find(|e| e.name.to_ascii_lowercase() == lower)
        .map(|e| e.model.clone())
}

/// All lookup names, for CLI help and error messages.
pub fn model_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = NAMED.iter().map(|&(n, _)| n).collect();
    names.extend(table1().iter().map(|e| e.name));
    names
}

/// The model `a0`.
pub fn a0() -> InvolutionSemigroup {
    lookup("a0").unwrap()
}

/// The model `b0`.
pub fn b0() -> InvolutionSemigroup {
    lookup("b0").unwrap()
}

/// The quotient semilattice `sl3`.
pub fn sl3() -> InvolutionSemigroup {
    lookup("sl3").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Assignment;
    use crate::word::w;

    #[test]
    fn every_row_validates() {
        // Construction already runs both axiom checks; force it for all 25.
        assert_eq!(table1().len(), 25);
        for e in table1() {
            assert_eq!(e.model.order(), 4);
            assert!(
                !e.model.is_trivial_involution(),
                "{} should have a nontrivial star",
                e.name
            );
        }
    }

    #[test]
    fn rows_are_pairwise_non_isomorphic() {
        let mut keys: Vec<_> = table1()
            .iter()
            .map(|e| e.model.canonical_key_star())
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 25);
    }

    #[test]
    fn label_multiset_matches_classification() {
        let count = |l: &str| table1().iter().filter(|e| e.label == l).count();
        assert_eq!(count("C1"), 19);
        assert_eq!(count("C2"), 2);
        assert_eq!(count("C3"), 1);
        assert_eq!(count("C4"), 1);
        assert_eq!(count("A0"), 1);
        assert_eq!(count("B0"), 1);
    }

    #[test]
    fn a0_and_b0_differ_in_one_entry() {
        let (a, b) = (a0(), b0());
        let diff: Vec<usize> = (0..16)
            .filter(|&i| a.table().digits()[i] != b.table().digits()[i])
            .collect();
        assert_eq!(diff, vec![14]); // the product 4·3
        assert_eq!(a.mul(4, 3), 1);
        assert_eq!(b.mul(4, 3), 2);
        assert_eq!(a.inv_digits(), b.inv_digits());
    }

    #[test]
    fn a0_b0_spot_values() {
        let a = a0();
        assert_eq!(a.table().zero_element(), Some(2));
        assert_eq!(a.mul(1, 4), 2);
        assert_eq!(a.mul(1, 3), 1);
        assert_eq!(a.mul(4, 1), 1);
        assert_eq!(a.mul(3, 3), 3);
        assert_eq!(a.mul(4, 4), 4);
        assert_eq!(a.star(3), 4);
        assert_eq!(a.star(4), 3);
        // b0 satisfies xx* ≈ 0, a0 does not.
        assert!(b0().satisfies_zero(&w("xx*")));
        assert!(!a0().satisfies_zero(&w("xx*")));
    }

    #[test]
    fn a0_fails_square_commutation() {
        // x²y² ≈ y²x² separates b0 from a0.
        let a = a0();
        let ce = a.counterexample(&w("xxyy"), &w("yyxx")).unwrap();
        assert_eq!((ce.get(b'x'), ce.get(b'y')), (3, 4));
        let asgn = Assignment::from_pairs([(b'x', 3), (b'y', 4)]);
        assert_eq!(a.eval(&w("xxyy"), &asgn), 2);
        assert_eq!(a.eval(&w("yyxx"), &asgn), 1);
        assert!(b0().satisfies(&w("xxyy"), &w("yyxx")));
    }

    #[test]
    fn quotient_onto_sl3() {
        // Collapsing 2 onto 1 maps both models onto the semilattice.
        let q = [1u8, 1, 2, 3];
        assert_eq!(a0().star_homomorphism_failure(&q, &sl3()), None);
        assert_eq!(b0().star_homomorphism_failure(&q, &sl3()), None);
    }

    #[test]
    fn lookup_is_case_insensitive_and_total() {
        for name in model_names() {
            assert!(lookup(name).is_some(), "lookup failed for {name}");
            assert!(lookup(&name.to_uppercase()).is_some());
        }
        assert!(lookup("nope").is_none());
        // Row C6 is a0 and row C7 is b0, on the nose.
        assert!(lookup("c6").unwrap().is_star_isomorphic(&a0()));
        assert_eq!(lookup("c6").unwrap().render_text(), a0().render_text());
        assert_eq!(lookup("c7").unwrap().render_text(), b0().render_text());
    }

    #[test]
    fn order_two_and_three_models() {
        for name in ["y2", "n2", "z2"] {
            assert!(lookup(name).unwrap().is_trivial_involution());
        }
        for name in ["s3", "sl3", "z3"] {
            assert!(!lookup(name).unwrap().is_trivial_involution());
        }
        // z3 is a group: the involution is inversion.
        let z3 = lookup("z3").unwrap();
        for a in z3.elements() {
            assert_eq!(z3.mul(a, z3.star(a)), 1);
        }
    }
}
