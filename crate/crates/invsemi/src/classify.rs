//! Finite-basis classification of small involution semigroups.
//!
//! Each model is matched against a priority list of sufficient conditions
//! for having a finite identity basis; the first hit decides the verdict.
//! The two order-4 models that none of the general conditions cover, `a0`
//! and `b0`, are recognized up to star-isomorphism and pointed at the
//! explicit bases carried in [`crate::rules`].

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::enumerate::Census;
use crate::model::InvolutionSemigroup;
use crate::word::w;

/// Outcome of the classifier, in priority order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The involution is the identity map, so the table is commutative and
    /// the equational theory is that of a plain finite commutative
    /// semigroup — finitely based by Perkins' theorem.
    TrivialInvolution,
    /// Commutative table with a nontrivial involution.
    PeriodicCommutative,
    /// Satisfies `x₁⋯x_d ≈ 0` with `d` at most the order.
    ZeroNilpotent { degree: u32 },
    /// Satisfies `xyz ≈ xz`.
    MiddleDeleting,
    /// Periodic, satisfies a nontrivial permutation identity, and the star
    /// commutes past conjugating pivots: `x*tx ≈ xtx ≈ xtx*` together with
    /// the short forms `x*x ≈ xx ≈ xx*`.
    PeriodicPermutative { length: usize, perm: Vec<usize> },
    /// Star-isomorphic to a model with a hand-built identity basis.
    KnownBasis(KnownBasisId),
    /// None of the conditions matched.
    Unresolved { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownBasisId {
    A0,
    B0,
}

impl Verdict {
    /// Short label as used in the published order-4 table (`C1`–`C4`),
    /// extended with `C0` for trivial involutions, `A0`/`B0` for the two
    /// special models, and `?` for unresolved.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::TrivialInvolution => "C0",
            Verdict::PeriodicCommutative => "C1",
            Verdict::ZeroNilpotent { .. } => "C2",
            Verdict::MiddleDeleting => "C3",
            Verdict::PeriodicPermutative { .. } => "C4",
            Verdict::KnownBasis(KnownBasisId::A0) => "A0",
            Verdict::KnownBasis(KnownBasisId::B0) => "B0",
            Verdict::Unresolved { .. } => "?",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: String,
}

/// Classify one model. `perm_bound` caps the length of permutation
/// identities searched for the periodic-permutative condition.
pub fn classify(s: &InvolutionSemigroup, perm_bound: usize) -> Classification {
    let t = s.table();
    let (index, period) = t.global_index_period();

    if s.is_trivial_involution() {
        return Classification {
            verdict: Verdict::TrivialInvolution,
            evidence: "the involution is the identity map, so the table is commutative and \
                       the theory reduces to a finite commutative semigroup, which has a \
                       finite identity basis (Perkins)"
                .into(),
        };
    }
    if t.is_commutative() {
        return Classification {
            verdict: Verdict::PeriodicCommutative,
            evidence: format!(
                "commutative, periodic with index {index} and period {period}"
            ),
        };
    }
    if let Some(d) = t.nilpotency_degree() {
        if d <= t.order() as u32 {
            return Classification {
                verdict: Verdict::ZeroNilpotent { degree: d },
                evidence: format!(
                    "every product of {d} elements equals the zero element {}",
                    t.zero_element().expect("nilpotent tables have a zero")
                ),
            };
        }
    }
    if t.satisfies_xyz_eq_xz() {
        return Classification {
            verdict: Verdict::MiddleDeleting,
            evidence: "satisfies xyz ≈ xz: products are determined by their first and \
                       last factors"
                .into(),
        };
    }
    // Star-pivot exchange first: it is four cheap checks, and models that
    // fail it skip the factorially-growing permutation search.
    let pivot_laws = [
        ("x*tx ≈ xtx", w("x*tx"), w("xtx")),
        ("xtx ≈ xtx*", w("xtx"), w("xtx*")),
        ("x*x ≈ xx", w("x*x"), w("xx")),
        ("xx ≈ xx*", w("xx"), w("xx*")),
    ];
    let pivot_ok = pivot_laws.iter().all(|(_, l, r)| s.satisfies(l, r));
    if pivot_ok {
        if let Some((m, pi)) = t.find_permutation_identity(perm_bound) {
            let perm_word = |order: &[usize]| {
                order
                    .iter()
                    .map(|i| format!("x{}", i + 1))
                    .collect::<String>()
            };
            let id: Vec<usize> = (0..m).collect();
            return Classification {
                evidence: format!(
                    "periodic (index {index}, period {period}), satisfies the permutation \
                     identity {} ≈ {} and the star-pivot exchange laws x*tx ≈ xtx ≈ xtx*, \
                     x*x ≈ xx ≈ xx*",
                    perm_word(&id),
                    perm_word(&pi)
                ),
                verdict: Verdict::PeriodicPermutative { length: m, perm: pi },
            };
        }
    }
    for (id, model) in [
        (KnownBasisId::A0, catalog::a0()),
        (KnownBasisId::B0, catalog::b0()),
    ] {
        if s.is_star_isomorphic(&model) {
            let name = match id {
                KnownBasisId::A0 => "a0",
                KnownBasisId::B0 => "b0",
            };
            return Classification {
                verdict: Verdict::KnownBasis(id),
                evidence: format!(
                    "star-isomorphic to {name}, for which an explicit identity basis is \
                     carried in the rules module"
                ),
            };
        }
    }
    let reason = if pivot_ok {
        format!(
            "satisfies the star-pivot exchange laws but no permutation identity of \
             length at most {perm_bound}; a larger --perm-bound may decide it"
        )
    } else {
        "no sufficient condition matched".to_string()
    };
    Classification {
        verdict: Verdict::Unresolved { reason: reason.clone() },
        evidence: reason,
    }
}

/// One classified census entry, shaped for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedEntry {
    /// Canonical multiplication digits of the representative.
    pub canonical_table: String,
    /// Involution digits.
    pub inv: String,
    /// Verdict label: `C0`–`C4`, `A0`, `B0`, or `?`.
    pub verdict: String,
    pub evidence: String,
    /// Name of the star-isomorphic published order-4 row, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1_name: Option<String>,
}

/// Classify every star class of a census.
pub fn classify_census(census: &Census, perm_bound: usize) -> Vec<ClassifiedEntry> {
    census
        .star_reps
        .iter()
        .map(|s| {
            let c = classify(s, perm_bound);
            ClassifiedEntry {
                canonical_table: crate::model::digits_string(s.table().digits()),
                inv: crate::model::digits_string(s.inv_digits()),
                verdict: c.verdict.label().to_string(),
                evidence: c.evidence,
                table1_name: catalog::match_table1(s).map(|e| e.name.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_reproduces_all_published_labels() {
        for e in catalog::table1() {
            let got = classify(&e.model, 6);
            assert_eq!(
                got.verdict.label(),
                e.label,
                "{}: expected {}, got {:?} with evidence {:?}",
                e.name,
                e.label,
                got.verdict,
                got.evidence
            );
        }
    }

    #[test]
    fn known_models_get_their_own_labels() {
        assert_eq!(classify(&catalog::a0(), 6).verdict.label(), "A0");
        assert_eq!(classify(&catalog::b0(), 6).verdict.label(), "B0");
        assert_eq!(classify(&catalog::sl3(), 6).verdict.label(), "C1");
        assert_eq!(
            classify(&catalog::lookup("y2").unwrap(), 6).verdict.label(),
            "C0"
        );
    }

    #[test]
    fn order_three_census_classifies_cleanly() {
        let census = crate::enumerate::census(3);
        let entries = classify_census(&census, 6);
        let count = |l: &str| entries.iter().filter(|e| e.verdict == l).count();
        assert_eq!(count("C0"), 12);
        assert_eq!(count("C1"), 3);
        assert_eq!(count("?"), 0);
        // Order-3 models never match the order-4 table.
        assert!(entries.iter().all(|e| e.table1_name.is_none()));
    }

    #[test]
    fn nilpotence_degree_of_b4_is_three() {
        let b4 = catalog::lookup("b4").unwrap();
        match classify(&b4, 6).verdict {
            Verdict::ZeroNilpotent { degree } => assert_eq!(degree, 3),
            v => panic!("b4 should be zero-nilpotent, got {v:?}"),
        }
    }

    #[test]
    fn tiny_perm_bound_leaves_b2_unresolved() {
        let b2 = catalog::lookup("b2").unwrap();
        match classify(&b2, 2).verdict {
            Verdict::Unresolved { reason } => {
                assert!(reason.contains("perm-bound"), "reason was {reason:?}")
            }
            v => panic!("expected unresolved at bound 2, got {v:?}"),
        }
        match classify(&b2, 6).verdict {
            Verdict::PeriodicPermutative { length, .. } => assert!(length <= 6),
            v => panic!("expected C4 at bound 6, got {v:?}"),
        }
    }
}
