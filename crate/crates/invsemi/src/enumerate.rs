//! Census of small semigroups and involution semigroups.
//!
//! The pipeline is: enumerate every associative table on the labeled set
//! `{1..n}` by backtracking (associativity is re-checked incrementally as
//! cells are filled, so dead branches are cut early), reduce to canonical
//! representatives up to isomorphism and up to iso/anti-isomorphism, then
//! attach every involution to each isomorphism representative and reduce
//! again under star-isomorphism.
//!
//! Orders up to 4 take well under a second; order 5 enumerates 183 732
//! labeled tables and is noticeably slower, which is why callers gate it.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{digits_string, parse_digits, InvolutionSemigroup, Table};

/// Which identification is applied to raw tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Equivalence {
    /// Renaming of elements.
    Iso,
    /// Renaming, possibly composed with reversal of the multiplication.
    IsoAnti,
    /// Renaming preserving both multiplication and involution.
    Star,
}

impl Equivalence {
    pub fn tag(self) -> &'static str {
        match self {
            Equivalence::Iso => "iso",
            Equivalence::IsoAnti => "iso-anti",
            Equivalence::Star => "star",
        }
    }
}

/// Stream every associative table of order `n` (labeled, no identification)
/// to `f` as a row-major digit slice; returns how many there were.
pub fn enumerate_labeled(n: u8, mut f: impl FnMut(&[u8])) -> u64 {
    let nn = n as usize;
    let mut mul = vec![0u8; nn * nn];
    let mut count = 0u64;
    fill_cell(n, &mut mul, 0, &mut count, &mut f);
    count
}

fn fill_cell(n: u8, mul: &mut [u8], cell: usize, count: &mut u64, f: &mut impl FnMut(&[u8])) {
    let nn = n as usize;
    if cell == nn * nn {
        *count += 1;
        f(mul);
        return;
    }
    let (a, b) = ((cell / nn) as u8 + 1, (cell % nn) as u8 + 1);
    for c in 1..=n {
        mul[cell] = c;
        if partial_ok(n, mul, a, b) {
            fill_cell(n, mul, cell + 1, count, f);
        }
    }
    mul[cell] = 0;
}

/// Incremental associativity: with the cell `(a,b)` freshly set, check every
/// triple one of whose four table reads is that cell. A triple is compared
/// only once both sides evaluate through defined cells, so each triple is
/// fully verified at the moment its last read becomes defined.
fn partial_ok(n: u8, mul: &[u8], a: u8, b: u8) -> bool {
    let nn = n as usize;
    let get = |x: u8, y: u8| mul[(x as usize - 1) * nn + (y as usize - 1)];
    let triple_ok = |x: u8, y: u8, z: u8| {
        let xy = get(x, y);
        let yz = get(y, z);
        if xy == 0 || yz == 0 {
            return true;
        }
        let lhs = get(xy, z);
        let rhs = get(x, yz);
        lhs == 0 || rhs == 0 || lhs == rhs
    };
    for t in 1..=n {
        // reads (x,y) = (a,b) and (y,z) = (a,b)
        if !triple_ok(a, b, t) || !triple_ok(t, a, b) {
            return false;
        }
    }
    // reads (x·y, z) = (a,b): triples (x, y, b) with x·y = a
    // reads (x, y·z) = (a,b): triples (a, y, z) with y·z = b
    for x in 1..=n {
        for y in 1..=n {
            let p = get(x, y);
            if p == a && !triple_ok(x, y, b) {
                return false;
            }
            if p == b && !triple_ok(a, x, y) {
                return false;
            }
        }
    }
    true
}

/// Representatives of order-`n` semigroups and involution semigroups.
pub struct Census {
    pub n: u8,
    /// Canonical tables, one per isomorphism class, sorted.
    pub iso_reps: Vec<Table>,
    /// Canonical tables, one per class under iso and anti-iso, sorted.
    pub iso_anti_reps: Vec<Table>,
    /// Canonical models, one per star-isomorphism class, sorted.
    pub star_reps: Vec<InvolutionSemigroup>,
}

/// Run the full census for order `n`.
pub fn census(n: u8) -> Census {
    let mut labeled: Vec<Vec<u8>> = Vec::new();
    enumerate_labeled(n, |mul| labeled.push(mul.to_vec()));

    let keys: Vec<(Vec<u8>, Vec<u8>)> = labeled
        .par_iter()
        .map(|mul| {
            let t = Table::new_unchecked(n, mul.clone());
            (t.canonical_key_iso(), t.canonical_key_iso_anti())
        })
        .collect();
    let mut iso_keys = BTreeSet::new();
    let mut iso_anti_keys = BTreeSet::new();
    for (i, ia) in keys {
        iso_keys.insert(i);
        iso_anti_keys.insert(ia);
    }

    // A canonical key is itself a table (the least relabeling), so the key
    // sets double as representative sets.
    let iso_reps: Vec<Table> = iso_keys
        .into_iter()
        .map(|mul| Table::new_unchecked(n, mul))
        .collect();
    let iso_anti_reps: Vec<Table> = iso_anti_keys
        .into_iter()
        .map(|mul| Table::new_unchecked(n, mul))
        .collect();

    let star_keys: BTreeSet<Vec<u8>> = iso_reps
        .par_iter()
        .flat_map_iter(|t| {
            t.involutions_of().into_iter().map(|inv| {
                InvolutionSemigroup::new(t.clone(), inv)
                    .expect("search returned a non-involution")
                    .canonical_key_star()
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let star_reps: Vec<InvolutionSemigroup> = star_keys
        .into_iter()
        .map(|key| {
            let nn = n as usize;
            let table = Table::new_unchecked(n, key[..nn * nn].to_vec());
            InvolutionSemigroup::new(table, key[nn * nn..].to_vec())
                .expect("canonical star key must be a valid model")
        })
        .collect();

    Census {
        n,
        iso_reps,
        iso_anti_reps,
        star_reps,
    }
}

/// Flat summary of a [`Census`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u8,
    /// Equivalence used for the involution counts.
    pub equivalence: String,
    pub semigroups_up_to_iso: usize,
    pub semigroups_up_to_iso_antiiso: usize,
    /// Classes (up to iso and anti-iso) admitting no involution at all.
    pub no_involution: usize,
    /// Involution semigroups up to star-isomorphism.
    pub involution_semigroups: usize,
    /// Star classes whose involution is the identity map.
    pub trivial_involution: usize,
    pub nontrivial_involution: usize,
}

impl Census {
    pub fn report(&self) -> CensusReport {
        let no_involution = self
            .iso_anti_reps
            .iter()
            .filter(|t| t.involutions_of().is_empty())
            .count();
        let trivial = self
            .star_reps
            .iter()
            .filter(|s| s.is_trivial_involution())
            .count();
        CensusReport {
            n: self.n,
            equivalence: Equivalence::Star.tag().to_string(),
            semigroups_up_to_iso: self.iso_reps.len(),
            semigroups_up_to_iso_antiiso: self.iso_anti_reps.len(),
            no_involution,
            involution_semigroups: self.star_reps.len(),
            trivial_involution: trivial,
            nontrivial_involution: self.star_reps.len() - trivial,
        }
    }
}

/// Number of involutions of `t` up to conjugation by automorphisms of `t`.
/// Summed over isomorphism representatives this equals the number of
/// star-isomorphism classes, which the tests exploit as a cross-check.
pub fn involution_orbit_count(t: &Table) -> usize {
    let autos = t.automorphisms();
    let invs = t.involutions_of();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut orbits = 0;
    for inv in &invs {
        if seen.contains(inv) {
            continue;
        }
        orbits += 1;
        for p in &autos {
            // conjugate: a ↦ p(inv(p⁻¹(a)))
            let mut pinv = vec![0u8; p.len()];
            for (i, &v) in p.iter().enumerate() {
                pinv[v as usize - 1] = i as u8 + 1;
            }
            let conj: Vec<u8> = (1..=t.order())
                .map(|a| p[inv[pinv[a as usize - 1] as usize - 1] as usize - 1])
                .collect();
            seen.insert(conj);
        }
    }
    orbits
}

fn cache_path(dir: &Path, n: u8, eq: Equivalence) -> PathBuf {
    dir.join(format!("census-n{}-{}.txt", n, eq.tag()))
}

/// Write all three representative lists under `dir`.
pub fn write_cache(dir: &Path, census: &Census) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (eq, lines) in cache_sections(census) {
        let mut out = fs::File::create(cache_path(dir, census.n, eq))?;
        writeln!(out, "# census n={} equivalence={}", census.n, eq.tag())?;
        for line in lines {
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}

fn cache_sections(census: &Census) -> Vec<(Equivalence, Vec<String>)> {
    vec![
        (
            Equivalence::Iso,
            census
                .iso_reps
                .iter()
                .map(|t| digits_string(t.digits()))
                .collect(),
        ),
        (
            Equivalence::IsoAnti,
            census
                .iso_anti_reps
                .iter()
                .map(|t| digits_string(t.digits()))
                .collect(),
        ),
        (
            Equivalence::Star,
            census
                .star_reps
                .iter()
                .map(|s| {
                    format!(
                        "{} {}",
                        digits_string(s.table().digits()),
                        digits_string(s.inv_digits())
                    )
                })
                .collect(),
        ),
    ]
}

/// Load a census previously written with [`write_cache`]. Returns
/// `Ok(None)` when any of the three files is missing; malformed content is
/// an error rather than a silent re-enumeration.
pub fn read_cache(dir: &Path, n: u8) -> Result<Option<Census>> {
    let mut sections: Vec<Vec<String>> = Vec::new();
    for eq in [Equivalence::Iso, Equivalence::IsoAnti, Equivalence::Star] {
        let path = cache_path(dir, n, eq);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let expect = format!("# census n={} equivalence={}", n, eq.tag());
        if header != expect {
            return Err(Error::Domain(format!(
                "cache file {} has header {header:?}, expected {expect:?}",
                path.display()
            )));
        }
        sections.push(lines.map(|l| l.to_string()).collect());
    }
    let parse_table = |digits: &str| -> Result<Table> { Table::new(n, parse_digits(digits)?) };
    let iso_reps = sections[0]
        .iter()
        .map(|l| parse_table(l.trim()))
        .collect::<Result<Vec<_>>>()?;
    let iso_anti_reps = sections[1]
        .iter()
        .map(|l| parse_table(l.trim()))
        .collect::<Result<Vec<_>>>()?;
    let star_reps = sections[2]
        .iter()
        .map(|l| {
            let mut parts = l.split_whitespace();
            let (mul, inv) = (
                parts.next().unwrap_or_default(),
                parts.next().unwrap_or_default(),
            );
            InvolutionSemigroup::new(parse_table(mul)?, parse_digits(inv)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Census {
        n,
        iso_reps,
        iso_anti_reps,
        star_reps,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn labeled_counts_small_orders() {
        assert_eq!(enumerate_labeled(1, |_| ()), 1);
        assert_eq!(enumerate_labeled(2, |_| ()), 8);
        assert_eq!(enumerate_labeled(3, |_| ()), 113);
        assert_eq!(enumerate_labeled(4, |_| ()), 3492);
    }

    #[test]
    #[ignore = "order 5 takes minutes; run explicitly"]
    fn labeled_count_order_five() {
        assert_eq!(enumerate_labeled(5, |_| ()), 183_732);
    }

    #[test]
    fn every_enumerated_table_is_associative() {
        enumerate_labeled(3, |mul| {
            Table::new(3, mul.to_vec()).expect("enumerated table must validate");
        });
    }

    #[test]
    fn census_order_two() {
        let c = census(2);
        let r = c.report();
        assert_eq!(r.semigroups_up_to_iso, 5);
        assert_eq!(r.semigroups_up_to_iso_antiiso, 4);
        assert_eq!(r.involution_semigroups, 3);
        assert_eq!(r.trivial_involution, 3);
        assert_eq!(r.nontrivial_involution, 0);
        // Exactly one class (the left/right zeros) admits no involution.
        assert_eq!(r.no_involution, 1);
    }

    #[test]
    fn census_order_three() {
        let c = census(3);
        let r = c.report();
        assert_eq!(r.semigroups_up_to_iso, 24);
        assert_eq!(r.semigroups_up_to_iso_antiiso, 18);
        assert_eq!(r.involution_semigroups, 15);
        assert_eq!(r.trivial_involution, 12);
        assert_eq!(r.nontrivial_involution, 3);
        // The three nontrivial classes are the known order-3 models.
        let nontrivial: Vec<_> = c
            .star_reps
            .iter()
            .filter(|s| !s.is_trivial_involution())
            .collect();
        for name in ["s3", "sl3", "z3"] {
            let m = catalog::lookup(name).unwrap();
            assert_eq!(
                nontrivial
                    .iter()
                    .filter(|s| s.is_star_isomorphic(&m))
                    .count(),
                1,
                "{name} should appear exactly once"
            );
        }
    }

    #[test]
    fn trivial_star_classes_are_the_commutative_iso_classes() {
        for n in 1..=3 {
            let c = census(n);
            let commutative = c.iso_reps.iter().filter(|t| t.is_commutative()).count();
            let trivial = c
                .star_reps
                .iter()
                .filter(|s| s.is_trivial_involution())
                .count();
            assert_eq!(commutative, trivial, "order {n}");
        }
    }

    #[test]
    fn orbit_sum_matches_star_class_count() {
        for n in 1..=3 {
            let c = census(n);
            let total: usize = c.iso_reps.iter().map(involution_orbit_count).sum();
            assert_eq!(total, c.star_reps.len(), "order {n}");
        }
    }

    #[test]
    fn quickcheck_obstructions_are_sound() {
        for n in 1..=3 {
            let c = census(n);
            for t in &c.iso_anti_reps {
                if !t.admits_involution_quickcheck() {
                    assert!(
                        t.involutions_of().is_empty(),
                        "obstruction fired on a table with an involution: {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = census(2);
        write_cache(dir.path(), &c).unwrap();
        let back = read_cache(dir.path(), 2).unwrap().expect("cache present");
        assert_eq!(back.iso_reps.len(), c.iso_reps.len());
        assert_eq!(back.iso_anti_reps.len(), c.iso_anti_reps.len());
        assert_eq!(back.star_reps, c.star_reps);
        assert_eq!(read_cache(dir.path(), 3).unwrap().map(|c| c.n), None);
        // Tampered header is rejected.
        let path = dir.path().join("census-n2-iso.txt");
        fs::write(&path, "# census n=2 equivalence=star\n1111\n").unwrap();
        assert!(read_cache(dir.path(), 2).is_err());
    }
}
