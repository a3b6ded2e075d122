//! Finite multiplication tables and involutions on them.
//!
//! Elements are `1..=n` (u8). A [`Table`] is a row-major multiplication
//! table; an [`InvolutionSemigroup`] pairs a table with a unary `*` that is
//! an involutive anti-automorphism. Identity checking evaluates [`Word`]s
//! under all assignments of elements to base letters, with starred letters
//! going through `*`.
//!
//! This module also carries the isomorphism machinery (relabeling, canonical
//! keys up to iso / iso+anti-iso / star-iso) and the cheap table invariants
//! used to rule out involutions without searching for one.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A finite magma table that has passed an associativity check.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table {
    n: u8,
    /// Row-major: `mul[(a-1)*n + (b-1)]` is the product `a·b`, values `1..=n`.
    mul: Vec<u8>,
}

impl Table {
    /// Build and validate: entries in range and multiplication associative.
    pub fn new(n: u8, mul: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("order must be at least 1".into()));
        }
        if mul.len() != (n as usize) * (n as usize) {
            return Err(Error::Domain(format!(
                "table for order {n} needs {} entries, got {}",
                (n as usize) * (n as usize),
                mul.len()
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::Domain(format!(
                "table entry {bad} out of range 1..={n}"
            )));
        }
        let t = Table { n, mul };
        if let Some((a, b, c)) = t.associativity_failure() {
            return Err(Error::Axiom {
                law: "associativity",
                witness: format!("({a}{b}){c} ≠ {a}({b}{c})"),
            });
        }
        Ok(t)
    }

    /// Construct without the associativity check; for enumeration inner
    /// loops that maintain associativity incrementally.
    pub(crate) fn new_unchecked(n: u8, mul: Vec<u8>) -> Self {
        Table { n, mul }
    }

    pub fn order(&self) -> u8 {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.n
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[(a as usize - 1) * self.n as usize + (b as usize - 1)]
    }

    pub fn digits(&self) -> &[u8] {
        &self.mul
    }

    /// First associativity failure in row-major scan order, if any.
    pub fn associativity_failure(&self) -> Option<(u8, u8, u8)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn commutativity_failure(&self) -> Option<(u8, u8)> {
        for a in self.elements() {
            for b in self.elements() {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_failure().is_none()
    }

    /// The two-sided zero, if present (at most one can exist).
    pub fn zero_element(&self) -> Option<u8> {
        self.elements().find(|&z| {
            self.elements()
                .all(|a| self.mul(z, a) == z && self.mul(a, z) == z)
        })
    }

    pub fn identity_element(&self) -> Option<u8> {
        self.elements().find(|&e| {
            self.elements()
                .all(|a| self.mul(e, a) == a && self.mul(a, e) == a)
        })
    }

    pub fn idempotents(&self) -> Vec<u8> {
        self.elements().filter(|&a| self.mul(a, a) == a).collect()
    }

    /// Elements `a` with `a·x = a` for every `x`.
    pub fn left_zeros(&self) -> Vec<u8> {
        self.elements()
            .filter(|&a| self.elements().all(|x| self.mul(a, x) == a))
            .collect()
    }

    pub fn right_zeros(&self) -> Vec<u8> {
        self.elements()
            .filter(|&a| self.elements().all(|x| self.mul(x, a) == a))
            .collect()
    }

    /// Elements `e` with `e·x = x` for every `x`.
    pub fn left_units(&self) -> Vec<u8> {
        self.elements()
            .filter(|&e| self.elements().all(|x| self.mul(e, x) == x))
            .collect()
    }

    pub fn right_units(&self) -> Vec<u8> {
        self.elements()
            .filter(|&e| self.elements().all(|x| self.mul(x, e) == x))
            .collect()
    }

    /// Index and period of the monogenic subsemigroup of `a`: the least
    /// `(i, p)` with `a^(i+p) = a^i`, both ≥ 1.
    pub fn index_period(&self, a: u8) -> (u32, u32) {
        let mut seen: BTreeMap<u8, u32> = BTreeMap::new();
        let mut cur = a;
        let mut k = 1u32;
        loop {
            if let Some(&first) = seen.get(&cur) {
                return (first, k - first);
            }
            seen.insert(cur, k);
            cur = self.mul(cur, a);
            k += 1;
        }
    }

    /// Global (index, period): max of indices, lcm of periods.
    pub fn global_index_period(&self) -> (u32, u32) {
        let mut index = 1u32;
        let mut period = 1u32;
        for a in self.elements() {
            let (i, p) = self.index_period(a);
            index = index.max(i);
            period = lcm(period, p);
        }
        (index, period)
    }

    /// Least `d` with every `d`-fold product equal to the zero element.
    /// `None` when there is no zero or the table is not nilpotent.
    pub fn nilpotency_degree(&self) -> Option<u32> {
        let zero = self.zero_element()?;
        let mut reachable: Vec<u8> = self.elements().collect();
        for d in 1..=(self.n as u32 + 1) {
            if reachable.iter().all(|&v| v == zero) {
                return Some(d);
            }
            let mut next: Vec<u8> = reachable
                .iter()
                .flat_map(|&v| self.elements().map(move |a| (v, a)))
                .map(|(v, a)| self.mul(v, a))
                .collect();
            next.sort_unstable();
            next.dedup();
            reachable = next;
        }
        None
    }

    /// Does `xyz ≈ xz` hold?
    pub fn satisfies_xyz_eq_xz(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.elements().all(|c| self.mul(self.mul(a, b), c) == self.mul(a, c)))
        })
    }

    /// Does `x₁⋯x_m ≈ x_{π(1)}⋯x_{π(m)}` hold? `pi` is 0-based over `0..m`.
    pub fn satisfies_permutation_identity(&self, pi: &[usize]) -> bool {
        let m = pi.len();
        let n = self.n as usize;
        let mut tuple = vec![1u8; m];
        loop {
            let lhs = tuple[1..].iter().fold(tuple[0], |acc, &x| self.mul(acc, x));
            let rhs = pi[1..]
                .iter()
                .fold(tuple[pi[0]], |acc, &i| self.mul(acc, tuple[i]));
            if lhs != rhs {
                return false;
            }
            // odometer
            let mut k = m;
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                if (tuple[k] as usize) < n {
                    tuple[k] += 1;
                    break;
                }
                tuple[k] = 1;
            }
        }
    }

    /// Search for a nontrivial permutation identity: the least length
    /// `m ≤ bound` and, for that length, the lexicographically least
    /// non-identity permutation that the table satisfies.
    pub fn find_permutation_identity(&self, bound: usize) -> Option<(usize, Vec<usize>)> {
        for m in 2..=bound {
            let mut pi: Vec<usize> = (0..m).collect();
            while next_permutation(&mut pi) {
                if self.satisfies_permutation_identity(&pi) {
                    return Some((m, pi));
                }
            }
        }
        None
    }

    /// The opposite table (transpose).
    pub fn transpose(&self) -> Table {
        let n = self.n as usize;
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul[b * n + a];
            }
        }
        Table { n: self.n, mul }
    }

    /// Rename elements by `perm` (`perm[a-1]` is the new name of `a`).
    pub fn relabel(&self, perm: &[u8]) -> Table {
        let n = self.n as usize;
        let mut mul = vec![0u8; n * n];
        for a in 1..=self.n {
            for b in 1..=self.n {
                let (pa, pb) = (perm[a as usize - 1], perm[b as usize - 1]);
                mul[(pa as usize - 1) * n + (pb as usize - 1)] = perm[self.mul(a, b) as usize - 1];
            }
        }
        Table { n: self.n, mul }
    }

    /// Least relabeling of the table digits over all permutations.
    pub fn canonical_key_iso(&self) -> Vec<u8> {
        permutations(self.n)
            .iter()
            .map(|p| self.relabel(p).mul)
            .min()
            .unwrap()
    }

    /// Least over all relabelings of the table and of its transpose.
    pub fn canonical_key_iso_anti(&self) -> Vec<u8> {
        let t = self.transpose();
        permutations(self.n)
            .iter()
            .flat_map(|p| [self.relabel(p).mul, t.relabel(p).mul])
            .min()
            .unwrap()
    }

    pub fn automorphisms(&self) -> Vec<Vec<u8>> {
        permutations(self.n)
            .into_iter()
            .filter(|p| &self.relabel(p) == self)
            .collect()
    }

    /// Is the table anti-isomorphic to itself (by any bijection)?
    pub fn is_self_anti_isomorphic(&self) -> bool {
        let t = self.transpose();
        permutations(self.n).iter().any(|p| self.relabel(p) == t)
    }

    /// Sorted profile multiset used by [`admits_involution_quickcheck`]:
    /// one entry per element. An anti-isomorphism swaps each element's
    /// row-image size with its column-image size and preserves the rest,
    /// so the multiset must be invariant under that swap.
    fn element_profiles(&self) -> Vec<(usize, usize, bool, u32, u32)> {
        let mut out: Vec<_> = self
            .elements()
            .map(|a| {
                let mut row: Vec<u8> = self.elements().map(|x| self.mul(a, x)).collect();
                let mut col: Vec<u8> = self.elements().map(|x| self.mul(x, a)).collect();
                row.sort_unstable();
                row.dedup();
                col.sort_unstable();
                col.dedup();
                let (i, p) = self.index_period(a);
                (row.len(), col.len(), self.mul(a, a) == a, i, p)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Cheap necessary conditions for an involution to exist. `false` means
    /// provably none; `true` means "no obstruction found", not existence.
    pub fn admits_involution_quickcheck(&self) -> bool {
        if self.left_zeros().len() != self.right_zeros().len() {
            return false;
        }
        if self.left_units().len() != self.right_units().len() {
            return false;
        }
        let profiles = self.element_profiles();
        let mut swapped: Vec<_> = profiles
            .iter()
            .map(|&(r, c, e, i, p)| (c, r, e, i, p))
            .collect();
        swapped.sort_unstable();
        if profiles != swapped {
            return false;
        }
        self.is_self_anti_isomorphic()
    }

    /// All involutive anti-automorphisms, as 1-based images.
    pub fn involutions_of(&self) -> Vec<Vec<u8>> {
        let unit = self.identity_element();
        let zero = self.zero_element();
        let lz = self.left_zeros();
        let rz = self.right_zeros();
        let idem = self.idempotents();
        permutations(self.n)
            .into_iter()
            .filter(|p| {
                // involutive
                self.elements().all(|a| p[p[a as usize - 1] as usize - 1] == a)
            })
            .filter(|p| {
                // fast rejections before the full bilinear check
                let img = |a: u8| p[a as usize - 1];
                if let Some(e) = unit {
                    if img(e) != e {
                        return false;
                    }
                }
                if let Some(z) = zero {
                    if img(z) != z {
                        return false;
                    }
                }
                if !lz.iter().all(|&a| rz.contains(&img(a))) {
                    return false;
                }
                if !idem.iter().all(|&a| idem.contains(&img(a))) {
                    return false;
                }
                if !self
                    .elements()
                    .all(|a| self.index_period(a) == self.index_period(img(a)))
                {
                    return false;
                }
                // a·a* must be a fixed point: (a·a*)* = a**·a* = a·a*.
                self.elements().all(|a| {
                    let aa = self.mul(a, img(a));
                    img(aa) == aa
                })
            })
            .filter(|p| {
                self.elements().all(|a| {
                    self.elements().all(|b| {
                        p[self.mul(a, b) as usize - 1]
                            == self.mul(p[b as usize - 1], p[a as usize - 1])
                    })
                })
            })
            .collect()
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Table(n={} mul={})", self.n, digits_string(&self.mul))
    }
}

/// A table together with an involutive anti-automorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvolutionSemigroup {
    table: Table,
    /// `inv[a-1]` is `a*`, 1-based.
    inv: Vec<u8>,
}

impl InvolutionSemigroup {
    pub fn new(table: Table, inv: Vec<u8>) -> Result<Self> {
        if inv.len() != table.order() as usize {
            return Err(Error::Domain(format!(
                "involution for order {} needs {} entries, got {}",
                table.order(),
                table.order(),
                inv.len()
            )));
        }
        if let Some(&bad) = inv.iter().find(|&&v| v == 0 || v > table.order()) {
            return Err(Error::Domain(format!(
                "involution entry {bad} out of range 1..={}",
                table.order()
            )));
        }
        let s = InvolutionSemigroup { table, inv };
        if let Some(a) = s.table.elements().find(|&a| s.star(s.star(a)) != a) {
            return Err(Error::Axiom {
                law: "x** = x",
                witness: format!("{a}** = {}", s.star(s.star(a))),
            });
        }
        for a in s.table.elements() {
            for b in s.table.elements() {
                if s.star(s.table.mul(a, b)) != s.table.mul(s.star(b), s.star(a)) {
                    return Err(Error::Axiom {
                        law: "(xy)* = y*x*",
                        witness: format!("x={a}, y={b}"),
                    });
                }
            }
        }
        Ok(s)
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn order(&self) -> u8 {
        self.table.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        self.table.elements()
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn star(&self, a: u8) -> u8 {
        self.inv[a as usize - 1]
    }

    pub fn inv_digits(&self) -> &[u8] {
        &self.inv
    }

    /// The involution is trivial when it is the identity map — which for a
    /// valid involution forces the table to be commutative, and conversely
    /// every commutative table admits the identity map.
    pub fn is_trivial_involution(&self) -> bool {
        self.table.elements().all(|a| self.star(a) == a)
    }

    /// Evaluate a nonempty word under an assignment covering its bases.
    pub fn eval(&self, word: &Word, asgn: &Assignment) -> u8 {
        let mut it = word.letters().iter();
        let first = it.next().expect("cannot evaluate the empty word");
        let mut acc = self.eval_letter(*first, asgn);
        for &l in it {
            acc = self.mul(acc, self.eval_letter(l, asgn));
        }
        acc
    }

    fn eval_letter(&self, l: Letter, asgn: &Assignment) -> u8 {
        let v = asgn.get(l.base());
        if l.is_starred() {
            self.star(v)
        } else {
            v
        }
    }

    /// First assignment (in lexicographic order over the sorted bases of
    /// both sides) where the two words evaluate differently.
    pub fn counterexample(&self, lhs: &Word, rhs: &Word) -> Option<Assignment> {
        let mut bases: Vec<u8> = lhs.bases().union(&rhs.bases()).copied().collect();
        bases.sort_unstable();
        for asgn in Assignment::all(&bases, self.order()) {
            if self.eval(lhs, &asgn) != self.eval(rhs, &asgn) {
                return Some(asgn);
            }
        }
        None
    }

    /// Does the identity `lhs ≈ rhs` hold in this model?
    pub fn satisfies(&self, lhs: &Word, rhs: &Word) -> bool {
        self.counterexample(lhs, rhs).is_none()
    }

    /// [`counterexample`](Self::counterexample) behind a variable-count cap,
    /// so callers with untrusted input cannot request a `n^26` sweep.
    pub fn counterexample_with_cap(
        &self,
        lhs: &Word,
        rhs: &Word,
        var_cap: usize,
    ) -> Result<Option<Assignment>> {
        let vars = lhs.bases().union(&rhs.bases()).count();
        if vars > var_cap {
            return Err(Error::Capability(format!(
                "identity has {vars} variables, cap is {var_cap}"
            )));
        }
        Ok(self.counterexample(lhs, rhs))
    }

    /// Does `w ≈ 0` hold? Two readings, which agree on every model: every
    /// evaluation of `w` lands on the zero element; and `wx ≈ w ≈ xw` for a
    /// letter `x` not occurring in `w`. Both are computed and must agree.
    pub fn satisfies_zero(&self, word: &Word) -> bool {
        let via_zero = match self.table.zero_element() {
            Some(z) => {
                let mut bases: Vec<u8> = word.bases().into_iter().collect();
                bases.sort_unstable();
                Assignment::all(&bases, self.order()).all(|a| self.eval(word, &a) == z)
            }
            None => false,
        };
        let via_absorption = {
            let bases: Vec<u8> = word.bases().into_iter().collect();
            Assignment::all(&bases, self.order()).all(|a| {
                let v = self.eval(word, &a);
                self.elements()
                    .all(|t| self.mul(v, t) == v && self.mul(t, v) == v)
            })
        };
        assert_eq!(
            via_zero, via_absorption,
            "the two readings of w ≈ 0 must agree"
        );
        via_zero
    }

    /// Joint canonical key (relabeled multiplication digits followed by
    /// relabeled involution digits), minimized over all renamings.
    pub fn canonical_key_star(&self) -> Vec<u8> {
        permutations(self.order())
            .iter()
            .map(|p| {
                let t = self.table.relabel(p);
                let n = self.order() as usize;
                let mut inv = vec![0u8; n];
                for a in 1..=self.order() {
                    inv[p[a as usize - 1] as usize - 1] = p[self.star(a) as usize - 1];
                }
                let mut key = t.mul;
                key.extend_from_slice(&inv);
                key
            })
            .min()
            .unwrap()
    }

    pub fn is_star_isomorphic(&self, other: &InvolutionSemigroup) -> bool {
        self.order() == other.order() && self.canonical_key_star() == other.canonical_key_star()
    }

    /// Check that `map` (1-based images) is a homomorphism of involution
    /// semigroups onto `target`: preserves products and stars.
    pub fn star_homomorphism_failure(
        &self,
        map: &[u8],
        target: &InvolutionSemigroup,
    ) -> Option<String> {
        if map.len() != self.order() as usize {
            return Some("map has wrong length".into());
        }
        let f = |a: u8| map[a as usize - 1];
        for a in self.elements() {
            if f(a) == 0 || f(a) > target.order() {
                return Some(format!("image of {a} out of range"));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if f(self.mul(a, b)) != target.mul(f(a), f(b)) {
                    return Some(format!("products differ at ({a},{b})"));
                }
            }
        }
        for a in self.elements() {
            if f(self.star(a)) != target.star(f(a)) {
                return Some(format!("stars differ at {a}"));
            }
        }
        None
    }

    /// Text form `n=<k> mul=<k² digits> inv=<k digits>`, orders up to 9.
    pub fn render_text(&self) -> String {
        format!(
            "n={} mul={} inv={}",
            self.order(),
            digits_string(self.table.digits()),
            digits_string(&self.inv)
        )
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut n: Option<u8> = None;
        let mut mul: Option<Vec<u8>> = None;
        let mut inv: Option<Vec<u8>> = None;
        for field in input.split_whitespace() {
            if let Some(v) = field.strip_prefix("n=") {
                n = Some(v.parse::<u8>().map_err(|_| {
                    Error::Domain(format!("bad order {v:?}"))
                })?);
            } else if let Some(v) = field.strip_prefix("mul=") {
                mul = Some(parse_digits(v)?);
            } else if let Some(v) = field.strip_prefix("inv=") {
                inv = Some(parse_digits(v)?);
            } else {
                return Err(Error::Domain(format!("unknown field {field:?}")));
            }
        }
        let n = n.ok_or_else(|| Error::Domain("missing n= field".into()))?;
        if n > 9 {
            return Err(Error::Capability(
                "digit table text only covers orders up to 9".into(),
            ));
        }
        let mul = mul.ok_or_else(|| Error::Domain("missing mul= field".into()))?;
        let inv = inv.unwrap_or_else(|| (1..=n).collect());
        InvolutionSemigroup::new(Table::new(n, mul)?, inv)
    }
}

impl fmt::Debug for InvolutionSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

pub fn digits_string(digits: &[u8]) -> String {
    digits.iter().map(|d| (b'0' + d) as char).collect()
}

pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.bytes()
        .map(|b| {
            if b.is_ascii_digit() && b != b'0' {
                Ok(b - b'0')
            } else {
                Err(Error::Domain(format!(
                    "expected digits 1..=9, got {:?}",
                    b as char
                )))
            }
        })
        .collect()
}

/// A finite map from base letters to elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment(BTreeMap<u8, u8>);

impl Assignment {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u8, u8)>) -> Self {
        Assignment(pairs.into_iter().collect())
    }

    pub fn get(&self, base: u8) -> u8 {
        *self
            .0
            .get(&base)
            .unwrap_or_else(|| panic!("assignment missing letter {:?}", base as char))
    }

    pub fn entries(&self) -> impl Iterator<Item = (char, u8)> + '_ {
        self.0.iter().map(|(&b, &v)| (b as char, v))
    }

    /// All assignments of `1..=n` to the given bases, in lexicographic
    /// order of the value tuple (bases taken in the given order, last base
    /// cycling fastest).
    pub fn all(bases: &[u8], n: u8) -> AssignmentIter {
        AssignmentIter {
            bases: bases.to_vec(),
            n,
            next: Some(vec![1; bases.len()]),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, v) in self.entries() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{b}={v}")?;
            first = false;
        }
        Ok(())
    }
}

pub struct AssignmentIter {
    bases: Vec<u8>,
    n: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for AssignmentIter {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let cur = self.next.take()?;
        let out = Assignment(self.bases.iter().copied().zip(cur.iter().copied()).collect());
        let mut bumped = cur;
        let mut k = bumped.len();
        loop {
            if k == 0 {
                self.next = None;
                break;
            }
            k -= 1;
            if bumped[k] < self.n {
                bumped[k] += 1;
                self.next = Some(bumped);
                break;
            }
            bumped[k] = 1;
        }
        Some(out)
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: u8) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Advance to the next lexicographic permutation; false after the last.
fn next_permutation<T: Ord>(arr: &mut [T]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn model(text: &str) -> InvolutionSemigroup {
        InvolutionSemigroup::parse_text(text).unwrap()
    }

    #[test]
    fn rejects_non_associative_table() {
        // 2-element table with (1·1)·2 ≠ 1·(1·2).
        let err = Table::new(2, vec![2, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::Axiom { law: "associativity", .. }));
    }

    #[test]
    fn rejects_non_involution() {
        let t = Table::new(2, vec![1, 1, 1, 2]).unwrap();
        // σ = (1 2) is a bijection but not an anti-automorphism here.
        assert!(InvolutionSemigroup::new(t, vec![2, 1]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        assert_eq!(s.render_text(), "n=4 mul=2212222222321214 inv=1243");
        assert_eq!(s.mul(4, 3), 1);
        assert_eq!(s.mul(1, 4), 2);
        assert_eq!(s.star(3), 4);
        assert_eq!(s.star(1), 1);
    }

    #[test]
    fn missing_inv_defaults_to_identity() {
        let s = model("n=2 mul=1112");
        assert!(s.is_trivial_involution());
    }

    #[test]
    fn evaluation_follows_stars() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        let a = Assignment::from_pairs([(b'x', 4)]);
        assert_eq!(s.eval(&w("xx*"), &a), s.mul(4, 3));
        assert_eq!(s.eval(&w("x*x"), &a), s.mul(3, 4));
        // xx* ≈ x*x fails here; x=3 gives 3·4 = 2 but 4·3 = 1.
        let ce = s.counterexample(&w("xx*"), &w("x*x")).unwrap();
        assert_eq!(ce.get(b'x'), 3);
    }

    #[test]
    fn zero_semantics_agree() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        assert_eq!(s.table().zero_element(), Some(2));
        assert!(s.satisfies_zero(&w("xx*x")));
        assert!(!s.satisfies_zero(&w("x")));
        // No zero element: nothing is ≈ 0.
        let g = model("n=2 mul=1221 inv=12");
        assert_eq!(g.table().zero_element(), None);
        assert!(!g.satisfies_zero(&w("xx")));
    }

    #[test]
    fn index_period_and_nilpotency() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        // 3² = 3: idempotent of index 1, period 1.
        assert_eq!(s.table().index_period(3), (1, 1));
        // 1² = 2, 2² = 2: index 2, period 1.
        assert_eq!(s.table().index_period(1), (2, 1));
        assert!(s.table().nilpotency_degree().is_none()); // 3 is a non-zero idempotent
        // Zero multiplication table: every 2-fold product is zero.
        let z = model("n=2 mul=1111");
        assert_eq!(z.table().nilpotency_degree(), Some(2));
    }

    #[test]
    fn permutation_identity_search() {
        // Commutative table: least is m=2, π = (1 0).
        let c = model("n=2 mul=1112");
        assert_eq!(
            c.table().find_permutation_identity(4),
            Some((2, vec![1, 0]))
        );
        // Left zeros: products only see the first factor, so no identity at
        // length 2, and xyz ≈ xzy is the least at length 3.
        let lz = Table::new(2, vec![1, 1, 2, 2]).unwrap();
        assert_eq!(lz.find_permutation_identity(4), Some((3, vec![0, 2, 1])));
    }

    #[test]
    fn left_zero_table_admits_no_involution() {
        let lz = Table::new(2, vec![1, 1, 2, 2]).unwrap();
        assert_eq!(lz.left_zeros(), vec![1, 2]);
        assert_eq!(lz.right_zeros(), Vec::<u8>::new());
        assert!(!lz.admits_involution_quickcheck());
        assert!(lz.involutions_of().is_empty());
    }

    #[test]
    fn involution_search_on_known_model() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        let invs = s.table().involutions_of();
        assert!(invs.contains(&vec![1, 2, 4, 3]));
        for inv in invs {
            // Every candidate the search returns must validate.
            InvolutionSemigroup::new(s.table().clone(), inv).unwrap();
        }
    }

    #[test]
    fn canonical_keys_identify_relabelings() {
        let s = model("n=4 mul=2212222222321214 inv=1243");
        for p in permutations(4) {
            let t = s.table().relabel(&p);
            assert_eq!(t.canonical_key_iso(), s.table().canonical_key_iso());
        }
        // A table and its transpose share the iso+anti key.
        assert_eq!(
            s.table().transpose().canonical_key_iso_anti(),
            s.table().canonical_key_iso_anti()
        );
    }

    #[test]
    fn assignments_enumerate_in_lex_order() {
        let all: Vec<Vec<u8>> = Assignment::all(&[b'x', b'y'], 2)
            .map(|a| vec![a.get(b'x'), a.get(b'y')])
            .collect();
        assert_eq!(
            all,
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        // No bases: exactly one (empty) assignment.
        assert_eq!(Assignment::all(&[], 3).count(), 1);
    }

    #[test]
    fn permutations_are_lexicographic_and_complete() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps[0], vec![1, 2, 3]);
        assert_eq!(ps[5], vec![3, 2, 1]);
    }
}
