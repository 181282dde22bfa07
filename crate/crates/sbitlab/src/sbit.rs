//! The sbit value algebra: three-valued symbols, fixed-length words, the
//! idempotent sum, and the maximal-set machinery that underpins weak
//! additivity.
//!
//! A word over {0, 1, s} stands for the set of Boolean words obtained by
//! substituting every `s` position with both 0 and 1. `expand` materializes
//! that set, `BasisWordSet::sum` collapses it back; the two are mutually
//! inverse on full subcubes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One ternary symbol. `Zero` and `One` are the basis values; `S` denotes
/// the formal superposition of both.
///
/// The derived ordering (`Zero < One < S`) is the lexicographic alphabet
/// used everywhere words are sorted or enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sbit {
    Zero,
    One,
    S,
}

impl Sbit {
    pub const ALL: [Sbit; 3] = [Sbit::Zero, Sbit::One, Sbit::S];

    /// The sum: equal symbols return themselves, any mixed pair returns `S`.
    /// Commutative, associative, idempotent; there is no neutral element.
    #[allow(clippy::should_implement_trait)] // fallible word-level add rules out ops::Add
    pub fn add(self, other: Sbit) -> Sbit {
        if self == other {
            self
        } else {
            Sbit::S
        }
    }

    pub fn is_basis(self) -> bool {
        self != Sbit::S
    }

    pub fn to_char(self) -> char {
        match self {
            Sbit::Zero => '0',
            Sbit::One => '1',
            Sbit::S => 's',
        }
    }

    pub fn from_char(c: char) -> Option<Sbit> {
        match c {
            '0' => Some(Sbit::Zero),
            '1' => Some(Sbit::One),
            's' => Some(Sbit::S),
            _ => None,
        }
    }

    fn digit(self) -> u64 {
        match self {
            Sbit::Zero => 0,
            Sbit::One => 1,
            Sbit::S => 2,
        }
    }

    fn from_digit(d: u64) -> Sbit {
        match d {
            0 => Sbit::Zero,
            1 => Sbit::One,
            _ => Sbit::S,
        }
    }
}

impl fmt::Display for Sbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A fixed-length, immutable sequence of sbits; the textual form uses the
/// alphabet `[01s]` with the leftmost character at position 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SbitWord {
    symbols: Vec<Sbit>,
}

impl SbitWord {
    /// Builds a word from symbols. Words are at least one sbit long.
    pub fn new(symbols: Vec<Sbit>) -> SbitWord {
        assert!(!symbols.is_empty(), "sbit words have length >= 1");
        SbitWord { symbols }
    }

    pub fn repeated(symbol: Sbit, n: usize) -> SbitWord {
        SbitWord::new(vec![symbol; n])
    }

    pub fn all_s(n: usize) -> SbitWord {
        SbitWord::repeated(Sbit::S, n)
    }

    pub fn all_zero(n: usize) -> SbitWord {
        SbitWord::repeated(Sbit::Zero, n)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Symbol at 0-based position.
    pub fn get(&self, i: usize) -> Sbit {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[Sbit] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Sbit> + '_ {
        self.symbols.iter().copied()
    }

    /// True iff the word contains no `s` symbol.
    pub fn is_basis(&self) -> bool {
        self.symbols.iter().all(|s| s.is_basis())
    }

    /// Number of `s` positions.
    pub fn s_count(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_basis()).count()
    }

    /// Position-wise sum. Errors when the lengths differ.
    pub fn add(&self, other: &SbitWord) -> Result<SbitWord> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(SbitWord::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    /// The maximal basis set: every basis word obtained by substituting each
    /// `s` position independently with 0 and 1; fixed symbols are kept.
    /// Cardinality is exactly 2^k for k `s` positions, enumerated with 0
    /// before 1 at each position.
    pub fn expand(&self) -> BasisWordSet {
        let members: BTreeSet<SbitWord> = self.expand_iter().collect();
        BasisWordSet {
            word_len: self.len(),
            members,
        }
    }

    /// Iterator form of `expand`, in lexicographic order.
    pub fn expand_iter(&self) -> impl Iterator<Item = SbitWord> + '_ {
        let s_positions: Vec<usize> = (0..self.len())
            .filter(|&i| self.symbols[i] == Sbit::S)
            .collect();
        let k = s_positions.len();
        (0u64..(1u64 << k)).map(move |mask| {
            let mut symbols = self.symbols.clone();
            for (bit, &pos) in s_positions.iter().enumerate() {
                // leftmost s position takes the most significant bit so that
                // ascending masks yield lexicographically ascending words
                let chosen = (mask >> (k - 1 - bit)) & 1;
                symbols[pos] = if chosen == 0 { Sbit::Zero } else { Sbit::One };
            }
            SbitWord::new(symbols)
        })
    }

    /// Index of this word in the lexicographic enumeration of all 3^n words.
    pub fn ternary_index(&self) -> u64 {
        self.iter().fold(0, |acc, s| acc * 3 + s.digit())
    }

    /// Inverse of `ternary_index` for words of length `n`.
    pub fn from_ternary_index(n: usize, mut index: u64) -> SbitWord {
        let mut symbols = vec![Sbit::Zero; n];
        for i in (0..n).rev() {
            symbols[i] = Sbit::from_digit(index % 3);
            index /= 3;
        }
        SbitWord::new(symbols)
    }

    /// Index of a basis word in the lexicographic enumeration of all 2^n
    /// basis words; `None` when the word contains `s`.
    pub fn basis_index(&self) -> Option<u64> {
        let mut acc = 0u64;
        for s in self.iter() {
            acc = acc * 2
                + match s {
                    Sbit::Zero => 0,
                    Sbit::One => 1,
                    Sbit::S => return None,
                };
        }
        Some(acc)
    }

    /// Inverse of `basis_index` for words of length `n`.
    pub fn from_basis_index(n: usize, index: u64) -> SbitWord {
        let symbols = (0..n)
            .map(|i| {
                if (index >> (n - 1 - i)) & 1 == 0 {
                    Sbit::Zero
                } else {
                    Sbit::One
                }
            })
            .collect();
        SbitWord::new(symbols)
    }

    /// All 3^n words of length `n`, in lexicographic order.
    pub fn enumerate_all(n: usize) -> impl Iterator<Item = SbitWord> {
        (0..3u64.pow(n as u32)).map(move |i| SbitWord::from_ternary_index(n, i))
    }

    /// All 2^n basis words of length `n`, in lexicographic order.
    pub fn enumerate_basis(n: usize) -> impl Iterator<Item = SbitWord> {
        (0..1u64 << n).map(move |i| SbitWord::from_basis_index(n, i))
    }
}

impl fmt::Display for SbitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.iter() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SbitWord {
    type Err = Error;

    /// Parses the `[01s]+` literal grammar.
    fn from_str(text: &str) -> Result<SbitWord> {
        if text.is_empty() {
            return Err(Error::WordParse {
                text: text.to_string(),
                reason: "empty word",
            });
        }
        let symbols = text
            .chars()
            .map(|c| {
                Sbit::from_char(c).ok_or(Error::WordParse {
                    text: text.to_string(),
                    reason: "expected only 0, 1 or s",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SbitWord::new(symbols))
    }
}

/// A nonempty set of equal-length basis words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisWordSet {
    word_len: usize,
    members: BTreeSet<SbitWord>,
}

impl BasisWordSet {
    /// Validates nonemptiness, equal lengths and basis-ness. Duplicates
    /// collapse silently (set semantics).
    pub fn new(words: impl IntoIterator<Item = SbitWord>) -> Result<BasisWordSet> {
        let mut members = BTreeSet::new();
        let mut word_len = None;
        for w in words {
            if !w.is_basis() {
                return Err(Error::NonBasisWord {
                    word: w.to_string(),
                });
            }
            match word_len {
                None => word_len = Some(w.len()),
                Some(n) if n != w.len() => {
                    return Err(Error::LengthMismatch {
                        left: n,
                        right: w.len(),
                    })
                }
                _ => {}
            }
            members.insert(w);
        }
        match word_len {
            None => Err(Error::EmptySet),
            Some(word_len) => Ok(BasisWordSet { word_len, members }),
        }
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn card(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, w: &SbitWord) -> bool {
        self.members.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SbitWord> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &BasisWordSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Folds the word sum over the set. Position i of the result is 0 iff
    /// all members have 0 there, 1 iff all have 1, otherwise s. Order is
    /// irrelevant by commutativity and associativity.
    pub fn sum(&self) -> SbitWord {
        let mut iter = self.members.iter();
        let first = iter.next().expect("sets are nonempty by construction");
        let mut acc = first.clone();
        for w in iter {
            acc = acc.add(w).expect("members share one length");
            if acc.iter().all(|s| s == Sbit::S) {
                break; // all-s is absorbing
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> SbitWord {
        text.parse().unwrap()
    }

    #[test]
    fn sum_table_rows() {
        use Sbit::*;
        let expected = [
            ((Zero, Zero), Zero),
            ((Zero, One), S),
            ((Zero, S), S),
            ((One, Zero), S),
            ((One, One), One),
            ((One, S), S),
            ((S, Zero), S),
            ((S, One), S),
            ((S, S), S),
        ];
        for ((a, b), r) in expected {
            assert_eq!(a.add(b), r, "{a}+{b}");
        }
    }

    #[test]
    fn sbit_add_laws_exhaustive() {
        for a in Sbit::ALL {
            assert_eq!(a.add(a), a, "idempotence at {a}");
            for b in Sbit::ALL {
                assert_eq!(a.add(b), b.add(a), "commutativity at {a},{b}");
                for c in Sbit::ALL {
                    assert_eq!(
                        a.add(b).add(c),
                        a.add(b.add(c)),
                        "associativity at {a},{b},{c}"
                    );
                }
            }
        }
    }

    #[test]
    fn word_add_examples() {
        assert_eq!(w("01s").add(&w("110")).unwrap(), w("s1s"));
        assert_eq!(w("00").add(&w("11")).unwrap(), w("ss"));
        let x = w("0s1");
        assert_eq!(x.add(&x).unwrap(), x);
    }

    #[test]
    fn word_add_length_mismatch() {
        assert_eq!(
            w("01").add(&w("011")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn expand_examples() {
        let e = w("0s").expand();
        assert_eq!(e.card(), 2);
        assert!(e.contains(&w("00")) && e.contains(&w("01")));

        let singleton = w("10").expand();
        assert_eq!(singleton.card(), 1);
        assert!(singleton.contains(&w("10")));

        let full = w("ss").expand();
        assert_eq!(full.card(), 4);
        for t in ["00", "01", "10", "11"] {
            assert!(full.contains(&w(t)));
        }
    }

    #[test]
    fn expand_enumerates_lexicographically() {
        let order: Vec<String> = w("s0s").expand_iter().map(|x| x.to_string()).collect();
        assert_eq!(order, ["000", "001", "100", "101"]);
    }

    #[test]
    fn sum_set_examples() {
        let all2 = BasisWordSet::new(["00", "01", "10", "11"].map(w)).unwrap();
        assert_eq!(all2.sum(), w("ss"));
        let single = BasisWordSet::new([w("10")]).unwrap();
        assert_eq!(single.sum(), w("10"));
        let pair = BasisWordSet::new([w("00"), w("11")]).unwrap();
        assert_eq!(pair.sum(), w("ss"));
    }

    #[test]
    fn empty_set_is_rejected() {
        assert_eq!(BasisWordSet::new([]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn non_basis_member_is_rejected() {
        assert!(matches!(
            BasisWordSet::new([w("0s")]),
            Err(Error::NonBasisWord { .. })
        ));
    }

    #[test]
    fn expand_cardinality_is_two_to_the_s_count() {
        for word in SbitWord::enumerate_all(4) {
            assert_eq!(word.expand().card(), 1 << word.s_count());
        }
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for n in 1..=5 {
            for word in SbitWord::enumerate_all(n) {
                assert_eq!(word.expand().sum(), word, "round trip at {word}");
            }
        }
    }

    /// Every nonempty basis set S satisfies S ⊆ expand(sum(S)), with equality
    /// exactly when S is itself a full subcube.
    #[test]
    fn maximality_exhaustive_n_up_to_3() {
        for n in 1..=3 {
            let basis: Vec<SbitWord> = SbitWord::enumerate_basis(n).collect();
            let subcubes: Vec<BasisWordSet> = SbitWord::enumerate_all(n)
                .map(|word| word.expand())
                .collect();
            for mask in 1u32..(1 << basis.len()) {
                let set = BasisWordSet::new(
                    basis
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (mask >> i) & 1 == 1)
                        .map(|(_, w)| w.clone()),
                )
                .unwrap();
                let closure = set.sum().expand();
                assert!(set.is_subset(&closure));
                let is_subcube = subcubes.contains(&set);
                assert_eq!(set == closure, is_subcube, "mask {mask:b} at n={n}");
            }
        }
    }

    /// No proper subset of the basis words generates all of the word space
    /// under the sum: dropping any basis word makes itself unreachable.
    #[test]
    fn basis_minimality_exhaustive_n_up_to_2() {
        for n in 1..=2 {
            let basis: Vec<SbitWord> = SbitWord::enumerate_basis(n).collect();
            for dropped in 0..basis.len() {
                let rest: Vec<SbitWord> = basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != dropped)
                    .map(|(_, w)| w.clone())
                    .collect();
                // enumerate every sum of a nonempty subset of the remaining
                // basis words and confirm the dropped word never appears
                let mut reachable = BTreeSet::new();
                for mask in 1u32..(1 << rest.len()) {
                    let set = BasisWordSet::new(
                        rest.iter()
                            .enumerate()
                            .filter(|(i, _)| (mask >> i) & 1 == 1)
                            .map(|(_, w)| w.clone()),
                    )
                    .unwrap();
                    reachable.insert(set.sum());
                }
                assert!(
                    !reachable.contains(&basis[dropped]),
                    "basis word {} is regenerated without itself",
                    basis[dropped]
                );
            }
        }
    }

    /// The basis words form the unique smallest generating set of the whole
    /// word space under the sum, quantifying over arbitrary subsets (s-words
    /// included). Exhaustive for n <= 2.
    #[test]
    fn basis_is_the_unique_smallest_generating_set() {
        for n in 1..=2usize {
            let universe: Vec<SbitWord> = SbitWord::enumerate_all(n).collect();
            let basis_mask: u32 = universe
                .iter()
                .enumerate()
                .filter(|(_, w)| w.is_basis())
                .map(|(i, _)| 1 << i)
                .sum();
            let mut generating: Vec<u32> = Vec::new();
            for mask in 1u32..(1 << universe.len()) {
                let members: Vec<&SbitWord> = universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, w)| w)
                    .collect();
                // reachable = sums of all nonempty subsets of the members
                let mut reachable = BTreeSet::new();
                for pick in 1u32..(1 << members.len()) {
                    let mut acc: Option<SbitWord> = None;
                    for (j, w) in members.iter().enumerate() {
                        if (pick >> j) & 1 == 1 {
                            acc = Some(match acc {
                                None => (*w).clone(),
                                Some(a) => a.add(w).unwrap(),
                            });
                        }
                    }
                    reachable.insert(acc.unwrap());
                }
                if reachable.len() == universe.len() {
                    generating.push(mask);
                }
            }
            let smallest = generating
                .iter()
                .map(|m| m.count_ones())
                .min()
                .expect("the full universe generates itself");
            let smallest_sets: Vec<u32> = generating
                .into_iter()
                .filter(|m| m.count_ones() == smallest)
                .collect();
            assert_eq!(smallest, 1 << n, "smallest generating size at n={n}");
            assert_eq!(smallest_sets, vec![basis_mask], "uniqueness at n={n}");
        }
    }

    #[test]
    fn index_round_trips() {
        for n in 1..=4 {
            for (i, word) in SbitWord::enumerate_all(n).enumerate() {
                assert_eq!(word.ternary_index(), i as u64);
                assert_eq!(SbitWord::from_ternary_index(n, i as u64), word);
            }
            for (i, word) in SbitWord::enumerate_basis(n).enumerate() {
                assert_eq!(word.basis_index(), Some(i as u64));
                assert_eq!(SbitWord::from_basis_index(n, i as u64), word);
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["0", "1", "s", "01s", "ss10"] {
            assert_eq!(w(text).to_string(), text);
        }
        assert!("".parse::<SbitWord>().is_err());
        assert!("01x".parse::<SbitWord>().is_err());
        assert!("01S".parse::<SbitWord>().is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = SbitWord> {
        proptest::collection::vec(proptest::sample::select(&Sbit::ALL[..]), 1..=max_len)
            .prop_map(SbitWord::new)
    }

    proptest! {
        #[test]
        fn word_add_is_commutative(a in arb_word(8), b in arb_word(8)) {
            if a.len() == b.len() {
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            }
        }

        #[test]
        fn expand_sum_round_trip(word in arb_word(10)) {
            prop_assert_eq!(word.expand().sum(), word);
        }
    }
}
