//! Index sets, tensor-slot symbols and sign conventions.
//!
//! A determinant variable `a_X` is keyed by a canonical (strictly increasing)
//! index set `X`. Any other ordering of the same indexes is rewritten to the
//! canonical one together with the parity of the sorting permutation, and a
//! repeated index kills the variable.

use std::fmt;

use crate::error::{Error, Result};

/// Strictly increasing subset of `{1..n}`, carrying its rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    elements: Vec<u8>,
    n: u8,
}

/// Result of normalizing a raw index list: the sorted set and the sign of the
/// sorting permutation, or sign 0 (and no set) if an index repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIndexSet {
    pub set: Option<IndexSet>,
    pub sign: i8,
}

impl IndexSet {
    /// Builds a set from an already strictly increasing list.
    pub fn new(n: u8, elements: &[u8]) -> Result<Self> {
        check_rank(n)?;
        if elements.is_empty() || elements.len() > n as usize {
            return Err(Error::Input(format!(
                "index set of size {} at rank {n}",
                elements.len()
            )));
        }
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::IndexOutOfRange { index: e as u32, n });
            }
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!("{elements:?} is not strictly increasing")));
        }
        Ok(IndexSet { elements: elements.to_vec(), n })
    }

    pub(crate) fn from_sorted_unchecked(n: u8, elements: Vec<u8>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        IndexSet { elements, n }
    }

    /// `{1..=k}`.
    pub fn initial(n: u8, k: usize) -> Self {
        IndexSet::from_sorted_unchecked(n, (1..=k as u8).collect())
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u8] {
        &self.elements
    }

    pub fn contains(&self, i: u8) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    /// `{1..n} \ self`.
    pub fn complement(&self) -> IndexSet {
        let rest = (1..=self.n).filter(|i| !self.contains(*i)).collect();
        IndexSet::from_sorted_unchecked(self.n, rest)
    }

    /// Replaces index `from` by `to` and renormalizes. Returns `None` when
    /// `from` is absent or `to` is already present.
    pub fn substitute(&self, from: u8, to: u8) -> Option<(IndexSet, i8)> {
        if !self.contains(from) {
            return None;
        }
        let mut raw: Vec<u8> = self
            .elements
            .iter()
            .map(|&e| if e == from { to } else { e })
            .collect();
        let sign = sort_with_sign(&mut raw);
        (sign != 0).then(|| (IndexSet::from_sorted_unchecked(self.n, raw), sign))
    }

    /// All subsets of size `k` in lexicographic order.
    pub fn all_of_size(n: u8, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<IndexSet>) {
            if cur.len() == k {
                out.push(IndexSet::from_sorted_unchecked(n, cur.clone()));
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 1, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn check_rank(n: u8) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidRank(0))
    } else {
        Ok(())
    }
}

/// Sorts `raw` in place and returns the parity of the sorting permutation,
/// or 0 if two entries coincide.
pub(crate) fn sort_with_sign(raw: &mut [u8]) -> i8 {
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..raw.len() {
        let mut j = i;
        while j > 0 && raw[j - 1] >= raw[j] {
            if raw[j - 1] == raw[j] {
                return 0;
            }
            raw.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if raw.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

/// Sorts a raw index list into canonical form with the sign of the sort.
pub fn normalize(n: u8, raw: &[u32]) -> Result<SignedIndexSet> {
    check_rank(n)?;
    if raw.is_empty() {
        return Err(Error::Input("empty index list".into()));
    }
    let mut v = Vec::with_capacity(raw.len());
    for &r in raw {
        if r == 0 || r > n as u32 {
            return Err(Error::IndexOutOfRange { index: r, n });
        }
        v.push(r as u8);
    }
    let sign = sort_with_sign(&mut v);
    Ok(if sign == 0 {
        SignedIndexSet { set: None, sign: 0 }
    } else {
        SignedIndexSet { set: Some(IndexSet::from_sorted_unchecked(n, v)), sign }
    })
}

/// `{1..n} \ set`.
pub fn complement(set: &IndexSet) -> IndexSet {
    set.complement()
}

/// Parity of a permutation given in one-line notation over `0..len`.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// One of the three tensor factors of `V ⊗ W ⊗ U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Tag naming one of the six variable families of a 6j contraction. `dual`
/// marks the copy that stands for the differentiation operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyTag {
    pub index: u8,
    pub dual: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub letter: Letter,
    pub family: Option<FamilyTag>,
}

impl Symbol {
    pub const fn plain(letter: Letter) -> Self {
        Symbol { letter, family: None }
    }

    /// A family variable. Family symbols from different letters must compare
    /// equal, so the letter is fixed.
    pub const fn family(index: u8, dual: bool) -> Self {
        Symbol { letter: Letter::A, family: Some(FamilyTag { index, dual }) }
    }
}

impl From<Letter> for Symbol {
    fn from(letter: Letter) -> Self {
        Symbol::plain(letter)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            None => write!(f, "{}", self.letter),
            Some(FamilyTag { index, dual: false }) => write!(f, "A{index}"),
            Some(FamilyTag { index, dual: true }) => write!(f, "dA{index}"),
        }
    }
}
