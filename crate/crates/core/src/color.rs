//! Fixed-width color sets over `1..=MAX_COLORS`.

use std::fmt;

/// Largest supported number of colors.
pub const MAX_COLORS: usize = 1024;

const WORDS: usize = MAX_COLORS / 64;

/// A subset of `[q]`, stored as a bitset. Bit `c - 1` represents color `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet {
    words: [u64; WORDS],
}

impl ColorSet {
    pub const fn empty() -> Self {
        ColorSet { words: [0; WORDS] }
    }

    /// The full palette `{1, ..., q}`.
    pub fn full(q: usize) -> Self {
        assert!(q <= MAX_COLORS, "q exceeds {MAX_COLORS}");
        let mut s = Self::empty();
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            if q >= lo + 64 {
                *word = u64::MAX;
            } else if q > lo {
                *word = (1u64 << (q - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(c: usize) -> Self {
        let mut s = Self::empty();
        s.insert(c);
        s
    }

    pub fn insert(&mut self, c: usize) {
        assert!((1..=MAX_COLORS).contains(&c), "color {c} out of range");
        self.words[(c - 1) / 64] |= 1 << ((c - 1) % 64);
    }

    pub fn remove(&mut self, c: usize) {
        if (1..=MAX_COLORS).contains(&c) {
            self.words[(c - 1) / 64] &= !(1 << ((c - 1) % 64));
        }
    }

    pub fn contains(&self, c: usize) -> bool {
        (1..=MAX_COLORS).contains(&c) && self.words[(c - 1) / 64] >> ((c - 1) % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    /// Largest member, if any.
    pub fn largest(&self) -> Option<usize> {
        self.iter().last()
    }

    /// Smallest member, if any.
    pub fn smallest(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit + 1)
            })
        })
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// Formats as `{1,2,5}`, the notation used by the instance format.
impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
