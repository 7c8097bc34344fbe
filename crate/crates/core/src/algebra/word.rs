use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Longest word a [`Word`] can hold.
pub const MAX_WEIGHT: usize = 63;

/// Which pair of letters the two bit values of a word stand for.
///
/// In the `XY` alphabet bit 0 is `x` and bit 1 is `y`; in the `XZ` alphabet
/// bit 1 is `z = x + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Alphabet {
    XY,
    XZ,
}

impl Alphabet {
    pub fn symbols(self) -> [char; 2] {
        match self {
            Alphabet::XY => ['x', 'y'],
            Alphabet::XZ => ['x', 'z'],
        }
    }
}

/// A letter, identified by its bit. `Y` reads as `z` in the `XZ` alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X = 0,
    Y = 1,
}

impl Letter {
    fn from_bit(b: u64) -> Letter {
        if b & 1 == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }

    pub fn swap(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A word over a two-letter alphabet, packed one bit per letter.
///
/// The first letter sits in the most significant used bit, so the derived
/// ordering (length first, then `bits`) is length-then-lexicographic with
/// `x < y`. That is the canonical term order of [`NCPoly`](crate::NCPoly).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn from_bits(len: usize, bits: u64) -> Word {
        assert!(
            len <= MAX_WEIGHT,
            "word of length {len} exceeds {MAX_WEIGHT}"
        );
        debug_assert!(len == 64 || bits >> len == 0);
        Word {
            len: len as u8,
            bits,
        }
    }

    pub fn letter(l: Letter) -> Word {
        Word {
            len: 1,
            bits: l as u64,
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        letters
            .iter()
            .fold(Word::EMPTY, |w, &l| w.concat(Word::letter(l)))
    }

    /// `x^a` as a word.
    pub fn power(l: Letter, n: usize) -> Word {
        let bits = match l {
            Letter::X => 0,
            Letter::Y => (1u64 << n) - 1,
        };
        Word::from_bits(n, bits)
    }

    /// Parses juxtaposed letters of `alphabet`, e.g. `"xxy"`.
    pub fn parse(s: &str, alphabet: Alphabet) -> Option<Word> {
        let [a, b] = alphabet.symbols();
        let mut w = Word::EMPTY;
        for c in s.chars() {
            let l = if c == a {
                Letter::X
            } else if c == b {
                Letter::Y
            } else {
                return None;
            };
            if w.len() == MAX_WEIGHT {
                return None;
            }
            w = w.concat(Word::letter(l));
        }
        Some(w)
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// The `i`-th letter from the left.
    pub fn at(self, i: usize) -> Letter {
        assert!(i < self.len());
        Letter::from_bit(self.bits >> (self.len() - 1 - i))
    }

    pub fn first(self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.at(0))
    }

    pub fn last(self) -> Option<Letter> {
        (!self.is_empty()).then(|| Letter::from_bit(self.bits))
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(move |i| self.at(i))
    }

    pub fn concat(self, rhs: Word) -> Word {
        let len = self.len() + rhs.len();
        assert!(
            len <= MAX_WEIGHT,
            "word of length {len} exceeds {MAX_WEIGHT}"
        );
        Word {
            len: len as u8,
            bits: (self.bits << rhs.len) | rhs.bits,
        }
    }

    /// Splits off the last letter.
    pub fn split_last(self) -> Option<(Word, Letter)> {
        let last = self.last()?;
        Some((
            Word {
                len: self.len - 1,
                bits: self.bits >> 1,
            },
            last,
        ))
    }

    pub fn prefix(self, n: usize) -> Word {
        assert!(n <= self.len());
        Word::from_bits(n, self.bits >> (self.len() - n))
    }

    pub fn suffix_from(self, n: usize) -> Word {
        assert!(n <= self.len());
        let k = self.len() - n;
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Word::from_bits(k, self.bits & mask)
    }

    pub fn count(self, l: Letter) -> usize {
        let ones = self.bits.count_ones() as usize;
        match l {
            Letter::Y => ones,
            Letter::X => self.len() - ones,
        }
    }

    /// Reverse the word and swap the two letters: the duality map on words.
    pub fn dual(self) -> Word {
        let n = self.len();
        if n == 0 {
            return self;
        }
        let rev = self.bits.reverse_bits() >> (64 - n);
        let mask = (1u64 << n) - 1;
        Word::from_bits(n, !rev & mask)
    }

    /// Empty, or starting with `x` and ending with `y`.
    pub fn is_admissible(self) -> bool {
        self.is_empty() || (self.first() == Some(Letter::X) && self.last() == Some(Letter::Y))
    }

    /// Lexicographic order with `1 < x < y` in which a proper prefix is
    /// smaller than its extensions. This is the leading-word order.
    pub fn lex_cmp(self, other: Word) -> Ordering {
        let n = self.len().min(other.len());
        let a = self.prefix(n).bits;
        let b = other.prefix(n).bits;
        a.cmp(&b).then(self.len().cmp(&other.len()))
    }

    /// All `2^n` words of length `n` in canonical order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 32, "refusing to enumerate 2^{n} words");
        (0..(1u64 << n)).map(move |b| Word::from_bits(n, b))
    }

    /// Admissible words of length `n` in canonical order.
    pub fn admissible_of_length(n: usize) -> impl Iterator<Item = Word> {
        Word::all_of_length(n).filter(|w| w.is_admissible())
    }

    pub fn render(self, alphabet: Alphabet) -> String {
        let [a, b] = alphabet.symbols();
        if self.is_empty() {
            return "1".into();
        }
        self.letters()
            .map(|l| if l == Letter::X { a } else { b })
            .collect()
    }

    /// Rendering with runs of two or more equal letters written as powers,
    /// e.g. `x^2yxy^3`.
    pub fn render_compact(self, alphabet: Alphabet) -> String {
        let [a, b] = alphabet.symbols();
        if self.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let letters: Vec<Letter> = self.letters().collect();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            out.push(if l == Letter::X { a } else { b });
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Alphabet::XY))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render(Alphabet::XY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::XY).unwrap()
    }

    #[test]
    fn concat_and_letters() {
        let a = w("xy");
        let b = w("yx");
        assert_eq!(a.concat(b), w("xyyx"));
        assert_eq!(a.concat(Word::EMPTY), a);
        assert_eq!(w("xxy").at(2), Letter::Y);
        assert_eq!(w("xxy").split_last(), Some((w("xx"), Letter::Y)));
        assert_eq!(w("xyxy").count(Letter::Y), 2);
    }

    #[test]
    fn dual_reverses_and_swaps() {
        assert_eq!(w("xxy").dual(), w("xyy"));
        assert_eq!(w("xy").dual(), w("xy"));
        assert_eq!(w("xyxy").dual(), w("xyxy"));
        assert_eq!(Word::EMPTY.dual(), Word::EMPTY);
        for word in Word::all_of_length(7) {
            assert_eq!(word.dual().dual(), word);
        }
    }

    #[test]
    fn admissibility() {
        assert!(w("xy").is_admissible());
        assert!(Word::EMPTY.is_admissible());
        assert!(!w("y").is_admissible());
        assert!(!w("xx").is_admissible());
        assert_eq!(Word::admissible_of_length(5).count(), 8);
    }

    #[test]
    fn canonical_and_lex_orders() {
        assert!(w("y") < w("xx"));
        assert!(w("xy") < w("yx"));
        assert_eq!(
            w("x").lex_cmp(w("xz".replace('z', "y").as_str())),
            Ordering::Less
        );
        assert_eq!(w("y").lex_cmp(w("xyy")), Ordering::Greater);
        assert_eq!(Word::EMPTY.lex_cmp(w("x")), Ordering::Less);
    }

    #[test]
    fn rendering() {
        assert_eq!(w("xxyy").to_string(), "xxyy");
        assert_eq!(w("xxyxyyy").render_compact(Alphabet::XY), "x^2yxy^3");
        assert_eq!(w("xy").render(Alphabet::XZ), "xz");
        assert_eq!(Word::parse("xzz", Alphabet::XZ), Some(w("xyy")));
        assert_eq!(Word::parse("xzz", Alphabet::XY), None);
    }
}
