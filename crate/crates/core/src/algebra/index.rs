use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A composition `(k_1, ..., k_r)`, the argument of a multiple zeta value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Index> {
        if parts.is_empty() {
            return Err(Error::Usage("an index needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Usage("index parts must be positive".into()));
        }
        Ok(Index(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Number of parts that are at least 2.
    pub fn height(&self) -> usize {
        self.0.iter().filter(|&&k| k >= 2).count()
    }

    pub fn is_admissible(&self) -> bool {
        self.0[0] >= 2
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `(3,1)`, `3,1` or `3`.
    fn from_str(s: &str) -> Result<Index> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Usage(format!("bad index `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

/// `(k_1, ..., k_r) -> x^{k_1-1} y ... x^{k_r-1} y`.
pub fn word_from_index(idx: &Index) -> Word {
    idx.parts().iter().fold(Word::EMPTY, |w, &k| {
        w.concat(Word::power(Letter::X, k as usize - 1))
            .concat(Word::letter(Letter::Y))
    })
}

/// Inverse of [`word_from_index`]; the word must be nonempty and end in `y`.
pub fn index_from_word(w: Word) -> Result<Index> {
    if w.last() != Some(Letter::Y) {
        return Err(Error::NotAnIndexWord(w.to_string()));
    }
    let mut parts = Vec::new();
    let mut run = 1u32;
    for l in w.letters() {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                parts.push(run);
                run = 1;
            }
        }
    }
    Ok(Index(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word::Alphabet;

    fn idx(p: &[u32]) -> Index {
        Index::new(p.to_vec()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::XY).unwrap()
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(word_from_index(&idx(&[3])), w("xxy"));
        assert_eq!(word_from_index(&idx(&[2, 1])), w("xyy"));
        assert_eq!(word_from_index(&idx(&[2, 2])), w("xyxy"));
    }

    #[test]
    fn decoding_examples() {
        let i = index_from_word(w("xxy")).unwrap();
        assert_eq!(
            (i.parts(), i.weight(), i.depth(), i.height()),
            (&[3][..], 3, 1, 1)
        );
        let i = index_from_word(w("xyxy")).unwrap();
        assert_eq!((i.parts(), i.height()), (&[2, 2][..], 2));
        let i = index_from_word(w("xyy")).unwrap();
        assert_eq!((i.parts(), i.height()), (&[2, 1][..], 1));
        assert!(matches!(
            index_from_word(w("xyx")),
            Err(Error::NotAnIndexWord(_))
        ));
        assert!(index_from_word(Word::EMPTY).is_err());
    }

    #[test]
    fn empty_index_is_rejected() {
        assert!(matches!(Index::new(vec![]), Err(Error::Usage(_))));
        assert!("()".parse::<Index>().is_err());
        assert_eq!("(3,1)".parse::<Index>().unwrap(), idx(&[3, 1]));
        assert_eq!(idx(&[3, 1]).to_string(), "(3,1)");
    }

    #[test]
    fn admissible_words_round_trip_to_weight_12() {
        for n in 1..=12 {
            for word in Word::all_of_length(n).filter(|w| w.last() == Some(Letter::Y)) {
                let i = index_from_word(word).unwrap();
                assert_eq!(word_from_index(&i), word);
                assert_eq!(i.weight(), n);
                assert_eq!(i.depth(), word.count(Letter::Y));
                assert_eq!(i.is_admissible(), word.is_admissible());
                let xy_count = (0..n - 1)
                    .filter(|&k| word.at(k) == Letter::X && word.at(k + 1) == Letter::Y)
                    .count();
                assert_eq!(i.height(), xy_count);
            }
        }
    }
}
