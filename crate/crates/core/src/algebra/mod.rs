//! Words, indices and polynomials of the free algebra `Q<x, y>`.

mod index;
mod poly;
mod word;

pub use index::{index_from_word, word_from_index, Index};
pub use poly::{is_z_polynomial, leading_word, poly_mul, to_xy_basis, to_xz_basis, NCPoly};
pub use word::{Alphabet, Letter, Word, MAX_WEIGHT};
