//! Shared inputs for the criterion benches.

use nonorient::Word;

/// `(a b)^3 a (a b)^-3 a^-1` over generators `a = 0`, `b = 1`.
pub fn braid_center_word() -> Word {
    let ab = Word::from_codes(&[1, 2]);
    ab.pow(3).multiply(&Word::gen(0)).multiply(&ab.pow(-3)).multiply(&Word::gen(0).inverse())
}
