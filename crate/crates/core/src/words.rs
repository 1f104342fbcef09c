//! Alternating words over `{X, Y, X^-1, Y^-1}`.
//!
//! Text form: `X`, `Y` are direct letters, `x`, `y` their inverses. The empty
//! string is the empty word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    X,
    Y,
}

impl Base {
    pub fn other(self) -> Base {
        match self {
            Base::X => Base::Y,
            Base::Y => Base::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub base: Base,
    pub inverted: bool,
}

impl Letter {
    pub const X: Letter = Letter::direct(Base::X);
    pub const Y: Letter = Letter::direct(Base::Y);

    pub const fn direct(base: Base) -> Self {
        Letter {
            base,
            inverted: false,
        }
    }

    pub const fn inverse_of(base: Base) -> Self {
        Letter {
            base,
            inverted: true,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            base: self.base,
            inverted: !self.inverted,
        }
    }

    pub fn to_char(self) -> char {
        match (self.base, self.inverted) {
            (Base::X, false) => 'X',
            (Base::Y, false) => 'Y',
            (Base::X, true) => 'x',
            (Base::Y, true) => 'y',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'X' => Some(Letter::direct(Base::X)),
            'Y' => Some(Letter::direct(Base::Y)),
            'x' => Some(Letter::inverse_of(Base::X)),
            'y' => Some(Letter::inverse_of(Base::Y)),
            _ => None,
        }
    }
}

// Ordered by text form: X < Y < x < y.
impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.inverted, self.base).cmp(&(other.inverted, other.base))
    }
}

/// The two families of directed words, `A_t` (ending in `Y`) and `B_t` (ending in `X`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
}

impl Kind {
    /// The image under the automorphism exchanging `X` and `Y`.
    pub fn swapped(self) -> Kind {
        match self {
            Kind::A => Kind::B,
            Kind::B => Kind::A,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::B => "B",
        })
    }
}

/// A word whose consecutive letters alternate between the `X` and `Y` bases.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, rejecting alternation violations.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(i) = letters.windows(2).position(|p| p[0].base == p[1].base) {
            return Err(Error::parse(
                i + 1,
                format!(
                    "letter '{}' may not follow '{}'",
                    letters[i + 1].to_char(),
                    letters[i].to_char()
                ),
            ));
        }
        Ok(Word(letters))
    }

    /// Parses the text form; `1` (as printed for the empty word) is accepted too.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "1" {
            return Ok(Word::empty());
        }
        let letters = text
            .chars()
            .enumerate()
            .map(|(pos, c)| {
                Letter::from_char(c)
                    .ok_or_else(|| Error::parse(pos, format!("invalid letter '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(a_1 ... a_n)^-1 = a_n^-1 ... a_1^-1`.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    /// Letter-wise `X <-> Y` exchange.
    pub fn swapped(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    base: l.base.other(),
                    inverted: l.inverted,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word::new(v)
    }

    /// `true` iff the word also alternates across the wrap from last to first letter.
    pub fn is_cyclically_alternating(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(first), Some(last)) if self.0.len() > 1 => first.base != last.base,
            (Some(_), Some(_)) => false,
            _ => true,
        }
    }

    /// `true` iff some proper rotation of the word equals the word itself.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        (1..n).any(|k| n.is_multiple_of(k) && self.rotate(k) == *self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// `A_0 = 1`, `A_{t+1} = B_t Y`.
pub fn a_word(t: usize) -> Word {
    directed_word(Kind::A, t)
}

/// `B_0 = 1`, `B_{t+1} = A_t X`.
pub fn b_word(t: usize) -> Word {
    directed_word(Kind::B, t)
}

/// The directed word of the given kind and length.
pub fn directed_word(kind: Kind, t: usize) -> Word {
    // Reading the recursion backwards: the last letter is Y for A and X for B,
    // and bases alternate towards the front.
    let last = match kind {
        Kind::A => Base::Y,
        Kind::B => Base::X,
    };
    let letters = (0..t)
        .map(|i| {
            let from_end = t - 1 - i;
            let base = if from_end.is_multiple_of(2) {
                last
            } else {
                last.other()
            };
            Letter::direct(base)
        })
        .collect();
    Word(letters)
}

/// A maximal directed subword, identified up to inversion with `A_t` or `B_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedComponent {
    pub kind: Kind,
    pub length: usize,
    pub inverted: bool,
}

impl DirectedComponent {
    /// The subword this component stands for.
    pub fn word(&self) -> Word {
        let w = directed_word(self.kind, self.length);
        if self.inverted {
            w.inverse()
        } else {
            w
        }
    }
}

impl fmt::Display for DirectedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.length)?;
        if self.inverted {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// Splits a word into its maximal runs of direct / inverse letters.
pub fn directed_components(w: &Word) -> Vec<DirectedComponent> {
    w.letters()
        .chunk_by(|a, b| a.inverted == b.inverted)
        .map(|run| {
            let inverted = run[0].inverted;
            // A direct run is A_t iff it ends in Y; an inverse run is the
            // inverse of A_t iff it starts with y.
            let marker = if inverted { run[0] } else { run[run.len() - 1] };
            let kind = match marker.base {
                Base::Y => Kind::A,
                Base::X => Kind::B,
            };
            DirectedComponent {
                kind,
                length: run.len(),
                inverted,
            }
        })
        .collect()
}

/// The string equivalence: `w ~ w2` iff `w = w2` or `w = w2^-1`.
pub fn eq_string(w: &Word, w2: &Word) -> bool {
    w == w2 || *w == w2.inverse()
}

/// Membership in the set of band words: even positive length, primitive,
/// both direct and inverse letters present, and alternating around the wrap.
pub fn in_w_prime(w: &Word) -> bool {
    let n = w.len();
    n > 0
        && n.is_multiple_of(2)
        && !w.is_proper_power()
        && w.letters().iter().any(|l| l.inverted)
        && w.letters().iter().any(|l| !l.inverted)
        && w.is_cyclically_alternating()
}

/// Canonical representative of a band word's class under rotation and inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandShape {
    /// The chosen rotation; begins with a direct component and ends with an inverse one.
    pub word: Word,
    /// `true` when `word` is a rotation of the inverse of the input.
    pub from_inverse: bool,
    pub components: Vec<DirectedComponent>,
    /// For two-component bands: `(l1, l2, kind1)` with the direct component
    /// `kind1` of length `l1` and the inverse component of length `l2`.
    pub two_component_scalar: Option<(usize, usize, Kind)>,
}

/// Rotates `w` (or its inverse) to start at a directed-component boundary with
/// a direct first component; among those candidates the lexicographically
/// least letter sequence wins.
pub fn band_canonical(w: &Word) -> Result<BandShape> {
    if !in_w_prime(w) {
        return Err(Error::domain(format!("{w} is not a band word")));
    }
    let n = w.len();
    let inv = w.inverse();
    let mut best: Option<(Word, bool)> = None;
    for (source, from_inverse) in [(w, false), (&inv, true)] {
        for k in 0..n {
            let cand = source.rotate(k);
            let l = cand.letters();
            if l[0].inverted || !l[n - 1].inverted {
                continue;
            }
            match &best {
                Some((b, _)) if *b <= cand => {}
                _ => best = Some((cand, from_inverse)),
            }
        }
    }
    let (word, from_inverse) = best.expect("band words contain a component boundary");
    let components = directed_components(&word);
    let two_component_scalar = match components.as_slice() {
        [d, i] => Some((d.length, i.length, d.kind)),
        _ => None,
    };
    Ok(BandShape {
        word,
        from_inverse,
        components,
        two_component_scalar,
    })
}

/// The band word `A_{l1} B_{l2}^-1`; a band word only when `l1 + l2` is even and positive.
pub fn two_leg_band_word(l1: usize, l2: usize) -> Result<Word> {
    let w = a_word(l1).concat(&b_word(l2).inverse())?;
    if !in_w_prime(&w) {
        return Err(Error::domain(format!(
            "A_{l1} B_{l2}^-1 is not a band word (lengths must be positive with an even sum)"
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("YXY"), a_word(3));
        assert!(w("").is_empty());
        assert_eq!(w("").to_string(), "1");
        assert_eq!(w("XYxy").to_string(), "XYxy");
        assert!(matches!(
            Word::parse("XX"),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(matches!(
            Word::parse("XYz"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            Word::parse("Xx"),
            Err(Error::Parse { pos: 1, .. })
        ));
    }

    #[test]
    fn inverse_values() {
        assert_eq!(w("YXY").inverse(), w("yxy"));
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("XYx").inverse(), w("Xyx"));
    }

    #[test]
    fn directed_words_follow_recursion() {
        assert_eq!(a_word(0), Word::empty());
        assert_eq!(b_word(0), Word::empty());
        assert_eq!(a_word(1), w("Y"));
        assert_eq!(b_word(2), w("YX"));
        for t in 0..20 {
            assert_eq!(a_word(t + 1), b_word(t).concat(&w("Y")).unwrap());
            assert_eq!(b_word(t + 1), a_word(t).concat(&w("X")).unwrap());
        }
        assert_eq!(a_word(4), w("XYXY"));
    }

    #[test]
    fn components_of_examples() {
        let c = directed_components(&w("XYxy"));
        assert_eq!(
            c,
            vec![
                DirectedComponent {
                    kind: Kind::A,
                    length: 2,
                    inverted: false
                },
                DirectedComponent {
                    kind: Kind::B,
                    length: 2,
                    inverted: true
                },
            ]
        );
        assert!(directed_components(&Word::empty()).is_empty());
        for t in 1..20 {
            assert_eq!(
                directed_components(&a_word(t)),
                vec![DirectedComponent {
                    kind: Kind::A,
                    length: t,
                    inverted: false
                }]
            );
            assert_eq!(
                directed_components(&b_word(t)),
                vec![DirectedComponent {
                    kind: Kind::B,
                    length: t,
                    inverted: false
                }]
            );
        }
        // x y^-1 ... : the run "xy" inverts to YX = B_2.
        assert_eq!(directed_components(&w("xy"))[0].kind, Kind::B);
        assert_eq!(directed_components(&w("yx"))[0].kind, Kind::A);
    }

    #[test]
    fn eq_string_values() {
        assert!(eq_string(&w("YXY"), &w("yxy")));
        assert!(!eq_string(&w("YXY"), &w("XYX")));
        assert!(eq_string(&w("XYx"), &w("XYx")));
    }

    #[test]
    fn w_prime_membership() {
        assert!(in_w_prime(&w("XYxy")));
        assert!(!in_w_prime(&w("XY")));
        assert!(!in_w_prime(&w("XYxyXYxy")));
        assert!(!in_w_prime(&w("")));
        assert!(!in_w_prime(&w("XYx")));
        assert!(in_w_prime(&w("Yx")));
    }

    #[test]
    fn canonical_two_component_shapes() {
        let s = band_canonical(&w("XYxy")).unwrap();
        assert_eq!(s.components.len(), 2);
        assert_eq!(s.two_component_scalar, Some((2, 2, Kind::A)));
        // Xy < Yx, so the inverse rotation is chosen.
        let s = band_canonical(&w("Yx")).unwrap();
        assert_eq!(s.word, w("Xy"));
        assert!(s.from_inverse);
        assert_eq!(s.two_component_scalar, Some((1, 1, Kind::B)));
        assert!(band_canonical(&w("XY")).is_err());
    }

    #[test]
    fn two_leg_words() {
        assert_eq!(two_leg_band_word(1, 1).unwrap(), w("Yx"));
        assert_eq!(two_leg_band_word(2, 2).unwrap(), w("XYxy"));
        assert!(two_leg_band_word(2, 1).is_err());
        for l1 in 1..8 {
            for l2 in 1..8 {
                if (l1 + l2) % 2 == 0 {
                    let word = two_leg_band_word(l1, l2).unwrap();
                    assert!(in_w_prime(&word), "{word}");
                    let c = directed_components(&word);
                    assert_eq!(
                        c[0],
                        DirectedComponent {
                            kind: Kind::A,
                            length: l1,
                            inverted: false
                        }
                    );
                    assert_eq!(
                        c[1],
                        DirectedComponent {
                            kind: Kind::B,
                            length: l2,
                            inverted: true
                        }
                    );
                }
            }
        }
    }
}
