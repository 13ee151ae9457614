//! Reduced words in free groups and their evaluation on matrix tuples.
//!
//! Words over `Z_p * Z_q` are plain free-group words: the relations hold on
//! evaluation because the assigned matrices have the right orders.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::linalg::{inverse, orthogonal_inverse, Form, LinalgError, Matrix, Scalar};

/// A generator `gen >= 1` raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("generator index 0 is not allowed")]
    ZeroGenerator,
    #[error("generator {0} outside the allowed range 1..={1}")]
    GeneratorOutOfRange(u32, u32),
    #[error("no matrix assigned to generator {0}")]
    Unassigned(u32),
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Free reduction of a raw letter sequence.
pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Result<Word, WordError> {
    let mut out: Vec<Letter> = Vec::new();
    for letter in raw {
        if letter.gen == 0 {
            return Err(WordError::ZeroGenerator);
        }
        if out.last() == Some(&letter.inv()) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    Ok(Word(out))
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(gen: u32) -> Self {
        Word(vec![Letter::new(gen, false)])
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

    /// The word without its last letter, and that letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), last))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation followed by reduction.
    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(&other.0).copied()).expect("letters already validated")
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.gen).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    /// `a`, `b`, ... for generators 1, 2, ...; upper case for inverses; `1`
    /// for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            let c = match char::from_u32('a' as u32 + l.gen - 1) {
                Some(c) if l.gen <= 26 => c,
                _ => return write!(f, "[{}{}]", l.gen, if l.inverse { "^-1" } else { "" }),
            };
            let c = if l.inverse { c.to_ascii_uppercase() } else { c };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses `"abAB"`-style strings; `""` and `"1"` are the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let letters = s
            .chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(Letter::new(c as u32 - 'a' as u32 + 1, false))
                } else if c.is_ascii_uppercase() {
                    Ok(Letter::new(c as u32 - 'A' as u32 + 1, true))
                } else {
                    Err(WordError::Parse(s.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        reduce(letters)
    }
}

/// Exponent sums per generator, the image under abelianization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianImage(pub Vec<i64>);

impl AbelianImage {
    pub fn get(&self, gen: u32) -> i64 {
        self.0.get(gen as usize - 1).copied().unwrap_or(0)
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;

    fn add(self, rhs: AbelianImage) -> AbelianImage {
        let n = self.0.len().max(rhs.0.len());
        AbelianImage(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

/// Abelianization `F_k -> Z^k`.
pub fn abelianize_k(w: &Word, num_gens: u32) -> Result<AbelianImage, WordError> {
    let mut sums = vec![0i64; num_gens as usize];
    for l in w.letters() {
        if l.gen > num_gens {
            return Err(WordError::GeneratorOutOfRange(l.gen, num_gens));
        }
        sums[l.gen as usize - 1] += l.exponent();
    }
    Ok(AbelianImage(sums))
}

/// Abelianization `F_2 -> Z^2`.
pub fn abelianize(w: &Word) -> Result<(i64, i64), WordError> {
    let img = abelianize_k(w, 2)?;
    Ok((img.0[0], img.0[1]))
}

/// All reduced words of length `<= max_len` over `num_gens` generators in
/// shortlex order: shorter words first, then lexicographic with the letter
/// order `a < A < b < B < ...`. The identity comes first.
pub fn enumerate_words(max_len: usize, num_gens: u32) -> Vec<Word> {
    WordIter::new(max_len, num_gens).collect()
}

/// Streaming form of [`enumerate_words`].
pub struct WordIter {
    alphabet: Vec<Letter>,
    max_len: usize,
    frontier: Vec<Word>,
    pos: usize,
    len: usize,
}

impl WordIter {
    pub fn new(max_len: usize, num_gens: u32) -> Self {
        let alphabet = (1..=num_gens)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect();
        WordIter {
            alphabet,
            max_len,
            frontier: vec![Word::identity()],
            pos: 0,
            len: 0,
        }
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.pos == self.frontier.len() {
            if self.len == self.max_len || self.alphabet.is_empty() {
                return None;
            }
            let next: Vec<Word> = self
                .frontier
                .iter()
                .flat_map(|w| {
                    self.alphabet
                        .iter()
                        .filter(move |&&l| w.0.last() != Some(&l.inv()))
                        .map(move |&l| {
                            let mut v = w.0.clone();
                            v.push(l);
                            Word(v)
                        })
                })
                .collect();
            self.frontier = next;
            self.pos = 0;
            self.len += 1;
        }
        let w = self.frontier.get(self.pos).cloned();
        self.pos += 1;
        w
    }
}

/// Generator images together with their inverses.
#[derive(Clone)]
pub struct Assignment<T> {
    dim: usize,
    images: BTreeMap<u32, (Matrix<T>, Matrix<T>)>,
}

impl<T: Scalar> std::fmt::Debug for Assignment<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Assignment")
            .field("dim", &self.dim)
            .field("images", &self.images)
            .finish()
    }
}

impl<T: Scalar> Assignment<T> {
    /// Inverses taken as `A^T` (standard form) or `J A^T J` (J form).
    pub fn orthogonal(
        form: Form,
        gens: impl IntoIterator<Item = (u32, Matrix<T>)>,
    ) -> Result<Self, WordError> {
        Self::build(gens, |m| Ok(orthogonal_inverse(m, form)?))
    }

    /// Inverses by exact (or pivoted float) elimination.
    pub fn general(gens: impl IntoIterator<Item = (u32, Matrix<T>)>) -> Result<Self, WordError> {
        Self::build(gens, |m| Ok(inverse(m)?))
    }

    fn build(
        gens: impl IntoIterator<Item = (u32, Matrix<T>)>,
        inv: impl Fn(&Matrix<T>) -> Result<Matrix<T>, WordError>,
    ) -> Result<Self, WordError> {
        let mut images = BTreeMap::new();
        let mut dim = None;
        for (g, m) in gens {
            if g == 0 {
                return Err(WordError::ZeroGenerator);
            }
            let d = m.dim()?;
            if let Some(prev) = dim {
                if prev != d {
                    return Err(LinalgError::DimensionMismatch {
                        op: "assignment",
                        left: (prev, prev),
                        right: (d, d),
                    }
                    .into());
                }
            }
            dim = Some(d);
            let mi = inv(&m)?;
            images.insert(g, (m, mi));
        }
        Ok(Assignment {
            dim: dim.unwrap_or(0),
            images,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, gen: u32) -> Option<&Matrix<T>> {
        self.images.get(&gen).map(|(m, _)| m)
    }

    /// Image of a single letter: the generator matrix or its inverse.
    pub fn letter_image(&self, l: Letter) -> Result<&Matrix<T>, WordError> {
        let (m, mi) = self.images.get(&l.gen).ok_or(WordError::Unassigned(l.gen))?;
        Ok(if l.inverse { mi } else { m })
    }
}

/// Product of the assigned matrices (or their inverses) in word order.
pub fn evaluate<T: Scalar>(w: &Word, assignment: &Assignment<T>) -> Result<Matrix<T>, WordError> {
    let mut acc: Option<Matrix<T>> = None;
    for &l in w.letters() {
        let factor = assignment.letter_image(l)?;
        acc = Some(match acc {
            None => factor.clone(),
            Some(a) => a.mul(factor)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Matrix::identity(assignment.dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, GaussianRational, Tolerance};
    use crate::sample;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        assert_eq!(w("abB"), w("a"));
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("abA").len(), 3);
        assert_eq!(w("abBA"), Word::identity());
        assert_eq!(
            reduce([Letter::new(0, false)]),
            Err(WordError::ZeroGenerator)
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["1", "a", "abAB", "bbA"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("a1".parse::<Word>().is_err());
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(abelianize(&w("abA")).unwrap(), (0, 1));
        assert_eq!(abelianize(&Word::identity()).unwrap(), (0, 0));
        assert_eq!(abelianize(&w("aaBBB")).unwrap(), (2, -3));
        assert_eq!(
            abelianize(&w("ac")),
            Err(WordError::GeneratorOutOfRange(3, 2))
        );
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_words(0, 2), vec![Word::identity()]);
        let one: Vec<String> = enumerate_words(1, 2).iter().map(|x| x.to_string()).collect();
        assert_eq!(one, ["1", "a", "A", "b", "B"]);
        assert_eq!(enumerate_words(2, 2).len(), 1 + 4 + 4 * 3);
        // 1 + 4 * (1 + 3 + 9 + 27)
        assert_eq!(enumerate_words(4, 2).len(), 161);
        let words = enumerate_words(3, 3);
        assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert!(words.iter().all(|x| reduce(x.letters().iter().copied()).unwrap() == *x));
    }

    #[test]
    fn evaluate_examples() {
        let a = Matrix::diagonal(vec![rat(2, 1), rat(3, 1)]);
        let b = Matrix::diagonal(vec![rat(5, 1), rat(-1, 7)]);
        let asg = Assignment::general([(1, a.clone()), (2, b)]).unwrap();
        assert_eq!(evaluate(&Word::identity(), &asg).unwrap(), Matrix::identity(2));
        assert_eq!(evaluate(&w("a"), &asg).unwrap(), a);
        assert_eq!(evaluate(&w("abAB"), &asg).unwrap(), Matrix::identity(2));
        assert_eq!(evaluate(&w("c"), &asg), Err(WordError::Unassigned(3)));
    }

    #[test]
    fn singular_generator_is_rejected() {
        let z = Matrix::<GaussianRational>::zeros(2, 2);
        assert!(matches!(
            Assignment::general([(1, z)]),
            Err(WordError::Linalg(LinalgError::Singular))
        ));
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1u32..=2, any::<bool>()), 0..max_len)
            .prop_map(|v| reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn evaluation_is_multiplicative(u in word_strategy(6), v in word_strategy(6), seed in 0u64..1000) {
            let mut rng = sample::rng(seed);
            let gens: Vec<_> = (1..=2).map(|g| {
                // Unit lower-triangular plus diagonal shift keeps it invertible.
                let mut m = sample::exact_matrix(&mut rng, 3);
                for i in 0..3 { for j in i + 1..3 { m[(i, j)] = rat(0, 1); } m[(i, i)] = rat(i as i64 + 2, 1); }
                (g, m)
            }).collect();
            let asg = Assignment::general(gens).unwrap();
            let lhs = evaluate(&u.concat(&v), &asg).unwrap();
            let rhs = evaluate(&u, &asg).unwrap().mul(&evaluate(&v, &asg).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn abelianization_is_additive(u in word_strategy(8), v in word_strategy(8)) {
            let lhs = abelianize_k(&u.concat(&v), 2).unwrap();
            let rhs = abelianize_k(&u, 2).unwrap() + abelianize_k(&v, 2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn orthogonal_inverse_is_transpose(u in word_strategy(6), seed in 0u64..1000) {
            let gens = (1..=2).map(|g| (g, crate::so::random_so::<GaussianRational>(4, seed * 2 + g as u64).unwrap())).collect::<Vec<_>>();
            let asg = Assignment::orthogonal(Form::Standard, gens).unwrap();
            let direct = evaluate(&u.inverse(), &asg).unwrap();
            let transposed = evaluate(&u, &asg).unwrap().transpose();
            prop_assert!(direct.approx_eq(&transposed, &Tolerance::default()));
        }
    }
}
