//! Weighted letters, words, letter orders and Lyndon machinery.
//!
//! Letters are `y_k` with a positive weight (by default `k`). The default
//! order is `y1 > y2 > y3 > ⋯`. A word is Lyndon when it is nonempty and
//! strictly smaller, lexicographically, than each of its proper right
//! factors; lexicographic order puts a proper prefix before its extensions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter `y_index` carrying its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u32,
    weight: u32,
}

impl Letter {
    /// `y_k` with the default weight `k`.
    pub fn y(index: u32) -> Letter {
        assert!(index >= 1, "letter indices start at 1");
        Letter {
            index,
            weight: index,
        }
    }

    pub fn with_weight(index: u32, weight: u32) -> Result<Letter> {
        if index == 0 {
            return Err(Error::Parse("letter index must be positive".into()));
        }
        if weight == 0 {
            return Err(Error::Parse(format!("letter y{index} needs a positive weight")));
        }
        Ok(Letter { index, weight })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

/// The default order: a smaller index is a greater letter.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .index
            .cmp(&self.index)
            .then(self.weight.cmp(&other.weight))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}", self.index)
    }
}

/// Total order on letters, induced by their indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LetterOrder {
    /// `y1 > y2 > ⋯`
    #[default]
    Decreasing,
    /// `y1 < y2 < ⋯`
    Increasing,
}

impl LetterOrder {
    pub fn cmp_letters(self, a: &Letter, b: &Letter) -> Ordering {
        match self {
            LetterOrder::Decreasing => a.cmp(b),
            LetterOrder::Increasing => b.cmp(a),
        }
    }

    /// Lexicographic comparison; a proper prefix is smaller.
    pub fn cmp_words(self, a: &Word, b: &Word) -> Ordering {
        for (x, y) in a.letters.iter().zip(&b.letters) {
            match self.cmp_letters(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }
}

/// An element of the free monoid; the empty word is the unit `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    weight: u32,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        let weight = letters.iter().map(|l| l.weight).sum();
        Word { letters, weight }
    }

    pub fn letter(l: Letter) -> Word {
        Word {
            weight: l.weight,
            letters: vec![l],
        }
    }

    /// Word over default-weight letters, e.g. `Word::from_indices(&[2, 1])` is `y2.y1`.
    pub fn from_indices(indices: &[u32]) -> Word {
        Word::new(indices.iter().map(|&k| Letter::y(k)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            weight: self.weight + other.weight,
        }
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(l);
        letters.extend_from_slice(&self.letters);
        Word {
            letters,
            weight: self.weight + l.weight,
        }
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..n {
            w = w.concat(self);
        }
        w
    }

    /// The factor `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::new(self.letters[start..end].to_vec())
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Parses `y<k>(.y<k>)*` or `1`, resolving letters through `resolve`.
    pub fn parse_with(text: &str, resolve: &dyn Fn(u32) -> Result<Letter>) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in text.split('.') {
            let idx = part
                .strip_prefix('y')
                .and_then(|d| d.parse::<u32>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::Parse(format!("bad letter `{part}` in word `{text}`")))?;
            letters.push(resolve(idx)?);
        }
        Ok(Word::new(letters))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse_with(s, &|k| Ok(Letter::y(k)))
    }
}

/// Canonical term order: weight, then length, then lexicographic under the
/// default letter order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.len().cmp(&other.len()))
            .then_with(|| LetterOrder::Decreasing.cmp_words(self, other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite weighted alphabet with unique indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new(mut letters: Vec<Letter>) -> Result<Alphabet> {
        letters.sort_by_key(|l| l.index);
        if letters.windows(2).any(|w| w[0].index == w[1].index) {
            return Err(Error::Parse("duplicate letter index in alphabet".into()));
        }
        Ok(Alphabet { letters })
    }

    /// `{y1, …, yn}` with `weight(y_k) = k`.
    pub fn standard(n: u32) -> Alphabet {
        Alphabet {
            letters: (1..=n).map(Letter::y).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn get(&self, index: u32) -> Option<Letter> {
        self.letters.iter().copied().find(|l| l.index == index)
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.get(l.index) == Some(*l)
    }

    pub fn resolve(&self, index: u32) -> Result<Letter> {
        self.get(index).ok_or(Error::LetterOutsideAlphabet(index))
    }

    pub fn restrict(&self, max_weight: u32) -> Alphabet {
        Alphabet {
            letters: self
                .letters
                .iter()
                .copied()
                .filter(|l| l.weight <= max_weight)
                .collect(),
        }
    }

    /// All words of weight exactly `n`, in canonical order.
    pub fn words_of_weight(&self, n: u32) -> Vec<Word> {
        let mut table: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        for m in 1..=n {
            let mut here = Vec::new();
            for l in &self.letters {
                if l.weight <= m {
                    for w in &table[(m - l.weight) as usize] {
                        here.push(w.prepend(*l));
                    }
                }
            }
            here.sort();
            table.push(here);
        }
        table.pop().unwrap_or_default()
    }

    /// All words of weight at most `n` (including the empty word), in canonical order.
    pub fn words_up_to(&self, n: u32) -> Vec<Word> {
        (0..=n).flat_map(|m| self.words_of_weight(m)).collect()
    }
}

/// Lyndon test under `order`: nonempty and strictly smaller than every proper right factor.
pub fn is_lyndon(w: &Word, order: LetterOrder) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|i| order.cmp_words(w, &w.slice(i, w.len())) == Ordering::Less)
}

/// The Lyndon words of weight at most `weight_bound`, ascending for `order`.
///
/// Words are generated weight by weight from pairs `(s, r)` that are standard
/// factorizations: `s < r` both Lyndon, and `s` is a letter or the right
/// factor of `s` is `≥ r`.
pub fn lyndon_up_to(alphabet: &Alphabet, order: LetterOrder, weight_bound: u32) -> Result<Vec<Word>> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    // by weight: (word, right standard factor if any)
    let mut by_weight: Vec<Vec<(Word, Option<Word>)>> = vec![Vec::new(); weight_bound as usize + 1];
    for n in 1..=weight_bound {
        let mut here: Vec<(Word, Option<Word>)> = alphabet
            .letters()
            .iter()
            .filter(|l| l.weight == n)
            .map(|l| (Word::letter(*l), None))
            .collect();
        for a in 1..n {
            for (s, s_right) in &by_weight[a as usize] {
                for (r, _) in &by_weight[(n - a) as usize] {
                    if order.cmp_words(s, r) != Ordering::Less {
                        continue;
                    }
                    let ok = match s_right {
                        None => true,
                        Some(sr) => order.cmp_words(sr, r) != Ordering::Less,
                    };
                    if ok {
                        here.push((s.concat(r), Some(r.clone())));
                    }
                }
            }
        }
        by_weight[n as usize] = here;
    }
    let mut out: Vec<Word> = by_weight.into_iter().flatten().map(|(w, _)| w).collect();
    out.sort_by(|a, b| order.cmp_words(a, b));
    Ok(out)
}

/// Standard factorization `(s, r)` of a Lyndon word of length at least 2:
/// `r` is the longest proper right factor that is Lyndon.
pub fn standard_factorization(l: &Word, order: LetterOrder) -> Result<(Word, Word)> {
    if l.len() < 2 || !is_lyndon(l, order) {
        return Err(Error::NoStandardFactorization);
    }
    for i in 1..l.len() {
        let r = l.slice(i, l.len());
        if is_lyndon(&r, order) {
            return Ok((l.slice(0, i), r));
        }
    }
    unreachable!("the last letter is always a Lyndon right factor")
}

/// Chen–Fox–Lyndon factorization by Duval's algorithm, grouped into powers:
/// `w = l1^i1 ⋯ lk^ik` with `l1 > ⋯ > lk`.
pub fn cfl_factorization(w: &Word, order: LetterOrder) -> Vec<(Word, usize)> {
    let s = w.letters();
    let n = s.len();
    let mut factors: Vec<Word> = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n {
            match order.cmp_letters(&s[k], &s[j]) {
                Ordering::Less => k = i,
                Ordering::Equal => k += 1,
                Ordering::Greater => break,
            }
            j += 1;
        }
        while i <= k {
            factors.push(w.slice(i, i + j - k));
            i += j - k;
        }
    }
    let mut grouped: Vec<(Word, usize)> = Vec::new();
    for f in factors {
        match grouped.last_mut() {
            Some((last, count)) if *last == f => *count += 1,
            _ => grouped.push((f, 1)),
        }
    }
    grouped
}

/// Lyndon words of an alphabet grouped by weight; convenience for tables.
pub fn lyndon_by_weight(alphabet: &Alphabet, order: LetterOrder, weight_bound: u32) -> Result<BTreeMap<u32, Vec<Word>>> {
    let mut map: BTreeMap<u32, Vec<Word>> = BTreeMap::new();
    for l in lyndon_up_to(alphabet, order, weight_bound)? {
        map.entry(l.weight()).or_default().push(l);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Brute-force oracle: every nonempty word tested against the suffix condition.
    fn lyndon_brute(alpha: &Alphabet, order: LetterOrder, bound: u32) -> Vec<Word> {
        let mut v: Vec<Word> = alpha
            .words_up_to(bound)
            .into_iter()
            .filter(|u| !u.is_empty())
            .filter(|u| {
                (1..u.len()).all(|i| order.cmp_words(u, &u.slice(i, u.len())) == Ordering::Less)
            })
            .collect();
        v.sort_by(|a, b| order.cmp_words(a, b));
        v
    }

    #[test]
    fn single_letter_alphabet() {
        let a = Alphabet::new(vec![Letter::y(1)]).unwrap();
        assert_eq!(lyndon_up_to(&a, LetterOrder::Decreasing, 3).unwrap(), vec![w("y1")]);
    }

    #[test]
    fn two_letters_bound_three() {
        let a = Alphabet::standard(2);
        let got = lyndon_up_to(&a, LetterOrder::Decreasing, 3).unwrap();
        assert_eq!(got, lyndon_brute(&a, LetterOrder::Decreasing, 3));
        // lexicographic: the prefix y2 precedes y2.y1
        assert_eq!(got, vec![w("y2"), w("y2.y1"), w("y1")]);
    }

    #[test]
    fn two_letters_bound_four() {
        let a = Alphabet::standard(2);
        let got = lyndon_up_to(&a, LetterOrder::Decreasing, 4).unwrap();
        assert!(got.contains(&w("y2.y1.y1")));
        assert!(!got.contains(&w("y2.y2")));
    }

    #[test]
    fn empty_alphabet_rejected() {
        let a = Alphabet::new(vec![]).unwrap();
        assert_eq!(lyndon_up_to(&a, LetterOrder::Decreasing, 2), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn generation_matches_brute_force() {
        for order in [LetterOrder::Decreasing, LetterOrder::Increasing] {
            for alpha in [Alphabet::standard(3), Alphabet::standard(6)] {
                assert_eq!(
                    lyndon_up_to(&alpha, order, 6).unwrap(),
                    lyndon_brute(&alpha, order, 6)
                );
            }
            let equal_weights = Alphabet::new(vec![
                Letter::with_weight(1, 1).unwrap(),
                Letter::with_weight(2, 1).unwrap(),
            ])
            .unwrap();
            assert_eq!(
                lyndon_up_to(&equal_weights, order, 6).unwrap(),
                lyndon_brute(&equal_weights, order, 6)
            );
        }
    }

    #[test]
    fn standard_factorization_examples() {
        let o = LetterOrder::Decreasing;
        assert_eq!(standard_factorization(&w("y2.y1"), o).unwrap(), (w("y2"), w("y1")));
        assert_eq!(
            standard_factorization(&w("y2.y1.y1"), o).unwrap(),
            (w("y2.y1"), w("y1"))
        );
        assert_eq!(standard_factorization(&w("y1"), o), Err(Error::NoStandardFactorization));
        assert_eq!(
            standard_factorization(&w("y1.y2"), o),
            Err(Error::NoStandardFactorization)
        );
    }

    #[test]
    fn cfl_examples() {
        let o = LetterOrder::Decreasing;
        assert!(cfl_factorization(&Word::empty(), o).is_empty());
        assert_eq!(
            cfl_factorization(&w("y1.y1.y2"), o),
            vec![(w("y1"), 2), (w("y2"), 1)]
        );
        assert_eq!(cfl_factorization(&w("y2.y1"), o), vec![(w("y2.y1"), 1)]);
    }

    #[test]
    fn cfl_reproduces_word_with_decreasing_lyndon_factors() {
        let o = LetterOrder::Decreasing;
        for u in Alphabet::standard(3).words_up_to(6) {
            let f = cfl_factorization(&u, o);
            let rebuilt = f
                .iter()
                .fold(Word::empty(), |acc, (l, i)| acc.concat(&l.pow(*i)));
            assert_eq!(rebuilt, u);
            for (l, i) in &f {
                assert!(is_lyndon(l, o));
                assert!(*i >= 1);
            }
            for pair in f.windows(2) {
                assert_eq!(o.cmp_words(&pair[0].0, &pair[1].0), Ordering::Greater);
            }
        }
    }

    #[test]
    fn lyndon_words_are_primitive() {
        for l in lyndon_up_to(&Alphabet::standard(3), LetterOrder::Decreasing, 6).unwrap() {
            for d in 1..l.len() {
                if l.len() % d == 0 {
                    assert_ne!(l.slice(0, d).pow(l.len() / d), l, "{l} is a power");
                }
            }
        }
    }

    #[test]
    fn standard_factorization_properties() {
        let o = LetterOrder::Decreasing;
        for l in lyndon_up_to(&Alphabet::standard(3), o, 6).unwrap() {
            if l.len() < 2 {
                continue;
            }
            let (s, r) = standard_factorization(&l, o).unwrap();
            assert!(is_lyndon(&s, o) && is_lyndon(&r, o));
            assert_eq!(s.concat(&r), l);
            assert_eq!(o.cmp_words(&s.concat(&r), &r.concat(&s)), Ordering::Less);
        }
    }

    #[test]
    fn word_text_round_trip() {
        for text in ["1", "y1", "y2.y1.y1", "y10.y3"] {
            assert_eq!(w(text).to_string(), text);
        }
        assert!("y0".parse::<Word>().is_err());
        assert!("x1".parse::<Word>().is_err());
        assert_eq!(w("y2.y1").weight(), 3);
    }

    #[test]
    fn standard_alphabet_word_counts() {
        let a = Alphabet::standard(5);
        for n in 1..=5u32 {
            assert_eq!(a.words_of_weight(n).len(), 1 << (n - 1));
        }
    }
}
