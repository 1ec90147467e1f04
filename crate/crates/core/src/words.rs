//! Letters, linear and cyclic words, Wicks-form validation and canonical forms.
//!
//! A letter is a base symbol together with an orientation. Bases are opaque
//! `u32` identifiers; human-readable names only exist at the parsing and
//! rendering boundary (see [`Alphabet`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::topology;

/// A signed symbol: base `b` with orientation `+1` or `-1`.
///
/// Packed as `2 * base + inverted`, so the derived ordering puts a positive
/// letter right before its inverse and orders bases by index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(base: u32, inverted: bool) -> Self {
        Letter((base << 1) | inverted as u32)
    }

    pub const fn positive(base: u32) -> Self {
        Self::new(base, false)
    }

    pub const fn negative(base: u32) -> Self {
        Self::new(base, true)
    }

    #[inline]
    pub const fn base(self) -> u32 {
        self.0 >> 1
    }

    #[inline]
    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub const fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", default_name(self.base()))?;
        if self.is_inverse() {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// Generated base name: `a`..`z`, then `a1`..`z1`, `a2`, ...
pub fn default_name(base: u32) -> String {
    let ch = (b'a' + (base % 26) as u8) as char;
    match base / 26 {
        0 => ch.to_string(),
        k => format!("{ch}{k}"),
    }
}

/// A finite sequence of letters; a linear representative of a cyclic word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.letters.iter()
    }

    /// Cyclic shift to the left by `k`: position `k` becomes position 0.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.letters.len());
        }
        Word { letters }
    }

    /// Largest base index in use, if any.
    pub fn max_base(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.base()).max()
    }

    /// Distinct bases in order of first occurrence.
    pub fn bases(&self) -> Vec<u32> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&l.base()) {
                seen.push(l.base());
            }
        }
        seen
    }

    /// Verbose rendering with generated names (`a b c a' b' c'`).
    pub fn to_verbose(&self) -> String {
        let mut out = String::with_capacity(self.letters.len() * 3);
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&default_name(l.base()));
            if l.is_inverse() {
                out.push('\'');
            }
        }
        out
    }

    /// Compact rendering (`abcABC`); `None` when more than 26 bases are in use.
    pub fn to_compact(&self) -> Option<String> {
        self.letters
            .iter()
            .map(|l| {
                if l.base() >= 26 {
                    return None;
                }
                let c = b'a' + l.base() as u8;
                Some(if l.is_inverse() { c.to_ascii_uppercase() } else { c } as char)
            })
            .collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_verbose())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_verbose())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.letters[i]
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid token {token:?} at byte {position}")]
    InvalidToken { position: usize, token: String },
    #[error("invalid character {ch:?} at byte {position} in compact form")]
    InvalidCharacter { position: usize, ch: char },
}

/// Base names seen while parsing, indexed by base id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of `name`, interning it if unseen.
    pub fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn name(&self, base: u32) -> Option<&str> {
        self.names.get(base as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Renders `word` in verbose syntax. Bases without a known name (for
    /// example edges created by a move) get fresh names `y`, `y1`, `y2`, ...
    /// that do not collide with known ones.
    pub fn render(&self, word: &Word) -> String {
        let mut fresh: HashMap<u32, String> = HashMap::new();
        let mut counter = 0usize;
        let mut out = Vec::with_capacity(word.len());
        for l in word {
            let name = match self.name(l.base()) {
                Some(n) => n.to_string(),
                None => fresh
                    .entry(l.base())
                    .or_insert_with(|| loop {
                        let candidate = match counter {
                            0 => "y".to_string(),
                            k => format!("y{k}"),
                        };
                        counter += 1;
                        if !self.index.contains_key(&candidate) {
                            break candidate;
                        }
                    })
                    .clone(),
            };
            out.push(if l.is_inverse() { format!("{name}'") } else { name });
        }
        out.join(" ")
    }
}

/// Parses either syntax: compact when the input is a single run of ASCII
/// letters, verbose otherwise. Bases are numbered by first appearance.
pub fn parse(text: &str) -> Result<Word, ParseError> {
    parse_with_alphabet(text).map(|(w, _)| w)
}

pub fn parse_with_alphabet(text: &str) -> Result<(Word, Alphabet), ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    if trimmed.bytes().all(|b| b.is_ascii_alphabetic()) && trimmed.bytes().any(|b| b.is_ascii_uppercase()) {
        parse_compact(trimmed)
    } else if trimmed.len() > 1 && trimmed.bytes().all(|b| b.is_ascii_lowercase()) {
        // A lone lowercase run with no inverse marker cannot be a verbose
        // Wicks form of length > 1; read it letter by letter.
        parse_compact(trimmed)
    } else {
        parse_verbose(trimmed)
    }
}

/// Whitespace-separated tokens `[a-z][a-z0-9]*` with an optional `'`.
pub fn parse_verbose(text: &str) -> Result<(Word, Alphabet), ParseError> {
    let mut alphabet = Alphabet::new();
    let mut letters = Vec::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        let position = text[offset..].find(token).map(|p| p + offset).unwrap_or(offset);
        offset = position + token.len();
        let (name, inverted) = match token.strip_suffix('\'') {
            Some(stem) => (stem, true),
            None => (token, false),
        };
        let mut bytes = name.bytes();
        let valid = matches!(bytes.next(), Some(b) if b.is_ascii_lowercase())
            && bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit());
        if !valid {
            return Err(ParseError::InvalidToken { position, token: token.to_string() });
        }
        letters.push(Letter::new(alphabet.intern(name), inverted));
    }
    if letters.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok((Word::new(letters), alphabet))
}

/// ASCII letters; lowercase is positive, uppercase the inverse of the same base.
pub fn parse_compact(text: &str) -> Result<(Word, Alphabet), ParseError> {
    let mut alphabet = Alphabet::new();
    let mut letters = Vec::new();
    for (position, ch) in text.char_indices() {
        if !ch.is_ascii_alphabetic() {
            return Err(ParseError::InvalidCharacter { position, ch });
        }
        let lower = ch.to_ascii_lowercase().to_string();
        letters.push(Letter::new(alphabet.intern(&lower), ch.is_ascii_uppercase()));
    }
    if letters.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok((Word::new(letters), alphabet))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("empty word")]
    Empty,
    #[error("odd length {0}")]
    OddLength(usize),
    #[error("letter {letter:?} does not occur exactly once with each sign")]
    UnpairedLetter { letter: Letter },
    #[error("cancellation {first:?}{second:?} at position {position}")]
    Cancellation { position: usize, first: Letter, second: Letter },
    #[error("reducible pair: factors at positions {first} and {second} are mutually inverse")]
    ReduciblePair { first: usize, second: usize },
}

/// A validated oriented Wicks form.
#[derive(Clone)]
pub struct WicksForm {
    word: Word,
    genus: usize,
    canonical: OnceLock<Word>,
}

impl WicksForm {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Number of edges `e`; the word has length `2e`.
    pub fn edge_count(&self) -> usize {
        self.word.len() / 2
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Length `12g - 6`, equivalently every vertex trivalent.
    pub fn is_maximal(&self) -> bool {
        self.word.len() == maximal_length(self.genus)
    }

    pub fn canonical(&self) -> &Word {
        self.canonical.get_or_init(|| canonicalize(&self.word))
    }

    pub fn into_word(self) -> Word {
        self.word
    }
}

impl fmt::Debug for WicksForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WicksForm")
            .field("word", &self.word.to_verbose())
            .field("genus", &self.genus)
            .finish()
    }
}

impl PartialEq for WicksForm {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for WicksForm {}

/// Length of a maximal form of genus `g`: `6(2g - 1)`.
pub const fn maximal_length(genus: usize) -> usize {
    12 * genus - 6
}

/// Checks the three Wicks conditions (cyclically) and computes the genus.
pub fn validate(word: Word) -> Result<WicksForm, FormError> {
    check_conditions(&word)?;
    let vertices = topology::count_vertices(&word);
    let edges = word.len() / 2;
    // v - e + 1 = 2 - 2g
    let genus = (edges + 1 - vertices) / 2;
    Ok(WicksForm { word, genus, canonical: OnceLock::new() })
}

/// Like [`validate`] but also requires a maximal form of the given genus.
pub fn validate_maximal(word: Word, genus: usize) -> Option<WicksForm> {
    if genus == 0 || word.len() != maximal_length(genus) {
        return None;
    }
    let form = validate(word).ok()?;
    (form.genus == genus).then_some(form)
}

fn check_conditions(word: &Word) -> Result<(), FormError> {
    let n = word.len();
    if n == 0 {
        return Err(FormError::Empty);
    }
    if n % 2 == 1 {
        return Err(FormError::OddLength(n));
    }
    let codes = word.max_base().map_or(0, |b| 2 * (b as usize + 1));
    let mut seen = vec![0u8; codes];
    for &l in word {
        let slot = &mut seen[l.code() as usize];
        *slot += 1;
        if *slot > 1 {
            return Err(FormError::UnpairedLetter { letter: l });
        }
    }
    for &l in word {
        if seen[l.inverse().code() as usize] != 1 {
            return Err(FormError::UnpairedLetter { letter: l });
        }
    }
    // factor table: factor[p][q] = position of the cyclic factor pq
    let mut factor = vec![usize::MAX; codes * codes];
    for i in 0..n {
        let (p, q) = (word[i], word[(i + 1) % n]);
        if q == p.inverse() {
            return Err(FormError::Cancellation { position: i, first: p, second: q });
        }
        factor[p.code() as usize * codes + q.code() as usize] = i;
    }
    for i in 0..n {
        let (p, q) = (word[i], word[(i + 1) % n]);
        let partner = factor[q.inverse().code() as usize * codes + p.inverse().code() as usize];
        if partner != usize::MAX {
            return Err(FormError::ReduciblePair { first: i.min(partner), second: i.max(partner) });
        }
    }
    Ok(())
}

/// Result of minimizing over all rotations.
#[derive(Debug, Clone)]
pub struct CanonicalRotations {
    pub word: Word,
    /// Every rotation offset `k` whose relabeled rotation equals `word`.
    pub offsets: Vec<usize>,
}

/// Lexicographically least first-occurrence relabeling over all rotations.
pub fn canonicalize(word: &Word) -> Word {
    canonical_rotations(word).word
}

/// Canonical word together with all rotations attaining it.
///
/// The attaining offsets form a coset of the rotation automorphism group, so
/// their count is `|Aut(w)|` and their differences are the automorphisms.
pub fn canonical_rotations(word: &Word) -> CanonicalRotations {
    let n = word.len();
    if n == 0 {
        return CanonicalRotations { word: Word::default(), offsets: vec![0] };
    }
    let letters = word.letters();
    let slots = word.max_base().map_or(0, |b| b as usize + 1);
    let mut relabel = vec![u32::MAX; slots];
    let mut best: Vec<Letter> = Vec::with_capacity(n);
    let mut cand: Vec<Letter> = Vec::with_capacity(n);
    let mut offsets = Vec::new();

    for k in 0..n {
        relabel.iter_mut().for_each(|r| *r = u32::MAX);
        cand.clear();
        let mut next = 0u32;
        let mut ordering = if best.is_empty() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        };
        for i in 0..n {
            let l = letters[(k + i) % n];
            let slot = &mut relabel[l.base() as usize];
            if *slot == u32::MAX {
                // first occurrence becomes the positive letter
                *slot = Letter::new(next, l.is_inverse()).code();
                next += 1;
            }
            let image = Letter((*slot & !1) | ((*slot & 1) ^ l.is_inverse() as u32));
            if ordering == std::cmp::Ordering::Equal {
                ordering = image.cmp(&best[i]);
                if ordering == std::cmp::Ordering::Greater {
                    break;
                }
            }
            cand.push(image);
        }
        match ordering {
            std::cmp::Ordering::Less => {
                std::mem::swap(&mut best, &mut cand);
                offsets.clear();
                offsets.push(k);
            }
            std::cmp::Ordering::Equal => offsets.push(k),
            std::cmp::Ordering::Greater => {}
        }
    }
    CanonicalRotations { word: Word::new(best), offsets }
}

/// True iff the two forms define the same cyclic word up to renaming.
pub fn is_isomorphic(a: &WicksForm, b: &WicksForm) -> bool {
    a.len() == b.len() && a.canonical() == b.canonical()
}

/// Position of the partner occurrence (`x` <-> `x⁻¹`) for every position.
///
/// Requires every base to occur exactly twice.
pub fn partner_positions(word: &Word) -> Vec<usize> {
    let slots = word.max_base().map_or(0, |b| b as usize + 1);
    let mut first = vec![usize::MAX; slots];
    let mut partner = vec![usize::MAX; word.len()];
    for (i, l) in word.iter().enumerate() {
        let b = l.base() as usize;
        if first[b] == usize::MAX {
            first[b] = i;
        } else {
            partner[i] = first[b];
            partner[first[b]] = i;
        }
    }
    partner
}
