//! Direct engine: depth-first generation of first-occurrence-named words,
//! pruned on cancellation, reducible pairs, vertex degrees and canonicity.

use super::{certify, Census, EnumerateError, BACKTRACK_MAX_GENUS};
use crate::words::{canonicalize, maximal_length, validate_maximal, Letter, Word};

const UNKNOWN: usize = usize::MAX;

struct Search {
    n: usize,
    edges: u32,
    codes: usize,
    word: Vec<Letter>,
    first_at: Vec<usize>,
    partner: Vec<usize>,
    /// `factor[p * codes + q]` is set when `p q` occurs in the prefix.
    factor: Vec<bool>,
    next_base: u32,
    found: Vec<Word>,
}

impl Search {
    fn new(genus: usize) -> Self {
        let n = maximal_length(genus);
        let edges = (n / 2) as u32;
        let codes = n;
        Search {
            n,
            edges,
            codes,
            word: Vec::with_capacity(n),
            first_at: vec![UNKNOWN; edges as usize],
            partner: vec![UNKNOWN; n],
            factor: vec![false; codes * codes],
            next_base: 0,
            found: Vec::new(),
        }
    }

    fn factor_index(&self, p: Letter, q: Letter) -> usize {
        p.code() as usize * self.codes + q.code() as usize
    }

    /// Whether appending the factor `p q` keeps the prefix reduced.
    fn factor_allowed(&self, p: Letter, q: Letter) -> bool {
        q != p.inverse() && !self.factor[self.factor_index(q.inverse(), p.inverse())]
    }

    fn sigma(&self, corner: usize) -> Option<usize> {
        let p = self.partner[corner];
        (p != UNKNOWN).then(|| (p + 1) % self.n)
    }

    /// Every corner orbit that is already determined has length three.
    fn degrees_ok(&self) -> bool {
        (0..self.n).all(|c| {
            let Some(c1) = self.sigma(c) else { return true };
            if c1 == c {
                return false;
            }
            let Some(c2) = self.sigma(c1) else { return true };
            if c2 == c {
                return false;
            }
            self.sigma(c2).is_none_or(|c3| c3 == c)
        })
    }

    /// No rotation starting inside the prefix is already smaller than it.
    fn prefix_canonical(&self) -> bool {
        let k = self.word.len();
        let mut relabel = vec![u32::MAX; self.edges as usize];
        for s in 1..k {
            relabel.iter_mut().for_each(|r| *r = u32::MAX);
            let mut next = 0;
            for i in s..k {
                let l = self.word[i];
                let slot = &mut relabel[l.base() as usize];
                if *slot == u32::MAX {
                    *slot = Letter::new(next, l.is_inverse()).code();
                    next += 1;
                }
                let image = Letter::new(*slot >> 1, (*slot & 1 == 1) != l.is_inverse());
                match image.cmp(&self.word[i - s]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn push(&mut self, l: Letter) {
        let k = self.word.len();
        if let Some(&prev) = self.word.last() {
            let idx = self.factor_index(prev, l);
            self.factor[idx] = true;
        }
        if l.is_inverse() {
            let j = self.first_at[l.base() as usize];
            self.partner[j] = k;
            self.partner[k] = j;
        } else {
            self.first_at[l.base() as usize] = k;
            self.next_base += 1;
        }
        self.word.push(l);
    }

    fn pop(&mut self) {
        let l = self.word.pop().expect("nonempty prefix");
        let k = self.word.len();
        if let Some(&prev) = self.word.last() {
            let idx = self.factor_index(prev, l);
            self.factor[idx] = false;
        }
        if l.is_inverse() {
            let j = self.partner[k];
            self.partner[j] = UNKNOWN;
            self.partner[k] = UNKNOWN;
        } else {
            self.first_at[l.base() as usize] = UNKNOWN;
            self.next_base -= 1;
        }
    }

    fn candidates(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..self.next_base)
            .filter(|&b| {
                let j = self.first_at[b as usize];
                self.partner[j] == UNKNOWN
            })
            .map(Letter::negative)
            .collect();
        if self.next_base < self.edges {
            out.push(Letter::positive(self.next_base));
        }
        out.sort_unstable();
        out
    }

    fn run(&mut self) {
        if self.word.len() == self.n {
            self.complete();
            return;
        }
        for l in self.candidates() {
            if let Some(&prev) = self.word.last() {
                if !self.factor_allowed(prev, l) {
                    continue;
                }
            }
            self.push(l);
            if self.degrees_ok() && self.prefix_canonical() {
                self.run();
            }
            self.pop();
        }
    }

    fn complete(&mut self) {
        let (last, first) = (self.word[self.n - 1], self.word[0]);
        if !self.factor_allowed(last, first) {
            return;
        }
        let word = Word::new(self.word.clone());
        let genus = (self.n + 6) / 12;
        let Some(form) = validate_maximal(word, genus) else { return };
        if canonicalize(form.word()) == *form.word() {
            self.found.push(form.into_word());
        }
    }
}

/// Census of genus `genus ≤ 2` by exhaustive backtracking.
pub fn enumerate_backtrack(genus: usize) -> Result<Census, EnumerateError> {
    if genus == 0 {
        return Err(EnumerateError::InvalidGenus);
    }
    if genus > BACKTRACK_MAX_GENUS {
        return Err(EnumerateError::GenusTooLarge { genus, limit: BACKTRACK_MAX_GENUS });
    }
    let mut search = Search::new(genus);
    search.run();
    let census = Census::from_canonical_words(genus, search.found);
    certify(&census)?;
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::genus_one_word;

    #[test]
    fn genus_one() {
        let c = enumerate_backtrack(1).unwrap();
        assert_eq!(c.words().cloned().collect::<Vec<_>>(), vec![genus_one_word()]);
    }

    #[test]
    fn guards() {
        assert_eq!(enumerate_backtrack(0).unwrap_err(), EnumerateError::InvalidGenus);
        assert_eq!(enumerate_backtrack(3).unwrap_err(), EnumerateError::GenusTooLarge { genus: 3, limit: 2 });
    }
}
