//! Recursive engine: every α/β/γ construction on every class of genus
//! `g - 1`, kept when valid, then canonicalized and deduplicated.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{certify, genus_one_word, Census, EnumerateError, EnumerateOptions};
use crate::moves::{build_child, marker_order, ReductionType, SidePoint};
use crate::words::{canonicalize, validate_maximal, WicksForm, Word};

/// All orderings `0..m` of `m` items.
fn permutations(m: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, m: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for v in 0..m as u32 {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, m, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(m), m, &mut out);
    out
}

/// Every way to place distinct points at the given sides: points on a
/// common edge get all relative orders along that edge.
fn point_choices(word: &Word, positions: &[usize]) -> Vec<Vec<SidePoint>> {
    let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, &p) in positions.iter().enumerate() {
        let base = word[p].base();
        match groups.iter_mut().find(|(b, _)| *b == base) {
            Some((_, members)) => members.push(i),
            None => groups.push((base, vec![i])),
        }
    }
    let mut choices = vec![positions.iter().map(|&p| SidePoint::at(p)).collect::<Vec<_>>()];
    for (_, members) in groups.iter().filter(|(_, m)| m.len() > 1) {
        let perms = permutations(members.len());
        choices = choices
            .into_iter()
            .flat_map(|points| {
                perms.iter().map(move |perm| {
                    let mut points = points.clone();
                    for (&member, &order) in members.iter().zip(perm) {
                        points[member].order = order;
                    }
                    points
                })
            })
            .collect();
    }
    choices
}

fn accept(parent: &Word, points: &[SidePoint], kind: ReductionType, genus: usize, out: &mut HashSet<Word>) {
    let Ok(child) = build_child(parent, points, kind) else { return };
    if let Some(form) = validate_maximal(child, genus) {
        out.insert(canonicalize(form.word()));
    }
}

fn collect_children(parent: &WicksForm, out: &mut HashSet<Word>) {
    let word = parent.word();
    let n = word.len();
    let genus = parent.genus() + 1;
    for p in 0..n {
        accept(word, &[SidePoint::at(p)], ReductionType::Alpha, genus, out);
    }
    for p in 0..n {
        for q in 0..n {
            for points in point_choices(word, &[p, q]) {
                accept(word, &points, ReductionType::Beta, genus, out);
            }
        }
    }
    // Rotating the roles of the three points yields isomorphic children, so
    // only configurations whose markers appear in role order are built.
    for p in 0..n {
        for q in p..n {
            for r in q..n {
                for points in point_choices(word, &[p, q, r]) {
                    if marker_order(word, &points).is_ok_and(|order| order == [0, 1, 2]) {
                        accept(word, &points, ReductionType::Gamma, genus, out);
                    }
                }
            }
        }
    }
}

/// Canonical words of all maximal forms of genus `g + 1` obtained from `parent`.
pub fn children(parent: &WicksForm) -> HashSet<Word> {
    let mut out = HashSet::new();
    collect_children(parent, &mut out);
    out
}

/// Census of genus `parent.genus + 1` built from a certified census.
pub fn enumerate_constructive_from(parent: &Census, options: &EnumerateOptions) -> Result<Census, EnumerateError> {
    let genus = parent.genus + 1;
    options.check_genus(genus)?;
    let words = parent
        .classes
        .par_iter()
        .fold(HashSet::new, |mut set, class| {
            collect_children(&class.form, &mut set);
            set
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    options.check_size(genus, words.len())?;
    let census = Census::from_canonical_words(genus, words.into_iter().collect());
    certify(&census)?;
    Ok(census)
}

/// Census of genus `genus`, built up from genus 1 and certified at every step.
pub fn enumerate_constructive(genus: usize, options: &EnumerateOptions) -> Result<Census, EnumerateError> {
    options.check_genus(genus)?;
    let mut census = Census::from_canonical_words(1, vec![genus_one_word()]);
    certify(&census)?;
    while census.genus < genus {
        census = enumerate_constructive_from(&census, options)?;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn point_choices_order_shared_edges() {
        // a b c a' b' c': positions 0 and 3 carry the same edge
        let word = genus_one_word();
        assert_eq!(point_choices(&word, &[0, 1]).len(), 1);
        assert_eq!(point_choices(&word, &[0, 3]).len(), 2);
        assert_eq!(point_choices(&word, &[0, 0, 3]).len(), 6);
    }

    #[test]
    fn genus_one_has_one_class() {
        let c = enumerate_constructive(1, &EnumerateOptions::default()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.classes[0].profile.aut_order, 6);
    }

    #[test]
    fn genus_two_children_of_genus_one() {
        let c = enumerate_constructive(2, &EnumerateOptions::default()).unwrap();
        assert_eq!(c.len(), 9);
    }
}
