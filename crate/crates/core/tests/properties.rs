use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wicks_core::enumerate::children;
use wicks_core::moves::{alpha_construct, beta_construct, gamma_construct, Construction};
use wicks_core::symmetry::automorphisms;
use wicks_core::topology::{glue, vertex_signs, VertexSign};
use wicks_core::words::{canonicalize, is_isomorphic, validate, Letter, WicksForm, Word};
use wicks_core::{enumerate_constructive, ih_transform, reduce, Census, EnumerateOptions, IhType, MoveError, SidePoint};

const CASES: u32 = 1000;

fn censuses() -> &'static [Census] {
    static CENSUSES: OnceLock<Vec<Census>> = OnceLock::new();
    CENSUSES.get_or_init(|| {
        (1..=3).map(|g| enumerate_constructive(g, &EnumerateOptions::default()).unwrap()).collect()
    })
}

/// A census member of genus 1..=3, in a random rotation and relabeling.
fn random_member(rng: &mut ChaCha8Rng, max_genus: usize) -> WicksForm {
    let census = &censuses()[rng.gen_range(0..max_genus)];
    let class = &census.classes[rng.gen_range(0..census.len())];
    scramble(class.word(), rng)
}

fn scramble(word: &Word, rng: &mut ChaCha8Rng) -> WicksForm {
    let bases = word.len() / 2;
    let mut perm: Vec<u32> = (0..bases as u32).collect();
    perm.shuffle(rng);
    let flips: Vec<bool> = (0..bases).map(|_| rng.gen()).collect();
    let relabeled: Word = word
        .iter()
        .map(|l| Letter::new(perm[l.base() as usize], l.is_inverse() != flips[l.base() as usize]))
        .collect();
    validate(relabeled.rotate(rng.gen_range(0..word.len()))).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn vertex_sign_counts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_member(&mut rng, 3);
        let g = form.genus();
        let signs = vertex_signs(&form).unwrap();
        prop_assert_eq!((signs.positive, signs.negative), (2 * (g - 1), 2 * g));
    }

    #[test]
    fn automorphism_orders(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_member(&mut rng, 3);
        let profile = automorphisms(&form);
        prop_assert!(matches!(profile.aut_order, 1 | 2 | 3 | 6));
        let canonical = validate(form.canonical().clone()).unwrap();
        prop_assert_eq!(automorphisms(&canonical), profile);
    }

    #[test]
    fn canonical_form_is_a_class_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_member(&mut rng, 3);
        let again = scramble(form.word(), &mut rng);
        prop_assert_eq!(form.canonical(), again.canonical());
        prop_assert_eq!(canonicalize(form.canonical()), form.canonical().clone());
    }

    #[test]
    fn ih_moves(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_member(&mut rng, 3);
        let x = Letter::new(rng.gen_range(0..form.edge_count() as u32), rng.gen());
        let moved = ih_transform(&form, x).unwrap();
        prop_assert_eq!(moved.result.genus(), form.genus());
        prop_assert!(moved.result.is_maximal());
        if moved.move_type != IhType::Type1 {
            prop_assert!(is_isomorphic(&moved.result, &form));
        }
        let before = vertex_signs(&form).unwrap();
        let after = vertex_signs(&moved.result).unwrap();
        prop_assert_eq!((before.positive, before.negative), (after.positive, after.negative));
    }

    #[test]
    fn reduce_then_rebuild(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = random_member(&mut rng, 3);
        prop_assume!(form.genus() >= 2);
        let signs = vertex_signs(&form).unwrap();
        let negative: Vec<usize> =
            (0..signs.signs.len()).filter(|&v| signs.signs[v] == VertexSign::Negative).collect();
        let v = *negative.choose(&mut rng).unwrap();
        let reduced = reduce(&form, v).unwrap();
        prop_assert_eq!(reduced.parent.genus(), form.genus() - 1);
        prop_assert!(reduced.parent.is_maximal());
        prop_assert!(children(&reduced.parent).contains(form.canonical()));
    }

    #[test]
    fn construct_then_reduce(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parent = random_member(&mut rng, 2);
        let n = parent.len();
        let mut point = |order| SidePoint::new(rng.gen_range(0..n), order);
        let (x, y, z) = (point(0), point(1), point(2));
        let built: Result<Construction, MoveError> = match rng.gen_range(0..3) {
            0 => alpha_construct(&parent, x),
            1 => beta_construct(&parent, x, y),
            _ => gamma_construct(&parent, x, y, z),
        };
        prop_assume!(built.is_ok());
        let child = built.unwrap();
        prop_assert_eq!(child.form.genus(), parent.genus() + 1);
        let reduced = reduce(&child.form, child.created_vertex).unwrap();
        prop_assert!(is_isomorphic(&reduced.parent, &parent));
    }

    #[test]
    fn euler_formula_on_random_forms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = loop {
            let edges = rng.gen_range(2..=12u32);
            let mut letters: Vec<Letter> = (0..edges).flat_map(|b| [Letter::positive(b), Letter::negative(b)]).collect();
            letters.shuffle(&mut rng);
            if let Ok(form) = validate(Word::new(letters)) {
                break form;
            }
        };
        let map = glue(&form);
        prop_assert!(map.vertices >= 1);
        prop_assert_eq!(map.vertices as i64 - map.edges as i64 + 1, 2 - 2 * form.genus() as i64);
        prop_assert_eq!(map.degrees().iter().sum::<usize>(), form.len());
        prop_assert!(form.len() <= wicks_core::words::maximal_length(form.genus()));
        prop_assert_eq!(form.is_maximal(), map.degrees().iter().all(|&d| d == 3));
    }
}
