//! Isomorph-free enumeration of maximal forms, by recursive construction and
//! by direct backtracking, together with census statistics and persistence.

mod backtrack;
mod construct;
mod records;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::count::{self, CountError, ExactRational};
use crate::symmetry::{automorphisms, Order6Label, SymmetryProfile};
use crate::topology::vertex_signs;
use crate::words::{validate_maximal, WicksForm, Word};

pub use backtrack::enumerate_backtrack;
pub use construct::{children, enumerate_constructive, enumerate_constructive_from};
pub use records::{census_from_jsonl, census_metadata, census_to_jsonl, ClassRecord, RecordError};

/// Largest genus the backtracking engine accepts.
pub const BACKTRACK_MAX_GENUS: usize = 2;

/// Largest genus enumerated without an explicit opt-in.
pub const DEFAULT_MAX_GENUS: usize = 3;

/// Largest genus enumerated at all.
pub const HARD_MAX_GENUS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("genus must be at least 1")]
    InvalidGenus,
    #[error("genus {genus} census has over a million classes; it needs the allow-large opt-in (--allow-large)")]
    RequiresAllowLarge { genus: usize },
    #[error("genus {genus} exceeds the enumeration limit of {limit}")]
    GenusTooLarge { genus: usize, limit: usize },
    #[error("census at genus {genus} failed its certificate: {detail}")]
    CertificateFailed { genus: usize, detail: String },
    #[error("census at genus {genus} exceeded {limit} classes")]
    ResourceLimit { genus: usize, limit: usize },
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Resource policy for an enumeration run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Permit genus 4.
    pub allow_large: bool,
    /// Abort once a census grows past this many classes.
    pub max_classes: Option<usize>,
}

impl EnumerateOptions {
    pub fn allow_large() -> Self {
        EnumerateOptions { allow_large: true, max_classes: None }
    }

    pub fn check_genus(&self, genus: usize) -> Result<(), EnumerateError> {
        match genus {
            0 => Err(EnumerateError::InvalidGenus),
            g if g <= DEFAULT_MAX_GENUS => Ok(()),
            g if g <= HARD_MAX_GENUS && self.allow_large => Ok(()),
            g if g <= HARD_MAX_GENUS => Err(EnumerateError::RequiresAllowLarge { genus: g }),
            g => Err(EnumerateError::GenusTooLarge { genus: g, limit: HARD_MAX_GENUS }),
        }
    }

    pub(crate) fn check_size(&self, genus: usize, size: usize) -> Result<(), EnumerateError> {
        match self.max_classes {
            Some(limit) if size > limit => Err(EnumerateError::ResourceLimit { genus, limit }),
            _ => Ok(()),
        }
    }
}

/// One isomorphism class of a census.
#[derive(Debug, Clone)]
pub struct CensusClass {
    /// The form, stored in its canonical representative.
    pub form: WicksForm,
    pub profile: SymmetryProfile,
    /// Positive and negative vertex counts.
    pub signs: (usize, usize),
}

impl CensusClass {
    /// Builds the class of a canonical word; `None` if it is not maximal of `genus`.
    pub fn from_canonical(word: Word, genus: usize) -> Option<Self> {
        let form = validate_maximal(word, genus)?;
        let profile = automorphisms(&form);
        let signs = vertex_signs(&form).ok()?;
        Some(CensusClass { form, profile, signs: (signs.positive, signs.negative) })
    }

    pub fn word(&self) -> &Word {
        self.form.word()
    }

    /// `1 / |Aut|`.
    pub fn weight(&self) -> ExactRational {
        ExactRational::new(1, self.profile.aut_order as i64)
    }
}

/// All classes of maximal forms of one genus, sorted by canonical word.
#[derive(Debug, Clone)]
pub struct Census {
    pub genus: usize,
    pub classes: Vec<CensusClass>,
    pub mass: ExactRational,
}

impl Census {
    /// Builds a census from distinct canonical words, in any order.
    pub fn from_canonical_words(genus: usize, mut words: Vec<Word>) -> Census {
        words.sort_unstable();
        words.dedup();
        let classes: Vec<CensusClass> = words
            .into_par_iter()
            .map(|w| CensusClass::from_canonical(w, genus).expect("census word is a maximal form"))
            .collect();
        let mass = classes.iter().map(CensusClass::weight).sum();
        Census { genus, classes, mass }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.classes.iter().map(CensusClass::word)
    }

    pub fn stats(&self) -> CensusStats {
        census_stats(self)
    }
}

/// Class counts by exact automorphism order and census masses by stratum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CensusStats {
    /// Number of classes with automorphism group of exactly each order.
    pub exactly: BTreeMap<usize, usize>,
    pub total_mass: ExactRational,
    /// Mass of classes with an involution, by reversed-edge count `r`.
    pub order2: BTreeMap<usize, ExactRational>,
    /// Mass of classes with an order-3 automorphism, by fixed vertices `(s, t)`.
    pub order3: BTreeMap<(usize, usize), ExactRational>,
    /// Mass of classes with an order-6 automorphism, by stratum label.
    pub order6: BTreeMap<Order6Label, ExactRational>,
}

impl CensusStats {
    pub fn order2_total(&self) -> ExactRational {
        self.order2.values().sum()
    }

    pub fn order3_total(&self) -> ExactRational {
        self.order3.values().sum()
    }

    pub fn order6_total(&self) -> ExactRational {
        self.order6.values().sum()
    }
}

pub fn census_stats(census: &Census) -> CensusStats {
    let mut stats = CensusStats::default();
    for d in [1, 2, 3, 6] {
        stats.exactly.insert(d, 0);
    }
    for class in &census.classes {
        let w = class.weight();
        let p = &class.profile;
        *stats.exactly.entry(p.aut_order).or_insert(0) += 1;
        stats.total_mass += &w;
        if let Some(r) = p.fixed_edges {
            *stats.order2.entry(r).or_default() += &w;
        }
        if let Some(st) = p.fixed_vertices {
            *stats.order3.entry(st).or_default() += &w;
        }
        if let Some(label) = p.order6_label() {
            *stats.order6.entry(label).or_default() += &w;
        }
    }
    stats
}

/// Checks a census against the mass formulas: total mass and every stratum.
pub fn certify(census: &Census) -> Result<(), EnumerateError> {
    let g = census.genus;
    let fail = |detail: String| Err(EnumerateError::CertificateFailed { genus: g, detail });
    let stats = census_stats(census);
    let expected = count::m1(g)?;
    if census.mass != expected {
        return fail(format!("mass {} but the formula gives {expected}", census.mass));
    }
    let order2: BTreeMap<_, _> = count::m2_strata(g)?.into_iter().collect();
    if stats.order2 != order2 {
        return fail(format!("order-2 strata {:?}, expected {order2:?}", stats.order2));
    }
    let order3: BTreeMap<_, _> = count::m3_strata(g)?.into_iter().collect();
    if stats.order3 != order3 {
        return fail(format!("order-3 strata {:?}, expected {order3:?}", stats.order3));
    }
    let order6: BTreeMap<_, _> = count::m6_strata(g)?
        .into_iter()
        .map(|((r, s, t), v)| (Order6Label::from_params(r, s, t), v))
        .collect();
    if stats.order6 != order6 {
        return fail(format!("order-6 strata {:?}, expected {order6:?}", stats.order6));
    }
    for class in &census.classes {
        if !matches!(class.profile.aut_order, 1 | 2 | 3 | 6) {
            return fail(format!("{} has {} automorphisms", class.word(), class.profile.aut_order));
        }
        if class.signs != (2 * (g - 1), 2 * g) {
            return fail(format!("{} has sign counts {:?}", class.word(), class.signs));
        }
    }
    Ok(())
}

/// The unique maximal form of genus 1, `a b c a⁻¹ b⁻¹ c⁻¹`.
pub fn genus_one_word() -> Word {
    use crate::words::Letter;
    Word::new(vec![
        Letter::positive(0),
        Letter::positive(1),
        Letter::positive(2),
        Letter::negative(0),
        Letter::negative(1),
        Letter::negative(2),
    ])
}
