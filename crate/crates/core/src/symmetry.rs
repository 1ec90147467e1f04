//! Rotation automorphisms of a form and the stratum data they carry.

use serde::Serialize;
use thiserror::Error;

use crate::topology::{glue, signs_of_map, SurfaceMap, VertexSign};
use crate::words::{canonical_rotations, partner_positions, WicksForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("form has no automorphism of order 2")]
    NoOrder2Element,
    #[error("form has no automorphism of order 3")]
    NoOrder3Element,
    #[error("stratum data is only defined for maximal forms")]
    NotMaximal,
}

/// `Aut(w)` as a subgroup of `Z/2e` together with the stratum parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryProfile {
    pub aut_order: usize,
    /// Rotation offsets `k` with `rotate(w, k) ≅ w`, ascending, starting at 0.
    pub rotations: Vec<usize>,
    /// Edges reversed by the order-2 automorphism.
    pub fixed_edges: Option<usize>,
    /// Positive and negative vertices fixed by the order-3 automorphisms.
    pub fixed_vertices: Option<(usize, usize)>,
}

impl SymmetryProfile {
    /// Label `(3r; 2s, 2t)` of the `W₆` stratum, when the order is 6.
    pub fn order6_label(&self) -> Option<Order6Label> {
        match (self.aut_order, self.fixed_edges, self.fixed_vertices) {
            (6, Some(edges), Some((pos, neg))) => Some(Order6Label { fixed_edges: edges, fixed_positive: pos, fixed_negative: neg }),
            _ => None,
        }
    }
}

/// Stratum label `W₆(3r; 2s, 2t)` as counted on a form: `3r` reversed edges,
/// `2s` fixed positive and `2t` fixed negative vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Order6Label {
    pub fixed_edges: usize,
    pub fixed_positive: usize,
    pub fixed_negative: usize,
}

impl Order6Label {
    /// Formula parameters `(r, s, t)`; `None` if the label is not of the
    /// form `(3r; 2s, 2t)`.
    pub fn to_params(self) -> Option<(usize, usize, usize)> {
        if !self.fixed_edges.is_multiple_of(3) || !self.fixed_positive.is_multiple_of(2) || !self.fixed_negative.is_multiple_of(2) {
            return None;
        }
        Some((self.fixed_edges / 3, self.fixed_positive / 2, self.fixed_negative / 2))
    }

    pub fn from_params(r: usize, s: usize, t: usize) -> Self {
        Order6Label { fixed_edges: 3 * r, fixed_positive: 2 * s, fixed_negative: 2 * t }
    }
}

/// Rotation offsets fixing `form` up to relabeling.
pub fn rotation_group(form: &WicksForm) -> Vec<usize> {
    let c = canonical_rotations(form.word());
    let base = c.offsets[0];
    let mut rotations: Vec<usize> = c.offsets.iter().map(|&k| k - base).collect();
    rotations.sort_unstable();
    rotations
}

/// Number of bases reversed by the rotation through half the word length.
fn reversed_edges(form: &WicksForm) -> usize {
    let n = form.len();
    let partner = partner_positions(form.word());
    (0..n).filter(|&i| !form.word()[i].is_inverse() && partner[i] == (i + n / 2) % n).count()
}

/// Positive and negative vertices mapped to themselves by rotation through `shift`.
fn fixed_vertices_under(map: &SurfaceMap, shift: usize) -> (usize, usize) {
    let signs = signs_of_map(map);
    let n = map.darts;
    let mut counts = (0, 0);
    for (v, cycle) in map.vertex_cycles.iter().enumerate() {
        if map.vertex_of_corner[(cycle[0] + shift) % n] == v {
            match signs.signs[v] {
                VertexSign::Positive => counts.0 += 1,
                VertexSign::Negative => counts.1 += 1,
            }
        }
    }
    counts
}

/// Computes `Aut(w)` and, for maximal forms, the stratum data.
pub fn automorphisms(form: &WicksForm) -> SymmetryProfile {
    let rotations = rotation_group(form);
    let aut_order = rotations.len();
    let mut profile = SymmetryProfile { aut_order, rotations, fixed_edges: None, fixed_vertices: None };
    if !form.is_maximal() {
        return profile;
    }
    debug_assert!(6 % aut_order == 0, "maximal form with |Aut| = {aut_order}");
    if aut_order.is_multiple_of(2) {
        profile.fixed_edges = Some(reversed_edges(form));
    }
    if aut_order.is_multiple_of(3) {
        let map = glue(form);
        profile.fixed_vertices = Some(fixed_vertices_under(&map, form.len() / 3));
    }
    profile
}

/// `r`: edges reversed by the order-2 automorphism (rotation by `e`).
pub fn order2_fixed_edges(form: &WicksForm) -> Result<usize, SymmetryError> {
    if !form.is_maximal() {
        return Err(SymmetryError::NotMaximal);
    }
    if !rotation_group(form).len().is_multiple_of(2) {
        return Err(SymmetryError::NoOrder2Element);
    }
    Ok(reversed_edges(form))
}

/// `(s, t)`: positive and negative vertices fixed by an order-3 automorphism.
pub fn order3_fixed_vertices(form: &WicksForm) -> Result<(usize, usize), SymmetryError> {
    if !form.is_maximal() {
        return Err(SymmetryError::NotMaximal);
    }
    if !rotation_group(form).len().is_multiple_of(3) {
        return Err(SymmetryError::NoOrder3Element);
    }
    Ok(fixed_vertices_under(&glue(form), form.len() / 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse, validate};

    fn form(text: &str) -> WicksForm {
        validate(parse(text).unwrap()).unwrap()
    }

    #[test]
    fn genus_one_profile() {
        let p = automorphisms(&form("a b c a' b' c'"));
        assert_eq!(p.aut_order, 6);
        assert_eq!(p.rotations, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(p.fixed_edges, Some(3));
        assert_eq!(p.fixed_vertices, Some((0, 2)));
        let label = p.order6_label().unwrap();
        assert_eq!(label.to_params(), Some((1, 0, 1)));
        assert_eq!(Order6Label::from_params(1, 0, 1), label);
    }

    #[test]
    fn stratum_errors() {
        let minimal = form("a b a' b'");
        assert_eq!(order2_fixed_edges(&minimal), Err(SymmetryError::NotMaximal));
        let p = automorphisms(&minimal);
        assert_eq!(p.aut_order, 4);
        assert_eq!(p.fixed_edges, None);
    }

    #[test]
    fn order6_label_rejects_bad_residues() {
        let label = Order6Label { fixed_edges: 2, fixed_positive: 0, fixed_negative: 2 };
        assert_eq!(label.to_params(), None);
    }
}
