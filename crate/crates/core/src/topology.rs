//! Gluing the `2e`-gon into a surface with an embedded graph.
//!
//! Position `i` of the boundary word is a side of the polygon. Corner `i` is
//! the polygon vertex between sides `i - 1` and `i`, i.e. the cyclic factor
//! `w[i-1] w[i]`. Gluing side `i` to its partner side `j` identifies corner
//! `i` with corner `j + 1`, so the corner successor `σ(i) = partner(i) + 1`
//! walks around a vertex of the glued graph. Following `σ` from a corner
//! `(p, q)` visits the corners in the rotation order of the vertex: the
//! incoming half-edges go `p -> q⁻¹ -> ...`.

use serde::Serialize;
use thiserror::Error;

use crate::words::{partner_positions, Letter, WicksForm, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("form of length {length} is not maximal for genus {genus}")]
    NotMaximal { length: usize, genus: usize },
}

/// The combinatorial map obtained by gluing a form's polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceMap {
    /// Number of darts (sides of the polygon), `2e`.
    pub darts: usize,
    /// `edge_pairing[i]` is the side glued to side `i`.
    pub edge_pairing: Vec<usize>,
    /// Corner orbits of `σ`, each starting at its smallest corner; ordered
    /// by that corner. The index in this list is the vertex id.
    pub vertex_cycles: Vec<Vec<usize>>,
    /// `vertex_of_corner[i]` is the vertex id of corner `i`.
    pub vertex_of_corner: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub genus: usize,
}

impl SurfaceMap {
    /// `v - e + 1`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertex_cycles.iter().map(Vec::len).collect()
    }

    /// Tail and head vertex of the side at position `i`, in the direction
    /// the boundary traverses it.
    pub fn side_endpoints(&self, i: usize) -> (usize, usize) {
        let n = self.darts;
        (self.vertex_of_corner[i], self.vertex_of_corner[(i + 1) % n])
    }
}

fn corner_successor(partner: &[usize]) -> impl Fn(usize) -> usize + '_ {
    let n = partner.len();
    move |i| (partner[i] + 1) % n
}

fn vertex_cycles(partner: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = partner.len();
    let sigma = corner_successor(partner);
    let mut vertex_of = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if vertex_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cycle = Vec::new();
        let mut c = start;
        while vertex_of[c] == usize::MAX {
            vertex_of[c] = id;
            cycle.push(c);
            c = sigma(c);
        }
        cycles.push(cycle);
    }
    (cycles, vertex_of)
}

/// Number of vertices of the glued graph. Every base must occur twice.
pub(crate) fn count_vertices(word: &Word) -> usize {
    let partner = partner_positions(word);
    let n = partner.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = (partner[c] + 1) % n;
        }
    }
    count
}

pub(crate) fn glue_word(word: &Word) -> SurfaceMap {
    let partner = partner_positions(word);
    let (cycles, vertex_of) = vertex_cycles(&partner);
    let vertices = cycles.len();
    let edges = word.len() / 2;
    let genus = (edges + 1 - vertices) / 2;
    SurfaceMap {
        darts: word.len(),
        edge_pairing: partner,
        vertex_cycles: cycles,
        vertex_of_corner: vertex_of,
        vertices,
        edges,
        genus,
    }
}

/// Glues the polygon of `form` and returns the resulting map.
pub fn glue(form: &WicksForm) -> SurfaceMap {
    glue_word(form.word())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexSign {
    Positive,
    Negative,
}

/// Signs of the trivalent vertices of a maximal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSigns {
    /// Indexed by vertex id.
    pub signs: Vec<VertexSign>,
    pub positive: usize,
    pub negative: usize,
}

/// Sign of a trivalent vertex cycle `[p, σp, σ²p]`: positive iff the three
/// corners occur in that cyclic order along the word.
pub(crate) fn cycle_sign(cycle: &[usize], n: usize) -> VertexSign {
    debug_assert_eq!(cycle.len(), 3);
    let d1 = (cycle[1] + n - cycle[0]) % n;
    let d2 = (cycle[2] + n - cycle[0]) % n;
    if d1 < d2 {
        VertexSign::Positive
    } else {
        VertexSign::Negative
    }
}

pub(crate) fn signs_of_map(map: &SurfaceMap) -> VertexSigns {
    let signs: Vec<_> = map.vertex_cycles.iter().map(|c| cycle_sign(c, map.darts)).collect();
    let positive = signs.iter().filter(|&&s| s == VertexSign::Positive).count();
    VertexSigns { negative: signs.len() - positive, positive, signs }
}

fn require_maximal(form: &WicksForm) -> Result<(), TopologyError> {
    if form.is_maximal() {
        Ok(())
    } else {
        Err(TopologyError::NotMaximal { length: form.len(), genus: form.genus() })
    }
}

/// Tags every vertex of a maximal form as positive or negative.
pub fn vertex_signs(form: &WicksForm) -> Result<VertexSigns, TopologyError> {
    require_maximal(form)?;
    Ok(signs_of_map(&glue(form)))
}

/// An edge of the dual 1-vertex triangulation, crossing one edge of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    /// Base of the graph edge this dual edge crosses.
    pub base: u32,
    /// The two triangles (graph vertices) on either side: tail, then head.
    pub triangles: [usize; 2],
}

/// The 1-vertex triangulation dual to a maximal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualTriangulation {
    pub genus: usize,
    pub vertices: usize,
    /// One triangle per graph vertex, listing the bases of its three sides
    /// in the vertex rotation order.
    pub triangles: Vec<[u32; 3]>,
    pub edges: Vec<DualEdge>,
}

impl DualTriangulation {
    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// True iff triangles `s` and `t` share a side.
    pub fn adjacent(&self, s: usize, t: usize) -> bool {
        self.edges
            .iter()
            .any(|e| (e.triangles[0] == s && e.triangles[1] == t) || (e.triangles[0] == t && e.triangles[1] == s))
    }
}

/// Dual triangulation: a triangle per vertex, a dual edge per edge and a
/// single vertex for the single face.
pub fn dual(form: &WicksForm) -> Result<DualTriangulation, TopologyError> {
    require_maximal(form)?;
    let word = form.word();
    let map = glue(form);
    let n = map.darts;
    let incoming = |c: usize| -> Letter { word[(c + n - 1) % n] };
    let triangles = map
        .vertex_cycles
        .iter()
        .map(|cycle| [incoming(cycle[0]).base(), incoming(cycle[1]).base(), incoming(cycle[2]).base()])
        .collect();
    let mut edges = Vec::with_capacity(map.edges);
    for (i, l) in word.iter().enumerate() {
        if l.is_inverse() {
            continue;
        }
        let (tail, head) = map.side_endpoints(i);
        edges.push(DualEdge { base: l.base(), triangles: [tail, head] });
    }
    edges.sort_by_key(|e| e.base);
    Ok(DualTriangulation { genus: form.genus(), vertices: 1, triangles, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse, validate};

    fn form(text: &str) -> WicksForm {
        validate(parse(text).unwrap()).unwrap()
    }

    #[test]
    fn genus_one_gluing() {
        let m = glue(&form("a b c a' b' c'"));
        assert_eq!((m.vertices, m.edges, m.genus), (2, 3, 1));
        assert_eq!(m.vertex_cycles, vec![vec![0, 4, 2], vec![1, 5, 3]]);
        assert_eq!(m.edge_pairing, vec![3, 4, 5, 0, 1, 2]);
    }

    #[test]
    fn genus_two_minimal_form_has_one_vertex() {
        // a1 b1 a1' b1' a2 b2 a2' b2': corner orbit 0 -> 3 -> 2 -> 1 -> 4 -> 7
        // -> 6 -> 5 -> 0 visits all eight corners.
        let m = glue(&form("a b a' b' c d c' d'"));
        assert_eq!((m.vertices, m.edges, m.genus), (1, 4, 2));
        assert_eq!(m.vertex_cycles, vec![vec![0, 3, 2, 1, 4, 7, 6, 5]]);
        assert_eq!(m.euler_characteristic(), -2);
    }

    #[test]
    fn genus_one_signs() {
        let s = vertex_signs(&form("a b c a' b' c'")).unwrap();
        assert_eq!((s.positive, s.negative), (0, 2));
    }

    #[test]
    fn signs_require_maximal() {
        assert_eq!(
            vertex_signs(&form("a b a' b'")),
            Err(TopologyError::NotMaximal { length: 4, genus: 1 })
        );
        assert!(dual(&form("a b a' b'")).is_err());
    }

    #[test]
    fn cycle_sign_reads_cyclic_order() {
        assert_eq!(cycle_sign(&[0, 2, 4], 6), VertexSign::Positive);
        assert_eq!(cycle_sign(&[0, 4, 2], 6), VertexSign::Negative);
        assert_eq!(cycle_sign(&[3, 5, 1], 6), VertexSign::Positive);
    }

    #[test]
    fn genus_one_dual() {
        let d = dual(&form("a b c a' b' c'")).unwrap();
        assert_eq!((d.vertices, d.edges.len(), d.triangles.len()), (1, 3, 2));
        assert_eq!(d.euler_characteristic(), 0);
        assert!(d.adjacent(0, 1));
    }

    #[test]
    fn euler_identity_for_large_genus() {
        let g: i64 = 5;
        assert_eq!(1 - (6 * g - 3) + (4 * g - 2), 2 - 2 * g);
    }
}
