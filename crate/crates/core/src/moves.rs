//! IH-transformations, reductions at negative vertices, and the α/β/γ
//! constructions that invert them.
//!
//! Constructions attach a gadget to one, two or three points lying in the
//! interior of sides of the parent polygon. Cutting the parent boundary at
//! those points leaves segments that are reassembled around the gadget
//! blocks. Reductions go the other way on the glued map: delete the edges
//! around the chosen vertex, which must leave a single face, then smooth the
//! vertices of degree two.

use serde::Serialize;
use thiserror::Error;

use crate::topology::{cycle_sign, glue, glue_word, SurfaceMap, VertexSign};
use crate::words::{validate, validate_maximal, FormError, Letter, WicksForm, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("form is not maximal")]
    NotMaximal,
    #[error("base {0} does not occur in the form")]
    UnknownBase(u32),
    #[error("excluded neighbourhood around edge {edge}: {detail}")]
    MalformedNeighborhood { edge: u32, detail: &'static str },
    #[error("move produced an invalid form: {0}")]
    InvalidResult(String),
    #[error("genus-1 forms have no reduction")]
    GenusOne,
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("vertex {0} is positive; reductions need a negative vertex")]
    PositiveVertex(usize),
    #[error("reduction at vertex {vertex} degenerates: {detail}")]
    DegenerateReduction { vertex: usize, detail: &'static str },
    #[error("side position {position} out of range for length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("two attachment points coincide")]
    CoincidentPoints,
    #[error("attachment points are not in cyclic order along the boundary")]
    PointOrder,
    #[error("construction candidate rejected: {0}")]
    ValidationFailed(String),
}

impl From<FormError> for MoveError {
    fn from(e: FormError) -> Self {
        MoveError::InvalidResult(e.to_string())
    }
}

fn require_maximal(form: &WicksForm) -> Result<(), MoveError> {
    if form.is_maximal() {
        Ok(())
    } else {
        Err(MoveError::NotMaximal)
    }
}

fn fresh_base(word: &Word) -> u32 {
    word.max_base().map_or(0, |b| b + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IhType {
    Type1,
    Type2a,
    Type2b,
}

#[derive(Debug, Clone)]
pub struct IhResult {
    pub result: WicksForm,
    pub move_type: IhType,
    /// The edge created by the move.
    pub new_edge: Letter,
}

/// IH-transformation on edge `x`.
///
/// With `x` sitting in the cyclic factors `a x b` and `c x⁻¹ d`:
/// type 2a when `c = a⁻¹`, type 2b when `d = b⁻¹`, type 1 otherwise. When
/// both type-2 conditions hold (only the genus-1 theta graph) type 2a is used.
pub fn ih_transform(form: &WicksForm, x: Letter) -> Result<IhResult, MoveError> {
    require_maximal(form)?;
    let word = form.word();
    let n = word.len();
    let find = |l: Letter| word.iter().position(|&m| m == l);
    let (px, pxi) = match (find(x), find(x.inverse())) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(MoveError::UnknownBase(x.base())),
    };
    let at = |i: usize, delta: isize| word[((i as isize + delta).rem_euclid(n as isize)) as usize];
    let pos = |i: usize, delta: isize| ((i as isize + delta).rem_euclid(n as isize)) as usize;
    let (a, b, c, d) = (at(px, -1), at(px, 1), at(pxi, -1), at(pxi, 1));
    let malformed = |detail| Err(MoveError::MalformedNeighborhood { edge: x.base(), detail });
    if b == a.inverse() {
        return malformed("b = a⁻¹");
    }
    if c == b.inverse() {
        return malformed("c = b⁻¹");
    }
    if d == a.inverse() {
        return malformed("d = a⁻¹");
    }
    if d == c.inverse() {
        return malformed("d = c⁻¹");
    }

    let y = Letter::positive(fresh_base(word));
    // (insert before this position, letter)
    let (move_type, inserts) = if c == a.inverse() {
        // b⁻¹ a x b -> b⁻¹ y a b,  d⁻¹ a⁻¹ x⁻¹ d -> d⁻¹ y⁻¹ a⁻¹ d
        if at(px, -2) != b.inverse() || at(pxi, -2) != d.inverse() {
            return malformed("type 2a factors missing");
        }
        (IhType::Type2a, [(pos(px, -1), y), (pos(pxi, -1), y.inverse())])
    } else if d == b.inverse() {
        // a x b a⁻¹ -> a b y a⁻¹,  c x⁻¹ b⁻¹ c⁻¹ -> c b⁻¹ y⁻¹ c⁻¹
        if at(px, 2) != a.inverse() || at(pxi, 2) != c.inverse() {
            return malformed("type 2b factors missing");
        }
        (IhType::Type2b, [(pos(px, 2), y), (pos(pxi, 2), y.inverse())])
    } else {
        // d⁻¹ a⁻¹ -> d⁻¹ y a⁻¹,  b⁻¹ c⁻¹ -> b⁻¹ y⁻¹ c⁻¹
        let (pa, pc) = match (find(a.inverse()), find(c.inverse())) {
            (Some(pa), Some(pc)) => (pa, pc),
            _ => return malformed("type 1 factors missing"),
        };
        if at(pa, -1) != d.inverse() || at(pc, -1) != b.inverse() {
            return malformed("type 1 factors missing");
        }
        (IhType::Type1, [(pa, y), (pc, y.inverse())])
    };

    let mut letters = Vec::with_capacity(n);
    for (i, &l) in word.iter().enumerate() {
        for &(p, ins) in &inserts {
            if p == i {
                letters.push(ins);
            }
        }
        if i != px && i != pxi {
            letters.push(l);
        }
    }
    let result = validate(Word::new(letters))?;
    if result.genus() != form.genus() || !result.is_maximal() {
        return Err(MoveError::InvalidResult(format!(
            "genus {} -> {}, length {}",
            form.genus(),
            result.genus(),
            result.len()
        )));
    }
    Ok(IhResult { result, move_type, new_edge: y })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    Alpha,
    Beta,
    Gamma,
}

/// What a reduction removed from the child form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    /// Vertex ids (in the child's map) deleted with all their edges.
    pub removed_vertices: Vec<usize>,
    /// Bases of the deleted edges.
    pub removed_edges: Vec<u32>,
    /// Positions in the child word of the deleted letters.
    pub positions: Vec<usize>,
    /// Number of degree-2 vertices smoothed afterwards.
    pub smoothed: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub parent: WicksForm,
    pub reduction_type: ReductionType,
    pub certificate: ReductionCertificate,
}

/// Neighbouring vertex across each of the three edges at `v`, with the edge base.
fn neighbours(word: &Word, map: &SurfaceMap, v: usize) -> Vec<(usize, u32)> {
    let n = map.darts;
    map.vertex_cycles[v]
        .iter()
        .map(|&c| {
            let side = (c + n - 1) % n;
            (map.vertex_of_corner[side], word[side].base())
        })
        .collect()
}

/// Classifies a vertex by its neighbour structure and returns the type and
/// the vertices a reduction there deletes.
fn classify(word: &Word, map: &SurfaceMap, v: usize) -> Result<(ReductionType, Vec<usize>), MoveError> {
    let nb: Vec<usize> = neighbours(word, map, v).into_iter().map(|(u, _)| u).collect();
    let degenerate = |detail| Err(MoveError::DegenerateReduction { vertex: v, detail });
    if nb.contains(&v) {
        return degenerate("loop at vertex");
    }
    if nb[0] != nb[1] && nb[1] != nb[2] && nb[0] != nb[2] {
        return Ok((ReductionType::Gamma, vec![v]));
    }
    if nb[0] == nb[1] && nb[1] == nb[2] {
        return degenerate("triple edge");
    }
    let (double, single) = if nb[0] == nb[1] {
        (nb[0], nb[2])
    } else if nb[0] == nb[2] {
        (nb[0], nb[1])
    } else {
        (nb[1], nb[0])
    };
    let third: Vec<usize> = neighbours(word, map, double).into_iter().map(|(u, _)| u).filter(|&u| u != v).collect();
    if third.len() != 1 {
        return degenerate("doubled neighbour is not trivalent towards the vertex");
    }
    if third[0] == single {
        let mut removed = vec![v, double, single];
        removed.sort_unstable();
        Ok((ReductionType::Alpha, removed))
    } else {
        let mut removed = vec![v, double];
        removed.sort_unstable();
        Ok((ReductionType::Beta, removed))
    }
}

/// Deletes edge `base` from a set of faces given as cyclic words.
///
/// A face `e A e⁻¹ B` splits into `A` and `B`; two faces `e A` and `e⁻¹ B`
/// merge into `A B`.
fn delete_edge(faces: &mut Vec<Vec<Letter>>, base: u32) {
    let mut hits = Vec::with_capacity(2);
    for (f, face) in faces.iter().enumerate() {
        for (i, l) in face.iter().enumerate() {
            if l.base() == base {
                hits.push((f, i));
            }
        }
    }
    debug_assert_eq!(hits.len(), 2);
    let cyclic = |face: &[Letter], from: usize, len: usize| -> Vec<Letter> {
        (0..len).map(|k| face[(from + k) % face.len()]).collect()
    };
    let ((f1, i1), (f2, i2)) = (hits[0], hits[1]);
    if f1 == f2 {
        let face = faces.swap_remove(f1);
        let m = face.len();
        let a = cyclic(&face, i1 + 1, (i2 + m - i1 - 1) % m);
        let b = cyclic(&face, i2 + 1, (i1 + m - i2 - 1) % m);
        faces.push(a);
        faces.push(b);
    } else {
        let first = faces[f1].clone();
        let second = faces[f2].clone();
        let mut merged = cyclic(&first, i1 + 1, first.len() - 1);
        merged.extend(cyclic(&second, i2 + 1, second.len() - 1));
        let (hi, lo) = if f1 > f2 { (f1, f2) } else { (f2, f1) };
        faces.swap_remove(hi);
        faces.swap_remove(lo);
        faces.push(merged);
    }
}

/// Smooths every vertex of degree 2 by merging its two edges.
fn smooth_degree_two(mut word: Word) -> Option<(Word, usize)> {
    let mut smoothed = 0;
    loop {
        let map = glue_word(&word);
        if map.vertex_cycles.iter().any(|c| c.len() < 2) {
            return None;
        }
        let Some(cycle) = map.vertex_cycles.iter().find(|c| c.len() == 2) else {
            return Some((word, smoothed));
        };
        let n = word.len();
        let corner = cycle[0];
        // corner (p, q⁻¹) and (q, p⁻¹): drop q entirely so p spans both edges
        let (p, out) = (word[(corner + n - 1) % n], word[corner]);
        if p.base() == out.base() {
            return None;
        }
        let drop = out.base();
        word = word.iter().copied().filter(|l| l.base() != drop).collect();
        smoothed += 1;
        if word.is_empty() {
            return None;
        }
    }
}

/// Reduction of a maximal form at negative vertex `vertex` (a vertex id of
/// [`glue`]). The parent is a maximal form of genus `g - 1`.
pub fn reduce(form: &WicksForm, vertex: usize) -> Result<ReductionResult, MoveError> {
    require_maximal(form)?;
    if form.genus() < 2 {
        return Err(MoveError::GenusOne);
    }
    let word = form.word();
    let map = glue(form);
    if vertex >= map.vertices {
        return Err(MoveError::UnknownVertex(vertex));
    }
    if cycle_sign(&map.vertex_cycles[vertex], map.darts) == VertexSign::Positive {
        return Err(MoveError::PositiveVertex(vertex));
    }
    let (reduction_type, removed_vertices) = classify(word, &map, vertex)?;

    let mut removed_edges: Vec<u32> = removed_vertices
        .iter()
        .flat_map(|&u| neighbours(word, &map, u).into_iter().map(|(_, b)| b))
        .collect();
    removed_edges.sort_unstable();
    removed_edges.dedup();
    let positions: Vec<usize> = (0..word.len()).filter(|&i| removed_edges.contains(&word[i].base())).collect();

    let degenerate = |detail| MoveError::DegenerateReduction { vertex, detail };
    let mut faces = vec![word.letters().to_vec()];
    for &b in &removed_edges {
        delete_edge(&mut faces, b);
    }
    faces.retain(|f| !f.is_empty());
    if faces.len() != 1 {
        return Err(degenerate("edge deletion does not leave a single face"));
    }
    let remaining = Word::new(faces.pop().unwrap_or_default());
    let (smoothed_word, smoothed) = smooth_degree_two(remaining).ok_or_else(|| degenerate("smoothing collapses an edge"))?;
    let parent =
        validate_maximal(smoothed_word, form.genus() - 1).ok_or_else(|| degenerate("parent is not a maximal form"))?;
    Ok(ReductionResult {
        parent,
        reduction_type,
        certificate: ReductionCertificate { removed_vertices, removed_edges, positions, smoothed },
    })
}

/// A point in the interior of the side at `position` of the parent word.
///
/// Points on the same edge (on either of its two sides) are ordered along
/// the edge's positive direction by `order`; for points on different edges
/// the value is irrelevant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SidePoint {
    pub position: usize,
    pub order: u32,
}

impl SidePoint {
    pub const fn at(position: usize) -> Self {
        SidePoint { position, order: 0 }
    }

    pub const fn new(position: usize, order: u32) -> Self {
        SidePoint { position, order }
    }
}

/// A construction output together with the negative vertex it created.
#[derive(Debug, Clone)]
pub struct Construction {
    pub form: WicksForm,
    pub kind: ReductionType,
    /// Vertex id in `glue(&form)` of a created negative vertex; reducing
    /// there gives back the parent.
    pub created_vertex: usize,
}

#[derive(Clone, Copy)]
enum Item {
    Letter(Letter),
    Marker(usize),
}

/// The parent boundary with every side point expanded into a marker and
/// the edges carrying points subdivided.
struct Subdivided {
    items: Vec<Item>,
    next_base: u32,
}

fn subdivide(word: &Word, points: &[SidePoint]) -> Result<Subdivided, MoveError> {
    let n = word.len();
    for p in points {
        if p.position >= n {
            return Err(MoveError::PositionOutOfRange { position: p.position, length: n });
        }
    }
    let mut next_base = fresh_base(word);
    // per base: point indices sorted along the edge, and the piece bases
    let mut along: Vec<(u32, Vec<usize>, Vec<u32>)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let base = word[p.position].base();
        match along.iter_mut().find(|(b, _, _)| *b == base) {
            Some((_, pts, _)) => pts.push(i),
            None => along.push((base, vec![i], Vec::new())),
        }
    }
    for (base, pts, pieces) in along.iter_mut() {
        pts.sort_by_key(|&i| points[i].order);
        if pts.windows(2).any(|w| points[w[0]].order == points[w[1]].order) {
            return Err(MoveError::CoincidentPoints);
        }
        pieces.push(*base);
        for _ in 0..pts.len() {
            pieces.push(next_base);
            next_base += 1;
        }
    }
    let mut items = Vec::with_capacity(n + 3 * points.len());
    for (i, &l) in word.iter().enumerate() {
        let Some((_, pts, pieces)) = along.iter().find(|(b, _, _)| *b == l.base()) else {
            items.push(Item::Letter(l));
            continue;
        };
        let m = pts.len();
        if !l.is_inverse() {
            for j in 0..=m {
                items.push(Item::Letter(Letter::positive(pieces[j])));
                if j < m && points[pts[j]].position == i {
                    items.push(Item::Marker(pts[j]));
                }
            }
        } else {
            for j in (0..=m).rev() {
                items.push(Item::Letter(Letter::negative(pieces[j])));
                if j > 0 && points[pts[j - 1]].position == i {
                    items.push(Item::Marker(pts[j - 1]));
                }
            }
        }
    }
    Ok(Subdivided { items, next_base })
}

impl Subdivided {
    /// Marker ids in the order they appear in the (linear) item list.
    fn marker_order(&self) -> Vec<usize> {
        self.items
            .iter()
            .filter_map(|it| match it {
                Item::Marker(m) => Some(*m),
                Item::Letter(_) => None,
            })
            .collect()
    }

    /// Letters strictly between marker `from` and the next marker, cyclically.
    fn segment_after(&self, from: usize) -> Vec<Letter> {
        let len = self.items.len();
        let start = self
            .items
            .iter()
            .position(|it| matches!(it, Item::Marker(m) if *m == from))
            .expect("marker present");
        let mut out = Vec::new();
        for k in 1..len {
            match self.items[(start + k) % len] {
                Item::Letter(l) => out.push(l),
                Item::Marker(_) => break,
            }
        }
        out
    }
}

/// Order in which the markers of `points` appear along the parent word.
pub(crate) fn marker_order(word: &Word, points: &[SidePoint]) -> Result<Vec<usize>, MoveError> {
    Ok(subdivide(word, points)?.marker_order())
}

/// Corner (in the child word) of a created negative vertex.
fn created_corner(kind: ReductionType) -> usize {
    match kind {
        // a b c d b⁻¹ ...: the head of b
        ReductionType::Alpha => 2,
        // a b c a⁻¹: the head of a
        ReductionType::Beta | ReductionType::Gamma => 1,
    }
}

/// Assembles the child word; the first gadget block starts at position 0.
pub(crate) fn build_child(word: &Word, points: &[SidePoint], kind: ReductionType) -> Result<Word, MoveError> {
    let expected = match kind {
        ReductionType::Alpha => 1,
        ReductionType::Beta => 2,
        ReductionType::Gamma => 3,
    };
    assert_eq!(points.len(), expected, "wrong number of side points for {kind:?}");
    let sub = subdivide(word, points)?;
    let fresh = sub.next_base;
    let g = |k: u32| Letter::positive(fresh + k);
    let gi = |k: u32| Letter::negative(fresh + k);
    let mut letters = Vec::with_capacity(word.len() + 12);
    match kind {
        ReductionType::Alpha => {
            // a b c d b⁻¹ e c⁻¹ d⁻¹ e⁻¹ a⁻¹
            letters.extend([g(0), g(1), g(2), g(3), gi(1), g(4), gi(2), gi(3), gi(4), gi(0)]);
            letters.extend(sub.segment_after(0));
        }
        ReductionType::Beta => {
            // a b c a⁻¹ [x → y] d b⁻¹ c⁻¹ d⁻¹ [y → x]
            letters.extend([g(0), g(1), g(2), gi(0)]);
            letters.extend(sub.segment_after(0));
            letters.extend([g(3), gi(1), gi(2), gi(3)]);
            letters.extend(sub.segment_after(1));
        }
        ReductionType::Gamma => {
            let order = sub.marker_order();
            let start = order.iter().position(|&m| m == 0).expect("marker 0");
            if order[(start + 1) % 3] != 1 {
                return Err(MoveError::PointOrder);
            }
            // a b⁻¹ [y → z] c a⁻¹ [x → y] b c⁻¹ [z → x]
            letters.extend([g(0), gi(1)]);
            letters.extend(sub.segment_after(1));
            letters.extend([g(2), gi(0)]);
            letters.extend(sub.segment_after(0));
            letters.extend([g(1), gi(2)]);
            letters.extend(sub.segment_after(2));
        }
    }
    Ok(Word::new(letters))
}

fn construct(parent: &WicksForm, points: &[SidePoint], kind: ReductionType) -> Result<Construction, MoveError> {
    require_maximal(parent)?;
    let child = build_child(parent.word(), points, kind)?;
    let form = match validate(child) {
        Ok(f) if f.genus() == parent.genus() + 1 && f.is_maximal() => f,
        Ok(f) => {
            return Err(MoveError::ValidationFailed(format!(
                "genus {} length {} is not maximal of genus {}",
                f.genus(),
                f.len(),
                parent.genus() + 1
            )))
        }
        Err(e) => return Err(MoveError::ValidationFailed(e.to_string())),
    };
    let created_vertex = glue(&form).vertex_of_corner[created_corner(kind)];
    Ok(Construction { form, kind, created_vertex })
}

/// α-construction: `x ↦ x₁ a b c d b⁻¹ e c⁻¹ d⁻¹ e⁻¹ a⁻¹ x₂`, `x⁻¹ ↦ x₂⁻¹ x₁⁻¹`.
pub fn alpha_construct(parent: &WicksForm, x: SidePoint) -> Result<Construction, MoveError> {
    construct(parent, &[x], ReductionType::Alpha)
}

/// β-construction from `x u₁ y u₂` to `x₁ a b c a⁻¹ x₂ u₁ y₁ d b⁻¹ c⁻¹ d⁻¹ y₂ u₂`.
pub fn beta_construct(parent: &WicksForm, x: SidePoint, y: SidePoint) -> Result<Construction, MoveError> {
    construct(parent, &[x, y], ReductionType::Beta)
}

/// γ-construction from `x A y B z C` to
/// `x₁ a b⁻¹ y₂ B z₁ c a⁻¹ x₂ A y₁ b c⁻¹ z₂ C`.
///
/// The three points must occur in the cyclic order `x, y, z` along the
/// parent boundary.
pub fn gamma_construct(
    parent: &WicksForm,
    x: SidePoint,
    y: SidePoint,
    z: SidePoint,
) -> Result<Construction, MoveError> {
    construct(parent, &[x, y, z], ReductionType::Gamma)
}
