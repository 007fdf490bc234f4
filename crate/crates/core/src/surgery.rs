//! Gluing and slicing of vertices, and the bijections built from them.
//!
//! * [`glue3`] / [`slice3`] merge three vertices into one (genus + 1) and back.
//! * [`phi`] glues three marked vertices at their minima and marks the new
//!   trisection; [`phi_inv`] undoes it for type I trisections.
//! * [`psi`] glues two marked vertices with the successor of a trisection;
//!   [`psi_inv`] undoes it for type II trisections.
//! * [`lambda`] chains one `phi` and `q − 1` `psi` steps to turn `2q + 1`
//!   marked vertices into a marked trisection `q` genera higher; [`xi`] is its
//!   inverse.
//!
//! Surgeries keep half-edge identities and the root half-edge. Nothing here
//! canonicalizes its output.

use alloc::vec::Vec;
use core::fmt;

use crate::labels::{validate_labels, LabelError, LabeledUnicellularMap};
use crate::map::{MapError, UnicellularMap};
use crate::perm::Permutation;
use crate::trisect::{is_trisection, trisection_frame, TrisectError, TrisectionKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    Map(MapError),
    Trisect(TrisectError),
    Label(LabelError),
    /// Two of the half-edges to glue share a vertex.
    SameVertex { a: usize, b: usize },
    /// Gluing needs `rank(a1) < rank(a2) < rank(a3)`.
    BadOrder,
    NotSameVertex,
    /// The triple appears in the same cyclic order around the vertex and along the face,
    /// or not in the cyclic order `(a1, a2, a3)` around the vertex.
    NotIntertwined,
    WrongType { tau: usize, kind: TrisectionKind },
    /// `min v1 < min v2 < min V(tau)` fails.
    OrderViolated,
    DuplicateMarks,
    EvenMarks { count: usize },
    TooFewMarks { count: usize },
    LabelMismatch,
}

impl fmt::Display for SurgeryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryError::Map(e) => e.fmt(f),
            SurgeryError::Trisect(e) => e.fmt(f),
            SurgeryError::Label(e) => e.fmt(f),
            SurgeryError::SameVertex { a, b } => write!(f, "half-edges {a} and {b} lie on the same vertex"),
            SurgeryError::BadOrder => write!(f, "half-edges must be strictly increasing in tour order"),
            SurgeryError::NotSameVertex => write!(f, "half-edges must lie on one vertex"),
            SurgeryError::NotIntertwined => write!(f, "half-edges are not intertwined"),
            SurgeryError::WrongType { tau, kind } => write!(f, "trisection {tau} has type {kind}"),
            SurgeryError::OrderViolated => write!(f, "marked vertices must precede the vertex of the trisection"),
            SurgeryError::DuplicateMarks => write!(f, "marked vertices must be distinct"),
            SurgeryError::EvenMarks { count } => write!(f, "need an odd number of marked vertices, got {count}"),
            SurgeryError::TooFewMarks { count } => write!(f, "need at least 3 marked vertices, got {count}"),
            SurgeryError::LabelMismatch => write!(f, "marked vertices carry different labels"),
        }
    }
}

impl core::error::Error for SurgeryError {}

impl From<MapError> for SurgeryError {
    fn from(e: MapError) -> Self {
        SurgeryError::Map(e)
    }
}

impl From<TrisectError> for SurgeryError {
    fn from(e: TrisectError) -> Self {
        SurgeryError::Trisect(e)
    }
}

impl From<LabelError> for SurgeryError {
    fn from(e: LabelError) -> Self {
        SurgeryError::Label(e)
    }
}

/// A map with a distinguished trisection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedTrisection {
    map: UnicellularMap,
    tau: usize,
}

impl MarkedTrisection {
    pub fn new(map: UnicellularMap, tau: usize) -> Result<Self, SurgeryError> {
        map.check_half_edge(tau)?;
        if !is_trisection(&map, tau) {
            return Err(TrisectError::NotATrisection { half_edge: tau }.into());
        }
        Ok(Self { map, tau })
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn kind(&self) -> TrisectionKind {
        trisection_frame(&self.map, self.tau)
            .expect("tau is a trisection")
            .kind
    }

    pub fn into_map(self) -> UnicellularMap {
        self.map
    }
}

/// A map with a set of distinct marked vertices.
///
/// Marks are stored as vertex minima sorted by tour rank, so two values are
/// equal exactly when they mark the same vertex set on the same map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedVertices {
    map: UnicellularMap,
    marks: Vec<usize>,
}

impl MarkedVertices {
    /// Each mark may be any half-edge of the vertex it names.
    pub fn new(map: UnicellularMap, marks: &[usize]) -> Result<Self, SurgeryError> {
        let mut mins = Vec::with_capacity(marks.len());
        for &h in marks {
            map.check_half_edge(h)?;
            mins.push(map.vertex_min(h));
        }
        mins.sort_by_key(|&h| map.rank(h));
        if mins.windows(2).any(|w| w[0] == w[1]) {
            return Err(SurgeryError::DuplicateMarks);
        }
        Ok(Self { map, marks: mins })
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    /// Vertex minima in tour order.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn into_parts(self) -> (UnicellularMap, Vec<usize>) {
        (self.map, self.marks)
    }
}

/// Two vertices and a trisection with `min v1 < min v2 < min V(tau)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PsiInput {
    map: UnicellularMap,
    v1: usize,
    v2: usize,
    tau: usize,
}

impl PsiInput {
    pub fn new(map: UnicellularMap, v1: usize, v2: usize, tau: usize) -> Result<Self, SurgeryError> {
        for h in [v1, v2, tau] {
            map.check_half_edge(h)?;
        }
        if !is_trisection(&map, tau) {
            return Err(TrisectError::NotATrisection { half_edge: tau }.into());
        }
        let (v1, v2) = (map.vertex_min(v1), map.vertex_min(v2));
        let v3 = map.vertex_min(tau);
        if !(map.rank(v1) < map.rank(v2) && map.rank(v2) < map.rank(v3)) {
            return Err(SurgeryError::OrderViolated);
        }
        Ok(Self { map, v1, v2, tau })
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    /// Minimum of the first marked vertex.
    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    pub fn tau(&self) -> usize {
        self.tau
    }
}

fn check_range(m: &UnicellularMap, hs: &[usize]) -> Result<(), SurgeryError> {
    for &h in hs {
        m.check_half_edge(h)?;
    }
    Ok(())
}

/// Glues `a1 < a2 < a3` (tour order), taken on three distinct vertices, into
/// the single vertex `(a1, rest of v2, a2, rest of v3, a3, rest of v1)`.
pub fn glue3(m: &UnicellularMap, a1: usize, a2: usize, a3: usize) -> Result<UnicellularMap, SurgeryError> {
    check_range(m, &[a1, a2, a3])?;
    for (a, b) in [(a1, a2), (a2, a3), (a1, a3)] {
        if m.same_vertex(a, b) {
            return Err(SurgeryError::SameVertex { a, b });
        }
    }
    if !(m.rank(a1) < m.rank(a2) && m.rank(a2) < m.rank(a3)) {
        return Err(SurgeryError::BadOrder);
    }
    let sigma = m.sigma();
    let v1 = sigma.cycle_from(a1);
    let v2 = sigma.cycle_from(a2);
    let v3 = sigma.cycle_from(a3);
    let mut merged = Vec::with_capacity(v1.len() + v2.len() + v3.len());
    merged.push(a1);
    merged.extend_from_slice(&v2[1..]);
    merged.push(a2);
    merged.extend_from_slice(&v3[1..]);
    merged.push(a3);
    merged.extend_from_slice(&v1[1..]);

    let mut images = sigma.images().to_vec();
    set_cycle(&mut images, &merged);
    let glued = UnicellularMap::assemble(m.alpha().clone(), Permutation::from_images_unchecked(images), m.root())?;
    debug_assert_eq!(glued.genus(), m.genus() + 1);
    Ok(glued)
}

/// Splits the vertex `(a1, h2…, a2, h3…, a3, h1…)` into `(a1, h1…)`,
/// `(a2, h2…)` and `(a3, h3…)`. The triple must be intertwined: cyclic order
/// `(a1, a2, a3)` around the vertex, `(a1, a3, a2)` along the face.
pub fn slice3(m: &UnicellularMap, a1: usize, a2: usize, a3: usize) -> Result<UnicellularMap, SurgeryError> {
    check_range(m, &[a1, a2, a3])?;
    if !(m.same_vertex(a1, a2) && m.same_vertex(a1, a3)) {
        return Err(SurgeryError::NotSameVertex);
    }
    if a1 == a2 || a2 == a3 || a1 == a3 {
        return Err(SurgeryError::NotIntertwined);
    }
    let rotation = m.sigma().cycle_from(a1);
    let pos = |h: usize| rotation.iter().position(|&x| x == h).expect("same vertex");
    let (p2, p3) = (pos(a2), pos(a3));
    let len = m.half_edge_count();
    let face_offset = |h: usize| (m.rank(h) + len - m.rank(a1)) % len;
    if !(p2 < p3 && face_offset(a3) < face_offset(a2)) {
        return Err(SurgeryError::NotIntertwined);
    }

    let mut images = m.sigma().images().to_vec();
    for (head, rest) in [
        (a1, &rotation[p3 + 1..]),
        (a2, &rotation[1..p2]),
        (a3, &rotation[p2 + 1..p3]),
    ] {
        let mut cycle = Vec::with_capacity(rest.len() + 1);
        cycle.push(head);
        cycle.extend_from_slice(rest);
        set_cycle(&mut images, &cycle);
    }
    let sliced = UnicellularMap::assemble(m.alpha().clone(), Permutation::from_images_unchecked(images), m.root())?;
    debug_assert_eq!(sliced.genus() + 1, m.genus());
    Ok(sliced)
}

fn set_cycle(images: &mut [usize], cycle: &[usize]) {
    for (i, &h) in cycle.iter().enumerate() {
        images[h] = cycle[(i + 1) % cycle.len()];
    }
}

fn predecessor(m: &UnicellularMap, h: usize) -> usize {
    let mut prev = h;
    loop {
        let next = m.sigma().apply(prev);
        if next == h {
            return prev;
        }
        prev = next;
    }
}

/// Glues three distinct vertices at their minima; the half-edge preceding the
/// last minimum around the new vertex is a type I trisection.
pub fn phi(m: &UnicellularMap, vertices: [usize; 3]) -> Result<MarkedTrisection, SurgeryError> {
    let marked = MarkedVertices::new(m.clone(), &vertices)?;
    phi_sorted(m, marked.marks[0], marked.marks[1], marked.marks[2])
}

// a1 < a2 < a3 are vertex minima
fn phi_sorted(m: &UnicellularMap, a1: usize, a2: usize, a3: usize) -> Result<MarkedTrisection, SurgeryError> {
    let glued = glue3(m, a1, a2, a3)?;
    let tau = predecessor(&glued, a3);
    debug_assert!(is_trisection(&glued, tau));
    Ok(MarkedTrisection { map: glued, tau })
}

/// Inverse of [`phi`] on type I trisections.
pub fn phi_inv(mt: &MarkedTrisection) -> Result<MarkedVertices, SurgeryError> {
    let frame = trisection_frame(&mt.map, mt.tau)?;
    if frame.kind != TrisectionKind::TypeI {
        return Err(SurgeryError::WrongType {
            tau: mt.tau,
            kind: frame.kind,
        });
    }
    let sliced = slice3(&mt.map, frame.b1, frame.b2, frame.b3)?;
    debug_assert!([frame.b1, frame.b2, frame.b3].iter().all(|&b| sliced.vertex_min(b) == b));
    MarkedVertices::new(sliced, &[frame.b1, frame.b2, frame.b3])
}

/// Glues `min v1`, `min v2` and `sigma(tau)`; `tau` becomes a type II trisection.
pub fn psi(input: &PsiInput) -> Result<MarkedTrisection, SurgeryError> {
    let a3 = input.map.sigma().apply(input.tau);
    let glued = glue3(&input.map, input.v1, input.v2, a3)?;
    debug_assert!(is_trisection(&glued, input.tau));
    Ok(MarkedTrisection {
        map: glued,
        tau: input.tau,
    })
}

/// Inverse of [`psi`] on type II trisections.
pub fn psi_inv(mt: &MarkedTrisection) -> Result<PsiInput, SurgeryError> {
    let frame = trisection_frame(&mt.map, mt.tau)?;
    if frame.kind != TrisectionKind::TypeII {
        return Err(SurgeryError::WrongType {
            tau: mt.tau,
            kind: frame.kind,
        });
    }
    let sliced = slice3(&mt.map, frame.b1, frame.b2, frame.b3)?;
    PsiInput::new(sliced, frame.b1, frame.b2, mt.tau)
}

/// Sends a map of genus `p` with `2q + 1` marked vertices to a map of genus
/// `p + q` with a marked trisection: glue the three last marks with [`phi`],
/// then consume the remaining marks two at a time, last first, with [`psi`].
pub fn lambda(mv: &MarkedVertices) -> Result<MarkedTrisection, SurgeryError> {
    let count = mv.marks.len();
    if count.is_multiple_of(2) {
        return Err(SurgeryError::EvenMarks { count });
    }
    if count < 3 {
        return Err(SurgeryError::TooFewMarks { count });
    }
    let marks = &mv.marks;
    let mut current = phi_sorted(&mv.map, marks[count - 3], marks[count - 2], marks[count - 1])?;
    let mut pending = count - 3;
    while pending > 0 {
        // Pending marks rank below every glued half-edge, so their minima are unchanged.
        let (v1, v2) = (marks[pending - 2], marks[pending - 1]);
        debug_assert_eq!(current.map.vertex_min(v1), v1);
        debug_assert_eq!(current.map.vertex_min(v2), v2);
        let input = PsiInput::new(current.map, v1, v2, current.tau)?;
        current = psi(&input)?;
        pending -= 2;
    }
    Ok(current)
}

/// Inverse of [`lambda`]: open type II trisections with [`psi_inv`] until a
/// type I one remains, then open it with [`phi_inv`].
pub fn xi(mt: &MarkedTrisection) -> Result<MarkedVertices, SurgeryError> {
    let mut current = mt.clone();
    let mut marks = Vec::new();
    loop {
        let frame = trisection_frame(&current.map, current.tau)?;
        match frame.kind {
            TrisectionKind::TypeII => {
                let input = psi_inv(&current)?;
                marks.push(input.v1);
                marks.push(input.v2);
                current = MarkedTrisection {
                    map: input.map,
                    tau: input.tau,
                };
            }
            TrisectionKind::TypeI => {
                let last = phi_inv(&current)?;
                let (map, last_marks) = last.into_parts();
                marks.extend(last_marks);
                return MarkedVertices::new(map, &marks);
            }
        }
    }
}

/// A labelled map with a distinguished trisection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMarkedTrisection {
    pub labeled: LabeledUnicellularMap,
    pub tau: usize,
}

/// [`lambda`] restricted to marks that share one label. Labels ride on
/// half-edges, so the merged vertex keeps the common label.
pub fn lambda_labeled(lm: &LabeledUnicellularMap, marks: &[usize]) -> Result<LabeledMarkedTrisection, SurgeryError> {
    check_range(lm.map(), marks)?;
    if let Some(&first) = marks.first() {
        if marks.iter().any(|&h| lm.label(h) != lm.label(first)) {
            return Err(SurgeryError::LabelMismatch);
        }
    }
    let mv = MarkedVertices::new(lm.map().clone(), marks)?;
    let mt = lambda(&mv)?;
    let labels = lm.half_edge_labels().to_vec();
    validate_labels(&mt.map, &labels)?;
    Ok(LabeledMarkedTrisection {
        tau: mt.tau,
        labeled: LabeledUnicellularMap::from_parts_unchecked(mt.map, labels),
    })
}

/// [`xi`] on a labelled map; the returned marks all carry the label of the trisection's vertex.
pub fn xi_labeled(lmt: &LabeledMarkedTrisection) -> Result<(LabeledUnicellularMap, Vec<usize>), SurgeryError> {
    let mt = MarkedTrisection::new(lmt.labeled.map().clone(), lmt.tau)?;
    let (map, marks) = xi(&mt)?.into_parts();
    let labels = lmt.labeled.half_edge_labels().to_vec();
    validate_labels(&map, &labels)?;
    Ok((LabeledUnicellularMap::from_parts_unchecked(map, labels), marks))
}
