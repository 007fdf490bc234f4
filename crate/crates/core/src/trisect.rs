//! Up-steps, down-steps and trisections, and the frame `(b1, b2, b3)` that
//! decides whether a trisection is of type I or type II.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::map::{MapError, UnicellularMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `h` comes before `sigma(h)` on the tour.
    UpStep,
    /// `sigma(h)` comes no later than `h` and is the minimum of the vertex.
    DownStep,
    /// A down-step whose successor is not the minimum of its vertex.
    Trisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrisectionKind {
    TypeI,
    TypeII,
}

impl fmt::Display for TrisectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrisectionKind::TypeI => f.write_str("I"),
            TrisectionKind::TypeII => f.write_str("II"),
        }
    }
}

/// A trisection together with the three half-edges at which it can be sliced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrisectionInfo {
    pub tau: usize,
    /// Minimum of the vertex of `tau`.
    pub b1: usize,
    /// Rank-minimal half-edge strictly between `b1` and `b3` around the vertex
    /// that lies above `b3` on the tour.
    pub b2: usize,
    /// `sigma(tau)`.
    pub b3: usize,
    pub kind: TrisectionKind,
}

impl fmt::Display for TrisectionInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tau={} b1={} b2={} b3={} type={}",
            self.tau, self.b1, self.b2, self.b3, self.kind
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrisectError {
    Map(MapError),
    NotATrisection { half_edge: usize },
    /// No half-edge qualifies as `b2`. Every down-step `tau` is itself a
    /// candidate, so this is unreachable for valid input.
    FrameMissing { tau: usize },
}

impl fmt::Display for TrisectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrisectError::Map(e) => e.fmt(f),
            TrisectError::NotATrisection { half_edge } => write!(f, "half-edge {half_edge} is not a trisection"),
            TrisectError::FrameMissing { tau } => write!(f, "no b2 candidate for trisection {tau}"),
        }
    }
}

impl core::error::Error for TrisectError {}

impl From<MapError> for TrisectError {
    fn from(e: MapError) -> Self {
        TrisectError::Map(e)
    }
}

pub fn step_kind(m: &UnicellularMap, h: usize) -> StepKind {
    let next = m.sigma().apply(h);
    if m.rank(h) < m.rank(next) {
        StepKind::UpStep
    } else if next != m.vertex_min(h) {
        StepKind::Trisection
    } else {
        StepKind::DownStep
    }
}

pub fn is_trisection(m: &UnicellularMap, h: usize) -> bool {
    step_kind(m, h) == StepKind::Trisection
}

/// Number of down-steps, trisections included. Always `n + 1`.
pub fn down_step_count(m: &UnicellularMap) -> usize {
    (0..m.half_edge_count())
        .filter(|&h| step_kind(m, h) != StepKind::UpStep)
        .count()
}

/// All trisections of `m`, in tour order. There are exactly `2 * genus` of them.
pub fn trisections(m: &UnicellularMap) -> Vec<usize> {
    m.tour_rank()
        .tour()
        .iter()
        .copied()
        .filter(|&h| is_trisection(m, h))
        .collect()
}

pub fn trisection_frame(m: &UnicellularMap, tau: usize) -> Result<TrisectionInfo, TrisectError> {
    m.check_half_edge(tau)?;
    if !is_trisection(m, tau) {
        return Err(TrisectError::NotATrisection { half_edge: tau });
    }
    // rotation of V(tau) started at its minimum b1
    let rotation = m.vertex_of(tau);
    let b1 = rotation[0];
    let b3 = m.sigma().apply(tau);
    let pos3 = rotation.iter().position(|&h| h == b3).expect("b3 lies on V(tau)");
    let rank3 = m.rank(b3);

    let (pos2, b2) = rotation[1..pos3]
        .iter()
        .enumerate()
        .filter(|&(_, &h)| m.rank(h) > rank3)
        .min_by_key(|&(_, &h)| m.rank(h))
        .map(|(i, &h)| (i + 1, h))
        .ok_or(TrisectError::FrameMissing { tau })?;

    // block K: strictly between b2 and b3 around the vertex, strictly between b1 and b3 on the tour
    let rank1 = m.rank(b1);
    let k_empty = rotation[pos2 + 1..pos3].iter().all(|&h| {
        let r = m.rank(h);
        !(rank1 < r && r < rank3)
    });
    let kind = if k_empty {
        TrisectionKind::TypeI
    } else {
        TrisectionKind::TypeII
    };
    Ok(TrisectionInfo { tau, b1, b2, b3, kind })
}

/// Tour ranks of one vertex, read around the vertex from a chosen start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    columns: Vec<usize>,
    rows: Vec<usize>,
    height: usize,
}

impl Diagram {
    /// `columns` is a rotation sequence, `rank` gives the row of each entry,
    /// `height` the number of rows (the half-edge count).
    pub fn from_sequence(columns: Vec<usize>, rank: impl Fn(usize) -> usize, height: usize) -> Self {
        let rows = columns.iter().map(|&h| rank(h)).collect();
        Self { columns, rows, height }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// `(column, row)` for every half-edge of the vertex.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().copied().enumerate()
    }

    /// Text rendering, top row first, one `*` per column.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in (0..self.height).rev() {
            for &r in &self.rows {
                out.push(if r == row { '*' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// Diagram of the vertex containing `start`, columns following `sigma` from `start`.
pub fn diagram(m: &UnicellularMap, start: usize) -> Diagram {
    Diagram::from_sequence(m.sigma().cycle_from(start), |h| m.rank(h), m.half_edge_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::*;
    use alloc::vec;

    #[test]
    fn torus_step_kinds() {
        let m = torus2();
        assert_eq!(step_kind(&m, 0), StepKind::UpStep);
        assert_eq!(step_kind(&m, 2), StepKind::DownStep);
        assert_eq!(step_kind(&m, 1), StepKind::Trisection);
        assert_eq!(step_kind(&m, 3), StepKind::Trisection);
        assert_eq!(trisections(&m), vec![1, 3]);
        assert_eq!(down_step_count(&m), 3);
    }

    #[test]
    fn trees_have_no_trisections() {
        for m in [path_tree(), star_tree()] {
            assert!(trisections(&m).is_empty());
            assert_eq!(down_step_count(&m), 3);
        }
    }

    #[test]
    fn torus_frames() {
        let m = torus2();
        let f1 = trisection_frame(&m, 1).unwrap();
        // 3 and 1 both precede b3 = 2 around the vertex and lie above it; 1 ranks lower
        assert_eq!((f1.b1, f1.b2, f1.b3, f1.kind), (0, 1, 2, TrisectionKind::TypeI));
        assert_eq!(alloc::format!("{f1}"), "tau=1 b1=0 b2=1 b3=2 type=I");
        let f3 = trisection_frame(&m, 3).unwrap();
        assert_eq!((f3.b1, f3.b2, f3.b3, f3.kind), (0, 3, 1, TrisectionKind::TypeI));
        assert_eq!(
            trisection_frame(&m, 0),
            Err(TrisectError::NotATrisection { half_edge: 0 })
        );
        assert!(matches!(trisection_frame(&m, 9), Err(TrisectError::Map(_))));
    }

    #[test]
    fn staircase_diagram() {
        // vertex (6,3,12,11,2,5) under the natural tour (ranks = labels - 1)
        let d = Diagram::from_sequence(vec![6, 3, 12, 11, 2, 5], |h| h - 1, 12);
        assert_eq!(d.rows(), &[5, 2, 11, 10, 1, 4]);
        let rendered = d.render();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 12);
        assert_eq!(lines[0], "..*...");
        assert_eq!(lines[1], "...*..");
        assert_eq!(lines[6], "*.....");
        assert_eq!(lines[11], "......");
    }

    #[test]
    fn diagram_rotates_with_start() {
        let m = torus2();
        let a = diagram(&m, 0);
        let b = diagram(&m, 1);
        assert_eq!(a.rows(), &[0, 3, 2, 1]);
        assert_eq!(b.rows(), &[2, 1, 0, 3]);
        let leaf = diagram(&path_tree(), 0);
        assert_eq!(leaf.points().collect::<Vec<_>>(), vec![(0, 0)]);
    }
}
