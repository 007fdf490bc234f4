//! Vertex-labelled unicellular maps: adjacent labels differ by at most one and
//! the root vertex is labelled 0.

use alloc::vec::Vec;
use core::fmt;

use crate::map::UnicellularMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelError {
    WrongCount { expected: usize, found: usize },
    /// Half-edges of one vertex carry different labels.
    NotConstantOnVertex { vertex: usize },
    RootLabelNonzero { label: i64 },
    /// The edge `{a, alpha(a)}` joins labels that differ by 2 or more.
    LabelJump { half_edge: usize, from: i64, to: i64 },
}

impl fmt::Display for LabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelError::WrongCount { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            LabelError::NotConstantOnVertex { vertex } => {
                write!(f, "labels are not constant on the vertex of half-edge {vertex}")
            }
            LabelError::RootLabelNonzero { label } => write!(f, "root vertex has label {label}, expected 0"),
            LabelError::LabelJump { half_edge, from, to } => {
                write!(f, "edge at half-edge {half_edge} joins labels {from} and {to}")
            }
        }
    }
}

impl core::error::Error for LabelError {}

/// A unicellular map with an integer label on every vertex.
///
/// Labels are stored per half-edge (constant on each vertex) so they follow
/// half-edges through gluing and slicing without re-indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledUnicellularMap {
    map: UnicellularMap,
    labels: Vec<i64>,
}

impl LabeledUnicellularMap {
    /// `labels[k]` is the label of the k-th vertex in order of increasing vertex minimum.
    pub fn from_vertex_labels(map: UnicellularMap, labels: &[i64]) -> Result<Self, LabelError> {
        let mins = map.vertex_mins();
        if mins.len() != labels.len() {
            return Err(LabelError::WrongCount {
                expected: mins.len(),
                found: labels.len(),
            });
        }
        let mut per_half_edge = alloc::vec![0; map.half_edge_count()];
        for (&min, &label) in mins.iter().zip(labels) {
            for h in map.vertex_of(min) {
                per_half_edge[h] = label;
            }
        }
        Self::from_half_edge_labels(map, per_half_edge)
    }

    pub fn from_half_edge_labels(map: UnicellularMap, labels: Vec<i64>) -> Result<Self, LabelError> {
        validate_labels(&map, &labels)?;
        Ok(Self { map, labels })
    }

    pub(crate) fn from_parts_unchecked(map: UnicellularMap, labels: Vec<i64>) -> Self {
        debug_assert_eq!(validate_labels(&map, &labels), Ok(()));
        Self { map, labels }
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    /// Label of the vertex containing `h`.
    pub fn label(&self, h: usize) -> i64 {
        self.labels[h]
    }

    pub fn half_edge_labels(&self) -> &[i64] {
        &self.labels
    }

    /// Labels in order of increasing vertex minimum.
    pub fn vertex_labels(&self) -> Vec<i64> {
        self.map.vertex_mins().into_iter().map(|h| self.labels[h]).collect()
    }

    pub fn into_parts(self) -> (UnicellularMap, Vec<i64>) {
        (self.map, self.labels)
    }
}

/// Checks the labelling rules for per-half-edge labels on `map`.
pub fn validate_labels(map: &UnicellularMap, labels: &[i64]) -> Result<(), LabelError> {
    if labels.len() != map.half_edge_count() {
        return Err(LabelError::WrongCount {
            expected: map.half_edge_count(),
            found: labels.len(),
        });
    }
    for h in 0..labels.len() {
        if labels[h] != labels[map.sigma().apply(h)] {
            return Err(LabelError::NotConstantOnVertex {
                vertex: map.vertex_min(h),
            });
        }
    }
    let root_label = labels[map.root()];
    if root_label != 0 {
        return Err(LabelError::RootLabelNonzero { label: root_label });
    }
    for (a, b) in map.edge_pairs() {
        if (labels[a] - labels[b]).abs() > 1 {
            return Err(LabelError::LabelJump {
                half_edge: a,
                from: labels[a],
                to: labels[b],
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::path_tree;
    use crate::perm::Permutation;
    use alloc::vec;

    #[test]
    fn path_labels() {
        let ok = LabeledUnicellularMap::from_vertex_labels(path_tree(), &[0, 1, 0]).unwrap();
        assert_eq!(ok.vertex_labels(), vec![0, 1, 0]);
        assert_eq!(ok.label(3), 1);
        assert!(matches!(
            LabeledUnicellularMap::from_vertex_labels(path_tree(), &[0, 2, 0]),
            Err(LabelError::LabelJump { .. })
        ));
        assert_eq!(
            LabeledUnicellularMap::from_vertex_labels(path_tree(), &[1, 1, 0]),
            Err(LabelError::RootLabelNonzero { label: 1 })
        );
        assert_eq!(
            LabeledUnicellularMap::from_vertex_labels(path_tree(), &[0, 1]),
            Err(LabelError::WrongCount { expected: 3, found: 2 })
        );
    }

    #[test]
    fn single_edge() {
        let map = UnicellularMap::from_pairing(Permutation::from_images(vec![1, 0]).unwrap()).unwrap();
        assert!(LabeledUnicellularMap::from_vertex_labels(map, &[0, -1]).is_ok());
    }

    #[test]
    fn labels_must_be_constant_on_vertices() {
        assert_eq!(
            LabeledUnicellularMap::from_half_edge_labels(path_tree(), vec![0, 1, 0, 0]),
            Err(LabelError::NotConstantOnVertex { vertex: 1 })
        );
    }
}
