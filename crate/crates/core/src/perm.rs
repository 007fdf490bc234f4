//! Dense permutations of `0..len`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::map::MapError;

/// A permutation of the half-edge set `0..len`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    /// Builds a permutation from its image table, rejecting anything that is
    /// not a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, MapError> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &image in &images {
            if image >= len || seen[image] {
                return Err(MapError::NotBijection);
            }
            seen[image] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(len: usize, cycles: &[C]) -> Result<Self, MapError> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut seen = vec![false; len];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &h) in cycle.iter().enumerate() {
                if h >= len || seen[h] {
                    return Err(MapError::NotBijection);
                }
                seen[h] = true;
                images[h] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, h: usize) -> usize {
        self.images[h]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (h, &image) in self.images.iter().enumerate() {
            images[image] = h;
        }
        Self { images }
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Self {
        assert_eq!(self.len(), first.len(), "composing permutations of different sizes");
        Self {
            images: first.images.iter().map(|&h| self.images[h]).collect(),
        }
    }

    /// Conjugates by a relabelling: the result maps `relabel(h)` to `relabel(self(h))`.
    pub fn relabel(&self, relabel: &[usize]) -> Self {
        let mut images = vec![0; self.len()];
        for (h, &image) in self.images.iter().enumerate() {
            images[relabel[h]] = relabel[image];
        }
        Self { images }
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(h, &image)| image != h && self.images[image] == h)
    }

    /// The cycle through `start`, beginning at `start`.
    pub fn cycle_from(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut h = self.images[start];
        while h != start {
            cycle.push(h);
            h = self.images[h];
        }
        cycle
    }

    /// All cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let cycle = self.cycle_from(start);
            for &h in &cycle {
                seen[h] = true;
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.images[h];
            }
        }
        count
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, fixed points included: `(0)(1 3)(2)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, h) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{h}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
