//! Vertex mappings between graphs.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("mapping has length {len}, expected {expected}")]
    SizeMismatch { len: usize, expected: usize },
    #[error("image {image} of vertex {vertex} is out of range 0..{n}")]
    OutOfRange { vertex: usize, image: usize, n: usize },
    #[error("vertices {first} and {second} share the image {image}")]
    NotInjective {
        first: usize,
        second: usize,
        image: usize,
    },
}

/// A map from the vertices `0..len` of one graph to the vertices of another.
///
/// `map[i]` is the image of vertex `i`. Isomorphisms and automorphisms use
/// bijections; subgraph witnesses are injections into a larger vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMapping {
    map: Vec<usize>,
}

impl VertexMapping {
    /// Builds a bijection on `0..map.len()`.
    pub fn permutation(map: Vec<usize>) -> Result<Self, MappingError> {
        let n = map.len();
        Self::injection(map, n)
    }

    /// Builds an injection from `0..map.len()` into `0..codomain`.
    pub fn injection(map: Vec<usize>, codomain: usize) -> Result<Self, MappingError> {
        let mut owner = vec![usize::MAX; codomain];
        for (vertex, &image) in map.iter().enumerate() {
            if image >= codomain {
                return Err(MappingError::OutOfRange {
                    vertex,
                    image,
                    n: codomain,
                });
            }
            if owner[image] != usize::MAX {
                return Err(MappingError::NotInjective {
                    first: owner[image],
                    second: vertex,
                    image,
                });
            }
            owner[image] = vertex;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// Wraps a vector the caller already knows to be injective.
    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        Self { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, vertex: usize) -> usize {
        self.map[vertex]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True when the mapping is a bijection on `0..len`.
    pub fn is_permutation(&self) -> bool {
        let n = self.map.len();
        let mut seen = vec![false; n];
        self.map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    /// Checks that this is a bijection on `0..n`.
    pub fn check_permutation(&self, n: usize) -> Result<(), MappingError> {
        if self.map.len() != n {
            return Err(MappingError::SizeMismatch {
                len: self.map.len(),
                expected: n,
            });
        }
        Self::injection(self.map.clone(), n).map(|_| ())
    }

    /// Inverse of a permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        }
    }

    /// Sign of a permutation: +1 for even, -1 for odd.
    pub fn sign(&self) -> i32 {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.map[v];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for VertexMapping {
    /// Space-separated images, `map[0] map[1] ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
