//! Stanley–Reisner complexes and reduced simplicial homology.
//!
//! Vertex sets are `u64` bitmasks, so complexes have at most 64 vertices.
//! Faces are never stored globally: a complex is described by its minimal
//! non-faces, and faces of a restriction are enumerated on demand.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::oracle::linalg::{Field, SparseMatrix};

pub const MAX_VERTICES: usize = 64;

/// Simplicial complex given by its minimal non-faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    nonfaces: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds the complex with the given minimal non-faces, discarding any
    /// that contain another.
    pub fn from_nonfaces(num_vertices: usize, nonfaces: impl IntoIterator<Item = u64>) -> Result<Self> {
        if num_vertices > MAX_VERTICES {
            return Err(Error::Budget { needed: num_vertices, budget: MAX_VERTICES });
        }
        let mut all: Vec<u64> = nonfaces.into_iter().collect();
        if all.contains(&0) {
            return Err(Error::UnitIdeal);
        }
        all.sort_by_key(|m| (m.count_ones(), *m));
        all.dedup();
        let mut minimal: Vec<u64> = Vec::with_capacity(all.len());
        for m in all {
            if !minimal.iter().any(|&n| is_subset(n, m)) {
                minimal.push(m);
            }
        }
        Ok(Self { num_vertices, nonfaces: minimal })
    }

    /// The Stanley–Reisner complex of a squarefree monomial ideal, on the
    /// variables of its ring.
    pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<Self> {
        let masks = generator_masks(ideal)?;
        Self::from_nonfaces(ideal.ring().num_vars(), masks)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.num_vertices)
    }

    pub fn minimal_nonfaces(&self) -> &[u64] {
        &self.nonfaces
    }

    pub fn is_face(&self, set: u64) -> bool {
        !self.nonfaces.iter().any(|&n| is_subset(n, set))
    }

    /// All faces of the restriction to `subset`, grouped by cardinality.
    pub fn faces_within(&self, subset: u64) -> Vec<Vec<u64>> {
        enumerate_faces(subset, |f| self.is_face(f))
    }

    /// Dimensions of `H̃_{-1}, ..., H̃_{|W|-1}` of the restriction to `subset`.
    ///
    /// `subset = 0` gives the complex `{∅}`, whose only homology is
    /// `H̃_{-1} = 1`.
    pub fn reduced_homology_dims(&self, subset: u64, field: Field) -> Vec<usize> {
        let subset = subset & self.vertex_mask();
        let mut dims = homology_of(subset, |f| self.is_face(f), field);
        dims.resize(subset.count_ones() as usize + 1, 0);
        dims
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Supports of the generators of a squarefree ideal, as bitmasks.
pub(crate) fn generator_masks(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    if ideal.ring().num_vars() > MAX_VERTICES {
        return Err(Error::Budget { needed: ideal.ring().num_vars(), budget: MAX_VERTICES });
    }
    ideal
        .gens()
        .iter()
        .map(|g| {
            if !g.is_squarefree() {
                return Err(Error::NotSquarefree(g.display(ideal.ring()).to_string()));
            }
            Ok(g.support().iter().fold(0u64, |m, &v| m | 1 << v))
        })
        .collect()
}

/// Faces of a downward closed family inside `vertices`, grouped by size.
/// Each face is produced once, by adding vertices in increasing order.
pub(crate) fn enumerate_faces(vertices: u64, is_face: impl Fn(u64) -> bool) -> Vec<Vec<u64>> {
    let mut levels = vec![vec![0u64]];
    loop {
        let last = levels.last().expect("at least the empty face");
        let mut next = Vec::new();
        for &face in last {
            let above = if face == 0 { vertices } else { vertices & !full_mask(64 - face.leading_zeros() as usize) };
            let mut rest = above;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest ^= v;
                if is_face(face | v) {
                    next.push(face | v);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}

/// Reduced homology dimensions `H̃_{-1}, H̃_0, ...` of the complex whose faces
/// are the subsets of `vertices` accepted by `is_face` (which must be
/// downward closed and accept the empty set). Trailing zeros are trimmed
/// only to the top face dimension.
pub(crate) fn homology_of(vertices: u64, is_face: impl Fn(u64) -> bool, field: Field) -> Vec<usize> {
    let levels = enumerate_faces(vertices, is_face);
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut ranks = vec![0usize; levels.len() + 1];
    for s in 1..levels.len() {
        let index: HashMap<u64, u32> = levels[s - 1].iter().enumerate().map(|(k, &f)| (f, k as u32)).collect();
        let mut m = SparseMatrix::new();
        for &face in &levels[s] {
            let mut row = Vec::with_capacity(s);
            let mut rest = face;
            let mut pos = 0;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest ^= v;
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                row.push((index[&(face ^ v)], sign));
                pos += 1;
            }
            m.push_row(row);
        }
        ranks[s] = m.rank(field);
    }
    (0..levels.len())
        .map(|s| levels[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

fn is_subset(sub: u64, set: u64) -> bool {
    sub & set == sub
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn mask(vs: &[usize]) -> u64 {
        vs.iter().fold(0, |m, &v| m | 1 << v)
    }

    #[test]
    fn single_edge_nonface() {
        let c = SimplicialComplex::stanley_reisner(&parse_ideal("(x1*x2)").unwrap()).unwrap();
        assert_eq!(c.faces_within(0b11), vec![vec![0], vec![0b01, 0b10]]);
        assert_eq!(c.minimal_nonfaces(), &[0b11]);
    }

    #[test]
    fn path_complex_facets() {
        let c = SimplicialComplex::stanley_reisner(&parse_ideal("(x1*x2, x2*x3)").unwrap()).unwrap();
        let faces = c.faces_within(0b111);
        assert_eq!(faces[2], vec![mask(&[0, 2])]);
        assert_eq!(faces.len(), 3);
        assert!(c.is_face(mask(&[1])));
        assert!(!c.is_face(mask(&[1, 2])));
    }

    #[test]
    fn triangle_boundary() {
        let c = SimplicialComplex::stanley_reisner(&parse_ideal("(x1*x2*x3)").unwrap()).unwrap();
        assert_eq!(c.reduced_homology_dims(0b111, Field::Rational), vec![0, 0, 1, 0]);
    }

    #[test]
    fn two_points() {
        let c = SimplicialComplex::from_nonfaces(2, [0b11]).unwrap();
        assert_eq!(c.reduced_homology_dims(0b11, Field::Rational), vec![0, 1, 0]);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let c = SimplicialComplex::from_nonfaces(5, []).unwrap();
        for w in [0b1u64, 0b101, 0b11111] {
            assert!(c.reduced_homology_dims(w, Field::Rational).iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn empty_restriction_is_the_empty_face() {
        let c = SimplicialComplex::from_nonfaces(3, [0b11]).unwrap();
        assert_eq!(c.reduced_homology_dims(0, Field::Rational), vec![1]);
    }

    #[test]
    fn sphere_boundaries() {
        for d in 1..=5usize {
            let n = d + 1;
            let c = SimplicialComplex::from_nonfaces(n, [full_mask(n)]).unwrap();
            let dims = c.reduced_homology_dims(full_mask(n), Field::Rational);
            let mut expected = vec![0; n + 1];
            expected[d] = 1; // index k+1 holds H̃_k, so H̃_{d-1} sits at d
            assert_eq!(dims, expected, "boundary of the {d}-simplex");
        }
    }

    #[test]
    fn non_squarefree_rejected() {
        let err = SimplicialComplex::stanley_reisner(&parse_ideal("(x1^2*x2)").unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotSquarefree(_)));
    }

    #[test]
    fn nonminimal_nonfaces_dropped() {
        let c = SimplicialComplex::from_nonfaces(3, [0b111, 0b011]).unwrap();
        assert_eq!(c.minimal_nonfaces(), &[0b011]);
    }

    #[test]
    fn projective_plane_torsion_only_shows_in_char_two() {
        // 6-vertex RP^2: H_1 = Z/2, so rational homology vanishes but GF(2)
        // sees H_1 = H_2 = 1
        let facets: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facet_masks: Vec<u64> = facets.iter().map(|f| mask(f)).collect();
        let is_face = |s: u64| facet_masks.iter().any(|&f| f & s == s);
        assert!(homology_of(0b111111, is_face, Field::Rational).iter().all(|&d| d == 0));
        assert_eq!(homology_of(0b111111, is_face, Field::Prime(2)), vec![0, 0, 1, 1]);
    }
}
