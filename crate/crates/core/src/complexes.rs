//! Simple polytopes described through their dual simplicial complexes.
//!
//! A face of the dual complex is a set of facets with nonempty common
//! intersection. Vertex sets are stored as `u64` bit masks, so complexes are
//! limited to 64 vertices (64 facets of the polytope), far beyond what the
//! ring computations can handle anyway.

use thiserror::Error;

pub type Face = u64;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("simplex {simplex:?} uses vertex {vertex} outside 0..{vertex_count}")]
    VertexOutOfRange {
        simplex: Vec<usize>,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("simplex {0:?} lists a vertex twice")]
    RepeatedVertex(Vec<usize>),
    #[error("simplex {0:?} is contained in simplex {1:?}")]
    NotAnAntichain(Vec<usize>, Vec<usize>),
    #[error("vertex {0} lies in no maximal simplex")]
    UnusedVertex(usize),
    #[error("complex is not pure of dimension {expected}: simplex {simplex:?} has {size} vertices")]
    NotPure {
        expected: usize,
        simplex: Vec<usize>,
        size: usize,
    },
    #[error("product of simplices needs at least one factor, each of dimension >= 1")]
    BadFactorDims,
    #[error("real moment-angle manifold is a product of spheres only for products of simplices")]
    NotAProduct,
}

pub fn face_from_slice(vertices: &[usize]) -> Face {
    vertices.iter().fold(0, |acc, &v| acc | (1 << v))
}

pub fn face_to_vec(face: Face) -> Vec<usize> {
    (0..MAX_VERTICES).filter(|&i| face >> i & 1 == 1).collect()
}

fn face_size(face: Face) -> usize {
    face.count_ones() as usize
}

/// Sorts faces by their sorted vertex lists, lexicographically.
fn sort_faces(faces: &mut [Face]) {
    faces.sort_by_key(|&f| face_to_vec(f));
}

/// A simplicial complex on vertices `0..vertex_count`, given by its maximal
/// simplices. Faces are all subsets of maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    // lexicographically sorted, antichain
    maximal: Vec<Face>,
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, maximal_simplices: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if vertex_count > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(vertex_count));
        }
        let mut faces = Vec::with_capacity(maximal_simplices.len());
        for s in maximal_simplices {
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    simplex: s.clone(),
                    vertex: v,
                    vertex_count,
                });
            }
            let f = face_from_slice(s);
            if face_size(f) != s.len() {
                return Err(ComplexError::RepeatedVertex(s.clone()));
            }
            faces.push(f);
        }
        for (i, &a) in faces.iter().enumerate() {
            for (j, &b) in faces.iter().enumerate() {
                if i != j && a & b == a && (a != b || i < j) {
                    return Err(ComplexError::NotAnAntichain(face_to_vec(a), face_to_vec(b)));
                }
            }
        }
        let used = faces.iter().fold(0u64, |acc, &f| acc | f);
        if let Some(v) = (0..vertex_count).find(|&v| used >> v & 1 == 0) {
            return Err(ComplexError::UnusedVertex(v));
        }
        sort_faces(&mut faces);
        Ok(Self {
            vertex_count,
            maximal: faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Maximal simplices as sorted vertex lists, in lexicographic order.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&f| face_to_vec(f)).collect()
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal
    }

    pub fn is_face(&self, face: Face) -> bool {
        self.maximal.iter().any(|&m| face & m == face)
    }

    /// Every face of the complex, including the empty face, sorted.
    pub fn all_faces(&self) -> Vec<Face> {
        let mut seen = std::collections::BTreeSet::new();
        for &m in &self.maximal {
            // enumerate submasks of m
            let mut sub = m;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().collect();
        sort_faces(&mut faces);
        faces
    }

    /// The inclusion-minimal vertex sets that are not faces (Stanley-Reisner
    /// generators), as sorted vertex lists in lexicographic order.
    ///
    /// Every minimal non-face `s` has the form `t + {v}` with `t = s - {v}` a
    /// face, so candidates are generated from faces plus one vertex.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let faces = self.all_faces();
        let face_set: std::collections::HashSet<Face> = faces.iter().copied().collect();
        let is_face = |f: Face| face_set.contains(&f);
        let mut found = std::collections::BTreeSet::new();
        for t in faces {
            for v in 0..self.vertex_count {
                if t >> v & 1 == 1 {
                    continue;
                }
                let s = t | (1 << v);
                if is_face(s) {
                    continue;
                }
                let minimal = face_to_vec(s).into_iter().all(|w| is_face(s & !(1 << w)));
                if minimal {
                    found.insert(s);
                }
            }
        }
        let mut faces: Vec<Face> = found.into_iter().collect();
        sort_faces(&mut faces);
        faces.into_iter().map(face_to_vec).collect()
    }

    /// Equivariant LS-category of the real moment-angle complex under the
    /// full `Z_2^r` action: the number of maximal simplices.
    pub fn equivariant_cat_rzk(&self) -> usize {
        self.maximal.len()
    }
}

/// Which family a polytope belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeStructure {
    /// `Delta^{n_1} x ... x Delta^{n_m}` with the global facet indexing below.
    ProductOfSimplices(Vec<usize>),
    General,
}

/// Combinatorial type of a simple polytope: dimension, facets and dual complex.
///
/// For a product of simplices the facets are numbered (0-based) as follows:
/// within factor `j`, facets `F_1^j .. F_{n_j}^j` take indices
/// `N_{j-1} .. N_j - 1` where `N_j = n_1 + ... + n_j`, and `F_0^j` takes
/// index `n + j - 1`. The facet variable of index `i` prints as `x_{i+1}`,
/// and the variable of `F_0^j` is also called `y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolytope {
    dim: usize,
    dual: SimplicialComplex,
    structure: PolytopeStructure,
}

/// Sphere factors of the real moment-angle manifold of a product of simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereProduct {
    pub spheres: Vec<usize>,
    pub simply_connected: bool,
}

impl SimplePolytope {
    /// A general simple polytope of dimension `dim` from its dual complex.
    /// Checks pureness only; whether the complex is a polytopal sphere is
    /// taken on trust.
    pub fn from_dual(dim: usize, dual: SimplicialComplex) -> Result<Self, ComplexError> {
        for &f in dual.maximal_faces() {
            if face_size(f) != dim {
                return Err(ComplexError::NotPure {
                    expected: dim,
                    simplex: face_to_vec(f),
                    size: face_size(f),
                });
            }
        }
        Ok(Self {
            dim,
            dual,
            structure: PolytopeStructure::General,
        })
    }

    pub fn product_of_simplices(dims: &[usize]) -> Result<Self, ComplexError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(ComplexError::BadFactorDims);
        }
        let n: usize = dims.iter().sum();
        let m = dims.len();
        if n + m > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n + m));
        }
        let all: Face = if n + m == 64 { u64::MAX } else { (1u64 << (n + m)) - 1 };
        let factor_facets: Vec<Vec<usize>> = factor_facet_indices(dims);
        // a vertex v_{l_1..l_m} is the intersection of all facets except F_{l_j}^j
        let mut maximal = Vec::new();
        let mut choice = vec![0usize; m];
        loop {
            let omitted = choice
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &l)| acc | 1 << factor_facets[j][l]);
            maximal.push(all & !omitted);
            // odometer over l_j in 0..=n_j
            let mut j = m;
            loop {
                if j == 0 {
                    sort_faces(&mut maximal);
                    let dual = SimplicialComplex {
                        vertex_count: n + m,
                        maximal,
                    };
                    return Ok(Self {
                        dim: n,
                        dual,
                        structure: PolytopeStructure::ProductOfSimplices(dims.to_vec()),
                    });
                }
                j -= 1;
                choice[j] += 1;
                if choice[j] <= dims[j] {
                    break;
                }
                choice[j] = 0;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.dual.vertex_count()
    }

    pub fn dual(&self) -> &SimplicialComplex {
        &self.dual
    }

    pub fn structure(&self) -> &PolytopeStructure {
        &self.structure
    }

    pub fn product_dims(&self) -> Option<&[usize]> {
        match &self.structure {
            PolytopeStructure::ProductOfSimplices(d) => Some(d),
            PolytopeStructure::General => None,
        }
    }

    /// Minimal non-faces of the dual complex. For a product of simplices these
    /// are the facet sets of the factors, read off directly.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        match &self.structure {
            PolytopeStructure::ProductOfSimplices(dims) => {
                let mut sets: Vec<Vec<usize>> = factor_facet_indices(dims)
                    .into_iter()
                    .map(|mut f| {
                        f.sort_unstable();
                        f
                    })
                    .collect();
                sets.sort();
                sets
            }
            PolytopeStructure::General => self.dual.minimal_nonfaces(),
        }
    }

    /// Number of vertices of the polytope, i.e. maximal simplices of the dual.
    pub fn vertex_count(&self) -> usize {
        self.dual.maximal_faces().len()
    }

    pub fn rz_product_spheres(&self) -> Result<SphereProduct, ComplexError> {
        let dims = self.product_dims().ok_or(ComplexError::NotAProduct)?;
        Ok(SphereProduct {
            spheres: dims.to_vec(),
            simply_connected: dims.iter().all(|&d| d >= 2),
        })
    }
}

/// For each factor `j`, the global facet indices of `F_0^j, F_1^j, .., F_{n_j}^j`
/// (in that order, so position `k` holds `F_k^j`).
pub fn factor_facet_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = dims.iter().sum();
    let mut offset = 0;
    dims.iter()
        .enumerate()
        .map(|(j, &nj)| {
            let mut v = vec![n + j];
            v.extend(offset..offset + nj);
            offset += nj;
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap()
    }

    /// Facet incidences of the cube `[0,1]^k` from its vertex coordinates:
    /// facet `2i` is `x_i = 0`, facet `2i+1` is `x_i = 1`.
    fn cube_dual_by_incidence(k: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..1u32 << k)
            .map(|v| (0..k).map(|i| 2 * i + ((v >> i) & 1) as usize).collect::<Vec<_>>())
            .map(|mut s| {
                s.sort();
                s
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn triangle_product() {
        let p = SimplePolytope::product_of_simplices(&[2]).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.facet_count(), 3);
        assert_eq!(
            p.dual().maximal_simplices(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(p.dual().minimal_nonfaces(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn square_matches_incidence_oracle() {
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        assert_eq!(p.facet_count(), 4);
        // relabel the cube oracle: oracle facets (x0=0, x0=1, x1=0, x1=1) are the
        // opposite pairs {F_1^1, F_0^1} = {0, 2} and {F_1^2, F_0^2} = {1, 3}
        let relabel = [0, 2, 1, 3];
        let mut oracle: Vec<Vec<usize>> = cube_dual_by_incidence(2)
            .into_iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&f| relabel[f]).collect();
                t.sort();
                t
            })
            .collect();
        oracle.sort();
        assert_eq!(p.dual().maximal_simplices(), oracle);
        assert_eq!(
            p.dual().maximal_simplices(),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(p.dual().minimal_nonfaces(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn product_vertex_counts() {
        for (dims, count) in [(vec![1, 1], 4), (vec![1, 1, 1, 1], 16), (vec![2, 2], 9), (vec![1, 2], 6)] {
            let p = SimplePolytope::product_of_simplices(&dims).unwrap();
            assert_eq!(p.vertex_count(), count, "dims {dims:?}");
        }
        let p = SimplePolytope::product_of_simplices(&[1, 2]).unwrap();
        assert_eq!((p.dim(), p.facet_count()), (3, 5));
    }

    #[test]
    fn four_cycle_nonfaces_by_brute_force() {
        let k = four_cycle();
        // brute force: all subsets that are non-faces and whose proper subsets are faces
        let mut brute = Vec::new();
        for s in 0u64..16 {
            if k.is_face(s) {
                continue;
            }
            if face_to_vec(s).iter().all(|&v| k.is_face(s & !(1 << v))) {
                brute.push(face_to_vec(s));
            }
        }
        brute.sort();
        assert_eq!(k.minimal_nonfaces(), brute);
        assert_eq!(k.minimal_nonfaces(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(k.maximal_simplices().len(), 4);
        assert_eq!(k.equivariant_cat_rzk(), 4);
    }

    #[test]
    fn stanley_reisner_generators_of_interval_times_triangle() {
        // Delta^1 x Delta^2: factor facet sets {F_1^1, F_0^1} = {0, 3}, {F_1^2, F_2^2, F_0^2} = {1, 2, 4}
        let p = SimplePolytope::product_of_simplices(&[1, 2]).unwrap();
        assert_eq!(p.dual().minimal_nonfaces(), vec![vec![0, 3], vec![1, 2, 4]]);
    }

    #[test]
    fn product_nonfaces_shortcut_agrees() {
        for dims in [vec![1], vec![3], vec![1, 2], vec![2, 1, 1], vec![1, 1, 1, 1], vec![2, 3]] {
            let p = SimplePolytope::product_of_simplices(&dims).unwrap();
            assert_eq!(p.minimal_nonfaces(), p.dual().minimal_nonfaces(), "{dims:?}");
        }
    }

    #[test]
    fn cube_dual() {
        let p = SimplePolytope::product_of_simplices(&[1, 1, 1]).unwrap();
        assert_eq!(p.dual().maximal_simplices().len(), 8);
        assert_eq!(p.dual().equivariant_cat_rzk(), 8);
        let relabel = [0, 3, 1, 4, 2, 5];
        let mut oracle: Vec<Vec<usize>> = cube_dual_by_incidence(3)
            .into_iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&f| relabel[f]).collect();
                t.sort();
                t
            })
            .collect();
        oracle.sort();
        assert_eq!(p.dual().maximal_simplices(), oracle);
    }

    #[test]
    fn simplex_duals() {
        for n in 1..=6 {
            let p = SimplePolytope::product_of_simplices(&[n]).unwrap();
            let max = p.dual().maximal_simplices();
            assert_eq!(max.len(), n + 1);
            assert!(max.iter().all(|s| s.len() == n));
            assert_eq!(p.dual().equivariant_cat_rzk(), n + 1);
        }
    }

    #[test]
    fn sphere_products() {
        let p = SimplePolytope::product_of_simplices(&[2, 3]).unwrap();
        assert_eq!(
            p.rz_product_spheres().unwrap(),
            SphereProduct { spheres: vec![2, 3], simply_connected: true }
        );
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        assert!(!p.rz_product_spheres().unwrap().simply_connected);
        let p = SimplePolytope::product_of_simplices(&[4]).unwrap();
        assert!(p.rz_product_spheres().unwrap().simply_connected);
        let general = SimplePolytope::from_dual(2, four_cycle()).unwrap();
        assert_eq!(general.rz_product_spheres(), Err(ComplexError::NotAProduct));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(SimplePolytope::product_of_simplices(&[]), Err(ComplexError::BadFactorDims));
        assert_eq!(SimplePolytope::product_of_simplices(&[2, 0]), Err(ComplexError::BadFactorDims));
        assert!(matches!(
            SimplicialComplex::new(3, &[vec![0, 1], vec![0, 1, 2]]),
            Err(ComplexError::NotAnAntichain(..))
        ));
        assert!(matches!(
            SimplicialComplex::new(3, &[vec![0, 1]]),
            Err(ComplexError::UnusedVertex(2))
        ));
        assert!(matches!(
            SimplicialComplex::new(2, &[vec![0, 5]]),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
        let k = SimplicialComplex::new(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(SimplePolytope::from_dual(2, k), Err(ComplexError::NotPure { .. })));
    }

    #[test]
    fn rebuild_from_maximal_simplices() {
        for dims in [vec![1, 2], vec![2, 2], vec![1, 1, 1]] {
            let p = SimplePolytope::product_of_simplices(&dims).unwrap();
            let k = p.dual();
            let rebuilt = SimplicialComplex::new(k.vertex_count(), &k.maximal_simplices()).unwrap();
            assert_eq!(&rebuilt, k);
        }
    }
}
