//! Groupoid gradings of structure algebras.
//!
//! Gradings are basis-aligned: every basis element carries a degree, so the
//! grading law and the decomposition of the unit into the homogeneous
//! identities `1_e` are exhaustively checkable.

use crate::algebra::{AlgebraError, MultTable, StructureAlgebra};
use crate::groupoid::Groupoid;
use crate::linalg::Subspace;
use crate::scalar::{one, unit_vec, zero_vec, Scalar};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading law fails: c_{{ {i}, {j} }}^{{ {k} }} is nonzero but the degrees do not match")]
    Grading { i: usize, j: usize, k: usize },
    #[error("the unit does not decompose into homogeneous identity components")]
    UnitDecomp,
    #[error("degree map is inconsistent: {0}")]
    BadDegrees(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl GradingError {
    pub fn code(&self) -> &'static str {
        match self {
            GradingError::Grading { .. } => "E_GRADING",
            GradingError::UnitDecomp => "E_UNIT_DECOMP",
            GradingError::BadDegrees(_) => "E_BAD_DEGREES",
            GradingError::Algebra(e) => e.code(),
        }
    }
}

/// A structure algebra graded by a groupoid, with every basis element
/// homogeneous of degree `deg[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub algebra: StructureAlgebra,
    pub groupoid: Groupoid,
    deg: Vec<usize>,
    /// `1_e` per object, in algebra coordinates.
    units: Vec<Vec<Scalar>>,
}

impl GradedAlgebra {
    /// Verify both grading invariants: products land in the composed degree
    /// (zero when non-composable), and the unit is a sum of components of
    /// identity degree that act as one-sided units on matching fibers.
    pub fn validate(
        algebra: StructureAlgebra,
        groupoid: Groupoid,
        deg: Vec<usize>,
    ) -> Result<GradedAlgebra, GradingError> {
        if deg.len() != algebra.dim() {
            return Err(GradingError::BadDegrees(
                "one degree per basis element is required".into(),
            ));
        }
        if deg.iter().any(|&g| g >= groupoid.n_morphisms()) {
            return Err(GradingError::BadDegrees("degree out of range".into()));
        }
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let expected = groupoid.compose(deg[i], deg[j]);
                let product = algebra.mul_basis_vec(i, j);
                for (k, c) in product.iter().enumerate() {
                    if !c.is_zero() && Some(deg[k]) != expected {
                        return Err(GradingError::Grading { i, j, k });
                    }
                }
            }
        }
        // unit supported on identity degrees only
        for (i, c) in algebra.unit().iter().enumerate() {
            if !c.is_zero() && !groupoid.is_identity(deg[i]) {
                return Err(GradingError::UnitDecomp);
            }
        }
        let units: Vec<Vec<Scalar>> = groupoid
            .objects()
            .map(|e| {
                let id = groupoid.identity_of(e);
                let mut v = zero_vec(algebra.dim());
                for (i, c) in algebra.unit().iter().enumerate() {
                    if deg[i] == id {
                        v[i] = c.clone();
                    }
                }
                v
            })
            .collect();
        // 1_{r(g)} a = a and a 1_{d(g)} = a for homogeneous a of degree g
        for i in 0..algebra.dim() {
            let basis = unit_vec(algebra.dim(), i);
            let left = algebra.mul(&units[groupoid.ran(deg[i])], &basis);
            let right = algebra.mul(&basis, &units[groupoid.dom(deg[i])]);
            if left != basis || right != basis {
                return Err(GradingError::UnitDecomp);
            }
        }
        Ok(GradedAlgebra {
            algebra,
            groupoid,
            deg,
            units,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn deg(&self, i: usize) -> usize {
        self.deg[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    /// Homogeneous identity `1_e`.
    pub fn homogeneous_unit(&self, e: usize) -> &[Scalar] {
        &self.units[e]
    }

    /// All `1_e`, indexed by object.
    pub fn homogeneous_units(&self) -> &[Vec<Scalar>] {
        &self.units
    }

    /// Basis indices of the homogeneous component `A_g`.
    pub fn component_indices(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.deg[i] == g).collect()
    }

    /// `A_g` as a subspace of the algebra.
    pub fn component(&self, g: usize) -> Subspace {
        Subspace::span(
            self.dim(),
            self.component_indices(g)
                .into_iter()
                .map(|i| unit_vec(self.dim(), i)),
        )
    }

    /// Homogeneous component of a vector.
    pub fn component_of_vec(&self, v: &[Scalar], g: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (i, c) in v.iter().enumerate() {
            if self.deg[i] == g {
                out[i] = c.clone();
            }
        }
        out
    }
}

/// The groupoid algebra `kG`: basis `b_g`, `b_g b_h = b_{gh}` on composable
/// pairs and zero otherwise, graded by `deg(b_g) = g`.
pub fn groupoid_algebra(groupoid: &Groupoid) -> GradedAlgebra {
    let n = groupoid.n_morphisms();
    let mut mult = MultTable::new();
    for g in groupoid.morphisms() {
        for h in groupoid.morphisms() {
            if let Some(gh) = groupoid.compose(g, h) {
                mult.insert((g, h), vec![(gh, one())]);
            }
        }
    }
    let mut unit = zero_vec(n);
    for e in groupoid.objects() {
        unit[groupoid.identity_of(e)] = one();
    }
    let algebra = StructureAlgebra::validate(n, mult, unit)
        .expect("groupoid composition is associative and unital");
    GradedAlgebra::validate(algebra, groupoid.clone(), groupoid.morphisms().collect())
        .expect("kG is graded by its own composition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit_algebra;
    use crate::groupoid::Groupoid;

    /// The 2x2 matrix algebra graded by the pair groupoid:
    /// deg E11 = id_e, deg E12 = g⁻¹, deg E21 = g, deg E22 = id_f.
    pub fn m2_graded() -> GradedAlgebra {
        let p2 = Groupoid::pair(2).unwrap();
        let m2 = matrix_unit_algebra(2);
        // morphism indices in pair(2): 0 = id_e, 1 = e->f, 2 = f->e, 3 = id_f
        GradedAlgebra::validate(m2, p2, vec![0, 2, 1, 3]).unwrap()
    }

    #[test]
    fn m2_fixture_is_graded() {
        let ga = m2_graded();
        assert_eq!(ga.component_indices(1), vec![2]); // A_g = span E21
        assert_eq!(ga.homogeneous_unit(0), &crate::scalar::unit_vec(4, 0)); // 1_e = E11
        assert_eq!(ga.homogeneous_unit(1), &crate::scalar::unit_vec(4, 3)); // 1_f = E22
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let p2 = Groupoid::pair(2).unwrap();
        let m2 = matrix_unit_algebra(2);
        // E21 declared of degree id_e: E21·E11 = E21 would need degree id_e·id_e
        let err = GradedAlgebra::validate(m2, p2, vec![0, 2, 0, 3]).unwrap_err();
        assert!(matches!(err, GradingError::Grading { .. }));
        assert_eq!(err.code(), "E_GRADING");
    }

    #[test]
    fn groupoid_algebra_fixtures() {
        let t = groupoid_algebra(&Groupoid::trivial());
        assert_eq!(t.dim(), 1);
        let p2 = Groupoid::pair(2).unwrap();
        let kg = groupoid_algebra(&p2);
        assert_eq!(kg.dim(), 4);
        // 1_e = b_{id_e}
        for e in p2.objects() {
            assert_eq!(
                kg.homogeneous_unit(e),
                &crate::scalar::unit_vec(4, p2.identity_of(e))
            );
        }
        let z2 = groupoid_algebra(&Groupoid::cyclic(2).unwrap());
        assert_eq!(z2.dim(), 2);
    }

    #[test]
    fn kg_of_pair2_is_isomorphic_to_matrix_units() {
        // relabeling b_{(a->b)} as E_{b+1,a+1} matches structure constants
        let p2 = Groupoid::pair(2).unwrap();
        let kg = groupoid_algebra(&p2);
        let m2 = matrix_unit_algebra(2);
        // pair(2) morphism a*2+b  (a->b)  maps to matrix unit E_{b,a} = b*2+a
        let relabel = |g: usize| (g % 2) * 2 + (g / 2);
        for i in 0..4 {
            for j in 0..4 {
                let kg_prod = kg.algebra.mul_basis_vec(i, j);
                let m2_prod = m2.mul_basis_vec(relabel(i), relabel(j));
                for k in 0..4 {
                    assert_eq!(kg_prod[k], m2_prod[relabel(k)], "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn product_span_matches_grading() {
        let ga = m2_graded();
        // A_g · A_{g⁻¹} = A_{id_f}
        let p = ga
            .algebra
            .product_span(&ga.component(1), &ga.component(2))
            .unwrap();
        assert_eq!(p, ga.component(3));
    }

    #[test]
    fn homogeneous_unit_laws_hold() {
        let ga = m2_graded();
        for i in 0..ga.dim() {
            let b = crate::scalar::unit_vec(ga.dim(), i);
            let g = ga.deg(i);
            let left = ga
                .algebra
                .mul(ga.homogeneous_unit(ga.groupoid.ran(g)), &b);
            let right = ga
                .algebra
                .mul(&b, ga.homogeneous_unit(ga.groupoid.dom(g)));
            assert_eq!(left, b);
            assert_eq!(right, b);
        }
    }
}
