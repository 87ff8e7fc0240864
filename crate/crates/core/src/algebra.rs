//! Finite-dimensional associative unital algebras over the rationals, given
//! by structure constants, plus modules over them and linear algebra maps.

use crate::linalg::{Mat, Subspace};
use crate::scalar::{zero_vec, Scalar};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({i}, {j}, {l})")]
    Assoc { i: usize, j: usize, l: usize },
    #[error("unit law fails on basis element {i}")]
    Unit { i: usize },
    #[error("module axiom fails on basis pair ({i}, {j})")]
    Module { i: usize, j: usize },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("malformed structure constants: {0}")]
    BadTables(String),
    #[error("map is not multiplicative at basis pair ({i}, {j})")]
    NotMultiplicative { i: usize, j: usize },
    #[error("map does not preserve the unit")]
    NotUnital,
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::Assoc { .. } => "E_ASSOC",
            AlgebraError::Unit { .. } => "E_UNIT",
            AlgebraError::Module { .. } => "E_MODULE",
            AlgebraError::DimMismatch(_) => "E_DIM_MISMATCH",
            AlgebraError::BadTables(_) => "E_BAD_TABLES",
            AlgebraError::NotMultiplicative { .. } => "E_NOT_MULTIPLICATIVE",
            AlgebraError::NotUnital => "E_NOT_UNITAL",
        }
    }
}

/// Sparse structure constants: `(i, j) -> Σ_k c_{ij}^k b_k`. Missing keys
/// are zero products.
pub type MultTable = BTreeMap<(usize, usize), Vec<(usize, Scalar)>>;

/// An associative unital algebra with a distinguished basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    mult: MultTable,
    unit: Vec<Scalar>,
}

impl StructureAlgebra {
    /// Validate associativity and the unit laws exhaustively.
    pub fn validate(dim: usize, mult: MultTable, unit: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if unit.len() != dim {
            return Err(AlgebraError::BadTables(
                "unit vector length must equal dim".into(),
            ));
        }
        for (&(i, j), terms) in &mult {
            if i >= dim || j >= dim || terms.iter().any(|&(k, _)| k >= dim) {
                return Err(AlgebraError::BadTables(format!(
                    "structure constant at ({i}, {j}) is out of range"
                )));
            }
        }
        let alg = StructureAlgebra { dim, mult, unit };
        for i in 0..dim {
            for j in 0..dim {
                let ij = alg.mul_basis_vec(i, j);
                for l in 0..dim {
                    let jl = alg.mul_basis_vec(j, l);
                    let left = alg.mul_vec_basis(&ij, l);
                    let right = alg.mul_basis_vec_right(i, &jl);
                    if left != right {
                        return Err(AlgebraError::Assoc { i, j, l });
                    }
                }
            }
        }
        for i in 0..dim {
            let e = crate::scalar::unit_vec(dim, i);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(AlgebraError::Unit { i });
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mult_table(&self) -> &MultTable {
        &self.mult
    }

    /// `b_i b_j` as a dense coefficient vector.
    pub fn mul_basis_vec(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        if let Some(terms) = self.mult.get(&(i, j)) {
            for (k, c) in terms {
                out[*k] += c;
            }
        }
        out
    }

    fn mul_vec_basis(&self, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (i, ci) in u.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            if let Some(terms) = self.mult.get(&(i, j)) {
                for (k, c) in terms {
                    out[*k] += ci * c;
                }
            }
        }
        out
    }

    fn mul_basis_vec_right(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (j, cj) in v.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            if let Some(terms) = self.mult.get(&(i, j)) {
                for (k, c) in terms {
                    out[*k] += cj * c;
                }
            }
        }
        out
    }

    /// Product of two coefficient vectors.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (i, ci) in u.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in v.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                if let Some(terms) = self.mult.get(&(i, j)) {
                    let f = ci * cj;
                    for (k, c) in terms {
                        out[*k] += &f * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `v`.
    pub fn left_mult_matrix(&self, v: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(v, &crate::scalar::unit_vec(self.dim, j));
            for i in 0..self.dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    /// Matrix of right multiplication by `v`.
    pub fn right_mult_matrix(&self, v: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(&crate::scalar::unit_vec(self.dim, j), v);
            for i in 0..self.dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    /// Span of `{uv : u in basis(U), v in basis(V)}`.
    pub fn product_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, AlgebraError> {
        if u.ambient() != self.dim || v.ambient() != self.dim {
            return Err(AlgebraError::DimMismatch(
                "product_span requires subspaces of the algebra's ambient space".into(),
            ));
        }
        let mut products = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                products.push(self.mul(a, b));
            }
        }
        Ok(Subspace::span(self.dim, products))
    }

    /// The one-dimensional algebra Q.
    pub fn scalars() -> StructureAlgebra {
        let mut mult = MultTable::new();
        mult.insert((0, 0), vec![(0, crate::scalar::one())]);
        StructureAlgebra::validate(1, mult, vec![crate::scalar::one()]).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional module given by one action matrix per algebra basis
/// element. For a left module `act[i]` represents `m -> b_i · m`; for a
/// right module `m -> m · b_i` (matrices always act on column vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    pub algebra: StructureAlgebra,
    pub dim: usize,
    pub act: Vec<Mat>,
    pub side: Side,
}

impl ModuleRep {
    pub fn validate(
        algebra: StructureAlgebra,
        act: Vec<Mat>,
        side: Side,
    ) -> Result<ModuleRep, AlgebraError> {
        if act.len() != algebra.dim() {
            return Err(AlgebraError::BadTables(
                "one action matrix per algebra basis element is required".into(),
            ));
        }
        let dim = act.first().map_or(0, Mat::n_rows);
        if act.iter().any(|m| m.n_rows() != dim || m.n_cols() != dim) {
            return Err(AlgebraError::BadTables(
                "action matrices must be square of equal size".into(),
            ));
        }
        let rep = ModuleRep {
            algebra,
            dim,
            act,
            side,
        };
        // unit acts as the identity
        let mut unit_act = Mat::zeros(dim, dim);
        for (i, c) in rep.algebra.unit().iter().enumerate() {
            if !c.is_zero() {
                unit_act = unit_act.add(&scale(&rep.act[i], c));
            }
        }
        if unit_act != Mat::identity(dim) {
            return Err(AlgebraError::Module { i: 0, j: 0 });
        }
        // multiplicativity, matching the side
        for i in 0..rep.algebra.dim() {
            for j in 0..rep.algebra.dim() {
                let prod = rep.act_vec(&rep.algebra.mul_basis_vec(i, j));
                let comp = match side {
                    Side::Left => rep.act[i].mul(&rep.act[j]),
                    Side::Right => rep.act[j].mul(&rep.act[i]),
                };
                if prod != comp {
                    return Err(AlgebraError::Module { i, j });
                }
            }
        }
        Ok(rep)
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act_vec(&self, v: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&scale(&self.act[i], c));
            }
        }
        out
    }

    /// The regular left module of an algebra on itself.
    pub fn regular_left(algebra: &StructureAlgebra) -> ModuleRep {
        let act = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(&crate::scalar::unit_vec(algebra.dim(), i)))
            .collect();
        ModuleRep::validate(algebra.clone(), act, Side::Left)
            .expect("the regular left module is a module")
    }

    /// The regular right module of an algebra on itself.
    pub fn regular_right(algebra: &StructureAlgebra) -> ModuleRep {
        let act = (0..algebra.dim())
            .map(|i| algebra.right_mult_matrix(&crate::scalar::unit_vec(algebra.dim(), i)))
            .collect();
        ModuleRep::validate(algebra.clone(), act, Side::Right)
            .expect("the regular right module is a module")
    }
}

fn scale(m: &Mat, c: &Scalar) -> Mat {
    let mut out = Mat::zeros(m.n_rows(), m.n_cols());
    for i in 0..m.n_rows() {
        for j in 0..m.n_cols() {
            out.set(i, j, m.get(i, j) * c);
        }
    }
    out
}

/// A linear map between based algebras, stored as a
/// `target_dim x source_dim` matrix on basis columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: Mat,
}

impl AlgebraMap {
    pub fn new(matrix: Mat) -> AlgebraMap {
        AlgebraMap { matrix }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.n_cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `phi(b_i b_j) = phi(b_i) phi(b_j)` on every basis pair.
    pub fn check_multiplicative(
        &self,
        source: &StructureAlgebra,
        target: &StructureAlgebra,
    ) -> Result<(), AlgebraError> {
        if self.source_dim() != source.dim() || self.target_dim() != target.dim() {
            return Err(AlgebraError::DimMismatch(
                "algebra map dimensions do not match the algebras".into(),
            ));
        }
        for i in 0..source.dim() {
            let fi = self.matrix.col(i);
            for j in 0..source.dim() {
                let fj = self.matrix.col(j);
                let lhs = self.apply(&source.mul_basis_vec(i, j));
                let rhs = target.mul(&fi, &fj);
                if lhs != rhs {
                    return Err(AlgebraError::NotMultiplicative { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn check_unital(
        &self,
        source: &StructureAlgebra,
        target: &StructureAlgebra,
    ) -> Result<(), AlgebraError> {
        if self.apply(source.unit()) != target.unit() {
            return Err(AlgebraError::NotUnital);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap) -> AlgebraMap {
        AlgebraMap::new(other.matrix.mul(&self.matrix))
    }

    /// The image as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::span(
            self.target_dim(),
            (0..self.source_dim()).map(|j| self.matrix.col(j)),
        )
    }
}

/// Matrix-unit algebra `M_n(Q)`, basis `E_{ij}` ordered row-major
/// (`E_11, E_12, ..., E_nn`), `E_ij E_kl = δ_jk E_il`.
pub fn matrix_unit_algebra(n: usize) -> StructureAlgebra {
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut mult = MultTable::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        mult.insert(
                            (idx(i, j), idx(k, l)),
                            vec![(idx(i, l), crate::scalar::one())],
                        );
                    }
                }
            }
        }
    }
    let mut unit = zero_vec(dim);
    for i in 0..n {
        unit[idx(i, i)] = crate::scalar::one();
    }
    StructureAlgebra::validate(dim, mult, unit).expect("matrix units are associative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, one, unit_vec};

    #[test]
    fn one_dimensional_algebra() {
        let a = StructureAlgebra::scalars();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.mul(&[int(2)], &[int(3)]), vec![int(6)]);
    }

    #[test]
    fn zero_dimensional_algebra() {
        let a = StructureAlgebra::validate(0, MultTable::new(), vec![]).unwrap();
        assert_eq!(a.dim(), 0);
    }

    #[test]
    fn matrix_units_validate() {
        let m2 = matrix_unit_algebra(2);
        assert_eq!(m2.dim(), 4);
        // E21 * E12 = E22
        let p = m2.mul(&unit_vec(4, 2), &unit_vec(4, 1));
        assert_eq!(p, unit_vec(4, 3));
    }

    #[test]
    fn corrupted_constant_fails_associativity() {
        let m2 = matrix_unit_algebra(2);
        let mut mult = m2.mult_table().clone();
        // corrupt E21 * E12: make it E11 instead of E22
        mult.insert((2, 1), vec![(0, one())]);
        let err = StructureAlgebra::validate(4, mult, m2.unit().to_vec()).unwrap_err();
        assert!(matches!(err, AlgebraError::Assoc { .. }));
        assert_eq!(err.code(), "E_ASSOC");
    }

    #[test]
    fn regular_modules_validate() {
        let m2 = matrix_unit_algebra(2);
        let left = ModuleRep::regular_left(&m2);
        assert_eq!(left.dim, 4);
        let right = ModuleRep::regular_right(&m2);
        assert_eq!(right.dim, 4);
        // zero module
        let z = ModuleRep::validate(m2, vec![Mat::zeros(0, 0); 4], Side::Left).unwrap();
        assert_eq!(z.dim, 0);
    }

    #[test]
    fn product_span_on_matrix_units() {
        let m2 = matrix_unit_algebra(2);
        let u = Subspace::span(4, vec![unit_vec(4, 2)]); // E21
        let v = Subspace::span(4, vec![unit_vec(4, 1)]); // E12
        let p = m2.product_span(&u, &v).unwrap();
        assert_eq!(p, Subspace::span(4, vec![unit_vec(4, 3)])); // E22
        let z = Subspace::zero(4);
        assert_eq!(m2.product_span(&u, &z).unwrap(), Subspace::zero(4));
    }

    #[test]
    fn algebra_map_identity_is_multiplicative() {
        let m2 = matrix_unit_algebra(2);
        let id = AlgebraMap::new(Mat::identity(4));
        id.check_multiplicative(&m2, &m2).unwrap();
        id.check_unital(&m2, &m2).unwrap();
        assert!(id.is_bijective());
    }
}
