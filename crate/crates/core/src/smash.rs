//! The smash product `A # X` of a graded algebra with a split G-set, the
//! embedding `eta : A -> A # X`, the induced A-bimodule structure, and the
//! algebra morphism induced by a morphism of G-sets.

use crate::algebra::{AlgebraError, AlgebraMap, ModuleRep, MultTable, Side, StructureAlgebra};
use crate::graded::GradedAlgebra;
use crate::gset::{GSet, GSetMorphism, MorphismViolation};
use crate::linalg::Mat;
use crate::scalar::{unit_vec, zero_vec, Scalar};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmashError {
    #[error("smash products require a split action")]
    NotSplit,
    #[error("the action and the grading live over different groupoids")]
    GroupoidMismatch,
    #[error("map of G-sets fails validation: {0:?}")]
    NotMorphism(MorphismViolation),
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl SmashError {
    pub fn code(&self) -> &'static str {
        match self {
            SmashError::NotSplit => "E_NOT_SPLIT",
            SmashError::GroupoidMismatch => "E_GROUPOID_MISMATCH",
            SmashError::NotMorphism(_) => "E_NOT_MORPHISM",
            SmashError::Internal(_) => "E_INTERNAL",
            SmashError::Algebra(e) => e.code(),
        }
    }
}

/// `A # X`: basis symbols `a_i δ_x` labelled `(i, x)` with
/// `x ∈ X_{d(deg b_i)}`, ordered lexicographically.
#[derive(Debug, Clone)]
pub struct SmashAlgebra {
    pub algebra: StructureAlgebra,
    /// basis index -> (A-basis index, carrier point)
    pub labels: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    pub graded: GradedAlgebra,
    pub action: GSet,
}

impl SmashAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Index of the basis label `(a-basis, point)`.
    pub fn label_index(&self, i: usize, x: usize) -> Option<usize> {
        self.index.get(&(i, x)).copied()
    }

    /// `1_e δ_x` as a vector of the smash algebra.
    pub fn unit_delta(&self, e: usize, x: usize) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        for (i, c) in self.graded.homogeneous_unit(e).iter().enumerate() {
            if !c.is_zero() {
                if let Some(p) = self.label_index(i, x) {
                    v[p] = c.clone();
                }
            }
        }
        v
    }
}

/// Build `A # X` and re-verify associativity and the unit exhaustively.
pub fn smash_product(ga: &GradedAlgebra, action: &GSet) -> Result<SmashAlgebra, SmashError> {
    if action.groupoid() != &ga.groupoid {
        return Err(SmashError::GroupoidMismatch);
    }
    if !action.is_split() {
        return Err(SmashError::NotSplit);
    }
    let groupoid = &ga.groupoid;
    let mut labels = Vec::new();
    for i in 0..ga.dim() {
        let d = groupoid.dom(ga.deg(i));
        for &x in action.fiber(d) {
            labels.push((i, x));
        }
    }
    let index: BTreeMap<(usize, usize), usize> = labels
        .iter()
        .enumerate()
        .map(|(p, &l)| (l, p))
        .collect();
    let dim = labels.len();

    // (a_g δ_x)(b_h δ_y) = a_g b_h δ_y if d(g) = r(h) and alpha_h(y) = x
    let mut mult = MultTable::new();
    for (p, &(i, x)) in labels.iter().enumerate() {
        let g = ga.deg(i);
        for (q, &(j, y)) in labels.iter().enumerate() {
            let h = ga.deg(j);
            if groupoid.compose(g, h).is_none() || action.act(h, y) != Some(x) {
                continue;
            }
            let prod = ga.algebra.mul_basis_vec(i, j);
            let terms: Vec<(usize, Scalar)> = prod
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let pk = index
                        .get(&(k, y))
                        .copied()
                        .expect("graded product keeps y in the domain fiber");
                    (pk, c.clone())
                })
                .collect();
            if !terms.is_empty() {
                mult.insert((p, q), terms);
            }
        }
    }

    // 1 = Σ_e Σ_{x ∈ X_e} 1_e δ_x
    let mut unit = zero_vec(dim);
    for e in groupoid.objects() {
        for &x in action.fiber(e) {
            for (i, c) in ga.homogeneous_unit(e).iter().enumerate() {
                if !c.is_zero() {
                    let p = index[&(i, x)];
                    unit[p] = c.clone();
                }
            }
        }
    }

    let algebra = StructureAlgebra::validate(dim, mult, unit)?;
    Ok(SmashAlgebra {
        algebra,
        labels,
        index,
        graded: ga.clone(),
        action: action.clone(),
    })
}

/// `eta(a_g) = Σ_{x ∈ X_{d(g)}} a_g δ_x`, verified multiplicative, unital
/// and injective.
pub fn eta_embedding(ga: &GradedAlgebra, smash: &SmashAlgebra) -> Result<AlgebraMap, SmashError> {
    let mut m = Mat::zeros(smash.dim(), ga.dim());
    for i in 0..ga.dim() {
        let d = ga.groupoid.dom(ga.deg(i));
        for &x in smash.action.fiber(d) {
            let p = smash
                .label_index(i, x)
                .ok_or_else(|| SmashError::Internal("eta label out of range".into()))?;
            m.set(p, i, crate::scalar::one());
        }
    }
    let map = AlgebraMap::new(m);
    map.check_multiplicative(&ga.algebra, &smash.algebra)?;
    map.check_unital(&ga.algebra, &smash.algebra)?;
    if !map.is_injective() {
        return Err(SmashError::Internal("eta has a nonzero kernel".into()));
    }
    Ok(map)
}

/// The A-bimodule structure of `A # X` through `eta`, with both identities
/// of the defining display checked on all basis data.
#[derive(Debug, Clone)]
pub struct BimoduleActions {
    /// left action matrices of the A-basis on the smash algebra
    pub left: ModuleRep,
    /// right action matrices
    pub right: ModuleRep,
}

pub fn bimodule_actions(
    ga: &GradedAlgebra,
    smash: &SmashAlgebra,
) -> Result<BimoduleActions, SmashError> {
    let eta = eta_embedding(ga, smash)?;
    let left_mats: Vec<Mat> = (0..ga.dim())
        .map(|i| smash.algebra.left_mult_matrix(&eta.matrix.col(i)))
        .collect();
    let right_mats: Vec<Mat> = (0..ga.dim())
        .map(|i| smash.algebra.right_mult_matrix(&eta.matrix.col(i)))
        .collect();
    let left = ModuleRep::validate(ga.algebra.clone(), left_mats, Side::Left)?;
    let right = ModuleRep::validate(ga.algebra.clone(), right_mats, Side::Right)?;

    // (a·m)·b = a·(m·b)
    for i in 0..ga.dim() {
        for j in 0..ga.dim() {
            if left.act[i].mul(&right.act[j]) != right.act[j].mul(&left.act[i]) {
                return Err(SmashError::Internal(format!(
                    "bimodule actions do not commute at ({i}, {j})"
                )));
            }
        }
    }

    // a_g δ_x = eta(a_g) (1_{d(g)} δ_x)
    for (p, &(i, x)) in smash.labels.iter().enumerate() {
        let d = ga.groupoid.dom(ga.deg(i));
        let got = left.act[i].apply(&smash.unit_delta(d, x));
        if got != unit_vec(smash.dim(), p) {
            return Err(SmashError::Internal(format!(
                "eta identity fails at label ({i}, {x})"
            )));
        }
    }
    // a_g δ_{alpha_{g^{-1}}(x)} = (1_{r(g)} δ_x) eta(a_g) for x ∈ X_g
    for i in 0..ga.dim() {
        let g = ga.deg(i);
        let r = ga.groupoid.ran(g);
        let gi = ga.groupoid.inv(g);
        for &x in smash.action.fiber(r) {
            let pre = smash
                .action
                .act(gi, x)
                .ok_or_else(|| SmashError::Internal("alpha_{g^-1} undefined on X_g".into()))?;
            let p = smash
                .label_index(i, pre)
                .ok_or_else(|| SmashError::Internal("right eta identity label missing".into()))?;
            let got = right.act[i].apply(&smash.unit_delta(r, x));
            if got != unit_vec(smash.dim(), p) {
                return Err(SmashError::Internal(format!(
                    "right eta identity fails at ({i}, {x})"
                )));
            }
        }
    }
    Ok(BimoduleActions { left, right })
}

/// The algebra morphism `phi* : A#Z -> A#X` induced by a morphism of
/// G-sets `phi : X -> Z`, with the transfer of injectivity/surjectivity
/// verified by rank.
#[derive(Debug, Clone)]
pub struct InducedMorphism {
    /// `A # Z`
    pub from: SmashAlgebra,
    /// `A # X`
    pub to: SmashAlgebra,
    pub map: AlgebraMap,
    pub phi_mono: bool,
    pub phi_epi: bool,
    pub map_injective: bool,
    pub map_surjective: bool,
}

pub fn induced_morphism(
    phi: &GSetMorphism,
    ga: &GradedAlgebra,
) -> Result<InducedMorphism, SmashError> {
    let to = smash_product(ga, &phi.source)?;
    let from = smash_product(ga, &phi.target)?;
    // phi*(a_g δ_z) = Σ_{x ∈ I_{g,z}} a_g δ_x, zero column when I is empty
    let mut m = Mat::zeros(to.dim(), from.dim());
    for (q, &(i, z)) in from.labels.iter().enumerate() {
        let d = ga.groupoid.dom(ga.deg(i));
        for &x in phi.source.fiber(d) {
            if phi.map[x] == z {
                let p = to
                    .label_index(i, x)
                    .ok_or_else(|| SmashError::Internal("induced label missing".into()))?;
                m.set(p, q, crate::scalar::one());
            }
        }
    }
    let map = AlgebraMap::new(m);
    map.check_multiplicative(&from.algebra, &to.algebra)?;
    let map_injective = map.is_injective();
    let map_surjective = map.is_surjective();
    if phi.mono && !map_surjective {
        return Err(SmashError::Internal(
            "injective phi must induce a surjective phi*".into(),
        ));
    }
    if phi.epi && !map_injective {
        return Err(SmashError::Internal(
            "surjective phi must induce an injective phi*".into(),
        ));
    }
    Ok(InducedMorphism {
        from,
        to,
        map,
        phi_mono: phi.mono,
        phi_epi: phi.epi,
        map_injective,
        map_surjective,
    })
}

/// Convenience wrapper validating a raw map of carriers first.
pub fn induced_morphism_raw(
    source: &GSet,
    target: &GSet,
    map: Vec<usize>,
    ga: &GradedAlgebra,
) -> Result<InducedMorphism, SmashError> {
    let phi = GSetMorphism::check(source.clone(), target.clone(), map)
        .map_err(SmashError::NotMorphism)?;
    induced_morphism(&phi, ga)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit_algebra;
    use crate::groupoid::Groupoid;
    use crate::gset::{ActionTables, GSet};

    fn m2_graded() -> GradedAlgebra {
        let p2 = Groupoid::pair(2).unwrap();
        GradedAlgebra::validate(matrix_unit_algebra(2), p2, vec![0, 2, 1, 3]).unwrap()
    }

    fn xef(p2: &Groupoid) -> GSet {
        GSet::validate(
            p2.clone(),
            ActionTables {
                n_points: 2,
                fibers: vec![vec![0], vec![1]],
                maps: vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 0)], vec![(1, 1)]],
            },
        )
        .unwrap()
    }

    #[test]
    fn m2_smash_dimension_and_law() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let s = smash_product(&ga, &x).unwrap();
        assert_eq!(s.dim(), 4);
        // (E21 δ_x)(E12 δ_y) = E22 δ_y
        let e21x = s.label_index(2, 0).unwrap();
        let e12y = s.label_index(1, 1).unwrap();
        let prod = s.algebra.mul(
            &unit_vec(s.dim(), e21x),
            &unit_vec(s.dim(), e12y),
        );
        let e22y = s.label_index(3, 1).unwrap();
        assert_eq!(prod, unit_vec(s.dim(), e22y));
        // non-composable degrees: (E21 δ_x)(E21 δ_x) = 0
        let sq = s.algebra.mul(&unit_vec(s.dim(), e21x), &unit_vec(s.dim(), e21x));
        assert!(crate::scalar::is_zero_vec(&sq));
    }

    #[test]
    fn singleton_fibers_reproduce_the_algebra() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let s = smash_product(&ga, &x).unwrap();
        // labels are (i, x_{d(deg i)}) in order, so structure constants match A
        for i in 0..4 {
            for j in 0..4 {
                let a_prod = ga.algebra.mul_basis_vec(i, j);
                let s_prod = s.algebra.mul_basis_vec(
                    s.label_index(i, s.labels[i].1).unwrap(),
                    s.label_index(j, s.labels[j].1).unwrap(),
                );
                // compare coefficients; product of labels (i,·)(j,·) may be 0
                // when the action mismatch kills it, otherwise equals a_prod.
                let nonzero = s_prod.iter().any(|c| !c.is_zero());
                if nonzero {
                    for k in 0..4 {
                        let p = s.label_index(k, s.labels[k].1).unwrap();
                        assert_eq!(s_prod[p], a_prod[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_is_sum_of_orthogonal_idempotents() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let s = smash_product(&ga, &x).unwrap();
        let mut total = zero_vec(s.dim());
        let mut idempotents = Vec::new();
        for e in ga.groupoid.objects() {
            for &pt in x.fiber(e) {
                idempotents.push(s.unit_delta(e, pt));
            }
        }
        for u in &idempotents {
            total = crate::scalar::add_vec(&total, u);
            assert_eq!(&s.algebra.mul(u, u), u);
        }
        for (a, u) in idempotents.iter().enumerate() {
            for (b, v) in idempotents.iter().enumerate() {
                if a != b {
                    assert!(crate::scalar::is_zero_vec(&s.algebra.mul(u, v)));
                }
            }
        }
        assert_eq!(total.as_slice(), s.algebra.unit());
    }

    #[test]
    fn eta_is_injective_and_multiplicative() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let s = smash_product(&ga, &x).unwrap();
        let eta = eta_embedding(&ga, &s).unwrap();
        assert_eq!(eta.rank(), 4);
        // eta(E21) = E21 δ_x
        let img = eta.apply(&unit_vec(4, 2));
        assert_eq!(img, unit_vec(4, s.label_index(2, 0).unwrap()));
    }

    #[test]
    fn bimodule_structure_checks() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let s = smash_product(&ga, &x).unwrap();
        let bimod = bimodule_actions(&ga, &s).unwrap();
        assert_eq!(bimod.left.dim, s.dim());
        assert_eq!(bimod.right.dim, s.dim());
    }

    #[test]
    fn non_split_action_is_rejected() {
        let p2 = Groupoid::pair(2).unwrap();
        let ga = m2_graded();
        // both fibers equal {0}: overlapping, not a partition of {0,1}
        let action = GSet::validate(
            p2,
            ActionTables {
                n_points: 2,
                fibers: vec![vec![0], vec![0]],
                maps: vec![vec![(0, 0)], vec![(0, 0)], vec![(0, 0)], vec![(0, 0)]],
            },
        )
        .unwrap();
        assert!(!action.is_split());
        assert!(matches!(
            smash_product(&ga, &action),
            Err(SmashError::NotSplit)
        ));
    }

    #[test]
    fn induced_by_identity_is_identity() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let phi = GSetMorphism::identity(&x);
        let ind = induced_morphism(&phi, &ga).unwrap();
        assert_eq!(ind.map.matrix, Mat::identity(4));
        assert!(ind.map_injective && ind.map_surjective);
    }
}
