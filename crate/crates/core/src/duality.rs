//! Endomorphism algebras of right modules, the canonical map from a skew
//! groupoid ring into them, and the full duality verification pipeline with
//! its corollaries.

use crate::algebra::{AlgebraError, AlgebraMap, ModuleRep, MultTable, Side, StructureAlgebra};
use crate::biset::{partial_bijection_groupoid, translation_biset, BiSet, BisetError};
use crate::graded::GradedAlgebra;
use crate::groupoid::{right_cosets, Groupoid, GroupoidError, Subgroupoid};
use crate::gset::{ActionError, GSet};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{unit_vec, zero_vec, Scalar};
use crate::skew::{
    galois_check, gamma_action, invariant_subalgebra, skew_groupoid_ring, AlgebraAction,
    SkewError, SkewRing,
};
use crate::smash::{smash_product, SmashError};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("image of skew basis element ({k}, {j}) is not an endomorphism of the module")]
    NotEndo { k: usize, j: usize },
    #[error("the action is not transitive")]
    NotTransitive,
    #[error("derived multiplication fails to match the smash product: {0}")]
    NotIso(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Smash(#[from] SmashError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl DualityError {
    pub fn code(&self) -> &'static str {
        match self {
            DualityError::NotEndo { .. } => "E_NOT_ENDO",
            DualityError::NotTransitive => "E_NOT_TRANSITIVE",
            DualityError::NotIso(_) => "E_NOT_ISO",
            DualityError::Internal(_) => "E_INTERNAL",
            DualityError::Skew(e) => e.code(),
            DualityError::Smash(e) => e.code(),
            DualityError::Algebra(e) => e.code(),
            DualityError::Action(e) => e.code(),
            DualityError::Biset(e) => e.code(),
            DualityError::Groupoid(e) => e.code(),
        }
    }
}

/// The endomorphism algebra of a right module: the commutant of the action
/// matrices, with composition `(S T)(m) = S(T(m))` as multiplication.
pub struct EndomorphismAlgebra {
    pub algebra: StructureAlgebra,
    /// operator matrices, one per basis element of the algebra
    pub basis: Vec<Mat>,
    /// flattened operators as a subspace of `Q^(m*m)`, for coordinates
    pub flat: Subspace,
}

pub fn endomorphism_algebra(module: &ModuleRep) -> Result<EndomorphismAlgebra, AlgebraError> {
    if module.side != Side::Right {
        return Err(AlgebraError::BadTables(
            "endomorphism_algebra expects a right module".into(),
        ));
    }
    let m = module.dim;
    // solve T R_b = R_b T for all action matrices
    let mut rows = Vec::new();
    for r in &module.act {
        for i in 0..m {
            for j in 0..m {
                // (T R - R T)_{ij} = Σ_k T_{ik} R_{kj} - R_{ik} T_{kj}
                let mut row = zero_vec(m * m);
                for k in 0..m {
                    row[i * m + k] += r.get(k, j);
                    row[k * m + j] -= r.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Subspace::full(m * m)
    } else {
        Subspace::span(m * m, Mat::from_rows(rows).kernel())
    };
    let basis: Vec<Mat> = kernel
        .basis()
        .iter()
        .map(|flat| unflatten(flat, m))
        .collect();
    let dim = basis.len();

    let mut mult = MultTable::new();
    for (i, s) in basis.iter().enumerate() {
        for (j, t) in basis.iter().enumerate() {
            let prod = s.mul(t);
            let coords = kernel
                .coords(&flatten(&prod))
                .ok_or(AlgebraError::Module { i, j })?;
            let terms: Vec<(usize, Scalar)> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            if !terms.is_empty() {
                mult.insert((i, j), terms);
            }
        }
    }
    let unit = kernel
        .coords(&flatten(&Mat::identity(m)))
        .ok_or(AlgebraError::Unit { i: 0 })?;
    let algebra = StructureAlgebra::validate(dim, mult, unit)?;
    Ok(EndomorphismAlgebra {
        algebra,
        basis,
        flat: kernel,
    })
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.n_rows() * m.n_cols());
    for i in 0..m.n_rows() {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

fn unflatten(v: &[Scalar], m: usize) -> Mat {
    let mut out = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, v[i * m + j].clone());
        }
    }
    out
}

/// The canonical map `x δ_k -> (a -> x · γ_k(a · 1_{k⁻¹}))` from the skew
/// ring into the endomorphism algebra of the module of the invariants.
pub struct CanonicalMap {
    /// image operators per skew basis element
    pub operators: Vec<Mat>,
    /// the map in the endomorphism algebra's basis coordinates
    pub map: AlgebraMap,
    pub multiplicative: bool,
    pub unital: bool,
    pub bijective: bool,
}

pub fn canonical_galois_map(
    act: &AlgebraAction,
    skew: &SkewRing,
    endo: &EndomorphismAlgebra,
) -> Result<CanonicalMap, DualityError> {
    let n = act.algebra.dim();
    let mut operators = Vec::with_capacity(skew.dim());
    let mut coord_cols: Vec<Vec<Scalar>> = Vec::with_capacity(skew.dim());
    for &(k, j) in &skew.labels {
        let ideal = act.ideal_of_morphism(k);
        let x = ideal.from_coords(&unit_vec(ideal.dim(), j));
        let u_dom = act
            .ideal_unit(act.groupoid.dom(k))
            .ok_or_else(|| DualityError::Internal("missing ideal unit".into()))?
            .clone();
        let mut op = Mat::zeros(n, n);
        for c in 0..n {
            let a = unit_vec(n, c);
            let inner = act.apply_iso(k, &act.algebra.mul(&a, &u_dom))?;
            let col = act.algebra.mul(&x, &inner);
            for r in 0..n {
                op.set(r, c, col[r].clone());
            }
        }
        let coords = endo
            .flat
            .coords(&flatten(&op))
            .ok_or(DualityError::NotEndo { k, j })?;
        operators.push(op);
        coord_cols.push(coords);
    }
    let mut matrix = Mat::zeros(endo.algebra.dim(), skew.dim());
    for (col, coords) in coord_cols.iter().enumerate() {
        for (row, c) in coords.iter().enumerate() {
            matrix.set(row, col, c.clone());
        }
    }
    let map = AlgebraMap::new(matrix);
    let multiplicative = map
        .check_multiplicative(skew.algebra(), &endo.algebra)
        .is_ok();
    let unital = map.check_unital(skew.algebra(), &endo.algebra).is_ok();
    let bijective = map.is_bijective();
    Ok(CanonicalMap {
        operators,
        map,
        multiplicative,
        unital,
        bijective,
    })
}

/// Outcome of the full duality verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub fully_faithful: bool,
    pub galois_ok: bool,
    pub dim_smash: usize,
    pub dim_skew: usize,
    pub dim_end: usize,
    pub dim_invariants: usize,
    pub map_multiplicative: bool,
    pub map_bijective: bool,
    pub map_ok: bool,
    pub details: Vec<String>,
}

/// Run the complete pipeline on a split biset: build `gamma`, the skew
/// ring, the invariants, the endomorphism algebra of `A#X` as a right
/// module over them, evaluate the `{u_e, u_e}` Galois system, and check
/// that the canonical map is a bijective algebra homomorphism.
pub fn verify_duality(biset: &BiSet, ga: &GradedAlgebra) -> Result<DualityReport, DualityError> {
    let mut details = Vec::new();
    let fully_faithful = match biset.k_action.fully_faithful_witness() {
        None => true,
        Some(l) => {
            details.push(format!("K-morphism {l} fixes a point but is not an identity"));
            false
        }
    };
    let gamma = gamma_action(biset, ga)?;
    let skew = skew_groupoid_ring(&gamma.action)?;
    let (inv_subspace, inv_algebra) = invariant_subalgebra(&gamma.action)?;

    // The idempotent Galois system {(1_e δ_x, 1_e δ_x)}: summing u_e over
    // the fiber and pairing (u_e, u_e) picks up cross terms
    // (1_e δ_{β_k(x)}) (1_e δ_{β_k(x)}) that survive, so the system must be
    // evaluated pair-per-point, which is what the defining computation of
    // the duality theorem sums.
    let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = ga
        .groupoid
        .objects()
        .flat_map(|e| {
            gamma.smash.action.fiber(e).iter().map(move |&x| (e, x)).collect::<Vec<_>>()
        })
        .map(|(e, x)| {
            let u = gamma.smash.unit_delta(e, x);
            (u.clone(), u)
        })
        .collect();
    let galois_ok = galois_check(&gamma.action, &pairs)?;
    if !galois_ok {
        details.push("the idempotent system {1_e δ_x} is not a Galois coordinate system".into());
    }

    // A#X as a right module over its invariants
    let act_mats: Vec<Mat> = inv_subspace
        .basis()
        .iter()
        .map(|b| gamma.smash.algebra.right_mult_matrix(b))
        .collect();
    let module = ModuleRep::validate(inv_algebra, act_mats, Side::Right)?;
    let endo = endomorphism_algebra(&module)?;
    let canonical = canonical_galois_map(&gamma.action, &skew, &endo)?;
    if !canonical.multiplicative {
        details.push("canonical map is not multiplicative".into());
    }
    if !canonical.bijective {
        details.push(format!(
            "canonical map has rank {} between dimensions {} and {}",
            canonical.map.rank(),
            skew.dim(),
            endo.algebra.dim()
        ));
    }
    let map_ok = canonical.multiplicative && canonical.unital && canonical.bijective;
    Ok(DualityReport {
        fully_faithful,
        galois_ok,
        dim_smash: gamma.smash.dim(),
        dim_skew: skew.dim(),
        dim_end: endo.algebra.dim(),
        dim_invariants: inv_subspace.dim(),
        map_multiplicative: canonical.multiplicative,
        map_bijective: canonical.bijective,
        map_ok,
        details,
    })
}

/// Duality for the translation biset of a wide subgroupoid, with the
/// identification of the K-orbits and the right cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDualityReport {
    /// orbit blocks of the right-translation action map onto the coset
    /// blocks under inversion
    pub cosets_match_orbits: bool,
    pub n_cosets: usize,
    pub duality: DualityReport,
}

pub fn coset_duality(
    parent: &Groupoid,
    sub: &Subgroupoid,
    ga: &GradedAlgebra,
) -> Result<CosetDualityReport, DualityError> {
    let (biset, _) = translation_biset(parent, sub)?;
    let (orbit_blocks, _) = biset.k_action.orbit_partition()?;
    let cosets = right_cosets(parent, sub)?;
    // o(x) = xH and the coset class of x⁻¹ is H x⁻¹; inversion maps one
    // partition onto the other.
    let mut inverted: Vec<Vec<usize>> = orbit_blocks
        .iter()
        .map(|block| {
            let mut b: Vec<usize> = block.iter().map(|&g| parent.inv(g)).collect();
            b.sort_unstable();
            b
        })
        .collect();
    inverted.sort();
    let mut coset_blocks: Vec<Vec<usize>> = cosets.blocks().to_vec();
    for b in &mut coset_blocks {
        b.sort_unstable();
    }
    coset_blocks.sort();
    let cosets_match_orbits = inverted == coset_blocks;
    let duality = verify_duality(&biset, ga)?;
    Ok(CosetDualityReport {
        cosets_match_orbits,
        n_cosets: cosets.blocks().len(),
        duality,
    })
}

/// Duality for the tautological action of the partial-bijection groupoid
/// `I_G(X)` on a transitive split G-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgDualityReport {
    pub ig_objects: usize,
    pub ig_morphisms: usize,
    pub duality: DualityReport,
}

pub fn partial_bijection_duality(
    action: &GSet,
    ga: &GradedAlgebra,
    max_points: usize,
) -> Result<IgDualityReport, DualityError> {
    if !action.is_transitive()? {
        return Err(DualityError::NotTransitive);
    }
    let (ig, tautological, _) = partial_bijection_groupoid(action, max_points)?;
    let biset = BiSet::validate(action.clone(), tautological)?;
    if !biset.k_action.is_fully_faithful() {
        return Err(DualityError::Internal(
            "tautological action of I_G(X) on a transitive G-set must be fully faithful".into(),
        ));
    }
    let duality = verify_duality(&biset, ga)?;
    Ok(IgDualityReport {
        ig_objects: ig.n_objects(),
        ig_morphisms: ig.n_morphisms(),
        duality,
    })
}

/// The concrete weak-Hopf smash `A # kG*` with its comparison isomorphism
/// `psi` onto `A # X` for `X = {v_g}`, and the duality report for the
/// groupoid acting on it.
pub struct WeakHopfReport {
    pub smash: StructureAlgebra,
    /// labels (A-basis index, morphism) of the `A # kG*` basis
    pub labels: Vec<(usize, usize)>,
    pub psi: AlgebraMap,
    pub psi_ok: bool,
    pub duality: DualityReport,
}

pub fn weak_hopf_smash(ga: &GradedAlgebra) -> Result<WeakHopfReport, DualityError> {
    let groupoid = &ga.groupoid;
    // basis {(i, h) : d(deg b_i) = r(h)}, ordered like the smash labels of
    // the left-translation action
    let mut labels = Vec::new();
    for i in 0..ga.dim() {
        let d = groupoid.dom(ga.deg(i));
        for h in groupoid.r_fiber(d)? {
            labels.push((i, h));
        }
    }
    let pos_of = |i: usize, h: usize| labels.iter().position(|&l| l == (i, h));
    // (a ⊗ v_g)(b ⊗ v_h) = a b_{g h⁻¹} ⊗ v_h when d(g) = d(h), else 0
    let mut mult = MultTable::new();
    for (p, &(i, g)) in labels.iter().enumerate() {
        for (q, &(j, h)) in labels.iter().enumerate() {
            if groupoid.dom(g) != groupoid.dom(h) {
                continue;
            }
            let ghinv = groupoid
                .compose(g, groupoid.inv(h))
                .expect("d(g) = d(h) composes g h^{-1}");
            if ga.deg(j) != ghinv {
                continue;
            }
            let prod = ga.algebra.mul_basis_vec(i, j);
            let terms: Vec<(usize, Scalar)> = prod
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let pk = pos_of(k, h).expect("graded product stays in valid labels");
                    (pk, c.clone())
                })
                .collect();
            if !terms.is_empty() {
                mult.insert((p, q), terms);
            }
        }
    }
    let mut unit = zero_vec(labels.len());
    for (p, &(i, _)) in labels.iter().enumerate() {
        unit[p] = ga.algebra.unit()[i].clone();
    }
    let smash_dual = StructureAlgebra::validate(labels.len(), mult, unit)
        .map_err(|e| DualityError::NotIso(format!("derived multiplication is invalid: {e}")))?;

    // X = {v_g} with alpha_g(v_h) = v_{gh} is the left-translation G-set
    let x = GSet::left_translation(groupoid);
    let s = smash_product(ga, &x)?;
    if s.labels != labels {
        return Err(DualityError::Internal(
            "label orders of A#kG* and A#X disagree".into(),
        ));
    }
    let psi = AlgebraMap::new(Mat::identity(labels.len()));
    let psi_ok = psi.check_multiplicative(&smash_dual, &s.algebra).is_ok()
        && psi.check_unital(&smash_dual, &s.algebra).is_ok()
        && psi.is_bijective();
    if !psi_ok {
        return Err(DualityError::NotIso(
            "psi is not an isomorphism onto A#X".into(),
        ));
    }

    // beta_g(v_h) = v_{h g⁻¹} is right translation by the whole groupoid
    let (biset, _) = translation_biset(groupoid, &Subgroupoid::all(groupoid))?;
    let duality = verify_duality(&biset, ga)?;
    Ok(WeakHopfReport {
        smash: smash_dual,
        labels,
        psi,
        psi_ok,
        duality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit_algebra;
    use crate::gset::ActionTables;

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
    fn endomorphisms_of_vector_space() {
        // B = Q acting on Q^2: End is all 2x2 matrices
        let q = StructureAlgebra::scalars();
        let module = ModuleRep::validate(q, vec![Mat::identity(2)], Side::Right).unwrap();
        let endo = endomorphism_algebra(&module).unwrap();
        assert_eq!(endo.algebra.dim(), 4);
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        // M2 acting on itself: the commutant is M2-opposite, dimension 4
        let m2 = matrix_unit_algebra(2);
        let module = ModuleRep::regular_right(&m2);
        let endo = endomorphism_algebra(&module).unwrap();
        assert_eq!(endo.algebra.dim(), 4);
    }

    #[test]
    fn endomorphisms_of_zero_module() {
        let q = StructureAlgebra::scalars();
        let module = ModuleRep::validate(q, vec![Mat::zeros(0, 0)], Side::Right).unwrap();
        let endo = endomorphism_algebra(&module).unwrap();
        assert_eq!(endo.algebra.dim(), 0);
    }

    #[test]
    fn duality_on_the_main_fixture() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        let (biset, _) = translation_biset(&p2, &Subgroupoid::all(&p2)).unwrap();
        let report = verify_duality(&biset, &ga).unwrap();
        assert!(report.fully_faithful);
        assert!(report.galois_ok);
        assert_eq!(report.dim_skew, 16);
        assert_eq!(report.dim_end, 16);
        assert!(report.map_ok, "{:?}", report.details);
    }

    #[test]
    fn duality_with_identity_k() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let t = Groupoid::trivial();
        let k = GSet::identity_action(&t, vec![vec![0, 1]], 2).unwrap();
        let biset = BiSet::validate(x, k).unwrap();
        let report = verify_duality(&biset, &ga).unwrap();
        assert!(report.fully_faithful);
        assert_eq!(report.dim_skew, report.dim_smash);
        assert_eq!(report.dim_end, report.dim_skew);
        assert!(report.map_ok);
    }

    #[test]
    fn non_fully_faithful_control_fails_the_map() {
        // Z/2 acting identically on a single point over the trivial groupoid
        let t = Groupoid::trivial();
        let ga = crate::graded::groupoid_algebra(&t);
        let x = GSet::identity_action(&t, vec![vec![0]], 1).unwrap();
        let z2 = Groupoid::cyclic(2).unwrap();
        let k = GSet::validate(
            z2,
            ActionTables {
                n_points: 1,
                fibers: vec![vec![0]],
                maps: vec![vec![(0, 0)], vec![(0, 0)]],
            },
        )
        .unwrap();
        let biset = BiSet::validate(x, k).unwrap();
        let report = verify_duality(&biset, &ga).unwrap();
        assert!(!report.fully_faithful);
        assert!(!report.galois_ok);
        assert!(!report.map_ok);
        assert_eq!(report.dim_skew, 2);
        assert_eq!(report.dim_end, 1);
    }

    #[test]
    fn coset_duality_cases() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        let all = coset_duality(&p2, &Subgroupoid::all(&p2), &ga).unwrap();
        assert!(all.cosets_match_orbits);
        assert_eq!(all.n_cosets, 2);
        assert!(all.duality.map_ok);

        let ids = coset_duality(&p2, &Subgroupoid::identities(&p2), &ga).unwrap();
        assert!(ids.cosets_match_orbits);
        assert_eq!(ids.n_cosets, 4);
        assert!(ids.duality.map_ok);

        let z2 = Groupoid::cyclic(2).unwrap();
        let kz2 = crate::graded::groupoid_algebra(&z2);
        let triv = coset_duality(&z2, &Subgroupoid::identities(&z2), &kz2).unwrap();
        assert!(triv.cosets_match_orbits);
        assert!(triv.duality.map_ok);
    }

    #[test]
    fn non_wide_subgroupoid_is_rejected() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        let single = Subgroupoid::check(&p2, vec![p2.identity_of(0)]).unwrap();
        let err = coset_duality(&p2, &single, &ga).unwrap_err();
        assert_eq!(err.code(), "E_NOT_WIDE");
    }

    #[test]
    fn ig_duality_on_xef() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let report = partial_bijection_duality(&x, &ga, 8).unwrap();
        assert_eq!(report.ig_objects, 2);
        assert!(report.duality.fully_faithful);
        assert!(report.duality.map_ok, "{:?}", report.duality.details);
    }

    #[test]
    fn ig_duality_requires_transitivity() {
        let t = Groupoid::trivial();
        let ga = crate::graded::groupoid_algebra(&t);
        let x = GSet::identity_action(&t, vec![vec![0, 1]], 2).unwrap();
        assert!(matches!(
            partial_bijection_duality(&x, &ga, 8),
            Err(DualityError::NotTransitive)
        ));
    }

    #[test]
    fn weak_hopf_on_trivial_groupoid() {
        let t = Groupoid::trivial();
        let ga = crate::graded::groupoid_algebra(&t);
        let report = weak_hopf_smash(&ga).unwrap();
        assert_eq!(report.smash.dim(), 1);
        assert!(report.psi_ok);
        assert!(report.duality.map_ok);
    }

    #[test]
    fn weak_hopf_on_m2() {
        let ga = m2_graded();
        let report = weak_hopf_smash(&ga).unwrap();
        assert_eq!(report.smash.dim(), 8);
        assert!(report.psi_ok);
        assert!(report.duality.map_ok);
        assert_eq!(report.duality.dim_skew, 16);
    }
}
