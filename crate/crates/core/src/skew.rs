//! Groupoid actions on algebras by ideals and isomorphisms, the skew
//! groupoid ring, invariant subalgebras, Galois coordinate systems, and the
//! action of `K` on a smash product induced by a biset.

use crate::algebra::{AlgebraError, MultTable, StructureAlgebra};
use crate::biset::{orbit_gset, BiSet, BisetError};
use crate::graded::{GradedAlgebra, GradingError};
use crate::groupoid::Groupoid;
use crate::linalg::{Mat, Subspace};
use crate::scalar::{unit_vec, zero_vec, Scalar};
use crate::smash::{induced_morphism, smash_product, SmashAlgebra, SmashError};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("E_{object} is not a two-sided ideal")]
    NotIdeal { object: usize },
    #[error("beta_{k} is not an algebra isomorphism: {reason}")]
    NotIso { k: usize, reason: String },
    #[error("action cocycle fails on composable pair ({g}, {h})")]
    Cocycle { g: usize, h: usize },
    #[error("ideal E_{object} has no unit")]
    NoIdealUnit { object: usize },
    #[error("the algebra is not the direct sum of unital object ideals")]
    NotUnitalDecomp,
    #[error("malformed action data: {0}")]
    BadTables(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Smash(#[from] SmashError),
    #[error(transparent)]
    Biset(#[from] BisetError),
}

impl SkewError {
    pub fn code(&self) -> &'static str {
        match self {
            SkewError::NotIdeal { .. } => "E_NOT_IDEAL",
            SkewError::NotIso { .. } => "E_NOT_ISO",
            SkewError::Cocycle { .. } => "E_COCYCLE",
            SkewError::NoIdealUnit { .. } => "E_NO_IDEAL_UNIT",
            SkewError::NotUnitalDecomp => "E_NOT_UNITAL_DECOMP",
            SkewError::BadTables(_) => "E_BAD_TABLES",
            SkewError::Internal(_) => "E_INTERNAL",
            SkewError::Algebra(e) => e.code(),
            SkewError::Grading(e) => e.code(),
            SkewError::Smash(e) => e.code(),
            SkewError::Biset(e) => e.code(),
        }
    }
}

/// An action of a groupoid `K` on an algebra `B`: unital or not, one ideal
/// `E_p` per object (`E_k := E_{r(k)}`) and one algebra isomorphism
/// `beta_k : E_{d(k)} -> E_{r(k)}` per morphism, written on the chosen
/// echelon bases of the ideals.
#[derive(Debug, Clone)]
pub struct AlgebraAction {
    pub groupoid: Groupoid,
    pub algebra: StructureAlgebra,
    ideals: Vec<Subspace>,
    isos: Vec<Mat>,
    ideal_units: Vec<Option<Vec<Scalar>>>,
    pub direct_sum: bool,
}

impl AlgebraAction {
    pub fn validate(
        groupoid: Groupoid,
        algebra: StructureAlgebra,
        ideals: Vec<Subspace>,
        isos: Vec<Mat>,
    ) -> Result<AlgebraAction, SkewError> {
        if ideals.len() != groupoid.n_objects() {
            return Err(SkewError::BadTables("one ideal per object required".into()));
        }
        if isos.len() != groupoid.n_morphisms() {
            return Err(SkewError::BadTables("one iso per morphism required".into()));
        }
        if ideals.iter().any(|u| u.ambient() != algebra.dim()) {
            return Err(SkewError::BadTables(
                "ideals must live in the algebra's space".into(),
            ));
        }
        // two-sided ideals
        let full = Subspace::full(algebra.dim());
        for (p, e) in ideals.iter().enumerate() {
            let left = algebra.product_span(&full, e)?;
            let right = algebra.product_span(e, &full)?;
            if !e.contains(&left) || !e.contains(&right) {
                return Err(SkewError::NotIdeal { object: p });
            }
        }
        // iso shapes, identity condition
        for k in groupoid.morphisms() {
            let (dk, rk) = (groupoid.dom(k), groupoid.ran(k));
            if isos[k].n_rows() != ideals[rk].dim() || isos[k].n_cols() != ideals[dk].dim() {
                return Err(SkewError::BadTables(format!(
                    "iso for morphism {k} has the wrong shape"
                )));
            }
        }
        for e in groupoid.objects() {
            let id = groupoid.identity_of(e);
            if isos[id] != Mat::identity(ideals[e].dim()) {
                return Err(SkewError::Cocycle { g: id, h: id });
            }
        }
        // multiplicative and bijective on each morphism
        let act = AlgebraAction {
            groupoid,
            algebra,
            ideals,
            isos,
            ideal_units: Vec::new(),
            direct_sum: false,
        };
        for k in act.groupoid.morphisms() {
            let src = &act.ideals[act.groupoid.dom(k)];
            if act.isos[k].rank() != src.dim() {
                return Err(SkewError::NotIso {
                    k,
                    reason: "not bijective".into(),
                });
            }
            for a in 0..src.dim() {
                let ua = src.from_coords(&unit_vec(src.dim(), a));
                let fa = act.apply_iso(k, &ua)?;
                for b in 0..src.dim() {
                    let ub = src.from_coords(&unit_vec(src.dim(), b));
                    let fb = act.apply_iso(k, &ub)?;
                    let lhs = act.apply_iso(k, &act.algebra.mul(&ua, &ub))?;
                    let rhs = act.algebra.mul(&fa, &fb);
                    if lhs != rhs {
                        return Err(SkewError::NotIso {
                            k,
                            reason: format!("not multiplicative at basis pair ({a}, {b})"),
                        });
                    }
                }
            }
        }
        // cocycle on composable pairs
        for g in act.groupoid.morphisms() {
            for h in act.groupoid.morphisms() {
                if let Some(gh) = act.groupoid.compose(g, h) {
                    if act.isos[g].mul(&act.isos[h]) != act.isos[gh] {
                        return Err(SkewError::Cocycle { g, h });
                    }
                }
            }
        }
        // ideal units (when they exist) and the direct-sum flag
        let ideal_units: Vec<Option<Vec<Scalar>>> = act
            .groupoid
            .objects()
            .map(|p| ideal_unit(&act.algebra, &act.ideals[p]))
            .collect();
        let total_dim: usize = act.ideals.iter().map(Subspace::dim).sum();
        let mut sum = Subspace::zero(act.algebra.dim());
        for e in &act.ideals {
            sum = sum.sum(e);
        }
        let direct_sum =
            total_dim == act.algebra.dim() && sum == Subspace::full(act.algebra.dim());
        Ok(AlgebraAction {
            ideal_units,
            direct_sum,
            ..act
        })
    }

    /// `beta_k` applied to an ambient vector of `E_{d(k)}`.
    pub fn apply_iso(&self, k: usize, v: &[Scalar]) -> Result<Vec<Scalar>, SkewError> {
        let src = &self.ideals[self.groupoid.dom(k)];
        let dst = &self.ideals[self.groupoid.ran(k)];
        let coords = src.coords(v).ok_or_else(|| SkewError::Internal(
            "apply_iso argument is outside the source ideal".into(),
        ))?;
        Ok(dst.from_coords(&self.isos[k].apply(&coords)))
    }

    /// Ideal at an object.
    pub fn ideal(&self, p: usize) -> &Subspace {
        &self.ideals[p]
    }

    /// `E_k = E_{r(k)}`.
    pub fn ideal_of_morphism(&self, k: usize) -> &Subspace {
        &self.ideals[self.groupoid.ran(k)]
    }

    pub fn iso(&self, k: usize) -> &Mat {
        &self.isos[k]
    }

    pub fn ideal_unit(&self, p: usize) -> Option<&Vec<Scalar>> {
        self.ideal_units[p].as_ref()
    }

    pub fn all_ideals_unital(&self) -> bool {
        self.ideal_units.iter().all(Option::is_some)
    }

    fn require_units(&self) -> Result<(), SkewError> {
        for p in self.groupoid.objects() {
            if self.ideal_units[p].is_none() {
                return Err(SkewError::NoIdealUnit { object: p });
            }
        }
        Ok(())
    }

    /// The trivial action of a groupoid's identity subgroupoid pattern:
    /// every ideal is the whole algebra, every iso the identity. Only valid
    /// when the groupoid has one object.
    pub fn trivial(groupoid: Groupoid, algebra: StructureAlgebra) -> Result<AlgebraAction, SkewError> {
        let ideals = groupoid
            .objects()
            .map(|_| Subspace::full(algebra.dim()))
            .collect();
        let isos = groupoid
            .morphisms()
            .map(|_| Mat::identity(algebra.dim()))
            .collect();
        AlgebraAction::validate(groupoid, algebra, ideals, isos)
    }
}

/// Unit of an ideal, when one exists: solves `u x = x u = x` on the ideal
/// basis.
fn ideal_unit(algebra: &StructureAlgebra, ideal: &Subspace) -> Option<Vec<Scalar>> {
    let d = ideal.dim();
    if d == 0 {
        return Some(zero_vec(algebra.dim()));
    }
    let n = algebra.dim();
    // unknowns: coords of u in the ideal basis
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for b in 0..d {
        let x = ideal.from_coords(&unit_vec(d, b));
        // u·x = x  and  x·u = x, coordinatewise in ambient space
        for coord in 0..n {
            let mut row_l = zero_vec(d);
            let mut row_r = zero_vec(d);
            for j in 0..d {
                let uj = ideal.from_coords(&unit_vec(d, j));
                row_l[j] = algebra.mul(&uj, &x)[coord].clone();
                row_r[j] = algebra.mul(&x, &uj)[coord].clone();
            }
            rows.push(row_l);
            rhs.push(x[coord].clone());
            rows.push(row_r);
            rhs.push(x[coord].clone());
        }
    }
    let m = Mat::from_rows(rows);
    m.solve(&rhs).map(|coords| ideal.from_coords(&coords))
}

/// The skew groupoid ring `B *_beta K`, graded by `K` through its labels
/// `(morphism, ideal-basis index)`.
#[derive(Debug, Clone)]
pub struct SkewRing {
    pub graded: GradedAlgebra,
    /// basis index -> (K-morphism, index into the basis of `E_{r(k)}`)
    pub labels: Vec<(usize, usize)>,
}

impl SkewRing {
    pub fn dim(&self) -> usize {
        self.graded.dim()
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.graded.algebra
    }

    /// Embed `x δ_k` (with `x` in ambient coordinates of `E_{r(k)}`) into
    /// skew-ring coordinates.
    pub fn element(&self, act: &AlgebraAction, k: usize, x: &[Scalar]) -> Result<Vec<Scalar>, SkewError> {
        let ideal = act.ideal_of_morphism(k);
        let coords = ideal.coords(x).ok_or_else(|| {
            SkewError::Internal("element is outside the ideal at its morphism".into())
        })?;
        let mut v = zero_vec(self.dim());
        for (pos, &(kk, j)) in self.labels.iter().enumerate() {
            if kk == k {
                v[pos] = coords[j].clone();
            }
        }
        Ok(v)
    }
}

/// Build `B *_beta K`. Demands the unital direct-sum decomposition, because
/// the result is validated as a unital structure algebra with unit
/// `Σ_p 1_p δ_p`.
pub fn skew_groupoid_ring(act: &AlgebraAction) -> Result<SkewRing, SkewError> {
    if !act.direct_sum || !act.all_ideals_unital() {
        return Err(SkewError::NotUnitalDecomp);
    }
    let k_groupoid = &act.groupoid;
    let mut labels = Vec::new();
    for k in k_groupoid.morphisms() {
        for j in 0..act.ideal_of_morphism(k).dim() {
            labels.push((k, j));
        }
    }
    let dim = labels.len();
    let pos_of = |k: usize, j: usize| labels.iter().position(|&l| l == (k, j)).unwrap();

    let mut mult = MultTable::new();
    for (p, &(g, a)) in labels.iter().enumerate() {
        let eg = act.ideal_of_morphism(g);
        let x = eg.from_coords(&unit_vec(eg.dim(), a));
        for (q, &(h, b)) in labels.iter().enumerate() {
            let Some(gh) = k_groupoid.compose(g, h) else {
                continue;
            };
            let eh = act.ideal_of_morphism(h);
            let y = eh.from_coords(&unit_vec(eh.dim(), b));
            // (x δ_g)(y δ_h) = x beta_g(y) δ_{gh}
            let by = act.apply_iso(g, &y)?;
            let prod = act.algebra.mul(&x, &by);
            let target = act.ideal_of_morphism(gh);
            let coords = target.coords(&prod).ok_or_else(|| {
                SkewError::Internal("skew product left its ideal".into())
            })?;
            let terms: Vec<(usize, Scalar)> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (pos_of(gh, l), c.clone()))
                .collect();
            if !terms.is_empty() {
                mult.insert((p, q), terms);
            }
        }
    }

    let mut unit = zero_vec(dim);
    for p in k_groupoid.objects() {
        let id = k_groupoid.identity_of(p);
        let one_p = act.ideal_unit(p).expect("units checked above");
        let coords = act.ideal(p).coords(one_p).expect("1_p lies in E_p");
        for (j, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                unit[pos_of(id, j)] = c.clone();
            }
        }
    }

    let algebra = StructureAlgebra::validate(dim, mult, unit)?;
    let graded = GradedAlgebra::validate(
        algebra,
        k_groupoid.clone(),
        labels.iter().map(|&(k, _)| k).collect(),
    )?;
    Ok(SkewRing { graded, labels })
}

/// The invariant subalgebra `B^beta = {x : beta_k(x 1_{k⁻¹}) = x 1_k}`,
/// returned as a subspace plus the induced multiplication on its basis.
pub fn invariant_subalgebra(
    act: &AlgebraAction,
) -> Result<(Subspace, StructureAlgebra), SkewError> {
    act.require_units()?;
    let n = act.algebra.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for k in act.groupoid.morphisms() {
        let u_dom = act.ideal_unit(act.groupoid.dom(k)).unwrap().clone();
        let u_ran = act.ideal_unit(act.groupoid.ran(k)).unwrap().clone();
        // row block: beta_k(e_j · 1_{d(k)}) - e_j · 1_{r(k)}
        let mut block = vec![zero_vec(n); n];
        for j in 0..n {
            let ej = unit_vec(n, j);
            let lhs = act.apply_iso(k, &act.algebra.mul(&ej, &u_dom))?;
            let rhs = act.algebra.mul(&ej, &u_ran);
            for coord in 0..n {
                block[coord][j] = &lhs[coord] - &rhs[coord];
            }
        }
        rows.extend(block);
    }
    let m = if rows.is_empty() {
        Mat::zeros(0, n)
    } else {
        Mat::from_rows(rows)
    };
    let subspace = Subspace::span(n, m.kernel());

    // induced multiplication: closure and the inherited unit are verified
    let d = subspace.dim();
    let mut mult = MultTable::new();
    for i in 0..d {
        let u = subspace.from_coords(&unit_vec(d, i));
        for j in 0..d {
            let v = subspace.from_coords(&unit_vec(d, j));
            let prod = act.algebra.mul(&u, &v);
            let coords = subspace.coords(&prod).ok_or_else(|| {
                SkewError::Internal("invariant subalgebra is not closed under product".into())
            })?;
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
    let unit_coords = subspace.coords(act.algebra.unit()).ok_or_else(|| {
        SkewError::Internal("the unit is not beta-invariant".into())
    })?;
    let induced = StructureAlgebra::validate(d, mult, unit_coords)?;
    Ok((subspace, induced))
}

/// Evaluate a candidate Galois coordinate system:
/// `Σ_i x_i beta_g(y_i 1_{g⁻¹}) = δ_{e,g} 1_e` for every morphism.
pub fn galois_check(
    act: &AlgebraAction,
    pairs: &[(Vec<Scalar>, Vec<Scalar>)],
) -> Result<bool, SkewError> {
    act.require_units()?;
    let n = act.algebra.dim();
    for g in act.groupoid.morphisms() {
        let u_dom = act.ideal_unit(act.groupoid.dom(g)).unwrap().clone();
        let mut acc = zero_vec(n);
        for (x, y) in pairs {
            let inner = act.apply_iso(g, &act.algebra.mul(y, &u_dom))?;
            let term = act.algebra.mul(x, &inner);
            acc = crate::scalar::add_vec(&acc, &term);
        }
        let target = if act.groupoid.is_identity(g) {
            act.ideal_unit(act.groupoid.ran(g)).unwrap().clone()
        } else {
            zero_vec(n)
        };
        if acc != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search for Galois coordinates by linearizing `Σ x_i ⊗ y_i` over
/// `B ⊗ B`; any solution is decomposed along the algebra basis, so the
/// returned system has length at most `dim B`.
pub fn find_galois_coordinates(
    act: &AlgebraAction,
) -> Result<Option<Vec<(Vec<Scalar>, Vec<Scalar>)>>, SkewError> {
    act.require_units()?;
    let n = act.algebra.dim();
    // coefficient of z_{ij} in equation (g, coord): [b_i · beta_g(b_j 1_{d(g)})]_coord
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in act.groupoid.morphisms() {
        let u_dom = act.ideal_unit(act.groupoid.dom(g)).unwrap().clone();
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let yj = unit_vec(n, j);
            images.push(act.apply_iso(g, &act.algebra.mul(&yj, &u_dom))?);
        }
        let target = if act.groupoid.is_identity(g) {
            act.ideal_unit(act.groupoid.ran(g)).unwrap().clone()
        } else {
            zero_vec(n)
        };
        for coord in 0..n {
            let mut row = zero_vec(n * n);
            for i in 0..n {
                let xi = unit_vec(n, i);
                for j in 0..n {
                    row[i * n + j] = act.algebra.mul(&xi, &images[j])[coord].clone();
                }
            }
            rows.push(row);
            rhs.push(target[coord].clone());
        }
    }
    let m = Mat::from_rows(rows);
    let Some(z) = m.solve(&rhs) else {
        return Ok(None);
    };
    let mut pairs = Vec::new();
    for i in 0..n {
        let w = z[i * n..(i + 1) * n].to_vec();
        if !crate::scalar::is_zero_vec(&w) {
            pairs.push((unit_vec(n, i), w));
        }
    }
    Ok(Some(pairs))
}

/// The action `gamma` of `K` on `A # X` induced by a split biset:
/// `E_p` is spanned by the basis lines over `Y_p`, and
/// `gamma_k = (beta_{k⁻¹})*` permutes lines by `(i, y) -> (i, beta_k(y))`.
#[derive(Debug, Clone)]
pub struct GammaAction {
    pub smash: SmashAlgebra,
    pub action: AlgebraAction,
}

pub fn gamma_action(biset: &BiSet, ga: &GradedAlgebra) -> Result<GammaAction, SkewError> {
    if !biset.split {
        return Err(SmashError::NotSplit.into());
    }
    let smash = smash_product(ga, &biset.g_action)?;
    let k_groupoid = biset.k_action.groupoid().clone();

    // ideal basis per K-object: smash labels (i, x) with x ∈ Y_p, in label order
    let lines_of = |p: usize| -> Vec<usize> {
        smash
            .labels
            .iter()
            .enumerate()
            .filter(|(_, &(_, x))| biset.k_action.fiber(p).binary_search(&x).is_ok())
            .map(|(pos, _)| pos)
            .collect()
    };
    let line_lists: Vec<Vec<usize>> = k_groupoid.objects().map(lines_of).collect();
    let ideals: Vec<Subspace> = line_lists
        .iter()
        .map(|lines| {
            Subspace::span(
                smash.dim(),
                lines.iter().map(|&pos| unit_vec(smash.dim(), pos)),
            )
        })
        .collect();

    let mut isos = Vec::with_capacity(k_groupoid.n_morphisms());
    for k in k_groupoid.morphisms() {
        let src_lines = &line_lists[k_groupoid.dom(k)];
        let dst_lines = &line_lists[k_groupoid.ran(k)];
        let mut m = Mat::zeros(dst_lines.len(), src_lines.len());
        for (col, &pos) in src_lines.iter().enumerate() {
            let (i, y) = smash.labels[pos];
            let img = biset
                .k_action
                .act(k, y)
                .ok_or_else(|| SkewError::Internal("beta_k undefined on Y_{d(k)}".into()))?;
            let target_pos = smash
                .label_index(i, img)
                .ok_or_else(|| SkewError::Internal("beta_k left the G-fiber".into()))?;
            let row = dst_lines
                .iter()
                .position(|&q| q == target_pos)
                .ok_or_else(|| SkewError::Internal("gamma_k image line missing".into()))?;
            m.set(row, col, crate::scalar::one());
        }
        isos.push(m);
    }

    let action = AlgebraAction::validate(k_groupoid, smash.algebra.clone(), ideals, isos)?;
    if !action.direct_sum {
        return Err(SkewError::Internal(
            "A#X does not decompose as the direct sum of the E_p".into(),
        ));
    }
    // 1_p must come out as Σ_e Σ_{x ∈ Y_p ∩ X_e} 1_e δ_x
    for p in action.groupoid.objects() {
        let mut expected = zero_vec(smash.dim());
        for e in ga.groupoid.objects() {
            for &x in biset.k_action.fiber(p) {
                if smash.action.fiber(e).binary_search(&x).is_ok() {
                    expected =
                        crate::scalar::add_vec(&expected, &smash.unit_delta(e, x));
                }
            }
        }
        match action.ideal_unit(p) {
            Some(got) if *got == expected => {}
            _ => {
                return Err(SkewError::Internal(format!(
                    "ideal unit at object {p} does not match the biset formula"
                )))
            }
        }
    }
    Ok(GammaAction { smash, action })
}

/// The fixed-subalgebra comparison: the image of
/// `phi* : A # O^K -> A # X` equals `(A # X)^gamma`.
#[derive(Debug, Clone)]
pub struct FixedOrbitReport {
    pub image_dim: usize,
    pub invariant_dim: usize,
    pub orbit_smash_dim: usize,
    pub equal: bool,
}

pub fn fixed_vs_orbit_image(biset: &BiSet, ga: &GradedAlgebra) -> Result<FixedOrbitReport, SkewError> {
    let gamma = gamma_action(biset, ga)?;
    let orbits = orbit_gset(biset)?;
    let induced = induced_morphism(&orbits.projection, ga)?;
    let image = induced.map.image();
    let (invariants, _) = invariant_subalgebra(&gamma.action)?;
    Ok(FixedOrbitReport {
        image_dim: image.dim(),
        invariant_dim: invariants.dim(),
        orbit_smash_dim: induced.from.dim(),
        equal: image == invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit_algebra;
    use crate::biset::translation_biset;
    use crate::groupoid::{Groupoid, Subgroupoid};
    use crate::scalar::{int, one};

    fn m2_graded() -> GradedAlgebra {
        let p2 = Groupoid::pair(2).unwrap();
        GradedAlgebra::validate(matrix_unit_algebra(2), p2, vec![0, 2, 1, 3]).unwrap()
    }

    /// Z/2 swapping the two factors of Q x Q.
    fn swap_action() -> AlgebraAction {
        let z2 = Groupoid::cyclic(2).unwrap();
        let mut mult = MultTable::new();
        mult.insert((0, 0), vec![(0, one())]);
        mult.insert((1, 1), vec![(1, one())]);
        let qq = StructureAlgebra::validate(2, mult, vec![one(), one()]).unwrap();
        let ideals = vec![Subspace::full(2)];
        let swap = Mat::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        AlgebraAction::validate(z2, qq, ideals, vec![Mat::identity(2), swap]).unwrap()
    }

    #[test]
    fn trivial_action_validates() {
        let t = Groupoid::trivial();
        let m2 = matrix_unit_algebra(2);
        let act = AlgebraAction::trivial(t, m2).unwrap();
        assert!(act.direct_sum);
        assert!(act.all_ideals_unital());
    }

    #[test]
    fn non_multiplicative_iso_is_rejected() {
        let z2 = Groupoid::cyclic(2).unwrap();
        let mut mult = MultTable::new();
        mult.insert((0, 0), vec![(0, one())]);
        mult.insert((1, 1), vec![(1, one())]);
        let qq = StructureAlgebra::validate(2, mult, vec![one(), one()]).unwrap();
        // "swap plus scale" is bijective but not multiplicative
        let bad = Mat::from_rows(vec![vec![int(0), int(2)], vec![int(1), int(0)]]);
        let err = AlgebraAction::validate(
            z2,
            qq,
            vec![Subspace::full(2)],
            vec![Mat::identity(2), bad],
        )
        .unwrap_err();
        assert!(matches!(err, SkewError::NotIso { .. }));
        assert_eq!(err.code(), "E_NOT_ISO");
    }

    #[test]
    fn skew_ring_of_trivial_action_is_the_algebra() {
        let t = Groupoid::trivial();
        let m2 = matrix_unit_algebra(2);
        let act = AlgebraAction::trivial(t, m2.clone()).unwrap();
        let skew = skew_groupoid_ring(&act).unwrap();
        assert_eq!(skew.dim(), m2.dim());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    skew.algebra().mul_basis_vec(i, j),
                    m2.mul_basis_vec(i, j)
                );
            }
        }
    }

    #[test]
    fn invariants_of_swap_are_the_diagonal() {
        let act = swap_action();
        let (sub, induced) = invariant_subalgebra(&act).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(sub.contains_vec(&[one(), one()]));
        assert_eq!(induced.dim(), 1);
    }

    #[test]
    fn identity_action_invariants_are_everything() {
        let t = Groupoid::trivial();
        let m2 = matrix_unit_algebra(2);
        let act = AlgebraAction::trivial(t, m2).unwrap();
        let (sub, _) = invariant_subalgebra(&act).unwrap();
        assert_eq!(sub.dim(), 4);
    }

    #[test]
    fn galois_check_on_identity_and_swap() {
        let t = Groupoid::trivial();
        let q = StructureAlgebra::scalars();
        let act = AlgebraAction::trivial(t, q).unwrap();
        let pairs = vec![(vec![one()], vec![one()])];
        assert!(galois_check(&act, &pairs).unwrap());

        let swap = swap_action();
        let pairs = vec![(vec![one(), one()], vec![one(), one()])];
        assert!(!galois_check(&swap, &pairs).unwrap());
    }

    #[test]
    fn galois_coordinates_for_swap_exist() {
        // (e_0, e_0), (e_1, e_1) is the classical system for the swap
        let act = swap_action();
        let found = find_galois_coordinates(&act).unwrap();
        let pairs = found.expect("swap extension is Galois");
        assert!(pairs.len() <= 2);
        assert!(galois_check(&act, &pairs).unwrap());
    }

    #[test]
    fn gamma_on_translation_biset_of_pair2() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        let (biset, _) = translation_biset(&p2, &Subgroupoid::all(&p2)).unwrap();
        let gamma = gamma_action(&biset, &ga).unwrap();
        assert_eq!(gamma.smash.dim(), 8);
        for k in gamma.action.groupoid.morphisms() {
            assert_eq!(gamma.action.ideal_of_morphism(k).dim(), 4);
        }
        let skew = skew_groupoid_ring(&gamma.action).unwrap();
        assert_eq!(skew.dim(), 16);
    }

    #[test]
    fn gamma_cocycle_exhaustive_on_fixture() {
        let ga = crate::graded::groupoid_algebra(&Groupoid::pair(2).unwrap());
        let p2 = ga.groupoid.clone();
        let (biset, _) = translation_biset(&p2, &Subgroupoid::identities(&p2)).unwrap();
        let gamma = gamma_action(&biset, &ga).unwrap();
        let k = &gamma.action.groupoid;
        for g in k.morphisms() {
            for h in k.morphisms() {
                if let Some(gh) = k.compose(g, h) {
                    assert_eq!(gamma.action.iso(g).mul(gamma.action.iso(h)), *gamma.action.iso(gh));
                }
            }
        }
    }

    #[test]
    fn fixed_vs_orbit_image_on_fixtures() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        for sub in [Subgroupoid::all(&p2), Subgroupoid::identities(&p2)] {
            let (biset, _) = translation_biset(&p2, &sub).unwrap();
            let report = fixed_vs_orbit_image(&biset, &ga).unwrap();
            assert!(report.equal, "Prop-4.6 style equality failed: {report:?}");
            assert_eq!(report.image_dim, report.invariant_dim);
        }
    }

    #[test]
    fn skew_ring_dim_is_sum_of_ideal_dims() {
        let ga = m2_graded();
        let p2 = ga.groupoid.clone();
        let (biset, _) = translation_biset(&p2, &Subgroupoid::all(&p2)).unwrap();
        let gamma = gamma_action(&biset, &ga).unwrap();
        let skew = skew_groupoid_ring(&gamma.action).unwrap();
        let expected: usize = gamma
            .action
            .groupoid
            .morphisms()
            .map(|k| gamma.action.ideal_of_morphism(k).dim())
            .sum();
        assert_eq!(skew.dim(), expected);
    }
}
