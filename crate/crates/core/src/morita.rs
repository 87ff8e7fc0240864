//! X-graded modules, the isomorphism between them and modules over the
//! smash product, stabilizer subalgebras, and the Morita context tying
//! `A # X` to `A^{G_x}`.

use crate::algebra::{AlgebraError, ModuleRep, MultTable, Side, StructureAlgebra};
use crate::graded::GradedAlgebra;
use crate::gset::{ActionError, GSet};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{unit_vec, zero_vec, Scalar};
use crate::smash::{smash_product, SmashAlgebra, SmashError};
use num::Zero;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoritaError {
    #[error("grading law fails for algebra basis {i} on module basis {mu}")]
    XGrading { i: usize, mu: usize },
    #[error("module basis vector {mu} is not aligned with the idempotent decomposition")]
    NotAligned { mu: usize },
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Smash(#[from] SmashError),
}

impl MoritaError {
    pub fn code(&self) -> &'static str {
        match self {
            MoritaError::XGrading { .. } => "E_XGRADING",
            MoritaError::NotAligned { .. } => "E_NOT_ALIGNED",
            MoritaError::Internal(_) => "E_INTERNAL",
            MoritaError::Algebra(e) => e.code(),
            MoritaError::Action(e) => e.code(),
            MoritaError::Smash(e) => e.code(),
        }
    }
}

/// A left A-module with a basis aligned to carrier points:
/// `A_g · M_x ⊆ M_{alpha_g(x)}` for `x ∈ X_{d(g)}`, and `A_g · M_x = 0`
/// otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XGradedModule {
    pub base: ModuleRep,
    pub action: GSet,
    /// module basis index -> carrier point
    pub deg: Vec<usize>,
}

impl XGradedModule {
    pub fn validate(
        ga: &GradedAlgebra,
        action: &GSet,
        base: ModuleRep,
        deg: Vec<usize>,
    ) -> Result<XGradedModule, MoritaError> {
        if !action.is_split() {
            return Err(ActionError::NotSplit.into());
        }
        if base.algebra != ga.algebra {
            return Err(MoritaError::Internal(
                "module is not over the graded algebra".into(),
            ));
        }
        if base.side != Side::Left {
            return Err(MoritaError::Internal("a left module is required".into()));
        }
        if deg.len() != base.dim || deg.iter().any(|&x| x >= action.n_points()) {
            return Err(MoritaError::Internal("degree map is malformed".into()));
        }
        for i in 0..ga.dim() {
            let g = ga.deg(i);
            for mu in 0..base.dim {
                let x = deg[mu];
                let col = base.act[i].apply(&unit_vec(base.dim, mu));
                match action.act(g, x) {
                    Some(gx) => {
                        for (nu, c) in col.iter().enumerate() {
                            if !c.is_zero() && deg[nu] != gx {
                                return Err(MoritaError::XGrading { i, mu });
                            }
                        }
                    }
                    None => {
                        if !crate::scalar::is_zero_vec(&col) {
                            return Err(MoritaError::XGrading { i, mu });
                        }
                    }
                }
            }
        }
        Ok(XGradedModule {
            base,
            action: action.clone(),
            deg,
        })
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }
}

/// Functor G: an X-graded module becomes a left `A # X`-module via
/// `(a_g δ_x) · m = a_g m_x`.
pub fn to_smash_module(
    xm: &XGradedModule,
    smash: &SmashAlgebra,
) -> Result<ModuleRep, MoritaError> {
    let m = xm.dim();
    let act: Vec<Mat> = smash
        .labels
        .iter()
        .map(|&(i, x)| {
            let mut proj = Mat::zeros(m, m);
            for mu in 0..m {
                if xm.deg[mu] == x {
                    proj.set(mu, mu, crate::scalar::one());
                }
            }
            xm.base.act[i].mul(&proj)
        })
        .collect();
    Ok(ModuleRep::validate(smash.algebra.clone(), act, Side::Left)?)
}

/// Functor F: a left `A # X`-module with basis aligned to the idempotents
/// `1_e δ_x` becomes an X-graded module, with the A-action through `eta`.
pub fn to_xgraded(
    module: &ModuleRep,
    ga: &GradedAlgebra,
    smash: &SmashAlgebra,
) -> Result<XGradedModule, MoritaError> {
    if module.side != Side::Left || module.algebra != smash.algebra {
        return Err(MoritaError::Internal(
            "a left module over the smash algebra is required".into(),
        ));
    }
    let m = module.dim;
    // idempotent matrices per (object, point)
    let mut idempotents = Vec::new();
    for e in ga.groupoid.objects() {
        for &x in smash.action.fiber(e) {
            idempotents.push((x, module.act_vec(&smash.unit_delta(e, x))));
        }
    }
    let mut deg = vec![usize::MAX; m];
    for mu in 0..m {
        let basis = unit_vec(m, mu);
        for &(x, ref q) in &idempotents {
            let img = q.apply(&basis);
            if img == basis {
                if deg[mu] != usize::MAX {
                    return Err(MoritaError::NotAligned { mu });
                }
                deg[mu] = x;
            } else if !crate::scalar::is_zero_vec(&img) {
                return Err(MoritaError::NotAligned { mu });
            }
        }
        if deg[mu] == usize::MAX {
            return Err(MoritaError::NotAligned { mu });
        }
    }
    // A acts through eta: b_i -> Σ_{x ∈ X_{d(deg i)}} (b_i δ_x)
    let act: Vec<Mat> = (0..ga.dim())
        .map(|i| {
            let mut total = Mat::zeros(m, m);
            let d = ga.groupoid.dom(ga.deg(i));
            for &x in smash.action.fiber(d) {
                let pos = smash.label_index(i, x).expect("valid smash label");
                total = total.add(&module.act[pos]);
            }
            total
        })
        .collect();
    let base = ModuleRep::validate(ga.algebra.clone(), act, Side::Left)?;
    XGradedModule::validate(ga, &smash.action, base, deg)
}

/// Both composites of the two functors must reproduce the input as literal
/// data: same action matrices, same degree map.
pub fn roundtrip_check(xm: &XGradedModule, ga: &GradedAlgebra, smash: &SmashAlgebra) -> Result<bool, MoritaError> {
    let v = to_smash_module(xm, smash)?;
    let back = to_xgraded(&v, ga, smash)?;
    if back.base != xm.base || back.deg != xm.deg {
        return Ok(false);
    }
    let forward = to_smash_module(&back, smash)?;
    Ok(forward == v)
}

/// Does a linear map commute with both module structures? Used as the
/// morphism-compatibility half of the category isomorphism.
pub fn map_commutes(map: &Mat, source: &ModuleRep, target: &ModuleRep) -> bool {
    source
        .act
        .iter()
        .zip(&target.act)
        .all(|(s, t)| map.mul(s) == t.mul(map))
}

/// The stabilizer subalgebra `A^{G_x} = ⊕_{g ∈ G_x} A_g`.
pub fn stabilizer_subalgebra(
    ga: &GradedAlgebra,
    action: &GSet,
    x: usize,
) -> Result<(Subspace, StructureAlgebra, Vec<usize>), MoritaError> {
    let stab = action.stabilizer(x)?;
    let indices: Vec<usize> = (0..ga.dim())
        .filter(|&i| stab.contains(ga.deg(i)))
        .collect();
    let subspace = Subspace::span(
        ga.dim(),
        indices.iter().map(|&i| unit_vec(ga.dim(), i)),
    );
    let pos_of = |k: usize| indices.iter().position(|&i| i == k);
    let d = indices.len();
    let mut mult = MultTable::new();
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            let prod = ga.algebra.mul_basis_vec(i, j);
            let mut terms = Vec::new();
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let p = pos_of(k).ok_or_else(|| {
                        MoritaError::Internal("stabilizer component not closed".into())
                    })?;
                    terms.push((p, c.clone()));
                }
            }
            if !terms.is_empty() {
                mult.insert((a, b), terms);
            }
        }
    }
    let e = action.object_of(x)?;
    let one_e = ga.homogeneous_unit(e);
    let unit: Vec<Scalar> = indices.iter().map(|&i| one_e[i].clone()).collect();
    let algebra = StructureAlgebra::validate(d, mult, unit)?;
    Ok((subspace, algebra, indices))
}

/// `V_{x,y}`: the span of the components `A_h` with `h : e -> f` and
/// `alpha_h(x) = y`.
pub fn hom_component(
    ga: &GradedAlgebra,
    action: &GSet,
    x: usize,
    y: usize,
) -> Result<Subspace, MoritaError> {
    let _ = action.object_of(x)?;
    let indices = (0..ga.dim()).filter(|&i| {
        let h = ga.deg(i);
        action.act(h, x) == Some(y)
    });
    Ok(Subspace::span(
        ga.dim(),
        indices.map(|i| unit_vec(ga.dim(), i)),
    ))
}

/// The Morita context `[A#X, V^x, ^xV, A^{G_x}, [,], (,)]` at a base
/// point: bimodule actions in explicit matrices and both pairings as exact
/// bilinear tables, with every axiom verified on basis data.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub smash: SmashAlgebra,
    pub stab_algebra: StructureAlgebra,
    pub stab_subspace: Subspace,
    pub base_point: usize,
    /// A-basis indices spanning `^xV = ⊕_{h ∈ D_e} A_h`
    pub w_indices: Vec<usize>,
    /// A-basis indices spanning `V^x = ⊕_{h ∈ R_e} A_h`
    pub v_indices: Vec<usize>,
    pub left_c_on_w: Vec<Mat>,
    pub right_d_on_w: Vec<Mat>,
    pub left_d_on_v: Vec<Mat>,
    pub right_c_on_v: Vec<Mat>,
    /// `(v, w)` in stabilizer coordinates, indexed `[v][w]`
    pub pair_round: Vec<Vec<Vec<Scalar>>>,
    /// `[w, v]` in smash coordinates, indexed `[w][v]`
    pub pair_square: Vec<Vec<Vec<Scalar>>>,
}

pub fn build_morita_context(
    ga: &GradedAlgebra,
    action: &GSet,
    x: usize,
) -> Result<MoritaContext, MoritaError> {
    let smash = smash_product(ga, action)?;
    let (stab_subspace, stab_algebra, d_indices) = stabilizer_subalgebra(ga, action, x)?;
    let e = action.object_of(x)?;
    let w_indices: Vec<usize> = (0..ga.dim())
        .filter(|&i| ga.groupoid.dom(ga.deg(i)) == e)
        .collect();
    let v_indices: Vec<usize> = (0..ga.dim())
        .filter(|&i| ga.groupoid.ran(ga.deg(i)) == e)
        .collect();
    let w_pos = |k: usize| w_indices.iter().position(|&i| i == k);
    let v_pos = |k: usize| v_indices.iter().position(|&i| i == k);
    let d_pos = |k: usize| d_indices.iter().position(|&i| i == k);
    let (nw, nv, nd) = (w_indices.len(), v_indices.len(), d_indices.len());

    // left C-action on ^xV: (a_g δ_y) · w = a_g w_y, w_y the V_{x,y}-part
    let mut left_c_on_w = Vec::with_capacity(smash.dim());
    for &(i, y) in &smash.labels {
        let g = ga.deg(i);
        let mut mat = Mat::zeros(nw, nw);
        for (col, &j) in w_indices.iter().enumerate() {
            let h = ga.deg(j);
            if action.act(h, x) != Some(y) || ga.groupoid.compose(g, h).is_none() {
                continue;
            }
            let prod = ga.algebra.mul_basis_vec(i, j);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let row = w_pos(k).ok_or_else(|| {
                        MoritaError::Internal("C-action leaves ^xV".into())
                    })?;
                    mat.set(row, col, c.clone());
                }
            }
        }
        left_c_on_w.push(mat);
    }

    // right D-action on ^xV by multiplication in A
    let mut right_d_on_w = Vec::with_capacity(nd);
    for &l in &d_indices {
        let mut mat = Mat::zeros(nw, nw);
        for (col, &j) in w_indices.iter().enumerate() {
            let prod = ga.algebra.mul_basis_vec(j, l);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let row = w_pos(k).ok_or_else(|| {
                        MoritaError::Internal("D-action leaves ^xV".into())
                    })?;
                    mat.set(row, col, c.clone());
                }
            }
        }
        right_d_on_w.push(mat);
    }

    // left D-action on V^x by multiplication in A
    let mut left_d_on_v = Vec::with_capacity(nd);
    for &l in &d_indices {
        let mut mat = Mat::zeros(nv, nv);
        for (col, &j) in v_indices.iter().enumerate() {
            let prod = ga.algebra.mul_basis_vec(l, j);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let row = v_pos(k).ok_or_else(|| {
                        MoritaError::Internal("D-action leaves V^x".into())
                    })?;
                    mat.set(row, col, c.clone());
                }
            }
        }
        left_d_on_v.push(mat);
    }

    // right C-action on V^x: v · (a_g δ_y) = (v a_g)_y
    let mut right_c_on_v = Vec::with_capacity(smash.dim());
    for &(i, y) in &smash.labels {
        let g = ga.deg(i);
        let mut mat = Mat::zeros(nv, nv);
        for (col, &j) in v_indices.iter().enumerate() {
            let h = ga.deg(j);
            let Some(hg) = ga.groupoid.compose(h, g) else {
                continue;
            };
            if action.act(hg, y) != Some(x) {
                continue;
            }
            let prod = ga.algebra.mul_basis_vec(j, i);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let row = v_pos(k).ok_or_else(|| {
                        MoritaError::Internal("C-action leaves V^x".into())
                    })?;
                    mat.set(row, col, c.clone());
                }
            }
        }
        right_c_on_v.push(mat);
    }

    // (v, w) = Σ_{g ∈ G_x} (v w)_g : the G_x-degree part in D coordinates
    let mut pair_round = vec![vec![zero_vec(nd); nw]; nv];
    for (a, &j) in v_indices.iter().enumerate() {
        for (b, &l) in w_indices.iter().enumerate() {
            let prod = ga.algebra.mul_basis_vec(j, l);
            let mut out = zero_vec(nd);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    if let Some(p) = d_pos(k) {
                        out[p] = c.clone();
                    }
                }
            }
            pair_round[a][b] = out;
        }
    }

    // [w, v] = Σ_z (w v_z) δ_z in smash coordinates; v homogeneous lives in
    // V_{z,x} for z = alpha_{h⁻¹}(x)
    let mut pair_square = vec![vec![zero_vec(smash.dim()); nv]; nw];
    for (b, &l) in w_indices.iter().enumerate() {
        for (a, &j) in v_indices.iter().enumerate() {
            let h = ga.deg(j);
            let z = action
                .act(ga.groupoid.inv(h), x)
                .ok_or_else(|| MoritaError::Internal("V^x degree does not reach x".into()))?;
            let prod = ga.algebra.mul_basis_vec(l, j);
            let mut out = zero_vec(smash.dim());
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let pos = smash.label_index(k, z).ok_or_else(|| {
                        MoritaError::Internal("pairing label missing".into())
                    })?;
                    out[pos] = c.clone();
                }
            }
            pair_square[b][a] = out;
        }
    }

    let ctx = MoritaContext {
        smash,
        stab_algebra,
        stab_subspace,
        base_point: x,
        w_indices,
        v_indices,
        left_c_on_w,
        right_d_on_w,
        left_d_on_v,
        right_c_on_v,
        pair_round,
        pair_square,
    };
    ctx.verify()?;
    Ok(ctx)
}

impl MoritaContext {
    /// Apply the pairings to coefficient vectors.
    fn round(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.stab_algebra.dim());
        for (a, cv) in v.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            for (b, cw) in w.iter().enumerate() {
                if !cw.is_zero() {
                    let f = cv * cw;
                    for (k, c) in self.pair_round[a][b].iter().enumerate() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        out
    }

    fn square(&self, w: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.smash.dim());
        for (b, cw) in w.iter().enumerate() {
            if cw.is_zero() {
                continue;
            }
            for (a, cv) in v.iter().enumerate() {
                if !cv.is_zero() {
                    let f = cw * cv;
                    for (k, c) in self.pair_square[b][a].iter().enumerate() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        out
    }

    fn act(mats: &[Mat], coeffs: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(v.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let img = mats[i].apply(v);
                for (r, val) in img.iter().enumerate() {
                    out[r] += c * val;
                }
            }
        }
        out
    }

    /// All Morita-context axioms, exhaustively on basis data: the four
    /// module structures, commuting bimodule actions, bimodule-morphism and
    /// balancedness properties of both pairings, and both associativity
    /// laws.
    fn verify(&self) -> Result<(), MoritaError> {
        let c_alg = &self.smash.algebra;
        let d_alg = &self.stab_algebra;
        ModuleRep::validate(c_alg.clone(), self.left_c_on_w.clone(), Side::Left)?;
        ModuleRep::validate(d_alg.clone(), self.right_d_on_w.clone(), Side::Right)?;
        ModuleRep::validate(d_alg.clone(), self.left_d_on_v.clone(), Side::Left)?;
        ModuleRep::validate(c_alg.clone(), self.right_c_on_v.clone(), Side::Right)?;
        for cm in &self.left_c_on_w {
            for dm in &self.right_d_on_w {
                if cm.mul(dm) != dm.mul(cm) {
                    return Err(MoritaError::Internal("^xV bimodule actions do not commute".into()));
                }
            }
        }
        for dm in &self.left_d_on_v {
            for cm in &self.right_c_on_v {
                if dm.mul(cm) != cm.mul(dm) {
                    return Err(MoritaError::Internal("V^x bimodule actions do not commute".into()));
                }
            }
        }

        let (nw, nv, nd, nc) = (
            self.w_indices.len(),
            self.v_indices.len(),
            d_alg.dim(),
            c_alg.dim(),
        );
        // (,) is a D-bimodule morphism and C-balanced
        for a in 0..nv {
            let v = unit_vec(nv, a);
            for b in 0..nw {
                let w = unit_vec(nw, b);
                for l in 0..nd {
                    let d = unit_vec(nd, l);
                    let lhs = self.round(&Self::act(&self.left_d_on_v, &d, &v), &w);
                    let rhs = d_alg.mul(&d, &self.round(&v, &w));
                    if lhs != rhs {
                        return Err(MoritaError::Internal("(,) is not left D-linear".into()));
                    }
                    let lhs = self.round(&v, &Self::act(&self.right_d_on_w, &d, &w));
                    let rhs = d_alg.mul(&self.round(&v, &w), &d);
                    if lhs != rhs {
                        return Err(MoritaError::Internal("(,) is not right D-linear".into()));
                    }
                }
                for c in 0..nc {
                    let cv = unit_vec(nc, c);
                    let lhs = self.round(&Self::act(&self.right_c_on_v, &cv, &v), &w);
                    let rhs = self.round(&v, &Self::act(&self.left_c_on_w, &cv, &w));
                    if lhs != rhs {
                        return Err(MoritaError::Internal("(,) is not C-balanced".into()));
                    }
                }
            }
        }
        // [,] is a C-bimodule morphism and D-balanced
        for b in 0..nw {
            let w = unit_vec(nw, b);
            for a in 0..nv {
                let v = unit_vec(nv, a);
                for c in 0..nc {
                    let cv = unit_vec(nc, c);
                    let lhs = self.square(&Self::act(&self.left_c_on_w, &cv, &w), &v);
                    let rhs = c_alg.mul(&cv, &self.square(&w, &v));
                    if lhs != rhs {
                        return Err(MoritaError::Internal("[,] is not left C-linear".into()));
                    }
                    let lhs = self.square(&w, &Self::act(&self.right_c_on_v, &cv, &v));
                    let rhs = c_alg.mul(&self.square(&w, &v), &cv);
                    if lhs != rhs {
                        return Err(MoritaError::Internal("[,] is not right C-linear".into()));
                    }
                }
                for l in 0..nd {
                    let d = unit_vec(nd, l);
                    let lhs = self.square(&Self::act(&self.right_d_on_w, &d, &w), &v);
                    let rhs = self.square(&w, &Self::act(&self.left_d_on_v, &d, &v));
                    if lhs != rhs {
                        return Err(MoritaError::Internal("[,] is not D-balanced".into()));
                    }
                }
            }
        }
        // associativity: v · [w, v'] = (v, w) · v'  and  [w, v] · w' = w · (v, w')
        for a in 0..nv {
            let v = unit_vec(nv, a);
            for b in 0..nw {
                let w = unit_vec(nw, b);
                for a2 in 0..nv {
                    let v2 = unit_vec(nv, a2);
                    let lhs = Self::act(&self.right_c_on_v, &self.square(&w, &v2), &v);
                    let rhs = Self::act(&self.left_d_on_v, &self.round(&v, &w), &v2);
                    if lhs != rhs {
                        return Err(MoritaError::Internal(
                            "associativity v·[w,v'] = (v,w)·v' fails".into(),
                        ));
                    }
                }
                for b2 in 0..nw {
                    let w2 = unit_vec(nw, b2);
                    let lhs = Self::act(&self.left_c_on_w, &self.square(&w, &v), &w2);
                    let rhs = Self::act(&self.right_d_on_w, &self.round(&v, &w2), &w);
                    if lhs != rhs {
                        return Err(MoritaError::Internal(
                            "associativity [w,v]·w' = w·(v,w') fails".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Surjectivity of the pairings and the per-point criterion
/// `Σ_{alpha_g(y)=x} A_{g⁻¹} A_g = A_{id_{e_y}}`, with the literally
/// printed global right-hand side `Σ_g A_{d(g)}` reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessReport {
    pub square_surjective: bool,
    pub round_surjective: bool,
    /// (carrier point, criterion at that point)
    pub per_point: Vec<(usize, bool)>,
    pub per_point_all: bool,
    pub literal_paper_criterion: bool,
    pub morita_equivalent: bool,
}

pub fn strictness_report(
    ctx: &MoritaContext,
    ga: &GradedAlgebra,
    action: &GSet,
) -> Result<StrictnessReport, MoritaError> {
    let square_image = Subspace::span(
        ctx.smash.dim(),
        ctx.pair_square.iter().flatten().cloned(),
    );
    let square_surjective = square_image.dim() == ctx.smash.dim();
    let round_image = Subspace::span(
        ctx.stab_algebra.dim(),
        ctx.pair_round.iter().flatten().cloned(),
    );
    let round_surjective = round_image.dim() == ctx.stab_algebra.dim();

    let x = ctx.base_point;
    let mut per_point = Vec::new();
    let mut literal_all = true;
    // Σ_g A_{d(g)} with g over all morphisms: the sum of all identity components
    let mut global = Subspace::zero(ga.dim());
    for e in ga.groupoid.objects() {
        global = global.sum(&ga.component(ga.groupoid.identity_of(e)));
    }
    for y in 0..action.n_points() {
        let e_y = action.object_of(y)?;
        let mut lhs = Subspace::zero(ga.dim());
        for g in ga.groupoid.morphisms() {
            if action.act(g, y) == Some(x) {
                let prod = ga
                    .algebra
                    .product_span(&ga.component(ga.groupoid.inv(g)), &ga.component(g))?;
                lhs = lhs.sum(&prod);
            }
        }
        let ok = lhs == ga.component(ga.groupoid.identity_of(e_y));
        per_point.push((y, ok));
        if lhs != global {
            literal_all = false;
        }
    }
    let per_point_all = per_point.iter().all(|&(_, ok)| ok);
    Ok(StrictnessReport {
        square_surjective,
        round_surjective,
        per_point,
        per_point_all,
        literal_paper_criterion: literal_all,
        morita_equivalent: square_surjective && round_surjective,
    })
}

/// Seeded random left module over a smash algebra: the cyclic submodule of
/// the regular module generated by a small random vector, re-based along
/// the idempotent decomposition so the result is to_xgraded-compatible.
/// Returns `None` when the submodule exceeds `max_dim`.
pub fn random_cyclic_module<R: Rng>(
    smash: &SmashAlgebra,
    rng: &mut R,
    max_dim: usize,
) -> Option<ModuleRep> {
    let n = smash.dim();
    let seed_vec: Vec<Scalar> = (0..n)
        .map(|_| crate::scalar::int(rng.gen_range(-2..=2i64)))
        .collect();
    // closure of the cyclic span under left multiplication by the basis
    let mut space = Subspace::span(n, vec![seed_vec]);
    loop {
        let mut next = space.clone();
        for b in 0..n {
            for v in space.basis() {
                let prod = smash
                    .algebra
                    .mul(&unit_vec(n, b), v);
                next = next.sum(&Subspace::span(n, vec![prod]));
            }
        }
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    if space.dim() > max_dim {
        return None;
    }
    // aligned basis: images of the idempotents, concatenated
    let mut aligned: Vec<Vec<Scalar>> = Vec::new();
    for e in smash.graded.groupoid.objects() {
        for &x in smash.action.fiber(e) {
            let q = smash.algebra.left_mult_matrix(&smash.unit_delta(e, x));
            let images: Vec<Vec<Scalar>> = space.basis().iter().map(|v| q.apply(v)).collect();
            let part = Subspace::span(n, images);
            aligned.extend(part.basis().iter().cloned());
        }
    }
    if aligned.len() != space.dim() {
        return None;
    }
    let m = aligned.len();
    // action matrices in the aligned basis
    let basis_space = Subspace::span(n, aligned.clone());
    let to_coords = |v: &[Scalar]| -> Option<Vec<Scalar>> {
        // aligned vectors are not echelon-ordered; solve against the matrix
        let mut mat = Mat::zeros(n, m);
        for (j, b) in aligned.iter().enumerate() {
            for i in 0..n {
                mat.set(i, j, b[i].clone());
            }
        }
        mat.solve(v)
    };
    debug_assert_eq!(basis_space.dim(), m);
    let mut act = Vec::with_capacity(n);
    for b in 0..n {
        let mut mat = Mat::zeros(m, m);
        for (col, w) in aligned.iter().enumerate() {
            let img = smash.algebra.mul(&unit_vec(n, b), w);
            let coords = to_coords(&img)?;
            for (row, c) in coords.iter().enumerate() {
                mat.set(row, col, c.clone());
            }
        }
        act.push(mat);
    }
    ModuleRep::validate(smash.algebra.clone(), act, Side::Left).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_unit_algebra;
    use crate::graded::{groupoid_algebra, GradedAlgebra};
    use crate::groupoid::Groupoid;
    use crate::gset::ActionTables;
    use rand::SeedableRng;

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
    fn regular_module_is_xgraded() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let smash = smash_product(&ga, &x).unwrap();
        let regular = ModuleRep::regular_left(&smash.algebra);
        let xg = to_xgraded(&regular, &ga, &smash).unwrap();
        // deg of basis (i, y) is alpha_{deg i}(y)
        for (pos, &(i, y)) in smash.labels.iter().enumerate() {
            let expected = x.act(ga.deg(i), y).unwrap();
            assert_eq!(xg.deg[pos], expected);
        }
        assert!(roundtrip_check(&xg, &ga, &smash).unwrap());
    }

    #[test]
    fn misgraded_module_is_rejected() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        // constant degree map on the regular A-module is incompatible
        let base = ModuleRep::regular_left(&ga.algebra);
        let err = XGradedModule::validate(&ga, &x, base, vec![0, 0, 0, 0]).unwrap_err();
        assert!(matches!(err, MoritaError::XGrading { .. }));
    }

    #[test]
    fn zero_module_roundtrips() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let smash = smash_product(&ga, &x).unwrap();
        let base = ModuleRep::validate(ga.algebra.clone(), vec![Mat::zeros(0, 0); 4], Side::Left)
            .unwrap();
        let xg = XGradedModule::validate(&ga, &x, base, vec![]).unwrap();
        assert!(roundtrip_check(&xg, &ga, &smash).unwrap());
    }

    #[test]
    fn seeded_random_modules_roundtrip() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let smash = smash_product(&ga, &x).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut produced = 0;
        while produced < 10 {
            let Some(module) = random_cyclic_module(&smash, &mut rng, 6) else {
                continue;
            };
            let xg = to_xgraded(&module, &ga, &smash).unwrap();
            assert!(roundtrip_check(&xg, &ga, &smash).unwrap());
            let back = to_smash_module(&xg, &smash).unwrap();
            assert_eq!(back, module);
            produced += 1;
        }
    }

    #[test]
    fn stabilizer_subalgebra_on_m2() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let (sub, alg, indices) = stabilizer_subalgebra(&ga, &x, 0).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(alg.dim(), 1);
        assert_eq!(indices, vec![0]); // span{E11}
    }

    #[test]
    fn stabilizer_subalgebra_with_trivial_action() {
        // Z/2 acting trivially on a point: A^{G_x} = whole group algebra
        let z2 = Groupoid::cyclic(2).unwrap();
        let kz2 = groupoid_algebra(&z2);
        let x = GSet::identity_action(&z2, vec![vec![0]], 1).unwrap();
        let (_, alg, _) = stabilizer_subalgebra(&kz2, &x, 0).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn hom_components_on_m2() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        // V_{x,x} = A^{G_x}
        let vxx = hom_component(&ga, &x, 0, 0).unwrap();
        let (stab, _, _) = stabilizer_subalgebra(&ga, &x, 0).unwrap();
        assert_eq!(vxx, stab);
        // V_{x,y} = span{E21}
        let vxy = hom_component(&ga, &x, 0, 1).unwrap();
        assert_eq!(vxy, Subspace::span(4, vec![unit_vec(4, 2)]));
    }

    #[test]
    fn m2_context_is_strict() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let ctx = build_morita_context(&ga, &x, 0).unwrap();
        assert_eq!(ctx.w_indices, vec![0, 2]); // E11, E21
        assert_eq!(ctx.v_indices, vec![0, 1]); // E11, E12
        // [E21, E12] = E22 δ_y
        let w = unit_vec(2, 1);
        let v = unit_vec(2, 1);
        let sq = ctx.square(&w, &v);
        let e22y = ctx.smash.label_index(3, 1).unwrap();
        assert_eq!(sq, unit_vec(ctx.smash.dim(), e22y));
        // (E12, E21) = E11
        let r = ctx.round(&unit_vec(2, 1), &unit_vec(2, 1));
        assert_eq!(r, vec![crate::scalar::one()]);
        let report = strictness_report(&ctx, &ga, &x).unwrap();
        assert!(report.square_surjective);
        assert!(report.round_surjective);
        assert!(report.per_point_all);
        assert!(!report.literal_paper_criterion);
        assert!(report.morita_equivalent);
    }

    #[test]
    fn zero_off_diagonal_control_is_not_strict() {
        // Q x Q graded by pair(2) with A_g = A_{g⁻¹} = 0
        let p2 = Groupoid::pair(2).unwrap();
        let mut mult = MultTable::new();
        mult.insert((0, 0), vec![(0, crate::scalar::one())]);
        mult.insert((1, 1), vec![(1, crate::scalar::one())]);
        let qq = StructureAlgebra::validate(
            2,
            mult,
            vec![crate::scalar::one(), crate::scalar::one()],
        )
        .unwrap();
        let ga = GradedAlgebra::validate(qq, p2.clone(), vec![0, 3]).unwrap();
        let x = xef(&p2);
        let ctx = build_morita_context(&ga, &x, 0).unwrap();
        let report = strictness_report(&ctx, &ga, &x).unwrap();
        assert!(!report.square_surjective);
        assert!(!report.per_point_all);
        assert!(!report.morita_equivalent);
    }

    #[test]
    fn morphism_compatibility_both_ways() {
        let ga = m2_graded();
        let x = xef(&ga.groupoid);
        let smash = smash_product(&ga, &x).unwrap();
        let regular = ModuleRep::regular_left(&smash.algebra);
        let xg = to_xgraded(&regular, &ga, &smash).unwrap();
        // any smash-equivariant endomorphism also commutes with the A-action
        // and preserves the grading; right multiplications are examples
        for b in 0..smash.dim() {
            let map = smash.algebra.right_mult_matrix(&unit_vec(smash.dim(), b));
            assert!(map_commutes(&map, &regular, &regular));
            assert!(map_commutes(&map, &xg.base, &xg.base));
        }
    }
}
