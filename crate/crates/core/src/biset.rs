//! Carriers with two commuting groupoid actions, their orbit G-sets, and
//! the groupoid of equivariant partial bijections.

use crate::groupoid::{Groupoid, GroupoidTables};
use crate::gset::{check_morphism, ActionError, ActionTables, GSet, GSetMorphism, MorphismClass};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BisetError {
    #[error("the two actions live on different carriers")]
    CarrierMismatch,
    #[error("fiber invariance fails: morphism {mor} of the {side} action moves point {x} out of the other action's fiber")]
    NotInvariant { side: &'static str, mor: usize, x: usize },
    #[error("actions do not commute at (g={g}, k={k}, x={x})")]
    NotCommuting { g: usize, k: usize, x: usize },
    #[error("operation requires the K-action to be split")]
    NotSplitK,
    #[error("orbit action is ill-defined at (g={g}, orbit of {x})")]
    OrbitIllDefined { g: usize, x: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl BisetError {
    pub fn code(&self) -> &'static str {
        match self {
            BisetError::CarrierMismatch => "E_CARRIER_MISMATCH",
            BisetError::NotInvariant { .. } => "E_NOT_INVARIANT",
            BisetError::NotCommuting { .. } => "E_NOT_COMMUTING",
            BisetError::NotSplitK => "E_NOT_SPLIT_K",
            BisetError::OrbitIllDefined { .. } => "E_ORBIT_ILL_DEFINED",
            BisetError::Action(e) => e.code(),
        }
    }
}

/// One carrier with a G-action (`alpha`, fibers `X_•`) and a K-action
/// (`beta`, fibers `Y_•`) satisfying the mutual-invariance and commutation
/// conditions.
#[derive(Debug, Clone)]
pub struct BiSet {
    pub g_action: GSet,
    pub k_action: GSet,
    pub split: bool,
}

impl BiSet {
    pub fn validate(g_action: GSet, k_action: GSet) -> Result<BiSet, BisetError> {
        if g_action.n_points() != k_action.n_points() {
            return Err(BisetError::CarrierMismatch);
        }
        // (i) each Y_k is alpha-invariant and each X_g is beta-invariant
        for k in k_action.groupoid().objects() {
            let fiber = k_action.fiber(k).to_vec();
            if !g_action.is_invariant(&fiber) {
                let (mor, x) = invariance_witness(&g_action, &fiber);
                return Err(BisetError::NotInvariant { side: "G", mor, x });
            }
        }
        for e in g_action.groupoid().objects() {
            let fiber = g_action.fiber(e).to_vec();
            if !k_action.is_invariant(&fiber) {
                let (mor, x) = invariance_witness(&k_action, &fiber);
                return Err(BisetError::NotInvariant { side: "K", mor, x });
            }
        }
        // (ii) alpha_g ∘ beta_k = beta_k ∘ alpha_g on X_{g⁻¹} ∩ Y_{k⁻¹}
        for g in g_action.groupoid().morphisms() {
            for k in k_action.groupoid().morphisms() {
                for x in 0..g_action.n_points() {
                    let (Some(gx), Some(kx)) = (g_action.act(g, x), k_action.act(k, x)) else {
                        continue;
                    };
                    if k_action.act(k, gx) != g_action.act(g, kx) {
                        return Err(BisetError::NotCommuting { g, k, x });
                    }
                }
            }
        }
        let split = g_action.is_split() && k_action.is_split();
        Ok(BiSet {
            g_action,
            k_action,
            split,
        })
    }

    pub fn n_points(&self) -> usize {
        self.g_action.n_points()
    }
}

fn invariance_witness(action: &GSet, fiber: &[usize]) -> (usize, usize) {
    let inside = |x: usize| fiber.contains(&x);
    for mor in action.groupoid().morphisms() {
        for &x in fiber {
            if let Some(y) = action.act(mor, x) {
                if !inside(y) {
                    return (mor, x);
                }
            }
        }
    }
    (0, 0)
}

/// The G-action `theta^k` on the K-fiber `Y_k`, reindexed, together with
/// the classification of `beta_k : Y_{k⁻¹} -> Y_k` as a map of G-sets.
#[derive(Debug, Clone)]
pub struct RestrictedAction {
    /// `theta^k` on the reindexed carrier `Y_k`.
    pub theta: GSet,
    /// new index -> carrier index
    pub points: Vec<usize>,
    /// classification of `beta_k` between `theta^{k⁻¹}` and `theta^k`
    pub beta_class: MorphismClass,
}

/// Lemma: each `Y_k` is a G-set and `beta_k` is an isomorphism of G-sets.
pub fn restricted_action(biset: &BiSet, k: usize) -> Result<RestrictedAction, BisetError> {
    let kg = biset.k_action.groupoid();
    let y_k = biset.k_action.fiber(kg.ran(k)).to_vec();
    let y_ki = biset.k_action.fiber(kg.dom(k)).to_vec();
    let (theta, points) = biset.g_action.sub_gset(&y_k)?;
    let (theta_inv, points_inv) = biset.g_action.sub_gset(&y_ki)?;
    // beta_k in the reindexed carriers
    let map: Vec<usize> = points_inv
        .iter()
        .map(|&x| {
            let img = biset.k_action.act(k, x).expect("beta_k total on Y_{k^-1}");
            points.binary_search(&img).expect("beta_k lands in Y_k")
        })
        .collect();
    let beta_class = check_morphism(&theta_inv, &theta, &map);
    Ok(RestrictedAction {
        theta,
        points,
        beta_class,
    })
}

/// The orbit G-set `O^K` of Lemma 4.5-style data: K-orbits carrying the
/// induced G-action, with the projection onto orbits.
#[derive(Debug, Clone)]
pub struct OrbitGSet {
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// the induced action `lambda` on orbit indices
    pub lambda: GSet,
    pub projection: GSetMorphism,
}

pub fn orbit_gset(biset: &BiSet) -> Result<OrbitGSet, BisetError> {
    if !biset.k_action.is_split() {
        return Err(BisetError::NotSplitK);
    }
    let (orbits, orbit_of) = biset.k_action.orbit_partition()?;
    let g = biset.g_action.groupoid().clone();
    let n_orbits = orbits.len();
    // O^K_e = {o(x) : x in X_e}
    let fibers: Vec<Vec<usize>> = g
        .objects()
        .map(|e| {
            let mut v: Vec<usize> = biset
                .g_action
                .fiber(e)
                .iter()
                .map(|&x| orbit_of[x])
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    // lambda_g(o(x)) = o(alpha_g(x)); check independence of the representative
    let mut maps: Vec<Vec<(usize, usize)>> = Vec::with_capacity(g.n_morphisms());
    for mor in g.morphisms() {
        let mut map: Vec<(usize, usize)> = Vec::new();
        for &o in &fibers[g.dom(mor)] {
            let mut image: Option<usize> = None;
            for &x in &orbits[o] {
                if let Some(y) = biset.g_action.act(mor, x) {
                    let oy = orbit_of[y];
                    match image {
                        None => image = Some(oy),
                        Some(prev) if prev != oy => {
                            return Err(BisetError::OrbitIllDefined { g: mor, x })
                        }
                        _ => {}
                    }
                }
            }
            let img =
                image.ok_or(BisetError::OrbitIllDefined { g: mor, x: orbits[o][0] })?;
            map.push((o, img));
        }
        maps.push(map);
    }
    let lambda = GSet::validate(
        g,
        ActionTables {
            n_points: n_orbits,
            fibers,
            maps,
        },
    )?;
    let projection = GSetMorphism::check(biset.g_action.clone(), lambda.clone(), orbit_of.clone())
        .map_err(|_| BisetError::OrbitIllDefined { g: 0, x: 0 })?;
    Ok(OrbitGSet {
        orbits,
        orbit_of,
        lambda,
        projection,
    })
}

/// Translation biset: G acting on itself by left translation, a wide
/// subgroupoid H by right translation. Returns the biset and the morphism
/// map from the extracted `H` back into the parent.
pub fn translation_biset(parent: &Groupoid, sub: &crate::groupoid::Subgroupoid) -> Result<(BiSet, Vec<usize>), BisetError> {
    let alpha = GSet::left_translation(parent);
    let (beta, mor_map) = GSet::right_translation(parent, sub)?;
    let biset = BiSet::validate(alpha, beta)?;
    Ok((biset, mor_map))
}

/// A partial bijection of the carrier with invariant domain and image.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialBijection {
    pub dom: Vec<usize>,
    pub im: Vec<usize>,
    /// pairs (x, rho(x)), sorted by x
    pub map: Vec<(usize, usize)>,
}

/// Carrier-size guard for [`partial_bijection_groupoid`].
pub const PARTIAL_BIJECTION_GUARD: usize = 8;

/// The groupoid `I_G(X)` of G-set isomorphisms between invariant subsets,
/// plus its tautological action on the carrier (`Y_rho = im(rho)`,
/// `beta_rho = rho`). Objects are all alpha-invariant subsets.
pub fn partial_bijection_groupoid(
    action: &GSet,
    max_points: usize,
) -> Result<(Groupoid, GSet, Vec<PartialBijection>), ActionError> {
    let n = action.n_points();
    if n > max_points {
        return Err(ActionError::TooLarge {
            size: n,
            max: max_points,
        });
    }
    // enumerate invariant subsets, in subset-mask order
    let mut objects: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let pts: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        if action.is_invariant(&pts) {
            objects.push(pts);
        }
    }
    let obj_index = |pts: &[usize]| objects.iter().position(|o| o == pts).unwrap();

    // enumerate equivariant bijections between invariant subsets of equal size
    let mut morphisms: Vec<PartialBijection> = Vec::new();
    for dom in &objects {
        for im in &objects {
            if dom.len() != im.len() {
                continue;
            }
            let mut images = vec![usize::MAX; dom.len()];
            enumerate_equivariant(action, dom, im, 0, &mut images, &mut |images| {
                if is_gset_iso(action, dom, images) {
                    morphisms.push(PartialBijection {
                        dom: dom.clone(),
                        im: im.clone(),
                        map: dom.iter().copied().zip(images.iter().copied()).collect(),
                    });
                }
            });
        }
    }
    morphisms.sort();
    morphisms.dedup();

    let mor_index = |p: &PartialBijection| morphisms.binary_search(p).unwrap();
    let n_mor = morphisms.len();
    let mut comp = vec![None; n_mor * n_mor];
    for (i, rho) in morphisms.iter().enumerate() {
        for (j, sigma) in morphisms.iter().enumerate() {
            // rho ∘ sigma defined iff dom(rho) = im(sigma)
            if rho.dom == sigma.im {
                let map: Vec<(usize, usize)> = sigma
                    .map
                    .iter()
                    .map(|&(x, y)| {
                        let z = rho.map.iter().find(|&&(a, _)| a == y).unwrap().1;
                        (x, z)
                    })
                    .collect();
                let prod = PartialBijection {
                    dom: sigma.dom.clone(),
                    im: rho.im.clone(),
                    map,
                };
                comp[i * n_mor + j] = Some(mor_index(&prod));
            }
        }
    }
    let inv: Vec<usize> = morphisms
        .iter()
        .map(|rho| {
            let mut map: Vec<(usize, usize)> = rho.map.iter().map(|&(x, y)| (y, x)).collect();
            map.sort_unstable();
            mor_index(&PartialBijection {
                dom: rho.im.clone(),
                im: rho.dom.clone(),
                map,
            })
        })
        .collect();
    let identity: Vec<usize> = objects
        .iter()
        .map(|o| {
            mor_index(&PartialBijection {
                dom: o.clone(),
                im: o.clone(),
                map: o.iter().map(|&x| (x, x)).collect(),
            })
        })
        .collect();
    let groupoid = Groupoid::validate(GroupoidTables {
        n_objects: objects.len(),
        dom: morphisms.iter().map(|p| obj_index(&p.dom)).collect(),
        ran: morphisms.iter().map(|p| obj_index(&p.im)).collect(),
        comp,
        inv,
        identity,
    })?;

    // tautological action on the carrier
    let fibers: Vec<Vec<usize>> = objects.clone();
    let maps: Vec<Vec<(usize, usize)>> = morphisms.iter().map(|p| p.map.clone()).collect();
    let tautological = GSet::validate(
        groupoid.clone(),
        ActionTables {
            n_points: n,
            fibers,
            maps,
        },
    )?;
    Ok((groupoid, tautological, morphisms))
}

/// Full morphism check for a completed candidate bijection: preserves every
/// fiber and commutes with every `alpha_g` on the domain.
fn is_gset_iso(action: &GSet, dom: &[usize], images: &[usize]) -> bool {
    let image_of = |x: usize| images[dom.iter().position(|&d| d == x).unwrap()];
    for e in action.groupoid().objects() {
        for (&x, &y) in dom.iter().zip(images) {
            let in_x = action.fiber(e).binary_search(&x).is_ok();
            let in_y = action.fiber(e).binary_search(&y).is_ok();
            if in_x != in_y {
                return false;
            }
        }
    }
    for g in action.groupoid().morphisms() {
        for (&x, &y) in dom.iter().zip(images) {
            match (action.act(g, x), action.act(g, y)) {
                (Some(gx), Some(gy)) => {
                    if image_of(gx) != gy {
                        return false;
                    }
                }
                (None, None) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Backtracking enumeration of bijections `dom -> im` that preserve fibers
/// and commute with the action. Equivariance propagates choices along
/// orbits, so contradictions prune early.
fn enumerate_equivariant(
    action: &GSet,
    dom: &[usize],
    im: &[usize],
    pos: usize,
    images: &mut Vec<usize>,
    emit: &mut dyn FnMut(&Vec<usize>),
) {
    if pos == dom.len() {
        emit(images);
        return;
    }
    if images[pos] != usize::MAX {
        enumerate_equivariant(action, dom, im, pos + 1, images, emit);
        return;
    }
    let x = dom[pos];
    'candidates: for &y in im {
        if images.contains(&y) {
            continue;
        }
        // fiber preservation
        for e in action.groupoid().objects() {
            let in_x = action.fiber(e).binary_search(&x).is_ok();
            let in_y = action.fiber(e).binary_search(&y).is_ok();
            if in_x != in_y {
                continue 'candidates;
            }
        }
        // propagate along the action and collect forced assignments
        let mut forced: Vec<(usize, usize)> = vec![(x, y)];
        let mut trial = images.clone();
        trial[pos] = y;
        let mut queue = vec![(x, y)];
        let mut consistent = true;
        while let Some((a, b)) = queue.pop() {
            for g in action.groupoid().morphisms() {
                let (Some(ga), Some(gb)) = (action.act(g, a), action.act(g, b)) else {
                    if action.act(g, a).is_some() != action.act(g, b).is_some() {
                        consistent = false;
                        break;
                    }
                    continue;
                };
                let Some(ga_pos) = dom.iter().position(|&d| d == ga) else {
                    consistent = false;
                    break;
                };
                if !im.contains(&gb) {
                    consistent = false;
                    break;
                }
                if trial[ga_pos] == usize::MAX {
                    if trial.contains(&gb) {
                        consistent = false;
                        break;
                    }
                    trial[ga_pos] = gb;
                    forced.push((ga, gb));
                    queue.push((ga, gb));
                } else if trial[ga_pos] != gb {
                    consistent = false;
                    break;
                }
            }
            if !consistent {
                break;
            }
        }
        if consistent {
            let saved = images.clone();
            *images = trial;
            enumerate_equivariant(action, dom, im, pos + 1, images, emit);
            *images = saved;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{Groupoid, Subgroupoid};
    use crate::gset::{ActionTables, GSet};

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
    fn translation_biset_is_split() {
        let p2 = Groupoid::pair(2).unwrap();
        let all = Subgroupoid::all(&p2);
        let (biset, _) = translation_biset(&p2, &all).unwrap();
        assert!(biset.split);
    }

    #[test]
    fn identity_k_action_gives_valid_biset() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        let t = Groupoid::trivial();
        let k = GSet::identity_action(&t, vec![vec![0, 1]], 2).unwrap();
        let biset = BiSet::validate(x, k).unwrap();
        assert!(biset.split);
    }

    #[test]
    fn non_commuting_actions_are_rejected() {
        // Z/2 x Z/2 on three points: alpha swaps {0,1}, beta swaps {1,2};
        // the transpositions do not commute.
        let z2 = Groupoid::cyclic(2).unwrap();
        let alpha = GSet::validate(
            z2.clone(),
            ActionTables {
                n_points: 3,
                fibers: vec![vec![0, 1, 2]],
                maps: vec![
                    vec![(0, 0), (1, 1), (2, 2)],
                    vec![(0, 1), (1, 0), (2, 2)],
                ],
            },
        )
        .unwrap();
        let beta = GSet::validate(
            z2,
            ActionTables {
                n_points: 3,
                fibers: vec![vec![0, 1, 2]],
                maps: vec![
                    vec![(0, 0), (1, 1), (2, 2)],
                    vec![(0, 0), (1, 2), (2, 1)],
                ],
            },
        )
        .unwrap();
        let err = BiSet::validate(alpha, beta).unwrap_err();
        assert!(matches!(err, BisetError::NotCommuting { .. }));
        assert_eq!(err.code(), "E_NOT_COMMUTING");
    }

    #[test]
    fn restricted_action_beta_is_iso() {
        let p2 = Groupoid::pair(2).unwrap();
        let all = Subgroupoid::all(&p2);
        let (biset, _) = translation_biset(&p2, &all).unwrap();
        for k in biset.k_action.groupoid().morphisms() {
            let r = restricted_action(&biset, k).unwrap();
            assert!(r.beta_class.is_iso(), "beta_{k} is not an iso");
            assert_eq!(r.points.len(), 2);
            assert!(r.theta.is_split());
        }
    }

    #[test]
    fn orbit_gset_of_translation_biset_has_one_orbit_per_object() {
        let p2 = Groupoid::pair(2).unwrap();
        let all = Subgroupoid::all(&p2);
        let (biset, _) = translation_biset(&p2, &all).unwrap();
        let o = orbit_gset(&biset).unwrap();
        assert_eq!(o.orbits.len(), 2);
        assert!(o.lambda.is_split());
        assert!(o.projection.epi);
        // each orbit sits inside one G-fiber (R_e)
        for block in &o.orbits {
            let e = biset.g_action.groupoid().ran(block[0]);
            assert!(block.iter().all(|&l| biset.g_action.groupoid().ran(l) == e));
        }
    }

    #[test]
    fn orbit_gset_with_identity_k_is_the_original() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        let t = Groupoid::trivial();
        let k = GSet::identity_action(&t, vec![vec![0, 1]], 2).unwrap();
        let biset = BiSet::validate(x.clone(), k).unwrap();
        let o = orbit_gset(&biset).unwrap();
        assert_eq!(o.orbits.len(), 2);
        for e in p2.objects() {
            assert_eq!(o.lambda.fiber(e).len(), x.fiber(e).len());
        }
    }

    #[test]
    fn partial_bijections_on_a_point() {
        let t = Groupoid::trivial();
        let x = GSet::identity_action(&t, vec![vec![0]], 1).unwrap();
        let (ig, taut, morphisms) = partial_bijection_groupoid(&x, 8).unwrap();
        // objects: {} and {0}; morphisms: empty map and identity
        assert_eq!(ig.n_objects(), 2);
        assert_eq!(ig.n_morphisms(), 2);
        assert_eq!(morphisms.len(), 2);
        assert!(taut.is_split());
    }

    #[test]
    fn partial_bijections_on_xef_are_only_identities() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        let (ig, taut, _) = partial_bijection_groupoid(&x, 8).unwrap();
        // invariant subsets: {} and {0,1}; transitivity forces rho = id on X
        assert_eq!(ig.n_objects(), 2);
        assert_eq!(ig.n_morphisms(), 2);
        assert!(ig.morphisms().all(|m| ig.is_identity(m)));
        assert!(taut.is_split());
    }

    #[test]
    fn guard_rejects_large_carriers() {
        let t = Groupoid::trivial();
        let x = GSet::identity_action(&t, vec![(0..9).collect()], 9).unwrap();
        assert!(matches!(
            partial_bijection_groupoid(&x, PARTIAL_BIJECTION_GUARD),
            Err(ActionError::TooLarge { .. })
        ));
    }
}
