//! Groupoid actions on finite sets.
//!
//! An action carries, for each object `e`, a fiber `X_e` (a subset of the
//! carrier, with `X_g := X_{ran(g)}`), and for each morphism `g` a bijection
//! `alpha_g : X_{dom(g)} -> X_{ran(g)}`. Fibers may overlap; the `split`
//! flag records whether they partition the carrier. Carriers are dense
//! integer indices, maps are stored totally with `None` off the domain
//! fiber.

use crate::groupoid::{Groupoid, GroupoidError, Subgroupoid};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("alpha({g}) is not a bijection X_dom -> X_ran: {detail}")]
    NotBijective { g: usize, detail: String },
    #[error("alpha(id_{e}) moves point {x}")]
    IdentityAction { e: usize, x: usize },
    #[error("composition condition fails: alpha({g})(alpha({h})({x})) != alpha({g}{h})({x})")]
    Cocycle { g: usize, h: usize, x: usize },
    #[error("operation requires a split action")]
    NotSplit,
    #[error("carrier of size {size} exceeds the guard ({max})")]
    TooLarge { size: usize, max: usize },
    #[error("malformed action tables: {0}")]
    BadTables(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl ActionError {
    pub fn code(&self) -> &'static str {
        match self {
            ActionError::NotBijective { .. } => "E_NOT_BIJECTIVE",
            ActionError::IdentityAction { .. } => "E_IDENTITY_ACTION",
            ActionError::Cocycle { .. } => "E_COCYCLE",
            ActionError::NotSplit => "E_NOT_SPLIT",
            ActionError::TooLarge { .. } => "E_TOO_LARGE",
            ActionError::BadTables(_) => "E_BAD_TABLES",
            ActionError::Groupoid(e) => e.code(),
        }
    }
}

/// Raw input for [`GSet::validate`]: `maps[g]` lists `(point, image)` pairs
/// and must be total exactly on the fiber of `dom(g)`.
#[derive(Debug, Clone)]
pub struct ActionTables {
    pub n_points: usize,
    pub fibers: Vec<Vec<usize>>,
    pub maps: Vec<Vec<(usize, usize)>>,
}

/// A validated groupoid action on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    groupoid: Groupoid,
    n_points: usize,
    fibers: Vec<Vec<usize>>,
    alpha: Vec<Vec<Option<usize>>>,
    split: bool,
}

impl GSet {
    pub fn validate(groupoid: Groupoid, tables: ActionTables) -> Result<GSet, ActionError> {
        let n = tables.n_points;
        if tables.fibers.len() != groupoid.n_objects() {
            return Err(ActionError::BadTables(
                "one fiber per object is required".into(),
            ));
        }
        if tables.maps.len() != groupoid.n_morphisms() {
            return Err(ActionError::BadTables(
                "one map per morphism is required".into(),
            ));
        }
        let mut fibers: Vec<Vec<usize>> = tables.fibers;
        for f in &mut fibers {
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&x| x >= n) {
                return Err(ActionError::BadTables("fiber point out of range".into()));
            }
        }

        let mut alpha: Vec<Vec<Option<usize>>> = Vec::with_capacity(groupoid.n_morphisms());
        for g in groupoid.morphisms() {
            let src = &fibers[groupoid.dom(g)];
            let dst = &fibers[groupoid.ran(g)];
            let mut map = vec![None; n];
            let mut hit = vec![false; n];
            for &(x, y) in &tables.maps[g] {
                if x >= n || y >= n {
                    return Err(ActionError::BadTables(format!(
                        "map for morphism {g} mentions an out-of-range point"
                    )));
                }
                if src.binary_search(&x).is_err() {
                    return Err(ActionError::NotBijective {
                        g,
                        detail: format!("point {x} is outside the domain fiber"),
                    });
                }
                if dst.binary_search(&y).is_err() {
                    return Err(ActionError::NotBijective {
                        g,
                        detail: format!("image {y} is outside the range fiber"),
                    });
                }
                if map[x].is_some() {
                    return Err(ActionError::NotBijective {
                        g,
                        detail: format!("point {x} is mapped twice"),
                    });
                }
                if hit[y] {
                    return Err(ActionError::NotBijective {
                        g,
                        detail: format!("image {y} is hit twice"),
                    });
                }
                map[x] = Some(y);
                hit[y] = true;
            }
            if let Some(&x) = src.iter().find(|&&x| map[x].is_none()) {
                return Err(ActionError::NotBijective {
                    g,
                    detail: format!("point {x} of the domain fiber is unmapped"),
                });
            }
            if src.len() != dst.len() {
                return Err(ActionError::NotBijective {
                    g,
                    detail: "fibers have different sizes".into(),
                });
            }
            alpha.push(map);
        }

        // identity morphisms act as the identity
        for e in groupoid.objects() {
            let id = groupoid.identity_of(e);
            for &x in &fibers[e] {
                if alpha[id][x] != Some(x) {
                    return Err(ActionError::IdentityAction { e, x });
                }
            }
        }

        // cocycle condition on all composable pairs
        for g in groupoid.morphisms() {
            for h in groupoid.morphisms() {
                let Some(gh) = groupoid.compose(g, h) else {
                    continue;
                };
                for &x in &fibers[groupoid.dom(h)] {
                    let step = alpha[h][x].and_then(|y| alpha[g][y]);
                    if step != alpha[gh][x] {
                        return Err(ActionError::Cocycle { g, h, x });
                    }
                }
            }
        }

        let mut seen = vec![0usize; n];
        for f in &fibers {
            for &x in f {
                seen[x] += 1;
            }
        }
        let split = seen.iter().all(|&c| c == 1);

        Ok(GSet {
            groupoid,
            n_points: n,
            fibers,
            alpha,
            split,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn fiber(&self, e: usize) -> &[usize] {
        &self.fibers[e]
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    /// `alpha_g(x)`, defined when `x` lies in the fiber of `dom(g)`.
    pub fn act(&self, g: usize, x: usize) -> Option<usize> {
        self.alpha[g][x]
    }

    /// The object whose fiber contains `x` (split actions).
    pub fn object_of(&self, x: usize) -> Result<usize, ActionError> {
        if !self.split {
            return Err(ActionError::NotSplit);
        }
        self.groupoid
            .objects()
            .find(|&e| self.fibers[e].binary_search(&x).is_ok())
            .ok_or_else(|| ActionError::BadTables(format!("point {x} is in no fiber")))
    }

    /// Orbit of `x`: `{alpha_g(x) : g in D_e}` for `x in X_e`.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, ActionError> {
        let e = self.object_of(x)?;
        let mut out: Vec<usize> = self
            .groupoid
            .d_fiber(e)?
            .into_iter()
            .filter_map(|g| self.alpha[g][x])
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Orbit partition; blocks sorted by minimal point.
    pub fn orbit_partition(&self) -> Result<(Vec<Vec<usize>>, Vec<usize>), ActionError> {
        if !self.split {
            return Err(ActionError::NotSplit);
        }
        let mut block_of = vec![usize::MAX; self.n_points];
        let mut blocks = Vec::new();
        for x in 0..self.n_points {
            if block_of[x] != usize::MAX {
                continue;
            }
            let orb = self.orbit(x)?;
            let id = blocks.len();
            for &y in &orb {
                block_of[y] = id;
            }
            blocks.push(orb);
        }
        Ok((blocks, block_of))
    }

    /// Stabilizer `G_x = {g in G_e : alpha_g(x) = x}` as a subgroupoid view.
    pub fn stabilizer(&self, x: usize) -> Result<Subgroupoid, ActionError> {
        let e = self.object_of(x)?;
        let members: Vec<usize> = self
            .groupoid
            .hom(e, e)
            .into_iter()
            .filter(|&g| self.alpha[g][x] == Some(x))
            .collect();
        Ok(Subgroupoid::check(&self.groupoid, members)?)
    }

    /// `alpha_g(Y ∩ X_{g⁻¹}) ⊆ Y` for all `g`.
    pub fn is_invariant(&self, points: &[usize]) -> bool {
        let set: Vec<bool> = {
            let mut v = vec![false; self.n_points];
            for &x in points {
                v[x] = true;
            }
            v
        };
        self.groupoid.morphisms().all(|g| {
            (0..self.n_points).all(|x| {
                !set[x]
                    || match self.alpha[g][x] {
                        Some(y) => set[y],
                        None => true,
                    }
            })
        })
    }

    pub fn is_transitive(&self) -> Result<bool, ActionError> {
        let (blocks, _) = self.orbit_partition()?;
        Ok(blocks.len() <= 1)
    }

    /// A non-identity morphism fixing a point of `X_l ∩ X_{l⁻¹}`, if any.
    pub fn fully_faithful_witness(&self) -> Option<usize> {
        self.groupoid.morphisms().find(|&l| {
            !self.groupoid.is_identity(l)
                && self.fibers[self.groupoid.dom(l)]
                    .iter()
                    .any(|&x| self.alpha[l][x] == Some(x))
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.fully_faithful_witness().is_none()
    }

    /// Restriction to an invariant subset, with reindexed carrier.
    /// Returns the restricted action and the map new index -> old index.
    pub fn sub_gset(&self, points: &[usize]) -> Result<(GSet, Vec<usize>), ActionError> {
        if !self.is_invariant(points) {
            return Err(ActionError::BadTables(
                "subset is not invariant under the action".into(),
            ));
        }
        let mut old: Vec<usize> = points.to_vec();
        old.sort_unstable();
        old.dedup();
        let pos = |x: usize| old.binary_search(&x).ok();
        let fibers = self
            .fibers
            .iter()
            .map(|f| f.iter().filter_map(|&x| pos(x)).collect())
            .collect();
        let maps = self
            .groupoid
            .morphisms()
            .map(|g| {
                old.iter()
                    .enumerate()
                    .filter_map(|(i, &x)| {
                        self.alpha[g][x].and_then(|y| pos(y).map(|j| (i, j)))
                    })
                    .collect()
            })
            .collect();
        let sub = GSet::validate(
            self.groupoid.clone(),
            ActionTables {
                n_points: old.len(),
                fibers,
                maps,
            },
        )?;
        Ok((sub, old))
    }

    /// Left translation: the groupoid acting on its own morphisms with
    /// fibers `R_e` and `alpha_g(h) = gh`.
    pub fn left_translation(groupoid: &Groupoid) -> GSet {
        let fibers = groupoid
            .objects()
            .map(|e| groupoid.r_fiber(e).unwrap())
            .collect();
        let maps = groupoid
            .morphisms()
            .map(|g| {
                groupoid
                    .r_fiber(groupoid.dom(g))
                    .unwrap()
                    .into_iter()
                    .map(|h| (h, groupoid.compose(g, h).unwrap()))
                    .collect()
            })
            .collect();
        GSet::validate(
            groupoid.clone(),
            ActionTables {
                n_points: groupoid.n_morphisms(),
                fibers,
                maps,
            },
        )
        .expect("left translation is a split action")
    }

    /// Right translation of a wide subgroupoid `H` on the morphisms of its
    /// parent: fibers `D_e` and `beta_h(l) = l h^{-1}`. Returns the action
    /// (over the extracted groupoid `H`) and the morphism map
    /// new `H`-index -> parent index.
    pub fn right_translation(
        parent: &Groupoid,
        sub: &Subgroupoid,
    ) -> Result<(GSet, Vec<usize>), ActionError> {
        if !sub.is_wide() {
            let e = parent
                .objects()
                .find(|&e| !sub.contains(parent.identity_of(e)))
                .unwrap_or(0);
            return Err(GroupoidError::NotWide { e }.into());
        }
        let (k, mor_map, obj_map) = sub.extract(parent);
        let fibers = obj_map
            .iter()
            .map(|&e| parent.d_fiber(e).unwrap())
            .collect();
        let maps = k
            .morphisms()
            .map(|kk| {
                let h = mor_map[kk];
                parent
                    .d_fiber(parent.dom(h))
                    .unwrap()
                    .into_iter()
                    .map(|l| (l, parent.compose(l, parent.inv(h)).unwrap()))
                    .collect()
            })
            .collect();
        let gset = GSet::validate(
            k,
            ActionTables {
                n_points: parent.n_morphisms(),
                fibers,
                maps,
            },
        )?;
        Ok((gset, mor_map))
    }

    /// Identity action with the given fibers.
    pub fn identity_action(groupoid: &Groupoid, fibers: Vec<Vec<usize>>, n_points: usize) -> Result<GSet, ActionError> {
        let maps = groupoid
            .morphisms()
            .map(|g| {
                fibers[groupoid.dom(g)]
                    .iter()
                    .map(|&x| (x, x))
                    .collect()
            })
            .collect();
        GSet::validate(
            groupoid.clone(),
            ActionTables {
                n_points,
                fibers,
                maps,
            },
        )
    }
}

/// Why a map fails to be a morphism of G-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// Condition (i): the image of the fiber at `e` leaves the target fiber.
    FiberMismatch { e: usize, x: usize },
    /// Condition (ii): `map(alpha_g(x)) != beta_g(map(x))`.
    NotEquivariant { g: usize, x: usize },
    /// Source and target are sets over different groupoids.
    GroupoidMismatch,
    BadMap(String),
}

/// Classification of a candidate map of G-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismClass {
    NotMorphism(MorphismViolation),
    Morphism { mono: bool, epi: bool },
}

impl MorphismClass {
    pub fn is_morphism(&self) -> bool {
        matches!(self, MorphismClass::Morphism { .. })
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, MorphismClass::Morphism { mono: true, epi: true })
    }
}

/// Check conditions (i) and (ii) and classify injectivity/surjectivity.
pub fn check_morphism(src: &GSet, dst: &GSet, map: &[usize]) -> MorphismClass {
    if src.groupoid() != dst.groupoid() {
        return MorphismClass::NotMorphism(MorphismViolation::GroupoidMismatch);
    }
    if map.len() != src.n_points() {
        return MorphismClass::NotMorphism(MorphismViolation::BadMap(
            "map must be total on the source carrier".into(),
        ));
    }
    if map.iter().any(|&z| z >= dst.n_points()) {
        return MorphismClass::NotMorphism(MorphismViolation::BadMap(
            "image point out of range".into(),
        ));
    }
    for e in src.groupoid().objects() {
        for &x in src.fiber(e) {
            if dst.fiber(e).binary_search(&map[x]).is_err() {
                return MorphismClass::NotMorphism(MorphismViolation::FiberMismatch { e, x });
            }
        }
    }
    for g in src.groupoid().morphisms() {
        for &x in src.fiber(src.groupoid().dom(g)) {
            let via_src = src.act(g, x).map(|y| map[y]);
            let via_dst = dst.act(g, map[x]);
            if via_src != via_dst {
                return MorphismClass::NotMorphism(MorphismViolation::NotEquivariant { g, x });
            }
        }
    }
    let mut hit = vec![false; dst.n_points()];
    let mut mono = true;
    for &z in map {
        if hit[z] {
            mono = false;
        }
        hit[z] = true;
    }
    let epi = hit.iter().all(|&b| b);
    MorphismClass::Morphism { mono, epi }
}

/// A validated morphism of G-sets.
#[derive(Debug, Clone)]
pub struct GSetMorphism {
    pub source: GSet,
    pub target: GSet,
    pub map: Vec<usize>,
    pub mono: bool,
    pub epi: bool,
}

impl GSetMorphism {
    pub fn check(source: GSet, target: GSet, map: Vec<usize>) -> Result<GSetMorphism, MorphismViolation> {
        match check_morphism(&source, &target, &map) {
            MorphismClass::Morphism { mono, epi } => Ok(GSetMorphism {
                source,
                target,
                map,
                mono,
                epi,
            }),
            MorphismClass::NotMorphism(v) => Err(v),
        }
    }

    pub fn identity(gset: &GSet) -> GSetMorphism {
        GSetMorphism::check(gset.clone(), gset.clone(), (0..gset.n_points()).collect())
            .expect("identity is a morphism")
    }

    /// Composition `other ∘ self` when the carriers line up.
    pub fn then(&self, other: &GSetMorphism) -> Result<GSetMorphism, MorphismViolation> {
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        GSetMorphism::check(self.source.clone(), other.target.clone(), map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::Groupoid;

    /// Two-point split G-set over the pair groupoid: X_e = {0}, X_f = {1}.
    pub fn xef(p2: &Groupoid) -> GSet {
        GSet::validate(
            p2.clone(),
            ActionTables {
                n_points: 2,
                fibers: vec![vec![0], vec![1]],
                maps: vec![
                    vec![(0, 0)],
                    vec![(0, 1)], // g: e->f sends x to y
                    vec![(1, 0)],
                    vec![(1, 1)],
                ],
            },
        )
        .unwrap()
    }

    #[test]
    fn trivial_identity_action_is_split() {
        let t = Groupoid::trivial();
        let x = GSet::identity_action(&t, vec![vec![0, 1, 2]], 3).unwrap();
        assert!(x.is_split());
        assert_eq!(x.orbit(1).unwrap(), vec![1]);
    }

    #[test]
    fn xef_is_valid_and_transitive() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        assert!(x.is_split());
        assert_eq!(x.orbit(0).unwrap(), vec![0, 1]);
        assert!(x.is_transitive().unwrap());
        assert_eq!(x.stabilizer(0).unwrap().members(), &[p2.identity_of(0)]);
    }

    #[test]
    fn broken_bijection_is_rejected() {
        let p2 = Groupoid::pair(2).unwrap();
        let bad = GSet::validate(
            p2,
            ActionTables {
                n_points: 2,
                fibers: vec![vec![0], vec![1]],
                maps: vec![
                    vec![(0, 0)],
                    vec![(0, 1)],
                    vec![(1, 1)], // alpha_{g^-1}(y) = y lands outside X_e
                    vec![(1, 1)],
                ],
            },
        );
        assert!(matches!(
            bad,
            Err(ActionError::NotBijective { .. }) | Err(ActionError::Cocycle { .. })
        ));
    }

    #[test]
    fn left_translation_fibers() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = GSet::left_translation(&p2);
        assert!(x.is_split());
        for e in p2.objects() {
            assert_eq!(x.fiber(e).len(), 2);
            assert_eq!(x.fiber(e), p2.r_fiber(e).unwrap().as_slice());
        }
        let t = Groupoid::trivial();
        let xt = GSet::left_translation(&t);
        assert_eq!(xt.n_points(), 1);
    }

    #[test]
    fn right_translation_by_identities_has_singleton_orbits() {
        let p2 = Groupoid::pair(2).unwrap();
        let ids = Subgroupoid::identities(&p2);
        let (y, _) = GSet::right_translation(&p2, &ids).unwrap();
        let (blocks, _) = y.orbit_partition().unwrap();
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn right_translation_is_fully_faithful() {
        for g in [
            Groupoid::trivial(),
            Groupoid::pair(2).unwrap(),
            Groupoid::pair(3).unwrap(),
            Groupoid::cyclic(2).unwrap(),
            Groupoid::cyclic(3).unwrap(),
            Groupoid::disjoint_union(&Groupoid::cyclic(2).unwrap(), &Groupoid::pair(2).unwrap()),
        ] {
            let all = Subgroupoid::all(&g);
            let (beta, _) = GSet::right_translation(&g, &all).unwrap();
            assert!(beta.is_fully_faithful(), "failed for {:?}", g);
        }
    }

    #[test]
    fn identity_action_of_nontrivial_group_is_not_fully_faithful() {
        let z2 = Groupoid::cyclic(2).unwrap();
        let x = GSet::identity_action(&z2, vec![vec![0]], 1).unwrap();
        assert!(!x.is_fully_faithful());
        assert_eq!(x.fully_faithful_witness(), Some(1));
        assert_eq!(x.stabilizer(0).unwrap().members().len(), 2);
    }

    #[test]
    fn orbits_match_reachability_brute_force() {
        let p2 = Groupoid::pair(2).unwrap();
        for action in [GSet::left_translation(&p2), xef(&p2)] {
            let (_, block_of) = action.orbit_partition().unwrap();
            for x in 0..action.n_points() {
                for y in 0..action.n_points() {
                    let reachable = action
                        .groupoid()
                        .morphisms()
                        .any(|g| action.act(g, x) == Some(y));
                    assert_eq!(reachable, block_of[x] == block_of[y], "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn invariance() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        assert!(x.is_invariant(&[0, 1]));
        assert!(!x.is_invariant(&[0]));
        assert!(x.is_invariant(&[]));
        let orbit = x.orbit(0).unwrap();
        assert!(x.is_invariant(&orbit));
    }

    #[test]
    fn morphism_classification() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        let id = check_morphism(&x, &x, &[0, 1]);
        assert!(id.is_iso());
        // swapping the points breaks the fiber condition
        let swap = check_morphism(&x, &x, &[1, 0]);
        assert!(matches!(
            swap,
            MorphismClass::NotMorphism(MorphismViolation::FiberMismatch { .. })
        ));
    }

    #[test]
    fn empty_carrier_is_vacuously_transitive() {
        let t = Groupoid::trivial();
        let x = GSet::identity_action(&t, vec![vec![]], 0).unwrap();
        assert!(x.is_split());
        assert!(x.is_transitive().unwrap());
    }

    #[test]
    fn morphism_composition() {
        let p2 = Groupoid::pair(2).unwrap();
        let x = xef(&p2);
        let id = GSetMorphism::identity(&x);
        let comp = id.then(&id).unwrap();
        assert_eq!(comp.map, vec![0, 1]);
    }
}
