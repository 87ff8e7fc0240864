//! Finite groupoids given by explicit tables, with exhaustive validation.
//!
//! Morphisms and objects are dense integer indices. The composition table is
//! total with `None` marking non-composable pairs, and the validator enforces
//! that pattern exactly: `comp[g][h]` must be `Some` precisely when
//! `dom(g) == ran(h)`. Composition is written multiplicatively, `gh` applies
//! `h` first, so `dom(gh) = dom(h)` and `ran(gh) = ran(g)`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("composition table defined on the wrong pairs or with wrong endpoints at ({g}, {h})")]
    CompDomain { g: usize, h: usize },
    #[error("associativity fails on the triple ({g}, {h}, {l})")]
    Assoc { g: usize, h: usize, l: usize },
    #[error("identity law fails at object {e} on morphism {g}")]
    Identity { e: usize, g: usize },
    #[error("inverse law fails on morphism {g}")]
    Inverse { g: usize },
    #[error("empty input: at least one object is required")]
    Empty,
    #[error("multiplication table is not a group table: {reason}")]
    NotGroup { reason: String },
    #[error("no such object: {e}")]
    NoObject { e: usize },
    #[error("subset is not closed: witness morphisms ({g}, {h})")]
    NotClosed { g: usize, h: usize },
    #[error("subgroupoid is not wide: object {e} has no identity in it")]
    NotWide { e: usize },
    #[error("malformed tables: {0}")]
    BadTables(String),
}

impl GroupoidError {
    /// Stable code used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            GroupoidError::CompDomain { .. } => "E_COMP_DOMAIN",
            GroupoidError::Assoc { .. } => "E_ASSOC",
            GroupoidError::Identity { .. } => "E_IDENTITY",
            GroupoidError::Inverse { .. } => "E_INVERSE",
            GroupoidError::Empty => "E_EMPTY",
            GroupoidError::NotGroup { .. } => "E_NOT_GROUP",
            GroupoidError::NoObject { .. } => "E_NO_OBJECT",
            GroupoidError::NotClosed { .. } => "E_NOT_CLOSED",
            GroupoidError::NotWide { .. } => "E_NOT_WIDE",
            GroupoidError::BadTables(_) => "E_BAD_TABLES",
        }
    }
}

/// Raw input tables for [`Groupoid::validate`].
#[derive(Debug, Clone)]
pub struct GroupoidTables {
    pub n_objects: usize,
    pub dom: Vec<usize>,
    pub ran: Vec<usize>,
    /// `comp[g * n + h]`, `None` on non-composable pairs.
    pub comp: Vec<Option<usize>>,
    pub inv: Vec<usize>,
    /// `identity[e]` is the identity morphism of object `e`.
    pub identity: Vec<usize>,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    n_objects: usize,
    dom: Vec<usize>,
    ran: Vec<usize>,
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    identity: Vec<usize>,
}

impl Groupoid {
    pub fn validate(t: GroupoidTables) -> Result<Groupoid, GroupoidError> {
        let n = t.dom.len();
        if t.ran.len() != n || t.inv.len() != n || t.comp.len() != n * n {
            return Err(GroupoidError::BadTables(
                "dom/ran/inv/comp sizes are inconsistent".into(),
            ));
        }
        if t.identity.len() != t.n_objects {
            return Err(GroupoidError::BadTables(
                "identity table must have one entry per object".into(),
            ));
        }
        if t.n_objects == 0 || n == 0 {
            return Err(GroupoidError::Empty);
        }
        let obj_ok = |e: usize| e < t.n_objects;
        let mor_ok = |g: usize| g < n;
        if !t.dom.iter().chain(t.ran.iter()).all(|&e| obj_ok(e)) {
            return Err(GroupoidError::BadTables("dom/ran out of range".into()));
        }
        if !t.inv.iter().all(|&g| mor_ok(g)) || !t.identity.iter().all(|&g| mor_ok(g)) {
            return Err(GroupoidError::BadTables("inv/identity out of range".into()));
        }

        // identities are typed correctly
        for (e, &g) in t.identity.iter().enumerate() {
            if t.dom[g] != e || t.ran[g] != e {
                return Err(GroupoidError::Identity { e, g });
            }
        }

        // composition defined exactly on {dom(g) = ran(h)}, endpoints correct
        for g in 0..n {
            for h in 0..n {
                match t.comp[g * n + h] {
                    Some(gh) => {
                        if t.dom[g] != t.ran[h]
                            || !mor_ok(gh)
                            || t.dom[gh] != t.dom[h]
                            || t.ran[gh] != t.ran[g]
                        {
                            return Err(GroupoidError::CompDomain { g, h });
                        }
                    }
                    None => {
                        if t.dom[g] == t.ran[h] {
                            return Err(GroupoidError::CompDomain { g, h });
                        }
                    }
                }
            }
        }

        let comp = |g: usize, h: usize| t.comp[g * n + h];

        // identity laws
        for g in 0..n {
            let le = t.identity[t.ran[g]];
            let re = t.identity[t.dom[g]];
            if comp(le, g) != Some(g) {
                return Err(GroupoidError::Identity { e: t.ran[g], g });
            }
            if comp(g, re) != Some(g) {
                return Err(GroupoidError::Identity { e: t.dom[g], g });
            }
        }

        // inverse laws and involution
        for g in 0..n {
            let gi = t.inv[g];
            if t.dom[gi] != t.ran[g] || t.ran[gi] != t.dom[g] || t.inv[gi] != g {
                return Err(GroupoidError::Inverse { g });
            }
            if comp(g, gi) != Some(t.identity[t.ran[g]]) || comp(gi, g) != Some(t.identity[t.dom[g]])
            {
                return Err(GroupoidError::Inverse { g });
            }
        }

        // associativity on all composable triples
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = comp(g, h) else { continue };
                for l in 0..n {
                    let Some(hl) = comp(h, l) else { continue };
                    if comp(gh, l) != comp(g, hl) {
                        return Err(GroupoidError::Assoc { g, h, l });
                    }
                }
            }
        }

        Ok(Groupoid {
            n_objects: t.n_objects,
            dom: t.dom,
            ran: t.ran,
            comp: t.comp,
            inv: t.inv,
            identity: t.identity,
        })
    }

    pub fn n_morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn dom(&self, g: usize) -> usize {
        self.dom[g]
    }

    pub fn ran(&self, g: usize) -> usize {
        self.ran[g]
    }

    /// `gh` when `dom(g) = ran(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.comp[g * self.n_morphisms() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn identity_of(&self, e: usize) -> usize {
        self.identity[e]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.dom[g]] == g
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.n_morphisms()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.n_objects
    }

    /// `D_e`: morphisms with domain `e`.
    pub fn d_fiber(&self, e: usize) -> Result<Vec<usize>, GroupoidError> {
        if e >= self.n_objects {
            return Err(GroupoidError::NoObject { e });
        }
        Ok(self.morphisms().filter(|&g| self.dom[g] == e).collect())
    }

    /// `R_e`: morphisms with range `e`.
    pub fn r_fiber(&self, e: usize) -> Result<Vec<usize>, GroupoidError> {
        if e >= self.n_objects {
            return Err(GroupoidError::NoObject { e });
        }
        Ok(self.morphisms().filter(|&g| self.ran[g] == e).collect())
    }

    /// Hom-set `G(e, f)` of morphisms `e -> f`.
    pub fn hom(&self, e: usize, f: usize) -> Vec<usize> {
        self.morphisms()
            .filter(|&g| self.dom[g] == e && self.ran[g] == f)
            .collect()
    }

    /// The isotropy group at `e` as a subgroupoid view.
    pub fn isotropy_group(&self, e: usize) -> Result<Subgroupoid, GroupoidError> {
        if e >= self.n_objects {
            return Err(GroupoidError::NoObject { e });
        }
        let members = self.hom(e, e);
        Subgroupoid::check(self, members)
    }

    /// The groupoid with exactly one object and one morphism.
    pub fn trivial() -> Groupoid {
        Groupoid::pair(1).unwrap()
    }

    /// Pair groupoid on `n` objects: one morphism for every ordered pair.
    /// Morphism `a*n + b` runs `a -> b`.
    pub fn pair(n: usize) -> Result<Groupoid, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        let m = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut dom = vec![0; m];
        let mut ran = vec![0; m];
        let mut inv = vec![0; m];
        for a in 0..n {
            for b in 0..n {
                dom[idx(a, b)] = a;
                ran[idx(a, b)] = b;
                inv[idx(a, b)] = idx(b, a);
            }
        }
        let mut comp = vec![None; m * m];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        // (c -> d) after (a -> b) composes iff b == c
                        if b == c {
                            comp[idx(c, d) * m + idx(a, b)] = Some(idx(a, d));
                        }
                    }
                }
            }
        }
        let identity = (0..n).map(|a| idx(a, a)).collect();
        Groupoid::validate(GroupoidTables {
            n_objects: n,
            dom,
            ran,
            comp,
            inv,
            identity,
        })
    }

    /// One-object groupoid from a group multiplication table
    /// (`table[g][h] = gh`).
    pub fn from_group_table(table: &[Vec<usize>]) -> Result<Groupoid, GroupoidError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(GroupoidError::NotGroup {
                reason: "table is not square or has out-of-range entries".into(),
            });
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupoidError::NotGroup {
                reason: "no two-sided identity".into(),
            })?;
        let mut inv = vec![None; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| table[g][h] == e && table[h][g] == e);
            if inv[g].is_none() {
                return Err(GroupoidError::NotGroup {
                    reason: format!("element {g} has no inverse"),
                });
            }
        }
        let comp = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| Some(table[g][h]))
            .collect();
        Groupoid::validate(GroupoidTables {
            n_objects: 1,
            dom: vec![0; n],
            ran: vec![0; n],
            comp,
            inv: inv.into_iter().map(Option::unwrap).collect(),
            identity: vec![e],
        })
        .map_err(|err| match err {
            GroupoidError::Assoc { g, h, l } => GroupoidError::NotGroup {
                reason: format!("multiplication not associative at ({g}, {h}, {l})"),
            },
            other => other,
        })
    }

    /// Cyclic group of order `n` as a one-object groupoid.
    pub fn cyclic(n: usize) -> Result<Groupoid, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Groupoid::from_group_table(&table)
    }

    /// Coproduct of two groupoids, with `a`'s indices first.
    pub fn disjoint_union(a: &Groupoid, b: &Groupoid) -> Groupoid {
        let (na, nb) = (a.n_morphisms(), b.n_morphisms());
        let n = na + nb;
        let mut dom = a.dom.clone();
        let mut ran = a.ran.clone();
        let mut inv = a.inv.clone();
        dom.extend(b.dom.iter().map(|&e| e + a.n_objects));
        ran.extend(b.ran.iter().map(|&e| e + a.n_objects));
        inv.extend(b.inv.iter().map(|&g| g + na));
        let mut identity = a.identity.clone();
        identity.extend(b.identity.iter().map(|&g| g + na));
        let mut comp = vec![None; n * n];
        for g in 0..na {
            for h in 0..na {
                comp[g * n + h] = a.compose(g, h);
            }
        }
        for g in 0..nb {
            for h in 0..nb {
                comp[(g + na) * n + (h + na)] = b.compose(g, h).map(|v| v + na);
            }
        }
        Groupoid::validate(GroupoidTables {
            n_objects: a.n_objects + b.n_objects,
            dom,
            ran,
            comp,
            inv,
            identity,
        })
        .expect("coproduct of valid groupoids is valid")
    }
}

/// A subset of a groupoid's morphisms verified closed under composition and
/// inverse. `wide` records whether every identity is a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroupoid {
    members: Vec<usize>,
    wide: bool,
}

impl Subgroupoid {
    pub fn check(parent: &Groupoid, mut members: Vec<usize>) -> Result<Subgroupoid, GroupoidError> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(GroupoidError::Empty);
        }
        if let Some(&g) = members.iter().find(|&&g| g >= parent.n_morphisms()) {
            return Err(GroupoidError::BadTables(format!(
                "member {g} is not a morphism of the parent"
            )));
        }
        let in_set = |g: usize| members.binary_search(&g).is_ok();
        for &g in &members {
            if !in_set(parent.inv(g)) {
                return Err(GroupoidError::NotClosed { g, h: parent.inv(g) });
            }
            for &h in &members {
                if let Some(gh) = parent.compose(g, h) {
                    if !in_set(gh) {
                        return Err(GroupoidError::NotClosed { g, h });
                    }
                }
            }
        }
        let wide = parent
            .objects()
            .all(|e| in_set(parent.identity_of(e)));
        Ok(Subgroupoid { members, wide })
    }

    /// The wide subgroupoid of all identity morphisms.
    pub fn identities(parent: &Groupoid) -> Subgroupoid {
        Subgroupoid::check(parent, parent.objects().map(|e| parent.identity_of(e)).collect())
            .expect("identities form a wide subgroupoid")
    }

    /// The whole groupoid as a subgroupoid of itself.
    pub fn all(parent: &Groupoid) -> Subgroupoid {
        Subgroupoid::check(parent, parent.morphisms().collect())
            .expect("a groupoid is a wide subgroupoid of itself")
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_wide(&self) -> bool {
        self.wide
    }

    /// Objects of the subgroupoid: those whose identity is a member.
    pub fn objects(&self, parent: &Groupoid) -> Vec<usize> {
        parent
            .objects()
            .filter(|&e| self.contains(parent.identity_of(e)))
            .collect()
    }

    /// Multiplication table when the subgroupoid is a group (one object),
    /// indexed by position in `members`.
    pub fn group_table(&self, parent: &Groupoid) -> Option<Vec<Vec<usize>>> {
        if self.objects(parent).len() != 1 {
            return None;
        }
        let pos = |g: usize| self.members.binary_search(&g).unwrap();
        Some(
            self.members
                .iter()
                .map(|&g| {
                    self.members
                        .iter()
                        .map(|&h| pos(parent.compose(g, h).expect("group members compose")))
                        .collect()
                })
                .collect(),
        )
    }

    /// Materialize the subgroupoid as a groupoid of its own, with dense
    /// indices. Returns the new groupoid together with the morphism and
    /// object maps (new index -> parent index).
    pub fn extract(&self, parent: &Groupoid) -> (Groupoid, Vec<usize>, Vec<usize>) {
        let mor_map = self.members.clone();
        let obj_map = self.objects(parent);
        let obj_pos = |e: usize| obj_map.iter().position(|&x| x == e).unwrap();
        let mor_pos = |g: usize| self.members.binary_search(&g).unwrap();
        let n = mor_map.len();
        let mut comp = vec![None; n * n];
        for (i, &g) in mor_map.iter().enumerate() {
            for (j, &h) in mor_map.iter().enumerate() {
                comp[i * n + j] = parent.compose(g, h).map(mor_pos);
            }
        }
        let tables = GroupoidTables {
            n_objects: obj_map.len(),
            dom: mor_map.iter().map(|&g| obj_pos(parent.dom(g))).collect(),
            ran: mor_map.iter().map(|&g| obj_pos(parent.ran(g))).collect(),
            comp,
            inv: mor_map.iter().map(|&g| mor_pos(parent.inv(g))).collect(),
            identity: obj_map
                .iter()
                .map(|&e| mor_pos(parent.identity_of(e)))
                .collect(),
        };
        let g = Groupoid::validate(tables).expect("a closed subset extracts to a valid groupoid");
        (g, mor_map, obj_map)
    }
}

/// Partition of a groupoid's morphisms into right cosets `Hg` under
/// `g ~ h iff g h^{-1} in H`, computed within each `D_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl CosetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, g: usize) -> usize {
        self.block_of[g]
    }
}

/// Right cosets of a wide subgroupoid. Blocks are sorted by their minimal
/// morphism index.
pub fn right_cosets(parent: &Groupoid, sub: &Subgroupoid) -> Result<CosetPartition, GroupoidError> {
    if !sub.is_wide() {
        let e = parent
            .objects()
            .find(|&e| !sub.contains(parent.identity_of(e)))
            .unwrap_or(0);
        return Err(GroupoidError::NotWide { e });
    }
    let n = parent.n_morphisms();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if block_of[g] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = Vec::new();
        for h in 0..n {
            // h ~ g iff h g^{-1} ∈ H (requires dom(h) = dom(g))
            if let Some(hg) = parent.compose(h, parent.inv(g)) {
                if sub.contains(hg) {
                    debug_assert_eq!(parent.dom(h), parent.dom(g));
                    block_of[h] = id;
                    block.push(h);
                }
            }
        }
        blocks.push(block);
    }
    // verify the relation really is an equivalence on each D_e
    for g in 0..n {
        for h in 0..n {
            if parent.dom(g) != parent.dom(h) {
                continue;
            }
            let gh = parent.compose(g, parent.inv(h)).expect("same domain");
            let same = block_of[g] == block_of[h];
            if same != sub.contains(gh) {
                return Err(GroupoidError::NotClosed { g, h });
            }
        }
    }
    Ok(CosetPartition { blocks, block_of })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_groupoid_is_valid() {
        let g = Groupoid::trivial();
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_morphisms(), 1);
        assert!(g.is_identity(0));
    }

    #[test]
    fn pair_groupoid_counts() {
        let g = Groupoid::pair(2).unwrap();
        assert_eq!(g.n_morphisms(), 4);
        assert_eq!(g.n_objects(), 2);
        let g3 = Groupoid::pair(3).unwrap();
        assert_eq!(g3.n_morphisms(), 9);
        for e in g3.objects() {
            assert_eq!(g3.isotropy_group(e).unwrap().members().len(), 1);
        }
        assert!(matches!(Groupoid::pair(0), Err(GroupoidError::Empty)));
    }

    #[test]
    fn corrupted_range_is_rejected() {
        // pair groupoid on {e,f} but with ran(g · g⁻¹) redirected:
        // force comp[g, g⁻¹] = g instead of id_f, violating ran(gh) = ran(g).
        let good = Groupoid::pair(2).unwrap();
        let mut tables = GroupoidTables {
            n_objects: 2,
            dom: (0..4).map(|m| good.dom(m)).collect(),
            ran: (0..4).map(|m| good.ran(m)).collect(),
            comp: (0..16)
                .map(|i| good.compose(i / 4, i % 4))
                .collect(),
            inv: (0..4).map(|m| good.inv(m)).collect(),
            identity: vec![0, 3],
        };
        // morphism 1 is e->f, morphism 2 is f->e; their product 1*2 : f->f
        tables.comp[1 * 4 + 2] = Some(1);
        let err = Groupoid::validate(tables).unwrap_err();
        assert!(matches!(err, GroupoidError::CompDomain { .. }));
        assert_eq!(err.code(), "E_COMP_DOMAIN");
    }

    #[test]
    fn group_as_groupoid() {
        let z2 = Groupoid::from_group_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.n_objects(), 1);
        assert_eq!(z2.n_morphisms(), 2);
        // non-group: no identity
        let bad = Groupoid::from_group_table(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(GroupoidError::NotGroup { .. })));
    }

    #[test]
    fn disjoint_union_counts() {
        let z2 = Groupoid::cyclic(2).unwrap();
        let p2 = Groupoid::pair(2).unwrap();
        let u = Groupoid::disjoint_union(&z2, &p2);
        assert_eq!(u.n_objects(), 3);
        assert_eq!(u.n_morphisms(), 6);
        // isotropy at the Z/2 object has 2 elements
        assert_eq!(u.isotropy_group(0).unwrap().members().len(), 2);
        let t2 = Groupoid::disjoint_union(&Groupoid::trivial(), &Groupoid::trivial());
        assert_eq!(t2.n_objects(), 2);
    }

    #[test]
    fn fibers() {
        let p2 = Groupoid::pair(2).unwrap();
        for e in p2.objects() {
            assert_eq!(p2.d_fiber(e).unwrap().len(), 2);
            assert_eq!(p2.r_fiber(e).unwrap().len(), 2);
        }
        assert!(matches!(p2.d_fiber(5), Err(GroupoidError::NoObject { e: 5 })));
        let t = Groupoid::trivial();
        assert_eq!(t.d_fiber(0).unwrap(), vec![0]);
        assert_eq!(t.r_fiber(0).unwrap(), vec![0]);
    }

    #[test]
    fn subgroupoid_checks() {
        let p2 = Groupoid::pair(2).unwrap();
        let ids = Subgroupoid::identities(&p2);
        assert!(ids.is_wide());
        let single = Subgroupoid::check(&p2, vec![p2.identity_of(0)]).unwrap();
        assert!(!single.is_wide());
        // a single non-identity morphism is not closed
        let err = Subgroupoid::check(&p2, vec![1]).unwrap_err();
        assert!(matches!(err, GroupoidError::NotClosed { .. }));
    }

    #[test]
    fn cosets() {
        let p2 = Groupoid::pair(2).unwrap();
        let all = Subgroupoid::all(&p2);
        let part = right_cosets(&p2, &all).unwrap();
        assert_eq!(part.blocks().len(), 2);
        for block in part.blocks() {
            assert_eq!(block.len(), 2);
            let e = p2.dom(block[0]);
            assert!(block.iter().all(|&g| p2.dom(g) == e));
        }
        let ids = Subgroupoid::identities(&p2);
        let part = right_cosets(&p2, &ids).unwrap();
        assert_eq!(part.blocks().len(), 4);
        let single = Subgroupoid::check(&p2, vec![p2.identity_of(0)]).unwrap();
        assert!(matches!(
            right_cosets(&p2, &single),
            Err(GroupoidError::NotWide { .. })
        ));
    }

    #[test]
    fn coset_blocks_match_relation() {
        // H = G: blocks are exactly the D_e
        let p2 = Groupoid::pair(2).unwrap();
        let all = Subgroupoid::all(&p2);
        let part = right_cosets(&p2, &all).unwrap();
        for e in p2.objects() {
            let de = p2.d_fiber(e).unwrap();
            assert!(part.blocks().contains(&de));
        }
    }

    #[test]
    fn isotropy_roundtrips_through_group_table() {
        let z2 = Groupoid::cyclic(2).unwrap();
        let p2 = Groupoid::pair(2).unwrap();
        let u = Groupoid::disjoint_union(&z2, &p2);
        for e in u.objects() {
            let iso = u.isotropy_group(e).unwrap();
            let table = iso.group_table(&u).unwrap();
            Groupoid::from_group_table(&table).unwrap();
        }
    }

    #[test]
    fn inverse_involution_and_assoc_exhaustive() {
        for g in [Groupoid::pair(3).unwrap(), Groupoid::cyclic(4).unwrap()] {
            for m in g.morphisms() {
                assert_eq!(g.inv(g.inv(m)), m);
                assert_eq!(g.dom(g.inv(m)), g.ran(m));
            }
            for a in g.morphisms() {
                for b in g.morphisms() {
                    let Some(ab) = g.compose(a, b) else { continue };
                    for c in g.morphisms() {
                        let Some(bc) = g.compose(b, c) else { continue };
                        assert_eq!(g.compose(ab, c), g.compose(a, bc));
                    }
                }
            }
        }
    }
}
