//! Shared fixtures: the graded algebras, actions and bisets that the test
//! batteries, the acceptance suite and the benchmarks all exercise.

use crate::algebra::{matrix_unit_algebra, MultTable, StructureAlgebra};
use crate::biset::{translation_biset, BiSet};
use crate::graded::{groupoid_algebra, GradedAlgebra};
use crate::groupoid::{Groupoid, Subgroupoid};
use crate::gset::{check_morphism, ActionTables, GSet};
use crate::scalar::one;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The 2x2 matrix algebra graded by the pair groupoid on two objects:
/// deg E11 = id_e, deg E12 = g⁻¹, deg E21 = g, deg E22 = id_f.
pub fn m2_pair() -> GradedAlgebra {
    let p2 = Groupoid::pair(2).unwrap();
    GradedAlgebra::validate(matrix_unit_algebra(2), p2, vec![0, 2, 1, 3]).unwrap()
}

/// Two points x, y with X_e = {x}, X_f = {y} and the non-identity
/// morphisms swapping them. Transitive split G-set of the pair groupoid.
pub fn xef(p2: &Groupoid) -> GSet {
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

/// Two disjoint copies of `xef` on four points: X_e = {0, 2}, X_f = {1, 3},
/// orbits {0,1} and {2,3}.
pub fn doubled_xef(p2: &Groupoid) -> GSet {
    GSet::validate(
        p2.clone(),
        ActionTables {
            n_points: 4,
            fibers: vec![vec![0, 2], vec![1, 3]],
            maps: vec![
                vec![(0, 0), (2, 2)],
                vec![(0, 1), (2, 3)],
                vec![(1, 0), (3, 2)],
                vec![(1, 1), (3, 3)],
            ],
        },
    )
    .unwrap()
}

/// `Q x Q` graded by the pair groupoid with zero off-diagonal components:
/// the control fixture whose Morita context is not strict.
pub fn qq_zero_off_diagonal() -> GradedAlgebra {
    let p2 = Groupoid::pair(2).unwrap();
    let mut mult = MultTable::new();
    mult.insert((0, 0), vec![(0, one())]);
    mult.insert((1, 1), vec![(1, one())]);
    let qq = StructureAlgebra::validate(2, mult, vec![one(), one()]).unwrap();
    GradedAlgebra::validate(qq, p2, vec![0, 3]).unwrap()
}

/// Z/2 acting on two points of a single object by the swap.
pub fn z2_swap_action() -> GSet {
    let z2 = Groupoid::cyclic(2).unwrap();
    GSet::validate(
        z2,
        ActionTables {
            n_points: 2,
            fibers: vec![vec![0, 1]],
            maps: vec![vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]],
        },
    )
    .unwrap()
}

/// All G-set automorphisms of a split action, found by brute force.
pub fn gset_automorphisms(action: &GSet) -> Vec<Vec<usize>> {
    let n = action.n_points();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        if check_morphism(action, action, p).is_iso() {
            out.push(p.to_vec());
        }
    });
    out
}

fn permutations(perm: &mut Vec<usize>, k: usize, emit: &mut dyn FnMut(&[usize])) {
    if k == perm.len() {
        emit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, emit);
        perm.swap(k, i);
    }
}

/// A biset on the carrier of `action` whose K = Z/2 acts by a seeded
/// choice among the involutive G-set automorphisms.
pub fn involution_biset(action: &GSet, seed: u64) -> BiSet {
    let autos = gset_automorphisms(action);
    let involutions: Vec<&Vec<usize>> = autos
        .iter()
        .filter(|p| (0..action.n_points()).all(|x| p[p[x]] == x))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = involutions[rng.gen_range(0..involutions.len())];
    let z2 = Groupoid::cyclic(2).unwrap();
    let all: Vec<usize> = (0..action.n_points()).collect();
    let k_action = GSet::validate(
        z2,
        ActionTables {
            n_points: action.n_points(),
            fibers: vec![all.clone()],
            maps: vec![
                all.iter().map(|&x| (x, x)).collect(),
                all.iter().map(|&x| (x, sigma[x])).collect(),
            ],
        },
    )
    .unwrap();
    BiSet::validate(action.clone(), k_action).unwrap()
}

/// The biset with the identity action of the trivial groupoid as K.
pub fn identity_k_biset(action: &GSet) -> BiSet {
    let t = Groupoid::trivial();
    let all: Vec<usize> = (0..action.n_points()).collect();
    let k = GSet::identity_action(&t, vec![all], action.n_points()).unwrap();
    BiSet::validate(action.clone(), k).unwrap()
}

/// The standard battery of split bisets with compatible graded algebras,
/// used by the property and acceptance suites. Contains translation
/// bisets over three groupoids, an identities-only K, a restricted
/// translation, and two seeded involution bisets.
pub fn biset_battery() -> Vec<(String, BiSet, GradedAlgebra)> {
    let mut battery = Vec::new();

    let m2 = m2_pair();
    let p2 = m2.groupoid.clone();
    let (b, _) = translation_biset(&p2, &Subgroupoid::all(&p2)).unwrap();
    battery.push(("translation-pair2".to_string(), b, m2.clone()));

    let z2 = Groupoid::cyclic(2).unwrap();
    let kz2 = groupoid_algebra(&z2);
    let (b, _) = translation_biset(&z2, &Subgroupoid::all(&z2)).unwrap();
    battery.push(("translation-z2".to_string(), b, kz2.clone()));

    let u = Groupoid::disjoint_union(&z2, &p2);
    let ku = groupoid_algebra(&u);
    let (b, _) = translation_biset(&u, &Subgroupoid::all(&u)).unwrap();
    battery.push(("translation-union".to_string(), b, ku));

    let (b, _) = translation_biset(&p2, &Subgroupoid::identities(&p2)).unwrap();
    battery.push(("translation-pair2-identities".to_string(), b, m2.clone()));

    battery.push((
        "identity-k-xef".to_string(),
        identity_k_biset(&xef(&p2)),
        m2.clone(),
    ));

    battery.push((
        "involution-doubled-xef".to_string(),
        involution_biset(&doubled_xef(&p2), 101),
        m2,
    ));

    battery.push((
        "involution-z2-swap".to_string(),
        involution_biset(&z2_swap_action(), 202),
        kz2,
    ));

    battery
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_split_and_large_enough() {
        let battery = biset_battery();
        assert!(battery.len() >= 6);
        for (name, biset, ga) in &battery {
            assert!(biset.split, "{name} is not split");
            assert_eq!(
                biset.g_action.groupoid(),
                &ga.groupoid,
                "{name}: algebra graded by the wrong groupoid"
            );
        }
    }

    #[test]
    fn doubled_xef_has_two_orbits() {
        let p2 = Groupoid::pair(2).unwrap();
        let (blocks, _) = doubled_xef(&p2).orbit_partition().unwrap();
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn automorphisms_of_doubled_xef() {
        let p2 = Groupoid::pair(2).unwrap();
        let autos = gset_automorphisms(&doubled_xef(&p2));
        // identity and the orbit swap
        assert_eq!(autos.len(), 2);
    }
}
