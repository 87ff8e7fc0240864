//! The dual `kG*` of a finite groupoid algebra, with its weak-Hopf data on
//! the dual basis `{v_g}`: pointwise product, the comultiplication
//! `Δ(v_g) = Σ_{h ∈ D_{d(g)}} v_{gh⁻¹} ⊗ v_h`, the counit supported on
//! identities, and the antipode `S(v_g) = v_{g⁻¹}`.

use crate::algebra::{MultTable, StructureAlgebra};
use crate::groupoid::Groupoid;
use crate::scalar::one;

#[derive(Debug, Clone)]
pub struct DualGroupoidAlgebra {
    pub groupoid: Groupoid,
    /// the pointwise-product algebra on the basis `{v_g}`
    pub algebra: StructureAlgebra,
}

impl DualGroupoidAlgebra {
    pub fn new(groupoid: &Groupoid) -> DualGroupoidAlgebra {
        let n = groupoid.n_morphisms();
        let mut mult = MultTable::new();
        for g in 0..n {
            mult.insert((g, g), vec![(g, one())]);
        }
        let unit = vec![one(); n];
        let algebra = StructureAlgebra::validate(n, mult, unit)
            .expect("the dual basis multiplies pointwise");
        DualGroupoidAlgebra {
            groupoid: groupoid.clone(),
            algebra,
        }
    }

    /// `Δ(v_g)` as a list of tensor factors `(v_{gh⁻¹}, v_h)`.
    pub fn coproduct(&self, g: usize) -> Vec<(usize, usize)> {
        let d = self.groupoid.dom(g);
        self.groupoid
            .d_fiber(d)
            .unwrap()
            .into_iter()
            .map(|h| {
                let left = self
                    .groupoid
                    .compose(g, self.groupoid.inv(h))
                    .expect("d(g) = d(h) makes g h^{-1} composable");
                (left, h)
            })
            .collect()
    }

    /// `ε(v_g)`: 1 on identities, 0 otherwise.
    pub fn counit(&self, g: usize) -> bool {
        self.groupoid.is_identity(g)
    }

    /// `S(v_g) = v_{g⁻¹}`.
    pub fn antipode(&self, g: usize) -> usize {
        self.groupoid.inv(g)
    }

    /// Coassociativity `(Δ⊗id)Δ = (id⊗Δ)Δ` on a basis element, as sorted
    /// lists of triples.
    pub fn coassociativity_holds(&self, g: usize) -> bool {
        let mut lhs: Vec<(usize, usize, usize)> = self
            .coproduct(g)
            .into_iter()
            .flat_map(|(a, b)| {
                self.coproduct(a)
                    .into_iter()
                    .map(move |(a1, a2)| (a1, a2, b))
            })
            .collect();
        let mut rhs: Vec<(usize, usize, usize)> = self
            .coproduct(g)
            .into_iter()
            .flat_map(|(a, b)| self.coproduct(b).into_iter().map(move |(b1, b2)| (a, b1, b2)))
            .collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs
    }

    /// `Δ(v_g v_h) = Δ(v_g) Δ(v_h)` on a pair of basis elements, with the
    /// componentwise product of tensors.
    pub fn coproduct_multiplicative(&self, g: usize, h: usize) -> bool {
        let mut lhs: Vec<(usize, usize)> = if g == h { self.coproduct(g) } else { Vec::new() };
        let mut rhs: Vec<(usize, usize)> = self
            .coproduct(g)
            .into_iter()
            .flat_map(|(a, b)| {
                self.coproduct(h)
                    .into_iter()
                    .filter(move |&(c, d)| a == c && b == d)
                    .map(move |_| (a, b))
            })
            .collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counit_marks_identities() {
        let p2 = Groupoid::pair(2).unwrap();
        let dual = DualGroupoidAlgebra::new(&p2);
        for g in p2.morphisms() {
            assert_eq!(dual.counit(g), p2.is_identity(g));
        }
    }

    #[test]
    fn antipode_is_involutive() {
        let g = Groupoid::disjoint_union(&Groupoid::cyclic(3).unwrap(), &Groupoid::pair(2).unwrap());
        let dual = DualGroupoidAlgebra::new(&g);
        for m in g.morphisms() {
            assert_eq!(dual.antipode(dual.antipode(m)), m);
        }
    }

    #[test]
    fn coproduct_of_identity_has_one_term_per_domain_fiber_element() {
        let p2 = Groupoid::pair(2).unwrap();
        let dual = DualGroupoidAlgebra::new(&p2);
        for e in p2.objects() {
            let id = p2.identity_of(e);
            let terms = dual.coproduct(id);
            assert_eq!(terms.len(), p2.d_fiber(e).unwrap().len());
            // Δ(v_{id_e}) = Σ_{h ∈ D_e} v_{h⁻¹} ⊗ v_h
            for (a, b) in terms {
                assert_eq!(a, p2.inv(b));
            }
        }
    }

    #[test]
    fn weak_comultiplication_identities_hold_exhaustively() {
        for g in [
            Groupoid::trivial(),
            Groupoid::pair(2).unwrap(),
            Groupoid::cyclic(4).unwrap(),
            Groupoid::disjoint_union(&Groupoid::cyclic(2).unwrap(), &Groupoid::pair(2).unwrap()),
        ] {
            let dual = DualGroupoidAlgebra::new(&g);
            for m in g.morphisms() {
                assert!(dual.coassociativity_holds(m));
                for h in g.morphisms() {
                    assert!(dual.coproduct_multiplicative(m, h));
                }
            }
        }
    }
}
