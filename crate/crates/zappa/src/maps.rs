//! Dense tables for arbitrary (not necessarily homomorphic) maps between
//! group element sets, and the pointwise algebra used by the matrix calculus.
//!
//! For maps into a common group, `(φ + ψ)(u) = φ(u)·ψ(u)` multiplies values
//! pointwise. Against a matched pair, a K-valued map acts on an H-valued one:
//! `(φ·ψ)(u) = σ(φ(u), ψ(u))` and `φ^ψ(u) = θ(φ(u), ψ(u))`.

use crate::group::{GroupTable, Subset};
use crate::pair::MatchedPair;
use crate::{Error, Result};

/// A total function between the element sets of two groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapTable {
    dom: usize,
    cod: usize,
    tbl: Vec<usize>,
}

impl MapTable {
    /// Wrap a value table, checking length and range.
    pub fn new(dom: usize, cod: usize, tbl: Vec<usize>) -> Result<Self> {
        if tbl.len() != dom {
            return Err(Error::MapType(format!(
                "table length {} does not match domain size {dom}",
                tbl.len()
            )));
        }
        if let Some(&v) = tbl.iter().find(|&&v| v >= cod) {
            return Err(Error::MapType(format!(
                "value {v} out of range for codomain size {cod}"
            )));
        }
        Ok(MapTable { dom, cod, tbl })
    }

    /// Tabulate u ↦ f(u) over the domain.
    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(dom, cod, (0..dom).map(f).collect())
    }

    /// The identity map on an n-element set.
    pub fn identity(n: usize) -> Self {
        MapTable { dom: n, cod: n, tbl: (0..n).collect() }
    }

    /// The constant map sending everything to the codomain group's identity
    /// (the "zero" entry of the matrix calculus).
    pub fn constant_identity(dom: usize, cod: &GroupTable) -> Self {
        MapTable { dom, cod: cod.order(), tbl: vec![cod.id(); dom] }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    #[inline]
    pub fn apply(&self, u: usize) -> usize {
        self.tbl[u]
    }

    pub fn values(&self) -> &[usize] {
        &self.tbl
    }

    /// Whether the map is a bijection (requires equal-sized sets).
    pub fn is_bijective(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod];
        for &v in &self.tbl {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Whether the map respects multiplication of the given tables.
    ///
    /// Panics if the table orders do not match the map's signature.
    pub fn is_homomorphism(&self, dom_g: &GroupTable, cod_g: &GroupTable) -> bool {
        assert_eq!(dom_g.order(), self.dom, "domain order mismatch");
        assert_eq!(cod_g.order(), self.cod, "codomain order mismatch");
        (0..self.dom).all(|x| {
            (0..self.dom).all(|y| {
                self.tbl[dom_g.mul(x, y)] == cod_g.mul(self.tbl[x], self.tbl[y])
            })
        })
    }

    /// Whether the map is an automorphism of the given group.
    pub fn is_automorphism(&self, g: &GroupTable) -> bool {
        self.dom == g.order()
            && self.cod == g.order()
            && self.is_bijective()
            && self.is_homomorphism(g, g)
    }
}

/// Pointwise product (φ + ψ)(u) = φ(u)·ψ(u) in the common codomain group.
pub fn map_add(phi: &MapTable, psi: &MapTable, cod: &GroupTable) -> Result<MapTable> {
    if phi.dom != psi.dom {
        return Err(Error::MapType(format!(
            "pointwise product of maps with domains {} and {}",
            phi.dom, psi.dom
        )));
    }
    if phi.cod != cod.order() || psi.cod != cod.order() {
        return Err(Error::MapType(format!(
            "pointwise product needs both codomains of size {}, got {} and {}",
            cod.order(),
            phi.cod,
            psi.cod
        )));
    }
    MapTable::from_fn(phi.dom, cod.order(), |u| cod.mul(phi.tbl[u], psi.tbl[u]))
}

/// Composition (η ∘ φ)(u) = η(φ(u)).
pub fn map_compose(eta: &MapTable, phi: &MapTable) -> Result<MapTable> {
    if phi.cod != eta.dom {
        return Err(Error::MapType(format!(
            "composing a map into a {}-element set with one from a {}-element set",
            phi.cod, eta.dom
        )));
    }
    MapTable::from_fn(phi.dom, eta.cod, |u| eta.tbl[phi.tbl[u]])
}

fn check_action_signature(phi: &MapTable, psi: &MapTable, mp: &MatchedPair) -> Result<()> {
    if phi.dom != psi.dom {
        return Err(Error::MapType(format!(
            "action combination of maps with domains {} and {}",
            phi.dom, psi.dom
        )));
    }
    if phi.cod != mp.k().order() || psi.cod != mp.h().order() {
        return Err(Error::MapType(format!(
            "action combination needs codomains |K| = {} and |H| = {}, got {} and {}",
            mp.k().order(),
            mp.h().order(),
            phi.cod,
            psi.cod
        )));
    }
    Ok(())
}

/// Pointwise action (φ·ψ)(u) = σ(φ(u), ψ(u)): a K-valued map pushing an
/// H-valued one. Result is H-valued.
pub fn map_dot(phi: &MapTable, psi: &MapTable, mp: &MatchedPair) -> Result<MapTable> {
    check_action_signature(phi, psi, mp)?;
    MapTable::from_fn(phi.dom, mp.h().order(), |u| mp.sigma(phi.tbl[u], psi.tbl[u]))
}

/// Pointwise transfer φ^ψ(u) = θ(φ(u), ψ(u)): a K-valued map carried across
/// an H-valued one. Result is K-valued.
pub fn map_exp(phi: &MapTable, psi: &MapTable, mp: &MatchedPair) -> Result<MapTable> {
    check_action_signature(phi, psi, mp)?;
    MapTable::from_fn(phi.dom, mp.k().order(), |u| mp.theta(phi.tbl[u], psi.tbl[u]))
}

/// Preimage of the codomain group's identity.
pub fn kernel_of(phi: &MapTable, cod: &GroupTable) -> Result<Subset> {
    if phi.cod != cod.order() {
        return Err(Error::MapType(format!(
            "kernel against a codomain of size {}, map has {}",
            cod.order(),
            phi.cod
        )));
    }
    Ok(Subset::new(
        (0..phi.dom).filter(|&u| phi.tbl[u] == cod.id()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;

    /// The matched pair whose product is the symmetric group on 3 letters.
    fn s3_pair() -> MatchedPair {
        let h = cyclic_group(2).unwrap();
        let k = cyclic_group(3).unwrap();
        let mut sigma = vec![0; 6];
        let mut theta = vec![0; 6];
        for kk in 0..3 {
            for hh in 0..2 {
                sigma[kk * 2 + hh] = hh;
                theta[kk * 2 + hh] = if hh == 0 { kk } else { (3 - kk) % 3 };
            }
        }
        MatchedPair::new(h, k, sigma, theta).unwrap()
    }

    #[test]
    fn constant_identity_is_additive_zero() {
        let z4 = cyclic_group(4).unwrap();
        let zero = MapTable::constant_identity(3, &z4);
        let sum = map_add(&zero, &zero, &z4).unwrap();
        assert_eq!(sum, zero);
        // Adding zero to anything returns it (abelian codomain).
        let phi = MapTable::new(3, 4, vec![2, 1, 3]).unwrap();
        assert_eq!(map_add(&phi, &zero, &z4).unwrap(), phi);
        assert_eq!(map_add(&zero, &phi, &z4).unwrap(), phi);
    }

    #[test]
    fn compose_with_identity() {
        let phi = MapTable::new(3, 4, vec![2, 1, 3]).unwrap();
        assert_eq!(map_compose(&MapTable::identity(4), &phi).unwrap(), phi);
        assert_eq!(map_compose(&phi, &MapTable::identity(3)).unwrap(), phi);
    }

    #[test]
    fn dot_and_exp_match_pointwise_actions() {
        let mp = s3_pair();
        // φ: Z4-indexed into K, ψ: same domain into H, arbitrary values.
        let phi = MapTable::new(4, 3, vec![0, 1, 2, 1]).unwrap();
        let psi = MapTable::new(4, 2, vec![1, 1, 0, 1]).unwrap();
        let dot = map_dot(&phi, &psi, &mp).unwrap();
        let exp = map_exp(&phi, &psi, &mp).unwrap();
        for u in 0..4 {
            assert_eq!(dot.apply(u), mp.sigma(phi.apply(u), psi.apply(u)));
            assert_eq!(exp.apply(u), mp.theta(phi.apply(u), psi.apply(u)));
        }
        assert_eq!(dot.cod(), 2);
        assert_eq!(exp.cod(), 3);
    }

    #[test]
    fn signature_mismatches_are_type_errors() {
        let z4 = cyclic_group(4).unwrap();
        let mp = s3_pair();
        let phi = MapTable::new(3, 4, vec![0, 1, 2]).unwrap();
        let psi = MapTable::new(2, 4, vec![0, 1]).unwrap();
        assert!(matches!(map_add(&phi, &psi, &z4), Err(Error::MapType(_))));
        assert!(matches!(
            map_compose(&phi, &MapTable::identity(2)),
            Err(Error::MapType(_))
        ));
        // Dot with an H-valued left operand: wrong codomain for the action.
        let into_h = MapTable::new(3, 2, vec![0, 1, 0]).unwrap();
        assert!(matches!(
            map_dot(&into_h, &into_h, &mp),
            Err(Error::MapType(_))
        ));
        assert!(MapTable::new(2, 3, vec![0, 3]).is_err());
        assert!(MapTable::new(2, 3, vec![0]).is_err());
    }

    #[test]
    fn kernels() {
        let z4 = cyclic_group(4).unwrap();
        let id = MapTable::identity(4);
        assert_eq!(kernel_of(&id, &z4).unwrap().members(), &[0]);
        let zero = MapTable::constant_identity(3, &z4);
        assert_eq!(kernel_of(&zero, &z4).unwrap().members(), &[0, 1, 2]);
        let phi = MapTable::new(4, 4, vec![0, 2, 0, 2]).unwrap();
        assert_eq!(kernel_of(&phi, &z4).unwrap().members(), &[0, 2]);
    }

    #[test]
    fn homomorphism_and_bijection_judgments() {
        let z4 = cyclic_group(4).unwrap();
        let doubling = MapTable::from_fn(4, 4, |x| (2 * x) % 4).unwrap();
        assert!(doubling.is_homomorphism(&z4, &z4));
        assert!(!doubling.is_bijective());
        assert!(!doubling.is_automorphism(&z4));
        let inversion = MapTable::from_fn(4, 4, |x| (4 - x) % 4).unwrap();
        assert!(inversion.is_automorphism(&z4));
        let shift = MapTable::from_fn(4, 4, |x| (x + 1) % 4).unwrap();
        assert!(shift.is_bijective());
        assert!(!shift.is_homomorphism(&z4, &z4));
    }
}
