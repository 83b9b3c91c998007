//! Automorphism enumeration and the matrix realization of Aut(G).
//!
//! For a product group G = H ⋈ K with cyclic factors generated by b and a,
//! every automorphism is pinned down by its images of b and a.
//! [`brute_force_aut`] enumerates candidate image pairs with matching element
//! orders, extends each over the normal forms b^i·a^j, and keeps the maps
//! that are bijective and multiplicative on every pair of elements.
//!
//! Each automorphism θ is realized as a 2×2 matrix of maps
//! (α: H→H, β: K→H; γ: H→K, δ: K→K) through the factorizations
//! θ(h) = α(h)·γ(h) and θ(k) = β(k)·δ(k). The admissible matrices are cut
//! out by seven conditions (A1)–(A7); the correspondence T: θ ↦ matrix is a
//! group isomorphism onto that set, with composition given by a closed
//! formula in the pointwise map algebra.

use std::collections::{BTreeMap, HashMap};

use crate::group::GroupTable;
use crate::maps::{map_add, map_compose, map_dot, map_exp, MapTable};
use crate::nt::lcm;
use crate::pair::{ConditionCheck, ConditionReport, MatchedPair, ZsGroup};
use crate::{max_group_order, Error, Result};

/// An automorphism of a group, stored as its permutation of element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    /// The identity automorphism of an n-element group.
    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (0..n).collect() }
    }

    /// Wrap a permutation table, verifying bijectivity and multiplicativity
    /// against the group.
    pub fn from_perm(perm: Vec<usize>, g: &GroupTable) -> Result<Self> {
        let n = g.order();
        if perm.len() != n {
            return Err(Error::MalformedTable(format!(
                "permutation length {} for a group of order {n}",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::MalformedTable(
                    "map is not a bijection of the element set".into(),
                ));
            }
            seen[v] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if perm[g.mul(x, y)] != g.mul(perm[x], perm[y]) {
                    return Err(Error::MalformedTable(format!(
                        "map is not multiplicative at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(Automorphism { perm })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    /// Composition self ∘ inner (inner applied first).
    pub fn compose(&self, inner: &Automorphism) -> Automorphism {
        Automorphism {
            perm: inner.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0usize; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { perm: inv }
    }

    /// Order as a permutation: least e ≥ 1 with self^e = identity, computed
    /// as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.perm.len();
        let mut visited = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.perm[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

/// Histogram of automorphism orders under composition.
pub fn aut_order_spectrum(auts: &[Automorphism]) -> BTreeMap<u64, usize> {
    let mut spectrum = BTreeMap::new();
    for a in auts {
        *spectrum.entry(a.order()).or_insert(0) += 1;
    }
    spectrum
}

fn cyclic_generator(g: &GroupTable) -> Option<usize> {
    (0..g.order()).find(|&x| g.order_of(x) == g.order())
}

/// Discrete logs of every element to the given generator.
fn dlog_table(g: &GroupTable, gen: usize) -> Vec<usize> {
    let mut tbl = vec![0usize; g.order()];
    let mut acc = g.id();
    for e in 0..g.order() {
        tbl[acc] = e;
        acc = g.mul(acc, gen);
    }
    tbl
}

/// Enumerate Aut(G) under the configured scale cap (see
/// [`crate::max_group_order`]).
pub fn brute_force_aut(zs: &ZsGroup) -> Result<Vec<Automorphism>> {
    brute_force_aut_capped(zs, max_group_order())
}

/// Enumerate all automorphisms of the product group.
///
/// Requires both factors cyclic, so that G is generated by the embedded
/// generators b (of H) and a (of K). Candidate images for (b, a) are pairs
/// of elements matching their orders; each candidate extends over the normal
/// forms b^i·a^j and survives only if bijective and multiplicative on all
/// |G|² pairs. The result is sorted with the identity first, then
/// lexicographically by permutation table.
pub fn brute_force_aut_capped(zs: &ZsGroup, cap: usize) -> Result<Vec<Automorphism>> {
    let g = zs.group();
    let n = g.order();
    if n > cap {
        return Err(Error::ScaleExceeded { order: n, cap });
    }
    let (ht, kt) = (zs.pair().h(), zs.pair().k());
    let h_gen = cyclic_generator(ht).ok_or(Error::NotTwoGenerated)?;
    let k_gen = cyclic_generator(kt).ok_or(Error::NotTwoGenerated)?;
    let b = zs.embed_h(h_gen);
    let a = zs.embed_k(k_gen);
    if g.generated_by(&[b, a]).len() != n {
        return Err(Error::NotTwoGenerated);
    }
    let h_exp = dlog_table(ht, h_gen);
    let k_exp = dlog_table(kt, k_gen);
    let (nh, nk) = (ht.order(), kt.order());

    let element_order: Vec<usize> = (0..n).map(|x| g.order_of(x)).collect();
    let cand_b: Vec<usize> = (0..n).filter(|&x| element_order[x] == element_order[b]).collect();
    let cand_a: Vec<usize> = (0..n).filter(|&y| element_order[y] == element_order[a]).collect();

    let mut found: Vec<Automorphism> = Vec::new();
    let mut perm = vec![0usize; n];
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    for &x in &cand_b {
        // Powers of the candidate image of b.
        let mut pow_x = Vec::with_capacity(nh);
        let mut acc = g.id();
        for _ in 0..nh {
            pow_x.push(acc);
            acc = g.mul(acc, x);
        }
        'images: for &y in &cand_a {
            let mut pow_y = Vec::with_capacity(nk);
            let mut acc = g.id();
            for _ in 0..nk {
                pow_y.push(acc);
                acc = g.mul(acc, y);
            }
            // Extend over normal forms and check bijectivity.
            stamp += 1;
            for z in 0..n {
                let (hp, kp) = zs.factor(z);
                let img = g.mul(pow_x[h_exp[hp]], pow_y[k_exp[kp]]);
                if seen[img] == stamp {
                    continue 'images;
                }
                seen[img] = stamp;
                perm[z] = img;
            }
            // Full multiplicativity sweep with early exit.
            let multiplicative = (0..n)
                .all(|u| (0..n).all(|v| perm[g.mul(u, v)] == g.mul(perm[u], perm[v])));
            if multiplicative {
                found.push(Automorphism { perm: perm.clone() });
            }
        }
    }
    found.sort_unstable();
    Ok(found)
}

/// The matrix of maps realizing one automorphism: θ(h) = α(h)·γ(h) and
/// θ(k) = β(k)·δ(k) in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    /// H → H entry.
    pub alpha: MapTable,
    /// K → H entry.
    pub beta: MapTable,
    /// H → K entry.
    pub gamma: MapTable,
    /// K → K entry.
    pub delta: MapTable,
}

impl AutMatrix {
    /// The matrix of the identity automorphism: identity on the diagonal,
    /// constant-identity off it.
    pub fn identity(mp: &MatchedPair) -> Self {
        let (nh, nk) = (mp.h().order(), mp.k().order());
        AutMatrix {
            alpha: MapTable::identity(nh),
            beta: MapTable::constant_identity(nk, mp.h()),
            gamma: MapTable::constant_identity(nh, mp.k()),
            delta: MapTable::identity(nk),
        }
    }
}

/// Check the seven admissibility conditions on a matrix of maps.
///
/// - A1: α(h·h′) = α(h)·σ(γ(h), α(h′))
/// - A2: γ(h·h′) = θ(γ(h), α(h′))·γ(h′)
/// - A3: β(k·k′) = β(k)·σ(δ(k), β(k′))
/// - A4: δ(k·k′) = θ(δ(k), β(k′))·δ(k′)
/// - A5: β(k)·σ(δ(k), α(h)) = α(σ(k, h))·σ(γ(σ(k, h)), β(θ(k, h)))
/// - A6: θ(δ(k), α(h))·γ(h) = θ(γ(σ(k, h)), β(θ(k, h)))·δ(θ(k, h))
/// - A7: (h, k) ↦ (α(h)·σ(γ(h), β(k)), θ(γ(h), β(k))·δ(k)) is a bijection
///   of H × K
///
/// Panics if the map signatures do not match the pair.
pub fn check_a_conditions(m: &AutMatrix, mp: &MatchedPair) -> ConditionReport {
    let (ht, kt) = (mp.h(), mp.k());
    let (nh, nk) = (ht.order(), kt.order());
    assert!(
        m.alpha.dom() == nh
            && m.alpha.cod() == nh
            && m.beta.dom() == nk
            && m.beta.cod() == nh
            && m.gamma.dom() == nh
            && m.gamma.cod() == nk
            && m.delta.dom() == nk
            && m.delta.cod() == nk,
        "matrix signature does not match the pair"
    );
    let al = |h: usize| m.alpha.apply(h);
    let be = |k: usize| m.beta.apply(k);
    let ga = |h: usize| m.gamma.apply(h);
    let de = |k: usize| m.delta.apply(k);
    let lh = |h: usize| ht.label(h);
    let lk = |k: usize| kt.label(k);

    let mut a1 = None;
    let mut a2 = None;
    'hh: for h in 0..nh {
        for hp in 0..nh {
            let prod = ht.mul(h, hp);
            if a1.is_none() {
                let rhs = ht.mul(al(h), mp.sigma(ga(h), al(hp)));
                if al(prod) != rhs {
                    a1 = Some(format!(
                        "alpha({}·{}) = {} but alpha({})·sigma(gamma({}), alpha({})) = {}",
                        lh(h), lh(hp), lh(al(prod)), lh(h), lh(h), lh(hp), lh(rhs)
                    ));
                }
            }
            if a2.is_none() {
                let rhs = kt.mul(mp.theta(ga(h), al(hp)), ga(hp));
                if ga(prod) != rhs {
                    a2 = Some(format!(
                        "gamma({}·{}) = {} but theta(gamma({}), alpha({}))·gamma({}) = {}",
                        lh(h), lh(hp), lk(ga(prod)), lh(h), lh(hp), lh(hp), lk(rhs)
                    ));
                }
            }
            if a1.is_some() && a2.is_some() {
                break 'hh;
            }
        }
    }

    let mut a3 = None;
    let mut a4 = None;
    'kk: for k in 0..nk {
        for kp in 0..nk {
            let prod = kt.mul(k, kp);
            if a3.is_none() {
                let rhs = ht.mul(be(k), mp.sigma(de(k), be(kp)));
                if be(prod) != rhs {
                    a3 = Some(format!(
                        "beta({}·{}) = {} but beta({})·sigma(delta({}), beta({})) = {}",
                        lk(k), lk(kp), lh(be(prod)), lk(k), lk(k), lk(kp), lh(rhs)
                    ));
                }
            }
            if a4.is_none() {
                let rhs = kt.mul(mp.theta(de(k), be(kp)), de(kp));
                if de(prod) != rhs {
                    a4 = Some(format!(
                        "delta({}·{}) = {} but theta(delta({}), beta({}))·delta({}) = {}",
                        lk(k), lk(kp), lk(de(prod)), lk(k), lk(kp), lk(kp), lk(rhs)
                    ));
                }
            }
            if a3.is_some() && a4.is_some() {
                break 'kk;
            }
        }
    }

    let mut a5 = None;
    let mut a6 = None;
    'kh: for k in 0..nk {
        for h in 0..nh {
            let pushed = mp.sigma(k, h);
            let carried = mp.theta(k, h);
            if a5.is_none() {
                let lhs = ht.mul(be(k), mp.sigma(de(k), al(h)));
                let rhs = ht.mul(al(pushed), mp.sigma(ga(pushed), be(carried)));
                if lhs != rhs {
                    a5 = Some(format!(
                        "at (k, h) = ({}, {}): beta(k)·sigma(delta(k), alpha(h)) = {} \
                         but alpha(sigma(k, h))·sigma(gamma(sigma(k, h)), beta(theta(k, h))) = {}",
                        lk(k), lh(h), lh(lhs), lh(rhs)
                    ));
                }
            }
            if a6.is_none() {
                let lhs = kt.mul(mp.theta(de(k), al(h)), ga(h));
                let rhs = kt.mul(mp.theta(ga(pushed), be(carried)), de(carried));
                if lhs != rhs {
                    a6 = Some(format!(
                        "at (k, h) = ({}, {}): theta(delta(k), alpha(h))·gamma(h) = {} \
                         but theta(gamma(sigma(k, h)), beta(theta(k, h)))·delta(theta(k, h)) = {}",
                        lk(k), lh(h), lk(lhs), lk(rhs)
                    ));
                }
            }
            if a5.is_some() && a6.is_some() {
                break 'kh;
            }
        }
    }

    // A7: the combined map on normal forms must be a bijection of H × K.
    let mut a7 = None;
    let mut hit = vec![false; nh * nk];
    'bij: for h in 0..nh {
        for k in 0..nk {
            let ih = ht.mul(al(h), mp.sigma(ga(h), be(k)));
            let ik = kt.mul(mp.theta(ga(h), be(k)), de(k));
            let slot = ih * nk + ik;
            if hit[slot] {
                a7 = Some(format!(
                    "image ({}, {}) reached twice, second time from ({}, {})",
                    lh(ih), lk(ik), lh(h), lk(k)
                ));
                break 'bij;
            }
            hit[slot] = true;
        }
    }

    let check = |id, statement, witness: Option<String>| ConditionCheck {
        id,
        statement,
        holds: witness.is_none(),
        witness,
    };
    ConditionReport {
        checks: vec![
            check("A1", "alpha(h·h′) = alpha(h)·sigma(gamma(h), alpha(h′))", a1),
            check("A2", "gamma(h·h′) = theta(gamma(h), alpha(h′))·gamma(h′)", a2),
            check("A3", "beta(k·k′) = beta(k)·sigma(delta(k), beta(k′))", a3),
            check("A4", "delta(k·k′) = theta(delta(k), beta(k′))·delta(k′)", a4),
            check(
                "A5",
                "beta(k)·sigma(delta(k), alpha(h)) = alpha(sigma(k, h))·sigma(gamma(sigma(k, h)), beta(theta(k, h)))",
                a5,
            ),
            check(
                "A6",
                "theta(delta(k), alpha(h))·gamma(h) = theta(gamma(sigma(k, h)), beta(theta(k, h)))·delta(theta(k, h))",
                a6,
            ),
            check("A7", "(h, k) ↦ (alpha(h)·sigma(gamma(h), beta(k)), theta(gamma(h), beta(k))·delta(k)) is bijective", a7),
        ],
    }
}

fn first_failure(report: &ConditionReport) -> Option<(&'static str, String)> {
    report
        .checks
        .iter()
        .find(|c| !c.holds)
        .map(|c| (c.id, c.witness.clone().unwrap_or_default()))
}

/// Read off the matrix of an automorphism from its action on the embedded
/// factors: (α(h), γ(h)) = factor(θ(h·1)) and (β(k), δ(k)) = factor(θ(1·k)).
pub fn aut_to_matrix(theta: &Automorphism, zs: &ZsGroup) -> AutMatrix {
    let (nh, nk) = (zs.pair().h().order(), zs.pair().k().order());
    let mut alpha = vec![0usize; nh];
    let mut gamma = vec![0usize; nh];
    for h in 0..nh {
        let (ah, gh) = zs.factor(theta.apply(zs.embed_h(h)));
        alpha[h] = ah;
        gamma[h] = gh;
    }
    let mut beta = vec![0usize; nk];
    let mut delta = vec![0usize; nk];
    for k in 0..nk {
        let (bk, dk) = zs.factor(theta.apply(zs.embed_k(k)));
        beta[k] = bk;
        delta[k] = dk;
    }
    AutMatrix {
        alpha: MapTable::new(nh, nh, alpha).expect("alpha shape"),
        beta: MapTable::new(nk, nh, beta).expect("beta shape"),
        gamma: MapTable::new(nh, nk, gamma).expect("gamma shape"),
        delta: MapTable::new(nk, nk, delta).expect("delta shape"),
    }
}

/// Realize an admissible matrix as the automorphism
/// θ(h·k) = (α(h)·γ(h))·(β(k)·δ(k)).
///
/// Fails with the first violated condition if the matrix is not admissible.
/// The constructed map is re-verified as an automorphism.
pub fn matrix_to_aut(m: &AutMatrix, zs: &ZsGroup) -> Result<Automorphism> {
    let report = check_a_conditions(m, zs.pair());
    if let Some((condition, witness)) = first_failure(&report) {
        return Err(Error::NotAutMatrix { condition: condition.into(), witness });
    }
    let g = zs.group();
    let (nh, nk) = (zs.pair().h().order(), zs.pair().k().order());
    let mut perm = vec![0usize; g.order()];
    for h in 0..nh {
        let img_h = zs.embed(m.alpha.apply(h), m.gamma.apply(h));
        for k in 0..nk {
            let img_k = zs.embed(m.beta.apply(k), m.delta.apply(k));
            perm[zs.embed(h, k)] = g.mul(img_h, img_k);
        }
    }
    Automorphism::from_perm(perm, g)
}

/// Compose two admissible matrices without re-validating the operands.
pub(crate) fn compose_matrices_unchecked(
    mp_prime: &AutMatrix,
    m: &AutMatrix,
    pair: &MatchedPair,
) -> Result<AutMatrix> {
    let pa = map_compose(&mp_prime.alpha, &m.alpha)?; // α′α : H→H
    let pb = map_compose(&mp_prime.alpha, &m.beta)?; // α′β : K→H
    let ga = map_compose(&mp_prime.gamma, &m.alpha)?; // γ′α : H→K
    let gb = map_compose(&mp_prime.gamma, &m.beta)?; // γ′β : K→K
    let bg = map_compose(&mp_prime.beta, &m.gamma)?; // β′γ : H→H
    let bd = map_compose(&mp_prime.beta, &m.delta)?; // β′δ : K→H
    let dg = map_compose(&mp_prime.delta, &m.gamma)?; // δ′γ : H→K
    let dd = map_compose(&mp_prime.delta, &m.delta)?; // δ′δ : K→K
    Ok(AutMatrix {
        alpha: map_add(&pa, &map_dot(&ga, &bg, pair)?, pair.h())?,
        beta: map_add(&pb, &map_dot(&gb, &bd, pair)?, pair.h())?,
        gamma: map_add(&map_exp(&ga, &bg, pair)?, &dg, pair.k())?,
        delta: map_add(&map_exp(&gb, &bd, pair)?, &dd, pair.k())?,
    })
}

/// The product matrix (α′α + γ′α·β′γ, α′β + γ′β·β′δ; (γ′α)^{β′γ} + δ′γ,
/// (γ′β)^{β′δ} + δ′δ), i.e. the matrix of θ′ ∘ θ when the operands are the
/// matrices of θ′ and θ.
///
/// Both operands and the result are validated against (A1)–(A7).
pub fn compose_matrices(
    mp_prime: &AutMatrix,
    m: &AutMatrix,
    pair: &MatchedPair,
) -> Result<AutMatrix> {
    for (name, operand) in [("left", mp_prime), ("right", m)] {
        let report = check_a_conditions(operand, pair);
        if let Some((condition, witness)) = first_failure(&report) {
            return Err(Error::NotAutMatrix {
                condition: condition.into(),
                witness: format!("{name} operand: {witness}"),
            });
        }
    }
    let result = compose_matrices_unchecked(mp_prime, m, pair)?;
    let report = check_a_conditions(&result, pair);
    if let Some((condition, witness)) = first_failure(&report) {
        return Err(Error::NotAutMatrix {
            condition: condition.into(),
            witness: format!("composition left the admissible set: {witness}"),
        });
    }
    Ok(result)
}

/// The enumerated admissible-matrix group: Aut(G) alongside its matrix
/// images, with index structure for membership and product lookups.
///
/// Index 0 is the identity. The matrix list is the image of the sorted
/// automorphism list, so matrix index i corresponds to automorphism index i.
#[derive(Debug, Clone)]
pub struct ASet {
    auts: Vec<Automorphism>,
    matrices: Vec<AutMatrix>,
    index: HashMap<AutMatrix, usize>,
    by_perm: HashMap<Vec<usize>, usize>,
    inverse: Vec<usize>,
}

impl ASet {
    pub fn len(&self) -> usize {
        self.auts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.auts.is_empty()
    }

    pub fn auts(&self) -> &[Automorphism] {
        &self.auts
    }

    pub fn matrices(&self) -> &[AutMatrix] {
        &self.matrices
    }

    pub fn aut(&self, i: usize) -> &Automorphism {
        &self.auts[i]
    }

    pub fn matrix(&self, i: usize) -> &AutMatrix {
        &self.matrices[i]
    }

    /// Index of the identity (always 0 by the sort order).
    pub fn identity_index(&self) -> usize {
        0
    }

    /// Index of a matrix in the enumeration, if it is a member.
    pub fn lookup(&self, m: &AutMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the inverse of member i.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Compose members i ∘ j (in the underlying automorphism group, which the
    /// correspondence transports to the matrix product) and locate the
    /// result. `None` would mean the set is not closed — a refutation.
    pub fn compose_index(&self, i: usize, j: usize) -> Option<usize> {
        let composed = self.auts[i].compose(&self.auts[j]);
        self.by_perm.get(composed.perm()).copied()
    }
}

/// Enumerate Aut(G) and materialize the matrix group as its image under the
/// correspondence θ ↦ (α, β; γ, δ).
pub fn a_set(zs: &ZsGroup) -> Result<ASet> {
    let auts = brute_force_aut(zs)?;
    let matrices: Vec<AutMatrix> = auts.iter().map(|t| aut_to_matrix(t, zs)).collect();
    let mut index = HashMap::with_capacity(matrices.len());
    for (i, m) in matrices.iter().enumerate() {
        if index.insert(m.clone(), i).is_some() {
            return Err(Error::MalformedTable(
                "two automorphisms produced the same matrix".into(),
            ));
        }
    }
    let mut by_perm: HashMap<Vec<usize>, usize> = HashMap::with_capacity(auts.len());
    for (i, t) in auts.iter().enumerate() {
        by_perm.insert(t.perm().to_vec(), i);
    }
    let inverse = auts
        .iter()
        .map(|t| {
            let inv = t.inverse();
            *by_perm.get(inv.perm()).expect("inverse closed in Aut(G)")
        })
        .collect();
    Ok(ASet { auts, matrices, index, by_perm, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;
    use crate::pair::{build_zappa, validate_matched_pair};

    fn s3() -> ZsGroup {
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
        build_zappa(MatchedPair::new(h, k, sigma, theta).unwrap()).unwrap()
    }

    fn direct(nh: usize, nk: usize) -> ZsGroup {
        build_zappa(MatchedPair::trivial(
            cyclic_group(nh).unwrap(),
            cyclic_group(nk).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn trivial_group_has_one_automorphism() {
        let zs = direct(1, 1);
        let auts = brute_force_aut(&zs).unwrap();
        assert_eq!(auts.len(), 1);
        assert_eq!(auts[0], Automorphism::identity(1));
    }

    #[test]
    fn z4_times_z2_has_eight_automorphisms() {
        let auts = brute_force_aut(&direct(4, 2)).unwrap();
        assert_eq!(auts.len(), 8);
        assert_eq!(auts[0], Automorphism::identity(8));
    }

    #[test]
    fn z6_has_phi_six_automorphisms() {
        assert_eq!(brute_force_aut(&direct(2, 3)).unwrap().len(), 2);
    }

    #[test]
    fn s3_automorphism_group() {
        // Aut of the symmetric group on 3 letters is the group itself.
        let auts = brute_force_aut(&s3()).unwrap();
        assert_eq!(auts.len(), 6);
        assert_eq!(aut_order_spectrum(&auts), BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
    }

    #[test]
    fn scale_cap_enforced() {
        match brute_force_aut_capped(&s3(), 4) {
            Err(Error::ScaleExceeded { order: 6, cap: 4 }) => {}
            other => panic!("expected scale error, got {other:?}"),
        }
    }

    #[test]
    fn non_cyclic_factor_rejected() {
        let klein = crate::group::direct_product(
            &cyclic_group(2).unwrap(),
            &cyclic_group(2).unwrap(),
        );
        let zs = build_zappa(MatchedPair::trivial(klein, cyclic_group(1).unwrap())).unwrap();
        assert!(matches!(brute_force_aut(&zs), Err(Error::NotTwoGenerated)));
    }

    #[test]
    fn identity_matrix_round_trip() {
        let zs = s3();
        let id_matrix = AutMatrix::identity(zs.pair());
        assert!(check_a_conditions(&id_matrix, zs.pair()).all_hold());
        let theta = matrix_to_aut(&id_matrix, &zs).unwrap();
        assert_eq!(theta, Automorphism::identity(6));
        let back = aut_to_matrix(&theta, &zs);
        assert_eq!(back, id_matrix);
    }

    #[test]
    fn every_automorphism_round_trips_through_its_matrix() {
        let zs = s3();
        for theta in brute_force_aut(&zs).unwrap() {
            let m = aut_to_matrix(&theta, &zs);
            let report = check_a_conditions(&m, zs.pair());
            assert!(report.all_hold(), "failed: {:?}", report.failed_ids());
            assert_eq!(matrix_to_aut(&m, &zs).unwrap(), theta);
        }
    }

    #[test]
    fn composition_formula_matches_permutation_composition() {
        let zs = s3();
        let auts = brute_force_aut(&zs).unwrap();
        for tp in &auts {
            for t in &auts {
                let composed = compose_matrices(
                    &aut_to_matrix(tp, &zs),
                    &aut_to_matrix(t, &zs),
                    zs.pair(),
                )
                .unwrap();
                assert_eq!(composed, aut_to_matrix(&tp.compose(t), &zs));
            }
        }
    }

    #[test]
    fn compose_with_identity_matrix() {
        let zs = s3();
        let auts = brute_force_aut(&zs).unwrap();
        let id = AutMatrix::identity(zs.pair());
        for t in &auts {
            let m = aut_to_matrix(t, &zs);
            assert_eq!(compose_matrices(&id, &m, zs.pair()).unwrap(), m);
            assert_eq!(compose_matrices(&m, &id, zs.pair()).unwrap(), m);
        }
    }

    #[test]
    fn every_member_has_an_inverse_in_the_set() {
        let zs = s3();
        let aset = a_set(&zs).unwrap();
        let id = AutMatrix::identity(zs.pair());
        for i in 0..aset.len() {
            let j = aset.inverse_index(i);
            let prod =
                compose_matrices_unchecked(aset.matrix(i), aset.matrix(j), zs.pair()).unwrap();
            assert_eq!(prod, id);
        }
    }

    #[test]
    fn corrupted_beta_fails_a3_with_witness() {
        let zs = s3();
        let mut m = AutMatrix::identity(zs.pair());
        // β constant at b instead of the identity.
        m.beta = MapTable::new(3, 2, vec![1, 1, 1]).unwrap();
        let report = check_a_conditions(&m, zs.pair());
        assert!(report.failed_ids().contains(&"A3"));
        match matrix_to_aut(&m, &zs) {
            Err(Error::NotAutMatrix { condition, witness }) => {
                assert_eq!(condition, "A3");
                assert!(!witness.is_empty());
            }
            other => panic!("expected admissibility error, got {other:?}"),
        }
    }

    #[test]
    fn constant_delta_fails_only_bijectivity() {
        let zs = direct(2, 3);
        let mut m = AutMatrix::identity(zs.pair());
        m.delta = MapTable::constant_identity(3, zs.pair().k());
        let report = check_a_conditions(&m, zs.pair());
        assert_eq!(report.failed_ids(), vec!["A7"]);
    }

    #[test]
    fn identity_matrix_entries() {
        let zs = s3();
        let auts = brute_force_aut(&zs).unwrap();
        let m = aut_to_matrix(&auts[0], &zs);
        assert_eq!(m, AutMatrix::identity(zs.pair()));
    }

    #[test]
    fn aut_enumeration_is_sorted_and_identity_first() {
        let auts = brute_force_aut(&direct(4, 2)).unwrap();
        assert_eq!(auts[0], Automorphism::identity(8));
        let mut sorted = auts.clone();
        sorted.sort();
        assert_eq!(auts, sorted);
    }

    #[test]
    fn automorphism_orders() {
        let auts = brute_force_aut(&s3()).unwrap();
        for t in &auts {
            let mut acc = Automorphism::identity(6);
            for _ in 0..t.order() {
                acc = acc.compose(t);
            }
            assert_eq!(acc, Automorphism::identity(6));
            // Minimality: no smaller positive power is the identity.
            let mut acc = Automorphism::identity(6);
            for _ in 0..t.order() - 1 {
                acc = acc.compose(t);
                assert_ne!(acc, Automorphism::identity(6));
            }
        }
    }

    #[test]
    fn matrices_are_distinct_per_automorphism() {
        let zs = direct(4, 2);
        let aset = a_set(&zs).unwrap();
        assert_eq!(aset.len(), 8);
        for (i, m) in aset.matrices().iter().enumerate() {
            assert_eq!(aset.lookup(m), Some(i));
        }
        assert_eq!(aset.identity_index(), 0);
    }

    #[test]
    fn validated_pair_reused_by_engine() {
        // The engine assumes its input pair is matched; confirm for the
        // fixtures used here.
        let zs = s3();
        assert!(validate_matched_pair(zs.pair()).all_hold());
    }
}
