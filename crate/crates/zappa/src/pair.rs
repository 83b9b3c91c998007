//! Matched pairs of groups and the product group they knit together.
//!
//! A matched pair is two finite groups H, K with mutual actions
//! σ : K × H → H and θ : K × H → K satisfying six compatibility conditions
//! (C1–C6 below). Exactly then does the carrier H × K become a group under
//!
//! ```text
//! (h, k)·(h′, k′) = (h·σ(k, h′), θ(k, h′)·k′)
//! ```
//!
//! with H and K sitting inside it as subgroups intersecting trivially, and
//! every element factoring uniquely as h·k. Conversely, any group with such
//! an exact factorization G = HK yields a matched pair, which
//! [`matched_pair_from_internal`] recovers. When one of the actions is
//! trivial the product degenerates to a semidirect or direct product;
//! [`semidirect_kind`] classifies this.

use serde::Serialize;

use crate::group::{cyclic_group, subgroup_table, GroupTable, Subset};
use crate::{Error, Result};

/// Two groups with mutual actions, as dense tables indexed `[k·|H| + h]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPair {
    h: GroupTable,
    k: GroupTable,
    /// σ(k, h) ∈ H at `sigma[k * |H| + h]`.
    sigma: Vec<usize>,
    /// θ(k, h) ∈ K at `theta[k * |H| + h]`.
    theta: Vec<usize>,
}

impl MatchedPair {
    /// Wrap action tables over the given factors, checking shape and range
    /// only. Use [`validate_matched_pair`] for the compatibility conditions.
    pub fn new(h: GroupTable, k: GroupTable, sigma: Vec<usize>, theta: Vec<usize>) -> Result<Self> {
        let (nh, nk) = (h.order(), k.order());
        if sigma.len() != nh * nk || theta.len() != nh * nk {
            return Err(Error::MalformedTable(format!(
                "action tables have lengths {} and {}, expected {}",
                sigma.len(),
                theta.len(),
                nh * nk
            )));
        }
        if let Some(&v) = sigma.iter().find(|&&v| v >= nh) {
            return Err(Error::MalformedTable(format!(
                "sigma value {v} out of range for first factor of order {nh}"
            )));
        }
        if let Some(&v) = theta.iter().find(|&&v| v >= nk) {
            return Err(Error::MalformedTable(format!(
                "theta value {v} out of range for second factor of order {nk}"
            )));
        }
        Ok(MatchedPair { h, k, sigma, theta })
    }

    /// The pair with both actions trivial; its product is H × K.
    pub fn trivial(h: GroupTable, k: GroupTable) -> Self {
        let (nh, nk) = (h.order(), k.order());
        let mut sigma = Vec::with_capacity(nh * nk);
        let mut theta = Vec::with_capacity(nh * nk);
        for kk in 0..nk {
            for hh in 0..nh {
                sigma.push(hh);
                theta.push(kk);
            }
        }
        MatchedPair { h, k, sigma, theta }
    }

    /// First factor H.
    pub fn h(&self) -> &GroupTable {
        &self.h
    }

    /// Second factor K.
    pub fn k(&self) -> &GroupTable {
        &self.k
    }

    /// σ(k, h): the element of H that k pushes h to.
    #[inline]
    pub fn sigma(&self, k: usize, h: usize) -> usize {
        self.sigma[k * self.h.order() + h]
    }

    /// θ(k, h): the element of K that h pushes k to.
    #[inline]
    pub fn theta(&self, k: usize, h: usize) -> usize {
        self.theta[k * self.h.order() + h]
    }

    /// Raw σ table, row-major by k.
    pub fn sigma_table(&self) -> &[usize] {
        &self.sigma
    }

    /// Raw θ table, row-major by k.
    pub fn theta_table(&self) -> &[usize] {
        &self.theta
    }
}

/// Outcome of checking one compatibility condition.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    /// Short identifier, "C1" through "C6".
    pub id: &'static str,
    /// What the condition asserts, in formula form.
    pub statement: &'static str,
    pub holds: bool,
    /// First counterexample found, rendered with element labels.
    pub witness: Option<String>,
}

/// Results of all six compatibility checks, in fixed order C1..C6.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    /// Whether every condition holds.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Identifiers of the failed conditions, in order.
    pub fn failed_ids(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.id).collect()
    }
}

/// Check the six matched-pair conditions, reporting the first counterexample
/// of each failed one:
///
/// - C1: σ(1, h) = h and θ(k, 1) = k (identities act/transfer trivially)
/// - C2: σ(k, 1) = 1 and θ(1, h) = 1
/// - C3: σ(k·k′, h) = σ(k, σ(k′, h))
/// - C4: θ(k·k′, h) = θ(k, σ(k′, h))·θ(k′, h)
/// - C5: σ(k, h·h′) = σ(k, h)·σ(θ(k, h), h′)
/// - C6: θ(k, h·h′) = θ(θ(k, h), h′)
pub fn validate_matched_pair(p: &MatchedPair) -> ConditionReport {
    let (ht, kt) = (p.h(), p.k());
    let (nh, nk) = (ht.order(), kt.order());
    let lh = |h: usize| ht.label(h);
    let lk = |k: usize| kt.label(k);

    let c1 = {
        let mut witness = None;
        'search: {
            for h in 0..nh {
                let got = p.sigma(kt.id(), h);
                if got != h {
                    witness =
                        Some(format!("sigma(1, {}) = {}, expected {}", lh(h), lh(got), lh(h)));
                    break 'search;
                }
            }
            for k in 0..nk {
                let got = p.theta(k, ht.id());
                if got != k {
                    witness =
                        Some(format!("theta({}, 1) = {}, expected {}", lk(k), lk(got), lk(k)));
                    break 'search;
                }
            }
        }
        witness
    };

    let c2 = {
        let mut witness = None;
        'search: {
            for k in 0..nk {
                let got = p.sigma(k, ht.id());
                if got != ht.id() {
                    witness = Some(format!("sigma({}, 1) = {}, expected 1", lk(k), lh(got)));
                    break 'search;
                }
            }
            for h in 0..nh {
                let got = p.theta(kt.id(), h);
                if got != kt.id() {
                    witness = Some(format!("theta(1, {}) = {}, expected 1", lh(h), lk(got)));
                    break 'search;
                }
            }
        }
        witness
    };

    let mut c3 = None;
    let mut c4 = None;
    'kk: for k in 0..nk {
        for kp in 0..nk {
            let kkp = kt.mul(k, kp);
            for h in 0..nh {
                let step = p.sigma(kp, h);
                if c3.is_none() && p.sigma(kkp, h) != p.sigma(k, step) {
                    c3 = Some(format!(
                        "sigma({}·{}, {}) = {} but sigma({}, sigma({}, {})) = {}",
                        lk(k),
                        lk(kp),
                        lh(h),
                        lh(p.sigma(kkp, h)),
                        lk(k),
                        lk(kp),
                        lh(h),
                        lh(p.sigma(k, step))
                    ));
                }
                if c4.is_none() {
                    let rhs = kt.mul(p.theta(k, step), p.theta(kp, h));
                    if p.theta(kkp, h) != rhs {
                        c4 = Some(format!(
                            "theta({}·{}, {}) = {} but theta({}, sigma({}, {}))·theta({}, {}) = {}",
                            lk(k),
                            lk(kp),
                            lh(h),
                            lk(p.theta(kkp, h)),
                            lk(k),
                            lk(kp),
                            lh(h),
                            lk(kp),
                            lh(h),
                            lk(rhs)
                        ));
                    }
                }
                if c3.is_some() && c4.is_some() {
                    break 'kk;
                }
            }
        }
    }

    let mut c5 = None;
    let mut c6 = None;
    'hh: for k in 0..nk {
        for h in 0..nh {
            let carried = p.theta(k, h);
            for hp in 0..nh {
                let hhp = ht.mul(h, hp);
                if c5.is_none() {
                    let rhs = ht.mul(p.sigma(k, h), p.sigma(carried, hp));
                    if p.sigma(k, hhp) != rhs {
                        c5 = Some(format!(
                            "sigma({}, {}·{}) = {} but sigma({}, {})·sigma(theta({}, {}), {}) = {}",
                            lk(k),
                            lh(h),
                            lh(hp),
                            lh(p.sigma(k, hhp)),
                            lk(k),
                            lh(h),
                            lk(k),
                            lh(h),
                            lh(hp),
                            lh(rhs)
                        ));
                    }
                }
                if c6.is_none() && p.theta(k, hhp) != p.theta(carried, hp) {
                    c6 = Some(format!(
                        "theta({}, {}·{}) = {} but theta(theta({}, {}), {}) = {}",
                        lk(k),
                        lh(h),
                        lh(hp),
                        lk(p.theta(k, hhp)),
                        lk(k),
                        lh(h),
                        lh(hp),
                        lk(p.theta(carried, hp))
                    ));
                }
                if c5.is_some() && c6.is_some() {
                    break 'hh;
                }
            }
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
            check("C1", "sigma(1, h) = h and theta(k, 1) = k", c1),
            check("C2", "sigma(k, 1) = 1 and theta(1, h) = 1", c2),
            check("C3", "sigma(k·k′, h) = sigma(k, sigma(k′, h))", c3),
            check("C4", "theta(k·k′, h) = theta(k, sigma(k′, h))·theta(k′, h)", c4),
            check("C5", "sigma(k, h·h′) = sigma(k, h)·sigma(theta(k, h), h′)", c5),
            check("C6", "theta(k, h·h′) = theta(theta(k, h), h′)", c6),
        ],
    }
}

/// A product group built from a matched pair, with its factorization data.
///
/// Elements are indexed by normal form: the pair (h, k), meaning the product
/// h·k inside the group, lives at index `h·|K| + k`.
#[derive(Debug, Clone)]
pub struct ZsGroup {
    group: GroupTable,
    pair: MatchedPair,
}

impl ZsGroup {
    /// The product group's multiplication table.
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// The matched pair the group was built from.
    pub fn pair(&self) -> &MatchedPair {
        &self.pair
    }

    /// |G| = |H|·|K|.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Index of the element with normal form h·k.
    #[inline]
    pub fn embed(&self, h: usize, k: usize) -> usize {
        h * self.pair.k().order() + k
    }

    /// Normal-form components (h, k) of an element index.
    #[inline]
    pub fn factor(&self, x: usize) -> (usize, usize) {
        let nk = self.pair.k().order();
        (x / nk, x % nk)
    }

    /// Index of h as an element of the product (h with trivial K part).
    pub fn embed_h(&self, h: usize) -> usize {
        self.embed(h, self.pair.k().id())
    }

    /// Index of k as an element of the product (trivial H part).
    pub fn embed_k(&self, k: usize) -> usize {
        self.embed(self.pair.h().id(), k)
    }
}

/// Build the product group of a matched pair.
///
/// Validates the compatibility conditions first, then constructs the full
/// multiplication table and verifies closure, identity, inverses, and
/// associativity exhaustively.
pub fn build_zappa(pair: MatchedPair) -> Result<ZsGroup> {
    let report = validate_matched_pair(&pair);
    if !report.all_hold() {
        return Err(Error::MatchedPairInvalid(report));
    }
    let (nh, nk) = (pair.h().order(), pair.k().order());
    let n = nh * nk;
    let mut mul = vec![0usize; n * n];
    for h in 0..nh {
        for k in 0..nk {
            let x = h * nk + k;
            for hp in 0..nh {
                let pushed_h = pair.h().mul(h, pair.sigma(k, hp));
                let carried = pair.theta(k, hp);
                for kp in 0..nk {
                    let y = hp * nk + kp;
                    mul[x * n + y] = pushed_h * nk + pair.k().mul(carried, kp);
                }
            }
        }
    }
    let mut group = GroupTable::from_flat(n, mul)?;
    if let (Some(lh), Some(lk)) = (pair.h().labels(), pair.k().labels()) {
        let labels = (0..n)
            .map(|x| format!("{}·{}", lh[x / nk], lk[x % nk]))
            .collect();
        group = group.with_labels(labels)?;
    }
    Ok(ZsGroup { group, pair })
}

/// Recover the matched pair from an internal exact factorization G = HK.
///
/// Requires h and k to be subgroups of g such that every element of g is
/// uniquely a product h·k. The actions are read off from the products k·h,
/// each of which refactors as σ(k, h)·θ(k, h). Returns the pair (over the
/// re-indexed subgroup tables) together with the member lists mapping the
/// factors' elements back to elements of g.
pub fn matched_pair_from_internal(
    g: &GroupTable,
    h: &Subset,
    k: &Subset,
) -> Result<(MatchedPair, Vec<usize>, Vec<usize>)> {
    let (ht, hm) = subgroup_table(g, h)?;
    let (kt, km) = subgroup_table(g, k)?;
    let (nh, nk) = (ht.order(), kt.order());
    if nh * nk != g.order() {
        return Err(Error::NotAFactorization(format!(
            "|H|·|K| = {}·{} = {} but |G| = {}",
            nh,
            nk,
            nh * nk,
            g.order()
        )));
    }
    // With matching orders, injectivity of (h, k) ↦ h·k is exactly unique
    // factorization (and implies surjectivity).
    let mut factor_of: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for (i, &hx) in hm.iter().enumerate() {
        for (j, &kx) in km.iter().enumerate() {
            let p = g.mul(hx, kx);
            if let Some((i0, j0)) = factor_of[p] {
                return Err(Error::NotAFactorization(format!(
                    "element {} factors as both {}·{} and {}·{}",
                    g.label(p),
                    g.label(hm[i0]),
                    g.label(km[j0]),
                    g.label(hx),
                    g.label(kx)
                )));
            }
            factor_of[p] = Some((i, j));
        }
    }
    let mut sigma = vec![0usize; nh * nk];
    let mut theta = vec![0usize; nh * nk];
    for (j, &kx) in km.iter().enumerate() {
        for (i, &hx) in hm.iter().enumerate() {
            let (si, tj) = factor_of[g.mul(kx, hx)].expect("products cover g");
            sigma[j * nh + i] = si;
            theta[j * nh + i] = tj;
        }
    }
    let pair = MatchedPair::new(ht, kt, sigma, theta)?;
    let report = validate_matched_pair(&pair);
    if !report.all_hold() {
        // Unreachable for a genuine exact factorization; kept as a guard.
        return Err(Error::MatchedPairInvalid(report));
    }
    Ok((pair, hm, km))
}

/// How a matched pair degenerates, if it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemidirectKind {
    /// Both actions trivial: the product is H × K.
    Direct,
    /// θ trivial, σ an action by automorphisms: H is normal, G = H ⋊ K.
    HNormal,
    /// σ trivial, θ an action by automorphisms: K is normal, G = H ⋉ K.
    KNormal,
    /// Neither action trivial: a genuinely knit product.
    Genuine,
}

impl SemidirectKind {
    /// Whether one factor is normal (including the direct case).
    pub fn is_semidirect(self) -> bool {
        self != SemidirectKind::Genuine
    }
}

impl std::fmt::Display for SemidirectKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SemidirectKind::Direct => "direct",
            SemidirectKind::HNormal => "semidirect-h-normal",
            SemidirectKind::KNormal => "semidirect-k-normal",
            SemidirectKind::Genuine => "genuine",
        };
        f.write_str(s)
    }
}

/// Classify a matched pair by which of its actions are trivial.
pub fn semidirect_kind(pair: &MatchedPair) -> SemidirectKind {
    let (nh, nk) = (pair.h().order(), pair.k().order());
    let sigma_trivial = (0..nk).all(|k| (0..nh).all(|h| pair.sigma(k, h) == h));
    let theta_trivial = (0..nk).all(|k| (0..nh).all(|h| pair.theta(k, h) == k));
    match (theta_trivial, sigma_trivial) {
        (true, true) => SemidirectKind::Direct,
        (true, false) => SemidirectKind::HNormal,
        (false, true) => SemidirectKind::KNormal,
        (false, false) => SemidirectKind::Genuine,
    }
}

/// Complete a matched pair of cyclic groups from generator seed values.
///
/// Both factors are cyclic with canonical generator 1. Besides the base
/// values forced by C1 and C2, each seed `(k, h, s, t)` pins σ(k, h) = s and
/// θ(k, h) = t. The remaining table entries are derived by propagating the
/// composition laws C3–C6 to a fixpoint:
///
/// - σ(k₁·k₂, h) from σ(k₂, h) and σ(k₁, ·)          (C3)
/// - θ(k₁·k₂, h) from θ(k₁, σ(k₂, h)) and θ(k₂, h)   (C4)
/// - σ(k, h₁·h₂) from σ(k, h₁) and σ(θ(k, h₁), h₂)   (C5)
/// - θ(k, h₁·h₂) from θ(θ(k, h₁), h₂)                (C6)
///
/// Fails if two derivations disagree or the seeds do not determine every
/// entry. On success the pair is guaranteed matched: the final fixpoint pass
/// evaluates every instance of C3–C6 over the completed tables (a mismatch
/// would have surfaced as a conflict), and the base values enforce C1–C2.
pub fn derive_cyclic_pair(
    h_order: usize,
    k_order: usize,
    seeds: &[(usize, usize, usize, usize)],
) -> Result<MatchedPair> {
    let (nh, nk) = (h_order, k_order);
    if nh == 0 || nk == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut sig: Vec<Option<usize>> = vec![None; nh * nk];
    let mut the: Vec<Option<usize>> = vec![None; nh * nk];

    fn assign(
        tbl: &mut [Option<usize>],
        idx: usize,
        v: usize,
        name: &str,
        k: usize,
        h: usize,
    ) -> Result<bool> {
        match tbl[idx] {
            None => {
                tbl[idx] = Some(v);
                Ok(true)
            }
            Some(old) if old == v => Ok(false),
            Some(old) => Err(Error::FormulaConsistency(format!(
                "conflicting derivations for {name}({k}, {h}): {old} vs {v}"
            ))),
        }
    }

    // Base values forced by C1 and C2.
    for h in 0..nh {
        assign(&mut sig, h, h, "sigma", 0, h)?;
        assign(&mut the, h, 0, "theta", 0, h)?;
    }
    for k in 0..nk {
        assign(&mut sig, k * nh, 0, "sigma", k, 0)?;
        assign(&mut the, k * nh, k, "theta", k, 0)?;
    }
    for &(k, h, s, t) in seeds {
        if k >= nk || h >= nh || s >= nh || t >= nk {
            return Err(Error::FormulaConsistency(format!(
                "seed ({k}, {h}) -> ({s}, {t}) out of range for orders {nh}, {nk}"
            )));
        }
        assign(&mut sig, k * nh + h, s, "sigma", k, h)?;
        assign(&mut the, k * nh + h, t, "theta", k, h)?;
    }

    loop {
        let mut changed = false;
        // C3/C4: extend along the K coordinate.
        for k1 in 0..nk {
            for k2 in 0..nk {
                let ksum = (k1 + k2) % nk;
                for h in 0..nh {
                    let Some(step) = sig[k2 * nh + h] else { continue };
                    if let Some(v) = sig[k1 * nh + step] {
                        changed |= assign(&mut sig, ksum * nh + h, v, "sigma", ksum, h)?;
                    }
                    if let (Some(t1), Some(t2)) = (the[k1 * nh + step], the[k2 * nh + h]) {
                        changed |= assign(&mut the, ksum * nh + h, (t1 + t2) % nk, "theta", ksum, h)?;
                    }
                }
            }
        }
        // C5/C6: extend along the H coordinate.
        for k in 0..nk {
            for h1 in 0..nh {
                let (Some(s1), Some(carried)) = (sig[k * nh + h1], the[k * nh + h1]) else {
                    continue;
                };
                for h2 in 0..nh {
                    let hsum = (h1 + h2) % nh;
                    if let Some(s2) = sig[carried * nh + h2] {
                        changed |= assign(&mut sig, k * nh + hsum, (s1 + s2) % nh, "sigma", k, hsum)?;
                    }
                    if let Some(t2) = the[carried * nh + h2] {
                        changed |= assign(&mut the, k * nh + hsum, t2, "theta", k, hsum)?;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let missing = sig.iter().filter(|v| v.is_none()).count()
        + the.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(Error::FormulaConsistency(format!(
            "derivation incomplete: {missing} of {} action values not determined by the seeds",
            2 * nh * nk
        )));
    }
    MatchedPair::new(
        cyclic_group(nh)?,
        cyclic_group(nk)?,
        sig.into_iter().map(Option::unwrap).collect(),
        the.into_iter().map(Option::unwrap).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// H = Z2, K = Z3, σ trivial, θ(k, h) = k^(±1) by the parity of h.
    /// The product is the symmetric group on three letters.
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
    fn s3_from_inverting_action() {
        let pair = s3_pair();
        assert!(validate_matched_pair(&pair).all_hold());
        assert_eq!(semidirect_kind(&pair), SemidirectKind::KNormal);
        assert!(semidirect_kind(&pair).is_semidirect());
        let zs = build_zappa(pair).unwrap();
        assert_eq!(zs.order(), 6);
        assert!(!zs.group().is_abelian());
        assert_eq!(
            zs.group().order_spectrum(),
            BTreeMap::from([(1, 1), (2, 3), (3, 2)])
        );
    }

    #[test]
    fn normal_form_product_matches_index() {
        let zs = build_zappa(s3_pair()).unwrap();
        for h in 0..2 {
            for k in 0..3 {
                let by_mul = zs.group().mul(zs.embed_h(h), zs.embed_k(k));
                assert_eq!(by_mul, zs.embed(h, k));
                assert_eq!(zs.factor(by_mul), (h, k));
            }
        }
    }

    #[test]
    fn trivial_pair_gives_direct_product() {
        let pair = MatchedPair::trivial(cyclic_group(2).unwrap(), cyclic_group(3).unwrap());
        assert_eq!(semidirect_kind(&pair), SemidirectKind::Direct);
        let zs = build_zappa(pair).unwrap();
        assert!(zs.group().is_abelian());
        assert_eq!(
            zs.group().order_spectrum(),
            cyclic_group(6).unwrap().order_spectrum()
        );
    }

    #[test]
    fn corrupt_identity_column_fails_c2() {
        let mut pair = s3_pair();
        // σ(k=1, h=identity) must be the identity; force it to b.
        pair.sigma[1 * 2 + 0] = 1;
        let report = validate_matched_pair(&pair);
        assert!(!report.all_hold());
        assert!(report.failed_ids().contains(&"C2"));
        let c2 = report.checks.iter().find(|c| c.id == "C2").unwrap();
        assert!(c2.witness.is_some());
        match build_zappa(pair) {
            Err(Error::MatchedPairInvalid(r)) => assert!(!r.all_hold()),
            other => panic!("expected invalid-pair error, got {other:?}"),
        }
    }

    #[test]
    fn corrupt_interior_entry_fails_composition_laws() {
        let mut pair = s3_pair();
        // σ(k=1, h=1) = h in the valid table; flip it to the identity.
        pair.sigma[1 * 2 + 1] = 0;
        let report = validate_matched_pair(&pair);
        assert!(!report.all_hold());
        let failed = report.failed_ids();
        assert!(
            failed.contains(&"C3") || failed.contains(&"C5"),
            "failed: {failed:?}"
        );
    }

    #[test]
    fn internal_factorization_of_z12() {
        let g = cyclic_group(12).unwrap();
        let h = Subset::new(vec![0, 4, 8]);
        let k = Subset::new(vec![0, 3, 6, 9]);
        let (pair, hm, km) = matched_pair_from_internal(&g, &h, &k).unwrap();
        assert_eq!(hm, vec![0, 4, 8]);
        assert_eq!(km, vec![0, 3, 6, 9]);
        assert_eq!(semidirect_kind(&pair), SemidirectKind::Direct);
        let zs = build_zappa(pair).unwrap();
        assert_eq!(zs.group().order_spectrum(), g.order_spectrum());
    }

    #[test]
    fn internal_factorization_round_trips_s3() {
        let zs = build_zappa(s3_pair()).unwrap();
        let h = Subset::new((0..2).map(|i| zs.embed_h(i)).collect());
        let k = Subset::new((0..3).map(|j| zs.embed_k(j)).collect());
        let (recovered, _, _) = matched_pair_from_internal(zs.group(), &h, &k).unwrap();
        assert_eq!(recovered.sigma_table(), zs.pair().sigma_table());
        assert_eq!(recovered.theta_table(), zs.pair().theta_table());
    }

    #[test]
    fn non_factorizations_rejected() {
        let g = cyclic_group(12).unwrap();
        // Wrong orders: 2·4 ≠ 12.
        let err = matched_pair_from_internal(
            &g,
            &Subset::new(vec![0, 6]),
            &Subset::new(vec![0, 3, 6, 9]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAFactorization(_)));
        // Matching orders but overlapping factors: duplicate products.
        let err = matched_pair_from_internal(
            &g,
            &Subset::new(vec![0, 2, 4, 6, 8, 10]),
            &Subset::new(vec![0, 6]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAFactorization(_)));
        // Not a subgroup at all.
        assert!(matched_pair_from_internal(
            &g,
            &Subset::new(vec![0, 5]),
            &Subset::new(vec![0, 3, 6, 9]),
        )
        .is_err());
    }

    #[test]
    fn seed_derivation_recovers_s3() {
        // Seeds: σ(a, b) = b, θ(a, b) = a².
        let derived = derive_cyclic_pair(2, 3, &[(1, 1, 1, 2)]).unwrap();
        let direct = s3_pair();
        assert_eq!(derived.sigma_table(), direct.sigma_table());
        assert_eq!(derived.theta_table(), direct.theta_table());
        assert!(validate_matched_pair(&derived).all_hold());
    }

    #[test]
    fn seed_derivation_detects_conflicts() {
        // θ(a², b) must derive to a, but the second seed pins it to a².
        let err = derive_cyclic_pair(2, 3, &[(1, 1, 1, 2), (2, 1, 1, 2)]).unwrap_err();
        assert!(matches!(err, Error::FormulaConsistency(_)));
    }

    #[test]
    fn seed_derivation_reports_incompleteness() {
        // No seeds beyond the forced base values: interior cells underived.
        let err = derive_cyclic_pair(2, 2, &[]).unwrap_err();
        match err {
            Error::FormulaConsistency(msg) => assert!(msg.contains("incomplete")),
            other => panic!("expected consistency error, got {other:?}"),
        }
    }

    #[test]
    fn seed_derivation_rejects_unmatchable_seeds() {
        // θ(a, b) = a² over Z2, Z4 propagates to a full table whose C6
        // instances disagree with the forced base column (θ(a, b·b) would
        // have to be both a and 1), so the fixpoint reports a conflict.
        let err = derive_cyclic_pair(2, 4, &[(1, 1, 1, 2)]).unwrap_err();
        assert!(matches!(err, Error::FormulaConsistency(_)));
    }
}
