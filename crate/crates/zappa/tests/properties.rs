//! Randomized cross-checks of structural laws that hold at every family
//! point, independent of any counting claim:
//!
//! - rebuilding the actions from the internal factorization of the product
//!   recovers the σ/θ tables the product was built from (round trip);
//! - the parameter-level, table-level, and group-level notions of "the
//!   product splits" agree, and where they hold, conjugation by the second
//!   factor realizes σ while the second-coordinate projection is a
//!   homomorphism (the split oracle);
//! - the JSON documents for pairs and products survive serialization;
//! - the enumerated automorphism set is a group under composition.

use proptest::prelude::*;
use proptest::sample::select;

use zappa::aut::a_set;
use zappa::group::Subset;
use zappa::io::{pair_file, pair_from_file, zs_file, zs_from_file, FileJson};
use zappa::l2::{build_l2, enumerate_l2_params, L2Params};
use zappa::m3::{build_m3, enumerate_m3_params, M3Params};
use zappa::pair::{build_zappa, matched_pair_from_internal, semidirect_kind, ZsGroup};

/// Every valid (m, s, t) with m ≤ 16.
fn l2_points() -> Vec<L2Params> {
    (1..=8)
        .flat_map(|half| enumerate_l2_params(2 * half).expect("even modulus"))
        .collect()
}

/// Every valid (p, m, r, λ) with p = 3, m ≤ 12 and with p = 5, m ≤ 10.
fn m3_points() -> Vec<M3Params> {
    let mut pts: Vec<M3Params> = (1..=4)
        .flat_map(|k| enumerate_m3_params(3, 3 * k).expect("multiple of p"))
        .collect();
    pts.extend((1..=2).flat_map(|k| enumerate_m3_params(5, 5 * k).expect("multiple of p")));
    pts
}

/// Read the two embedded factors back off the full multiplication table and
/// demand the recovered pair is the original one, index for index.
fn check_action_recovery(zs: &ZsGroup) {
    let mp = zs.pair();
    let (nh, nk) = (mp.h().order(), mp.k().order());
    let hhat: Vec<usize> = (0..nh).map(|h| zs.embed_h(h)).collect();
    let khat: Vec<usize> = (0..nk).map(|k| zs.embed_k(k)).collect();
    let (rec, hm, km) = matched_pair_from_internal(
        zs.group(),
        &Subset::new(hhat.clone()),
        &Subset::new(khat.clone()),
    )
    .expect("embedded factors give an exact factorization");
    assert_eq!(hm, hhat, "recovered H indexing must follow the embedding");
    assert_eq!(km, khat, "recovered K indexing must follow the embedding");
    assert_eq!(rec.sigma_table(), mp.sigma_table());
    assert_eq!(rec.theta_table(), mp.theta_table());
}

/// |G| = |H|·|K|, the embedded generators keep their orders, and together
/// they generate the whole product.
fn check_generation(zs: &ZsGroup) {
    let g = zs.group();
    let (nh, nk) = (zs.pair().h().order(), zs.pair().k().order());
    assert_eq!(g.order(), nh * nk);
    assert_eq!(g.order_of(zs.embed_h(1)), nh);
    assert_eq!(g.order_of(zs.embed_k(1)), nk);
    assert_eq!(g.generated_by(&[zs.embed_h(1), zs.embed_k(1)]).len(), g.order());
}

/// The parameter predicate, the θ-table scan, and actual normality of the
/// embedded first factor must agree; on split points conjugation by the
/// second factor realizes σ and the second coordinate projects
/// homomorphically. The second factor is never normal here because σ moves
/// some power of b at every family point.
fn check_split_oracle(zs: &ZsGroup, param_says_split: bool) {
    let mp = zs.pair();
    let kind = semidirect_kind(mp);
    assert_eq!(
        kind.is_semidirect(),
        param_says_split,
        "parameter and table criteria disagree"
    );

    let g = zs.group();
    let (nh, nk) = (mp.h().order(), mp.k().order());
    let h_normal = (0..g.order()).all(|x| {
        (0..nh).all(|h| zs.factor(g.mul(g.mul(x, zs.embed_h(h)), g.inv(x))).1 == 0)
    });
    assert_eq!(
        h_normal,
        kind.is_semidirect(),
        "table criterion disagrees with normality in the product"
    );

    let k_normal = (0..g.order()).all(|x| {
        (0..nk).all(|k| zs.factor(g.mul(g.mul(x, zs.embed_k(k)), g.inv(x))).0 == 0)
    });
    assert!(!k_normal, "the cyclic second factor must never be normal here");

    if param_says_split {
        for k in 0..nk {
            let khat = zs.embed_k(k);
            for h in 0..nh {
                let conj = g.mul(g.mul(khat, zs.embed_h(h)), g.inv(khat));
                assert_eq!(conj, zs.embed_h(mp.sigma(k, h)), "conjugation must realize σ");
            }
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(
                    zs.factor(g.mul(x, y)).1,
                    mp.k().mul(zs.factor(x).1, zs.factor(y).1),
                    "second-coordinate projection must be a homomorphism"
                );
            }
        }
    }
}

/// Both document shapes — the bare pair and the constructed product —
/// survive a serialize/parse/rebuild cycle without changing any table.
fn check_json_round_trip(zs: &ZsGroup) {
    let full = zs_file(zs);
    let text = serde_json::to_string_pretty(&full).expect("serializes");
    let parsed: FileJson = serde_json::from_str(&text).expect("parses back");
    let rebuilt = zs_from_file(&parsed).expect("rebuilds");
    assert_eq!(rebuilt.group().rows(), zs.group().rows());
    assert_eq!(rebuilt.group().labels(), zs.group().labels());
    assert_eq!(rebuilt.pair().sigma_table(), zs.pair().sigma_table());
    assert_eq!(rebuilt.pair().theta_table(), zs.pair().theta_table());

    let bare = pair_file(zs.pair());
    let text = serde_json::to_string(&bare).expect("serializes");
    let parsed: FileJson = serde_json::from_str(&text).expect("parses back");
    let mp = pair_from_file(&parsed).expect("revalidates");
    assert_eq!(mp.sigma_table(), zs.pair().sigma_table());
    assert_eq!(mp.theta_table(), zs.pair().theta_table());
}

fn l2_product(p: &L2Params) -> ZsGroup {
    build_zappa(build_l2(p).expect("enumerated point builds")).expect("product")
}

fn m3_product(q: &M3Params) -> ZsGroup {
    build_zappa(build_m3(q).expect("enumerated point builds")).expect("product")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l2_round_trip_recovers_actions(p in select(l2_points())) {
        let zs = l2_product(&p);
        check_action_recovery(&zs);
        check_generation(&zs);
    }

    #[test]
    fn l2_split_criteria_agree(p in select(l2_points())) {
        check_split_oracle(&l2_product(&p), p.is_semidirect());
    }

    #[test]
    fn l2_documents_round_trip(p in select(l2_points())) {
        check_json_round_trip(&l2_product(&p));
    }

    #[test]
    fn m3_round_trip_recovers_actions(q in select(m3_points())) {
        let zs = m3_product(&q);
        check_action_recovery(&zs);
        check_generation(&zs);
    }

    #[test]
    fn m3_split_criteria_agree(q in select(m3_points())) {
        check_split_oracle(&m3_product(&q), q.is_semidirect());
    }

    #[test]
    fn m3_documents_round_trip(q in select(m3_points())) {
        check_json_round_trip(&m3_product(&q));
    }
}

/// At a representative genuine point the enumerated automorphism set is
/// closed under composition, contains the identity, and pairs every member
/// with its inverse — i.e. it really is the full automorphism group.
#[test]
fn enumerated_automorphisms_form_a_group() {
    let p = L2Params::new(8, 3, 1).expect("valid point");
    let aset = a_set(&l2_product(&p)).expect("enumerable");
    let e = aset.identity_index();
    for i in 0..aset.len() {
        assert_eq!(aset.compose_index(i, e), Some(i));
        assert_eq!(aset.compose_index(e, i), Some(i));
        assert_eq!(aset.compose_index(i, aset.inverse_index(i)), Some(e));
        assert_eq!(aset.compose_index(aset.inverse_index(i), i), Some(e));
        for j in 0..aset.len() {
            assert!(
                aset.compose_index(i, j).is_some(),
                "composition must stay inside the enumerated set"
            );
        }
    }
}
