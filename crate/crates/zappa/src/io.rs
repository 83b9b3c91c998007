//! JSON file formats for groups and matched pairs.
//!
//! All files carry `"schema": "1"`. A group table serializes as
//! `{"n": …, "mul": [[…]], "labels": […]}`. A matched pair serializes with
//! its factors under `"H"` and `"K"` plus the `[k][h]`-indexed `sigma` and
//! `theta` rows. A constructed product file holds the pair together with the
//! assembled multiplication table under `"group"`, so it can be fed back to
//! any command that wants either view.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::group::GroupTable;
use crate::maps::MapTable;
use crate::pair::{build_zappa, MatchedPair, ZsGroup};
use crate::{Error, Result};

pub const SCHEMA: &str = "1";

/// Serialized group table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// One on-disk document: a pair file, a group file, or a constructed-product
/// file carrying both.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FileJson {
    pub schema: String,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<GroupJson>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
}

pub fn group_to_json(g: &GroupTable) -> GroupJson {
    GroupJson {
        n: g.order(),
        mul: g.rows(),
        labels: g.labels().map(|l| l.to_vec()),
    }
}

/// Rebuild a verified group table from its serialized form.
pub fn group_from_json(j: &GroupJson) -> Result<GroupTable> {
    if j.mul.len() != j.n {
        return Err(Error::MalformedTable(format!(
            "declared order {} but {} table rows",
            j.n,
            j.mul.len()
        )));
    }
    let g = GroupTable::from_mul(j.mul.clone())?;
    match &j.labels {
        Some(l) => g.with_labels(l.clone()),
        None => Ok(g),
    }
}

fn table_rows(flat: &[usize], nk: usize, nh: usize) -> Vec<Vec<usize>> {
    (0..nk).map(|k| flat[k * nh..(k + 1) * nh].to_vec()).collect()
}

fn flatten_rows(rows: &[Vec<usize>], nk: usize, nh: usize, what: &str) -> Result<Vec<usize>> {
    if rows.len() != nk || rows.iter().any(|r| r.len() != nh) {
        return Err(Error::MalformedTable(format!(
            "{what} table must have {nk} rows of {nh} entries"
        )));
    }
    Ok(rows.iter().flatten().copied().collect())
}

/// Serialize a matched pair (no product table).
pub fn pair_file(mp: &MatchedPair) -> FileJson {
    let (nh, nk) = (mp.h().order(), mp.k().order());
    FileJson {
        schema: SCHEMA.into(),
        h: Some(group_to_json(mp.h())),
        k: Some(group_to_json(mp.k())),
        sigma: Some(table_rows(mp.sigma_table(), nk, nh)),
        theta: Some(table_rows(mp.theta_table(), nk, nh)),
        group: None,
    }
}

/// Serialize a constructed product: the pair plus the assembled table.
pub fn zs_file(zs: &ZsGroup) -> FileJson {
    let mut f = pair_file(zs.pair());
    f.group = Some(group_to_json(zs.group()));
    f
}

/// Extract the matched pair from a document that carries one.
pub fn pair_from_file(f: &FileJson) -> Result<MatchedPair> {
    let (h, k, sigma, theta) = match (&f.h, &f.k, &f.sigma, &f.theta) {
        (Some(h), Some(k), Some(s), Some(t)) => (h, k, s, t),
        _ => {
            return Err(Error::MalformedTable(
                "document carries no matched pair (H, K, sigma, theta)".into(),
            ))
        }
    };
    let ht = group_from_json(h)?;
    let kt = group_from_json(k)?;
    let (nh, nk) = (ht.order(), kt.order());
    MatchedPair::new(
        ht,
        kt,
        flatten_rows(sigma, nk, nh, "sigma")?,
        flatten_rows(theta, nk, nh, "theta")?,
    )
}

/// Build the product group a document describes: from its pair if present,
/// else from a bare group table (which cannot feed pair-based analyses).
pub fn zs_from_file(f: &FileJson) -> Result<ZsGroup> {
    build_zappa(pair_from_file(f)?)
}

pub fn read_file(path: &Path) -> Result<FileJson> {
    let text = std::fs::read_to_string(path)?;
    let f: FileJson = serde_json::from_str(&text)?;
    if f.schema != SCHEMA {
        return Err(Error::MalformedTable(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            f.schema
        )));
    }
    Ok(f)
}

pub fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Value-table view of one matrix entry for JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
    pub delta: Vec<usize>,
}

pub fn matrix_to_json(m: &crate::aut::AutMatrix) -> MatrixJson {
    let vals = |t: &MapTable| t.values().to_vec();
    MatrixJson {
        alpha: vals(&m.alpha),
        beta: vals(&m.beta),
        gamma: vals(&m.gamma),
        delta: vals(&m.delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;
    use crate::pair::validate_matched_pair;

    #[test]
    fn group_round_trip() {
        let g = cyclic_group(6).unwrap();
        let j = group_to_json(&g);
        let back = group_from_json(&j).unwrap();
        assert_eq!(back.rows(), g.rows());
        assert_eq!(back.order(), 6);
    }

    #[test]
    fn pair_round_trip_through_text() {
        let mp = MatchedPair::trivial(cyclic_group(2).unwrap(), cyclic_group(3).unwrap());
        let f = pair_file(&mp);
        let text = serde_json::to_string(&f).unwrap();
        let parsed: FileJson = serde_json::from_str(&text).unwrap();
        let back = pair_from_file(&parsed).unwrap();
        assert_eq!(back.sigma_table(), mp.sigma_table());
        assert_eq!(back.theta_table(), mp.theta_table());
        assert!(validate_matched_pair(&back).all_hold());
    }

    #[test]
    fn constructed_file_carries_both_views() {
        let mp = MatchedPair::trivial(cyclic_group(2).unwrap(), cyclic_group(2).unwrap());
        let zs = build_zappa(mp).unwrap();
        let f = zs_file(&zs);
        assert!(f.group.is_some());
        let back = zs_from_file(&f).unwrap();
        assert_eq!(back.order(), 4);
        // The embedded table matches the rebuilt product.
        assert_eq!(group_from_json(f.group.as_ref().unwrap()).unwrap().rows(), back.group().rows());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let f = FileJson {
            schema: SCHEMA.into(),
            h: None,
            k: None,
            sigma: None,
            theta: None,
            group: Some(GroupJson { n: 3, mul: vec![vec![0, 1], vec![1, 0]], labels: None }),
        };
        assert!(pair_from_file(&f).is_err());
        assert!(group_from_json(f.group.as_ref().unwrap()).is_err(), "row count mismatch");
    }
}
