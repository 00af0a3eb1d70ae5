//! JSON (de)serialization of every structure kind, plus an entry-wise
//! structure diff.
//!
//! Files are UTF-8 JSON objects with a `kind` discriminator. Rationals are
//! strings (`"p/q"`, or `"p"` for integers; sign on the numerator), matrices
//! are row-major flat arrays of rational strings, and per-element families
//! are objects keyed by group-element label. Serialization is canonical:
//! ordered maps, fixed field order, reduced rationals — so artifacts are
//! byte-identical across runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossed::{CrossedGcwhq, Crossing};
use crate::exactlin::{format_rational, parse_rational, Mat, Rational};
use crate::graded::Gcwhq;
use crate::group::{FiniteGroup, GroupError};
use crate::whq::WhqData;
use crate::yd::YdModule;

pub const KIND_WHQ: &str = "whq";
pub const KIND_GCWHQ: &str = "gcwhq";
pub const KIND_CROSSED: &str = "crossed-gcwhq";
pub const KIND_YD: &str = "yd-module";
pub const KIND_ACTION: &str = "group-action";
pub const KIND_BRAID: &str = "braid-map";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot parse rational {0:?}")]
    Rational(String),
    #[error("structural error: {0}")]
    Structure(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("file kinds differ: {a} vs {b}")]
    KindMismatch { a: String, b: String },
    #[error("unknown or missing kind {0:?}")]
    UnknownKind(String),
}

fn rats_from(strings: &[String]) -> Result<Vec<Rational>, IoError> {
    strings
        .iter()
        .map(|s| parse_rational(s).map_err(|_| IoError::Rational(s.clone())))
        .collect()
}

fn rats_to(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn mat_from(what: &str, rows: usize, cols: usize, strings: &[String]) -> Result<Mat, IoError> {
    let entries = rats_from(strings)?;
    Mat::from_entries(rows, cols, entries)
        .map_err(|e| IoError::Structure(format!("{what}: {e}")))
}

fn mat_to(m: &Mat) -> Vec<String> {
    rats_to(m.entries())
}

// ---------------------------------------------------------------- groups --

#[derive(Serialize, Deserialize, Clone)]
pub struct GroupDto {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

pub fn group_to_dto(g: &FiniteGroup) -> GroupDto {
    let n = g.order();
    GroupDto {
        elements: g.labels().to_vec(),
        table: (0..n)
            .map(|i| (0..n).map(|j| g.label(g.mul(i, j)).to_string()).collect())
            .collect(),
    }
}

/// Parses a plain `{elements, table}` group file.
pub fn group_from_json(s: &str) -> Result<FiniteGroup, IoError> {
    let dto: GroupDto = serde_json::from_str(s)?;
    group_from_dto(&dto)
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    to_pretty(&group_to_dto(g))
}

pub fn group_from_dto(dto: &GroupDto) -> Result<FiniteGroup, IoError> {
    let index = |label: &str| -> Result<usize, IoError> {
        dto.elements
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| IoError::Structure(format!("unknown element label {label:?} in table")))
    };
    let mut rows = Vec::with_capacity(dto.table.len());
    for row in &dto.table {
        rows.push(row.iter().map(|l| index(l)).collect::<Result<Vec<_>, _>>()?);
    }
    let g = FiniteGroup::from_table(dto.elements.clone(), rows)?;
    if g.identity() != 0 {
        return Err(IoError::Structure("identity must be elements[0]".into()));
    }
    Ok(g)
}

// ------------------------------------------------------------- base whq --

#[derive(Serialize, Deserialize)]
pub struct WhqDto {
    pub kind: String,
    pub dim: usize,
    pub unit: Vec<String>,
    pub mul: Vec<String>,
    pub comul: Vec<String>,
    pub counit: Vec<String>,
    pub antipode: Vec<String>,
}

pub fn whq_to_json(h: &WhqData) -> String {
    let dto = WhqDto {
        kind: KIND_WHQ.into(),
        dim: h.dim,
        unit: rats_to(&h.unit),
        mul: mat_to(&h.mul),
        comul: mat_to(&h.comul),
        counit: rats_to(&h.counit),
        antipode: mat_to(&h.antipode),
    };
    to_pretty(&dto)
}

pub fn whq_from_json(s: &str) -> Result<WhqData, IoError> {
    let dto: WhqDto = serde_json::from_str(s)?;
    if dto.kind != KIND_WHQ {
        return Err(IoError::UnknownKind(dto.kind));
    }
    let d = dto.dim;
    WhqData::new(
        d,
        rats_from(&dto.unit)?,
        mat_from("mul", d, d * d, &dto.mul)?,
        mat_from("comul", d * d, d, &dto.comul)?,
        rats_from(&dto.counit)?,
        mat_from("antipode", d, d, &dto.antipode)?,
    )
    .map_err(|e| IoError::Structure(e.to_string()))
}

// ---------------------------------------------------- graded and crossed --

#[derive(Serialize, Deserialize)]
pub struct GcwhqDto {
    pub kind: String,
    pub group: GroupDto,
    pub dims: BTreeMap<String, usize>,
    pub unit: BTreeMap<String, Vec<String>>,
    pub mul: BTreeMap<String, Vec<String>>,
    pub delta: BTreeMap<String, Vec<String>>,
    pub counit: Vec<String>,
    pub antipode: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<BTreeMap<String, Vec<String>>>,
}

fn gcwhq_to_dto(h: &Gcwhq, pi: Option<&Crossing>) -> GcwhqDto {
    let g = &h.group;
    let n = g.order();
    let mut dims = BTreeMap::new();
    let mut unit = BTreeMap::new();
    let mut mul = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for p in 0..n {
        let l = g.label(p).to_string();
        dims.insert(l.clone(), h.dims[p]);
        unit.insert(l.clone(), rats_to(&h.unit[p]));
        mul.insert(l.clone(), mat_to(&h.mul[p]));
        antipode.insert(l, mat_to(&h.antipode[p]));
    }
    let mut delta = BTreeMap::new();
    for p in 0..n {
        for q in 0..n {
            delta.insert(format!("{},{}", g.label(p), g.label(q)), mat_to(h.delta(p, q)));
        }
    }
    let pi_map = pi.map(|c| {
        let mut m = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                m.insert(format!("{}|{}", g.label(p), g.label(q)), mat_to(c.get(h, p, q)));
            }
        }
        m
    });
    GcwhqDto {
        kind: if pi_map.is_some() { KIND_CROSSED.into() } else { KIND_GCWHQ.into() },
        group: group_to_dto(g),
        dims,
        unit,
        mul,
        delta,
        counit: rats_to(&h.counit),
        antipode,
        pi: pi_map,
    }
}

pub fn gcwhq_to_json(h: &Gcwhq) -> String {
    to_pretty(&gcwhq_to_dto(h, None))
}

pub fn crossed_to_json(h: &CrossedGcwhq) -> String {
    to_pretty(&gcwhq_to_dto(&h.gcwhq, Some(&h.crossing)))
}

fn gcwhq_from_dto(dto: &GcwhqDto) -> Result<(Gcwhq, Option<Crossing>), IoError> {
    let g = group_from_dto(&dto.group)?;
    let n = g.order();
    let fetch = |map: &BTreeMap<String, Vec<String>>, label: &str| -> Result<Vec<String>, IoError> {
        map.get(label)
            .cloned()
            .ok_or_else(|| IoError::Structure(format!("missing entry for element {label:?}")))
    };
    let mut dims = Vec::with_capacity(n);
    for p in 0..n {
        let d = *dto
            .dims
            .get(g.label(p))
            .ok_or_else(|| IoError::Structure(format!("missing dims[{}]", g.label(p))))?;
        dims.push(d);
    }
    let mut unit = Vec::with_capacity(n);
    let mut mul = Vec::with_capacity(n);
    let mut antipode = Vec::with_capacity(n);
    for p in 0..n {
        let l = g.label(p);
        unit.push(rats_from(&fetch(&dto.unit, l)?)?);
        mul.push(mat_from(&format!("mul[{l}]"), dims[p], dims[p] * dims[p], &fetch(&dto.mul, l)?)?);
        antipode.push(mat_from(
            &format!("antipode[{l}]"),
            dims[g.inv(p)],
            dims[p],
            &fetch(&dto.antipode, l)?,
        )?);
    }
    let mut delta = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let key = format!("{},{}", g.label(p), g.label(q));
            let strings = dto
                .delta
                .get(&key)
                .ok_or_else(|| IoError::Structure(format!("missing delta[{key}]")))?;
            delta.push(mat_from(
                &format!("delta[{key}]"),
                dims[p] * dims[q],
                dims[g.mul(p, q)],
                strings,
            )?);
        }
    }
    let counit = rats_from(&dto.counit)?;
    let gc = Gcwhq::new(g, dims, unit, mul, delta, counit, antipode)
        .map_err(|e| IoError::Structure(e.to_string()))?;
    let crossing = match &dto.pi {
        None => None,
        Some(map) => {
            let g = &gc.group;
            let mut pi = Vec::with_capacity(n * n);
            for p in 0..n {
                for q in 0..n {
                    let key = format!("{}|{}", g.label(p), g.label(q));
                    let strings = map
                        .get(&key)
                        .ok_or_else(|| IoError::Structure(format!("missing pi[{key}]")))?;
                    pi.push(mat_from(
                        &format!("pi[{key}]"),
                        gc.dims[g.conj(p, q)],
                        gc.dims[q],
                        strings,
                    )?);
                }
            }
            Some(Crossing::new(&gc, pi).map_err(|e| IoError::Structure(e.to_string()))?)
        }
    };
    Ok((gc, crossing))
}

/// Parses a graded structure; the crossing is present for crossed files.
pub fn gcwhq_from_json(s: &str) -> Result<(Gcwhq, Option<Crossing>), IoError> {
    let dto: GcwhqDto = serde_json::from_str(s)?;
    if dto.kind != KIND_GCWHQ && dto.kind != KIND_CROSSED {
        return Err(IoError::UnknownKind(dto.kind));
    }
    if dto.kind == KIND_CROSSED && dto.pi.is_none() {
        return Err(IoError::Structure("crossed file without pi family".into()));
    }
    gcwhq_from_dto(&dto)
}

/// Parses a crossed structure (kind must be crossed and the crossing present).
pub fn crossed_from_json(s: &str) -> Result<CrossedGcwhq, IoError> {
    let (gc, crossing) = gcwhq_from_json(s)?;
    let crossing = crossing.ok_or_else(|| IoError::Structure("missing pi family".into()))?;
    Ok(CrossedGcwhq::new_unverified(gc, crossing))
}

// ------------------------------------------------------------- yd module --

#[derive(Serialize, Deserialize)]
pub struct YdDto {
    pub kind: String,
    /// path of the ambient crossed structure file, relative to this file
    pub ambient: String,
    pub grade: String,
    pub dim: usize,
    pub action: Vec<String>,
    pub coaction: BTreeMap<String, Vec<String>>,
}

pub fn yd_to_json(h: &CrossedGcwhq, v: &YdModule, ambient_ref: &str) -> String {
    let g = &h.gcwhq.group;
    let mut coaction = BTreeMap::new();
    for r in 0..g.order() {
        coaction.insert(g.label(r).to_string(), mat_to(&v.coaction[r]));
    }
    let dto = YdDto {
        kind: KIND_YD.into(),
        ambient: ambient_ref.to_string(),
        grade: g.label(v.grade).to_string(),
        dim: v.dim,
        action: mat_to(&v.action),
        coaction,
    };
    to_pretty(&dto)
}

/// Reads only the ambient reference from a module file.
pub fn yd_ambient_ref(s: &str) -> Result<String, IoError> {
    let dto: YdDto = serde_json::from_str(s)?;
    if dto.kind != KIND_YD {
        return Err(IoError::UnknownKind(dto.kind));
    }
    Ok(dto.ambient)
}

pub fn yd_from_json(s: &str, h: &CrossedGcwhq) -> Result<YdModule, IoError> {
    let dto: YdDto = serde_json::from_str(s)?;
    if dto.kind != KIND_YD {
        return Err(IoError::UnknownKind(dto.kind));
    }
    let g = &h.gcwhq;
    let grade = g.group.index_of(&dto.grade)?;
    let action = mat_from("action", dto.dim, dto.dim * g.dim(grade), &dto.action)?;
    let mut coaction = Vec::with_capacity(g.n());
    for r in 0..g.n() {
        let l = g.group.label(r);
        let strings = dto
            .coaction
            .get(l)
            .ok_or_else(|| IoError::Structure(format!("missing coaction[{l}]")))?;
        coaction.push(mat_from(&format!("coaction[{l}]"), dto.dim * g.dim(r), dto.dim, strings)?);
    }
    YdModule::new(h, grade, dto.dim, action, coaction).map_err(|e| IoError::Structure(e.to_string()))
}

// ---------------------------------------------------------- group action --

#[derive(Serialize, Deserialize)]
pub struct ActionDto {
    pub kind: String,
    /// one square matrix per group-element label
    pub mats: BTreeMap<String, Vec<String>>,
}

pub fn action_to_json(group: &FiniteGroup, mats: &[Mat]) -> String {
    let mut m = BTreeMap::new();
    for (p, mat) in mats.iter().enumerate() {
        m.insert(group.label(p).to_string(), mat_to(mat));
    }
    to_pretty(&ActionDto { kind: KIND_ACTION.into(), mats: m })
}

pub fn action_from_json(s: &str, group: &FiniteGroup, dim: usize) -> Result<Vec<Mat>, IoError> {
    let dto: ActionDto = serde_json::from_str(s)?;
    if dto.kind != KIND_ACTION {
        return Err(IoError::UnknownKind(dto.kind));
    }
    let mut mats = Vec::with_capacity(group.order());
    for p in 0..group.order() {
        let l = group.label(p);
        let strings = dto
            .mats
            .get(l)
            .ok_or_else(|| IoError::Structure(format!("missing action matrix for {l:?}")))?;
        mats.push(mat_from(&format!("action[{l}]"), dim, dim, strings)?);
    }
    Ok(mats)
}

// -------------------------------------------------------------- braiding --

#[derive(Serialize, Deserialize)]
pub struct BraidDto {
    pub kind: String,
    pub source_grades: Vec<String>,
    pub target_grades: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<String>,
}

pub fn braid_to_json(h: &CrossedGcwhq, v_grade: usize, w_grade: usize, m: &Mat) -> String {
    let g = &h.gcwhq.group;
    let conj = g.conj(v_grade, w_grade);
    let dto = BraidDto {
        kind: KIND_BRAID.into(),
        source_grades: vec![g.label(v_grade).into(), g.label(w_grade).into()],
        target_grades: vec![g.label(conj).into(), g.label(v_grade).into()],
        rows: m.rows(),
        cols: m.cols(),
        matrix: mat_to(m),
    };
    to_pretty(&dto)
}

// ------------------------------------------------------------------ diff --

/// Kind discriminator of a structure file.
pub fn peek_kind(s: &str) -> Result<String, IoError> {
    #[derive(Deserialize)]
    struct K {
        kind: Option<String>,
    }
    let k: K = serde_json::from_str(s)?;
    k.kind.ok_or_else(|| IoError::UnknownKind("<missing>".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub field: String,
    pub a: String,
    pub b: String,
}

/// Canonicalizes both files (parse to the domain type, re-serialize) and
/// lists every differing field/entry. Empty result means entry-wise equality.
pub fn diff_structures(a: &str, b: &str) -> Result<Vec<DiffEntry>, IoError> {
    let ka = peek_kind(a)?;
    let kb = peek_kind(b)?;
    if ka != kb {
        return Err(IoError::KindMismatch { a: ka, b: kb });
    }
    let canon = |s: &str| -> Result<serde_json::Value, IoError> {
        let text = match ka.as_str() {
            KIND_WHQ => whq_to_json(&whq_from_json(s)?),
            KIND_GCWHQ | KIND_CROSSED => {
                let (gc, pi) = gcwhq_from_json(s)?;
                to_pretty(&gcwhq_to_dto(&gc, pi.as_ref()))
            }
            other => return Err(IoError::UnknownKind(other.to_string())),
        };
        Ok(serde_json::from_str(&text)?)
    };
    let va = canon(a)?;
    let vb = canon(b)?;
    let mut out = Vec::new();
    diff_value("", &va, &vb, &mut out);
    Ok(out)
}

fn diff_value(path: &str, a: &serde_json::Value, b: &serde_json::Value, out: &mut Vec<DiffEntry>) {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(ma), Value::Object(mb)) => {
            let keys: std::collections::BTreeSet<&String> = ma.keys().chain(mb.keys()).collect();
            for k in keys {
                let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match (ma.get(k), mb.get(k)) {
                    (Some(x), Some(y)) => diff_value(&sub, x, y, out),
                    (Some(x), None) => out.push(DiffEntry { field: sub, a: x.to_string(), b: "<absent>".into() }),
                    (None, Some(y)) => out.push(DiffEntry { field: sub, a: "<absent>".into(), b: y.to_string() }),
                    (None, None) => unreachable!(),
                }
            }
        }
        (Value::Array(xa), Value::Array(xb)) => {
            let len = xa.len().max(xb.len());
            for i in 0..len {
                let sub = format!("{path}[{i}]");
                match (xa.get(i), xb.get(i)) {
                    (Some(x), Some(y)) => diff_value(&sub, x, y, out),
                    (Some(x), None) => out.push(DiffEntry { field: sub, a: x.to_string(), b: "<absent>".into() }),
                    (None, Some(y)) => out.push(DiffEntry { field: sub, a: "<absent>".into(), b: y.to_string() }),
                    (None, None) => unreachable!(),
                }
            }
        }
        _ => {
            if a != b {
                out.push(DiffEntry { field: path.to_string(), a: a.to_string(), b: b.to_string() });
            }
        }
    }
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{build_hg, GroupAction};
    use crate::exactlin::rat;
    use crate::whq::{group_algebra, groupoid_algebra};
    use crate::yd::yd_adjoint;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn kz3_crossed() -> CrossedGcwhq {
        let base = group_algebra(&z(3));
        let mut inv = Mat::zeros(3, 3);
        *inv.at_mut(0, 0) = rat(1);
        *inv.at_mut(2, 1) = rat(1);
        *inv.at_mut(1, 2) = rat(1);
        let action = GroupAction { mats: vec![Mat::identity(3), inv] };
        build_hg(&base, &z(2), &action).unwrap()
    }

    #[test]
    fn whq_round_trip() {
        let h = groupoid_algebra(&[z(1), z(2)]).unwrap();
        let s = whq_to_json(&h);
        let back = whq_from_json(&s).unwrap();
        assert_eq!(h, back);
        // canonical: serialize twice, byte identical
        assert_eq!(s, whq_to_json(&back));
    }

    #[test]
    fn crossed_round_trip() {
        let h = kz3_crossed();
        let s = crossed_to_json(&h);
        let back = crossed_from_json(&s).unwrap();
        assert_eq!(h.gcwhq, back.gcwhq);
        assert_eq!(h.crossing, back.crossing);
        assert!(!back.certified);
        assert_eq!(s, crossed_to_json(&back));
    }

    #[test]
    fn yd_round_trip() {
        let h = kz3_crossed();
        let v = yd_adjoint(&h, 1).unwrap();
        let s = yd_to_json(&h, &v, "ambient.json");
        assert_eq!(yd_ambient_ref(&s).unwrap(), "ambient.json");
        let back = yd_from_json(&s, &h).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn rationals_canonicalize_on_parse() {
        let h = group_algebra(&z(2));
        let mut s = whq_to_json(&h);
        s = s.replace("\"1\"", "\"2/2\"");
        let back = whq_from_json(&s).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn diff_of_file_with_itself_is_empty() {
        let h = kz3_crossed();
        let s = crossed_to_json(&h);
        assert!(diff_structures(&s, &s).unwrap().is_empty());
    }

    #[test]
    fn diff_reports_changed_entry() {
        let h = kz3_crossed();
        let a = crossed_to_json(&h);
        let mut h2 = h.clone();
        let mut m = h2.gcwhq.delta[0].clone();
        *m.at_mut(0, 0) += rat(1);
        h2.gcwhq.delta[0] = m;
        let b = crossed_to_json(&h2);
        let d = diff_structures(&a, &b).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].field.starts_with("delta"));
    }

    #[test]
    fn diff_of_different_kinds_is_an_error() {
        let a = whq_to_json(&group_algebra(&z(2)));
        let b = crossed_to_json(&kz3_crossed());
        assert!(matches!(diff_structures(&a, &b), Err(IoError::KindMismatch { .. })));
    }

    #[test]
    fn group_identity_must_be_first_element() {
        let g = z(2);
        let mut dto = group_to_dto(&g);
        dto.elements.swap(0, 1);
        dto.table = vec![
            vec!["0".into(), "1".into()],
            vec!["1".into(), "0".into()],
        ];
        // elements now ["1", "0"]; table says elements[0]*elements[0] = "0",
        // so elements[0] is not the identity
        assert!(group_from_dto(&dto).is_err());
    }

    #[test]
    fn action_round_trip() {
        let g = z(2);
        let mats = vec![Mat::identity(2), Mat::from_int_rows(&[&[0, 1], &[1, 0]])];
        let s = action_to_json(&g, &mats);
        let back = action_from_json(&s, &g, 2).unwrap();
        assert_eq!(mats, back);
    }
}
