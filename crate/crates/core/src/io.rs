//! JSON documents for groups, bicharacters, algebras, matrices and
//! elements. Every document carries "format": 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{make_algebra, AlgebraElement, GradedAlgebra, Homogeneity, Product};
use crate::error::{Error, Result};
use crate::gmatrix::GradedMatrix;
use crate::grading::{Bicharacter, GradingGroup, GroupElement};
use crate::scalars::CycloScalar;

pub const FORMAT: u32 = 1;

/// Hex sha256 of a byte string.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarDoc {
    Int(i64),
    Text(String),
}

impl ScalarDoc {
    fn parse(&self, order: u32) -> Result<CycloScalar> {
        match self {
            ScalarDoc::Int(n) => Ok(CycloScalar::from_int(*n)),
            ScalarDoc::Text(s) => CycloScalar::parse(s, order),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BicharacterDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    moduli: Option<Vec<u32>>,
    root_order: u32,
    exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    label: String,
    degree: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableTerm {
    k: String,
    c: ScalarDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[serde(default)]
    format: Option<u32>,
    group: Vec<u32>,
    lambda: BicharacterDoc,
    #[serde(default)]
    root_order: Option<u32>,
    basis: Vec<BasisDoc>,
    table: BTreeMap<String, Vec<TableTerm>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementTerm {
    b: String,
    c: ScalarDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    #[serde(default)]
    format: Option<u32>,
    #[serde(default)]
    root_order: Option<u32>,
    row_degrees: Vec<Vec<i64>>,
    #[serde(default)]
    col_degrees: Option<Vec<Vec<i64>>>,
    entries: Vec<Vec<Vec<ElementTerm>>>,
}

fn parse_err(file: &str, location: impl Into<String>) -> Error {
    Error::Parse(file.to_string(), location.into())
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str, file: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(file, format!("line {} column {}: {e}", e.line(), e.column())))
}

fn check_format(format: Option<u32>, file: &str) -> Result<()> {
    match format {
        None | Some(FORMAT) => Ok(()),
        Some(other) => Err(parse_err(file, format!("format: unsupported version {other}"))),
    }
}

fn at(file: &str, location: String) -> impl FnOnce(Error) -> Error + '_ {
    move |e| parse_err(file, format!("{location}: {e}"))
}

pub fn group_to_json(g: &GradingGroup) -> Value {
    json!(g.moduli())
}

pub fn degree_to_json(g: &GroupElement) -> Value {
    json!(g.residues())
}

/// `null` for the zero element, "inhomogeneous", or the degree.
pub fn homogeneity_to_json(h: &Homogeneity) -> Value {
    match h {
        Homogeneity::Zero => Value::Null,
        Homogeneity::Homogeneous(g) => degree_to_json(g),
        Homogeneity::Inhomogeneous => json!("inhomogeneous"),
    }
}

pub fn bicharacter_to_json(b: &Bicharacter) -> Value {
    json!({
        "format": FORMAT,
        "moduli": b.group().moduli(),
        "root_order": b.root_order(),
        "exponents": b.exponents(),
    })
}

fn bicharacter_from_doc(doc: BicharacterDoc, group: Option<&GradingGroup>, file: &str) -> Result<Bicharacter> {
    check_format(doc.format, file)?;
    let group = match (doc.moduli, group) {
        (Some(m), Some(g)) if m != g.moduli() => {
            return Err(parse_err(file, format!("moduli: {m:?} differ from the group {:?}", g.moduli())))
        }
        (_, Some(g)) => g.clone(),
        (Some(m), None) => GradingGroup::new(m).map_err(at(file, "moduli".into()))?,
        (None, None) => return Err(parse_err(file, "moduli: missing")),
    };
    Bicharacter::new(group, doc.root_order, doc.exponents).map_err(at(file, "exponents".into()))
}

/// Parses a bicharacter (multiplier) document; `group` pins the grading.
pub fn bicharacter_from_json(text: &str, group: Option<&GradingGroup>, file: &str) -> Result<Bicharacter> {
    bicharacter_from_doc(from_text(text, file)?, group, file)
}

pub fn algebra_to_json(alg: &GradedAlgebra) -> Value {
    let order = alg.root_order();
    let basis: Vec<Value> = (0..alg.dim())
        .map(|i| json!({"label": alg.label(i), "degree": alg.degree(i).residues()}))
        .collect();
    let mut table = serde_json::Map::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let terms: Vec<Value> = alg
                .product(i, j)
                .iter()
                .map(|(k, c)| json!({"k": alg.label(*k), "c": c.to_text(order).expect("coefficient order divides the algebra's")}))
                .collect();
            if !terms.is_empty() {
                table.insert(format!("{},{}", alg.label(i), alg.label(j)), Value::Array(terms));
            }
        }
    }
    let lambda = alg.lambda();
    json!({
        "format": FORMAT,
        "group": alg.group().moduli(),
        "lambda": {"root_order": lambda.root_order(), "exponents": lambda.exponents()},
        "root_order": order,
        "basis": basis,
        "table": table,
    })
}

pub fn algebra_from_json(text: &str, file: &str) -> Result<GradedAlgebra> {
    let doc: AlgebraDoc = from_text(text, file)?;
    check_format(doc.format, file)?;
    let group = GradingGroup::new(doc.group.clone()).map_err(at(file, "group".into()))?;
    let lambda = bicharacter_from_doc(doc.lambda, Some(&group), file)?;
    let order = doc.root_order.unwrap_or(lambda.root_order());
    let mut index = BTreeMap::new();
    let mut basis = Vec::with_capacity(doc.basis.len());
    for (n, b) in doc.basis.iter().enumerate() {
        if b.label.contains(',') {
            return Err(parse_err(file, format!("basis[{n}].label: commas are reserved for table keys")));
        }
        let g = group.element(&b.degree).map_err(at(file, format!("basis[{n}].degree")))?;
        if index.insert(b.label.clone(), n).is_some() {
            return Err(parse_err(file, format!("basis[{n}].label: duplicate {:?}", b.label)));
        }
        basis.push((b.label.clone(), g));
    }
    let lookup = |label: &str, loc: &str| {
        index.get(label).copied().ok_or_else(|| parse_err(file, format!("{loc}: unknown basis label {label:?}")))
    };
    let mut products: Vec<((usize, usize), Product)> = Vec::new();
    for (key, terms) in &doc.table {
        let loc = format!("table[{key:?}]");
        let (a, b) = key.split_once(',').ok_or_else(|| parse_err(file, format!("{loc}: key must be \"a,b\"")))?;
        let (i, j) = (lookup(a.trim(), &loc)?, lookup(b.trim(), &loc)?);
        let mut prod = Vec::with_capacity(terms.len());
        for (n, t) in terms.iter().enumerate() {
            let c = t.c.parse(order).map_err(at(file, format!("{loc}[{n}].c")))?;
            prod.push((lookup(&t.k, &loc)?, c));
        }
        products.push(((i, j), prod));
    }
    make_algebra(lambda, basis, products).map_err(at(file, "algebra".into()))
}

fn element_order(e: &AlgebraElement) -> u32 {
    e.terms().fold(e.algebra().root_order(), |acc, (_, c)| num_integer::lcm(acc, c.order()))
}

/// [{"b": label, "c": scalar}, ...] with scalars written at `order`.
pub fn element_to_json_at(e: &AlgebraElement, order: u32) -> Value {
    let alg = e.algebra();
    Value::Array(
        e.terms()
            .map(|(k, c)| json!({"b": alg.label(k), "c": c.to_text(order).expect("order is a common multiple")}))
            .collect(),
    )
}

pub fn element_to_json(e: &AlgebraElement) -> Value {
    element_to_json_at(e, element_order(e))
}

fn element_from_terms(terms: &[ElementTerm], alg: &GradedAlgebra, order: u32, file: &str, loc: &str) -> Result<AlgebraElement> {
    let mut e = AlgebraElement::zero(alg);
    for (n, t) in terms.iter().enumerate() {
        let k = alg.index_of(&t.b).ok_or_else(|| parse_err(file, format!("{loc}[{n}].b: unknown basis label {:?}", t.b)))?;
        let c = t.c.parse(order).map_err(at(file, format!("{loc}[{n}].c")))?;
        e = e + AlgebraElement::basis(alg, k).scale(&c);
    }
    Ok(e)
}

/// Parses an element document, either a bare term list or an object with
/// "result" (or "element") and an optional "root_order".
pub fn element_from_json(text: &str, alg: &GradedAlgebra, file: &str) -> Result<AlgebraElement> {
    let value: Value = from_text(text, file)?;
    let (terms, order) = match &value {
        Value::Array(_) => (value.clone(), None),
        Value::Object(m) => {
            let terms = m.get("result").or_else(|| m.get("element")).cloned().ok_or_else(|| parse_err(file, "result: missing"))?;
            let order = m.get("root_order").and_then(Value::as_u64).map(|o| o as u32);
            (terms, order)
        }
        _ => return Err(parse_err(file, "expected an array of terms")),
    };
    let terms: Vec<ElementTerm> = serde_json::from_value(terms).map_err(|e| parse_err(file, format!("result: {e}")))?;
    element_from_terms(&terms, alg, order.unwrap_or(alg.root_order()), file, "result")
}

pub fn matrix_to_json(m: &GradedMatrix) -> Value {
    let order = (0..m.rows())
        .flat_map(|i| m.row(i).iter().map(element_order).collect::<Vec<_>>())
        .fold(m.algebra().root_order(), num_integer::lcm);
    let degs = |v: &[GroupElement]| v.iter().map(degree_to_json).collect::<Vec<_>>();
    let entries: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|e| element_to_json_at(e, order)).collect())).collect();
    json!({
        "format": FORMAT,
        "root_order": order,
        "row_degrees": degs(m.row_degrees()),
        "col_degrees": degs(m.col_degrees()),
        "entries": entries,
    })
}

/// Degree vector override: a list of degrees used for rows and columns.
pub fn degrees_from_json(text: &str, group: &GradingGroup, file: &str) -> Result<Vec<GroupElement>> {
    let raw: Vec<Vec<i64>> = from_text(text, file)?;
    raw.iter()
        .enumerate()
        .map(|(n, d)| group.element(d).map_err(at(file, format!("degrees[{n}]"))))
        .collect()
}

pub fn matrix_from_json(
    text: &str,
    alg: &GradedAlgebra,
    degrees: Option<Vec<GroupElement>>,
    file: &str,
) -> Result<GradedMatrix> {
    let doc: MatrixDoc = from_text(text, file)?;
    check_format(doc.format, file)?;
    let group = alg.group();
    let parse_degs = |v: &[Vec<i64>], name: &str| -> Result<Vec<GroupElement>> {
        v.iter()
            .enumerate()
            .map(|(n, d)| group.element(d).map_err(at(file, format!("{name}[{n}]"))))
            .collect()
    };
    let (rows, cols) = match degrees {
        Some(d) => (d.clone(), d),
        None => {
            let r = parse_degs(&doc.row_degrees, "row_degrees")?;
            let c = match &doc.col_degrees {
                Some(c) => parse_degs(c, "col_degrees")?,
                None => r.clone(),
            };
            (r, c)
        }
    };
    let order = doc.root_order.unwrap_or(alg.root_order());
    if doc.entries.len() != rows.len() {
        return Err(parse_err(file, format!("entries: {} rows for {} row degrees", doc.entries.len(), rows.len())));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in doc.entries.iter().enumerate() {
        if row.len() != cols.len() {
            return Err(parse_err(file, format!("entries[{i}]: {} entries for {} column degrees", row.len(), cols.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, terms)| element_from_terms(terms, alg, order, file, &format!("entries[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    GradedMatrix::new(alg, rows, cols, out).map_err(at(file, "entries".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn algebra_round_trip() {
        for name in ["quaternions", "clifford:1,1", "grassmann:2", "clock_shift:3"] {
            let a = presets::preset(name).unwrap();
            let text = algebra_to_json(&a).to_string();
            assert_eq!(algebra_from_json(&text, "a.json").unwrap(), a, "{name}");
        }
    }

    #[test]
    fn matrix_and_element_round_trip() {
        let a = presets::clock_shift(3).unwrap();
        let g = a.group();
        let e = a.element(&[("1", CycloScalar::from_ratio(1, 2)), ("c1s2", CycloScalar::cyclo(1, 3))]).unwrap();
        let back = element_from_json(&json!({"result": element_to_json(&e)}).to_string(), &a, "e").unwrap();
        assert_eq!(back, e);
        let m = GradedMatrix::square(&a, vec![g.zero(), g.el(&[1, 0])], vec![
            vec![e.clone(), AlgebraElement::zero(&a)],
            vec![AlgebraElement::one(&a), e],
        ])
        .unwrap();
        let text = matrix_to_json(&m).to_string();
        assert_eq!(matrix_from_json(&text, &a, None, "m").unwrap(), m);
    }

    #[test]
    fn located_errors() {
        let a = presets::quaternions();
        let bad = r#"{"row_degrees": [[0,0,0]], "entries": [[[{"b": "q", "c": "1"}]]]}"#;
        match matrix_from_json(bad, &a, None, "m.json") {
            Err(Error::Parse(f, loc)) => {
                assert_eq!(f, "m.json");
                assert!(loc.starts_with("entries[0][0][0].b"), "{loc}");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(matrix_from_json("{", &a, None, "m.json"), Err(Error::Parse(..))));
        let sigma = bicharacter_to_json(&a.canonical_multiplier().unwrap()).to_string();
        assert_eq!(bicharacter_from_json(&sigma, Some(a.group()), "s").unwrap(), a.canonical_multiplier().unwrap());
    }
}
