//! JSON and CSV formats for complexes, values, groups, samples and diagrams.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::chains::GradeOperator;
use crate::complex::{SimplicialComplex, VertexFunction};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{enumerate_group, GroupAction, GroupSample, VertexPermutation};
use crate::metrics::{MatchingResult, WitnessEntry};
use crate::persistence::{DegreeDiagram, PersistenceDiagram, TIEBREAK};
use crate::scenarios::Scenario;

/// Default cap on the group size when closing generators.
pub const DEFAULT_GROUP_CAP: usize = 4096;

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0; // no negative zero in output
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

/// Exact value of a finite `f64` as `p/q` with `q` a power of two (or an
/// integer), when it fits in 128-bit arithmetic.
pub fn exact_rational(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some("0".into());
    }
    let bits = x.abs().to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    while mant % 2 == 0 && e < 0 {
        mant /= 2;
        e += 1;
    }
    let sign = if x < 0.0 { "-" } else { "" };
    if e >= 0 {
        if e > 70 {
            return None;
        }
        Some(format!("{sign}{}", (mant as u128) << e))
    } else if e > -127 {
        Some(format!("{sign}{mant}/{}", 1u128 << (-e)))
    } else {
        None
    }
}

// ---------------------------------------------------------------- complexes

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: usize,
    simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuesFile {
    values: Vec<Vec<f64>>,
}

fn function_from_rows(rows: &[Vec<f64>]) -> Result<VertexFunction> {
    let k = rows.first().map_or(1, Vec::len);
    VertexFunction::new(k, rows)
}

/// Complex (closure computed on load) and its optional embedded values.
pub fn parse_complex(text: &str) -> Result<(SimplicialComplex, Option<VertexFunction>)> {
    let file: ComplexFile = parse(text, "complex")?;
    let complex = SimplicialComplex::new(file.vertices, &file.simplices)?;
    let values = file.values.as_deref().map(function_from_rows).transpose()?;
    Ok((complex, values))
}

pub fn complex_to_json(complex: &SimplicialComplex, values: Option<&VertexFunction>) -> String {
    let file = ComplexFile {
        vertices: complex.vertex_count(),
        simplices: complex.maximal_simplices(),
        values: values.map(VertexFunction::rows),
    };
    to_pretty(&serde_json::to_value(file).expect("serialisable"))
}

pub fn parse_values(text: &str) -> Result<VertexFunction> {
    let file: ValuesFile = parse(text, "values")?;
    function_from_rows(&file.values)
}

pub fn values_to_json(f: &VertexFunction) -> String {
    to_pretty(&json!({ "values": f.rows() }))
}

// ---------------------------------------------------------------- groups

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    elements: Option<Vec<Vec<usize>>>,
    generators: Option<Vec<Vec<usize>>>,
    cap: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleFile {
    elements: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    resolution: Option<String>,
}

fn permutations(raw: Vec<Vec<usize>>) -> Result<Vec<VertexPermutation>> {
    raw.into_iter().map(VertexPermutation::new).collect()
}

/// `{"elements": [...]}` or `{"generators": [...], "cap": M}`.
pub fn parse_group(text: &str, vertex_count: usize) -> Result<GroupAction> {
    let file: GroupFile = parse(text, "group")?;
    match (file.elements, file.generators) {
        (Some(e), None) => {
            let e = permutations(e)?;
            if let Some(p) = e.iter().find(|p| p.len() != vertex_count) {
                return Err(Error::PermutationSizeMismatch { expected: vertex_count, got: p.len() });
            }
            GroupAction::from_elements(e)
        }
        (None, Some(g)) => enumerate_group(vertex_count, &permutations(g)?, file.cap.unwrap_or(DEFAULT_GROUP_CAP)),
        _ => Err(Error::Format("group: exactly one of \"elements\" or \"generators\" is required".into())),
    }
}

pub fn group_to_json(group: &GroupAction) -> String {
    let e: Vec<&[usize]> = group.elements().iter().map(VertexPermutation::image).collect();
    to_pretty(&json!({ "elements": e }))
}

pub fn parse_sample(text: &str) -> Result<GroupSample> {
    let file: SampleFile = parse(text, "group sample")?;
    let s = GroupSample::new(permutations(file.elements)?);
    Ok(match file.resolution {
        Some(r) => s.with_resolution(r),
        None => s,
    })
}

pub fn sample_to_json(sample: &GroupSample) -> String {
    let file = SampleFile {
        elements: sample.elements().iter().map(|p| p.image().to_vec()).collect(),
        resolution: sample.resolution().map(str::to_owned),
    };
    to_pretty(&serde_json::to_value(file).expect("serialisable"))
}

pub fn permutation_to_json(p: &VertexPermutation) -> String {
    to_pretty(&json!({ "image": p.image() }))
}

// ---------------------------------------------------------------- diagrams

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMeta {
    pub field: FieldSpec,
    pub operator: GradeOperator,
}

pub fn diagram_to_value(d: &PersistenceDiagram, meta: &DiagramMeta, degrees: &[usize]) -> Value {
    let mut out = Map::new();
    for &n in degrees {
        let dd = d.degree(n);
        let pairs: Vec<Value> = dd.pairs.iter().map(|&(b, e)| json!([number(b), number(e)])).collect();
        let ess: Vec<Value> = dd.essential.iter().map(|&b| number(b)).collect();
        out.insert(format!("degree_{n}"), json!({ "pairs": pairs, "essential": ess }));
    }
    out.insert(
        "meta".into(),
        json!({
            "field": meta.field.characteristic(),
            "operator": meta.operator.to_string(),
            "tiebreak": TIEBREAK,
        }),
    );
    Value::Object(out)
}

pub fn diagram_to_json(d: &PersistenceDiagram, meta: &DiagramMeta, degrees: &[usize]) -> String {
    to_pretty(&diagram_to_value(d, meta, degrees))
}

/// `degree,birth,death` rows; essential classes have death `inf`.
pub fn diagram_to_csv(d: &PersistenceDiagram, degrees: &[usize]) -> String {
    let mut s = String::from("degree,birth,death\n");
    for &n in degrees {
        let dd = d.degree(n);
        for &(b, e) in &dd.pairs {
            s.push_str(&format!("{n},{},{}\n", round12(b), round12(e)));
        }
        for &b in &dd.essential {
            s.push_str(&format!("{n},{},inf\n", round12(b)));
        }
    }
    s
}

fn value_f64(v: &Value, ctx: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Format(format!("{ctx}: expected a number, got {v}")))
}

/// Reads the `degree_n` entries of a diagram document; `meta` is ignored.
pub fn parse_diagram(text: &str) -> Result<PersistenceDiagram> {
    let doc: Map<String, Value> = parse(text, "diagram")?;
    let mut degrees: Vec<(usize, DegreeDiagram)> = Vec::new();
    for (key, body) in &doc {
        if key == "meta" {
            continue;
        }
        let n: usize = key
            .strip_prefix("degree_")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("diagram: unexpected key '{key}'")))?;
        let ctx = format!("diagram: {key}");
        let empty = Vec::new();
        let list = |field: &str| -> Result<&Vec<Value>> {
            match body.get(field) {
                None => Ok(&empty),
                Some(v) => v.as_array().ok_or_else(|| Error::Format(format!("{ctx}.{field}: expected an array"))),
            }
        };
        let mut pairs = Vec::new();
        for p in list("pairs")? {
            match p.as_array().map(Vec::as_slice) {
                Some([b, d]) => pairs.push((value_f64(b, &ctx)?, value_f64(d, &ctx)?)),
                _ => return Err(Error::Format(format!("{ctx}.pairs: expected [birth, death], got {p}"))),
            }
        }
        let essential = list("essential")?.iter().map(|b| value_f64(b, &ctx)).collect::<Result<Vec<_>>>()?;
        degrees.push((n, DegreeDiagram::new(pairs, essential)?));
    }
    let top = degrees.iter().map(|(n, _)| n + 1).max().unwrap_or(0);
    let mut all = vec![DegreeDiagram::default(); top];
    for (n, d) in degrees {
        all[n] = d;
    }
    Ok(PersistenceDiagram::new(all))
}

// ---------------------------------------------------------------- matchings

fn point(p: (f64, f64)) -> Value {
    json!([number(p.0), number(p.1)])
}

fn witness_entry(w: &WitnessEntry) -> Value {
    match *w {
        WitnessEntry::Points { left, right } => json!({ "left": point(left), "right": point(right) }),
        WitnessEntry::LeftToDiagonal(p) => json!({ "left": point(p), "right": "diagonal" }),
        WitnessEntry::RightToDiagonal(p) => json!({ "left": "diagonal", "right": point(p) }),
        WitnessEntry::Essentials { left, right } => json!({ "left": [number(left), "inf"], "right": [number(right), "inf"] }),
        WitnessEntry::UnmatchedLeftEssential(b) => json!({ "left": [number(b), "inf"], "right": null }),
        WitnessEntry::UnmatchedRightEssential(b) => json!({ "left": null, "right": [number(b), "inf"] }),
    }
}

pub fn matching_to_value(m: &MatchingResult) -> Value {
    let mut v = json!({
        "degree": m.degree,
        "distance": number(m.distance),
        "witness": m.witness.iter().map(witness_entry).collect::<Vec<_>>(),
    });
    if let Some(r) = exact_rational(m.distance) {
        v["exact"] = json!(r);
    }
    v
}

pub fn bound_value(x: f64) -> Value {
    let mut v = json!({ "value": number(x) });
    if let Some(r) = exact_rational(x) {
        v["exact"] = json!(r);
    }
    v
}

pub fn pretty(v: &Value) -> String {
    to_pretty(v)
}

// ---------------------------------------------------------------- scenarios

/// Files written by `scenario --out`: `(file name, contents)`.
pub fn scenario_files(s: &Scenario) -> Vec<(String, String)> {
    vec![
        ("complex.json".into(), complex_to_json(&s.complex, Some(&s.phi))),
        ("phi.json".into(), values_to_json(&s.phi)),
        ("psi.json".into(), values_to_json(&s.psi)),
        ("group.json".into(), group_to_json(&s.group)),
        ("sample.json".into(), sample_to_json(&s.sample)),
        ("witness.json".into(), permutation_to_json(&s.witness)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::builtin;

    #[test]
    fn complex_round_trip() {
        let text = r#"{"vertices": 4, "simplices": [[0,1,2],[2,3]], "values": [[0],[1],[2],[0.5]]}"#;
        let (k, f) = parse_complex(text).unwrap();
        assert_eq!(k.count(1), 4);
        let f = f.unwrap();
        let (k2, f2) = parse_complex(&complex_to_json(&k, Some(&f))).unwrap();
        assert_eq!(k, k2);
        assert_eq!(Some(f), f2);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_complex("{\"vertices\": 3,\n \"simplices\": [[0,1],]}").unwrap_err();
        let Error::Format(msg) = err else { panic!("{err:?}") };
        assert!(msg.contains("line 2"), "{msg}");
        assert!(matches!(parse_complex(r#"{"vertices": 2, "simplices": [[0,5]]}"#), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(parse_complex(r#"{"vertices": 2, "simplex": []}"#), Err(Error::Format(_))));
    }

    #[test]
    fn group_formats() {
        let g = parse_group(r#"{"generators": [[1,2,3,0]], "cap": 10}"#, 4).unwrap();
        assert_eq!(g.order(), 4);
        let g2 = parse_group(&group_to_json(&g), 4).unwrap();
        assert_eq!(g2.order(), 4);
        assert!(matches!(parse_group(r#"{"generators": [[1,2,3,0]], "cap": 3}"#, 4), Err(Error::GroupCapExceeded(_))));
        assert!(matches!(parse_group(r#"{}"#, 4), Err(Error::Format(_))));
        assert!(parse_group(r#"{"elements": [[0,1]]}"#, 4).is_err());
    }

    #[test]
    fn diagram_round_trip() {
        let d = PersistenceDiagram::new(vec![
            DegreeDiagram::new(vec![(0.0, 0.5)], vec![-1.0]).unwrap(),
            DegreeDiagram::new(vec![(0.0, 1.0)], vec![]).unwrap(),
        ]);
        let meta = DiagramMeta { field: FieldSpec::GF2, operator: GradeOperator::Max };
        let text = diagram_to_json(&d, &meta, &[0, 1]);
        assert_eq!(parse_diagram(&text).unwrap(), d);
        let csv = diagram_to_csv(&d, &[0, 1]);
        assert_eq!(csv, "degree,birth,death\n0,0,0.5\n0,-1,inf\n1,0,1\n");
    }

    #[test]
    fn rationals_and_rounding() {
        assert_eq!(exact_rational(0.5).as_deref(), Some("1/2"));
        assert_eq!(exact_rational(-0.75).as_deref(), Some("-3/4"));
        assert_eq!(exact_rational(3.0).as_deref(), Some("3"));
        assert_eq!(exact_rational(0.0).as_deref(), Some("0"));
        assert_eq!(exact_rational(f64::INFINITY), None);
        assert_eq!(round12(1234.567890123456), 1234.56789012);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert!(round12(-0.0).is_sign_positive());
    }

    #[test]
    fn scenario_files_parse_back() {
        let s = builtin("circle-rooms").unwrap();
        let files = scenario_files(&s);
        let get = |n: &str| &files.iter().find(|(f, _)| f == n).unwrap().1;
        let (k, phi) = parse_complex(get("complex.json")).unwrap();
        assert_eq!(k, s.complex);
        assert_eq!(phi.unwrap(), s.phi);
        assert_eq!(parse_values(get("psi.json")).unwrap(), s.psi);
        assert_eq!(parse_group(get("group.json"), k.vertex_count()).unwrap().order(), 2);
        assert_eq!(parse_sample(get("sample.json")).unwrap().len(), s.sample.len());
    }
}
