//! JSON and CSV renderings of results. Key order is fixed, so equal
//! results always serialize to identical bytes.

use serde_json::{json, Value};

use crate::bounds_lab::{AccReport, EllReport, ValueSetReport};
use crate::discrepancy::{LctResult, LctValue, MldBound, MldResult, MldValue, MultiIdeal, SearchOutcome, WeightVector};
use crate::newton_geometry::{refined_fan, Ray};
use crate::scalars::ExactScalar;

pub fn scalar_json(s: &ExactScalar) -> Value {
    serde_json::to_value(s).expect("scalars serialize")
}

pub fn mld_value_json(v: &MldValue) -> Value {
    match v {
        MldValue::Finite(s) => json!({"kind": "finite", "scalar": scalar_json(s)}),
        MldValue::MinusInfinity => json!({"kind": "minus_infinity"}),
    }
}

pub fn divisor_json(w: &WeightVector) -> Value {
    json!({"p": [w.p1, w.p2], "k": w.k()})
}

fn ray_json(r: &Ray) -> Value {
    json!(r.dir())
}

pub fn mld_json(r: &MldResult) -> Value {
    let rays: Vec<Value> =
        r.certificate.rays.iter().map(|(ray, a)| json!({"ray": ray_json(ray), "a": scalar_json(a)})).collect();
    let candidates: Vec<Value> = r
        .certificate
        .candidates
        .iter()
        .map(|(p, a)| json!({"p": [p.p1, p.p2], "a": scalar_json(a)}))
        .collect();
    json!({
        "value": mld_value_json(&r.value),
        "divisor": divisor_json(&r.divisor),
        "certificate": {
            "rays": rays,
            "candidates": candidates,
            "negative_ray": r.certificate.negative_ray.as_ref().map(ray_json),
        },
    })
}

/// mld of a monomial input, flagged when it came from monomializing.
pub fn mld_bound_json(b: &MldBound, monomialized: bool) -> Value {
    let mut v = mld_json(&b.result);
    v["monomialized"] = json!(monomialized);
    v["input"] = json!(b.monomialized.to_string());
    if monomialized {
        v["upper_bound"] = json!(!b.exact);
    }
    v
}

pub fn lct_json(r: &LctResult) -> Value {
    let value = match &r.value {
        LctValue::Finite(s) => json!({"kind": "finite", "scalar": scalar_json(s)}),
        LctValue::Unbounded => json!({"kind": "unbounded"}),
    };
    let ratios: Vec<Value> = r
        .ratios
        .iter()
        .map(|(ray, n, d)| json!({"ray": ray_json(ray), "numerator": n, "denominator": scalar_json(d)}))
        .collect();
    json!({
        "value": value,
        "ray": r.ray.as_ref().map(ray_json),
        "exceptional": r.exceptional,
        "certificate": {"ratios": ratios},
    })
}

pub fn search_json(s: &SearchOutcome) -> Value {
    let mut v = mld_bound_json(&s.bound, true);
    v["automorphism"] = json!(s.automorphism.to_string());
    v["examined"] = json!(s.examined);
    v
}

/// Polygons, merged fan and ray values of a monomial multiideal.
pub fn fan_json(m: &MultiIdeal) -> Value {
    let polygons: Vec<Value> = m
        .polygons()
        .iter()
        .map(|g| {
            let vertices: Vec<Value> = g.vertices().iter().map(|v| json!([v.ex, v.ey])).collect();
            let edges: Vec<Value> = g
                .edges()
                .iter()
                .map(|e| {
                    json!({
                        "start": [e.start.ex, e.start.ey],
                        "end": [e.end.ex, e.end.ey],
                        "normal": ray_json(&e.normal),
                    })
                })
                .collect();
            json!({"vertices": vertices, "edges": edges})
        })
        .collect();
    let fan = refined_fan(m.polygons());
    let rays: Vec<Value> = fan
        .rays()
        .iter()
        .map(|r| {
            let a = crate::discrepancy::log_discrepancy(r.dir(), m).expect("fan rays are valid weights");
            json!({"ray": ray_json(r), "a": scalar_json(&a), "approx": a.to_f64()})
        })
        .collect();
    let cones: Vec<Value> = fan.cones().map(|(u, v)| json!([ray_json(&u), ray_json(&v)])).collect();
    json!({"polygons": polygons, "rays": rays, "cones": cones})
}

fn value_list(values: impl IntoIterator<Item = impl std::borrow::Borrow<MldValue>>) -> Vec<Value> {
    values.into_iter().map(|v| mld_value_json(v.borrow())).collect()
}

fn exponents_text(e: &[ExactScalar]) -> String {
    e.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ")
}

fn witness_generators(ideals: &[crate::newton_geometry::MonomialIdeal]) -> String {
    ideals.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ")
}

pub fn ell_json(r: &EllReport) -> Value {
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "ideals": w.ideals.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "mld": mld_value_json(&w.value),
                "divisor": divisor_json(&w.divisor),
            })
        })
        .collect();
    json!({
        "exponents": r.exponents.iter().map(scalar_json).collect::<Vec<_>>(),
        "boxes": r.boxes,
        "include_trivial": r.include_trivial,
        "examined": r.examined,
        "over_budget": r.over_budget,
        "max_min_k": r.max_min_k,
        "witnesses": witnesses,
        "value_set": value_list(&r.value_set),
    })
}

pub fn value_set_json(r: &ValueSetReport) -> Value {
    let first_seen: Vec<Value> =
        r.first_seen.iter().map(|(v, m)| json!({"value": mld_value_json(v), "box": m})).collect();
    json!({
        "values": value_list(&r.values),
        "stabilized_at": r.stabilized_at,
        "first_seen": first_seen,
    })
}

pub fn acc_json(r: &AccReport) -> Value {
    json!({
        "box": r.box_bound,
        "samples": r.samples,
        "exponent_tuples": r.exponent_tuples.iter().map(|t| exponents_text(t)).collect::<Vec<_>>(),
        "values_descending": value_list(&r.values_descending),
        "longest_ascending_chain": value_list(&r.longest_ascending_chain),
        "chain_length": r.longest_ascending_chain.len(),
        "caveat": r.caveat,
    })
}

pub const CSV_HEADER: [&str; 6] = ["generators", "exponents", "mld", "divisor_p1", "divisor_p2", "k"];

/// One row per witness, sorted by the generators text.
pub fn ell_csv(r: &EllReport) -> Result<String, csv::Error> {
    let exponents = exponents_text(&r.exponents);
    let mut rows: Vec<[String; 6]> = r
        .witnesses
        .iter()
        .map(|w| {
            [
                witness_generators(&w.ideals),
                exponents.clone(),
                w.value.to_string(),
                w.divisor.p1.to_string(),
                w.divisor.p2.to_string(),
                w.divisor.k().to_string(),
            ]
        })
        .collect();
    rows.sort();
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(CSV_HEADER)?;
    for row in &rows {
        out.write_record(row)?;
    }
    let bytes = out.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds_lab::{ell_search, EllConfig};
    use crate::discrepancy::{lct, mld};
    use crate::newton_geometry::{make_ideal, Monomial};

    fn example() -> MultiIdeal {
        let i = make_ideal([Monomial::new(2, 0), Monomial::new(0, 3)]).unwrap();
        MultiIdeal::single(i, ExactScalar::one()).unwrap()
    }

    #[test]
    fn mld_shape() {
        let v = mld_json(&mld(&example()));
        assert_eq!(v["value"], json!({"kind": "minus_infinity"}));
        assert_eq!(v["divisor"], json!({"p": [3, 2], "k": 4}));
        assert_eq!(v["certificate"]["negative_ray"], json!([3, 2]));
        let trivial = MultiIdeal::single(crate::newton_geometry::MonomialIdeal::trivial(), ExactScalar::one()).unwrap();
        let v = mld_json(&mld(&trivial));
        assert_eq!(v["value"], json!({"kind": "finite", "scalar": {"a": "2", "b": "0", "c": "0"}}));
    }

    #[test]
    fn lct_shape() {
        let v = lct_json(&lct(&example()).unwrap());
        assert_eq!(v["value"]["scalar"]["a"], json!("5/6"));
        assert_eq!(v["ray"], json!([3, 2]));
        assert_eq!(v["exceptional"], json!(true));
    }

    #[test]
    fn fan_shape() {
        let v = fan_json(&example());
        assert_eq!(v["polygons"][0]["vertices"], json!([[0, 3], [2, 0]]));
        assert_eq!(v["rays"].as_array().unwrap().len(), 3);
        assert_eq!(v["cones"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn csv_rows() {
        let empty = EllReport {
            exponents: vec![ExactScalar::one()],
            boxes: vec![0],
            include_trivial: false,
            examined: 0,
            over_budget: 0,
            max_min_k: None,
            witnesses: vec![],
            value_set: Default::default(),
        };
        assert_eq!(ell_csv(&empty).unwrap(), "generators,exponents,mld,divisor_p1,divisor_p2,k\n");

        let cfg = EllConfig { witness_limit: 100, ..EllConfig::new(3) };
        let r = ell_search(&[ExactScalar::one()], &cfg).unwrap();
        let text = ell_csv(&r).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let firsts: Vec<String> = reader.records().map(|rec| rec.unwrap()[0].to_string()).collect();
        assert_eq!(firsts.len(), r.witnesses.len());
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
        assert!(text.contains("\"x^2, y^3\",1,-inf,3,2,4"));
        assert_eq!(ell_csv(&r).unwrap(), text);
    }
}
