use std::fs;

use serde_json::{json, Value};

use mcda_core::dataset::import_assessments_csv;
use mcda_core::report::{render_json, render_ranking_csv, render_table};
use mcda_core::{
    bundled_dataset, emit_report, load_dataset, parse_dataset, run_pipeline, Approach, Error, Method, Report,
    ReportFormat, RunConfig, Stage,
};

fn minimal() -> Value {
    json!({
        "decision_makers": [
            {"id": "D1", "importance": "VI"},
            {"id": "D2", "importance": "M"}
        ],
        "criteria": [
            {"id": "price", "kind": "numerical", "objective": "cost", "importance": {"D1": "VI", "D2": "I"}},
            {"id": "quality", "kind": "linguistic", "objective": "benefit", "importance": {"D1": "M", "D2": "I"}}
        ],
        "suppliers": ["A", "B"],
        "assessments": [
            {"supplier": "A", "criterion": "price", "dm": "D1", "value": 10.0},
            {"supplier": "A", "criterion": "price", "dm": "D2", "value": 12.0},
            {"supplier": "B", "criterion": "price", "dm": "D1", "value": 15.0},
            {"supplier": "B", "criterion": "price", "dm": "D2", "value": 14.0},
            {"supplier": "A", "criterion": "quality", "dm": "D1", "value": "G"},
            {"supplier": "A", "criterion": "quality", "dm": "D2", "value": "MG"},
            {"supplier": "B", "criterion": "quality", "dm": "D1", "value": "VG"},
            {"supplier": "B", "criterion": "quality", "dm": "D2", "value": "M"}
        ]
    })
}

fn parse(v: &Value) -> mcda_core::Result<mcda_core::DecisionDataset> {
    parse_dataset(&v.to_string())
}

#[test]
fn minimal_file_ranks() {
    let ds = parse(&minimal()).unwrap();
    assert_eq!(ds.shape(), (2, 2, 2));
    let run = run_pipeline(&ds, &RunConfig::default()).unwrap();
    for r in run.rankings() {
        assert_eq!(r.scores.len(), 2);
        assert!(r.cc().iter().all(|c| (0.0..=1.0).contains(c)));
    }
}

#[test]
fn missing_cell_is_rejected() {
    let mut v = minimal();
    v["assessments"].as_array_mut().unwrap().pop();
    let err = parse(&v).unwrap_err();
    assert!(matches!(err, Error::MissingData(_)), "{err}");
    assert!(err.to_string().contains("B"));
}

#[test]
fn unknown_code_is_rejected() {
    let mut v = minimal();
    v["assessments"][4]["value"] = json!("GREAT");
    let err = parse(&v).unwrap_err();
    assert!(err.to_string().contains("GREAT"), "{err}");
    let mut v = minimal();
    v["decision_makers"][0]["importance"] = json!("VVI");
    assert!(parse(&v).unwrap_err().to_string().contains("VVI"));
}

#[test]
fn duplicate_ids_are_rejected() {
    let mut v = minimal();
    v["suppliers"] = json!(["A", "A"]);
    assert!(matches!(parse(&v).unwrap_err(), Error::DuplicateId { .. }));
    let mut v = minimal();
    let extra = v["assessments"][0].clone();
    v["assessments"].as_array_mut().unwrap().push(extra);
    assert!(parse(&v).unwrap_err().to_string().contains("duplicate"));
}

#[test]
fn kind_mismatch_is_rejected() {
    let mut v = minimal();
    v["assessments"][0]["value"] = json!("G");
    assert!(matches!(parse(&v).unwrap_err(), Error::Schema { .. }));
}

#[test]
fn load_errors_carry_stage_and_path() {
    let err = load_dataset("/definitely/not/here.json").unwrap_err();
    assert_eq!(err.stage(), Some(Stage::Load));
    assert!(matches!(err.root(), Error::Io { .. }));
    assert!(err.to_string().starts_with("[stage load] /definitely/not/here.json"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"suppliers\": []}").unwrap();
    let err = load_dataset(&path).unwrap_err();
    assert_eq!(err.stage(), Some(Stage::Load));
    assert!(matches!(err.root(), Error::Schema { .. }));
}

#[test]
fn bundled_shape() {
    let ds = bundled_dataset().unwrap();
    assert_eq!(ds.shape(), (10, 8, 8));
    assert_eq!(ds.suppliers()[0], "S1");
}

#[test]
fn csv_import_replaces_assessments() {
    let ds = parse(&minimal()).unwrap();
    let csv = "supplier,criterion,dm,value\n\
               A,price,D1,20\nA,price,D2,22\nB,price,D1,10\nB,price,D2,11\n\
               A,quality,D1,EG\nA,quality,D2,EG\nB,quality,D1,VB\nB,quality,D2,B\n";
    let imported = import_assessments_csv(ds.to_file(), csv).unwrap();
    assert_eq!(imported.crisp_values(0, 0), vec![20.0, 22.0]);
    assert_ne!(imported, ds);
    assert!(import_assessments_csv(ds.to_file(), "a,b,c,d\n").is_err());
    let bad = "supplier,criterion,dm,value\nA,price,D1,cheap\n";
    assert!(import_assessments_csv(ds.to_file(), bad).unwrap_err().to_string().contains("cheap"));
}

#[test]
fn json_round_trip_reproduces_closeness() {
    let ds = bundled_dataset().unwrap();
    let back = parse_dataset(&ds.to_json()).unwrap();
    let cfg = RunConfig::default();
    let a = run_pipeline(&ds, &cfg).unwrap();
    let b = run_pipeline(&back, &cfg).unwrap();
    for m in [Method::Svns, Method::Ivfs] {
        assert_eq!(a.ranking(m).unwrap().cc(), b.ranking(m).unwrap().cc());
    }
}

#[test]
fn single_supplier_is_degenerate() {
    let mut v = minimal();
    v["suppliers"] = json!(["A"]);
    let rows: Vec<Value> =
        v["assessments"].as_array().unwrap().iter().filter(|a| a["supplier"] == "A").cloned().collect();
    v["assessments"] = Value::Array(rows);
    let ds = parse(&v).unwrap();
    for approach in [Approach::Svns, Approach::Ivfs, Approach::Both, Approach::Classical] {
        let err = run_pipeline(&ds, &RunConfig::default().with_approach(approach)).unwrap_err();
        assert_eq!(err.stage(), Some(Stage::Ranking));
        assert!(matches!(err.root(), Error::DegenerateRanking(_)));
        assert!(err.to_string().starts_with("[stage ranking]"));
    }
}

#[test]
fn reliability_switch_leaves_earlier_stages_alone() {
    let ds = bundled_dataset().unwrap();
    let on = run_pipeline(&ds, &RunConfig::default()).unwrap();
    let off = run_pipeline(&ds, &RunConfig::default().with_reliability(false)).unwrap();
    assert_eq!(on.weights, off.weights);
    for (a, b) in on.numerical.iter().zip(&off.numerical) {
        assert_eq!(a.frame, b.frame);
        assert_eq!(a.ranges, b.ranges);
        assert_eq!(a.memberships, b.memberships);
        assert_eq!(a.profile, b.profile);
        assert_eq!(b.applied_r_star, 1.0);
    }
}

#[test]
fn table_layout() {
    let ds = bundled_dataset().unwrap();
    let run = run_pipeline(&ds, &RunConfig::default()).unwrap();
    let text = render_table(&Report::from_run(&run));
    let svns = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = svns.split_whitespace().collect();
    assert_eq!(cols, ["Supplier", "d+", "d-", "cc", "Ranking", "Score"]);
    let ivfs = text.lines().skip_while(|l| *l != "IVFS approach").nth(1).unwrap();
    let cols: Vec<&str> = ivfs.split_whitespace().collect();
    assert_eq!(cols, ["Supplier", "d1+", "d2+", "d1-", "d2-", "RC1", "RC2", "RC", "Ranking", "Score"]);
    assert!(text.contains("\nReliability\n"));
    assert!(!text.contains("Sensitivity"));
    assert!(!text.contains("Association"));
}

#[test]
fn empty_sections_are_omitted_from_json() {
    let ds = bundled_dataset().unwrap();
    let run = run_pipeline(&ds, &RunConfig::default().with_approach(Approach::Classical)).unwrap();
    let v: Value = serde_json::from_str(&render_json(&Report::from_run(&run)).unwrap()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["rankings"]);
    let csv = render_ranking_csv(&Report::from_run(&run).rankings).unwrap();
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn emit_writes_files_and_reports_io_errors() {
    let ds = bundled_dataset().unwrap();
    let report = Report::from_run(&run_pipeline(&ds, &RunConfig::default()).unwrap());
    let dir = tempfile::tempdir().unwrap();
    for format in [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Table] {
        for path in emit_report(&report, dir.path(), format).unwrap() {
            assert!(fs::metadata(path).unwrap().len() > 0);
        }
    }
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let err = emit_report(&report, &blocker.join("sub"), ReportFormat::Json).unwrap_err();
    assert!(matches!(err.root(), Error::Io { .. }), "{err}");
}
