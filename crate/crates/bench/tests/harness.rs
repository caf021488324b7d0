use std::path::PathBuf;

use obtea_bench::{ablate_depth, run_cafe_suite, run_comparison, GenParams, MethodName};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

#[test]
fn obtea_never_costs_more_than_the_baseline() {
    let cases = vec![
        ("small".to_string(), GenParams::small()),
        ("case0".to_string(), GenParams::case(0).unwrap()),
        ("case3".to_string(), GenParams::case(3).unwrap()),
    ];
    let r = run_comparison(&cases, 10, 4).unwrap();
    assert_eq!(r.rows.len(), 3 * 10 * 3);
    assert!(
        r.rows.iter().all(|x| x.ok()),
        "{:?}",
        r.rows.iter().find(|x| !x.ok())
    );
    for chunk in r.rows.chunks(3) {
        let [b, o, nc] = chunk else { unreachable!() };
        assert_eq!(
            (b.method, o.method, nc.method),
            (MethodName::Baseline, MethodName::Obtea, MethodName::ObteaNc)
        );
        assert!(o.total_cost <= b.total_cost);
        assert_eq!(o.total_cost, nc.total_cost);
        assert_eq!(o.total_cost, o.planned_cost);
    }
    for (name, _) in &cases {
        let o = r.summary_for(name, MethodName::Obtea).unwrap();
        let nc = r.summary_for(name, MethodName::ObteaNc).unwrap();
        assert!(o.condition_ticks <= nc.condition_ticks);
    }
}

#[test]
fn json_report_echoes_the_configuration() {
    let r = run_comparison(&[("case0".into(), GenParams::case(0).unwrap())], 2, 3).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["compaction_depth"], 3);
    assert_eq!(v["cases"][0]["params"]["num_objects"], 100);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["summary"][1]["method"], "obtea");
}

#[test]
fn ablation_curve_starts_at_no_compaction() {
    let p = GenParams::case(0).unwrap();
    let curve = ablate_depth(&p, 8, &[0, 1, 2, 3, 4, 8]).unwrap();
    assert_eq!(curve.mean.len(), 6);
    assert!(curve.mean[5] <= curve.mean[0]);
    let r = run_comparison(&[("case0".into(), p)], 8, 4).unwrap();
    let nc = r.summary_for("case0", MethodName::ObteaNc).unwrap();
    assert!((nc.condition_ticks - curve.mean[0]).abs() < 1e-9);
    let o = r.summary_for("case0", MethodName::Obtea).unwrap();
    assert!((o.condition_ticks - curve.mean[4]).abs() < 1e-9);
}

#[test]
fn cafe_suite_plans_every_goal() {
    let r = run_cafe_suite(data("cafe_goals.jsonl"), data("cafe.domain"), 4).unwrap();
    assert_eq!(r.rows.len(), 200);
    assert!(
        r.rows.iter().all(|x| x.status == "ok"),
        "{:?}",
        r.rows.iter().find(|x| x.status != "ok")
    );
    for pair in r.rows.chunks(2) {
        assert_eq!(pair[0].index, pair[1].index);
        assert!(pair[1].total_cost <= pair[0].total_cost, "{}", pair[0].goal);
    }
    let goals: usize = r.summary.iter().map(|s| s.goals).sum();
    assert_eq!(goals, 100);
    for s in &r.summary {
        assert!(s.obtea_cost <= s.baseline_cost);
    }
}
