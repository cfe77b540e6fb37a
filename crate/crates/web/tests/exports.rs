use std::f64::consts::PI;

use abphase_web::{finite_cage_scan_json, obstruction_json, phase_curve_json, surface_slices_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn fig2a_curve_is_flat_in_final_flux() {
    let v = parse(&phase_curve_json("fig2a", 1.25, 2.0 * PI, 8, 2).unwrap());
    assert_eq!(v["strategy"], "through_wire");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 9);
    for p in pts {
        assert!((p["eq3"].as_f64().unwrap() - 1.25).abs() < 1e-9);
        if let Some(eq1) = p["eq1"].as_f64() {
            assert!((eq1 - 1.25).abs() < 1e-9);
        }
    }
    assert!(pts.iter().filter(|p| p["eq1"].is_f64()).count() >= 5);
}

#[test]
fn surface_slices_start_and_end_at_beam_splitters() {
    let v = parse(&surface_slices_json("fig1", "left", 1.0, 3.0, 0, 12).unwrap());
    let slices = v["slices"].as_array().unwrap();
    assert_eq!(slices.len(), 13);
    let first = slices[0]["curve"].as_array().unwrap();
    let xy = |p: &Value| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
    let (x0, y0) = xy(&first[0]);
    assert!(first.iter().all(|p| {
        let (x, y) = xy(p);
        (x - x0).hypot(y - y0) < 1e-9
    }));
    assert!((v["total"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(v["meets_b"], true);
    assert_eq!(v["meets_e"], true);
}

#[test]
fn inapplicable_surface_reports_status() {
    let v = parse(&surface_slices_json("fig2a", "right", 1.0, 3.0, 0, 4).unwrap());
    assert!(v["total"].is_null());
    assert_ne!(v["status"], "ok");
}

#[test]
fn cage_scan_ratio_tracks_angle() {
    let v = parse(&finite_cage_scan_json(0.0, 2.0 * PI, 0.1, 2).unwrap());
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 2);
    for p in pts {
        let want = p["delta_theta_over_pi"].as_f64().unwrap();
        assert!((p["ratio"].as_f64().unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn bad_names_are_errors() {
    assert!(phase_curve_json("fig9", 0.0, 1.0, 4, 1).is_err());
    assert!(surface_slices_json("fig1", "diagonal", 0.0, 1.0, 0, 4).is_err());
    assert!(obstruction_json("custom", 0.0, 1.0, 0).is_err());
}

#[test]
fn obstruction_for_fig3() {
    let v = parse(&obstruction_json("fig3", 1.0, 2.0, 2).unwrap());
    assert_eq!(v["deformation_obstructed"], true);
}
