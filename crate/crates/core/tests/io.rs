mod common;

use common::*;
use gtspline::io::{mesh_to_json, mesh_to_obj, parse_obj, parse_tmesh_json, surface_from_text, surface_to_text};
use gtspline::meshes::{bracelet, net_mesh};
use gtspline::surface::build_surface;
use gtspline::GtError;

#[test]
fn obj_and_json_give_the_same_mesh() {
    for kind in KINDS {
        let m = net_mesh(kind, 1, |x, y| 0.1 * x * y).unwrap();
        let a = parse_obj(&mesh_to_obj(&m)).unwrap();
        let b = parse_tmesh_json(&mesh_to_json(&m).unwrap()).unwrap();
        assert_eq!((&a.vertices, &a.faces), (&m.vertices, &m.faces));
        assert_eq!((&b.vertices, &b.faces), (&m.vertices, &m.faces));
    }
}

#[test]
fn obj_errors_carry_line_numbers() {
    let text = "v 0 0 0\nv 1 0 0\nv 1 1 0\n# comment\nf 1 2 3\n";
    assert!(matches!(parse_obj(text), Err(GtError::Parse { line: 5, .. })));
    assert!(matches!(parse_obj("v 0 0\n"), Err(GtError::Parse { line: 1, .. })));
    assert!(matches!(parse_obj("v 0 0 0\nf 1 2 3 9\n"), Err(GtError::Parse { line: 2, .. })));
}

#[test]
fn json_t_junction_annotations_are_checked() {
    let m = net_mesh(gtspline::net::NetKind::T1, 1, |_, _| 0.0).unwrap();
    let text = mesh_to_json(&m).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["t_junctions"].as_array().unwrap().len(), 1);
    let mut bad = v.clone();
    bad["t_junctions"] = serde_json::json!([]);
    assert!(matches!(parse_tmesh_json(&bad.to_string()), Err(GtError::Integrity(_))));
    assert!(matches!(parse_tmesh_json("{\n\"format\": 3"), Err(GtError::Parse { line: 2, .. })));
}

#[test]
fn surface_text_round_trip_is_exact() {
    let meshes = [
        net_mesh(gtspline::net::NetKind::T3, 2, |x, y| (0.37 * x).sin() * (0.21 * y).cos()).unwrap(),
        bracelet(10, 4, 4).unwrap().mesh,
    ];
    for m in meshes {
        let s = build_surface(&m).unwrap();
        let text = surface_to_text(&s);
        let back = surface_from_text(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(surface_to_text(&back), text);
    }
}

#[test]
fn truncated_surface_file_is_a_parse_error() {
    let s = build_surface(&net_mesh(gtspline::net::NetKind::T1, 2, |_, _| 0.0).unwrap()).unwrap();
    let text = surface_to_text(&s);
    let cut: String = text.lines().take(40).map(|l| format!("{l}\n")).collect();
    assert!(matches!(surface_from_text(&cut), Err(GtError::Parse { line: 41, .. })));
}
