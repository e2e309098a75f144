mod common;

use common::*;
use gtspline::detect::{detect_tnets, extract_inner_nodes, SeparationStatus};
use gtspline::meshes::{bracelet, grid, lattice_mesh, net_lattice, net_mesh};
use gtspline::net::NetKind;
use gtspline::tmesh::TMesh;
use gtspline::{GtError, Point3};
use rand::seq::SliceRandom;

#[test]
fn adjacency_counts() {
    let q = grid(1, 1).unwrap();
    assert_eq!((q.boundary_edges().len(), q.interior_edge_count()), (4, 0));
    let g = grid(2, 2).unwrap();
    assert_eq!((g.faces.len(), g.vertices.len(), g.interior_edge_count()), (4, 9, 4));
    let b = bracelet(10, 4, 4).unwrap();
    assert_eq!(b.mesh.boundary_loops(), 2);
    assert_eq!(b.mesh.faces.iter().filter(|f| f.len() == 5).count(), 1);
}

#[test]
fn non_manifold_input_is_rejected() {
    let v = vec![Point3::ZERO; 7];
    // three quads on one edge
    let faces = vec![vec![0, 1, 2, 3], vec![1, 0, 4, 5], vec![0, 1, 6, 4]];
    assert!(matches!(TMesh::new(v.clone(), faces), Err(GtError::Structure(_))));
    assert!(TMesh::new(v, vec![vec![0, 1, 2]]).is_err());
}

#[test]
fn regular_grid_has_no_nets() {
    let (nets, rep) = detect_tnets(&grid(6, 6).unwrap()).unwrap();
    assert!(nets.is_empty() && rep.entries.is_empty());
}

#[test]
fn each_kind_is_found_in_canonical_position() {
    for kind in KINDS {
        let mesh = net_mesh(kind, 2, |_, _| 0.0).unwrap();
        let (nets, rep) = detect_tnets(&mesh).unwrap();
        assert!(rep.all_ok(), "{}", rep.to_text());
        assert_eq!(nets.len(), 1);
        let net = &nets[0].net;
        assert_eq!(net.kind, kind);
        for (row, refs) in net.rows.iter().zip(kind.reference_xy()) {
            for (p, (x, y)) in row.iter().zip(refs) {
                assert_eq!((p.x, p.y), (x, y));
            }
        }
        for (row, ids) in net.rows.iter().zip(&net.ids) {
            assert!(row.iter().zip(ids).all(|(p, &v)| *p == mesh.vertices[v]));
        }
    }
}

#[test]
fn detection_ignores_labels_and_rigid_motions() {
    let mut r = rng(4);
    for kind in KINDS {
        let mesh = net_mesh(kind, 1, |x, y| (0.3 * x).sin() + 0.1 * y * y).unwrap();
        let base = detect_tnets(&mesh).unwrap().0[0].net.clone();
        let mut perm: Vec<usize> = (0..mesh.vertices.len()).collect();
        perm.shuffle(&mut r);
        let mut fperm: Vec<usize> = (0..mesh.faces.len()).collect();
        fperm.shuffle(&mut r);
        let m = random_rigid(9);
        let moved = mesh.relabeled(&perm, &fperm).unwrap();
        let moved = TMesh::new(moved.vertices.iter().map(|&p| m.apply(p)).collect(), moved.faces.clone()).unwrap();
        let net = detect_tnets(&moved).unwrap().0[0].net.clone();
        assert_eq!(net.rows, base.map(|p| m.apply(p)).rows);
        if kind == NetKind::T1 {
            let a = extract_inner_nodes(&net).unwrap();
            let b = extract_inner_nodes(&base).unwrap();
            assert!(a.iter().zip(&b).all(|(p, q)| *p == m.apply(*q)));
        }
    }
}

#[test]
fn nets_at_the_boundary_or_too_close_are_reported() {
    // pentagon two rows from the top edge: the ring runs off the mesh
    let nodes: Vec<_> = net_lattice(NetKind::T1, 2).into_iter().filter(|p| p.1 <= 1).collect();
    let mesh = lattice_mesh(&nodes, |x, y| Point3::new(x as f64, y as f64, 0.0)).unwrap();
    let (nets, rep) = detect_tnets(&mesh).unwrap();
    assert!(nets.is_empty() && !rep.all_ok());
    // two pentagons side by side
    let nodes: Vec<_> = (-6..=6)
        .flat_map(|y| (-8..=8).map(move |x| (x, y)))
        .filter(|&(x, y)| y < 0 || (x != 0 && x != 3))
        .collect();
    let mesh = lattice_mesh(&nodes, |x, y| Point3::new(x as f64, y as f64, 0.0)).unwrap();
    let (nets, rep) = detect_tnets(&mesh).unwrap();
    assert!(nets.is_empty());
    assert_eq!(rep.entries.len(), 2);
    assert!(rep.entries.iter().all(|e| matches!(e.status, SeparationStatus::TooClose { .. })));
}

#[test]
fn unmatched_t_layout_is_a_classification_error() {
    let g = grid(6, 6).unwrap();
    let at = |x: f64, y: f64| g.vertices.iter().position(|p| p.x == x && p.y == y).unwrap();
    let hex = vec![at(2.0, 2.0), at(3.0, 2.0), at(4.0, 2.0), at(4.0, 3.0), at(3.0, 3.0), at(2.0, 3.0)];
    let mut faces: Vec<Vec<usize>> =
        g.faces.iter().filter(|f| !(f.contains(&hex[1]) && f.contains(&hex[4]))).cloned().collect();
    faces.push(hex);
    let mesh = TMesh::new(g.vertices.clone(), faces).unwrap();
    assert!(matches!(detect_tnets(&mesh), Err(GtError::Classification { .. })));
}

#[test]
fn bracelet_holds_one_t1_net() {
    let b = bracelet(10, 4, 4).unwrap();
    let (nets, rep) = detect_tnets(&b.mesh).unwrap();
    assert!(rep.all_ok(), "{}", rep.to_text());
    assert_eq!(nets.len(), 1);
    assert_eq!(nets[0].face, b.pentagon);
}
