//! Mesh file to audited surface: build, audit every join, round-trip the
//! patch file, triangulate and trace isophotes.
//!
//! `cargo run --example surface_pipeline -- golden/meshes/t1_t3.obj out_dir`

use std::path::PathBuf;

use gtspline::audit::{audit_surface, Tolerances, DEFAULT_SAMPLES};
use gtspline::io::{load_mesh, surface_from_text, surface_to_text};
use gtspline::isophote::{isophote_breaks, isophotes, isophotes_to_obj};
use gtspline::surface::build_surface_report;
use gtspline::tessellate::tessellate;
use gtspline::Point3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mesh_path = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("golden/meshes/t1.json"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let mesh = load_mesh(&mesh_path)?;
    let (s, sep) = build_surface_report(&mesh)?;
    print!("{}", sep.to_text());
    println!("{} faces -> {} patches, {} joins, {} uncovered", mesh.faces.len(), s.patches.len(), s.joins.len(), s.uncovered.len());

    let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
    println!("audit: {} edges, {} failures", rep.records.len(), rep.failures().count());

    let text = surface_to_text(&s);
    let back = surface_from_text(&text)?;
    println!("patch file round trip identical: {}", surface_to_text(&back) == text);

    let t = tessellate(&s, 8)?;
    std::fs::write(out.join("surface.obj"), t.to_obj())?;
    println!("tessellation: {} vertices, {} triangles, {} boundary edges", t.positions.len(), t.triangles.len(), t.boundary_edges().len());

    let curves = isophotes(&s, Point3::new(0.2, -0.3, 1.0), &[0.9, 0.95, 0.98], 16)?;
    std::fs::write(out.join("isophotes.obj"), isophotes_to_obj(&curves))?;
    println!("isophotes: {} polylines, {} breaks across joins", curves.len(), isophote_breaks(&s, &curves, 16).len());
    println!("wrote {}", out.display());
    Ok(())
}
