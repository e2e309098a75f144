//! Build the bi-3 frame and bi-4 cap of each T-net kind from a curved height
//! field and report the measured continuity between every pair of pieces.
//!
//! `cargo run --example frame_and_cap -- out_dir` also writes one OBJ
//! triangulation per kind.

use gtspline::audit::{audit_surface, Tolerances, DEFAULT_SAMPLES};
use gtspline::meshes::net_mesh;
use gtspline::net::{NetKind, TNet};
use gtspline::surface::{build_net, build_surface};
use gtspline::tessellate::tessellate;
use gtspline::Point3;

fn height(x: f64, y: f64) -> f64 {
    0.3 * (0.6 * x).sin() + 0.2 * (0.5 * y).cos() + 0.02 * x * y
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1);
    for kind in [NetKind::T1, NetKind::T2, NetKind::T3] {
        let net = TNet::from_fn(kind, |x, y| Point3::new(x, y, height(x, y)));
        let (frame, cap) = build_net(&net)?;
        println!("{}: {} nodes, frame {} patches, cap {} patches", kind.name(), kind.node_count(), frame.patches.len(), cap.patches.len());
        for (slot, p) in &frame.patches {
            print!(" {slot}:{}x{}", p.deg_u(), p.deg_v());
        }
        println!();
        for j in frame.hv_curves() {
            println!("  hv curve {}|{} C1 beta {}", j.a, j.b, j.continuity.beta());
        }

        // the same net inside a larger mesh, audited join by join
        let mesh = net_mesh(kind, 3, height)?;
        let s = build_surface(&mesh)?;
        let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
        for class in ["C2", "C1", "G1"] {
            println!("  worst {class} residual {:.1e}", rep.worst(class));
        }
        println!("  audit {}", if rep.all_pass() { "pass" } else { "FAIL" });
        if let Some(dir) = &out {
            let t = tessellate(&s, 9)?;
            let path = std::path::Path::new(dir).join(format!("{}.obj", kind.name().to_lowercase()));
            std::fs::write(&path, t.to_obj())?;
            println!("  wrote {}", path.display());
        }
    }
    Ok(())
}
