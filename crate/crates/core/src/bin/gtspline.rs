use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gtspline::audit::{audit_surface, Tolerances, DEFAULT_SAMPLES};
use gtspline::detect::detect_tnets;
use gtspline::io::{load_mesh, surface_from_text, surface_to_text};
use gtspline::isophote::{isophote_breaks, isophotes, isophotes_to_obj};
use gtspline::knots::{build_interval_system, report_text, solve_intervals, Feasibility};
use gtspline::stencil::{derive_stencils, rational};
use gtspline::surface::{build_surface_report, GTSurface};
use gtspline::tessellate::tessellate;
use gtspline::{GtError, Point3};

#[derive(Parser)]
#[command(name = "gtspline", version, about = "GT-spline surfaces over quad meshes with T-junctions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Detect nets and report their separation.
    Analyze { mesh: PathBuf },
    /// Build the surface and write its patches.
    Build {
        mesh: PathBuf,
        #[arg(short, long, required_unless_present = "report_only")]
        output: Option<PathBuf>,
        /// Only print the separation report.
        #[arg(long)]
        report_only: bool,
    },
    /// Audit every join of a patch file.
    Verify {
        patches: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Triangulate a patch file into OBJ.
    Tessellate {
        patches: PathBuf,
        #[arg(short = 'n', long, default_value_t = 8)]
        samples: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Isophote polylines of a patch file, as OBJ.
    Isophotes {
        patches: PathBuf,
        /// Direction x,y,z.
        #[arg(short, long, value_delimiter = ',', allow_negative_numbers = true)]
        direction: Vec<f64>,
        #[arg(short, long, value_delimiter = ',', default_value = "0.2,0.4,0.6,0.8", allow_negative_numbers = true)]
        levels: Vec<f64>,
        #[arg(short, long, default_value_t = 16)]
        sampling: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Knot-interval feasibility of a mesh.
    KnotCheck { mesh: PathBuf },
    /// Derive the T1 cap stencils.
    Stencils {
        #[arg(long, conflicts_with = "export", required_unless_present = "export")]
        derive: bool,
        /// Write the stencil table in its text format.
        #[arg(long)]
        export: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit 1: a check failed. Exit 2: bad input.
enum Fail {
    Check(String),
    Input(GtError),
}

impl From<GtError> for Fail {
    fn from(e: GtError) -> Self {
        Fail::Input(e)
    }
}

fn read_surface(path: &Path) -> Result<GTSurface, GtError> {
    surface_from_text(&std::fs::read_to_string(path)?)
}

fn write(path: &Path, text: &str) -> Result<(), GtError> {
    Ok(std::fs::write(path, text)?)
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Analyze { mesh } => {
            let m = load_mesh(&mesh)?;
            let (nets, rep) = detect_tnets(&m)?;
            println!("vertices {} faces {} nets {}", m.vertices.len(), m.faces.len(), nets.len());
            for n in &nets {
                println!("net face {} kind {}", n.face, n.net.kind.name());
            }
            print!("{}", rep.to_text());
            if !rep.all_ok() {
                return Err(Fail::Check("nets too close to each other or to the boundary".into()));
            }
        }
        Cmd::Build { mesh, output, report_only } => {
            let m = load_mesh(&mesh)?;
            let (s, rep) = build_surface_report(&m)?;
            if report_only || !rep.all_ok() {
                print!("{}", rep.to_text());
            }
            if !rep.all_ok() {
                return Err(Fail::Check("refusing to build: separation failure".into()));
            }
            if let Some(out) = output.filter(|_| !report_only) {
                write(&out, &surface_to_text(&s))?;
                println!("patches {} joins {} uncovered faces {}", s.patches.len(), s.joins.len(), s.uncovered.len());
            }
        }
        Cmd::Verify { patches, samples } => {
            let s = read_surface(&patches)?;
            let rep = audit_surface(&s, &Tolerances::default(), samples);
            print!("{}", rep.to_text());
            if !rep.all_pass() {
                return Err(Fail::Check("continuity audit failed".into()));
            }
        }
        Cmd::Tessellate { patches, samples, output } => {
            let t = tessellate(&read_surface(&patches)?, samples)?;
            write(&output, &t.to_obj())?;
            println!("vertices {} triangles {}", t.positions.len(), t.triangles.len());
        }
        Cmd::Isophotes { patches, direction, levels, sampling, output } => {
            let [x, y, z] = direction[..] else {
                return Err(GtError::Domain("direction needs three components x,y,z".into()).into());
            };
            let s = read_surface(&patches)?;
            let d = Point3::new(x, y, z);
            let curves = isophotes(&s, d, &levels, sampling)?;
            write(&output, &isophotes_to_obj(&curves))?;
            let breaks = isophote_breaks(&s, &curves, sampling);
            println!("polylines {} breaks {}", curves.len(), breaks.len());
            for (p, at) in &breaks {
                println!("break {} at {:?} {:?} {:?}", s.patches[*p].name, at.x, at.y, at.z);
            }
            if !breaks.is_empty() {
                return Err(Fail::Check("isophotes break across a join".into()));
            }
        }
        Cmd::KnotCheck { mesh } => {
            let m = load_mesh(&mesh)?;
            let sys = build_interval_system(&m);
            let res = solve_intervals(&sys)?;
            print!("{}", report_text(&sys, &res));
            if let Feasibility::Infeasible { .. } = res {
                return Err(Fail::Check("no positive knot intervals exist".into()));
            }
        }
        Cmd::Stencils { derive, export: _, output } => {
            let set = derive_stencils()?;
            let text = if derive {
                let mut t = String::new();
                for j in 0..5 {
                    for i in 0..5 {
                        t += &format!("stencil ({i},{j}):\n");
                        for row in set.layout(i, j) {
                            let cells: Vec<String> = row.iter().map(|w| format!("{:>8}", rational(*w))).collect();
                            t += &format!("  [{}]\n", cells.join(""));
                        }
                    }
                }
                t
            } else {
                set.export()
            };
            match output {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
