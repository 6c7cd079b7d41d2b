use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cremona::io::DEFAULT_OBJ_PRECISION;
use cremona::{
    cotree_loop_basis, export_obj, fundamental_domain_lifting, lift_all_faces,
    monodromy_free_basis, monodromy_matrix, monodromy_signature, parse_stress, parse_surface,
    self_stress_basis, serialize_surface, topology_report, write_stress, FaceId, FixtureSpec,
    FormatError, FrameworkQ, LiftError, StressVectorQ, SurfaceFile,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_NOT_MONODROMY_FREE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cremona",
    version,
    about = "Polyhedral liftings of stressed frameworks on surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StressSource {
    /// File of `stress <vi> <vj> <w>` records.
    #[arg(long, conflicts_with = "basis_index")]
    stress_file: Option<PathBuf>,
    /// Use this element of the self-stress basis.
    #[arg(long)]
    basis_index: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a surface file parses and describes a valid surface.
    Validate { file: PathBuf },
    /// Print Euler characteristic, closedness, orientability and b1.
    Topology { file: PathBuf },
    /// Print a basis of the self-stress space.
    StressBasis { file: PathBuf },
    /// Print the lift around every cotree loop for one stress.
    Monodromy {
        file: PathBuf,
        #[command(flatten)]
        stress: StressSource,
    },
    /// Print a basis of the monodromy-free self-stresses.
    MonodromyFree { file: PathBuf },
    /// Lift a monodromy-free stress and write it as OBJ.
    Lift {
        file: PathBuf,
        #[arg(long)]
        base_face: String,
        #[command(flatten)]
        stress: StressSource,
        #[arg(long)]
        obj: PathBuf,
        #[arg(long, default_value_t = DEFAULT_OBJ_PRECISION)]
        precision: usize,
    },
    /// Lift any self-stress over the dual spanning tree.
    FundamentalDomain {
        file: PathBuf,
        #[arg(long)]
        base_face: String,
        #[command(flatten)]
        stress: StressSource,
        #[arg(long)]
        obj: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_OBJ_PRECISION)]
        precision: usize,
    },
    /// Write a generated fixture as a surface file.
    Fixture {
        /// One of: paper-example, fan-disk, grid-torus, grid-klein, mobius-strip, random-disk.
        name: String,
        params: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = match e {
            FormatError::Validation(_) | FormatError::Framework(_) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        let code = match e {
            LiftError::NotMonodromyFree { .. } => EXIT_NOT_MONODROMY_FREE,
            _ => EXIT_VALIDATION,
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SurfaceFile, Failure> {
    Ok(parse_surface(&read(path)?)?)
}

fn select_stress(file: &SurfaceFile, source: &StressSource) -> Result<StressVectorQ, Failure> {
    let fw = &file.framework;
    if let Some(path) = &source.stress_file {
        return Ok(parse_stress(fw, &read(path)?)?);
    }
    if let Some(k) = source.basis_index {
        let basis = self_stress_basis(fw);
        return basis.vectors.get(k).cloned().ok_or_else(|| {
            Failure::new(
                EXIT_USAGE,
                format!(
                    "basis index {k} out of range: the self-stress space has dimension {}",
                    basis.dimension()
                ),
            )
        });
    }
    file.stress
        .clone()
        .ok_or_else(|| Failure::new(EXIT_USAGE, "no stress: pass --stress-file or --basis-index"))
}

fn face(fw: &FrameworkQ, label: &str) -> Result<FaceId, Failure> {
    fw.complex()
        .face_by_label(label)
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn print_basis(fw: &FrameworkQ, vectors: &[StressVectorQ]) {
    for (k, w) in vectors.iter().enumerate() {
        println!("# basis {k}");
        print!("{}", write_stress(fw, w));
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Validate { file } => {
            let f = load(&file)?;
            let s = f.framework.complex();
            println!(
                "ok: {} vertices, {} edges, {} faces",
                s.vertex_count(),
                s.edge_count(),
                s.face_count()
            );
        }
        Command::Topology { file } => {
            let r = topology_report(load(&file)?.framework.complex());
            println!(
                "chi={} closed={} orientable={} b1={}",
                r.euler_characteristic, r.is_closed, r.is_orientable, r.betti1_rank
            );
            println!("boundary={}", r.boundary_component_count);
        }
        Command::StressBasis { file } => {
            let fw = load(&file)?.framework;
            let basis = self_stress_basis(&fw);
            println!("d={}", basis.dimension());
            print_basis(&fw, &basis.vectors);
        }
        Command::Monodromy { file, stress } => {
            let f = load(&file)?;
            let w = select_stress(&f, &stress)?;
            let fw = &f.framework;
            let s = fw.complex();
            let basis = cotree_loop_basis(s, FaceId(0))
                .map_err(|e| Failure::new(EXIT_VALIDATION, e.to_string()))?;
            let m = monodromy_matrix(fw, &basis);
            let values = m.evaluate(&w);
            for (k, (e, value)) in m.cut_edges.iter().zip(&values).enumerate() {
                let (a, b) = s.edge(*e).ends;
                println!(
                    "loop {k} cut {} {} : {value}",
                    s.vertex_label(a),
                    s.vertex_label(b)
                );
            }
            let sig = monodromy_signature(fw, &w, &basis);
            let reps: Vec<String> = sig
                .representatives
                .iter()
                .map(|(l, _)| l.to_string())
                .collect();
            println!(
                "homology loops: {} trivial={} image-rank={}",
                reps.join(" "),
                sig.trivial_count(),
                sig.image_rank
            );
            if let Some(g) = &sig.lattice_generator {
                println!("lattice: {g}");
            }
            let free = values.iter().all(|v| v.is_zero());
            println!("monodromy-free: {}", if free { "yes" } else { "no" });
        }
        Command::MonodromyFree { file } => {
            let fw = load(&file)?.framework;
            let d = self_stress_basis(&fw).dimension();
            let b1 = topology_report(fw.complex()).betti1_rank;
            let free = monodromy_free_basis(&fw);
            let dim = free.dimension();
            let bound = d as i64 - 3 * b1 as i64;
            println!("dim={dim}");
            println!(
                "bound: dim >= d - 3*b1 : {dim} >= {d} - 3*{b1} = {bound} : {}",
                if dim as i64 >= bound {
                    "holds"
                } else {
                    "fails"
                }
            );
            print_basis(&fw, &free.vectors);
        }
        Command::Lift {
            file,
            base_face,
            stress,
            obj,
            precision,
        } => {
            let f = load(&file)?;
            let w = select_stress(&f, &stress)?;
            let fw = &f.framework;
            let lifting = lift_all_faces(fw, &w, face(fw, &base_face)?)?;
            write(&obj, &export_obj(fw, &lifting, precision)?)?;
            println!("wrote {}", obj.display());
        }
        Command::FundamentalDomain {
            file,
            base_face,
            stress,
            obj,
            precision,
        } => {
            let f = load(&file)?;
            let w = select_stress(&f, &stress)?;
            let fw = &f.framework;
            let s = fw.complex();
            let d = fundamental_domain_lifting(fw, &w, face(fw, &base_face)?)?;
            for g in s.face_ids() {
                println!("face {} : {}", s.face_label(g), d.lifting.height(g));
            }
            for (e, m) in &d.monodromy_generators {
                let (a, b) = s.edge(*e).ends;
                println!(
                    "generator {} {} : {m}",
                    s.vertex_label(a),
                    s.vertex_label(b)
                );
            }
            println!(
                "single-valued: {}",
                if d.is_single_valued() { "yes" } else { "no" }
            );
            if let Some(path) = obj {
                write(&path, &export_obj(fw, &d.lifting, precision)?)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Fixture { name, params, out } => {
            let spec = FixtureSpec::new(name, params);
            let framework = spec
                .build()
                .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let file = SurfaceFile {
                name: spec.to_string().replace(' ', "-"),
                framework,
                stress: None,
            };
            write(&out, &serialize_surface(&file))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
