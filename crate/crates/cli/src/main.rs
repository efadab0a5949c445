use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ghostw::checks::{default_max_degree, run_checks, CheckError, RunConfig};
use ghostw::formats;
use ghostw::report::Report;
use ghostw_core::centers::{
    casimir, casimir_even, compute_anticenter, compute_center, GhostCenter,
};
use ghostw_core::hc::eta;
use ghostw_core::osp::Algebra;
use ghostw_core::whittaker::finite_w_basis;

#[derive(Parser)]
#[command(
    name = "ghostw",
    version,
    about = "Exact engine for the osp(1|2n) ghost center and its principal finite W-algebra"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Rank n of osp(1|2n)
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Degree budget for the filtered solves; defaults to max(4, 2n+1)
    #[arg(long)]
    max_degree: Option<usize>,
    /// Write the JSON document to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the sampled property checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the JSON document instead of the human summary
    #[arg(long)]
    json: bool,
}

impl Common {
    fn degree(&self) -> usize {
        self.max_degree.unwrap_or_else(|| default_max_degree(self.n))
    }

    fn config(&self) -> RunConfig {
        RunConfig {
            n: self.n,
            max_degree: self.degree(),
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build osp(1|2n) and emit its tables
    Build(Common),
    /// Compute a named artifact
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Run verification suites and emit a report
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum ComputeCmd {
    /// Basis of the center Z(g) up to the degree budget
    Center(Common),
    /// Basis of the anticenter up to the degree budget
    Anticenter(Common),
    /// The Casimir ghost T and its Harish-Chandra image
    Ghost(Common),
    /// The Casimir C and the even-subalgebra Casimir Q
    Casimir(Common),
    /// Invariant basis of the finite W-algebra in the Whittaker model
    FiniteW(Common),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Structure suite: super Jacobi, form invariance, good grading
    Grading(Common),
    /// PBW engine suite: canonical forms, associativity, filtration
    Pbw(Common),
    /// Harish-Chandra suite: W-invariance, injectivity, surjectivity, linkage
    Hc(Common),
    /// Pinczon identity suite (n = 1)
    Pinczon(Common),
    /// Theorem A suite: ghost center vs finite W-algebra
    TheoremA(Common),
    /// Module classification suite: top spaces vs the degenerate locus
    Modules(Common),
    /// Everything applicable, in dependency order
    All(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CheckError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_algebra(common: &Common) -> Result<Algebra, CheckError> {
    Algebra::build(common.n).map_err(|e| CheckError::Usage(e.to_string()))
}

fn emit(common: &Common, doc: &Value, summary: &str) -> Result<(), CheckError> {
    let rendered = {
        let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
        s.push('\n');
        s
    };
    if let Some(path) = &common.out {
        std::fs::write(path, &rendered)
            .map_err(|e| CheckError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if common.json {
        print!("{rendered}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CheckError> {
    match cli.cmd {
        Cmd::Build(common) => {
            let alg = build_algebra(&common)?;
            let doc = formats::algebra_json(&alg);
            let summary = format!(
                "osp(1|2{}) built: dimension {}, {} positive roots, f_prin on {} root vectors\n",
                2 * common.n,
                alg.dim(),
                alg.positive_roots().len(),
                alg.principal_nilpotent().coords().len()
            );
            emit(&common, &doc, &summary)?;
            Ok(true)
        }
        Cmd::Compute { what } => {
            run_compute(what)?;
            Ok(true)
        }
        Cmd::Verify { what } => run_verify(what),
    }
}

fn run_compute(what: ComputeCmd) -> Result<(), CheckError> {
    match what {
        ComputeCmd::Center(common) => {
            let alg = build_algebra(&common)?;
            let basis = compute_center(&alg, common.degree());
            let doc = formats::basis_json("center", common.n, basis.degree, &basis.elements);
            let mut summary = format!(
                "center of U(osp(1|2{})) up to degree {}: dimension {}\n",
                2 * common.n,
                basis.degree,
                basis.dim()
            );
            for z in &basis.elements {
                summary.push_str(&format!("  {}\n", z.display(&alg)));
            }
            emit(&common, &doc, &summary)
        }
        ComputeCmd::Anticenter(common) => {
            let alg = build_algebra(&common)?;
            let basis = compute_anticenter(&alg, common.degree());
            let doc = formats::basis_json("anticenter", common.n, basis.degree, &basis.elements);
            let mut summary = format!(
                "anticenter of U(osp(1|2{})) up to degree {}: dimension {}\n",
                2 * common.n,
                basis.degree,
                basis.dim()
            );
            for a in &basis.elements {
                summary.push_str(&format!("  {}\n", a.display(&alg)));
            }
            emit(&common, &doc, &summary)
        }
        ComputeCmd::Ghost(common) => {
            let alg = build_algebra(&common)?;
            let degree = common.degree().max(2 * common.n);
            let ghost = GhostCenter::compute(&alg, degree)
                .map_err(|e| CheckError::Usage(e.to_string()))?;
            let image = ghostw_core::centers::hc_image(&alg, &ghost.t);
            let doc = json!({
                "schema": "ghostw-elements/1",
                "kind": "casimir-ghost",
                "n": common.n,
                "degree": degree,
                "t": formats::uea_json(&ghost.t),
                "sigma_eta_t": formats::hc_poly_json(&image),
            });
            let summary = format!(
                "T = {}\n(sigma∘eta)(T) = {}\n",
                ghost.t.display(&alg),
                image.display()
            );
            emit(&common, &doc, &summary)
        }
        ComputeCmd::Casimir(common) => {
            let alg = build_algebra(&common)?;
            let c = casimir(&alg);
            let q = casimir_even(&alg);
            let doc = json!({
                "schema": "ghostw-elements/1",
                "kind": "casimir",
                "n": common.n,
                "casimir": formats::uea_json(&c),
                "casimir_even": formats::uea_json(&q),
                "eta_casimir": formats::hc_poly_json(&eta(&alg, &c)),
                "eta_casimir_even": formats::hc_poly_json(&eta(&alg, &q)),
            });
            let summary = format!(
                "C = {}\nQ = {}\neta(C) = {}\n",
                c.display(&alg),
                q.display(&alg),
                eta(&alg, &c).display()
            );
            emit(&common, &doc, &summary)
        }
        ComputeCmd::FiniteW(common) => {
            let alg = build_algebra(&common)?;
            let basis = finite_w_basis(&alg, common.degree());
            let doc =
                formats::whittaker_basis_json("finite-w", common.n, common.degree(), &basis);
            let mut summary = format!(
                "finite W-algebra invariants up to degree {}: dimension {}\n",
                common.degree(),
                basis.len()
            );
            for v in &basis {
                summary.push_str(&format!("  {}\n", v.display(&alg)));
            }
            emit(&common, &doc, &summary)
        }
    }
}

fn run_verify(what: VerifyCmd) -> Result<bool, CheckError> {
    let (target, common) = match what {
        VerifyCmd::Grading(c) => ("grading", c),
        VerifyCmd::Pbw(c) => ("pbw", c),
        VerifyCmd::Hc(c) => ("hc", c),
        VerifyCmd::Pinczon(c) => {
            if c.n != 1 {
                return Err(CheckError::Usage(
                    "the pinczon suite is defined for n = 1 only".into(),
                ));
            }
            ("pinczon", c)
        }
        VerifyCmd::TheoremA(c) => ("theorem-a", c),
        VerifyCmd::Modules(c) => ("modules", c),
        VerifyCmd::All(c) => ("all", c),
    };
    let names: Vec<String> = if target == "all" {
        ghostw::checks::CHECK_NAMES
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        vec![target.to_string()]
    };
    let cfg = common.config();
    let groups = run_checks(&names, &cfg)?;
    let report = Report::new(
        format!("verify {target}"),
        cfg.n,
        cfg.max_degree,
        cfg.seed,
        groups,
    );
    let passed = report.passed;
    let rendered = report.to_json_string();
    if let Some(path) = &common.out {
        std::fs::write(path, &rendered)
            .map_err(|e| CheckError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if common.json {
        print!("{rendered}");
    } else {
        print!("{}", report.summary());
    }
    Ok(passed)
}
