// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 fail (certification, convergence or error law),
//! 2 usage or file error, 3 numerical guard.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use udesign_core::designs::{
    cardinality_diagnostic, certify, gamma, GalleryEntry, WeightedUnitarySet, ATOL_CERT, GALLERY_NAMES,
};
use udesign_core::povm::{canonical_dual, delta_tau, delta_tau_bound, povm_from_design, tight_check};
use udesign_core::qops::ChannelClass;
use udesign_core::rng::Stream;
use udesign_core::search::{SearchConfig, WeightMode};
use udesign_core::tomography::{channel_gallery, ChannelSpec, Experiment};

use crate::error::{CliError, CliResult, ExitStatus};
use crate::format::{design_json, fmt_f64, read_design, search_log, to_json_string, write_text};
use crate::{parallel, report};

/// `|z|` above which the simulated error is reported as inconsistent with
/// the predicted error law.
pub const Z_LIMIT: f64 = 5.0;

#[derive(Debug, Parser)]
#[command(
    name = "udesign",
    version,
    about = "Weighted unitary designs and ancilla-assisted process tomography"
)]
pub struct Cli {
    /// Worker threads for search restarts and tomography trials. Results do
    /// not depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify, export or search for weighted unitary designs.
    #[command(subcommand)]
    Design(DesignCommand),
    /// Simulate process tomography with the POVM induced by a design.
    Tomo(TomoArgs),
    /// Print γ(t, d), the Haar average of |tr U|^{2t}.
    Gamma(GammaArgs),
}

#[derive(Debug, Subcommand)]
pub enum DesignCommand {
    /// Check the frame-potential criterion for a design file.
    Verify(VerifyArgs),
    /// Write a design from the built-in gallery.
    Gallery(GalleryArgs),
    /// Search numerically for a weighted t-design.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Design strength to check; defaults to the file's `certified_t`.
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long, default_value_t = ATOL_CERT)]
    pub tol: f64,
    /// Write the certificate as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(GALLERY_NAMES))]
    pub name: String,
    /// Number of elements (utof only; defaults to d²).
    #[arg(long)]
    pub n: Option<usize>,
    /// Local dimension (utof only).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub t: u32,
    #[arg(long, env = "UDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = ATOL_CERT)]
    pub target_gap: f64,
    #[arg(long, default_value = "free", value_parser = ["free", "uniform", "per-basis"])]
    pub weights: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Search log (JSON lines of `{iteration, gap}`); defaults to the
    /// output path with extension `log.jsonl`.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    /// Design file, or the name of a gallery design.
    #[arg(long)]
    pub design: String,
    /// Channel as `name` or `name:param`: identity, random_unitary,
    /// fixed_unitary:GATE (I, X, Y, Z, H, S), random_unital_mix:K,
    /// depolarizing:P, random_general:K.
    #[arg(long)]
    pub channel: String,
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, env = "UDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Reconstruction class; defaults to uc for unital channels, gc otherwise.
    #[arg(long, value_parser = ["uc", "gc", "full"])]
    pub class: Option<String>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub dim: usize,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::Usage.code()
            } else {
                ExitStatus::Pass.code()
            };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status().code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<ExitStatus> {
    match &cli.command {
        Command::Design(DesignCommand::Verify(a)) => verify(a, out),
        Command::Design(DesignCommand::Gallery(a)) => gallery(a, out),
        Command::Design(DesignCommand::Search(a)) => search(a, cli.threads, out),
        Command::Tomo(a) => tomo(a, cli.threads, out),
        Command::Gamma(a) => {
            let g = gamma(a.t, a.dim)?;
            say(out, format_args!("{g}"))?;
            Ok(ExitStatus::Pass)
        }
    }
}

fn say(out: &mut dyn Write, args: std::fmt::Arguments<'_>) -> CliResult<()> {
    writeln!(out, "{args}").map_err(|e| CliError::io("<stdout>", e))
}

#[derive(serde::Serialize)]
struct CertificateRecord<'a> {
    file: &'a str,
    dim: usize,
    size: usize,
    t: u32,
    potential: f64,
    gamma: f64,
    gap: f64,
    moment_residual: Option<f64>,
    atol_cert: f64,
    pass: bool,
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let loaded = read_design(&a.file)?;
    let t =
        a.t.or(loaded.certified_t)
            .ok_or_else(|| CliError::Usage("--t is required when the file has no certified_t".into()))?;
    let set = &loaded.set;
    let cert = certify(set, t, a.tol)?;
    say(
        out,
        format_args!(
            "design     {} ({} elements, d = {})",
            a.file.display(),
            set.len(),
            set.dim()
        ),
    )?;
    say(out, format_args!("t          {t}"))?;
    say(out, format_args!("potential  {}", fmt_f64(cert.potential)))?;
    say(out, format_args!("gamma      {}", cert.gamma))?;
    say(out, format_args!("gap        {:.3e}", cert.gap))?;
    match cert.moment_residual {
        Some(r) => say(out, format_args!("moment     {r:.3e}"))?,
        None => say(out, format_args!("moment     not computed for t > 2"))?,
    }
    if t == 2 {
        let c = cardinality_diagnostic(set);
        say(
            out,
            format_args!(
                "size       {} (lower bound {}, equiangular defect {:.3e})",
                c.size, c.bound, c.equiangular_defect
            ),
        )?;
    }
    say(
        out,
        format_args!("result     {}", if cert.pass { "PASS" } else { "FAIL" }),
    )?;
    if let Some(path) = &a.json {
        let file = a.file.display().to_string();
        let rec = CertificateRecord {
            file: &file,
            dim: set.dim(),
            size: set.len(),
            t,
            potential: cert.potential,
            gamma: cert.gamma,
            gap: cert.gap,
            moment_residual: cert.moment_residual,
            atol_cert: cert.atol_cert,
            pass: cert.pass,
        };
        write_text(path, &(to_json_string(&rec) + "\n"))?;
    }
    Ok(if cert.pass { ExitStatus::Pass } else { ExitStatus::Fail })
}

fn gallery(a: &GalleryArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let entry = GalleryEntry::parse(&a.name, a.n, a.dim)?;
    let set = entry.build()?;
    let t = entry.design_strength();
    let cert = certify(&set, t, ATOL_CERT)?;
    write_text(&a.out, &design_json(&set, cert.pass.then_some(t)))?;
    say(
        out,
        format_args!(
            "{}: {} elements, d = {}, t = {t}, gap {:.3e} -> {}",
            entry.name(),
            set.len(),
            set.dim(),
            cert.gap,
            a.out.display()
        ),
    )?;
    Ok(if cert.pass { ExitStatus::Pass } else { ExitStatus::Fail })
}

fn default_log_path(out: &Path) -> PathBuf {
    out.with_extension("log.jsonl")
}

fn search(a: &SearchArgs, threads: usize, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let config = SearchConfig {
        dim: a.dim,
        size: a.size,
        t: a.t,
        max_iterations: a.max_iter,
        restarts: a.restarts,
        seed: a.seed,
        target_gap: a.target_gap,
        weight_mode: a.weights.parse::<WeightMode>()?,
    };
    let trace = parallel::search(&config, threads)?;
    let certified = trace.converged.then_some(a.t);
    write_text(&a.out, &design_json(&trace.set, certified))?;
    let log = a.log.clone().unwrap_or_else(|| default_log_path(&a.out));
    write_text(&log, &search_log(&trace.best_gaps))?;
    say(
        out,
        format_args!(
            "d = {}, n = {} ({} after merging), t = {}, weights {}, seed {}",
            a.dim,
            a.size,
            trace.set.len(),
            a.t,
            config.weight_mode.as_str(),
            a.seed
        ),
    )?;
    say(
        out,
        format_args!(
            "gap {:.3e} (target {:.1e}) from restart {} of {} run",
            trace.gap,
            a.target_gap,
            trace.restart.map_or_else(|| "-".into(), |r| r.to_string()),
            trace.restarts_run
        ),
    )?;
    if let Some(s) = trace.wall_clock_seconds {
        say(out, format_args!("wall clock {s:.2} s"))?;
    }
    say(
        out,
        format_args!(
            "{} -> {} (log {})",
            if trace.converged { "converged" } else { "not converged" },
            a.out.display(),
            log.display()
        ),
    )?;
    Ok(if trace.converged {
        ExitStatus::Pass
    } else {
        ExitStatus::Fail
    })
}

fn load_design_arg(spec: &str) -> CliResult<WeightedUnitarySet> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(read_design(path)?.set);
    }
    if GALLERY_NAMES.contains(&spec) {
        return Ok(GalleryEntry::parse(spec, None, None)?.build()?);
    }
    Err(CliError::Usage(format!(
        "--design `{spec}` is neither a file nor a gallery name ({})",
        GALLERY_NAMES.join(", ")
    )))
}

fn tomo(a: &TomoArgs, threads: usize, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let set = load_design_arg(&a.design)?;
    let spec = ChannelSpec::parse(&a.channel)?;
    // trials use child streams (seed, i); the channel takes the root stream
    let channel = channel_gallery(&spec, set.dim(), &mut Stream::from_seed(a.seed))?;
    let class = match &a.class {
        Some(c) => c.parse::<ChannelClass>()?,
        None if channel.is_unital() => ChannelClass::Unital,
        None => ChannelClass::General,
    };
    let povm = povm_from_design(&set)?;
    let recon = canonical_dual(&povm, class)?;
    let tight = tight_check(&povm, class)?;
    if !tight.is_tight_rank_one {
        eprintln!(
            "warning: POVM is not tight for class {class} (residual {:.3e}); the predicted error is a lower bound",
            tight.residual
        );
    }
    let dt = delta_tau(&povm, &recon);
    let experiment = Experiment::new(povm, recon, udesign_core::qops::jamiolkowski(&channel))?;
    let r = parallel::simulate(&experiment, a.shots, a.trials, a.seed, threads)?;
    let z = r.z_score();
    say(
        out,
        format_args!("design     {} ({} elements, d = {})", a.design, set.len(), set.dim()),
    )?;
    say(out, format_args!("channel    {spec}"))?;
    say(
        out,
        format_args!(
            "class      {class} (Delta_tau {:.6}, bound {:.6})",
            dt,
            delta_tau_bound(class, set.dim())
        ),
    )?;
    say(out, format_args!("purity     {}", fmt_f64(r.purity)))?;
    say(out, format_args!("N, trials  {}, {}", r.shots, r.trials))?;
    say(out, format_args!("predicted  {:.6e}", r.predicted))?;
    say(
        out,
        format_args!("empirical  {:.6e} +/- {:.2e}", r.empirical_mean, r.std_err),
    )?;
    say(out, format_args!("z          {z:+.3}"))?;
    say(out, format_args!("min eig    {:.3e}", r.min_estimate_eigenvalue))?;
    let reports = [r];
    if let Some(p) = &a.csv {
        write_text(p, &report::csv(&reports))?;
    }
    if let Some(p) = &a.json {
        write_text(p, &report::json(&reports))?;
    }
    let pass = z.abs() <= Z_LIMIT;
    say(out, format_args!("result     {}", if pass { "PASS" } else { "FAIL" }))?;
    Ok(if pass { ExitStatus::Pass } else { ExitStatus::Fail })
}
