//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a mathematical check fails, 2 on bad usage or input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ghilb::certificate::singular_certificate;
use ghilb::fan::{build_fan_g, is_crepant, refines, validate_fan, Fan, FanError};
use ghilb::ggraph::{enumerate_ggraphs_with_cap, DEFAULT_CAP};
use ghilb::group::{enumerate_group, junior_points, parse_group_spec, GroupData};
use ghilb::report::{export_fan_json, export_obj, import_fan_json, mesh_of, ReportError};
use ghilb::resolution::{series_i_fan, series_i_resolutions, series_ii_fan, ConstructionError, ResolutionFan};

#[derive(Debug, Parser)]
#[command(name = "ghilb", version, about = "Toric data of C^n/G for diagonal abelian G in SL(n)")]
struct Cli {
    /// Directory for relative --json/--obj paths
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the junior (age one) points of G
    Junior { spec: String },
    /// List all G-graphs with their ideal generators
    Ggraphs {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Build the fan of G-Hilb and report validity, smoothness and crepancy
    Hilb {
        spec: String,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        obj: Option<PathBuf>,
    },
    /// Crepant resolution for <1/r(1,1,0,r-2), 1/r(0,0,1,r-1)>
    ResolveI {
        #[arg(long)]
        r: u64,
        /// Use the K-th strip triangulation instead of the placing one
        #[arg(long, value_name = "K")]
        strip: Option<usize>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        obj: Option<PathBuf>,
    },
    /// Crepant resolution for 1/r(1,a,a^2,a^3)
    ResolveIi {
        #[arg(long)]
        a: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        axis: u8,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        obj: Option<PathBuf>,
    },
    /// Refinement verdicts between two fan files, in both directions
    Compare { first: PathBuf, second: PathBuf },
    /// Non-smoothness certificate for 1/2m(1,2m-1,m,m)
    SingularCheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
}

/// A failed command: exit code and message.
struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(2, msg.to_string())
}

fn math(msg: impl ToString) -> Failure {
    Failure(1, msg.to_string())
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Io(_) | ReportError::Json(_) | ReportError::Format(_) | ReportError::Group(_)
            | ReportError::Rational(_) | ReportError::Unsupported(_) => usage(e),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Parameter(_) => usage(e),
            _ => math(e),
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Ctx<'a> {
    out_dir: Option<PathBuf>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn path(&self, p: &Path) -> PathBuf {
        match &self.out_dir {
            Some(d) if p.is_relative() => d.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        // a closed stdout is not worth a panic
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn export(&mut self, fan: &Fan, json: Option<&Path>, obj: Option<&Path>) -> Result<(), Failure> {
        if let Some(p) = json {
            let p = self.path(p);
            export_fan_json(fan, &p)?;
            self.line(format!("wrote {}", p.display()));
        }
        if let Some(p) = obj {
            let p = self.path(p);
            export_obj(&mesh_of(fan)?, &p)?;
            self.line(format!("wrote {}", p.display()));
        }
        Ok(())
    }

    /// Summary line plus details; fails when the fan is not a valid fan.
    fn fan_summary(&mut self, fan: &Fan) -> Result<(), Failure> {
        let rep = is_crepant(&fan.group, fan);
        self.line(format!(
            "{} max cones; smooth: {}; crepant: {}",
            rep.max_cone_count,
            yes(rep.smooth),
            yes(rep.crepant)
        ));
        self.line(format!("rays: {}", fan.rays().len()));
        if let Some(v) = &rep.validation.support_volume {
            self.line(format!(
                "cross-section volume: {v} (simplex {})",
                rep.validation.expected_volume
            ));
        }
        for &i in &rep.non_smooth_cones {
            self.line(format!("non-smooth: {} [{}]", fan.cones[i], fan.provenance[i]));
        }
        for r in &rep.non_junior_rays {
            let c: Vec<String> = r.point.iter().map(ToString::to_string).collect();
            self.line(format!("non-junior ray: ({}) age {}", c.join(","), r.age()));
        }
        if !fan.lower_dimensional.is_empty() {
            self.line(format!("lower-dimensional G-graph cones: {}", fan.lower_dimensional.len()));
        }
        match &rep.validation.failure {
            None => {
                self.line("fan: valid");
                Ok(())
            }
            Some(f) => Err(math(format!("fan is not valid: {f}"))),
        }
    }
}

fn group(spec: &str) -> Result<GroupData, Failure> {
    let s = parse_group_spec(spec).map_err(usage)?;
    Ok(enumerate_group(&s))
}

fn resolution_summary(ctx: &mut Ctx<'_>, y: &ResolutionFan) -> Result<(), Failure> {
    ctx.line(format!("{}: group {}, order {}", y.series, y.fan.group.spec, y.fan.group.order));
    for n in &y.notes {
        ctx.line(n);
    }
    ctx.fan_summary(&y.fan)
}

fn dispatch(cli: Cli, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match cli.command {
        Command::Junior { spec } => {
            let gd = group(&spec)?;
            let pts = junior_points(&gd);
            ctx.line(format!("group {}, order {}", gd.spec, gd.order));
            ctx.line(format!("junior points: {}", pts.len()));
            for p in pts {
                ctx.line(p.to_string());
            }
        }
        Command::Ggraphs { spec, cap } => {
            let gd = group(&spec)?;
            let all = enumerate_ggraphs_with_cap(&gd, cap).map_err(usage)?;
            ctx.line(format!("group {}, order {}", gd.spec, gd.order));
            ctx.line(format!("G-graphs: {}", all.len()));
            for g in &all {
                let members: Vec<String> = g.monomials.iter().map(ToString::to_string).collect();
                ctx.line(format!("ideal {}", g.ideal_string()));
                ctx.line(format!("  graph {{{}}}", members.join(", ")));
            }
        }
        Command::Hilb { spec, json, obj } => {
            let gd = group(&spec)?;
            let fan = build_fan_g(&gd).map_err(|e| match e {
                FanError::Enumeration(e) => usage(e),
                other => math(other),
            })?;
            ctx.line(format!("group {}, order {}", gd.spec, gd.order));
            ctx.export(&fan, json.as_deref(), obj.as_deref())?;
            ctx.fan_summary(&fan)?;
        }
        Command::ResolveI { r, strip, json, obj } => {
            let y = match strip {
                None => series_i_fan(r)?,
                Some(k) => {
                    let all = series_i_resolutions(r)?;
                    let n = all.len();
                    all.into_iter()
                        .nth(k.wrapping_sub(1))
                        .ok_or_else(|| usage(format!("--strip must be between 1 and {n}")))?
                }
            };
            ctx.export(&y.fan, json.as_deref(), obj.as_deref())?;
            resolution_summary(ctx, &y)?;
        }
        Command::ResolveIi { a, axis, json, obj } => {
            let y = series_ii_fan(a, axis)?;
            ctx.export(&y.fan, json.as_deref(), obj.as_deref())?;
            resolution_summary(ctx, &y)?;
        }
        Command::Compare { first, second } => {
            let f1 = import_fan_json(&first)?.to_fan()?;
            let f2 = import_fan_json(&second)?.to_fan()?;
            for (name, f) in [(&first, &f1), (&second, &f2)] {
                if let Some(e) = validate_fan(&f.group, f).failure {
                    return Err(math(format!("{} is not a valid fan: {e}", name.display())));
                }
            }
            let forward = refines(&f1, &f2).map_err(math)?;
            let backward = refines(&f2, &f1).map_err(math)?;
            ctx.line(format!("{} -> {}", first.display(), second.display()));
            ctx.line(format!("refines: {}", yes(forward)));
            ctx.line(format!("refined by: {}", yes(backward)));
            ctx.line(format!("equal: {}", yes(f1 == f2)));
        }
        Command::SingularCheck { m } => {
            let c = singular_certificate(m);
            ctx.line(format!("group {}, order {}", c.group.spec, c.group.order));
            let ideal: Vec<String> = c.ideal.iter().map(ToString::to_string).collect();
            ctx.line(format!("ideal ({})", ideal.join(", ")));
            match &c.ggraph_check {
                Ok(()) => ctx.line("G-graph: yes"),
                Err(v) => ctx.line(format!("G-graph: no ({v})")),
            }
            if let Some(cone) = &c.cone {
                ctx.line(format!("cone: {cone}"));
            }
            for d in &c.dual_checks {
                ctx.line(format!("dual contains {}: {}", d.name, yes(d.contained)));
            }
            ctx.line(format!("relation X + W = Y + Z: {}", yes(c.relation_holds)));
            if c.verified() {
                ctx.line("non-smooth cone found; XW-YZ relation verified");
                ctx.line("singular, local model XW-YZ verified");
            } else {
                let why = if c.smooth == Some(true) {
                    "the cone is smooth"
                } else {
                    "a certificate check failed"
                };
                return Err(math(format!("no singularity certificate: {why}")));
            }
        }
    }
    Ok(())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        out_dir: cli.out_dir.clone(),
        out,
    };
    match dispatch(cli, &mut ctx) {
        Ok(()) => 0,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
