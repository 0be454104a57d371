//! Command-line front end. Human-readable text goes to `out`; the
//! structured [`RunReport`] goes to the `--json-out` path when given.
//!
//! Exit codes: 0 when every check passes, 1 when a checked condition fails,
//! 2 on usage or input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::embed::{
    enumerate_endos, indiscernible_check, is_e_object, EndoMode, Fixing, LineSequence, PointedGp,
    DEFAULT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::groups::DEFAULT_MAX_GROUP_ORDER;
use crate::incidence::{
    classify_sub, generated_subgeometry, verify_gp, GeomMorphism, IncidenceGeometry, SubGpRecord, VerifiedGp,
};
use crate::kantor::{
    classical_t2_conic, coset_geometry, symplectic_w, tgq_of, verify_kantor, KantorAxiom, KantorFamily,
};
use crate::kernel::{compute_kernel, is_skew_field, linearity_report, module_closure_check, verify_injectivity, Linearity};
use crate::params::{check_parameters, Param, ParamQuery, Status};
use crate::report::{CheckStatus, RunReport};

#[derive(Debug, Parser)]
#[command(name = "gpwb", version, about = "Generalized polygon workbench")]
pub struct Cli {
    /// Write the structured report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,

    /// Bound on |T| = p^dim for group computations.
    #[arg(long, global = true, env = "GPWB_MAX_GROUP", default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    max_group: u64,

    /// Node budget for endomorphism searches.
    #[arg(long, global = true, env = "GPWB_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generalized polygons.
    #[command(subcommand)]
    Gp(GpCommand),
    /// Kantor families.
    #[command(subcommand)]
    Kantor(KantorCommand),
    /// Translation generalized quadrangles.
    #[command(subcommand)]
    Tgq(TgqCommand),
    /// Endomorphisms and indiscernible sequences.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Subgeometries.
    #[command(subcommand)]
    Sub(SubCommand),
}

#[derive(Debug, Subcommand)]
enum GpCommand {
    /// Check the polygon axioms of a geometry file.
    Verify { file: PathBuf },
    /// Run the parameter conditions on (n, s, t).
    Params {
        n: u64,
        s: Param,
        t: Param,
    },
    /// Write a classical quadrangle to a geometry file.
    Construct {
        kind: Kind,
        p: u32,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the Kantor family (t2-conic only).
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    W,
    #[value(name = "t2-conic")]
    T2Conic,
}

#[derive(Debug, Subcommand)]
enum KantorCommand {
    /// Check the Kantor family axioms.
    Verify { family: PathBuf },
    /// Write the coset geometry of a family.
    Build {
        family: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum TgqCommand {
    /// Compute the kernel and its ring properties.
    Kernel { family: PathBuf },
    /// Decide linearity of the quadrangle of a family.
    Linearity {
        family: PathBuf,
        /// Affine point used to read off the family (default: the zero element).
        #[arg(long)]
        z: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Injective,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FixingArg {
    Setwise,
    Pointwise,
}

#[derive(Debug, Subcommand)]
enum EmbedCommand {
    /// Enumerate endomorphisms fixing a point and each line through it.
    Search {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "injective")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "setwise")]
        fixing: FixingArg,
    },
    /// Check indiscernibility of a line sequence over a base line.
    Indiscernible(IndiscernibleArgs),
}

#[derive(Debug, Args)]
struct IndiscernibleArgs {
    file: PathBuf,
    #[arg(long)]
    base_line: String,
    #[arg(long, num_args = 1.., required = true)]
    lines: Vec<String>,
    #[arg(long)]
    max_len: usize,
}

#[derive(Debug, Subcommand)]
enum SubCommand {
    /// Generate the subgeometry spanned by seed points and lines.
    Generate {
        file: PathBuf,
        #[arg(long, num_args = 1..)]
        points: Vec<String>,
        #[arg(long, num_args = 1..)]
        lines: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate and classify a subgeometry inside an ambient polygon.
    Classify { sub: PathBuf, ambient: PathBuf },
}

/// Most endomorphisms written out as witnesses.
const MAX_LISTED: usize = 100;

/// Failure of a command: usage/input problems exit with 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = std::result::Result<(), InputError>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    report: RunReport,
    max_group: u64,
    budget: u64,
}

impl Ctx<'_> {
    fn say(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut echo = Vec::new();
    let mut rest = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = rest.next() {
        if a == "--json-out" {
            rest.next();
        } else if !a.starts_with("--json-out=") {
            echo.push(a);
        }
    }
    let mut ctx = Ctx {
        out,
        report: RunReport::new(echo),
        max_group: cli.max_group,
        budget: cli.budget,
    };
    let outcome = match cli.command {
        Command::Gp(c) => gp(&mut ctx, c),
        Command::Kantor(c) => kantor(&mut ctx, c),
        Command::Tgq(c) => tgq(&mut ctx, c),
        Command::Embed(c) => embed(&mut ctx, c),
        Command::Sub(c) => sub(&mut ctx, c),
    };
    let code = match outcome {
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ctx.report.witness("error", msg);
            2
        }
        Ok(()) if ctx.report.any_failure() => 1,
        Ok(()) => 0,
    };
    if let Some(path) = cli.json_out {
        if let Err(e) = std::fs::write(&path, ctx.report.to_json()) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    code
}

fn read(path: &Path) -> std::result::Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn load_geometry(path: &Path) -> std::result::Result<IncidenceGeometry, InputError> {
    IncidenceGeometry::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_gp(path: &Path) -> std::result::Result<VerifiedGp, InputError> {
    let geom = load_geometry(path)?;
    verify_gp(&geom).map_err(|r| InputError(format!("{} is not a generalized polygon: {r}", path.display())))
}

fn load_family(ctx: &Ctx<'_>, path: &Path) -> std::result::Result<KantorFamily, InputError> {
    KantorFamily::from_json_with_guard(&read(path)?, ctx.max_group)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// A morphism as explicit name-to-name maps.
pub fn named_morphism(geom: &IncidenceGeometry, m: &GeomMorphism) -> Value {
    let points: BTreeMap<&str, &str> = m
        .point_map
        .iter()
        .enumerate()
        .map(|(p, &q)| (geom.point_name(p), geom.point_name(q)))
        .collect();
    let lines: BTreeMap<&str, &str> = m
        .line_map
        .iter()
        .enumerate()
        .map(|(l, &k)| (geom.line_name(l), geom.line_name(k)))
        .collect();
    json!({ "points": points, "lines": lines })
}

fn named_record(geom: &IncidenceGeometry, r: &SubGpRecord) -> Value {
    json!({
        "points": r.points.iter().map(|&p| geom.point_name(p)).collect::<Vec<_>>(),
        "lines": r.lines.iter().map(|&l| geom.line_name(l)).collect::<Vec<_>>(),
        "kind": r.kind,
    })
}

fn gp_summary(ctx: &mut Ctx<'_>, gp: &VerifiedGp) {
    let (s, t) = gp.order();
    let n = gp.gonality();
    ctx.report.check(
        "generalized polygon",
        true,
        format!("n = {n}, order ({s},{t}), {} points, {} lines", gp.num_points(), gp.num_lines()),
    );
    ctx.report.witness("gonality", n);
    ctx.report.witness("order", (s, t));
    ctx.report.witness("points", gp.num_points());
    ctx.report.witness("lines", gp.num_lines());
    ctx.say(format!(
        "generalized {n}-gon of order ({s},{t}): {} points, {} lines, girth {}, diameter {n}",
        gp.num_points(),
        gp.num_lines(),
        2 * n
    ));
    let q = ParamQuery::new(n as u64, Param::Finite(s as u64), Param::Finite(t as u64))
        .expect("verified polygons are thick");
    let params = check_parameters(&q);
    let failures: Vec<&str> = params.failures().map(|v| v.condition.name()).collect();
    ctx.report.check("parameter conditions", failures.is_empty(), failures.join("; "));
}

fn gp(ctx: &mut Ctx<'_>, cmd: GpCommand) -> CmdResult {
    match cmd {
        GpCommand::Verify { file } => {
            let geom = load_geometry(&file)?;
            match ctx.report.timed("verify_gp", || verify_gp(&geom)) {
                Ok(gp) => gp_summary(ctx, &gp),
                Err(r) => {
                    ctx.say(format!("not a generalized polygon:\n{r}"));
                    ctx.report.check("generalized polygon", false, r.to_string());
                    ctx.report.witness("violations", &r);
                }
            }
        }
        GpCommand::Params { n, s, t } => {
            let q = ParamQuery::new(n, s, t)?;
            let r = check_parameters(&q);
            ctx.say(r.to_string());
            for v in &r.verdicts {
                let status = match v.status {
                    Status::Pass => CheckStatus::Pass,
                    Status::Fail => CheckStatus::Fail,
                    Status::Open => CheckStatus::Open,
                    Status::NotApplicable => CheckStatus::NotApplicable,
                };
                ctx.report.verdict(v.condition.name(), status, v.message.clone());
            }
        }
        GpCommand::Construct { kind, p, out, family_out } => {
            let gp = match kind {
                Kind::W => {
                    let order = (p as u128).pow(4);
                    if order > ctx.max_group as u128 {
                        return Err(Error::GroupTooLarge { order, limit: ctx.max_group }.into());
                    }
                    ctx.report.timed("construct", || symplectic_w(p))?
                }
                Kind::T2Conic => {
                    let kf = ctx.report.timed("construct", || classical_t2_conic(p))?;
                    let cg = coset_geometry(&kf)?;
                    let family_path = family_out.unwrap_or_else(|| out.with_extension("family.json"));
                    write_file(&family_path, &kf.to_json())?;
                    ctx.report.witness("family_file", family_path.display().to_string());
                    ctx.say(format!("wrote Kantor family to {}", family_path.display()));
                    verify_gp(&cg.geometry).map_err(|r| InputError(r.to_string()))?
                }
            };
            write_file(&out, &gp.geometry().to_json())?;
            ctx.report.witness("geometry_file", out.display().to_string());
            ctx.say(format!("wrote geometry to {}", out.display()));
            gp_summary(ctx, &gp);
        }
    }
    Ok(())
}

fn kantor(ctx: &mut Ctx<'_>, cmd: KantorCommand) -> CmdResult {
    match cmd {
        KantorCommand::Verify { family } => {
            let kf = load_family(ctx, &family)?;
            let report = match ctx.report.timed("verify_kantor", || verify_kantor(&kf)) {
                Ok(r) => r,
                Err(Error::ThinFamily(n)) => {
                    ctx.say(format!("family has {n} members; at least 3 are needed"));
                    ctx.report.check("at least three members", false, format!("{n} members"));
                    return Ok(());
                }
                Err(e) => return Err(e.into()),
            };
            ctx.say(format!("Kantor family in {} with {} members", kf.group(), kf.len()));
            ctx.say(report.to_string());
            for c in &report.checks {
                let detail = c.witness.as_ref().map_or_else(String::new, ToString::to_string);
                ctx.report.check(c.axiom.name(), c.passed, detail);
            }
            if let Some(ok) = report.size_relation {
                ctx.report.check("|T| = s^2 t", ok, "");
            }
            let witnesses: BTreeMap<&str, _> = report
                .checks
                .iter()
                .filter_map(|c| c.witness.as_ref().map(|w| (c.axiom.name(), w)))
                .collect();
            ctx.report.witness("axiom_witnesses", witnesses);
            ctx.report.witness("order", report.order);
            debug_assert_eq!(report.checks.len(), KantorAxiom::ALL.len());
        }
        KantorCommand::Build { family, out } => {
            let kf = load_family(ctx, &family)?;
            let cg = match ctx.report.timed("coset_geometry", || coset_geometry(&kf)) {
                Ok(cg) => cg,
                Err(Error::KantorViolation(m)) => {
                    ctx.say(format!("not a Kantor family: {m}"));
                    ctx.report.check("Kantor family", false, m);
                    return Ok(());
                }
                Err(e) => return Err(e.into()),
            };
            write_file(&out, &cg.geometry.to_json())?;
            ctx.say(format!("wrote coset geometry to {}", out.display()));
            match verify_gp(&cg.geometry) {
                Ok(gp) => gp_summary(ctx, &gp),
                Err(r) => ctx.report.check("generalized polygon", false, r.to_string()),
            }
        }
    }
    Ok(())
}

fn tgq(ctx: &mut Ctx<'_>, cmd: TgqCommand) -> CmdResult {
    match cmd {
        TgqCommand::Kernel { family } => {
            let kf = load_family(ctx, &family)?;
            let k = ctx.report.timed("compute_kernel", || compute_kernel(&kf))?;
            ctx.report.witness("kernel_order", k.order().to_string());
            ctx.report.witness("basis", k.basis());
            if let Ok(r) = ctx.report.timed("ring_checks", || k.ring_checks()) {
                ctx.report.check("ring axioms and no zero divisors", r.passed(), "");
                ctx.report.witness("ring_checks", &r);
            }
            let inj = ctx.report.timed("injectivity", || verify_injectivity(&k));
            ctx.report.check(
                "every nonzero element is injective",
                inj.passed(),
                inj.counterexample.as_ref().map_or_else(String::new, |(b, l)| {
                    format!("{b} kills {}", crate::groups::format_vector(l))
                }),
            );
            let module = ctx.report.timed("module_closure", || module_closure_check(&kf, &k));
            ctx.report.check("A_i and A_i* are kernel-modules", module.passed(), "");
            if !module.passed() {
                ctx.report.witness("module_violations", &module.violations);
            }
            match ctx.report.timed("skew_field", || is_skew_field(&k)) {
                Ok(s) => {
                    ctx.report.check("kernel is a skew field", s.is_skew_field, "");
                    if s.is_skew_field {
                        let kind = if s.commutative { "field" } else { "skew field" };
                        ctx.say(format!("kernel: {kind} of order {}", s.order));
                    } else {
                        ctx.say(format!("kernel: not a skew field, order {}", s.order));
                    }
                    ctx.report.witness("skew_field", &s);
                }
                Err(e) => {
                    ctx.say(format!("kernel of order {}: {e}", k.order()));
                    ctx.report.verdict("kernel is a skew field", CheckStatus::Open, e.to_string());
                }
            }
            for b in k.basis() {
                ctx.say(format!("  basis element {b}"));
            }
        }
        TgqCommand::Linearity { family, z } => {
            let kf = load_family(ctx, &family)?;
            let mut inst = ctx.report.timed("tgq", || tgq_of(&kf))?;
            if let Some(name) = z {
                let id = inst.gp().point_id(&name)?;
                inst = inst.with_affine_point(id)?;
            }
            let r = ctx.report.timed("linearity", || linearity_report(&inst))?;
            match &r.verdict {
                Linearity::Linear { field_order } => {
                    ctx.say(format!("linear: kernel field of order {field_order}"));
                }
                Linearity::NonInvertible { zeta } => {
                    ctx.say(format!("non-invertible kernel element {zeta}"));
                }
                Linearity::Undetermined { kernel_order } => {
                    ctx.say(format!("kernel of order {kernel_order} too large to enumerate"));
                }
            }
            let status = match r.verdict {
                Linearity::Linear { .. } => CheckStatus::Pass,
                Linearity::NonInvertible { .. } => CheckStatus::Fail,
                Linearity::Undetermined { .. } => CheckStatus::Open,
            };
            ctx.report.verdict("linear", status, "");
            ctx.report.check("every nonzero element is injective", r.injectivity.passed(), "");
            ctx.report.check("A_i and A_i* are kernel-modules", r.module.passed(), "");
            ctx.report.witness("linearity", &r);
        }
    }
    Ok(())
}

fn embed(ctx: &mut Ctx<'_>, cmd: EmbedCommand) -> CmdResult {
    match cmd {
        EmbedCommand::Search { file, point, mode, fixing } => {
            let gp = load_gp(&file)?;
            let x = gp.point_id(&point)?;
            let pg = PointedGp::new(gp, x)?;
            let mode = match mode {
                ModeArg::Injective => EndoMode::Injective,
                ModeArg::All => EndoMode::All,
            };
            let fixing = match fixing {
                FixingArg::Setwise => Fixing::Setwise,
                FixingArg::Pointwise => Fixing::Pointwise,
            };
            let budget = ctx.budget;
            let e = ctx.report.timed("enumerate", || enumerate_endos(&pg, mode, fixing, budget))?;
            let geom = pg.gp().geometry();
            let objects: Vec<Value> = e
                .candidates
                .iter()
                .filter(|c| is_e_object(c))
                .map(|c| named_morphism(geom, c.eta()))
                .collect();
            let bijective = e.candidates.iter().filter(|c| c.flags().bijective).count();
            ctx.say(format!(
                "{} endomorphisms ({} bijective), {} search nodes{}",
                e.candidates.len(),
                bijective,
                e.nodes,
                if e.complete { "" } else { ", budget exhausted" }
            ));
            ctx.say(format!("injective non-bijective: {}", objects.len()));
            ctx.report.check("no injective non-bijective endomorphism", objects.is_empty(), "");
            if e.complete {
                ctx.report.check("search complete", true, "");
            } else {
                ctx.report
                    .verdict("search complete", CheckStatus::Open, format!("budget {budget} exhausted"));
            }
            ctx.report.witness("count", e.candidates.len());
            ctx.report.witness("nodes", e.nodes);
            ctx.report.witness(
                "endomorphisms",
                e.candidates
                    .iter()
                    .take(MAX_LISTED)
                    .map(|c| named_morphism(geom, c.eta()))
                    .collect::<Vec<_>>(),
            );
            ctx.report.witness("endomorphisms_truncated", e.candidates.len() > MAX_LISTED);
            ctx.report.witness("e_objects", objects);
        }
        EmbedCommand::Indiscernible(args) => {
            let gp = load_gp(&args.file)?;
            let base = gp.line_id(&args.base_line)?;
            let lines = args
                .lines
                .iter()
                .map(|n| gp.line_id(n))
                .collect::<Result<Vec<_>>>()?;
            let seq = LineSequence::new(gp, base, lines)?;
            let v = ctx.report.timed("indiscernible", || indiscernible_check(&seq, args.max_len))?;
            let geom = seq.gp().geometry();
            let names = |t: &[usize]| t.iter().map(|&l| geom.line_name(l).to_string()).collect::<Vec<_>>();
            match &v.failure {
                None => ctx.say(format!("indiscernible up to length {}", v.max_len)),
                Some((a, b)) => ctx.say(format!(
                    "not indiscernible: no automorphism fixing {} pointwise maps {:?} to {:?}",
                    geom.line_name(base),
                    names(a),
                    names(b)
                )),
            }
            ctx.report.check("indiscernible", v.indiscernible, "");
            if let Some((a, b)) = &v.failure {
                ctx.report.witness("failure", (names(a), names(b)));
            }
            let witnesses: Vec<Value> = v
                .witnesses
                .iter()
                .map(|w| json!({ "from": names(&w.from), "to": names(&w.to), "map": named_morphism(geom, &w.map) }))
                .collect();
            ctx.report.witness("automorphisms", witnesses);
        }
    }
    Ok(())
}

fn sub(ctx: &mut Ctx<'_>, cmd: SubCommand) -> CmdResult {
    match cmd {
        SubCommand::Generate { file, points, lines, out } => {
            let gp = load_gp(&file)?;
            let pts = points.iter().map(|n| gp.point_id(n)).collect::<Result<Vec<_>>>()?;
            let lns = lines.iter().map(|n| gp.line_id(n)).collect::<Result<Vec<_>>>()?;
            let rec = ctx.report.timed("generate", || generated_subgeometry(&gp, &pts, &lns))?;
            describe_sub(ctx, &gp, &rec);
            if let Some(path) = out {
                write_file(&path, &rec.to_geometry(gp.geometry())?.to_json())?;
                ctx.say(format!("wrote subgeometry to {}", path.display()));
            }
        }
        SubCommand::Classify { sub, ambient } => {
            let sub_geom = load_geometry(&sub)?;
            let gp = load_gp(&ambient)?;
            match classify_sub(&sub_geom, &gp) {
                Ok(rec) => {
                    ctx.report.check("contained in ambient", true, "");
                    describe_sub(ctx, &gp, &rec);
                }
                Err(Error::NotContained(m)) => {
                    ctx.say(format!("not contained: {m}"));
                    ctx.report.check("contained in ambient", false, m);
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn describe_sub(ctx: &mut Ctx<'_>, gp: &VerifiedGp, rec: &SubGpRecord) {
    let k = rec.kind;
    let mut tags = Vec::new();
    for (flag, name) in [(k.is_sub, "subpolygon"), (k.is_full, "full"), (k.is_ideal, "ideal"), (k.is_thin, "thin")] {
        if flag {
            tags.push(name);
        }
    }
    ctx.say(format!(
        "{} points, {} lines: {}",
        rec.points.len(),
        rec.lines.len(),
        if tags.is_empty() { "no polygon structure".to_string() } else { tags.join(", ") }
    ));
    ctx.report.witness("subgeometry", named_record(gp.geometry(), rec));
}
