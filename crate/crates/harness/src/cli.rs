//! The `finconv` command-line surface.
//!
//! Exit codes: 0 on success, 1 when a check fails or mining finds a
//! violation, 2 on input errors (bad syntax, missing items, bounds).

use crate::doc::{Document, Item};
use crate::dot::export_dot;
use crate::mine::{mine, properties, replay, InstanceSource, MiningTask};
use crate::HarnessError;
use clap::{Args, Parser, Subcommand};
use finconv_core::components::{check_kent, is_biquotient, is_biquotient_by_cover_search, path_components};
use finconv_core::exponentials::{continuous_maps, curry_with, exponential, is_h_group, uncurry};
use finconv_core::schedules::{check_boundaries, eval, Rational, Schedule};
use finconv_core::spaces::{
    coproduct, product, quotient, reflect_top, subspace, PointedSpace, PseudoSpace, SpaceMap,
};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "finconv",
    about = "A finite-scale calculus for pseudotopological spaces",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize a space document
    Space {
        file: PathBuf,
        /// Item name (defaults to the first space in the document)
        #[arg(long)]
        name: Option<String>,
        /// List the open sets of the reflected topology
        #[arg(long)]
        opens: bool,
    },
    /// Apply a construction and emit the result as a document
    Op {
        #[command(subcommand)]
        op: OpCmd,
    },
    /// Run a checker; exits 1 when the check fails
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
    /// Evaluate or verify the homotopy schedules
    Formulas {
        #[command(subcommand)]
        cmd: FormulasCmd,
    },
    /// Run a registered property over an instance stream
    Mine(MineArgs),
    /// Re-evaluate a property on a witness document alone
    Replay { property: String, file: PathBuf },
    /// Export a convergence digraph as DOT (diagonal edges omitted,
    /// closure-only edges dashed)
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    /// Product of two spaces
    Product(BinaryOp),
    /// Coproduct (disjoint union) of two spaces
    Coproduct(BinaryOp),
    /// Subspace on a comma-separated list of points
    Subspace {
        file: PathBuf,
        space: String,
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        #[arg(long, default_value = "R")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient along a surjective map item
    Quotient {
        file: PathBuf,
        map: String,
        #[arg(long, default_value = "R")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponential object (structure plus one map item per point)
    Exponential(BinaryOp),
    /// Topological reflection
    Reflect {
        file: PathBuf,
        space: String,
        #[arg(long, default_value = "R")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Path-component quotient with its projection
    Components {
        file: PathBuf,
        space: String,
        #[arg(long, default_value = "R")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BinaryOp {
    file: PathBuf,
    left: String,
    right: String,
    #[arg(long, default_value = "R")]
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is a map continuous (optionally at one point)?
    Continuity {
        file: PathBuf,
        map: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Is a map a quotient map?
    QuotientMap { file: PathBuf, map: String },
    /// Pasting-lemma verdict for a cover and piecewise maps
    Pasting {
        file: PathBuf,
        cover: String,
        /// Map items, one per piece, in piece order
        #[arg(long, value_delimiter = ',')]
        maps: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Is a map biquotient?
    Biquotient {
        file: PathBuf,
        map: String,
        /// Cross-check with the brute-force open-cover search
        #[arg(long)]
        search_covers: bool,
    },
    /// Kent's criterion for a surjection from a topological space
    Kent { file: PathBuf, space: String, map: String },
    /// Exponential-law bijection for a triple of spaces
    ExpLaw { file: PathBuf, z: String, x: String, y: String },
    /// H-group clauses for a group item, or explicit wedge and sigma maps
    Hgroup {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long)]
        wedge: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Is a group item a pseudotopological group?
    PstopGroup { file: PathBuf, group: String },
    /// Is a group item a quasitopological group?
    QuasitopGroup { file: PathBuf, group: String },
}

#[derive(Subcommand)]
enum FormulasCmd {
    /// Evaluate a schedule at exact rationals, e.g. `eval phi 1/2 1/4`
    Eval { schedule: String, s: String, t: String },
    /// Check every boundary identity exactly; exits 1 on any failure
    Verify,
}

#[derive(Args)]
struct MineArgs {
    /// Registered property name (see --list)
    #[arg(long)]
    property: Option<String>,
    /// List registered properties
    #[arg(long)]
    list: bool,
    /// Exhaustive enumeration instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// Reduce exhaustive enumeration modulo isomorphism
    #[arg(long)]
    up_to_iso: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value_t = 4)]
    max_points: usize,
    /// Directory for witness documents of violations
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn load(file: &Path) -> crate::Result<Document> {
    let text = std::fs::read_to_string(file)?;
    Ok(Document::parse(&text)?)
}

fn need_space<'d>(doc: &'d Document, name: &str) -> crate::Result<&'d PseudoSpace> {
    doc.space(name)
        .ok_or(HarnessError::MissingItem { kind: "space", name: name.into() })
}

fn need_map<'d>(doc: &'d Document, name: &str) -> crate::Result<&'d SpaceMap> {
    doc.map(name)
        .ok_or(HarnessError::MissingItem { kind: "map", name: name.into() })
}

fn emit(doc: &Document, out: Option<&PathBuf>) -> crate::Result<()> {
    match out {
        Some(path) => std::fs::write(path, doc.serialize())?,
        None => print!("{}", doc.serialize()),
    }
    Ok(())
}

fn verdict(ok: bool, line: String) -> i32 {
    println!("{line}");
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn dispatch(cli: Cli) -> crate::Result<i32> {
    match cli.cmd {
        Cmd::Space { file, name, opens } => {
            let doc = load(&file)?;
            let (item_name, space) = match &name {
                Some(n) => (n.as_str(), need_space(&doc, n)?),
                None => match doc.first_of_kind("space") {
                    Some((n, Item::Space(s))) => (n, s),
                    _ => return Err(HarnessError::Invalid("document has no space item".into())),
                },
            };
            let classes = path_components(space);
            println!(
                "space {item_name}: {} points, {} proper edges, topological: {}, components: {}",
                space.len(),
                space.proper_edges().count(),
                space.is_topological(),
                classes.classes().len()
            );
            if opens {
                for s in space.open_sets() {
                    let labels: Vec<&str> = s.iter().map(|&i| space.carrier().label(i)).collect();
                    println!("open {{{}}}", labels.join(" "));
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Op { op } => run_op(op),
        Cmd::Check { check } => run_check(check),
        Cmd::Formulas { cmd } => run_formulas(cmd),
        Cmd::Mine(args) => run_mine(args),
        Cmd::Replay { property, file } => {
            let doc = load(&file)?;
            match replay(&property, &doc)? {
                None => Ok(verdict(true, format!("replay {property}: pass"))),
                Some(d) => Ok(verdict(false, format!("replay {property}: violation: {d}"))),
            }
        }
        Cmd::ExportDot { file, name, out } => {
            let doc = load(&file)?;
            let (item_name, space) = match &name {
                Some(n) => (n.as_str(), need_space(&doc, n)?),
                None => match doc.first_of_kind("space") {
                    Some((n, Item::Space(s))) => (n, s),
                    _ => return Err(HarnessError::Invalid("document has no space item".into())),
                },
            };
            let dot = export_dot(space, item_name);
            match out {
                Some(path) => std::fs::write(path, dot)?,
                None => print!("{dot}"),
            }
            Ok(EXIT_OK)
        }
    }
}

fn run_op(op: OpCmd) -> crate::Result<i32> {
    match op {
        OpCmd::Product(args) => {
            let doc = load(&args.file)?;
            let result = product(need_space(&doc, &args.left)?, need_space(&doc, &args.right)?);
            let mut out = Document::new();
            out.push(&args.name, Item::Space(result))?;
            emit(&out, args.out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Coproduct(args) => {
            let doc = load(&args.file)?;
            let result =
                coproduct(&[need_space(&doc, &args.left)?, need_space(&doc, &args.right)?]);
            let mut out = Document::new();
            out.push(&args.name, Item::Space(result))?;
            emit(&out, args.out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Subspace { file, space, points, name, out } => {
            let doc = load(&file)?;
            let ambient = need_space(&doc, &space)?;
            let subset = points
                .iter()
                .map(|l| Ok(ambient.carrier().resolve(l)?))
                .collect::<crate::Result<Vec<usize>>>()?;
            let mut outdoc = Document::new();
            outdoc.push(&name, Item::Space(subspace(ambient, &subset)?))?;
            emit(&outdoc, out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Quotient { file, map, name, out } => {
            let doc = load(&file)?;
            let q = need_map(&doc, &map)?;
            let result = quotient(q.dom(), &q.set_map())?;
            let mut outdoc = Document::new();
            outdoc.push(&name, Item::Space(result))?;
            emit(&outdoc, out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Exponential(args) => {
            let doc = load(&args.file)?;
            let base = need_space(&doc, &args.left)?;
            let target = need_space(&doc, &args.right)?;
            let exp = exponential(base, target);
            let mut outdoc = Document::new();
            outdoc.push(&args.left, Item::Space(base.clone()))?;
            if args.right != args.left {
                outdoc.push(&args.right, Item::Space(target.clone()))?;
            }
            outdoc.push(&args.name, Item::Space(exp.structure().clone()))?;
            for i in 0..exp.len() {
                let label = exp.structure().carrier().label(i).to_string();
                outdoc.push(
                    &label,
                    Item::Map {
                        dom_name: args.left.clone(),
                        cod_name: args.right.clone(),
                        map: exp.map_at(i),
                    },
                )?;
            }
            emit(&outdoc, args.out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Reflect { file, space, name, out } => {
            let doc = load(&file)?;
            let mut outdoc = Document::new();
            outdoc.push(&name, Item::Space(reflect_top(need_space(&doc, &space)?)))?;
            emit(&outdoc, out.as_ref())?;
            Ok(EXIT_OK)
        }
        OpCmd::Components { file, space, name, out } => {
            let doc = load(&file)?;
            let source = need_space(&doc, &space)?;
            let cq = path_components(source);
            let mut outdoc = Document::new();
            outdoc.push(&space, Item::Space(source.clone()))?;
            outdoc.push(&name, Item::Space(cq.quotient().clone()))?;
            outdoc.push(
                format!("{name}_projection"),
                Item::Map {
                    dom_name: space.clone(),
                    cod_name: name.clone(),
                    map: cq.projection().clone(),
                },
            )?;
            emit(&outdoc, out.as_ref())?;
            Ok(EXIT_OK)
        }
    }
}

fn run_check(check: CheckCmd) -> crate::Result<i32> {
    match check {
        CheckCmd::Continuity { file, map, at } => {
            let doc = load(&file)?;
            let f = need_map(&doc, &map)?;
            match at {
                Some(point) => {
                    let idx = f.dom().carrier().resolve(&point)?;
                    let ok = f.is_continuous_at(idx);
                    Ok(verdict(ok, format!("continuous at {point}: {ok}")))
                }
                None => {
                    let ok = f.is_continuous();
                    Ok(verdict(ok, format!("continuous: {ok}")))
                }
            }
        }
        CheckCmd::QuotientMap { file, map } => {
            let doc = load(&file)?;
            let ok = need_map(&doc, &map)?.is_quotient_map();
            Ok(verdict(ok, format!("quotient map: {ok}")))
        }
        CheckCmd::Pasting { file, cover, maps, target } => {
            let doc = load(&file)?;
            let c = doc
                .cover(&cover)
                .ok_or(HarnessError::MissingItem { kind: "cover", name: cover.clone() })?;
            let y = need_space(&doc, &target)?;
            if maps.len() != c.pieces().len() {
                return Err(HarnessError::Invalid(format!(
                    "{} maps given for {} pieces",
                    maps.len(),
                    c.pieces().len()
                )));
            }
            let mut piece_maps = Vec::new();
            for (piece, map_name) in c.pieces().iter().zip(&maps) {
                let m = need_map(&doc, map_name)?;
                if m.cod() != y {
                    return Err(HarnessError::Invalid(format!(
                        "map {map_name} does not land in {target}"
                    )));
                }
                let assignment = piece
                    .iter()
                    .map(|&p| {
                        let label = c.space().carrier().label(p);
                        let local = m.dom().carrier().resolve(label)?;
                        Ok(m.apply(local))
                    })
                    .collect::<crate::Result<Vec<usize>>>()?;
                piece_maps.push(assignment);
            }
            let v = c.check_pasting(&piece_maps, y)?;
            Ok(verdict(!v.violates_lemma(), format!("{v}")))
        }
        CheckCmd::Biquotient { file, map, search_covers } => {
            let doc = load(&file)?;
            let f = need_map(&doc, &map)?;
            let ok = is_biquotient(f)?;
            if search_covers {
                let brute = is_biquotient_by_cover_search(f)?;
                println!("cover-search oracle: {brute}");
                if brute != ok {
                    return Ok(verdict(false, format!("biquotient: {ok} (ORACLE DISAGREES)")));
                }
            }
            Ok(verdict(ok, format!("biquotient: {ok}")))
        }
        CheckCmd::Kent { file, space, map } => {
            let doc = load(&file)?;
            let x = need_space(&doc, &space)?;
            let q = need_map(&doc, &map)?;
            let v = check_kent(x, &q.set_map())?;
            Ok(verdict(
                v.criterion_agrees(),
                format!(
                    "structures coincide: {}, biquotient: {}, criterion agrees: {}",
                    v.structures_coincide,
                    v.biquotient,
                    v.criterion_agrees()
                ),
            ))
        }
        CheckCmd::ExpLaw { file, z, x, y } => {
            let doc = load(&file)?;
            let zs = need_space(&doc, &z)?;
            let xs = need_space(&doc, &x)?;
            let ys = need_space(&doc, &y)?;
            let zx = product(zs, xs);
            let lhs = continuous_maps(&zx, ys);
            let exp = exponential(xs, ys);
            let rhs = continuous_maps(zs, exp.structure());
            let mut ok = lhs.len() == rhs.len();
            if ok {
                for h in &lhs {
                    let hm = SpaceMap::from_indices(zx.clone(), ys.clone(), h.clone())
                        .expect("enumerated assignment");
                    let curried = curry_with(&hm, zs, &exp)?;
                    let back = uncurry(&curried, &exp)?;
                    if back.assignment() != h.as_slice() {
                        ok = false;
                        break;
                    }
                }
            }
            Ok(verdict(
                ok,
                format!("|hom(Z×X,Y)| = {}, |hom(Z,Y^X)| = {}, bijection: {ok}", lhs.len(), rhs.len()),
            ))
        }
        CheckCmd::Hgroup { file, group, space, basepoint, wedge, sigma } => {
            let doc = load(&file)?;
            let report = match (group, space, basepoint, wedge, sigma) {
                (Some(g), None, None, None, None) => {
                    let g = doc
                        .group(&g)
                        .ok_or(HarnessError::MissingItem { kind: "group", name: g })?;
                    is_h_group(&g.pointed(), &g.multiplication_map(), &g.inversion_map())?
                }
                (None, Some(space), Some(basepoint), Some(wedge), Some(sigma)) => {
                    let x = need_space(&doc, &space)?;
                    let pointed = PointedSpace::new(x.clone(), &basepoint)?;
                    let w = need_map(&doc, &wedge)?;
                    let s = need_map(&doc, &sigma)?;
                    is_h_group(&pointed, w, s)?
                }
                _ => {
                    return Err(HarnessError::Invalid(
                        "pass either --group, or all of --space --basepoint --wedge --sigma".into(),
                    ))
                }
            };
            Ok(verdict(report.holds(), format!("{report}")))
        }
        CheckCmd::PstopGroup { file, group } => {
            let doc = load(&file)?;
            let g = doc
                .group(&group)
                .ok_or(HarnessError::MissingItem { kind: "group", name: group })?;
            let ok = g.is_pstop_group();
            Ok(verdict(ok, format!("pseudotopological group: {ok}")))
        }
        CheckCmd::QuasitopGroup { file, group } => {
            let doc = load(&file)?;
            let g = doc
                .group(&group)
                .ok_or(HarnessError::MissingItem { kind: "group", name: group })?;
            let ok = g.is_quasitop_group();
            Ok(verdict(ok, format!("quasitopological group: {ok}")))
        }
    }
}

fn run_formulas(cmd: FormulasCmd) -> crate::Result<i32> {
    match cmd {
        FormulasCmd::Eval { schedule, s, t } => {
            let schedule: Schedule = schedule
                .parse()
                .map_err(|e: finconv_core::Error| HarnessError::Invalid(e.to_string()))?;
            let parse_rat = |text: &str| -> crate::Result<Rational> {
                text.parse()
                    .map_err(|_| HarnessError::Invalid(format!("`{text}` is not a rational")))
            };
            let value = eval(schedule, &parse_rat(&s)?, &parse_rat(&t)?)?;
            println!("{value}");
            Ok(EXIT_OK)
        }
        FormulasCmd::Verify => {
            let report = check_boundaries();
            print!("{report}");
            println!();
            Ok(if report.all_ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn run_mine(args: MineArgs) -> crate::Result<i32> {
    if args.list {
        for p in properties() {
            println!("{:24} {}", p.name, p.about);
        }
        return Ok(EXIT_OK);
    }
    let property = args
        .property
        .ok_or(HarnessError::Invalid("pass --property or --list".into()))?;
    let source = if args.exhaustive {
        InstanceSource::Exhaustive { max_points: args.max_points, up_to_iso: args.up_to_iso }
    } else {
        InstanceSource::Sampled {
            seed: args.seed,
            count: args.count,
            max_points: args.max_points,
        }
    };
    let task = MiningTask { property, source, out_dir: args.out };
    let report = mine(&task)?;
    print!("{}", report.render());
    Ok(if report.ok() { EXIT_OK } else { EXIT_VIOLATION })
}
