mod svg;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use convgeom::bodies::{
    convex_position, geometry_from_bodies, sweep_orderings, BodyConfig, BodyError, BodyFamily,
};
use convgeom::dimension::{cdim_with_witness, crosspolytope_geometry, generating_orderings, geometry_from_points};
use convgeom::ellipsoid::{
    represent_ellipsoids, verify_isomorphism_ellipsoid, AxisEllipsoid, EllipsoidFailure, OracleOptions,
};
use convgeom::exact::parse_rational;
use convgeom::geometry::{check_anti_exchange, check_axioms, FnClosure, SetFamily};
use convgeom::io::{
    from_json, to_json, BodiesDoc, EllipsoidDoc, GeometryDoc, IoError, OrderingsDoc, PointsDoc, RepresentationDoc,
};
use convgeom::planar::{first_disagreement, represent_planar, PlanarError, PlanarOptions, ShapeMode};
use convgeom::{ConvexGeometry, GroundSet, OrderingFamily, Subset};

const SCHEMAS: &str = "\
JSON documents:
  orderings  {\"elements\": [\"a\",...], \"orders\": [[permutation of 0..n-1], ...]}  (least element first)
  geometry   {\"elements\": [\"a\",...], \"convex_sets\": [[indices], ...]}
  points     {\"dim\": d, \"points\": [{\"label\": \"p\", \"coords\": [\"p/q\", ...]}]}
  bodies     {\"bodies\": [{\"label\": \"K\", \"kind\": \"circle\", \"center\": [x,y], \"r\": r}
                         | {\"label\", \"kind\": \"ellipse\", \"center\", \"a\", \"b\", \"theta\"}
                         | {\"label\", \"kind\": \"polygon\", \"vertices\": [[x,y], ...]}   (counterclockwise)
                         | {\"label\", \"kind\": \"sampled\", \"vertices\": [[x,y], ...]}]}
  planar representation    {\"frame\": {\"mode\", \"m\", \"epsilon\", \"directions\"}, \"orderings\",
                            \"elements\": [{\"label\", \"places\", \"rho1\", \"rho2\", \"inner\", \"outer\"}],
                            \"shape\", \"bodies\"}
  ellipsoid representation {\"dim\", \"s\", \"elements\": [{\"label\", \"semiaxes\"}], \"orderings_used\"}
Numbers may be JSON numbers or strings such as \"1/3\" or \"-0.25\"; rationals are written as \"p/q\".

Exit codes: 0 success or valid, 1 verified invalid, 2 input error, 3 inconclusive within tolerance.";

#[derive(Parser)]
#[command(name = "convgeom", version, about = "Finite convex geometries and their geometric representations", after_help = SCHEMAS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Files {
    /// Input document (stdin when omitted or "-").
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output document (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Oracle {
    /// Random directions for the sampled containment oracle.
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Margin below which a sampled containment counts as a violation.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Orderings -> the geometry they generate.
    Gen(Files),
    /// Check the axioms and the anti-exchange property of a set family.
    Check(Files),
    /// Convex dimension with the copoints and a maximum antichain.
    Cdim(Files),
    /// Geometry of the origin and the vertices of the n-dimensional crosspolytope.
    Crosspolytope {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rational point configuration -> its affine convex geometry.
    Points(Files),
    /// Orderings (or a geometry) -> planar representation by pinched convex bodies.
    RepresentPlanar {
        #[command(flatten)]
        files: Files,
        /// Number of directions (default: number of orderings, at least 3).
        #[arg(long)]
        m: Option<usize>,
        /// Width of the pinching annulus, e.g. "1/100" (default: derived from m).
        #[arg(long)]
        epsilon: Option<String>,
        /// inner-polygon, outer-polygon, midpoint-polygon or semialgebraic.
        #[arg(long, default_value = "inner-polygon")]
        shape: String,
        /// Rational unit directions instead of rounded cosines and sines.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
    /// Orderings (or a geometry) -> axis-aligned ellipsoids, verified by the sampled oracle.
    RepresentEllipsoid {
        #[command(flatten)]
        files: Files,
        /// Largest semi-axis.
        #[arg(long, default_value_t = 1.5)]
        s: f64,
        #[command(flatten)]
        oracle: Oracle,
    },
    /// Bodies -> derived geometry, crossing counts and the crossing bound on cdim.
    Derive {
        #[command(flatten)]
        files: Files,
        /// Hull containment margin treated as inconclusive.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Compare a geometry with a planar or ellipsoid representation (or a bodies document).
    VerifyIso {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        representation: PathBuf,
        #[command(flatten)]
        oracle: Oracle,
    },
    /// Whether the bodies (all, or the labels in --subset) are in convex position.
    ConvexPosition {
        #[command(flatten)]
        files: Files,
        /// Comma-separated labels.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

enum Verdict {
    Valid,
    Invalid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Valid) => ExitCode::SUCCESS,
        Ok(Verdict::Invalid) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let body = e
        .downcast_ref::<BodyError>()
        .or_else(|| match e.downcast_ref::<PlanarError>() {
            Some(PlanarError::Body(b)) => Some(b),
            _ => None,
        });
    match body {
        Some(BodyError::ToleranceInconclusive { .. } | BodyError::NoRegularDirection { .. }) => 3,
        _ => 2,
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes the main artifact. Reports go to stdout when the artifact went to a
/// file and to stderr otherwise, so that stdout stays a single document.
struct Sink {
    to_file: bool,
}

impl Sink {
    fn emit(output: &Option<PathBuf>, text: &str) -> anyhow::Result<Sink> {
        match output {
            Some(p) => {
                write_file(p, text)?;
                Ok(Sink { to_file: true })
            }
            None => {
                print!("{text}");
                Ok(Sink { to_file: false })
            }
        }
    }

    fn report(&self, line: &str) {
        if self.to_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn load_geometry(text: &str) -> anyhow::Result<ConvexGeometry> {
    Ok(from_json::<GeometryDoc>(text)?.to_geometry()?)
}

/// Orderings documents are used as given; geometries are turned into
/// `cdim` generating orderings first.
fn load_orderings(text: &str) -> anyhow::Result<OrderingFamily> {
    let v: Value = serde_json::from_str(text).map_err(IoError::from)?;
    if v.get("orders").is_some() {
        Ok(from_json::<OrderingsDoc>(text)?.to_orderings()?)
    } else if v.get("convex_sets").is_some() {
        Ok(generating_orderings(&load_geometry(text)?))
    } else {
        Err(IoError::Schema("expected an orderings or geometry document".into()).into())
    }
}

fn body_config(tolerance: Option<f64>) -> anyhow::Result<BodyConfig> {
    let mut cfg = BodyConfig::default();
    if let Some(t) = tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(IoError::Schema(format!("--tolerance must be positive, got {t}")).into());
        }
        cfg.tau = t;
    }
    Ok(cfg)
}

fn oracle_options(o: &Oracle) -> anyhow::Result<OracleOptions> {
    if !(o.tolerance >= 0.0 && o.tolerance.is_finite()) {
        return Err(IoError::Schema(format!("--tolerance must be non-negative, got {}", o.tolerance)).into());
    }
    Ok(OracleOptions { samples: o.samples, seed: o.seed, tau: o.tolerance })
}

fn run(command: Command) -> anyhow::Result<Verdict> {
    match command {
        Command::Gen(f) => {
            let o = from_json::<OrderingsDoc>(&read_input(&f.input)?)?.to_orderings()?;
            let g = convgeom::geometry::geometry_from_orderings(&o)?;
            Sink::emit(&f.output, &to_json(&GeometryDoc::from_geometry(&g)))?;
            Ok(Verdict::Valid)
        }
        Command::Check(f) => check(&f),
        Command::Cdim(f) => cdim(&f),
        Command::Crosspolytope { n, output } => {
            let g = crosspolytope_geometry(n)?;
            Sink::emit(&output, &to_json(&GeometryDoc::from_geometry(&g)))?;
            Ok(Verdict::Valid)
        }
        Command::Points(f) => {
            let c = from_json::<PointsDoc>(&read_input(&f.input)?)?.to_config()?;
            let g = geometry_from_points(&c)?;
            Sink::emit(&f.output, &to_json(&GeometryDoc::from_geometry(&g)))?;
            Ok(Verdict::Valid)
        }
        Command::RepresentPlanar { files, m, epsilon, shape, exact, svg_out } => {
            let orderings = load_orderings(&read_input(&files.input)?)?;
            let shape = ShapeMode::from_name(&shape).ok_or_else(|| {
                IoError::Schema(format!(
                    "unknown shape {shape:?}; expected one of {}",
                    ShapeMode::ALL.map(ShapeMode::name).join(", ")
                ))
            })?;
            let epsilon = epsilon.map(|e| parse_rational(&e)).transpose().map_err(IoError::from)?;
            let opts = PlanarOptions { m, epsilon, exact, shape, ..Default::default() };
            let rep = represent_planar(&orderings, &opts)?;
            let sink = Sink::emit(&files.output, &to_json(&RepresentationDoc::from_representation(&rep)))?;
            sink.report(&format!(
                "m={}, epsilon={}, shape={}, {} elements",
                rep.frame.m(),
                convgeom::exact::format_rational(rep.frame.epsilon()),
                rep.shape.name(),
                rep.bodies.len()
            ));
            if let Some(p) = svg_out {
                write_file(&p, &svg::render_svg(&rep))?;
            }
            Ok(Verdict::Valid)
        }
        Command::RepresentEllipsoid { files, s, oracle } => {
            let text = read_input(&files.input)?;
            let orderings = load_orderings(&text)?;
            let geometry = convgeom::geometry::geometry_from_orderings(&orderings)?;
            let rep = represent_ellipsoids(&orderings, s)?;
            let sink = Sink::emit(&files.output, &to_json(&EllipsoidDoc::from_representation(&rep)))?;
            let report = verify_isomorphism_ellipsoid(&geometry, &rep, &oracle_options(&oracle)?)?;
            report_ellipsoid(&sink, &geometry, &report);
            Ok(if report.holds() { Verdict::Valid } else { Verdict::Invalid })
        }
        Command::Derive { files, tolerance } => derive(&files, tolerance),
        Command::VerifyIso { files, representation, oracle } => verify_iso(&files, &representation, &oracle),
        Command::ConvexPosition { files, subset, tolerance } => {
            let family = from_json::<BodiesDoc>(&read_input(&files.input)?)?.to_family()?;
            let ground = GroundSet::new(family.labels().iter().cloned())?;
            let s = match subset {
                None => ground.full(),
                Some(list) => {
                    let mut s = Subset::EMPTY;
                    for label in list.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                        let i = ground
                            .index_of(label)
                            .ok_or_else(|| IoError::Schema(format!("unknown body label {label:?}")))?;
                        s = s.with(i);
                    }
                    s
                }
            };
            let yes = convex_position(&family, s, &body_config(tolerance)?)?;
            let line = format!("{}: {}", ground.format_subset(s), if yes { "convex position" } else { "not in convex position" });
            Sink::emit(&files.output, &format!("{line}\n"))?;
            Ok(if yes { Verdict::Valid } else { Verdict::Invalid })
        }
    }
}

fn check(f: &Files) -> anyhow::Result<Verdict> {
    let doc = from_json::<GeometryDoc>(&read_input(&f.input)?)?;
    let ground = GroundSet::new(doc.elements.iter().cloned())?;
    let family = SetFamily::from_index_lists(ground.clone(), &doc.convex_sets)?;
    let axioms = check_axioms(&family);
    let members = family.members().to_vec();
    let n = ground.len();
    let op = FnClosure::new(n, |x: Subset| {
        members.iter().filter(|c| x.is_subset_of(**c)).fold(Subset::full(n), |acc, c| acc.intersection(*c))
    });
    let anti = check_anti_exchange(&op)?;
    let mut lines = vec![match axioms.violation {
        None => "axioms: OK".to_string(),
        Some(v) => format!("axioms: FAIL ({v})"),
    }];
    lines.push(match anti.violation {
        None => "anti-exchange: OK".to_string(),
        Some(v) => format!("anti-exchange: FAIL ({v:?})"),
    });
    Sink::emit(&f.output, &(lines.join("\n") + "\n"))?;
    Ok(if axioms.valid() && anti.valid() { Verdict::Valid } else { Verdict::Invalid })
}

fn cdim(f: &Files) -> anyhow::Result<Verdict> {
    let g = load_geometry(&read_input(&f.input)?)?;
    let (poset, antichain) = cdim_with_witness(&g);
    let ground = g.ground();
    let mut out = format!("{}\n", antichain.width);
    out.push_str(&format!("copoints: {}\n", poset.copoints.len()));
    for c in &poset.copoints {
        out.push_str(&format!("  {} attached to {}\n", ground.format_subset(c.set), ground.label(c.attached)));
    }
    let sets: Vec<String> = antichain.sets.iter().map(|s| ground.format_subset(*s)).collect();
    out.push_str(&format!("antichain: {}\n", sets.join(" ")));
    Sink::emit(&f.output, &out)?;
    Ok(Verdict::Valid)
}

fn derive(files: &Files, tolerance: Option<f64>) -> anyhow::Result<Verdict> {
    let family = from_json::<BodiesDoc>(&read_input(&files.input)?)?.to_family()?;
    let cfg = body_config(tolerance)?;
    let g = geometry_from_bodies(&family, &cfg)?;
    let sweep = sweep_orderings(&family, &cfg)?;
    let sink = Sink::emit(&files.output, &to_json(&GeometryDoc::from_geometry(&g)))?;
    let n = family.len();
    let k = sweep.max_pair_crossings;
    let dim = convgeom::dimension::cdim(&g);
    sink.report(&format!(
        "crossings: {} in total over {} pairs, regular orderings: {}",
        sweep.crossings,
        sweep.pairs.len(),
        sweep.orderings.m()
    ));
    let regenerated = convgeom::geometry::geometry_from_orderings(&sweep.orderings)? == g;
    sink.report(&format!("sweep regenerates geometry: {}", if regenerated { "OK" } else { "FAIL" }));
    if n < 2 {
        sink.report(&format!("k=0, cdim {dim}: bound needs at least two bodies"));
        return Ok(if regenerated { Verdict::Valid } else { Verdict::Invalid });
    }
    let bound = k * n * (n - 1) / 2;
    let ok = dim <= bound;
    let rel = if ok { "≤" } else { ">" };
    sink.report(&format!("k={k}, bound {bound}, cdim {dim} {rel} {bound}: {}", if ok { "OK" } else { "FAIL" }));
    Ok(if ok && regenerated { Verdict::Valid } else { Verdict::Invalid })
}

/// Puts `family` in the element order of `ground`, matching by label.
fn align(family: BodyFamily, ground: &GroundSet) -> anyhow::Result<BodyFamily> {
    if family.len() != ground.len() {
        bail!(IoError::Schema(format!(
            "geometry has {} elements but the representation has {} bodies",
            ground.len(),
            family.len()
        )));
    }
    let mut bodies = Vec::with_capacity(ground.len());
    for label in ground.labels() {
        let i = family
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| IoError::Schema(format!("no body labelled {label:?}")))?;
        bodies.push(family.body(i).clone());
    }
    Ok(BodyFamily::new(ground.labels().to_vec(), bodies)?)
}

fn verify_iso(files: &Files, representation: &Path, oracle: &Oracle) -> anyhow::Result<Verdict> {
    let geometry = load_geometry(&read_input(&files.input)?)?;
    let text = fs::read_to_string(representation).with_context(|| format!("reading {}", representation.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(IoError::from)?;
    if v.get("semiaxes").is_some() || v.get("orderings_used").is_some() {
        return verify_ellipsoid_doc(files, &geometry, &from_json::<EllipsoidDoc>(&text)?, oracle);
    }
    let family = if v.get("frame").is_some() {
        from_json::<RepresentationDoc>(&text)?.to_family()?
    } else if v.get("bodies").is_some() {
        from_json::<BodiesDoc>(&text)?.to_family()?
    } else {
        bail!(IoError::Schema("expected a planar representation, ellipsoid representation or bodies document".into()));
    };
    let family = align(family, geometry.ground())?;
    let derived = geometry_from_bodies(&family, &BodyConfig::default())?;
    let verdict = match first_disagreement(&geometry, &derived) {
        None => "isomorphism: OK".to_string(),
        Some(w) => format!(
            "isomorphism: FAIL ({} is {}convex in the geometry but {}convex for the bodies)",
            geometry.ground().format_subset(w.subset),
            if w.convex_in_abstract { "" } else { "not " },
            if w.convex_in_abstract { "not " } else { "" }
        ),
    };
    let ok = verdict.ends_with("OK");
    Sink::emit(&files.output, &format!("{verdict}\n"))?;
    Ok(if ok { Verdict::Valid } else { Verdict::Invalid })
}

fn verify_ellipsoid_doc(
    files: &Files,
    geometry: &ConvexGeometry,
    doc: &EllipsoidDoc,
    oracle: &Oracle,
) -> anyhow::Result<Verdict> {
    let labels: Vec<&String> = doc.elements.iter().map(|e| &e.label).collect();
    if labels.len() != geometry.n() || labels.iter().zip(geometry.ground().labels()).any(|(a, b)| *a != b) {
        bail!(IoError::Schema("ellipsoid elements must match the geometry's elements in order".into()));
    }
    let orderings = OrderingFamily::new(geometry.ground().clone(), doc.orderings_used.clone())?;
    let mut rep = represent_ellipsoids(&orderings, doc.s)?;
    if rep.dim() != doc.dim {
        bail!(IoError::Schema(format!("dim {} does not match the {} orderings used", doc.dim, rep.dim())));
    }
    rep.ellipsoids = doc
        .elements
        .iter()
        .map(|e| AxisEllipsoid::new(e.semiaxes.clone()))
        .collect::<Result<_, _>>()?;
    let report = verify_isomorphism_ellipsoid(geometry, &rep, &oracle_options(oracle)?)?;
    let line = if report.holds() { "isomorphism: OK" } else { "isomorphism: FAIL" };
    let sink = Sink::emit(&files.output, &format!("{line}\n"))?;
    report_ellipsoid(&sink, geometry, &report);
    Ok(if report.holds() { Verdict::Valid } else { Verdict::Invalid })
}

fn report_ellipsoid(sink: &Sink, geometry: &ConvexGeometry, report: &convgeom::ellipsoid::EllipsoidReport) {
    let ground = geometry.ground();
    sink.report(&format!(
        "checked {} convex and {} non-convex subsets; identity residual {:.3e}; min oracle margin {:.3e}",
        report.convex_checked, report.nonconvex_checked, report.max_identity_residual, report.min_oracle_margin
    ));
    for f in report.failures.iter().take(10) {
        let line = match f {
            EllipsoidFailure::NoSeparatingAxis { subset, element } => {
                format!("no axis separates {} from {}", ground.label(*element), ground.format_subset(*subset))
            }
            EllipsoidFailure::NoDominatingWitness { subset, element } => {
                format!("{} is not dominated by {}", ground.label(*element), ground.format_subset(*subset))
            }
            EllipsoidFailure::AnalyticChain { subset, element, axis } => format!(
                "semi-axis chain fails on axis {axis} for {} over {}",
                ground.label(*element),
                ground.format_subset(*subset)
            ),
            EllipsoidFailure::OracleViolation { subset, element, margin, .. } => format!(
                "oracle: {} sticks out of the hull of {} by {:.3e}",
                ground.label(*element),
                ground.format_subset(*subset),
                -margin
            ),
            EllipsoidFailure::DerivedMismatch(w) => {
                format!("sampled geometry disagrees on {}", ground.format_subset(w.subset))
            }
        };
        sink.report(&format!("FAIL: {line}"));
    }
}
