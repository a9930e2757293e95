//! The `crs` command line: reads diagram files, dispatches to the library
//! and writes JSON.
//!
//! Exit codes: 0 success, 1 semantic or validation error, 2 parse or usage
//! error, 3 failed internal self-test.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bridge::{kirby1_gadget, pair_pm1_diagram, joint_pairs_to_pm1, BridgeError, GadgetParams};
use crate::calculus::{check_nice, is_fillable_sufficient};
use crate::dividing::{giroux_overtwisted, glue_annuli, layer_to_annulus, ArcConfig, DividingError, Piece};
use crate::dsl::{entry_to_json, load, parse_layer, Diagram, DiagramEntry, DiagramFile, DslError};
use crate::exec::Exec;
use crate::front::{classical_invariants, parse_front_word, Orientation, OrientedFront};
use crate::homology::{dehn_presentation, h1_dehn, h1_round_diagram, H1Class};
use crate::slope::{Basis, SlopeQ, TaggedSlope};
use crate::slopes::{
    enumerate_configurations_with, honda_count, neg_cf, normalize_slopes, BoundaryData, TightCount,
    UnimodularMatrix,
};

#[derive(Debug, Parser)]
#[command(name = "crs", version, about = "Contact Dehn and round surgery diagrams")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Diagram file in the text format or its JSON form; `-` reads stdin.
    file: PathBuf,
    /// Diagram to use when the file holds several.
    #[arg(long)]
    diagram: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a file and print its canonical JSON.
    Parse(Input),
    /// Print a file in canonical text form.
    Fmt(Input),
    /// Classical invariants of front projections.
    Invariants {
        file: Option<PathBuf>,
        #[arg(long)]
        diagram: Option<String>,
        /// A front word such as "U1 C1" instead of a file.
        #[arg(long, conflicts_with = "file")]
        front: Option<String>,
        /// Comma-separated orientations for `--front`.
        #[arg(long, requires = "front", value_delimiter = ',')]
        orient: Vec<String>,
    },
    /// First homology of the surgered manifold, one entry per component.
    Homology(Input),
    /// Rewrite a contact (±1)-surgery diagram as nice joint pairs.
    ToRound {
        #[command(flatten)]
        input: Input,
        /// Round 1-coefficient placed on every pair.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        /// Size parameter of the parity-fixing gadgets.
        #[arg(long, default_value_t = 1)]
        gadget_m: u32,
    },
    /// Realize a diagram of nice joint pairs as contact (±1)-surgery.
    ToPm1(Input),
    /// Niceness of every round 1-surgery.
    CheckNice(Input),
    /// The sufficient fillability condition.
    Fillable(Input),
    /// Negative continued fraction of a slope below -1.
    Cf {
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
    /// Count tight structures on a thickened torus, normalizing the slopes first.
    CountTight {
        #[arg(long, allow_hyphen_values = true)]
        slope0: String,
        #[arg(long, allow_hyphen_values = true)]
        slope1: String,
        #[arg(long, default_value_t = 0)]
        twisting: u32,
        /// Dividing curves on each boundary torus.
        #[arg(long, default_value_t = 2)]
        ndiv: u32,
        /// Dividing curves on the outer torus when it differs from `--ndiv`.
        #[arg(long)]
        ndiv1: Option<u32>,
    },
    /// The SL(2, Z) change of basis taking slope0 to -1.
    NormalizeSlopes {
        #[arg(long, allow_hyphen_values = true)]
        slope0: String,
        #[arg(long, allow_hyphen_values = true)]
        slope1: String,
    },
    /// Dividing-arc configurations on an annulus.
    EnumConfigs {
        #[arg(long)]
        n0: usize,
        #[arg(long)]
        n1: usize,
        #[arg(long, default_value_t = 0)]
        max_winding: u32,
    },
    /// Glue two annuli and apply Giroux's criterion.
    GlueAnnuli {
        /// Arc literal (`top 2 bottom 2: trav(0, 0, 0) trav(1, 1, 0)`) or `layer:<layer>`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Pairs of marks per side for `layer:` arguments.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset_top: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset_bottom: i64,
    },
    /// Build and self-test the cosmetic unknot gadget of size m.
    Gadget {
        #[arg(long)]
        m: i64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn semantic(message: impl Into<String>) -> Self {
        Failure { code: 1, body: json!({ "error": "semantic", "message": message.into() }) }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, body: json!({ "error": "usage", "message": message.into() }) }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure { code: e.exit_code(), body: e.to_json() }
    }
}

impl From<BridgeError> for Failure {
    fn from(e: BridgeError) -> Self {
        match e {
            BridgeError::GadgetSelfTestFailed { .. } => {
                Failure { code: 3, body: json!({ "error": "self_test", "message": e.to_string() }) }
            }
            other => Failure::semantic(other.to_string()),
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn read_input(path: &PathBuf) -> Result<DiagramFile, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(load(&text)?)
}

fn select(input: &Input) -> Result<DiagramEntry, Failure> {
    let file = read_input(&input.file)?;
    Ok(file.select(input.diagram.as_deref())?.clone())
}

fn slope_arg(s: &str) -> Result<SlopeQ, Failure> {
    s.parse().map_err(|e| Failure::usage(format!("bad slope `{s}`: {e}")))
}

fn big_json(n: &BigInt) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => match i64::try_from(n) {
            Ok(v) => json!(v),
            Err(_) => json!(n.to_string()),
        },
    }
}

fn matrix_json(m: &UnimodularMatrix) -> Value {
    json!(m.entries())
}

fn homology_json(classes: &[H1Class]) -> Value {
    json!({ "components": classes })
}

fn round_of(e: &DiagramEntry, command: &str) -> Result<crate::diagram::RoundSurgeryDiagram, Failure> {
    match &e.diagram {
        Diagram::Round(rd) => Ok(rd.clone()),
        Diagram::Contact(_) => Err(Failure::semantic(format!("`{command}` needs a round_diagram"))),
    }
}

fn arc_arg(s: &str, n: usize) -> Result<ArcConfig, Failure> {
    match s.strip_prefix("layer:") {
        Some(layer) => {
            let layer = parse_layer(layer.trim())?;
            layer_to_annulus(&layer, n).map_err(|e| Failure::semantic(e.to_string()))
        }
        None => s.parse().map_err(|e: DividingError| match e {
            DividingError::Syntax(_) => Failure::usage(e.to_string()),
            _ => Failure::semantic(e.to_string()),
        }),
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    let out = match command {
        Command::Parse(input) => {
            let file = read_input(&input.file)?;
            let file = match &input.diagram {
                Some(name) => DiagramFile { diagrams: vec![file.select(Some(name))?.clone()] },
                None => file,
            };
            file.to_json()
        }
        Command::Fmt(input) => {
            let file = read_input(&input.file)?;
            let text = match &input.diagram {
                Some(name) => file.select(Some(name))?.to_dsl(),
                None => file.to_string(),
            };
            return Ok(Output::Text(text));
        }
        Command::Invariants { file, diagram, front, orient } => {
            let groups: Vec<(String, OrientedFront)> = match (file, front) {
                (_, Some(word)) => {
                    let word = parse_front_word(&word)
                        .map_err(|e| Failure { code: 2, body: json!({ "error": "syntax", "message": e.to_string() }) })?;
                    let f = if orient.is_empty() {
                        OrientedFront::forward(word)
                    } else {
                        let o = orient
                            .iter()
                            .map(|s| match s.trim() {
                                "forward" => Ok(Orientation::Forward),
                                "reverse" => Ok(Orientation::Reverse),
                                other => Err(Failure::usage(format!("bad orientation `{other}`"))),
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        OrientedFront::new(word, o).map_err(|e| Failure::semantic(e.to_string()))?
                    };
                    vec![("front".to_string(), f)]
                }
                (Some(path), None) => {
                    let e = select(&Input { file: path, diagram })?;
                    e.fronts.iter().map(|g| (g.label.clone(), g.front.clone())).collect()
                }
                (None, None) => return Err(Failure::usage("give a file or --front")),
            };
            let fronts: Vec<Value> = groups
                .iter()
                .map(|(label, f)| {
                    let inv = classical_invariants(f);
                    let members = crate::dsl::member_labels(label, f.num_components());
                    let comps: Vec<Value> = inv
                        .components
                        .iter()
                        .zip(&members)
                        .map(|(c, l)| {
                            json!({
                                "label": l, "tb": c.tb, "rot": c.rot, "self_writhe": c.self_writhe,
                                "up_cusps": c.up_cusps, "down_cusps": c.down_cusps,
                            })
                        })
                        .collect();
                    let linking: Vec<Value> = inv
                        .linking
                        .iter()
                        .map(|&(i, j, lk)| json!({ "a": members[i], "b": members[j], "lk": lk }))
                        .collect();
                    json!({
                        "label": label,
                        "word": f.word.to_string(),
                        "orient": f.orientation,
                        "components": comps,
                        "linking": linking,
                    })
                })
                .collect();
            json!({ "fronts": fronts })
        }
        Command::Homology(input) => {
            let e = select(&input)?;
            let classes = match &e.diagram {
                Diagram::Contact(d) => vec![h1_dehn(d)],
                Diagram::Round(rd) => h1_round_diagram(rd).map_err(|err| Failure::semantic(err.to_string()))?,
            };
            homology_json(&classes)
        }
        Command::ToRound { input, k, gadget_m } => {
            let e = select(&input)?;
            let Diagram::Contact(d) = &e.diagram else {
                return Err(Failure::semantic("`to-round` needs a contact (±1)-surgery diagram"));
            };
            let (rd, plan) = pair_pm1_diagram(d, k, GadgetParams::uniform(gadget_m))?;
            let out = DiagramEntry { diagram: Diagram::Round(rd), fronts: e.fronts.clone(), spans: Default::default() };
            json!({ "diagrams": [entry_to_json(&out)], "plans": [plan] })
        }
        Command::ToPm1(input) => {
            let e = select(&input)?;
            let rd = round_of(&e, "to-pm1")?;
            let d = joint_pairs_to_pm1(&rd)?;
            let out = DiagramEntry { diagram: Diagram::Contact(d), fronts: e.fronts.clone(), spans: Default::default() };
            json!({ "diagrams": [entry_to_json(&out)] })
        }
        Command::CheckNice(input) => {
            let rd = round_of(&select(&input)?, "check-nice")?;
            let mut all = true;
            let pairs: Vec<Value> = (0..rd.round1.len())
                .map(|i| {
                    let r1 = &rd.round1[i];
                    let mut v = json!({ "index": i, "a": r1.pair.0, "b": r1.pair.1 });
                    match check_nice(&rd, i) {
                        Ok(rep) => {
                            all &= rep.nice;
                            v["equal_coefficients"] = json!(rep.equal_coefficients);
                            v["round2_pm1"] = json!(rep.round2_pm1);
                            v["zero_holonomy_layer"] = json!(rep.zero_holonomy_layer);
                            v["nice"] = json!(rep.nice);
                            if let Some(r) = rep.reason() {
                                v["reason"] = json!(r);
                            }
                        }
                        Err(err) => {
                            all = false;
                            v["nice"] = json!(false);
                            v["reason"] = json!(err.to_string());
                        }
                    }
                    v
                })
                .collect();
            json!({ "all_nice": all, "pairs": pairs })
        }
        Command::Fillable(input) => {
            let rd = round_of(&select(&input)?, "fillable")?;
            json!({ "fillable": is_fillable_sufficient(&rd) })
        }
        Command::Cf { slope } => {
            let s = slope_arg(&slope)?;
            let cf = neg_cf(s).map_err(|e| Failure::semantic(e.to_string()))?;
            json!({ "cf": cf.coefficients() })
        }
        Command::CountTight { slope0, slope1, twisting, ndiv, ndiv1 } => {
            let (s0, s1) = (slope_arg(&slope0)?, slope_arg(&slope1)?);
            let sem = |e: crate::slopes::SlopesError| Failure::semantic(e.to_string());
            let (m, n0, n1) = normalize_slopes(s0, s1).map_err(sem)?;
            let b0 = BoundaryData::new(ndiv, TaggedSlope::new(Basis::Layer, n0)).map_err(sem)?;
            let b1 = BoundaryData::new(ndiv1.unwrap_or(ndiv), TaggedSlope::new(Basis::Layer, n1)).map_err(sem)?;
            let count = honda_count(b0, b1, twisting).map_err(sem)?;
            let mut v = json!({
                "normalized": { "matrix": matrix_json(&m), "slope0": n0, "slope1": n1 },
            });
            match count {
                TightCount::Finite(n) => {
                    v["kind"] = json!("finite");
                    v["count"] = big_json(&n);
                }
                TightCount::TwoPerTwisting => v["kind"] = json!("two_per_twisting"),
                TightCount::InfiniteZIndexed => v["kind"] = json!("infinite_z_indexed"),
                TightCount::Unsupported(why) => {
                    v["kind"] = json!("unsupported");
                    v["reason"] = json!(why);
                }
            }
            v
        }
        Command::NormalizeSlopes { slope0, slope1 } => {
            let (s0, s1) = (slope_arg(&slope0)?, slope_arg(&slope1)?);
            let (m, n0, n1) = normalize_slopes(s0, s1).map_err(|e| Failure::semantic(e.to_string()))?;
            json!({ "matrix": matrix_json(&m), "slope0": n0, "slope1": n1 })
        }
        Command::EnumConfigs { n0, n1, max_winding } => {
            if n0 == 0 || n1 == 0 {
                return Err(Failure::semantic("--n0 and --n1 must be at least 1"));
            }
            let configs = enumerate_configurations_with(n0, n1, max_winding, Exec::Sequential);
            let list: Vec<Value> = configs
                .iter()
                .map(|c| json!({ "winding": c.winding(), "literal": c.to_string(), "arcs": c.arcs }))
                .collect();
            json!({ "count": list.len(), "configs": list })
        }
        Command::GlueAnnuli { a, b, n, offset_top, offset_bottom } => {
            let (a, b) = (arc_arg(&a, n)?, arc_arg(&b, n)?);
            let glued =
                glue_annuli(&a, &b, offset_top, offset_bottom).map_err(|e| Failure::semantic(e.to_string()))?;
            let ot = giroux_overtwisted(&glued).map_err(|e| Failure::semantic(e.to_string()))?;
            let curves: Vec<Value> = glued
                .curves
                .iter()
                .map(|c| {
                    let arcs: Vec<Value> = c
                        .arcs
                        .iter()
                        .map(|(p, i)| json!([if *p == Piece::A { "a" } else { "b" }, i]))
                        .collect();
                    json!({ "class": [c.class.0, c.class.1], "contractible": c.is_contractible(), "arcs": arcs })
                })
                .collect();
            json!({ "curves": curves, "overtwisted": ot })
        }
        Command::Gadget { m } => {
            let d = kirby1_gadget(m)?;
            let det = dehn_presentation(&d).determinant();
            let h1 = h1_dehn(&d);
            json!({
                "diagrams": [entry_to_json(&DiagramEntry::contact(d))],
                "self_test": { "passed": true, "det": big_json(&det), "h1": h1 },
            })
        }
    };
    Ok(Output::Json(out))
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
            } else {
                let body = json!({ "error": "usage", "message": e.to_string().trim_end() });
                Outcome { code: 2, stdout: String::new(), stderr: render(&body, false) }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Json(v)) => Outcome { code: 0, stdout: render(&v, cli.pretty), stderr: String::new() },
        Ok(Output::Text(t)) => Outcome { code: 0, stdout: t, stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: render(&f.body, cli.pretty) },
    }
}
