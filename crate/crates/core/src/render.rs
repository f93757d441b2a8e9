//! Command implementations behind the `mediant` binary, and the text, JSON
//! and DOT renderings they produce. Each `cmd_*` returns the exact stdout
//! payload so the CLI stays a thin argument parser.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::path::Path;
use crate::rational::{farey_sequence, ExtendedRational};
use crate::shadows::{verify_theorem_with, ShadowMaps, VerificationReport};
use crate::stern::{fusc, stern_prefix};
use crate::topograph::{forward_tree, verify_topograph_proof, OrientedVertex, TopographReport};
use crate::tree::{best_approximation, cw_locate, level_iter, sb_locate, TreeKind, TreeNode};
use crate::walk::with_jobs;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_DEPTH_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cw,
    Sb,
    Matrix,
    Topograph,
}

impl Kind {
    fn tree(self) -> Option<TreeKind> {
        match self {
            Kind::Cw => Some(TreeKind::CalkinWilf),
            Kind::Sb => Some(TreeKind::SternBrocot),
            Kind::Matrix => Some(TreeKind::Matrix),
            Kind::Topograph => None,
        }
    }

    fn graph_name(self) -> &'static str {
        match self {
            Kind::Cw => "cw",
            Kind::Sb => "sb",
            Kind::Matrix => "matrix",
            Kind::Topograph => "topograph",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cw" => Ok(Kind::Cw),
            "sb" => Ok(Kind::Sb),
            "matrix" => Ok(Kind::Matrix),
            "topograph" => Ok(Kind::Topograph),
            _ => Err(Error::Unknown {
                what: "kind",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Unknown {
                what: "format",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderConfig {
    pub kind: Kind,
    pub depth: usize,
    pub format: Format,
}

impl RenderConfig {
    pub fn new(kind: Kind, depth: usize, format: Format, cap: usize) -> Result<Self> {
        check_depth(depth, cap)?;
        Ok(Self {
            kind,
            depth,
            format,
        })
    }
}

pub fn check_depth(depth: usize, cap: usize) -> Result<()> {
    if depth > cap {
        Err(Error::DepthCap { depth, cap })
    } else {
        Ok(())
    }
}

fn dot_id(path: &Path) -> String {
    if path.is_empty() {
        "root".to_owned()
    } else {
        path.to_string()
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn frame_text(f: &OrientedVertex) -> String {
    format!("{{{},{}}}->{}", f.left(), f.right(), f.forward())
}

/// One item of a rendered tree: its path, its label, and for DOT the label
/// on the edge from its parent.
struct Item {
    path: Path,
    label: String,
    edge_label: Option<String>,
}

fn render_items(kind: Kind, format: Format, items: &[Item], json: String) -> String {
    match format {
        Format::Json => json + "\n",
        Format::Text => {
            let mut out = String::new();
            let mut level = 0;
            let mut first = true;
            for item in items {
                if item.path.len() != level {
                    out.push('\n');
                    level = item.path.len();
                    first = true;
                }
                if !first {
                    out.push(' ');
                }
                out.push_str(&item.label);
                first = false;
            }
            out.push('\n');
            out
        }
        Format::Dot => {
            let mut out = format!("digraph {} {{\n    node [shape=box];\n", kind.graph_name());
            for item in items {
                let _ = writeln!(
                    out,
                    "    \"{}\" [label=\"{}\"];",
                    dot_id(&item.path),
                    dot_escape(&item.label)
                );
            }
            for item in items {
                let mut parent = item.path.clone();
                if parent.pop().is_none() {
                    continue;
                }
                let _ = write!(out, "    \"{}\" -> \"{}\"", dot_id(&parent), dot_id(&item.path));
                match &item.edge_label {
                    Some(l) => {
                        let _ = writeln!(out, " [label=\"{}\"];", dot_escape(l));
                    }
                    None => out.push_str(";\n"),
                }
            }
            out.push_str("}\n");
            out
        }
    }
}

/// Renders `config.depth + 1` levels of the chosen tree.
pub fn cmd_tree(config: &RenderConfig) -> String {
    match config.kind.tree() {
        Some(tree) => {
            let nodes: Vec<TreeNode> = level_iter(tree, config.depth).collect();
            let items: Vec<Item> = nodes
                .iter()
                .map(|n| Item {
                    path: n.path.clone(),
                    label: n.value.to_string(),
                    edge_label: None,
                })
                .collect();
            let json = if config.format == Format::Json {
                serde_json::to_string(&nodes).expect("tree nodes serialize")
            } else {
                String::new()
            };
            render_items(config.kind, config.format, &items, json)
        }
        None => cmd_topograph(config.depth, config.format),
    }
}

/// The forward flow of the topograph; JSON frames are
/// `{path, left, right, forward}`.
pub fn cmd_topograph(depth: usize, format: Format) -> String {
    let frames = forward_tree(depth);
    let items: Vec<Item> = frames
        .iter()
        .map(|f| {
            let (l, r) = f.incoming_pair();
            Item {
                path: f.path().clone(),
                label: frame_text(f),
                edge_label: Some(format!("{l},{r}")),
            }
        })
        .collect();
    let json = if format == Format::Json {
        serde_json::to_string(&frames).expect("frames serialize")
    } else {
        String::new()
    };
    render_items(Kind::Topograph, format, &items, json)
}

/// Where a value sits in a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub path: Path,
    pub bfs_index: BigUint,
}

fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    // JSON numbers when they fit, decimal strings beyond u64
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.collect_str(n),
    }
}

impl Serialize for Located {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            path: &'a Path,
            #[serde(serialize_with = "serialize_big")]
            bfs_index: &'a BigUint,
        }
        Repr {
            path: &self.path,
            bfs_index: &self.bfs_index,
        }
        .serialize(s)
    }
}

pub fn cmd_locate(tree: TreeKind, value: &str) -> Result<Located> {
    let q: ExtendedRational = value.parse()?;
    let path = match tree {
        TreeKind::CalkinWilf => cw_locate(&q)?,
        TreeKind::SternBrocot => sb_locate(&q)?,
        TreeKind::Matrix => {
            return Err(Error::Unknown {
                what: "tree for locate",
                value: "matrix".to_owned(),
            })
        }
    };
    let bfs_index = path.bfs_index();
    Ok(Located { path, bfs_index })
}

/// Both verification reports from one `verify` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub theorem: VerificationReport,
    pub topograph: TopographReport,
}

impl VerifyOutcome {
    pub fn is_success(&self) -> bool {
        self.theorem.is_success() && self.topograph.is_success()
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_success() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }

    /// The earliest failing path across both reports.
    pub fn first_failure(&self) -> Option<&Path> {
        let a = self.theorem.first_failure_path.as_ref();
        let b = self.topograph.first_failure_path.as_ref();
        match (a, b) {
            (Some(a), Some(b)) => Some(if a.bfs_cmp(b).is_le() { a } else { b }),
            (a, b) => a.or(b),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

pub fn cmd_verify(depth: usize, jobs: Option<usize>, cap: usize) -> Result<VerifyOutcome> {
    cmd_verify_with(depth, jobs, cap, ShadowMaps::default())
}

pub fn cmd_verify_with(
    depth: usize,
    jobs: Option<usize>,
    cap: usize,
    maps: ShadowMaps,
) -> Result<VerifyOutcome> {
    check_depth(depth, cap)?;
    Ok(with_jobs(jobs, || VerifyOutcome {
        theorem: verify_theorem_with(depth, maps),
        topograph: verify_topograph_proof(depth),
    }))
}

/// Parses `p/q`, an integer, or a decimal such as `3.14159`; decimals become
/// digits over a power of ten, exactly.
pub fn parse_target(text: &str) -> Result<ExtendedRational> {
    let t = text.trim();
    if t.contains('/') {
        return t.parse();
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(Error::parse(text, "expected a fraction or a decimal number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().expect("validated digits");
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    ExtendedRational::reduce(num, den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub target: ExtendedRational,
    pub value: ExtendedRational,
    pub error: ExtendedRational,
}

pub fn cmd_approx(target: &str, max_den: &BigUint) -> Result<Approximation> {
    let target = parse_target(target)?;
    if !target.is_positive_finite() {
        return Err(Error::NotPositiveFinite(target.to_string()));
    }
    if max_den.is_zero() {
        return Err(Error::ZeroMaxDenominator);
    }
    let value = best_approximation(
        target.numer().clone(),
        target.denom().clone(),
        BigInt::from(max_den.clone()),
    )?;
    let error = value.abs_diff(&target).expect("both finite");
    Ok(Approximation {
        target,
        value,
        error,
    })
}

/// The Farey sequence of order `max_den` as a JSON array of fraction strings.
pub fn cmd_farey(max_den: u64) -> Result<String> {
    let seq = farey_sequence(max_den)?;
    Ok(serde_json::to_string(&seq).expect("fractions serialize") + "\n")
}

/// `s(0)` through `s(count - 1)`, one per line.
pub fn cmd_stern(count: u64) -> String {
    stern_prefix(count)
        .iter()
        .map(|v| format!("{v}\n"))
        .collect()
}

pub fn cmd_fusc(n: u64) -> String {
    format!("{}\n", fusc(n))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shadows::{cw_shadow, farey_shadow};

    fn config(kind: Kind, depth: usize, format: Format) -> RenderConfig {
        RenderConfig::new(kind, depth, format, DEFAULT_DEPTH_CAP).unwrap()
    }

    #[test]
    fn tree_text() {
        let out = cmd_tree(&config(Kind::Cw, 2, Format::Text));
        assert_eq!(out, "1/1\n1/2 2/1\n1/3 3/2 2/3 3/1\n");
    }

    #[test]
    fn tree_json_matrix() {
        let out = cmd_tree(&config(Kind::Matrix, 1, Format::Json));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr[0], serde_json::json!({"path": "", "value": "[[1,0],[0,1]]"}));
        assert_eq!(arr[2]["value"], "[[1,1],[0,1]]");
    }

    #[test]
    fn tree_dot_single_node() {
        let out = cmd_tree(&config(Kind::Sb, 0, Format::Dot));
        assert!(out.contains("\"root\" [label=\"1/1\"];"));
        assert!(!out.contains("->"));
    }

    #[test]
    fn tree_json_values_parse_back() {
        for kind in [Kind::Cw, Kind::Sb] {
            let out = cmd_tree(&config(kind, 6, Format::Json));
            let v: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
            for node in v {
                let text = node["value"].as_str().unwrap();
                let parsed: ExtendedRational = text.parse().unwrap();
                let again = ExtendedRational::reduce(parsed.numer().clone(), parsed.denom().clone()).unwrap();
                assert_eq!(again.to_string(), text);
            }
        }
    }

    #[test]
    fn depth_cap_enforced() {
        assert_eq!(
            RenderConfig::new(Kind::Cw, 21, Format::Text, DEFAULT_DEPTH_CAP),
            Err(Error::DepthCap { depth: 21, cap: 20 })
        );
        assert!(RenderConfig::new(Kind::Cw, 21, Format::Text, 25).is_ok());
        assert!(cmd_verify(21, None, DEFAULT_DEPTH_CAP).is_err());
    }

    #[test]
    fn kind_and_format_parse() {
        assert_eq!("topograph".parse::<Kind>().unwrap(), Kind::Topograph);
        assert!("bird".parse::<Kind>().is_err());
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert!("svg".parse::<Format>().is_err());
    }

    #[test]
    fn locate_examples() {
        let cw = cmd_locate(TreeKind::CalkinWilf, "4/3").unwrap();
        assert_eq!(cw.path.to_string(), "LLR");
        // 0-based breadth-first rank; 4/3 is the ninth entry
        assert_eq!(cw.bfs_index, BigUint::from(8u32));
        assert_eq!(to_json(&cw), "{\"path\":\"LLR\",\"bfs_index\":8}\n");
        let sb = cmd_locate(TreeKind::SternBrocot, "1/1").unwrap();
        assert_eq!((sb.path.to_string(), sb.bfs_index), (String::new(), BigUint::zero()));
        assert_eq!(cmd_locate(TreeKind::SternBrocot, "2/5").unwrap().path.to_string(), "LLR");
        assert!(cmd_locate(TreeKind::SternBrocot, "0/1").is_err());
        assert!(cmd_locate(TreeKind::SternBrocot, "abc").is_err());
        assert!(cmd_locate(TreeKind::Matrix, "1/1").is_err());
    }

    #[test]
    fn huge_rank_serializes_as_string() {
        let far = cmd_locate(TreeKind::SternBrocot, "100/1").unwrap();
        assert_eq!(far.path.len(), 99);
        let json: serde_json::Value = serde_json::from_str(&to_json(&far)).unwrap();
        assert!(json["bfs_index"].is_string());
    }

    #[test]
    fn verify_outcomes() {
        let ok = cmd_verify(0, None, DEFAULT_DEPTH_CAP).unwrap();
        assert_eq!(ok.exit_code(), EXIT_OK);
        let ok12 = cmd_verify(12, Some(2), DEFAULT_DEPTH_CAP).unwrap();
        assert_eq!(ok12.exit_code(), EXIT_OK);
        assert_eq!(ok12.theorem.nodes, 8191);
        assert_eq!(ok12.topograph.nodes, 8191);

        fn broken_farey(m: &crate::Mat2) -> ExtendedRational {
            // numerator and denominator of the Farey map exchanged
            farey_shadow(m).recip()
        }
        let maps = ShadowMaps {
            cw: cw_shadow,
            farey: broken_farey,
        };
        let bad = cmd_verify_with(3, Some(1), DEFAULT_DEPTH_CAP, maps).unwrap();
        assert_eq!(bad.exit_code(), EXIT_VERIFY_FAILED);
        // 1/1 is its own reciprocal; the first mismatch is at L
        assert_eq!(bad.first_failure().unwrap().to_string(), "L");
        assert!(bad.to_json().contains("\"first_failure_path\": \"L\""));
    }

    #[test]
    fn parse_target_forms() {
        assert_eq!(parse_target("3.14159").unwrap(), ExtendedRational::ratio(314159, 100000));
        assert_eq!(parse_target("1/2").unwrap(), ExtendedRational::ratio(1, 2));
        assert_eq!(parse_target("7").unwrap(), ExtendedRational::ratio(7, 1));
        assert_eq!(parse_target(".5").unwrap(), ExtendedRational::ratio(1, 2));
        assert_eq!(parse_target("-0.25").unwrap(), ExtendedRational::ratio(-1, 4));
        for bad in ["", ".", "3.1.4", "1e5", "pi", "1/"] {
            assert!(parse_target(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn approx_examples() {
        let ten = BigUint::from(10u32);
        let a = cmd_approx("3.14159", &ten).unwrap();
        assert_eq!(a.value.to_string(), "22/7");
        assert_eq!(a.error, ExtendedRational::ratio(22, 7).abs_diff(&a.target).unwrap());
        let b = cmd_approx("1/2", &BigUint::from(100u32)).unwrap();
        assert_eq!((b.value.to_string(), b.error.to_string()), ("1/2".into(), "0/1".into()));
        let c = cmd_approx("355/113", &BigUint::from(112u32)).unwrap();
        assert_eq!(c.value.to_string(), "333/106");
        assert_eq!(c.error.to_string(), "1/11978");
        assert!(cmd_approx("x", &ten).is_err());
        assert!(cmd_approx("-1/2", &ten).is_err());
        assert!(cmd_approx("1/2", &BigUint::zero()).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(cmd_stern(6), "0\n1\n1\n2\n1\n3\n");
        assert_eq!(cmd_fusc(8), "4\n");
        assert_eq!(cmd_farey(3).unwrap(), "[\"0/1\",\"1/3\",\"1/2\",\"2/3\",\"1/1\"]\n");
        assert!(cmd_farey(0).is_err());
    }

    #[test]
    fn topograph_renderings() {
        assert_eq!(cmd_topograph(1, Format::Text), "{0/1,1/0}->1/1\n{0/1,1/1}->1/2 {1/1,1/0}->2/1\n");
        let json: serde_json::Value = serde_json::from_str(&cmd_topograph(1, Format::Json)).unwrap();
        assert_eq!(json[0], serde_json::json!({"path": "", "left": "0/1", "right": "1/0", "forward": "1/1"}));
        let dot = cmd_topograph(2, Format::Dot);
        assert_eq!(dot.matches("->").count() - dot.matches("}->").count(), 6);
        assert!(dot.contains("\"root\" -> \"L\" [label=\"0/1,1/1\"];"));
    }
}
