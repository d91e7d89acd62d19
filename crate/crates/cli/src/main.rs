//! Batch front-end for the rank-2 scattering engine.
//!
//! Every subcommand prints deterministic JSON (object keys sorted, fixed
//! pretty-printing) except `verify`, which prints an aligned text report of
//! cross-route checks and exits nonzero on the first mismatch.  Coefficients
//! are universal polynomials in the initial-wall coefficients `p{i}_{k}`
//! unless a `--spec` map evaluates them to numbers.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use scatter2::broken::{point, theta, Point};
use scatter2::dyck::{enumerate_weighted, maximal_dyck_path, sums_by_totals, GradingKind};
use scatter2::greedy::{greedy_element, GreedyCtx};
use scatter2::invariants::{euler_char, gw_invariant, Framing};
use scatter2::poly::{Laurent, PMonomial, PPoly, Side};
use scatter2::scatter::{ks_complete, wall_fn_via_gradings, wall_fn_via_greedy, Diagram};

#[derive(Parser)]
#[command(
    name = "scatter2",
    version,
    about = "Exact wall functions, gradings, theta functions and curve counts for rank-2 scattering diagrams"
)]
struct Cli {
    /// Exchange degree on side one (slots p1_1 .. p1_l1).
    #[arg(long, global = true, default_value_t = 1)]
    l1: usize,
    /// Exchange degree on side two (slots p2_1 .. p2_l2).
    #[arg(long, global = true, default_value_t = 1)]
    l2: usize,
    /// Truncation order: total coefficient weight kept in series output.
    #[arg(long, global = true, default_value_t = 6)]
    order: u32,
    /// Coefficient specialization as inline JSON, e.g. '{"p1_1": 1, "p2_2": "1/3"}'.
    /// Unlisted coefficients evaluate to 0.
    #[arg(long, global = true)]
    spec: Option<String>,
    /// Scalar domain for specialized output.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Integer)]
    mode: Mode,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Integer,
    Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum WallMethod {
    /// Partial sums of greedy coefficients (fast).
    Greedy,
    /// Brute-force enumeration of tight gradings (slow oracle).
    Tight,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    All,
    Compatible,
    Shadowed,
    ShadowedPlus,
    ShadowedMinus,
    Tight,
}

impl KindArg {
    fn kind(self) -> GradingKind {
        match self {
            KindArg::All => GradingKind::All,
            KindArg::Compatible => GradingKind::Compatible,
            KindArg::Shadowed => GradingKind::Shadowed,
            KindArg::ShadowedPlus => GradingKind::ShadowedPlus,
            KindArg::ShadowedMinus => GradingKind::ShadowedMinus,
            KindArg::Tight => GradingKind::Tight,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KindArg::All => "all",
            KindArg::Compatible => "compatible",
            KindArg::Shadowed => "shadowed",
            KindArg::ShadowedPlus => "shadowed-plus",
            KindArg::ShadowedMinus => "shadowed-minus",
            KindArg::Tight => "tight",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FramingArg {
    /// Framing copies on side two; read off just above the ray.
    Back,
    /// Framing copies on side one; read off just below the ray.
    Front,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete the standard diagram and print every nontrivial ray.
    Scat,
    /// Wall function of one ray, slot by slot.
    Wall {
        /// First component of the primitive ray direction.
        #[arg(long)]
        a: i64,
        /// Second component of the primitive ray direction.
        #[arg(long)]
        b: i64,
        /// Highest slot to compute; defaults to order / (a + b).
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = WallMethod::Greedy)]
        method: WallMethod,
    },
    /// Enumerate graded weightings of a maximal Dyck path.
    Gradings {
        /// Horizontal span of the path.
        #[arg(long)]
        d1: usize,
        /// Vertical span of the path.
        #[arg(long)]
        d2: usize,
        /// Required total of vertical weights.
        #[arg(long)]
        p: u32,
        /// Required total of horizontal weights.
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Tight)]
        kind: KindArg,
    },
    /// Greedy element attached to a denominator vector.
    Greedy {
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        d2: i64,
    },
    /// Broken-line theta function of an exponent at a fixed generic point.
    Theta {
        /// First component of the exponent vector.
        #[arg(long, allow_negative_numbers = true)]
        mx: i64,
        /// Second component of the exponent vector.
        #[arg(long, allow_negative_numbers = true)]
        my: i64,
    },
    /// Euler characteristic of a framed moduli space (degrees are the
    /// partition lengths; --l1/--l2 are ignored).
    Euler {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        k: u32,
        /// Dimension-vector partition on side one, e.g. 3,0,0.
        #[arg(long, value_delimiter = ',')]
        p1: Vec<u32>,
        /// Dimension-vector partition on side two, e.g. 3,0.
        #[arg(long, value_delimiter = ',')]
        p2: Vec<u32>,
        #[arg(long, value_enum, default_value_t = FramingArg::Back)]
        framing: FramingArg,
    },
    /// Relative Gromov-Witten number of degree k(a,b) with tangency
    /// profiles p1, p2 (degrees are the partition lengths).
    Gw {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',')]
        p1: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        p2: Vec<u32>,
    },
    /// Cross-route verification: completion vs tight gradings, greedy vs
    /// compatible gradings, theta vs greedy, positivity/homogeneity sweeps,
    /// and golden-series comparisons.
    Verify {
        /// Rewrite the checked-in golden files from the current engine
        /// instead of comparing against them.
        #[arg(long)]
        regen_golden: bool,
    },
}

// ---------------------------------------------------------------------------
// Specialization
// ---------------------------------------------------------------------------

/// Parsed `--spec` map: values for the initial-wall coefficients, defaulting
/// to zero for unlisted slots.
struct SpecMap {
    values: BTreeMap<(u8, usize), BigRational>,
}

impl SpecMap {
    fn parse(text: &str, l1: usize, l2: usize) -> Result<Self, String> {
        let parsed: Value =
            serde_json::from_str(text).map_err(|e| format!("--spec is not valid JSON: {e}"))?;
        let obj = parsed
            .as_object()
            .ok_or_else(|| "--spec must be a JSON object".to_string())?;
        let mut values = BTreeMap::new();
        for (key, val) in obj {
            let (side, k) = parse_spec_key(key)?;
            let cap = if side == 1 { l1 } else { l2 };
            if k == 0 || k > cap {
                return Err(format!(
                    "--spec key {key} is out of range for degrees ({l1},{l2})"
                ));
            }
            values.insert((side, k), parse_rational(val)?);
        }
        Ok(SpecMap { values })
    }

    fn value(&self, side: Side, k: usize) -> BigRational {
        let side = match side {
            Side::X => 1,
            Side::Y => 2,
        };
        self.values.get(&(side, k)).cloned().unwrap_or_default()
    }

    /// Evaluates a universal polynomial at the specialization.
    fn eval(&self, p: &PPoly<BigInt>) -> BigRational {
        let mut total = BigRational::zero();
        'terms: for (mono, c) in p.iter() {
            let mut term = BigRational::from_integer(c.clone());
            for side in [Side::X, Side::Y] {
                for (i, &e) in mono.exponents(side).iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let v = self.value(side, i + 1);
                    if v.is_zero() {
                        continue 'terms;
                    }
                    for _ in 0..e {
                        term *= &v;
                    }
                }
            }
            total += term;
        }
        total
    }
}

fn parse_spec_key(key: &str) -> Result<(u8, usize), String> {
    let rest = key
        .strip_prefix("p1_")
        .map(|r| (1u8, r))
        .or_else(|| key.strip_prefix("p2_").map(|r| (2u8, r)));
    match rest {
        Some((side, digits)) => {
            let k: usize = digits
                .parse()
                .map_err(|_| format!("--spec key {key} has a malformed slot index"))?;
            Ok((side, k))
        }
        None => Err(format!(
            "--spec key {key} must look like p1_<k> or p2_<k>"
        )),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            text.parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| format!("--spec value {text} must be an integer or \"a/b\" string"))
        }
        Value::String(s) => {
            let mut parts = s.splitn(2, '/');
            let numer: BigInt = parts
                .next()
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| format!("--spec value {s:?} is not a rational"))?;
            let denom: BigInt = match parts.next() {
                Some(d) => d
                    .trim()
                    .parse()
                    .map_err(|_| format!("--spec value {s:?} is not a rational"))?,
                None => BigInt::one(),
            };
            if denom.is_zero() {
                return Err(format!("--spec value {s:?} has a zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        }
        other => Err(format!("--spec value {other} must be a number or string")),
    }
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

/// How polynomial coefficients appear in JSON output.
enum Render {
    /// Universal: list of `{q1, q2, n}` terms.
    Universal,
    /// Evaluated at a specialization, printed in the given scalar domain.
    Specialized(SpecMap, Mode),
}

impl Render {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        match &cli.spec {
            None => Ok(Render::Universal),
            Some(text) => Ok(Render::Specialized(
                SpecMap::parse(text, cli.l1, cli.l2)?,
                cli.mode,
            )),
        }
    }

    fn poly(&self, p: &PPoly<BigInt>) -> Result<Value, String> {
        match self {
            Render::Universal => Ok(universal_poly_value(p)),
            Render::Specialized(spec, mode) => {
                let v = spec.eval(p);
                if *mode == Mode::Integer && !v.denom().is_one() {
                    return Err(format!(
                        "specialized value {v} is not an integer; use --mode rational"
                    ));
                }
                Ok(Value::String(v.to_string()))
            }
        }
    }

    fn slots(&self, slots: &[PPoly<BigInt>]) -> Result<Value, String> {
        slots.iter().map(|s| self.poly(s)).collect()
    }

    fn laurent(&self, l: &Laurent<BigInt>) -> Result<Value, String> {
        let mut terms = Vec::new();
        for (e, p) in l.iter() {
            terms.push(json!({"exp": [e.0, e.1], "coeff": self.poly(p)?}));
        }
        Ok(Value::Array(terms))
    }
}

fn universal_poly_value(p: &PPoly<BigInt>) -> Value {
    let terms: Vec<Value> = p
        .iter()
        .map(|(m, c)| {
            json!({
                "q1": m.exponents(Side::X),
                "q2": m.exponents(Side::Y),
                "n": c.to_string(),
            })
        })
        .collect();
    Value::Array(terms)
}

fn diagram_value(dia: &Diagram<BigInt>, render: &Render) -> Result<Value, String> {
    let mut rays = Vec::new();
    for (v, slots) in dia.rays() {
        rays.push(json!({
            "dir": [v.0, v.1],
            "slots": render.slots(slots)?,
        }));
    }
    Ok(json!({
        "order": dia.order(),
        "rays": rays,
    }))
}

/// Serializes with sorted keys and a trailing newline; the same input always
/// produces the same bytes.
fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| format!("serialization failed: {e}"))?;
    text.push('\n');
    match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn generic_point() -> Point {
    point(1_000_003, 1_000_033, 999_983, 1_000_037)
}

// ---------------------------------------------------------------------------
// First-difference reporting
// ---------------------------------------------------------------------------

/// Human-readable rendering of one coefficient monomial.
fn monomial_name(m: &PMonomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (side, label) in [(Side::X, "p1"), (Side::Y, "p2")] {
        for (i, &e) in m.exponents(side).iter().enumerate() {
            if e == 1 {
                parts.push(format!("{label}_{}", i + 1));
            } else if e > 1 {
                parts.push(format!("{label}_{}^{e}", i + 1));
            }
        }
    }
    parts.join("*")
}

/// First monomial whose coefficients differ, with both values.
fn first_poly_diff(left: &PPoly<BigInt>, right: &PPoly<BigInt>) -> Option<String> {
    let l: BTreeMap<_, _> = left.iter().collect();
    let r: BTreeMap<_, _> = right.iter().collect();
    let zero = BigInt::zero();
    let mut monos: Vec<_> = l.keys().chain(r.keys()).copied().collect();
    monos.sort();
    monos.dedup();
    for m in monos {
        let a = l.get(m).copied().unwrap_or(&zero);
        let b = r.get(m).copied().unwrap_or(&zero);
        if a != b {
            return Some(format!("coefficient of {}: {a} vs {b}", monomial_name(m)));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_scat(cli: &Cli) -> Result<(), String> {
    let render = Render::from_cli(cli)?;
    let dia = ks_complete::<BigInt>(cli.l1, cli.l2, cli.order);
    let mut value = diagram_value(&dia, &render)?;
    let obj = value.as_object_mut().expect("diagram object");
    obj.insert("l1".into(), json!(cli.l1));
    obj.insert("l2".into(), json!(cli.l2));
    emit(cli, &value)
}

fn cmd_wall(cli: &Cli, a: i64, b: i64, kmax: Option<u32>, method: WallMethod) -> Result<(), String> {
    if a < 1 || b < 1 {
        return Err("ray direction must be positive".to_string());
    }
    let render = Render::from_cli(cli)?;
    let kmax = kmax.unwrap_or(cli.order / (a + b) as u32);
    let (name, slots) = match method {
        WallMethod::Greedy => ("greedy", wall_fn_via_greedy(cli.l1, cli.l2, a, b, kmax)),
        WallMethod::Tight => ("tight", wall_fn_via_gradings(cli.l1, cli.l2, a, b, kmax)),
    };
    let value = json!({
        "dir": [a, b],
        "kmax": kmax,
        "l1": cli.l1,
        "l2": cli.l2,
        "method": name,
        "slots": render.slots(&slots)?,
    });
    emit(cli, &value)
}

fn cmd_gradings(cli: &Cli, d1: usize, d2: usize, p: u32, q: u32, kind: KindArg) -> Result<(), String> {
    let path = maximal_dyck_path(d1, d2);
    let weightings = enumerate_weighted(d1, d2, p, q, cli.l1, cli.l2, kind.kind());
    let mut sum = PPoly::zero();
    let mut list = Vec::new();
    for w in &weightings {
        sum.add_term(scatter2::dyck::weight_monomial(&path, w), BigInt::one());
        let omega_e: Vec<u32> = path.horizontals().iter().map(|&i| w[i]).collect();
        let omega_n: Vec<u32> = path.verticals().iter().map(|&i| w[i]).collect();
        list.push(json!({"omegaE": omega_e, "omegaN": omega_n}));
    }
    let value = json!({
        "count": weightings.len(),
        "d": [d1, d2],
        "gradings": list,
        "kind": kind.name(),
        "l1": cli.l1,
        "l2": cli.l2,
        "sum": universal_poly_value(&sum),
        "totals": [p, q],
    });
    emit(cli, &value)
}

fn cmd_greedy(cli: &Cli, d1: i64, d2: i64) -> Result<(), String> {
    if d1 < 1 || d2 < 1 {
        return Err("denominator vector must be positive".to_string());
    }
    let render = Render::from_cli(cli)?;
    let el = greedy_element(cli.l1, cli.l2, d1, d2);
    let value = json!({
        "d": [d1, d2],
        "l1": cli.l1,
        "l2": cli.l2,
        "terms": render.laurent(&el)?,
    });
    emit(cli, &value)
}

fn cmd_theta(cli: &Cli, mx: i64, my: i64) -> Result<(), String> {
    let render = Render::from_cli(cli)?;
    let dia = ks_complete::<BigInt>(cli.l1, cli.l2, cli.order);
    let th = theta(&dia, (mx, my), &generic_point(), cli.order);
    let value = json!({
        "l1": cli.l1,
        "l2": cli.l2,
        "m0": [mx, my],
        "order": cli.order,
        "terms": render.laurent(&th)?,
    });
    emit(cli, &value)
}

/// Validates the common count inputs: a primitive positive ray, a positive
/// multiple, and tangency partitions of the right totals.
fn check_count_inputs(a: i64, b: i64, k: u32, p1: &[u32], p2: &[u32]) -> Result<(), String> {
    if a < 1 || b < 1 {
        return Err("ray direction must be positive".to_string());
    }
    if scatter2::scatter::gcd_i64(a, b) != 1 {
        return Err(format!("ray direction ({a},{b}) must be primitive"));
    }
    if k < 1 {
        return Err("degree multiple k must be at least 1".to_string());
    }
    for (name, p, want) in [("--p1", p1, k as i64 * a), ("--p2", p2, k as i64 * b)] {
        let total: i64 = p.iter().map(|&x| i64::from(x)).sum();
        if total != want {
            return Err(format!("{name} must sum to {want}, got {total}"));
        }
        if p.is_empty() {
            return Err(format!("{name} must list at least one part"));
        }
    }
    Ok(())
}

fn cmd_euler(
    cli: &Cli,
    a: i64,
    b: i64,
    k: u32,
    p1: &[u32],
    p2: &[u32],
    framing: FramingArg,
) -> Result<(), String> {
    check_count_inputs(a, b, k, p1, p2)?;
    let (f, name) = match framing {
        FramingArg::Back => (Framing::Back, "back"),
        FramingArg::Front => (Framing::Front, "front"),
    };
    let chi = euler_char(a, b, k, p1, p2, f);
    let value = json!({
        "a": a,
        "b": b,
        "chi": chi.to_string(),
        "framing": name,
        "k": k,
        "p1": p1,
        "p2": p2,
    });
    emit(cli, &value)
}

fn cmd_gw(cli: &Cli, a: i64, b: i64, k: u32, p1: &[u32], p2: &[u32]) -> Result<(), String> {
    check_count_inputs(a, b, k, p1, p2)?;
    let n = gw_invariant(a, b, k, p1, p2, p1.len(), p2.len());
    let value = json!({
        "a": a,
        "b": b,
        "k": k,
        "n": n.to_string(),
        "p1": p1,
        "p2": p2,
    });
    emit(cli, &value)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

const GOLDEN_G2: &str = include_str!("../tests/golden/g2_rays.json");
const GOLDEN_22: &str = include_str!("../tests/golden/affine22_ray11.json");
const GOLDEN_41: &str = include_str!("../tests/golden/affine41_ray21.json");

/// Payloads for the checked-in golden files, each at its own fixed
/// configuration.
fn golden_g2_value() -> Value {
    let dia = ks_complete::<BigInt>(3, 1, 8);
    let mut value = diagram_value(&dia, &Render::Universal).expect("universal render");
    let obj = value.as_object_mut().expect("diagram object");
    obj.insert("l1".into(), json!(3));
    obj.insert("l2".into(), json!(1));
    value
}

fn golden_22_value() -> Value {
    let dia = ks_complete::<BigInt>(2, 2, 12);
    let slots: Vec<PPoly<BigInt>> = (0..=3).map(|k| dia.ray_slot((1, 1), k)).collect();
    json!({
        "dir": [1, 1],
        "kmax": 3,
        "l1": 2,
        "l2": 2,
        "method": "completion",
        "slots": Render::Universal.slots(&slots).expect("universal render"),
    })
}

fn golden_41_value() -> Value {
    let slots = wall_fn_via_greedy(4, 1, 2, 1, 9);
    json!({
        "dir": [2, 1],
        "kmax": 9,
        "l1": 4,
        "l2": 1,
        "method": "greedy",
        "slots": Render::Universal.slots(&slots).expect("universal render"),
    })
}

/// Path of the first structural difference between two JSON values.
fn first_value_diff(path: &str, a: &Value, b: &Value) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            let mut keys: Vec<&String> = keys;
            keys.sort();
            keys.dedup();
            for k in keys {
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => {
                        if let Some(d) = first_value_diff(&format!("{path}/{k}"), u, v) {
                            return Some(d);
                        }
                    }
                    _ => return Some(format!("{path}/{k}: present on one side only")),
                }
            }
            None
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{path}: length {} vs {}", x.len(), y.len()));
            }
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                if let Some(d) = first_value_diff(&format!("{path}/{i}"), u, v) {
                    return Some(d);
                }
            }
            None
        }
        _ => {
            if a == b {
                None
            } else {
                Some(format!("{path}: {a} vs {b}"))
            }
        }
    }
}

enum Outcome {
    Pass,
    Skip(String),
    Fail(String),
}

impl From<Result<(), String>> for Outcome {
    fn from(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(msg) => Outcome::Fail(msg),
        }
    }
}

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn group(&mut self, label: &str, outcome: impl Into<Outcome>) {
        match outcome.into() {
            Outcome::Pass => println!("verify {label:<42} PASS"),
            Outcome::Skip(msg) => {
                println!("verify {label:<42} SKIP");
                println!("  {msg}");
            }
            Outcome::Fail(msg) => {
                println!("verify {label:<42} FAIL");
                println!("  {msg}");
                self.failures.push(format!("{label}: {msg}"));
            }
        }
    }
}

fn verify_completion_vs_tight(dia: &Diagram<BigInt>, l1: usize, l2: usize) -> Result<(), String> {
    for (v, slots) in dia.rays() {
        let kmax = slots.len() as u32 - 1;
        let tight = wall_fn_via_gradings(l1, l2, v.0, v.1, kmax);
        for (k, (a, b)) in slots.iter().zip(&tight).enumerate() {
            if a != b {
                let detail = first_poly_diff(a, b).unwrap_or_default();
                return Err(format!("ray ({},{}) slot {k}: {detail}", v.0, v.1));
            }
        }
    }
    Ok(())
}

fn verify_greedy_vs_compatible(l1: usize, l2: usize) -> Result<(), String> {
    for d1 in 1..=4i64 {
        for d2 in 1..=4i64 {
            let mut ctx = GreedyCtx::new(l1, l2, d1, d2);
            let sums = sums_by_totals(d1 as usize, d2 as usize, l1, l2, GradingKind::Compatible);
            for p in 0..=ctx.support_p_max() {
                for q in 0..=ctx.support_q_max() {
                    let want = sums
                        .get(&(p, q))
                        .map(|(_, s)| s.clone())
                        .unwrap_or_else(PPoly::zero);
                    let got = ctx.coeff(p, q);
                    if got != want {
                        let detail = first_poly_diff(&got, &want).unwrap_or_default();
                        return Err(format!(
                            "denominator ({d1},{d2}) coefficient ({p},{q}): {detail}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn verify_theta_vs_greedy(l1: usize, l2: usize) -> Result<(), String> {
    let q = generic_point();
    let mut elems = Vec::new();
    let mut global = 0u32;
    for d1 in 1..=2i64 {
        for d2 in 1..=2i64 {
            let g = greedy_element(l1, l2, d1, d2);
            let mw = g
                .iter()
                .map(|(e, _)| ((e.0 + d1) + (e.1 + d2)) as u32)
                .max()
                .unwrap_or(0);
            global = global.max(mw);
            elems.push((d1, d2, g, mw));
        }
    }
    let dia = ks_complete::<BigInt>(l1, l2, global);
    for (d1, d2, g, mw) in elems {
        let th = theta(&dia.truncated(mw), (-d1, -d2), &q, mw);
        if th != g {
            return Err(format!("element ({d1},{d2}) differs from its theta function"));
        }
    }
    Ok(())
}

fn verify_positivity_homogeneity(dia: &Diagram<BigInt>) -> Result<(), String> {
    for (v, slots) in dia.rays() {
        for (k, s) in slots.iter().enumerate() {
            if s.has_negative_coeff() {
                return Err(format!("negative coefficient on ray ({},{}) slot {k}", v.0, v.1));
            }
            if k > 0 && !s.is_zero() {
                let want = (k as u32 * v.0 as u32, k as u32 * v.1 as u32);
                if s.homogeneous_biweight() != Some(want) {
                    return Err(format!(
                        "slot {k} on ray ({},{}) is not homogeneous of biweight ({},{})",
                        v.0, v.1, want.0, want.1
                    ));
                }
            }
        }
    }
    Ok(())
}

fn verify_golden(l1: usize, l2: usize) -> (String, Outcome) {
    let (label, stored, fresh) = match (l1, l2) {
        (3, 1) => ("(v)   golden rays for degrees (3,1)", GOLDEN_G2, golden_g2_value()),
        (2, 2) => ("(v)   golden wall for degrees (2,2)", GOLDEN_22, golden_22_value()),
        (4, 1) => ("(v)   golden wall for degrees (4,1)", GOLDEN_41, golden_41_value()),
        (1, 1) => {
            // Pentagon: one added ray carrying exactly 1 + p1_1 p2_1 x y.
            let dia = ks_complete::<BigInt>(1, 1, 5);
            let ok = dia.rays().len() == 1
                && dia.ray((1, 1)).is_some_and(|slots| {
                    slots.len() == 2
                        && slots[1] == PPoly::monomial(
                            PMonomial::from_exponents(vec![1], vec![1]),
                            BigInt::one(),
                        )
                });
            let outcome = if ok {
                Outcome::Pass
            } else {
                Outcome::Fail("pentagon diagram has unexpected rays".to_string())
            };
            return ("(v)   pentagon diagram for degrees (1,1)".to_string(), outcome);
        }
        _ => {
            return (
                format!("(v)   golden series for degrees ({l1},{l2})"),
                Outcome::Skip("no golden data for these degrees".to_string()),
            )
        }
    };
    let stored: Value = match serde_json::from_str(stored) {
        Ok(v) => v,
        Err(e) => {
            return (
                label.to_string(),
                Outcome::Fail(format!("golden file unreadable: {e}")),
            )
        }
    };
    let outcome = match first_value_diff("", &stored, &fresh) {
        None => Outcome::Pass,
        Some(d) => Outcome::Fail(d),
    };
    (label.to_string(), outcome)
}

fn regen_golden() -> Result<(), String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    for (name, value) in [
        ("g2_rays.json", golden_g2_value()),
        ("affine22_ray11.json", golden_22_value()),
        ("affine41_ray21.json", golden_41_value()),
    ] {
        let path = dir.join(name);
        let mut text = serde_json::to_string_pretty(&value)
            .map_err(|e| format!("serialization failed: {e}"))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        println!("regenerated {}", path.display());
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, regen: bool) -> Result<bool, String> {
    if regen {
        regen_golden()?;
        return Ok(true);
    }
    let (l1, l2, order) = (cli.l1, cli.l2, cli.order);
    let mut report = Report { failures: Vec::new() };
    let dia = ks_complete::<BigInt>(l1, l2, order);
    report.group(
        "(i)   completion vs tight gradings",
        verify_completion_vs_tight(&dia, l1, l2),
    );
    report.group(
        "(ii)  greedy vs compatible gradings",
        verify_greedy_vs_compatible(l1, l2),
    );
    report.group("(iii) theta vs greedy elements", verify_theta_vs_greedy(l1, l2));
    report.group("(iv)  positivity and homogeneity", verify_positivity_homogeneity(&dia));
    let (label, outcome) = verify_golden(l1, l2);
    report.group(&label, outcome);
    if report.failures.is_empty() {
        println!("verify: all checks passed for degrees ({l1},{l2}) at order {order}");
        Ok(true)
    } else {
        println!("verify: {} check(s) failed", report.failures.len());
        Ok(false)
    }
}

// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.cmd {
        Cmd::Scat => cmd_scat(cli).map(|()| true),
        Cmd::Wall { a, b, kmax, method } => {
            cmd_wall(cli, *a, *b, *kmax, *method).map(|()| true)
        }
        Cmd::Gradings { d1, d2, p, q, kind } => {
            cmd_gradings(cli, *d1, *d2, *p, *q, *kind).map(|()| true)
        }
        Cmd::Greedy { d1, d2 } => cmd_greedy(cli, *d1, *d2).map(|()| true),
        Cmd::Theta { mx, my } => cmd_theta(cli, *mx, *my).map(|()| true),
        Cmd::Euler { a, b, k, p1, p2, framing } => {
            cmd_euler(cli, *a, *b, *k, p1, p2, *framing).map(|()| true)
        }
        Cmd::Gw { a, b, k, p1, p2 } => cmd_gw(cli, *a, *b, *k, p1, p2).map(|()| true),
        Cmd::Verify { regen_golden } => cmd_verify(cli, *regen_golden),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
