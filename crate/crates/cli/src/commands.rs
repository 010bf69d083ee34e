use std::fs;
use std::path::Path;
use std::time::Instant;

use divlab::bounds::{
    bonferroni_lower, degree_qk_formula, div_qk_formula, ledger_delta, plane_params, size_qk,
    theorem_rhs,
};
use divlab::constructions::{build_fk, build_pk, build_qk};
use divlab::projective::{build_plane, enumerate_ai, enumerate_layers, layer_stats, PlaneGeometry};
use divlab::search::{exhaustive_max_diversity, hillclimb_diversity, HillclimbConfig, SearchReport};
use divlab::sfam::{parse_sfam, to_sfam};
use divlab::{diversity, is_intersecting, BigCount, Budget, Error, Family, Rational};
use serde::Serialize;

use crate::args::{BoundsArgs, Check, ConstructArgs, HillclimbArgs, Kind, Output, PlaneArgs, VerifyArgs};
use crate::report::*;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Outcome of a command that completed: whether every reported check passed.
pub type Passed = bool;

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    match path {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_family(family: &Family, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, &to_sfam(family)),
        None => Ok(()),
    }
}

fn elapsed_ms(start: Instant) -> String {
    num(start.elapsed().as_millis())
}

fn required(value: Option<i64>, name: &'static str, kind: &str) -> CliResult<i64> {
    value.ok_or_else(|| {
        Error::InvalidParameter {
            name,
            value: 0,
            reason: format!("--{name} is required for `construct {kind}`"),
        }
        .into()
    })
}

fn as_u32(value: i64, name: &'static str) -> CliResult<u32> {
    u32::try_from(value).map_err(|_| {
        Error::InvalidParameter {
            name,
            value,
            reason: "must be a nonnegative integer".into(),
        }
        .into()
    })
}

fn regular_degree_text(report: &PropertyReport) -> String {
    report
        .regular
        .as_ref()
        .and_then(|r| r.degree.clone())
        .unwrap_or_else(|| "irregular".into())
}

fn diversity_text(report: &PropertyReport) -> String {
    report
        .diversity
        .as_ref()
        .map(|d| d.value.clone())
        .unwrap_or_default()
}

fn scan_all(report: &mut PropertyReport, family: &Family) {
    let intersecting = report.scan_intersecting(family);
    report.check("intersecting", true, intersecting);
    report.scan_degrees(family, true, true);
    report.scan_upset(family);
}

pub fn construct(args: &ConstructArgs, budget: &Budget) -> CliResult<Passed> {
    let start = Instant::now();
    let kind_name = args.kind.to_possible_value_name();
    let (family, mut report) = match args.kind {
        Kind::Fk | Kind::Qk | Kind::Pk => {
            let k_raw = required(args.k, "k", kind_name)?;
            let k = as_u32(k_raw, "k")?;
            let family = match args.kind {
                Kind::Fk => build_fk(k)?,
                Kind::Qk => build_qk(k, budget)?,
                _ => build_pk(k, budget)?,
            };
            let mut report = PropertyReport::new(kind_name, &[("k", num(k))], &family);
            scan_all(&mut report, &family);
            let div_qk = div_qk_formula::<BigCount>(k)?;
            let degree_qk = degree_qk_formula::<BigCount>(k)?;
            let size_qk = size_qk::<BigCount>(k)?;
            match args.kind {
                Kind::Fk => {
                    report.check("family_size", 2 * k + 1, family.len());
                    let uniform = family.members().all(|m| m.len() == k);
                    report.check("all_members_size_k", true, uniform);
                    let deg = regular_degree_text(&report);
                    report.check("regular_degree", k, deg);
                }
                Kind::Qk => {
                    report.check("family_size", &size_qk, family.len());
                    let upset = report.upset.as_ref().is_some_and(|u| u.holds);
                    report.check("upset", true, upset);
                    let deg = regular_degree_text(&report);
                    report.check("regular_degree", &degree_qk, deg);
                    let div = diversity_text(&report);
                    report.check("diversity_vs_div_qk_formula", &div_qk, div);
                }
                _ => {
                    report.check("family_size", &size_qk, family.len());
                    let deg = regular_degree_text(&report);
                    report.check("regular_degree", degree_qk - 1, deg);
                    let div = diversity_text(&report);
                    report.check("diversity_vs_div_qk_formula_plus_1", div_qk + 1, div);
                }
            }
            (family, report)
        }
        Kind::PlaneLines => {
            let q = required(args.q, "q", kind_name)?;
            let plane = build_plane(q)?;
            let family = plane.lines().clone();
            let mut report = PropertyReport::new(kind_name, &[("q", num(q))], &family);
            scan_all(&mut report, &family);
            report.check("family_size", plane.n(), family.len());
            let deg = regular_degree_text(&report);
            report.check("regular_degree", plane.q() + 1, deg);
            (family, report)
        }
        Kind::Ai => {
            let q = required(args.q, "q", kind_name)?;
            let i = as_u32(required(args.i, "i", kind_name)?, "i")?;
            let plane = build_plane(q)?;
            let family = enumerate_ai(&plane, i, budget)?;
            let mut report =
                PropertyReport::new(kind_name, &[("i", num(i)), ("q", num(q))], &family);
            scan_all(&mut report, &family);
            let regular = report.regular.as_ref().is_some_and(|r| r.holds);
            report.check("regular", true, regular);
            if i == plane.q() + 1 {
                report.check("family_size_is_line_count", plane.n(), family.len());
            } else {
                let bound = bonferroni_lower::<BigCount>(q, i as i64)?;
                let size = BigCount::from(family.len());
                let pass = size >= bound.middle;
                report.check_with(
                    "family_size_at_least_bonferroni_middle",
                    format!(">= {}", bound.middle),
                    num(&size),
                    pass,
                );
                report.check("bonferroni_chain", true, bound.chain_holds);
            }
            (family, report)
        }
        Kind::A => {
            let q = required(args.q, "q", kind_name)?;
            let plane = build_plane(q)?;
            let layers = enumerate_layers(&plane, budget)?;
            let expected: usize = layers.iter().map(Family::len).sum();
            let family = union(&plane, layers);
            let mut report = PropertyReport::new(kind_name, &[("q", num(q))], &family);
            scan_all(&mut report, &family);
            report.check("family_size_is_layer_sum", expected, family.len());
            let largest = family.members().map(|m| m.len()).max().unwrap_or(0);
            report.check_with(
                "max_member_size",
                format!("<= {}", plane.half()),
                num(largest),
                largest <= plane.half(),
            );
            (family, report)
        }
        Kind::Rk => {
            let q = required(args.q, "q", kind_name)?;
            let plane = build_plane(q)?;
            let k = plane.half();
            budget.check(
                || format!("Q_{k}"),
                divlab::family::bytes_for_members(1u128 << (2 * k)),
            )?;
            let layers = enumerate_layers(&plane, budget)?;
            let stats = layer_stats(&plane, &layers);
            let a = union(&plane, layers);
            let qk = build_qk(k, budget)?;
            let plan = divlab::constructions::SwapPlan::new(qk, a)?;
            let family = divlab::constructions::apply_swap(&plan);
            let mut report = PropertyReport::new(kind_name, &[("q", num(q))], &family);
            scan_all(&mut report, &family);
            report.check("family_size", size_qk::<BigCount>(k)?, family.len());
            let upset = report.upset.as_ref().is_some_and(|u| u.holds);
            report.check("upset", true, upset);
            let regular = report.regular.as_ref().is_some_and(|r| r.holds);
            report.check("regular", true, regular);
            let div = BigCount::from(diversity(&family)?.diversity);
            let gain = div - div_qk_formula::<BigCount>(k)?;
            match ledger_delta::<BigCount>(&stats) {
                Ok(ledger) => {
                    report.check("diversity_gain_vs_ledger", &ledger, &gain);
                    let rhs = theorem_rhs::<BigCount>(q)?;
                    let pass = Rational::from_integer(gain.clone()) > rhs;
                    report.check_with("diversity_gain_exceeds_rhs", format!("> {rhs}"), num(&gain), pass);
                }
                Err(e) => report.check_with("diversity_gain_vs_ledger", "defined".into(), e.to_string(), false),
            }
            (family, report)
        }
    };
    emit_family(&family, args.output.out.as_deref())?;
    report.volatile.duration_ms = elapsed_ms(start);
    emit_json(&report, args.output.json.as_deref())?;
    Ok(report.all_pass)
}

fn union(plane: &PlaneGeometry, layers: Vec<Family>) -> Family {
    let words = layers.into_iter().flat_map(Family::into_words).collect();
    Family::from_words(plane.n(), words).expect("layers live on the plane's points")
}

pub fn verify(args: &VerifyArgs) -> CliResult<Passed> {
    let start = Instant::now();
    let text = fs::read_to_string(&args.file)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.file.display())))?;
    let family = parse_sfam(&text)?;
    let mut checks = args.checks.clone();
    if checks.is_empty() {
        checks = vec![Check::Intersecting, Check::Regular, Check::Upset, Check::Diversity];
    }
    checks.sort();
    checks.dedup();
    let mut report = PropertyReport::new("file", &[], &family);
    let wants = |c: Check| checks.contains(&c);
    if wants(Check::Intersecting) {
        let holds = report.scan_intersecting(&family);
        report.check("intersecting", true, holds);
    }
    if wants(Check::Regular) || wants(Check::Diversity) {
        report.scan_degrees(&family, wants(Check::Regular), wants(Check::Diversity));
        if wants(Check::Regular) {
            let holds = report.regular.as_ref().is_some_and(|r| r.holds);
            report.check("regular", true, holds);
        }
        if wants(Check::Diversity) {
            report.check("diversity_defined", true, report.diversity.is_some());
        }
    }
    if wants(Check::Upset) {
        let holds = report.scan_upset(&family);
        report.check("upset", true, holds);
    }
    report.volatile.duration_ms = elapsed_ms(start);
    emit_json(&report, args.json.as_deref())?;
    Ok(report.all_pass)
}

pub fn bounds(args: &BoundsArgs) -> CliResult<Passed> {
    let report = if let Some(k) = args.k {
        let k = as_u32(k, "k")?;
        if !(1..=31).contains(&k) {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k as i64,
                reason: "must lie in 1..=31".into(),
            }
            .into());
        }
        let div = div_qk_formula::<BigCount>(k)?;
        BoundsReport::Qk {
            schema: BOUNDS_SCHEMA,
            k: num(k),
            n: num(2 * k + 1),
            qk_size: num(size_qk::<BigCount>(k)?),
            qk_degree: num(degree_qk_formula::<BigCount>(k)?),
            pk_diversity: num(&div + 1),
            div_qk: num(div),
        }
    } else {
        let q = args.q.expect("clap requires --k or --q");
        let (n, k) = plane_params(q)?;
        let bonferroni = (q + 1..=k)
            .map(|i| {
                let b = bonferroni_lower::<BigCount>(q, i)?;
                Ok(BonferroniLine {
                    i: num(i),
                    middle: num(&b.middle),
                    final_bound: num(&b.final_bound),
                    chain_holds: b.chain_holds,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        BoundsReport::Plane {
            schema: BOUNDS_SCHEMA,
            q: num(q),
            n: num(n),
            k: num(k),
            div_qk: num(div_qk_formula::<BigCount>(k as u32)?),
            theorem22_rhs: num(theorem_rhs::<BigCount>(q)?),
            bonferroni,
        }
    };
    emit_json(&report, args.json.as_deref())?;
    Ok(true)
}

fn search_json(result: &SearchReport, start: Instant) -> CliResult<SearchJson> {
    let family = &result.best_family;
    let mut checks = Vec::new();
    let mut push = |name: &str, expected: String, actual: String| {
        let pass = expected == actual;
        checks.push(CheckLine {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    };
    push("intersecting", num(true), num(is_intersecting(family).holds()));
    push(
        "one_of_each_complementary_pair",
        num(true),
        num(divlab::properties::is_pair_complete(family)),
    );
    push(
        "diversity_recomputed",
        num(result.best_diversity),
        num(diversity(family)?.diversity),
    );
    let all_pass = checks.iter().all(|c| c.pass);
    let k = (result.ground_n - 1) / 2;
    Ok(SearchJson {
        schema: SEARCH_SCHEMA,
        method: result.method.as_str(),
        ground_n: num(result.ground_n),
        best_diversity: num(result.best_diversity),
        visited: num(result.visited),
        accepted: num(result.accepted),
        rng_seed: result.rng_seed.map(num),
        reference_div_qk: num(div_qk_formula::<BigCount>(k)?),
        checks,
        all_pass,
        volatile: Volatile {
            duration_ms: elapsed_ms(start),
        },
    })
}

pub fn search_exhaustive(n: u32, output: &Output) -> CliResult<Passed> {
    let start = Instant::now();
    let result = exhaustive_max_diversity(n)?;
    emit_family(&result.best_family, output.out.as_deref())?;
    let json = search_json(&result, start)?;
    emit_json(&json, output.json.as_deref())?;
    Ok(json.all_pass)
}

pub fn search_hillclimb(args: &HillclimbArgs, budget: &Budget) -> CliResult<Passed> {
    let start_time = Instant::now();
    let start = match &args.start {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_sfam(&text)?
        }
        None => {
            if args.n % 2 == 0 || args.n < 3 {
                return Err(Error::InvalidParameter {
                    name: "n",
                    value: args.n as i64,
                    reason: "must be odd".into(),
                }
                .into());
            }
            build_qk((args.n - 1) / 2, budget)?
        }
    };
    let mut config = HillclimbConfig {
        max_steps: args.steps,
        patience: args.patience,
        orbit_moves: !args.no_orbit_moves,
        blocks: Vec::new(),
    };
    if args.plane_blocks {
        let q = (3..=7)
            .find(|q| q * q + q + 1 == args.n as i64)
            .ok_or_else(|| Error::InvalidParameter {
                name: "n",
                value: args.n as i64,
                reason: "--plane-blocks needs n = q^2+q+1 for q in {3,5,7}".into(),
            })?;
        let plane = build_plane(q)?;
        config.blocks = enumerate_layers(&plane, budget)?;
        config.orbit_moves = false;
    }
    let result = hillclimb_diversity(args.n, &start, args.seed, &config)?;
    emit_family(&result.best_family, args.output.out.as_deref())?;
    let json = search_json(&result, start_time)?;
    emit_json(&json, args.output.json.as_deref())?;
    Ok(json.all_pass)
}

pub fn plane(args: &PlaneArgs) -> CliResult<Passed> {
    let start = Instant::now();
    let plane = build_plane(args.q)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, expected: String, actual: String| {
        let pass = expected == actual;
        checks.push(CheckLine {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    };
    let q = plane.q() as u64;
    let n = plane.n() as u64;
    push("points", num(q * q + q + 1), num(n));
    push("lines", num(n), num(plane.lines().len()));
    let profile = divlab::degree_profile(plane.lines());
    push("lines_per_point_min", num(q + 1), num(profile.counts().iter().min().unwrap_or(&0)));
    push("lines_per_point_max", num(q + 1), num(profile.counts().iter().max().unwrap_or(&0)));
    let axioms = match plane.verify_axioms() {
        Ok(()) => num(true),
        Err(e) => e.to_string(),
    };
    push("incidence_axioms", num(true), axioms);
    let all_pass = checks.iter().all(|c| c.pass);
    let fmt_point = |p: [u32; 3]| format!("({},{},{})", p[0], p[1], p[2]);
    let json = PlaneJson {
        schema: PLANE_SCHEMA,
        q: num(q),
        n: num(n),
        line_size: num(q + 1),
        points: plane.points().iter().map(|&p| fmt_point(p)).collect(),
        lines: plane
            .line_coords()
            .iter()
            .zip(plane.line_sets())
            .map(|(&c, s)| LineJson {
                dual: fmt_point(c),
                points: s.to_string(),
            })
            .collect(),
        checks,
        all_pass,
        volatile: Volatile {
            duration_ms: elapsed_ms(start),
        },
    };
    if let Some(path) = &args.emit_lines {
        write_file(path, &to_sfam(plane.lines()))?;
    }
    emit_json(&json, args.json.as_deref())?;
    Ok(all_pass)
}

trait KindName {
    fn to_possible_value_name(&self) -> &'static str;
}

impl KindName for Kind {
    fn to_possible_value_name(&self) -> &'static str {
        match self {
            Kind::Fk => "fk",
            Kind::Qk => "qk",
            Kind::Pk => "pk",
            Kind::Ai => "ai",
            Kind::A => "a",
            Kind::Rk => "rk",
            Kind::PlaneLines => "plane-lines",
        }
    }
}
