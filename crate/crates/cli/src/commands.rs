use psc_moduli::lattice::{
    alpha_invariant, metabolizer_report, metabolizer_search, sw_formal_dimension,
    IsometricStructure, LatticeVector,
};
use psc_moduli::lens::{
    self, component_classes, distinguish_metrics, distinguish_metrics_experimental, eta_flipspun,
    eta_variant, fourier_forms_all, is_inverse_pair, rho_lens, sweep, EtaFormula, EtaValue,
    FlipSpunParams, LensParams,
};
use psc_moduli::rational::{parse_ratio, to_ratio_string};
use psc_moduli::scenario::Scenario;
use psc_moduli::wallcross::{
    classify_isometry, orbit_crossings, orbit_points, orbit_swtot, power_swtot, segment_crossing,
    spinc_orbit, unique_crossing_index, wall_evaluate, WallError,
};
use psc_moduli::{ExactRational, Limits};
use serde_json::{json, Map, Value};

use crate::document::ResultDocument;
use crate::error::CliError;
use crate::svg::render_disc_svg;
use crate::{Cli, Command, Formula, ScenarioArgs};

/// Runs one command and returns the text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let fmt = Fmt { approx: cli.approx };
    let doc = match &cli.command {
        Command::Rho { order, q, s } => rho(&fmt, *order, *q, *s)?,
        Command::Eta {
            p,
            q,
            s,
            formula,
            fourier,
        } => eta(&fmt, *p, *q, *s, *formula, *fourier)?,
        Command::Distinguish { p, q, q_prime } => distinguish(*p, *q, *q_prime, cli.experimental)?,
        Command::Sweep { p } => sweep_table(*p)?,
        Command::Components { p } => components(*p)?,
        Command::Swtot { scenario, power } => swtot(scenario, *power)?,
        Command::Orbit { scenario, from, to } => orbit(&fmt, scenario, *from, *to)?,
        Command::Metabolizer {
            scenario,
            vectors,
            bound,
            budget,
        } => metabolizer(scenario, vectors.as_deref(), *bound, *budget)?,
        Command::Dimension {
            c1_square,
            euler,
            signature,
        } => dimension(*c1_square, *euler, *signature)?,
        Command::PlotDisc {
            scenario,
            from,
            to,
            output,
        } => {
            let (svg, doc) = plot_disc(scenario, *from, *to, output.as_deref())?;
            match doc {
                Some(doc) => doc,
                None => return Ok(svg),
            }
        }
    };
    let mut doc = doc;
    doc.provenance.approximate_fields = cli.approx && has_approx(&doc.results);
    let text = if cli.compact {
        serde_json::to_string(&doc)
    } else {
        serde_json::to_string_pretty(&doc)
    };
    text.map(|t| t + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

struct Fmt {
    approx: bool,
}

impl Fmt {
    /// `{ key: "n/d" }`, plus `key_approx` when requested.
    fn put(&self, map: &mut Map<String, Value>, key: &str, r: &ExactRational) {
        map.insert(key.to_string(), Value::String(to_ratio_string(r)));
        if self.approx {
            map.insert(
                format!("{key}_approx"),
                json!(psc_moduli::rational::to_f64(r)),
            );
        }
    }
}

fn has_approx(v: &Value) -> bool {
    match v {
        Value::Object(m) => m
            .iter()
            .any(|(k, v)| k.ends_with("_approx") || has_approx(v)),
        Value::Array(a) => a.iter().any(has_approx),
        _ => false,
    }
}

fn value_rows(fmt: &Fmt, values: impl IntoIterator<Item = (i64, EtaValue)>) -> Value {
    Value::Array(
        values
            .into_iter()
            .map(|(s, v)| {
                let mut m = Map::new();
                m.insert("s".into(), json!(s));
                fmt.put(&mut m, "value", v.value());
                Value::Object(m)
            })
            .collect(),
    )
}

fn indices(modulus: u32, s: Option<i64>) -> Vec<i64> {
    match s {
        Some(s) => vec![s],
        None => (0..modulus as i64).collect(),
    }
}

fn rho(fmt: &Fmt, order: u32, q: i64, s: Option<i64>) -> Result<ResultDocument, CliError> {
    let l = LensParams::new(order, q)?;
    let rows = indices(order, s)
        .into_iter()
        .map(|s| Ok((s, rho_lens(&l, s)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut doc = ResultDocument::new("rho", &["rho-lens-cyclotomic-sum"])
        .input("order", order)
        .input("q", q)
        .input("s", json!(s));
    doc.results = json!({ "lens": { "n": l.n(), "q": l.q() }, "values": value_rows(fmt, rows) });
    Ok(doc)
}

type EtaFn<'a> = Box<dyn Fn(i64) -> Result<EtaValue, lens::EtaError> + 'a>;

fn eta(
    fmt: &Fmt,
    p: u32,
    q: i64,
    s: Option<i64>,
    formula: Formula,
    fourier: bool,
) -> Result<ResultDocument, CliError> {
    let params = FlipSpunParams::new(p, q)?;
    let (id, f): (&str, EtaFn<'_>) = match formula {
        Formula::Direct => ("eta-rho-difference", Box::new(|s| eta_flipspun(&params, s))),
        Formula::HalfRoots => (
            "eta-half-roots-sum",
            Box::new(|s| eta_variant(&params, s, EtaFormula::HalfRoots)),
        ),
        Formula::OddP => (
            "eta-odd-p-sum",
            Box::new(|s| eta_variant(&params, s, EtaFormula::OddP)),
        ),
    };
    let rows = indices(2 * p, s)
        .into_iter()
        .map(|s| Ok((s, f(s)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut ids = vec![id];
    let mut results = json!({ "p": p, "q": params.q(), "values": value_rows(fmt, rows) });
    if fourier {
        ids.push("fourier-dft-of-eta");
        let forms = fourier_forms_all(&params)?;
        results["fourier"] = Value::Array(
            forms
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    json!({
                        "j": j + 1,
                        "dft": f.dft.to_string(),
                        "closed_form": f.closed.to_string(),
                        "unit_ratio": f.unit_ratio.to_string(),
                        "all_equal": f.all_equal(),
                    })
                })
                .collect(),
        );
    }
    let mut doc = ResultDocument::new("eta", &ids)
        .input("p", p)
        .input("q", q)
        .input("s", json!(s))
        .input("formula", format!("{formula:?}").to_lowercase())
        .input("fourier", fourier);
    doc.results = results;
    Ok(doc)
}

fn distinguish(
    p: u32,
    q: i64,
    q_prime: i64,
    experimental: bool,
) -> Result<ResultDocument, CliError> {
    let r = if experimental {
        distinguish_metrics_experimental(p, q, q_prime)?
    } else {
        distinguish_metrics(p, q, q_prime)?
    };
    let predicted = is_inverse_pair(p, r.q, r.q_prime);
    let mut doc = ResultDocument::new(
        "distinguish",
        &["eta-rho-difference", "character-relabelling-search"],
    )
    .input("p", p)
    .input("q", q)
    .input("qprime", q_prime)
    .input("experimental", experimental);
    doc.results = json!({
        "p": r.p,
        "q": r.q,
        "qprime": r.q_prime,
        "matches": r.matches,
        "distinguishable": r.distinguishable,
        "inverse_pair": predicted,
    });
    Ok(doc)
}

fn sweep_table(p: u32) -> Result<ResultDocument, CliError> {
    let t = sweep(p)?;
    let related: Vec<Vec<bool>> = (0..t.qs.len())
        .map(|i| (0..t.qs.len()).map(|j| t.related(i, j)).collect())
        .collect();
    let matches: Vec<Vec<&Vec<u32>>> = t
        .cells
        .iter()
        .map(|row| row.iter().map(|c| &c.matches).collect())
        .collect();
    let mut doc = ResultDocument::new(
        "sweep",
        &["eta-rho-difference", "character-relabelling-search"],
    )
    .input("p", p);
    doc.results = json!({ "p": p, "qs": t.qs, "related": related, "matches": matches });
    Ok(doc)
}

fn components(p: u32) -> Result<ResultDocument, CliError> {
    let c = component_classes(p)?;
    let mut doc = ResultDocument::new(
        "components",
        &[
            "eta-rho-difference",
            "character-relabelling-search",
            "union-find-classes",
        ],
    )
    .input("p", p);
    doc.results = json!({ "p": p, "count": c.count(), "classes": c.classes });
    Ok(doc)
}

fn load(args: &ScenarioArgs) -> Result<Scenario, CliError> {
    let mut s = Scenario::load(&args.scenario)?;
    if let Some(text) = &args.omega0 {
        let coords = text
            .split(',')
            .map(|c| parse_ratio(c).map_err(|e| CliError::Parameter(format!("--omega0: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        s = s.with_omega0(coords)?;
    }
    if let Some(n) = args.n_max {
        s.config.n_max = n;
    }
    if let Some(w) = args.window {
        s.config.window = w;
    }
    Ok(s)
}

fn scenario_inputs(doc: ResultDocument, args: &ScenarioArgs, s: &Scenario) -> ResultDocument {
    doc.input("scenario", args.scenario.clone())
        .input(
            "omega0",
            json!(s
                .omega0
                .coords()
                .iter()
                .map(to_ratio_string)
                .collect::<Vec<_>>()),
        )
        .input("n_max", s.config.n_max)
        .input("window", s.config.window)
}

const WALL_FORMULAS: &[&str] = &[
    "form-adjoint-orbit",
    "straight-segment-wall-crossing",
    "sign-stabilization-window",
];

fn swtot(args: &ScenarioArgs, power: Option<i64>) -> Result<ResultDocument, CliError> {
    let s = load(args)?;
    let summary = orbit_swtot(
        &s.lattice,
        &s.isometry,
        &s.wall,
        &s.spinc,
        &s.omega0,
        &s.config,
    )?;
    let index = match unique_crossing_index(
        &s.lattice,
        &s.isometry,
        &s.wall,
        &s.spinc,
        &s.omega0,
        &s.config,
    ) {
        Ok(n) => json!(n),
        Err(WallError::Uniqueness { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mut results = json!({
        "isometry": s.isometry,
        "classification": classify_isometry(&s.lattice, &s.isometry).ok(),
        "alpha": alpha_invariant(&s.lattice, &s.isometry)?,
        "spinc_orbit": spinc_orbit(&s.lattice, &s.isometry, s.spinc.c1(), s.config.n_max)?,
        "sw_x": summary.sw_x,
        "total": summary.total,
        "crossings": summary.crossings,
        "crossing_index": index,
        "stabilized": summary.stabilized,
        "steps_used": summary.steps_used,
    });
    let mut ids = WALL_FORMULAS.to_vec();
    if let Some(d) = power {
        ids.push("power-composition");
        results["power"] = json!(d);
        results["power_total"] = json!(power_swtot(
            &s.lattice,
            &s.isometry,
            d,
            &s.wall,
            &s.spinc,
            &s.omega0,
            &s.config
        )?);
    }
    let mut doc =
        scenario_inputs(ResultDocument::new("swtot", &ids), args, &s).input("power", json!(power));
    doc.results = results;
    Ok(doc)
}

fn orbit(fmt: &Fmt, args: &ScenarioArgs, from: i64, to: i64) -> Result<ResultDocument, CliError> {
    if from > to {
        return Err(CliError::Parameter(format!(
            "--from {from} exceeds --to {to}"
        )));
    }
    let s = load(args)?;
    let points = orbit_points(&s.lattice, &s.isometry, &s.omega0, from..=to)?;
    let mut rows = Vec::new();
    for (n, p) in &points {
        let mut m = Map::new();
        m.insert("n".into(), json!(n));
        m.insert(
            "coords".into(),
            json!(p.coords().iter().map(to_ratio_string).collect::<Vec<_>>()),
        );
        fmt.put(
            &mut m,
            "wall_value",
            &wall_evaluate(&s.lattice, &s.wall, p)?,
        );
        if fmt.approx {
            let (u, v) = psc_moduli::wallcross::disc_project(&s.lattice, p)?;
            m.insert("disc_approx".into(), json!([u, v]));
        }
        rows.push(Value::Object(m));
    }
    let mut crossings = Map::new();
    for pair in points.windows(2) {
        let c = segment_crossing(&s.lattice, &pair[0].1, &pair[1].1, &s.wall)?;
        if c != 0 {
            crossings.insert(pair[0].0.to_string(), json!(c));
        }
    }
    let mut doc = scenario_inputs(ResultDocument::new("orbit", WALL_FORMULAS), args, &s)
        .input("from", from)
        .input("to", to);
    doc.results = json!({ "points": rows, "crossings": crossings });
    Ok(doc)
}

fn parse_vectors(text: &str) -> Result<Vec<LatticeVector>, CliError> {
    text.split(';')
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError::Parameter(format!("bad vector entry {x:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(LatticeVector)
        })
        .collect()
}

fn metabolizer(
    scenario: &str,
    vectors: Option<&str>,
    bound: i64,
    budget: Option<u64>,
) -> Result<ResultDocument, CliError> {
    let s = Scenario::load(scenario)?;
    let structure = IsometricStructure::new(&s.lattice, &s.isometry)?;
    let budget = budget.unwrap_or(Limits::global().search_budget);
    let (mode, found) = match vectors {
        Some(text) => ("check", Some(parse_vectors(text)?)),
        None => ("search", metabolizer_search(&structure, bound, budget)?),
    };
    let report = found
        .as_deref()
        .map(|v| metabolizer_report(&structure, v))
        .transpose()?;
    let mut doc = ResultDocument::new(
        "metabolizer",
        &[
            "isometric-structure-double",
            "rational-span-metabolizer-test",
        ],
    )
    .input("scenario", scenario)
    .input("vectors", json!(vectors))
    .input("bound", bound)
    .input("budget", budget);
    doc.results = json!({
        "mode": mode,
        "isometry": s.isometry,
        "vectors": found,
        "report": report,
        "is_metabolizer": report.as_ref().is_some_and(|r| r.is_metabolizer),
    });
    Ok(doc)
}

fn dimension(c1_square: i64, euler: i64, signature: i64) -> Result<ResultDocument, CliError> {
    let d = sw_formal_dimension(c1_square, euler, signature)?;
    let mut doc = ResultDocument::new("dimension", &["sw-formal-dimension"])
        .input("c1_square", c1_square)
        .input("euler", euler)
        .input("signature", signature);
    doc.results = json!({ "dimension": d });
    Ok(doc)
}

fn plot_disc(
    args: &ScenarioArgs,
    from: i64,
    to: i64,
    output: Option<&std::path::Path>,
) -> Result<(String, Option<ResultDocument>), CliError> {
    if from > to {
        return Err(CliError::Parameter(format!(
            "--from {from} exceeds --to {to}"
        )));
    }
    let s = load(args)?;
    let points = orbit_points(&s.lattice, &s.isometry, &s.omega0, from..=to)?;
    let summary = orbit_crossings(
        &s.lattice,
        &s.isometry,
        &s.wall,
        &s.spinc,
        &s.omega0,
        &s.config,
    )?;
    let crossings: Vec<i64> = summary
        .crossings
        .keys()
        .copied()
        .filter(|n| (from..to).contains(n))
        .collect();
    let svg = render_disc_svg(&s.lattice, &s.wall, &points, &crossings)?;
    let Some(path) = output else {
        return Ok((svg, None));
    };
    std::fs::write(path, &svg)
        .map_err(|e| CliError::Parameter(format!("cannot write {}: {e}", path.display())))?;
    let mut doc = scenario_inputs(
        ResultDocument::new("plot-disc", &["poincare-disc-projection"]),
        args,
        &s,
    )
    .input("from", from)
    .input("to", to)
    .input("output", path.display().to_string());
    doc.results = json!({ "path": path.display().to_string(), "bytes": svg.len(), "crossings": crossings, "points": points.len() });
    Ok((svg, Some(doc)))
}
