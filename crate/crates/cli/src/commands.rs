//! The four subcommands, separated from file and argument handling.

use lpkit::basis::{synthesize, BasisTerm, WeightedExpansion, DEFAULT_CLUSTER_TOL};
use lpkit::dct::{construct_lp_from_selection, dct1_forward, select_top_p};
use lpkit::diffop::{construct_diff_lp, order_sweep, refinement_experiment};
use lpkit::lsq::{identify_bases_with, FitMethod};
use lpkit::{iterate, Execution, LpCoefficients, LpModel, Signal};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::input::{format_signal, KeyValues};
use crate::report::{number, BasisEntry, ReportDocument};

/// Builds the model described by a synthesis spec: either `bases` with
/// `weights`, or recurrence coefficients `a` with `initial` values.
pub fn synth_model(spec: &KeyValues) -> Result<LpModelSource> {
    spec.restrict(&["bases", "weights", "a", "initial"])?;
    if spec.has("bases") || spec.has("weights") {
        if spec.has("a") || spec.has("initial") {
            return Err(CliError::data(
                "give either `bases`/`weights` or `a`/`initial`, not both",
            ));
        }
        let bases = spec.tuples("bases")?;
        let weights = spec.tuples("weights")?;
        let line = spec.line("bases").unwrap_or(0);
        if bases.len() != weights.len() {
            return Err(CliError::data(format!(
                "line {line}: {} bases but {} weights",
                bases.len(),
                weights.len()
            )));
        }
        let mut expansion = WeightedExpansion::new();
        for (basis, weight) in bases.iter().zip(&weights) {
            let (rho, theta, power) = match basis.as_slice() {
                [r, t, k] if *k >= 0.0 && k.fract() == 0.0 && *k <= u32::MAX as f64 => {
                    (*r, *t, *k as u32)
                }
                _ => {
                    return Err(CliError::data(format!(
                    "line {line}: a basis is (rho, theta, power) with a non-negative integer power"
                )))
                }
            };
            let (b, c) = match weight.as_slice() {
                [b] => (*b, 0.0),
                [b, c] => (*b, *c),
                _ => {
                    let wl = spec.line("weights").unwrap_or(0);
                    return Err(CliError::data(format!(
                        "line {wl}: a weight is (b) or (b, c)"
                    )));
                }
            };
            let (term, sin_sign) = BasisTerm::canonical(rho, theta, power)
                .map_err(|e| CliError::data(format!("line {line}: {e}")))?;
            if term.is_real() && c != 0.0 {
                return Err(CliError::data(format!(
                    "line {line}: basis with theta {} has no sine part, its c weight must be 0",
                    term.theta()
                )));
            }
            expansion
                .push(term, b, sin_sign * c)
                .map_err(|e| CliError::data(format!("line {line}: {e}")))?;
        }
        Ok(LpModelSource::Expansion(expansion))
    } else {
        let a = LpCoefficients::new(spec.numbers("a")?)?;
        let model = LpModel::new(a, spec.numbers("initial")?)?;
        Ok(LpModelSource::Recurrence(model))
    }
}

pub enum LpModelSource {
    Expansion(WeightedExpansion),
    Recurrence(LpModel),
}

/// CSV text of `count` samples generated from a synthesis spec.
pub fn synth(spec: &KeyValues, count: usize) -> Result<String> {
    if count == 0 {
        return Err(CliError::data("--count must be positive"));
    }
    let signal = match synth_model(spec)? {
        LpModelSource::Expansion(e) => synthesize(&e, count)?,
        LpModelSource::Recurrence(m) => iterate(&m, count)?,
    };
    Ok(format_signal(signal.samples()))
}

fn entry(term: &BasisTerm, b: f64, c: f64) -> BasisEntry {
    BasisEntry {
        rho: term.rho(),
        theta: term.theta(),
        power: term.power(),
        b,
        c,
    }
}

pub fn fit(
    signal: &Signal,
    input: &str,
    order: usize,
    method: FitMethod,
) -> Result<ReportDocument> {
    let id = identify_bases_with(signal, order, method, DEFAULT_CLUSTER_TOL)?;
    let mut doc = ReportDocument::new("fit");
    doc.input("input", input)
        .input("method", method.as_str())
        .input("order", order)
        .input("samples", signal.len());
    doc.coefficients = Some(id.coefficients.as_slice().to_vec());
    doc.initial = Some(signal.samples()[..order].to_vec());
    doc.bases = Some(
        id.expansion
            .terms()
            .iter()
            .map(|t| entry(&t.basis, t.b, t.c))
            .collect(),
    );
    doc.mse = Some(id.report.mse);
    let d = &id.diagnostics;
    let mut diag = Map::new();
    diag.insert(
        "condition_estimate".into(),
        number("condition_estimate", d.condition_estimate)?,
    );
    diag.insert("rank".into(), d.rank.into());
    diag.insert(
        "residual_mse".into(),
        number("residual_mse", d.residual_mse)?,
    );
    diag.insert(
        "weight_condition".into(),
        number("weight_condition", id.weight_condition)?,
    );
    doc.diagnostics = Some(diag);
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructMethod {
    Dct,
    Diff,
}

impl ConstructMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructMethod::Dct => "dct",
            ConstructMethod::Diff => "diff",
        }
    }
}

/// Relative slack allowed when checking a constructed model against its bound.
pub const BOUND_SLACK: f64 = 1e-12;

pub fn construct(
    signal: &Signal,
    input: &str,
    method: ConstructMethod,
    p: usize,
) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("construct");
    doc.input("input", input)
        .input("method", method.as_str())
        .input("p", p)
        .input("samples", signal.len());
    let mut diag = Map::new();
    let (model, report) = match method {
        ConstructMethod::Dct => {
            let coeffs = dct1_forward(signal)?;
            let sel = select_top_p(&coeffs, p, None)?;
            let (model, report) = construct_lp_from_selection(signal, &coeffs, &sel)?;
            let b = coeffs.as_slice();
            doc.bases = Some(
                sel.selected
                    .iter()
                    .map(|&k| entry(&coeffs.basis(k), b[k], 0.0))
                    .collect(),
            );
            diag.insert("nonzero".into(), sel.nonzero.into());
            diag.insert("order".into(), model.order().into());
            diag.insert("selected".into(), sel.selected.clone().into());
            (model, report)
        }
        ConstructMethod::Diff => {
            let (model, report, bounds) = construct_diff_lp(signal, p)?;
            diag.insert("lambda".into(), number("lambda", bounds.lambda)?);
            diag.insert(
                "max_abs_diff".into(),
                number("max_abs_diff", bounds.max_abs_diff)?,
            );
            diag.insert("omega".into(), number("omega", bounds.omega)?);
            (model, report)
        }
    };
    let bound = report.bound.expect("constructors always report a bound");
    if !(report.mse <= bound + BOUND_SLACK * (1.0 + bound)) {
        return Err(CliError::Invariant(format!(
            "mse {} exceeds the {} bound {bound}",
            report.mse,
            method.as_str()
        )));
    }
    doc.coefficients = Some(model.coefficients().as_slice().to_vec());
    doc.initial = Some(model.initial().to_vec());
    doc.mse = Some(report.mse);
    doc.bound = Some(bound);
    doc.diagnostics = Some(diag);
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Refine,
    OrderSweep,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Refine => "refine",
            ExperimentKind::OrderSweep => "order-sweep",
        }
    }
}

/// A built-in test function.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    Sin,
    Cos,
    Exp,
    Linear,
    /// Ascending-power coefficients.
    Poly(Vec<f64>),
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TestFunction::Sin => x.sin(),
            TestFunction::Cos => x.cos(),
            TestFunction::Exp => x.exp(),
            TestFunction::Linear => x,
            TestFunction::Poly(c) => c.iter().rev().fold(0.0, |acc, &ck| acc.mul_add(x, ck)),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            TestFunction::Sin => "sin",
            TestFunction::Cos => "cos",
            TestFunction::Exp => "exp",
            TestFunction::Linear => "linear",
            TestFunction::Poly(_) => "poly",
        }
    }
}

/// Parsed experiment config. `n` holds one sample count per refinement row,
/// or the single count for an order sweep; `p` likewise.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub function: TestFunction,
    pub lo: f64,
    pub hi: f64,
    pub p: Vec<usize>,
    pub n: Vec<usize>,
}

impl ExperimentConfig {
    pub fn parse(kv: &KeyValues, kind: ExperimentKind) -> Result<Self> {
        kv.restrict(&["function", "coefficients", "interval", "p", "n"])?;
        let name = kv.string("function")?;
        let has_coeffs = kv.has("coefficients");
        let function = match name.as_str() {
            "sin" => TestFunction::Sin,
            "cos" => TestFunction::Cos,
            "exp" => TestFunction::Exp,
            "linear" => TestFunction::Linear,
            "poly" => TestFunction::Poly(kv.numbers("coefficients")?),
            other => {
                return Err(CliError::data(format!(
                    "line {}: unknown function `{other}` (expected sin, cos, exp, linear or poly)",
                    kv.line("function").unwrap_or(0)
                )))
            }
        };
        if has_coeffs && !matches!(function, TestFunction::Poly(_)) {
            return Err(CliError::data(format!(
                "line {}: `coefficients` only applies to poly",
                kv.line("coefficients").unwrap_or(0)
            )));
        }
        let interval = kv.numbers("interval")?;
        let [lo, hi] = interval[..] else {
            return Err(CliError::data(format!(
                "line {}: interval is `lo, hi`",
                kv.line("interval").unwrap_or(0)
            )));
        };
        let p = kv.integers("p")?;
        let n = kv.integers("n")?;
        let (single, key) = match kind {
            ExperimentKind::Refine => (&p, "p"),
            ExperimentKind::OrderSweep => (&n, "n"),
        };
        if single.len() != 1 {
            return Err(CliError::data(format!(
                "line {}: {} takes a single `{key}`",
                kv.line(key).unwrap_or(0),
                kind.as_str()
            )));
        }
        Ok(Self {
            function,
            lo,
            hi,
            p,
            n,
        })
    }
}

fn row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn experiment(
    kind: ExperimentKind,
    cfg: &ExperimentConfig,
    config_name: &str,
    exec: Execution,
) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("experiment");
    doc.input("config", config_name)
        .input("kind", kind.as_str())
        .input("function", cfg.function.name())
        .input(
            "interval",
            vec![number("interval", cfg.lo)?, number("interval", cfg.hi)?],
        )
        .input("p", cfg.p.clone())
        .input("n", cfg.n.clone());
    if let TestFunction::Poly(c) = &cfg.function {
        let c = c
            .iter()
            .map(|&v| number("coefficients", v))
            .collect::<Result<Vec<_>>>()?;
        doc.input("coefficients", c);
    }
    let f = |x: f64| cfg.function.eval(x);
    let rows = match kind {
        ExperimentKind::Refine => refinement_experiment(f, cfg.lo, cfg.hi, cfg.p[0], &cfg.n, exec)?
            .into_iter()
            .map(|r| {
                Ok(row(&[
                    ("n", r.n.into()),
                    ("mse", number("mse", r.mse)?),
                    ("max_abs_diff", number("max_abs_diff", r.max_abs_diff)?),
                    ("bound", number("bound", r.bound)?),
                ]))
            })
            .collect::<Result<Vec<_>>>()?,
        ExperimentKind::OrderSweep => {
            let signal = Signal::sample(f, cfg.lo, cfg.hi, cfg.n[0])?;
            order_sweep(&signal, &cfg.p, exec)?
                .into_iter()
                .map(|r| Ok(row(&[("p", r.p.into()), ("mse", number("mse", r.mse)?)])))
                .collect::<Result<Vec<_>>>()?
        }
    };
    doc.table = Some(rows);
    Ok(doc)
}
