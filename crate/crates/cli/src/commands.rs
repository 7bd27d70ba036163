//! The subcommands. Each produces a [`Document`] and the resolved
//! configuration that goes into the run manifest.

use rayon::prelude::*;
use serde_json::{Map, Value};
use swanson_core::fock_matrix::{eig_order, DEFAULT_DIMS};
use swanson_core::perturbation::{
    convergence_diagnostic, coupling_bound_ok, exact_radius_ok, MIN_DIAGNOSTIC_ORDER,
};
use swanson_core::{
    case1_hermitize, case2_chain, convergence_study, rs_corrections, Complex64, Error, FockMatrix,
    QuadraticOperator, SpectrumClass, SwansonParams, TransformChain, DEFAULT_CLASSIFY_TOL,
};

use crate::args::{variant_name, ChainKind, Command, ConvergenceMethod, SpectrumMethod};
use crate::config::Settings;
use crate::document::{Cell, Document};
use crate::error::CliError;
use crate::grid::ScanGrid;

pub const DEFAULT_LEVELS: usize = 5;
pub const DEFAULT_TRUNC: usize = 256;
pub const DEFAULT_ORDER: usize = 12;
pub const DEFAULT_MAX_POINTS: usize = 1_000_000;
/// Default `--tol` for truncation drift and numeric-versus-exact checks.
pub const DEFAULT_DRIFT_TOL: f64 = 1e-8;

pub const CLASSIFY_COLUMNS: [&str; 6] =
    ["w", "alpha", "beta", "omega_squared", "mass_term", "class"];

pub struct Outcome {
    pub doc: Document,
    pub config: Map<String, Value>,
    /// Reported after the document has been emitted.
    pub failure: Option<anyhow::Error>,
}

struct ConfigBuilder(Map<String, Value>);

impl ConfigBuilder {
    fn new(command: &str) -> Self {
        let mut map = Map::new();
        map.insert("command".into(), command.into());
        Self(map)
    }

    fn set(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.into(), value.into());
        self
    }

    fn point(self, p: &SwansonParams) -> Self {
        self.set("w", p.w).set("alpha", p.alpha).set("beta", p.beta)
    }
}

pub fn execute(command: &Command, s: &Settings) -> anyhow::Result<Outcome> {
    let format = s.format()?;
    let mut outcome = match command {
        Command::Spectrum { levels, method } => {
            let levels = s.pick(*levels, s.file.levels, DEFAULT_LEVELS);
            let method =
                s.pick_enum("method", *method, &s.file.method, SpectrumMethod::Analytic)?;
            spectrum(s, levels, method)?
        }
        Command::Classify => classify(s)?,
        Command::Perturb { level, order } => {
            let level = s.pick(*level, s.file.level, 0);
            let order = s.pick(*order, s.file.order, DEFAULT_ORDER);
            perturb(s, level, order)?
        }
        Command::Transform { chain, levels } => {
            let chain = match (chain, &s.file.chain) {
                (Some(c), _) => *c,
                (None, Some(c)) => crate::config::parse_enum("chain", c)?,
                (None, None) => return Err(CliError::Invalid("--chain is required".into()).into()),
            };
            let levels = s.pick(*levels, s.file.levels, DEFAULT_LEVELS);
            transform(s, chain, levels)?
        }
        Command::Scan { max_points } => {
            let cap = s.pick(*max_points, s.file.max_points, DEFAULT_MAX_POINTS);
            scan(s, cap)?
        }
        Command::Convergence {
            dims,
            levels,
            method,
        } => {
            let dims = s.dims(dims, &DEFAULT_DIMS)?;
            let levels = s.pick(*levels, s.file.levels, DEFAULT_LEVELS);
            let method = s.pick_enum("method", *method, &s.file.method, ConvergenceMethod::Raw)?;
            convergence(s, &dims, levels, method)?
        }
    };
    outcome
        .config
        .insert("format".into(), format.as_str().into());
    if let Some(out) = s.out() {
        outcome
            .config
            .insert("out".into(), out.display().to_string().into());
    }
    if let Some(jobs) = s.jobs() {
        outcome.config.insert("jobs".into(), jobs.into());
    }
    Ok(outcome)
}

fn params(s: &Settings) -> anyhow::Result<SwansonParams> {
    let (w, a, b) = s.point()?;
    Ok(SwansonParams::new(w, a, b)?)
}

fn classify_row(p: &SwansonParams, tol: f64) -> Vec<Cell> {
    vec![
        p.w.into(),
        p.alpha.into(),
        p.beta.into(),
        p.omega_squared().into(),
        p.mass_term().into(),
        p.classify(tol).as_str().into(),
    ]
}

fn classify(s: &Settings) -> anyhow::Result<Outcome> {
    let p = params(s)?;
    let tol = s.tol(DEFAULT_CLASSIFY_TOL)?;
    let mut doc = Document::new("classify", CLASSIFY_COLUMNS.to_vec());
    doc.push_row(classify_row(&p, tol));
    Ok(Outcome {
        doc,
        config: ConfigBuilder::new("classify").point(&p).set("tol", tol).0,
        failure: None,
    })
}

fn scan(s: &Settings, cap: usize) -> anyhow::Result<Outcome> {
    let (w, alpha, beta) = s.axes()?;
    let grid = ScanGrid { w, alpha, beta };
    let tol = s.tol(DEFAULT_CLASSIFY_TOL)?;
    if s.out().is_none() {
        return Err(CliError::Invalid("scan requires --out".into()).into());
    }
    let count = grid
        .point_count()
        .filter(|&n| n <= cap)
        .ok_or_else(|| CliError::Invalid(format!("grid exceeds the point cap of {cap}")))?;

    let rows: Vec<Vec<Cell>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let (w, a, b) = grid.point(i);
            SwansonParams::new(w, a, b).map(|p| classify_row(&p, tol))
        })
        .collect::<Result<_, _>>()?;
    let mut doc = Document::new("scan", CLASSIFY_COLUMNS.to_vec());
    doc.rows = rows;

    let config = ConfigBuilder::new("scan")
        .set("w", w.to_string())
        .set("alpha", alpha.to_string())
        .set("beta", beta.to_string())
        .set("tol", tol)
        .set("max_points", cap)
        .set("point_count", count)
        .0;
    Ok(Outcome {
        doc,
        config,
        failure: None,
    })
}

const SPECTRUM_COLUMNS: [&str; 6] = ["n", "E_real", "E_imag", "method", "residual", "converged"];

fn spectrum(s: &Settings, levels: usize, method: SpectrumMethod) -> anyhow::Result<Outcome> {
    let p = params(s)?;
    if levels == 0 {
        return Err(CliError::Invalid("--levels must be positive".into()).into());
    }
    let name = variant_name(&method);
    let mut doc = Document::new("spectrum", SPECTRUM_COLUMNS.to_vec());
    let mut config = ConfigBuilder::new("spectrum")
        .point(&p)
        .set("levels", levels)
        .set("method", name.as_str());
    let class = p.classify(DEFAULT_CLASSIFY_TOL);

    match method {
        SpectrumMethod::Analytic => {
            for n in 0..levels {
                let e = p.exact_energy(n)?;
                doc.push_row(vec![
                    n.into(),
                    e.into(),
                    0.0.into(),
                    name.as_str().into(),
                    Cell::Null,
                    true.into(),
                ]);
            }
        }
        SpectrumMethod::RawFock => {
            let trunc = s.trunc(DEFAULT_TRUNC);
            let tol = s.tol(DEFAULT_DRIFT_TOL)?;
            config = config.set("trunc", trunc).set("tol", tol);
            if trunc / 2 < levels + 2 {
                return Err(CliError::Invalid(format!(
                    "--trunc {trunc} is too small: need trunc/2 >= levels + 2"
                ))
                .into());
            }
            let op = p.build();
            let (full, half) = rayon::join(
                || FockMatrix::materialize(&op, trunc)?.eigenvalues(),
                || FockMatrix::materialize(&op, trunc / 2)?.eigenvalues(),
            );
            let (full, half) = (full?, half?);
            let picked = full.lowest_by_magnitude(levels);
            let previous = half.lowest_by_magnitude(levels);
            for (n, (e, e_half)) in picked.iter().zip(&previous).enumerate() {
                let idx = full
                    .eigenvalues
                    .iter()
                    .position(|z| z == e)
                    .expect("picked eigenvalue belongs to the spectrum");
                let converged = (e - e_half).norm() < tol;
                doc.push_row(vec![
                    n.into(),
                    e.re.into(),
                    e.im.into(),
                    name.as_str().into(),
                    full.residuals[idx].into(),
                    converged.into(),
                ]);
            }
            doc.push_summary("converged_pairs", full.converged_count);
        }
        SpectrumMethod::Hermitized => {
            let trunc = s.trunc(DEFAULT_TRUNC);
            let tol = s.tol(DEFAULT_DRIFT_TOL)?;
            config = config.set("trunc", trunc).set("tol", tol);
            if trunc < levels {
                return Err(CliError::Invalid(format!(
                    "--trunc {trunc} is below --levels {levels}"
                ))
                .into());
            }
            let chain = hermitizing_chain(&p, class)?;
            let exact = chain.output_phase().exact_spectrum(levels - 1)?;
            let mut numeric = FockMatrix::materialize(&chain.output, trunc)?
                .eigenvalues()?
                .eigenvalues;
            numeric.sort_by(eig_order);
            for (n, (e, z)) in exact.iter().zip(&numeric).enumerate() {
                let residual = (z - Complex64::new(*e, 0.0)).norm();
                doc.push_row(vec![
                    n.into(),
                    (*e).into(),
                    0.0.into(),
                    name.as_str().into(),
                    residual.into(),
                    (residual <= tol).into(),
                ]);
            }
        }
    }
    doc.push_summary("class", class.as_str());
    Ok(Outcome {
        doc,
        config: config.0,
        failure: None,
    })
}

fn hermitizing_chain(p: &SwansonParams, class: SpectrumClass) -> anyhow::Result<TransformChain> {
    Ok(match class {
        SpectrumClass::RealCaseI | SpectrumClass::HermitianLimit => case1_hermitize(p)?,
        SpectrumClass::RealCaseII => case2_chain(p)?,
        other => {
            return Err(Error::NotRealSpectrum {
                class: other.to_string(),
            }
            .into())
        }
    })
}

fn perturb(s: &Settings, level: usize, order: usize) -> anyhow::Result<Outcome> {
    let p = params(s)?;
    let series = rs_corrections(&p, level, order)?;
    let exact = p.exact_energy(level).ok();

    let mut doc = Document::new("perturb", vec!["k", "E_k", "partial_sum", "abs_error"]);
    for (k, (e, sum)) in series.orders.iter().zip(&series.partial_sums).enumerate() {
        doc.push_row(vec![
            k.into(),
            (*e).into(),
            (*sum).into(),
            exact.map(|x| (sum - x).abs()).into(),
        ]);
    }
    doc.push_summary("exact", exact);
    let ratio_flag = if order >= MIN_DIAGNOSTIC_ORDER {
        Cell::Bool(convergence_diagnostic(&series, &p)?.ratio_flag)
    } else {
        Cell::Null
    };
    doc.push_summary("ratio_flag", ratio_flag);
    doc.push_summary("exact_radius_ok", exact_radius_ok(&p));
    doc.push_summary("coupling_bound_ok", coupling_bound_ok(&p));

    let config = ConfigBuilder::new("perturb")
        .point(&p)
        .set("level", level)
        .set("order", order)
        .0;
    Ok(Outcome {
        doc,
        config,
        failure: None,
    })
}

const TRANSFORM_COLUMNS: [&str; 18] = [
    "stage",
    "generator",
    "parameter_re",
    "parameter_im",
    "c_num_re",
    "c_num_im",
    "c_low_re",
    "c_low_im",
    "c_raise_re",
    "c_raise_im",
    "c_const_re",
    "c_const_im",
    "g_pp_re",
    "g_pp_im",
    "g_xx_re",
    "g_xx_im",
    "g_cross_re",
    "g_cross_im",
];

fn coefficient_cells(op: &QuadraticOperator) -> Vec<Cell> {
    let g = op.to_phase_basis();
    [
        op.c_num, op.c_low, op.c_raise, op.c_const, g.g_pp, g.g_xx, g.g_cross,
    ]
    .iter()
    .flat_map(|z| [Cell::Float(z.re), Cell::Float(z.im)])
    .collect()
}

fn transform(s: &Settings, kind: ChainKind, levels: usize) -> anyhow::Result<Outcome> {
    let p = params(s)?;
    if levels == 0 {
        return Err(CliError::Invalid("--levels must be positive".into()).into());
    }
    let chain = match kind {
        ChainKind::Case1 => case1_hermitize(&p)?,
        ChainKind::Case2 => case2_chain(&p)?,
    };

    let mut doc = Document::new("transform", TRANSFORM_COLUMNS.to_vec());
    let mut input = vec![0usize.into(), "input".into(), Cell::Null, Cell::Null];
    input.extend(coefficient_cells(&chain.input));
    doc.push_row(input);
    for (i, (step, stage)) in chain.steps.iter().zip(&chain.stages).enumerate() {
        let generator = match step.generator {
            swanson_core::Generator::LadderSqueeze => "ladder_squeeze",
            swanson_core::Generator::Gaussian => "gaussian",
        };
        let mut row = vec![
            (i + 1).into(),
            generator.into(),
            step.parameter.re.into(),
            step.parameter.im.into(),
        ];
        row.extend(coefficient_cells(stage));
        doc.push_row(row);
    }

    doc.push_summary("hermitian", chain.hermitized);
    doc.push_summary("omega_squared_drift", chain.omega_squared_drift());
    match chain.output_phase().exact_spectrum(levels - 1) {
        Ok(levels) => {
            let slope = levels.get(1).map(|e1| e1 - levels[0]);
            doc.push_summary("spectrum_slope", slope);
            for (n, e) in levels.iter().enumerate() {
                doc.push_summary(format!("E_{n}"), *e);
            }
        }
        Err(e) => {
            doc.push_summary("spectrum_slope", Cell::Null);
            doc.push_summary("spectrum_error", e.to_string().as_str());
        }
    }

    let config = ConfigBuilder::new("transform")
        .point(&p)
        .set("chain", variant_name(&kind))
        .set("levels", levels)
        .0;
    Ok(Outcome {
        doc,
        config,
        failure: None,
    })
}

fn convergence(
    s: &Settings,
    dims: &[usize],
    levels: usize,
    method: ConvergenceMethod,
) -> anyhow::Result<Outcome> {
    let p = params(s)?;
    let tol = s.tol(DEFAULT_DRIFT_TOL)?;
    let op = match method {
        ConvergenceMethod::Raw => p.build(),
        ConvergenceMethod::Hermitized => {
            hermitizing_chain(&p, p.classify(DEFAULT_CLASSIFY_TOL))?.output
        }
    };
    let report = convergence_study(&op, dims, levels, tol)?;

    let mut doc = Document::new(
        "convergence",
        vec!["n", "dim_low", "dim_high", "drift", "below_tol"],
    );
    for n in 0..levels {
        for (pair, drift) in dims.windows(2).zip(&report.drifts) {
            doc.push_row(vec![
                n.into(),
                pair[0].into(),
                pair[1].into(),
                drift[n].into(),
                (drift[n] < tol).into(),
            ]);
        }
    }
    doc.push_summary("stable_levels", report.stable_levels);
    for (n, (z, stable)) in report.levels.iter().zip(&report.stable).enumerate() {
        doc.push_summary(format!("E_{n}_real"), z.re);
        doc.push_summary(format!("E_{n}_imag"), z.im);
        doc.push_summary(format!("stable_{n}"), *stable);
    }

    let failure = (report.stable_levels == 0).then(|| {
        CliError::NoStableLevels(format!(
            "no level drifts less than {tol:e} between dimensions {} and {}",
            dims[dims.len() - 2],
            dims[dims.len() - 1]
        ))
        .into()
    });
    let config = ConfigBuilder::new("convergence")
        .point(&p)
        .set("dims", dims.to_vec())
        .set("levels", levels)
        .set("method", variant_name(&method))
        .set("tol", tol)
        .0;
    Ok(Outcome {
        doc,
        config,
        failure,
    })
}
