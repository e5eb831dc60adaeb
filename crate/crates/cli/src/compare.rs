//! The `compare` command: closed forms and oracle for one parameter point.

use qdetect_core::channels::{
    depolarizing_pair, depolarizing_pair_mixed, target_pair_bipartite, target_pair_single_mode,
    HypothesisPair,
};
use qdetect_core::closed_forms::{
    coherent_lower, coherent_qcb, depolarizing_error, noon_lower, noon_qcb, number_state_error,
    spdc_lower, spdc_qcb, DepolarizingInput, ScenarioParams,
};
use qdetect_core::fock::{
    coherent_ket, maximally_entangled_qudit, noon_ket, number_ket, spdc_ket, werner_state,
    Truncation,
};
use qdetect_core::oracle::{
    bhattacharyya_lower, chernoff_minimum, helstrom_error, MinimizerConfig,
};
use qdetect_core::{Error, NoiseSpec, Probability};

use crate::args::{CompareArgs, ScenarioArg};
use crate::output::format_value;
use crate::CliError;

pub const TARGET_HEADER: &str = "scenario,params,closed_exact,closed_upper,closed_lower,\
oracle_exact,oracle_upper,oracle_lower,s_star,note";
pub const DEPOLARIZING_HEADER: &str = "scenario,params,pure,max_entangled,werner,\
oracle_pure,oracle_max_entangled,oracle_werner,note";

fn cell(p: Option<Probability>) -> String {
    p.map(format_value).unwrap_or_else(|| "-".to_string())
}

pub fn compare(args: &CompareArgs) -> Result<String, CliError> {
    match args.scenario {
        ScenarioArg::Depolarizing => depolarizing(args),
        _ => target(args),
    }
}

fn depolarizing(args: &CompareArgs) -> Result<String, CliError> {
    let (d, x) = (args.d, args.x);
    let pure = depolarizing_error(d, DepolarizingInput::Pure)?;
    let entangled = depolarizing_error(d, DepolarizingInput::MaxEntangled)?;
    let werner = depolarizing_error(d, DepolarizingInput::Werner(x))?;
    let oracle = |pair: qdetect_core::Result<HypothesisPair>| -> Result<Probability, CliError> {
        Ok(helstrom_error(&pair?, 1)?.probability)
    };
    let o_pure = oracle(number_ket(0, d - 1).and_then(|k| depolarizing_pair(&k, false)))?;
    let o_entangled =
        oracle(maximally_entangled_qudit(d).and_then(|k| depolarizing_pair(&k, true)))?;
    let o_werner = oracle(werner_state(d, x).and_then(|w| depolarizing_pair_mixed(&w)))?;
    Ok(format!(
        "{DEPOLARIZING_HEADER}\ndepolarizing,d={d};x={x},{},{},{},{},{},{},\n",
        format_value(pure),
        format_value(entangled),
        format_value(werner),
        format_value(o_pure),
        format_value(o_entangled),
        format_value(o_werner),
    ))
}

struct Closed {
    exact: Option<Probability>,
    upper: Probability,
    lower: Option<Probability>,
}

fn target(args: &CompareArgs) -> Result<String, CliError> {
    let noise = match (args.beta, args.n_b) {
        (Some(b), _) => NoiseSpec::from_beta(b)?,
        (None, Some(n)) => NoiseSpec::from_mean_photons(n)?,
        (None, None) => NoiseSpec::from_mean_photons(1.0)?,
    };
    let (n, n_s, m) = (args.n, args.n_s, args.m);
    let truncation = Truncation::auto(args.tail_eps);
    let (name, params, closed, pair) = match args.scenario {
        ScenarioArg::Number => {
            let exact = number_state_error(n, noise, m)?;
            let pair = number_ket(n, n as usize)
                .and_then(|k| target_pair_single_mode(&k, noise, args.cutoff, args.tail_eps))?;
            let closed = Closed {
                exact: Some(exact),
                upper: exact,
                lower: None,
            };
            (
                "number",
                ScenarioParams {
                    n: Some(n),
                    ..Default::default()
                },
                closed,
                pair,
            )
        }
        ScenarioArg::Noon => {
            let closed = Closed {
                exact: None,
                upper: noon_qcb(n, noise, m)?,
                lower: Some(noon_lower(n, noise, m)?),
            };
            let pair = noon_ket(n)
                .and_then(|k| target_pair_bipartite(&k, noise, args.cutoff, args.tail_eps))?;
            (
                "noon",
                ScenarioParams {
                    n: Some(n),
                    ..Default::default()
                },
                closed,
                pair,
            )
        }
        ScenarioArg::Coherent => {
            let closed = Closed {
                exact: None,
                upper: coherent_qcb(n_s, noise, m)?,
                lower: Some(coherent_lower(n_s, noise, m)?),
            };
            let pair = coherent_ket(n_s, truncation)
                .and_then(|k| target_pair_single_mode(&k, noise, args.cutoff, args.tail_eps))?;
            (
                "coherent",
                ScenarioParams {
                    n_s: Some(n_s),
                    ..Default::default()
                },
                closed,
                pair,
            )
        }
        ScenarioArg::Spdc => {
            let closed = Closed {
                exact: None,
                upper: spdc_qcb(n_s, noise, m)?,
                lower: Some(spdc_lower(n_s, noise, m)?),
            };
            let pair = spdc_ket(n_s, truncation)
                .and_then(|k| target_pair_bipartite(&k, noise, args.cutoff, args.tail_eps))?;
            (
                "spdc",
                ScenarioParams {
                    n_s: Some(n_s),
                    ..Default::default()
                },
                closed,
                pair,
            )
        }
        ScenarioArg::Depolarizing => unreachable!("handled by depolarizing()"),
    };
    let params = ScenarioParams {
        noise: Some(noise),
        copies: Some(m),
        ..params
    };

    let config = MinimizerConfig {
        grid_points: args.s_grid,
        ..MinimizerConfig::default()
    };
    let minimum = chernoff_minimum(&pair, &config)?;
    let upper = minimum.bound(m)?;
    let lower = bhattacharyya_lower(&pair, m)?;
    let (exact, note) = match helstrom_error(&pair, m) {
        Ok(r) => (Some(r.probability), String::new()),
        Err(Error::Size { dim, limit }) => (
            None,
            format!("oracle exact skipped: dimension {dim} exceeds the guard {limit}"),
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(format!(
        "{TARGET_HEADER}\n{name},{},{},{},{},{},{},{},{},{note}\n",
        params.describe(),
        cell(closed.exact),
        format_value(closed.upper),
        cell(closed.lower),
        cell(exact),
        format_value(upper.probability),
        format_value(lower.probability),
        minimum.s_star,
    ))
}
