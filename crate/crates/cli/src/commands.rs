use dplab_core::analysis::{
    asymptotic_total, classic_cost, partition_cost_clairvoyant, partition_cost_count,
    total_cost_clairvoyant_closed, total_cost_count_closed, Variant,
};
use dplab_core::exact::{binomial, harmonic, integer, HarmonicKind};
use dplab_core::montecarlo::{simulate, SimulationConfig, Target};
use dplab_core::optimality::{
    enumerate_strategies, min_additional_cost, strategy_additional_costs, StrategyTable,
};
use dplab_core::paths::{
    enumerate_paths, expected_zeros_closed, identity_quadruple, urn_endpoint_distribution,
    urn_path_law_matches_two_stage, zeros_distribution,
};
use dplab_core::sort::Algorithm;
use dplab_core::sweep::permutation_sweep;
use dplab_core::Rational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cli::Suite;
use crate::error::CliError;
use crate::report::{check_row, format_f64, ReportRow};

pub const MAX_BRUTEFORCE_N: u64 = 8;

pub fn cmd_exact(from: u64, to: u64) -> Result<Vec<ReportRow>, CliError> {
    if from < 1 || from > to {
        return Err(CliError::Usage(format!(
            "need 1 <= --from <= --to, got {from}..{to}"
        )));
    }
    let mut rows = Vec::new();
    for n in from..=to {
        if n >= 2 {
            rows.push(ReportRow::new(n, "partition_count").exact(&partition_cost_count(n)?));
            rows.push(
                ReportRow::new(n, "partition_clairvoyant").exact(&partition_cost_clairvoyant(n)?),
            );
        }
        rows.push(ReportRow::new(n, "total_count").exact(&total_cost_count_closed(n)?));
        rows.push(ReportRow::new(n, "total_clairvoyant").exact(&total_cost_clairvoyant_closed(n)?));
        rows.push(ReportRow::new(n, "total_classic").exact(&classic_cost(n)));
        for variant in Variant::ALL {
            rows.push(
                ReportRow::new(n, format!("asymptotic_{variant}"))
                    .decimal(asymptotic_total(variant, n)),
            );
        }
    }
    Ok(rows)
}

fn closed_form(algorithm: Algorithm, n: u64) -> Result<Rational, CliError> {
    Ok(match algorithm {
        Algorithm::Count => total_cost_count_closed(n)?,
        Algorithm::Clairvoyant => total_cost_clairvoyant_closed(n)?,
        Algorithm::Classic => classic_cost(n),
    })
}

pub fn cmd_bruteforce(n: u64, algorithm: Algorithm) -> Result<Vec<ReportRow>, CliError> {
    if n > MAX_BRUTEFORCE_N {
        return Err(CliError::Usage(format!(
            "bruteforce sweeps all n! inputs and is limited to n <= {MAX_BRUTEFORCE_N}, got n = {n}"
        )));
    }
    let sweep = permutation_sweep(n, algorithm)?;
    let average = sweep.average();
    let reference = closed_form(algorithm, n)?;
    let name = algorithm.name();
    let mut mean = ReportRow::new(n, format!("mean_comparisons_{name}")).exact(&average);
    mean.samples = Some(sweep.permutations);
    Ok(vec![
        mean,
        ReportRow::new(n, format!("reference_{name}")).exact(&reference),
        check_row(n, &format!("match_{name}"), average == reference),
    ])
}

pub fn cmd_simulate(config: &SimulationConfig, target: Target) -> Result<Vec<ReportRow>, CliError> {
    let mut rows = Vec::new();
    for estimate in simulate(target, config)? {
        let mut row =
            ReportRow::new(config.n, estimate.quantity.clone()).exact(&estimate.reference);
        row.empirical = Some(format_f64(estimate.mean));
        row.stderr = Some(format_f64(estimate.std_error));
        row.samples = Some(config.samples);
        row.seed = Some(config.seed);
        rows.push(row);

        let mut z = ReportRow::new(config.n, format!("{}_zscore", estimate.quantity))
            .decimal(estimate.z_score());
        z.samples = Some(config.samples);
        z.seed = Some(config.seed);
        rows.push(z);
    }
    Ok(rows)
}

pub fn cmd_verify(suite: Suite) -> Result<Vec<ReportRow>, CliError> {
    match suite {
        Suite::Identity => verify_identity(),
        Suite::Distribution => verify_distribution(),
        Suite::Optimality => verify_optimality(),
        Suite::Urn => verify_urn(),
        Suite::Dominance => verify_dominance(),
    }
}

pub const IDENTITY_MAX_N: u64 = 300;

fn verify_identity() -> Result<Vec<ReportRow>, CliError> {
    Ok((0..=IDENTITY_MAX_N)
        .into_par_iter()
        .map(|n| {
            let q = identity_quadruple(n);
            let closed = expected_zeros_closed(n);
            check_row(n, "identity", q.all_equal() && q.double_sum == closed).exact(&closed)
        })
        .collect())
}

fn verify_distribution() -> Result<Vec<ReportRow>, CliError> {
    let mut rows = Vec::new();
    for n in 0..=100u64 {
        let pmf: Vec<Rational> = (0..=n + 2).map(|r| zeros_distribution(n, r)).collect();
        let mass: Rational = pmf.iter().sum();
        let mean: Rational = pmf
            .iter()
            .enumerate()
            .map(|(r, p)| p * integer(r as u64))
            .sum();
        rows.push(check_row(n, "distribution_mass", mass.is_one()).exact(&mass));
        rows.push(
            check_row(
                n,
                "distribution_mean",
                mean == harmonic(HarmonicKind::Odd, n + 1),
            )
            .exact(&mean),
        );
    }
    for n in 0..=14u64 {
        let enumeration = enumerate_paths(n)?;
        let matches = enumeration
            .zeros_pmf
            .iter()
            .enumerate()
            .all(|(r, p)| *p == zeros_distribution(n, r as u64));
        rows.push(check_row(n, "distribution_enumeration", matches));
    }
    let n = 400;
    for r in 1..=5u64 {
        let p = zeros_distribution(n, r);
        let limit = 1.0 / (r * (r + 1)) as f64;
        let gap = (p.to_f64().unwrap_or(f64::NAN) - limit).abs();
        rows.push(check_row(n, &format!("distribution_limit_r{r}"), gap <= 0.01).exact(&p));
    }
    Ok(rows)
}

pub const OPTIMALITY_MAX_N: u64 = 200;

fn verify_optimality() -> Result<Vec<ReportRow>, CliError> {
    let count_table = match StrategyTable::count(OPTIMALITY_MAX_N) {
        StrategyTable::Counts(table) => table,
        StrategyTable::Prefixes(_) => unreachable!("count strategy is count-based"),
    };
    let count_costs = strategy_additional_costs(&count_table, OPTIMALITY_MAX_N)?;
    let minima: Vec<Rational> = (2..=OPTIMALITY_MAX_N)
        .into_par_iter()
        .map(min_additional_cost)
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut previous = Rational::zero();
    for (n, min) in (2..=OPTIMALITY_MAX_N).zip(&minima) {
        let count = &count_costs[n as usize];
        rows.push(check_row(n, "dp_min_equals_count", min == count).exact(min));

        let necessary = integer(n - 1) + Rational::new((n as i64 - 2).into(), 3.into());
        let from_partition = partition_cost_count(n)? - &necessary;
        rows.push(check_row(
            n,
            "count_equals_partition_split",
            *count == from_partition,
        ));

        let oracle = partition_cost_clairvoyant(n)? - &necessary;
        let beats = if n >= 4 {
            oracle < *min
        } else {
            oracle <= *min
        };
        rows.push(check_row(n, "clairvoyant_below_min", beats).exact(&oracle));

        rows.push(check_row(n, "min_nondecreasing", *min >= previous));
        previous = min.clone();
    }
    for n in 2..=5u64 {
        let search = enumerate_strategies(n)?;
        let dp = &minima[(n - 2) as usize];
        rows.push(check_row(n, "exhaustive_min_equals_dp", search.min == *dp).exact(&search.min));
        rows.push(check_row(
            n,
            "exhaustive_count_optimal",
            search.count_is_optimal,
        ));
        rows.push(check_row(
            n,
            "exhaustive_agrees_off_ties",
            search.optima_agree_with_count_off_ties,
        ));
        let mut ties = ReportRow::new(n, "exhaustive_optimal_strategies");
        ties.exact = Some(search.optimal_strategies.to_string());
        ties.decimal = Some(search.optimal_strategies.to_string());
        rows.push(ties);
    }
    Ok(rows)
}

fn verify_urn() -> Result<Vec<ReportRow>, CliError> {
    let mut rows = Vec::new();
    for n in 0..=30u64 {
        let law = urn_endpoint_distribution(2, n)?;
        let p = Rational::new(1.into(), (n + 1).into());
        let uniform = law.len() as u64 == n + 1 && law.values().all(|q| *q == p);
        rows.push(check_row(n, "urn_uniform_endpoints", uniform).exact(&p));
    }
    for n in 0..=12u64 {
        rows.push(check_row(
            n,
            "urn_path_law",
            urn_path_law_matches_two_stage(2, n)?,
        ));
    }
    for n in 0..=8u64 {
        let law = urn_endpoint_distribution(3, n)?;
        let p = Rational::new(1.into(), binomial(n + 2, 2));
        let uniform = law.values().all(|q| *q == p) && law.len() as u64 == (n + 1) * (n + 2) / 2;
        rows.push(check_row(n, "urn3_uniform_endpoints", uniform).exact(&p));
    }
    Ok(rows)
}

pub const DOMINANCE_MAX_N: u64 = 200;

fn verify_dominance() -> Result<Vec<ReportRow>, CliError> {
    (1..=DOMINANCE_MAX_N)
        .map(|n| {
            let count = total_cost_count_closed(n)?;
            let classic = classic_cost(n);
            let ok = count <= classic && (count == classic) == (n <= 3);
            Ok(check_row(n, "count_le_classic", ok).exact(&(classic - count)))
        })
        .collect()
}
