use std::fmt::Write as _;

use wr_core::config::ConfigSpace;
use wr_core::dynamics::{estimate_occupancy, estimate_occupancy_chains, pool_estimates, SamplerParams};
use wr_core::extremal::{catalog, conjecture_scan, verify_catalog, BoundReport, CatalogGraph};
use wr_core::lp::{
    build_primal_from, dual_certificate, optimal_vertices, simplex_run, verify_dual_feasibility_on,
    LpOutcome,
};
use wr_core::occupancy::{alpha_k, occupancy_by_colour, occupancy_fraction, weighted_from_colours, ActivityPair};
use wr_core::partition::{hom_count_wr, wr_partition};
use wr_core::{Error, Result};

use crate::input::{activity_grid, load_graph, pair_grid, positive_float, positive_rational, write_output};
use crate::{Command, Status};

pub fn run(cmd: Command) -> Result<(String, Status)> {
    let mut out = String::new();
    let status = match cmd {
        Command::Partition { source, lambda } => {
            partition(&mut out, source.builtin.as_deref(), source.file.as_deref(), lambda.as_deref())?
        }
        Command::Occupancy {
            source,
            lambda,
            lambda1,
            lambda2,
        } => occupancy(&mut out, source.builtin.as_deref(), source.file.as_deref(), lambda, lambda1, lambda2)?,
        Command::Verify {
            catalog: name,
            builtin,
            file,
            d,
            lambda,
            grid,
            csv,
        } => {
            let graphs = match name {
                Some(name) => catalog(&name)?,
                None => {
                    let (label, g) = load_graph(builtin.as_deref(), file.as_deref())?;
                    let d = d.ok_or_else(|| Error::Usage("--d is required with --builtin or --file".into()))?;
                    vec![CatalogGraph::new(label, g, d)]
                }
            };
            let lambdas = match lambda {
                Some(l) => vec![positive_rational(&l, "λ")?],
                None => activity_grid(&grid)?,
            };
            let reports = verify_catalog(&graphs, &lambdas)?;
            if let Some(path) = csv {
                write_output(&path, &bound_csv(&reports))?;
            }
            verify(&mut out, &reports)
        }
        Command::Lp { d, lambda } => lp(&mut out, d, &positive_rational(&lambda, "λ")?)?,
        Command::Dualcert { d, lambda, csv } => {
            let lambda = positive_rational(&lambda, "λ")?;
            let space = ConfigSpace::enumerate(d)?;
            let report = verify_dual_feasibility_on(&dual_certificate(d, &lambda)?, &space)?;
            if let Some(path) = csv {
                write_output(&path, &report.to_csv())?;
            }
            let cert = &report.certificate;
            let predicate_mismatches = report.rows.iter().filter(|r| r.tight() != r.predicate).count();
            let _ = writeln!(
                out,
                "Λ_p={} Λ_c={} violations={}",
                cert.lambda_p,
                cert.lambda_c,
                report.violations.len()
            );
            let _ = writeln!(
                out,
                "configurations={} tight={} route_mismatches={} predicate_mismatches={}",
                report.rows.len(),
                report.tight_set.len(),
                report.route_mismatches.len(),
                predicate_mismatches
            );
            if report.violations.is_empty() && report.route_mismatches.is_empty() && predicate_mismatches == 0 {
                Status::Ok
            } else {
                Status::Mismatch
            }
        }
        Command::Configs { d, lambda } => {
            let lambda = lambda.map(|l| positive_rational(&l, "λ")).transpose()?;
            let space = ConfigSpace::enumerate(d)?;
            let _ = writeln!(out, "d={d} configurations={}", space.len());
            for e in space.entries() {
                let _ = write!(out, "{}\t{}", e.key, e.config.describe());
                if let Some(lam) = &lambda {
                    let _ = write!(out, "\talpha_v={}\talpha_u={}", e.stats.alpha_v(lam)?, e.stats.alpha_u(lam)?);
                }
                out.push('\n');
            }
            Status::Ok
        }
        Command::Sample {
            source,
            lambda,
            seed,
            burnin,
            samples,
            thinning,
            chains,
            csv,
        } => {
            let (label, g) = load_graph(source.builtin.as_deref(), source.file.as_deref())?;
            let lambda = positive_float(&lambda, "λ")?;
            if chains == 0 {
                return Err(Error::Usage("--chains must be at least 1".into()));
            }
            let mut params = SamplerParams::with_defaults(&g, samples, seed);
            params.thinning = thinning;
            if let Some(b) = burnin {
                params.burn_in = b;
            }
            let seeds: Vec<u64> = (0..chains).map(|i| seed.wrapping_add(i)).collect();
            let runs = estimate_occupancy_chains(&g, lambda, &params, &seeds)?;
            if let Some(path) = csv {
                let mut trace = String::from("step,fraction\n");
                estimate_occupancy(&g, lambda, &params, Some(&mut |s, x| {
                    let _ = writeln!(trace, "{s},{x}");
                }))?;
                write_output(&path, &trace)?;
            }
            let pooled = pool_estimates(&runs)?;
            let _ = writeln!(out, "graph={label} n={} λ={lambda} rng={}", g.n(), pooled.algorithm);
            let _ = writeln!(
                out,
                "burnin={} samples={} thinning={} seeds={:?}",
                params.burn_in, params.samples, params.thinning, pooled.seeds
            );
            if runs.len() > 1 {
                for (r, s) in runs.iter().zip(&seeds) {
                    let _ = writeln!(out, "chain seed={s} estimate={:.6} stderr={:.6}", r.estimate, r.stderr);
                }
            }
            let _ = writeln!(out, "estimate={:.6} stderr={:.6}", pooled.estimate, pooled.stderr);
            Status::Ok
        }
        Command::Scan { catalog: name, grid, csv } => {
            let graphs = catalog(&name)?;
            let report = conjecture_scan(&graphs, &pair_grid(&grid)?)?;
            let csv_text = report.to_csv();
            match csv {
                Some(path) => {
                    write_output(&path, &csv_text)?;
                    let _ = writeln!(
                        out,
                        "catalog={name} graphs={} comparisons={} violations={}",
                        graphs.len(),
                        report.rows.len(),
                        report.violations().len()
                    );
                }
                None => out.push_str(&csv_text),
            }
            let violations = report.violations();
            for v in &violations {
                eprintln!(
                    "COUNTEREXAMPLE {} {} at ({}, {}): {} > {}",
                    v.graph,
                    v.check,
                    v.activity.lambda1(),
                    v.activity.lambda2(),
                    v.lhs,
                    v.rhs
                );
            }
            if violations.is_empty() {
                Status::Ok
            } else {
                Status::Counterexample
            }
        }
    };
    Ok((out, status))
}

fn partition(
    out: &mut String,
    builtin: Option<&str>,
    file: Option<&std::path::Path>,
    lambda: Option<&str>,
) -> Result<Status> {
    let (label, g) = load_graph(builtin, file)?;
    let lambda = lambda.map(|l| positive_rational(l, "λ")).transpose()?;
    let p = wr_partition(&g)?;
    let _ = writeln!(out, "graph={label} n={} m={}", g.n(), g.edge_count());
    let _ = writeln!(out, "P(λ) = {p}");
    let _ = writeln!(out, "coefficients: {}", p.to_coeff_list());
    let _ = writeln!(out, "hom={}", hom_count_wr(&g)?);
    if let Some(lam) = lambda {
        let _ = writeln!(out, "P={} at λ={lam}", p.eval(&lam));
    }
    Ok(Status::Ok)
}

fn occupancy(
    out: &mut String,
    builtin: Option<&str>,
    file: Option<&std::path::Path>,
    lambda: Option<String>,
    lambda1: Option<String>,
    lambda2: Option<String>,
) -> Result<Status> {
    let (label, g) = load_graph(builtin, file)?;
    let _ = writeln!(out, "graph={label} n={}", g.n());
    let regular = (g.n() > 0).then(|| g.degree(0)).filter(|&d| d > 0 && g.is_d_regular(d));
    match (lambda, lambda1, lambda2) {
        (Some(l), None, None) => {
            let lam = positive_rational(&l, "λ")?;
            let _ = writeln!(out, "α={} at λ={lam}", occupancy_fraction(&g, &lam)?);
            if let Some(d) = regular {
                let _ = writeln!(out, "α_K={} (K{}, d={d})", alpha_k(d, &lam)?, d + 1);
            }
        }
        (None, Some(a), Some(b)) => {
            let act = ActivityPair::new(positive_rational(&a, "λ1")?, positive_rational(&b, "λ2")?)?;
            let (a1, a2) = occupancy_by_colour(&g, &act)?;
            let _ = writeln!(out, "α1={a1} α2={a2} at (λ1, λ2)={act}");
            let _ = writeln!(out, "weighted={}", weighted_from_colours(&a1, &a2, &act));
        }
        _ => return Err(Error::Usage("give --lambda, or both --lambda1 and --lambda2".into())),
    }
    Ok(Status::Ok)
}

fn bound_csv(reports: &[BoundReport]) -> String {
    let mut s = String::from("graph,n,d,check,lambda,lhs,rhs,relation,equality_expected\n");
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.graph, r.n, r.d, r.kind, r.activity, r.lhs, r.rhs, r.relation, r.equality_expected
        );
    }
    s
}

fn verify(out: &mut String, reports: &[BoundReport]) -> Status {
    let mut mismatches = 0;
    for r in reports {
        let ok = r.matches_theorem();
        if !ok {
            mismatches += 1;
        }
        let _ = writeln!(out, "{} {r}", if ok { "ok" } else { "MISMATCH" });
    }
    let _ = writeln!(out, "reports={} mismatches={mismatches}", reports.len());
    if mismatches == 0 {
        Status::Ok
    } else {
        Status::Mismatch
    }
}

fn lp(out: &mut String, d: usize, lambda: &wr_core::Rational) -> Result<Status> {
    let space = ConfigSpace::enumerate(d)?;
    let program = build_primal_from(&space, lambda)?;
    let run = simplex_run(&program.lp)?;
    let LpOutcome::Optimal(sol) = &run.outcome else {
        let _ = writeln!(out, "primal program not solved: {:?}", run.outcome);
        return Ok(Status::Mismatch);
    };
    let vertices = optimal_vertices(&program.lp)?;
    let report = verify_dual_feasibility_on(&dual_certificate(d, lambda)?, &space)?;
    let support = program.describe_support(&sol.support());
    let _ = writeln!(out, "optimum {}, support: {}", sol.value, support.join(" | "));
    let alpha = alpha_k(d, lambda)?;
    let _ = writeln!(out, "alpha_K={alpha} variables={} pivots={}", program.lp.num_vars(), run.pivots);
    let _ = writeln!(out, "optimal vertices={}", vertices.len());
    let _ = writeln!(out, "tight set ({}):", report.tight_set.len());
    for row in report.rows.iter().filter(|r| r.tight()) {
        let _ = writeln!(out, "  {}\t{}", row.key, row.description);
    }
    let agree = vertices.len() == 1 && vertices[0] == *sol && sol.value == alpha;
    Ok(if agree { Status::Ok } else { Status::Mismatch })
}
