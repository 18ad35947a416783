//! One function per subcommand. Each returns whether the scientific check
//! matched; operational failures are errors.

use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use polar_rank::dims::{
    build_d_matrix, d_matrix_m2_polynomial, d_matrix_m3_polynomial, rank_point_flat, rank_via_trace,
    rank_w3_char2, rank_w3_closed_form, RankReport,
};
use polar_rank::field::FieldSpec;
use polar_rank::geometry::{isotropic_count, SymplecticSpace};
use polar_rank::incidence::{build_incidence, read_matrix, SparseIncidenceMatrix};
use polar_rank::lab::{run_suites, LemmaLedger, Suite, VerifyOptions};
use polar_rank::rank::{rank_mod_p, rank_streaming};
use polar_rank::types::{enumerate_h, enumerate_signed, h_zero_extras, hasse_dot, lambda_from_h_type, HType, Params, SignedHType};
use polar_rank::{Error, VERSION};

use crate::output::{big, big_signed, csv_text, emit, json_text};
use crate::{
    DmatrixArgs, ExportArgs, Format, FormulaArgs, LemmaArgs, MatrixFormat, Mode, PosetArgs, RankArgs, SuiteArg,
    TableArgs, VerifyArgs,
};

/// Above this many cells the rank is computed row by row instead of on a
/// packed copy of the whole matrix.
const STREAMING_CELLS: u128 = 100_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("the matrix would have {cells} cells, above the cap of {cap}; pass --force to build it anyway")]
    ResourceCapExceeded { cells: u128, cap: u64 },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Mismatch,
}

impl Status {
    fn from_match(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::Mismatch
        }
    }
}

type CmdResult = Result<Status, CliError>;

fn check_r(m: u32, r: u32) -> Result<(), CliError> {
    if r < 1 || r > 2 * m - 1 {
        return Err(Error::Range {
            what: "r",
            value: r as i64,
            lo: 1,
            hi: 2 * m as i64 - 1,
        }
        .into());
    }
    Ok(())
}

/// rows x cols of the point-vs-r-flat matrix, without building it.
pub fn matrix_cells(m: u32, q: u64, r: u32) -> u128 {
    let flats = isotropic_count(m, r.min(2 * m - r), q);
    flats * isotropic_count(m, 1, q)
}

fn check_cap(params: &Params, r: u32, force: bool, cap: u64) -> Result<u128, CliError> {
    let cells = matrix_cells(params.m, params.q(), r);
    if cells > cap as u128 && !force {
        return Err(CliError::ResourceCapExceeded { cells, cap });
    }
    Ok(cells)
}

fn space(params: &Params) -> Result<(FieldSpec, SymplecticSpace), CliError> {
    let field = FieldSpec::new(params.p, params.t)?;
    let sp = SymplecticSpace::new(params.m as usize, field.clone())?;
    Ok((field, sp))
}

fn matrix_rank(inc: &SparseIncidenceMatrix) -> Result<usize, CliError> {
    if inc.cells() > STREAMING_CELLS {
        Ok(rank_streaming(inc.row_data(), inc.cols(), inc.modulus())?)
    } else {
        Ok(rank_mod_p(inc))
    }
}

struct OracleRun {
    rows: usize,
    cols: usize,
    rank: usize,
    seconds: f64,
}

fn run_oracle(params: &Params, r: u32) -> Result<OracleRun, CliError> {
    let started = Instant::now();
    let (_, sp) = space(params)?;
    let inc = build_incidence(&sp, r as usize)?;
    let rank = matrix_rank(&inc)?;
    Ok(OracleRun {
        rows: inc.rows(),
        cols: inc.cols(),
        rank,
        seconds: started.elapsed().as_secs_f64(),
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::FormulaOnly => "formula-only",
        Mode::OracleOnly => "oracle-only",
        Mode::CrossValidate => "cross-validate",
    }
}

fn report_json(params: &Params, r: u32, mode: Mode, formula: Option<&RankReport>, oracle: Option<&OracleRun>) -> Value {
    let field = FieldSpec::new(params.p, params.t).expect("validated parameters");
    let matched = match (formula, oracle) {
        (Some(f), Some(o)) => Some(f.formula_rank == (o.rank as u64).into()),
        _ => None,
    };
    json!({
        "version": VERSION,
        "m": params.m,
        "p": params.p,
        "t": params.t,
        "r": r,
        "q": params.q(),
        "field_modulus": field.modulus_string(),
        "mode": mode_name(mode),
        "method": formula.map(|f| f.method.as_str()),
        "needs_oracle_confirmation": r > params.m,
        "formula": formula.map(|f| big(&f.formula_rank)),
        "formula_seconds": formula.map(|f| f.formula_seconds),
        "oracle": oracle.map(|o| o.rank),
        "oracle_seconds": oracle.map(|o| o.seconds),
        "matrix": oracle.map(|o| json!({"rows": o.rows, "cols": o.cols})),
        "match": matched,
    })
}

const REPORT_COLUMNS: [&str; 9] = ["m", "p", "t", "r", "mode", "method", "formula", "oracle", "match"];

fn report_row(v: &Value) -> Vec<String> {
    REPORT_COLUMNS
        .iter()
        .map(|k| match &v[*k] {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect()
}

fn emit_reports(reports: Vec<Value>, single: bool, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Json if single => json_text(&reports[0]),
        Format::Json => json_text(&Value::Array(reports)),
        Format::Csv => csv_text(&REPORT_COLUMNS, &reports.iter().map(report_row).collect::<Vec<_>>())?,
    };
    emit(&text, out)
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let g = &a.geo;
    let params = Params::new(g.m, g.p, g.t)?;
    let r = g.r();
    check_r(g.m, r)?;
    let formula = match a.mode {
        Mode::OracleOnly => None,
        _ => Some(rank_point_flat(g.m, g.p, g.t, r)?),
    };
    let oracle = match a.mode {
        Mode::FormulaOnly => None,
        _ => {
            check_cap(&params, r, a.force, a.max_cells)?;
            Some(run_oracle(&params, r)?)
        }
    };
    let report = report_json(&params, r, a.mode, formula.as_ref(), oracle.as_ref());
    let ok = report["match"].as_bool() != Some(false);
    emit_reports(vec![report], true, a.format, a.common.out.as_deref())?;
    Ok(Status::from_match(ok))
}

pub fn formula(a: &FormulaArgs) -> CmdResult {
    let g = &a.geo;
    let r = g.r();
    check_r(g.m, r)?;
    let ts: Vec<u32> = match a.all_t {
        Some(n) => (1..=n).collect(),
        None => vec![g.t],
    };
    let mut reports = Vec::new();
    for &t in &ts {
        let params = Params::new(g.m, g.p, t)?;
        let f = rank_point_flat(g.m, g.p, t, r)?;
        reports.push(report_json(&params, r, Mode::FormulaOnly, Some(&f), None));
    }
    emit_reports(reports, a.all_t.is_none(), a.format, a.common.out.as_deref())?;
    Ok(Status::Success)
}

pub fn table(a: &TableArgs) -> CmdResult {
    if a.t == 0 {
        return Err(CliError::Usage("--t must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut consistent = true;
    for &p in &a.p {
        for t in 1..=a.t {
            let (rank, route) = if p == 2 {
                if a.m != 2 {
                    return Err(CliError::Usage("p = 2 is only tabulated for m = 2".into()));
                }
                (rank_w3_char2(t)?, "char2-recurrence")
            } else {
                let trace = rank_via_trace(a.m, p, t)?;
                if a.m == 2 {
                    consistent &= rank_w3_closed_form(p, t)? == trace;
                }
                (trace, "trace")
            };
            rows.push((p, t, rank, route));
        }
    }
    let text = match a.format {
        Format::Json => json_text(&json!({
            "version": VERSION,
            "m": a.m,
            "t_max": a.t,
            "consistent": consistent,
            "rows": rows
                .iter()
                .map(|(p, t, rank, route)| json!({"p": p, "t": t, "rank": big(rank), "route": route}))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["p", "t", "rank", "route"],
            &rows
                .iter()
                .map(|(p, t, rank, route)| vec![p.to_string(), t.to_string(), rank.to_string(), route.to_string()])
                .collect::<Vec<_>>(),
        )?,
    };
    emit(&text, a.common.out.as_deref())?;
    Ok(Status::from_match(consistent))
}

fn min_max(v: &[usize]) -> Value {
    json!({
        "min": v.iter().min().copied().unwrap_or(0),
        "max": v.iter().max().copied().unwrap_or(0),
    })
}

pub fn export(a: &ExportArgs) -> CmdResult {
    let g = &a.geo;
    let params = Params::new(g.m, g.p, g.t)?;
    let r = g.r();
    check_r(g.m, r)?;
    check_cap(&params, r, a.force, a.max_cells)?;
    let (field, sp) = space(&params)?;
    let inc = build_incidence(&sp, r as usize)?;
    let mut bytes = Vec::new();
    match a.format {
        MatrixFormat::Native => inc.write_to(&mut bytes)?,
        MatrixFormat::Mm => inc.write_matrix_market(&mut bytes)?,
    }
    std::fs::write(&a.out, &bytes)?;
    let digest = hex::encode(Sha256::digest(&bytes));

    let q = params.q() as u128;
    let expected_row_sum = (q.pow(r) - 1) / (q - 1);
    let row_sums = inc.row_sums();
    let col_sums = inc.col_sums();
    let uniform = |v: &[usize]| v.windows(2).all(|w| w[0] == w[1]);
    let ok = uniform(&row_sums)
        && uniform(&col_sums)
        && row_sums.first().map(|&s| s as u128) == Some(expected_row_sum)
        && inc.nnz() == inc.rows() * row_sums[0]
        && inc.nnz() == inc.cols() * col_sums[0];
    let meta = json!({
        "version": VERSION,
        "m": g.m,
        "p": g.p,
        "t": g.t,
        "r": r,
        "q": params.q(),
        "field_modulus": field.modulus_string(),
        "path": a.out.display().to_string(),
        "format": match a.format { MatrixFormat::Native => "native", MatrixFormat::Mm => "mm" },
        "rows": inc.rows(),
        "cols": inc.cols(),
        "modulus": inc.modulus(),
        "nnz": inc.nnz(),
        "row_sum": min_max(&row_sums),
        "col_sum": min_max(&col_sums),
        "expected_row_sum": expected_row_sum as u64,
        "sums_consistent": ok,
        "sha256": digest,
    });
    emit(&json_text(&meta), a.meta.as_deref())?;
    Ok(Status::from_match(ok))
}

pub fn rank(a: &RankArgs) -> CmdResult {
    let inc = read_matrix(&a.matrix)?;
    let k = matrix_rank(&inc)?;
    let v = json!({"rows": inc.rows(), "cols": inc.cols(), "modulus": inc.modulus(), "rank": k});
    emit(&format!("{v}\n"), a.common.out.as_deref())?;
    Ok(Status::Success)
}

pub fn dmatrix(a: &DmatrixArgs) -> CmdResult {
    let d = build_d_matrix(a.m, a.p)?;
    let polynomial = match a.m {
        2 => Some(d_matrix_m2_polynomial(a.p)?),
        3 => Some(d_matrix_m3_polynomial(a.p)?),
        _ => None,
    };
    let ok = polynomial.as_ref().is_none_or(|poly| poly == &d);
    let text = match a.format {
        Format::Json => json_text(&json!({
            "version": VERSION,
            "m": a.m,
            "p": a.p,
            "size": d.size(),
            "entries": d.entries().iter().map(|row| row.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "trace": big(&d.trace()),
            "determinant": big_signed(&d.determinant()),
            "polynomial_form_agrees": polynomial.as_ref().map(|_| ok),
        })),
        Format::Csv => {
            let header: Vec<String> = (1..=d.size()).map(|j| format!("c{j}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = d.entries().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            csv_text(&header, &rows)?
        }
    };
    emit(&text, a.common.out.as_deref())?;
    Ok(Status::from_match(ok))
}

fn h_json(params: &Params, h: &HType) -> Value {
    let lambda = lambda_from_h_type(params, h).map(|l| l.lambda);
    json!({"s": h.s, "d": h.d, "lambda": lambda})
}

fn signed_json(a: &SignedHType) -> Value {
    json!({"s": a.s.s, "d": a.s.d, "eps": a.eps_positions()})
}

pub fn posets(a: &PosetArgs) -> CmdResult {
    let params = Params::new(a.m, a.p, a.t)?;
    let signed = enumerate_signed(&params, a.d)?;
    if a.dot {
        emit(&hasse_dot(&params, &signed), a.common.out.as_deref())?;
        return Ok(Status::Success);
    }
    let h = enumerate_h(&params, 0)?;
    let h_d = enumerate_h(&params, a.d)?;
    let v = json!({
        "version": VERSION,
        "m": a.m,
        "p": a.p,
        "t": a.t,
        "d": a.d,
        "H": h.iter().map(|x| h_json(&params, x)).collect::<Vec<_>>(),
        "H0_extras": h_zero_extras(&params).iter().map(|x| h_json(&params, x)).collect::<Vec<_>>(),
        "H_d": h_d.iter().map(|x| h_json(&params, x)).collect::<Vec<_>>(),
        "S": signed.iter().map(signed_json).collect::<Vec<_>>(),
    });
    emit(&json_text(&v), a.common.out.as_deref())?;
    Ok(Status::Success)
}

pub fn ledger_json(ledger: &LemmaLedger) -> Value {
    let checks: Vec<Value> = ledger
        .checks
        .iter()
        .map(|c| {
            let mut o = Map::new();
            o.insert("name".into(), json!(c.name));
            o.insert("passed".into(), json!(c.passed()));
            o.insert("cases".into(), json!(c.cases));
            o.insert("failures".into(), json!(c.failures));
            o.insert("skipped".into(), json!(c.skipped));
            o.insert("exhaustive".into(), json!(c.exhaustive));
            o.insert("counterexamples".into(), json!(c.counterexamples));
            Value::Object(o)
        })
        .collect();
    json!({
        "version": VERSION,
        "m": ledger.params.m,
        "p": ledger.params.p,
        "t": ledger.params.t,
        "all_passed": ledger.all_passed(),
        "checks": checks,
    })
}

pub fn verify_lemmas(a: &LemmaArgs) -> CmdResult {
    let params = Params::new(a.m, a.p, a.t)?;
    let opts = VerifyOptions {
        samples: a.samples,
        seed: a.seed,
        ..VerifyOptions::default()
    };
    let suites: Vec<Suite> = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite
            .iter()
            .map(|s| match s {
                SuiteArg::Shift => Suite::Shift,
                SuiteArg::Projector => Suite::Projector,
                SuiteArg::Tau => Suite::Tau,
                SuiteArg::Basis => Suite::Basis,
            })
            .collect()
    };
    let ledger = run_suites(params, &opts, &suites)?;
    emit(&json_text(&ledger_json(&ledger)), a.common.out.as_deref())?;
    Ok(Status::from_match(ledger.all_passed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts_match_built_matrices() {
        assert_eq!(matrix_cells(2, 3, 2), 40 * 40);
        assert_eq!(matrix_cells(2, 9, 2), 820 * 820);
        assert_eq!(matrix_cells(3, 3, 2), 3640 * 364);
        assert_eq!(matrix_cells(3, 3, 3), 1120 * 364);
        assert_eq!(matrix_cells(3, 3, 4), 3640 * 364);
        assert_eq!(matrix_cells(2, 27, 2), 20440 * 20440);
        assert!(matrix_cells(2, 27, 2) < crate::DEFAULT_MAX_CELLS as u128);
    }
}
