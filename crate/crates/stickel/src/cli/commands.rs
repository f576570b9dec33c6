use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::fields::{build_field, characters_of, AbelianField, FieldSpec};
use crate::lfunctions::{character_orbits, crosscheck, lp_at_1, CrosscheckReport, LpValue};
use crate::stickelberger::{annihilator_a, annihilator_stabilized, AnnihilatorReport, Recipe};

use super::config::{Format, RunConfig};
use super::golden::{self, GoldenRow};
use super::CliError;

const MAX_STABILIZE_STEPS: u32 = 8;

fn field(spec: &FieldSpec) -> Result<Arc<AbelianField>, CliError> {
    Ok(Arc::new(build_field(spec)?))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| CliError::Io(e.to_string()))
}

/// The family preset, or the requested recipe if it agrees or is explicitly overridden.
pub fn resolve_recipe(cfg: &RunConfig, k: &AbelianField, p: u64) -> Result<Recipe, CliError> {
    let preset = Recipe::default_for(k, p);
    match cfg.recipe {
        None => Ok(preset),
        Some(r) if r == preset || cfg.override_recipe => Ok(r),
        Some(r) => Err(CliError::Config(format!(
            "recipe {r} does not match the field family (preset {preset}); pass --override-recipe to force it"
        ))),
    }
}

fn annihilator_header() -> String {
    format!("{}\tflags", AnnihilatorReport::tsv_header())
}

fn annihilator_row(r: &AnnihilatorReport) -> String {
    let flags = if r.flags.is_empty() { "-".to_string() } else { r.flags.join("; ") };
    format!("{}\t{flags}", r.tsv_row())
}

pub fn cmd_annihilate(cfg: &RunConfig, out: &mut dyn Write) -> Result<AnnihilatorReport, CliError> {
    let k = field(cfg.require_field()?)?;
    let p = cfg.require_p()?;
    let recipe = resolve_recipe(cfg, &k, p)?;
    let report = match (cfg.ex, cfg.target) {
        (Some(ex), _) => annihilator_a(&k, p, cfg.c, ex, recipe)?,
        (None, Some(t)) => annihilator_stabilized(&k, p, cfg.c, recipe, t, t + MAX_STABILIZE_STEPS)?.0,
        (None, None) => annihilator_a(&k, p, cfg.c, 0, recipe)?,
    };
    match cfg.format {
        Format::Tsv => {
            emit(out, annihilator_header())?;
            emit(out, annihilator_row(&report))?;
        }
        Format::Json => emit(out, report.to_json().to_string())?,
    }
    Ok(report)
}

/// Computed columns of one golden row and their verdicts.
#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub row: GoldenRow,
    pub report: Result<AnnihilatorReport, CliError>,
    pub mismatches: Vec<String>,
}

impl RowOutcome {
    pub fn pass(&self) -> bool {
        self.report.is_ok() && self.mismatches.is_empty()
    }
}

pub fn check_row(row: &GoldenRow) -> RowOutcome {
    let run = || -> Result<AnnihilatorReport, CliError> {
        let k = field(&row.field)?;
        Ok(annihilator_a(&k, row.p, None, row.ex, Recipe::default_for(&k, row.p))?)
    };
    let report = run();
    let mut mismatches = Vec::new();
    if let Ok(r) = &report {
        if let Some(want) = &row.coefficients {
            let m = row.modulus.unwrap_or_else(|| r.modulus());
            let got: Vec<u64> = r.ordered().iter().map(|x| x % m).collect();
            let reduced: Vec<u64> = want.iter().map(|x| x % m).collect();
            if got != reduced {
                mismatches.push(format!("coefficients [{}] != [{}] mod {m}", join(&got), join(want)));
            }
        }
        if let Some(want) = &row.stat {
            let got = r.stat.to_string();
            if &got != want {
                mismatches.push(format!("{got} != {want}"));
            }
        }
    }
    RowOutcome { row: row.clone(), report, mismatches }
}

fn select(cfg: &RunConfig, rows: Vec<GoldenRow>) -> Vec<GoldenRow> {
    rows.into_iter()
        .filter(|r| cfg.rows.is_empty() || cfg.rows.contains(&r.field.f))
        .filter(|r| cfg.from.is_none_or(|a| r.field.f >= a))
        .filter(|r| cfg.to.is_none_or(|b| r.field.f <= b))
        .collect()
}

pub fn table_header() -> &'static str {
    "f\tp\tex\tc\tcoefficients\tstat\tstructure\tverdict\tsource"
}

fn table_line(o: &RowOutcome) -> String {
    let structure = o.row.structure.as_ref().map_or("-".to_string(), |s| format!("{s} (input)"));
    let (c, coeffs, stat) = match &o.report {
        Ok(r) => (r.setup.c.to_string(), join(&r.ordered()), r.stat.to_string()),
        Err(_) => ("-".into(), "-".into(), "-".into()),
    };
    let verdict = match (&o.report, o.mismatches.is_empty()) {
        (Err(e), _) => format!("FAIL: {e}"),
        (Ok(_), true) => "PASS".into(),
        (Ok(_), false) => format!("FAIL: {}", o.mismatches.join("; ")),
    };
    format!("{}\t{}\t{}\t{c}\t{coeffs}\t{stat}\t{structure}\t{verdict}\t{}", o.row.field.f, o.row.p, o.row.ex, o.row.source)
}

fn table_json(o: &RowOutcome) -> serde_json::Value {
    json!({
        "f": o.row.field.f,
        "p": o.row.p,
        "ex": o.row.ex,
        "source": o.row.source,
        "structure_input": o.row.structure,
        "expected_coefficients": o.row.coefficients,
        "expected_stat": o.row.stat,
        "computed": o.report.as_ref().ok().map(|r| r.to_json()),
        "error": o.report.as_ref().err().map(|e| e.to_string()),
        "mismatches": o.mismatches,
        "pass": o.pass(),
    })
}

pub fn cmd_table(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<Vec<RowOutcome>, CliError> {
    let id = cfg.table.as_deref().ok_or_else(|| CliError::Config("--id is required".into()))?;
    let rows = select(cfg, golden::load(id, cfg.golden.as_deref())?);
    let outcomes: Vec<RowOutcome> = rows.par_iter().map(check_row).collect();
    if cfg.format == Format::Tsv {
        emit(out, table_header())?;
    }
    for o in &outcomes {
        match cfg.format {
            Format::Tsv => emit(out, table_line(o))?,
            Format::Json => emit(out, table_json(o).to_string())?,
        }
    }
    if outcomes.is_empty() {
        return Ok(outcomes);
    }
    let failed = outcomes.iter().filter(|o| !o.pass()).count();
    emit(err, format!("{id}: {} rows, {} PASS, {failed} FAIL", outcomes.len(), outcomes.len() - failed))?;
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} row(s) of {id} differ from the golden file")));
    }
    Ok(outcomes)
}

fn crosscheck_lines(r: &CrosscheckReport) -> Vec<String> {
    let verdict = |b: bool| if b { "agree" } else { "DIFFER" };
    let mut lines = vec![
        format!("p\t{}", r.p),
        format!("n\t{}", r.n),
        format!("c\t{}", r.c),
        format!("lambda\t{}", join(r.lambda.coeffs())),
        format!("measure\t{}", join(r.measure.coeffs())),
        format!("reconstruction\t{}", join(r.reconstruction.element.coeffs())),
        format!("lambda~measure\t{}", verdict(r.lambda_vs_measure)),
        format!("lambda~reconstruction\t{}", verdict(r.lambda_vs_reconstruction)),
        format!("measure~reconstruction\t{}", verdict(r.measure_vs_reconstruction)),
    ];
    for ch in &r.characters {
        lines.push(format!("chi[{}]\t{}\t{}\t{}", ch.index, join(&ch.image), join(&ch.x_value), verdict(ch.agree)));
    }
    lines
}

fn crosscheck_json(r: &CrosscheckReport) -> serde_json::Value {
    let chars: Vec<_> = r
        .characters
        .iter()
        .map(|c| json!({"index": c.index, "image": c.image, "x_value": c.x_value, "agree": c.agree}))
        .collect();
    json!({
        "p": r.p,
        "n": r.n,
        "c": r.c,
        "lambda": r.lambda.coeffs(),
        "measure": r.measure.coeffs(),
        "reconstruction": r.reconstruction.element.coeffs(),
        "lambda_vs_measure": r.lambda_vs_measure,
        "lambda_vs_reconstruction": r.lambda_vs_reconstruction,
        "measure_vs_reconstruction": r.measure_vs_reconstruction,
        "characters": chars,
        "all_agree": r.all_agree(),
    })
}

pub fn cmd_crosscheck(cfg: &RunConfig, out: &mut dyn Write) -> Result<CrosscheckReport, CliError> {
    let k = field(cfg.require_field()?)?;
    let p = cfg.require_p()?;
    let target = cfg.target.unwrap_or(2);
    if target == 0 {
        return Err(CliError::Config("target must be at least 1".into()));
    }
    if cfg.recipe.is_some_and(|r| r != Recipe::Generic) {
        return Err(CliError::Config("crosscheck always uses the generic recipe".into()));
    }
    let r = crosscheck(&k, p, cfg.c, target - 1)?;
    match cfg.format {
        Format::Tsv => {
            emit(out, format!("f\t{}", k.modulus()))?;
            for line in crosscheck_lines(&r) {
                emit(out, line)?;
            }
        }
        Format::Json => emit(out, crosscheck_json(&r).to_string())?,
    }
    if !r.all_agree() {
        let mut diffs = Vec::new();
        for (name, ok, a, b) in [
            ("lambda/measure", r.lambda_vs_measure, &r.lambda, &r.measure),
            ("lambda/reconstruction", r.lambda_vs_reconstruction, &r.lambda, &r.reconstruction.element),
            ("measure/reconstruction", r.measure_vs_reconstruction, &r.measure, &r.reconstruction.element),
        ] {
            if !ok {
                diffs.push(format!("{name}: [{}] vs [{}]", join(a.coeffs()), join(b.coeffs())));
            }
        }
        for c in r.characters.iter().filter(|c| !c.agree) {
            diffs.push(format!("chi[{}]: [{}] vs [{}]", c.index, join(&c.image), join(&c.x_value)));
        }
        return Err(CliError::Mismatch(diffs.join("; ")));
    }
    Ok(r)
}

/// L_p(1, χ) per character, plus v_p of the product over χ ≠ 1 when all of them were requested.
pub fn cmd_lp(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<Vec<LpValue>, CliError> {
    let k = field(cfg.require_field()?)?;
    let p = cfg.require_p()?;
    let target = cfg.target.unwrap_or(4);
    let chars = characters_of(&k);
    let wanted: Vec<usize> = match cfg.chi {
        Some(i) if i >= chars.len() => return Err(CliError::Config(format!("no character {i}; K has {}", chars.len()))),
        Some(i) if chars[i].is_trivial() => return Err(CliError::Config("the trivial character is excluded".into())),
        Some(i) => vec![i],
        None => chars.iter().filter(|c| !c.is_trivial()).map(|c| c.index()).collect(),
    };
    let values = wanted
        .par_iter()
        .map(|&i| lp_at_1(&chars[i], p, target))
        .collect::<Result<Vec<_>, _>>()?;
    for v in &values {
        match cfg.format {
            Format::Json => emit(out, v.to_json().to_string())?,
            Format::Tsv => emit(
                out,
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    v.chi.index(),
                    v.chi.conductor(),
                    v.chi.order(),
                    v.p,
                    v.precision,
                    v.valuation,
                    join(&v.value)
                ),
            )?,
        }
    }
    if cfg.chi.is_none() {
        // one norm valuation per Q-conjugacy class covers the whole class
        let total: Option<u32> = character_orbits(&chars)
            .iter()
            .map(|class| values.iter().find(|v| v.chi.index() == class[0]).and_then(|v| v.valuation.finite()))
            .sum();
        let shown = total.map_or("undetermined".to_string(), |t| t.to_string());
        emit(err, format!("v_{p} of the product over chi != 1: {shown}"))?;
    }
    Ok(values)
}
