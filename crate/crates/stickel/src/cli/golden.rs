use std::path::Path;
use std::str::FromStr;

use crate::fields::FieldSpec;

use super::CliError;

pub const TABLE_IDS: [&str; 7] =
    ["cubic-p7", "cubic-p13", "quadratic-p2", "cubic-p2", "quartic-prime-p2", "quartic-composite-p2", "worked"];

/// Bundled copy of a golden table.
pub fn bundled(id: &str) -> Option<&'static str> {
    Some(match id {
        "cubic-p7" => include_str!("../../golden/cubic-p7.tsv"),
        "cubic-p13" => include_str!("../../golden/cubic-p13.tsv"),
        "quadratic-p2" => include_str!("../../golden/quadratic-p2.tsv"),
        "cubic-p2" => include_str!("../../golden/cubic-p2.tsv"),
        "quartic-prime-p2" => include_str!("../../golden/quartic-prime-p2.tsv"),
        "quartic-composite-p2" => include_str!("../../golden/quartic-composite-p2.tsv"),
        "worked" => include_str!("../../golden/worked.tsv"),
        _ => return None,
    })
}

/// One transcribed table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub table: String,
    pub field: FieldSpec,
    pub p: u64,
    pub ex: u32,
    /// compare modulo this instead of the recipe's modulus
    pub modulus: Option<u64>,
    pub coefficients: Option<Vec<u64>>,
    /// derived column as printed (nj=, A'=, 2^Nni=, ...)
    pub stat: Option<String>,
    /// ray-class data, echoed only
    pub structure: Option<String>,
    pub source: String,
}

const COLUMNS: [&str; 12] =
    ["table", "family", "f", "d", "gens", "p", "ex", "modulus", "coefficients", "stat", "structure", "source"];

/// Column names of the golden TSV format.
pub fn header() -> String {
    COLUMNS.join("\t")
}

fn opt(s: &str) -> Option<&str> {
    (s != "-" && !s.is_empty()).then_some(s)
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| CliError::Config(format!("{what} {s:?}: {e}")))
}

impl FromStr for GoldenRow {
    type Err = CliError;
    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != COLUMNS.len() {
            return Err(CliError::Config(format!("golden row has {} columns: {line:?}", cols.len())));
        }
        let f: u64 = parse_num(cols[2], "f")?;
        let d: u64 = parse_num(cols[3], "d")?;
        let gens: Vec<u64> = match opt(cols[4]) {
            Some(g) => g.split(',').map(|x| parse_num(x.trim(), "gens")).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        let field = match cols[1] {
            "cyclic-prime" => FieldSpec::cyclic_prime(f, d),
            "quadratic" => FieldSpec::quadratic(f),
            "quartic-composite" => match gens.as_slice() {
                [a, b] if a * b == f => FieldSpec::quartic_composite(*a, *b),
                _ => return Err(CliError::Config(format!("bad composite gens for f = {f}"))),
            },
            "explicit-subgroup" => FieldSpec::explicit(f, gens),
            other => return Err(CliError::Config(format!("unknown family {other:?}"))),
        };
        let coefficients = match opt(cols[8]) {
            Some(c) => Some(c.split_whitespace().map(|x| parse_num(x, "coefficient")).collect::<Result<_, _>>()?),
            None => None,
        };
        Ok(GoldenRow {
            table: cols[0].to_string(),
            field,
            p: parse_num(cols[5], "p")?,
            ex: parse_num(cols[6], "ex")?,
            modulus: opt(cols[7]).map(|m| parse_num(m, "modulus")).transpose()?,
            coefficients,
            stat: opt(cols[9]).map(String::from),
            structure: opt(cols[10]).map(String::from),
            source: cols[11].to_string(),
        })
    }
}

/// Rows of a golden TSV; `#` lines and the header are skipped.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>, CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#') && !l.starts_with("table\t"))
        .map(str::parse)
        .collect()
}

pub fn load(id: &str, path: Option<&Path>) -> Result<Vec<GoldenRow>, CliError> {
    let rows = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            parse_golden(&text)?
        }
        None => parse_golden(bundled(id).ok_or_else(|| {
            CliError::Config(format!("unknown table {id:?}; known: {}", TABLE_IDS.join(", ")))
        })?)?,
    };
    Ok(rows.into_iter().filter(|r| r.table == id).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_parse() {
        for id in TABLE_IDS {
            let rows = load(id, None).unwrap();
            assert!(!rows.is_empty(), "{id}");
            assert!(rows.iter().all(|r| !r.source.is_empty()));
        }
        let p7 = load("cubic-p7", None).unwrap();
        assert_eq!(p7[0].coefficients, Some(vec![41, 41, 48]));
        assert_eq!(p7[0].stat.as_deref(), Some("nj=2"));
    }

    #[test]
    fn wrong_width_rejected() {
        assert!("cubic-p7\t313".parse::<GoldenRow>().is_err());
    }
}
