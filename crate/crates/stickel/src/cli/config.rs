use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fields::{FieldKind, FieldSpec};
use crate::stickelberger::Recipe;

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Annihilate,
    Table,
    Crosscheck,
    Lp,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Annihilate => "annihilate",
            Command::Table => "table",
            Command::Crosscheck => "crosscheck",
            Command::Lp => "lp",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "stickel", version, about = "Stickelberger annihilators and p-adic L-values at s = 1")]
pub struct Cli {
    /// flat key=value file; command-line flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// A_{K,n}(c) or A'_{K,n}(c) for one field
    Annihilate(FieldArgs),
    /// recompute a golden table and diff it
    Table(TableArgs),
    /// λ-sum vs measure vs L-value reconstruction
    Crosscheck(FieldArgs),
    /// L_p(1, χ) for the nontrivial characters of K
    Lp(FieldArgs),
}

#[derive(Args, Debug, Default)]
pub struct FieldArgs {
    /// field spec in text form, e.g. "kind=cyclic-prime; f=313; d=3"
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub f: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub q1: Option<u64>,
    #[arg(long)]
    pub q2: Option<u64>,
    /// generators of H for explicit-subgroup
    #[arg(long, value_delimiter = ',')]
    pub gens: Vec<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// precision target t (results modulo p^t)
    #[arg(long)]
    pub target: Option<u32>,
    #[arg(long)]
    pub recipe: Option<String>,
    /// accept a recipe that is not the family's preset
    #[arg(long)]
    pub override_recipe: bool,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long)]
    pub ex: Option<u32>,
    /// character index for lp
    #[arg(long)]
    pub chi: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct TableArgs {
    /// table id: cubic-p7, cubic-p13, quadratic-p2, cubic-p2, quartic-prime-p2, quartic-composite-p2, worked
    #[arg(long)]
    pub id: Option<String>,
    /// restrict to these conductors
    #[arg(long, value_delimiter = ',')]
    pub rows: Vec<u64>,
    #[arg(long)]
    pub from: Option<u64>,
    #[arg(long)]
    pub to: Option<u64>,
    /// golden TSV to diff against instead of the bundled copy
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

/// Everything a command needs, merged from the config file and the flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub field: Option<FieldSpec>,
    pub p: Option<u64>,
    pub target: Option<u32>,
    pub recipe: Option<Recipe>,
    pub override_recipe: bool,
    pub c: Option<u64>,
    pub ex: Option<u32>,
    pub chi: Option<usize>,
    pub format: Format,
    /// affects scheduling only
    pub threads: Option<usize>,
    pub table: Option<String>,
    pub rows: Vec<u64>,
    pub from: Option<u64>,
    pub to: Option<u64>,
    pub golden: Option<PathBuf>,
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("config line {}: expected key=value", no + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn put<T: ToString>(map: &mut BTreeMap<String, String>, key: &str, v: Option<T>) {
    if let Some(v) = v {
        map.insert(key.to_string(), v.to_string());
    }
}

fn join(v: &[u64]) -> Option<String> {
    (!v.is_empty()).then(|| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl FieldArgs {
    fn overlay(&self, map: &mut BTreeMap<String, String>) {
        put(map, "field", self.field.clone());
        put(map, "family", self.family.clone());
        put(map, "f", self.f);
        put(map, "d", self.d);
        put(map, "q1", self.q1);
        put(map, "q2", self.q2);
        put(map, "gens", join(&self.gens));
        put(map, "p", self.p);
        put(map, "target", self.target);
        put(map, "recipe", self.recipe.clone());
        if self.override_recipe {
            map.insert("override-recipe".into(), "true".into());
        }
        put(map, "c", self.c);
        put(map, "ex", self.ex);
        put(map, "chi", self.chi);
    }
}

impl TableArgs {
    fn overlay(&self, map: &mut BTreeMap<String, String>) {
        put(map, "table", self.id.clone());
        put(map, "rows", join(&self.rows));
        put(map, "from", self.from);
        put(map, "to", self.to);
        put(map, "golden", self.golden.as_ref().map(|p| p.display().to_string()));
    }
}

fn num<T: FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|e| CliError::Config(format!("{key} = {v:?}: {e}"))))
        .transpose()
}

fn list(map: &BTreeMap<String, String>, key: &str) -> Result<Vec<u64>, CliError> {
    let Some(v) = map.get(key) else { return Ok(Vec::new()) };
    v.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|e| CliError::Config(format!("{key}: {s:?}: {e}"))))
        .collect()
}

fn field_from_map(map: &BTreeMap<String, String>) -> Result<Option<FieldSpec>, CliError> {
    if let Some(text) = map.get("field") {
        return text.parse::<FieldSpec>().map(Some).map_err(|e| CliError::Config(e.to_string()));
    }
    let Some(family) = map.get("family") else {
        return Ok(None);
    };
    let kind: FieldKind = family.parse().map_err(|e: crate::fields::FieldError| CliError::Config(e.to_string()))?;
    let need = |key: &str| -> Result<u64, CliError> {
        num::<u64>(map, key)?.ok_or_else(|| CliError::Config(format!("{} needs --{key}", kind.name())))
    };
    let spec = match kind {
        FieldKind::CyclicPrime => FieldSpec::cyclic_prime(need("f")?, need("d")?),
        FieldKind::Quadratic => FieldSpec::quadratic(need("f")?),
        FieldKind::QuarticComposite => {
            let gens = list(map, "gens")?;
            let (q1, q2) = match (num::<u64>(map, "q1")?, num::<u64>(map, "q2")?, gens.as_slice()) {
                (Some(a), Some(b), _) => (a, b),
                (_, _, [a, b]) => (*a, *b),
                _ => return Err(CliError::Config("quartic-composite needs --q1 and --q2".into())),
            };
            if let Some(f) = num::<u64>(map, "f")? {
                if f != q1 * q2 {
                    return Err(CliError::Config(format!("f = {f} differs from q1·q2 = {}", q1 * q2)));
                }
            }
            FieldSpec::quartic_composite(q1, q2)
        }
        FieldKind::ExplicitSubgroup => FieldSpec::explicit(need("f")?, list(map, "gens")?),
    };
    Ok(Some(spec))
}

const KNOWN: [&str; 22] = [
    "command", "field", "family", "f", "d", "q1", "q2", "gens", "p", "target", "recipe", "override-recipe", "c", "ex",
    "chi", "format", "threads", "table", "rows", "from", "to", "golden",
];

impl RunConfig {
    /// Merge: flags over file values.
    pub fn from_map(command: Command, map: &BTreeMap<String, String>) -> Result<RunConfig, CliError> {
        if let Some(bad) = map.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(CliError::Config(format!("unknown config key {bad:?}")));
        }
        if let Some(c) = map.get("command") {
            if c != command.name() {
                return Err(CliError::Config(format!("config is for {c:?}, not {:?}", command.name())));
            }
        }
        let recipe = map
            .get("recipe")
            .map(|r| r.parse::<Recipe>().map_err(|e| CliError::Config(e.to_string())))
            .transpose()?;
        let override_recipe = match map.get("override-recipe").map(String::as_str) {
            None | Some("false") => false,
            Some("true") => true,
            Some(v) => return Err(CliError::Config(format!("override-recipe = {v:?}"))),
        };
        Ok(RunConfig {
            command,
            field: field_from_map(map)?,
            p: num(map, "p")?,
            target: num(map, "target")?,
            recipe,
            override_recipe,
            c: num(map, "c")?,
            ex: num(map, "ex")?,
            chi: num(map, "chi")?,
            format: map.get("format").map(|f| f.parse()).transpose()?.unwrap_or(Format::Tsv),
            threads: num(map, "threads")?,
            table: map.get("table").cloned(),
            rows: list(map, "rows")?,
            from: num(map, "from")?,
            to: num(map, "to")?,
            golden: map.get("golden").map(PathBuf::from),
        })
    }

    pub fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        let mut map = match &cli.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let command = match &cli.command {
            Sub::Annihilate(a) => {
                a.overlay(&mut map);
                Command::Annihilate
            }
            Sub::Table(t) => {
                t.overlay(&mut map);
                Command::Table
            }
            Sub::Crosscheck(a) => {
                a.overlay(&mut map);
                Command::Crosscheck
            }
            Sub::Lp(a) => {
                a.overlay(&mut map);
                Command::Lp
            }
        };
        put(&mut map, "format", cli.format.map(|f| if f == Format::Json { "json" } else { "tsv" }));
        put(&mut map, "threads", cli.threads);
        RunConfig::from_map(command, &map)
    }

    pub fn require_field(&self) -> Result<&FieldSpec, CliError> {
        self.field.as_ref().ok_or_else(|| CliError::Config("no field given (--family ... or --field ...)".into()))
    }

    pub fn require_p(&self) -> Result<u64, CliError> {
        self.p.ok_or_else(|| CliError::Config("--p is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut map = parse_config_text("family = cyclic-prime\nf = 313 # conductor\nd=3\np=7\nex=2\n").unwrap();
        map.insert("ex".into(), "1".into());
        let cfg = RunConfig::from_map(Command::Annihilate, &map).unwrap();
        assert_eq!(cfg.field, Some(FieldSpec::cyclic_prime(313, 3)));
        assert_eq!((cfg.p, cfg.ex, cfg.format), (Some(7), Some(1), Format::Tsv));
    }

    #[test]
    fn rejects_unknown_keys() {
        let map = parse_config_text("colour = blue").unwrap();
        assert!(matches!(RunConfig::from_map(Command::Lp, &map), Err(CliError::Config(_))));
        assert!(parse_config_text("no equals sign").is_err());
    }

    #[test]
    fn composite_from_primes() {
        let map = parse_config_text("family=quartic-composite\nq1=5\nq2=73").unwrap();
        let cfg = RunConfig::from_map(Command::Annihilate, &map).unwrap();
        assert_eq!(cfg.field.unwrap().f, 365);
    }
}
