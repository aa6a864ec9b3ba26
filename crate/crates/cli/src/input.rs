use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bentforge::format::{parse_field, parse_function, parse_tt, parse_vf};
use bentforge::gf2m::power_map;
use bentforge::{BooleanFunction, VectorialFunction};
use clap::Args;

/// Text given inline or as a path to a file containing it.
pub fn read_source(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    } else {
        Ok(arg.to_string())
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FunctionInput {
    /// File holding a truth table (`tt:n=<n>:<hex>`).
    #[arg(long, value_name = "FILE")]
    pub tt: Option<PathBuf>,
    /// ANF expression, or a file holding one.
    #[arg(long, value_name = "STR|FILE")]
    pub anf: Option<String>,
}

impl FunctionInput {
    pub fn load(&self, n: Option<usize>) -> Result<BooleanFunction> {
        if let Some(path) = &self.tt {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let f = parse_tt(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Some(n) = n {
                if n != f.n() {
                    bail!("{} has {} variables, --n gives {n}", path.display(), f.n());
                }
            }
            Ok(f)
        } else if let Some(anf) = &self.anf {
            Ok(parse_function(&read_source(anf)?, n).context("parsing ANF")?)
        } else {
            bail!("one of --tt or --anf is required")
        }
    }
}

/// A function given as a truth table or ANF, inline or in a file.
pub fn load_function(arg: &str, n: Option<usize>) -> Result<BooleanFunction> {
    parse_function(&read_source(arg)?, n).with_context(|| format!("parsing function {arg:?}"))
}

/// A vectorial function in either text format, or `power:<d>@<field spec>`
/// for `x^d` on a finite field.
pub fn load_vf(arg: &str) -> Result<VectorialFunction> {
    if let Some(rest) = arg.strip_prefix("power:") {
        let (d, field) = rest
            .split_once('@')
            .context("expected power:<exponent>@gf2m:m=<m>")?;
        let d: u64 = d.parse().context("invalid exponent")?;
        let field = parse_field(field)?;
        return Ok(power_map(&field, d)?.function);
    }
    parse_vf(&read_source(arg)?).with_context(|| format!("parsing vectorial function {arg:?}"))
}
