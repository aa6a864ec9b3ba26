//! Checkpoints for the completed partial spread sweep. Finished sweeps stay
//! on disk, so a repeated query (including a negative one) is answered
//! from the file.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bentforge::psclass::{function_digest, ps_sharp_sweep, PsSharpWitness, SweepCheckpoint};
use bentforge::BooleanFunction;

pub const CACHE_ENV: &str = "BENTFORGE_CACHE_DIR";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn checkpoint_path(dir: &Path, f: &BooleanFunction) -> PathBuf {
    dir.join(format!("ps_sharp-{}.json", function_digest(f)))
}

fn load(path: &Path) -> Result<Option<SweepCheckpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let state = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a sweep checkpoint", path.display()))?;
    Ok(Some(state))
}

fn store(path: &Path, state: &SweepCheckpoint) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(state)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Where the sweep state of `f` is kept: the explicit file, else the cache
/// directory, else nowhere.
pub fn sweep_location(resume: Option<&Path>, f: &BooleanFunction) -> Option<PathBuf> {
    resume
        .map(Path::to_path_buf)
        .or_else(|| cache_dir().map(|d| checkpoint_path(&d, f)))
}

#[derive(Debug)]
pub struct SweepResult {
    pub witness: Option<PsSharpWitness>,
    pub from_cache: bool,
}

/// Runs or resumes the sweep, saving progress to `location` if given.
pub fn sweep(f: &BooleanFunction, location: Option<&Path>) -> Result<SweepResult> {
    let Some(path) = location else {
        let state = ps_sharp_sweep(f, None, |_| {})?;
        return Ok(SweepResult {
            witness: state.witness,
            from_cache: false,
        });
    };
    let previous = load(path)?;
    if let Some(state) = &previous {
        if state.complete && state.digest == function_digest(f) {
            return Ok(SweepResult {
                witness: state.witness.clone(),
                from_cache: true,
            });
        }
    }
    let mut write_error = None;
    let state = ps_sharp_sweep(f, previous, |s| {
        if write_error.is_none() {
            write_error = store(path, s).err();
        }
    })
    .with_context(|| format!("resuming from {}", path.display()))?;
    if let Some(e) = write_error {
        return Err(e.context(format!("writing checkpoint {}", path.display())));
    }
    Ok(SweepResult {
        witness: state.witness,
        from_cache: false,
    })
}
