//! Input files and the validated job they describe.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use tannaka_core::exactla::Fp;
use tannaka_core::groups::{check_splitting_prime, splitting_prime, FiniteGroup, GroupFile, RetractionPair};

use crate::CliError;

pub const GROUP_SCHEMA: &str = "tannaka.group/1";
pub const RETRACTION_SCHEMA: &str = "tannaka.retraction/1";

#[derive(Deserialize)]
struct GroupInput {
    #[serde(default)]
    schema: Option<String>,
    #[serde(flatten)]
    group: GroupFile,
}

/// Images of `K`'s generators as words in `K`'s labels; may name its own
/// subgroup generators.
#[derive(Clone, Debug, Deserialize)]
pub struct RetractionInput {
    #[serde(default)]
    schema: Option<String>,
    pub generator_images: Vec<String>,
    #[serde(default)]
    pub subgroup_gens: Option<Vec<String>>,
}

fn check_schema(found: &Option<String>, expected: &str) -> Result<(), CliError> {
    match found {
        Some(s) if s != expected => Err(CliError::Input(format!("schema {s:?} is not {expected:?}"))),
        _ => Ok(()),
    }
}

pub fn read_group(path: &Path) -> Result<Arc<FiniteGroup>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let input: GroupInput =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    check_schema(&input.schema, GROUP_SCHEMA)?;
    Ok(Arc::new(input.group.build()?))
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
pub fn read_retraction(arg: &str) -> Result<RetractionInput, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    let input: RetractionInput = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("retraction: {e}")))?;
    check_schema(&input.schema, RETRACTION_SCHEMA)?;
    Ok(input)
}

/// `a, b^2` → `["a", "b^2"]`.
pub fn split_words(list: &str) -> Vec<String> {
    list.split(',').map(str::trim).filter(|w| !w.is_empty()).map(String::from).collect()
}

pub fn build_pair(
    big: &Arc<FiniteGroup>,
    default_subgroup: &[String],
    retraction: Option<&RetractionInput>,
) -> Result<RetractionPair, CliError> {
    match retraction {
        Some(r) => {
            let subgroup = r.subgroup_gens.as_deref().unwrap_or(default_subgroup);
            Ok(RetractionPair::from_words(big.clone(), subgroup, &r.generator_images)?)
        }
        None if default_subgroup.is_empty() => Ok(RetractionPair::trivial_subgroup(big.clone())),
        None => Err(CliError::Input("a nontrivial subgroup needs --retraction".into())),
    }
}

/// `auto` picks the least splitting prime ≥ 3; explicit primes must split.
pub fn choose_prime(group: &FiniteGroup, arg: &str) -> Result<Fp, CliError> {
    if arg == "auto" {
        return Ok(Fp::new(splitting_prime(group, 3)?)?);
    }
    let p: u64 = arg.parse().map_err(|_| CliError::Input(format!("--prime expects auto or an integer, got {arg:?}")))?;
    Ok(check_splitting_prime(group, p)?)
}
