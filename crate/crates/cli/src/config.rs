//! `key = value` recipe files and their merge into the command line.
//!
//! Keys are long flag names (`theta0-frac`, or `theta0_frac`). The optional key
//! `command` names the subcommand when the command line omits it. Flags given on
//! the command line win over file values.

use crate::error::CliError;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub const SUBCOMMANDS: [&str; 6] = [
    "wedge-decay",
    "plates-decay",
    "halfsheet-decay",
    "wedge-shift",
    "halfsheet-shift",
    "validate",
];

/// Flags that exclude each other; setting one on the command line drops all of them from the file.
const EXCLUSIVE: [&[&str]; 2] = [&["theta0", "theta0-frac"], &["y-over-lambda", "y-frac"]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse_config(text: &str, path: &Path) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if content.is_empty() {
            continue;
        }
        let err = |reason: &str| CliError::Config {
            path: path.to_path_buf(),
            line,
            reason: reason.to_string(),
        };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err("expected 'key = value'"))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(err("invalid key"));
        }
        if value.is_empty() {
            return Err(err("missing value"));
        }
        if key == "config" {
            return Err(err("recipes cannot include other recipes"));
        }
        out.push(Entry {
            key,
            value: value.to_string(),
            line,
        });
    }
    Ok(out)
}

/// Removes `--config PATH` from `args` and returns the path, if present.
fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<PathBuf>, CliError> {
    let mut found = None;
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy().into_owned();
        if arg == "--config" {
            if i + 1 >= args.len() {
                return Err(CliError::usage("--config needs a file path"));
            }
            found = Some(PathBuf::from(args.remove(i + 1)));
            args.remove(i);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            found = Some(PathBuf::from(path));
            args.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(found)
}

fn flag_name(arg: &str) -> Option<&str> {
    let name = arg.strip_prefix("--")?;
    Some(name.split_once('=').map_or(name, |(n, _)| n))
}

/// Splices recipe values into `args` right after the subcommand.
pub fn merge(args: &[OsString], entries: &[Entry]) -> Result<Vec<OsString>, CliError> {
    let mut args = args.to_vec();
    let given: Vec<String> = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str().and_then(flag_name).map(str::to_owned))
        .collect();
    let mut sub_at = args
        .iter()
        .position(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s)));

    if let Some(cmd) = entries.iter().rev().find(|e| e.key == "command") {
        match sub_at {
            None => {
                if !SUBCOMMANDS.contains(&cmd.value.as_str()) {
                    return Err(CliError::usage(format!(
                        "unknown command '{}' in recipe",
                        cmd.value
                    )));
                }
                args.insert(1, cmd.value.clone().into());
                sub_at = Some(1);
            }
            Some(i) if args[i] != *cmd.value.as_str() => {
                return Err(CliError::usage(format!(
                    "recipe is for '{}' but '{}' was requested",
                    cmd.value,
                    args[i].to_string_lossy()
                )));
            }
            Some(_) => {}
        }
    }
    let Some(sub_at) = sub_at else {
        return Ok(args);
    };

    let overridden = |key: &str| {
        given.iter().any(|g| g == key)
            || EXCLUSIVE.iter().any(|group| {
                group.contains(&key) && group.iter().any(|k| given.iter().any(|g| g == k))
            })
    };
    let mut injected = Vec::new();
    for e in entries
        .iter()
        .filter(|e| e.key != "command" && !overridden(&e.key))
    {
        injected.push(OsString::from(format!("--{}", e.key)));
        injected.push(OsString::from(&e.value));
    }
    args.splice(sub_at + 1..sub_at + 1, injected);
    Ok(args)
}

/// Resolves `--config` into plain flags.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut args = args;
    let Some(path) = take_config_path(&mut args)? else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    let entries = parse_config(&text, &path)?;
    merge(&args, &entries)
}
