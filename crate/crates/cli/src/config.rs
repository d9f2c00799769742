//! `key = value` config files. Values are spliced into the argument list right
//! after the subcommand, so anything given on the command line wins.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Command};

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got `{raw}`", i + 1);
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        out.push((k.trim_start_matches("--").replace('_', "-"), v.to_string()));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

/// Returns `argv` with the config file's entries inserted as flags. Keys
/// belonging to other subcommands are skipped; unknown keys are an error.
pub fn expand_args(cmd: &Command, argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(sub_pos) = argv.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')) else {
        return Ok(argv);
    };
    let sub_pos = sub_pos + 1;
    let Some(sub) = cmd.find_subcommand(argv[sub_pos].to_string_lossy().as_ref()) else {
        return Ok(argv);
    };
    let Some(path) = config_path(&argv[sub_pos + 1..]) else {
        return Ok(argv);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;

    let mut injected = Vec::new();
    for (key, value) in parse_config(&text)? {
        if key == "config" {
            bail!("config files cannot include other config files");
        }
        let known_anywhere = cmd
            .get_subcommands()
            .flat_map(|s| s.get_arguments())
            .any(|a| a.get_long() == Some(key.as_str()));
        if !known_anywhere {
            bail!("unknown config key `{key}`");
        }
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
            continue;
        };
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "1" | "yes" => injected.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                _ => bail!("config key `{key}` expects true or false, got `{value}`"),
            }
        } else {
            injected.push(OsString::from(format!("--{key}={value}")));
        }
    }
    let mut out = argv;
    out.splice(sub_pos + 1..sub_pos + 1, injected);
    Ok(out)
}
