//! key=value configuration files. Flags override file values.

use crate::spec::CliError;
use std::collections::BTreeMap;
use std::path::Path;

/// Recognized configuration keys, mirroring the command-line flags.
pub const KNOWN_KEYS: &[&str] =
    &["model", "gamma", "field", "temp", "coupling", "convention", "out", "format"];

/// Parse `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::invalid(
                "config",
                format!("line {}: expected key=value, got {:?}", lineno + 1, line),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::invalid(
                "config",
                format!("line {}: unknown key {:?}", lineno + 1, key),
            ));
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

pub fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid("config", format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_skips_comments() {
        let text = "# figure grid\nmodel = aniso-xy\ngamma=-1:1:21\n\ntemp=0.05:5:100\n";
        let map = parse(text).unwrap();
        assert_eq!(map["model"], "aniso-xy");
        assert_eq!(map["gamma"], "-1:1:21");
        assert_eq!(map["temp"], "0.05:5:100");
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(parse("speed=11\n").is_err());
        assert!(parse("model aniso-xy\n").is_err());
    }
}
