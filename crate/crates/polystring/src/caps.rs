//! Resource caps from the `POLYSTRING_CAPS` environment variable.
//!
//! The value is a comma-separated list of `key=value` pairs, for example
//! `census=200000,bfs=20000000`. Keys: `intersection`, `classes`, `census`,
//! `bfs`, `export`. Unlisted keys keep their defaults.

use polystring_core::Caps;

use crate::CliError;

pub const ENV_VAR: &str = "POLYSTRING_CAPS";

pub fn parse_caps(spec: &str) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{ENV_VAR}: expected key=value, found `{item}`")))?;
        let value: usize = value
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| CliError::Usage(format!("{ENV_VAR}: `{value}` is not a non-negative integer")))?;
        let slot = match key.trim() {
            "intersection" => &mut caps.intersection,
            "classes" => &mut caps.classes,
            "census" => &mut caps.census,
            "bfs" => &mut caps.bfs,
            "export" => &mut caps.export,
            other => return Err(CliError::Usage(format!("{ENV_VAR}: unknown cap `{other}`"))),
        };
        *slot = value;
    }
    Ok(caps)
}

/// Caps from the environment, or the defaults when the variable is unset.
pub fn caps_from_env() -> Result<Caps, CliError> {
    match std::env::var(ENV_VAR) {
        Ok(s) => parse_caps(&s),
        Err(std::env::VarError::NotPresent) => Ok(Caps::default()),
        Err(e) => Err(CliError::Usage(format!("{ENV_VAR}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let c = parse_caps("census=100, bfs=2_000").unwrap();
        assert_eq!(c.census, 100);
        assert_eq!(c.bfs, 2000);
        assert_eq!(c.classes, Caps::default().classes);
        assert_eq!(parse_caps("").unwrap(), Caps::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_caps("census").is_err());
        assert!(parse_caps("census=-1").is_err());
        assert!(parse_caps("speed=3").is_err());
    }
}
