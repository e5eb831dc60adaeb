//! Sweep configuration files: flat `key=value` text, one key per line,
//! list values comma separated, `#` starting a comment.

use crate::CliError;

/// Parsed `(key, values)` entries in file order. Keys are normalized to use
/// `-` (so `tail_eps` and `tail-eps` are the same key).
pub fn parse(text: &str) -> Result<Vec<(String, Vec<String>)>, CliError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {}: expected key=value, got {raw:?}",
                i + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        let values: Vec<String> = value
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if key.is_empty() || values.is_empty() {
            return Err(CliError::Usage(format!(
                "config line {}: empty key or value",
                i + 1
            )));
        }
        entries.push((key, values));
    }
    Ok(entries)
}

pub fn parse_list<T: std::str::FromStr>(key: &str, values: &[String]) -> Result<Vec<T>, CliError> {
    values
        .iter()
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}")))
        })
        .collect()
}

pub fn parse_one<T: std::str::FromStr>(key: &str, values: &[String]) -> Result<T, CliError> {
    match values {
        [v] => parse_list(key, std::slice::from_ref(v)).map(|mut l| l.remove(0)),
        _ => Err(CliError::Usage(format!(
            "config key {key} takes a single value"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists_and_comments() {
        let entries = parse("# sweep\nbeta = 0.05, 0.5\n\ntail_eps=1e-14 # tighter\n").unwrap();
        assert_eq!(entries[0].0, "beta");
        assert_eq!(entries[0].1, vec!["0.05", "0.5"]);
        assert_eq!(entries[1].0, "tail-eps");
        let tail: f64 = parse_one("tail-eps", &entries[1].1).unwrap();
        assert_eq!(tail, 1e-14);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("beta 0.05").is_err());
        assert!(parse("beta=").is_err());
        assert!(parse_one::<f64>("tol", &["a".into()]).is_err());
    }
}
