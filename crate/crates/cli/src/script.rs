//! `key=value` move files. Blank lines and `#` comments are skipped.

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    entries: Vec<(String, String)>,
}

impl Script {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key=value, got {line:?}", i + 1);
            };
            let key = key.trim().to_ascii_lowercase();
            if entries.iter().any(|(k, _)| *k == key) {
                bail!("line {}: {key} given twice", i + 1);
            }
            entries.push((key, value.trim().to_owned()));
        }
        Ok(Self { entries })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading script {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("malformed script {}", path.display()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Fails on keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (k, _) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                bail!("unknown key {k:?} (expected one of {})", allowed.join(", "));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_spacing() {
        let s = Script::parse("# moves\ntoss = head\n\nguess=tail # Bob\n").unwrap();
        assert_eq!(s.get("toss"), Some("head"));
        assert_eq!(s.get("guess"), Some("tail"));
        assert_eq!(s.get("reveal"), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Script::parse("toss head").is_err());
        assert!(Script::parse("toss=head\ntoss=tail").is_err());
        let s = Script::parse("tos=head").unwrap();
        assert!(s.check_keys(&["toss"]).is_err());
    }
}
