//! `key=value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    /// One `key=value` per line; blank lines and `#` comments are skipped.
    /// Later keys override earlier ones.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, "expected `key=value`"))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(Error::parse(i + 1, "empty key"));
            }
            values.insert(k.to_owned(), v.trim().to_owned());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&crate::error::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::InvalidConfig(format!("invalid value `{v}` for `{key}`")))
            })
            .transpose()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}
