//! Optional `key = value` configuration file.
//!
//! ```text
//! # registry overrides
//! field.8 = 0x11d
//! workers = 4
//! seed = 7
//! ```

use std::collections::BTreeMap;

use negabent_core::{Field, FieldError};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    /// Defining polynomial per degree, replacing the registry entry.
    pub polys: BTreeMap<u32, u32>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
}

fn parse_hex(v: &str) -> Option<u32> {
    let v = v
        .strip_prefix("0x")
        .or_else(|| v.strip_prefix("0X"))
        .unwrap_or(v);
    u32::from_str_radix(v, 16).ok()
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |what: &str| format!("config line {}: {what}", lineno + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value"))?;
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            if let Some(m) = key.strip_prefix("field.") {
                let m: u32 = m.parse().map_err(|_| err("bad degree"))?;
                let poly = parse_hex(value).ok_or_else(|| err("bad polynomial"))?;
                Field::with_poly(m, poly).map_err(|e| err(&e.to_string()))?;
                cfg.polys.insert(m, poly);
            } else {
                match key {
                    "workers" => {
                        cfg.workers = Some(value.parse().map_err(|_| err("bad worker count"))?)
                    }
                    "seed" => cfg.seed = Some(value.parse().map_err(|_| err("bad seed"))?),
                    _ => return Err(err(&format!("unknown key {key:?}"))),
                }
            }
        }
        Ok(cfg)
    }

    /// The field of degree `m`: the override if any, else the registry.
    pub fn field(&self, m: u32) -> Result<Field, FieldError> {
        match self.polys.get(&m) {
            Some(&p) => Field::with_poly(m, p),
            None => Field::new(m),
        }
    }

    /// `m=<int>[,poly=0x<hex>]`; an explicit polynomial wins over the config.
    pub fn parse_field(&self, text: &str) -> Result<Field, FieldError> {
        let explicit = Field::parse(text)?;
        if text.contains("poly") {
            Ok(explicit)
        } else {
            self.field(explicit.degree())
        }
    }
}
