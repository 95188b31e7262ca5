use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use strata_core::strata::{DEFAULT_CHOICE_BOUND, DEFAULT_NODE_BUDGET};
use strata_core::systems::default_cap;
use strata_core::{Algebra, Error, Field};

/// Caps and field, from the config file with command-line overrides.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSettings {
    pub field: Option<String>,
    pub cap: Option<usize>,
    pub degree_cap: Option<usize>,
    pub coresolution_cap: Option<usize>,
    pub node_budget: Option<usize>,
    pub choice_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub field: Option<String>,
    pub cap: Option<usize>,
    pub degree_cap: Option<usize>,
    pub coresolution_cap: usize,
    pub node_budget: usize,
    pub choice_bound: usize,
}

impl Settings {
    pub fn resolve(
        file: Option<&Path>,
        field: Option<String>,
        cap: Option<usize>,
    ) -> Result<Settings> {
        let fs = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                toml::from_str::<FileSettings>(&text)?
            }
            None => FileSettings::default(),
        };
        Ok(Settings {
            field: field.or(fs.field),
            cap: cap.or(fs.cap),
            degree_cap: fs.degree_cap,
            coresolution_cap: fs.coresolution_cap.unwrap_or(8),
            node_budget: fs.node_budget.unwrap_or(DEFAULT_NODE_BUDGET),
            choice_bound: fs.choice_bound.unwrap_or(DEFAULT_CHOICE_BOUND),
        })
    }

    /// Cap on universal extension steps.
    pub fn cap(&self, a: &Algebra) -> usize {
        self.cap.unwrap_or_else(|| default_cap(a))
    }

    pub fn field(&self) -> Result<Option<Field>> {
        let Some(f) = &self.field else {
            return Ok(None);
        };
        if f == "Q" {
            return Ok(Some(Field::Rationals));
        }
        let p = f
            .strip_prefix("F")
            .and_then(|p| {
                p.strip_prefix('p')
                    .map(|q| q.trim_start_matches(':'))
                    .or(Some(p))
            })
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Input(format!("field {f}: expected Q or F<prime>")))?;
        Ok(Some(Field::prime(p)?))
    }
}
