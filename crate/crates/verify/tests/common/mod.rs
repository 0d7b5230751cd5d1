//! Shared helpers for the integration tests.
#![allow(dead_code)]

use serde::Deserialize;
use std::collections::BTreeMap;

const GOLDEN: &str = include_str!("../golden/derived.json");

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct NonBubbleGolden {
    pub best_constant: f64,
    pub distance: f64,
}

/// Values computed by `tests/oracles/derive.py` at high precision and frozen.
#[derive(Debug, Deserialize)]
pub struct Golden {
    lipschitz_gap_1000: BTreeMap<String, f64>,
    nonbubble: BTreeMap<String, NonBubbleGolden>,
    sigma_half_constant: BTreeMap<String, f64>,
}

impl Golden {
    pub fn load() -> Self {
        serde_json::from_str(GOLDEN).expect("golden file parses")
    }

    pub fn lipschitz_gap(&self, mu: f64) -> f64 {
        self.lipschitz_gap_1000[&format!("{mu}")]
    }

    pub fn nonbubble(&self, s: f64, n: usize) -> NonBubbleGolden {
        self.nonbubble[&format!("s={s},n={n}")]
    }

    pub fn sigma_half_constant(&self, n: usize) -> f64 {
        self.sigma_half_constant[&n.to_string()]
    }
}
