//! Text and JSON renderings of groundings, MAP results and sweeps, and the
//! sweep file format (one `delta=… sigma=… theta=…` line per config).

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{conclusions, MapResult, Pattern};
use crate::kernel::Formula;
use crate::network::{Grounding, WeightedFormula};
use crate::semantics::ParametricSemantics;
use crate::weight::format_strength;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRecord {
    pub formula: String,
    pub weight: String,
    /// Weight after selection.
    pub selected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionRecord {
    pub literal: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub formulae: Vec<FormulaRecord>,
    pub strength: String,
    /// Number of formulae left out under the compact display.
    pub hidden: usize,
    pub conclusions: Vec<ConclusionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub schema_version: u32,
    pub config: String,
    pub strength: String,
    pub ground_size: usize,
    pub query: Option<String>,
    pub maps: Vec<MapRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub rows: Vec<MapReport>,
}

pub fn map_report(sem: &ParametricSemantics, result: &MapResult, query: Option<&Pattern>, full: bool) -> Result<MapReport> {
    let strength = format_strength(result.strength);
    let mut maps = Vec::new();
    for entry in &result.maps {
        let shown: Vec<&Formula> = entry.shown(full);
        let formulae = entry
            .instantiation
            .iter()
            .zip(&entry.selected)
            .filter(|((f, _), _)| shown.contains(f))
            .map(|((f, w), s)| FormulaRecord { formula: f.to_string(), weight: w.to_string(), selected: s.to_string() })
            .collect();
        let found = match query {
            Some(p) => conclusions(&entry.instantiation, p)?,
            None => Vec::new(),
        };
        maps.push(MapRecord {
            formulae,
            strength: strength.clone(),
            hidden: entry.instantiation.len() - shown.len(),
            conclusions: found.into_iter().map(|(l, w)| ConclusionRecord { literal: l.to_string(), weight: w.to_string() }).collect(),
        });
    }
    Ok(MapReport {
        schema_version: SCHEMA_VERSION,
        config: sem.config_line(),
        strength,
        ground_size: result.ground_size,
        query: query.map(Pattern::to_string),
        maps,
    })
}

fn render_row(out: &mut String, r: &MapReport, with_strength: bool) {
    let _ = writeln!(out, "{}", r.config);
    if with_strength {
        let _ = writeln!(out, "  strength {}", r.strength);
    }
    for m in &r.maps {
        let fs: Vec<String> = m.formulae.iter().map(|f| format!("{} : {}", f.formula, f.weight)).collect();
        let _ = writeln!(out, "  map {{{}}}", fs.join(", "));
        for c in &m.conclusions {
            let _ = writeln!(out, "    conclusion ({}, {})", c.literal, c.weight);
        }
    }
}

/// Aligned text for one MAP result.
pub fn render_map(r: &MapReport) -> String {
    let mut out = String::new();
    render_row(&mut out, r, true);
    out
}

/// Table-shaped text for a sweep: per config, its MAPs and conclusions.
pub fn render_sweep(rows: &[MapReport]) -> String {
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        render_row(&mut out, r, false);
    }
    out
}

/// Parses a sweep file. Blank lines and `#` comments are skipped; errors
/// name the offending line.
pub fn parse_sweep(text: &str) -> Result<Vec<ParametricSemantics>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let sem = ParametricSemantics::parse_config(line).map_err(|e| Error::InvalidParameter(format!("sweep line {}: {e}", n + 1)))?;
        out.push(sem);
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("sweep file lists no configuration".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundRecord {
    pub text: String,
    /// Ids of the rules a ground rule instantiates.
    pub rule: Option<String>,
    pub item: WeightedFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundReport {
    pub schema_version: u32,
    pub timeline: (i64, i64),
    pub formulae: Vec<GroundRecord>,
}

/// Facts first, then ground rules, each in canonical order.
pub fn ground_report(g: &Grounding) -> GroundReport {
    let mi = &g.instantiation;
    let facts = mi.iter().filter(|(f, _)| f.as_literal().is_some());
    let rules = mi.iter().filter(|(f, _)| f.as_rule().is_some());
    GroundReport {
        schema_version: SCHEMA_VERSION,
        timeline: (mi.timeline().lower(), mi.timeline().upper()),
        formulae: facts
            .chain(rules)
            .map(|(f, w)| GroundRecord { text: f.to_string(), rule: g.label(f), item: WeightedFormula::new(f.clone(), w) })
            .collect(),
    }
}

pub fn render_ground(r: &GroundReport) -> String {
    let mut out = String::new();
    for rec in &r.formulae {
        match &rec.rule {
            Some(id) => {
                let _ = writeln!(out, "{} : {}  [{id}]", rec.text, rec.item.weight);
            }
            None => {
                let _ = writeln!(out, "{} : {}", rec.text, rec.item.weight);
            }
        }
    }
    out
}
