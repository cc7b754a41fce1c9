//! Registry of named distributions with Gamma-type moment functions.
//!
//! Each entry couples a form with its meaning (E X^s or E e^{sX}), the
//! support of the variable, a sampling recipe when one is known, an
//! optional closed-form density and the reference values of its strip and
//! asymptotic profile.
//!
//! Variables that live on the whole line and are symmetric (Cauchy,
//! symmetric stable, Linnik, average ISE) are represented through |X|: the
//! form is E|X|^s and the recipe samples |X|. Their densities, closed form
//! or inverted, are those of X itself.

mod density;
mod entries;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtform::{GammaTypeForm, Scalar};
use crate::stochastics::SampleRecipe;

pub use density::ClosedDensity;

/// What the form of an entry means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// F(s) = E X^s.
    Mellin,
    /// F(s) = E e^{sX}.
    Mgf,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Mellin => "mellin",
            Kind::Mgf => "mgf",
        })
    }
}

/// Open interval carrying the density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Support {
    #[serde(serialize_with = "crate::ser_f64")]
    pub lo: f64,
    #[serde(serialize_with = "crate::ser_f64")]
    pub hi: f64,
}

impl Support {
    pub const POSITIVE: Support = Support { lo: 0.0, hi: f64::INFINITY };
    pub const LINE: Support = Support { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub integer: bool,
    pub constraint: &'static str,
}

/// Name, parameter schema and description of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub label: &'static str,
    pub kind: Kind,
    pub symmetric: bool,
    pub params: &'static [ParamSpec],
}

impl EntryInfo {
    pub fn schema_hint(&self) -> String {
        if self.params.is_empty() {
            return format!("{} takes no parameters", self.name);
        }
        let parts: Vec<String> = self
            .params
            .iter()
            .map(|p| format!("{}{} ({})", p.name, if p.integer { ":int" } else { "" }, p.constraint))
            .collect();
        format!("{} parameters: {}", self.name, parts.join(", "))
    }
}

/// Named parameter values.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: f64) -> Option<f64> {
        self.0.insert(name.to_string(), value)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<const N: usize> From<[(&str, f64); N]> for Params {
    fn from(pairs: [(&str, f64); N]) -> Self {
        Params(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }
}

/// Reference strip and profile of an entry. γ, γ′ and δ are exact when
/// the parameters are rational; κ and C1 are not always available.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TabulatedProfile {
    #[serde(serialize_with = "crate::ser_f64")]
    pub rho_minus: f64,
    #[serde(serialize_with = "crate::ser_f64")]
    pub rho_plus: f64,
    pub gamma: Scalar,
    pub gamma_prime: Scalar,
    pub delta: Scalar,
    #[serde(serialize_with = "crate::ser_opt_f64")]
    pub kappa: Option<f64>,
    #[serde(serialize_with = "crate::ser_opt_f64")]
    pub c1: Option<f64>,
}

/// A quoted reference value that disagrees with the form, together with
/// the value the catalog tabulates instead.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownDiscrepancy {
    pub field: &'static str,
    #[serde(serialize_with = "crate::ser_f64")]
    pub quoted: f64,
    #[serde(serialize_with = "crate::ser_f64")]
    pub corrected: f64,
    pub reason: String,
}

/// A fully built catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionEntry {
    pub name: String,
    pub label: &'static str,
    pub params: Params,
    pub form: GammaTypeForm,
    pub kind: Kind,
    pub support: Support,
    pub symmetric: bool,
    pub recipe: Option<SampleRecipe>,
    pub density: Option<ClosedDensity>,
    pub tabulated: Option<TabulatedProfile>,
    pub discrepancies: Vec<KnownDiscrepancy>,
}

impl DistributionEntry {
    /// JSON export: name, parameters, schema, form, kind, support,
    /// recipe and reference profile.
    pub fn to_json(&self) -> serde_json::Value {
        let info = info(&self.name).expect("built entries are registered");
        serde_json::json!({
            "name": self.name,
            "label": self.label,
            "params": self.params,
            "schema": info.params,
            "kind": self.kind,
            "symmetric": self.symmetric,
            "support": self.support,
            "form": self.form.to_json_value(),
            "recipe": self.recipe.as_ref().map(|r| r.to_string()),
            "has_closed_density": self.density.is_some(),
            "tabulated": self.tabulated,
            "discrepancies": self.discrepancies,
        })
    }
}

/// What an entry builder produces; the registry adds name and metadata.
pub(crate) struct Built {
    pub form: GammaTypeForm,
    pub support: Support,
    pub recipe: Option<SampleRecipe>,
    pub density: Option<ClosedDensity>,
    pub tabulated: Option<TabulatedProfile>,
    pub discrepancies: Vec<KnownDiscrepancy>,
}

pub(crate) struct EntryDef {
    pub info: EntryInfo,
    pub build: fn(&Params) -> Result<Built>,
}

/// All entries, in a fixed order.
pub fn list_entries() -> Vec<EntryInfo> {
    entries::REGISTRY.iter().map(|d| d.info).collect()
}

pub fn info(name: &str) -> Result<EntryInfo> {
    find(name).map(|d| d.info)
}

fn find(name: &str) -> Result<&'static EntryDef> {
    entries::REGISTRY
        .iter()
        .find(|d| d.info.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn check_params(info: &EntryInfo, params: &Params) -> Result<()> {
    for (k, v) in params.iter() {
        let Some(spec) = info.params.iter().find(|p| p.name == k) else {
            return Err(Error::param(info.name, format!("unknown parameter '{k}'; {}", info.schema_hint())));
        };
        if !v.is_finite() {
            return Err(Error::param(info.name, format!("parameter {k} must be finite")));
        }
        if spec.integer && v != v.round() {
            return Err(Error::param(info.name, format!("parameter {k} must be an integer, got {v}")));
        }
    }
    for spec in info.params {
        if params.get(spec.name).is_none() {
            return Err(Error::param(info.name, format!("missing parameter '{}'; {}", spec.name, info.schema_hint())));
        }
    }
    Ok(())
}

/// Build the named entry, validating the parameters.
pub fn build(name: &str, params: &Params) -> Result<DistributionEntry> {
    let def = find(name)?;
    check_params(&def.info, params)?;
    let b = (def.build)(params)?;
    Ok(DistributionEntry {
        name: def.info.name.to_string(),
        label: def.info.label,
        params: params.clone(),
        form: b.form,
        kind: def.info.kind,
        support: b.support,
        symmetric: def.info.symmetric,
        recipe: b.recipe,
        density: b.density,
        tabulated: b.tabulated,
        discrepancies: b.discrepancies,
    })
}

/// The entry's form with existence constraints relaxed where the form
/// itself is still defined (K_α and W_α for α < 1/2), so that the
/// zero-free-strip check can be run on it. Other entries build normally.
pub fn form_for_consistency(name: &str, params: &Params) -> Result<GammaTypeForm> {
    let def = find(name)?;
    check_params(&def.info, params)?;
    match name {
        "pa_w" | "pa_k" => entries::pa_form(name, params.get("alpha").unwrap_or(f64::NAN)),
        _ => Ok((def.build)(params)?.form),
    }
}

/// Closed-form density of the entry at x; zero outside the support.
pub fn density_closed_form(entry: &DistributionEntry, x: f64) -> Result<f64> {
    match &entry.density {
        Some(d) => d.eval(x),
        None => Err(Error::NotAvailable(format!("{} has no closed-form density", entry.name))),
    }
}
