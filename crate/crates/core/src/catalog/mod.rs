//! Every tabulated identity, with its parameter constraints, its integrand
//! as printed, its closed form and the quadrature pipeline that checks it.
//!
//! ```
//! use frullani::catalog::{verify_entry, Catalog};
//! use frullani::record::{Params, Status};
//!
//! let catalog = Catalog::standard();
//! let params = Params(vec![("a".into(), 1.0), ("b".into(), 2.0)]);
//! let record = verify_entry(&catalog, "GR-3.434.2", &params, None).unwrap();
//! assert_eq!(record.status, Status::Pass);
//! ```

mod entries;
pub mod grid;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{parse, Bindings, Expr};
use crate::quadrature::{
    integrate_adaptive, integrate_decaying, integrate_frullani_oscillatory, OscillatorySpec, QuadratureResult,
};
use crate::record::{Params, Status, VerificationRecord};

pub use grid::{parse_grid_file, parse_pairs, GridError, GridLine};

/// Default comparison tolerance for smooth-decay and finite-interval entries.
pub const SMOOTH_TOL: f64 = 1e-6;
/// Default comparison tolerance for oscillatory entries.
pub const OSCILLATORY_TOL: f64 = 1e-4;
/// The oracle is asked for this fraction of the comparison tolerance.
pub const ORACLE_TOL_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalClass {
    /// `(0, ∞)` with an absolutely integrable, decaying integrand.
    SmoothDecay,
    /// `(0, 1)`.
    FiniteInterval,
    /// `(0, ∞)`, conditionally convergent.
    Oscillatory,
}

impl EvalClass {
    pub fn default_tolerance(self) -> f64 {
        match self {
            EvalClass::SmoothDecay | EvalClass::FiniteInterval => SMOOTH_TOL,
            EvalClass::Oscillatory => OSCILLATORY_TOL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EvalClass::SmoothDecay => "smooth-decay",
            EvalClass::FiniteInterval => "finite-interval",
            EvalClass::Oscillatory => "oscillatory",
        }
    }
}

impl fmt::Display for EvalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    GradshteynRyzhik,
    Ramanujan,
}

/// A predicate on the parameter values, in declaration order.
#[derive(Clone, Copy)]
pub struct Constraint {
    pub prose: &'static str,
    pub holds: fn(&[f64]) -> bool,
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prose)
    }
}

/// `(f(0), f(∞))` from an entry's parameter values.
pub type LimitsFn = fn(&[f64]) -> (f64, f64);
/// Angular frequencies from an entry's parameter values.
pub type FrequenciesFn = fn(&[f64]) -> Vec<f64>;

/// How the entry reads as `∫ (f(a x^p) - f(b x^p)) dx/x`.
#[derive(Clone, Copy)]
pub struct FrullaniForm {
    /// `f` as an expression in `x` and the entry's parameters.
    pub f: &'static str,
    /// `(a, b, p)` in the engine's orientation.
    pub scales: fn(&[f64]) -> (f64, f64, f64),
    /// `(f(0), f(∞))` when both exist.
    pub limits: Option<LimitsFn>,
}

impl fmt::Debug for FrullaniForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrullaniForm")
            .field("f", &self.f)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub source: Source,
    /// The table's own number for the entry.
    pub number: &'static str,
    pub params: &'static [&'static str],
    pub constraints: &'static [Constraint],
    pub integrand_text: &'static str,
    pub closed_form_text: &'static str,
    pub class: EvalClass,
    pub integrand: fn(&[f64], f64) -> f64,
    pub closed_form: fn(&[f64]) -> f64,
    /// Angular frequencies present in the integrand (oscillatory entries).
    pub frequencies: Option<FrequenciesFn>,
    /// The two parameters whose equality makes the integrand vanish.
    pub scale_pair: Option<(&'static str, &'static str)>,
    pub frullani: Option<FrullaniForm>,
    pub grid: &'static [&'static [f64]],
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("class", &self.class)
            .finish_non_exhaustive()
    }
}

impl CatalogEntry {
    pub fn source_tag(&self) -> String {
        match self.source {
            Source::GradshteynRyzhik => format!("Gradshteyn-Ryzhik {}", self.number),
            Source::Ramanujan => format!("Ramanujan notebooks {}", self.number),
        }
    }

    pub fn constraint_prose(&self) -> String {
        self.constraints.iter().map(|c| c.prose).collect::<Vec<_>>().join(", ")
    }

    /// The first predicate the values violate.
    pub fn violated(&self, values: &[f64]) -> Option<&'static str> {
        if values.iter().any(|v| !v.is_finite()) {
            return Some("all parameters finite");
        }
        self.constraints.iter().find(|c| !(c.holds)(values)).map(|c| c.prose)
    }

    pub fn default_grid(&self) -> Vec<Params> {
        self.grid.iter().map(|values| self.params_from(values)).collect()
    }

    pub fn params_from(&self, values: &[f64]) -> Params {
        Params(
            self.params
                .iter()
                .map(|n| n.to_string())
                .zip(values.iter().copied())
                .collect(),
        )
    }

    /// Orders `given` by declaration, filling gaps from the first grid point.
    pub fn values_for(&self, given: &Params) -> Result<Vec<f64>, CatalogError> {
        for (name, _) in &given.0 {
            if !self.params.contains(&name.as_str()) {
                return Err(CatalogError::UnknownParameter {
                    entry: self.id.to_owned(),
                    name: name.clone(),
                    expected: self.params.join(", "),
                });
            }
        }
        Ok(self
            .params
            .iter()
            .enumerate()
            .map(|(i, name)| given.get(name).unwrap_or(self.grid[0][i]))
            .collect())
    }

    /// The `f` of the entry's Frullani form with parameters bound.
    pub fn frullani_f(&self, values: &[f64]) -> Option<Expr> {
        let form = self.frullani?;
        let bindings: Bindings = self
            .params
            .iter()
            .map(|n| n.to_string())
            .zip(values.iter().copied())
            .collect();
        Some(parse(form.f).expect("catalog templates parse").bind(&bindings))
    }
}

/// An alternative id that renames another entry's parameters.
#[derive(Debug, Clone, Copy)]
pub struct Alias {
    pub id: &'static str,
    pub target: &'static str,
    /// `(alias letter, target letter)`.
    pub rename: &'static [(&'static str, &'static str)],
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("{entry} has no parameter `{name}` (parameters: {expected})")]
    UnknownParameter {
        entry: String,
        name: String,
        expected: String,
    },
    #[error("{entry}: parameters violate {predicate}")]
    Constraint { entry: String, predicate: String },
}

/// A constraint-satisfying binding of one entry.
#[derive(Debug, Clone)]
pub struct Instance {
    pub entry: &'static CatalogEntry,
    pub values: Vec<f64>,
    pub expected: f64,
}

impl Instance {
    pub fn integrand(&self, x: f64) -> f64 {
        (self.entry.integrand)(&self.values, x)
    }

    pub fn params(&self) -> Params {
        self.entry.params_from(&self.values)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Catalog {
    entries: &'static [CatalogEntry],
    aliases: &'static [Alias],
}

impl Catalog {
    pub fn standard() -> Catalog {
        Catalog {
            entries: &entries::ENTRIES,
            aliases: &entries::ALIASES,
        }
    }

    pub fn entries(&self) -> &'static [CatalogEntry] {
        self.entries
    }

    pub fn aliases(&self) -> &'static [Alias] {
        self.aliases
    }

    pub fn get(&self, id: &str) -> Option<&'static CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn alias(&self, id: &str) -> Option<&'static Alias> {
        self.aliases.iter().find(|a| a.id == id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.get(id).is_some() || self.alias(id).is_some()
    }

    fn lookup(&self, id: &str) -> Result<&'static CatalogEntry, CatalogError> {
        self.get(id).ok_or_else(|| CatalogError::UnknownEntry(id.to_owned()))
    }
}

/// One row of [`list_entries`].
#[derive(Debug, Clone, PartialEq)]
pub struct Listing {
    pub id: &'static str,
    pub source: String,
    pub constraints: String,
    pub class: EvalClass,
}

pub fn list_entries(catalog: &Catalog) -> Vec<Listing> {
    catalog
        .entries()
        .iter()
        .map(|e| Listing {
            id: e.id,
            source: e.source_tag(),
            constraints: e.constraint_prose(),
            class: e.class,
        })
        .collect()
}

pub fn default_grid(catalog: &Catalog, id: &str) -> Result<Vec<Params>, CatalogError> {
    if let Some(alias) = catalog.alias(id) {
        let target = catalog.lookup(alias.target)?;
        return Ok(target
            .default_grid()
            .iter()
            .map(|p| rename_params(p, alias, false))
            .collect());
    }
    Ok(catalog.lookup(id)?.default_grid())
}

/// Binds parameters and evaluates the closed form. Missing parameters take
/// their value from the entry's first grid point.
pub fn instantiate(catalog: &Catalog, id: &str, params: &Params) -> Result<Instance, CatalogError> {
    let entry = catalog.lookup(id)?;
    let values = entry.values_for(params)?;
    if let Some(predicate) = entry.violated(&values) {
        return Err(CatalogError::Constraint {
            entry: id.to_owned(),
            predicate: predicate.to_owned(),
        });
    }
    let expected = (entry.closed_form)(&values);
    Ok(Instance {
        entry,
        values,
        expected,
    })
}

fn rename_params(params: &Params, alias: &Alias, to_target: bool) -> Params {
    Params(
        params
            .0
            .iter()
            .map(|(k, v)| {
                let renamed = alias
                    .rename
                    .iter()
                    .find(|(from, to)| if to_target { from == k } else { to == k })
                    .map(|(from, to)| if to_target { *to } else { *from })
                    .unwrap_or(k.as_str());
                (renamed.to_owned(), *v)
            })
            .collect(),
    )
}

/// Verifies one parameter set. Only an unknown id or parameter name is an
/// error; everything else is reported through the record's status.
pub fn verify_entry(
    catalog: &Catalog,
    id: &str,
    params: &Params,
    tol: Option<f64>,
) -> Result<VerificationRecord, CatalogError> {
    if let Some(alias) = catalog.alias(id) {
        let mut record = verify_entry(catalog, alias.target, &rename_params(params, alias, true), tol)?;
        record.entry = alias.id.to_owned();
        record.params = rename_params(&record.params, alias, false);
        return Ok(record);
    }
    let entry = catalog.lookup(id)?;
    let values = entry.values_for(params)?;
    let started = Instant::now();
    let mut record = verify_values(entry, values, tol);
    record.wall_time = started.elapsed();
    Ok(record)
}

fn verify_values(entry: &'static CatalogEntry, values: Vec<f64>, tol: Option<f64>) -> VerificationRecord {
    let params = entry.params_from(&values);
    if let Some(predicate) = entry.violated(&values) {
        return VerificationRecord::new(entry.id, params, Status::ConstraintViolation)
            .with_note(format!("violates {predicate}"));
    }
    let tol = tol.unwrap_or_else(|| entry.class.default_tolerance());
    let instance = Instance {
        entry,
        expected: (entry.closed_form)(&values),
        values,
    };
    let mut record = VerificationRecord::new(entry.id, params, Status::OracleFailed);
    record.expected = Some(instance.expected);

    match run_oracle(&instance, ORACLE_TOL_FRACTION * tol) {
        Ok(r) => {
            let abs_err = (r.value - instance.expected).abs();
            record.numeric = Some(r.value);
            record.abs_err = Some(abs_err);
            record.oracle_error = Some(r.error_estimate);
            record.status = if !r.converged {
                Status::OracleFailed
            } else if abs_err <= tol {
                Status::Pass
            } else {
                Status::Fail
            };
            record.note = r.diagnostic;
        }
        Err(why) => record.note = Some(why),
    }
    record
}

/// Integrates the instance with the pipeline its class calls for.
pub fn run_oracle(instance: &Instance, tol: f64) -> Result<QuadratureResult, String> {
    let f = |x: f64| instance.integrand(x);
    let result = match instance.entry.class {
        EvalClass::SmoothDecay => integrate_decaying(f, tol),
        EvalClass::FiniteInterval => integrate_adaptive(f, 0.0, 1.0, tol),
        EvalClass::Oscillatory => {
            let frequencies = instance
                .entry
                .frequencies
                .map(|w| w(&instance.values))
                .unwrap_or_default();
            let spec = OscillatorySpec::for_frequencies(&frequencies).map_err(|e| e.to_string())?;
            integrate_frullani_oscillatory(f, &spec, tol)
        }
    };
    result.map_err(|e| e.to_string())
}

/// A unit of work for [`verify_all`].
#[derive(Debug, Clone)]
pub struct Job {
    pub id: String,
    pub params: Params,
}

/// Every entry's default grid in catalog order, with grid-file lines
/// replacing the defaults of the entries they name.
pub fn jobs(catalog: &Catalog, overrides: &[GridLine]) -> Vec<Job> {
    let mut out = Vec::new();
    for entry in catalog.entries() {
        let named: Vec<&GridLine> = overrides.iter().filter(|g| g.entry == entry.id).collect();
        if named.is_empty() {
            out.extend(entry.default_grid().into_iter().map(|params| Job {
                id: entry.id.to_owned(),
                params,
            }));
        } else {
            out.extend(named.into_iter().map(|g| Job {
                id: entry.id.to_owned(),
                params: g.params.clone(),
            }));
        }
    }
    // aliases run only when a grid file asks for them
    for alias in catalog.aliases() {
        out.extend(overrides.iter().filter(|g| g.entry == alias.id).map(|g| Job {
            id: alias.id.to_owned(),
            params: g.params.clone(),
        }));
    }
    out
}

/// Runs `jobs` in parallel; the records come back in job order.
pub fn verify_all(catalog: &Catalog, jobs: &[Job], tol: Option<f64>) -> Result<Vec<VerificationRecord>, CatalogError> {
    jobs.par_iter()
        .map(|job| verify_entry(catalog, &job.id, &job.params, tol))
        .collect()
}
