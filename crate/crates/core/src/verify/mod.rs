//! End-to-end reproduction checks for the published results, one per
//! claim, selectable by number or name.

use std::fmt;
use std::time::Duration;

use serde_json::json;

use crate::error::Result;
use crate::pathsum::WeightTable;
use crate::strategy::Registry;

mod algebra;
mod lie;
mod paths;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6e64_6761;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckItem {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckItem { label: label.into(), pass, detail: detail.into() }
    }
}

/// Inputs shared by every check. The weight table is exposed so that a
/// deliberately corrupted table can be injected as a mutation canary.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub seed: u64,
    pub table: WeightTable,
}

impl Default for Context {
    fn default() -> Self {
        Context { seed: DEFAULT_SEED, table: WeightTable::standard() }
    }
}

pub trait ReproductionCheck: Send + Sync {
    fn id(&self) -> u32;
    /// Library module the check exercises.
    fn group(&self) -> &'static str;
    fn title(&self) -> &'static str;
    /// Wall-clock allowance for one run.
    fn budget(&self) -> Duration;
    fn run(&self, ctx: &Context) -> Result<Vec<CheckItem>>;
}

type RunFn = fn(&Context) -> Result<Vec<CheckItem>>;

struct FnCheck {
    id: u32,
    group: &'static str,
    title: &'static str,
    budget_secs: u64,
    run: RunFn,
}

impl ReproductionCheck for FnCheck {
    fn id(&self) -> u32 {
        self.id
    }

    fn group(&self) -> &'static str {
        self.group
    }

    fn title(&self) -> &'static str {
        self.title
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(self.budget_secs)
    }

    fn run(&self, ctx: &Context) -> Result<Vec<CheckItem>> {
        (self.run)(ctx)
    }
}

pub fn reproduction_checks() -> Registry<dyn ReproductionCheck> {
    let table: [(&'static str, u32, &'static str, &'static str, u64, RunFn); 12] = [
        ("mc-3-3", 1, "pathsum", "(3,3) Maurer-Cartan equation", 1, paths::mc_three_three),
        ("mc-3-4", 2, "pathsum", "(3,4) Maurer-Cartan equation", 1, paths::mc_three_four),
        ("mc-coefficients", 3, "pathsum", "path-sum coefficient spot checks", 1, paths::coefficients),
        ("mc-word-oracle", 4, "pathsum", "Maurer-Cartan word identity", 10, paths::word_oracle),
        ("infinitesimal", 5, "pathsum", "infinitesimal Maurer-Cartan identity", 5, paths::infinitesimal),
        ("omega-nilpotency", 6, "forms", "nilpotency of depth-N forms", 30, algebra::omega_nilpotency),
        ("difference-forms", 7, "forms", "difference forms", 30, algebra::difference_forms),
        ("field-powers", 8, "operators", "powers of graded vector fields", 30, algebra::field_powers),
        ("de-rham-deformations", 9, "liealgebroid", "deformations of the de Rham differential", 60, lie::deformations),
        ("three-lie", 10, "liealgebroid", "3-Lie algebras: operator versus bracket identity", 30, lie::three_lie),
        ("algebroid-identities", 11, "liealgebroid", "coordinate identities of Lie algebroids", 60, lie::algebroid),
        ("cohomology", 12, "ncomplex", "cohomology of N-complexes", 10, algebra::cohomology),
    ];
    let mut reg = Registry::<dyn ReproductionCheck>::new("reproduction check");
    for (name, id, group, title, budget_secs, run) in table {
        reg.register(name, Box::new(FnCheck { id, group, title, budget_secs, run }));
    }
    reg
}

/// Checks matching one of the comma-separated patterns: an exact number,
/// an exact group name, or a substring of the check name. All when `None`.
pub fn select<'a>(
    reg: &'a Registry<dyn ReproductionCheck>,
    filter: Option<&str>,
) -> Vec<(&'static str, &'a dyn ReproductionCheck)> {
    let pats: Vec<&str> =
        filter.map(|f| f.split(',').map(str::trim).filter(|p| !p.is_empty()).collect()).unwrap_or_default();
    reg.iter()
        .filter(|(name, c)| {
            pats.is_empty()
                || pats.iter().any(|p| match p.parse::<u32>() {
                    Ok(n) => n == c.id(),
                    Err(_) => *p == c.group() || name.contains(p),
                })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub group: &'static str,
    pub title: &'static str,
    pub items: Vec<CheckItem>,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "name": self.name,
            "group": self.group,
            "title": self.title,
            "pass": self.pass(),
            "items": self.items.iter().map(|i| json!({"label": i.label, "pass": i.pass, "detail": i.detail})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({}): {}", self.id, self.title, self.name, if self.pass() { "PASS" } else { "FAIL" })?;
        for i in &self.items {
            write!(f, "\n  {} {}", if i.pass { "ok  " } else { "FAIL" }, i.label)?;
            if !i.detail.is_empty() {
                write!(f, ": {}", i.detail)?;
            }
        }
        Ok(())
    }
}

/// Runs one check on its own derived seed; an error becomes a single
/// failing item.
pub fn run_check(name: &'static str, check: &dyn ReproductionCheck, ctx: &Context) -> CheckOutcome {
    let own = Context { seed: ctx.seed ^ u64::from(check.id()), ..*ctx };
    let items = check.run(&own).unwrap_or_else(|e| vec![CheckItem::new("run", false, e.to_string())]);
    CheckOutcome { id: check.id(), name, group: check.group(), title: check.title(), items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        let reg = reproduction_checks();
        assert_eq!(select(&reg, None).len(), 12);
        let ids: Vec<u32> = select(&reg, Some("3, mc-word")).iter().map(|(_, c)| c.id()).collect();
        assert_eq!(ids, [3, 4]);
        assert_eq!(select(&reg, Some("lie")).len(), 1);
        assert_eq!(select(&reg, Some("pathsum")).len(), 5);
        assert_eq!(select(&reg, Some("liealgebroid")).len(), 3);
        assert!(select(&reg, Some("13")).is_empty());
    }
}
