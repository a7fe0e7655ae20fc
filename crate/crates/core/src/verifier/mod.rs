//! Independent checks of pipeline outputs.

mod cycles;
mod flow;
mod lemma;
mod mesh_checks;

pub use cycles::{mesh_cycles, uniform_by_cycles};
pub use flow::max_disjoint_paths;
pub use lemma::{verify_lemma_output, LemmaOutput, LemmaParams};
pub use mesh_checks::{
    tangle_criterion, verify_homogeneous_wall, verify_rainbow_row, verify_tangle_truncation, verify_uniform,
};

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub property: String,
    pub witness: String,
}

/// Outcome of a check; `ok` exactly when there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    violations: Vec<Violation>,
}

impl Verdict {
    pub fn ok() -> Self {
        Verdict::default()
    }

    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        Verdict { violations }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Combines two verdicts.
    pub fn merge(self, other: Verdict) -> Verdict {
        let mut v = self.violations;
        v.extend(other.violations);
        Verdict::from_violations(v)
    }

    /// `OK` or one `VIOLATION <property> <witness>` line per violation.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "VIOLATION {} {}", v.property, v.witness)?;
        }
        Ok(())
    }
}

pub(crate) fn violation(property: &str, witness: impl Into<String>) -> Violation {
    Violation { property: property.to_string(), witness: witness.into() }
}
