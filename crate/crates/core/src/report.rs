use std::fmt;

use crate::abelian::GroupElement;

/// One failed instance of an axiom, with the full instantiating tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub args: Vec<GroupElement>,
    pub lhs: GroupElement,
    pub rhs: GroupElement,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.axiom)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "): {} != {}", self.lhs, self.rhs)
    }
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Number of equation instances evaluated.
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(
        &mut self,
        axiom: &'static str,
        args: &[&GroupElement],
        lhs: GroupElement,
        rhs: GroupElement,
    ) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                axiom,
                args: args.iter().map(|a| (*a).clone()).collect(),
                lhs,
                rhs,
            });
        }
    }

    /// Violations of one named axiom.
    pub fn violations_of<'a>(&'a self, axiom: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}
