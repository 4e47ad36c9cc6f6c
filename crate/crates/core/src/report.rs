//! Check reports: the uniform result type of every verification routine.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not run because a prerequisite check failed.
    Blocked,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Blocked => write!(f, "blocked"),
        }
    }
}

/// Outcome of one check at one order in h.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderDetail {
    pub order: usize,
    pub ok: bool,
    pub note: String,
}

/// An offending value, rendered exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

/// Result of a named check. Deterministic given the same inputs: details
/// and witnesses are produced in a fixed traversal order.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub status: Status,
    pub details: Vec<OrderDetail>,
    pub lowest_failing_order: Option<usize>,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            status: Status::Pass,
            details: Vec::new(),
            lowest_failing_order: None,
            witnesses: Vec::new(),
        }
    }

    pub fn blocked(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            status: Status::Blocked,
            details: Vec::new(),
            lowest_failing_order: None,
            witnesses: vec![Witness {
                label: "blocked by".into(),
                value: reason.into(),
            }],
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a per-order line. Informational only: callers mark failures
    /// through [`Report::fail_at`] or [`Report::fail`], where the order is
    /// meaningful.
    pub fn detail(&mut self, order: usize, ok: bool, note: impl Into<String>) {
        self.details.push(OrderDetail {
            order,
            ok,
            note: note.into(),
        });
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn fail_at(&mut self, order: usize) {
        self.status = Status::Fail;
        self.lowest_failing_order = Some(match self.lowest_failing_order {
            Some(o) => o.min(order),
            None => order,
        });
    }

    pub fn fail(&mut self) {
        self.status = Status::Fail;
    }

    pub fn witness(&mut self, label: impl Into<String>, value: impl fmt::Display) {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.to_string(),
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.name)?;
        if let Some(o) = self.lowest_failing_order {
            write!(f, " (lowest failing order {o})")?;
        }
        Ok(())
    }
}
