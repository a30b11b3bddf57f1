use std::fmt;

/// A violated identity together with the lexicographically least tuple of
/// element indices on which it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            witness,
            detail: detail.into(),
        }
    }

    pub(crate) fn prefixed(mut self, context: &str) -> Self {
        self.axiom = format!("{context}: {}", self.axiom);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.axiom, self.witness, self.detail)
    }
}

/// Outcome of an exhaustive axiom sweep. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn push_opt(&mut self, v: Option<Violation>) {
        if let Some(v) = v {
            self.violations.push(v);
        }
    }

    /// Appends every violation of `other`, tagging each with `context`.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        self.violations
            .extend(other.violations.into_iter().map(|v| v.prefixed(context)));
    }

    pub fn mentions(&self, axiom_fragment: &str) -> bool {
        self.violations.iter().any(|v| v.axiom.contains(axiom_fragment))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Returns the first tuple (in lexicographic order) of `arity` indices below
/// `n` for which `holds` is false.
pub(crate) fn first_failure<F>(n: usize, arity: usize, mut holds: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    if arity == 0 {
        return if holds(&[]) { None } else { Some(vec![]) };
    }
    if n == 0 {
        return None;
    }
    let mut t = vec![0usize; arity];
    loop {
        if !holds(&t) {
            return Some(t);
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_lexicographically_least() {
        let w = first_failure(4, 2, |t| t[0] + t[1] < 4);
        assert_eq!(w, Some(vec![1, 3]));
        assert_eq!(first_failure(3, 3, |_| true), None);
    }
}
