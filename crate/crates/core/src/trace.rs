use std::fmt;

/// One recorded decision of a recursive construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    /// Case label, e.g. `"C2_2_1"` or `"apex"`.
    pub case: String,
    /// Vertices the case acted on, in the order the case names them.
    pub vertices: Vec<usize>,
    pub note: String,
}

/// Ordered log of which case fired at each step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, case: impl Into<String>, vertices: Vec<usize>, note: impl Into<String>) {
        self.steps.push(TraceStep { case: case.into(), vertices, note: note.into() });
    }

    pub fn cases(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.case.as_str())
    }

    pub fn count(&self, case: &str) -> usize {
        self.cases().filter(|c| *c == case).count()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{} {:?}", s.case, s.vertices)?;
            if !s.note.is_empty() {
                write!(f, " {}", s.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
