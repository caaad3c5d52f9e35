use core::fmt;
use core::ops::Add;

/// Port signature `inputs -> outputs` of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sort {
    pub inputs: usize,
    pub outputs: usize,
}

impl Sort {
    pub const fn new(inputs: usize, outputs: usize) -> Self {
        Sort { inputs, outputs }
    }

    /// Largest feedback width the sort admits.
    pub fn max_feedback(self) -> usize {
        self.inputs.min(self.outputs)
    }
}

/// Parallel composition adds componentwise.
impl Add for Sort {
    type Output = Sort;

    fn add(self, rhs: Sort) -> Sort {
        Sort::new(self.inputs + rhs.inputs, self.outputs + rhs.outputs)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.inputs, self.outputs)
    }
}
