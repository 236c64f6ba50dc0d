use alloc::vec::Vec;

/// Result of evaluating a single law or condition.
///
/// Failures carry a witnessing tuple of element indices; which positions mean
/// what is documented on the condition that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail(Vec<usize>),
    /// Topological clause that holds trivially on a finite discrete space.
    Vacuous,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        !matches!(self, Outcome::Fail(_))
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Outcome::Fail(w) => Some(w),
            _ => None,
        }
    }

    pub(crate) fn from_witness(w: Option<Vec<usize>>) -> Self {
        match w {
            Some(w) => Outcome::Fail(w),
            None => Outcome::Pass,
        }
    }
}
