use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two operands live on carriers of different size.
    CarrierMismatch { expected: usize, found: usize },
    UnknownElement(String),
    DuplicateElement(String),
    EmptyCarrier,
    /// Carrier does not fit a `u64` mask.
    CarrierTooLarge { size: usize, max: usize },
    /// The reflexive-transitive closure of the generator pairs has a cycle.
    OrderCycle(Vec<String>),
    /// Some pair of elements has no meet or no join.
    NotALattice { reason: &'static str, a: usize, b: usize },
    /// An operation table is malformed (wrong length, out-of-range entry).
    BadTable(&'static str),
    /// Input too degenerate for the operation (e.g. the one-element lattice).
    Degenerate(&'static str),
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    /// A documented precondition does not hold for the input.
    Precondition(String),
    /// An internal consistency check failed; always an implementation bug.
    Invariant(String),
    /// Independent derivations of a theorem instance disagree.
    Falsified(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CarrierMismatch { expected, found } => {
                write!(f, "carrier mismatch: expected {expected} elements, found {found}")
            }
            Error::UnknownElement(e) => write!(f, "unknown element `{e}`"),
            Error::DuplicateElement(e) => write!(f, "duplicate element `{e}`"),
            Error::EmptyCarrier => f.write_str("carrier must be non-empty"),
            Error::CarrierTooLarge { size, max } => {
                write!(f, "carrier of {size} elements exceeds the maximum of {max}")
            }
            Error::OrderCycle(cycle) => {
                f.write_str("order is not antisymmetric; cycle ")?;
                for (i, e) in cycle.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" <= ")?;
                    }
                    f.write_str(e)?;
                }
                if let Some(first) = cycle.first() {
                    write!(f, " <= {first}")?;
                }
                Ok(())
            }
            Error::NotALattice { reason, a, b } => {
                write!(f, "not a lattice: elements #{a} and #{b} have no {reason}")
            }
            Error::BadTable(what) => write!(f, "malformed operation table: {what}"),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what}: size {size} exceeds cap {cap}")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Invariant(msg) => write!(f, "invariant violation: {msg}"),
            Error::Falsified(msg) => write!(f, "theorem instance falsified: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
