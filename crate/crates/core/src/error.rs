use alloc::string::String;
use core::fmt;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A label that does not name an element of the ground set.
    UnknownElement(String),
    /// Two elements share a label.
    DuplicateLabel(String),
    /// A set contains indices beyond the ground set.
    NotInGround { bits: u32, size: usize },
    /// Two objects are defined over different ground sets.
    GroundMismatch,
    /// An exhaustive routine was asked to run beyond its documented cap.
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    /// Malformed input that is not covered by the variants above.
    Invalid(String),
    /// A tree-edge index that does not exist.
    UnknownEdge(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownElement(label) => write!(f, "unknown element `{label}`"),
            Error::DuplicateLabel(label) => write!(f, "duplicate element label `{label}`"),
            Error::NotInGround { bits, size } => {
                write!(f, "set {bits:#x} is not a subset of a {size}-element ground set")
            }
            Error::GroundMismatch => f.write_str("ground sets do not match"),
            Error::Capacity { what, size, cap } => {
                write!(f, "{what}: size {size} exceeds the cap of {cap}")
            }
            Error::Invalid(msg) => f.write_str(msg),
            Error::UnknownEdge(e) => write!(f, "tree has no edge {e}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn capacity(what: &'static str, size: usize, cap: usize) -> crate::Result<()> {
    if size > cap {
        Err(Error::Capacity { what, size, cap })
    } else {
        Ok(())
    }
}
