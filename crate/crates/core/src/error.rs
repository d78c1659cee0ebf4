use alloc::string::String;
use core::fmt;

/// Errors raised by the crystal machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Rank outside the bounds of the Cartan family.
    InvalidRank { family: char, rank: usize },
    /// A Cartan type string that could not be parsed.
    InvalidType(String),
    /// A node index outside `0..rank`.
    InvalidIndex { index: usize, rank: usize },
    /// The word is not a reduced expression.
    NotReduced,
    /// The word is reduced but does not represent `w_0`.
    NotLongest,
    /// Two words represent different Weyl group elements.
    DifferentElements,
    /// A braid move that does not apply at the given position.
    InvalidMove { position: usize, m: u32 },
    /// Coordinate vector length does not match the word length.
    LengthMismatch { expected: usize, found: usize },
    /// The operation needs a type `A` datum.
    NotTypeA,
    /// The operation needs type `A_2`.
    NotTypeA2,
    /// A permutation that is not a diagram automorphism, or that violates
    /// the orbit orthogonality condition.
    InvalidAutomorphism(String),
    /// Text parse failure with a byte offset into the input.
    Parse { position: usize, message: String },
    /// An affine label pair violating the parity constraint `a - i` odd.
    Parity { node: u8, shift: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank { family, rank } => {
                write!(f, "rank {rank} is not allowed for type {family}")
            }
            Error::InvalidType(s) => write!(f, "invalid Cartan type `{s}`"),
            Error::InvalidIndex { index, rank } => {
                write!(f, "index {} out of range for rank {rank}", index + 1)
            }
            Error::NotReduced => write!(f, "word is not reduced"),
            Error::NotLongest => write!(f, "word is not a reduced word of the longest element"),
            Error::DifferentElements => write!(f, "words represent different Weyl group elements"),
            Error::InvalidMove { position, m } => {
                write!(f, "braid move of length {m} does not apply at position {position}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::NotTypeA => write!(f, "operation requires Cartan type A"),
            Error::NotTypeA2 => write!(f, "operation requires Cartan type A2"),
            Error::InvalidAutomorphism(s) => write!(f, "invalid diagram automorphism: {s}"),
            Error::Parse { position, message } => {
                write!(f, "parse error at offset {position}: {message}")
            }
            Error::Parity { node, shift } => {
                write!(f, "label ({node},{shift}) violates the parity constraint")
            }
        }
    }
}

impl core::error::Error for Error {}
