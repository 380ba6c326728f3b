use thiserror::Error;

use crate::lattice::LatticePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node index {0} is out of range 1..={1}")]
    OutOfRange(i32, i32),
    #[error("point ({}, {}) is not in the lattice", .0.i, .0.k)]
    InvalidLatticePoint(LatticePoint),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("quotient is not in the root lattice")]
    NotInRootLattice,
    #[error("points {0} and {1} of the sequence are not in snake position")]
    NotASnake(usize, usize),
    #[error("({}, {}) is not in prime snake position with respect to ({}, {})", .1.i, .1.k, .0.i, .0.k)]
    NotPrimePosition(LatticePoint, LatticePoint),
    #[error("snake is not prime")]
    NotPrime,
    #[error("snake must have at least two points")]
    SnakeTooShort,
    #[error("snake is prime; expected a non-prime snake")]
    NotApplicable,
    #[error("no valid assignment of neighbouring points to two chains: {0}")]
    AssignmentFailed(String),
    #[error("move at ({}, {}) is not applicable", .0.i, .0.k)]
    MoveNotApplicable(LatticePoint),
    #[error("paths belong to different path sets")]
    ShapeMismatch,
    #[error("tuple enumeration exceeded the cap of {cap} visited tuples")]
    TooLarge { cap: u64 },
    #[error("monomial is not dominant")]
    NotDominant,
    #[error("monomial is not supported on a single node")]
    NotSingleNode,
    #[error("polynomial division is not exact")]
    DivisionNotExact,
    #[error("not a genuine character: {0}")]
    NotACharacter(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("family participants disagree with the geometric construction: {0}")]
    FamilyMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("R = {r} is outside 2..={max}")]
    BadR { r: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
