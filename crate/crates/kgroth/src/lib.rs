pub mod alphabets;
pub mod cli;
pub mod expansions;
pub mod fockspace;
pub mod grothendieck;
pub mod partitions;
pub mod polynomial;
pub mod verify;

pub use partitions::{MayaWindow, Partition, SkewShape};
pub use polynomial::{Coeff, Grading, Poly, TruncSeries, Variable};
