//! Exact computation of the decomposition of `V(Λ₀) ⊗ V(Λ₀)` for affine `sl(n)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`young`]: partitions in multiplicity form, colored diagrams, and the
//!   congruence characterisation of maximal elements with a pruned enumerator.
//! - [`crystal`]: signatures and Kashiwara operators on n-regular diagrams,
//!   used as a brute-force oracle for maximality.
//! - [`weightlat`]: affine weight lattice arithmetic and the `(i, k)` labels
//!   of the irreducible summands.
//! - [`qseries`]: truncated Laurent series over big integers, theta series,
//!   triple products and small determinants.
//! - [`multiplicity`]: the outer multiplicity generating functions, computed
//!   by enumeration and by a theta-function Cramer solve.
//! - [`identities`]: checkers for the resulting q-series and partition identities.

pub mod crystal;
pub mod error;
pub mod identities;
pub mod multiplicity;
pub mod qseries;
pub mod weightlat;
pub mod young;

pub use crystal::{RegularDiagram, Sign, Signature, SignatureEntry};
pub use error::{Error, Result};
pub use identities::{Discrepancy, IdentityReport};
pub use multiplicity::{Branch, MultiplicityTable, TableEntry, ThetaMatrix};
pub use qseries::QSeries;
pub use weightlat::{ComponentLabel, WeightVector};
pub use young::{ColoredDiagram, Partition};

/// Largest `i` indexing a summand `V(Λ_i + Λ_{n-i} - kδ)`, i.e. `⌊n/2⌋`.
pub fn max_class(n: u32) -> u32 {
    n / 2
}

pub(crate) fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(())
}
