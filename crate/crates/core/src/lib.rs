//! Polyadic `(m,n)`-rings of polyadic integers and two encryption schemes
//! built on them.
//!
//! The algebraic core ([`polyadic`], [`arity`], [`amplitude`], [`signal`]) is
//! generic over the integer scalar through [`Int`]. The cryptographic layer
//! ([`crypto`], [`wire`]) works over [`BigInt`] because amplitudes outgrow
//! machine words for modest keys. The aliases below name the usual
//! instantiations.

pub mod amplitude;
pub mod arity;
pub mod cli;
pub mod crypto;
pub mod error;
pub mod polyadic;
pub mod scalar;
pub mod signal;
pub mod wire;

pub use num_bigint::BigInt;
use num_rational::Ratio;

pub use amplitude::AmplitudeConvention;
pub use arity::{ArityInvariants, ArityPair, ParametricFamily};
pub use crypto::{Decryption, EntryReport, EntryStatus, Mode, RecoveredRing};
pub use error::{Error, Result};
pub use polyadic::{AdmissibleCount, RingSpec, Representative};
pub use scalar::Int;
pub use signal::{SampledSignal, WaveKind, WaveformSpecies};

/// Arbitrary-precision ring.
pub type Ring = RingSpec<BigInt>;
pub type Rep = Representative<BigInt>;
pub type RepPoly = amplitude::RepPolynomial<BigInt>;
pub type Invariants = ArityInvariants<BigInt>;
pub type Family = ParametricFamily<BigInt>;
pub type Species = WaveformSpecies<BigInt>;
pub type Signal = SampledSignal<BigInt>;
pub type Rational = Ratio<BigInt>;

/// Machine-word ring for small parameters and fast enumeration.
pub type Ring64 = RingSpec<i64>;
pub type Rep64 = Representative<i64>;
pub type RepPoly64 = amplitude::RepPolynomial<i64>;
