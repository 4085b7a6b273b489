//! Orbit method for finite groups of nilpotency class two and odd order.
//!
//! Groups are central extensions `B = A × C` given by a 2-cocycle
//! ([`cocycle`], [`nilgroup`]). Each such group of odd order has a Lie ring on
//! the same underlying set ([`lazard`]); coadjoint orbits of characters of
//! that Lie ring label the irreducible characters of `B` ([`orbits`]). The
//! group-algebra decomposition behind this is checked directly in
//! [`groupalg`], and every table is cross-checked against a classical
//! class-sum computation in [`oracle`].

pub mod abelian;
pub mod cocycle;
pub mod cyclo;
pub mod groupalg;
pub mod groupspec;
pub mod lazard;
pub mod nilgroup;
pub mod oracle;
pub mod orbits;
pub mod verify;

pub use abelian::{AbElement, AbelianError, FinAbGroup};
pub use cocycle::{Cocycle, CocycleError, OneChain, SkewBihom};
pub use nilgroup::{Catalog, Class2Group, GroupElement, GroupError};
pub use lazard::{group_of, lie_ring_of, LazardError, LieElement, LieRing};
pub use orbits::{Character, Orbit, OrbitCharacterTable, OrbitError, OrbitMethod};
pub use groupalg::{GroupAlgebra, GroupAlgebraError};
pub use oracle::{burnside_table, match_tables, OracleError, OracleTable};
pub use groupspec::{GroupSpec, PsiSpec, SpecError};
pub use verify::{verify, Suite, VerifyReport};
