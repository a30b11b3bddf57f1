//! Finite groups with operations and the three equivalent categories built
//! over them: crossed modules, internal groupoids and cat¹-groups.
//!
//! Every structure is a finite set of explicit tables over element indices
//! `0..n`. Constructors check shapes; the `validate` methods decide the axioms
//! by exhaustive sweeps and return a [`ValidationReport`] with witnesses.

pub mod actions;
pub mod audit;
pub mod cat1;
pub mod corpus;
pub mod equivalences;
pub mod error;
pub mod format;
pub mod gpd;
pub mod gwo;
pub mod iso;
pub mod morphism;
pub mod report;
pub mod signature;
pub mod subset;
pub mod table;
pub mod xmod;

pub use actions::{ActionSet, SplitExtension};
pub use cat1::{Cat1Group, Cat1Morphism};
pub use error::{Error, Result};
pub use gpd::{GpdMorphism, InternalGroupoid, SubGroupoid};
pub use gwo::{GroupWithOps, TableCell};
pub use iso::{find_isomorphism, IsoWitness, StructureMap};
pub use morphism::Morphism;
pub use report::{ValidationReport, Violation};
pub use signature::OpSignature;
pub use subset::{Quotient, Subset};
pub use table::Table;
pub use xmod::{CrossedModule, XModMorphism};
