//! Exact Kazhdan–Lusztig polynomials, Bruhat graphs, reflection orders and
//! diamond-generating sets for crystallographic Coxeter groups.

pub mod bruhat;
pub mod corpus;
pub mod coxeter;
pub mod diamond;
pub mod export;
pub mod order;
pub mod poly;
pub mod polynomials;
pub mod poset;
pub mod suites;

pub use bruhat::{BruhatError, BruhatGraph, Edge, Interval};
pub use corpus::SystemCtx;
pub use coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, Element, Gen, Root, Side};
pub use diamond::{DiamondError, DiamondGraph, EdgeSet, Mode};
pub use order::{OrderError, Path, PathFinder, ReflectionOrder};
pub use poly::IntPoly;
pub use polynomials::{KlEngine, PolyCache, PolyError, PolyKind};
