//! Planning, simulation and certification of slanted sweep-line reductions
//! of convex planar regions.
//!
//! Start with [`geom`] for regions, [`sweep`] for the sweep model and
//! planners, [`enclosure`] for the two-sweep optima and [`analysis`] for
//! bounds and the counterexample evaluations.

pub mod analysis;
pub mod corpus;
pub mod enclosure;
pub mod geom;
pub mod optimize;
pub mod sweep;

// Book chapters, compiled as doctests so their snippets stay runnable.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/regions.md")]
    pub mod regions {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub mod sweeps {}
    #[doc = include_str!("../../../book/src/enclosures.md")]
    pub mod enclosures {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/counterexamples.md")]
    pub mod counterexamples {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
