//! Dimension bounds for moduli spaces of pointed Gorenstein curves whose
//! Weierstrass semigroup is a given symmetric numerical semigroup.

pub mod canonical_ideal;
pub mod deformation;
pub mod exact_poly;
pub mod family;
pub mod krull;
pub mod pipeline;
pub mod semigroup;
pub mod syzygies;

pub use semigroup::Semigroup;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/canonical-ideal.md")]
    mod canonical_ideal {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
