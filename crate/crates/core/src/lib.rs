pub mod classical;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod factor;
pub mod field;
pub mod galois;
pub mod numfield;
pub mod perm;
pub mod poly;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/finite_fields.md")]
    mod finite_fields {}
    #[doc = include_str!("../../../book/src/galois.md")]
    mod galois {}
    #[doc = include_str!("../../../book/src/radicals.md")]
    mod radicals {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
