pub mod budget;
pub mod criteria;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod ideal;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod poincare;
pub mod poly;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/koszul.md")]
    mod koszul {}
    #[doc = include_str!("../../../book/src/criteria.md")]
    mod criteria {}
    #[doc = include_str!("../../../book/src/poincare.md")]
    mod poincare {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
