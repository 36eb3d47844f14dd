//! Fixed points of self-maps on finite quasi-ordered metric spaces.

pub mod compfn;
pub mod contract;
pub mod error;
pub mod exec;
pub mod instances;
pub mod maia;
pub mod oracle;
pub mod picard;
pub mod schema;
pub mod spaces;

pub use error::{Error, Result};
pub use exec::Exec;
pub use spaces::{Distance, FiniteSpace};
