pub mod chain;
pub mod cli;
pub mod error;
pub mod families;
pub mod group;
pub mod json;
pub mod origami;
pub mod perm;
pub mod presentation;
pub mod props;
pub mod render;

pub use chain::StabilizerChain;
pub use error::{Error, Result};
pub use group::{Caps, Group};
pub use perm::Perm;
