pub mod budget;
pub mod chainring;
pub mod error;
pub mod gf;
pub mod hlcd;
pub mod linalg;
pub mod numtheory;
pub mod poly;
pub mod scrim;

pub use budget::Budget;
pub use error::{Error, Result};
