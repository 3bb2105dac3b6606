//! Point counts on the curves ay² + bx² + cxy = d + ex²y² + fx³y over odd
//! finite fields, by brute force and by character-sum and p-adic
//! hypergeometric formulas, with checks of the supporting identities.

pub mod chars;
pub mod curves;
pub mod error;
pub mod field;
pub mod padic;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldCtx, FqElem};
