//! The source calculus: dependent functions, dependent pairs, booleans and
//! local definitions over the universes `*` and `□`.

mod equiv;
mod reduce;
mod typing;

pub use equiv::equiv;
pub use reduce::{head_step, normalize, step, whnf};
pub use typing::{check, check_env, check_type, infer, infer_with};

pub(crate) use typing::sigma_universe;
