//! Exact homological computations behind the classification of tilting and
//! cotilting classes over commutative rings: Koszul, Ext and Tor vanishing,
//! grade, the `S_{I,k}` generator modules, Thomason-set containment and
//! characteristic-sequence validation, all over finitely presented rings.

pub mod battery;
pub mod coeff;
pub mod complex;
pub mod dsl;
pub mod error;
pub mod gb;
pub mod koszul;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod session;
pub mod spectrum;
pub mod towers;

pub use coeff::{Coeff, Field};
pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, Polynomial};
pub use ring::{Ideal, Ring};
pub use session::{CommandResult, RunOptions, Session, SessionError};
