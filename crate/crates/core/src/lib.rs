//! Beta-shifts, edge subshifts of finite type, their zeta functions, and
//! cellular automata on them.
//!
//! - [`algebraic`]: exact real algebraic numbers and arithmetic in `Q(beta)`.
//! - [`beta`]: greedy expansions, `d(beta)`, `d*(beta)` and the language of `S_beta`.
//! - [`sft`]: edge shifts from integer matrices, periodic counts, zeta denominators.
//! - [`factorization`]: scaling tests `S_{n gamma}` vs `S_n x S_gamma` and
//!   obstructions to splitting an edge shift as a product.
//! - [`conjugacy`]: the explicit sliding block conjugacy `S_n x X_C -> X_B`.
//! - [`shift`], [`code`], [`config`], [`ca`]: ambient shifts, sliding block
//!   codes, eventually periodic configurations, and CA experiments.

pub mod algebraic;
pub mod beta;
pub mod ca;
pub mod code;
pub mod config;
pub mod conjugacy;
pub mod factorization;
pub mod poly;
pub mod sft;
pub mod shift;
pub mod word;
