//! Extending Tutte paths outward through nets, and the chain-of-blocks case.

mod chain;
mod ladder;
mod limit;
mod radial;
mod tips;

pub use chain::{chain_construct, chain_in_level, ChainRun};
pub use ladder::{ladder_construct, ladder_in_level, ladder_in_net, LadderRun, Side};
pub use limit::{limit_experiment, LimitLevel, PrefixLimitReport};
pub use radial::{radial_construct, radial_in_net, RadialRun};
pub use tips::{Group, GroupKind, TipDecomposition};

#[cfg(test)]
mod tests;
