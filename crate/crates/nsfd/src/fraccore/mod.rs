//! Foundational fractional-calculus quantities: validated orders, L1 weight
//! sequences, the denominator-function registry, gamma and Mittag-Leffler
//! evaluation.

pub mod df;
pub mod gamma;
pub mod mittag;
pub mod order;
pub mod weights;

pub use df::{
    df_registry, effective_temporal_df, DenominatorSpec, EffectiveMode, SpatialDf, TemporalBase,
    TemporalEffective,
};
pub use gamma::gamma;
pub use mittag::{mittag_leffler, MittagLefflerParams};
pub use order::FractionalOrder;
pub use weights::{l1_weights, WeightTable};
