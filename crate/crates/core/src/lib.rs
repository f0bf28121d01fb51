pub mod algebra;
pub mod colength;
pub mod expr;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod resolution;
pub mod series;
pub mod sums;

pub use algebra::{AlgebraError, AlgebraMorphism, FdAlgebra, FdModule, ModuleMorphism};
pub use colength::{
    gcl_bounds, gcl_bounds_fiber_product, hv_epi_search, teter_test, ColengthError, ColengthReport, Cover, HvResult,
    TeterWitness,
};
pub use expr::{Expr, ExprError, ParseError};
pub use field::{Field, FieldError, PrimeField, Rationals};
pub use groebner::{ideal_equal, GroebnerBasis, GroebnerError};
pub use linalg::{Matrix, Subspace};
pub use poly::{Monomial, Poly, PolyError, PolyRing};
pub use resolution::{
    deviations, golod_test, minimal_free_resolution, poincare_series, BettiTable, CiVerdict, Deviations, GolodReport,
    GolodVerdict, ResolutionError, DEFAULT_BUDGET,
};
pub use series::{
    evaluate_formula, termwise_leq, FormulaId, FormulaInput, FormulaInputs, RationalSeries, SeriesError,
    TruncatedSeries,
};
pub use sums::{
    amalgamated_duplication, connected_sum, fiber_product, fiber_product_map, gorenstein_connected_sum, split_socle,
    ConnectedSumDiagram, FiberProduct, SumResult, SumsError,
};
