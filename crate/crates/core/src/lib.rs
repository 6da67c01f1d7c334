//! Exact minimal log discrepancies and log canonical thresholds of monomial
//! multiideals at the origin of the affine plane, with tools to bound the
//! mld of polynomial ideals and to sweep staircase ideals exhaustively.
//!
//! ```
//! use mldlab::{mld, parse_multiideal, MldValue};
//!
//! let m = parse_multiideal("x^2, y^3 @ 1", 0).unwrap().monomialized();
//! let r = mld(&m);
//! assert_eq!(r.value, MldValue::MinusInfinity);
//! assert_eq!((r.divisor.p1, r.divisor.p2, r.divisor.k()), (3, 2, 4));
//! ```

pub mod bounds_lab;
pub mod discrepancy;
pub mod newton_geometry;
pub mod parse;
pub mod poly_algebra;
pub mod report;
pub mod scalars;
pub mod selftest;

pub use bounds_lab::{
    acc_probe, closed_form_ell, ell_search, enumerate_staircases, value_set, AccReport, DccSet, EllConfig, EllReport,
    LabError, ValueSetReport,
};
pub use discrepancy::{
    brute_force_mld, coordinate_search, lct, lct_mld_consistency, log_discrepancy, min_k_computing_divisor,
    minus_infinity_witness, mld, monomialized_upper_bound, search_over, valuation, DiscrepancyError, LctResult,
    LctValue, MldBound, MldResult, MldValue, MultiIdeal, PolyMultiIdeal, SearchOptions, SearchOutcome, WeightVector,
};
pub use newton_geometry::{
    contains, hilbert_basis, make_ideal, polygon_of, refined_fan, support_value, Fan, Monomial, MonomialIdeal,
    NewtonPolygon, Ray,
};
pub use parse::{parse_ideal, parse_multiideal, parse_polynomial, parse_scalar, ParseError, ParseErrorKind};
pub use poly_algebra::{
    elementary_automorphisms, monomialize, AutomorphismStep, BivariatePolynomial, CoefficientField,
    PlaneAutomorphism, PolynomialIdeal,
};
pub use scalars::{compare, pi_interval, ExactScalar, Rational};
