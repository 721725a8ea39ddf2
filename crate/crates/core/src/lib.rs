//! Exact word calculus for covariant derivatives of Laplace eigenfunctions
//! along parallel tensors on space forms.
//!
//! A word such as `abba` stands for a permutation of `θ^{⊗k}`; [`reduce`]
//! turns it into the polynomial in `θ`, `K` with coefficients in `ℚ(n)` by
//! which that tensor acts on an eigenfunction. [`linking`] and
//! [`conjecture`] build and solve the vanishing system for the nested word,
//! and [`oracle`] recomputes everything on the unit sphere from scratch.

pub mod algebra;
pub mod conjecture;
pub mod error;
pub mod linking;
pub mod oracle;
pub mod reduction;
pub mod word;

pub use algebra::{
    parse_expr, poly_arith, solve_linear, DiagramPoly, FieldElem, LinearSystem, Operand, PolyOp, RatFunN,
};
pub use conjecture::{
    build_system, conjectured_product, solve_coefficients, target_polynomial, verify_conjectures, ConjectureReport,
    Mode, SystemIndex,
};
pub use error::{Error, Result};
pub use linking::{link, multi_link, tau, tau_linked, LinkSpec, LinkedWord};
pub use oracle::{
    commutation_check, contract_volume, contract_word, make_eigenfunction, AmbientTensorField, HarmonicEigenfunction,
    SpherePoint,
};
pub use reduction::{leading_part, reduce, transpose_step, ReduceOptions, Reducer, Schedule, WeightedWordSum};
pub use word::{enumerate_words, parse_word, render, DiagramRender, Letter, RenderFormat, Word};
