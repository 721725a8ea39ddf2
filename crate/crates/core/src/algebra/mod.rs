//! Exact arithmetic: `ℚ[n]`, `ℚ(n)`, `ℚ[n, θ, K]`, its fraction field, and
//! the `θ, K` polynomials with `ℚ(n)` coefficients that words reduce to.

pub mod diagram_poly;
pub mod field;
pub mod linsolve;
pub mod mpoly;
pub mod parse;
pub mod ratfun;
pub mod upoly;

pub use diagram_poly::{spectral_product, theta_plus_k, DiagramPoly, JsonTerm};
pub use field::FieldElem;
pub use linsolve::{solve_affine, solve_linear, solve_linear_naive, AffineSolution, LinearSystem};
pub use mpoly::MPoly;
pub use parse::parse_expr;
pub use ratfun::RatFunN;
pub use upoly::{q, q_frac, UPoly, Q};

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Right operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a DiagramPoly),
    Scalar(&'a RatFunN),
}

/// Exact `add`, `sub`, `mul` on diagram polynomials; a scalar operand means `scalar_mul`.
pub fn poly_arith(op: PolyOp, lhs: &DiagramPoly, rhs: Operand<'_>) -> DiagramPoly {
    match rhs {
        Operand::Scalar(c) => lhs.scalar_mul(c),
        Operand::Poly(p) => match op {
            PolyOp::Add => lhs + p,
            PolyOp::Sub => lhs - p,
            PolyOp::Mul => lhs * p,
        },
    }
}
