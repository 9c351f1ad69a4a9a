//! Gröbner bases for ideals of Boolean polynomials.
//!
//! Polynomials live in `F2[x1..xn]/<x1^2 + x1, ..., xn^2 + xn>` with `n <= 64`.
//! Monomials are single machine words (see [`ring`]), and [`buchberger`]
//! computes the reduced lexicographic Gröbner basis without ever storing the
//! quadratic field polynomials.
//!
//! ```
//! use boolgb::{buchberger_gb, parse_poly, render_poly, Ring};
//!
//! let ring = Ring::with_names(["x", "y", "z"]).unwrap();
//! let f = parse_poly("x*y + z", &ring).unwrap();
//! let gb = buchberger_gb(&[f], &ring);
//! let lines: Vec<String> = gb.elements().iter().map(|g| render_poly(g, &ring)).collect();
//! assert_eq!(lines, ["x*y + z", "x*z + z", "y*z + z"]);
//! ```

pub mod buchberger;
pub mod cli;
pub mod encoders;
pub mod oracle;
pub mod ring;
pub mod text;

pub use buchberger::{
    buchberger_gb, buchberger_gb_with, field_s_polynomial, interreduce, is_groebner_basis,
    normal_form, s_polynomial, GbOptions, GbStats, GroebnerBasis,
};
pub use encoders::{
    encode_shidoku, fixed_point_ideal, parse_clues, parse_model, random_ideal, BooleanModel,
    RandomIdealParams, ShidokuGrid, ShidokuPuzzle,
};
pub use oracle::{
    dense_field_s_polynomial, enumerate_variety, solve_shidoku_backtracking, varieties_equal,
    VarietyReport,
};
pub use ring::{Monomial, Point, Polynomial, Ring};
pub use text::{parse_poly, parse_poly_file, render_poly, ParseError};
