//! Deterministic construction of rational points on the hyperelliptic curves
//! y^2 = x^n + ax + b and y^2 = x^n + ax^2 + bx over finite fields.
//!
//! The construction rests on explicit rational curves on the hypersurfaces
//! u^2 = g(x_1) g(x_2) and u^2 = g(x_1) g(x_2) g(x_3). Since the product of
//! three quadratic characters is a square, at least one g(x_i) is a square
//! and one Tonelli–Shanks call yields a point.
//!
//! * [`ff`]: finite field arithmetic, quadratic character, square roots.
//! * [`symb`]: exact rational-function algebra used to certify the identities.
//! * [`curves`]: the curve families, parametrizations and the point encoder.
//! * [`survey`]: exhaustive experiments over small fields.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod curves;
pub mod ff;
pub mod par;
pub mod ring;
pub mod survey;
pub mod symb;
