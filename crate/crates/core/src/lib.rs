pub mod algebra;
pub mod check;
pub mod family;
pub mod frobenius;
pub mod geometry;
pub mod natural;
pub mod parser;
