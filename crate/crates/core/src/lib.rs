//! Fortran 2003 binding generator for C and C++ interface files.

pub mod consteval;
pub mod diag;
pub mod driver;
pub mod emit_c;
pub mod emit_fortran;
pub mod fortran_fmt;
pub mod parser;
pub mod proxy;
pub mod semantic;
pub mod typemaps;
