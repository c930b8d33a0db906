pub mod chowcore;
pub mod exactpoly;
pub mod verifykit;
pub mod zideal;
pub mod zlattice;
