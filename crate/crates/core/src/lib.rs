pub mod affine;
pub mod algebra;
pub mod arith;
pub mod combinatorics;
pub mod lp;
pub mod map_modules;
pub mod par;
pub mod modules;
pub mod roots;
pub mod suites;
