pub mod alphabet;
pub mod expansion;
pub mod poly;
pub mod schur;
pub mod thom;
