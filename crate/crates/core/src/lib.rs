pub mod error;
pub mod exactalg;
pub mod ellcurve;
pub mod heights;
pub mod covers;
pub mod families;
