pub mod angle;
pub mod svg;
pub mod table;
