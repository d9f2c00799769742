pub mod region;
pub mod simulate;
pub mod sweep;
pub mod verify;
