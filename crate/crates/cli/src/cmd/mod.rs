pub mod bench;
pub mod build;
pub mod query;
pub mod verify;
