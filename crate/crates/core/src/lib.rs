pub mod arith;
pub mod blocks;
pub mod catalog;
pub mod chartab;
pub mod cyclo;
pub mod group;
pub mod verify;
