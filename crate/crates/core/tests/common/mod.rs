#![allow(dead_code)]

pub mod cli;
pub mod fixtures;
pub mod fuzz;
pub mod oracle;
