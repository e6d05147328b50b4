pub mod fnl;
pub mod group;
pub mod lterm;
pub mod precone;
pub mod report;
pub mod sample;
pub mod stone;
