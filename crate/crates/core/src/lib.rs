pub mod engine;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod scan;
pub mod walk;
