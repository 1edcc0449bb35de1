pub mod discretization;
pub mod geometry;
pub mod pipeline;
pub mod planner;
pub mod quality;
pub mod tsp;
