//! Boundary holography for traversing flows on surfaces: recovering the
//! bulk from tangency data on the boundary.

pub mod atlas;
pub mod causality;
pub mod omega;
pub mod polymodel;
pub mod reconstruct;
pub mod strata;
pub mod surgery;
pub mod util;
