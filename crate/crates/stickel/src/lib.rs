pub mod cli;
pub mod fields;
pub mod group_algebra;
pub mod lfunctions;
pub mod padic_cyclo;
pub mod stickelberger;
