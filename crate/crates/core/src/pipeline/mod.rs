//! File formats, rendering, figure sheets, the verification suite and the
//! command-line front end.

pub mod cli;
pub mod figures;
pub mod io;
pub mod render;
pub mod verify;
