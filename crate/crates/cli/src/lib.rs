//! File formats, growth sweeps and exponent fits for the `parhull` command.

pub mod fit;
pub mod io;
pub mod sweep;
