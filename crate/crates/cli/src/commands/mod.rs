pub mod codes;
pub mod eval;
pub mod optimize;
pub mod oracle;
pub mod simplex;
pub mod sweep;
