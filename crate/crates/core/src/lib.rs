pub mod cli;
pub mod cyclo;
pub mod format;
pub mod mcg;
pub mod mtc;
pub mod par;
pub mod statespaces;
