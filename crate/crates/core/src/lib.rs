pub mod cli;
pub mod encoding;
pub mod exactnum;
pub mod indexing;
pub mod qsim;
pub mod tensor;
