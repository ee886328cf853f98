pub mod combinatorics;
pub mod exactnum;
pub mod polyid;
pub mod codegen;
pub mod klverify;
pub mod oracle;
pub mod cli;
