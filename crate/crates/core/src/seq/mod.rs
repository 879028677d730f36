//! Counting sequences and their brute-force oracles.

pub mod oracle;
pub mod store;
pub mod tables;

pub use oracle::{
    oracle_b, oracle_bhat, oracle_bifix_free, oracle_case_classify, oracle_case_flags, oracle_cd,
    BifixCase,
};
pub use store::{SeqStore, TableKey};
pub use tables::{a_seq, b_seq, bhat_seq, bhat_stage_one, cd_seq, SeqKind, SeqTable};
