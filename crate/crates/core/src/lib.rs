pub mod agtp;
pub mod ast;
pub mod closed_forms;
pub mod identities;
pub mod lgv_paths;
pub mod polyring;
pub mod rsk;
pub mod schur_gt;
pub mod suite;
