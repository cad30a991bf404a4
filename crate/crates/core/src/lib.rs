pub mod error;
pub mod hyper;
pub mod orthopoly;
pub mod quad;
pub mod scalar;
pub mod sfcore;
pub mod oracle;

#[cfg(test)]
mod invariants;
