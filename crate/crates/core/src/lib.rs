//! Greedy and bit-optimal LZ77 parsing under universal integer codes, the
//! adversarial string families that separate them, and measurement tools.

pub mod analysis;
pub mod bitcodec;
pub mod generators;
pub mod optimal;
pub mod parser;
