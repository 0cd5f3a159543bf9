//! Arithmetic in GF(2^k) and the affine planes built on it.

use super::GenError;

/// Reduction polynomial for GF(2^k), top bit included.
fn modulus(k: u32) -> u32 {
    match k {
        1 => 0b11,
        2 => 0b111,
        4 => 0b1_0011,
        8 => 0b1_0001_1011,
        _ => panic!("GF(2^{k}) is not supported"),
    }
}

pub fn gf_add(_k: u32, a: u32, b: u32) -> u32 {
    a ^ b
}

/// Carry-less product reduced modulo the field polynomial.
pub fn gf_mul(k: u32, a: u32, b: u32) -> u32 {
    let poly = modulus(k);
    debug_assert!(a < 1 << k && b < 1 << k);
    let mut product = 0u32;
    for bit in 0..k {
        if b >> bit & 1 == 1 {
            product ^= a << bit;
        }
    }
    for bit in (k..2 * k).rev() {
        if product >> bit & 1 == 1 {
            product ^= poly << (bit - k);
        }
    }
    product
}

/// Points are `x * q + y` for `x, y` in GF(q); lines are `y = a x + b`
/// (ordered by `a`, then `b`) followed by the verticals `x = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePlane {
    pub q: usize,
    pub lines: Vec<Vec<u32>>,
}

impl AffinePlane {
    pub fn point_count(&self) -> usize {
        self.q * self.q
    }
}

pub fn affine_plane(q: usize) -> Result<AffinePlane, GenError> {
    let k = match q {
        2 => 1,
        4 => 2,
        16 => 4,
        256 => 8,
        _ => return Err(GenError::UnsupportedOrder(q)),
    };
    let qq = q as u32;
    let mut lines = Vec::with_capacity(q * (q + 1));
    for a in 0..qq {
        for b in 0..qq {
            lines.push(
                (0..qq)
                    .map(|x| x * qq + gf_add(k, gf_mul(k, a, x), b))
                    .collect(),
            );
        }
    }
    for c in 0..qq {
        lines.push((0..qq).map(|y| c * qq + y).collect());
    }
    Ok(AffinePlane { q, lines })
}
