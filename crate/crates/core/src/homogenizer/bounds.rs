//! Grid-size bounds for each stage, in exact integer arithmetic.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("n must be even, got {0}")]
    OddRows(u128),
    #[error("parameter {name} must be at least {min}")]
    TooSmall { name: &'static str, min: u128 },
}

fn mul(a: u128, b: u128) -> Result<u128, BoundError> {
    a.checked_mul(b).ok_or(BoundError::Overflow)
}

fn add(a: u128, b: u128) -> Result<u128, BoundError> {
    a.checked_add(b).ok_or(BoundError::Overflow)
}

/// Multiplicity needed before tile confinement: `r(r-1) + (q+1)r`.
pub fn r_hat(q: u128, r: u128) -> Result<u128, BoundError> {
    add(mul(r, r.saturating_sub(1))?, mul(add(q, 1)?, r)?)
}

/// Strip breadth reserved for up to `q` trims: `2(q+1)p + b`.
pub fn padded_breadth(q: u128, p: u128, b: u128) -> Result<u128, BoundError> {
    add(mul(mul(2, add(q, 1)?)?, p)?, b)
}

/// Extent needed by strip sorting and trimming: `(q(r-1) + x)(2(q+1)p + b)`.
pub fn bound_lemma31(q: u128, r: u128, p: u128, b: u128, x: u128) -> Result<u128, BoundError> {
    if x < 1 {
        return Err(BoundError::TooSmall { name: "x", min: 1 });
    }
    mul(add(mul(q, r.saturating_sub(1))?, x)?, padded_breadth(q, p, b)?)
}

/// Extent needed by cropping and rebalancing: `(q(r+1) + 2q + 1)(2(q+1)p + b)`.
pub fn bound_lemma32(q: u128, r: u128, p: u128, b: u128) -> Result<u128, BoundError> {
    let first = add(add(mul(q, add(r, 1)?)?, mul(2, q)?)?, 1)?;
    mul(first, padded_breadth(q, p, b)?)
}

/// Extent needed by tile confinement: the rebalancing bound at multiplicity
/// `r_hat(q, r)`.
pub fn bound_lemma33(q: u128, p: u128, b: u128, r: u128) -> Result<u128, BoundError> {
    bound_lemma32(q, r_hat(q, r)?, p, b)
}

/// Padding used by the rainbow-row construction: `max(n/2 + m, 2m)`.
pub fn rainbow_padding(n: u128, m: u128) -> u128 {
    (n / 2 + m).max(2 * m)
}

/// Tile multiplicity used by the rainbow-row construction: `q(m-2) + 1`.
pub fn rainbow_multiplicity(q: u128, m: u128) -> u128 {
    q * m.saturating_sub(2) + 1
}

/// Extent needed for an `n x m` mesh with a rainbow middle row.
pub fn bound_rainbow(n: u128, m: u128, q: u128) -> Result<u128, BoundError> {
    if n % 2 == 1 {
        return Err(BoundError::OddRows(n));
    }
    if n < 2 || m < 2 {
        return Err(BoundError::TooSmall { name: "n, m", min: 2 });
    }
    bound_lemma33(q, rainbow_padding(n, m), 2, rainbow_multiplicity(q, m))
}

/// Extent needed for a uniform `l`-mesh.
pub fn bound_uniform(l: u128, q: u128) -> Result<u128, BoundError> {
    if l < 2 {
        return Err(BoundError::TooSmall { name: "l", min: 2 });
    }
    bound_rainbow(2 * l, mul(l, l)? - l, q)
}

/// Extent needed for a homogeneous `k`-wall; the composed definition is
/// canonical.
pub fn bound_main(q: u128, k: u128) -> Result<u128, BoundError> {
    if k < 1 {
        return Err(BoundError::TooSmall { name: "k", min: 1 });
    }
    bound_uniform(mul(6, k)?, q)
}

/// The closed-form expansion of the wall bound as a polynomial in `q` and `k`.
/// It differs from [`bound_main`] by `q(24k(q+1)(6k-1) + 2)`.
pub fn printed_polynomial(q: i128, k: i128) -> i128 {
    let p = |e: u32, x: i128| x.pow(e);
    186624 * p(6, k) * p(4, q) + 186624 * p(6, k) * p(3, q) - 93312 * p(5, k) * p(4, q) - 93312 * p(5, k) * p(3, q)
        + 12960 * p(4, k) * p(3, q)
        + 10368 * p(4, k) * p(2, q)
        + 4320 * p(3, k) * p(4, q)
        - 3456 * p(3, k) * p(2, q)
        - 144 * p(2, k) * p(4, q)
        - 432 * p(2, k) * p(3, q)
        + 432 * p(2, k) * p(2, q)
        + 576 * p(2, k) * q
        + 144 * p(2, k)
        - 48 * k * p(4, q)
        + 60 * k * p(3, q)
        - 24 * k * p(2, q)
        - 96 * k * q
        - 24 * k
        + 4 * p(3, q)
        - 6 * p(2, q)
        + 6 * q
        + 2
}

/// `q(24k(q+1)(6k-1) + 2)`, the gap between the composed and expanded forms.
pub fn polynomial_gap(q: i128, k: i128) -> i128 {
    q * (24 * k * (q + 1) * (6 * k - 1) + 2)
}
