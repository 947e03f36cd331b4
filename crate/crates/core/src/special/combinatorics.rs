//! Exact integer combinatorics: signed Stirling numbers of the first kind and
//! binomial coefficients.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Signed Stirling numbers of the first kind `s(m, l)` for `0 <= l <= m <= max_order`.
///
/// Sign convention: the rising factorial expands as
/// `(a)_m = a (a+1) ... (a+m-1) = sum_l (-1)^{m+l} s(m, l) a^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    max_order: usize,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_order: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_order + 1);
        rows.push(vec![BigInt::one()]);
        for m in 0..max_order {
            let prev = &rows[m];
            let mut next = vec![BigInt::zero(); m + 2];
            // s(m+1, l) = s(m, l-1) - m s(m, l)
            for l in 0..=m + 1 {
                let mut v = BigInt::zero();
                if l >= 1 {
                    v += &prev[l - 1];
                }
                if l <= m {
                    v -= &prev[l] * BigInt::from(m);
                }
                next[l] = v;
            }
            rows.push(next);
        }
        StirlingTable { max_order, rows }
    }

    /// Process-wide table of order 64, built once.
    pub fn shared() -> &'static StirlingTable {
        static TABLE: OnceLock<StirlingTable> = OnceLock::new();
        TABLE.get_or_init(|| StirlingTable::new(64))
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn get(&self, m: usize, l: usize) -> Result<&BigInt> {
        if m > self.max_order || l > m {
            return Err(Error::IndexRange(format!(
                "s({m}, {l}) outside 0 <= l <= m <= {}",
                self.max_order
            )));
        }
        Ok(&self.rows[m][l])
    }

    /// Coefficients of `a^0, ..., a^m` in the rising factorial `(a)_m`.
    pub fn pochhammer_coefficients(&self, m: usize) -> Result<Vec<BigInt>> {
        (0..=m)
            .map(|l| {
                let s = self.get(m, l)?;
                Ok(if (m + l) % 2 == 0 { s.clone() } else { -s })
            })
            .collect()
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
