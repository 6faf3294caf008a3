use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Invariant factors `d_1 | d_2 | ... | d_k` of a finite abelian group, each `> 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    divisors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    /// Canonical form of the direct product of cyclic groups of the given orders.
    /// Factors equal to 0 are not allowed; factors equal to 1 are dropped.
    pub fn from_cyclic_factors<I: IntoIterator<Item = u64>>(factors: I) -> Self {
        let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for f in factors {
            assert!(f > 0, "cyclic factor must be positive");
            for (p, e) in factorize(f) {
                primary.entry(p).or_default().push(p.pow(e));
            }
        }
        Self::from_primary(primary)
    }

    fn from_primary(mut primary: BTreeMap<u64, Vec<u64>>) -> Self {
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![1u64; len];
        for powers in primary.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in powers.iter().enumerate() {
                divisors[len - 1 - k] *= q;
            }
        }
        AbelianInvariants { divisors }
    }

    /// Accepts a list already in divisor-chain form; returns `None` otherwise.
    pub fn from_divisors(divisors: Vec<u64>) -> Option<Self> {
        let ok = divisors.iter().all(|&d| d > 1) && divisors.windows(2).all(|w| w[1] % w[0] == 0);
        ok.then_some(AbelianInvariants { divisors })
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.divisors.last().copied().unwrap_or(1)
    }

    /// Invariants of the direct product.
    pub fn product(&self, other: &AbelianInvariants) -> AbelianInvariants {
        Self::from_cyclic_factors(self.divisors.iter().chain(&other.divisors).copied())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.divisors.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}
