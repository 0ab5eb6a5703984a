//! Global numeric parameters shared by every layer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated parameter set. `m = q - 1` is the order of the cyclic torus factor,
/// `n | m` the order of the twisting root `ξ`, `k` the exponent in the
/// quadratic constant term, `d` the rank and `big_n` the KMS level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub q: u64,
    pub n: u64,
    #[serde(default)]
    pub k: u64,
    #[serde(default = "default_one")]
    pub d: usize,
    #[serde(rename = "N", default = "default_one")]
    pub big_n: usize,
    #[serde(default = "default_one_u64")]
    pub xi_exp: u64,
}

fn default_one() -> usize {
    1
}

fn default_one_u64() -> u64 {
    1
}

/// Returns `Some(p)` when `q = p^e` for a prime `p`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some(q);
    }
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Params {
    pub fn new(q: u64, n: u64, k: u64, d: usize, big_n: usize) -> Result<Self> {
        let p = Params { q, n, k, d, big_n, xi_exp: 1 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_xi_exp(mut self, xi_exp: u64) -> Result<Self> {
        self.xi_exp = xi_exp;
        self.validate()?;
        Ok(self)
    }

    pub fn with_d(&self, d: usize) -> Result<Self> {
        let mut p = self.clone();
        p.d = d;
        p.validate()?;
        Ok(p)
    }

    pub fn with_big_n(&self, big_n: usize) -> Result<Self> {
        let mut p = self.clone();
        p.big_n = big_n;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidParams(s));
        if prime_power_base(self.q).is_none() {
            return bad(format!("q = {} is not a prime power >= 2", self.q));
        }
        let m = self.m();
        if self.n == 0 || m % self.n != 0 {
            return bad(format!("n = {} does not divide m = {}", self.n, m));
        }
        if m % (2 * self.n) != 0 {
            return bad(format!("2n = {} does not divide m = {}", 2 * self.n, m));
        }
        if self.k >= m {
            return bad(format!("k = {} not in [0, {})", self.k, m));
        }
        if self.n > 1 && self.k != 0 && 2 * self.k != m {
            return bad(format!("k = {} must be 0 or m/2 when n > 1", self.k));
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.big_n == 0 {
            return bad("N must be at least 1".into());
        }
        if gcd(self.xi_exp % self.n.max(1), self.n) != 1 && self.n > 1 {
            return bad(format!("xi_exp = {} is not a unit mod n = {}", self.xi_exp, self.n));
        }
        Ok(())
    }

    pub fn m(&self) -> u64 {
        self.q - 1
    }

    /// `n / gcd(n, 2)`: the step of the coarse Laurent lattice.
    pub fn n_bar(&self) -> u64 {
        self.n / gcd(self.n, 2)
    }

    /// Exponent `c` with `ξ^2 = ζ_m^c`.
    pub fn psi_exp(&self) -> u64 {
        let m = self.m();
        (2 * (m / self.n) * self.xi_exp) % m
    }

    /// Exponent `e` with `ξ = ζ_m^e`.
    pub fn xi_root_exp(&self) -> u64 {
        let m = self.m();
        ((m / self.n) * self.xi_exp) % m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        let pp: Vec<u64> = (0..30).filter(|&q| prime_power_base(q).is_some()).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]);
    }

    #[test]
    fn validation() {
        assert!(Params::new(5, 2, 0, 2, 1).is_ok());
        assert!(Params::new(5, 2, 2, 2, 1).is_ok());
        assert!(Params::new(5, 2, 1, 2, 1).is_err());
        assert!(Params::new(5, 1, 3, 2, 1).is_ok());
        assert!(Params::new(5, 4, 0, 2, 1).is_err());
        assert!(Params::new(7, 3, 0, 2, 1).is_ok());
        assert!(Params::new(6, 1, 0, 2, 1).is_err());
        assert!(Params::new(13, 2, 0, 2, 1).is_ok());
        assert_eq!(Params::new(7, 3, 0, 2, 1).unwrap().n_bar(), 3);
        assert_eq!(Params::new(5, 2, 0, 2, 1).unwrap().n_bar(), 1);
    }
}
