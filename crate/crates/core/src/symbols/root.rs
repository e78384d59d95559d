//! Roots of unity of order prime to p, represented additively as reduced
//! fractions in Q/Z, and their orbits under multiplication by eps*q.
//!
//! Choosing the torsion group of Q/Z avoids fixing a generator of the
//! multiplicative group of the algebraic closure: every action is modular
//! arithmetic on the numerator and canonical forms are unique reduced
//! fractions.

use std::fmt;

use thiserror::Error;

use super::partition::gcd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("order {order} is not prime to p = {p}")]
    NotPrimeToP { order: u64, p: u64 },
    #[error("cannot parse root {0:?}, expected \"a/m\"")]
    Parse(String),
}

/// An element of the torsion of Q/Z in reduced form a/m, standing for the
/// root of unity of order m.  The identity root is 0/1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PPrimeRoot {
    den: u64,
    num: u64,
}

impl PPrimeRoot {
    pub fn new(num: u64, den: u64) -> Result<Self, RootError> {
        if den == 0 {
            return Err(RootError::ZeroDenominator);
        }
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            return Ok(Self { den: 1, num: 0 });
        }
        Ok(Self {
            den: den / g,
            num: num / g,
        })
    }

    pub fn one() -> Self {
        Self { den: 1, num: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// The multiplicative order of the represented root.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_identity(&self) -> bool {
        self.den == 1
    }

    /// Checks the order is prime to p.
    pub fn check_prime_to(&self, p: u64) -> Result<(), RootError> {
        if gcd(self.den, p) != 1 {
            return Err(RootError::NotPrimeToP {
                order: self.den,
                p,
            });
        }
        Ok(())
    }

    /// Raising to the k-th power: multiplication by k in Q/Z.
    pub fn power(&self, k: i64) -> Self {
        let den = self.den;
        let k_mod = k.rem_euclid(den as i64) as u64;
        let num = mul_mod(self.num, k_mod, den);
        Self::new(num, den).expect("den positive")
    }

    /// Raising to the base^exp power without overflow.
    pub fn power_pow(&self, base: u64, exp: u64) -> Self {
        let k = pow_mod(base % self.den.max(1), exp, self.den);
        self.power(k as i64)
    }

    /// Inverse root: negation in Q/Z.
    pub fn inverse(&self) -> Self {
        if self.num == 0 {
            *self
        } else {
            Self {
                den: self.den,
                num: self.den - self.num,
            }
        }
    }

    /// Product of roots: addition in Q/Z.
    pub fn mul(&self, other: &Self) -> Self {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let a = self.num * (den / self.den);
        let b = other.num * (den / other.den);
        Self::new((a + b) % den, den).expect("den positive")
    }

    pub fn parse(text: &str) -> Result<Self, RootError> {
        let (num, den) = text
            .split_once('/')
            .ok_or_else(|| RootError::Parse(text.to_string()))?;
        let num: u64 = num
            .trim()
            .parse()
            .map_err(|_| RootError::Parse(text.to_string()))?;
        let den: u64 = den
            .trim()
            .parse()
            .map_err(|_| RootError::Parse(text.to_string()))?;
        Self::new(num, den)
    }
}

impl fmt::Display for PPrimeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Minimal d >= 1 with order(sigma) dividing (eps*q)^d - 1; the orbit size
/// of sigma under multiplication by eps*q.
///
/// Requires gcd(order, q) = 1, which holds for every root of order prime
/// to p.
pub fn deg_eps_q(root: &PPrimeRoot, eps_q: i64) -> u64 {
    let m = root.order();
    if m == 1 {
        return 1;
    }
    let step = eps_q.rem_euclid(m as i64) as u64;
    debug_assert_eq!(gcd(step, m), 1, "eps*q must be invertible mod the order");
    let mut acc = step % m;
    let mut d = 1;
    while acc != 1 {
        acc = mul_mod(acc, step, m);
        d += 1;
        assert!(d <= m, "multiplicative order exceeded the modulus");
    }
    d
}

/// The orbit of a root under multiplication by eps*q, stored as its
/// canonical representative (minimal fraction, ordering by denominator
/// then numerator) together with the orbit size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrobOrbit {
    rep: PPrimeRoot,
    size: u64,
}

impl FrobOrbit {
    /// Canonicalizes the orbit containing `root`.
    pub fn of(root: &PPrimeRoot, eps_q: i64) -> Self {
        let size = deg_eps_q(root, eps_q);
        let mut rep = *root;
        let mut current = *root;
        for _ in 1..size {
            current = current.power(eps_q);
            if current < rep {
                rep = current;
            }
        }
        Self { rep, size }
    }

    pub fn rep(&self) -> &PPrimeRoot {
        &self.rep
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn members(&self, eps_q: i64) -> Vec<PPrimeRoot> {
        let mut out = Vec::with_capacity(self.size as usize);
        let mut current = self.rep;
        for _ in 0..self.size {
            out.push(current);
            current = current.power(eps_q);
        }
        out
    }
}

impl fmt::Display for FrobOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_canonical_form() {
        let r = PPrimeRoot::new(4, 6).unwrap();
        assert_eq!(r, PPrimeRoot::new(2, 3).unwrap());
        assert_eq!(r.to_string(), "2/3");
        assert_eq!(PPrimeRoot::new(6, 3).unwrap(), PPrimeRoot::one());
    }

    #[test]
    fn identity_has_degree_one_everywhere() {
        let one = PPrimeRoot::one();
        assert_eq!(deg_eps_q(&one, 2), 1);
        assert_eq!(deg_eps_q(&one, -7), 1);
    }

    #[test]
    fn deg_of_order_three_at_q_two() {
        // 3 | 2^2 - 1
        let r = PPrimeRoot::new(1, 3).unwrap();
        assert_eq!(deg_eps_q(&r, 2), 2);
    }

    #[test]
    fn deg_of_order_five_at_minus_two() {
        // minimal d with 5 | (-2)^d - 1 is 4
        let r = PPrimeRoot::new(1, 5).unwrap();
        assert_eq!(deg_eps_q(&r, -2), 4);
    }

    #[test]
    fn orbit_canonical_rep_is_minimal() {
        // orbit of 2/3 under multiplication by 2 is {2/3, 1/3}
        let r = PPrimeRoot::new(2, 3).unwrap();
        let orbit = FrobOrbit::of(&r, 2);
        assert_eq!(orbit.rep(), &PPrimeRoot::new(1, 3).unwrap());
        assert_eq!(orbit.size(), 2);
    }

    #[test]
    fn orbit_under_negative_step() {
        // 1/3 * (-2) = 1/3 in Q/Z, a fixed point
        let r = PPrimeRoot::new(1, 3).unwrap();
        let orbit = FrobOrbit::of(&r, -2);
        assert_eq!(orbit.size(), 1);
        assert_eq!(orbit.rep(), &r);
    }

    #[test]
    fn inverse_is_involution() {
        let r = PPrimeRoot::new(2, 7).unwrap();
        assert_eq!(r.inverse().inverse(), r);
        assert_eq!(PPrimeRoot::one().inverse(), PPrimeRoot::one());
    }

    #[test]
    fn mul_adds_fractions() {
        let a = PPrimeRoot::new(1, 2).unwrap();
        let b = PPrimeRoot::new(1, 3).unwrap();
        assert_eq!(a.mul(&b), PPrimeRoot::new(5, 6).unwrap());
        assert_eq!(a.mul(&a), PPrimeRoot::one());
    }
}
