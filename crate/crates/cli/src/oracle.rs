//! Brute-force oracles: conjugacy-class counts of small general linear
//! and unitary groups by full enumeration, and an exhaustive search over
//! ordering pairs independent of the greedy certifier.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("group order {order} exceeds the oracle guard {guard}")]
    GroupTooLarge { order: u128, guard: u128 },
    #[error("matrix space {space} exceeds the oracle guard {guard}")]
    SpaceTooLarge { space: u128, guard: u128 },
}

const GROUP_GUARD: u128 = 100_000;
const SPACE_GUARD: u128 = 20_000_000;

/// A small finite field with dense operation tables.  Elements are
/// indices 0..q encoding polynomials over F_p by base-p digits.
pub struct Gf {
    pub q: usize,
    pub p: u64,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    frob_p: Vec<u16>,
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    if q >= 2 {
        Some((q, 1))
    } else {
        None
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus
    for i in (k..prod.len()).rev() {
        let coeff = prod[i];
        if coeff == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate().take(k) {
            let idx = i - k + j;
            prod[idx] = (prod[idx] + coeff * (p - m % p)) % p;
        }
    }
    prod.truncate(k.max(1));
    prod.resize(k.max(1), 0);
    prod
}

fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    // monic polynomial of degree k with no roots and no factor found by
    // trial products; degrees here stay tiny
    let k = k as usize;
    let total = p.pow(k as u32);
    'candidates: for code in 0..total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut rest = code;
        for _ in 0..k {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        // root test handles k <= 3; for larger k also exclude quadratic factors
        for x in 0..p {
            let mut acc = 0u64;
            for &c in coeffs.iter().rev() {
                acc = (acc * x + c) % p;
            }
            if acc == 0 {
                continue 'candidates;
            }
        }
        if k >= 4 {
            // check divisibility by each monic irreducible quadratic
            for b in 0..p {
                for c in 0..p {
                    let quad = [c, b, 1];
                    if has_root(&quad, p) {
                        continue;
                    }
                    if poly_divides(&quad, &coeffs, p) {
                        continue 'candidates;
                    }
                }
            }
        }
        return coeffs;
    }
    unreachable!("irreducible polynomials exist over every finite field");
}

fn has_root(poly: &[u64], p: u64) -> bool {
    (0..p).any(|x| {
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc == 0
    })
}

fn poly_divides(divisor: &[u64], poly: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - d;
            for (j, &c) in divisor.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - c % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Gf {
    pub fn new(q: u64) -> Result<Gf, OracleError> {
        let (p, k) = factor_prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
        let q = q as usize;
        let modulus = find_irreducible(p, k);
        let decode = |index: usize| -> Vec<u64> {
            let mut digits = Vec::with_capacity(k as usize);
            let mut rest = index as u64;
            for _ in 0..k {
                digits.push(rest % p);
                rest /= p;
            }
            digits
        };
        let encode = |digits: &[u64]| -> usize {
            digits
                .iter()
                .rev()
                .fold(0u64, |acc, &d| acc * p + d) as usize
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = decode(a);
            for b in 0..q {
                let db = decode(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u16;
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                mul[a * q + b] = encode(&prod) as u16;
            }
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let mut frob_p = vec![0u16; q];
        for a in 0..q {
            let mut acc = a;
            for _ in 1..p {
                acc = mul[acc * q + a] as usize;
            }
            frob_p[a] = acc as u16;
        }
        Ok(Gf {
            q,
            p,
            add,
            mul,
            inv,
            frob_p,
        })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// x -> x^(p^e)
    pub fn frobenius(&self, a: u16, e: u32) -> u16 {
        let mut acc = a;
        for _ in 0..e {
            acc = self.frob_p[acc as usize];
        }
        acc
    }
}

pub type Mat = Vec<u16>;

fn mat_mul(gf: &Gf, n: usize, a: &[u16], b: &[u16]) -> Mat {
    let mut out = vec![0u16; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = gf.add(out[i * n + j], gf.mul(x, b[l * n + j]));
            }
        }
    }
    out
}

fn identity(n: usize) -> Mat {
    let mut m = vec![0u16; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn is_invertible(gf: &Gf, n: usize, m: &[u16]) -> bool {
    let mut work: Vec<u16> = m.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| work[r * n + col] != 0);
        let Some(pivot) = pivot else { return false };
        if pivot != col {
            for j in 0..n {
                work.swap(pivot * n + j, col * n + j);
            }
        }
        let inv = gf.inv(work[col * n + col]);
        for j in 0..n {
            work[col * n + j] = gf.mul(work[col * n + j], inv);
        }
        for r in 0..n {
            if r == col || work[r * n + col] == 0 {
                continue;
            }
            let factor = work[r * n + col];
            for j in 0..n {
                let sub = gf.mul(factor, work[col * n + j]);
                // subtraction: add the additive inverse, found by scanning
                let neg = (0..gf.q as u16)
                    .find(|&x| gf.add(sub, x) == 0)
                    .expect("additive inverse exists");
                work[r * n + j] = gf.add(work[r * n + j], neg);
            }
        }
    }
    true
}

fn gl_order(n: u32, q: u64) -> u128 {
    let qn = (q as u128).pow(n);
    (0..n).map(|i| qn - (q as u128).pow(i)).product()
}

fn gu_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut order = q.pow(n * (n - 1) / 2);
    for i in 1..=n {
        let term = q.pow(i);
        order *= if i % 2 == 1 { term + 1 } else { term - 1 };
    }
    order
}

fn enumerate_group(
    gf: &Gf,
    n: usize,
    keep: impl Fn(&[u16]) -> bool,
) -> Result<Vec<Mat>, OracleError> {
    let space = (gf.q as u128).pow((n * n) as u32);
    if space > SPACE_GUARD {
        return Err(OracleError::SpaceTooLarge {
            space,
            guard: SPACE_GUARD,
        });
    }
    let mut out = Vec::new();
    let mut current = vec![0u16; n * n];
    loop {
        if keep(&current) {
            out.push(current.clone());
        }
        // odometer increment
        let mut idx = 0;
        loop {
            if idx == n * n {
                return Ok(out);
            }
            current[idx] += 1;
            if (current[idx] as usize) < gf.q {
                break;
            }
            current[idx] = 0;
            idx += 1;
        }
    }
}

/// The full element list of GL_n(q).
pub fn gl_elements(gf: &Gf, n: usize) -> Result<Vec<Mat>, OracleError> {
    enumerate_group(gf, n, |m| is_invertible(gf, n, m))
}

/// The full element list of GU_n(q) inside GL_n(q^2), for the identity
/// Hermitian form: conjugate-transpose times the matrix is the identity.
pub fn gu_elements(gf_q2: &Gf, n: usize, q: u64) -> Result<Vec<Mat>, OracleError> {
    let e = {
        // conjugation is x -> x^q = x^(p^e0) with q = p^e0
        let (_, k) = factor_prime_power(q).expect("q is a prime power");
        k
    };
    let id = identity(n);
    enumerate_group(gf_q2, n, |m| {
        let mut conj_t = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                conj_t[i * n + j] = gf_q2.frobenius(m[j * n + i], e);
            }
        }
        mat_mul(gf_q2, n, &conj_t, m) == id
    })
}

fn element_order(gf: &Gf, n: usize, m: &Mat) -> u64 {
    let id = identity(n);
    let mut acc = m.clone();
    let mut order = 1;
    while acc != id {
        acc = mat_mul(gf, n, &acc, m);
        order += 1;
    }
    order
}

fn count_classes(
    gf: &Gf,
    n: usize,
    elements: &[Mat],
    ell: Option<u64>,
) -> usize {
    let index: HashMap<&Mat, usize> = elements.iter().zip(0..).collect();
    let inverses: Vec<usize> = elements
        .iter()
        .map(|g| {
            let id = identity(n);
            elements
                .iter()
                .position(|h| mat_mul(gf, n, g, h) == id)
                .expect("group is closed under inverses")
        })
        .collect();
    let mut visited = vec![false; elements.len()];
    let mut classes = 0;
    for start in 0..elements.len() {
        if visited[start] {
            continue;
        }
        let keep = match ell {
            Some(ell) => element_order(gf, n, &elements[start]) % ell != 0,
            None => true,
        };
        if keep {
            classes += 1;
        }
        for (g_idx, g) in elements.iter().enumerate() {
            let conj = mat_mul(
                gf,
                n,
                &mat_mul(gf, n, g, &elements[start]),
                &elements[inverses[g_idx]],
            );
            visited[index[&conj]] = true;
        }
    }
    classes
}

/// Conjugacy-class count of GL_n(q) (eps = 1) or GU_n(q) (eps = -1) by
/// full enumeration, optionally restricted to ell-regular classes.
pub fn class_count(n: usize, eps: i64, q: u64, ell: Option<u64>) -> Result<usize, OracleError> {
    let order = match eps {
        1 => gl_order(n as u32, q),
        -1 => gu_order(n as u32, q),
        _ => panic!("eps must be +1 or -1"),
    };
    if order > GROUP_GUARD {
        return Err(OracleError::GroupTooLarge {
            order,
            guard: GROUP_GUARD,
        });
    }
    if eps == 1 {
        let gf = Gf::new(q)?;
        let elements = gl_elements(&gf, n)?;
        debug_assert_eq!(elements.len() as u128, order);
        Ok(count_classes(&gf, n, &elements, ell))
    } else {
        let gf = Gf::new(q * q)?;
        let elements = gu_elements(&gf, n, q)?;
        debug_assert_eq!(elements.len() as u128, order);
        Ok(count_classes(&gf, n, &elements, ell))
    }
}

/// Exhaustive enumeration of certifying (row order, column order) pairs
/// by pruned backtracking: position by position, any unused row-column
/// pair with a diagonal one whose column vanishes in all earlier rows.
/// Complete over all ordering pairs and independent of the greedy peel.
pub fn enumerate_order_pairs(entries: &[Vec<u64>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = entries.len();
    if entries.iter().any(|row| row.len() != n) {
        return Vec::new();
    }
    let mut rows_used = vec![false; n];
    let mut cols_used = vec![false; n];
    let mut row_order = Vec::new();
    let mut col_order = Vec::new();
    let mut out = Vec::new();
    rec(
        entries,
        &mut rows_used,
        &mut cols_used,
        &mut row_order,
        &mut col_order,
        &mut out,
        usize::MAX,
    );
    return out;

    fn rec(
        entries: &[Vec<u64>],
        rows_used: &mut Vec<bool>,
        cols_used: &mut Vec<bool>,
        row_order: &mut Vec<usize>,
        col_order: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
        limit: usize,
    ) {
        let n = entries.len();
        if out.len() >= limit {
            return;
        }
        if row_order.len() == n {
            out.push((row_order.clone(), col_order.clone()));
            return;
        }
        for i in 0..n {
            if rows_used[i] {
                continue;
            }
            for j in 0..n {
                if cols_used[j] || entries[i][j] != 1 {
                    continue;
                }
                if row_order.iter().any(|&prev| entries[prev][j] != 0) {
                    continue;
                }
                rows_used[i] = true;
                cols_used[j] = true;
                row_order.push(i);
                col_order.push(j);
                rec(entries, rows_used, cols_used, row_order, col_order, out, limit);
                row_order.pop();
                col_order.pop();
                rows_used[i] = false;
                cols_used[j] = false;
            }
        }
    }
}

/// Fast feasibility-only variant of [`enumerate_order_pairs`].
pub fn order_pair_exists(entries: &[Vec<u64>]) -> bool {
    let n = entries.len();
    if entries.iter().any(|row| row.len() != n) {
        return false;
    }
    let mut rows_used = vec![false; n];
    let mut cols_used = vec![false; n];
    let mut placed: Vec<usize> = Vec::new();
    return rec(entries, &mut rows_used, &mut cols_used, &mut placed);

    fn rec(
        entries: &[Vec<u64>],
        rows_used: &mut Vec<bool>,
        cols_used: &mut Vec<bool>,
        placed: &mut Vec<usize>,
    ) -> bool {
        let n = entries.len();
        if placed.len() == n {
            return true;
        }
        for i in 0..n {
            if rows_used[i] {
                continue;
            }
            for j in 0..n {
                if cols_used[j] || entries[i][j] != 1 {
                    continue;
                }
                if placed.iter().any(|&prev| entries[prev][j] != 0) {
                    continue;
                }
                rows_used[i] = true;
                cols_used[j] = true;
                placed.push(i);
                if rec(entries, rows_used, cols_used, placed) {
                    return true;
                }
                placed.pop();
                rows_used[i] = false;
                cols_used[j] = false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_f2_has_six_elements_three_classes() {
        assert_eq!(class_count(2, 1, 2, None).unwrap(), 3);
    }

    #[test]
    fn gl2_f3_has_eight_classes() {
        assert_eq!(class_count(2, 1, 3, None).unwrap(), 8);
    }

    #[test]
    fn gl2_f3_two_regular_classes() {
        assert_eq!(class_count(2, 1, 3, Some(2)).unwrap(), 2);
    }

    #[test]
    fn gl3_f2_has_six_classes() {
        assert_eq!(class_count(3, 1, 2, None).unwrap(), 6);
    }

    #[test]
    fn gu2_f2_has_eighteen_elements() {
        let gf = Gf::new(4).unwrap();
        let elements = gu_elements(&gf, 2, 2).unwrap();
        assert_eq!(elements.len(), 18);
    }

    #[test]
    fn gu2_f2_class_count() {
        assert_eq!(class_count(2, -1, 2, None).unwrap(), 9);
    }

    #[test]
    fn gl1_f4_has_three_classes() {
        assert_eq!(class_count(1, 1, 4, None).unwrap(), 3);
    }

    #[test]
    fn guard_rejects_large_groups() {
        assert!(matches!(
            class_count(4, 1, 5, None),
            Err(OracleError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn order_pairs_on_identity() {
        let entries = vec![vec![1, 0], vec![0, 1]];
        let pairs = enumerate_order_pairs(&entries);
        assert_eq!(pairs.len(), 2);
        assert!(order_pair_exists(&entries));
    }

    #[test]
    fn order_pairs_reject_all_ones() {
        let entries = vec![vec![1, 1], vec![1, 1]];
        assert!(enumerate_order_pairs(&entries).is_empty());
        assert!(!order_pair_exists(&entries));
    }
}
