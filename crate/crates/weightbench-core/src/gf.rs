use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

/// Arithmetic in the prime field Z/q for a prime q < 2^32 (products go
/// through u128, so no overflow anywhere).
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub q: u64,
}

impl Fp {
    pub fn new(q: u64) -> Self {
        Fp { q }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.q;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "division by zero mod {}", self.q);
        self.pow(a, self.q - 2)
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        let mut r = n.mod_floor(&q);
        if r.is_negative() {
            r += &q;
        }
        r.to_u64().unwrap()
    }

    /// Smallest primitive root mod q.
    pub fn primitive_root(&self) -> u64 {
        let phi = self.q - 1;
        let primes = prime_factors(phi);
        'outer: for g in 2..self.q {
            for &p in &primes {
                if self.pow(g, phi / p) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("prime fields always have a generator")
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense k x k matrix over Z/q, row-major.
#[derive(Clone, Debug)]
pub struct MatFp {
    pub f: Fp,
    pub n: usize,
    pub a: Vec<u64>,
}

impl MatFp {
    pub fn zero(f: Fp, n: usize) -> Self {
        MatFp {
            f,
            n,
            a: vec![0; n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v % self.f.q;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = self.f;
        (0..self.n)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.n {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Characteristic polynomial, low degree first, via Hessenberg reduction.
    pub fn charpoly(&self) -> Vec<u64> {
        let f = self.f;
        let n = self.n;
        let mut h = self.a.clone();
        let idx = |i: usize, j: usize| i * n + j;
        // reduce to upper Hessenberg form with row/column operations
        for m in 1..n.saturating_sub(1) {
            // find pivot in column m-1 below row m
            let mut piv = None;
            for i in m..n {
                if h[idx(i, m - 1)] != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != m {
                for j in 0..n {
                    h.swap(idx(p, j), idx(m, j));
                }
                for i in 0..n {
                    h.swap(idx(i, p), idx(i, m));
                }
            }
            let inv = f.inv(h[idx(m, m - 1)]);
            for i in (m + 1)..n {
                let factor = f.mul(h[idx(i, m - 1)], inv);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(factor, h[idx(m, j)]);
                    h[idx(i, j)] = f.sub(h[idx(i, j)], t);
                }
                for i2 in 0..n {
                    let t = f.mul(factor, h[idx(i2, i)]);
                    h[idx(i2, m)] = f.add(h[idx(i2, m)], t);
                }
            }
        }
        // charpoly of a Hessenberg matrix by the standard recurrence:
        // p_0 = 1, p_m = (x - h[m-1][m-1]) p_{m-1}
        //            - sum_{i<m-1} h[i][m-1] (prod_{j=i+1..m-1} h[j][j-1]) p_i
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut pm = vec![0u64; m + 1];
            let prev = &polys[m - 1];
            // (x - h_mm) * prev
            for (d, &c) in prev.iter().enumerate() {
                pm[d + 1] = f.add(pm[d + 1], c);
                let t = f.mul(h[idx(m - 1, m - 1)], c);
                pm[d] = f.sub(pm[d], t);
            }
            let mut subprod = 1u64;
            for i in (0..m - 1).rev() {
                subprod = f.mul(subprod, h[idx(i + 1, i)]);
                let coef = f.mul(h[idx(i, m - 1)], subprod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    let t = f.mul(coef, c);
                    pm[d] = f.sub(pm[d], t);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Basis of the kernel of (self - lambda I), as vectors of length n.
    pub fn eigen_nullspace(&self, lambda: u64) -> Vec<Vec<u64>> {
        let f = self.f;
        let n = self.n;
        let mut m = self.a.clone();
        for i in 0..n {
            m[i * n + i] = f.sub(m[i * n + i], lambda);
        }
        nullspace(f, &mut m, n, n)
    }
}

/// Kernel basis of an r x c matrix (row-major, destroyed in place).
pub fn nullspace(f: Fp, m: &mut [u64], rows: usize, cols: usize) -> Vec<Vec<u64>> {
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let mut piv = None;
        for r in row..rows {
            if m[r * cols + col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        for j in 0..cols {
            m.swap(p * cols + j, row * cols + j);
        }
        let inv = f.inv(m[row * cols + col]);
        for j in 0..cols {
            m[row * cols + j] = f.mul(m[row * cols + j], inv);
        }
        for r in 0..rows {
            if r != row && m[r * cols + col] != 0 {
                let factor = m[r * cols + col];
                for j in 0..cols {
                    let t = f.mul(factor, m[row * cols + j]);
                    m[r * cols + j] = f.sub(m[r * cols + j], t);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = f.sub(0, m[r * cols + free]);
        }
        basis.push(v);
    }
    basis
}

/// All roots of a polynomial over Z/q by direct scan (q stays small here).
pub fn poly_roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    let mut roots = Vec::new();
    for x in 0..f.q {
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        if acc == 0 {
            roots.push(x);
        }
    }
    roots
}

/// The field GF(p^m), realized as Fp[x]/(h) for the first irreducible monic
/// h of degree m in lex order. Elements are coefficient vectors of length m.
pub struct Fq {
    pub p: u64,
    pub m: usize,
    pub h: Vec<u64>,
    f: Fp,
}

impl Fq {
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let f = Fp::new(p);
        let mut size = 1u64;
        for _ in 0..m {
            size = size.checked_mul(p).ok_or(Error::PlaceSelectionFailure {
                bound: 1 << 20,
            })?;
        }
        if size > (1 << 20) {
            return Err(Error::PlaceSelectionFailure { bound: 1 << 20 });
        }
        if m == 1 {
            return Ok(Fq {
                p,
                m,
                h: vec![0, 1],
                f,
            });
        }
        // scan monic degree-m polynomials in lex order of their low coeffs
        let mut low = vec![0u64; m];
        loop {
            let mut h = low.clone();
            h.push(1);
            if poly_is_irreducible(f, &h) {
                return Ok(Fq { p, m, h, f });
            }
            // increment base-p counter
            let mut i = 0;
            loop {
                if i == m {
                    unreachable!("an irreducible polynomial of each degree exists");
                }
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, n: u64) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = n % self.p;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.f.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = self.f.add(prod[i + j], self.f.mul(x, y));
            }
        }
        // reduce by monic h
        for d in (self.m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..self.m {
                let t = self.f.mul(c, self.h[j]);
                prod[d - self.m + j] = self.f.sub(prod[d - self.m + j], t);
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn pow(&self, base: &[u64], mut exp: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = base.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    pub fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// First element of multiplicative order exactly n, scanning elements in
    /// lex order of coefficient vectors. n must divide p^m - 1.
    pub fn element_of_order(&self, n: u64) -> Vec<u64> {
        let full = self.size() - 1;
        assert_eq!(full % n, 0, "order must divide the group order");
        if n == 1 {
            return self.one();
        }
        let primes = prime_factors(n);
        let mut coeffs = vec![0u64; self.m];
        loop {
            // advance the base-p counter first so we skip zero
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < self.m, "no element of the requested order");
            }
            let gamma = coeffs.clone();
            let xi = self.pow(&gamma, full / n);
            if self.is_zero(&xi) || self.is_one(&xi) {
                continue;
            }
            if primes.iter().all(|&l| !self.is_one(&self.pow(&xi, n / l))) {
                return xi;
            }
        }
    }
}

fn poly_is_irreducible(f: Fp, h: &[u64]) -> bool {
    let m = h.len() - 1;
    if h[0] == 0 {
        return false; // divisible by x
    }
    // trial division by every monic polynomial of degree 1..=m/2
    for d in 1..=m / 2 {
        let mut low = vec![0u64; d];
        loop {
            let mut g = low.clone();
            g.push(1);
            if poly_rem_is_zero(f, h, &g) {
                return false;
            }
            let mut i = 0;
            let mut done = false;
            loop {
                if i == d {
                    done = true;
                    break;
                }
                low[i] += 1;
                if low[i] < f.q {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if done {
                break;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: Fp, num: &[u64], den: &[u64]) -> bool {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    while rem.len() > dn {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dn;
            for (j, &d) in den.iter().enumerate() {
                let t = f.mul(lead, d);
                rem[shift + j] = f.sub(rem[shift + j], t);
            }
        }
        rem.pop();
        while rem.len() > dn && *rem.last().unwrap() == 0 {
            if rem.len() == dn + 1 {
                break;
            }
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Multiplicative order of a mod n.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert_eq!(num_integer::gcd(a, n), 1);
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1u64;
    while x != 1 {
        x = (x as u128 * a as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// Deterministic reduction of Z[zeta_E] at a place over p: the p-power part
/// of a root of unity maps to 1, the p'-part zeta_{e'} maps to a fixed
/// element of order e' in GF(p^m), m = ord of p mod e'.
pub struct Place {
    pub p: u64,
    pub e: u64,
    pub e_prime: u64,
    pub field: Fq,
    /// images of zeta_E^i for i in 0..E
    images: Vec<Vec<u64>>,
}

impl Place {
    pub fn new(p: u64, e: u64) -> Result<Self> {
        let mut e_prime = e;
        while e_prime % p == 0 {
            e_prime /= p;
        }
        let m = mult_order(p % e_prime.max(1), e_prime.max(1)) as usize;
        let field = Fq::new(p, m)?;
        let xi = field.element_of_order(e_prime);
        // zeta_E = zeta_{p^a}^s zeta_{e'}^t with s p^a-part exponent; under
        // the place zeta_{p^a} -> 1, so zeta_E -> xi^t where t inverts the
        // p-part of E modulo e'.
        let pa = e / e_prime;
        let t = if e_prime == 1 {
            0
        } else {
            // t with pa * t = 1 mod e'
            (1..e_prime)
                .find(|t| (pa % e_prime) * t % e_prime == 1)
                .expect("p-part is invertible mod the p'-part")
        };
        let images: Vec<Vec<u64>> = (0..e)
            .map(|i| field.pow(&xi, (i % e) * t % e_prime.max(1)))
            .collect();
        Ok(Place {
            p,
            e,
            e_prime,
            field,
            images,
        })
    }

    pub fn reduce(&self, v: &Cyclotomic) -> Vec<u64> {
        assert_eq!(v.conductor(), self.e);
        let f = Fp::new(self.p);
        let mut acc = self.field.zero();
        for (i, c) in v.coeffs().iter().enumerate() {
            let cm = f.reduce_bigint(c);
            if cm == 0 {
                continue;
            }
            let term: Vec<u64> = self.images[i].iter().map(|&x| f.mul(cm, x)).collect();
            acc = self.field.add(&acc, &term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_basics() {
        let f = Fp::new(13);
        assert_eq!(f.mul(7, 8), 56 % 13);
        assert_eq!(f.mul(f.inv(5), 5), 1);
        assert_eq!(f.pow(2, 12), 1);
        // 2 is a generator mod 13
        assert_eq!(f.primitive_root(), 2);
    }

    #[test]
    fn charpoly_matches_hand_computation() {
        let f = Fp::new(101);
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let mut m = MatFp::zero(f, 2);
        m.set(0, 0, 2);
        m.set(0, 1, 1);
        m.set(1, 1, 3);
        assert_eq!(m.charpoly(), vec![6, 101 - 5, 1]);
        // companion matrix of x^3 - 7 has charpoly x^3 - 7
        let mut c = MatFp::zero(f, 3);
        c.set(0, 2, 7);
        c.set(1, 0, 1);
        c.set(2, 1, 1);
        assert_eq!(c.charpoly(), vec![101 - 7, 0, 0, 1]);
    }

    #[test]
    fn charpoly_roots_and_nullspace_recover_eigenvectors() {
        let f = Fp::new(97);
        let mut m = MatFp::zero(f, 3);
        // diag(4, 4, 9) conjugated by a shear still has eigenvalues {4, 9}
        m.set(0, 0, 4);
        m.set(1, 1, 4);
        m.set(2, 2, 9);
        m.set(0, 2, 5);
        let cp = m.charpoly();
        let mut roots = poly_roots(f, &cp);
        roots.sort_unstable();
        assert_eq!(roots, vec![4, 9]);
        let null4 = m.eigen_nullspace(4);
        assert_eq!(null4.len(), 2);
        for v in &null4 {
            assert_eq!(m.mul_vec(v), v.iter().map(|&x| f.mul(4, x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn gf4_and_gf8_structure() {
        let f4 = Fq::new(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over GF(2)
        assert_eq!(f4.h, vec![1, 1, 1]);
        let omega = f4.element_of_order(3);
        assert!(f4.is_one(&f4.pow(&omega, 3)));
        assert!(!f4.is_one(&omega));

        let f8 = Fq::new(2, 3).unwrap();
        let g = f8.element_of_order(7);
        let mut seen = std::collections::HashSet::new();
        for k in 0..7 {
            seen.insert(f8.pow(&g, k));
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn place_respects_ring_structure() {
        // e = 12, p = 2: e' = 3, m = ord_3(2) = 2, field GF(4)
        let place = Place::new(2, 12).unwrap();
        assert_eq!(place.e_prime, 3);
        assert_eq!(place.field.size(), 4);
        let a = Cyclotomic::root(12, 4); // zeta_3
        let b = Cyclotomic::root(12, 8); // zeta_3^2
        let ra = place.reduce(&a);
        let rb = place.reduce(&b);
        assert_eq!(place.field.mul(&ra, &rb), place.field.one());
        // 1 + zeta_3 + zeta_3^2 = 0 survives reduction
        let sum = Cyclotomic::one(12).add(&a).add(&b);
        assert!(place.field.is_zero(&place.reduce(&sum)));
        // zeta_4 is a 2-power root: goes to 1
        let i = Cyclotomic::root(12, 3);
        assert!(place.field.is_one(&place.reduce(&i)));
    }

    #[test]
    fn place_cap_is_enforced() {
        // order of 2 mod large prime forces a big field
        let r = Fq::new(2, 25);
        assert!(matches!(r, Err(Error::PlaceSelectionFailure { .. })));
    }

    #[test]
    fn mult_order_values() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(mult_order(7, 12), 2);
    }
}
