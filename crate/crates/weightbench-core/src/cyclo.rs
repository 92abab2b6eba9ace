use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Shared per-conductor data: the e-th cyclotomic polynomial and the
/// expansion of every power zeta^i (i < e) in the power basis 1..zeta^(d-1),
/// d = phi(e). Computed once and cached process-wide.
struct Basis {
    e: u64,
    deg: usize,
    /// zeta^i as a coefficient vector of length deg, for i in 0..e
    powers: Vec<Vec<BigInt>>,
}

fn basis_cache() -> &'static Mutex<HashMap<u64, Arc<Basis>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Basis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the e-th cyclotomic polynomial, low degree first, monic.
/// (x^e - 1) divided exactly by all lower-level cyclotomic factors.
pub fn cyclotomic_poly(e: u64) -> Vec<BigInt> {
    assert!(e >= 1);
    // x^e - 1
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in 1..e {
        if e % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division of polynomials over Z; the divisor must be monic and the
/// division must leave no remainder (callers only divide known factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let v = &c * d;
                rem[i + j] -= v;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

fn basis_for(e: u64) -> Arc<Basis> {
    let mut cache = basis_cache().lock().unwrap();
    if let Some(b) = cache.get(&e) {
        return Arc::clone(b);
    }
    let phi = cyclotomic_poly(e);
    let deg = phi.len() - 1;
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(e as usize);
    for i in 0..e as usize {
        if i < deg {
            let mut v = vec![BigInt::zero(); deg];
            v[i] = BigInt::one();
            powers.push(v);
        } else {
            // zeta^i = zeta * zeta^(i-1); reduce the overflow into the head
            // via x^deg = -(phi[0] + ... + phi[deg-1] x^(deg-1))
            let prev = &powers[i - 1];
            let mut v = vec![BigInt::zero(); deg];
            for j in 1..deg {
                v[j] = prev[j - 1].clone();
            }
            let top = prev[deg - 1].clone();
            if !top.is_zero() {
                for j in 0..deg {
                    v[j] -= &top * &phi[j];
                }
            }
            powers.push(v);
        }
    }
    let b = Arc::new(Basis { e, deg, powers });
    cache.insert(e, Arc::clone(&b));
    b
}

/// Element of Z[zeta_e], reduced in the power basis of the e-th cyclotomic
/// polynomial. Equality is exact; no floating point anywhere.
#[derive(Clone)]
pub struct Cyclotomic {
    basis: Arc<Basis>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.basis.e == other.basis.e && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(e={}, {:?})", self.basis.e, self.coeffs)
    }
}

impl Cyclotomic {
    pub fn zero(e: u64) -> Self {
        let basis = basis_for(e);
        let coeffs = vec![BigInt::zero(); basis.deg];
        Cyclotomic { basis, coeffs }
    }

    pub fn from_int(e: u64, n: i64) -> Self {
        let mut z = Cyclotomic::zero(e);
        z.coeffs[0] = BigInt::from(n);
        z
    }

    pub fn from_bigint(e: u64, n: BigInt) -> Self {
        let mut z = Cyclotomic::zero(e);
        z.coeffs[0] = n;
        z
    }

    pub fn one(e: u64) -> Self {
        Cyclotomic::from_int(e, 1)
    }

    /// zeta_e^k
    pub fn root(e: u64, k: u64) -> Self {
        let basis = basis_for(e);
        let coeffs = basis.powers[(k % e) as usize].clone();
        Cyclotomic { basis, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.basis.e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(n) when the value is a rational integer.
    pub fn to_int(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis.e, other.basis.e);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.basis.e, other.basis.e);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * n).collect();
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.basis.e, other.basis.e);
        let e = self.basis.e as usize;
        let deg = self.basis.deg;
        // convolve, folding exponents mod e (zeta^e = 1), then expand the
        // tail powers through the basis table
        let mut folded = vec![BigInt::zero(); e];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                folded[(i + j) % e] += a * b;
            }
        }
        let mut coeffs = vec![BigInt::zero(); deg];
        for (k, c) in folded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < deg {
                coeffs[k] += c;
            } else {
                for (j, t) in self.basis.powers[k].iter().enumerate() {
                    coeffs[j] += c * t;
                }
            }
        }
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    /// Galois action zeta -> zeta^t; t must be prime to the conductor.
    pub fn galois(&self, t: u64) -> Self {
        let e = self.basis.e;
        assert_eq!(num_integer::gcd(t, e), 1, "galois exponent must be a unit");
        let mut coeffs = vec![BigInt::zero(); self.basis.deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = ((i as u64) * t % e) as usize;
            for (j, b) in self.basis.powers[k].iter().enumerate() {
                coeffs[j] += a * b;
            }
        }
        Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    /// Re-express in Z[zeta_target] where conductor | target.
    pub fn embed(&self, target: u64) -> Self {
        let e = self.basis.e;
        assert_eq!(target % e, 0, "embedding target must be a multiple");
        if target == e {
            return self.clone();
        }
        let m = target / e;
        let basis = basis_for(target);
        let mut coeffs = vec![BigInt::zero(); basis.deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = ((i as u64) * m % target) as usize;
            for (j, b) in basis.powers[k].iter().enumerate() {
                coeffs[j] += a * b;
            }
        }
        Cyclotomic { basis, coeffs }
    }

    /// Exact division by a rational integer; every power-basis coefficient
    /// must be divisible since the basis is a free Z-basis.
    pub fn div_exact(&self, n: &BigInt) -> Result<Self> {
        assert!(!n.is_zero());
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = num_integer::Integer::div_rem(c, n);
            if !r.is_zero() {
                return Err(Error::PreconditionViolated(format!(
                    "inexact division of cyclotomic integer by {}",
                    n
                )));
            }
            coeffs.push(q);
        }
        Ok(Cyclotomic {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    /// Sum of Galois conjugates over all units mod e (the absolute trace,
    /// always a rational integer).
    pub fn trace(&self) -> BigInt {
        let e = self.basis.e;
        let mut acc = Cyclotomic::zero(e);
        for t in 1..=e {
            if num_integer::gcd(t, e) == 1 {
                acc = acc.add(&self.galois(t % e.max(1)));
            }
        }
        acc.to_int().expect("trace must be rational")
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}
