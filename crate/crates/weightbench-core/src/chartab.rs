use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::gf::{poly_roots, Fp, MatFp, Place};
use crate::group::{is_prime, nu_p, GroupHom, PermGroup};
use crate::perm::Perm;

/// Ordinary character table with exact cyclotomic values, every row lifted
/// from the modular eigenvector computation and sorted by (degree, values).
pub struct CharTable {
    pub conductor: u64,
    pub group_order: u64,
    pub class_reps: Vec<Perm>,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// power_map[j][t] = class index of rep_j^t, for t in 0..order(rep_j)
    pub power_map: Vec<Vec<usize>>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyclotomic>>,
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Smallest prime q = 1 mod e with q > 2*ceil(sqrt(n)); all eigenvalues of
/// the class-sum matrices then live in GF(q) and small integers lift uniquely.
pub fn modular_prime(group_order: u64, exponent: u64) -> u64 {
    let bound = 2 * ceil_sqrt(group_order);
    let mut q = exponent + 1;
    loop {
        if q > bound && is_prime(q) {
            return q;
        }
        q += exponent;
    }
}

/// Coordinates of the columns `us` in the independent column set `basis`
/// (all length n over Z/q); panics if any u leaves the span.
fn solve_in_basis(f: Fp, basis: &[Vec<u64>], us: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let d = basis.len();
    let w = d + us.len();
    let mut m = vec![0u64; n * w];
    for (t, b) in basis.iter().enumerate() {
        for i in 0..n {
            m[i * w + t] = b[i];
        }
    }
    for (t, u) in us.iter().enumerate() {
        for i in 0..n {
            m[i * w + d + t] = u[i];
        }
    }
    // forward eliminate with full pivoting down the first d columns
    let mut row = 0usize;
    let mut pivot_rows = Vec::new();
    for col in 0..d {
        let piv = (row..n).find(|&r| m[r * w + col] != 0).expect("basis must be independent");
        for j in 0..w {
            m.swap(piv * w + j, row * w + j);
        }
        let inv = f.inv(m[row * w + col]);
        for j in 0..w {
            m[row * w + j] = f.mul(m[row * w + j], inv);
        }
        for r in 0..n {
            if r != row && m[r * w + col] != 0 {
                let factor = m[r * w + col];
                for j in 0..w {
                    let t = f.mul(factor, m[row * w + j]);
                    m[r * w + j] = f.sub(m[r * w + j], t);
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    for r in row..n {
        for t in 0..us.len() {
            assert_eq!(m[r * w + d + t], 0, "image vector escapes the subspace");
        }
    }
    us.iter()
        .enumerate()
        .map(|(t, _)| (0..d).map(|s| m[pivot_rows[s] * w + d + t]).collect())
        .collect()
}

impl CharTable {
    pub fn build(group: &PermGroup) -> CharTable {
        let classes = group.conjugacy_classes();
        let k = classes.list.len();
        let n = group.order() as u64;
        let class_reps: Vec<Perm> = classes.list.iter().map(|c| c.rep.clone()).collect();
        let class_sizes: Vec<usize> = classes.list.iter().map(|c| c.size).collect();
        let class_orders: Vec<usize> = classes.list.iter().map(|c| c.elem_order).collect();
        assert_eq!(class_orders[0], 1, "identity class must sort first");
        let exponent = class_orders
            .iter()
            .fold(1u64, |acc, &m| num_integer::lcm(acc, m as u64));
        let inverse_class: Vec<usize> = class_reps
            .iter()
            .map(|r| group.class_index_of(&r.inverse()))
            .collect();
        let power_map: Vec<Vec<usize>> = class_reps
            .iter()
            .zip(&class_orders)
            .map(|(r, &m)| (0..m).map(|t| group.class_index_of(&r.pow(t))).collect())
            .collect();

        let q = modular_prime(n, exponent);
        let f = Fp::new(q);

        // class lists once, then the class-sum multiplication matrices
        let mut class_elems: Vec<Vec<Perm>> = vec![Vec::new(); k];
        for x in group.elements() {
            class_elems[group.class_index_of(x)].push(x.clone());
        }
        let mats: Vec<MatFp> = (0..k)
            .map(|i| {
                let mut m = MatFp::zero(f, k);
                for (l, rep) in class_reps.iter().enumerate() {
                    for x in &class_elems[i] {
                        let j = group.class_index_of(&x.inverse().mul(rep));
                        let v = m.get(j, l);
                        m.set(j, l, f.add(v, 1));
                    }
                }
                m
            })
            .collect();

        // split GF(q)^k into common eigenlines of the commuting family
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect()];
        for mat in mats.iter().skip(1) {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let us: Vec<Vec<u64>> = space.iter().map(|c| mat.mul_vec(c)).collect();
                let coords = solve_in_basis(f, &space, &us, k);
                let d = space.len();
                let mut r = MatFp::zero(f, d);
                for (t, col) in coords.iter().enumerate() {
                    for s in 0..d {
                        r.set(s, t, col[s]);
                    }
                }
                let cp = r.charpoly();
                let mut split_dim = 0;
                for lambda in poly_roots(f, &cp) {
                    let null = r.eigen_nullspace(lambda);
                    if null.is_empty() {
                        continue;
                    }
                    split_dim += null.len();
                    let lifted: Vec<Vec<u64>> = null
                        .iter()
                        .map(|coeffs| {
                            let mut v = vec![0u64; k];
                            for (s, &c) in coeffs.iter().enumerate() {
                                for i in 0..k {
                                    v[i] = f.add(v[i], f.mul(c, space[s][i]));
                                }
                            }
                            v
                        })
                        .collect();
                    next.push(lifted);
                }
                assert_eq!(split_dim, d, "class-sum matrix failed to act semisimply");
            }
            spaces = next;
        }
        assert!(
            spaces.iter().all(|s| s.len() == 1),
            "class-sum matrices must separate all central characters"
        );

        // normalize so the identity-class entry is 1, recover degrees, lift
        let z = f.primitive_root();
        let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::new();
        for space in &spaces {
            let raw = &space[0];
            assert_ne!(raw[0], 0, "central character cannot vanish at the identity");
            let scale = f.inv(raw[0]);
            let omega: Vec<u64> = raw.iter().map(|&x| f.mul(x, scale)).collect();
            let s = (0..k).fold(0u64, |acc, j| {
                let term = f.mul(
                    f.mul(omega[j], omega[inverse_class[j]]),
                    f.inv(class_sizes[j] as u64 % q),
                );
                f.add(acc, term)
            });
            let dsq = f.mul(n % q, f.inv(s));
            let degree = (1..=ceil_sqrt(n))
                .find(|&d| f.mul(d, d) == dsq)
                .expect("degree must be a small square root");
            let chi_mod: Vec<u64> = (0..k)
                .map(|j| {
                    f.mul(
                        f.mul(degree, omega[j]),
                        f.inv(class_sizes[j] as u64 % q),
                    )
                })
                .collect();
            let values: Vec<Cyclotomic> = (0..k)
                .map(|j| {
                    let m = class_orders[j] as u64;
                    let lam = f.pow(z, (q - 1) / m);
                    let lam_inv = f.inv(lam);
                    let m_inv = f.inv(m % q);
                    let mut value = Cyclotomic::zero(exponent);
                    let mut total = 0u64;
                    for s_exp in 0..m {
                        let mut acc = 0u64;
                        for t in 0..m {
                            let x = chi_mod[power_map[j][t as usize]];
                            acc = f.add(acc, f.mul(x, f.pow(lam_inv, s_exp * t)));
                        }
                        let mu = f.mul(acc, m_inv);
                        assert!(
                            mu <= degree,
                            "eigenvalue multiplicity exceeds the degree; lift is broken"
                        );
                        total += mu;
                        if mu != 0 {
                            let root = Cyclotomic::root(exponent, s_exp * (exponent / m));
                            value = value.add(&root.scale(&BigInt::from(mu)));
                        }
                    }
                    assert_eq!(total, degree, "multiplicities must sum to the degree");
                    value
                })
                .collect();
            rows.push((degree, values));
        }

        let key = |row: &(u64, Vec<Cyclotomic>)| -> (u64, Vec<Vec<BigInt>>) {
            (
                row.0,
                row.1.iter().map(|v| v.coeffs().to_vec()).collect(),
            )
        };
        rows.sort_by(|a, b| key(a).cmp(&key(b)));

        let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
        let values: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|r| r.1).collect();
        let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, n, "degree squares must sum to the group order");

        CharTable {
            conductor: exponent,
            group_order: n,
            class_reps,
            class_sizes,
            class_orders,
            inverse_class,
            power_map,
            degrees,
            values,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn p_regular_class_indices(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&j| self.class_orders[j] as u64 % p != 0)
            .collect()
    }

    pub fn p_regular_class_count(&self, p: u64) -> usize {
        self.p_regular_class_indices(p).len()
    }

    /// Number of rows whose degree carries the full p-part of the group order.
    pub fn defect_zero_count(&self, p: u64) -> usize {
        let full = nu_p(self.group_order, p);
        self.degrees.iter().filter(|&&d| nu_p(d, p) == full).count()
    }

    pub fn defect_zero_indices(&self, p: u64) -> Vec<usize> {
        let full = nu_p(self.group_order, p);
        (0..self.degrees.len())
            .filter(|&r| nu_p(self.degrees[r], p) == full)
            .collect()
    }

    /// Partition of the rows into p-blocks: rows are linked when all their
    /// central-character values agree under a fixed reduction mod p.
    pub fn block_distribution(&self, p: u64) -> Result<Vec<Vec<usize>>> {
        let place = Place::new(p, self.conductor)?;
        let mut signature_to_block: HashMap<Vec<Vec<u64>>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for r in 0..self.degrees.len() {
            let deg = BigInt::from(self.degrees[r]);
            let sig: Result<Vec<Vec<u64>>> = (0..self.num_classes())
                .map(|j| {
                    let num = self.values[r][j].scale(&BigInt::from(self.class_sizes[j]));
                    let omega = num.div_exact(&deg)?;
                    Ok(place.reduce(&omega))
                })
                .collect();
            let sig = sig?;
            match signature_to_block.get(&sig) {
                Some(&b) => blocks[b].push(r),
                None => {
                    signature_to_block.insert(sig, blocks.len());
                    blocks.push(vec![r]);
                }
            }
        }
        Ok(blocks)
    }

    /// Defect of each block: max over its rows of nu_p(|G|) - nu_p(degree).
    pub fn block_defects(&self, p: u64, blocks: &[Vec<usize>]) -> Vec<u32> {
        let full = nu_p(self.group_order, p);
        blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&r| full - nu_p(self.degrees[r], p))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// How an automorphism permutes the classes: j -> class of alpha(rep_j).
    pub fn class_permutation(&self, group: &PermGroup, alpha: &GroupHom) -> Vec<usize> {
        self.class_reps
            .iter()
            .map(|r| group.class_index_of(&alpha.apply(r)))
            .collect()
    }

    pub fn fixed_class_count(&self, class_perm: &[usize]) -> usize {
        class_perm.iter().enumerate().filter(|&(j, &pj)| j == pj).count()
    }

    /// How the automorphism permutes rows: the image row takes value
    /// chi(x) at class alpha(x). Panics if rows fail to match up, which
    /// would mean the value lift is inconsistent.
    pub fn character_permutation(&self, class_perm: &[usize]) -> Vec<usize> {
        let k = self.num_classes();
        let row_key = |vals: &[Cyclotomic]| -> Vec<Vec<BigInt>> {
            vals.iter().map(|v| v.coeffs().to_vec()).collect()
        };
        let mut index: HashMap<Vec<Vec<BigInt>>, usize> = HashMap::new();
        for (r, vals) in self.values.iter().enumerate() {
            index.insert(row_key(vals), r);
        }
        self.values
            .iter()
            .map(|vals| {
                let mut permuted = vec![Cyclotomic::zero(self.conductor); k];
                for j in 0..k {
                    permuted[class_perm[j]] = vals[j].clone();
                }
                *index
                    .get(&row_key(&permuted))
                    .expect("automorphism must permute character rows")
            })
            .collect()
    }

    pub fn fixed_character_count(&self, class_perm: &[usize]) -> usize {
        self.character_permutation(class_perm)
            .iter()
            .enumerate()
            .filter(|&(r, &pr)| r == pr)
            .count()
    }

    /// First orthogonality: sum_j |K_j| chi_r(g_j) chi_s(g_j^-1) = delta |G|.
    pub fn check_row_orthogonality(&self) -> bool {
        let e = self.conductor;
        let nrows = self.degrees.len();
        for r in 0..nrows {
            for s in 0..nrows {
                let mut acc = Cyclotomic::zero(e);
                for j in 0..self.num_classes() {
                    let term = self.values[r][j]
                        .mul(&self.values[s][self.inverse_class[j]])
                        .scale(&BigInt::from(self.class_sizes[j]));
                    acc = acc.add(&term);
                }
                let expect = if r == s {
                    BigInt::from(self.group_order)
                } else {
                    BigInt::zero()
                };
                if acc.to_int() != Some(expect) {
                    return false;
                }
            }
        }
        true
    }

    /// Second orthogonality: sum_chi chi(g_j) chi(g_l^-1) = delta |C(g_j)|.
    pub fn check_column_orthogonality(&self) -> bool {
        let e = self.conductor;
        let k = self.num_classes();
        for j in 0..k {
            for l in 0..k {
                let mut acc = Cyclotomic::zero(e);
                for r in 0..self.degrees.len() {
                    let term = self.values[r][j].mul(&self.values[r][self.inverse_class[l]]);
                    acc = acc.add(&term);
                }
                let expect = if j == l {
                    BigInt::from(self.group_order / self.class_sizes[j] as u64)
                } else {
                    BigInt::zero()
                };
                if acc.to_int() != Some(expect) {
                    return false;
                }
            }
        }
        true
    }

    /// Degree of row r as usize (degrees always fit far below 2^32 here).
    pub fn degree_usize(&self, r: usize) -> usize {
        self.degrees[r].to_usize().unwrap()
    }
}

/// Convenience for errors instead of panics when a prime is invalid.
pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}
