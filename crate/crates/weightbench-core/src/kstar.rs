//! Scalar-twisted automorphisms of a cyclic group and the fixed-rank
//! bookkeeping behind the `cyclic-lemma` subcommand.
//!
//! For a cyclic group A of order m (coprime to the working prime) the
//! twisted automorphism group is the semidirect product Z/m ⋊ (Z/m)^×: a
//! pair (t, u) acts on the character-function basis {δ_a} by
//!     (t, u) · δ_a  =  ζ_m^{t·(u·a)} · δ_{u·a},
//! i.e. a permutation of the basis points decorated with root-of-unity
//! scalars.  The rank of the subspace fixed by a subgroup C is computed by
//! the exact Burnside trace average over ℤ[ζ], and cross-checked in tests
//! against a projector-rank computation over a split prime field.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cyclo::{euler_phi, Cyclotomic};
use crate::error::{Error, Result};

/// One twisted automorphism: `t` is the twist exponent (mod m), `u` the
/// underlying unit (mod m).  Both stored reduced; the derived ordering is
/// what `close` and the subgroup enumeration sort by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KStarAut {
    pub t: u64,
    pub u: u64,
}

/// The ambient data: cyclic order m and the cyclotomic level e used for
/// scalars.  All scalars that actually appear are m-th roots of unity, so
/// e = m throughout; the level is kept separate so the action formula
/// stays honest about which root it produces.
#[derive(Clone, Copy, Debug)]
pub struct CyclicData {
    pub m: u64,
    pub e: u64,
}

/// Report for one explicit pair check: both closures, their shared
/// invariants, and the two fixed ranks.
#[derive(Serialize, Clone, Debug)]
pub struct PairRankReport {
    pub m: u64,
    pub subgroup_order: usize,
    pub image: Vec<u64>,
    pub rank_first: u64,
    pub rank_second: u64,
    pub equal: bool,
}

/// Orbit-by-orbit fixed dimensions of the ideals spanned by the generator
/// basis points, for a subgroup meeting the twist subgroup trivially.
#[derive(Serialize, Clone, Debug)]
pub struct OrbitIdealReport {
    pub m: u64,
    pub subgroup_order: usize,
    pub orbits: Vec<Vec<u64>>,
    pub dims: Vec<u64>,
    pub all_one: bool,
}

/// Summary of the exhaustive bucket check for a single m: subgroups are
/// grouped by (order, image in (Z/m)^×) and ranks compared within each
/// bucket.
#[derive(Serialize, Clone, Debug)]
pub struct BucketSweepSummary {
    pub m: u64,
    pub subgroup_count: usize,
    pub bucket_count: usize,
    pub pair_count: usize,
    pub all_equal: bool,
    pub reduced_count: usize,
    pub orbit_dims_all_one: bool,
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of u mod m (u a unit).  m = 1 is the degenerate one-element
/// ring where everything is 0.
fn mod_inverse(u: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, (u % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert!(r0 == 1, "mod_inverse called on a non-unit");
    (s0.rem_euclid(m as i128)) as u64
}

impl CyclicData {
    /// New ambient data for cyclic order m.  The optional prime is only
    /// used for the coprimality check: the scalars live in ℤ[ζ_m]
    /// regardless.
    pub fn new(m: u64, p: Option<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::PreconditionViolated(
                "cyclic order must be at least 1".into(),
            ));
        }
        if let Some(p) = p {
            crate::chartab::require_prime(p)?;
            if num_integer::gcd(m, p) != 1 {
                return Err(Error::PreconditionViolated(format!(
                    "cyclic order {} is not coprime to the prime {}",
                    m, p
                )));
            }
        }
        Ok(CyclicData { m, e: m })
    }

    /// Build one twisted automorphism, rejecting non-units.
    pub fn aut(&self, t: u64, u: u64) -> Result<KStarAut> {
        let (t, u) = (t % self.m, u % self.m);
        if num_integer::gcd(u, self.m) != 1 {
            return Err(Error::PreconditionViolated(format!(
                "{} is not a unit mod {}",
                u, self.m
            )));
        }
        Ok(KStarAut { t, u })
    }

    pub fn identity(&self) -> KStarAut {
        KStarAut {
            t: 0,
            u: 1 % self.m,
        }
    }

    /// Composition s∘r (apply r first).  Acting on δ_a and matching
    /// scalars on both sides forces t = t_s + t_r·u_s⁻¹, u = u_s·u_r.
    pub fn compose(&self, s: KStarAut, r: KStarAut) -> KStarAut {
        let ui = mod_inverse(s.u, self.m);
        KStarAut {
            t: (s.t + mulm(r.t, ui, self.m)) % self.m,
            u: mulm(s.u, r.u, self.m),
        }
    }

    pub fn inverse(&self, s: KStarAut) -> KStarAut {
        let ui = mod_inverse(s.u, self.m);
        KStarAut {
            t: (self.m - mulm(s.t, s.u, self.m)) % self.m,
            u: ui,
        }
    }

    /// Image of the basis function δ_a: the scalar and the new basis
    /// point.  The exponent is scaled by e/m so the formula survives a
    /// larger cyclotomic level, though e = m in practice.
    pub fn act_on_delta(&self, s: KStarAut, a: u64) -> (Cyclotomic, u64) {
        let b = mulm(s.u, a % self.m, self.m);
        let exp = mulm(mulm(s.t, b, self.m), self.e / self.m, self.e);
        (Cyclotomic::root(self.e, exp), b)
    }

    /// Closure of a generator list, returned sorted.  BFS over right
    /// multiplication; the group has at most m·φ(m) elements so this is
    /// always small.
    pub fn close(&self, gens: &[KStarAut]) -> Vec<KStarAut> {
        let mut seen: BTreeSet<KStarAut> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.compose(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every element (t, u) of the full twisted group, sorted.  For m = 1
    /// the loop emits the lone element (0, 0) because gcd(0, 1) = 1.
    pub fn full_group(&self) -> Vec<KStarAut> {
        let mut out = Vec::new();
        for u in 0..self.m {
            if num_integer::gcd(u, self.m) != 1 {
                continue;
            }
            for t in 0..self.m {
                out.push(KStarAut { t, u });
            }
        }
        out.sort();
        out
    }

    /// The generator basis points: one δ_a per unit a.  For m = 1 the
    /// identity element is the lone generator.
    pub fn residual_basis(&self) -> Vec<u64> {
        if self.m == 1 {
            return vec![0];
        }
        (1..self.m)
            .filter(|&a| num_integer::gcd(a, self.m) == 1)
            .collect()
    }

    /// Burnside trace of s over a subset of basis points: the sum of the
    /// scalars at the points s fixes.
    fn trace_over(&self, s: KStarAut, points: &[u64]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.e);
        for &a in points {
            let (scalar, b) = self.act_on_delta(s, a);
            if b == a {
                acc = acc.add(&scalar);
            }
        }
        acc
    }

    /// Exact integer average of traces over the closure of `gens`,
    /// restricted to `points`.  This is the rank of the fixed subspace of
    /// the span of those basis points (the span is invariant whenever
    /// `points` is closed under every u in the closure's image).
    fn fixed_rank_over(&self, closure: &[KStarAut], points: &[u64]) -> u64 {
        let mut acc = Cyclotomic::zero(self.e);
        for &s in closure {
            acc = acc.add(&self.trace_over(s, points));
        }
        let total = acc
            .to_int()
            .expect("burnside trace sum must be a rational integer");
        let order = BigInt::from(closure.len());
        let (q, r) = total.div_rem(&order);
        assert!(
            r == BigInt::from(0) && q >= BigInt::from(0),
            "burnside average must be a nonnegative integer, got {}/{}",
            total,
            closure.len()
        );
        q.to_u64().expect("fixed rank fits in u64")
    }

    /// Rank of the full fixed subspace of the closure of `gens`.
    pub fn fixed_rank(&self, gens: &[KStarAut]) -> u64 {
        let closure = self.close(gens);
        let points: Vec<u64> = (0..self.m).collect();
        self.fixed_rank_over(&closure, &points)
    }

    /// Fixed rank split across the order-d components: basis point a sits
    /// in the component of the subgroup it generates, i.e. of order
    /// m/gcd(a, m).  The per-divisor ranks sum to the total because the
    /// action preserves element order.
    pub fn residual_fixed_ranks(&self, gens: &[KStarAut]) -> Vec<(u64, u64)> {
        let closure = self.close(gens);
        let mut by_div: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for a in 0..self.m {
            let d = self.m / num_integer::gcd(a, self.m);
            by_div.entry(d).or_default().push(a);
        }
        by_div
            .into_iter()
            .map(|(d, pts)| (d, self.fixed_rank_over(&closure, &pts)))
            .collect()
    }

    /// Orbit-by-orbit fixed dimensions on the generator basis points, for
    /// a subgroup whose twist intersection is trivial.  Freeness of the
    /// image on units then forces every dimension to be 1; the report
    /// recomputes them instead of assuming.
    pub fn orbit_ideal_report(&self, gens: &[KStarAut]) -> Result<OrbitIdealReport> {
        let closure = self.close(gens);
        let one = 1 % self.m;
        if let Some(bad) = closure.iter().find(|s| s.u == one && s.t != 0) {
            return Err(Error::PreconditionViolated(format!(
                "subgroup contains the pure twist ({}, {}); orbit ideals need a trivial twist intersection",
                bad.t, bad.u
            )));
        }
        let units = self.residual_basis();
        let mut remaining: BTreeSet<u64> = units.iter().copied().collect();
        let mut orbits = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut orbit = BTreeSet::new();
            let mut frontier = vec![start];
            orbit.insert(start);
            while let Some(a) = frontier.pop() {
                for s in &closure {
                    let b = mulm(s.u, a, self.m);
                    if orbit.insert(b) {
                        frontier.push(b);
                    }
                }
            }
            for a in &orbit {
                remaining.remove(a);
            }
            orbits.push(orbit.into_iter().collect::<Vec<u64>>());
        }
        let dims: Vec<u64> = orbits
            .iter()
            .map(|o| self.fixed_rank_over(&closure, o))
            .collect();
        let all_one = dims.iter().all(|&d| d == 1);
        Ok(OrbitIdealReport {
            m: self.m,
            subgroup_order: closure.len(),
            orbits,
            dims,
            all_one,
        })
    }

    /// Sorted image of a closed subgroup in the unit group.
    fn image_of(&self, closure: &[KStarAut]) -> Vec<u64> {
        let set: BTreeSet<u64> = closure.iter().map(|s| s.u).collect();
        set.into_iter().collect()
    }

    /// Compare the fixed ranks of two explicitly given subgroups after
    /// checking they qualify: equal order and equal image in the unit
    /// group.  The ranks are reported as computed — a qualifying pair
    /// with unequal ranks yields equal = false, not an error.
    pub fn verify_pair_ranks(&self, first: &[KStarAut], second: &[KStarAut]) -> Result<PairRankReport> {
        let c1 = self.close(first);
        let c2 = self.close(second);
        if c1.len() != c2.len() {
            return Err(Error::PreconditionViolated(format!(
                "subgroups have different orders ({} vs {})",
                c1.len(),
                c2.len()
            )));
        }
        let im1 = self.image_of(&c1);
        let im2 = self.image_of(&c2);
        if im1 != im2 {
            return Err(Error::PreconditionViolated(
                "subgroups have different images in the unit group".into(),
            ));
        }
        let points: Vec<u64> = (0..self.m).collect();
        let rank_first = self.fixed_rank_over(&c1, &points);
        let rank_second = self.fixed_rank_over(&c2, &points);
        Ok(PairRankReport {
            m: self.m,
            subgroup_order: c1.len(),
            image: im1,
            rank_first,
            rank_second,
            equal: rank_first == rank_second,
        })
    }

    /// Every subgroup of the full twisted group, each returned as its
    /// sorted element list.  Closure-extension search: grow each known
    /// subgroup by one cyclic generator at a time.  Using one
    /// representative generator per distinct cyclic subgroup keeps the
    /// candidate list short without losing completeness (adjoining x and
    /// adjoining a generator of ⟨x⟩ give the same closure).
    pub fn all_subgroups(&self) -> Vec<Vec<KStarAut>> {
        let full = self.full_group();
        let mut cyclic_seen: BTreeSet<Vec<KStarAut>> = BTreeSet::new();
        let mut cyclic_reps: Vec<KStarAut> = Vec::new();
        for &x in &full {
            let c = self.close(&[x]);
            if cyclic_seen.insert(c) {
                cyclic_reps.push(x);
            }
        }
        let trivial = vec![self.identity()];
        let mut seen: BTreeSet<Vec<KStarAut>> = BTreeSet::new();
        seen.insert(trivial.clone());
        let mut queue = vec![trivial];
        let mut out: Vec<Vec<KStarAut>> = Vec::new();
        while let Some(h) = queue.pop() {
            out.push(h.clone());
            for &x in &cyclic_reps {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.close(&gens);
                if seen.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Exhaustive check for this m: bucket all subgroups by
    /// (order, image) and verify the fixed rank is constant on each
    /// bucket.  Also verifies the orbit-ideal dimensions are all 1 on
    /// every subgroup with trivial twist intersection.
    pub fn bucket_sweep(&self) -> BucketSweepSummary {
        let subs = self.all_subgroups();
        let points: Vec<u64> = (0..self.m).collect();
        let mut buckets: BTreeMap<(usize, Vec<u64>), Vec<u64>> = BTreeMap::new();
        let mut reduced_count = 0usize;
        let mut orbit_dims_all_one = true;
        let one = 1 % self.m;
        for h in &subs {
            let rank = self.fixed_rank_over(h, &points);
            buckets
                .entry((h.len(), self.image_of(h)))
                .or_default()
                .push(rank);
            if !h.iter().any(|s| s.u == one && s.t != 0) {
                reduced_count += 1;
                let rep = self
                    .orbit_ideal_report(h)
                    .expect("twist intersection just checked trivial");
                orbit_dims_all_one &= rep.all_one;
            }
        }
        let mut pair_count = 0usize;
        let mut all_equal = true;
        for ranks in buckets.values() {
            pair_count += ranks.len() * (ranks.len() - 1) / 2;
            all_equal &= ranks.iter().all(|&r| r == ranks[0]);
        }
        BucketSweepSummary {
            m: self.m,
            subgroup_count: subs.len(),
            bucket_count: buckets.len(),
            pair_count,
            all_equal,
            reduced_count,
            orbit_dims_all_one,
        }
    }
}

/// Divisor-indexed sizes of the generator-basis components: the component
/// of order d contributes φ(d) basis points, and these add up to m.
pub fn component_dimensions(m: u64) -> Vec<(u64, u64)> {
    (1..=m)
        .filter(|d| m % d == 0)
        .map(|d| (d, euler_phi(d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{nullspace, Fp};
    use crate::group::is_prime;

    fn data(m: u64) -> CyclicData {
        CyclicData::new(m, None).expect("valid order")
    }

    /// Independent rank computation: reduce the averaging projector
    /// (1/|C|) Σ M_s over a split prime field q ≡ 1 (mod m) with
    /// q > m and q > |C|.  The projector is idempotent, so its rank
    /// equals its trace, which is the fixed rank mod q; q > m pins the
    /// exact value.
    fn projector_rank_oracle(data: &CyclicData, gens: &[KStarAut]) -> u64 {
        let closure = data.close(gens);
        let m = data.m as usize;
        let mut q = data.e + 1;
        loop {
            if q > data.m && q > closure.len() as u64 && (q - 1) % data.e == 0 && is_prime(q) {
                break;
            }
            q += 1;
        }
        let f = Fp::new(q);
        let root = f.pow(f.primitive_root(), (q - 1) / data.e);
        let mut mat = vec![0u64; m * m];
        for s in &closure {
            for a in 0..m {
                let b = mulm(s.u, a as u64, data.m) as usize;
                let exp = mulm(mulm(s.t, b as u64, data.m), data.e / data.m, data.e);
                let entry = &mut mat[b * m + a];
                *entry = f.add(*entry, f.pow(root, exp));
            }
        }
        let scale = f.inv(closure.len() as u64 % q);
        for entry in mat.iter_mut() {
            *entry = f.mul(*entry, scale);
        }
        let kernel = nullspace(f, &mut mat, m, m);
        (m - kernel.len()) as u64
    }

    #[test]
    fn composition_matches_action_composition() {
        for m in [1u64, 2, 3, 4, 6, 8, 9, 12] {
            let d = data(m);
            let full = d.full_group();
            assert_eq!(full.len() as u64, m * euler_phi(m));
            for &s in &full {
                for &r in &full {
                    let sr = d.compose(s, r);
                    for a in 0..m {
                        let (sc_r, b) = d.act_on_delta(r, a);
                        let (sc_s, c) = d.act_on_delta(s, b);
                        let (sc_sr, c2) = d.act_on_delta(sr, a);
                        assert_eq!(c, c2);
                        assert!(sc_sr.sub(&sc_s.mul(&sc_r)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn identity_inverse_and_associativity() {
        let d = data(12);
        let full = d.full_group();
        for &s in &full {
            assert_eq!(d.compose(s, d.identity()), s);
            assert_eq!(d.compose(d.identity(), s), s);
            assert_eq!(d.compose(s, d.inverse(s)), d.identity());
            assert_eq!(d.compose(d.inverse(s), s), d.identity());
        }
        // associativity on a coarse sample (every 7th pair of triples)
        for (i, &s) in full.iter().enumerate().step_by(3) {
            for (j, &r) in full.iter().enumerate().step_by(5) {
                for &w in full.iter().skip((i + j) % 7).step_by(7) {
                    assert_eq!(
                        d.compose(d.compose(s, r), w),
                        d.compose(s, d.compose(r, w))
                    );
                }
            }
        }
    }

    #[test]
    fn twist_and_unit_do_not_commute() {
        let d = data(12);
        let twist = d.aut(1, 1).unwrap();
        let unit = d.aut(0, 5).unwrap();
        assert_eq!(d.compose(twist, unit), d.aut(1, 5).unwrap());
        // pushing the twist past the unit multiplies its exponent by u⁻¹
        assert_eq!(d.compose(unit, twist), d.aut(5, 5).unwrap());
    }

    #[test]
    fn delta_action_examples() {
        let d = data(3);
        let (sc, b) = d.act_on_delta(d.identity(), 2);
        assert_eq!(b, 2);
        assert!(sc.sub(&Cyclotomic::one(3)).is_zero());
        // pure unit: no scalar, point moves
        let (sc, b) = d.act_on_delta(d.aut(0, 2).unwrap(), 1);
        assert_eq!(b, 2);
        assert!(sc.sub(&Cyclotomic::one(3)).is_zero());
        // pure twist: primitive scalar, point fixed
        let (sc, b) = d.act_on_delta(d.aut(1, 1).unwrap(), 1);
        assert_eq!(b, 1);
        assert!(sc.sub(&Cyclotomic::root(3, 1)).is_zero());
    }

    #[test]
    fn fixed_rank_special_shapes() {
        // trivial subgroup fixes everything
        for m in [1u64, 5, 12] {
            assert_eq!(data(m).fixed_rank(&[]), m);
        }
        // pure unit subgroup: rank counts u-orbits on Z/m
        let d = data(12);
        assert_eq!(d.fixed_rank(&[d.aut(0, 5).unwrap()]), 8);
        let d7 = data(7);
        assert_eq!(d7.fixed_rank(&[d7.aut(0, 3).unwrap()]), 2);
        // pure twist subgroup lifted from a quotient of order m/|D|:
        // rank is |D| (here D of order 4 inside m = 12)
        let d = data(12);
        assert_eq!(d.fixed_rank(&[d.aut(4, 1).unwrap()]), 4);
        // full twist subgroup leaves only the component of the trivial
        // subgroup
        assert_eq!(d.fixed_rank(&[d.aut(1, 1).unwrap()]), 1);
    }

    #[test]
    fn projector_oracle_agrees_on_every_subgroup() {
        for m in [4u64, 6, 8, 9, 12] {
            let d = data(m);
            for h in d.all_subgroups() {
                let burnside = d.fixed_rank(&h);
                let oracle = projector_rank_oracle(&d, &h);
                assert_eq!(burnside, oracle, "rank mismatch at m = {} for {:?}", m, h);
            }
        }
    }

    #[test]
    fn qualifying_pair_of_order_three_mod_seven() {
        let d = data(7);
        let pure = [d.aut(0, 2).unwrap()];
        let twisted = [d.aut(1, 2).unwrap()];
        let rep = d.verify_pair_ranks(&pure, &twisted).unwrap();
        assert_eq!(rep.subgroup_order, 3);
        assert_eq!(rep.image, vec![1, 2, 4]);
        assert_eq!(rep.rank_first, 3);
        assert!(rep.equal);
    }

    #[test]
    fn twisting_can_change_the_rank_at_even_order() {
        // the order-2 bucket with image ⟨3⟩ mod 4 is NOT rank-constant:
        // the pure subgroup fixes δ_0, δ_2, δ_1+δ_3 while the twisted one
        // only fixes two combinations.  This is why the sweep sticks to
        // odd m (coprimality with the working prime 2).
        let d = data(4);
        let rep = d
            .verify_pair_ranks(&[d.aut(0, 3).unwrap()], &[d.aut(1, 3).unwrap()])
            .unwrap();
        assert_eq!(rep.subgroup_order, 2);
        assert_eq!(rep.rank_first, 3);
        assert_eq!(rep.rank_second, 2);
        assert!(!rep.equal);
        // the projector oracle sees the same split
        assert_eq!(projector_rank_oracle(&d, &[d.aut(0, 3).unwrap()]), 3);
        assert_eq!(projector_rank_oracle(&d, &[d.aut(1, 3).unwrap()]), 2);
    }

    #[test]
    fn pair_preconditions_are_enforced() {
        let d = data(8);
        // same order, different images
        match d.verify_pair_ranks(&[d.aut(0, 3).unwrap()], &[d.aut(0, 5).unwrap()]) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
        // different orders
        match d.verify_pair_ranks(&[], &[d.aut(0, 3).unwrap()]) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
        // non-unit second coordinate is rejected at construction
        match d.aut(0, 2) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
    }

    #[test]
    fn subgroup_enumeration_matches_pairwise_closures() {
        // every subgroup of these tiny groups is 2-generated, so closing
        // all generator pairs is an independent complete enumeration
        for m in [3u64, 4, 6] {
            let d = data(m);
            let full = d.full_group();
            let mut naive: BTreeSet<Vec<KStarAut>> = BTreeSet::new();
            for &x in &full {
                for &y in &full {
                    naive.insert(d.close(&[x, y]));
                }
            }
            let listed: BTreeSet<Vec<KStarAut>> = d.all_subgroups().into_iter().collect();
            assert_eq!(listed, naive);
        }
    }

    #[test]
    fn subgroup_counts_for_small_orders() {
        // m = 3 gives the symmetric group on 3 letters: 6 subgroups
        assert_eq!(data(3).all_subgroups().len(), 6);
        assert_eq!(data(1).all_subgroups().len(), 1);
        // m = 4: Z/4 ⋊ Z/2 is dihedral of order 8: 10 subgroups
        assert_eq!(data(4).all_subgroups().len(), 10);
    }

    #[test]
    fn bucket_sweep_is_clean_when_order_and_unit_exponent_are_coprime() {
        // when gcd(m, exponent of (Z/m)^×) = 1 every (order, image) bucket
        // is a single conjugacy class, so rank agreement is forced
        for m in [1u64, 3, 5, 7, 11, 13, 15] {
            let s = data(m).bucket_sweep();
            assert!(s.all_equal, "rank disagreement inside a bucket at m = {}", m);
            assert!(s.orbit_dims_all_one, "orbit ideal of dim > 1 at m = {}", m);
        }
    }

    #[test]
    fn bucket_sweep_finds_the_known_rank_collisions() {
        // these orders have non-conjugate subgroups with the same order
        // and image but different ranks; the orbit-ideal dimensions are
        // still all 1 (that half of the argument is unconditional)
        for m in [4u64, 6, 9, 21] {
            let s = data(m).bucket_sweep();
            assert!(!s.all_equal, "expected a rank collision at m = {}", m);
            assert!(s.orbit_dims_all_one, "orbit ideal of dim > 1 at m = {}", m);
        }
    }

    #[test]
    #[ignore = "minutes-long sweep over every m; run with --ignored to refresh the clean/failing split"]
    fn full_bucket_sweep_through_24() {
        for m in 1..=24u64 {
            let s = data(m).bucket_sweep();
            let clean = ![4, 6, 8, 9, 10, 12, 14, 16, 18, 20, 21, 22, 24].contains(&m);
            assert_eq!(
                s.all_equal, clean,
                "sweep at m = {} returned all_equal = {} ({} subgroups, {} pairs)",
                m, s.all_equal, s.subgroup_count, s.pair_count
            );
            assert!(s.orbit_dims_all_one, "orbit ideal of dim > 1 at m = {}", m);
        }
    }

    #[test]
    fn rank_collisions_at_odd_orders_are_real() {
        // m = 9: the cyclic group ⟨(1,4)⟩ of order 9 fixes only δ_0 (one
        // character orbit), while the elementary abelian {0,3,6}×⟨4⟩ of
        // the same order and image fixes a 3-dimensional space
        let d = data(9);
        let rep = d
            .verify_pair_ranks(
                &[d.aut(1, 4).unwrap()],
                &[d.aut(3, 1).unwrap(), d.aut(0, 4).unwrap()],
            )
            .unwrap();
        assert_eq!(rep.subgroup_order, 9);
        assert_eq!(rep.image, vec![1, 4, 7]);
        assert_eq!((rep.rank_first, rep.rank_second), (1, 3));
        assert!(!rep.equal);
        // m = 21: both subgroups cyclic of order 3, both meeting the
        // twist subgroup trivially, same image ⟨4⟩ — ranks still differ
        // (the order-3 basis component sees the twist but not the unit)
        let d = data(21);
        let rep = d
            .verify_pair_ranks(&[d.aut(1, 4).unwrap()], &[d.aut(0, 4).unwrap()])
            .unwrap();
        assert_eq!(rep.subgroup_order, 3);
        assert_eq!((rep.rank_first, rep.rank_second), (7, 9));
        assert!(!rep.equal);
        // the projector oracle confirms both ranks
        assert_eq!(projector_rank_oracle(&d, &[d.aut(1, 4).unwrap()]), 7);
        assert_eq!(projector_rank_oracle(&d, &[d.aut(0, 4).unwrap()]), 9);
    }

    #[test]
    fn residual_ranks_sum_to_total_and_split_by_divisor() {
        let d = data(12);
        // trivial subgroup: per-divisor ranks are the component sizes
        assert_eq!(
            d.residual_fixed_ranks(&[]),
            component_dimensions(12)
                .into_iter()
                .collect::<Vec<(u64, u64)>>()
        );
        assert_eq!(component_dimensions(12).iter().map(|&(_, f)| f).sum::<u64>(), 12);
        for gens in [
            vec![d.aut(0, 5).unwrap()],
            vec![d.aut(1, 7).unwrap()],
            vec![d.aut(4, 1).unwrap(), d.aut(0, 11).unwrap()],
        ] {
            let total = d.fixed_rank(&gens);
            let split: u64 = d.residual_fixed_ranks(&gens).iter().map(|&(_, r)| r).sum();
            assert_eq!(total, split);
        }
    }

    #[test]
    fn orbit_ideal_dimensions() {
        // m = 5 with a full-length unit orbit
        let d = data(5);
        let rep = d.orbit_ideal_report(&[d.aut(0, 2).unwrap()]).unwrap();
        assert_eq!(rep.orbits, vec![vec![1, 2, 3, 4]]);
        assert_eq!(rep.dims, vec![1]);
        assert!(rep.all_one);
        // m = 8 with two orbits, one of them under a twisted generator
        let d = data(8);
        let rep = d.orbit_ideal_report(&[d.aut(4, 3).unwrap()]).unwrap();
        assert_eq!(rep.orbits, vec![vec![1, 3], vec![5, 7]]);
        assert_eq!(rep.dims, vec![1, 1]);
        assert!(rep.all_one);
        // a subgroup containing a pure twist is rejected
        match d.orbit_ideal_report(&[d.aut(2, 1).unwrap()]) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
    }

    #[test]
    fn cyclic_data_validates_prime_coprimality() {
        assert!(CyclicData::new(9, Some(2)).is_ok());
        match CyclicData::new(9, Some(3)) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
        match CyclicData::new(0, None) {
            Err(Error::PreconditionViolated(_)) => {}
            other => panic!("expected a precondition error, got {:?}", other),
        }
    }
}
