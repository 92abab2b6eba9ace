use std::fmt;

use crate::error::{Error, Result};

/// Permutation of {0..degree-1}, stored as the image array: `images[i]` is
/// where point `i` goes. Composition follows function application,
/// `(a * b)(x) = a(b(x))`, i.e. `b` acts first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::Parse {
                    line: 0,
                    msg: "image array is not a bijection".into(),
                });
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        Perm { images }
    }

    /// Conjugate `self^g = g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().mul(self).mul(g)
    }

    pub fn order(&self) -> usize {
        // lcm of cycle lengths
        let mut ord = 1usize;
        for cycle in self.cycles() {
            ord = num_integer::lcm(ord, cycle.len());
        }
        ord
    }

    pub fn pow(&self, mut e: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each rotated to start at its minimal point,
    /// sorted by that starting point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parse disjoint-cycle notation like `(0 1)(2 3)` against a fixed degree.
    /// `()` and the empty string denote the identity. Points may be separated
    /// by whitespace or commas. Cycles must be disjoint.
    pub fn parse_cycles(s: &str, degree: usize, line: usize) -> Result<Perm> {
        let err = |msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let mut rest = s.trim();
        if rest.is_empty() {
            return Ok(Perm { images });
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err(&format!("expected '(' in cycle string, found {rest:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| err("unbalanced '(' in cycle string"))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: u32 = tok
                    .parse()
                    .map_err(|_| err(&format!("bad point {tok:?} in cycle")))?;
                if p as usize >= degree {
                    return Err(err(&format!("point {p} out of range for degree {degree}")));
                }
                if moved[p as usize] {
                    return Err(err(&format!("point {p} appears in two cycles")));
                }
                moved[p as usize] = true;
                cycle.push(p);
            }
            if cycle.len() == 1 {
                return Err(err("length-1 cycle is not allowed"));
            }
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                images[from] = to;
            }
        }
        Ok(Perm { images })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_inverse() {
        let id = Perm::identity(5);
        assert!(id.is_identity());
        let p = Perm::parse_cycles("(0 1 2 3 4)", 5, 0).unwrap();
        assert!(p.mul(&p.inverse()).is_identity());
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // a = (0 1), b = (1 2); (a*b)(2) = a(b(2)) = a(1) = 0
        let a = Perm::parse_cycles("(0 1)", 3, 0).unwrap();
        let b = Perm::parse_cycles("(1 2)", 3, 0).unwrap();
        assert_eq!(a.mul(&b).apply(2), 0);
        assert_eq!(b.mul(&a).apply(2), 1);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        // (0 1 2)^g with g = (0 3) should be (3 1 2)
        let x = Perm::parse_cycles("(0 1 2)", 4, 0).unwrap();
        let g = Perm::parse_cycles("(0 3)", 4, 0).unwrap();
        let want = Perm::parse_cycles("(3 1 2)", 4, 0).unwrap();
        assert_eq!(x.conjugate_by(&g), want);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse_cycles("(0 1", 4, 7).is_err());
        assert!(Perm::parse_cycles("(0 9)", 4, 7).is_err());
        assert!(Perm::parse_cycles("(0 1)(1 2)", 4, 7).is_err());
        assert!(Perm::parse_cycles("(0)", 4, 7).is_err());
        assert!(Perm::parse_cycles("0 1", 4, 7).is_err());
    }

    #[test]
    fn order_matches_brute_force() {
        let p = Perm::parse_cycles("(0 1)(2 3 4)", 6, 0).unwrap();
        // brute-force oracle: repeated multiplication until identity
        let mut q = p.clone();
        let mut n = 1;
        while !q.is_identity() {
            q = q.mul(&p);
            n += 1;
        }
        assert_eq!(p.order(), n);
        assert_eq!(n, 6);
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Perm> {
        Just(()).prop_perturb(move |_, mut rng| {
            // Fisher-Yates with proptest's rng keeps shrinking sane enough
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for i in (1..degree).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                images.swap(i, j);
            }
            Perm { images }
        })
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(p in arb_perm(9)) {
            let s = p.to_string();
            let q = Perm::parse_cycles(&s, 9, 0).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn associativity(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn pow_matches_repeated_mul(p in arb_perm(8), e in 0usize..20) {
            let mut acc = Perm::identity(8);
            for _ in 0..e { acc = acc.mul(&p); }
            prop_assert_eq!(p.pow(e), acc);
        }
    }
}
