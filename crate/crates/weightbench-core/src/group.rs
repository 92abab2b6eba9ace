use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 20000;

/// Finite permutation group, closed eagerly at construction. Element list is
/// kept sorted (lex on image arrays), which fixes every "canonical order" in
/// the crate: the identity is always `elements()[0]`.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    cap: usize,
    elements: Vec<Perm>,
    classes: OnceLock<Classes>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Perm,
    pub size: usize,
    pub elem_order: usize,
}

#[derive(Clone)]
pub struct Classes {
    pub list: Vec<ConjClass>,
    class_of: HashMap<Perm, usize>,
}

fn close_gens(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue: VecDeque<Perm> = VecDeque::new();
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("generator degree {} does not match {}", g.degree(), degree),
                });
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let elements = close_gens(degree, &gens, cap)?;
        Ok(PermGroup {
            degree,
            gens,
            cap,
            elements,
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, vec![], DEFAULT_ELEMENT_CAP).unwrap()
    }

    /// Build from a known element set (must already be closed); picks a short
    /// generating set greedily so that later generator-based scans stay cheap.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>, cap: usize) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let set: HashSet<Perm> = elements.iter().cloned().collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut have: HashSet<Perm> = HashSet::new();
        have.insert(Perm::identity(degree));
        for e in &elements {
            if !have.contains(e) {
                gens.push(e.clone());
                have = close_gens(degree, &gens, cap.max(elements.len() + 1))
                    .expect("closure of a subset of a closed set cannot exceed it")
                    .into_iter()
                    .collect();
            }
        }
        debug_assert_eq!(have.len(), set.len());
        PermGroup {
            degree,
            gens,
            cap,
            elements,
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, parent: &PermGroup) -> bool {
        self.degree == parent.degree && self.gens.iter().all(|g| parent.contains(g))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }

    /// Canonical key for subgroup identity/dedup: the sorted element list.
    pub fn element_key(&self) -> Vec<Vec<u32>> {
        self.elements.iter().map(|p| p.images().to_vec()).collect()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn conjugacy_classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let mut class_of: HashMap<Perm, usize> = HashMap::new();
            let mut list: Vec<ConjClass> = Vec::new();
            for e in &self.elements {
                if class_of.contains_key(e) {
                    continue;
                }
                // orbit of e under conjugation by generators
                let mut orbit: HashSet<Perm> = HashSet::new();
                orbit.insert(e.clone());
                let mut queue = vec![e.clone()];
                while let Some(x) = queue.pop() {
                    for g in &self.gens {
                        let y = x.conjugate_by(g);
                        if orbit.insert(y.clone()) {
                            queue.push(y);
                        }
                    }
                }
                let idx = list.len();
                let rep = orbit.iter().min().unwrap().clone();
                list.push(ConjClass {
                    elem_order: rep.order(),
                    size: orbit.len(),
                    rep,
                });
                for x in orbit {
                    class_of.insert(x, idx);
                }
            }
            // deterministic order: element order, class size, then minimal rep
            let mut perm_idx: Vec<usize> = (0..list.len()).collect();
            perm_idx.sort_by(|&a, &b| {
                let ka = (&list[a].elem_order, &list[a].size, &list[a].rep);
                let kb = (&list[b].elem_order, &list[b].size, &list[b].rep);
                ka.cmp(&kb)
            });
            let mut new_pos = vec![0usize; list.len()];
            for (new_i, &old_i) in perm_idx.iter().enumerate() {
                new_pos[old_i] = new_i;
            }
            let list: Vec<ConjClass> = perm_idx.iter().map(|&i| list[i].clone()).collect();
            for v in class_of.values_mut() {
                *v = new_pos[*v];
            }
            Classes { list, class_of }
        })
    }

    pub fn class_index_of(&self, x: &Perm) -> usize {
        *self
            .conjugacy_classes()
            .class_of
            .get(x)
            .expect("element not in group")
    }

    pub fn centralizer_of(&self, sub: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| sub.gens.iter().all(|s| g.mul(s) == s.mul(g)))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elems, self.cap)
    }

    pub fn centralizer_of_element(&self, x: &Perm) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| g.mul(x) == x.mul(g))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elems, self.cap)
    }

    pub fn normalizer_of(&self, sub: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| sub.gens.iter().all(|s| sub.contains(&s.conjugate_by(g))))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elems, self.cap)
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer_of(self)
    }

    pub fn conjugate_subgroup(&self, sub: &PermGroup, g: &Perm) -> PermGroup {
        let elems: Vec<Perm> = sub.elements.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::from_elements(self.degree, elems, self.cap)
    }

    /// First conjugating element in canonical order with `a^g = b`, if any.
    /// For `a` = `b` this returns the identity.
    pub fn conjugating_element(&self, a: &PermGroup, b: &PermGroup) -> Option<Perm> {
        if a.order() != b.order() {
            return None;
        }
        'outer: for g in &self.elements {
            for s in &a.gens {
                if !b.contains(&s.conjugate_by(g)) {
                    continue 'outer;
                }
            }
            return Some(g.clone());
        }
        None
    }

    pub fn are_conjugate_subgroups(&self, a: &PermGroup, b: &PermGroup) -> bool {
        self.conjugating_element(a, b).is_some()
    }

    pub fn sylow_subgroup(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let target = p_part(self.order() as u64, p) as usize;
        let mut h = PermGroup::trivial(self.degree);
        while h.order() < target {
            let n = self.normalizer_of(&h);
            // p | [N:H] whenever H is a p-subgroup short of Sylow, so a p-element
            // of N outside H always exists; take the first in canonical order.
            let mut extended = false;
            for x in n.elements() {
                let ord = x.order() as u64;
                let pp = p_part(ord, p);
                if pp == 1 {
                    continue;
                }
                let xp = x.pow((ord / pp) as usize);
                if !h.contains(&xp) {
                    let mut gens = h.gens().to_vec();
                    gens.push(xp);
                    h = PermGroup::new(self.degree, gens, self.cap)?;
                    extended = true;
                    break;
                }
            }
            assert!(extended, "sylow climb stalled below the p-part");
        }
        Ok(h)
    }

    pub fn p_core(&self, p: u64) -> Result<PermGroup> {
        let s = self.sylow_subgroup(p)?;
        let mut core: Vec<Perm> = s.elements().to_vec();
        for g in &self.elements {
            if core.len() == 1 {
                break;
            }
            let image: HashSet<Perm> = s.elements().iter().map(|x| x.conjugate_by(g)).collect();
            core.retain(|x| image.contains(x));
        }
        Ok(PermGroup::from_elements(self.degree, core, self.cap))
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent
            .gens
            .iter()
            .all(|g| self.gens.iter().all(|n| self.contains(&n.conjugate_by(g))))
    }

    /// Quotient by a normal subgroup, realized on left cosets with the
    /// left-multiplication action, plus the projection homomorphism.
    pub fn quotient(&self, normal: &PermGroup) -> Result<(PermGroup, GroupHom)> {
        if !normal.is_subgroup_of(self) {
            return Err(Error::NotASubgroup("quotient kernel".into()));
        }
        if !normal.is_normal_in(self) {
            return Err(Error::NotNormal);
        }
        // index cosets by their minimal element, points sorted by that key
        let mut coset_of: HashMap<Perm, usize> = HashMap::new();
        let mut reps: Vec<Perm> = Vec::new();
        for x in &self.elements {
            if coset_of.contains_key(x) {
                continue;
            }
            // x is minimal in its coset: elements are scanned in sorted order
            let idx = reps.len();
            reps.push(x.clone());
            for n in normal.elements() {
                coset_of.insert(x.mul(n), idx);
            }
        }
        let k = reps.len();
        assert_eq!(k * normal.order(), self.order());
        let project = |g: &Perm| -> Perm {
            let images: Vec<u32> = reps
                .iter()
                .map(|r| coset_of[&g.mul(r)] as u32)
                .collect();
            Perm::from_images(images).expect("coset action image must be a bijection")
        };
        let gen_images: Vec<Perm> = self.gens.iter().map(|g| project(g)).collect();
        let q = PermGroup::new(k.max(1), gen_images.clone(), self.cap)?;
        assert_eq!(q.order(), k);
        let hom = GroupHom::new(self, &q, gen_images)?;
        Ok((q, hom))
    }
}

/// Homomorphism between permutation groups, stored elementwise. Construction
/// verifies multiplicativity over every (element, generator) pair, which
/// pins the whole multiplication table by induction on word length.
#[derive(Clone)]
pub struct GroupHom {
    gen_images: Vec<Perm>,
    map: HashMap<Perm, Perm>,
    source_order: usize,
    target_degree: usize,
}

impl GroupHom {
    pub fn new(source: &PermGroup, target: &PermGroup, gen_images: Vec<Perm>) -> Result<Self> {
        if gen_images.len() != source.gens().len() {
            return Err(Error::NotAHomomorphism);
        }
        for img in &gen_images {
            if !target.contains(img) {
                return Err(Error::NotAHomomorphism);
            }
        }
        let mut map: HashMap<Perm, Perm> = HashMap::new();
        map.insert(source.identity(), target.identity());
        let mut queue: VecDeque<Perm> = VecDeque::new();
        queue.push_back(source.identity());
        while let Some(x) = queue.pop_front() {
            let fx = map[&x].clone();
            for (g, fg) in source.gens().iter().zip(&gen_images) {
                let y = x.mul(g);
                let fy = fx.mul(fg);
                match map.get(&y) {
                    Some(existing) => {
                        if *existing != fy {
                            return Err(Error::NotAHomomorphism);
                        }
                    }
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        assert_eq!(map.len(), source.order());
        Ok(GroupHom {
            gen_images,
            map,
            source_order: source.order(),
            target_degree: target.degree(),
        })
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn apply(&self, x: &Perm) -> Perm {
        self.map.get(x).expect("element not in hom domain").clone()
    }

    pub fn kernel_size(&self) -> usize {
        let id = Perm::identity(self.target_degree);
        self.map.values().filter(|v| **v == id).count()
    }

    pub fn image_size(&self) -> usize {
        let set: HashSet<&Perm> = self.map.values().collect();
        set.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.image_size() == self.source_order
    }

    /// Checks this is an automorphism of `group` (bijective self-map).
    pub fn is_automorphism_of(&self, group: &PermGroup) -> bool {
        self.source_order == group.order()
            && self.is_bijective()
            && self.map.values().all(|v| group.contains(v))
    }

    /// Some h with self = conjugation by h on `group`, scanning canonically.
    pub fn inner_witness(&self, group: &PermGroup) -> Option<Perm> {
        group
            .elements()
            .iter()
            .find(|h| {
                group
                    .gens()
                    .iter()
                    .all(|g| self.apply(g) == g.conjugate_by(h))
            })
            .cloned()
    }

    /// Order of the image of this automorphism in Out(group): the least
    /// m >= 1 with self^m inner.
    pub fn order_in_out(&self, group: &PermGroup) -> usize {
        let mut power = self.clone();
        let mut m = 1usize;
        loop {
            if power.inner_witness(group).is_some() {
                return m;
            }
            power = self.compose_auto(&power);
            m += 1;
            assert!(m <= group.order(), "automorphism order runaway");
        }
    }

    /// Compose two self-maps of one group: (self . other)(x) = self(other(x)).
    pub fn compose_auto(&self, other: &GroupHom) -> GroupHom {
        let map: HashMap<Perm, Perm> = other
            .map
            .iter()
            .map(|(k, v)| (k.clone(), self.apply(v)))
            .collect();
        let gen_images = other.gen_images.iter().map(|g| self.apply(g)).collect();
        GroupHom {
            gen_images,
            map,
            source_order: other.source_order,
            target_degree: self.target_degree,
        }
    }

    pub fn apply_to_subgroup(&self, sub: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = sub.elements().iter().map(|x| self.apply(x)).collect();
        PermGroup::from_elements(self.target_degree, elems, sub.cap())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut pp = 1u64;
    while n % p == 0 {
        n /= p;
        pp *= p;
    }
    pp
}

pub fn nu_p(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}
