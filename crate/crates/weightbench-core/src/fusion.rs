use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::chartab::require_prime;
use crate::error::Result;
use crate::group::{p_part, GroupHom, PermGroup};

/// One conjugacy class of p-subgroups, carried by a fully-normalized
/// representative inside the fixed Sylow subgroup.
pub struct SubgroupClass {
    pub rep: PermGroup,
    pub order: usize,
    /// number of G-conjugates of the representative
    pub class_size: usize,
    pub centric: bool,
    pub f_radical: bool,
    pub dade_radical: bool,
    pub normalizer: PermGroup,
    pub centralizer: PermGroup,
    /// N_G(Q) / Q.C_G(Q)
    pub automizer: PermGroup,
    pub automizer_proj: GroupHom,
}

pub struct FusionData {
    pub prime: u64,
    pub sylow: PermGroup,
    pub classes: Vec<SubgroupClass>,
    /// every subgroup of the Sylow, tagged with its class index
    pub members: Vec<(PermGroup, usize)>,
    /// leq[i][j]: some conjugate of rep_i lies inside rep_j
    pub leq: Vec<Vec<bool>>,
}

/// All subgroups of a p-group, found by extending each subgroup one index-p
/// step inside its normalizer (every subgroup sits under a maximal one, so
/// the level-by-level walk is exhaustive).
pub fn p_group_subgroups(p_group: &PermGroup, p: u64) -> Vec<PermGroup> {
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let trivial = PermGroup::trivial(p_group.degree());
    seen.insert(trivial.element_key());
    let mut all = vec![trivial.clone()];
    let mut level = vec![trivial];
    while !level.is_empty() {
        let mut next = Vec::new();
        for h in &level {
            let n = p_group.normalizer_of(h);
            for x in n.elements() {
                if h.contains(x) || !h.contains(&x.pow(p as usize)) {
                    continue;
                }
                let mut gens = h.gens().to_vec();
                gens.push(x.clone());
                let k = PermGroup::new(p_group.degree(), gens, p_group.cap())
                    .expect("subgroup closure cannot exceed the parent cap");
                debug_assert_eq!(k.order(), h.order() * p as usize);
                if seen.insert(k.element_key()) {
                    next.push(k.clone());
                    all.push(k);
                }
            }
        }
        level = next;
    }
    all.sort_by(|a, b| (a.order(), a.element_key()).cmp(&(b.order(), b.element_key())));
    all
}

/// Full G-conjugation orbit of a subgroup (members may leave the Sylow).
fn subgroup_orbit(group: &PermGroup, start: &PermGroup) -> Vec<PermGroup> {
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    seen.insert(start.element_key());
    let mut queue: VecDeque<PermGroup> = VecDeque::new();
    queue.push_back(start.clone());
    let mut orbit = vec![start.clone()];
    while let Some(h) = queue.pop_front() {
        for g in group.gens() {
            let img = group.conjugate_subgroup(&h, g);
            if seen.insert(img.element_key()) {
                orbit.push(img.clone());
                queue.push_back(img);
            }
        }
    }
    orbit
}

pub fn is_centric(group: &PermGroup, p: u64, q: &PermGroup) -> bool {
    let c = group.centralizer_of(q);
    p_part(c.order() as u64, p) == q.center().order() as u64
}

pub fn is_dade_radical(group: &PermGroup, p: u64, q: &PermGroup) -> Result<bool> {
    let n = group.normalizer_of(q);
    Ok(n.p_core(p)?.same_elements(q))
}

/// Q.C_G(Q) as a subgroup (both factors normalize each other inside N).
fn product_subgroup(degree: usize, cap: usize, a: &PermGroup, b: &PermGroup) -> PermGroup {
    let mut elems = Vec::with_capacity(a.order() * b.order());
    for x in a.elements() {
        for y in b.elements() {
            elems.push(x.mul(y));
        }
    }
    PermGroup::from_elements(degree, elems, cap)
}

pub fn automizer_of(group: &PermGroup, q: &PermGroup) -> Result<(PermGroup, GroupHom, PermGroup, PermGroup)> {
    let n = group.normalizer_of(q);
    let c = group.centralizer_of(q);
    let qc = product_subgroup(group.degree(), group.cap(), q, &c);
    let (aut, proj) = n.quotient(&qc)?;
    Ok((aut, proj, n, c))
}

pub fn is_f_radical(group: &PermGroup, p: u64, q: &PermGroup) -> Result<bool> {
    if !is_centric(group, p, q) {
        return Ok(false);
    }
    let (aut, _, _, _) = automizer_of(group, q)?;
    Ok(aut.p_core(p)?.order() == 1)
}

impl FusionData {
    pub fn build(group: &PermGroup, p: u64) -> Result<FusionData> {
        require_prime(p)?;
        let sylow = group.sylow_subgroup(p)?;
        let subgroups = p_group_subgroups(&sylow, p);
        let key_to_idx: std::collections::HashMap<Vec<Vec<u32>>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.element_key(), i))
            .collect();

        // orbit partition of the enumerated subgroups under G-conjugation
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut raw_classes: Vec<(PermGroup, usize)> = Vec::new(); // (fully normalized rep, orbit size)
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let orbit = subgroup_orbit(group, &subgroups[i]);
            let idx = raw_classes.len();
            let mut members_here: Vec<&PermGroup> = Vec::new();
            for h in &orbit {
                if let Some(&j) = key_to_idx.get(&h.element_key()) {
                    class_of[j] = idx;
                    members_here.push(&subgroups[j]);
                }
            }
            let rep = *members_here
                .iter()
                .max_by(|a, b| {
                    let na = sylow.normalizer_of(a).order();
                    let nb = sylow.normalizer_of(b).order();
                    // larger Sylow-normalizer wins; ties prefer the smaller key
                    na.cmp(&nb)
                        .then_with(|| b.element_key().cmp(&a.element_key()))
                })
                .expect("orbit contains its starting subgroup");
            raw_classes.push((rep.clone(), orbit.len()));
        }

        // order classes canonically before computing the per-class data
        let mut order_keys: Vec<usize> = (0..raw_classes.len()).collect();
        order_keys.sort_by(|&a, &b| {
            (raw_classes[a].0.order(), raw_classes[a].0.element_key())
                .cmp(&(raw_classes[b].0.order(), raw_classes[b].0.element_key()))
        });
        let mut new_idx = vec![0usize; raw_classes.len()];
        for (pos, &old) in order_keys.iter().enumerate() {
            new_idx[old] = pos;
        }
        let ordered: Vec<(PermGroup, usize)> =
            order_keys.iter().map(|&i| raw_classes[i].clone()).collect();
        let members: Vec<(PermGroup, usize)> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.clone(), new_idx[class_of[i]]))
            .collect();

        let classes: Result<Vec<SubgroupClass>> = ordered
            .par_iter()
            .map(|(rep, orbit_size)| {
                let centric = is_centric(group, p, rep);
                let (automizer, automizer_proj, normalizer, centralizer) =
                    automizer_of(group, rep)?;
                let f_radical = centric && automizer.p_core(p)?.order() == 1;
                let dade_radical = normalizer.p_core(p)?.same_elements(rep);
                Ok(SubgroupClass {
                    order: rep.order(),
                    class_size: *orbit_size,
                    centric,
                    f_radical,
                    dade_radical,
                    normalizer,
                    centralizer,
                    automizer,
                    automizer_proj,
                    rep: rep.clone(),
                })
            })
            .collect();
        let classes = classes?;

        // inclusion up to conjugacy: a member of class i inside rep_j
        let k = classes.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = members
                    .iter()
                    .filter(|(_, c)| *c == i)
                    .any(|(h, _)| h.is_subgroup_of(&classes[j].rep));
            }
        }

        Ok(FusionData {
            prime: p,
            sylow,
            classes,
            members,
            leq,
        })
    }

    pub fn class_index_of_subgroup(&self, q: &PermGroup) -> Option<usize> {
        let key = q.element_key();
        self.members
            .iter()
            .find(|(h, _)| h.element_key() == key)
            .map(|&(_, c)| c)
    }

    pub fn f_radical_indices(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].f_radical)
            .collect()
    }

    pub fn dade_radical_indices(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].dade_radical)
            .collect()
    }
}

/// Number of fusion morphisms from R into Q: transporter size over |C_G(R)|.
pub fn morphism_count(group: &PermGroup, q: &PermGroup, r: &PermGroup) -> usize {
    let transporter = group
        .elements()
        .iter()
        .filter(|g| r.gens().iter().all(|x| q.contains(&x.conjugate_by(g))))
        .count();
    let c = group.centralizer_of(r).order();
    assert_eq!(transporter % c, 0, "transporter must split into centralizer cosets");
    transporter / c
}

#[derive(serde::Serialize, Clone, Debug)]
pub struct AxiomReport {
    pub classes_checked: usize,
    pub divisibility_ok: bool,
    pub sylow_axiom_ok: bool,
    pub extension_axiom_ok: bool,
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.divisibility_ok && self.sylow_axiom_ok && self.extension_axiom_ok
    }
}

/// Validates the Frobenius-category axioms for the group fusion system.
/// Failures indicate implementation bugs, never mathematical ones.
pub fn validate_frobenius_axioms(group: &PermGroup, p: u64) -> Result<AxiomReport> {
    let fusion = FusionData::build(group, p)?;
    let sylow = &fusion.sylow;
    let exhaustive = sylow.order() <= 256;

    // divisibility / composition: inclusions are morphisms, and transporters
    // compose (T(R,Q) * T(Q,S) lands in T(R,S)); checked on class reps
    let mut divisibility_ok = true;
    for ci in &fusion.classes {
        for cj in &fusion.classes {
            if ci.rep.is_subgroup_of(&cj.rep) && morphism_count(group, &cj.rep, &ci.rep) == 0 {
                divisibility_ok = false;
            }
        }
    }
    'comp: for ci in &fusion.classes {
        for cj in &fusion.classes {
            for ck in &fusion.classes {
                // sample one transporter element per pair; full products at
                // desk scale explode without adding coverage
                let g = group.elements().iter().find(|g| {
                    ci.rep.gens().iter().all(|x| cj.rep.contains(&x.conjugate_by(g)))
                });
                let h = group.elements().iter().find(|h| {
                    cj.rep.gens().iter().all(|x| ck.rep.contains(&x.conjugate_by(h)))
                });
                if let (Some(g), Some(h)) = (g, h) {
                    let gh = g.mul(h);
                    if !ci.rep.gens().iter().all(|x| ck.rep.contains(&x.conjugate_by(&gh))) {
                        divisibility_ok = false;
                        break 'comp;
                    }
                }
            }
        }
    }

    // Sylow axiom: for fully normalized Q, Aut_P(Q) is Sylow in Aut_F(Q),
    // i.e. |N_P(Q)|/|C_P(Q)| equals the p-part of |N_G(Q)|/|C_G(Q)|
    let mut sylow_axiom_ok = true;
    for class in &fusion.classes {
        let q = &class.rep;
        let np = sylow.normalizer_of(q).order() as u64;
        let cp = sylow.centralizer_of(q).order() as u64;
        let aut_f = class.normalizer.order() as u64 / class.centralizer.order() as u64;
        if np / cp != p_part(aut_f, p) {
            sylow_axiom_ok = false;
        }
    }

    // extension axiom: each morphism c_g: Q -> Q^g with fully normalized
    // target extends over N_phi after an inner correction from C_G(Q)
    let mut extension_axiom_ok = true;
    let fn_key_of_class: Vec<Vec<Vec<u32>>> =
        fusion.classes.iter().map(|c| c.rep.element_key()).collect();
    let sources: Vec<&PermGroup> = if exhaustive {
        fusion.members.iter().map(|(h, _)| h).collect()
    } else {
        fusion.classes.iter().map(|c| &c.rep).collect()
    };
    'ext: for q in sources {
        let npq: Vec<_> = sylow
            .normalizer_of(q)
            .elements()
            .to_vec();
        let cgq = group.centralizer_of(q);
        for g in group.elements() {
            let img = group.conjugate_subgroup(q, g);
            if !img.is_subgroup_of(sylow) {
                continue;
            }
            // only targets that are the fully-normalized class representative
            let Some(class_idx) = fusion.class_index_of_subgroup(&img) else {
                continue;
            };
            if img.element_key() != fn_key_of_class[class_idx] {
                continue;
            }
            let n_img = sylow.normalizer_of(&img);
            let c_img = group.centralizer_of(&img);
            let nc = product_subgroup(group.degree(), group.cap(), &n_img, &c_img);
            let n_phi: Vec<_> = npq
                .iter()
                .filter(|x| nc.contains(&x.conjugate_by(g)))
                .cloned()
                .collect();
            let extends = cgq.elements().iter().any(|c| {
                let h = c.mul(g);
                n_phi.iter().all(|x| sylow.contains(&x.conjugate_by(&h)))
            });
            if !extends {
                extension_axiom_ok = false;
                break 'ext;
            }
        }
    }

    Ok(AxiomReport {
        classes_checked: fusion.classes.len(),
        divisibility_ok,
        sylow_axiom_ok,
        extension_axiom_ok,
        exhaustive,
    })
}

/// Property behind the normalizer sub-system compatibility: for a fully
/// normalized subgroup U, every radical class of the fusion system of
/// N_G(U) contains U, and its representative is centric in the big system.
pub fn normalizer_subsystem_radical_check(group: &PermGroup, p: u64) -> Result<bool> {
    let fusion = FusionData::build(group, p)?;
    for class in &fusion.classes {
        let u = &class.rep;
        let n = &class.normalizer;
        let sub = FusionData::build(n, p)?;
        for sc in sub.classes.iter().filter(|c| c.f_radical) {
            if !u.is_subgroup_of(&sc.rep) {
                return Ok(false);
            }
            if !is_centric(group, p, &sc.rep) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
