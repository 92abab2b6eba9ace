use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::FusionData;
use crate::group::PermGroup;
use crate::perm::Perm;

/// Strictly increasing sequence of p-subgroups; the canonical representatives
/// we store always live inside the fixed Sylow subgroup.
#[derive(Clone)]
pub struct Chain {
    pub members: Vec<PermGroup>,
}

pub type ChainKey = Vec<Vec<Vec<u32>>>;

impl Chain {
    /// number of proper steps (a single subgroup has length 0)
    pub fn length(&self) -> usize {
        self.members.len() - 1
    }

    pub fn top(&self) -> &PermGroup {
        self.members.last().expect("chains are never empty")
    }

    pub fn key(&self) -> ChainKey {
        self.members.iter().map(|m| m.element_key()).collect()
    }
}

pub struct ChainClass {
    pub rep: Chain,
    pub orbit_size: usize,
    pub normalizer: PermGroup,
    pub all_centric: bool,
    /// every member is normal in the top member
    pub in_normal_series: bool,
    /// member i equals O_p of the normalizer of the chain truncated at i, for all i
    pub dade_radical_chain: bool,
}

impl ChainClass {
    pub fn length(&self) -> usize {
        self.rep.length()
    }
}

/// Joint normalizer of every member.
pub fn chain_normalizer(group: &PermGroup, members: &[PermGroup]) -> PermGroup {
    let elems: Vec<Perm> = group
        .elements()
        .iter()
        .filter(|g| {
            members
                .iter()
                .all(|m| m.gens().iter().all(|x| m.contains(&x.conjugate_by(g))))
        })
        .cloned()
        .collect();
    PermGroup::from_elements(group.degree(), elems, group.cap())
}

fn conjugated_key(members: &[PermGroup], g: &Perm) -> ChainKey {
    members
        .iter()
        .map(|m| {
            let mut elems: Vec<Vec<u32>> = m
                .elements()
                .iter()
                .map(|x| x.conjugate_by(g).images().to_vec())
                .collect();
            elems.sort();
            elems
        })
        .collect()
}

/// Canonical representative of the conjugacy class of a chain: smallest key
/// over all conjugates whose top (hence every member) lies inside the Sylow.
fn canonicalize(group: &PermGroup, sylow: &PermGroup, members: &[PermGroup]) -> (ChainKey, Chain) {
    let top = members.last().expect("chains are never empty");
    let mut best: Option<(ChainKey, &Perm)> = None;
    for g in group.elements() {
        if !top.gens().iter().all(|x| sylow.contains(&x.conjugate_by(g))) {
            continue;
        }
        let key = conjugated_key(members, g);
        if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
            best = Some((key, g));
        }
    }
    let (key, g) = best.expect("every chain of p-subgroups conjugates into the fixed Sylow");
    let chain = Chain {
        members: members
            .iter()
            .map(|m| group.conjugate_subgroup(m, g))
            .collect(),
    };
    (key, chain)
}

/// Indices where the stepwise radical condition fails.
fn stepwise_bad_indices(group: &PermGroup, p: u64, members: &[PermGroup]) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for i in 0..members.len() {
        let n = chain_normalizer(group, &members[..=i]);
        if !n.p_core(p)?.same_elements(&members[i]) {
            bad.push(i);
        }
    }
    Ok(bad)
}

fn build_class(
    group: &PermGroup,
    fusion: &FusionData,
    chain: Chain,
) -> Result<ChainClass> {
    let normalizer = chain_normalizer(group, &chain.members);
    let orbit_size = group.order() / normalizer.order();
    let all_centric = chain.members.iter().all(|m| {
        fusion
            .class_index_of_subgroup(m)
            .map(|c| fusion.classes[c].centric)
            .unwrap_or(false)
    });
    let top = chain.top().clone();
    let in_normal_series = chain.members.iter().all(|m| m.is_normal_in(&top));
    let dade_radical_chain =
        stepwise_bad_indices(group, fusion.prime, &chain.members)?.is_empty();
    Ok(ChainClass {
        rep: chain,
        orbit_size,
        normalizer,
        all_centric,
        in_normal_series,
        dade_radical_chain,
    })
}

fn sort_and_build(
    group: &PermGroup,
    fusion: &FusionData,
    seen: BTreeMap<ChainKey, Chain>,
) -> Result<Vec<ChainClass>> {
    let mut entries: Vec<(ChainKey, Chain)> = seen.into_iter().collect();
    entries.sort_by(|a, b| (a.1.members.len(), &a.0).cmp(&(b.1.members.len(), &b.0)));
    entries
        .into_par_iter()
        .map(|(_, chain)| build_class(group, fusion, chain))
        .collect()
}

/// All conjugacy classes of strictly increasing subgroup chains inside the
/// Sylow, optionally restricted to centric members.  Enumeration walks
/// downward from each possible top, so every class is seen through its
/// representatives contained in the Sylow.
pub fn enumerate_regular_chains(
    group: &PermGroup,
    fusion: &FusionData,
    centric_only: bool,
    cap: usize,
) -> Result<Vec<ChainClass>> {
    let pool: Vec<&PermGroup> = fusion
        .members
        .iter()
        .filter(|(_, c)| !centric_only || fusion.classes[*c].centric)
        .map(|(h, _)| h)
        .collect();
    let mut seen: BTreeMap<ChainKey, Chain> = BTreeMap::new();
    let mut constructed: usize = 0;
    for top in &pool {
        // descending extension lists, reversed into chains on canonicalization
        let mut stack: Vec<Vec<&PermGroup>> = vec![vec![top]];
        while let Some(desc) = stack.pop() {
            constructed += 1;
            if constructed > cap {
                return Err(Error::ChainCapExceeded { cap });
            }
            let members: Vec<PermGroup> = desc.iter().rev().map(|m| (*m).clone()).collect();
            let (key, chain) = canonicalize(group, &fusion.sylow, &members);
            seen.entry(key).or_insert(chain);
            let bottom = *desc.last().expect("descent lists are never empty");
            for v in &pool {
                if v.order() < bottom.order() && v.is_subgroup_of(bottom) {
                    let mut next = desc.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
    }
    sort_and_build(group, fusion, seen)
}

/// Classical radical chains: start at O_p(G) and keep member i equal to
/// O_p of the normalizer of the chain up to i.
pub fn enumerate_dade_chains(
    group: &PermGroup,
    fusion: &FusionData,
    cap: usize,
) -> Result<Vec<ChainClass>> {
    let p = fusion.prime;
    let bottom = group.p_core(p)?;
    let mut seen: BTreeMap<ChainKey, Chain> = BTreeMap::new();
    let mut constructed: usize = 0;
    // upward extension; the stepwise condition is prefix-closed, so checking
    // only the new index keeps exactly the valid chains
    let mut stack: Vec<Vec<PermGroup>> = vec![vec![bottom]];
    while let Some(members) = stack.pop() {
        constructed += 1;
        if constructed > cap {
            return Err(Error::ChainCapExceeded { cap });
        }
        let n = chain_normalizer(group, &members);
        if !n.p_core(p)?.same_elements(members.last().expect("nonempty")) {
            continue;
        }
        let (key, chain) = canonicalize(group, &fusion.sylow, &members);
        seen.entry(key).or_insert(chain);
        let top = members.last().expect("nonempty");
        for (u, _) in &fusion.members {
            if top.order() < u.order() && top.is_subgroup_of(u) {
                let mut next = members.clone();
                next.push(u.clone());
                stack.push(next);
            }
        }
    }
    sort_and_build(group, fusion, seen)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairMode {
    /// matches chains having a member that is not normal in the top
    Tau,
    /// matches normal-series chains failing the stepwise radical condition
    Varpi,
}

pub struct ChainPairing {
    pub mode: PairMode,
    /// partner class index, None for survivors
    pub partner: Vec<Option<usize>>,
    pub survivors: Vec<usize>,
}

fn tau_partner(chain: &Chain) -> Vec<PermGroup> {
    let members = &chain.members;
    let top = chain.top();
    let f = (0..members.len())
        .find(|&a| !members[a].is_normal_in(top))
        .expect("tau applies only off the normal-series set");
    let j = (f + 1..members.len())
        .find(|&j| !members[f].is_normal_in(&members[j]))
        .expect("non-normality in the top gives a first failing level");
    let relnorm = members[j].normalizer_of(&members[f]);
    assert!(
        relnorm.order() < members[j].order(),
        "relative normalizer must be proper when normality fails"
    );
    assert!(
        members[j - 1].is_subgroup_of(&relnorm),
        "the previous member always normalizes the failing one"
    );
    let mut partner: Vec<PermGroup> = members.clone();
    if relnorm.same_elements(&members[j - 1]) {
        // normalizers grow strictly in p-groups, so j-1 can never be f here
        assert_ne!(j - 1, f);
        partner.remove(j - 1);
    } else {
        partner.insert(j, relnorm);
    }
    partner
}

fn varpi_partner(group: &PermGroup, p: u64, chain: &Chain) -> Result<Vec<PermGroup>> {
    let members = &chain.members;
    let bad = stepwise_bad_indices(group, p, members)?;
    let j = *bad.last().expect("varpi applies only off the radical set");
    let r = chain_normalizer(group, &members[..=j]).p_core(p)?;
    assert!(
        members[j].is_subgroup_of(&r) && members[j].order() < r.order(),
        "stepwise failure means the member sits strictly under the core"
    );
    let mut partner: Vec<PermGroup> = members.clone();
    if j + 1 < members.len() && members[j + 1].same_elements(&r) {
        partner.remove(j + 1);
    } else {
        if j + 1 < members.len() {
            assert!(
                r.is_subgroup_of(&members[j + 1]),
                "the chain core embeds into the next member"
            );
        }
        partner.insert(j + 1, r);
    }
    Ok(partner)
}

/// Pairs off the centric chain classes that the chosen cancellation step
/// removes, leaving the survivors.  Verifies the pairing is an involution
/// with matching normalizers and a length difference of one.
pub fn pair_chains(
    group: &PermGroup,
    fusion: &FusionData,
    classes: &[ChainClass],
    mode: PairMode,
) -> Result<ChainPairing> {
    let p = fusion.prime;
    let index_of: BTreeMap<ChainKey, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.rep.key(), i))
        .collect();
    let in_domain = |c: &ChainClass| match mode {
        PairMode::Tau => !c.in_normal_series,
        PairMode::Varpi => c.in_normal_series && !c.dade_radical_chain,
    };
    let mut partner: Vec<Option<usize>> = vec![None; classes.len()];
    for (i, class) in classes.iter().enumerate() {
        if !in_domain(class) {
            continue;
        }
        let mate_members = match mode {
            PairMode::Tau => tau_partner(&class.rep),
            PairMode::Varpi => varpi_partner(group, p, &class.rep)?,
        };
        let (key, _) = canonicalize(group, &fusion.sylow, &mate_members);
        let j = *index_of.get(&key).ok_or(Error::PairingFailure)?;
        partner[i] = Some(j);
    }
    // involution, with partners staying inside the domain
    for (i, &m) in partner.iter().enumerate() {
        if let Some(j) = m {
            if partner[j] != Some(i) || !in_domain(&classes[j]) {
                return Err(Error::PairingFailure);
            }
            let li = classes[i].length() as i64;
            let lj = classes[j].length() as i64;
            if (li - lj).abs() != 1 {
                return Err(Error::PairingFailure);
            }
            if classes[i].normalizer.order() != classes[j].normalizer.order()
                || classes[i].orbit_size != classes[j].orbit_size
            {
                return Err(Error::PairingFailure);
            }
        }
    }
    let survivors: Vec<usize> = (0..classes.len())
        .filter(|&i| partner[i].is_none())
        .collect();
    // survivors are exactly the complement of the domain
    for &i in &survivors {
        if in_domain(&classes[i]) {
            return Err(Error::PairingFailure);
        }
    }
    Ok(ChainPairing {
        mode,
        partner,
        survivors,
    })
}
