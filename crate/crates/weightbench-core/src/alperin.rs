use serde::Serialize;

use crate::chains::enumerate_regular_chains;
use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::fusion::FusionData;
use crate::group::{GroupHom, PermGroup};
use crate::perm::Perm;

/// Number of p-regular conjugacy classes.
pub fn count_brauer_irreducibles(group: &PermGroup, p: u64) -> u64 {
    group
        .conjugacy_classes()
        .list
        .iter()
        .filter(|c| c.elem_order as u64 % p != 0)
        .count() as u64
}

#[derive(Serialize, Clone, Debug)]
pub struct RadicalBreakdownEntry {
    pub subgroup_order: usize,
    pub class_size: usize,
    pub normalizer_order: usize,
    pub quotient_order: usize,
    pub defect_zero_count: u64,
}

/// Weights over the classes flagged by `pick`: z(N_G(R)/R) per class.
fn weight_breakdown(
    fusion: &FusionData,
    pick: impl Fn(&crate::fusion::SubgroupClass) -> bool,
) -> Result<Vec<RadicalBreakdownEntry>> {
    let mut out = Vec::new();
    for class in fusion.classes.iter().filter(|c| pick(c)) {
        let (quotient, _) = class.normalizer.quotient(&class.rep)?;
        let table = CharTable::build(&quotient);
        out.push(RadicalBreakdownEntry {
            subgroup_order: class.rep.order(),
            class_size: class.class_size,
            normalizer_order: class.normalizer.order(),
            quotient_order: quotient.order(),
            defect_zero_count: table.defect_zero_count(fusion.prime) as u64,
        });
    }
    Ok(out)
}

#[derive(Serialize, Clone, Debug)]
pub struct AlperinReport {
    pub prime: u64,
    pub group_order: usize,
    pub brauer_count: u64,
    pub weight_count: u64,
    pub breakdown: Vec<RadicalBreakdownEntry>,
    pub equal: bool,
}

/// Global weight count: sum of z(N_G(R)/R) over the classes of radical
/// p-subgroups (R equal to O_p of its normalizer), including R = O_p(G).
pub fn count_weights(group: &PermGroup, p: u64) -> Result<(u64, Vec<RadicalBreakdownEntry>)> {
    let fusion = FusionData::build(group, p)?;
    let breakdown = weight_breakdown(&fusion, |c| c.dade_radical)?;
    let total = breakdown.iter().map(|e| e.defect_zero_count).sum();
    Ok((total, breakdown))
}

pub fn check_alperin(group: &PermGroup, p: u64) -> Result<AlperinReport> {
    let brauer_count = count_brauer_irreducibles(group, p);
    let (weight_count, breakdown) = count_weights(group, p)?;
    Ok(AlperinReport {
        prime: p,
        group_order: group.order(),
        brauer_count,
        weight_count,
        breakdown,
        equal: brauer_count == weight_count,
    })
}

/// Weight sum over the radical classes of the fusion system itself
/// (centric with p-reduced automizer); this is the per-normalizer term
/// the chain sums are built from.
pub fn radical_weight_sum(group: &PermGroup, p: u64) -> Result<u64> {
    let fusion = FusionData::build(group, p)?;
    let breakdown = weight_breakdown(&fusion, |c| c.f_radical)?;
    Ok(breakdown.iter().map(|e| e.defect_zero_count).sum())
}

#[derive(Serialize, Clone, Debug)]
pub struct ChainTermEntry {
    pub length: usize,
    pub member_orders: Vec<usize>,
    pub orbit_size: usize,
    pub normalizer_order: usize,
    pub weight_sum: u64,
    pub radical_chain: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct AlternatingSumReport {
    pub prime: u64,
    pub group_order: usize,
    pub radical_subgroup_sum: i64,
    pub dade_chain_sum: i64,
    pub full_chain_sum: i64,
    pub all_equal: bool,
    pub chain_terms: Vec<ChainTermEntry>,
}

/// Three routes to the same number: the flat radical-class sum, the signed
/// sum over all centric chains, and the signed sum over the chains passing
/// the stepwise radical condition.
pub fn alternating_sum_report(
    group: &PermGroup,
    p: u64,
    chain_cap: usize,
) -> Result<AlternatingSumReport> {
    let fusion = FusionData::build(group, p)?;
    let radical_subgroup_sum = radical_weight_sum(group, p)? as i64;
    let classes = enumerate_regular_chains(group, &fusion, true, chain_cap)?;
    let mut full_chain_sum: i64 = 0;
    let mut dade_chain_sum: i64 = 0;
    let mut chain_terms = Vec::with_capacity(classes.len());
    for class in &classes {
        let weight_sum = radical_weight_sum(&class.normalizer, p)?;
        let sign: i64 = if class.length() % 2 == 0 { 1 } else { -1 };
        full_chain_sum += sign * weight_sum as i64;
        if class.dade_radical_chain {
            dade_chain_sum += sign * weight_sum as i64;
        }
        chain_terms.push(ChainTermEntry {
            length: class.length(),
            member_orders: class.rep.members.iter().map(|m| m.order()).collect(),
            orbit_size: class.orbit_size,
            normalizer_order: class.normalizer.order(),
            weight_sum,
            radical_chain: class.dade_radical_chain,
        });
    }
    Ok(AlternatingSumReport {
        prime: p,
        group_order: group.order(),
        radical_subgroup_sum,
        dade_chain_sum,
        full_chain_sum,
        all_equal: radical_subgroup_sum == full_chain_sum && full_chain_sum == dade_chain_sum,
        chain_terms,
    })
}

pub fn identity_automorphism(group: &PermGroup) -> GroupHom {
    GroupHom::new(group, group, group.gens().to_vec())
        .expect("the identity map is a homomorphism")
}

#[derive(Serialize, Clone, Debug)]
pub struct EquivariantReport {
    pub prime: u64,
    pub group_order: usize,
    pub auto_order: usize,
    pub regular_fixed: Vec<u64>,
    pub weight_fixed: Vec<u64>,
    pub regular_orbits: u64,
    pub weight_orbits: u64,
    pub equal: bool,
}

/// Counts fixed p-regular classes of a class-level automorphism action.
fn fixed_regular_classes(group: &PermGroup, p: u64, alpha: &GroupHom) -> u64 {
    group
        .conjugacy_classes()
        .list
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            c.elem_order as u64 % p != 0
                && group.class_index_of(&alpha.apply(&c.rep)) == *i
        })
        .count() as u64
}

/// Fixed weights of one power: for each stable radical class, correct the
/// automorphism to stabilize the representative, push it down to N/R, and
/// count the fixed defect-zero rows there.
fn fixed_weights(group: &PermGroup, fusion: &FusionData, alpha: &GroupHom) -> Result<u64> {
    let mut total: u64 = 0;
    for class in fusion.classes.iter().filter(|c| c.dade_radical) {
        let image = alpha.apply_to_subgroup(&class.rep);
        let Some(w) = group.conjugating_element(&image, &class.rep) else {
            continue; // class not stable under this power
        };
        let n = &class.normalizer;
        let (quotient, proj) = n.quotient(&class.rep)?;
        let corrected = |x: &Perm| alpha.apply(x).conjugate_by(&w);
        let images: Vec<Perm> = quotient
            .gens()
            .iter()
            .map(|qg| {
                let lift = n
                    .elements()
                    .iter()
                    .find(|x| proj.apply(x) == *qg)
                    .expect("projection is onto");
                proj.apply(&corrected(lift))
            })
            .collect();
        let induced = GroupHom::new(&quotient, &quotient, images)
            .expect("a stabilizing automorphism descends to the quotient");
        let table = CharTable::build(&quotient);
        let class_perm = table.class_permutation(&quotient, &induced);
        let char_perm = table.character_permutation(&class_perm);
        total += table
            .defect_zero_indices(fusion.prime)
            .into_iter()
            .filter(|&r| char_perm[r] == r)
            .count() as u64;
    }
    Ok(total)
}

/// Orbit-count comparison under a cyclic group of outer automorphisms:
/// orbits of p-regular classes against orbits of weights, both via Burnside.
pub fn check_equivariant(
    group: &PermGroup,
    p: u64,
    alpha: &GroupHom,
) -> Result<EquivariantReport> {
    if !alpha.is_automorphism_of(group) {
        return Err(Error::PreconditionViolated(
            "equivariant check needs an automorphism of the input group".into(),
        ));
    }
    let fusion = FusionData::build(group, p)?;
    let m = alpha.order_in_out(group);
    let mut regular_fixed = Vec::with_capacity(m);
    let mut weight_fixed = Vec::with_capacity(m);
    let mut power = identity_automorphism(group);
    for t in 0..m {
        if t > 0 {
            power = alpha.compose_auto(&power);
        }
        regular_fixed.push(fixed_regular_classes(group, p, &power));
        weight_fixed.push(fixed_weights(group, &fusion, &power)?);
    }
    let reg_total: u64 = regular_fixed.iter().sum();
    let wt_total: u64 = weight_fixed.iter().sum();
    assert_eq!(
        reg_total % m as u64,
        0,
        "orbit counting must produce an integer"
    );
    assert_eq!(
        wt_total % m as u64,
        0,
        "orbit counting must produce an integer"
    );
    let regular_orbits = reg_total / m as u64;
    let weight_orbits = wt_total / m as u64;
    Ok(EquivariantReport {
        prime: p,
        group_order: group.order(),
        auto_order: m,
        regular_fixed,
        weight_fixed,
        regular_orbits,
        weight_orbits,
        equal: regular_orbits == weight_orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Perm::parse_cycles("(0 1)", 4, 0).unwrap(),
                Perm::parse_cycles("(0 1 2 3)", 4, 0).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    fn a5() -> PermGroup {
        PermGroup::new(
            5,
            vec![
                Perm::parse_cycles("(0 1 2)", 5, 0).unwrap(),
                Perm::parse_cycles("(0 1 2 3 4)", 5, 0).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    fn gl32() -> PermGroup {
        PermGroup::new(
            7,
            vec![
                Perm::parse_cycles("(0 1 2)(3 4 6)", 7, 0).unwrap(),
                Perm::parse_cycles("(1 3)(4 5)", 7, 0).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn weight_counts_match_regular_classes() {
        // hand-checked values for the standard small cases
        let cases: Vec<(PermGroup, u64, u64)> = vec![
            (a5(), 2, 4),
            (a5(), 3, 4),
            (a5(), 5, 3),
            (s4(), 2, 2),
            (s4(), 3, 4),
            (gl32(), 2, 4),
            (gl32(), 7, 4),
        ];
        for (g, p, expected) in cases {
            let report = check_alperin(&g, p).unwrap();
            assert_eq!(report.brauer_count, expected, "lhs at p={}", p);
            assert_eq!(report.weight_count, expected, "rhs at p={}", p);
            assert!(report.equal);
        }
    }

    #[test]
    fn s4_weight_breakdown_detail() {
        let report = check_alperin(&s4(), 2).unwrap();
        // radical classes: the normal four-group (quotient S3) and the Sylow
        assert_eq!(report.breakdown.len(), 2);
        assert_eq!(report.breakdown[0].subgroup_order, 4);
        assert_eq!(report.breakdown[0].quotient_order, 6);
        assert_eq!(report.breakdown[0].defect_zero_count, 1);
        assert_eq!(report.breakdown[1].subgroup_order, 8);
        assert_eq!(report.breakdown[1].quotient_order, 1);
        assert_eq!(report.breakdown[1].defect_zero_count, 1);
    }

    #[test]
    fn coprime_prime_counts_all_characters() {
        let report = check_alperin(&a5(), 7).unwrap();
        assert_eq!(report.brauer_count, 5);
        assert_eq!(report.weight_count, 5);
        assert!(report.equal);
    }

    #[test]
    fn alternating_sums_agree_on_small_groups() {
        let cases: Vec<(PermGroup, u64, i64)> = vec![
            (a5(), 2, 3),
            (s4(), 2, 2),
            (gl32(), 2, 3),
            (s4(), 3, 2),
        ];
        for (g, p, expected) in cases {
            let report = alternating_sum_report(&g, p, 1_000_000).unwrap();
            assert!(report.all_equal, "sum mismatch at p={}", p);
            assert_eq!(report.radical_subgroup_sum, expected, "value at p={}", p);
        }
    }

    #[test]
    fn gl32_chain_term_detail() {
        let report = alternating_sum_report(&gl32(), 2, 1_000_000).unwrap();
        assert_eq!(report.chain_terms.len(), 7);
        let radical_flagged = report
            .chain_terms
            .iter()
            .filter(|t| t.radical_chain)
            .count();
        assert_eq!(radical_flagged, 5);
        assert_eq!(report.full_chain_sum, 3);
        assert_eq!(report.dade_chain_sum, 3);
    }

    #[test]
    fn equivariant_outer_involution_on_a5() {
        let g = a5();
        // conjugation by a transposition: an outer involution
        let images = vec![
            Perm::parse_cycles("(0 2 1)", 5, 0).unwrap(),
            Perm::parse_cycles("(1 0 2 3 4)", 5, 0).unwrap(),
        ];
        let alpha = GroupHom::new(&g, &g, images).unwrap();
        let report = check_equivariant(&g, 2, &alpha).unwrap();
        assert_eq!(report.auto_order, 2);
        assert_eq!(report.regular_fixed, vec![4, 2]);
        assert_eq!(report.weight_fixed, vec![4, 2]);
        assert_eq!(report.regular_orbits, 3);
        assert_eq!(report.weight_orbits, 3);
        assert!(report.equal);
    }

    #[test]
    fn equivariant_inner_map_degenerates() {
        let g = s4();
        let w = Perm::parse_cycles("(0 1 2 3)", 4, 0).unwrap();
        let images: Vec<Perm> = g.gens().iter().map(|x| x.conjugate_by(&w)).collect();
        let alpha = GroupHom::new(&g, &g, images).unwrap();
        let report = check_equivariant(&g, 2, &alpha).unwrap();
        assert_eq!(report.auto_order, 1);
        assert_eq!(report.regular_orbits, 2);
        assert_eq!(report.weight_orbits, 2);
        assert!(report.equal);
    }

    #[test]
    fn equivariant_rejects_non_automorphism() {
        let g = s4();
        let images = vec![g.gens()[1].clone(), g.gens()[1].clone()];
        match GroupHom::new(&g, &g, images) {
            Ok(h) => {
                let err = check_equivariant(&g, 2, &h).unwrap_err();
                assert!(matches!(err, Error::PreconditionViolated(_)));
            }
            Err(_) => {} // already rejected at construction, equally fine
        }
    }
}
