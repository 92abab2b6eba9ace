//! Plain-text input formats.
//!
//! Group files carry a `degree N` header and then one generator per line
//! in disjoint-cycle notation on the points 0..N, e.g. `(0 1 2)(3 4)`.
//! Automorphism files carry an `auto` header and then one line per
//! generator of the group, giving that generator's image in the same
//! notation.  Twisted-subgroup files for the cyclic checker carry two
//! lines of whitespace-separated `t u` pairs, one subgroup per line.
//! Everywhere `#` starts a comment and blank lines are skipped.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{GroupHom, PermGroup};
use crate::kstar::{CyclicData, KStarAut};
use crate::perm::Perm;

/// Numbered non-comment lines of a source text, 1-based as editors count.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Parse a group from source text.  The closure cap bounds the element
/// enumeration, as everything downstream walks explicit element lists.
pub fn parse_group(text: &str, cap: usize) -> Result<PermGroup> {
    let lines = data_lines(text);
    let (header_line, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        msg: "empty group file (expected a `degree N` header)".into(),
    })?;
    let degree: usize = match header.strip_prefix("degree") {
        Some(rest) => rest.trim().parse().map_err(|_| Error::Parse {
            line: *header_line,
            msg: format!("bad degree header `{}`", header),
        })?,
        None => {
            return Err(Error::Parse {
                line: *header_line,
                msg: format!("expected `degree N`, found `{}`", header),
            })
        }
    };
    if degree == 0 {
        return Err(Error::Parse {
            line: *header_line,
            msg: "degree must be at least 1".into(),
        });
    }
    let mut gens = Vec::new();
    for (line, text) in &lines[1..] {
        gens.push(Perm::parse_cycles(text, degree, *line)?);
    }
    PermGroup::new(degree, gens, cap)
}

pub fn load_group(path: &Path, cap: usize) -> Result<PermGroup> {
    parse_group(&std::fs::read_to_string(path)?, cap)
}

/// Parse an automorphism of `group` from source text: one image line per
/// generator, validated as a bijective homomorphism.
pub fn parse_automorphism(text: &str, group: &PermGroup) -> Result<GroupHom> {
    let lines = data_lines(text);
    let (header_line, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        msg: "empty automorphism file (expected an `auto` header)".into(),
    })?;
    if *header != "auto" {
        return Err(Error::Parse {
            line: *header_line,
            msg: format!("expected `auto`, found `{}`", header),
        });
    }
    let body = &lines[1..];
    if body.len() != group.gens().len() {
        return Err(Error::Parse {
            line: lines.last().map(|(l, _)| *l).unwrap_or(1),
            msg: format!(
                "expected {} image lines (one per group generator), found {}",
                group.gens().len(),
                body.len()
            ),
        });
    }
    let mut images = Vec::new();
    for (line, text) in body {
        images.push(Perm::parse_cycles(text, group.degree(), *line)?);
    }
    let hom = GroupHom::new(group, group, images)?;
    if !hom.is_automorphism_of(group) {
        return Err(Error::NotAnAutomorphism(
            "generator images define a homomorphism but not a bijective one".into(),
        ));
    }
    Ok(hom)
}

pub fn load_automorphism(path: &Path, group: &PermGroup) -> Result<GroupHom> {
    parse_automorphism(&std::fs::read_to_string(path)?, group)
}

/// Parse the two generator lists for an explicit pair check: exactly two
/// data lines, each holding an even count of integers read as (t, u)
/// pairs.  An empty subgroup is written as the pair `0 1`.
pub fn parse_pair_spec(text: &str, data: &CyclicData) -> Result<(Vec<KStarAut>, Vec<KStarAut>)> {
    let lines = data_lines(text);
    if lines.len() != 2 {
        return Err(Error::Parse {
            line: lines.last().map(|(l, _)| *l).unwrap_or(1),
            msg: format!("expected exactly 2 generator lines, found {}", lines.len()),
        });
    }
    let mut parsed: Vec<Vec<KStarAut>> = Vec::new();
    for (line, text) in &lines {
        let nums: Vec<u64> = text
            .split_whitespace()
            .map(|w| {
                w.parse().map_err(|_| Error::Parse {
                    line: *line,
                    msg: format!("bad integer `{}`", w),
                })
            })
            .collect::<Result<_>>()?;
        if nums.is_empty() || nums.len() % 2 != 0 {
            return Err(Error::Parse {
                line: *line,
                msg: "expected a nonempty even-length list of t u pairs".into(),
            });
        }
        parsed.push(
            nums.chunks(2)
                .map(|c| data.aut(c[0], c[1]))
                .collect::<Result<_>>()?,
        );
    }
    let second = parsed.pop().expect("two lines parsed");
    let first = parsed.pop().expect("two lines parsed");
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_round_trip_with_comments() {
        let text = "# symmetric group on 4 points\ndegree 4\n(0 1)\n(0 1 2 3) # 4-cycle\n";
        let g = parse_group(text, 20000).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn trivial_group_has_no_generator_lines() {
        let g = parse_group("degree 1\n", 20000).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn group_header_errors_carry_line_numbers() {
        match parse_group("depth 4\n(0 1)\n", 20000).map(|g| g.order()) {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected a header parse error, got {:?}", other),
        }
        match parse_group("degree 4\n(0 1\n", 20000).map(|g| g.order()) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a cycle parse error, got {:?}", other),
        }
        match parse_group("", 20000).map(|g| g.order()) {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected an empty-file error, got {:?}", other),
        }
    }

    #[test]
    fn automorphism_round_trip() {
        let g = parse_group("degree 5\n(0 1 2)\n(0 1 2 3 4)\n", 20000).unwrap();
        // conjugation by the transposition (3 4) maps into the group
        let a = parse_automorphism("auto\n(0 2 1)\n(1 0 2 3 4)\n", &g).unwrap();
        assert!(a.is_automorphism_of(&g));
        assert_eq!(a.order_in_out(&g), 2);
    }

    #[test]
    fn automorphism_errors() {
        let g = parse_group("degree 4\n(0 1)\n(0 1 2 3)\n", 20000).unwrap();
        match parse_automorphism("auto\n(0 1)\n", &g).map(|a| a.order_in_out(&g)) {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected a line-count error, got {:?}", other),
        }
        // images that do not satisfy the generator relations
        match parse_automorphism("auto\n(0 1 2)\n(0 1 2 3)\n", &g).map(|a| a.order_in_out(&g)) {
            Err(Error::NotAHomomorphism) => {}
            other => panic!("expected a homomorphism error, got {:?}", other),
        }
    }

    #[test]
    fn pair_spec_round_trip() {
        let d = CyclicData::new(7, None).unwrap();
        let (c1, c2) = parse_pair_spec("# pair\n0 2\n1 2 0 4\n", &d).unwrap();
        assert_eq!(c1, vec![d.aut(0, 2).unwrap()]);
        assert_eq!(c2, vec![d.aut(1, 2).unwrap(), d.aut(0, 4).unwrap()]);
        match parse_pair_spec("0 2\n", &d) {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected a line-count error, got {:?}", other),
        }
        match parse_pair_spec("0 2\n1\n", &d) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a pair-length error, got {:?}", other),
        }
    }
}
