//! Named group constructors and generator-file ingestion.
//!
//! Group specifiers: `sym:n`, `alt:n`, `psl2:q`, `psl3:q`, `sl2:q`, `sl3:q`,
//! or `file:path` pointing at a plain-text file with one permutation per
//! line in disjoint-cycle notation, optionally preceded by a `degree N`
//! line. Sporadic groups are ingested through files only; no generator data
//! ships with the tool.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::psl::{sl_as_permutation, ProjectiveAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(u32),
    Alt(u32),
    Psl2(u64),
    Psl3(u64),
    Sl2(u64),
    Sl3(u64),
    File(PathBuf),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec {:?} lacks a ':'", text)))?;
        let num = |s: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad numeric argument {:?}", s)))
        };
        Ok(match kind {
            "sym" => GroupSpec::Sym(num(arg)? as u32),
            "alt" => GroupSpec::Alt(num(arg)? as u32),
            "psl2" => GroupSpec::Psl2(num(arg)?),
            "psl3" => GroupSpec::Psl3(num(arg)?),
            "sl2" => GroupSpec::Sl2(num(arg)?),
            "sl3" => GroupSpec::Sl3(num(arg)?),
            "file" => GroupSpec::File(PathBuf::from(arg)),
            other => {
                return Err(Error::Parse(format!(
                    "unknown group kind {:?} (expected sym, alt, psl2, psl3, sl2, sl3, file)",
                    other
                )))
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSpec::Sym(n) => format!("sym:{}", n),
            GroupSpec::Alt(n) => format!("alt:{}", n),
            GroupSpec::Psl2(q) => format!("psl2:{}", q),
            GroupSpec::Psl3(q) => format!("psl3:{}", q),
            GroupSpec::Sl2(q) => format!("sl2:{}", q),
            GroupSpec::Sl3(q) => format!("sl3:{}", q),
            GroupSpec::File(p) => format!("file:{}", p.display()),
        }
    }

    pub fn build(&self, bound: u64) -> Result<Arc<GroupHandle>> {
        match self {
            GroupSpec::Sym(n) => symmetric(*n, bound),
            GroupSpec::Alt(n) => alternating(*n, bound),
            GroupSpec::Psl2(q) => Ok(ProjectiveAction::psl(2, *q, bound)?.group),
            GroupSpec::Psl3(q) => Ok(ProjectiveAction::psl(3, *q, bound)?.group),
            GroupSpec::Sl2(q) => sl_as_permutation(2, *q, bound),
            GroupSpec::Sl3(q) => sl_as_permutation(3, *q, bound),
            GroupSpec::File(path) => read_generator_file(path, bound),
        }
    }
}

pub fn symmetric(n: u32, bound: u64) -> Result<Arc<GroupHandle>> {
    if n == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    let degree = n as usize;
    let gens = if n == 1 {
        vec![Permutation::identity(1)]
    } else if n == 2 {
        vec![Permutation::parse_cycles("(1,2)", 2)?]
    } else {
        let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        vec![
            Permutation::parse_cycles("(1,2)", degree)?,
            Permutation::parse_cycles(&format!("({})", cycle.join(",")), degree)?,
        ]
    };
    GroupHandle::with_bound(gens, bound)
}

pub fn alternating(n: u32, bound: u64) -> Result<Arc<GroupHandle>> {
    if n == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    let degree = n as usize;
    if n <= 2 {
        return GroupHandle::with_bound(vec![Permutation::identity(degree)], bound);
    }
    let three_cycle = Permutation::parse_cycles("(1,2,3)", degree)?;
    if n == 3 {
        return GroupHandle::with_bound(vec![three_cycle], bound);
    }
    // an even long cycle: the full cycle for odd n, a cycle on 2..n for even n
    let long: Vec<String> = if n % 2 == 1 {
        (1..=n).map(|i| i.to_string()).collect()
    } else {
        (2..=n).map(|i| i.to_string()).collect()
    };
    let gens = vec![
        three_cycle,
        Permutation::parse_cycles(&format!("({})", long.join(",")), degree)?,
    ];
    GroupHandle::with_bound(gens, bound)
}

/// Parses generator text: optional leading `degree N` line, then one
/// permutation per line in disjoint-cycle notation. Blank lines and lines
/// starting with `#` are skipped. Without an explicit degree the largest
/// point mentioned is used.
pub fn parse_generator_text(text: &str, bound: u64) -> Result<Arc<GroupHandle>> {
    let mut declared_degree: Option<usize> = None;
    let mut perm_lines: Vec<&str> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            if perm_lines.is_empty() && declared_degree.is_none() {
                declared_degree = Some(rest.trim().parse().map_err(|_| {
                    Error::Parse(format!("bad degree on line {}: {:?}", i + 1, line))
                })?);
                continue;
            }
            return Err(Error::Parse(
                "a degree line must come first and appear once".into(),
            ));
        }
        perm_lines.push(line);
    }
    if perm_lines.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let degree = match declared_degree {
        Some(d) => d,
        None => {
            let mut max = 1;
            for line in &perm_lines {
                max = max.max(Permutation::max_point_in_cycles(line)? as usize);
            }
            max
        }
    };
    let gens = perm_lines
        .iter()
        .map(|line| Permutation::parse_cycles(line, degree))
        .collect::<Result<Vec<_>>>()?;
    GroupHandle::with_bound(gens, bound)
}

pub fn read_generator_file(path: &Path, bound: u64) -> Result<Arc<GroupHandle>> {
    let text = std::fs::read_to_string(path)?;
    parse_generator_text(&text, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_orders() {
        assert_eq!(symmetric(1, 1000).unwrap().order(), 1);
        assert_eq!(symmetric(2, 1000).unwrap().order(), 2);
        assert_eq!(symmetric(4, 1000).unwrap().order(), 24);
        assert_eq!(symmetric(6, 1000).unwrap().order(), 720);
    }

    #[test]
    fn alternating_orders() {
        assert_eq!(alternating(3, 1000).unwrap().order(), 3);
        assert_eq!(alternating(4, 1000).unwrap().order(), 12);
        assert_eq!(alternating(5, 1000).unwrap().order(), 60);
        assert_eq!(alternating(6, 1000).unwrap().order(), 360);
        assert_eq!(alternating(7, 10_000).unwrap().order(), 2520);
    }

    #[test]
    fn alternating_contains_only_even_permutations() {
        let g = alternating(6, 1000).unwrap();
        for e in g.elements().unwrap() {
            let t: usize = e.cycles().iter().map(|c| c.len() - 1).sum();
            assert_eq!(t % 2, 0);
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(GroupSpec::parse("sym:5").unwrap(), GroupSpec::Sym(5));
        assert_eq!(GroupSpec::parse("psl2:11").unwrap(), GroupSpec::Psl2(11));
        assert_eq!(
            GroupSpec::parse("file:/tmp/g.txt").unwrap(),
            GroupSpec::File(PathBuf::from("/tmp/g.txt"))
        );
        assert!(GroupSpec::parse("wat:3").is_err());
        assert!(GroupSpec::parse("sym").is_err());
    }

    #[test]
    fn build_via_spec() {
        assert_eq!(
            GroupSpec::parse("psl2:5")
                .unwrap()
                .build(1_000_000)
                .unwrap()
                .order(),
            60
        );
        assert_eq!(
            GroupSpec::parse("alt:5")
                .unwrap()
                .build(1_000_000)
                .unwrap()
                .order(),
            60
        );
    }

    #[test]
    fn generator_text_with_degree_line() {
        let g = parse_generator_text("degree 5\n(1,2,3)\n(3,4,5)\n", 1000).unwrap();
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn generator_text_infers_degree() {
        let g = parse_generator_text("# comment\n(1,2)\n(1,2,3,4)\n", 1000).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn generator_text_errors() {
        assert!(matches!(
            parse_generator_text("degree 5\n", 1000),
            Err(Error::EmptyGenerators)
        ));
        assert!(parse_generator_text("(1,2)\ndegree 5\n", 1000).is_err());
        assert!(parse_generator_text("(1,2,x)\n", 1000).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gens.txt");
        std::fs::write(&path, "degree 4\n(1,2)(3,4)\n(1,3)(2,4)\n").unwrap();
        let g = read_generator_file(&path, 1000).unwrap();
        assert_eq!(g.order(), 4);
    }
}
